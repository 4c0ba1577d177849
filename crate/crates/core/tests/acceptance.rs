//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use dis_core::assoc::{enumerate_alternating, has_adjacent_internal_children};
use dis_core::catalog::{check_negative, config_a_waypoints, negative_case, relation};
use dis_core::enumeration::{dihedral_orbits, isolated_count, verify_fiber_equivalence};
use dis_core::geometry::{fiber, realize};
use dis_core::interval::{
    association_to_sequence, is_tree_sequence, sequence_to_association, Bracketing, SEGMENT_TABLE,
};
use dis_core::rewrite::{
    check_equivalence, commutation_permutations_binary, find_commutations, lift_path, Equivalence,
    Permutation, DEFAULT_BUDGET,
};
use dis_core::search::{dyadic_partitions, run_search, SearchConfig};
use dis_core::trees::{enumerate_shapes, parse_monomial};
use dis_core::{Rect, Tree};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// 1 -------------------------------------------------------------------------

fn shape_counts() -> Outcome {
    let expected = [1u64, 2, 8, 40, 224, 1344];
    for n in 1..=6usize {
        let m = n as u64 - 1;
        let oracle = (1u64 << m) * binomial(2 * m, m) / (m + 1);
        ensure(oracle == expected[n - 1], || {
            format!("closed form gives {oracle} at n = {n}")
        })?;
        let shapes = enumerate_shapes(n).map_err(|e| e.to_string())?;
        let mut keys: Vec<Vec<u8>> = shapes.iter().map(Tree::canonical_key).collect();
        keys.sort();
        keys.dedup();
        ensure(keys.len() == shapes.len(), || {
            format!("duplicate shapes at n = {n}")
        })?;
        ensure(
            shapes.iter().all(|s| s.arity() == n && s.is_standard()),
            || format!("bad shape at n = {n}"),
        )?;
        ensure(shapes.len() as u64 == oracle, || {
            format!("n = {n}: {} shapes, expected {oracle}", shapes.len())
        })?;
    }
    Ok("1, 2, 8, 40, 224, 1344".into())
}

// 2 -------------------------------------------------------------------------

fn schroeder_counts() -> Outcome {
    let expected = [1u64, 2, 6, 22, 90, 394, 1806];
    // large Schroeder numbers: r_n = r_{n-1} + sum_k r_k r_{n-1-k}
    let mut r = vec![1u64];
    for n in 1..7 {
        let s: u64 = (0..n).map(|k| r[k] * r[n - 1 - k]).sum();
        r.push(r[n - 1] + s);
    }
    ensure(r == expected, || format!("recurrence gives {r:?}"))?;
    for n in 1..=7usize {
        let trees = enumerate_alternating(n).map_err(|e| e.to_string())?;
        let mut keys: Vec<Vec<u8>> = trees.iter().map(|t| t.key()).collect();
        keys.sort();
        keys.dedup();
        ensure(
            keys.len() == trees.len() && trees.iter().all(|t| t.is_valid() && t.arity() == n),
            || format!("invalid or duplicate alternating trees at n = {n}"),
        )?;
        ensure(trees.len() as u64 == expected[n - 1], || {
            format!("n = {n}: {} trees", trees.len())
        })?;
    }
    Ok("1, 2, 6, 22, 90, 394, 1806".into())
}

// 3 -------------------------------------------------------------------------

fn isolated_vertices() -> Outcome {
    let expected = [1usize, 2, 6, 20, 70, 254, 948];
    for n in 1..=7 {
        let structural = enumerate_alternating(n)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|t| !has_adjacent_internal_children(t))
            .count();
        let graph = isolated_count(n).map_err(|e| e.to_string())?;
        ensure(graph == expected[n - 1] && structural == graph, || {
            format!(
                "n = {n}: graph {graph}, structural {structural}, expected {}",
                expected[n - 1]
            )
        })?;
    }
    Ok("1, 2, 6, 20, 70, 254, 948".into())
}

// 4 -------------------------------------------------------------------------

fn arity_four_orbits() -> Outcome {
    let orbits = dihedral_orbits(4).map_err(|e| e.to_string())?;
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.members.len()).collect();
    sizes.sort_unstable();
    ensure(
        sizes.iter().sum::<usize>() == 40 && sizes.iter().all(|s| 8 % s == 0),
        || format!("sizes {sizes:?}"),
    )?;
    ensure(sizes == [2, 2, 4, 4, 4, 4, 4, 8, 8], || {
        format!("sizes {sizes:?}")
    })?;
    Ok(format!("{} orbits, sizes {sizes:?}", orbits.len()))
}

// 5 -------------------------------------------------------------------------

fn arity_four_injectivity() -> Outcome {
    let mut by_partition: BTreeMap<Vec<Rect>, Vec<Tree>> = BTreeMap::new();
    for s in enumerate_shapes(4).map_err(|e| e.to_string())? {
        by_partition.entry(realize(&s).rects()).or_default().push(s);
    }
    let big: Vec<&Vec<Tree>> = by_partition.values().filter(|v| v.len() > 1).collect();
    ensure(big.len() == 1 && big[0].len() == 2, || {
        format!("{} non-singleton fibers", big.len())
    })?;
    let pair = [
        parse_monomial("((a h b) v (c h d))").unwrap(),
        parse_monomial("((a v b) h (c v d))").unwrap(),
    ];
    ensure(pair.iter().all(|t| big[0].contains(t)), || {
        format!("the fiber is {:?}", big[0])
    })?;
    let lhs = parse_monomial("((a h b) v (c h d))").unwrap();
    let rhs = parse_monomial("((x1 v x3) h (x2 v x4))").unwrap();
    let f = fiber(&realize(&lhs)).map_err(|e| e.to_string())?;
    ensure(f.len() == 2 && f.contains(&lhs) && f.contains(&rhs), || {
        format!("labeled fiber {f:?}")
    })?;
    Ok(format!(
        "{} partitions, one fiber of size 2",
        by_partition.len()
    ))
}

// 6 -------------------------------------------------------------------------

fn fiber_equivalence() -> Outcome {
    let mut sizes = Vec::new();
    for n in 1..=6 {
        let r = verify_fiber_equivalence(n).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("closures and fibers differ at n = {n}"))?;
        sizes.push(r.class_count);
    }
    Ok(format!("classes per arity {sizes:?}"))
}

// 7, 8 ----------------------------------------------------------------------

fn search_relation(name: &str) -> Outcome {
    let r = relation(name).ok_or("missing relation")?;
    let p = r.parse().map_err(|e| e.to_string())?;
    match check_equivalence(&p.lhs, &p.rhs, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
        Equivalence::Found(cert) => {
            ensure(cert.initial == p.lhs && cert.final_tree == p.rhs, || {
                "certificate endpoints".into()
            })?;
            cert.replay().map_err(|e| e.to_string())?;
            let sigma = r.transposition().map_err(|e| e.to_string())?;
            Ok(format!(
                "{} steps, {} interchange, transposition {}",
                cert.steps.len(),
                cert.interchange_count(),
                sigma.display_with(&p.names)
            ))
        }
        other => Err(format!("{other:?}")),
    }
}

fn kock16() -> Outcome {
    search_relation("kock16")
}

fn bm9() -> Outcome {
    search_relation("bm9")
}

// 9 -------------------------------------------------------------------------

fn relabeled(t: &Tree, sigma: &Permutation) -> Tree {
    t.relabel(&|l| sigma.0[l as usize - 1])
}

fn shipped_replays(name: &str) -> Result<(dis_core::RewriteCertificate, Duration), String> {
    let r = relation(name).ok_or("missing relation")?;
    let p = r.parse().map_err(|e| e.to_string())?;
    let sigma = r.transposition().map_err(|e| e.to_string())?;
    let cert = r.certificate().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let end = cert.replay().map_err(|e| format!("{name}: {e}"))?;
    let took = start.elapsed();
    ensure(
        cert.initial == p.lhs && end == relabeled(&p.lhs, &sigma),
        || format!("{name}: wrong endpoints"),
    )?;
    Ok((cert, took))
}

fn finds_transposition(name: &str) -> Result<usize, String> {
    let r = relation(name).ok_or("missing relation")?;
    let p = r.parse().map_err(|e| e.to_string())?;
    let sigma = r.transposition().map_err(|e| e.to_string())?;
    let report = find_commutations(&p.lhs, DEFAULT_BUDGET);
    let w = report
        .witnesses
        .iter()
        .find(|w| w.permutation == sigma)
        .ok_or_else(|| format!("{name}: not found"))?;
    w.certificate.replay().map_err(|e| e.to_string())?;
    Ok(report.class_size)
}

fn config_a() -> Outcome {
    let (cert, took) = shipped_replays("configA")?;
    ensure(took < Duration::from_secs(1), || {
        format!("replay took {took:?}")
    })?;
    ensure(cert.interchange_count() == 20, || {
        format!("{} interchange steps", cert.interchange_count())
    })?;
    let r = relation("configA").unwrap();
    let p = r.parse().unwrap();
    let waypoints = config_a_waypoints(&p.names).map_err(|e| e.to_string())?;
    let lifted = lift_path(&p.lhs, &waypoints, &p.rhs).map_err(|e| e.to_string())?;
    ensure(lifted == cert, || {
        "shipped certificate differs from the lifted waypoints".into()
    })?;
    let classes = finds_transposition("configA")?;
    search_relation("configA")?;
    Ok(format!(
        "replay {took:.1?}, {} steps, (d g) rediscovered in {classes} classes",
        cert.steps.len()
    ))
}

// 10 ------------------------------------------------------------------------

fn config_b_and_case2() -> Outcome {
    let mut parts = Vec::new();
    for name in ["configB", "case2"] {
        shipped_replays(name)?;
        finds_transposition(name)?;
        let r = relation(name).unwrap();
        let p = r.parse().unwrap();
        let sigma = r.transposition().unwrap();
        let (perms, exhausted) = commutation_permutations_binary(&p.lhs, DEFAULT_BUDGET);
        ensure(exhausted && perms.contains(&sigma), || {
            format!("{name}: binary closure misses the transposition")
        })?;
        parts.push(format!("{name} {}", sigma.display_with(&p.names)));
    }
    Ok(parts.join(", "))
}

// 11 ------------------------------------------------------------------------

fn negatives() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for name in ["seven-block-negative", "configC-negative", "case1-negative"] {
        let case = negative_case(name).ok_or("missing case")?;
        let reports = check_negative(case, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        for (k, r) in reports.iter().enumerate() {
            if !r.exhausted {
                failures.push(format!("{name}: closure not exhausted"));
            }
            let mut found: Vec<String> = r
                .quotient_witnesses
                .iter()
                .chain(&r.binary_witnesses)
                .map(|p| p.display_with(&r.names))
                .collect();
            found.sort();
            found.dedup();
            if !found.is_empty() {
                failures.push(format!("{name}: commutation {}", found.join(" ")));
            }
            if r.order_preserved == Some(false) {
                failures.push(format!("{name}: block order changes"));
            }
            if k == 0 {
                if let Some(size) = case.first_closure_size {
                    if r.binary_members != size {
                        failures.push(format!(
                            "{name}: first closure has {} members",
                            r.binary_members
                        ));
                    }
                    notes.push(format!("first seven-block closure {}", r.binary_members));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

// 12 ------------------------------------------------------------------------

/// Partitions of the square with both main cuts are four independent
/// partitions of the quarters.
fn both_cuts_oracle(n: usize, partitions: &[u64]) -> u64 {
    let mut total = 0;
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if a + b + c < n {
                    let d = n - a - b - c;
                    total += partitions[a] * partitions[b] * partitions[c] * partitions[d];
                }
            }
        }
    }
    total
}

fn seven_block_search() -> Outcome {
    // partition counts from realized shapes, independent of the generator
    let mut partitions = vec![0u64];
    for k in 1..=4 {
        let mut rects: Vec<Vec<Rect>> = enumerate_shapes(k)
            .unwrap()
            .iter()
            .map(|s| realize(s).rects())
            .collect();
        rects.sort();
        rects.dedup();
        partitions.push(rects.len() as u64);
    }
    let mut searched = 0;
    for n in 1..=7 {
        let config = SearchConfig {
            arity: n,
            min_interior: 0,
            ..SearchConfig::default()
        };
        let report = run_search(&config).map_err(|e| e.to_string())?;
        let oracle = if n >= 4 {
            both_cuts_oracle(n, &partitions)
        } else {
            0
        };
        ensure(report.stats.candidates as u64 == oracle, || {
            format!(
                "n = {n}: {} candidates, expected {oracle}",
                report.stats.candidates
            )
        })?;
        ensure(
            report.stats.generated == dyadic_partitions(n).unwrap().len(),
            || "generated count".into(),
        )?;
        ensure(report.all_exhausted(), || {
            format!("n = {n}: some closure not exhausted")
        })?;
        ensure(report.witness_count() == 0, || {
            format!("n = {n}: {} witnesses", report.witness_count())
        })?;
        searched += report.results.len();
    }
    Ok(format!(
        "{searched} partitions with both main cuts, no witnesses"
    ))
}

// 13 ------------------------------------------------------------------------

fn property_suites() -> Outcome {
    let small: Vec<Tree> = (1..=2).flat_map(|n| enumerate_shapes(n).unwrap()).collect();
    let mut checked = 0;
    for n in 1..=5 {
        for t in enumerate_shapes(n).unwrap() {
            for u in &small {
                common::check_all(&t, u)?;
            }
            checked += 1;
        }
    }
    let mut runner = TestRunner::deterministic();
    let strategy = (common::arb_monomial(6..=12), common::arb_monomial(1..=3));
    for _ in 0..10_000 {
        let (t, u) = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        common::check_all(&t, &u)?;
        checked += 1;
    }
    Ok(format!("{checked} monomials, zero violations"))
}

// 14 ------------------------------------------------------------------------

fn leaf_lengths(b: &Bracketing, depth: u32, out: &mut Vec<u64>) {
    match b {
        Bracketing::Leaf => out.push(128 >> depth),
        Bracketing::Pair(l, r) => {
            leaf_lengths(l, depth + 1, out);
            leaf_lengths(r, depth + 1, out);
        }
    }
}

fn interval_bijection() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=6 {
        let all = Bracketing::all(n);
        for b in &all {
            let s = association_to_sequence(b);
            ensure(is_tree_sequence(s.points()) == Ok(true), || {
                format!("{b}: not a tree sequence")
            })?;
            let back = sequence_to_association(&s).map_err(|e| e.to_string())?;
            ensure(&back == b, || format!("{b} round trips to {back}"))?;
        }
        counts.push(all.len());
    }
    ensure(counts == [1, 2, 5, 14, 42], || format!("counts {counts:?}"))?;
    let five: Vec<&(&str, &[u64])> = SEGMENT_TABLE
        .iter()
        .filter(|(name, _)| name.chars().filter(|c| c.is_alphabetic()).count() == 5)
        .collect();
    for (name, lengths) in &five {
        let b: Bracketing = name
            .parse()
            .map_err(|e: dis_core::ParseError| e.to_string())?;
        ensure(b.to_string() == *name, || format!("{name} prints as {b}"))?;
        let computed: Vec<u64> = association_to_sequence(&b)
            .segment_lengths()
            .iter()
            .map(|d| d.mul_pow2(7).numerator())
            .collect();
        let mut oracle = Vec::new();
        leaf_lengths(&b, 0, &mut oracle);
        ensure(computed == *lengths && oracle == *lengths, || {
            format!("{name}: {computed:?} vs table {lengths:?}")
        })?;
    }
    let mut names: Vec<String> = five.iter().map(|(n, _)| n.to_string()).collect();
    names.sort();
    let mut all: Vec<String> = Bracketing::all(5)
        .iter()
        .map(Bracketing::to_string)
        .collect();
    all.sort();
    ensure(names == all, || {
        "five-letter rows do not cover every bracketing once".into()
    })?;
    Ok(format!(
        "round trips for {counts:?}, {} five-letter rows match",
        five.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "shape counts",
            limit: secs(5),
            run: shape_counts,
        },
        Criterion {
            id: 2,
            name: "Schroeder counts",
            limit: secs(30),
            run: schroeder_counts,
        },
        Criterion {
            id: 3,
            name: "isolated vertices",
            limit: secs(300),
            run: isolated_vertices,
        },
        Criterion {
            id: 4,
            name: "arity-4 dihedral orbits",
            limit: secs(1),
            run: arity_four_orbits,
        },
        Criterion {
            id: 5,
            name: "arity-4 realization fibers",
            limit: secs(5),
            run: arity_four_injectivity,
        },
        Criterion {
            id: 6,
            name: "interchange closures equal fibers",
            limit: secs(120),
            run: fiber_equivalence,
        },
        Criterion {
            id: 7,
            name: "16-argument relation",
            limit: secs(300),
            run: kock16,
        },
        Criterion {
            id: 8,
            name: "9-argument relation",
            limit: secs(120),
            run: bm9,
        },
        Criterion {
            id: 9,
            name: "configuration A",
            limit: secs(300),
            run: config_a,
        },
        Criterion {
            id: 10,
            name: "configuration B and case 2",
            limit: secs(600),
            run: config_b_and_case2,
        },
        Criterion {
            id: 11,
            name: "negative results",
            limit: secs(300),
            run: negatives,
        },
        Criterion {
            id: 12,
            name: "no relations up to arity 7",
            limit: secs(1800),
            run: seven_block_search,
        },
        Criterion {
            id: 13,
            name: "property suites",
            limit: secs(300),
            run: property_suites,
        },
        Criterion {
            id: 14,
            name: "tree sequences",
            limit: secs(1),
            run: interval_bijection,
        },
    ];
    // keep panic messages out of the report; they are reported as FAIL lines
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed > c.limit {
                Err(format!("{d}; took {elapsed:.2?}, limit {:?}", c.limit))
            } else {
                Ok(d)
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {detail} [{elapsed:.2?}]", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {why} [{elapsed:.2?}]", c.id, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
