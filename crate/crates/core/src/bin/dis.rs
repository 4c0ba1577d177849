//! `dis`: verify, count, explore and draw double interchange monomials.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dis_core::assoc::to_alternating;
use dis_core::catalog::{self, NegativeCase, Relation};
use dis_core::enumeration::{interchange_graph, ISOLATED_COUNTS, SCHROEDER_COUNTS, SHAPE_COUNTS};
use dis_core::geometry::realize;
use dis_core::interval::{association_to_sequence, Bracketing};
use dis_core::render::{to_ascii, to_svg};
use dis_core::rewrite::{
    check_equivalence, closure_with, lift_path, quotient_closure, ClosureOptions, Equivalence,
    RuleFamily, DEFAULT_BUDGET,
};
use dis_core::search::{run_search, SearchConfig};
use dis_core::trees::{enumerate_shapes, parse_named};
use dis_core::{BlockPartition, Error, RewriteCertificate, RuleSet};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "dis",
    version,
    about = "Commutativity in double interchange semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count shapes, associativity classes and isolated classes.
    Count {
        #[arg(long)]
        arity: usize,
        /// Also print the edges of the interchange graph.
        #[arg(long)]
        edges: bool,
    },
    /// Check a known relation or negative result (`all` runs every target).
    Verify {
        name: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Explore the equivalence class of a monomial.
    Closure {
        monomial: String,
        #[arg(long, default_value = "all")]
        rules: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Work modulo associativity (only with `--rules all`).
        #[arg(long)]
        quotient: bool,
        /// Print every member.
        #[arg(long)]
        list: bool,
    },
    /// Decide whether two monomials are equal, printing a certificate.
    Equiv {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search dyadic partitions for commutativity relations.
    Search(SearchArgs),
    /// Draw a monomial or a partition file.
    Render {
        /// A monomial, or a path to a partition text file.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file.
    Replay {
        certificate: PathBuf,
        /// Print every intermediate monomial with the step producing it.
        #[arg(long)]
        trace: bool,
    },
    /// Produce a certificate for a known relation.
    Certify {
        name: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the tree sequence of a bracketing such as `(ab)c`.
    Interval { bracketing: String },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 7)]
    arity: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Keep partitions lacking a main cut.
    #[arg(long)]
    allow_missing_main_cut: bool,
    #[arg(long, default_value_t = 2)]
    min_interior: usize,
    #[arg(long)]
    min_slices: Option<usize>,
    #[arg(long)]
    max_slices: Option<usize>,
    /// Search only this monomial or partition file (repeatable).
    #[arg(long)]
    seed: Vec<String>,
    /// Directory for `summary.json` and witness certificates.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Failure::Usage(_)
                | Failure::Core(
                    Error::Parse(_)
                    | Error::LimitExceeded { .. }
                    | Error::PartitionText { .. }
                    | Error::Dyadic(_),
                ) => EXIT_USAGE,
                Failure::Core(_) => EXIT_FAIL,
            })
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Count { arity, edges } => cmd_count(arity, edges),
        Command::Verify { name, budget } => cmd_verify(&name, budget),
        Command::Closure {
            monomial,
            rules,
            budget,
            quotient,
            list,
        } => cmd_closure(&monomial, &rules, budget, quotient, list),
        Command::Equiv {
            first,
            second,
            budget,
            out,
        } => cmd_equiv(&first, &second, budget, out.as_deref()),
        Command::Search(args) => cmd_search(args),
        Command::Render { input, format, out } => cmd_render(&input, format, out.as_deref()),
        Command::Replay { certificate, trace } => cmd_replay(&certificate, trace),
        Command::Certify { name, budget, out } => cmd_certify(&name, budget, out.as_deref()),
        Command::Interval { bracketing } => {
            let b: Bracketing = bracketing.parse()?;
            println!("{}", association_to_sequence(&b));
            Ok(EXIT_PASS)
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl From<dis_core::ParseError> for Failure {
    fn from(e: dis_core::ParseError) -> Self {
        Failure::Core(e.into())
    }
}

fn usage(message: String) -> Failure {
    Failure::Usage(message)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_count(n: usize, edges: bool) -> Result<u8, Failure> {
    let shapes = enumerate_shapes(n)?.len() as u64;
    let graph = interchange_graph(n)?;
    let classes = graph.vertices.len() as u64;
    let isolated = graph.isolated() as u64;
    let expected = (1..=SHAPE_COUNTS.len()).contains(&n).then(|| {
        (
            SHAPE_COUNTS[n - 1],
            SCHROEDER_COUNTS[n - 1],
            ISOLATED_COUNTS[n - 1],
        )
    });
    let mut ok = true;
    let rows = [
        ("shapes", shapes),
        ("assoc-classes", classes),
        ("isolated", isolated),
    ];
    for (k, (name, value)) in rows.iter().enumerate() {
        let want = expected.map(|e| [e.0, e.1, e.2][k]);
        let mark = match want {
            Some(w) if w == *value => "ok".to_string(),
            Some(w) => {
                ok = false;
                format!("MISMATCH (expected {w})")
            }
            None => "no reference value".to_string(),
        };
        println!("{name:<14} {value:>8}  {mark}");
    }
    if edges {
        println!("edges {}", graph.edges.len());
        print!("{}", graph.edge_list());
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn code(&self) -> u8 {
        match self {
            Verdict::Pass => EXIT_PASS,
            Verdict::Fail => EXIT_FAIL,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

fn cmd_verify(name: &str, budget: usize) -> Result<u8, Failure> {
    let mut names: Vec<&str> = Vec::new();
    if name == "all" {
        names.extend(catalog::RELATIONS.iter().map(|r| r.name));
        names.extend(catalog::NEGATIVE_CASES.iter().map(|c| c.name));
    } else {
        names.push(name);
    }
    let mut worst = EXIT_PASS;
    for n in names {
        let start = Instant::now();
        let verdict = if let Some(r) = catalog::relation(n) {
            verify_relation(r, budget)?
        } else if let Some(c) = catalog::negative_case(n) {
            verify_negative(c, budget)?
        } else {
            return Err(usage(format!("unknown target `{n}`")));
        };
        println!("{} {n} ({:.2?})", verdict.label(), start.elapsed());
        // a failure outranks an inconclusive result
        worst = match (worst, verdict.code()) {
            (EXIT_FAIL, _) | (_, EXIT_FAIL) => EXIT_FAIL,
            (a, b) => a.max(b),
        };
    }
    Ok(worst)
}

fn verify_relation(r: &Relation, budget: usize) -> Result<Verdict, Failure> {
    let p = r.parse()?;
    let sigma = r.transposition()?;
    println!("{}: {}", r.name, r.summary);
    println!("  transposition {}", sigma.display_with(&p.names));
    let cert = r.certificate()?;
    let mut ok = true;
    if cert.initial != p.lhs || cert.final_tree != p.rhs {
        println!("  shipped certificate: endpoints do not match the relation");
        ok = false;
    } else {
        match cert.replay() {
            Ok(_) => println!(
                "  shipped certificate: {} steps ({} interchange) replay ok",
                cert.steps.len(),
                cert.interchange_count()
            ),
            Err(e) => {
                println!("  shipped certificate: {e}");
                ok = false;
            }
        }
    }
    match check_equivalence(&p.lhs, &p.rhs, budget)? {
        Equivalence::Found(c) => match c.replay() {
            Ok(_) => println!(
                "  independent search: {} steps ({} interchange) replay ok",
                c.steps.len(),
                c.interchange_count()
            ),
            Err(e) => {
                println!("  independent search: certificate does not replay: {e}");
                ok = false;
            }
        },
        Equivalence::Distinct { expanded } => {
            println!("  independent search: classes are distinct after {expanded} expansions");
            ok = false;
        }
        Equivalence::NotFound { expanded } => {
            println!("  independent search: budget exhausted after {expanded} expansions");
            return Ok(if ok {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            });
        }
    }
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

fn verify_negative(c: &NegativeCase, budget: usize) -> Result<Verdict, Failure> {
    println!("{}: {}", c.name, c.summary);
    let reports = catalog::check_negative(c, budget)?;
    let mut verdict = Verdict::Pass;
    for (k, r) in reports.iter().enumerate() {
        println!(
            "  {}: {} binary monomials in {} associativity classes, {}",
            r.monomial.display_with(&r.names),
            r.binary_members,
            r.quotient_classes,
            if r.exhausted {
                "exhausted"
            } else {
                "budget exhausted"
            }
        );
        let mut witnesses = r.quotient_witnesses.clone();
        witnesses.extend(r.binary_witnesses.iter().cloned());
        witnesses.sort();
        witnesses.dedup();
        for w in &witnesses {
            println!("    commutation {}", w.display_with(&r.names));
        }
        if r.quotient_witnesses != r.binary_witnesses && r.exhausted {
            println!("    the two search routes disagree");
        }
        if k == 0 {
            if let Some(size) = c.first_closure_size {
                if r.binary_members != size {
                    println!("    expected {size} binary monomials");
                    verdict = Verdict::Fail;
                }
            }
        }
        if let Some(preserved) = r.order_preserved {
            println!(
                "    west-to-east order of {} {}",
                c.fixed_order.join(","),
                if preserved { "preserved" } else { "CHANGED" }
            );
        }
        if r.holds() {
            continue;
        }
        if r.exhausted || !witnesses.is_empty() {
            verdict = Verdict::Fail;
        } else if matches!(verdict, Verdict::Pass) {
            verdict = Verdict::Inconclusive;
        }
    }
    Ok(verdict)
}

fn parse_rules(text: &str) -> Result<RuleSet, Failure> {
    let mut rules = RuleSet {
        assoc_h: false,
        assoc_v: false,
        interchange: false,
    };
    for part in text.split(',') {
        let r: RuleSet = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("unknown rule set `{part}`")))?;
        rules.assoc_h |= r.assoc_h;
        rules.assoc_v |= r.assoc_v;
        rules.interchange |= r.interchange;
    }
    Ok(rules)
}

fn cmd_closure(
    text: &str,
    rules: &str,
    budget: usize,
    quotient: bool,
    list: bool,
) -> Result<u8, Failure> {
    let (t, names) = parse_named(text)?;
    let rules = parse_rules(rules)?;
    let exhausted = if quotient {
        if rules != RuleSet::ALL {
            return Err(usage("--quotient needs all rules".into()));
        }
        let q = quotient_closure(&to_alternating(&t), budget);
        println!("classes {}", q.len());
        println!("expanded {}", q.expanded);
        println!("exhausted {}", q.exhausted);
        if list {
            for m in q.members() {
                println!("{}", m.infix_with(&names));
            }
        }
        q.exhausted
    } else {
        let opts = ClosureOptions {
            rules,
            budget,
            ..ClosureOptions::default()
        };
        let c = closure_with(&t, &opts);
        println!("members {}", c.len());
        println!("expanded {}", c.stats.expanded);
        println!("exhausted {}", c.exhausted);
        if list {
            for m in c.members() {
                println!("{}", m.display_with(&names));
            }
        }
        c.exhausted
    };
    Ok(if exhausted {
        EXIT_PASS
    } else {
        EXIT_INCONCLUSIVE
    })
}

fn cmd_equiv(first: &str, second: &str, budget: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let (a, names) = parse_named(first)?;
    let b = dis_core::trees::parse_monomial_with(second, &names)?;
    match check_equivalence(&a, &b, budget)? {
        Equivalence::Found(c) => {
            eprintln!(
                "equal: {} steps ({} interchange)",
                c.steps.len(),
                c.interchange_count()
            );
            write_output(out, &c.to_json())?;
            Ok(EXIT_PASS)
        }
        Equivalence::Distinct { expanded } => {
            eprintln!("not equal ({expanded} expansions)");
            Ok(EXIT_FAIL)
        }
        Equivalence::NotFound { expanded } => {
            eprintln!("undecided: budget exhausted after {expanded} expansions");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

/// A monomial, or the contents of a partition file.
fn read_partition(input: &str) -> Result<(BlockPartition, Vec<String>), Failure> {
    if Path::new(input).is_file() {
        let text =
            fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input}: {e}")))?;
        return Ok((BlockPartition::from_text(&text)?, Vec::new()));
    }
    let (t, names) = parse_named(input)?;
    Ok((realize(&t), names))
}

fn cmd_search(args: SearchArgs) -> Result<u8, Failure> {
    let seeds = args
        .seed
        .iter()
        .map(|s| read_partition(s).map(|(p, _)| p))
        .collect::<Result<Vec<_>, Failure>>()?;
    let slice_bounds = match (args.min_slices, args.max_slices) {
        (None, None) => None,
        (lo, hi) => Some((lo.unwrap_or(1), hi.unwrap_or(usize::MAX))),
    };
    let config = SearchConfig {
        arity: args.arity,
        budget: args.budget,
        require_both_main_cuts: !args.allow_missing_main_cut,
        min_interior: args.min_interior,
        slice_bounds,
        seeds,
    };
    let report = run_search(&config)?;
    let s = &report.stats;
    println!("generated {}", s.generated);
    println!("skipped: missing main cut {}", s.missing_main_cut);
    println!(
        "skipped: fewer than {} interior blocks {}",
        config.min_interior, s.too_few_interior
    );
    println!("skipped: slice bounds {}", s.slice_bounds);
    println!("candidates {}", s.candidates);
    let incomplete = report.results.iter().filter(|r| !r.exhausted).count();
    println!("incomplete (budget) {incomplete}");
    println!("witnesses {}", report.witness_count());
    for r in &report.results {
        for w in &r.witnesses {
            println!("  {} {}", r.monomial, w.permutation);
        }
    }
    if let Some(dir) = &args.out {
        report
            .write_to(dir)
            .map_err(|e| usage(format!("cannot write {}: {e}", dir.display())))?;
    }
    Ok(if incomplete > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    })
}

fn cmd_render(input: &str, format: Format, out: Option<&Path>) -> Result<u8, Failure> {
    let (p, names) = read_partition(input)?;
    let text = match format {
        Format::Svg => to_svg(&p, &names),
        Format::Ascii => to_ascii(&p, &names),
    };
    write_output(out, &text)?;
    Ok(EXIT_PASS)
}

fn cmd_replay(path: &Path, trace: bool) -> Result<u8, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = RewriteCertificate::from_json(&text)?;
    if trace {
        if let Ok(trees) = cert.trace() {
            println!("     {}", trees[0]);
            for (step, t) in cert.steps.iter().zip(&trees[1..]) {
                let tag = if step.rule.family == RuleFamily::Interchange {
                    "*"
                } else {
                    " "
                };
                println!(
                    "{tag}    {t}    [{:?} {:?} at {}]",
                    step.rule.family, step.rule.direction, step.position
                );
            }
        }
    }
    match cert.replay() {
        Ok(_) => {
            println!(
                "PASS {} steps ({} interchange)",
                cert.steps.len(),
                cert.interchange_count()
            );
            Ok(EXIT_PASS)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_certify(name: &str, budget: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let r = catalog::relation(name).ok_or_else(|| usage(format!("unknown relation `{name}`")))?;
    let p = r.parse()?;
    let cert = if r.name == "configA" {
        let waypoints = catalog::config_a_waypoints(&p.names)?;
        lift_path(&p.lhs, &waypoints, &p.rhs)?
    } else {
        match check_equivalence(&p.lhs, &p.rhs, budget)? {
            Equivalence::Found(c) => c,
            Equivalence::Distinct { .. } => return Ok(EXIT_FAIL),
            Equivalence::NotFound { .. } => return Ok(EXIT_INCONCLUSIVE),
        }
    };
    eprintln!(
        "{}: {} steps ({} interchange)",
        r.name,
        cert.steps.len(),
        cert.interchange_count()
    );
    write_output(out, &cert.to_json())?;
    Ok(EXIT_PASS)
}
