//! Search for commutativity relations over dyadic block partitions.
//!
//! Candidates are generated by repeated bisection, deduplicated by their
//! block rectangles, filtered by the geometric pruning predicates and then
//! handed to [`find_commutations`] on one monomial of each fiber.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    classify_blocks, fiber, main_cuts, slice_count, Axis, BlockClass, BlockPartition, Orientation,
    Rect,
};
use crate::rewrite::{find_commutations, CommutationWitness, DEFAULT_BUDGET};
use crate::trees::Tree;

/// Largest arity accepted for exhaustive candidate generation.
pub const SEARCH_ARITY_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub arity: usize,
    /// Node budget for each candidate's class.
    pub budget: usize,
    pub require_both_main_cuts: bool,
    pub min_interior: usize,
    /// Inclusive bounds on the number of parallel slices, met in at least
    /// one direction.
    pub slice_bounds: Option<(usize, usize)>,
    /// When nonempty, only these partitions are searched.
    pub seeds: Vec<BlockPartition>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            arity: 7,
            budget: DEFAULT_BUDGET,
            require_both_main_cuts: true,
            min_interior: 2,
            slice_bounds: None,
            seeds: Vec::new(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::LimitExceeded {
                what: "search budget",
                requested: 0,
                limit: usize::MAX,
            });
        }
        if self.seeds.is_empty() && (self.arity == 0 || self.arity > SEARCH_ARITY_LIMIT) {
            return Err(Error::LimitExceeded {
                what: "search arity",
                requested: self.arity,
                limit: SEARCH_ARITY_LIMIT,
            });
        }
        if let Some((lo, hi)) = self.slice_bounds {
            if lo > hi {
                return Err(Error::InvalidPartition(format!(
                    "empty slice bounds {lo}..={hi}"
                )));
            }
        }
        Ok(())
    }
}

/// How many partitions each pruning predicate removed, in the order the
/// predicates are applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneStats {
    pub generated: usize,
    pub missing_main_cut: usize,
    pub too_few_interior: usize,
    pub slice_bounds: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug)]
pub struct CandidateResult {
    pub partition: BlockPartition,
    /// The fiber member the class search started from.
    pub monomial: Tree,
    pub exhausted: bool,
    pub class_size: usize,
    pub witnesses: Vec<CommutationWitness>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub stats: PruneStats,
    pub results: Vec<CandidateResult>,
}

impl SearchReport {
    pub fn witness_count(&self) -> usize {
        self.results.iter().map(|r| r.witnesses.len()).sum()
    }

    pub fn all_exhausted(&self) -> bool {
        self.results.iter().all(|r| r.exhausted)
    }

    /// Writes `summary.json` and one `witness-<k>.json` certificate per
    /// witness into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut k = 0;
        let mut candidates = Vec::new();
        for r in &self.results {
            let mut files = Vec::new();
            for w in &r.witnesses {
                k += 1;
                let name = format!("witness-{k:04}.json");
                fs::write(dir.join(&name), w.certificate.to_json())?;
                files.push(WitnessSummary {
                    permutation: w.permutation.to_string(),
                    certificate: name,
                });
            }
            candidates.push(CandidateSummary {
                partition: r.partition.to_text(),
                monomial: r.monomial.to_string(),
                exhausted: r.exhausted,
                class_size: r.class_size,
                witnesses: files,
            });
        }
        let summary = Summary {
            stats: &self.stats,
            candidates,
        };
        let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        text.push('\n');
        fs::write(dir.join("summary.json"), text)
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    stats: &'a PruneStats,
    candidates: Vec<CandidateSummary>,
}

#[derive(Serialize)]
struct CandidateSummary {
    partition: String,
    monomial: String,
    exhausted: bool,
    class_size: usize,
    witnesses: Vec<WitnessSummary>,
}

#[derive(Serialize)]
struct WitnessSummary {
    permutation: String,
    certificate: String,
}

/// All dyadic partitions with `n` blocks, each once, in a deterministic
/// order.
pub fn dyadic_partitions(n: usize) -> Result<Vec<BlockPartition>> {
    if n == 0 || n > SEARCH_ARITY_LIMIT {
        return Err(Error::LimitExceeded {
            what: "partition arity",
            requested: n,
            limit: SEARCH_ARITY_LIMIT,
        });
    }
    let mut layer = vec![BlockPartition::unit()];
    for _ in 1..n {
        let next: Vec<Vec<BlockPartition>> = layer
            .par_iter()
            .map(|p| {
                let mut out = Vec::with_capacity(2 * p.len());
                for i in 0..p.len() {
                    for axis in [Axis::X, Axis::Y] {
                        out.push(p.bisect(i, axis).expect("index in range"));
                    }
                }
                out
            })
            .collect();
        let mut seen: FxHashSet<Vec<Rect>> = FxHashSet::default();
        layer = next
            .into_iter()
            .flatten()
            .filter(|p| seen.insert(p.rects()))
            .collect();
    }
    layer.sort_by_cached_key(BlockPartition::rects);
    Ok(layer)
}

/// Applies the pruning predicates, updating `stats`.
pub fn passes_pruning(p: &BlockPartition, config: &SearchConfig, stats: &mut PruneStats) -> bool {
    if config.require_both_main_cuts && !main_cuts(p, &Rect::UNIT).is_ok_and(|m| m.both()) {
        stats.missing_main_cut += 1;
        return false;
    }
    let interior = classify_blocks(p)
        .iter()
        .filter(|(_, c)| *c == BlockClass::Interior)
        .count();
    if interior < config.min_interior {
        stats.too_few_interior += 1;
        return false;
    }
    if let Some((lo, hi)) = config.slice_bounds {
        let fits = [Orientation::Horizontal, Orientation::Vertical]
            .iter()
            .any(|&o| {
                main_cuts(p, &Rect::UNIT).is_ok_and(|m| m.has(o))
                    && (lo..=hi).contains(&slice_count(p, o))
            });
        if !fits {
            stats.slice_bounds += 1;
            return false;
        }
    }
    true
}

pub fn candidates(config: &SearchConfig) -> Result<(Vec<BlockPartition>, PruneStats)> {
    config.validate()?;
    let pool = if config.seeds.is_empty() {
        dyadic_partitions(config.arity)?
    } else {
        config.seeds.clone()
    };
    let mut stats = PruneStats {
        generated: pool.len(),
        ..PruneStats::default()
    };
    let kept: Vec<BlockPartition> = pool
        .into_iter()
        .filter(|p| passes_pruning(p, config, &mut stats))
        .collect();
    stats.candidates = kept.len();
    Ok((kept, stats))
}

/// Runs the class search on every candidate, in parallel; results keep the
/// candidate order.
pub fn run_search(config: &SearchConfig) -> Result<SearchReport> {
    let (kept, stats) = candidates(config)?;
    let results = kept
        .into_par_iter()
        .map(|partition| {
            let monomial = fiber(&partition)?.swap_remove(0);
            let report = find_commutations(&monomial, config.budget);
            Ok(CandidateResult {
                partition,
                monomial,
                exhausted: report.exhausted,
                class_size: report.class_size,
                witnesses: report.witnesses,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport { stats, results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::SHAPE_COUNTS;
    use crate::geometry::realize;
    use crate::trees::enumerate_shapes;

    #[test]
    fn partitions_match_realized_shapes() {
        for n in 1..=5 {
            let mut realized: Vec<Vec<Rect>> = enumerate_shapes(n)
                .unwrap()
                .iter()
                .map(|s| realize(s).rects())
                .collect();
            realized.sort();
            realized.dedup();
            let generated: Vec<Vec<Rect>> = dyadic_partitions(n)
                .unwrap()
                .iter()
                .map(BlockPartition::rects)
                .collect();
            assert_eq!(generated, realized, "n = {n}");
            assert!(generated.len() as u64 <= SHAPE_COUNTS[n - 1]);
        }
    }

    #[test]
    fn pruning_skips_partitions_without_both_cuts() {
        let config = SearchConfig {
            arity: 4,
            min_interior: 0,
            ..SearchConfig::default()
        };
        let (kept, stats) = candidates(&config).unwrap();
        assert_eq!(stats.generated, dyadic_partitions(4).unwrap().len());
        assert!(stats.missing_main_cut > 0);
        assert!(kept
            .iter()
            .all(|p| main_cuts(p, &Rect::UNIT).unwrap().both()));
        assert_eq!(stats.candidates + stats.missing_main_cut, stats.generated);
    }

    #[test]
    fn small_search_is_empty() {
        let config = SearchConfig {
            arity: 5,
            min_interior: 0,
            ..SearchConfig::default()
        };
        let report = run_search(&config).unwrap();
        assert!(report.all_exhausted());
        assert_eq!(report.witness_count(), 0);
    }

    #[test]
    fn config_limits() {
        assert!(SearchConfig {
            arity: 99,
            ..SearchConfig::default()
        }
        .validate()
        .is_err());
        assert!(SearchConfig {
            budget: 0,
            ..SearchConfig::default()
        }
        .validate()
        .is_err());
    }
}
