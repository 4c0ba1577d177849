use super::bfs::Bfs;
use super::{neighbors, RewriteCertificate, RewriteStep, RuleSet};
use crate::trees::Tree;

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    pub rules: RuleSet,
    /// Maximum number of node expansions.
    pub budget: usize,
    /// Keep the rewrite step leading to each member, for certificates.
    pub track_steps: bool,
    pub parallel: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            rules: RuleSet::ALL,
            budget: DEFAULT_BUDGET,
            track_steps: false,
            parallel: true,
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureStats {
    pub expanded: usize,
    pub frontier_peak: usize,
}

/// Connected component of a monomial under the enabled rules, in BFS order.
pub struct ClosureResult {
    bfs: Bfs<Tree, RewriteStep>,
    pub exhausted: bool,
    pub stats: ClosureStats,
}

impl ClosureResult {
    pub fn members(&self) -> &[Tree] {
        &self.bfs.states
    }

    pub fn len(&self) -> usize {
        self.bfs.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bfs.states.is_empty()
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.bfs.lookup(&t.canonical_key())
    }

    pub fn contains(&self, t: &Tree) -> bool {
        self.index_of(t).is_some()
    }

    /// Certificate from the start to member `idx`, if steps were tracked.
    pub fn certificate_to(&self, idx: usize) -> Option<RewriteCertificate> {
        let labels = self.bfs.labels.as_ref()?;
        let path = self.bfs.path_to(idx);
        let steps = path[1..]
            .iter()
            .map(|&i| labels[i].clone().expect("non-root has a label"))
            .collect();
        Some(RewriteCertificate::new(
            self.bfs.states[0].clone(),
            steps,
            self.bfs.states[idx].clone(),
        ))
    }
}

/// Breadth-first closure with default options and the given rules/budget.
pub fn closure(t: &Tree, rules: RuleSet, budget: usize) -> ClosureResult {
    closure_with(
        t,
        &ClosureOptions {
            rules,
            budget,
            ..ClosureOptions::default()
        },
    )
}

pub fn closure_with(t: &Tree, opts: &ClosureOptions) -> ClosureResult {
    let rules = opts.rules;
    let expand = move |s: &Tree| {
        let ns = neighbors(s, rules);
        if cfg!(debug_assertions) {
            let mut before = s.leaves();
            before.sort_unstable();
            for (_, n) in &ns {
                let mut after = n.leaves();
                after.sort_unstable();
                debug_assert_eq!(before, after, "rewrite changed the leaf multiset");
            }
        }
        ns
    };
    let mut bfs = Bfs::new(t.clone(), t.canonical_key(), opts.track_steps);
    bfs.run(opts.budget, opts.parallel, &Tree::canonical_key, &expand);
    let stats = ClosureStats {
        expanded: bfs.expanded,
        frontier_peak: bfs.frontier_peak,
    };
    ClosureResult {
        exhausted: bfs.is_exhausted(),
        stats,
        bfs,
    }
}
