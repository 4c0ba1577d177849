//! Combinatorial counts: the interchange graph on associativity classes,
//! its isolated vertices, dihedral orbits of shapes and the agreement of
//! interchange classes with geometric fibers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::assoc::{
    binary_representatives, enumerate_alternating_with_limit, to_alternating, AltTree,
};
use crate::error::{Error, Result};
use crate::geometry::{fiber, realize};
use crate::rewrite::{closure, neighbors, RuleSet, DEFAULT_BUDGET};
use crate::trees::{enumerate_shapes, enumerate_shapes_with_limit, Symmetry, Tree};

pub const DEFAULT_GRAPH_LIMIT: usize = 8;

/// Vertices are the alternating trees of arity `n`; `(i, j)` with `i < j`
/// is an edge when one interchange application to a binary representative
/// of vertex `i` gives a representative of vertex `j`.
#[derive(Clone, Debug)]
pub struct InterchangeGraph {
    pub vertices: Vec<AltTree>,
    pub edges: Vec<(usize, usize)>,
}

impl InterchangeGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn isolated(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 0).count()
    }

    /// One `i j` pair per line.
    pub fn edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|(i, j)| format!("{i} {j}\n"))
            .collect()
    }
}

pub fn interchange_graph(n: usize) -> Result<InterchangeGraph> {
    interchange_graph_with_limit(n, DEFAULT_GRAPH_LIMIT)
}

pub fn interchange_graph_with_limit(n: usize, limit: usize) -> Result<InterchangeGraph> {
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "interchange graph arity",
            requested: n,
            limit,
        });
    }
    let vertices = enumerate_alternating_with_limit(n, limit)?;
    let index: FxHashMap<Vec<u8>, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.key(), i))
        .collect();
    let mut edges: Vec<(usize, usize)> = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, v)| {
            let mut out = Vec::new();
            for rep in binary_representatives(v) {
                for (_, next) in neighbors(&rep, RuleSet::INTERCHANGE) {
                    let j = index[&to_alternating(&next).shape().key()];
                    debug_assert_ne!(i, j, "interchange changes the class");
                    out.push((i.min(j), i.max(j)));
                }
            }
            out
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(InterchangeGraph { vertices, edges })
}

pub fn isolated_count(n: usize) -> Result<usize> {
    interchange_graph(n).map(|g| g.isolated())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// The member appearing first in shape enumeration order.
    pub representative: Tree,
    pub members: Vec<Tree>,
}

/// Orbits of the arity-`n` shapes under the dihedral group of order 8,
/// ordered by representative.
pub fn dihedral_orbits(n: usize) -> Result<Vec<Orbit>> {
    let shapes = enumerate_shapes(n)?;
    let index: FxHashMap<Vec<u8>, usize> = shapes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.canonical_key(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; shapes.len()];
    let mut orbits = Vec::new();
    for (i, s) in shapes.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = Symmetry::all()
            .iter()
            .map(|g| index[&g.apply(s).shape().canonical_key()])
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of[m] = orbits.len();
        }
        orbits.push(Orbit {
            representative: s.clone(),
            members: members.iter().map(|&m| shapes[m].clone()).collect(),
        });
    }
    Ok(orbits)
}

pub const FIBER_CHECK_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEquivalence {
    /// Interchange-only closures coincide with geometric fibers.
    pub holds: bool,
    /// Sizes of the classes with more than one shape, largest first.
    pub nonsingleton_sizes: Vec<usize>,
    pub class_count: usize,
}

/// Compares, for every shape, its interchange-only closure with the fiber of
/// its realization.
pub fn verify_fiber_equivalence(n: usize) -> Result<FiberEquivalence> {
    let shapes = enumerate_shapes_with_limit(n, FIBER_CHECK_LIMIT)?;
    let holds = shapes.par_iter().all(|s| {
        let c = closure(s, RuleSet::INTERCHANGE, DEFAULT_BUDGET);
        let Ok(mut f) = fiber(&realize(s)) else {
            return false;
        };
        let mut members = c.members().to_vec();
        members.sort_by_cached_key(Tree::canonical_key);
        f.sort_by_cached_key(Tree::canonical_key);
        c.exhausted && members == f
    });
    let mut classes: BTreeMap<Vec<crate::geometry::Rect>, usize> = BTreeMap::new();
    for s in &shapes {
        *classes.entry(realize(s).rects()).or_default() += 1;
    }
    let mut nonsingleton_sizes: Vec<usize> = classes.values().copied().filter(|&c| c > 1).collect();
    nonsingleton_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FiberEquivalence {
        holds,
        nonsingleton_sizes,
        class_count: classes.len(),
    })
}

/// Reference values for arities 1 through 7.
pub const SHAPE_COUNTS: [u64; 7] = [1, 2, 8, 40, 224, 1344, 8448];
pub const SCHROEDER_COUNTS: [u64; 7] = [1, 2, 6, 22, 90, 394, 1806];
pub const ISOLATED_COUNTS: [u64; 7] = [1, 2, 6, 20, 70, 254, 948];
