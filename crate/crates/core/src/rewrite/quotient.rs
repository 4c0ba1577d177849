//! Search modulo associativity.
//!
//! States are alternating trees; an edge is one application of the
//! interchange law to some binary representative. Paths found here are
//! lifted back to explicit binary certificates, with the reassociations
//! spelled out as `AssocH`/`AssocV` steps.

use std::collections::BTreeMap;
use std::fmt;

use super::bfs::Bfs;
use super::{
    apply_redex, closure, Direction, RewriteCertificate, RewriteStep, RuleFamily, RuleSet,
};
use crate::assoc::{right_comb, to_alternating, AltTree};
use crate::error::{Error, Result};
use crate::trees::{Dir, Op, Position, Tree};

/// One interchange move on an alternating tree: at the node reached by
/// `path` (child indices), the adjacent children `pair` and `pair + 1` are
/// split after `left_split` and `right_split` of their own children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltMove {
    pub path: Vec<usize>,
    pub pair: usize,
    pub left_split: usize,
    pub right_split: usize,
}

/// Every interchange move and its result.
pub fn interchange_moves(a: &AltTree) -> Vec<(AltMove, AltTree)> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_moves(a, a, &mut path, &mut out);
    out
}

fn collect_moves(
    root: &AltTree,
    a: &AltTree,
    path: &mut Vec<usize>,
    out: &mut Vec<(AltMove, AltTree)>,
) {
    let AltTree::Node(_, cs) = a else { return };
    for pair in 0..cs.len() - 1 {
        let (AltTree::Node(_, l), AltTree::Node(_, r)) = (&cs[pair], &cs[pair + 1]) else {
            continue;
        };
        for left_split in 1..l.len() {
            for right_split in 1..r.len() {
                let mv = AltMove {
                    path: path.clone(),
                    pair,
                    left_split,
                    right_split,
                };
                let result = apply_move(root, &mv).expect("enumerated move applies");
                out.push((mv, result));
            }
        }
    }
    for (i, c) in cs.iter().enumerate() {
        path.push(i);
        collect_moves(root, c, path, out);
        path.pop();
    }
}

/// Applies a move, renormalizing along the path.
pub(crate) fn apply_move(a: &AltTree, mv: &AltMove) -> Option<AltTree> {
    apply_move_at(a, &mv.path, mv)
}

fn apply_move_at(a: &AltTree, path: &[usize], mv: &AltMove) -> Option<AltTree> {
    let AltTree::Node(x, cs) = a else { return None };
    let mut children = cs.clone();
    if let Some((&k, rest)) = path.split_first() {
        let new = apply_move_at(cs.get(k)?, rest, mv)?;
        children[k] = new;
        return Some(AltTree::join(*x, children));
    }
    let (AltTree::Node(y, l), AltTree::Node(y2, r)) = (cs.get(mv.pair)?, cs.get(mv.pair + 1)?)
    else {
        return None;
    };
    if y != y2
        || mv.left_split == 0
        || mv.left_split >= l.len()
        || mv.right_split == 0
        || mv.right_split >= r.len()
    {
        return None;
    }
    let y = *y;
    let part = |items: &[AltTree]| AltTree::join(y, items.iter().cloned());
    let (a1, b1) = (part(&l[..mv.left_split]), part(&l[mv.left_split..]));
    let (c1, d1) = (part(&r[..mv.right_split]), part(&r[mv.right_split..]));
    let new = AltTree::Node(
        y,
        vec![AltTree::join(*x, [a1, c1]), AltTree::join(*x, [b1, d1])],
    );
    children.splice(mv.pair..mv.pair + 2, [new]);
    Some(AltTree::join(*x, children))
}

/// Right-comb representative of `a` in which the move's redex is a binary
/// subtree; returns the tree and the redex position.
fn representative_with_redex(a: &AltTree, mv: &AltMove) -> (Tree, Position) {
    let mut pos = Vec::new();
    let tree = focus(a, &mv.path, mv, &mut pos);
    (tree, Position(pos))
}

fn focus(a: &AltTree, path: &[usize], mv: &AltMove, pos: &mut Vec<Dir>) -> Tree {
    let AltTree::Node(x, cs) = a else {
        unreachable!("move paths address internal nodes")
    };
    let (items, idx): (Vec<Tree>, usize) = match path.split_first() {
        Some((&k, rest)) => {
            let mut sub_pos = Vec::new();
            let sub = focus(&cs[k], rest, mv, &mut sub_pos);
            let mut items: Vec<Tree> = cs.iter().map(right_comb).collect();
            items[k] = sub;
            push_comb_position(pos, k, items.len());
            pos.extend(sub_pos);
            return comb(*x, items);
        }
        None => {
            let split = |c: &AltTree, s: usize| {
                let AltTree::Node(y, ds) = c else {
                    unreachable!("interchange operands are internal")
                };
                Tree::node(
                    *y,
                    comb(*y, ds[..s].iter().map(right_comb).collect()),
                    comb(*y, ds[s..].iter().map(right_comb).collect()),
                )
            };
            let redex = Tree::node(
                *x,
                split(&cs[mv.pair], mv.left_split),
                split(&cs[mv.pair + 1], mv.right_split),
            );
            let mut items: Vec<Tree> = Vec::with_capacity(cs.len() - 1);
            items.extend(cs[..mv.pair].iter().map(right_comb));
            items.push(redex);
            items.extend(cs[mv.pair + 2..].iter().map(right_comb));
            (items, mv.pair)
        }
    };
    push_comb_position(pos, idx, items.len());
    comb(*x, items)
}

/// Position of item `idx` inside a right comb of `len` items.
fn push_comb_position(pos: &mut Vec<Dir>, idx: usize, len: usize) {
    pos.extend(std::iter::repeat_n(Dir::Right, idx));
    if idx + 1 < len {
        pos.push(Dir::Left);
    }
}

fn comb(op: Op, items: Vec<Tree>) -> Tree {
    let mut it = items.into_iter().rev();
    let last = it.next().expect("nonempty comb");
    it.fold(last, |acc, t| Tree::node(op, t, acc))
}

/// Reassociates `t` into the right-comb form of its alternating tree,
/// recording the forward associativity steps.
fn steps_to_right_comb(t: &Tree, pos: &mut Vec<Dir>, steps: &mut Vec<RewriteStep>) -> Tree {
    let Tree::Node(x, l, r) = t else {
        return t.clone();
    };
    let family = match x {
        Op::H => RuleFamily::AssocH,
        Op::V => RuleFamily::AssocV,
    };
    let (mut l, mut r) = ((**l).clone(), (**r).clone());
    while let Tree::Node(o, ll, lr) = &l {
        if o != x {
            break;
        }
        steps.push(RewriteStep::new(
            family,
            Direction::Forward,
            Position(pos.clone()),
        ));
        let new_r = Tree::Node(*x, lr.clone(), r.into());
        l = (**ll).clone();
        r = new_r;
    }
    pos.push(Dir::Left);
    let l = steps_to_right_comb(&l, pos, steps);
    pos.pop();
    pos.push(Dir::Right);
    let r = steps_to_right_comb(&r, pos, steps);
    pos.pop();
    Tree::node(*x, l, r)
}

/// Associativity steps from `s` to `t`, which must have the same
/// alternating tree.
pub fn assoc_path(s: &Tree, t: &Tree) -> Result<Vec<RewriteStep>> {
    let mut forward = Vec::new();
    let rc_s = steps_to_right_comb(s, &mut Vec::new(), &mut forward);
    let mut backward = Vec::new();
    let rc_t = steps_to_right_comb(t, &mut Vec::new(), &mut backward);
    if rc_s != rc_t {
        return Err(Error::Certificate(format!(
            "{s} and {t} differ modulo associativity"
        )));
    }
    forward.extend(backward.iter().rev().map(RewriteStep::inverse));
    Ok(forward)
}

/// Turns a sequence of alternating trees, consecutive ones differing by one
/// interchange move, into a binary certificate from `start` to `target`.
pub fn lift_path(start: &Tree, alts: &[AltTree], target: &Tree) -> Result<RewriteCertificate> {
    let mut cur = start.clone();
    let mut steps = Vec::new();
    if alts.first().is_some_and(|a| *a != to_alternating(start)) {
        return Err(Error::Certificate(
            "path does not start at the initial monomial".into(),
        ));
    }
    for w in alts.windows(2) {
        let Some((mv, _)) = interchange_moves(&w[0])
            .into_iter()
            .find(|(_, b)| *b == w[1])
        else {
            return Err(Error::Certificate(format!(
                "no interchange move from {} to {}",
                w[0], w[1]
            )));
        };
        let (rep, pos) = representative_with_redex(&w[0], &mv);
        steps.extend(assoc_path(&cur, &rep)?);
        let dir = match rep.subtree(&pos).and_then(Tree::op) {
            Some(Op::V) => Direction::Forward,
            _ => Direction::Backward,
        };
        let step = RewriteStep::new(RuleFamily::Interchange, dir, pos);
        cur = apply_redex(&rep, &step)?;
        steps.push(step);
    }
    steps.extend(assoc_path(&cur, target)?);
    let cert = RewriteCertificate::new(start.clone(), steps, target.clone());
    cert.replay()
        .map_err(|e| Error::Certificate(e.to_string()))?;
    Ok(cert)
}

fn expand_alt(a: &AltTree) -> Vec<((), AltTree)> {
    interchange_moves(a)
        .into_iter()
        .map(|(_, b)| ((), b))
        .collect()
}

/// Interchange class of an associativity class, in BFS order.
pub struct QuotientClosure {
    bfs: Bfs<AltTree, ()>,
    pub exhausted: bool,
    pub expanded: usize,
    pub frontier_peak: usize,
}

impl QuotientClosure {
    pub fn members(&self) -> &[AltTree] {
        &self.bfs.states
    }

    pub fn len(&self) -> usize {
        self.bfs.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bfs.states.is_empty()
    }

    pub fn contains(&self, a: &AltTree) -> bool {
        self.bfs.lookup(&a.key()).is_some()
    }

    /// Alternating trees on a shortest path from the start to member `idx`.
    pub fn path_to(&self, idx: usize) -> Vec<AltTree> {
        self.bfs
            .path_to(idx)
            .into_iter()
            .map(|i| self.bfs.states[i].clone())
            .collect()
    }
}

pub fn quotient_closure(a: &AltTree, budget: usize) -> QuotientClosure {
    let mut bfs = Bfs::new(a.clone(), a.key(), false);
    bfs.run(budget, true, &AltTree::key, &expand_alt);
    QuotientClosure {
        exhausted: bfs.is_exhausted(),
        expanded: bfs.expanded,
        frontier_peak: bfs.frontier_peak,
        bfs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// A certificate from the first monomial to the second.
    Found(RewriteCertificate),
    /// Budget ran out first.
    NotFound { expanded: usize },
    /// One side's class was explored completely without meeting the other.
    Distinct { expanded: usize },
}

/// Bidirectional search modulo associativity, lifted to a binary
/// certificate on success.
pub fn check_equivalence(t1: &Tree, t2: &Tree, budget: usize) -> Result<Equivalence> {
    let (mut l1, mut l2) = (t1.leaves(), t2.leaves());
    l1.sort_unstable();
    l2.sort_unstable();
    if l1 != l2 {
        return Err(Error::Incomparable);
    }
    let (a1, a2) = (to_alternating(t1), to_alternating(t2));
    if a1 == a2 {
        let steps = assoc_path(t1, t2)?;
        return Ok(Equivalence::Found(RewriteCertificate::new(
            t1.clone(),
            steps,
            t2.clone(),
        )));
    }
    let mut sides = [
        Bfs::<AltTree, ()>::new(a1.clone(), a1.key(), false),
        Bfs::new(a2.clone(), a2.key(), false),
    ];
    loop {
        let expanded = sides[0].expanded + sides[1].expanded;
        if sides[0].is_exhausted() || sides[1].is_exhausted() {
            return Ok(Equivalence::Distinct { expanded });
        }
        if expanded >= budget {
            return Ok(Equivalence::NotFound { expanded });
        }
        let s = usize::from(sides[1].frontier_len() < sides[0].frontier_len());
        let new = sides[s].expand_level(budget - expanded, true, &AltTree::key, &expand_alt);
        let other = &sides[1 - s];
        let meet = new
            .clone()
            .find_map(|i| other.lookup(&sides[s].states[i].key()).map(|j| (i, j)));
        if let Some((i, j)) = meet {
            let mut path: Vec<AltTree> = sides[s]
                .path_to(i)
                .into_iter()
                .map(|k| sides[s].states[k].clone())
                .collect();
            let mut back: Vec<AltTree> = other
                .path_to(j)
                .into_iter()
                .map(|k| other.states[k].clone())
                .collect();
            back.pop();
            back.reverse();
            path.extend(back);
            if s == 1 {
                path.reverse();
            }
            return lift_path(t1, &path, t2).map(Equivalence::Found);
        }
    }
}

/// A permutation of `1..=n`, stored as images: `images[l - 1] = σ(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn moved(&self) -> Vec<u32> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize != i + 1)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    pub fn is_transposition(&self) -> bool {
        self.moved().len() == 2
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 1..=self.0.len() as u32 {
            if seen[start as usize - 1] || self.0[start as usize - 1] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut x = self.0[start as usize - 1];
            while x != start {
                seen[x as usize - 1] = true;
                cycle.push(x);
                x = self.0[x as usize - 1];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with `names[l - 1]` for each point.
    pub fn display_with(&self, names: &[String]) -> String {
        let name = |l: u32| {
            names
                .get(l as usize - 1)
                .cloned()
                .unwrap_or_else(|| l.to_string())
        };
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter().map(|&l| name(l)).collect::<Vec<_>>().join(" ")
                )
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// The permutation sending the labels of `from`, read left to right, to the
/// labels of `to` at the same leaf positions.
fn relabeling(from: &[u32], to: &[u32]) -> Permutation {
    let mut images: Vec<u32> = (1..=from.len() as u32).collect();
    for (&a, &b) in from.iter().zip(to) {
        images[a as usize - 1] = b;
    }
    Permutation(images)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationWitness {
    pub monomial: Tree,
    pub permutation: Permutation,
    /// Certificate from `monomial` to `monomial` relabeled by `permutation`.
    pub certificate: RewriteCertificate,
}

impl CommutationWitness {
    pub fn is_transposition(&self) -> bool {
        self.permutation.is_transposition()
    }
}

#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub witnesses: Vec<CommutationWitness>,
    /// False when the budget stopped the search; witnesses may be missing.
    pub exhausted: bool,
    /// Number of associativity classes visited.
    pub class_size: usize,
    pub expanded: usize,
}

/// Scans the class of `t` for monomials of the same shape with other leaf
/// labels. Each permutation is reported once, with a certificate using the
/// fewest interchange steps.
pub fn find_commutations(t: &Tree, budget: usize) -> CommutationReport {
    let base = to_alternating(t);
    let shape = base.shape();
    let base_leaves = base.leaves();
    let q = quotient_closure(&base, budget);
    let mut found: BTreeMap<Permutation, usize> = BTreeMap::new();
    let mut order = Vec::new();
    for (i, m) in q.members().iter().enumerate().skip(1) {
        if m.shape() != shape {
            continue;
        }
        let sigma = relabeling(&base_leaves, &m.leaves());
        if sigma.is_identity() || found.contains_key(&sigma) {
            continue;
        }
        found.insert(sigma.clone(), i);
        order.push((sigma, i));
    }
    let witnesses = order
        .into_iter()
        .map(|(sigma, i)| {
            let images = sigma.0.clone();
            let target = t.relabel(&|l| images[l as usize - 1]);
            let certificate = lift_path(t, &q.path_to(i), &target).expect("quotient paths lift");
            CommutationWitness {
                monomial: t.clone(),
                permutation: sigma,
                certificate,
            }
        })
        .collect();
    CommutationReport {
        witnesses,
        exhausted: q.exhausted,
        class_size: q.len(),
        expanded: q.expanded,
    }
}

/// Independent route: permutations found by scanning the full binary
/// closure. Returns the sorted permutations and whether the closure was
/// exhausted.
pub fn commutation_permutations_binary(t: &Tree, budget: usize) -> (Vec<Permutation>, bool) {
    let c = closure(t, RuleSet::ALL, budget);
    let shape = t.shape();
    let leaves = t.leaves();
    let mut perms: Vec<Permutation> = c
        .members()
        .iter()
        .filter(|m| m.shape() == shape)
        .map(|m| relabeling(&leaves, &m.leaves()))
        .filter(|p| !p.is_identity())
        .collect();
    perms.sort();
    perms.dedup();
    (perms, c.exhausted)
}
