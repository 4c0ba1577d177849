#![allow(dead_code)]

use proptest::prelude::*;

use dis_core::assoc::to_alternating;
use dis_core::geometry::{classify_blocks, compose_partition, realize};
use dis_core::rewrite::neighbors;
use dis_core::{Op, RuleSet, Tree};

/// Standard monomials (leaves `1..=n` left to right) with `n` in `arity`.
pub fn arb_monomial(arity: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Tree> {
    arity.prop_flat_map(arb_shape).prop_map(|t| t.shape())
}

fn arb_shape(n: usize) -> BoxedStrategy<Tree> {
    if n == 1 {
        return Just(Tree::Leaf(1)).boxed();
    }
    (1..n, any::<bool>())
        .prop_flat_map(move |(k, h)| {
            let op = if h { Op::H } else { Op::V };
            (arb_shape(k), arb_shape(n - k)).prop_map(move |(l, r)| Tree::node(op, l, r))
        })
        .boxed()
}

/// Realization turns partial composition into substitution of a partition
/// into a block.
pub fn check_morphism(t: &Tree, u: &Tree) -> Result<(), String> {
    for i in 1..=t.arity() {
        let composed = t.partial_compose(i, u).map_err(|e| e.to_string())?;
        let geometric =
            compose_partition(&realize(t), i, &realize(u)).map_err(|e| e.to_string())?;
        if realize(&composed) != geometric {
            return Err(format!(
                "realize({t} o_{i} {u}) differs from the composed partition"
            ));
        }
    }
    Ok(())
}

pub fn check_interchange_preserves_partition(t: &Tree) -> Result<(), String> {
    let p = realize(t);
    for (step, next) in neighbors(t, RuleSet::INTERCHANGE) {
        if realize(&next) != p {
            return Err(format!(
                "{t}: interchange at {} changes the partition",
                step.position
            ));
        }
    }
    Ok(())
}

pub fn check_assoc_preserves_alternating(t: &Tree) -> Result<(), String> {
    let a = to_alternating(t);
    for (step, next) in neighbors(t, RuleSet::ASSOC) {
        if to_alternating(&next) != a {
            return Err(format!(
                "{t}: associativity at {} changes the alternating tree",
                step.position
            ));
        }
    }
    Ok(())
}

/// Border/interior status and the order of blocks along each side survive
/// every rewrite.
pub fn check_boundary_stability(t: &Tree) -> Result<(), String> {
    let p = realize(t);
    let classes = classify_blocks(&p);
    let orders = p.boundary_orders();
    for (step, next) in neighbors(t, RuleSet::ALL) {
        let q = realize(&next);
        let mut a = classes.clone();
        let mut b = classify_blocks(&q);
        a.sort();
        b.sort();
        if a != b {
            return Err(format!(
                "{t}: step at {} changes block classes",
                step.position
            ));
        }
        if q.boundary_orders() != orders {
            return Err(format!(
                "{t}: step at {} changes a boundary order",
                step.position
            ));
        }
    }
    Ok(())
}

pub fn check_all(t: &Tree, u: &Tree) -> Result<(), String> {
    check_morphism(t, u)?;
    check_interchange_preserves_partition(t)?;
    check_assoc_preserves_alternating(t)?;
    check_boundary_stability(t)
}
