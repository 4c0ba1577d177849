mod common;

use proptest::prelude::*;

use dis_core::assoc::{right_comb, to_alternating};
use dis_core::catalog::negative_case;
use dis_core::geometry::{fiber, realize, BlockPartition};
use dis_core::rewrite::{
    check_equivalence, closure, closure_with, find_commutations, quotient_closure, ClosureOptions,
    Equivalence, DEFAULT_BUDGET,
};
use dis_core::trees::{enumerate_shapes, parse_monomial_with, parse_named, Symmetry};
use dis_core::{RewriteCertificate, RuleSet, Tree};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn realization_is_a_morphism(t in common::arb_monomial(1..=12), u in common::arb_monomial(1..=4)) {
        common::check_morphism(&t, &u).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn interchange_keeps_the_partition(t in common::arb_monomial(1..=12)) {
        common::check_interchange_preserves_partition(&t).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn associativity_keeps_the_normal_form(t in common::arb_monomial(1..=12)) {
        common::check_assoc_preserves_alternating(&t).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn boundary_data_is_invariant(t in common::arb_monomial(1..=12)) {
        common::check_boundary_stability(&t).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn partition_text_round_trips(t in common::arb_monomial(1..=12)) {
        let p = realize(&t);
        let back = BlockPartition::from_text(&p.to_text()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn monomial_text_round_trips(t in common::arb_monomial(1..=12)) {
        let text = t.to_string();
        let (back, names) = parse_named(&text).unwrap();
        prop_assert_eq!(back.relabel(&|l| names[l as usize - 1][1..].parse().unwrap()), t);
    }

    #[test]
    fn right_comb_is_associativity_equivalent(t in common::arb_monomial(1..=10)) {
        let comb = right_comb(&to_alternating(&t));
        prop_assert_eq!(to_alternating(&comb), to_alternating(&t));
        prop_assert_eq!(comb.leaves(), t.leaves());
    }

    #[test]
    fn symmetries_commute_with_realization(t in common::arb_monomial(1..=10), g in 0usize..8) {
        let g = Symmetry::all()[g];
        prop_assert_eq!(realize(&g.apply(&t)), realize(&t).transformed(g));
    }

    #[test]
    fn certificates_survive_json(t in common::arb_monomial(2..=8)) {
        let c = closure_with(&t, &ClosureOptions {
            budget: 5_000,
            track_steps: true,
            ..ClosureOptions::default()
        });
        let last = c.len() - 1;
        let cert = c.certificate_to(last).unwrap();
        let back = RewriteCertificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.replay().unwrap(), c.members()[last].clone());
    }
}

/// Every monomial of arity at most 6 lies in the fiber of its partition.
#[test]
fn monomials_lie_in_their_fibers() {
    for n in 1..=6 {
        for s in enumerate_shapes(n).unwrap() {
            assert!(fiber(&realize(&s)).unwrap().contains(&s), "{s}");
        }
    }
}

#[test]
fn interchange_does_not_change_the_partition_exhaustively() {
    for n in 1..=6 {
        for s in enumerate_shapes(n).unwrap() {
            common::check_interchange_preserves_partition(&s).unwrap();
            common::check_assoc_preserves_alternating(&s).unwrap();
        }
    }
}

/// Configuration C, as drawn, reaches configuration A's shape in two
/// labelings and so inherits a commutation from it.
#[test]
fn configuration_c_contains_configuration_a() {
    let case = negative_case("configC-negative").unwrap();
    let (t, names) = parse_named(case.monomials[0]).unwrap();
    let class = quotient_closure(&to_alternating(&t), DEFAULT_BUDGET);
    assert!(class.exhausted);
    for text in [
        "(((a h b) v (c h (d v f))) h (((g v e) h h) v (i h j)))",
        "(((a h b) v (c h (e v f))) h (((g v d) h h) v (i h j)))",
    ] {
        let a_shape = parse_monomial_with(text, &names).unwrap();
        assert!(class.contains(&to_alternating(&a_shape)), "{text}");
    }
    let report = find_commutations(&t, DEFAULT_BUDGET);
    let perms: Vec<String> = report
        .witnesses
        .iter()
        .map(|w| w.permutation.display_with(&names))
        .collect();
    assert_eq!(perms, ["(d e)"]);
    let w = &report.witnesses[0];
    let end = w.certificate.replay().unwrap();
    assert_eq!(end, t.relabel(&|l| w.permutation.0[l as usize - 1]));
    match check_equivalence(&t, &end, DEFAULT_BUDGET).unwrap() {
        Equivalence::Found(cert) => assert_eq!(cert.replay().unwrap(), end),
        other => panic!("{other:?}"),
    }
}

/// The bidirectional quotient search agrees with the plain binary closure.
#[test]
fn equivalence_agrees_with_binary_closure() {
    let shapes: Vec<Tree> = enumerate_shapes(5).unwrap();
    for a in shapes.iter().step_by(7) {
        let class = closure(a, RuleSet::ALL, DEFAULT_BUDGET);
        assert!(class.exhausted);
        for b in &shapes {
            let verdict = check_equivalence(a, b, DEFAULT_BUDGET).unwrap();
            match verdict {
                Equivalence::Found(cert) => {
                    assert!(class.contains(b), "{a} vs {b}");
                    assert_eq!(&cert.replay().unwrap(), b);
                }
                Equivalence::Distinct { .. } => assert!(!class.contains(b), "{a} vs {b}"),
                other => panic!("{other:?}"),
            }
        }
    }
}
