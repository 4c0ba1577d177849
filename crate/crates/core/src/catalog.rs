//! Known commutativity relations and configurations known to admit none.
//!
//! Monomials are written with letters; the right-hand side of a relation
//! uses the letters of its left-hand side, so the two sides differ by a
//! relabeling.

use crate::assoc::{parse_alternating_with, AltTree};
use crate::error::{Error, Result};
use crate::geometry::{blocks_left_to_right, realize};
use crate::rewrite::{
    closure, commutation_permutations_binary, find_commutations, Permutation, RewriteCertificate,
    RuleSet,
};
use crate::trees::{parse_monomial_with, parse_named, Tree};

/// A commutativity relation `lhs ≡ rhs` where `rhs` transposes two
/// arguments.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub summary: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub swapped: (&'static str, &'static str),
    certificate: &'static str,
}

/// Parsed sides of a relation.
#[derive(Clone, Debug)]
pub struct ParsedRelation {
    pub lhs: Tree,
    pub rhs: Tree,
    pub names: Vec<String>,
}

impl Relation {
    pub fn parse(&self) -> Result<ParsedRelation> {
        let (lhs, names) = parse_named(self.lhs)?;
        let rhs = parse_monomial_with(self.rhs, &names)?;
        Ok(ParsedRelation { lhs, rhs, names })
    }

    /// The shipped certificate from `lhs` to `rhs`.
    pub fn certificate(&self) -> Result<RewriteCertificate> {
        RewriteCertificate::from_json(self.certificate)
    }

    /// The transposition of the two swapped letters.
    pub fn transposition(&self) -> Result<Permutation> {
        let p = self.parse()?;
        let idx = |name: &str| {
            p.names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Certificate(format!("no argument `{name}`")))
        };
        let (i, j) = (idx(self.swapped.0)?, idx(self.swapped.1)?);
        let mut images: Vec<u32> = (1..=p.names.len() as u32).collect();
        images.swap(i, j);
        Ok(Permutation(images))
    }
}

const KOCK16_LHS: &str =
    "((((a h b) h (c h d)) v ((e h f) h (g h h))) v (((i h j) h (k h l)) v ((m h n) h (p h q))))";
const KOCK16_RHS: &str =
    "((((a h b) h (c h d)) v ((e h g) h (f h h))) v (((i h j) h (k h l)) v ((m h n) h (p h q))))";

pub const RELATIONS: [Relation; 5] = [
    Relation {
        name: "kock16",
        summary: "4x4 grid of sixteen arguments; the two middle blocks of the second row commute",
        lhs: KOCK16_LHS,
        rhs: KOCK16_RHS,
        swapped: ("f", "g"),
        certificate: include_str!("../certificates/kock16.json"),
    },
    Relation {
        name: "bm9",
        summary: "nine arguments, the smallest arity admitting a commutativity relation",
        lhs: "(((a h b) h c) v (((d h (e v f)) h (g v h)) h i))",
        rhs: "(((a h b) h c) v (((d h (g v f)) h (e v h)) h i))",
        swapped: ("e", "g"),
        certificate: include_str!("../certificates/bm9.json"),
    },
    Relation {
        name: "configA",
        summary: "ten arguments, four vertical slices, configuration A",
        lhs: "(((a h b) v (c h (d v e))) h (((f v g) h h) v (i h j)))",
        rhs: "(((a h b) v (c h (g v e))) h (((f v d) h h) v (i h j)))",
        swapped: ("d", "g"),
        certificate: include_str!("../certificates/configA.json"),
    },
    Relation {
        name: "configB",
        summary: "ten arguments, four vertical slices, configuration B",
        lhs: "(((a h (b v c)) v (f h (g v h))) h ((d h e) v (i h j)))",
        rhs: "(((a h (b v g)) v (f h (c v h))) h ((d h e) v (i h j)))",
        swapped: ("c", "g"),
        certificate: include_str!("../certificates/configB.json"),
    },
    Relation {
        name: "case2",
        summary: "ten arguments, three horizontal slices with 2, 5 and 3 blocks",
        lhs: "((a h (b v c)) v (((d h e) v i) h (((f h g) h h) v j)))",
        rhs: "((a h (b v c)) v (((d h e) v i) h (((g h f) h h) v j)))",
        swapped: ("f", "g"),
        certificate: include_str!("../certificates/case2.json"),
    },
];

pub fn relation(name: &str) -> Option<&'static Relation> {
    RELATIONS.iter().find(|r| r.name == name)
}

/// Intermediate monomials for configuration A, modulo associativity: each
/// differs from the next by one application of the interchange law.
pub const CONFIG_A_WAYPOINTS: [&str; 21] = [
    "((a h b) v (c h (d v e))) h (((f v g) h h) v (i h j))",
    "((a h b) v (c h (d v e))) h ((f v g v i) h (h v j))",
    "((a h b) v (c h (d v e))) h ((f h h) v ((g v i) h j))",
    "((a v c) h (b v d v e)) h ((f h h) v ((g v i) h j))",
    "((a h (b v d)) v (c h e)) h ((f h h) v ((g v i) h j))",
    "((a h (b v d)) h (f h h)) v (c h e h (g v i) h j)",
    "((a h (b v d)) v (c h e h (g v i))) h ((f h h) v j)",
    "((a v (c h e)) h (b v d v g v i)) h ((f h h) v j)",
    "((a h (b v d v g)) v (c h e h i)) h ((f h h) v j)",
    "(a h (b v d v g) h (f h h)) v (c h e h i h j)",
    "((a h (b v d v g)) v (c h e)) h ((f h h) v (i h j))",
    "((a v c) h (b v d v g v e)) h ((f h h) v (i h j))",
    "((a h (b v d)) v (c h (g v e))) h ((f h h) v (i h j))",
    "(a h (b v d) h (f h h)) v (c h (g v e) h (i h j))",
    "(a v (c h (g v e))) h (((b v d) h f h h) v (i h j))",
    "(a v (c h (g v e))) h ((b v d v i) h ((f h h) v j))",
    "(a v (c h (g v e))) h ((b h f h h) v ((d v i) h j))",
    "(a h b h f h h) v ((c h (g v e)) h ((d v i) h j))",
    "((a h b) v (c h (g v e))) h ((f h h) v ((d v i) h j))",
    "((a h b) v (c h (g v e))) h ((f v d v i) h (h v j))",
    "((a h b) v (c h (g v e))) h (((f v d) h h) v (i h j))",
];

pub fn config_a_waypoints(names: &[String]) -> Result<Vec<AltTree>> {
    CONFIG_A_WAYPOINTS
        .iter()
        .map(|w| parse_alternating_with(w, names).map_err(Error::from))
        .collect()
}

/// Monomials whose classes contain no commutativity relation.
#[derive(Clone, Debug)]
pub struct NegativeCase {
    pub name: &'static str,
    pub summary: &'static str,
    pub monomials: &'static [&'static str],
    /// Exact class size of the first monomial, when known.
    pub first_closure_size: Option<usize>,
    /// Arguments whose left-to-right order never changes in the class.
    pub fixed_order: &'static [&'static str],
}

pub const NEGATIVE_CASES: [NegativeCase; 3] = [
    NegativeCase {
        name: "configC-negative",
        summary: "ten arguments, four vertical slices, configuration C",
        monomials: &["(((a h b) v (c h ((d h e) v f))) h ((g h h) v (i h j)))"],
        first_closure_size: None,
        fixed_order: &[],
    },
    NegativeCase {
        name: "seven-block-negative",
        summary: "the three seven-block partitions with two interior blocks and both main cuts",
        monomials: &[
            "((a h b) v (((c h (d v e)) v f) h g))",
            "((a h b) v ((((c h d) h e) v f) h g))",
            "((a h b) v (((c h (d h e)) v f) h g))",
        ],
        first_closure_size: Some(4),
        fixed_order: &[],
    },
    NegativeCase {
        name: "case1-negative",
        summary: "ten arguments, three horizontal slices with 2, 6 and 2 blocks",
        monomials: &["((a h b) v (((c h (d h e)) h ((f h g) h h)) v (i h j)))"],
        first_closure_size: None,
        fixed_order: &["d", "e", "f", "g"],
    },
];

pub fn negative_case(name: &str) -> Option<&'static NegativeCase> {
    NEGATIVE_CASES.iter().find(|c| c.name == name)
}

/// Outcome of exploring the class of one monomial of a negative case.
#[derive(Clone, Debug)]
pub struct NegativeReport {
    pub monomial: Tree,
    pub names: Vec<String>,
    /// Associativity classes met by the search modulo associativity.
    pub quotient_classes: usize,
    /// Binary monomials in the full closure.
    pub binary_members: usize,
    /// Both closures were explored completely.
    pub exhausted: bool,
    /// Commutations found modulo associativity.
    pub quotient_witnesses: Vec<Permutation>,
    /// Commutations found in the binary closure.
    pub binary_witnesses: Vec<Permutation>,
    /// Whether every binary member keeps the `fixed_order` blocks in
    /// west-to-east order; `None` when the case lists no such blocks.
    pub order_preserved: Option<bool>,
}

impl NegativeReport {
    /// Exhausted, and neither route found a commutation.
    pub fn holds(&self) -> bool {
        self.exhausted
            && self.quotient_witnesses.is_empty()
            && self.binary_witnesses.is_empty()
            && self.order_preserved != Some(false)
    }
}

/// Explores every monomial of `case` by both routes.
pub fn check_negative(case: &NegativeCase, budget: usize) -> Result<Vec<NegativeReport>> {
    case.monomials
        .iter()
        .map(|text| {
            let (t, names) = parse_named(text)?;
            let quotient = find_commutations(&t, budget);
            let binary = closure(&t, RuleSet::ALL, budget);
            let (binary_witnesses, _) = commutation_permutations_binary(&t, budget);
            let order_preserved = if case.fixed_order.is_empty() {
                None
            } else {
                let labels = case
                    .fixed_order
                    .iter()
                    .map(|f| names.iter().position(|n| n == f).map(|i| i as u32 + 1))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| {
                        Error::Certificate(format!("{}: unknown fixed-order argument", case.name))
                    })?;
                Some(
                    binary
                        .members()
                        .iter()
                        .all(|m| blocks_left_to_right(&realize(m), &labels)),
                )
            };
            Ok(NegativeReport {
                monomial: t,
                names,
                quotient_classes: quotient.class_size,
                binary_members: binary.len(),
                exhausted: quotient.exhausted && binary.exhausted,
                quotient_witnesses: quotient
                    .witnesses
                    .into_iter()
                    .map(|w| w.permutation)
                    .collect(),
                binary_witnesses,
                order_preserved,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc::to_alternating;

    #[test]
    fn relations_parse_as_transpositions() {
        for r in &RELATIONS {
            let p = r.parse().unwrap();
            let sigma = r.transposition().unwrap();
            assert!(sigma.is_transposition(), "{}", r.name);
            let images = sigma.0.clone();
            assert_eq!(
                p.lhs.relabel(&|l| images[l as usize - 1]),
                p.rhs,
                "{}",
                r.name
            );
        }
    }

    #[test]
    fn waypoints_are_anchored() {
        let r = relation("configA").unwrap().parse().unwrap();
        let w = config_a_waypoints(&r.names).unwrap();
        assert_eq!(w[0], to_alternating(&r.lhs));
        assert_eq!(w[20], to_alternating(&r.rhs));
    }
}
