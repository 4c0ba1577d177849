//! Rewriting with the two associative laws and the interchange law.
//!
//! All rules are used in both directions, so a closure is a connected
//! component of the undirected rewriting graph.

mod bfs;
mod certificate;
mod closure;
mod quotient;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trees::{Op, Position, Tree};

pub use certificate::{replay_certificate, ReplayError, RewriteCertificate};
pub use closure::{
    closure, closure_with, ClosureOptions, ClosureResult, ClosureStats, DEFAULT_BUDGET,
};
pub use quotient::{
    assoc_path, check_equivalence, commutation_permutations_binary, find_commutations,
    interchange_moves, lift_path, quotient_closure, AltMove, CommutationReport, CommutationWitness,
    Equivalence, Permutation, QuotientClosure,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleFamily {
    AssocH,
    AssocV,
    Interchange,
}

impl RuleFamily {
    pub const ALL: [RuleFamily; 3] = [
        RuleFamily::AssocH,
        RuleFamily::AssocV,
        RuleFamily::Interchange,
    ];
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Forward directions: `(p x q) x r → p x (q x r)` for `AssocH`/`AssocV`,
/// `(p h q) v (r h s) → (p v r) h (q v s)` for `Interchange`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewriteRule {
    #[serde(rename = "rule")]
    pub family: RuleFamily,
    pub direction: Direction,
}

impl RewriteRule {
    pub fn new(family: RuleFamily, direction: Direction) -> RewriteRule {
        RewriteRule { family, direction }
    }

    pub fn inverse(self) -> RewriteRule {
        RewriteRule {
            family: self.family,
            direction: self.direction.reversed(),
        }
    }

    /// Left-hand pattern, for diagnostics.
    pub fn pattern(self) -> &'static str {
        use Direction::*;
        use RuleFamily::*;
        match (self.family, self.direction) {
            (AssocH, Forward) => "(p h q) h r",
            (AssocH, Backward) => "p h (q h r)",
            (AssocV, Forward) => "(p v q) v r",
            (AssocV, Backward) => "p v (q v r)",
            (Interchange, Forward) => "(p h q) v (r h s)",
            (Interchange, Backward) => "(p v r) h (q v s)",
        }
    }

    /// Rewrites the root of `t`, if the left-hand pattern matches there.
    pub fn apply_at_root(self, t: &Tree) -> Option<Tree> {
        let Tree::Node(op, l, r) = t else { return None };
        match (self.family, self.direction) {
            (RuleFamily::AssocH | RuleFamily::AssocV, dir) => {
                let x = if self.family == RuleFamily::AssocH {
                    Op::H
                } else {
                    Op::V
                };
                if *op != x {
                    return None;
                }
                match dir {
                    Direction::Forward => match &**l {
                        Tree::Node(o, p, q) if *o == x => Some(Tree::Node(
                            x,
                            p.clone(),
                            Tree::Node(x, q.clone(), r.clone()).into(),
                        )),
                        _ => None,
                    },
                    Direction::Backward => match &**r {
                        Tree::Node(o, q, s) if *o == x => Some(Tree::Node(
                            x,
                            Tree::Node(x, l.clone(), q.clone()).into(),
                            s.clone(),
                        )),
                        _ => None,
                    },
                }
            }
            (RuleFamily::Interchange, dir) => {
                let (outer, inner) = match dir {
                    Direction::Forward => (Op::V, Op::H),
                    Direction::Backward => (Op::H, Op::V),
                };
                if *op != outer {
                    return None;
                }
                match (&**l, &**r) {
                    (Tree::Node(o1, p, q), Tree::Node(o2, rr, s))
                        if *o1 == inner && *o2 == inner =>
                    {
                        Some(Tree::Node(
                            inner,
                            Tree::Node(outer, p.clone(), rr.clone()).into(),
                            Tree::Node(outer, q.clone(), s.clone()).into(),
                        ))
                    }
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        write!(f, "{:?} {dir}", self.family)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RewriteStep {
    #[serde(flatten)]
    pub rule: RewriteRule,
    pub position: Position,
}

impl RewriteStep {
    pub fn new(family: RuleFamily, direction: Direction, position: Position) -> RewriteStep {
        RewriteStep {
            rule: RewriteRule::new(family, direction),
            position,
        }
    }

    pub fn inverse(&self) -> RewriteStep {
        RewriteStep {
            rule: self.rule.inverse(),
            position: self.position.clone(),
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.rule, self.position)
    }
}

/// Enabled rule families.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub assoc_h: bool,
    pub assoc_v: bool,
    pub interchange: bool,
}

impl RuleSet {
    pub const ALL: RuleSet = RuleSet {
        assoc_h: true,
        assoc_v: true,
        interchange: true,
    };
    pub const ASSOC: RuleSet = RuleSet {
        assoc_h: true,
        assoc_v: true,
        interchange: false,
    };
    pub const INTERCHANGE: RuleSet = RuleSet {
        assoc_h: false,
        assoc_v: false,
        interchange: true,
    };

    pub fn contains(&self, family: RuleFamily) -> bool {
        match family {
            RuleFamily::AssocH => self.assoc_h,
            RuleFamily::AssocV => self.assoc_v,
            RuleFamily::Interchange => self.interchange,
        }
    }

    fn families(self) -> impl Iterator<Item = RuleFamily> {
        RuleFamily::ALL
            .into_iter()
            .filter(move |f| self.contains(*f))
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::ALL
    }
}

impl FromStr for RuleSet {
    type Err = String;

    /// Comma-separated list of `assoc`, `assoc-h`, `assoc-v`, `interchange`
    /// or `all`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut set = RuleSet {
            assoc_h: false,
            assoc_v: false,
            interchange: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => set = RuleSet::ALL,
                "assoc" => (set.assoc_h, set.assoc_v) = (true, true),
                "assoc-h" => set.assoc_h = true,
                "assoc-v" => set.assoc_v = true,
                "interchange" => set.interchange = true,
                other => return Err(format!("unknown rule family `{other}`")),
            }
        }
        if !(set.assoc_h || set.assoc_v || set.interchange) {
            return Err("no rule family selected".into());
        }
        Ok(set)
    }
}

/// Every matching step, in preorder of positions, then by rule family,
/// forward before backward.
pub fn find_redexes(t: &Tree, rules: RuleSet) -> Vec<RewriteStep> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_redexes(t, rules, &mut path, &mut out);
    out
}

fn collect_redexes(
    t: &Tree,
    rules: RuleSet,
    path: &mut Vec<crate::trees::Dir>,
    out: &mut Vec<RewriteStep>,
) {
    let Tree::Node(_, l, r) = t else { return };
    for family in rules.families() {
        for direction in [Direction::Forward, Direction::Backward] {
            let rule = RewriteRule::new(family, direction);
            if rule.apply_at_root(t).is_some() {
                out.push(RewriteStep {
                    rule,
                    position: Position(path.clone()),
                });
            }
        }
    }
    path.push(crate::trees::Dir::Left);
    collect_redexes(l, rules, path, out);
    path.pop();
    path.push(crate::trees::Dir::Right);
    collect_redexes(r, rules, path, out);
    path.pop();
}

/// Applies one localized step.
pub fn apply_redex(t: &Tree, step: &RewriteStep) -> Result<Tree> {
    let sub = t
        .subtree(&step.position)
        .ok_or_else(|| Error::BadPosition(step.position.clone()))?;
    let new = step
        .rule
        .apply_at_root(sub)
        .ok_or_else(|| Error::PatternMismatch {
            position: step.position.clone(),
            expected: step.rule.pattern().to_string(),
        })?;
    Ok(t.replace_at(&step.position, new).expect("position exists"))
}

/// All one-step rewrites of `t`, in [`find_redexes`] order.
pub fn neighbors(t: &Tree, rules: RuleSet) -> Vec<(RewriteStep, Tree)> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_neighbors(t, t, rules, &mut path, &mut out);
    out
}

fn collect_neighbors(
    root: &Tree,
    t: &Tree,
    rules: RuleSet,
    path: &mut Vec<crate::trees::Dir>,
    out: &mut Vec<(RewriteStep, Tree)>,
) {
    let Tree::Node(_, l, r) = t else { return };
    for family in rules.families() {
        for direction in [Direction::Forward, Direction::Backward] {
            let rule = RewriteRule::new(family, direction);
            if let Some(new) = rule.apply_at_root(t) {
                let position = Position(path.clone());
                let whole = root.replace_at(&position, new).expect("position exists");
                out.push((RewriteStep { rule, position }, whole));
            }
        }
    }
    path.push(crate::trees::Dir::Left);
    collect_neighbors(root, l, rules, path, out);
    path.pop();
    path.push(crate::trees::Dir::Right);
    collect_neighbors(root, r, rules, path, out);
    path.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_monomial;

    fn t(s: &str) -> Tree {
        parse_monomial(s).unwrap()
    }

    #[test]
    fn redex_examples() {
        assert!(find_redexes(&t("(a h b)"), RuleSet::ALL).is_empty());
        let steps = find_redexes(&t("((a h b) h c)"), RuleSet::ALL);
        assert_eq!(
            steps,
            vec![RewriteStep::new(
                RuleFamily::AssocH,
                Direction::Forward,
                Position::root()
            )]
        );
        let steps = find_redexes(&t("((a h b) v (c h d))"), RuleSet::ALL);
        assert_eq!(
            steps,
            vec![RewriteStep::new(
                RuleFamily::Interchange,
                Direction::Forward,
                Position::root()
            )]
        );
    }

    #[test]
    fn apply_examples() {
        let ic = RewriteStep::new(
            RuleFamily::Interchange,
            Direction::Forward,
            Position::root(),
        );
        assert_eq!(
            apply_redex(&t("((a h b) v (c h d))"), &ic).unwrap(),
            t("((x1 v x3) h (x2 v x4))")
        );
        let assoc = RewriteStep::new(RuleFamily::AssocH, Direction::Forward, Position::root());
        let once = apply_redex(&t("((a h b) h c)"), &assoc).unwrap();
        assert_eq!(once, t("(a h (b h c))"));
        assert_eq!(
            apply_redex(&once, &assoc.inverse()).unwrap(),
            t("((a h b) h c)")
        );
        assert_eq!(
            apply_redex(&once, &assoc),
            Err(Error::PatternMismatch {
                position: Position::root(),
                expected: "(p h q) h r".into()
            })
        );
        let deep = RewriteStep::new(
            RuleFamily::AssocH,
            Direction::Forward,
            "000".parse().unwrap(),
        );
        assert!(matches!(
            apply_redex(&once, &deep),
            Err(Error::BadPosition(_))
        ));
    }

    #[test]
    fn neighbors_match_redexes() {
        let tree = t("(((a h b) h c) v ((d h e) v f))");
        let ns = neighbors(&tree, RuleSet::ALL);
        let steps = find_redexes(&tree, RuleSet::ALL);
        assert_eq!(ns.len(), steps.len());
        for ((s, n), s2) in ns.iter().zip(&steps) {
            assert_eq!(s, s2);
            assert_eq!(&apply_redex(&tree, s).unwrap(), n);
        }
    }

    #[test]
    fn rule_set_parsing() {
        assert_eq!(
            "assoc,interchange".parse::<RuleSet>().unwrap(),
            RuleSet::ALL
        );
        assert_eq!(
            "interchange".parse::<RuleSet>().unwrap(),
            RuleSet::INTERCHANGE
        );
        assert!("bogus".parse::<RuleSet>().is_err());
        assert!("".parse::<RuleSet>().is_err());
    }

    #[test]
    fn step_json_shape() {
        let s = RewriteStep::new(
            RuleFamily::AssocV,
            Direction::Backward,
            "0101".parse().unwrap(),
        );
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"rule":"AssocV","direction":"backward","position":"0101"}"#
        );
        assert_eq!(serde_json::from_str::<RewriteStep>(&json).unwrap(), s);
    }
}
