use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{apply_redex, RewriteStep};
use crate::error::{Error, Result};
use crate::trees::{parse_monomial, Position, Tree};

/// A replayable proof that `initial` rewrites to `final_tree`.
///
/// In JSON both monomials are written in the monomial grammar with `x<k>`
/// identifiers, so labels survive a round trip exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteCertificate {
    pub initial: Tree,
    pub steps: Vec<RewriteStep>,
    pub final_tree: Tree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: position {position} does not address a node")]
    BadPosition { step: usize, position: Position },
    #[error("step {step}: no match at {position}, expected {expected}")]
    Mismatch {
        step: usize,
        position: Position,
        expected: String,
    },
    #[error("replay ends at {actual}, certificate claims {expected}")]
    FinalMismatch { expected: Tree, actual: Tree },
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    initial: String,
    steps: Vec<RewriteStep>,
    #[serde(rename = "final")]
    final_tree: String,
}

impl RewriteCertificate {
    pub fn new(initial: Tree, steps: Vec<RewriteStep>, final_tree: Tree) -> RewriteCertificate {
        RewriteCertificate {
            initial,
            steps,
            final_tree,
        }
    }

    pub fn trivial(t: &Tree) -> RewriteCertificate {
        RewriteCertificate::new(t.clone(), Vec::new(), t.clone())
    }

    /// Replays every step; steps are numbered from 1 in errors.
    pub fn replay(&self) -> Result<Tree, ReplayError> {
        let mut cur = self.initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            cur = apply_redex(&cur, step).map_err(|e| match e {
                Error::PatternMismatch { position, expected } => ReplayError::Mismatch {
                    step: i + 1,
                    position,
                    expected,
                },
                _ => ReplayError::BadPosition {
                    step: i + 1,
                    position: step.position.clone(),
                },
            })?;
        }
        if cur != self.final_tree {
            return Err(ReplayError::FinalMismatch {
                expected: self.final_tree.clone(),
                actual: cur,
            });
        }
        Ok(cur)
    }

    /// Every intermediate tree, starting with `initial`.
    pub fn trace(&self) -> Result<Vec<Tree>, ReplayError> {
        let mut out = vec![self.initial.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let next =
                apply_redex(out.last().unwrap(), step).map_err(|_| ReplayError::Mismatch {
                    step: i + 1,
                    position: step.position.clone(),
                    expected: step.rule.pattern().to_string(),
                })?;
            out.push(next);
        }
        Ok(out)
    }

    /// The certificate read backwards.
    pub fn reversed(&self) -> RewriteCertificate {
        RewriteCertificate {
            initial: self.final_tree.clone(),
            steps: self.steps.iter().rev().map(RewriteStep::inverse).collect(),
            final_tree: self.initial.clone(),
        }
    }

    pub fn interchange_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.rule.family == super::RuleFamily::Interchange)
            .count()
    }

    pub fn to_json(&self) -> String {
        let j = CertificateJson {
            initial: self.initial.to_string(),
            steps: self.steps.clone(),
            final_tree: self.final_tree.to_string(),
        };
        let mut s = serde_json::to_string_pretty(&j).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RewriteCertificate> {
        let j: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
        Ok(RewriteCertificate {
            initial: parse_monomial(&j.initial)?,
            steps: j.steps,
            final_tree: parse_monomial(&j.final_tree)?,
        })
    }
}

pub fn replay_certificate(c: &RewriteCertificate) -> bool {
    c.replay().is_ok()
}
