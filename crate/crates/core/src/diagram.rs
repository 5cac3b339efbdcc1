//! Path evaluation for axiom diagrams.
//!
//! A diagram is presented as two composable arrow lists with common
//! endpoints. The generic verdict demands that every arrow on both paths
//! exists (`mor_valid`) and that the two composites are equal as payloads.
//! Thin bases take an existence-only fast path: with at most one morphism
//! per ordered pair, commutativity is exactly the existence of both paths,
//! so the equality comparison is skipped. Both modes evaluate the same
//! arrow lists, which is what makes their verdicts comparable.

use crate::base::{BaseError, MonoidalBase};
use crate::report::{CheckReport, DiagramVerdict};

/// How diagram verdicts are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Validate every arrow, compose both paths, compare payloads.
    Generic,
    /// Validate every arrow only; sound for thin bases.
    ThinExistence,
}

/// The mode a base's public checkers run under.
pub fn default_mode<B: MonoidalBase>(base: &B) -> CheckMode {
    if base.is_thin() {
        CheckMode::ThinExistence
    } else {
        CheckMode::Generic
    }
}

pub(crate) struct DiagramCtx<'a, B: MonoidalBase> {
    pub base: &'a B,
    pub mode: CheckMode,
    pub report: CheckReport,
}

impl<'a, B: MonoidalBase> DiagramCtx<'a, B> {
    pub fn new(base: &'a B, mode: CheckMode, subject: &str) -> Self {
        DiagramCtx {
            base,
            mode,
            report: CheckReport::new(subject),
        }
    }

    fn at_vec(at: &[&str]) -> Vec<String> {
        at.iter().map(|s| s.to_string()).collect()
    }

    /// Existence check for a single stored structure morphism. In thin
    /// bases this is where the law content lives (an identity element
    /// exists iff `0 ≥ d(x,x)`, a lifting map exists iff the fibre bound
    /// holds); elsewhere it re-affirms wellformedness.
    pub fn arrow(&mut self, law: &str, at: &[&str], mor: &B::Mor) {
        let ok = self.base.mor_valid(mor);
        self.report.diagrams.push(DiagramVerdict {
            law: law.to_string(),
            at: Self::at_vec(at),
            ok,
            left: None,
            right: None,
            note: (!ok).then(|| format!("no such morphism: {}", self.base.format_mor(mor))),
        });
    }

    /// Record a plain boolean condition (object-level equations).
    pub fn fact(&mut self, law: &str, at: &[&str], ok: bool, note: Option<String>) {
        self.report.diagrams.push(DiagramVerdict {
            law: law.to_string(),
            at: Self::at_vec(at),
            ok,
            left: None,
            right: None,
            note,
        });
    }

    /// Record a two-path diagram. `Err` paths (a failed construction, which
    /// post-structural-stage means genuinely inconsistent data) yield a
    /// failed verdict carrying the error.
    pub fn diagram(
        &mut self,
        law: &str,
        at: &[&str],
        lhs: Result<Vec<B::Mor>, BaseError>,
        rhs: Result<Vec<B::Mor>, BaseError>,
    ) {
        let verdict = match (lhs, rhs) {
            (Ok(l), Ok(r)) => self.evaluate(law, at, &l, &r),
            (Err(e), _) | (_, Err(e)) => DiagramVerdict {
                law: law.to_string(),
                at: Self::at_vec(at),
                ok: false,
                left: None,
                right: None,
                note: Some(format!("path construction failed: {e}")),
            },
        };
        self.report.diagrams.push(verdict);
    }

    fn evaluate(&self, law: &str, at: &[&str], lhs: &[B::Mor], rhs: &[B::Mor]) -> DiagramVerdict {
        let mut verdict = DiagramVerdict {
            law: law.to_string(),
            at: Self::at_vec(at),
            ok: true,
            left: None,
            right: None,
            note: None,
        };
        for (side, path) in [("left", lhs), ("right", rhs)] {
            if let Some(bad) = path.iter().find(|m| !self.base.mor_valid(m)) {
                verdict.ok = false;
                verdict.note = Some(format!(
                    "{side} path uses a morphism that does not exist: {}",
                    self.base.format_mor(bad)
                ));
                return verdict;
            }
        }
        match (self.compose_path(lhs), self.compose_path(rhs)) {
            (Ok(l), Ok(r)) => {
                if self.mode == CheckMode::Generic && l != r {
                    verdict.ok = false;
                    verdict.left = Some(self.base.format_mor(&l));
                    verdict.right = Some(self.base.format_mor(&r));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                verdict.ok = false;
                verdict.note = Some(format!("path does not compose: {e}"));
            }
        }
        verdict
    }

    fn compose_path(&self, path: &[B::Mor]) -> Result<B::Mor, BaseError> {
        let (first, rest) = path
            .split_first()
            .ok_or_else(|| BaseError::Malformed("empty path".into()))?;
        let mut acc = first.clone();
        for m in rest {
            acc = self.base.compose(&acc, m)?;
        }
        Ok(acc)
    }

    pub fn finish(self) -> CheckReport {
        self.report
    }
}
