use std::time::Instant;

use serde::Serialize;

use crate::fincat::Functor;
use crate::nerve::{Mode, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one check on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub truncation: String,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
    /// Comparison functor exhibiting a pass, where there is one.
    #[serde(skip)]
    pub comparison: Option<Functor>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Accumulates witnesses and notes while a check runs.
pub struct ReportBuilder {
    check: String,
    instance: String,
    truncation: Option<Truncation>,
    mode: Option<Mode>,
    witnesses: Vec<String>,
    notes: Vec<String>,
    started: Instant,
    failed: bool,
    inconclusive: bool,
    comparison: Option<Functor>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, instance: impl Into<String>) -> Self {
        ReportBuilder {
            check: check.into(),
            instance: instance.into(),
            truncation: None,
            mode: None,
            witnesses: Vec::new(),
            notes: Vec::new(),
            started: Instant::now(),
            failed: false,
            inconclusive: false,
            comparison: None,
        }
    }

    pub fn with_mode(mut self, mode: Mode, truncation: Truncation) -> Self {
        self.mode = Some(mode);
        self.truncation = Some(truncation);
        self
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failed = true;
        self.witnesses.push(witness.into());
    }

    /// Records a failed condition when `ok` is false; returns `ok`.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(witness());
        }
        ok
    }

    pub fn inconclusive(&mut self, why: impl Into<String>) {
        self.inconclusive = true;
        self.notes.push(why.into());
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn comparison(&mut self, f: Functor) {
        self.comparison = Some(f);
    }

    pub fn has_failed(&self) -> bool {
        self.failed
    }

    /// A check that passes on a truncated nerve only holds up to the
    /// truncation level, so it is reported inconclusive.
    pub fn finish(mut self) -> VerificationReport {
        let truncated = self.mode.is_some() && matches!(self.truncation, Some(Truncation::Level(_)));
        let verdict = if self.failed {
            Verdict::Fail
        } else if self.inconclusive {
            Verdict::Inconclusive
        } else if truncated {
            if let Some(Truncation::Level(k)) = self.truncation {
                self.notes.push(format!("verified up to level {k}; higher levels not checked"));
            }
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        VerificationReport {
            check: self.check,
            instance: self.instance,
            verdict,
            truncation: self.truncation.map_or_else(|| "n/a".to_string(), |t| t.to_string()),
            witnesses: self.witnesses,
            notes: self.notes,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
            comparison: self.comparison,
        }
    }
}
