use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::axiomcheck::{VerificationReport, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteRecord {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub truncation: String,
    /// sha256 of the witnesses joined by newlines.
    pub witness_digest: String,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub records: Vec<SuiteRecord>,
    pub summary: SuiteSummary,
}

pub fn witness_digest(witnesses: &[String]) -> String {
    let h = Sha256::digest(witnesses.join("\n").as_bytes());
    h.iter().map(|b| format!("{b:02x}")).collect()
}

impl SuiteRecord {
    pub fn of_report(r: &VerificationReport) -> Self {
        SuiteRecord {
            check: r.check.clone(),
            instance: r.instance.clone(),
            verdict: r.verdict,
            truncation: r.truncation.clone(),
            witness_digest: witness_digest(&r.witnesses),
            witnesses: r.witnesses.clone(),
            notes: r.notes.clone(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

impl SuiteReport {
    /// Records are sorted by `(check, instance)`; the sort is stable, so
    /// equal keys keep their run order.
    pub fn new(reports: &[VerificationReport]) -> Self {
        let mut records: Vec<SuiteRecord> = reports.iter().map(SuiteRecord::of_report).collect();
        records.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
        let mut summary = SuiteSummary { total: records.len(), ..Default::default() };
        for r in &records {
            match r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Inconclusive => summary.inconclusive += 1,
            }
        }
        SuiteReport { records, summary }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            EXIT_FAIL
        } else if self.summary.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One line per record.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&format!("{:<12} {:<24} {} [{}]\n", r.verdict.to_string(), r.check, r.instance, r.truncation));
            for w in &r.witnesses {
                s.push_str(&format!("    witness: {w}\n"));
            }
            if r.verdict == Verdict::Inconclusive {
                for n in &r.notes {
                    s.push_str(&format!("    note: {n}\n"));
                }
            }
        }
        let m = &self.summary;
        s.push_str(&format!("{} checks: {} pass, {} fail, {} inconclusive\n", m.total, m.pass, m.fail, m.inconclusive));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiomcheck::ReportBuilder;

    fn report(check: &str, instance: &str, fail: bool) -> VerificationReport {
        let mut b = ReportBuilder::new(check, instance);
        if fail {
            b.fail("x");
        }
        b.finish()
    }

    #[test]
    fn ordering_counts_and_exit() {
        let s = SuiteReport::new(&[report("N2", "b", false), report("N1", "z", true), report("N2", "a", false)]);
        let keys: Vec<_> = s.records.iter().map(|r| (r.check.as_str(), r.instance.as_str())).collect();
        assert_eq!(keys, [("N1", "z"), ("N2", "a"), ("N2", "b")]);
        assert_eq!(s.summary, SuiteSummary { total: 3, pass: 2, fail: 1, inconclusive: 0 });
        assert_eq!(s.exit_code(), EXIT_FAIL);
        assert_eq!(s.records[0].witness_digest, witness_digest(&["x".to_string()]));
        assert_eq!(SuiteReport::new(&[]).exit_code(), EXIT_PASS);
    }

    #[test]
    fn digest_of_nothing() {
        assert_eq!(witness_digest(&[]), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn json_key_order() {
        let j = SuiteReport::new(&[report("N1", "a", false)]).to_json();
        let pos = |k: &str| j.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("check") < pos("instance") && pos("instance") < pos("verdict"));
        assert!(pos("records") < pos("summary"));
    }
}
