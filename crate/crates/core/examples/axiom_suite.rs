// The axiom checks on [2] in every mode, gathered into one suite report.

use std::sync::Arc;

use nerve_workbench::cli::{axiom_reports, SuiteReport};
use nerve_workbench::derivator::TargetCategory;
use nerve_workbench::fincat::{chain, SearchBudget};
use nerve_workbench::nerve::{Mode, Truncation};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let shape = Arc::new(chain(2));
    let mut reports = Vec::new();
    for mode in Mode::ALL {
        let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
        reports.extend(axiom_reports(&shape, mode, t, &TargetCategory::two(), SearchBudget::functors()));
    }
    let suite = SuiteReport::new(&reports);
    Ok(format!("{}exit code {}\n", suite.render(), suite.exit_code()))
}

fn main() {
    print!("{}", run().unwrap());
}
