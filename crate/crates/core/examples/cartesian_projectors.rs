// The left and right projectors on diagrams over N([1]) with values in 2,
// compared with adjoints found by search.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::derivator::{
    cartesian_projector_left, cartesian_projector_right, nerve_table, projector_oracle_check, CartesianMarking,
    FunctorCategory, TargetCategory,
};
use nerve_workbench::fincat::{chain, SearchBudget};
use nerve_workbench::nerve::{build_N, Mode, Truncation};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let two = TargetCategory::two();
    let p = build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact)?;
    let marking = CartesianMarking::of_package(&p);
    let (left, right) = (cartesian_projector_left(&marking, &two), cartesian_projector_right(&marking, &two));
    for f in FunctorCategory::all(&p.total, &two, SearchBudget::functors())?.objects {
        let (l, r) = (left.apply(&f)?, right.apply(&f)?);
        writeln!(
            s,
            "{} -> left {}, right {}",
            nerve_table(&p, &f),
            nerve_table(&p, &l.value),
            nerve_table(&p, &r.value)
        )?;
    }
    let report = projector_oracle_check(&p, &two, SearchBudget::adjoint())?;
    writeln!(s, "adjoint search agrees: {}", report.verdict)?;
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
