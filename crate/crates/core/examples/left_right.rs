// The Inv and Dir enlargements of a poset compared through the comma span.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::derivator::{left_right_comparison, TargetCategory};
use nerve_workbench::fincat::{chain, lambda_poset, terminal, v_poset, SearchBudget};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    for (name, i) in [("pt", terminal()), ("[1]", chain(1)), ("[2]", chain(2)), ("V", v_poset()), ("L", lambda_poset())] {
        let r = left_right_comparison(&Arc::new(i), &TargetCategory::two(), SearchBudget::functors())?;
        writeln!(s, "{name}: {} ({})", r.verdict, r.notes.join("; "))?;
    }
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
