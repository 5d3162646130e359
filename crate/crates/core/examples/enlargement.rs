// E(J) for small shapes with values in 2, and the checks that it behaves
// like Fun(J, 2).

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::axiomcheck::shape_label;
use nerve_workbench::derivator::{
    enlargement_E, fder3_fder4_check, restriction_equivalence_check, transport_equivalence_check, FunctorCategory,
    TargetCategory,
};
use nerve_workbench::fincat::{chain, terminal, v_poset, Functor, ObjId, SearchBudget};
use nerve_workbench::nerve::{Mode, Truncation};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let two = TargetCategory::two();
    let budget = SearchBudget::functors();
    let mode = Mode::DirReduced;
    for j in [terminal(), chain(1), chain(2), v_poset()] {
        let j = Arc::new(j);
        let e = enlargement_E(&j, &two, mode, Truncation::Exact, budget)?;
        let plain = FunctorCategory::all(&j, &two, budget)?.len();
        let r = restriction_equivalence_check(&j, &two, mode, budget)?;
        writeln!(s, "{}: |Fun(J,2)| = {plain}, |E(J)| = {}, restriction {}", shape_label(&j), e.num_objects(), r.verdict)?;
    }
    let (pt, i1) = (Arc::new(terminal()), Arc::new(chain(1)));
    let collapse = Functor::constant(i1.clone(), pt.clone(), ObjId(0));
    let r = fder3_fder4_check(&collapse, &two, mode, Truncation::Exact, budget)?;
    writeln!(s, "[1] -> pt: {}", r.verdict)?;
    for n in r.notes {
        writeln!(s, "  {n}")?;
    }
    let r = transport_equivalence_check(&i1, &i1, &two, mode, Truncation::Exact, budget)?;
    writeln!(s, "transport along [1] x [1]: {}", r.verdict)?;
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
