// Parallel morphisms identified or separated after inverting everything.

use std::fmt::Write;

use nerve_workbench::axiomcheck::{parallel_morphism_homotopy, Homotopy, HomotopyBudget};
use nerve_workbench::fincat::free_parallel_pair;
use nerve_workbench::nerve::simplex_base;

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let base = simplex_base(2);
    let edge = base.object(1, 0).ok_or("no 1-simplex")?;
    let e0 = base.morphism(edge, 0b01).ok_or("no face")?;
    let e1 = base.morphism(edge, 0b10).ok_or("no face")?;
    let budget = HomotopyBudget { depth: 3, ..Default::default() };
    match parallel_morphism_homotopy(&base.cat, e0, e1, budget) {
        Homotopy::Equal { depth, trace } => {
            writeln!(s, "{} ~ {} at depth {depth}", base.cat.mor_name(e0), base.cat.mor_name(e1))?;
            for step in trace {
                writeln!(s, "  {step}")?;
            }
        }
        other => writeln!(s, "faces: {other:?}")?,
    }

    let c = free_parallel_pair();
    let (f, g) = (c.mor_by_name("f").ok_or("f")?, c.mor_by_name("g").ok_or("g")?);
    if let Homotopy::Distinct(cert) = parallel_morphism_homotopy(&c, f, g, HomotopyBudget::default()) {
        writeln!(s, "f and g stay apart: phi = {:?}, checked {}", cert.phi, cert.check(&c, f, g))?;
    }
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
