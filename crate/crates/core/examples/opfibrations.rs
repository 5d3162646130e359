// Fibers, cocartesian lifts and the two opfibration checks on a product
// projection and a coslice projection.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::derivator::{
    coslice_projection, fiber_category, opfib_fiberwise_check, projector_pullback_commutation, slice_projection,
    FunctorCategory, TargetCategory,
};
use nerve_workbench::fincat::{chain, opfibration_check, product, ObjId, SearchBudget};
use nerve_workbench::nerve::Mode;

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let two = TargetCategory::two();
    let (i1, i2) = (Arc::new(chain(1)), Arc::new(chain(2)));
    let alphas = [("pr2 on [1]x[1]", product(&i1, &i1).2), ("0/[2] -> [2]", coslice_projection(&i2, ObjId(0)).pr2)];
    for (name, alpha) in &alphas {
        let fibers: Vec<usize> = alpha.cod.objects().map(|j| fiber_category(alpha, j).0.num_objects()).collect();
        writeln!(s, "{name}: opfibration {}, fiber sizes {fibers:?}", opfibration_check(alpha))?;
        let mut passed = 0;
        let diagrams = FunctorCategory::all(&alpha.dom, &two, SearchBudget::functors())?.objects;
        for f in &diagrams {
            passed += opfib_fiberwise_check(alpha, f, &two)?.passed() as usize;
        }
        writeln!(s, "  fiberwise: {passed} of {} diagrams", diagrams.len())?;
        let r = projector_pullback_commutation(alpha, &two, Mode::DirReduced, SearchBudget::functors())?;
        writeln!(s, "  projector pullback: {}", r.verdict)?;
    }
    let slice = slice_projection(&i1, ObjId(0)).pr1;
    writeln!(s, "[1]/0 -> [1]: opfibration {}", opfibration_check(&slice))?;
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
