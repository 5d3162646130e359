// Brute-force adjoints: the diagonal [1] -> [1] x [1] has both meet and join
// as adjoints, the collapse [1] -> pt has the two endpoints.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::derivator::{pair_into, table};
use nerve_workbench::fincat::{chain, find_adjoint, product, terminal, AdjointSide, Functor, ObjId, SearchBudget};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let i1 = Arc::new(chain(1));
    let prod = product(&i1, &i1);
    let id = Functor::identity(i1.clone());
    let diagonal = pair_into(&prod, &id, &id)?;
    let collapse = Functor::constant(i1.clone(), Arc::new(terminal()), ObjId(0));
    for (name, f) in [("diagonal", &diagonal), ("collapse", &collapse)] {
        for side in [AdjointSide::Left, AdjointSide::Right] {
            match find_adjoint(f, side, SearchBudget::adjoint())? {
                Some(a) => {
                    let g = if side == AdjointSide::Left { &a.left } else { &a.right };
                    writeln!(s, "{name}: {side:?} adjoint {}, triangles {}", table(g), a.check()?)?;
                }
                None => writeln!(s, "{name}: no {side:?} adjoint")?,
            }
        }
    }
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
