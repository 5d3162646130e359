// Closure operators on chains as idempotent monads, and the adjunction
// with the inclusion of closed elements.

use std::fmt::Write;

use nerve_workbench::derivator::{closure_monad, closure_operators, idempotent_monad_adjoint};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    for n in [2, 3] {
        for cl in closure_operators(n) {
            let a = idempotent_monad_adjoint(&closure_monad(n, &cl)).map_err(|v| v.witness)?;
            writeln!(
                s,
                "[{n}] cl = {cl:?}: {} closed, triangles {}, uT = Tu {}",
                a.sub_cat.num_objects(),
                a.adjunction.check()?,
                a.ut_equals_tu
            )?;
        }
    }
    let mut m = closure_monad(2, &[0, 2, 2]);
    m.sub.pop();
    match idempotent_monad_adjoint(&m) {
        Ok(_) => writeln!(s, "unexpected pass")?,
        Err(v) => writeln!(s, "wrong subcategory: {:?}, {}", v.hypothesis, v.witness)?,
    }
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
