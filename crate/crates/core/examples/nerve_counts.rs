// Sizes of the four nerve constructions on small chains.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::fincat::chain;
use nerve_workbench::nerve::{build_N, Mode};

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    for mode in Mode::ALL {
        let t = mode.default_truncation();
        for n in 0..=3 {
            let p = build_N(Arc::new(chain(n)), mode, t)?;
            writeln!(
                s,
                "{mode:<10} [{n}] {t}: levels {:?}, {} objects, {} non-identity morphisms",
                p.nerve.level_sizes(),
                p.total.num_objects(),
                p.total.num_non_identity()
            )?;
        }
    }
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
