// Reading, validating and writing category files, and DOT output of a nerve.

use std::fmt::Write;
use std::sync::Arc;

use nerve_workbench::cli::{dot, CategoryFile};
use nerve_workbench::nerve::{build_N, Mode, Truncation};

const SQUARE: &str = "\
fincat 1
OBJECTS
a
b
c
d
MORPHISMS
f a b
g a c
h b d
k c d
diag a d
COMPOSITION
h f diag
k g diag
";

pub fn run() -> Result<String, Box<dyn std::error::Error>> {
    let mut s = String::new();
    let file = CategoryFile::parse(SQUARE)?;
    let c = Arc::new(file.validate()?);
    writeln!(s, "{} objects, {} morphisms", c.num_objects(), c.num_morphisms())?;
    let canonical = CategoryFile::of_category(&c).export();
    assert_eq!(CategoryFile::parse(&canonical)?.export(), canonical);
    writeln!(s, "canonical form has {} lines", canonical.lines().count())?;

    let broken = SQUARE.replace("k g diag\n", "");
    match CategoryFile::parse(&broken)?.validate() {
        Ok(_) => writeln!(s, "unexpectedly valid")?,
        Err(e) => writeln!(s, "without k.g: {e}")?,
    }

    let p = build_N(c, Mode::DirReduced, Truncation::Exact)?;
    s.push_str(&dot::nerve_dot(&p));
    Ok(s)
}

fn main() {
    print!("{}", run().unwrap());
}
