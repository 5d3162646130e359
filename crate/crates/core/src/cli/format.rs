use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{identity_name, validate_category, CategoryError, FinCat, Functor, MorId, ObjId, RawCategory};

pub const HEADER: &str = "fincat 1";

/// A functor listed in a category file, by names. Identities are implicit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorBlock {
    pub name: String,
    /// `self` or a path relative to the file.
    pub codomain: String,
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryFile {
    pub category: RawCategory,
    pub functors: Vec<FunctorBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Clone, Copy, PartialEq)]
enum Block {
    None,
    Objects,
    Morphisms,
    Composition,
    Functor,
}

impl CategoryFile {
    pub fn of_category(c: &FinCat) -> Self {
        CategoryFile { category: c.to_raw(), functors: Vec::new() }
    }

    /// `#` starts a comment line; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let header = lines.by_ref().find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match header {
            Some((_, HEADER)) => {}
            Some((n, l)) => return Err(err(n, format!("expected header `{HEADER}`, found `{l}`"))),
            None => return Err(err(1, "empty file")),
        }
        let mut out = CategoryFile::default();
        let mut block = Block::None;
        for (n, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["OBJECTS"] => block = Block::Objects,
                ["MORPHISMS"] => block = Block::Morphisms,
                ["COMPOSITION"] => block = Block::Composition,
                ["FUNCTOR", name, "->", cod] => {
                    block = Block::Functor;
                    out.functors.push(FunctorBlock {
                        name: name.to_string(),
                        codomain: cod.to_string(),
                        ..Default::default()
                    });
                }
                ["FUNCTOR", ..] => return Err(err(n, "expected `FUNCTOR <name> -> <codomain>`")),
                _ => {
                    let raw = &mut out.category;
                    match (block, words.as_slice()) {
                        (Block::Objects, [o]) => raw.objects.push(o.to_string()),
                        (Block::Morphisms, [f, s, t]) => raw.morphisms.push((f.to_string(), s.to_string(), t.to_string())),
                        (Block::Composition, [g, f, h]) => {
                            raw.composition.push((g.to_string(), f.to_string(), h.to_string()))
                        }
                        (Block::Functor, ["obj", x, y]) => {
                            out.functors.last_mut().unwrap().objects.push((x.to_string(), y.to_string()))
                        }
                        (Block::Functor, ["mor", f, g]) => {
                            out.functors.last_mut().unwrap().morphisms.push((f.to_string(), g.to_string()))
                        }
                        (Block::None, _) => return Err(err(n, format!("`{line}` outside any block"))),
                        _ => return Err(err(n, format!("malformed line `{line}`"))),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Canonical text: header, the three category blocks, then functors.
    pub fn export(&self) -> String {
        let mut s = String::new();
        let raw = &self.category;
        writeln!(s, "{HEADER}").unwrap();
        writeln!(s, "OBJECTS").unwrap();
        for o in &raw.objects {
            writeln!(s, "{o}").unwrap();
        }
        writeln!(s, "MORPHISMS").unwrap();
        for (f, a, b) in &raw.morphisms {
            writeln!(s, "{f} {a} {b}").unwrap();
        }
        writeln!(s, "COMPOSITION").unwrap();
        for (g, f, h) in &raw.composition {
            writeln!(s, "{g} {f} {h}").unwrap();
        }
        for fb in &self.functors {
            writeln!(s, "FUNCTOR {} -> {}", fb.name, fb.codomain).unwrap();
            for (x, y) in &fb.objects {
                writeln!(s, "obj {x} {y}").unwrap();
            }
            for (f, g) in &fb.morphisms {
                writeln!(s, "mor {f} {g}").unwrap();
            }
        }
        s
    }

    pub fn validate(&self) -> Result<FinCat, CategoryError> {
        validate_category(&self.category)
    }
}

impl FunctorBlock {
    pub fn of_functor(name: &str, codomain: &str, f: &Functor) -> Self {
        let (d, c) = (&*f.dom, &*f.cod);
        FunctorBlock {
            name: name.to_string(),
            codomain: codomain.to_string(),
            objects: d.objects().map(|o| (d.obj_name(o).to_string(), c.obj_name(f.obj(o)).to_string())).collect(),
            morphisms: d
                .non_identity_morphisms()
                .map(|m| (d.mor_name(m).to_string(), c.mor_name(f.mor(m)).to_string()))
                .collect(),
        }
    }

    /// Resolves names against the two categories and checks the functor laws.
    pub fn resolve(&self, dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Result<Functor, String> {
        let mut objs: Vec<Option<ObjId>> = vec![None; dom.num_objects()];
        for (x, y) in &self.objects {
            let a = dom.obj_by_name(x).ok_or_else(|| format!("{}: unknown object `{x}`", self.name))?;
            let b = cod.obj_by_name(y).ok_or_else(|| format!("{}: unknown object `{y}` in the codomain", self.name))?;
            objs[a.idx()] = Some(b);
        }
        let objs: Vec<ObjId> = dom
            .objects()
            .map(|o| objs[o.idx()].ok_or_else(|| format!("{}: no image for object `{}`", self.name, dom.obj_name(o))))
            .collect::<Result<_, _>>()?;
        let mut mors: Vec<Option<MorId>> = dom
            .morphisms()
            .map(|m| dom.is_identity(m).then(|| cod.identity(objs[dom.src(m).idx()])))
            .collect();
        for (f, g) in &self.morphisms {
            let a = dom.mor_by_name(f).ok_or_else(|| format!("{}: unknown morphism `{f}`", self.name))?;
            let b = cod
                .mor_by_name(g)
                .or_else(|| cod.objects().find(|&o| identity_name(cod.obj_name(o)) == *g).map(|o| cod.identity(o)))
                .ok_or_else(|| format!("{}: unknown morphism `{g}` in the codomain", self.name))?;
            mors[a.idx()] = Some(b);
        }
        let mors: Vec<MorId> = dom
            .morphisms()
            .map(|m| mors[m.idx()].ok_or_else(|| format!("{}: no image for morphism `{}`", self.name, dom.mor_name(m))))
            .collect::<Result<_, _>>()?;
        Functor::new(dom.clone(), cod.clone(), objs, mors).map_err(|e| format!("{}: {e}", self.name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, free_parallel_pair, square_poset, FinCatBuilder};
    use proptest::prelude::*;

    fn roundtrip(c: &FinCat) {
        let text = CategoryFile::of_category(c).export();
        let parsed = CategoryFile::parse(&text).unwrap();
        assert_eq!(parsed.export(), text);
        let back = parsed.validate().unwrap();
        assert_eq!(&back, c);
    }

    #[test]
    fn small_categories_roundtrip() {
        for c in [chain(0), chain(2), square_poset(), free_parallel_pair()] {
            roundtrip(&c);
        }
    }

    #[test]
    fn bad_header() {
        let e = CategoryFile::parse("fincat 2\nOBJECTS\na\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn functor_blocks() {
        let text = "fincat 1\nOBJECTS\na\nb\nMORPHISMS\nf a b\nCOMPOSITION\nFUNCTOR collapse -> self\nobj a a\nobj b a\nmor f id_a\n";
        let cf = CategoryFile::parse(text).unwrap();
        assert_eq!(cf.export(), text);
        let c = Arc::new(cf.validate().unwrap());
        let f = cf.functors[0].resolve(&c, &c).unwrap();
        assert_eq!(f.obj_map(), [ObjId(0), ObjId(0)]);
        let g = FunctorBlock::of_functor("collapse", "self", &f);
        assert_eq!(g, cf.functors[0]);
    }

    #[test]
    fn missing_composite_is_a_law_violation() {
        let text = "fincat 1\nOBJECTS\na\nb\nc\nMORPHISMS\nf a b\ng b c\nCOMPOSITION\n";
        let e = CategoryFile::parse(text).unwrap().validate().unwrap_err();
        assert!(e.to_string().contains("MissingComposite"), "{e}");
    }

    fn random_poset(n: usize, bits: u64) -> FinCat {
        // a relation below the diagonal, closed transitively
        let mut le = vec![vec![false; n]; n];
        let mut k = 0;
        for j in 0..n {
            le[j][j] = true;
            for i in 0..j {
                le[i][j] = bits >> k & 1 == 1;
                k += 1;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][m] && le[m][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut b = FinCatBuilder::new();
        let objs: Vec<ObjId> = (0..n).map(|i| b.add_object(format!("x{i}"))).collect();
        let mut arrow = vec![vec![None; n]; n];
        for i in 0..n {
            arrow[i][i] = Some(b.identity(objs[i]));
            for j in 0..n {
                if i != j && le[i][j] {
                    arrow[i][j] = Some(b.add_morphism(format!("x{i}_x{j}"), objs[i], objs[j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][l]) {
                        b.set_composite(g, f, arrow[i][l].unwrap());
                    }
                }
            }
        }
        b.build().unwrap()
    }

    proptest! {
        #[test]
        fn posets_roundtrip_byte_stably(n in 1usize..6, bits in any::<u64>()) {
            roundtrip(&random_poset(n, bits));
        }
    }
}
