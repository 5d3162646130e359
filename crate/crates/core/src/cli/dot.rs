use std::fmt::Write as _;

use crate::fincat::FinCat;
use crate::nerve::NervePackage;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for a category; identities are left out. `label` names the
/// nodes and `dashed` picks the morphisms drawn dashed.
pub fn category_dot(
    name: &str,
    c: &FinCat,
    label: &dyn Fn(usize) -> String,
    dashed: &dyn Fn(usize) -> bool,
) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    for o in c.objects() {
        writeln!(s, "  {} [label={}];", quote(c.obj_name(o)), quote(&label(o.idx()))).unwrap();
    }
    for m in c.non_identity_morphisms() {
        let style = if dashed(m.idx()) { ", style=dashed" } else { "" };
        writeln!(
            s,
            "  {} -> {} [label={}{style}];",
            quote(c.obj_name(c.src(m))),
            quote(c.obj_name(c.tgt(m))),
            quote(c.mor_name(m))
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

/// The total category of a nerve, simplices labelled by their vertex lists
/// and vertical morphisms dashed.
pub fn nerve_dot(pkg: &NervePackage) -> String {
    category_dot(
        &format!("N {}", pkg.mode),
        &pkg.total,
        &|o| pkg.vertex_label(crate::fincat::ObjId(o as u32)),
        &|m| pkg.is_vertical(crate::fincat::MorId(m as u32)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::chain;
    use crate::nerve::{build_N, Mode, Truncation};
    use std::sync::Arc;

    #[test]
    fn interval_dot() {
        let p = build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact).unwrap();
        let d = nerve_dot(&p);
        assert_eq!(d.matches("style=dashed").count(), 1);
        assert_eq!(d.matches(" -> ").count(), 2);
        assert!(d.contains("[label=\"0,1\"]"), "{d}");
        assert!(d.starts_with("digraph \"N DirReduced\" {"));
    }
}
