use serde::Serialize;

use super::{FinCat, Functor, MorId, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub is_poset: bool,
    /// No composable pair of non-identities composes to an identity.
    pub is_identity_rigid: bool,
    pub admits_increasing_degree: bool,
    pub admits_decreasing_degree: bool,
    pub is_connected: bool,
}

/// Which degree direction is called "direct". Both flags are computed either
/// way; the convention only decides which one the `Dir` classes read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum DegreeConvention {
    #[default]
    DirDecreasing,
    DirIncreasing,
}

impl ClassificationFlags {
    pub fn is_direct(&self, conv: DegreeConvention) -> bool {
        match conv {
            DegreeConvention::DirDecreasing => self.admits_decreasing_degree,
            DegreeConvention::DirIncreasing => self.admits_increasing_degree,
        }
    }

    pub fn is_inverse(&self, conv: DegreeConvention) -> bool {
        match conv {
            DegreeConvention::DirDecreasing => self.admits_increasing_degree,
            DegreeConvention::DirIncreasing => self.admits_decreasing_degree,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A cycle of non-identity morphisms (each ending where the next starts), if
/// the non-identity digraph has one. A non-identity endomorphism is a cycle
/// of length one.
pub fn nonidentity_cycle(c: &FinCat) -> Option<Vec<MorId>> {
    if let Some(m) = c.non_identity_morphisms().find(|&m| c.src(m) == c.tgt(m)) {
        return Some(vec![m]);
    }
    // iterative DFS with colors; parent edges recorded for the witness
    let n = c.num_objects();
    let mut color = vec![0u8; n];
    let mut via: Vec<Option<MorId>> = vec![None; n];
    for root in c.objects() {
        if color[root.idx()] != 0 {
            continue;
        }
        let mut stack: Vec<(ObjId, usize)> = vec![(root, 0)];
        color[root.idx()] = 1;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let outs = c.out_morphisms(v);
            if *pos == outs.len() {
                color[v.idx()] = 2;
                stack.pop();
                continue;
            }
            let m = outs[*pos];
            *pos += 1;
            if c.is_identity(m) {
                continue;
            }
            let w = c.tgt(m);
            match color[w.idx()] {
                0 => {
                    color[w.idx()] = 1;
                    via[w.idx()] = Some(m);
                    stack.push((w, 0));
                }
                1 => {
                    let mut cyc = vec![m];
                    let mut x = v;
                    while x != w {
                        let e = via[x.idx()].unwrap();
                        cyc.push(e);
                        x = c.src(e);
                    }
                    cyc.reverse();
                    return Some(cyc);
                }
                _ => {}
            }
        }
    }
    None
}

pub fn is_connected(c: &FinCat) -> bool {
    if c.num_objects() == 0 {
        return false;
    }
    let mut uf = UnionFind::new(c.num_objects());
    for m in c.non_identity_morphisms() {
        uf.union(c.src(m).idx(), c.tgt(m).idx());
    }
    (0..c.num_objects()).all(|i| uf.find(i) == 0)
}

pub fn is_poset(c: &FinCat) -> bool {
    for a in c.objects() {
        for b in c.objects() {
            let n = c.hom(a, b).len();
            if n > 1 || (a != b && n == 1 && !c.hom(b, a).is_empty()) {
                return false;
            }
        }
    }
    true
}

pub fn is_identity_rigid(c: &FinCat) -> bool {
    c.composition_entries()
        .iter()
        .all(|&(_, _, h)| !c.is_identity(h))
}

pub fn classify_category(c: &FinCat) -> ClassificationFlags {
    let acyclic = nonidentity_cycle(c).is_none();
    ClassificationFlags {
        is_poset: is_poset(c),
        is_identity_rigid: is_identity_rigid(c),
        admits_increasing_degree: acyclic,
        admits_decreasing_degree: acyclic,
        is_connected: is_connected(c),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageChecks {
    pub surjective_on_objects: bool,
    pub surjective_on_morphisms: bool,
    pub all_fibers_connected: bool,
    /// A human-readable failure witness, if any check failed.
    pub witness: Option<String>,
}

impl ImageChecks {
    pub fn all(&self) -> bool {
        self.surjective_on_objects && self.surjective_on_morphisms && self.all_fibers_connected
    }
}

/// The fiber over `i`: objects over `i`, with the morphisms over `id_i`.
pub fn fiber_objects(f: &Functor, i: ObjId) -> Vec<ObjId> {
    f.dom.objects().filter(|&x| f.obj(x) == i).collect()
}

pub fn functor_image_checks(f: &Functor) -> ImageChecks {
    let (d, c) = (&*f.dom, &*f.cod);
    let mut hit_o = vec![false; c.num_objects()];
    let mut hit_m = vec![false; c.num_morphisms()];
    for x in d.objects() {
        hit_o[f.obj(x).idx()] = true;
    }
    for m in d.morphisms() {
        hit_m[f.mor(m).idx()] = true;
    }
    let mut witness = None;
    let surj_o = match hit_o.iter().position(|h| !h) {
        Some(i) => {
            witness = Some(format!("object {} not in the image", c.obj_name(ObjId(i as u32))));
            false
        }
        None => true,
    };
    let surj_m = match hit_m.iter().position(|h| !h) {
        Some(i) => {
            witness.get_or_insert_with(|| format!("morphism {} not in the image", c.mor_name(MorId(i as u32))));
            false
        }
        None => true,
    };
    let mut uf = UnionFind::new(d.num_objects());
    for m in d.non_identity_morphisms() {
        if c.is_identity(f.mor(m)) {
            uf.union(d.src(m).idx(), d.tgt(m).idx());
        }
    }
    let mut connected = true;
    for i in c.objects() {
        let fib = fiber_objects(f, i);
        if fib.is_empty() {
            connected = false;
            witness.get_or_insert_with(|| format!("empty fiber over {}", c.obj_name(i)));
            continue;
        }
        let r = uf.find(fib[0].idx());
        if let Some(&y) = fib.iter().find(|y| uf.find(y.idx()) != r) {
            connected = false;
            witness.get_or_insert_with(|| {
                format!(
                    "fiber over {} disconnects {} and {}",
                    c.obj_name(i),
                    d.obj_name(fib[0]),
                    d.obj_name(y)
                )
            });
        }
    }
    ImageChecks {
        surjective_on_objects: surj_o,
        surjective_on_morphisms: surj_m,
        all_fibers_connected: connected,
        witness,
    }
}

fn bijective<T: Copy>(items: impl Iterator<Item = T>, key: impl Fn(T) -> usize, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in items {
        let k = key(x);
        if seen[k] {
            return false;
        }
        seen[k] = true;
        count += 1;
    }
    count == n
}

pub fn is_isomorphism_of_categories(f: &Functor) -> bool {
    bijective(f.obj_map().iter().copied(), ObjId::idx, f.cod.num_objects())
        && bijective(f.mor_map().iter().copied(), MorId::idx, f.cod.num_morphisms())
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence_of_categories(f: &Functor) -> bool {
    let (d, c) = (&*f.dom, &*f.cod);
    for a in d.objects() {
        for b in d.objects() {
            let hom = d.hom(a, b);
            let target = c.hom(f.obj(a), f.obj(b));
            if hom.len() != target.len() {
                return false;
            }
            let mut imgs: Vec<MorId> = hom.iter().map(|&m| f.mor(m)).collect();
            imgs.sort_unstable();
            imgs.dedup();
            if imgs.len() != hom.len() {
                return false;
            }
        }
    }
    c.objects().all(|y| {
        d.objects().any(|x| {
            c.hom(f.obj(x), y).iter().any(|&m| c.is_isomorphism(m))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, free_parallel_pair, validate_category, RawCategory};
    use std::sync::Arc;

    fn monoid(elems: &[&str], table: &[(&str, &str, &str)]) -> FinCat {
        let s = |x: &str| x.to_string();
        validate_category(&RawCategory {
            objects: vec![s("*")],
            morphisms: elems.iter().map(|e| (s(e), s("*"), s("*"))).collect(),
            composition: table.iter().map(|(a, b, c)| (s(a), s(b), s(c))).collect(),
        })
        .unwrap()
    }

    #[test]
    fn chain_two_flags() {
        let f = classify_category(&chain(2));
        assert!(f.is_poset && f.is_identity_rigid && f.is_connected);
        assert!(f.admits_increasing_degree && f.admits_decreasing_degree);
    }

    #[test]
    fn idempotent_monoid_is_rigid_not_directed() {
        let m = monoid(&["x"], &[("x", "x", "x")]);
        let f = classify_category(&m);
        assert!(f.is_identity_rigid);
        assert!(!f.is_poset);
        assert!(!f.admits_increasing_degree && !f.admits_decreasing_degree);
    }

    #[test]
    fn group_of_order_two_is_not_rigid() {
        let m = monoid(&["s"], &[("s", "s", "id_*")]);
        assert!(!classify_category(&m).is_identity_rigid);
    }

    #[test]
    fn parallel_pair_is_not_a_poset() {
        let f = classify_category(&free_parallel_pair());
        assert!(!f.is_poset);
        assert!(f.admits_decreasing_degree);
    }

    #[test]
    fn image_checks() {
        let c1 = Arc::new(chain(1));
        assert!(functor_image_checks(&Functor::identity(c1.clone())).all());
        let pt = Arc::new(crate::fincat::terminal());
        let inc = Functor::new(pt.clone(), c1.clone(), vec![ObjId(0)], vec![c1.identity(ObjId(0))]).unwrap();
        let r = functor_image_checks(&inc);
        assert!(!r.surjective_on_objects);
        assert!(r.witness.is_some());
    }

    #[test]
    fn iso_checks() {
        let c1 = Arc::new(chain(1));
        assert!(is_isomorphism_of_categories(&Functor::identity(c1.clone())));
        let pt = Arc::new(crate::fincat::terminal());
        let collapse = Functor::constant(c1, pt, ObjId(0));
        assert!(!is_isomorphism_of_categories(&collapse));
        assert!(!is_equivalence_of_categories(&collapse));
    }

    #[test]
    fn cycle_witness_is_a_closed_path() {
        let c = validate_category(&RawCategory {
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![("f".into(), "a".into(), "b".into()), ("g".into(), "b".into(), "a".into())],
            composition: vec![
                ("g".into(), "f".into(), "id_a".into()),
                ("f".into(), "g".into(), "id_b".into()),
            ],
        })
        .unwrap();
        let cyc = nonidentity_cycle(&c).unwrap();
        assert_eq!(cyc.len(), 2);
        assert_eq!(c.tgt(cyc[0]), c.src(cyc[1]));
        assert_eq!(c.tgt(cyc[1]), c.src(cyc[0]));
    }
}
