use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FinCat, FinCatBuilder, Functor, MorId, ObjId};

use super::simplicial::{semisimplicial_nerve, SemiSimplicialSet};

/// Image bitmask of the composite `u . v` of injective monotone maps, where
/// `v` indexes positions inside the image of `u`.
pub fn compose_masks(u: u32, v: u32) -> u32 {
    let mut out = 0;
    let mut pos = 0;
    for bit in 0..32 {
        if u & (1 << bit) != 0 {
            if v & (1 << pos) != 0 {
                out |= 1 << bit;
            }
            pos += 1;
        }
    }
    out
}

pub fn mask_to_list(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}

pub fn list_to_mask(list: &[usize]) -> u32 {
    list.iter().fold(0, |m, &b| m | (1 << b))
}

fn full_mask(n: usize) -> u32 {
    if n >= 31 {
        u32::MAX
    } else {
        (1u32 << (n + 1)) - 1
    }
}

/// `∫X` with the bookkeeping needed to read objects as simplices and
/// morphisms as injective monotone maps.
#[derive(Debug, Clone)]
pub struct GrothendieckTotal {
    pub cat: Arc<FinCat>,
    /// `(dimension, index in level)` per object.
    pub objects: Vec<(usize, u32)>,
    /// Image bitmask of `u: [m] -> [n]` per morphism `(n, x) -> (m, u^*x)`.
    pub masks: Vec<u32>,
    obj_index: HashMap<(usize, u32), ObjId>,
    mor_index: HashMap<(ObjId, u32), MorId>,
}

impl GrothendieckTotal {
    pub fn object(&self, n: usize, x: u32) -> Option<ObjId> {
        self.obj_index.get(&(n, x)).copied()
    }

    pub fn morphism(&self, src: ObjId, mask: u32) -> Option<MorId> {
        self.mor_index.get(&(src, mask)).copied()
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.objects[o.idx()].0
    }
}

/// Objects are named `n:<label>` and morphisms `<source>|<u(0)>,...,<u(m)>`.
pub fn grothendieck_total(x: &SemiSimplicialSet, labels: &dyn Fn(usize, u32) -> String) -> GrothendieckTotal {
    let mut b = FinCatBuilder::new();
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut names = Vec::new();
    for (n, lvl) in x.levels.iter().enumerate() {
        for i in 0..lvl.len() as u32 {
            names.push(format!("{n}:{}", labels(n, i)));
            let o = b.add_object(names.last().unwrap().clone());
            objects.push((n, i));
            obj_index.insert((n, i), o);
        }
    }
    let mut masks: Vec<u32> = objects.iter().map(|&(n, _)| full_mask(n)).collect();
    let mut mor_index = HashMap::new();
    for (oi, &(n, xi)) in objects.iter().enumerate() {
        let src = ObjId(oi as u32);
        mor_index.insert((src, full_mask(n)), b.identity(src));
        for mask in 1..full_mask(n) {
            let m = mask.count_ones() as usize - 1;
            let tgt = obj_index[&(m, x.restrict(n, xi, mask))];
            let list: Vec<String> = mask_to_list(mask).iter().map(|v| v.to_string()).collect();
            let name = format!("{}|{}", names[oi], list.join(","));
            let id = b.add_morphism(name, src, tgt);
            masks.push(mask);
            mor_index.insert((src, mask), id);
        }
    }
    let cat = {
        // composites: (n,x) -u-> (m,y) -v-> (l,z) is u . v
        let mut entries = Vec::new();
        let mut out: Vec<Vec<MorId>> = vec![Vec::new(); objects.len()];
        for (&(s, mask), &m) in &mor_index {
            if mask != full_mask(objects[s.idx()].0) {
                out[s.idx()].push(m);
            }
        }
        for (&(s, u), &f) in &mor_index {
            if u == full_mask(objects[s.idx()].0) {
                continue;
            }
            let t = tgt_of(&objects, &obj_index, x, s, u);
            for &g in &out[t.idx()] {
                let v = masks[g.idx()];
                entries.push((g, f, mor_index[&(s, compose_masks(u, v))]));
            }
        }
        for (g, f, h) in entries {
            b.set_composite(g, f, h);
        }
        Arc::new(b.build_unchecked())
    };
    GrothendieckTotal { cat, objects, masks, obj_index, mor_index }
}

fn tgt_of(
    objects: &[(usize, u32)],
    obj_index: &HashMap<(usize, u32), ObjId>,
    x: &SemiSimplicialSet,
    s: ObjId,
    u: u32,
) -> ObjId {
    let (n, xi) = objects[s.idx()];
    obj_index[&(u.count_ones() as usize - 1, x.restrict(n, xi, u))]
}

/// Truncated `(Δ°)^op` as `∫N°(pt)` up to dimension `k`.
pub fn simplex_base(k: usize) -> GrothendieckTotal {
    let pt = crate::fincat::terminal();
    let x = semisimplicial_nerve(&pt, k);
    grothendieck_total(&x, &|n, _| format!("[{n}]"))
}

/// The projection `∫X -> ∫N°(pt)` sending `(n, x)` to `n`.
pub fn base_projection(g: &GrothendieckTotal, base: &GrothendieckTotal) -> Functor {
    let objs: Vec<ObjId> = g.objects.iter().map(|&(n, _)| base.object(n, 0).unwrap()).collect();
    let mors: Vec<MorId> = g
        .cat
        .morphisms()
        .map(|m| base.morphism(objs[g.cat.src(m).idx()], g.masks[m.idx()]).unwrap())
        .collect();
    Functor::new_unchecked(g.cat.clone(), base.cat.clone(), objs, mors).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, fibration_check, opfibration_check, terminal};
    use crate::nerve::simplicial::{reduced_nerve, Truncation};

    fn total(c: &FinCat, x: &SemiSimplicialSet) -> GrothendieckTotal {
        grothendieck_total(x, &|n, i| x.levels[n][i as usize].label(c))
    }

    #[test]
    fn mask_composition() {
        // u = {0,2} in [2]; v = {1} in [1] -> {2}
        assert_eq!(compose_masks(0b101, 0b10), 0b100);
        assert_eq!(compose_masks(0b111, 0b011), 0b011);
    }

    #[test]
    fn point_totals() {
        let pt = terminal();
        let t = total(&pt, &reduced_nerve(&pt, Truncation::Exact).unwrap());
        assert_eq!((t.cat.num_objects(), t.cat.num_morphisms()), (1, 1));
        let base = simplex_base(2);
        assert_eq!(base.cat.num_objects(), 3);
        assert_eq!(base.cat.num_non_identity(), 8);
        assert!(base.cat.law_violations().is_empty());
    }

    #[test]
    fn interval_total_is_a_span() {
        let c = chain(1);
        let t = total(&c, &reduced_nerve(&c, Truncation::Exact).unwrap());
        assert_eq!(t.cat.num_objects(), 3);
        assert_eq!(t.cat.num_non_identity(), 2);
        let e = t.cat.obj_by_name("1:0<1").unwrap();
        assert_eq!(t.cat.out_morphisms(e).len(), 3);
    }

    #[test]
    fn projection_has_discrete_fibers_and_is_an_opfibration() {
        let c = chain(2);
        let x = semisimplicial_nerve(&c, 2);
        let t = total(&c, &x);
        assert!(t.cat.law_violations().is_empty());
        let base = simplex_base(2);
        let p = base_projection(&t, &base);
        p.check_laws().unwrap();
        assert!(opfibration_check(&p));
        assert!(!fibration_check(&p));
        for m in t.cat.non_identity_morphisms() {
            assert!(!base.cat.is_identity(p.mor(m)));
        }
    }
}
