use crate::fincat::{FinCat, Functor, MorId, NatTrans, ObjId};

use super::package::{build_N, NervePackage};
use super::simplicial::{Chain, NerveError, Truncation};

/// `ξ` together with its zigzag into the target package (the same package in
/// exact mode, the next truncation level otherwise).
///
/// In Dir modes `drop: ξ => ι` and `keep: ξ => n.p`; in Inv modes both
/// transformations point the other way.
#[derive(Debug, Clone)]
pub struct Xi {
    pub target: NervePackage,
    pub extremal: ObjId,
    pub xi: Functor,
    pub iota: Functor,
    pub np: Functor,
    pub drop: NatTrans,
    pub keep: NatTrans,
    /// Whether `ξ` added a vertex, per object of the source total.
    pub extended: Vec<bool>,
}

pub fn initial_object(c: &FinCat) -> Option<ObjId> {
    c.objects().find(|&i| c.objects().all(|x| c.hom(i, x).len() == 1))
}

pub fn final_object(c: &FinCat) -> Option<ObjId> {
    c.objects().find(|&i| c.objects().all(|x| c.hom(x, i).len() == 1))
}

fn full(n: usize) -> u32 {
    (1u32 << (n + 1)) - 1
}

pub fn xi_functor(pkg: &NervePackage) -> Result<Xi, NerveError> {
    let shape = &*pkg.shape;
    let dir = pkg.mode.is_dir();
    let i = if dir {
        initial_object(shape).ok_or(NerveError::NoExtremalObject("initial"))?
    } else {
        final_object(shape).ok_or(NerveError::NoExtremalObject("final"))?
    };
    let target = match pkg.truncation {
        Truncation::Level(k) => build_N(pkg.shape.clone(), pkg.mode, Truncation::Level(k + 1))?,
        Truncation::Exact => pkg.clone(),
    };
    let reduced = pkg.mode.is_reduced();
    let n_obj = pkg.total.num_objects();
    let mut extended = vec![false; n_obj];
    let mut xi_obj = Vec::with_capacity(n_obj);
    let mut iota_obj = Vec::with_capacity(n_obj);
    for o in pkg.total.objects() {
        let ch = pkg.chain(o);
        iota_obj.push(target.object_of(ch).ok_or_else(|| NerveError::MissingSimplex(ch.vertex_label(shape)))?);
        let img = if dir {
            if reduced && ch.start == i {
                ch.clone()
            } else {
                extended[o.idx()] = true;
                let mut arrows = vec![shape.hom(i, ch.start)[0]];
                arrows.extend_from_slice(&ch.arrows);
                Chain { start: i, arrows }
            }
        } else {
            let last = ch.last_vertex(shape);
            if reduced && last == i {
                ch.clone()
            } else {
                extended[o.idx()] = true;
                let mut arrows = ch.arrows.clone();
                arrows.push(shape.hom(last, i)[0]);
                Chain { start: ch.start, arrows }
            }
        };
        xi_obj.push(target.object_of(&img).ok_or_else(|| {
            NerveError::TruncationTooSmall(format!("ξ of {} leaves the target", ch.vertex_label(shape)))
        })?);
    }
    let g = &pkg.groth.cat;
    let mut xi_mor = Vec::with_capacity(pkg.total.num_morphisms());
    let mut iota_mor = Vec::with_capacity(pkg.total.num_morphisms());
    for m in pkg.total.morphisms() {
        let (s, t) = (g.src(m), g.tgt(m));
        let (es, et) = (extended[s.idx()], extended[t.idx()]);
        let u = pkg.mask(m);
        let n = pkg.dim(s);
        let u2 = if dir {
            match (es, et) {
                (true, true) => 1 | (u << 1),
                (true, false) => u << 1,
                (false, true) => u | 1,
                (false, false) => u,
            }
        } else {
            match (es, et) {
                (true, true) => u | (1 << (n + 1)),
                (true, false) | (false, false) => u,
                (false, true) => u | (1 << n),
            }
        };
        xi_mor.push(target.groth.morphism(xi_obj[s.idx()], u2).expect("ξ of a morphism"));
        iota_mor.push(target.groth.morphism(iota_obj[s.idx()], u).expect("inclusion of a morphism"));
    }
    let xi = Functor::new(pkg.total.clone(), target.total.clone(), xi_obj.clone(), xi_mor)
        .map_err(|e| NerveError::MissingSimplex(e.to_string()))?;
    let iota = Functor::new_unchecked(pkg.total.clone(), target.total.clone(), iota_obj, iota_mor).unwrap();
    let base_pt = target.vertex(i);
    let np = Functor::constant(pkg.total.clone(), target.total.clone(), base_pt);
    let mut drop = Vec::with_capacity(n_obj);
    let mut keep = Vec::with_capacity(n_obj);
    for o in pkg.total.objects() {
        let src = xi_obj[o.idx()];
        let d = target.dim(src);
        let drop_mask = match (extended[o.idx()], dir) {
            (false, _) => full(d),
            (true, true) => full(d) & !1,
            (true, false) => full(d - 1),
        };
        let keep_mask = if dir { 1 } else { 1 << d };
        drop.push(target.groth.morphism(src, drop_mask).unwrap());
        keep.push(target.groth.morphism(src, keep_mask).unwrap());
    }
    let mk = |a: &Functor, b: &Functor, comps: Vec<MorId>| {
        let r = if dir { NatTrans::new(a.clone(), b.clone(), comps) } else { NatTrans::new(b.clone(), a.clone(), comps) };
        r.map_err(|e| NerveError::MissingSimplex(format!("zigzag: {e}")))
    };
    let drop = mk(&xi, &iota, drop)?;
    let keep = mk(&xi, &np, keep)?;
    Ok(Xi { target, extremal: i, xi, iota, np, drop, keep, extended })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, terminal, v_poset};
    use crate::nerve::package::Mode;
    use std::sync::Arc;

    #[test]
    fn point_full_mode_raises_dimension() {
        let p = build_N(Arc::new(terminal()), Mode::DirFull, Truncation::Level(2)).unwrap();
        let x = xi_functor(&p).unwrap();
        for o in p.total.objects() {
            assert_eq!(x.target.dim(x.xi.obj(o)), p.dim(o) + 1);
        }
    }

    #[test]
    fn interval_reduced_xi() {
        let p = build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact).unwrap();
        let x = xi_functor(&p).unwrap();
        let name = |o: &str| x.target.total.obj_name(x.xi.obj(p.total.obj_by_name(o).unwrap())).to_string();
        assert_eq!(name("0:0"), "0:0");
        assert_eq!(name("0:1"), "1:0<1");
        assert_eq!(name("1:0<1"), "1:0<1");
        let v1 = p.total.obj_by_name("0:1").unwrap();
        let t = &x.target.total;
        assert_eq!(t.obj_name(t.tgt(x.drop.at(v1))), "0:1");
        assert_eq!(t.obj_name(t.tgt(x.keep.at(v1))), "0:0");
    }

    #[test]
    fn xi_exists_in_every_mode() {
        for mode in Mode::ALL {
            let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
            for shape in [terminal(), chain(1), chain(2)] {
                let p = build_N(Arc::new(shape), mode, t).unwrap();
                let x = xi_functor(&p).unwrap();
                x.xi.check_laws().unwrap();
                x.drop.check_naturality().unwrap();
                x.keep.check_naturality().unwrap();
            }
        }
        let p = build_N(Arc::new(v_poset()), Mode::DirReduced, Truncation::Exact).unwrap();
        assert!(matches!(xi_functor(&p), Err(NerveError::NoExtremalObject(_))));
    }
}
