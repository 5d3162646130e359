use super::{Functor, MorId, ObjId};

/// Is `phi` coCartesian for `p`: every `psi: src(phi) -> z` together with
/// `g: p(tgt phi) -> p(z)` satisfying `g . p(phi) = p(psi)` factors uniquely.
pub fn is_cocartesian(p: &Functor, phi: MorId) -> bool {
    let (e, b) = (&*p.dom, &*p.cod);
    let (x, x2) = (e.src(phi), e.tgt(phi));
    let f = p.mor(phi);
    for &psi in e.out_morphisms(x) {
        let z = e.tgt(psi);
        for &g in b.hom(p.obj(x2), p.obj(z)) {
            if b.compose(g, f) != p.mor(psi) {
                continue;
            }
            let n = e
                .hom(x2, z)
                .iter()
                .filter(|&&chi| p.mor(chi) == g && e.compose(chi, phi) == psi)
                .count();
            if n != 1 {
                return false;
            }
        }
    }
    true
}

pub fn is_cartesian(p: &Functor, phi: MorId) -> bool {
    let (e, b) = (&*p.dom, &*p.cod);
    let (x2, x) = (e.src(phi), e.tgt(phi));
    let f = p.mor(phi);
    for &psi in e.in_morphisms(x) {
        let z = e.src(psi);
        for &g in b.hom(p.obj(z), p.obj(x2)) {
            if b.compose(f, g) != p.mor(psi) {
                continue;
            }
            let n = e
                .hom(z, x2)
                .iter()
                .filter(|&&chi| p.mor(chi) == g && e.compose(phi, chi) == psi)
                .count();
            if n != 1 {
                return false;
            }
        }
    }
    true
}

/// A coCartesian morphism out of `x` over `f`, if any.
pub fn cocartesian_lift(p: &Functor, f: MorId, x: ObjId) -> Option<MorId> {
    if p.obj(x) != p.cod.src(f) {
        return None;
    }
    p.dom
        .out_morphisms(x)
        .iter()
        .copied()
        .find(|&phi| p.mor(phi) == f && is_cocartesian(p, phi))
}

/// A Cartesian morphism into `x` over `f`, if any.
pub fn cartesian_lift(p: &Functor, f: MorId, x: ObjId) -> Option<MorId> {
    if p.obj(x) != p.cod.tgt(f) {
        return None;
    }
    p.dom
        .in_morphisms(x)
        .iter()
        .copied()
        .find(|&phi| p.mor(phi) == f && is_cartesian(p, phi))
}

pub fn opfibration_check(p: &Functor) -> bool {
    p.dom.objects().all(|x| {
        p.cod
            .out_morphisms(p.obj(x))
            .iter()
            .all(|&f| cocartesian_lift(p, f, x).is_some())
    })
}

pub fn fibration_check(p: &Functor) -> bool {
    p.dom.objects().all(|x| {
        p.cod
            .in_morphisms(p.obj(x))
            .iter()
            .all(|&f| cartesian_lift(p, f, x).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, comma_category, product, terminal};
    use std::sync::Arc;

    #[test]
    fn product_projection_is_an_opfibration() {
        let c1 = Arc::new(chain(1));
        let (_, _, p2) = product(&c1, &c1);
        assert!(opfibration_check(&p2));
        assert!(fibration_check(&p2));
    }

    #[test]
    fn coslice_projection_is_an_opfibration() {
        let c1 = Arc::new(chain(1));
        let pt = Arc::new(terminal());
        let j0 = Functor::pick(pt, c1.clone(), ObjId(0));
        let cm = comma_category(&j0, &Functor::identity(c1.clone())).unwrap();
        assert_eq!(cm.total.num_objects(), 2);
        assert!(opfibration_check(&cm.pr2));
    }

    #[test]
    fn point_inclusion_is_not_an_opfibration() {
        let c1 = Arc::new(chain(1));
        let pt = Arc::new(terminal());
        let j0 = Functor::pick(pt, c1.clone(), ObjId(0));
        assert!(!opfibration_check(&j0));
        let a = c1.hom(ObjId(0), ObjId(1))[0];
        assert_eq!(cocartesian_lift(&j0, a, ObjId(0)), None);
    }
}
