use std::sync::Arc;

use crate::derivator::{fiber_category, CartesianMarking, DerivatorError, FunctorCategory, TargetCategory};
use crate::fincat::{check_adjunction, find_adjoint, terminal, AdjointSide, FinCat, Functor, MorId, NatTrans, ObjId, SearchBudget};
use crate::nerve::{build_N, xi_functor, Mode, NerveError, Truncation, Xi};

use super::homotopy::{parallel_morphism_homotopy, Homotopy, HomotopyBudget};
use super::report::{ReportBuilder, VerificationReport};
use super::shape_label;

/// The zigzag `id <= ξ => n.p` and the adjunction between `n^*` and `p^*` on
/// Cartesian diagrams: (a) functor-level identities, (b) triangle identities
/// for `Fun(-, C)`, (c) the non-identity unit or counit is invertible on
/// absolutely Cartesian diagrams.
pub fn verify_n5_zigzag(
    shape: &Arc<FinCat>,
    mode: Mode,
    truncation: Truncation,
    target: &TargetCategory,
    budget: SearchBudget,
) -> VerificationReport {
    let side = if mode.is_dir() { "right" } else { "left" };
    let mut r = ReportBuilder::new(format!("N5-{side}"), format!("I={} {mode} -> {}", shape_label(shape), target.name()))
        .with_mode(mode, truncation);
    if let Err(e) = run(&mut r, shape, mode, truncation, target, budget) {
        r.fail(e.to_string());
    }
    r.finish()
}

#[derive(Debug, thiserror::Error)]
enum N5Error {
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Derivator(#[from] DerivatorError),
    #[error(transparent)]
    Functor(#[from] crate::fincat::FunctorError),
}

fn run(
    r: &mut ReportBuilder,
    shape: &Arc<FinCat>,
    mode: Mode,
    truncation: Truncation,
    target: &TargetCategory,
    budget: SearchBudget,
) -> Result<(), N5Error> {
    let pkg = build_N(shape.clone(), mode, truncation)?;
    let x = xi_functor(&pkg)?;
    let i = x.extremal;
    let n = pkg.vertex(i);
    let n2 = x.target.vertex(i);
    let dir = mode.is_dir();
    check_functor_level(r, &x, n, n2, mode);

    // (b) and (c) on diagrams over the package ξ lands in
    let tp = &x.target;
    let marking = CartesianMarking::of_package(tp);
    let cart = FunctorCategory::cartesian(&marking, target, budget)?;
    let c = &*target.cat;
    let src = &*pkg.total;
    let comps = |xd: &Functor| -> Option<Vec<MorId>> {
        src.objects()
            .map(|o| {
                let keep = c.inverse(xd.mor(x.keep.at(o)))?;
                let drop = xd.mor(x.drop.at(o));
                Some(if dir { c.compose(drop, keep) } else { c.compose(keep, drop) })
            })
            .collect()
    };
    let mut zig = Vec::with_capacity(cart.len());
    for xd in &cart.objects {
        let Some(k) = comps(xd) else {
            r.fail(format!("ξ => n.p is not invertible on the Cartesian diagram {}", crate::derivator::table(xd)));
            return Ok(());
        };
        zig.push(k);
    }
    let iota = &x.iota;
    let name = if dir { "counit" } else { "unit" };
    for (a, xd) in cart.objects.iter().enumerate() {
        let k = &zig[a];
        let label = crate::derivator::table(xd);
        // naturality in the diagram's argument
        for m in src.morphisms() {
            let (s, t) = (src.src(m), src.tgt(m));
            let im = xd.mor(iota.mor(m));
            let ok = if dir { c.compose(im, k[s.idx()]) == k[t.idx()] } else { c.compose(k[t.idx()], im) == k[s.idx()] };
            if !r.require(ok, || format!("{name} of {label} is not natural along {}", src.mor_name(m))) {
                return Ok(());
            }
        }
        r.require(k[n.idx()] == c.identity(xd.obj(n2)), || format!("(b) triangle at n fails on {label}: {}", c.mor_name(k[n.idx()])));
        if xd.obj_map().iter().all(|&v| v == xd.obj(n2)) && xd.mor_map().iter().all(|&m| c.is_identity(m)) {
            r.require(k.iter().all(|&m| c.is_identity(m)), || format!("(b) triangle on the constant {label} fails"));
        }
        let absolute = tp.total.morphisms().all(|m| c.is_isomorphism(xd.mor(m)));
        if absolute {
            r.require(k.iter().all(|&m| c.is_isomorphism(m)), || format!("(c) {name} is not invertible on absolutely Cartesian {label}"));
        }
    }
    // naturality in the diagram
    for a in 0..cart.len() {
        for b in 0..cart.len() {
            for t in cart.hom(a, b)? {
                let (ka, kb) = (&zig[a], &zig[b]);
                for o in src.objects() {
                    let io = iota.obj(o);
                    let ok = if dir {
                        c.compose(t.at(io), ka[o.idx()]) == c.compose(kb[o.idx()], t.at(n2))
                    } else {
                        c.compose(t.at(n2), ka[o.idx()]) == c.compose(kb[o.idx()], t.at(io))
                    };
                    r.require(ok, || format!("{name} is not natural in the diagram at {}", src.obj_name(o)));
                }
            }
        }
    }
    let non_iso = cart
        .objects
        .iter()
        .zip(&zig)
        .filter(|(_, k)| !k.iter().all(|&m| c.is_isomorphism(m)))
        .count();
    r.note(format!("{} Cartesian diagrams; {name} invertible on {}", cart.len(), cart.len() - non_iso));
    if truncation == Truncation::Exact {
        cross_check(r, &x, &cart, &zig, target, budget)?;
    } else {
        r.note("adjoint search skipped: the zigzag lands in the next truncation level");
    }
    Ok(())
}

fn check_functor_level(r: &mut ReportBuilder, x: &Xi, n: ObjId, n2: ObjId, mode: Mode) {
    let tp = &x.target;
    let shape = &*tp.shape;
    let pt = Arc::new(terminal());
    let p_src = Functor::constant(x.xi.dom.clone(), pt.clone(), ObjId(0));
    let p_tgt = Functor::constant(tp.total.clone(), pt.clone(), ObjId(0));
    r.require(p_tgt.after(&x.xi).ok() == Some(p_src.clone()), || "(a) p.ξ != p".into());
    r.require(p_tgt.after(&x.np).ok() == Some(p_src), || "(a) p.n.p != p".into());
    r.require(x.np.obj_map().iter().all(|&o| o == n2), || "(a) n.p is not constant at n".into());
    let xn = x.xi.obj(n);
    if mode.is_reduced() {
        r.require(xn == n2, || format!("(a) ξn = {} but n = {}", tp.vertex_label(xn), tp.vertex_label(n2)));
        r.require(x.drop.at(n) == x.keep.at(n), || "(a) the two maps ξn -> n differ".into());
    } else {
        let ch = tp.chain(xn);
        let ok = ch.dim() == 1 && ch.start == x.extremal && shape.is_identity(ch.arrows[0]);
        r.require(ok, || format!("(a) ξn = {} is not the identity chain", tp.vertex_label(xn)));
        if ok {
            // the two face maps become equal once vertical morphisms are inverted
            let (fib, incl) = fiber_category(&tp.pi, x.extremal);
            let local = |m: MorId| {
                fib.morphisms().find(|&l| incl.mor(l) == m).expect("vertical morphism in the fiber")
            };
            let (e0, e1) = (local(x.drop.at(n)), local(x.keep.at(n)));
            match parallel_morphism_homotopy(&fib, e0, e1, HomotopyBudget::default()) {
                Homotopy::Equal { depth, .. } => r.note(format!("e0 ~ e1 in the fiber over the extremal object, depth {depth}")),
                Homotopy::Distinct(_) => r.fail("(a) e0 and e1 are distinct after inverting vertical morphisms"),
                Homotopy::Inconclusive(w) => r.inconclusive(format!("e0 ~ e1 undecided: {w}")),
            }
        }
    }
}

/// The zigzag as a transformation on the materialised category, checked with
/// the triangle identities and against the adjoint found by search.
fn cross_check(
    r: &mut ReportBuilder,
    x: &Xi,
    cart: &FunctorCategory,
    zig: &[Vec<MorId>],
    target: &TargetCategory,
    budget: SearchBudget,
) -> Result<(), N5Error> {
    let dir = x.target.mode.is_dir();
    let built = cart.build()?;
    let (e, c) = (&built.cat, &target.cat);
    let n2 = x.target.vertex(x.extremal);
    let const_of = |v: ObjId| -> Option<usize> {
        cart.index_of(&Functor::constant(cart.dom.clone(), c.clone(), v))
    };
    let mut p_obj = Vec::with_capacity(c.num_objects());
    for v in c.objects() {
        match const_of(v) {
            Some(k) => p_obj.push(ObjId(k as u32)),
            None => {
                r.fail(format!("the constant diagram at {} is not Cartesian", c.obj_name(v)));
                return Ok(());
            }
        }
    }
    let mut p_mor = Vec::with_capacity(c.num_morphisms());
    for m in c.morphisms() {
        let (a, b) = (p_obj[c.src(m).idx()], p_obj[c.tgt(m).idx()]);
        let t = NatTrans::new(cart.objects[a.idx()].clone(), cart.objects[b.idx()].clone(), vec![m; cart.dom.num_objects()])?;
        p_mor.push(built.morphism_of(a.idx(), b.idx(), &t).expect("constant transformation"));
    }
    let p_star = Functor::new(c.clone(), e.clone(), p_obj.clone(), p_mor)?;
    let n_obj: Vec<ObjId> = cart.objects.iter().map(|f| f.obj(n2)).collect();
    let n_mor: Vec<MorId> = e.morphisms().map(|m| built.trans[m.idx()].at(n2)).collect();
    let n_star = Functor::new(e.clone(), c.clone(), n_obj, n_mor)?;
    let np = n_star.after(&p_star)?;
    let pn = p_star.after(&n_star)?;
    r.require(np == Functor::identity(c.clone()), || "n*p* is not the identity".into());
    let mut zcomps = Vec::with_capacity(cart.len());
    for (a, f) in cart.objects.iter().enumerate() {
        let k = p_obj[f.obj(n2).idx()].idx();
        let t = if dir {
            NatTrans::new(cart.objects[k].clone(), f.clone(), zig[a].clone())?
        } else {
            NatTrans::new(f.clone(), cart.objects[k].clone(), zig[a].clone())?
        };
        let m = if dir { built.morphism_of(k, a, &t) } else { built.morphism_of(a, k, &t) };
        zcomps.push(m.expect("zigzag component is a morphism"));
    }
    let id_c = NatTrans::identity(&Functor::identity(c.clone()));
    let (adjunction_ok, side) = if dir {
        let counit = NatTrans::new(pn, Functor::identity(e.clone()), zcomps)?;
        let unit = NatTrans::new(Functor::identity(c.clone()), np, id_c.components().to_vec())?;
        (check_adjunction(&p_star, &n_star, &unit, &counit)?, AdjointSide::Left)
    } else {
        let unit = NatTrans::new(Functor::identity(e.clone()), pn, zcomps)?;
        let counit = NatTrans::new(np, Functor::identity(c.clone()), id_c.components().to_vec())?;
        (check_adjunction(&n_star, &p_star, &unit, &counit)?, AdjointSide::Right)
    };
    r.require(adjunction_ok, || "(b) triangle identities fail on the materialised category".into());
    let found = find_adjoint(&n_star, side, budget).map_err(crate::derivator::budget_error)?;
    match found {
        None => r.fail(format!("adjoint search finds no {side:?} adjoint of n*")),
        Some(adj) => {
            let g = if side == AdjointSide::Left { &adj.left } else { &adj.right };
            let agree = c.objects().all(|v| g.obj(v) == p_obj[v.idx()]);
            r.require(agree == adjunction_ok, || "adjoint search disagrees with the zigzag adjunction".into());
            r.note(format!("adjoint search finds p* as the {side:?} adjoint of n*"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, terminal, v_poset};

    fn budget() -> SearchBudget {
        SearchBudget(1 << 22)
    }

    #[test]
    fn zigzag_on_small_shapes() {
        let two = TargetCategory::two();
        for mode in Mode::ALL {
            let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
            for shape in [terminal(), chain(1), chain(2)] {
                let r = verify_n5_zigzag(&Arc::new(shape), mode, t, &two, budget());
                assert!(!r.failed(), "{mode}: {:?} {:?}", r.witnesses, r.notes);
                assert_eq!(r.passed(), mode.is_reduced(), "{mode}: {:?}", r.notes);
            }
        }
        for mode in [Mode::InvReduced, Mode::InvFull] {
            let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
            let r = verify_n5_zigzag(&Arc::new(v_poset()), mode, t, &two, budget());
            assert!(!r.failed(), "{mode}: {:?}", r.witnesses);
        }
    }

    #[test]
    fn interval_counts() {
        let r = verify_n5_zigzag(&Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact, &TargetCategory::two(), budget());
        assert!(r.passed());
        assert!(r.notes.iter().any(|n| n == "3 Cartesian diagrams; counit invertible on 2"), "{:?}", r.notes);
    }

    #[test]
    fn missing_initial_object() {
        let r = verify_n5_zigzag(&Arc::new(v_poset()), Mode::DirReduced, Truncation::Exact, &TargetCategory::two(), budget());
        assert!(r.failed());
        assert!(r.witnesses[0].contains("initial"), "{:?}", r.witnesses);
    }
}
