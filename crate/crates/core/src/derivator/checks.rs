use std::collections::HashMap;
use std::sync::Arc;

use crate::axiomcheck::{dia_prime_name, in_dia_prime, shape_label, ReportBuilder, VerificationReport};
use crate::fincat::{
    check_adjunction, classify_category, cocartesian_lift, comma_category, find_adjoint, find_nat_iso, opfibration_check,
    opposite, product, terminal, AdjointSide, CommaCategory, FinCat, FinCatBuilder, Functor, MorId, NatTrans, ObjId,
    SearchBudget,
};
use crate::nerve::{
    build_N, empirical_degree_convention, n_of_functor, n_of_functor_collapsing, Mode, NerveError, NervePackage,
    Truncation,
};

use super::funcat::{budget_error, induced_functor, is_pi_cartesian, BuiltFunctorCategory, CartesianMarking, FunctorCategory};
use super::kan::{KanPlan, KanSide};
use super::projector::{idempotent_monad_adjoint, MonadData, Projected, Projector};
use super::target::TargetCategory;
use super::DerivatorError;

/// Object values of a diagram in domain order, e.g. `(0,1,1)`.
pub fn table(f: &Functor) -> String {
    format!("({})", f.obj_map().iter().map(|&o| f.cod.obj_name(o)).collect::<Vec<_>>().join(","))
}

/// A diagram on a nerve total listed top simplices first, e.g. `(F(e),F(v0),F(v1))`.
pub fn nerve_table(pkg: &NervePackage, f: &Functor) -> String {
    let mut objs: Vec<ObjId> = pkg.total.objects().collect();
    objs.sort_by_key(|&o| std::cmp::Reverse(pkg.dim(o)));
    format!("({})", objs.iter().map(|&o| f.cod.obj_name(f.obj(o))).collect::<Vec<_>>().join(","))
}

fn isomorphic(a: &Functor, b: &Functor, target: &TargetCategory) -> Result<bool, DerivatorError> {
    if a.obj_map() == b.obj_map() && a.mor_map() == b.mor_map() {
        return Ok(true);
    }
    if target.is_poset() {
        return Ok(false);
    }
    Ok(find_nat_iso(a, b).map_err(budget_error)?.is_some())
}

fn objects_isomorphic(c: &FinCat, a: ObjId, b: ObjId) -> bool {
    a == b || c.hom(a, b).iter().any(|&m| c.is_isomorphism(m))
}

/// `N(alpha)`, collapsing identity steps when a reduced nerve demands it.
pub fn nerve_map(alpha: &Functor, pi: &NervePackage, pj: &NervePackage) -> Result<Functor, NerveError> {
    match n_of_functor(alpha, pi, pj) {
        Err(NerveError::AdmissibilityLoss { .. }) => n_of_functor_collapsing(alpha, pi, pj),
        r => r,
    }
}

/// `(f, g)` into a product, matched on both projections.
pub fn pair_into(prod: &(Arc<FinCat>, Functor, Functor), f: &Functor, g: &Functor) -> Result<Functor, DerivatorError> {
    let (cat, p1, p2) = prod;
    let objs: HashMap<(ObjId, ObjId), ObjId> = cat.objects().map(|o| ((p1.obj(o), p2.obj(o)), o)).collect();
    let mors: HashMap<(MorId, MorId), MorId> = cat.morphisms().map(|m| ((p1.mor(m), p2.mor(m)), m)).collect();
    let d = &f.dom;
    let om = d.objects().map(|o| objs[&(f.obj(o), g.obj(o))]).collect();
    let mm = d.morphisms().map(|m| mors[&(f.mor(m), g.mor(m))]).collect();
    Ok(Functor::new(d.clone(), cat.clone(), om, mm)?)
}

fn kan_side(side: AdjointSide) -> KanSide {
    match side {
        AdjointSide::Left => KanSide::Left,
        AdjointSide::Right => KanSide::Right,
    }
}

/// The projection `i x_{/I} I -> I`.
pub fn coslice_projection(shape: &Arc<FinCat>, i: ObjId) -> CommaCategory {
    let pick = Functor::pick(Arc::new(terminal()), shape.clone(), i);
    comma_category(&pick, &Functor::identity(shape.clone())).expect("same codomain")
}

/// The projection `I x_{/I} i -> I`.
pub fn slice_projection(shape: &Arc<FinCat>, i: ObjId) -> CommaCategory {
    let pick = Functor::pick(Arc::new(terminal()), shape.clone(), i);
    comma_category(&Functor::identity(shape.clone()), &pick).expect("same codomain")
}

/// The monad (left) or, on the opposite category, the comonad (right) of a
/// projector on the materialised category of all diagrams.
fn projector_monad(
    proj: &Projector,
    all: &FunctorCategory,
    built: &BuiltFunctorCategory,
    sub: Vec<ObjId>,
) -> Result<MonadData, DerivatorError> {
    let c = &*built.cat;
    let applied: Vec<Projected> = all.objects.iter().map(|f| proj.apply(f)).collect::<Result<_, _>>()?;
    let t_obj: Vec<ObjId> = applied
        .iter()
        .map(|p| all.index_of(&p.value).map(|i| ObjId(i as u32)).ok_or_else(|| DerivatorError::Outside(table(&p.value))))
        .collect::<Result<_, _>>()?;
    let mut t_mor = Vec::with_capacity(c.num_morphisms());
    for m in c.morphisms() {
        let (a, b) = (c.src(m).idx(), c.tgt(m).idx());
        let t = proj.apply_nat(&built.trans[m.idx()], &applied[a], &applied[b])?;
        t_mor.push(
            built
                .morphism_of(t_obj[a].idx(), t_obj[b].idx(), &t)
                .ok_or_else(|| DerivatorError::Outside(format!("image of {}", c.mor_name(m))))?,
        );
    }
    let left = proj.side == KanSide::Left;
    let unit: Vec<MorId> = c
        .objects()
        .map(|a| {
            let (s, t) = if left { (a, t_obj[a.idx()]) } else { (t_obj[a.idx()], a) };
            built.morphism_of(s.idx(), t.idx(), &applied[a.idx()].unit).expect("unit is a morphism")
        })
        .collect();
    let mult: Vec<MorId> = c
        .objects()
        .map(|a| {
            let u = unit[t_obj[a.idx()].idx()];
            c.inverse(u).ok_or_else(|| DerivatorError::Outside(format!("unit at {} is not invertible", c.obj_name(t_obj[a.idx()]))))
        })
        .collect::<Result<_, _>>()?;
    let base = if left { built.cat.clone() } else { Arc::new(opposite(c)) };
    let t = Functor::new(base.clone(), base.clone(), t_obj, t_mor)?;
    let tt = t.after(&t)?;
    let u = NatTrans::new(Functor::identity(base.clone()), t.clone(), unit)?;
    let mu = NatTrans::new(tt, t.clone(), mult)?;
    Ok(MonadData { base, t, u, mu, sub })
}

/// `π^*π_!` and `π^*π_*` against the adjoints of the inclusion of Cartesian
/// diagrams found by universal-arrow search.
pub fn projector_oracle_check(
    pkg: &NervePackage,
    target: &TargetCategory,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let marking = CartesianMarking::of_package(pkg);
    let mut r = ReportBuilder::new(
        "projector-oracle",
        format!("N({}) {} -> {}", shape_label(&pkg.shape), pkg.mode, target.name()),
    )
    .with_mode(pkg.mode, pkg.truncation);
    let all = FunctorCategory::all(marking.total(), target, budget)?;
    let cart = FunctorCategory::cartesian(&marking, target, budget)?;
    let (ab, cb) = (all.build()?, cart.build()?);
    let incl = induced_functor((&cart, &cb), (&all, &ab), &|f| Ok(f.clone()), &|t, _, _| Ok(t.clone()))?;
    r.note(format!("{} diagrams, {} Cartesian", all.len(), cart.len()));
    let sub: Vec<ObjId> = cart.objects.iter().map(|f| ObjId(all.index_of(f).unwrap() as u32)).collect();
    for side in [AdjointSide::Left, AdjointSide::Right] {
        let sym = if side == AdjointSide::Left { "□!" } else { "□*" };
        let proj = Projector::new(&marking, target, kan_side(side));
        let Some(oracle) = find_adjoint(&incl, side, budget).map_err(budget_error)? else {
            r.fail(format!("the inclusion has no {side:?} adjoint"));
            continue;
        };
        let g = if side == AdjointSide::Left { &oracle.left } else { &oracle.right };
        for (i, f) in all.objects.iter().enumerate() {
            let p = proj.apply(f)?;
            let expect = &cart.objects[g.obj(ObjId(i as u32)).idx()];
            r.require(is_pi_cartesian(&p.value, &marking), || format!("{sym}{} = {} is not Cartesian", nerve_table(pkg, f), nerve_table(pkg, &p.value)));
            r.require(isomorphic(&p.value, expect, target)?, || {
                format!("{sym}{} = {} but the adjoint gives {}", nerve_table(pkg, f), nerve_table(pkg, &p.value), nerve_table(pkg, expect))
            });
            if all.len() <= 16 {
                r.note(format!("{sym}{} = {}", nerve_table(pkg, f), nerve_table(pkg, &p.value)));
            }
        }
        for f in &cart.objects {
            let p = proj.apply(f)?;
            r.require(p.unit.is_iso(), || format!("{sym}: unit at Cartesian {} is not invertible", nerve_table(pkg, f)));
        }
        match projector_monad(&proj, &all, &ab, sub.clone()) {
            Ok(m) => match idempotent_monad_adjoint(&m) {
                Ok(a) => {
                    r.require(a.ut_equals_tu, || format!("{sym}: uT != Tu"));
                }
                Err(v) => r.fail(format!("{sym}: {:?}: {}", v.hypothesis, v.witness)),
            },
            Err(e) => r.fail(format!("{sym}: {e}")),
        }
    }
    Ok(r.finish())
}

/// `E(I)`: the Cartesian diagrams on `N(I)` with all transformations.
#[derive(Debug, Clone)]
pub struct Enlargement {
    pub package: NervePackage,
    pub marking: CartesianMarking,
    pub cart: FunctorCategory,
    pub built: BuiltFunctorCategory,
}

impl Enlargement {
    pub fn num_objects(&self) -> usize {
        self.cart.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.built.cat.num_morphisms()
    }
}

#[allow(non_snake_case)]
pub fn enlargement_E(
    shape: &Arc<FinCat>,
    target: &TargetCategory,
    mode: Mode,
    truncation: Truncation,
    budget: SearchBudget,
) -> Result<Enlargement, DerivatorError> {
    let package = build_N(shape.clone(), mode, truncation)?;
    enlargement_of(package, target, budget)
}

fn enlargement_of(package: NervePackage, target: &TargetCategory, budget: SearchBudget) -> Result<Enlargement, DerivatorError> {
    let marking = CartesianMarking::of_package(&package);
    let cart = FunctorCategory::cartesian(&marking, target, budget)?;
    let built = cart.build()?;
    Ok(Enlargement { package, marking, cart, built })
}

/// Hom-sets of `cat` against those of `img`, with `map` the action of the
/// comparison on transformations.
fn homs_biject(
    src: &FunctorCategory,
    dst: &FunctorCategory,
    a: usize,
    b: usize,
    fa: usize,
    fb: usize,
    map: &dyn Fn(&NatTrans) -> Result<NatTrans, DerivatorError>,
) -> Result<bool, DerivatorError> {
    if src.target.is_poset() {
        return Ok(src.hom_count(a, b)? == dst.hom_count(fa, fb)?);
    }
    let hs = src.hom(a, b)?;
    let mut img: Vec<Vec<MorId>> = hs.iter().map(|t| map(t).map(|t| t.components().to_vec())).collect::<Result<_, _>>()?;
    img.sort();
    img.dedup();
    Ok(img.len() == hs.len() && hs.len() == dst.hom_count(fa, fb)?)
}

/// `π^*: Fun(J, C) -> E(J)` is an equivalence, with inverse `π_*` in Dir modes
/// and `π_!` in Inv modes.
pub fn restriction_equivalence_check(
    j: &Arc<FinCat>,
    target: &TargetCategory,
    mode: Mode,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let t = mode.default_truncation();
    let mut r = ReportBuilder::new(
        "restriction-equivalence",
        format!("J={} {mode} -> {}", shape_label(j), target.name()),
    )
    .with_mode(mode, t);
    if !in_dia_prime(&classify_category(j), mode, empirical_degree_convention()) {
        r.fail(format!("J is not in {}", dia_prime_name(mode)));
        return Ok(r.finish());
    }
    let e = enlargement_E(j, target, mode, t, budget)?;
    let fun = FunctorCategory::all(j, target, budget)?;
    let pi = &e.package.pi;
    r.note(format!("Fun(J,{}): {} objects; E(J): {} objects", target.name(), fun.len(), e.num_objects()));
    let mut pulled = Vec::with_capacity(fun.len());
    for g in &fun.objects {
        let pg = g.after(pi)?;
        match e.cart.index_of(&pg) {
            Some(i) => pulled.push(i),
            None => {
                r.fail(format!("π*{} is not Cartesian", table(g)));
                return Ok(r.finish());
            }
        }
    }
    for a in 0..fun.len() {
        for b in 0..fun.len() {
            let ok = homs_biject(&fun, &e.cart, a, b, pulled[a], pulled[b], &|t| Ok(t.whisker_right(pi)?))?;
            r.require(ok, || format!("π* is not bijective on homs {} -> {}", table(&fun.objects[a]), table(&fun.objects[b])));
        }
    }
    let chosen = if mode.is_dir() { KanSide::Right } else { KanSide::Left };
    for side in [chosen, if chosen == KanSide::Left { KanSide::Right } else { KanSide::Left }] {
        let plan = KanPlan::new(pi, side);
        let mut bad = None;
        for x in &e.cart.objects {
            let g = plan.apply(x, target)?.functor;
            if !isomorphic(&g.after(pi)?, x, target)? {
                bad = Some(format!("{} is not π* of its {side:?} extension {}", table(x), table(&g)));
                break;
            }
        }
        if bad.is_none() {
            for g in &fun.objects {
                let back = plan.apply(&g.after(pi)?, target)?.functor;
                if !isomorphic(&back, g, target)? {
                    bad = Some(format!("{side:?} extension of π*{} is {}", table(g), table(&back)));
                    break;
                }
            }
        }
        match (side == chosen, bad) {
            (true, Some(w)) => r.fail(w),
            (true, None) => r.note(format!("inverse via the {side:?} Kan extension along π")),
            (false, Some(w)) => r.note(format!("{side:?} Kan extension is not an inverse: {w}")),
            (false, None) => r.note(format!("{side:?} Kan extension along π is an inverse as well")),
        }
    }
    Ok(r.finish())
}

/// `E(alpha)_! = □!^J N(alpha)_!` on Cartesian diagrams: (a) left adjoint to
/// `N(alpha)^*` by hom counting and by adjoint search; (b) values over `j`
/// are colimits over `N(I x_{/J} j)`.
pub fn fder3_fder4_check(
    alpha: &Functor,
    target: &TargetCategory,
    mode: Mode,
    truncation: Truncation,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let mut r = ReportBuilder::new(
        "FDer3-FDer4",
        format!("alpha: {} -> {} {mode} -> {}", shape_label(&alpha.dom), shape_label(&alpha.cod), target.name()),
    )
    .with_mode(mode, truncation);
    let ei = enlargement_E(&alpha.dom, target, mode, truncation, budget)?;
    let ej = enlargement_E(&alpha.cod, target, mode, truncation, budget)?;
    let (pi, pj) = (&ei.package, &ej.package);
    let na = nerve_map(alpha, pi, pj)?;
    let lan = KanPlan::new(&na, KanSide::Left);
    let proj = Projector::new(&ej.marking, target, KanSide::Left);
    let mut pushed = Vec::with_capacity(ei.num_objects());
    for x in &ei.cart.objects {
        let v = proj.apply(&lan.apply(x, target)?.functor)?.value;
        match ej.cart.index_of(&v) {
            Some(k) => pushed.push(k),
            None => {
                r.fail(format!("E(alpha)!{} = {} is not Cartesian", table(x), table(&v)));
                return Ok(r.finish());
            }
        }
        if ei.num_objects() <= 8 {
            r.note(format!("E(alpha)!{} = {}", table(x), table(&v)));
        }
    }
    let mut pulled = Vec::with_capacity(ej.num_objects());
    for y in &ej.cart.objects {
        match ei.cart.index_of(&y.after(&na)?) {
            Some(k) => pulled.push(k),
            None => {
                r.fail(format!("N(alpha)*{} is not Cartesian", table(y)));
                return Ok(r.finish());
            }
        }
    }
    for (a, &ea) in pushed.iter().enumerate() {
        for (b, &pb) in pulled.iter().enumerate() {
            let (l, rr) = (ej.cart.hom_count(ea, b)?, ei.cart.hom_count(a, pb)?);
            r.require(l == rr, || {
                format!(
                    "|Hom(E(alpha)!{}, {})| = {l} but |Hom({}, N(alpha)*{})| = {rr}",
                    table(&ei.cart.objects[a]),
                    table(&ej.cart.objects[b]),
                    table(&ei.cart.objects[a]),
                    table(&ej.cart.objects[b])
                )
            });
        }
    }
    let restrict = induced_functor(
        (&ej.cart, &ej.built),
        (&ei.cart, &ei.built),
        &|f| Ok(f.after(&na)?),
        &|t, _, _| Ok(t.whisker_right(&na)?),
    )?;
    match find_adjoint(&restrict, AdjointSide::Left, budget).map_err(budget_error)? {
        None => r.fail("N(alpha)* on Cartesian diagrams has no left adjoint"),
        Some(adj) => {
            for (a, &ea) in pushed.iter().enumerate() {
                let found = adj.left.obj(ObjId(a as u32)).idx();
                let ok = isomorphic(&ej.cart.objects[found], &ej.cart.objects[ea], target)?;
                r.require(ok, || {
                    format!(
                        "adjoint route gives {} on {}, projector route {}",
                        table(&ej.cart.objects[found]),
                        table(&ei.cart.objects[a]),
                        table(&ej.cart.objects[ea])
                    )
                });
            }
        }
    }
    let pt = Arc::new(terminal());
    for j in alpha.cod.objects() {
        let cm = comma_category(alpha, &Functor::pick(pt.clone(), alpha.cod.clone(), j))?;
        let pc = build_N(cm.total.clone(), mode, truncation)?;
        let leg = nerve_map(&cm.pr1, &pc, pi)?;
        let over: Vec<ObjId> = pj.total.objects().filter(|&n| pj.pi.obj(n) == j).collect();
        for (a, x) in ei.cart.objects.iter().enumerate() {
            let restricted = x.after(&leg)?;
            let Some(col) = target.colimit(&restricted) else {
                return Err(DerivatorError::MissingColimit {
                    shape: format!("N(I x/J {}) with {} objects", alpha.cod.obj_name(j), pc.total.num_objects()),
                });
            };
            let value = &ej.cart.objects[pushed[a]];
            for &n in &over {
                r.require(objects_isomorphic(&target.cat, value.obj(n), col.apex), || {
                    format!(
                        "at {} over {}: E(alpha)!{} has {} but the comma colimit is {}",
                        pj.vertex_label(n),
                        alpha.cod.obj_name(j),
                        table(x),
                        target.cat.obj_name(value.obj(n)),
                        target.cat.obj_name(col.apex)
                    )
                });
            }
        }
    }
    Ok(r.finish())
}

/// `π_I x id: N(I) x J -> I x J`.
fn pi_times_id(pi: &NervePackage, j: &Arc<FinCat>) -> Result<(Arc<FinCat>, Functor, Functor, Functor), DerivatorError> {
    let (x, q1, q2) = product(&pi.total, j);
    let ij = product(&pi.shape, j);
    let f = pi.pi.after(&q1)?;
    let pij = pair_into(&ij, &f, &q2)?;
    Ok((x, q1, q2, pij))
}

/// `(N(pr1), pr2 . π_{IxJ})^*` between the Cartesian diagrams on `N(I) x J`
/// and on `N(I x J)`, with inverse `□!^{π_{I,J}} (N(pr1), pr2 . π_{IxJ})_!`.
pub fn transport_equivalence_check(
    i: &Arc<FinCat>,
    j: &Arc<FinCat>,
    target: &TargetCategory,
    mode: Mode,
    truncation: Truncation,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let mut r = ReportBuilder::new(
        "transport-equivalence",
        format!("I={} J={} {mode} -> {}", shape_label(i), shape_label(j), target.name()),
    )
    .with_mode(mode, truncation);
    let pi = build_N(i.clone(), mode, truncation)?;
    let (x, q1, q2, pij) = pi_times_id(&pi, j)?;
    let (ij, p1, p2) = product(i, j);
    let pij_pkg = build_N(ij.clone(), mode, truncation)?;
    let npr1 = nerve_map(&p1, &pij_pkg, &pi)?;
    let second = p2.after(&pij_pkg.pi)?;
    let pi1 = pair_into(&(x.clone(), q1, q2), &npr1, &second)?;
    let mx = CartesianMarking::of_functor(&pij);
    let mn = CartesianMarking::of_package(&pij_pkg);
    let cx = FunctorCategory::cartesian(&mx, target, budget)?;
    let cn = FunctorCategory::cartesian(&mn, target, budget)?;
    r.note(format!("Cartesian on N(I)xJ: {}; on N(IxJ): {}", cx.len(), cn.len()));
    r.require(cx.len() == cn.len(), || format!("{} vs {} Cartesian diagrams", cx.len(), cn.len()));
    let mut phi = Vec::with_capacity(cx.len());
    for z in &cx.objects {
        let v = z.after(&pi1)?;
        match cn.iso_representative(&v)? {
            Some(k) => phi.push(k),
            None => {
                r.fail(format!("the comparison sends {} to the non-Cartesian {}", table(z), table(&v)));
                return Ok(r.finish());
            }
        }
    }
    for a in 0..cx.len() {
        for b in 0..cx.len() {
            let ok = homs_biject(&cx, &cn, a, b, phi[a], phi[b], &|t| Ok(t.whisker_right(&pi1)?))?;
            r.require(ok, || format!("comparison is not bijective on homs {} -> {}", table(&cx.objects[a]), table(&cx.objects[b])));
        }
    }
    for (side, name) in [(KanSide::Left, "□! Lan"), (KanSide::Right, "□* Ran")] {
        let plan = KanPlan::new(&pi1, side);
        let proj = Projector::new(&mx, target, side);
        let mut bad = None;
        for y in &cn.objects {
            let psi = proj.apply(&plan.apply(y, target)?.functor)?.value;
            if !isomorphic(&psi.after(&pi1)?, y, target)? {
                bad = Some(format!("{name}: round trip on {} gives {}", table(y), table(&psi.after(&pi1)?)));
                break;
            }
        }
        if bad.is_none() {
            for z in &cx.objects {
                let back = proj.apply(&plan.apply(&z.after(&pi1)?, target)?.functor)?.value;
                if !isomorphic(&back, z, target)? {
                    bad = Some(format!("{name}: round trip on {} gives {}", table(z), table(&back)));
                    break;
                }
            }
        }
        match (side, bad) {
            (KanSide::Left, Some(w)) => r.fail(w),
            (KanSide::Left, None) => r.note(format!("inverse {name}: both round trips are identities")),
            (KanSide::Right, Some(w)) => r.note(format!("the dual candidate is not an inverse: {w}")),
            (KanSide::Right, None) => r.note(format!("the dual candidate {name} is an inverse as well")),
        }
    }
    Ok(r.finish())
}

/// `pr2,! pr1^*` and `pr1,* pr2^*` between the InvReduced and DirReduced
/// enlargements of a finite poset, through `N(I) x_{/I} Ñ(I)`.
pub fn left_right_comparison(
    i: &Arc<FinCat>,
    target: &TargetCategory,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let mut r = ReportBuilder::new("left-right", format!("I={} -> {}", shape_label(i), target.name()));
    let en = enlargement_E(i, target, Mode::InvReduced, Truncation::Exact, budget)?;
    let et = enlargement_E(i, target, Mode::DirReduced, Truncation::Exact, budget)?;
    let cm = comma_category(&en.package.pi, &et.package.pi)?;
    r.note(format!(
        "InvReduced: {} objects; DirReduced: {} objects; comma: {} objects",
        en.num_objects(),
        et.num_objects(),
        cm.total.num_objects()
    ));
    let push = KanPlan::new(&cm.pr2, KanSide::Left);
    let pull = KanPlan::new(&cm.pr1, KanSide::Right);
    let phi = |x: &Functor| -> Result<Functor, DerivatorError> { Ok(push.apply(&x.after(&cm.pr1)?, target)?.functor) };
    let psi = |y: &Functor| -> Result<Functor, DerivatorError> { Ok(pull.apply(&y.after(&cm.pr2)?, target)?.functor) };
    for x in &en.cart.objects {
        let y = phi(x)?;
        if !r.require(is_pi_cartesian(&y, &et.marking), || format!("pr2,! pr1* {} = {} is not Cartesian", table(x), table(&y))) {
            continue;
        }
        let back = psi(&y)?;
        r.require(isomorphic(&back, x, target)?, || format!("round trip on {} gives {}", table(x), table(&back)));
    }
    for y in &et.cart.objects {
        let x = psi(y)?;
        if !r.require(is_pi_cartesian(&x, &en.marking), || format!("pr1,* pr2* {} = {} is not Cartesian", table(y), table(&x))) {
            continue;
        }
        let back = phi(&x)?;
        r.require(isomorphic(&back, y, target)?, || format!("round trip on {} gives {}", table(y), table(&back)));
    }
    r.require(en.num_objects() == et.num_objects(), || format!("{} vs {} objects", en.num_objects(), et.num_objects()));
    Ok(r.finish())
}

/// The fiber of `alpha` over `j`: objects over `j`, morphisms over `id_j`.
pub fn fiber_category(alpha: &Functor, j: ObjId) -> (Arc<FinCat>, Functor) {
    let (e, c) = (&*alpha.dom, &*alpha.cod);
    let id = c.identity(j);
    let objs: Vec<ObjId> = e.objects().filter(|&x| alpha.obj(x) == j).collect();
    let mut b = FinCatBuilder::new();
    let mut local = vec![None; e.num_objects()];
    for &x in &objs {
        local[x.idx()] = Some(b.add_object(e.obj_name(x)));
    }
    let mut mor_local: HashMap<MorId, MorId> = HashMap::new();
    for &x in &objs {
        mor_local.insert(e.identity(x), b.identity(local[x.idx()].unwrap()));
    }
    let mut inner = Vec::new();
    for m in e.non_identity_morphisms() {
        if alpha.mor(m) == id {
            let (s, t) = (local[e.src(m).idx()].unwrap(), local[e.tgt(m).idx()].unwrap());
            mor_local.insert(m, b.add_morphism(e.mor_name(m), s, t));
            inner.push(m);
        }
    }
    for &g in &inner {
        for &f in &inner {
            if let Some(h) = e.try_compose(g, f) {
                b.set_composite(mor_local[&g], mor_local[&f], mor_local[&h]);
            }
        }
    }
    let cat = Arc::new(b.build_unchecked());
    let mut mors = vec![MorId(0); cat.num_morphisms()];
    for (&m, &l) in &mor_local {
        mors[l.idx()] = m;
    }
    let incl_objs = objs;
    let incl = Functor::new(cat.clone(), alpha.dom.clone(), incl_objs, mors).expect("fiber inclusion");
    (cat, incl)
}

/// For an opfibration and `i` in its source, the functor
/// `ρ: i x_{/I} I -> alpha(i) x_{/J} J`, its section `ρ'` from coCartesian
/// lifts and the counit `ρ'ρ => id`.
fn section_data(alpha: &Functor, i: ObjId) -> Result<(Functor, Functor, NatTrans, CommaCategory, CommaCategory), String> {
    let (ic, jc) = (&*alpha.dom, &*alpha.cod);
    let ci = coslice_projection(&alpha.dom, i);
    let cj = coslice_projection(&alpha.cod, alpha.obj(i));
    let pt0 = ObjId(0);
    let rho_obj: Vec<ObjId> = ci
        .objects
        .iter()
        .map(|&(_, x, m)| cj.object_of(pt0, alpha.obj(x), alpha.mor(m)).expect("image object"))
        .collect();
    let rho_mor: Vec<MorId> = ci
        .total
        .morphisms()
        .map(|f| {
            let (a, b) = ci.parts[f.idx()];
            let (s, t) = (rho_obj[ci.total.src(f).idx()], rho_obj[ci.total.tgt(f).idx()]);
            cj.morphism_of(s, t, a, alpha.mor(b)).expect("image morphism")
        })
        .collect();
    let rho = Functor::new(ci.total.clone(), cj.total.clone(), rho_obj, rho_mor).map_err(|e| e.to_string())?;
    let lifts: Vec<MorId> = cj
        .objects
        .iter()
        .map(|&(_, y, n)| {
            cocartesian_lift(alpha, n, i).ok_or_else(|| format!("no coCartesian lift of {} at {}", jc.mor_name(n), ic.obj_name(y)))
        })
        .collect::<Result<_, _>>()?;
    let sec_obj: Vec<ObjId> = lifts
        .iter()
        .map(|&l| ci.object_of(pt0, ic.tgt(l), l).expect("lift object"))
        .collect();
    let mut sec_mor = Vec::with_capacity(cj.total.num_morphisms());
    for f in cj.total.morphisms() {
        let (a, b) = cj.parts[f.idx()];
        let (s, t) = (cj.total.src(f).idx(), cj.total.tgt(f).idx());
        let (l1, l2) = (lifts[s], lifts[t]);
        let c = ic
            .hom(ic.tgt(l1), ic.tgt(l2))
            .iter()
            .copied()
            .find(|&c| alpha.mor(c) == b && ic.compose(c, l1) == l2)
            .ok_or_else(|| format!("no factorization through the lift along {}", jc.mor_name(b)))?;
        sec_mor.push(ci.morphism_of(sec_obj[s], sec_obj[t], a, c).expect("section morphism"));
    }
    let sec = Functor::new(cj.total.clone(), ci.total.clone(), sec_obj, sec_mor).map_err(|e| e.to_string())?;
    let sr = sec.after(&rho).map_err(|e| e.to_string())?;
    let mut counit = Vec::with_capacity(ci.total.num_objects());
    for o in ci.total.objects() {
        let (_, x, m) = ci.objects[o.idx()];
        let so = sr.obj(o);
        let (_, x2, l) = ci.objects[so.idx()];
        let c = ic
            .hom(x2, x)
            .iter()
            .copied()
            .find(|&c| jc.is_identity(alpha.mor(c)) && ic.compose(c, l) == m)
            .ok_or_else(|| format!("no vertical comparison at {}", ci.total.obj_name(o)))?;
        counit.push(ci.morphism_of(so, o, ci.pr1.cod.identity(pt0), c).expect("counit component"));
    }
    let counit = NatTrans::new(sr, Functor::identity(ci.total.clone()), counit).map_err(|e| e.to_string())?;
    Ok((rho, sec, counit, ci, cj))
}

/// `Lan_alpha F` at `j` against the colimit over the fiber, and for every `i`
/// the section `ρ'` of `ρ: i x_{/I} I -> alpha(i) x_{/J} J` with `ρρ' = id`
/// and `ρ' ⊣ ρ`.
pub fn opfib_fiberwise_check(
    alpha: &Functor,
    f: &Functor,
    target: &TargetCategory,
) -> Result<VerificationReport, DerivatorError> {
    let mut r = ReportBuilder::new(
        "opfibration-fiberwise",
        format!("alpha: {} -> {}, F={} -> {}", shape_label(&alpha.dom), shape_label(&alpha.cod), table(f), target.name()),
    );
    if !opfibration_check(alpha) {
        return Err(DerivatorError::NotOpfibration(format!(
            "{} -> {}",
            shape_label(&alpha.dom),
            shape_label(&alpha.cod)
        )));
    }
    let lan = KanPlan::new(alpha, KanSide::Left).apply(f, target)?.functor;
    for j in alpha.cod.objects() {
        let (fib, incl) = fiber_category(alpha, j);
        let restricted = f.after(&incl)?;
        let Some(col) = target.colimit(&restricted) else {
            return Err(DerivatorError::MissingColimit {
                shape: format!("fiber over {} ({} objects)", alpha.cod.obj_name(j), fib.num_objects()),
            });
        };
        r.require(objects_isomorphic(&target.cat, lan.obj(j), col.apex), || {
            format!(
                "Lan at {} is {} but the fiber colimit is {}",
                alpha.cod.obj_name(j),
                target.cat.obj_name(lan.obj(j)),
                target.cat.obj_name(col.apex)
            )
        });
    }
    for i in alpha.dom.objects() {
        let name = alpha.dom.obj_name(i);
        let (rho, sec, counit, ci, _) = match section_data(alpha, i) {
            Ok(d) => d,
            Err(w) => {
                r.fail(format!("at {name}: {w}"));
                continue;
            }
        };
        let rs = rho.after(&sec)?;
        if !r.require(rs == Functor::identity(rho.cod.clone()), || format!("at {name}: ρρ' is not the identity")) {
            continue;
        }
        let unit = NatTrans::identity(&rs);
        let unit = NatTrans::new(Functor::identity(rho.cod.clone()), rs, unit.components().to_vec())?;
        r.require(check_adjunction(&sec, &rho, &unit, &counit)?, || format!("at {name}: ρ' is not left adjoint to ρ"));
        // Ran along ρ is restriction along ρ'
        if ci.total.num_objects() <= 6 {
            let g = f.after(&ci.pr2)?;
            let ran = KanPlan::new(&rho, KanSide::Right).apply(&g, target)?.functor;
            let restricted = g.after(&sec)?;
            r.require(isomorphic(&ran, &restricted, target)?, || {
                format!("at {name}: Ran along ρ gives {} but restriction along ρ' gives {}", table(&ran), table(&restricted))
            });
        }
    }
    Ok(r.finish())
}

/// `N(alpha)^* □*` against `□* N(alpha)^*` on every diagram on `N(J)`.
pub fn projector_pullback_commutation(
    alpha: &Functor,
    target: &TargetCategory,
    mode: Mode,
    budget: SearchBudget,
) -> Result<VerificationReport, DerivatorError> {
    let t = mode.default_truncation();
    let mut r = ReportBuilder::new(
        "projector-pullback",
        format!("alpha: {} -> {} {mode} -> {}", shape_label(&alpha.dom), shape_label(&alpha.cod), target.name()),
    )
    .with_mode(mode, t);
    if !opfibration_check(alpha) {
        return Err(DerivatorError::NotOpfibration(format!(
            "{} -> {}",
            shape_label(&alpha.dom),
            shape_label(&alpha.cod)
        )));
    }
    let pa = build_N(alpha.dom.clone(), mode, t)?;
    let pb = build_N(alpha.cod.clone(), mode, t)?;
    let na = nerve_map(alpha, &pa, &pb)?;
    let pa_proj = Projector::new(&CartesianMarking::of_package(&pa), target, KanSide::Right);
    let pb_proj = Projector::new(&CartesianMarking::of_package(&pb), target, KanSide::Right);
    let all = FunctorCategory::all(&pb.total, target, budget)?;
    r.note(format!("{} diagrams on N(J)", all.len()));
    for f in &all.objects {
        let lhs = pb_proj.apply(f)?.value.after(&na)?;
        let rhs = pa_proj.apply(&f.after(&na)?)?.value;
        r.require(isomorphic(&lhs, &rhs, target)?, || {
            format!("on {}: N(alpha)*□* = {} but □*N(alpha)* = {}", table(f), table(&lhs), table(&rhs))
        });
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, lambda_poset, v_poset};

    fn budget() -> SearchBudget {
        SearchBudget(1 << 22)
    }

    fn show(r: &VerificationReport) -> String {
        format!("{:?} {:?} {:?}", r.verdict, r.witnesses, r.notes)
    }

    #[test]
    fn projectors_match_the_adjoint_search() {
        let pkg = build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact).unwrap();
        let r = projector_oracle_check(&pkg, &TargetCategory::two(), budget()).unwrap();
        assert!(r.passed(), "{}", show(&r));
        assert!(r.notes.iter().any(|n| n == "□!(0,1,0) = (1,1,1)"), "{:?}", r.notes);
        assert!(r.notes.iter().any(|n| n == "□*(0,1,0) = (0,0,0)"), "{:?}", r.notes);
    }

    #[test]
    fn enlargement_sizes() {
        let two = TargetCategory::two();
        for (n, k) in [(0, 2), (1, 3), (2, 4)] {
            let e = enlargement_E(&Arc::new(chain(n)), &two, Mode::DirReduced, Truncation::Exact, budget()).unwrap();
            assert_eq!(e.num_objects(), k);
        }
    }

    #[test]
    fn restriction_is_an_equivalence() {
        let two = TargetCategory::two();
        for mode in [Mode::DirReduced, Mode::InvReduced] {
            for shape in [chain(0), chain(1), chain(2), v_poset(), lambda_poset()] {
                let r = restriction_equivalence_check(&Arc::new(shape), &two, mode, budget()).unwrap();
                assert!(r.passed(), "{mode}: {}", show(&r));
            }
        }
    }

    fn injections_into_two_chain() -> Vec<Functor> {
        let (i1, i2) = (Arc::new(chain(1)), Arc::new(chain(2)));
        crate::fincat::enumerate_functors(&i1, &i2, budget())
            .unwrap()
            .into_iter()
            .filter(|f| f.is_injective_on_objects())
            .collect()
    }

    #[test]
    fn fder_on_small_functors() {
        let two = TargetCategory::two();
        let (i0, i1) = (Arc::new(chain(0)), Arc::new(chain(1)));
        let mut alphas = vec![Functor::constant(i1.clone(), i0.clone(), ObjId(0)), Functor::pick(i0, i1, ObjId(0))];
        alphas.extend(injections_into_two_chain());
        assert_eq!(alphas.len(), 5);
        for mode in [Mode::DirReduced, Mode::InvReduced] {
            for alpha in &alphas {
                let r = fder3_fder4_check(alpha, &two, mode, Truncation::Exact, budget()).unwrap();
                assert!(r.passed(), "{mode}: {}", show(&r));
            }
        }
        let r = fder3_fder4_check(&alphas[0], &two, Mode::DirReduced, Truncation::Exact, budget()).unwrap();
        assert!(r.notes.contains(&"E(alpha)!(0,1,0) = (1)".to_string()), "{:?}", r.notes);
    }

    #[test]
    fn transport_and_left_right() {
        let two = TargetCategory::two();
        let (i0, i1) = (Arc::new(chain(0)), Arc::new(chain(1)));
        for mode in [Mode::DirReduced, Mode::InvReduced] {
            for (i, j) in [(&i0, &i1), (&i1, &i0), (&i1, &i1)] {
                let r = transport_equivalence_check(i, j, &two, mode, Truncation::Exact, budget()).unwrap();
                assert!(r.passed(), "{mode}: {}", show(&r));
            }
        }
        for (shape, n) in [(chain(0), 2), (chain(1), 3), (chain(2), 4), (v_poset(), 5)] {
            let r = left_right_comparison(&Arc::new(shape), &two, budget()).unwrap();
            assert!(r.passed(), "{}", show(&r));
            assert!(r.notes[0].starts_with(&format!("InvReduced: {n} objects; DirReduced: {n} objects")));
        }
    }

    #[test]
    fn opfibrations() {
        let two = TargetCategory::two();
        let mut alphas = Vec::new();
        for n in 1..=2 {
            let c = Arc::new(chain(n));
            alphas.extend(c.objects().map(|i| coslice_projection(&c, i).pr2));
        }
        let i1 = Arc::new(chain(1));
        alphas.push(product(&i1, &i1).2);
        for alpha in &alphas {
            for f in FunctorCategory::all(&alpha.dom, &two, budget()).unwrap().objects {
                let r = opfib_fiberwise_check(alpha, &f, &two).unwrap();
                assert!(r.passed(), "{}", show(&r));
            }
            for mode in [Mode::DirReduced, Mode::InvReduced] {
                let r = projector_pullback_commutation(alpha, &two, mode, budget()).unwrap();
                assert!(r.passed(), "{mode}: {}", show(&r));
            }
        }
    }

    #[test]
    fn slices_are_not_opfibrations() {
        let c = Arc::new(chain(1));
        let alpha = slice_projection(&c, ObjId(0)).pr1;
        let f = Functor::constant(alpha.dom.clone(), TargetCategory::two().cat, ObjId(0));
        let e = opfib_fiberwise_check(&alpha, &f, &TargetCategory::two()).unwrap_err();
        assert!(matches!(e, DerivatorError::NotOpfibration(_)));
    }

    #[test]
    fn fibers_of_a_product_projection() {
        let i1 = Arc::new(chain(1));
        let (_, _, pr2) = product(&i1, &i1);
        for j in i1.objects() {
            let (fib, incl) = fiber_category(&pr2, j);
            assert_eq!(fib.num_objects(), 2);
            assert_eq!(fib.num_non_identity(), 1);
            assert!(incl.is_injective_on_objects());
        }
    }

    #[test]
    fn restriction_inverse_sides() {
        let two = TargetCategory::two();
        let r = restriction_equivalence_check(&Arc::new(chain(1)), &two, Mode::DirReduced, budget()).unwrap();
        assert!(r.notes.iter().any(|n| n == "Fun(J,2): 3 objects; E(J): 3 objects"), "{:?}", r.notes);
        assert!(r.notes.iter().any(|n| n == "inverse via the Right Kan extension along π"));
    }
}
