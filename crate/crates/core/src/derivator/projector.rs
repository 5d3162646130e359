use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{chain, Adjunction, FinCat, Functor, MorId, NatTrans, ObjId};

use super::funcat::CartesianMarking;
use super::kan::{KanExtension, KanPlan, KanSide};
use super::target::TargetCategory;
use super::DerivatorError;

/// `□! = π^* π_!` (left) or `□* = π^* π_*` (right) for a marking `π`.
#[derive(Debug, Clone)]
pub struct Projector {
    pub marking: CartesianMarking,
    pub side: KanSide,
    pub target: TargetCategory,
    plan: KanPlan,
}

/// `□F` with the unit `F => □F` (left) or counit `□F => F` (right).
#[derive(Debug, Clone)]
pub struct Projected {
    pub value: Functor,
    pub unit: NatTrans,
    kan: KanExtension,
}

impl Projector {
    pub fn new(marking: &CartesianMarking, target: &TargetCategory, side: KanSide) -> Self {
        Projector {
            marking: marking.clone(),
            side,
            target: target.clone(),
            plan: KanPlan::new(&marking.pi, side),
        }
    }

    pub fn apply(&self, f: &Functor) -> Result<Projected, DerivatorError> {
        let kan = self.plan.apply(f, &self.target)?;
        let value = kan.functor.after(&self.marking.pi)?;
        let unit = kan.unit.clone();
        Ok(Projected { value, unit, kan })
    }

    pub fn apply_nat(&self, t: &NatTrans, a: &Projected, b: &Projected) -> Result<NatTrans, DerivatorError> {
        Ok(self.plan.apply_nat(t, &a.kan, &b.kan, &self.target)?.whisker_right(&self.marking.pi)?)
    }
}

pub fn cartesian_projector_left(marking: &CartesianMarking, target: &TargetCategory) -> Projector {
    Projector::new(marking, target, KanSide::Left)
}

pub fn cartesian_projector_right(marking: &CartesianMarking, target: &TargetCategory) -> Projector {
    Projector::new(marking, target, KanSide::Right)
}

/// A monad `(T, u, mu)` on `base` and the full subcategory `sub`.
#[derive(Debug, Clone)]
pub struct MonadData {
    pub base: Arc<FinCat>,
    pub t: Functor,
    pub u: NatTrans,
    pub mu: NatTrans,
    pub sub: Vec<ObjId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonadHypothesis {
    MonadLaws,
    /// `T` lands in the subcategory.
    LandsInSub,
    /// The unit is an isomorphism on the subcategory.
    UnitIsoOnSub,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadViolation {
    pub hypothesis: MonadHypothesis,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct MonadAdjunction {
    pub sub_cat: Arc<FinCat>,
    pub inclusion: Functor,
    /// `T: C -> D` left adjoint to the inclusion.
    pub adjunction: Adjunction,
    pub ut_equals_tu: bool,
}

fn violation(hypothesis: MonadHypothesis, witness: impl Into<String>) -> MonadViolation {
    MonadViolation { hypothesis, witness: witness.into() }
}

pub fn check_monad_laws(m: &MonadData) -> Result<(), MonadViolation> {
    let laws = |w: String| violation(MonadHypothesis::MonadLaws, w);
    let c = &*m.base;
    m.t.check_laws().map_err(|e| laws(e.to_string()))?;
    m.u.check_naturality().map_err(|e| laws(format!("unit: {e}")))?;
    m.mu.check_naturality().map_err(|e| laws(format!("multiplication: {e}")))?;
    let tt = m.t.after(&m.t).map_err(|e| laws(e.to_string()))?;
    if m.u.dom != Functor::identity(m.base.clone()) || m.u.cod != m.t || m.mu.dom != tt || m.mu.cod != m.t {
        return Err(laws("unit or multiplication has the wrong endpoints".into()));
    }
    for x in c.objects() {
        let tx = m.t.obj(x);
        let name = c.obj_name(x);
        if c.compose(m.mu.at(x), m.t.mor(m.u.at(x))) != c.identity(tx) {
            return Err(laws(format!("mu . Tu != id at {name}")));
        }
        if c.compose(m.mu.at(x), m.u.at(tx)) != c.identity(tx) {
            return Err(laws(format!("mu . uT != id at {name}")));
        }
        if c.compose(m.mu.at(x), m.t.mor(m.mu.at(x))) != c.compose(m.mu.at(x), m.mu.at(tx)) {
            return Err(laws(format!("associativity fails at {name}")));
        }
    }
    Ok(())
}

/// `T` as a functor into the subcategory is left adjoint to the inclusion.
pub fn idempotent_monad_adjoint(m: &MonadData) -> Result<MonadAdjunction, MonadViolation> {
    check_monad_laws(m)?;
    let c = &*m.base;
    let mut in_sub = vec![None; c.num_objects()];
    for (i, &o) in m.sub.iter().enumerate() {
        in_sub[o.idx()] = Some(i);
    }
    for x in c.objects() {
        if in_sub[m.t.obj(x).idx()].is_none() {
            return Err(violation(
                MonadHypothesis::LandsInSub,
                format!("T({}) = {} is outside the subcategory", c.obj_name(x), c.obj_name(m.t.obj(x))),
            ));
        }
    }
    for &d in &m.sub {
        if !c.is_isomorphism(m.u.at(d)) {
            return Err(violation(
                MonadHypothesis::UnitIsoOnSub,
                format!("unit at {} is {}", c.obj_name(d), c.mor_name(m.u.at(d))),
            ));
        }
    }
    let (sub, objs, mors) = c.full_subcategory(&m.sub);
    let sub = Arc::new(sub);
    let mut mor_back = vec![None; c.num_morphisms()];
    for (i, &mo) in mors.iter().enumerate() {
        mor_back[mo.idx()] = Some(MorId(i as u32));
    }
    let inclusion = Functor::new(sub.clone(), m.base.clone(), objs.clone(), mors).expect("full inclusion");
    let t_obj: Vec<ObjId> = c.objects().map(|x| ObjId(in_sub[m.t.obj(x).idx()].unwrap() as u32)).collect();
    let t_mor: Vec<MorId> = c.morphisms().map(|f| mor_back[m.t.mor(f).idx()].unwrap()).collect();
    let corestricted = Functor::new(m.base.clone(), sub.clone(), t_obj, t_mor).expect("corestriction of T");
    let it = inclusion.after(&corestricted).unwrap();
    let unit = NatTrans::new(Functor::identity(m.base.clone()), it, m.u.components().to_vec())
        .map_err(|e| violation(MonadHypothesis::MonadLaws, e.to_string()))?;
    let counit_comps: Vec<MorId> = objs
        .iter()
        .map(|&d| mor_back[c.inverse(m.u.at(d)).unwrap().idx()].unwrap())
        .collect();
    let counit = NatTrans::new(corestricted.after(&inclusion).unwrap(), Functor::identity(sub.clone()), counit_comps)
        .map_err(|e| violation(MonadHypothesis::MonadLaws, format!("counit: {e}")))?;
    let adjunction = Adjunction { left: corestricted, right: inclusion.clone(), unit, counit };
    match adjunction.check() {
        Ok(true) => {}
        _ => return Err(violation(MonadHypothesis::MonadLaws, "triangle identities fail")),
    }
    let ut_equals_tu = c.objects().all(|x| m.u.at(m.t.obj(x)) == m.t.mor(m.u.at(x)));
    Ok(MonadAdjunction { sub_cat: sub, inclusion, adjunction, ut_equals_tu })
}

/// The monad of a closure operator `cl` on the chain `[n]`; `sub` is the
/// set of closed elements.
pub fn closure_monad(n: usize, cl: &[usize]) -> MonadData {
    let base = Arc::new(chain(n));
    let c = &*base;
    let o = |i: usize| ObjId(i as u32);
    let arrow = |a: usize, b: usize| c.hom(o(a), o(b))[0];
    let t_obj: Vec<ObjId> = (0..=n).map(|i| o(cl[i])).collect();
    let t_mor: Vec<MorId> = c
        .morphisms()
        .map(|f| arrow(cl[c.src(f).idx()], cl[c.tgt(f).idx()]))
        .collect();
    let t = Functor::new(base.clone(), base.clone(), t_obj, t_mor).expect("closure operators are monotone");
    let u = NatTrans::new_unchecked(Functor::identity(base.clone()), t.clone(), (0..=n).map(|i| arrow(i, cl[i])).collect())
        .unwrap();
    let mu = NatTrans::new_unchecked(t.after(&t).unwrap(), t.clone(), (0..=n).map(|i| arrow(cl[cl[i]], cl[i])).collect())
        .unwrap();
    let sub = (0..=n).filter(|&i| cl[i] == i).map(o).collect();
    MonadData { base, t, u, mu, sub }
}

/// Every closure operator on `[n]`: monotone, extensive and idempotent.
pub fn closure_operators(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == n + 1 {
            if (0..=n).all(|x| cur[cur[x]] == cur[x]) {
                out.push(cur.clone());
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(0).max(i);
        for v in lo..=n {
            cur.push(v);
            go(n, cur, out);
            cur.pop();
        }
    }
    go(n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{enumerate_functors, SearchBudget};

    #[test]
    fn closure_operator_counts() {
        // closure operators on a chain of k elements are the subsets containing the top
        assert_eq!(closure_operators(2).len(), 4);
        assert_eq!(closure_operators(3).len(), 8);
    }

    #[test]
    fn identity_monad() {
        let m = closure_monad(2, &[0, 1, 2]);
        let a = idempotent_monad_adjoint(&m).unwrap();
        assert_eq!(a.sub_cat.num_objects(), 3);
        assert!(a.ut_equals_tu);
    }

    #[test]
    fn closure_on_two_chain() {
        let m = closure_monad(2, &[0, 2, 2]);
        let a = idempotent_monad_adjoint(&m).unwrap();
        assert!(a.adjunction.check().unwrap());
        assert_eq!(a.sub_cat.num_objects(), 2);
    }

    #[test]
    fn landing_outside_the_subcategory() {
        let mut m = closure_monad(2, &[0, 2, 2]);
        m.sub = vec![ObjId(0), ObjId(1)];
        let v = idempotent_monad_adjoint(&m).unwrap_err();
        assert_eq!(v.hypothesis, MonadHypothesis::LandsInSub);
        assert!(v.witness.contains("T(1) = 2"));
        let mut m = closure_monad(2, &[0, 2, 2]);
        m.sub.push(ObjId(1));
        assert_eq!(idempotent_monad_adjoint(&m).unwrap_err().hypothesis, MonadHypothesis::UnitIsoOnSub);
    }

    #[test]
    fn closure_operators_match_brute_force() {
        for n in 1..=3 {
            let c = Arc::new(chain(n));
            let brute = enumerate_functors(&c, &c, SearchBudget(1 << 20))
                .unwrap()
                .into_iter()
                .filter(|f| c.objects().all(|x| x <= f.obj(x) && f.obj(f.obj(x)) == f.obj(x)))
                .count();
            assert_eq!(brute, closure_operators(n).len());
        }
    }
}
