use std::sync::Arc;

use crate::fincat::{comma_category, terminal, CommaCategory, FinCat, Functor, MorId, NatTrans, ObjId};

use super::target::{Cone, TargetCategory};
use super::DerivatorError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum KanSide {
    Left,
    Right,
}

/// A Kan extension together with the unit `F => alpha^* Lan F` (left) or the
/// counit `alpha^* Ran F => F` (right).
#[derive(Debug, Clone)]
pub struct KanExtension {
    pub functor: Functor,
    pub unit: NatTrans,
    cones: Vec<Cone>,
}

/// The comma categories of `alpha` against each object of its codomain,
/// computed once and reused for every diagram.
#[derive(Debug, Clone)]
pub struct KanPlan {
    pub alpha: Functor,
    pub side: KanSide,
    /// `I x_{/J} j` (left) or `j x_{/J} I` (right), one per object `j`.
    pub commas: Vec<CommaCategory>,
}

impl KanPlan {
    pub fn new(alpha: &Functor, side: KanSide) -> Self {
        let pt = Arc::new(terminal());
        let commas = alpha
            .cod
            .objects()
            .map(|j| {
                let pick = Functor::pick(pt.clone(), alpha.cod.clone(), j);
                match side {
                    KanSide::Left => comma_category(alpha, &pick),
                    KanSide::Right => comma_category(&pick, alpha),
                }
                .expect("same codomain")
            })
            .collect();
        KanPlan { alpha: alpha.clone(), side, commas }
    }

    /// The projection of the comma at `j` to the domain of `alpha`.
    fn leg(&self, j: ObjId) -> &Functor {
        match self.side {
            KanSide::Left => &self.commas[j.idx()].pr1,
            KanSide::Right => &self.commas[j.idx()].pr2,
        }
    }

    /// The comma object over `x` with structure arrow `m`.
    fn object(&self, j: ObjId, x: ObjId, m: MorId) -> ObjId {
        let cm = &self.commas[j.idx()];
        match self.side {
            KanSide::Left => cm.object_of(x, ObjId(0), m),
            KanSide::Right => cm.object_of(ObjId(0), x, m),
        }
        .expect("comma object")
    }

    fn parts(&self, j: ObjId, o: ObjId) -> (ObjId, MorId) {
        let (a, b, m) = self.commas[j.idx()].objects[o.idx()];
        match self.side {
            KanSide::Left => (a, m),
            KanSide::Right => (b, m),
        }
    }

    pub fn apply(&self, f: &Functor, target: &TargetCategory) -> Result<KanExtension, DerivatorError> {
        let j_cat = &*self.alpha.cod;
        let c = &*target.cat;
        let left = self.side == KanSide::Left;
        let mut cones = Vec::with_capacity(j_cat.num_objects());
        for j in j_cat.objects() {
            let restricted = f.after(self.leg(j))?;
            let cone = if left { target.colimit(&restricted) } else { target.limit(&restricted) };
            cones.push(cone.ok_or_else(|| {
                let shape = &self.commas[j.idx()].total;
                let kind = if left { "colimit" } else { "limit" };
                DerivatorError::MissingColimit {
                    shape: format!(
                        "{kind} over the comma at {} ({} objects) in {}",
                        j_cat.obj_name(j),
                        shape.num_objects(),
                        target.name()
                    ),
                }
            })?);
        }
        let objs: Vec<ObjId> = cones.iter().map(|k| k.apex).collect();
        let mut mors = Vec::with_capacity(j_cat.num_morphisms());
        for u in j_cat.morphisms() {
            let (j, j2) = (j_cat.src(u), j_cat.tgt(u));
            if j_cat.is_identity(u) {
                mors.push(c.identity(objs[j.idx()]));
                continue;
            }
            let h = if left {
                // legs at (x, m) must land on the legs at (x, u.m)
                let dom = &self.commas[j.idx()].total;
                let reqs: Vec<(MorId, MorId)> = dom
                    .objects()
                    .map(|o| {
                        let (x, m) = self.parts(j, o);
                        let o2 = self.object(j2, x, j_cat.compose(u, m));
                        (cones[j.idx()].legs[o.idx()], cones[j2.idx()].legs[o2.idx()])
                    })
                    .collect();
                unique(c, objs[j.idx()], objs[j2.idx()], |h| reqs.iter().all(|&(a, b)| c.compose(h, a) == b))
            } else {
                let dom = &self.commas[j2.idx()].total;
                let reqs: Vec<(MorId, MorId)> = dom
                    .objects()
                    .map(|o| {
                        let (x, m) = self.parts(j2, o);
                        let o1 = self.object(j, x, j_cat.compose(m, u));
                        (cones[j2.idx()].legs[o.idx()], cones[j.idx()].legs[o1.idx()])
                    })
                    .collect();
                unique(c, objs[j.idx()], objs[j2.idx()], |h| reqs.iter().all(|&(a, b)| c.compose(a, h) == b))
            };
            mors.push(h.ok_or_else(|| {
                DerivatorError::MissingColimit { shape: format!("no induced map along {}", j_cat.mor_name(u)) }
            })?);
        }
        let functor = Functor::new(self.alpha.cod.clone(), target.cat.clone(), objs, mors)?;
        let pulled = functor.after(&self.alpha)?;
        let comps: Vec<MorId> = f
            .dom
            .objects()
            .map(|x| {
                let j = self.alpha.obj(x);
                let o = self.object(j, x, self.alpha.cod.identity(j));
                cones[j.idx()].legs[o.idx()]
            })
            .collect();
        let unit = if left { NatTrans::new(f.clone(), pulled, comps)? } else { NatTrans::new(pulled, f.clone(), comps)? };
        Ok(KanExtension { functor, unit, cones })
    }

    /// The induced transformation `Lan(t)` (or `Ran(t)`) between extensions of
    /// the source and target of `t`.
    pub fn apply_nat(
        &self,
        t: &NatTrans,
        ef: &KanExtension,
        eg: &KanExtension,
        target: &TargetCategory,
    ) -> Result<NatTrans, DerivatorError> {
        let c = &*target.cat;
        let mut comps = Vec::new();
        for j in self.alpha.cod.objects() {
            let dom = &self.commas[j.idx()].total;
            let (a, b) = (ef.functor.obj(j), eg.functor.obj(j));
            let h = unique(c, a, b, |h| {
                dom.objects().all(|o| {
                    let (x, _) = self.parts(j, o);
                    let (lf, lg) = (ef.cones[j.idx()].legs[o.idx()], eg.cones[j.idx()].legs[o.idx()]);
                    match self.side {
                        KanSide::Left => c.compose(h, lf) == c.compose(lg, t.at(x)),
                        KanSide::Right => c.compose(t.at(x), lf) == c.compose(lg, h),
                    }
                })
            });
            comps.push(h.ok_or_else(|| DerivatorError::MissingColimit {
                shape: format!("no induced component at {}", self.alpha.cod.obj_name(j)),
            })?);
        }
        Ok(NatTrans::new(ef.functor.clone(), eg.functor.clone(), comps)?)
    }
}

fn unique(c: &FinCat, a: ObjId, b: ObjId, ok: impl Fn(MorId) -> bool) -> Option<MorId> {
    let mut found = c.hom(a, b).iter().copied().filter(|&h| ok(h));
    let h = found.next()?;
    found.next().is_none().then_some(h)
}

pub fn left_kan(alpha: &Functor, f: &Functor, target: &TargetCategory) -> Result<KanExtension, DerivatorError> {
    KanPlan::new(alpha, KanSide::Left).apply(f, target)
}

pub fn right_kan(alpha: &Functor, f: &Functor, target: &TargetCategory) -> Result<KanExtension, DerivatorError> {
    KanPlan::new(alpha, KanSide::Right).apply(f, target)
}
