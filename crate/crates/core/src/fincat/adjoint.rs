use std::sync::Arc;

use thiserror::Error;

use super::functor::FunctorError;
use super::{FinCat, Functor, MorId, NatTrans, ObjId};

pub const ADJOINT_BUDGET: u64 = 10_000_000;
pub const FUNCTOR_BUDGET: u64 = 1_000_000;

/// An enumeration cap. `WORKBENCH_BUDGET` in the environment overrides the
/// default given to [`SearchBudget::from_env`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl SearchBudget {
    pub fn from_env(default: u64) -> Self {
        let v = std::env::var("WORKBENCH_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(default);
        SearchBudget(v)
    }

    pub fn functors() -> Self {
        Self::from_env(FUNCTOR_BUDGET)
    }

    pub fn adjoint() -> Self {
        Self::from_env(ADJOINT_BUDGET)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("SearchSpaceTooLarge: more than {limit} candidates")]
    SearchSpaceTooLarge { limit: u64 },
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum AdjointSide {
    Left,
    Right,
}

/// `left -| right` with `unit: id => right . left`, `counit: left . right => id`.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub left: Functor,
    pub right: Functor,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

impl Adjunction {
    pub fn check(&self) -> Result<bool, FunctorError> {
        check_adjunction(&self.left, &self.right, &self.unit, &self.counit)
    }
}

/// Both triangle identities, componentwise.
pub fn check_adjunction(
    left: &Functor,
    right: &Functor,
    unit: &NatTrans,
    counit: &NatTrans,
) -> Result<bool, FunctorError> {
    let rl = right.after(left)?;
    let lr = left.after(right)?;
    let id_a = Functor::identity(left.dom.clone());
    let id_b = Functor::identity(left.cod.clone());
    if unit.dom != id_a || unit.cod != rl || counit.dom != lr || counit.cod != id_b {
        return Err(FunctorError::ShapeMismatch("unit/counit do not match the functors".into()));
    }
    if unit.check_naturality().is_err() || counit.check_naturality().is_err() {
        return Ok(false);
    }
    let (a, b) = (&*left.dom, &*left.cod);
    for x in a.objects() {
        let lx = left.obj(x);
        if b.compose(counit.at(lx), left.mor(unit.at(x))) != b.identity(lx) {
            return Ok(false);
        }
    }
    for y in b.objects() {
        let ry = right.obj(y);
        if a.compose(right.mor(counit.at(y)), unit.at(ry)) != a.identity(ry) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self, n: u64) -> Result<(), SearchError> {
        self.used += n;
        if self.used > self.limit {
            Err(SearchError::SearchSpaceTooLarge { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Finds the left or right adjoint of `f` by searching universal arrows
/// pointwise and checking every candidate against all factorization problems.
pub fn find_adjoint(
    f: &Functor,
    side: AdjointSide,
    budget: SearchBudget,
) -> Result<Option<Adjunction>, SearchError> {
    let (c, d) = (&*f.dom, &*f.cod);
    let mut ctr = Counter { used: 0, limit: budget.0 };
    // for each d: (c0, arrow) universal
    let mut chosen: Vec<(ObjId, MorId)> = Vec::with_capacity(d.num_objects());
    for y in d.objects() {
        let mut found = None;
        'cand: for c0 in c.objects() {
            let arrows: &[MorId] = match side {
                AdjointSide::Left => d.hom(y, f.obj(c0)),
                AdjointSide::Right => d.hom(f.obj(c0), y),
            };
            for &eta in arrows {
                let mut ok = true;
                'all: for x in c.objects() {
                    let (probs, gs) = match side {
                        AdjointSide::Left => (d.hom(y, f.obj(x)), c.hom(c0, x)),
                        AdjointSide::Right => (d.hom(f.obj(x), y), c.hom(x, c0)),
                    };
                    ctr.tick((probs.len() * gs.len().max(1)) as u64)?;
                    for &p in probs {
                        let n = gs
                            .iter()
                            .filter(|&&g| match side {
                                AdjointSide::Left => d.compose(f.mor(g), eta) == p,
                                AdjointSide::Right => d.compose(eta, f.mor(g)) == p,
                            })
                            .count();
                        if n != 1 {
                            ok = false;
                            break 'all;
                        }
                    }
                }
                if ok {
                    found = Some((c0, eta));
                    break 'cand;
                }
            }
        }
        match found {
            Some(u) => chosen.push(u),
            None => return Ok(None),
        }
    }
    let g_obj: Vec<ObjId> = chosen.iter().map(|u| u.0).collect();
    let unique = |from: ObjId, to: ObjId, pred: &dyn Fn(MorId) -> bool| -> MorId {
        let v: Vec<MorId> = c.hom(from, to).iter().copied().filter(|&g| pred(g)).collect();
        debug_assert_eq!(v.len(), 1);
        v[0]
    };
    let g_mor: Vec<MorId> = d
        .morphisms()
        .map(|m| {
            let (s, t) = (d.src(m), d.tgt(m));
            let (es, et) = (chosen[s.idx()].1, chosen[t.idx()].1);
            match side {
                AdjointSide::Left => unique(g_obj[s.idx()], g_obj[t.idx()], &|g| {
                    d.compose(f.mor(g), es) == d.compose(et, m)
                }),
                AdjointSide::Right => unique(g_obj[s.idx()], g_obj[t.idx()], &|g| {
                    d.compose(et, f.mor(g)) == d.compose(m, es)
                }),
            }
        })
        .collect();
    let g = Functor::new(f.cod.clone(), f.dom.clone(), g_obj.clone(), g_mor)?;
    let arrows: Vec<MorId> = chosen.iter().map(|u| u.1).collect();
    let adj = match side {
        AdjointSide::Left => {
            // unit on D is the universal arrow; counit on C by universality
            let counit: Vec<MorId> = c
                .objects()
                .map(|x| {
                    let fx = f.obj(x);
                    unique(g_obj[fx.idx()], x, &|h| {
                        d.compose(f.mor(h), arrows[fx.idx()]) == d.identity(fx)
                    })
                })
                .collect();
            let unit = NatTrans::new(Functor::identity(f.cod.clone()), f.after(&g)?, arrows)?;
            let counit = NatTrans::new(g.after(f)?, Functor::identity(f.dom.clone()), counit)?;
            Adjunction { left: g, right: f.clone(), unit, counit }
        }
        AdjointSide::Right => {
            let unit: Vec<MorId> = c
                .objects()
                .map(|x| {
                    let fx = f.obj(x);
                    unique(x, g_obj[fx.idx()], &|h| {
                        d.compose(arrows[fx.idx()], f.mor(h)) == d.identity(fx)
                    })
                })
                .collect();
            let unit = NatTrans::new(Functor::identity(f.dom.clone()), g.after(f)?, unit)?;
            let counit = NatTrans::new(f.after(&g)?, Functor::identity(f.cod.clone()), arrows)?;
            Adjunction { left: f.clone(), right: g, unit, counit }
        }
    };
    if !adj.check()? {
        return Ok(None);
    }
    Ok(Some(adj))
}

/// Every functor `dom -> cod` whose object and morphism images pass the
/// filters, in lexicographic order of the object map.
pub fn enumerate_functors(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    budget: SearchBudget,
) -> Result<Vec<Functor>, SearchError> {
    enumerate_functors_filtered(dom, cod, &|_, _| true, &|_, _| true, budget)
}

#[derive(Clone, Copy)]
enum Slot {
    Obj(ObjId),
    Mor(MorId),
}

pub fn enumerate_functors_filtered(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    obj_ok: &dyn Fn(ObjId, ObjId) -> bool,
    mor_ok: &dyn Fn(MorId, MorId) -> bool,
    budget: SearchBudget,
) -> Result<Vec<Functor>, SearchError> {
    let d = &**dom;
    let mut slots = Vec::new();
    let mut slot_of_obj = vec![0usize; d.num_objects()];
    let mut slot_of_mor = vec![0usize; d.num_morphisms()];
    let mut by_step: Vec<Vec<MorId>> = vec![Vec::new(); d.num_objects()];
    for m in d.non_identity_morphisms() {
        by_step[d.src(m).idx().max(d.tgt(m).idx())].push(m);
    }
    for o in d.objects() {
        slot_of_obj[o.idx()] = slots.len();
        slot_of_mor[d.identity(o).idx()] = slots.len();
        slots.push(Slot::Obj(o));
        for &m in &by_step[o.idx()] {
            slot_of_mor[m.idx()] = slots.len();
            slots.push(Slot::Mor(m));
        }
    }
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); slots.len()];
    for (g, f, h) in d.composition_entries() {
        let s = slot_of_mor[g.idx()].max(slot_of_mor[f.idx()]).max(slot_of_mor[h.idx()]);
        checks[s].push((g, f, h));
    }
    let mut st = Enum {
        dom: d,
        cod,
        slots,
        checks,
        obj: vec![ObjId(0); d.num_objects()],
        mor: vec![MorId(0); d.num_morphisms()],
        obj_ok,
        mor_ok,
        out: Vec::new(),
        ctr: Counter { used: 0, limit: budget.0 },
        nodes: 0,
    };
    st.go(0)?;
    Ok(st
        .out
        .into_iter()
        .map(|(o, m)| Functor::new_unchecked(dom.clone(), cod.clone(), o, m).unwrap())
        .collect())
}

struct Enum<'a> {
    dom: &'a FinCat,
    cod: &'a FinCat,
    slots: Vec<Slot>,
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    obj: Vec<ObjId>,
    mor: Vec<MorId>,
    obj_ok: &'a dyn Fn(ObjId, ObjId) -> bool,
    mor_ok: &'a dyn Fn(MorId, MorId) -> bool,
    out: Vec<(Vec<ObjId>, Vec<MorId>)>,
    ctr: Counter,
    nodes: u64,
}

impl Enum<'_> {
    fn go(&mut self, k: usize) -> Result<(), SearchError> {
        self.nodes += 1;
        if self.nodes > self.ctr.limit.saturating_mul(64) {
            return Err(SearchError::SearchSpaceTooLarge { limit: self.ctr.limit });
        }
        if k == self.slots.len() {
            self.ctr.tick(1)?;
            self.out.push((self.obj.clone(), self.mor.clone()));
            return Ok(());
        }
        match self.slots[k] {
            Slot::Obj(o) => {
                for y in self.cod.objects() {
                    if !(self.obj_ok)(o, y) {
                        continue;
                    }
                    self.obj[o.idx()] = y;
                    self.mor[self.dom.identity(o).idx()] = self.cod.identity(y);
                    if self.consistent(k) {
                        self.go(k + 1)?;
                    }
                }
            }
            Slot::Mor(m) => {
                let (s, t) = (self.obj[self.dom.src(m).idx()], self.obj[self.dom.tgt(m).idx()]);
                for i in 0..self.cod.hom(s, t).len() {
                    let y = self.cod.hom(s, t)[i];
                    if !(self.mor_ok)(m, y) {
                        continue;
                    }
                    self.mor[m.idx()] = y;
                    if self.consistent(k) {
                        self.go(k + 1)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn consistent(&self, k: usize) -> bool {
        self.checks[k].iter().all(|&(g, f, h)| {
            self.cod.compose(self.mor[g.idx()], self.mor[f.idx()]) == self.mor[h.idx()]
        })
    }
}

/// Every natural transformation `f => g` whose components pass `comp_ok`.
pub fn enumerate_nat_trans_filtered(
    f: &Functor,
    g: &Functor,
    comp_ok: &dyn Fn(ObjId, MorId) -> bool,
    budget: SearchBudget,
    first_only: bool,
) -> Result<Vec<NatTrans>, SearchError> {
    let d = &*f.dom;
    let c = &*f.cod;
    let n = d.num_objects();
    // naturality squares checked once both endpoints are assigned
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for m in d.non_identity_morphisms() {
        checks[d.src(m).idx().max(d.tgt(m).idx())].push(m);
    }
    let mut comps = vec![MorId(0); n];
    let mut out = Vec::new();
    let mut ctr = Counter { used: 0, limit: budget.0 };
    fn go(
        k: usize,
        d: &FinCat,
        c: &FinCat,
        f: &Functor,
        g: &Functor,
        checks: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        comp_ok: &dyn Fn(ObjId, MorId) -> bool,
        out: &mut Vec<Vec<MorId>>,
        ctr: &mut Counter,
        first_only: bool,
    ) -> Result<(), SearchError> {
        if first_only && !out.is_empty() {
            return Ok(());
        }
        if k == d.num_objects() {
            ctr.tick(1)?;
            out.push(comps.clone());
            return Ok(());
        }
        let o = ObjId(k as u32);
        for &a in c.hom(f.obj(o), g.obj(o)) {
            if !comp_ok(o, a) {
                continue;
            }
            comps[k] = a;
            let ok = checks[k].iter().all(|&m| {
                let (s, t) = (d.src(m), d.tgt(m));
                c.compose(g.mor(m), comps[s.idx()]) == c.compose(comps[t.idx()], f.mor(m))
            });
            if ok {
                go(k + 1, d, c, f, g, checks, comps, comp_ok, out, ctr, first_only)?;
            }
        }
        Ok(())
    }
    go(0, d, c, f, g, &checks, &mut comps, comp_ok, &mut out, &mut ctr, first_only)?;
    out.into_iter()
        .map(|v| NatTrans::new_unchecked(f.clone(), g.clone(), v).map_err(SearchError::from))
        .collect()
}

pub fn enumerate_nat_trans(
    f: &Functor,
    g: &Functor,
    budget: SearchBudget,
) -> Result<Vec<NatTrans>, SearchError> {
    enumerate_nat_trans_filtered(f, g, &|_, _| true, budget, false)
}

/// A natural isomorphism `f => g`, if one exists.
pub fn find_nat_iso(f: &Functor, g: &Functor) -> Result<Option<NatTrans>, SearchError> {
    let c = f.cod.clone();
    let v = enumerate_nat_trans_filtered(
        f,
        g,
        &|_, a| c.is_isomorphism(a),
        SearchBudget::functors(),
        true,
    )?;
    Ok(v.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, product, terminal};

    fn lattice2() -> Arc<FinCat> {
        Arc::new(chain(1))
    }

    #[test]
    fn diagonal_adjoints_are_join_and_meet() {
        let two = lattice2();
        let (sq, _, _) = product(&two, &two);
        let diag_obj: Vec<ObjId> = two
            .objects()
            .map(|x| sq.obj_by_name(&format!("({0},{0})", two.obj_name(x))).unwrap())
            .collect();
        let diag_mor: Vec<MorId> = two
            .morphisms()
            .map(|m| {
                let s = diag_obj[two.src(m).idx()];
                let t = diag_obj[two.tgt(m).idx()];
                sq.hom(s, t)[0]
            })
            .collect();
        let diag = Functor::new(two.clone(), sq.clone(), diag_obj, diag_mor).unwrap();
        let left = find_adjoint(&diag, AdjointSide::Left, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        let right = find_adjoint(&diag, AdjointSide::Right, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        for x in sq.objects() {
            let name = sq.obj_name(x);
            let a: u32 = name[1..2].parse().unwrap();
            let b: u32 = name[3..4].parse().unwrap();
            assert_eq!(left.left.obj(x).0, a.max(b), "join at {name}");
            assert_eq!(right.right.obj(x).0, a.min(b), "meet at {name}");
        }
        assert!(left.check().unwrap() && right.check().unwrap());
    }

    #[test]
    fn identity_adjoint_is_identity() {
        let c = Arc::new(chain(2));
        let id = Functor::identity(c.clone());
        let adj = find_adjoint(&id, AdjointSide::Left, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        assert_eq!(adj.left, id);
        assert!(adj.unit.is_identity() && adj.counit.is_identity());
    }

    #[test]
    fn inclusion_of_endpoints() {
        // {0, 2} -> [2]
        let big = Arc::new(chain(2));
        let (small, objs, mors) = big.full_subcategory(&[ObjId(0), ObjId(2)]);
        let inc = Functor::new(Arc::new(small), big.clone(), objs, mors).unwrap();
        let l = find_adjoint(&inc, AdjointSide::Left, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        let r = find_adjoint(&inc, AdjointSide::Right, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        let name = |f: &Functor, o: u32| f.cod.obj_name(f.obj(ObjId(o))).to_string();
        assert_eq!(name(&l.left, 1), "2");
        assert_eq!(name(&r.right, 1), "0");
    }

    #[test]
    fn wrong_unit_fails_triangle() {
        let two = lattice2();
        let pt = Arc::new(terminal());
        // collapse [1] -> pt has left adjoint picking 0 and right adjoint picking 1
        let collapse = Functor::constant(two.clone(), pt.clone(), ObjId(0));
        let adj = find_adjoint(&collapse, AdjointSide::Left, SearchBudget(ADJOINT_BUDGET)).unwrap().unwrap();
        assert_eq!(adj.left.obj(ObjId(0)), ObjId(0));
        assert!(adj.check().unwrap());
        // the pick-1 functor with the only possible components is no longer natural
        let pick1 = Functor::pick(pt.clone(), two.clone(), ObjId(1));
        let counit = NatTrans::new_unchecked(
            pick1.after(&collapse).unwrap(),
            Functor::identity(two.clone()),
            vec![two.identity(ObjId(0)), two.identity(ObjId(1))],
        )
        .unwrap();
        let unit = NatTrans::new_unchecked(
            Functor::identity(pt.clone()),
            collapse.after(&pick1).unwrap(),
            vec![pt.identity(ObjId(0))],
        )
        .unwrap();
        assert!(!check_adjunction(&pick1, &collapse, &unit, &counit).unwrap());
    }

    #[test]
    fn functor_counts() {
        let c1 = Arc::new(chain(1));
        let c2 = Arc::new(chain(2));
        // monotone maps [1] -> [2]: 6
        assert_eq!(enumerate_functors(&c1, &c2, SearchBudget(FUNCTOR_BUDGET)).unwrap().len(), 6);
        assert!(matches!(
            enumerate_functors(&c2, &c2, SearchBudget(3)),
            Err(SearchError::SearchSpaceTooLarge { .. })
        ));
    }
}
