use std::sync::Arc;

use crate::fincat::{chain, is_poset, FinCat, Functor, MorId, ObjId};

/// A (co)cone: legs `apex -> F(x)` for a limit, `F(x) -> apex` for a colimit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

/// The value category of a represented derivator.
#[derive(Debug, Clone)]
pub struct TargetCategory {
    pub cat: Arc<FinCat>,
    name: String,
    /// `leq[a][b]` when the target is a poset.
    order: Option<Vec<Vec<bool>>>,
}

impl TargetCategory {
    pub fn new(name: impl Into<String>, cat: Arc<FinCat>) -> Self {
        let order = is_poset(&cat).then(|| {
            let n = cat.num_objects();
            (0..n)
                .map(|a| (0..n).map(|b| !cat.hom(ObjId(a as u32), ObjId(b as u32)).is_empty()).collect())
                .collect()
        });
        TargetCategory { cat, name: name.into(), order }
    }

    /// The chain `0 < 1 < ... < n` as a lattice; `chain_lattice(1)` is `2`.
    pub fn chain_lattice(n: usize) -> Self {
        Self::new(if n == 1 { "2".to_string() } else { format!("[{n}]") }, Arc::new(chain(n)))
    }

    pub fn two() -> Self {
        Self::chain_lattice(1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_poset(&self) -> bool {
        self.order.is_some()
    }

    /// Every finite subset has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        let Some(ord) = &self.order else { return false };
        let n = ord.len();
        if n == 0 {
            return false;
        }
        let all: Vec<ObjId> = self.cat.objects().collect();
        self.extremum(&all, false).is_some()
            && self.extremum(&[], false).is_some()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    let s = [ObjId(a as u32), ObjId(b as u32)];
                    self.extremum(&s, true).is_some() && self.extremum(&s, false).is_some()
                })
            })
    }

    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        match &self.order {
            Some(o) => o[a.idx()][b.idx()],
            None => !self.cat.hom(a, b).is_empty(),
        }
    }

    /// Meet (`upper = false`) or join of a set of objects in a poset target.
    fn extremum(&self, s: &[ObjId], upper: bool) -> Option<ObjId> {
        let bounds: Vec<ObjId> = self
            .cat
            .objects()
            .filter(|&z| s.iter().all(|&x| if upper { self.leq(x, z) } else { self.leq(z, x) }))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&b| bounds.iter().all(|&z| if upper { self.leq(b, z) } else { self.leq(z, b) }))
    }

    pub fn meet(&self, s: &[ObjId]) -> Option<ObjId> {
        self.extremum(s, false)
    }

    pub fn join(&self, s: &[ObjId]) -> Option<ObjId> {
        self.extremum(s, true)
    }

    pub fn hom1(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.cat.hom(a, b).first().copied()
    }

    pub fn limit(&self, f: &Functor) -> Option<Cone> {
        if self.is_poset() {
            let vals: Vec<ObjId> = f.obj_map().to_vec();
            let apex = self.meet(&vals)?;
            return Some(Cone { apex, legs: vals.iter().map(|&v| self.hom1(apex, v).unwrap()).collect() });
        }
        self.limit_by_cones(f)
    }

    pub fn colimit(&self, f: &Functor) -> Option<Cone> {
        if self.is_poset() {
            let vals: Vec<ObjId> = f.obj_map().to_vec();
            let apex = self.join(&vals)?;
            return Some(Cone { apex, legs: vals.iter().map(|&v| self.hom1(v, apex).unwrap()).collect() });
        }
        self.colimit_by_cones(f)
    }

    /// All cones (`co = false`) or cocones over `f`.
    pub fn cones(&self, f: &Functor, co: bool) -> Vec<Cone> {
        let c = &*self.cat;
        let d = &*f.dom;
        let mut out = Vec::new();
        for apex in c.objects() {
            let choices: Vec<&[MorId]> = d
                .objects()
                .map(|x| if co { c.hom(f.obj(x), apex) } else { c.hom(apex, f.obj(x)) })
                .collect();
            let mut legs = Vec::with_capacity(choices.len());
            fill(c, d, f, co, &choices, &mut legs, &mut |legs| out.push(Cone { apex, legs: legs.to_vec() }));
        }
        out
    }

    /// The terminal cone, found by checking every cone for a unique factorization.
    pub fn limit_by_cones(&self, f: &Functor) -> Option<Cone> {
        self.universal(f, false)
    }

    pub fn colimit_by_cones(&self, f: &Functor) -> Option<Cone> {
        self.universal(f, true)
    }

    fn universal(&self, f: &Functor, co: bool) -> Option<Cone> {
        let c = &*self.cat;
        let all = self.cones(f, co);
        all.iter()
            .find(|u| {
                all.iter().all(|v| {
                    let hs: &[MorId] = if co { c.hom(u.apex, v.apex) } else { c.hom(v.apex, u.apex) };
                    let factoring = hs
                        .iter()
                        .filter(|&&h| {
                            u.legs.iter().zip(&v.legs).all(|(&lu, &lv)| {
                                if co {
                                    c.compose(h, lu) == lv
                                } else {
                                    c.compose(lu, h) == lv
                                }
                            })
                        })
                        .count();
                    factoring == 1
                })
            })
            .cloned()
    }
}

fn fill(
    c: &FinCat,
    d: &FinCat,
    f: &Functor,
    co: bool,
    choices: &[&[MorId]],
    legs: &mut Vec<MorId>,
    emit: &mut dyn FnMut(&[MorId]),
) {
    let k = legs.len();
    if k == choices.len() {
        emit(legs);
        return;
    }
    for &leg in choices[k] {
        legs.push(leg);
        // naturality against every arrow between already chosen objects
        let ok = d.non_identity_morphisms().all(|m| {
            let (s, t) = (d.src(m).idx(), d.tgt(m).idx());
            if s > k || t > k {
                return true;
            }
            if co {
                c.compose(legs[t], f.mor(m)) == legs[s]
            } else {
                c.compose(f.mor(m), legs[s]) == legs[t]
            }
        });
        if ok {
            fill(c, d, f, co, choices, legs, emit);
        }
        legs.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, empty, lambda_poset, poset, enumerate_functors, SearchBudget};
    use proptest::prelude::*;

    #[test]
    fn empty_limit_is_top() {
        let t = TargetCategory::two();
        let e = Functor::new(Arc::new(empty()), t.cat.clone(), vec![], vec![]).unwrap();
        assert_eq!(t.cat.obj_name(t.limit(&e).unwrap().apex), "1");
        assert_eq!(t.cat.obj_name(t.colimit(&e).unwrap().apex), "0");
        assert_eq!(t.limit_by_cones(&e).unwrap().apex, t.limit(&e).unwrap().apex);
    }

    #[test]
    fn span_colimit_is_join() {
        // b <- a -> c in the lattice of subsets of {0,1}
        let target = TargetCategory::new(
            "P2",
            Arc::new(poset(&["00", "01", "10", "11"], |i, j| i & j == i)),
        );
        assert!(target.is_lattice());
        let shape = Arc::new(lambda_poset());
        let tc = &target.cat;
        let objs = ["00", "01", "10"].map(|n| tc.obj_by_name(n).unwrap());
        // lambda: objects a, b, c with c below both
        let vals = [objs[1], objs[2], objs[0]];
        let f = enumerate_functors(&shape, tc, SearchBudget(1 << 20))
            .unwrap()
            .into_iter()
            .find(|f| f.obj_map() == vals)
            .unwrap();
        let col = target.colimit(&f).unwrap();
        assert_eq!(tc.obj_name(col.apex), "11");
        assert_eq!(target.colimit_by_cones(&f).unwrap(), col);
    }

    #[test]
    fn discrete_target_has_no_products() {
        let t = TargetCategory::new("D", Arc::new(discrete(&["x", "y"])));
        let shape = Arc::new(discrete(&["p", "q"]));
        let f = Functor::new(shape, t.cat.clone(), vec![ObjId(0), ObjId(1)], vec![MorId(0), MorId(1)]).unwrap();
        assert!(t.limit(&f).is_none());
        assert!(t.limit_by_cones(&f).is_none());
        assert!(!t.is_lattice());
    }

    proptest! {
        #[test]
        fn poset_fast_path_matches_cone_search(n in 1usize..4, shape_n in 0usize..3, seed in any::<u64>()) {
            let target = TargetCategory::chain_lattice(n);
            let shape = Arc::new(chain(shape_n));
            let fs = enumerate_functors(&shape, &target.cat, SearchBudget(1 << 20)).unwrap();
            let f = &fs[(seed % fs.len() as u64) as usize];
            prop_assert_eq!(target.limit(f), target.limit_by_cones(f));
            prop_assert_eq!(target.colimit(f), target.colimit_by_cones(f));
        }
    }
}
