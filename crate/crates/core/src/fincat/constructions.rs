use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::functor::{same_cat, FunctorError};
use super::{FinCat, FinCatBuilder, Functor, MorId, NatTrans, ObjId};

pub fn empty() -> FinCat {
    FinCatBuilder::new().build_unchecked()
}

/// The terminal category `pt` with one object `*`.
pub fn terminal() -> FinCat {
    let mut b = FinCatBuilder::new();
    b.add_object("*");
    b.build_unchecked()
}

pub fn discrete(names: &[&str]) -> FinCat {
    let mut b = FinCatBuilder::new();
    for n in names {
        b.add_object(*n);
    }
    b.build_unchecked()
}

/// A finite poset on `names`, where `leq(i, j)` must be a partial order.
/// The arrow `x -> y` is named `x<y`.
pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let n = names.len();
    let mut b = FinCatBuilder::new();
    let objs: Vec<ObjId> = names.iter().map(|s| b.add_object(*s)).collect();
    let mut arrow = vec![vec![None; n]; n];
    for i in 0..n {
        arrow[i][i] = Some(b.identity(objs[i]));
        for j in 0..n {
            if i != j && leq(i, j) {
                arrow[i][j] = Some(b.add_morphism(format!("{}<{}", names[i], names[j]), objs[i], objs[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k {
                    if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                        let h = arrow[i][k].expect("leq is not transitive");
                        b.set_composite(g, f, h);
                    }
                }
            }
        }
    }
    b.build_unchecked()
}

/// The linear order `[n] = {0 < 1 < ... < n}`.
pub fn chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poset(&refs, |i, j| i <= j)
}

/// `a < c > b`.
pub fn v_poset() -> FinCat {
    poset(&["a", "b", "c"], |i, j| i == j || j == 2)
}

/// `a > c < b`.
pub fn lambda_poset() -> FinCat {
    poset(&["a", "b", "c"], |i, j| i == j || i == 2)
}

/// `[1] x [1]` as a poset on `00, 01, 10, 11`.
pub fn square_poset() -> FinCat {
    poset(&["00", "01", "10", "11"], |i, j| (i & j) == i)
}

/// Two objects `a, b` and two parallel arrows `f, g: a -> b`.
pub fn free_parallel_pair() -> FinCat {
    let mut b = FinCatBuilder::new();
    let x = b.add_object("a");
    let y = b.add_object("b");
    b.add_morphism("f", x, y);
    b.add_morphism("g", x, y);
    b.build_unchecked()
}

/// Same objects and morphism ids; sources and targets swapped.
pub fn opposite(c: &FinCat) -> FinCat {
    let mut b = FinCatBuilder {
        obj_names: c.obj_names.clone(),
        mor_names: c.mor_names.clone(),
        src: c.tgt.clone(),
        tgt: c.src.clone(),
        identity: c.identity.clone(),
        is_identity: c.is_identity.clone(),
        composition: HashMap::with_capacity(c.composition.len()),
        obj_index: c.obj_index.clone(),
        mor_index: c.mor_index.clone(),
    };
    for (&(g, f), &h) in &c.composition {
        b.composition.insert((f, g), h);
    }
    b.build_unchecked()
}

/// `F^op: C^op -> D^op`, using the supplied opposite categories.
pub fn opposite_functor(f: &Functor, dom_op: Arc<FinCat>, cod_op: Arc<FinCat>) -> Functor {
    Functor::new_unchecked(dom_op, cod_op, f.obj_map().to_vec(), f.mor_map().to_vec())
        .expect("opposite of a functor")
}

/// `t^op: G^op => F^op` for `t: F => G`.
pub fn opposite_nat_trans(t: &NatTrans, dom_op: Arc<FinCat>, cod_op: Arc<FinCat>) -> NatTrans {
    NatTrans::new_unchecked(
        opposite_functor(&t.cod, dom_op.clone(), cod_op.clone()),
        opposite_functor(&t.dom, dom_op, cod_op),
        t.components().to_vec(),
    )
    .expect("opposite of a transformation")
}

fn names_collide(c: &FinCat, d: &FinCat) -> bool {
    let left: HashSet<&str> = c
        .obj_names
        .iter()
        .chain(c.mor_names.iter())
        .map(String::as_str)
        .collect();
    d.obj_names
        .iter()
        .chain(d.mor_names.iter())
        .any(|n| left.contains(n.as_str()))
}

/// Disjoint union. Names are kept unless they collide, in which case they
/// are prefixed with `l.` and `r.`. Returns the two injections.
pub fn coproduct(c: &Arc<FinCat>, d: &Arc<FinCat>) -> (Arc<FinCat>, Functor, Functor) {
    let prefix = names_collide(c, d);
    let mut b = FinCatBuilder::new();
    let mut maps = Vec::new();
    for (part, tag) in [(c, "l."), (d, "r.")] {
        let name = |s: &str| if prefix { format!("{tag}{s}") } else { s.to_string() };
        let objs: Vec<ObjId> = part.objects().map(|o| b.add_object(name(part.obj_name(o)))).collect();
        let mut mors = vec![MorId(0); part.num_morphisms()];
        for m in part.morphisms() {
            mors[m.idx()] = if part.is_identity(m) {
                b.identity(objs[part.src(m).idx()])
            } else {
                b.add_morphism(name(part.mor_name(m)), objs[part.src(m).idx()], objs[part.tgt(m).idx()])
            };
        }
        for (g, f, h) in part.composition_entries() {
            b.set_composite(mors[g.idx()], mors[f.idx()], mors[h.idx()]);
        }
        maps.push((objs, mors));
    }
    let cat = Arc::new(b.build_unchecked());
    let (ro, rm) = maps.pop().unwrap();
    let (lo, lm) = maps.pop().unwrap();
    let inl = Functor::new_unchecked(c.clone(), cat.clone(), lo, lm).unwrap();
    let inr = Functor::new_unchecked(d.clone(), cat.clone(), ro, rm).unwrap();
    (cat, inl, inr)
}

/// Binary product with its two projections. Objects are named `(x,y)`,
/// morphisms `(f,g)`.
pub fn product(c: &Arc<FinCat>, d: &Arc<FinCat>) -> (Arc<FinCat>, Functor, Functor) {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let mut b = FinCatBuilder::new();
    let mut objs = vec![ObjId(0); nc * nd];
    for x in c.objects() {
        for y in d.objects() {
            objs[x.idx() * nd + y.idx()] = b.add_object(format!("({},{})", c.obj_name(x), d.obj_name(y)));
        }
    }
    let md = d.num_morphisms();
    let mut mors = vec![MorId(0); c.num_morphisms() * md];
    for f in c.morphisms() {
        for g in d.morphisms() {
            let s = objs[c.src(f).idx() * nd + d.src(g).idx()];
            let t = objs[c.tgt(f).idx() * nd + d.tgt(g).idx()];
            mors[f.idx() * md + g.idx()] = if c.is_identity(f) && d.is_identity(g) {
                b.identity(s)
            } else {
                b.add_morphism(format!("({},{})", c.mor_name(f), d.mor_name(g)), s, t)
            };
        }
    }
    for f1 in c.morphisms() {
        for &f2 in c.out_morphisms(c.tgt(f1)) {
            let f = c.compose(f2, f1);
            for g1 in d.morphisms() {
                for &g2 in d.out_morphisms(d.tgt(g1)) {
                    let g = d.compose(g2, g1);
                    b.set_composite(mors[f2.idx() * md + g2.idx()], mors[f1.idx() * md + g1.idx()], mors[f.idx() * md + g.idx()]);
                }
            }
        }
    }
    let cat = Arc::new(b.build_unchecked());
    let mut p1o = vec![ObjId(0); cat.num_objects()];
    let mut p2o = p1o.clone();
    for x in c.objects() {
        for y in d.objects() {
            let o = objs[x.idx() * nd + y.idx()];
            p1o[o.idx()] = x;
            p2o[o.idx()] = y;
        }
    }
    let mut p1m = vec![MorId(0); cat.num_morphisms()];
    let mut p2m = p1m.clone();
    for f in c.morphisms() {
        for g in d.morphisms() {
            let m = mors[f.idx() * md + g.idx()];
            p1m[m.idx()] = f;
            p2m[m.idx()] = g;
        }
    }
    let p1 = Functor::new_unchecked(cat.clone(), c.clone(), p1o, p1m).unwrap();
    let p2 = Functor::new_unchecked(cat.clone(), d.clone(), p2o, p2m).unwrap();
    (cat, p1, p2)
}

/// `I x_{/J} K` for `alpha: I -> J`, `beta: K -> J`.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub total: Arc<FinCat>,
    pub pr1: Functor,
    pub pr2: Functor,
    /// `alpha . pr1 => beta . pr2`, with component `m` at `(x, y, m)`.
    pub cell: NatTrans,
    pub objects: Vec<(ObjId, ObjId, MorId)>,
    pub parts: Vec<(MorId, MorId)>,
    obj_index: HashMap<(ObjId, ObjId, MorId), ObjId>,
}

impl CommaCategory {
    pub fn object_of(&self, x: ObjId, y: ObjId, m: MorId) -> Option<ObjId> {
        self.obj_index.get(&(x, y, m)).copied()
    }

    /// The morphism `(a, b): s -> t`, if its square commutes.
    pub fn morphism_of(&self, s: ObjId, t: ObjId, a: MorId, b: MorId) -> Option<MorId> {
        self.total
            .hom(s, t)
            .iter()
            .copied()
            .find(|&m| self.parts[m.idx()] == (a, b))
    }
}

pub fn comma_category(alpha: &Functor, beta: &Functor) -> Result<CommaCategory, FunctorError> {
    if !same_cat(&alpha.cod, &beta.cod) {
        return Err(FunctorError::ShapeMismatch(
            "comma of functors with different codomains".into(),
        ));
    }
    let (i, k, j) = (&*alpha.dom, &*beta.dom, &*alpha.cod);
    let mut b = FinCatBuilder::new();
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for x in i.objects() {
        for y in k.objects() {
            for &m in j.hom(alpha.obj(x), beta.obj(y)) {
                objects.push((x, y, m));
            }
        }
    }
    objects.sort_unstable();
    for &(x, y, m) in &objects {
        let o = b.add_object(format!("({},{},{})", i.obj_name(x), k.obj_name(y), j.mor_name(m)));
        obj_index.insert((x, y, m), o);
    }
    let mut parts: Vec<(MorId, MorId)> = objects
        .iter()
        .map(|&(x, y, _)| (i.identity(x), k.identity(y)))
        .collect();
    let mut mor_index: HashMap<(ObjId, ObjId, MorId, MorId), MorId> = HashMap::new();
    for (si, &(x, y, m)) in objects.iter().enumerate() {
        let s = ObjId(si as u32);
        mor_index.insert((s, s, i.identity(x), k.identity(y)), b.identity(s));
        for &a in i.out_morphisms(x) {
            for &bb in k.out_morphisms(y) {
                if i.is_identity(a) && k.is_identity(bb) {
                    continue;
                }
                let lhs = j.compose(beta.mor(bb), m);
                let (x2, y2) = (i.tgt(a), k.tgt(bb));
                let fa = alpha.mor(a);
                for &m2 in j.hom(alpha.obj(x2), beta.obj(y2)) {
                    if j.compose(m2, fa) == lhs {
                        let t = obj_index[&(x2, y2, m2)];
                        let name = format!("({},{}):{}->{}", i.mor_name(a), k.mor_name(bb), si, t.0);
                        let id = b.add_morphism(name, s, t);
                        debug_assert_eq!(id.idx(), parts.len());
                        parts.push((a, bb));
                        mor_index.insert((s, t, a, bb), id);
                    }
                }
            }
        }
    }
    let nm = b.mor_names.len();
    let mut out: Vec<Vec<MorId>> = vec![Vec::new(); objects.len()];
    for f in 0..nm {
        if !b.is_identity[f] {
            out[b.src[f].idx()].push(MorId(f as u32));
        }
    }
    for f in 0..nm {
        if b.is_identity[f] {
            continue;
        }
        let f = MorId(f as u32);
        let (a1, b1) = parts[f.idx()];
        let s = b.src[f.idx()];
        for &g in &out[b.tgt[f.idx()].idx()] {
            let (a2, b2) = parts[g.idx()];
            let u = b.tgt[g.idx()];
            let h = mor_index[&(s, u, i.compose(a2, a1), k.compose(b2, b1))];
            b.set_composite(g, f, h);
        }
    }
    let total = Arc::new(b.build_unchecked());
    let pr1 = Functor::new_unchecked(
        total.clone(),
        alpha.dom.clone(),
        objects.iter().map(|o| o.0).collect(),
        parts.iter().map(|p| p.0).collect(),
    )?;
    let pr2 = Functor::new_unchecked(
        total.clone(),
        beta.dom.clone(),
        objects.iter().map(|o| o.1).collect(),
        parts.iter().map(|p| p.1).collect(),
    )?;
    let cell = NatTrans::new_unchecked(
        alpha.after(&pr1)?,
        beta.after(&pr2)?,
        objects.iter().map(|o| o.2).collect(),
    )?;
    Ok(CommaCategory {
        total,
        pr1,
        pr2,
        cell,
        objects,
        parts,
        obj_index,
    })
}

/// The functor `X -> I x_{/J} K` induced by `p: X -> I`, `q: X -> K` and
/// `theta: alpha . p => beta . q`.
pub fn comma_factor(cm: &CommaCategory, p: &Functor, q: &Functor, theta: &NatTrans) -> Result<Functor, FunctorError> {
    let x = &*p.dom;
    let mut objs = Vec::with_capacity(x.num_objects());
    for o in x.objects() {
        objs.push(cm.object_of(p.obj(o), q.obj(o), theta.at(o)).ok_or_else(|| {
            FunctorError::ShapeMismatch(format!("2-cell component at {} is not a comma object", x.obj_name(o)))
        })?);
    }
    let mut mors = Vec::with_capacity(x.num_morphisms());
    for m in x.morphisms() {
        let (s, t) = (objs[x.src(m).idx()], objs[x.tgt(m).idx()]);
        mors.push(cm.morphism_of(s, t, p.mor(m), q.mor(m)).ok_or_else(|| {
            FunctorError::Naturality(x.mor_name(m).to_string())
        })?);
    }
    Functor::new_unchecked(p.dom.clone(), cm.total.clone(), objs, mors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{enumerate_functors, enumerate_nat_trans, SearchBudget};
    use proptest::prelude::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn opposite_examples() {
        let pt = terminal();
        assert_eq!(opposite(&pt), pt);
        let c2 = chain(2);
        assert_eq!(opposite(&opposite(&c2)), c2);
        let op1 = opposite(&chain(1));
        assert_eq!(op1.hom(ObjId(1), ObjId(0)).len(), 1);
        assert!(op1.hom(ObjId(0), ObjId(1)).is_empty());
    }

    #[test]
    fn coproduct_and_product_counts() {
        let c1 = arc(chain(1));
        let (s, _, _) = coproduct(&c1, &c1);
        assert_eq!((s.num_objects(), s.num_morphisms()), (4, 6));
        assert!(s.law_violations().is_empty());
        let (s, inl, _) = coproduct(&c1, &arc(empty()));
        assert_eq!(*s, *c1);
        assert!(inl.check_laws().is_ok());
        let (p, p1, p2) = product(&c1, &c1);
        assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
        assert!(p.law_violations().is_empty());
        assert!(p1.check_laws().is_ok() && p2.check_laws().is_ok());
    }

    #[test]
    fn comma_examples() {
        let pt = arc(terminal());
        let id_pt = Functor::identity(pt.clone());
        assert_eq!(comma_category(&id_pt, &id_pt).unwrap().total.num_objects(), 1);
        let c1 = arc(chain(1));
        let id1 = Functor::identity(c1.clone());
        let at1 = Functor::pick(pt.clone(), c1.clone(), ObjId(1));
        let sl = comma_category(&id1, &at1).unwrap();
        let names: Vec<&str> = sl.total.objects().map(|o| sl.total.obj_name(o)).collect();
        assert_eq!(names, ["(0,*,0<1)", "(1,*,id_1)"]);
        let arrow = comma_category(&id1, &id1).unwrap();
        assert_eq!(arrow.total.num_objects(), 3);
        assert!(arrow.total.law_violations().is_empty());
        assert!(arrow.pr1.check_laws().is_ok() && arrow.pr2.check_laws().is_ok());
        assert!(arrow.cell.check_naturality().is_ok());
        let other = arc(chain(2));
        assert!(comma_category(&id1, &Functor::identity(other)).is_err());
    }

    /// Every (functor pair + 2-cell) out of a test shape factors uniquely
    /// through the comma square.
    #[test]
    fn comma_universal_property() {
        let c1 = arc(chain(1));
        let v = arc(v_poset());
        let inputs: Vec<(Functor, Functor)> = {
            let alphas = enumerate_functors(&c1, &v, SearchBudget(1000)).unwrap();
            let pt = arc(terminal());
            let betas: Vec<Functor> = v.objects().map(|o| Functor::pick(pt.clone(), v.clone(), o)).collect();
            alphas.iter().flat_map(|a| betas.iter().map(move |b| (a.clone(), b.clone()))).collect()
        };
        let probe = arc(chain(1));
        for (alpha, beta) in inputs.iter().take(12) {
            let cm = comma_category(alpha, beta).unwrap();
            let ps = enumerate_functors(&probe, &alpha.dom, SearchBudget(1000)).unwrap();
            let qs = enumerate_functors(&probe, &beta.dom, SearchBudget(1000)).unwrap();
            let hs = enumerate_functors(&probe, &cm.total, SearchBudget(1000)).unwrap();
            for p in &ps {
                for q in &qs {
                    let ap = alpha.after(p).unwrap();
                    let bq = beta.after(q).unwrap();
                    for cell in enumerate_nat_trans(&ap, &bq, SearchBudget(1000)).unwrap() {
                        let n = hs
                            .iter()
                            .filter(|h| {
                                cm.pr1.after(h).unwrap() == *p
                                    && cm.pr2.after(h).unwrap() == *q
                                    && cm.cell.whisker_right(h).unwrap().components() == cell.components()
                            })
                            .count();
                        assert_eq!(n, 1);
                    }
                }
            }
        }
    }

    fn random_poset() -> impl Strategy<Value = FinCat> {
        (1usize..6, proptest::collection::vec(any::<bool>(), 25)).prop_map(|(n, bits)| {
            // relations i < j only for i < j, then transitive closure
            let mut r = vec![vec![false; n]; n];
            for i in 0..n {
                r[i][i] = true;
                for j in i + 1..n {
                    r[i][j] = bits[i * 5 + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if r[i][k] && r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            poset(&refs, |i, j| r[i][j])
        })
    }

    proptest! {
        #[test]
        fn opposite_is_an_involution(c in random_poset()) {
            prop_assert_eq!(opposite(&opposite(&c)), c);
        }

        #[test]
        fn constructions_satisfy_the_laws(c in random_poset(), d in random_poset()) {
            let (c, d) = (arc(c), arc(d));
            prop_assert!(opposite(&c).law_violations().is_empty());
            prop_assert!(product(&c, &d).0.law_violations().is_empty());
            prop_assert!(coproduct(&c, &d).0.law_violations().is_empty());
            let cm = comma_category(&Functor::identity(c.clone()), &Functor::identity(c.clone())).unwrap();
            prop_assert!(cm.total.law_violations().is_empty());
            prop_assert!(cm.cell.check_naturality().is_ok());
        }

        #[test]
        fn posets_admit_both_degrees(c in random_poset()) {
            let f = crate::fincat::classify_category(&c);
            prop_assert!(f.is_poset && f.admits_increasing_degree && f.admits_decreasing_degree);
        }
    }
}
