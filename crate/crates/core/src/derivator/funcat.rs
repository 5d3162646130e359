use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{
    enumerate_functors_filtered, enumerate_nat_trans, find_nat_iso, FinCat, FinCatBuilder, Functor, MorId,
    NatTrans, ObjId, SearchBudget,
};
use crate::nerve::NervePackage;

use super::target::TargetCategory;
use super::DerivatorError;

/// The morphisms of a total category that a projection sends to identities.
#[derive(Debug, Clone)]
pub struct CartesianMarking {
    pub pi: Functor,
    pub vertical: Vec<bool>,
}

impl CartesianMarking {
    pub fn of_functor(pi: &Functor) -> Self {
        let vertical = pi.dom.morphisms().map(|m| pi.cod.is_identity(pi.mor(m))).collect();
        CartesianMarking { pi: pi.clone(), vertical }
    }

    pub fn of_package(pkg: &NervePackage) -> Self {
        Self::of_functor(&pkg.pi)
    }

    pub fn total(&self) -> &Arc<FinCat> {
        &self.pi.dom
    }

    pub fn vertical_morphisms(&self) -> Vec<MorId> {
        self.pi.dom.morphisms().filter(|m| self.vertical[m.idx()]).collect()
    }

    /// Contains the identities and is closed under composition.
    pub fn is_closed(&self) -> bool {
        let c = &*self.pi.dom;
        c.objects().all(|o| self.vertical[c.identity(o).idx()])
            && c.composition_entries()
                .iter()
                .all(|&(g, f, h)| !(self.vertical[g.idx()] && self.vertical[f.idx()]) || self.vertical[h.idx()])
    }
}

/// Over a trivial base a Cartesian morphism is an isomorphism.
pub fn is_pi_cartesian(f: &Functor, marking: &CartesianMarking) -> bool {
    f.dom
        .morphisms()
        .all(|m| !marking.vertical[m.idx()] || f.cod.is_isomorphism(f.mor(m)))
}

pub fn budget_error(e: crate::fincat::SearchError) -> DerivatorError {
    DerivatorError::EnumerationBudget(e.to_string())
}

/// All functors `dom -> C`, optionally only the Cartesian ones.
pub fn enumerate_diagrams(
    dom: &Arc<FinCat>,
    target: &TargetCategory,
    marking: Option<&CartesianMarking>,
    budget: SearchBudget,
) -> Result<Vec<Functor>, DerivatorError> {
    let c = target.cat.clone();
    let vertical = marking.map(|m| m.vertical.clone());
    enumerate_functors_filtered(
        dom,
        &target.cat,
        &|_, _| true,
        &|m, img| vertical.as_ref().map_or(true, |v| !v[m.idx()] || c.is_isomorphism(img)),
        budget,
    )
    .map_err(budget_error)
}

type Key = (Vec<ObjId>, Vec<MorId>);

fn key(f: &Functor) -> Key {
    (f.obj_map().to_vec(), f.mor_map().to_vec())
}

/// A full subcategory of `Fun(dom, C)` on a chosen list of functors. Homs are
/// enumerated on demand; [`FunctorCategory::build`] materialises a `FinCat`.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub dom: Arc<FinCat>,
    pub target: TargetCategory,
    pub objects: Vec<Functor>,
    index: HashMap<Key, usize>,
    budget: SearchBudget,
}

impl FunctorCategory {
    pub fn new(dom: Arc<FinCat>, target: &TargetCategory, objects: Vec<Functor>, budget: SearchBudget) -> Self {
        let index = objects.iter().enumerate().map(|(i, f)| (key(f), i)).collect();
        FunctorCategory { dom, target: target.clone(), objects, index, budget }
    }

    pub fn all(dom: &Arc<FinCat>, target: &TargetCategory, budget: SearchBudget) -> Result<Self, DerivatorError> {
        Ok(Self::new(dom.clone(), target, enumerate_diagrams(dom, target, None, budget)?, budget))
    }

    pub fn cartesian(
        marking: &CartesianMarking,
        target: &TargetCategory,
        budget: SearchBudget,
    ) -> Result<Self, DerivatorError> {
        let dom = marking.total().clone();
        let objs = enumerate_diagrams(&dom, target, Some(marking), budget)?;
        Ok(Self::new(dom, target, objs, budget))
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, f: &Functor) -> Option<usize> {
        self.index.get(&key(f)).copied()
    }

    /// An object isomorphic to `f`; equal to `f` in poset targets.
    pub fn iso_representative(&self, f: &Functor) -> Result<Option<usize>, DerivatorError> {
        if let Some(i) = self.index_of(f) {
            return Ok(Some(i));
        }
        if self.target.is_poset() {
            return Ok(None);
        }
        for (i, g) in self.objects.iter().enumerate() {
            if find_nat_iso(f, g).map_err(budget_error)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn hom(&self, a: usize, b: usize) -> Result<Vec<NatTrans>, DerivatorError> {
        enumerate_nat_trans(&self.objects[a], &self.objects[b], self.budget).map_err(budget_error)
    }

    pub fn hom_count(&self, a: usize, b: usize) -> Result<usize, DerivatorError> {
        if self.target.is_poset() {
            let (f, g) = (&self.objects[a], &self.objects[b]);
            return Ok(self.dom.objects().all(|o| self.target.leq(f.obj(o), g.obj(o))) as usize);
        }
        Ok(self.hom(a, b)?.len())
    }

    /// The category itself, with one morphism per natural transformation.
    pub fn build(&self) -> Result<BuiltFunctorCategory, DerivatorError> {
        let tc = &*self.target.cat;
        let mut b = FinCatBuilder::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::with_capacity(self.len());
        for f in &self.objects {
            let base = format!(
                "({})",
                f.obj_map().iter().map(|&o| tc.obj_name(o)).collect::<Vec<_>>().join(",")
            );
            let n = seen.entry(base.clone()).or_insert(0);
            *n += 1;
            names.push(if *n == 1 { base } else { format!("{base}#{n}") });
            b.add_object(names.last().unwrap().clone());
        }
        let mut trans: Vec<Option<NatTrans>> = Vec::new();
        let put = |trans: &mut Vec<Option<NatTrans>>, m: MorId, t: NatTrans| {
            if trans.len() <= m.idx() {
                trans.resize(m.idx() + 1, None);
            }
            trans[m.idx()] = Some(t);
        };
        let mut trans_index: HashMap<(usize, usize, Vec<MorId>), MorId> = HashMap::new();
        let mut by_src: Vec<Vec<(usize, MorId)>> = vec![Vec::new(); self.len()];
        for a in 0..self.len() {
            let t = NatTrans::identity(&self.objects[a]);
            let id = b.identity(ObjId(a as u32));
            trans_index.insert((a, a, t.components().to_vec()), id);
            put(&mut trans, id, t);
        }
        for a in 0..self.len() {
            for c2 in 0..self.len() {
                for t in self.hom(a, c2)? {
                    if a == c2 && t.is_identity() {
                        continue;
                    }
                    let (sa, sc) = (ObjId(a as u32), ObjId(c2 as u32));
                    let name = format!(
                        "{}=>{}[{}]",
                        names[a],
                        names[c2],
                        t.components().iter().map(|&m| tc.mor_name(m)).collect::<Vec<_>>().join(",")
                    );
                    let m = b.add_morphism(name, sa, sc);
                    trans_index.insert((a, c2, t.components().to_vec()), m);
                    by_src[a].push((c2, m));
                    put(&mut trans, m, t);
                }
            }
        }
        let trans: Vec<NatTrans> = trans.into_iter().map(|t| t.expect("every morphism has a transformation")).collect();
        let mut entries = Vec::new();
        for a in 0..self.len() {
            for &(c2, f) in &by_src[a] {
                for &(d, g) in &by_src[c2] {
                    let h = trans[g.idx()].vcompose(&trans[f.idx()])?;
                    entries.push((g, f, trans_index[&(a, d, h.components().to_vec())]));
                }
            }
        }
        for (g, f, h) in entries {
            b.set_composite(g, f, h);
        }
        let cat = Arc::new(b.build_unchecked());
        Ok(BuiltFunctorCategory { cat, trans, trans_index })
    }
}

#[derive(Debug, Clone)]
pub struct BuiltFunctorCategory {
    pub cat: Arc<FinCat>,
    /// The transformation behind each morphism.
    pub trans: Vec<NatTrans>,
    trans_index: HashMap<(usize, usize, Vec<MorId>), MorId>,
}

impl BuiltFunctorCategory {
    pub fn morphism_of(&self, a: usize, b: usize, t: &NatTrans) -> Option<MorId> {
        self.trans_index.get(&(a, b, t.components().to_vec())).copied()
    }
}

/// A functor between materialised functor categories from object and
/// transformation maps.
pub fn induced_functor(
    src: (&FunctorCategory, &BuiltFunctorCategory),
    dst: (&FunctorCategory, &BuiltFunctorCategory),
    obj: &dyn Fn(&Functor) -> Result<Functor, DerivatorError>,
    mor: &dyn Fn(&NatTrans, &Functor, &Functor) -> Result<NatTrans, DerivatorError>,
) -> Result<Functor, DerivatorError> {
    let mut images = Vec::with_capacity(src.0.len());
    let mut objs = Vec::with_capacity(src.0.len());
    for f in &src.0.objects {
        let g = obj(f)?;
        let i = dst.0.index_of(&g).ok_or_else(|| DerivatorError::Outside(format!("{g:?}")))?;
        objs.push(ObjId(i as u32));
        images.push(g);
    }
    let c = &src.1.cat;
    let mut mors = Vec::with_capacity(c.num_morphisms());
    for m in c.morphisms() {
        let (a, b) = (c.src(m).idx(), c.tgt(m).idx());
        let t = mor(&src.1.trans[m.idx()], &images[a], &images[b])?;
        mors.push(
            dst.1
                .morphism_of(objs[a].idx(), objs[b].idx(), &t)
                .ok_or_else(|| DerivatorError::Outside("image transformation".into()))?,
        );
    }
    Ok(Functor::new(src.1.cat.clone(), dst.1.cat.clone(), objs, mors)?)
}

/// `k^*: Fun(Y, C) -> Fun(X, C)` between materialised categories.
pub fn precomposition(
    k: &Functor,
    src: (&FunctorCategory, &BuiltFunctorCategory),
    dst: (&FunctorCategory, &BuiltFunctorCategory),
) -> Result<Functor, DerivatorError> {
    induced_functor(src, dst, &|f| Ok(f.after(k)?), &|t, _, _| Ok(t.whisker_right(k)?))
}

/// Whether a functor is bijective on every hom-set.
pub fn is_fully_faithful(f: &Functor) -> bool {
    let (a, b) = (&*f.dom, &*f.cod);
    a.objects().all(|x| {
        a.objects().all(|y| {
            let h = a.hom(x, y);
            let img = b.hom(f.obj(x), f.obj(y));
            let mut seen: Vec<MorId> = h.iter().map(|&m| f.mor(m)).collect();
            seen.sort();
            seen.dedup();
            seen.len() == h.len() && h.len() == img.len()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::chain;
    use crate::nerve::{build_N, Mode, Truncation};

    fn span() -> NervePackage {
        build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact).unwrap()
    }

    fn values(pkg: &NervePackage, f: &Functor) -> Vec<String> {
        ["1:0<1", "0:0", "0:1"]
            .iter()
            .map(|n| f.cod.obj_name(f.obj(pkg.total.obj_by_name(n).unwrap())).to_string())
            .collect()
    }

    #[test]
    fn span_functors_and_cartesian_ones() {
        let pkg = span();
        let t = TargetCategory::two();
        let marking = CartesianMarking::of_package(&pkg);
        assert!(marking.is_closed());
        let vert: Vec<&str> = marking
            .vertical_morphisms()
            .into_iter()
            .filter(|&m| !pkg.total.is_identity(m))
            .map(|m| pkg.total.mor_name(m))
            .collect();
        assert_eq!(vert, ["1:0<1|0"]);
        let all = FunctorCategory::all(&pkg.total, &t, SearchBudget(1 << 20)).unwrap();
        assert_eq!(all.len(), 5);
        let cart = FunctorCategory::cartesian(&marking, &t, SearchBudget(1 << 20)).unwrap();
        assert_eq!(cart.len(), 3);
        for f in &all.objects {
            let v = values(&pkg, f);
            assert_eq!(is_pi_cartesian(f, &marking), v[0] == v[1]);
        }
        let built = all.build().unwrap();
        assert!(built.cat.law_violations().is_empty());
        let constant = all.objects.iter().position(|f| values(&pkg, f) == ["0", "0", "0"]).unwrap();
        assert_eq!(built.cat.out_morphisms(ObjId(constant as u32)).len(), 5);
    }

    #[test]
    fn precomposition_along_projection_is_fully_faithful() {
        let pkg = span();
        let t = TargetCategory::two();
        let b = SearchBudget(1 << 20);
        let base = FunctorCategory::all(&pkg.shape, &t, b).unwrap();
        let cart = FunctorCategory::cartesian(&CartesianMarking::of_package(&pkg), &t, b).unwrap();
        let (bb, cb) = (base.build().unwrap(), cart.build().unwrap());
        let p = precomposition(&pkg.pi, (&base, &bb), (&cart, &cb)).unwrap();
        assert!(is_fully_faithful(&p));
    }
}
