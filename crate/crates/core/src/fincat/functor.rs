use std::sync::Arc;

use thiserror::Error;

use super::{FinCat, MorId, ObjId};

/// A strict functor between finite categories.
#[derive(Debug, Clone)]
pub struct Functor {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("functor does not preserve source/target of {0}")]
    Typing(String),
    #[error("functor does not preserve the identity of {0}")]
    Identity(String),
    #[error("functor does not preserve the composite {g} o {f}")]
    Composition { g: String, f: String },
    #[error("naturality fails at {0}")]
    Naturality(String),
}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for Functor {}

impl Functor {
    /// Builds a functor and checks every functor law.
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        let f = Self::new_unchecked(dom, cod, obj_map, mor_map)?;
        f.check_laws()?;
        Ok(f)
    }

    /// Builds a functor checking only table sizes.
    pub fn new_unchecked(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            return Err(FunctorError::ShapeMismatch(format!(
                "maps of sizes {}/{} for a domain with {}/{}",
                obj_map.len(),
                mor_map.len(),
                dom.num_objects(),
                dom.num_morphisms()
            )));
        }
        if obj_map.iter().any(|o| o.idx() >= cod.num_objects())
            || mor_map.iter().any(|m| m.idx() >= cod.num_morphisms())
        {
            return Err(FunctorError::ShapeMismatch("image out of range".into()));
        }
        Ok(Functor {
            dom,
            cod,
            obj_map,
            mor_map,
        })
    }

    pub fn check_laws(&self) -> Result<(), FunctorError> {
        let (d, c) = (&*self.dom, &*self.cod);
        for m in d.morphisms() {
            let fm = self.mor(m);
            if c.src(fm) != self.obj(d.src(m)) || c.tgt(fm) != self.obj(d.tgt(m)) {
                return Err(FunctorError::Typing(d.mor_name(m).into()));
            }
        }
        for o in d.objects() {
            if self.mor(d.identity(o)) != c.identity(self.obj(o)) {
                return Err(FunctorError::Identity(d.obj_name(o).into()));
            }
        }
        for (g, f, h) in d.composition_entries() {
            if c.compose(self.mor(g), self.mor(f)) != self.mor(h) {
                return Err(FunctorError::Composition {
                    g: d.mor_name(g).into(),
                    f: d.mor_name(f).into(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        Functor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    /// The constant functor at object `o`.
    pub fn constant(dom: Arc<FinCat>, cod: Arc<FinCat>, o: ObjId) -> Self {
        let idm = cod.identity(o);
        Functor {
            obj_map: vec![o; dom.num_objects()],
            mor_map: vec![idm; dom.num_morphisms()],
            dom,
            cod,
        }
    }

    /// The functor `pt -> cod` picking `o`; `pt` must be the terminal category.
    pub fn pick(pt: Arc<FinCat>, cod: Arc<FinCat>, o: ObjId) -> Self {
        assert_eq!(pt.num_objects(), 1);
        Self::constant(pt, cod, o)
    }

    #[inline]
    pub fn obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.idx()]
    }

    #[inline]
    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.idx()]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `self o first`.
    pub fn after(&self, first: &Functor) -> Result<Functor, FunctorError> {
        if !same_cat(&first.cod, &self.dom) {
            return Err(FunctorError::ShapeMismatch(
                "codomain of the first functor differs from domain of the second".into(),
            ));
        }
        Ok(Functor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj(o)).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        self.obj_map.iter().all(|o| !std::mem::replace(&mut seen[o.idx()], true))
    }
}

/// A natural transformation `dom => cod` between parallel functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub dom: Functor,
    pub cod: Functor,
    components: Vec<MorId>,
}

impl NatTrans {
    pub fn new(dom: Functor, cod: Functor, components: Vec<MorId>) -> Result<Self, FunctorError> {
        let t = Self::new_unchecked(dom, cod, components)?;
        t.check_naturality()?;
        Ok(t)
    }

    pub fn new_unchecked(
        dom: Functor,
        cod: Functor,
        components: Vec<MorId>,
    ) -> Result<Self, FunctorError> {
        if !same_cat(&dom.dom, &cod.dom) || !same_cat(&dom.cod, &cod.cod) {
            return Err(FunctorError::ShapeMismatch("functors are not parallel".into()));
        }
        if components.len() != dom.dom.num_objects() {
            return Err(FunctorError::ShapeMismatch("wrong number of components".into()));
        }
        Ok(NatTrans {
            dom,
            cod,
            components,
        })
    }

    pub fn check_naturality(&self) -> Result<(), FunctorError> {
        let (d, c) = (&*self.dom.dom, &*self.dom.cod);
        for o in d.objects() {
            let a = self.at(o);
            if c.src(a) != self.dom.obj(o) || c.tgt(a) != self.cod.obj(o) {
                return Err(FunctorError::Naturality(format!(
                    "component at {} is not typed F(x) -> G(x)",
                    d.obj_name(o)
                )));
            }
        }
        for m in d.non_identity_morphisms() {
            let (s, t) = (d.src(m), d.tgt(m));
            let left = c.compose(self.cod.mor(m), self.at(s));
            let right = c.compose(self.at(t), self.dom.mor(m));
            if left != right {
                return Err(FunctorError::Naturality(d.mor_name(m).into()));
            }
        }
        Ok(())
    }

    pub fn identity(f: &Functor) -> Self {
        NatTrans {
            components: f.dom.objects().map(|o| f.cod.identity(f.obj(o))).collect(),
            dom: f.clone(),
            cod: f.clone(),
        }
    }

    #[inline]
    pub fn at(&self, o: ObjId) -> MorId {
        self.components[o.idx()]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    /// Vertical composite `self . first`.
    pub fn vcompose(&self, first: &NatTrans) -> Result<NatTrans, FunctorError> {
        if first.cod != self.dom {
            return Err(FunctorError::ShapeMismatch("vertical composite of non-matching transformations".into()));
        }
        let c = &self.dom.cod;
        Ok(NatTrans {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(&a, &b)| c.compose(b, a))
                .collect(),
        })
    }

    /// Whiskering `H . self`.
    pub fn whisker_left(&self, h: &Functor) -> Result<NatTrans, FunctorError> {
        Ok(NatTrans {
            dom: h.after(&self.dom)?,
            cod: h.after(&self.cod)?,
            components: self.components.iter().map(|&m| h.mor(m)).collect(),
        })
    }

    /// Whiskering `self . K`.
    pub fn whisker_right(&self, k: &Functor) -> Result<NatTrans, FunctorError> {
        Ok(NatTrans {
            dom: self.dom.after(k)?,
            cod: self.cod.after(k)?,
            components: k.obj_map().iter().map(|&o| self.at(o)).collect(),
        })
    }

    pub fn is_iso(&self) -> bool {
        let c = &self.dom.cod;
        self.components.iter().all(|&m| c.is_isomorphism(m))
    }

    pub fn is_identity(&self) -> bool {
        let c = &self.dom.cod;
        self.components.iter().all(|&m| c.is_identity(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, terminal};

    #[test]
    fn collapse_is_a_functor() {
        let c1 = Arc::new(chain(1));
        let pt = Arc::new(terminal());
        let f = Functor::constant(c1.clone(), pt, ObjId(0));
        assert!(f.check_laws().is_ok());
    }

    #[test]
    fn bad_functor_rejected() {
        let c1 = Arc::new(chain(1));
        let arrow = c1.non_identity_morphisms().next().unwrap();
        // swap the objects but keep the arrow: typing breaks
        let r = Functor::new(
            c1.clone(),
            c1.clone(),
            vec![ObjId(1), ObjId(0)],
            c1.morphisms().map(|m| if m == arrow { arrow } else { c1.identity(ObjId(1 - c1.src(m).0)) }).collect(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn naturality_detects_wrong_square() {
        let c = Arc::new(crate::fincat::free_parallel_pair());
        let (a, b) = (c.obj_by_name("a").unwrap(), c.obj_by_name("b").unwrap());
        let f = c.mor_by_name("f").unwrap();
        let g = c.mor_by_name("g").unwrap();
        let id = Functor::identity(c.clone());
        let kb = Functor::constant(c.clone(), c.clone(), b);
        assert!(NatTrans::new(id.clone(), kb.clone(), vec![f, c.identity(b)]).is_err());
        assert!(NatTrans::new(id, kb, vec![g, c.identity(b)]).is_err());
        let _ = a;
    }
}
