//! Finite categories given by explicit object/morphism sets and a total
//! composition table, together with functors, natural transformations,
//! the standard constructions and the brute-force searches the rest of the
//! workbench uses as oracles.

mod adjoint;
mod classify;
mod constructions;
mod fibration;
mod functor;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use adjoint::{
    check_adjunction, enumerate_functors, enumerate_functors_filtered, enumerate_nat_trans,
    enumerate_nat_trans_filtered, find_adjoint, find_nat_iso, AdjointSide, Adjunction,
    SearchBudget, SearchError, ADJOINT_BUDGET, FUNCTOR_BUDGET,
};
pub use classify::{
    classify_category, fiber_objects, functor_image_checks, is_connected,
    is_equivalence_of_categories, is_identity_rigid, is_isomorphism_of_categories, is_poset,
    nonidentity_cycle, ClassificationFlags, DegreeConvention, ImageChecks,
};
pub use constructions::{
    chain, comma_category, comma_factor, coproduct, discrete, empty, free_parallel_pair, lambda_poset,
    opposite, opposite_functor, opposite_nat_trans, poset, product, square_poset, terminal,
    v_poset, CommaCategory,
};
pub use fibration::{
    cartesian_lift, cocartesian_lift, fibration_check, is_cartesian, is_cocartesian,
    opfibration_check,
};
pub use functor::{Functor, FunctorError, NatTrans};

/// Index of an object inside one [`FinCat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

/// Index of a morphism inside one [`FinCat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// A finite category.
///
/// Identities are created automatically (named `id_<object>`), and the
/// composition table stores only pairs of non-identity morphisms; composites
/// with an identity are resolved on lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    is_identity: Vec<bool>,
    composition: HashMap<(MorId, MorId), MorId>,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
    out_mors: Vec<Vec<MorId>>,
    in_mors: Vec<Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

/// One violated category law, with the morphisms witnessing it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawViolation {
    #[error("MissingComposite: no composite recorded for {g} after {f}")]
    MissingComposite { g: String, f: String },
    #[error("AssociativityViolation: {h} o ({g} o {f}) = {left} but ({h} o {g}) o {f} = {right}")]
    AssociativityViolation {
        f: String,
        g: String,
        h: String,
        left: String,
        right: String,
    },
    #[error("IdentityLawViolation: composite involving identity and {f} is recorded as {got}")]
    IdentityLawViolation { f: String, got: String },
    #[error("CompositeTypeMismatch: {g} o {f} recorded as {h} with wrong source or target")]
    CompositeTypeMismatch { g: String, f: String, h: String },
    #[error("NotComposable: entry {g} o {f} but target of {f} is not the source of {g}")]
    NotComposable { g: String, f: String },
    #[error("ConflictingComposite: {g} o {f} recorded as both {first} and {second}")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("morphism name `{0}` is reserved for identities")]
    ReservedName(String),
    #[error("invalid name `{0}`: names must be non-empty and contain no whitespace")]
    InvalidName(String),
    #[error("{} law violation(s); first: {}", .0.len(), .0[0])]
    Laws(Vec<LawViolation>),
}

/// An unvalidated description of a category, by names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`, identities excluded.
    pub morphisms: Vec<(String, String, String)>,
    /// `(g, f, h)` meaning `g o f = h`.
    pub composition: Vec<(String, String, String)>,
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace)
}

/// Checks a raw description against every category law and returns the
/// validated category, or every violation found.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut b = FinCatBuilder::new();
    for o in &raw.objects {
        if !valid_name(o) {
            return Err(CategoryError::InvalidName(o.clone()));
        }
        if b.object_id(o).is_some() {
            return Err(CategoryError::DuplicateObject(o.clone()));
        }
        b.add_object(o.clone());
    }
    for (name, s, t) in &raw.morphisms {
        if !valid_name(name) {
            return Err(CategoryError::InvalidName(name.clone()));
        }
        if name.starts_with("id_") {
            return Err(CategoryError::ReservedName(name.clone()));
        }
        if b.morphism_id(name).is_some() {
            return Err(CategoryError::DuplicateMorphism(name.clone()));
        }
        let s = b
            .object_id(s)
            .ok_or_else(|| CategoryError::UnknownObject(s.clone()))?;
        let t = b
            .object_id(t)
            .ok_or_else(|| CategoryError::UnknownObject(t.clone()))?;
        b.add_morphism(name.clone(), s, t);
    }
    let mut violations = Vec::new();
    for (g, f, h) in &raw.composition {
        let lookup = |n: &String| {
            b.morphism_id(n)
                .ok_or_else(|| CategoryError::UnknownMorphism(n.clone()))
        };
        let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
        if b.tgt[fi.idx()] != b.src[gi.idx()] {
            violations.push(LawViolation::NotComposable {
                g: g.clone(),
                f: f.clone(),
            });
            continue;
        }
        if b.src[hi.idx()] != b.src[fi.idx()] || b.tgt[hi.idx()] != b.tgt[gi.idx()] {
            violations.push(LawViolation::CompositeTypeMismatch {
                g: g.clone(),
                f: f.clone(),
                h: h.clone(),
            });
            continue;
        }
        let g_id = b.is_identity[gi.idx()];
        let f_id = b.is_identity[fi.idx()];
        if g_id || f_id {
            let expected = if g_id { fi } else { gi };
            if hi != expected {
                violations.push(LawViolation::IdentityLawViolation {
                    f: b.mor_names[expected.idx()].clone(),
                    got: h.clone(),
                });
            }
            continue;
        }
        if let Some(prev) = b.composition.get(&(gi, fi)) {
            if *prev != hi {
                violations.push(LawViolation::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    first: b.mor_names[prev.idx()].clone(),
                    second: h.clone(),
                });
            }
            continue;
        }
        b.set_composite(gi, fi, hi);
    }
    if !violations.is_empty() {
        return Err(CategoryError::Laws(violations));
    }
    b.build()
}

/// Incremental, index-based construction of a [`FinCat`].
#[derive(Debug, Clone, Default)]
pub struct FinCatBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    is_identity: Vec<bool>,
    composition: HashMap<(MorId, MorId), MorId>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

impl FinCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    /// Adds an object and its identity morphism.
    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        let name = name.into();
        let id = ObjId(self.obj_names.len() as u32);
        let idm = MorId(self.mor_names.len() as u32);
        let id_name = identity_name(&name);
        self.mor_index.insert(id_name.clone(), idm);
        self.mor_names.push(id_name);
        self.src.push(id);
        self.tgt.push(id);
        self.is_identity.push(true);
        self.identity.push(idm);
        self.obj_index.insert(name.clone(), id);
        self.obj_names.push(name);
        id
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> MorId {
        let name = name.into();
        let id = MorId(self.mor_names.len() as u32);
        self.mor_index.insert(name.clone(), id);
        self.mor_names.push(name);
        self.src.push(src);
        self.tgt.push(tgt);
        self.is_identity.push(false);
        id
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o.idx()]
    }

    /// Records `g o f = h`. Pairs involving an identity are ignored.
    pub fn set_composite(&mut self, g: MorId, f: MorId, h: MorId) {
        if self.is_identity[g.idx()] || self.is_identity[f.idx()] {
            return;
        }
        self.composition.insert((g, f), h);
    }

    /// Validates every category law exhaustively.
    pub fn build(self) -> Result<FinCat, CategoryError> {
        let cat = self.build_unchecked();
        let violations = cat.law_violations();
        if violations.is_empty() {
            Ok(cat)
        } else {
            Err(CategoryError::Laws(violations))
        }
    }

    /// Assembles the category without checking the laws. Used by
    /// constructions that are correct by construction.
    pub fn build_unchecked(self) -> FinCat {
        let n = self.obj_names.len();
        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let mut out_mors = vec![Vec::new(); n];
        let mut in_mors = vec![Vec::new(); n];
        for m in 0..self.mor_names.len() {
            let (s, t) = (self.src[m], self.tgt[m]);
            let id = MorId(m as u32);
            hom.entry((s, t)).or_default().push(id);
            out_mors[s.idx()].push(id);
            in_mors[t.idx()].push(id);
        }
        FinCat {
            obj_names: self.obj_names,
            mor_names: self.mor_names,
            src: self.src,
            tgt: self.tgt,
            identity: self.identity,
            is_identity: self.is_identity,
            composition: self.composition,
            hom,
            out_mors,
            in_mors,
            obj_index: self.obj_index,
            mor_index: self.mor_index,
        }
    }
}

impl FinCat {
    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn num_non_identity(&self) -> usize {
        self.num_morphisms() - self.num_objects()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.obj_names.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.mor_names.len() as u32).map(MorId)
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |m| !self.is_identity[m.idx()])
    }

    pub fn obj_name(&self, o: ObjId) -> &str {
        &self.obj_names[o.idx()]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m.idx()]
    }

    pub fn obj_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    #[inline]
    pub fn src(&self, m: MorId) -> ObjId {
        self.src[m.idx()]
    }

    #[inline]
    pub fn tgt(&self, m: MorId) -> ObjId {
        self.tgt[m.idx()]
    }

    #[inline]
    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o.idx()]
    }

    #[inline]
    pub fn is_identity(&self, m: MorId) -> bool {
        self.is_identity[m.idx()]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_morphisms(&self, a: ObjId) -> &[MorId] {
        &self.out_mors[a.idx()]
    }

    pub fn in_morphisms(&self, a: ObjId) -> &[MorId] {
        &self.in_mors[a.idx()]
    }

    /// `g o f`, or `None` when the pair is not composable or the table has
    /// no entry.
    #[inline]
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.tgt[f.idx()] != self.src[g.idx()] {
            return None;
        }
        if self.is_identity[g.idx()] {
            return Some(f);
        }
        if self.is_identity[f.idx()] {
            return Some(g);
        }
        self.composition.get(&(g, f)).copied()
    }

    /// `g o f`. Panics on a non-composable pair.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite {} o {}",
                self.mor_name(g),
                self.mor_name(f)
            )
        })
    }

    /// Composes a path given in diagrammatic order (first morphism first) and
    /// starting at `start`.
    pub fn compose_path(&self, start: ObjId, path: &[MorId]) -> MorId {
        path.iter()
            .fold(self.identity(start), |acc, &m| self.compose(m, acc))
    }

    /// Inverse of `m`, if `m` is an isomorphism.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (s, t) = (self.src(m), self.tgt(m));
        self.hom(t, s).iter().copied().find(|&n| {
            self.try_compose(n, m) == Some(self.identity(s))
                && self.try_compose(m, n) == Some(self.identity(t))
        })
    }

    pub fn is_isomorphism(&self, m: MorId) -> bool {
        self.is_identity(m) || self.inverse(m).is_some()
    }

    /// The non-identity composition entries `(g, f, g o f)`, in canonical
    /// order.
    pub fn composition_entries(&self) -> Vec<(MorId, MorId, MorId)> {
        let mut v: Vec<_> = self
            .composition
            .iter()
            .map(|(&(g, f), &h)| (g, f, h))
            .collect();
        v.sort_unstable();
        v
    }

    /// Every violated law, checked exhaustively over composable pairs and
    /// triples.
    pub fn law_violations(&self) -> Vec<LawViolation> {
        let mut out = Vec::new();
        let name = |m: MorId| self.mor_names[m.idx()].clone();
        for (&(g, f), &h) in &self.composition {
            if self.tgt(f) != self.src(g) {
                out.push(LawViolation::NotComposable { g: name(g), f: name(f) });
            } else if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                out.push(LawViolation::CompositeTypeMismatch {
                    g: name(g),
                    f: name(f),
                    h: name(h),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in self.non_identity_morphisms() {
            for &g in self.out_morphisms(self.tgt(f)) {
                if self.is_identity(g) {
                    continue;
                }
                if self.try_compose(g, f).is_none() {
                    out.push(LawViolation::MissingComposite { g: name(g), f: name(f) });
                }
            }
        }
        if !out.is_empty() {
            out.sort_by_key(|v| v.to_string());
            return out;
        }
        for f in self.non_identity_morphisms() {
            for &g in self.out_morphisms(self.tgt(f)) {
                if self.is_identity(g) {
                    continue;
                }
                let gf = self.compose(g, f);
                for &h in self.out_morphisms(self.tgt(g)) {
                    if self.is_identity(h) {
                        continue;
                    }
                    let left = self.compose(h, gf);
                    let right = self.compose(self.compose(h, g), f);
                    if left != right {
                        out.push(LawViolation::AssociativityViolation {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                            left: name(left),
                            right: name(right),
                        });
                    }
                }
            }
        }
        out
    }

    /// Re-reads the category as a raw description (used for export and
    /// round-trip checks).
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.obj_names.clone(),
            morphisms: self
                .non_identity_morphisms()
                .map(|m| {
                    (
                        self.mor_name(m).to_string(),
                        self.obj_name(self.src(m)).to_string(),
                        self.obj_name(self.tgt(m)).to_string(),
                    )
                })
                .collect(),
            composition: self
                .composition_entries()
                .into_iter()
                .map(|(g, f, h)| {
                    (
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(h).to_string(),
                    )
                })
                .collect(),
        }
    }

    /// Full subcategory on the selected objects, with the inclusion's object
    /// and morphism maps.
    pub fn full_subcategory(&self, keep: &[ObjId]) -> (FinCat, Vec<ObjId>, Vec<MorId>) {
        let mut b = FinCatBuilder::new();
        let mut new_of = vec![None; self.num_objects()];
        for &o in keep {
            new_of[o.idx()] = Some(b.add_object(self.obj_name(o)));
        }
        let mut mor_new: HashMap<MorId, MorId> = HashMap::new();
        let mut mor_old = Vec::new();
        for &o in keep {
            mor_old.push(self.identity(o));
            mor_new.insert(self.identity(o), b.identity(new_of[o.idx()].unwrap()));
        }
        for m in self.non_identity_morphisms() {
            if let (Some(s), Some(t)) = (new_of[self.src(m).idx()], new_of[self.tgt(m).idx()]) {
                let nm = b.add_morphism(self.mor_name(m), s, t);
                mor_new.insert(m, nm);
                mor_old.push(m);
            }
        }
        for (&(g, f), &h) in &self.composition {
            if let (Some(&ng), Some(&nf), Some(&nh)) =
                (mor_new.get(&g), mor_new.get(&f), mor_new.get(&h))
            {
                b.set_composite(ng, nf, nh);
            }
        }
        let cat = b.build_unchecked();
        let mut mor_map = vec![MorId(0); cat.num_morphisms()];
        for (old, new) in mor_new {
            mor_map[new.idx()] = old;
        }
        let obj_map = keep.to_vec();
        (cat, obj_map, mor_map)
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}
