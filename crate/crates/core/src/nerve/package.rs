use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{opposite, FinCat, Functor, MorId, ObjId};

use super::grothendieck::{base_projection, grothendieck_total, mask_to_list, simplex_base, GrothendieckTotal};
use super::simplicial::{reduced_nerve, semisimplicial_nerve, Chain, NerveError, SemiSimplicialSet, Truncation};

/// Which of the four nerve constructions: full or reduced nerve, and whether
/// the total is `∫N°` with first-vertex projection (Dir) or its opposite
/// with last-vertex projection (Inv).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    DirFull,
    DirReduced,
    InvFull,
    InvReduced,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::DirFull, Mode::DirReduced, Mode::InvFull, Mode::InvReduced];

    pub fn is_dir(self) -> bool {
        matches!(self, Mode::DirFull | Mode::DirReduced)
    }

    pub fn is_reduced(self) -> bool {
        matches!(self, Mode::DirReduced | Mode::InvReduced)
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::DirFull => "DirFull",
            Mode::DirReduced => "DirReduced",
            Mode::InvFull => "InvFull",
            Mode::InvReduced => "InvReduced",
        }
    }

    /// Reduced modes on acyclic shapes are exact, full modes are truncated.
    pub fn default_truncation(self) -> Truncation {
        if self.is_reduced() {
            Truncation::Exact
        } else {
            Truncation::Level(3)
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown mode `{s}` (DirFull, DirReduced, InvFull, InvReduced)"))
    }
}

/// `N(I)` with `π_I`, the mode, truncation, and the projection to the
/// truncated simplex category.
#[derive(Debug, Clone)]
pub struct NervePackage {
    pub shape: Arc<FinCat>,
    pub mode: Mode,
    pub truncation: Truncation,
    pub nerve: SemiSimplicialSet,
    /// `∫N°(I)` before any opposite is taken; shares object and morphism ids
    /// with `total`.
    pub groth: GrothendieckTotal,
    pub total: Arc<FinCat>,
    pub pi: Functor,
    pub base: Arc<FinCat>,
    pub base_projection: Functor,
}

impl NervePackage {
    pub fn chain(&self, o: ObjId) -> &Chain {
        let (n, i) = self.groth.objects[o.idx()];
        &self.nerve.levels[n][i as usize]
    }

    pub fn dim(&self, o: ObjId) -> usize {
        self.groth.dim(o)
    }

    pub fn object_of(&self, ch: &Chain) -> Option<ObjId> {
        let i = self.nerve.index_of(ch)?;
        self.groth.object(ch.dim(), i)
    }

    /// `(Δ_0, i)`.
    pub fn vertex(&self, i: ObjId) -> ObjId {
        self.object_of(&Chain::vertex(i)).expect("vertex present")
    }

    pub fn is_vertical(&self, m: MorId) -> bool {
        self.shape.is_identity(self.pi.mor(m))
    }

    pub fn vertical_morphisms(&self) -> Vec<MorId> {
        self.total.morphisms().filter(|&m| self.is_vertical(m)).collect()
    }

    /// The `∫`-source of a morphism (its target in Inv modes).
    pub fn groth_src(&self, m: MorId) -> ObjId {
        self.groth.cat.src(m)
    }

    pub fn mask(&self, m: MorId) -> u32 {
        self.groth.masks[m.idx()]
    }

    pub fn vertex_label(&self, o: ObjId) -> String {
        self.chain(o).vertex_label(&self.shape)
    }
}

/// Builds `N(I)` for the mode.
#[allow(non_snake_case)]
pub fn build_N(shape: Arc<FinCat>, mode: Mode, truncation: Truncation) -> Result<NervePackage, NerveError> {
    let nerve = match (mode.is_reduced(), truncation) {
        (true, t) => reduced_nerve(&shape, t)?,
        (false, Truncation::Level(k)) => semisimplicial_nerve(&shape, k),
        (false, Truncation::Exact) => {
            if shape.num_objects() == 0 {
                semisimplicial_nerve(&shape, 0)
            } else {
                let o = shape.objects().next().unwrap();
                return Err(NerveError::ExactModeUnavailable {
                    reason: "the full nerve has identity chains in every dimension".into(),
                    cycle: vec![shape.mor_name(shape.identity(o)).to_string()],
                });
            }
        }
    };
    let groth = grothendieck_total(&nerve, &|n, i| nerve.levels[n][i as usize].label(&shape));
    let k = match truncation {
        Truncation::Level(k) => k,
        Truncation::Exact => nerve.top_dim(),
    };
    let base_g = simplex_base(k);
    let proj = base_projection(&groth, &base_g);
    let g = &groth.cat;
    let chain_of = |o: ObjId| {
        let (n, i) = groth.objects[o.idx()];
        &nerve.levels[n][i as usize]
    };
    let pi_obj: Vec<ObjId> = g
        .objects()
        .map(|o| {
            let ch = chain_of(o);
            if mode.is_dir() { ch.first_vertex() } else { ch.last_vertex(&shape) }
        })
        .collect();
    let pi_mor: Vec<MorId> = g
        .morphisms()
        .map(|m| {
            let ch = chain_of(g.src(m));
            let u = mask_to_list(groth.masks[m.idx()]);
            if mode.is_dir() {
                ch.span(&shape, 0, u[0])
            } else {
                ch.span(&shape, *u.last().unwrap(), ch.dim())
            }
        })
        .collect();
    let (total, base, bp_obj, bp_mor) = if mode.is_dir() {
        (g.clone(), base_g.cat.clone(), proj.obj_map().to_vec(), proj.mor_map().to_vec())
    } else {
        (
            Arc::new(opposite(g)),
            Arc::new(opposite(&base_g.cat)),
            proj.obj_map().to_vec(),
            proj.mor_map().to_vec(),
        )
    };
    let pi = Functor::new_unchecked(total.clone(), shape.clone(), pi_obj, pi_mor).unwrap();
    let base_projection = Functor::new_unchecked(total.clone(), base.clone(), bp_obj, bp_mor).unwrap();
    Ok(NervePackage { shape, mode, truncation, nerve, groth, total, pi, base, base_projection })
}

/// `N(alpha): N(I) -> N(J)`, applied chainwise. In reduced modes every image
/// simplex is checked for admissibility.
pub fn n_of_functor(alpha: &Functor, pi: &NervePackage, pj: &NervePackage) -> Result<Functor, NerveError> {
    let (i, j) = (&*alpha.dom, &*alpha.cod);
    let mut objs = Vec::with_capacity(pi.total.num_objects());
    for o in pi.total.objects() {
        let ch = pi.chain(o);
        let img = Chain { start: alpha.obj(ch.start), arrows: ch.arrows.iter().map(|&m| alpha.mor(m)).collect() };
        if pi.mode.is_reduced() && !img.is_reduced(j) {
            return Err(NerveError::AdmissibilityLoss { simplex: ch.vertex_label(i) });
        }
        objs.push(pj.object_of(&img).ok_or_else(|| NerveError::MissingSimplex(img.vertex_label(j)))?);
    }
    let mors: Vec<MorId> = pi
        .total
        .morphisms()
        .map(|m| {
            let s = objs[pi.groth_src(m).idx()];
            pj.groth.morphism(s, pi.mask(m)).expect("face structure is preserved")
        })
        .collect();
    let f = Functor::new_unchecked(pi.total.clone(), pj.total.clone(), objs, mors).unwrap();
    debug_assert_eq!(pj.pi.after(&f).unwrap().mor_map(), alpha.after(&pi.pi).unwrap().mor_map());
    Ok(f)
}

/// `N(alpha)` in a reduced mode for functors that send some non-identities to
/// identities: identity steps are deleted from each image chain and face
/// masks are pushed through the resulting vertex collapse.
pub fn n_of_functor_collapsing(alpha: &Functor, pi: &NervePackage, pj: &NervePackage) -> Result<Functor, NerveError> {
    if !pi.mode.is_reduced() {
        return n_of_functor(alpha, pi, pj);
    }
    let j = &*alpha.cod;
    let mut objs = Vec::with_capacity(pi.total.num_objects());
    // position of each source vertex in the collapsed chain
    let mut positions: Vec<Vec<usize>> = Vec::with_capacity(pi.total.num_objects());
    for o in pi.total.objects() {
        let ch = pi.chain(o);
        let mut arrows = Vec::new();
        let mut pos = vec![0];
        for &m in &ch.arrows {
            let a = alpha.mor(m);
            if !j.is_identity(a) {
                arrows.push(a);
            }
            pos.push(arrows.len());
        }
        let img = Chain { start: alpha.obj(ch.start), arrows };
        if !img.is_reduced(j) {
            return Err(NerveError::AdmissibilityLoss { simplex: ch.vertex_label(&alpha.dom) });
        }
        objs.push(pj.object_of(&img).ok_or_else(|| NerveError::MissingSimplex(img.vertex_label(j)))?);
        positions.push(pos);
    }
    let mut mors = Vec::with_capacity(pi.total.num_morphisms());
    for m in pi.total.morphisms() {
        let s = pi.groth_src(m);
        let mask = mask_to_list(pi.mask(m)).iter().fold(0u32, |acc, &k| acc | (1 << positions[s.idx()][k]));
        mors.push(pj.groth.morphism(objs[s.idx()], mask).expect("collapsed face"));
    }
    Functor::new(pi.total.clone(), pj.total.clone(), objs, mors).map_err(|e| NerveError::MissingSimplex(e.to_string()))
}

/// Builds both packages and `N(alpha)`.
pub fn n_on_functor(
    alpha: &Functor,
    mode: Mode,
    truncation: Truncation,
) -> Result<(NervePackage, NervePackage, Functor), NerveError> {
    let pi = build_N(alpha.dom.clone(), mode, truncation)?;
    let pj = build_N(alpha.cod.clone(), mode, truncation)?;
    let f = n_of_functor(alpha, &pi, &pj)?;
    Ok((pi, pj, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        chain, fibration_check, functor_image_checks, opfibration_check, terminal, v_poset,
    };

    fn pkg(c: FinCat, mode: Mode, t: Truncation) -> NervePackage {
        build_N(Arc::new(c), mode, t).unwrap()
    }

    #[test]
    fn collapsing_projection_of_a_square() {
        let i = Arc::new(chain(1));
        let (sq, p1, _) = crate::fincat::product(&i, &i);
        for mode in [Mode::DirReduced, Mode::InvReduced] {
            let ps = build_N(sq.clone(), mode, Truncation::Exact).unwrap();
            let pi = build_N(i.clone(), mode, Truncation::Exact).unwrap();
            assert!(matches!(n_of_functor(&p1, &ps, &pi), Err(NerveError::AdmissibilityLoss { .. })));
            let f = n_of_functor_collapsing(&p1, &ps, &pi).unwrap();
            assert_eq!(pi.pi.after(&f).unwrap().mor_map(), p1.after(&ps.pi).unwrap().mor_map());
        }
    }

    #[test]
    fn point_package() {
        let p = pkg(terminal(), Mode::DirReduced, Truncation::Exact);
        assert_eq!(p.total.num_morphisms(), 1);
        assert_eq!(p.pi.obj(ObjId(0)), ObjId(0));
    }

    #[test]
    fn interval_dir_and_inv() {
        let p = pkg(chain(1), Mode::DirReduced, Truncation::Exact);
        let e = p.total.obj_by_name("1:0<1").unwrap();
        let v0 = p.total.obj_by_name("0:0").unwrap();
        let v1 = p.total.obj_by_name("0:1").unwrap();
        assert_eq!(p.total.hom(e, v0).len(), 1);
        assert_eq!(p.total.hom(e, v1).len(), 1);
        assert_eq!(p.shape.obj_name(p.pi.obj(e)), "0");
        let q = pkg(chain(1), Mode::InvReduced, Truncation::Exact);
        let e = q.total.obj_by_name("1:0<1").unwrap();
        let v0 = q.total.obj_by_name("0:0").unwrap();
        assert_eq!(q.total.hom(v0, e).len(), 1);
        assert_eq!(q.shape.obj_name(q.pi.obj(e)), "1");
    }

    #[test]
    fn packages_are_valid() {
        for mode in Mode::ALL {
            let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
            for shape in [terminal(), chain(1), chain(2), v_poset()] {
                let p = pkg(shape, mode, t);
                assert!(p.total.law_violations().is_empty(), "{mode}");
                p.pi.check_laws().unwrap();
                p.base_projection.check_laws().unwrap();
                assert!(functor_image_checks(&p.pi).all(), "{mode}");
                if mode.is_dir() {
                    assert!(opfibration_check(&p.base_projection));
                } else {
                    assert!(fibration_check(&p.base_projection));
                }
                for m in p.total.non_identity_morphisms() {
                    let (s, t) = (p.dim(p.total.src(m)), p.dim(p.total.tgt(m)));
                    if mode.is_dir() { assert!(s > t) } else { assert!(s < t) }
                }
            }
        }
    }

    #[test]
    fn poset_nerve_counts_nonempty_chains() {
        for n in 0..4 {
            let p = pkg(chain(n), Mode::DirReduced, Truncation::Exact);
            assert_eq!(p.total.num_objects(), (1 << (n + 1)) - 1);
        }
    }

    #[test]
    fn truncations_are_nested_full_subcategories() {
        let small = pkg(chain(1), Mode::DirFull, Truncation::Level(1));
        let big = pkg(chain(1), Mode::DirFull, Truncation::Level(2));
        let keep: Vec<ObjId> = big.total.objects().filter(|&o| big.dim(o) <= 1).collect();
        let (sub, _, _) = big.total.full_subcategory(&keep);
        assert_eq!(sub, *small.total);
    }

    #[test]
    fn n_on_functors() {
        let c1 = Arc::new(chain(1));
        let pt = Arc::new(terminal());
        let inc = Functor::pick(pt.clone(), c1.clone(), ObjId(0));
        let (_, pj, f) = n_on_functor(&inc, Mode::DirReduced, Truncation::Exact).unwrap();
        assert_eq!(pj.total.obj_name(f.obj(ObjId(0))), "0:0");
        let collapse = Functor::constant(c1.clone(), pt.clone(), ObjId(0));
        let (pi, _, f) = n_on_functor(&collapse, Mode::DirFull, Truncation::Level(1)).unwrap();
        let e = pi.total.obj_by_name("1:0<1").unwrap();
        assert_eq!(f.cod.obj_name(f.obj(e)), "1:id_*");
        assert!(matches!(
            n_on_functor(&collapse, Mode::DirReduced, Truncation::Exact),
            Err(NerveError::AdmissibilityLoss { .. })
        ));
        let id = Functor::identity(c1.clone());
        let (_, _, f) = n_on_functor(&id, Mode::InvReduced, Truncation::Exact).unwrap();
        assert!(f.obj_map().iter().enumerate().all(|(i, o)| o.idx() == i));
    }
}
