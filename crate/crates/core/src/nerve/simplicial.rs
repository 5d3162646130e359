use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::fincat::{nonidentity_cycle, FinCat, MorId, ObjId};

/// Truncation level of a nerve: all simplices up to dimension `k`, or every
/// simplex (only finite for reduced nerves of acyclic shapes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Truncation {
    Level(usize),
    Exact,
}

impl std::fmt::Display for Truncation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Truncation::Level(k) => write!(f, "k={k}"),
            Truncation::Exact => write!(f, "exact"),
        }
    }
}

impl std::str::FromStr for Truncation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Truncation::Exact);
        }
        s.trim_start_matches("k=")
            .parse()
            .map(Truncation::Level)
            .map_err(|_| format!("invalid truncation `{s}` (expected a level or `exact`)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("ExactModeUnavailable: {reason}; cycle: {}", .cycle.join(" -> "))]
    ExactModeUnavailable { reason: String, cycle: Vec<String> },
    #[error("AdmissibilityLoss: the image of simplex {simplex} is not admissible")]
    AdmissibilityLoss { simplex: String },
    #[error("NoInitialObject: the shape has no {0} object")]
    NoExtremalObject(&'static str),
    #[error("TruncationTooSmall: {0}")]
    TruncationTooSmall(String),
    #[error("missing simplex {0} in the target nerve")]
    MissingSimplex(String),
}

/// An n-simplex of a nerve: a start object and `n` composable arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: ObjId,
    pub arrows: Vec<MorId>,
}

impl Chain {
    pub fn vertex(start: ObjId) -> Self {
        Chain { start, arrows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self, c: &FinCat) -> Vec<ObjId> {
        let mut v = vec![self.start];
        v.extend(self.arrows.iter().map(|&m| c.tgt(m)));
        v
    }

    pub fn first_vertex(&self) -> ObjId {
        self.start
    }

    pub fn last_vertex(&self, c: &FinCat) -> ObjId {
        self.arrows.last().map_or(self.start, |&m| c.tgt(m))
    }

    /// The i-th face.
    pub fn face(&self, c: &FinCat, i: usize) -> Chain {
        let n = self.dim();
        assert!(n >= 1 && i <= n);
        if i == 0 {
            Chain { start: c.tgt(self.arrows[0]), arrows: self.arrows[1..].to_vec() }
        } else if i == n {
            Chain { start: self.start, arrows: self.arrows[..n - 1].to_vec() }
        } else {
            let mut a = self.arrows[..i - 1].to_vec();
            a.push(c.compose(self.arrows[i], self.arrows[i - 1]));
            a.extend_from_slice(&self.arrows[i + 1..]);
            Chain { start: self.start, arrows: a }
        }
    }

    /// Composite of the arrows between vertex `a` and vertex `b` (`a <= b`).
    pub fn span(&self, c: &FinCat, a: usize, b: usize) -> MorId {
        c.compose_path(c_vertex(self, c, a), &self.arrows[a..b])
    }

    /// Every composite over a non-degenerate interval is a non-identity.
    pub fn is_reduced(&self, c: &FinCat) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            let mut acc = c.identity(c_vertex(self, c, a));
            (a..n).all(|b| {
                acc = c.compose(self.arrows[b], acc);
                !c.is_identity(acc)
            })
        })
    }

    pub fn label(&self, c: &FinCat) -> String {
        if self.arrows.is_empty() {
            c.obj_name(self.start).to_string()
        } else {
            self.arrows.iter().map(|&m| c.mor_name(m)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn vertex_label(&self, c: &FinCat) -> String {
        self.vertices(c).iter().map(|&o| c.obj_name(o)).collect::<Vec<_>>().join(",")
    }
}

fn c_vertex(ch: &Chain, c: &FinCat, a: usize) -> ObjId {
    if a == 0 {
        ch.start
    } else {
        c.tgt(ch.arrows[a - 1])
    }
}

/// A truncated semi-simplicial set presented by chains of a category, with
/// face tables.
#[derive(Debug, Clone)]
pub struct SemiSimplicialSet {
    pub levels: Vec<Vec<Chain>>,
    /// `faces[n][x][i]` is the index of `d_i x` in level `n - 1`.
    pub faces: Vec<Vec<Vec<u32>>>,
    pub reduced: bool,
    pub truncation: Truncation,
    index: Vec<HashMap<Chain, u32>>,
}

impl SemiSimplicialSet {
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn top_dim(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn index_of(&self, ch: &Chain) -> Option<u32> {
        self.index.get(ch.dim())?.get(ch).copied()
    }

    pub fn face(&self, n: usize, x: u32, i: usize) -> u32 {
        self.faces[n][x as usize][i]
    }

    /// `d_i d_j = d_{j-1} d_i` for `i < j`, at every level.
    pub fn check_simplicial_identities(&self) -> Result<(), String> {
        for n in 2..self.levels.len() {
            for x in 0..self.levels[n].len() as u32 {
                for j in 1..=n {
                    for i in 0..j {
                        let l = self.face(n - 1, self.face(n, x, j), i);
                        let r = self.face(n - 1, self.face(n, x, i), j - 1);
                        if l != r {
                            return Err(format!("d{i} d{j} != d{} d{i} at level {n}, simplex {x}", j - 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The restriction `u^* x` for an injective monotone `u: [m] -> [n]`
    /// given by its image bitmask.
    pub fn restrict(&self, n: usize, x: u32, mask: u32) -> u32 {
        let mut cur = x;
        let mut dim = n;
        for j in (0..=n).rev() {
            if mask & (1 << j) == 0 {
                cur = self.face(dim, cur, j);
                dim -= 1;
            }
        }
        cur
    }

    fn build(c: &FinCat, reduced: bool, max: Option<usize>, truncation: Truncation) -> Self {
        let mut levels: Vec<Vec<Chain>> = vec![c.objects().map(Chain::vertex).collect()];
        loop {
            let n = levels.len() - 1;
            if max.is_some_and(|k| n >= k) {
                break;
            }
            let mut next = Vec::new();
            for ch in &levels[n] {
                let last = ch.last_vertex(c);
                for &m in c.out_morphisms(last) {
                    if reduced && c.is_identity(m) {
                        continue;
                    }
                    let mut a = ch.arrows.clone();
                    a.push(m);
                    let ext = Chain { start: ch.start, arrows: a };
                    if reduced && !suffixes_nonidentity(&ext, c) {
                        continue;
                    }
                    next.push(ext);
                }
            }
            if next.is_empty() && max.is_none() {
                break;
            }
            levels.push(next);
        }
        let index: Vec<HashMap<Chain, u32>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, ch)| (ch.clone(), i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..levels.len() {
            let f: Vec<Vec<u32>> = levels[n]
                .iter()
                .map(|ch| (0..=n).map(|i| index[n - 1][&ch.face(c, i)]).collect())
                .collect();
            faces.push(f);
        }
        SemiSimplicialSet { levels, faces, reduced, truncation, index }
    }
}

fn suffixes_nonidentity(ch: &Chain, c: &FinCat) -> bool {
    // the prefix is already reduced; only intervals ending at the new vertex
    let n = ch.dim();
    let mut acc = c.identity(c.tgt(ch.arrows[n - 1]));
    for b in (0..n).rev() {
        acc = c.compose(acc, ch.arrows[b]);
        if c.is_identity(acc) {
            return false;
        }
    }
    true
}

/// The semi-simplicial nerve up to dimension `k`.
pub fn semisimplicial_nerve(c: &FinCat, k: usize) -> SemiSimplicialSet {
    SemiSimplicialSet::build(c, false, Some(k), Truncation::Level(k))
}

/// The reduced nerve: chains whose every interval composite is a
/// non-identity.
pub fn reduced_nerve(c: &FinCat, t: Truncation) -> Result<SemiSimplicialSet, NerveError> {
    match t {
        Truncation::Level(k) => Ok(SemiSimplicialSet::build(c, true, Some(k), t)),
        Truncation::Exact => {
            if let Some(cyc) = nonidentity_cycle(c) {
                return Err(NerveError::ExactModeUnavailable {
                    reason: "the non-identity digraph of the shape has a cycle".into(),
                    cycle: cyc.iter().map(|&m| c.mor_name(m).to_string()).collect(),
                });
            }
            Ok(SemiSimplicialSet::build(c, true, None, t))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, free_parallel_pair, terminal, v_poset, validate_category, RawCategory};

    #[test]
    fn full_nerve_levels() {
        assert_eq!(semisimplicial_nerve(&terminal(), 2).level_sizes(), [1, 1, 1]);
        assert_eq!(semisimplicial_nerve(&chain(1), 1).level_sizes(), [2, 3]);
        assert_eq!(semisimplicial_nerve(&chain(2), 2).level_sizes(), [3, 6, 10]);
    }

    #[test]
    fn reduced_nerve_levels() {
        let lv = |c: &FinCat| reduced_nerve(c, Truncation::Exact).unwrap().level_sizes();
        assert_eq!(lv(&terminal()), [1]);
        assert_eq!(lv(&chain(1)), [2, 1]);
        assert_eq!(lv(&chain(2)), [3, 3, 1]);
        assert_eq!(lv(&free_parallel_pair()), [2, 2]);
        assert_eq!(lv(&v_poset()), [3, 2]);
    }

    #[test]
    fn exact_mode_rejects_cycles() {
        let c = validate_category(&RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![("x".into(), "*".into(), "*".into())],
            composition: vec![("x".into(), "x".into(), "x".into())],
        })
        .unwrap();
        match reduced_nerve(&c, Truncation::Exact) {
            Err(NerveError::ExactModeUnavailable { cycle, .. }) => assert_eq!(cycle, ["x"]),
            other => panic!("unexpected {other:?}"),
        }
        // truncated reduced nerve still exists: x.x composes to x, not an identity
        assert_eq!(reduced_nerve(&c, Truncation::Level(2)).unwrap().level_sizes(), [1, 1, 1]);
    }

    #[test]
    fn simplicial_identities_hold() {
        for k in 0..4 {
            semisimplicial_nerve(&chain(2), k).check_simplicial_identities().unwrap();
        }
        reduced_nerve(&chain(3), Truncation::Exact).unwrap().check_simplicial_identities().unwrap();
    }

    #[test]
    fn reduced_levels_are_strict_chains() {
        // C(n+1, k+1) strictly increasing chains of length k in [n]
        let binom = |n: usize, k: usize| -> usize { (0..k).fold(1, |a, i| a * (n - i) / (i + 1)) };
        for n in 0..5 {
            let s = reduced_nerve(&chain(n), Truncation::Exact).unwrap();
            for (k, &sz) in s.level_sizes().iter().enumerate() {
                assert_eq!(sz, binom(n + 1, k + 1));
            }
        }
    }

    #[test]
    fn truncation_parses() {
        assert_eq!("exact".parse::<Truncation>().unwrap(), Truncation::Exact);
        assert_eq!("3".parse::<Truncation>().unwrap(), Truncation::Level(3));
        assert!("x".parse::<Truncation>().is_err());
    }
}
