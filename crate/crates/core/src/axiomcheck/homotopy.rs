//! Equality of parallel morphisms after inverting everything.
//!
//! Positive answers come from saturating the commuting-triangle relations
//! `[f][g] = [g.f]` in a signed union-find over morphism classes. Negative
//! answers come from an additive invariant `phi` with `phi(f) + phi(g) =
//! phi(g.f)` separating the two morphisms, read off a diagonal form of the
//! triangle/edge incidence matrix.

use serde::Serialize;

use crate::fincat::{FinCat, MorId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyBudget {
    /// Saturation rounds.
    pub depth: usize,
    /// Cap on triangles times edges for the homology computation.
    pub max_cells: usize,
}

impl Default for HomotopyBudget {
    fn default() -> Self {
        HomotopyBudget { depth: 6, max_cells: 4_000_000 }
    }
}

/// `phi` is a functor into `Z` (modulus 0) or `Z/modulus`, given on every
/// morphism, with `phi(f) != phi(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyCertificate {
    pub modulus: i128,
    pub phi: Vec<i128>,
}

impl HomologyCertificate {
    fn reduce(&self, x: i128) -> i128 {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(self.modulus)
        }
    }

    pub fn check(&self, c: &FinCat, f: MorId, g: MorId) -> bool {
        for m in c.morphisms() {
            if c.is_identity(m) && self.reduce(self.phi[m.idx()]) != 0 {
                return false;
            }
        }
        for (g2, f2, h) in c.composition_entries() {
            if self.reduce(self.phi[f2.idx()] + self.phi[g2.idx()] - self.phi[h.idx()]) != 0 {
                return false;
            }
        }
        self.reduce(self.phi[f.idx()] - self.phi[g.idx()]) != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Homotopy {
    Equal { depth: usize, trace: Vec<String> },
    Distinct(HomologyCertificate),
    Inconclusive(String),
}

impl Homotopy {
    pub fn is_equal(&self) -> bool {
        matches!(self, Homotopy::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Homotopy::Distinct(_))
    }
}

/// A class reference: `None` is the unit, `Some((rep, sign))` is `rep^sign`.
type Term = Option<(usize, i8)>;

struct Classes {
    parent: Vec<usize>,
    // x = parent^sign
    sign: Vec<i8>,
    one: usize,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes { parent: (0..=n).collect(), sign: vec![1; n + 1], one: n }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        let p = self.parent[x];
        if p == x {
            return (x, 1);
        }
        let (r, s) = self.find(p);
        self.parent[x] = r;
        self.sign[x] *= s;
        (r, self.sign[x])
    }

    fn term(&mut self, x: usize, s: i8) -> Term {
        let (r, t) = self.find(x);
        if r == self.one {
            None
        } else {
            Some((r, s * t))
        }
    }

    /// Imposes `a^sa = b^sb` between roots; returns false if already known.
    fn union(&mut self, a: usize, sa: i8, b: usize, sb: i8) -> bool {
        let (ra, ta) = self.find(a);
        let (rb, tb) = self.find(b);
        if ra == rb {
            return false;
        }
        // ra^(ta*sa) = rb^(tb*sb)
        let s = ta * sa * tb * sb;
        if ra == self.one {
            self.parent[rb] = ra;
            self.sign[rb] = 1;
        } else {
            self.parent[ra] = rb;
            self.sign[ra] = s;
        }
        true
    }

    fn set_one(&mut self, a: usize) -> bool {
        let one = self.one;
        self.union(a, 1, one, 1)
    }
}

pub fn parallel_morphism_homotopy(c: &FinCat, f: MorId, g: MorId, budget: HomotopyBudget) -> Homotopy {
    assert!(c.src(f) == c.src(g) && c.tgt(f) == c.tgt(g), "morphisms are not parallel");
    if f == g {
        return Homotopy::Equal { depth: 0, trace: Vec::new() };
    }
    let triangles = c.composition_entries();
    if let Some(h) = saturate(c, f, g, &triangles, budget.depth) {
        return h;
    }
    let edges = c.num_morphisms();
    if triangles.len().saturating_mul(edges) > budget.max_cells {
        return Homotopy::Inconclusive(format!("{} triangles exceed the homology budget", triangles.len()));
    }
    match homology_certificate(c, f, g, &triangles) {
        Ok(Some(cert)) => Homotopy::Distinct(cert),
        Ok(None) => Homotopy::Inconclusive(format!(
            "not identified within depth {}; equal in first homology",
            budget.depth
        )),
        Err(e) => Homotopy::Inconclusive(e),
    }
}

fn saturate(c: &FinCat, f: MorId, g: MorId, triangles: &[(MorId, MorId, MorId)], depth: usize) -> Option<Homotopy> {
    let mut cl = Classes::new(c.num_morphisms());
    // a spanning forest trivialises the paths to each component's base point
    let mut comp: Vec<usize> = (0..c.num_objects()).collect();
    fn root(comp: &mut [usize], x: usize) -> usize {
        if comp[x] != x {
            comp[x] = root(comp, comp[x]);
        }
        comp[x]
    }
    for m in c.morphisms() {
        let (a, b) = (root(&mut comp, c.src(m).idx()), root(&mut comp, c.tgt(m).idx()));
        if c.is_identity(m) || a != b {
            comp[a] = b;
            cl.set_one(m.idx());
        }
    }
    let same = |cl: &mut Classes| cl.term(f.idx(), 1) == cl.term(g.idx(), 1);
    let mut trace = Vec::new();
    for round in 1..=depth {
        let mut changed = false;
        for &(g2, f2, h) in triangles {
            // [f2][g2][h]^-1 = 1, read cyclically
            let ts = [cl.term(f2.idx(), 1), cl.term(g2.idx(), 1), cl.term(h.idx(), -1)];
            let nontrivial: Vec<(usize, i8)> = ts.iter().flatten().copied().collect();
            let fact = match nontrivial.as_slice() {
                [(x, _)] => cl.set_one(*x).then(|| format!("{} = 1", c.mor_name(MorId(*x as u32)))),
                [(x, s), (y, t)] if x != y => {
                    // x^s y^t = 1, so x^s = y^-t
                    cl.union(*x, *s, *y, -*t).then(|| {
                        format!("{} ~ {}", c.mor_name(MorId(*x as u32)), c.mor_name(MorId(*y as u32)))
                    })
                }
                [a, b, d] => {
                    let pairs = [(a, b, d), (b, d, a), (d, a, b)];
                    let mut out = None;
                    for (p, q, r) in pairs {
                        if p.0 == q.0 && p.1 == -q.1 {
                            out = cl.set_one(r.0).then(|| format!("{} = 1", c.mor_name(MorId(r.0 as u32))));
                            break;
                        }
                    }
                    if out.is_none() && a.0 == b.0 && b.0 == d.0 && (a.1 + b.1 + d.1).abs() == 1 {
                        out = cl.set_one(a.0).then(|| format!("{} = 1", c.mor_name(MorId(a.0 as u32))));
                    }
                    out
                }
                _ => None,
            };
            if let Some(fact) = fact {
                changed = true;
                trace.push(format!(
                    "round {round}: {} . {} = {} gives {fact}",
                    c.mor_name(g2),
                    c.mor_name(f2),
                    c.mor_name(h)
                ));
                if same(&mut cl) {
                    return Some(Homotopy::Equal { depth: round, trace });
                }
            }
        }
        if !changed {
            break;
        }
    }
    None
}

fn checked(x: Option<i128>) -> Result<i128, String> {
    x.ok_or_else(|| "integer overflow in the homology computation".to_string())
}

/// Column-tracked diagonalisation of the triangle/edge matrix.
fn homology_certificate(
    c: &FinCat,
    f: MorId,
    g: MorId,
    triangles: &[(MorId, MorId, MorId)],
) -> Result<Option<HomologyCertificate>, String> {
    let cols: Vec<MorId> = c.non_identity_morphisms().collect();
    let col_of = |m: MorId| cols.iter().position(|&x| x == m);
    let n = cols.len();
    let mut d: Vec<Vec<i128>> = triangles
        .iter()
        .map(|&(g2, f2, h)| {
            let mut row = vec![0i128; n];
            for (m, s) in [(f2, 1), (g2, 1), (h, -1)] {
                if let Some(k) = col_of(m) {
                    row[k] += s;
                }
            }
            row
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut q: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let rows = d.len();
    let mut t = 0;
    while t < rows.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.map_or(true, |(bi, bj)| x.abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in q.iter_mut() {
            row.swap(t, pj);
        }
        let p = d[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let k = d[i][t] / p;
            if k != 0 {
                for j in t..n {
                    d[i][j] = checked(d[i][j].checked_sub(checked(k.checked_mul(d[t][j]))?))?;
                }
            }
            clean &= d[i][t] == 0;
        }
        for j in t + 1..n {
            let k = d[t][j] / p;
            if k != 0 {
                for i in t..rows {
                    d[i][j] = checked(d[i][j].checked_sub(checked(k.checked_mul(d[i][t]))?))?;
                }
                for row in q.iter_mut() {
                    row[j] = checked(row[j].checked_sub(checked(k.checked_mul(row[t]))?))?;
                }
            }
            clean &= d[t][j] == 0;
        }
        if clean {
            t += 1;
        }
    }
    let mut v = vec![0i128; n];
    if let Some(k) = col_of(f) {
        v[k] += 1;
    }
    if let Some(k) = col_of(g) {
        v[k] -= 1;
    }
    for k in 0..n {
        let dk = if k < rows { d[k][k].abs() } else { 0 };
        if dk == 1 {
            continue;
        }
        let mut ck = 0i128;
        for (i, &vi) in v.iter().enumerate() {
            ck = checked(ck.checked_add(checked(vi.checked_mul(q[i][k]))?))?;
        }
        let separates = if dk == 0 { ck != 0 } else { ck.rem_euclid(dk) != 0 };
        if separates {
            let mut phi = vec![0i128; c.num_morphisms()];
            for (i, &m) in cols.iter().enumerate() {
                phi[m.idx()] = if dk == 0 { q[i][k] } else { q[i][k].rem_euclid(dk) };
            }
            let cert = HomologyCertificate { modulus: dk, phi };
            if cert.check(c, f, g) {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, free_parallel_pair, FinCatBuilder};
    use crate::nerve::simplex_base;

    #[test]
    fn faces_of_the_point_are_identified() {
        let base = simplex_base(2);
        let c = &base.cat;
        let s = base.object(1, 0).unwrap();
        let e0 = base.morphism(s, 0b01).unwrap();
        let e1 = base.morphism(s, 0b10).unwrap();
        match parallel_morphism_homotopy(c, e0, e1, HomotopyBudget::default()) {
            Homotopy::Equal { depth, .. } => assert!(depth <= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_parallel_pairs_agree_up_to_level_three() {
        let c = &simplex_base(3).cat;
        for a in c.objects() {
            for b in c.objects() {
                let h = c.hom(a, b);
                for &f in h {
                    for &g in h {
                        let r = parallel_morphism_homotopy(c, f, g, HomotopyBudget::default());
                        assert!(r.is_equal(), "{} {}: {r:?}", c.mor_name(f), c.mor_name(g));
                    }
                }
            }
        }
    }

    #[test]
    fn without_two_simplices_the_faces_stay_apart() {
        let base = simplex_base(1);
        let s = base.object(1, 0).unwrap();
        let (e0, e1) = (base.morphism(s, 1).unwrap(), base.morphism(s, 2).unwrap());
        let h = parallel_morphism_homotopy(&base.cat, e0, e1, HomotopyBudget::default());
        assert!(h.is_distinct(), "{h:?}");
    }

    #[test]
    fn free_parallel_pair_is_distinct() {
        let c = free_parallel_pair();
        let (f, g) = (c.mor_by_name("f").unwrap(), c.mor_by_name("g").unwrap());
        match parallel_morphism_homotopy(&c, f, g, HomotopyBudget::default()) {
            Homotopy::Distinct(cert) => {
                assert_eq!(cert.modulus, 0);
                assert!(cert.check(&c, f, g));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn torsion_certificate() {
        // one object, e with e.e = id: the localisation is Z/2
        let mut b = FinCatBuilder::new();
        let x = b.add_object("x");
        let e = b.add_morphism("e", x, x);
        let id = b.identity(x);
        b.set_composite(e, e, id);
        let c = b.build().unwrap();
        match parallel_morphism_homotopy(&c, e, id, HomotopyBudget::default()) {
            Homotopy::Distinct(cert) => assert_eq!(cert.modulus, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn posets_identify_everything() {
        let c = chain(3);
        for a in c.objects() {
            for b in c.objects() {
                let h = c.hom(a, b);
                if h.len() == 1 {
                    assert!(parallel_morphism_homotopy(&c, h[0], h[0], HomotopyBudget::default()).is_equal());
                }
            }
        }
    }
}
