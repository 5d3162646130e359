//! The acceptance battery behind `workbench suite`: one record per criterion,
//! each aggregating the individual checks it runs.

use std::sync::Arc;
use std::time::Instant;

use crate::axiomcheck::{
    parallel_morphism_homotopy, HomotopyBudget, ReportBuilder, VerificationReport, Verdict,
};
use crate::derivator::{
    closure_monad, closure_operators, coslice_projection, enlargement_E, fder3_fder4_check, idempotent_monad_adjoint,
    left_right_comparison, opfib_fiberwise_check, projector_oracle_check, projector_pullback_commutation,
    restriction_equivalence_check, DerivatorError, FunctorCategory, TargetCategory,
};
use crate::fincat::{
    chain, enumerate_functors, free_parallel_pair, lambda_poset, product, square_poset, terminal, v_poset, FinCat,
    Functor, ObjId, SearchBudget,
};
use crate::nerve::{build_N, simplex_base, Mode, Truncation};

use super::axiom_reports;

fn shape_suite() -> Vec<Arc<FinCat>> {
    [chain(0), chain(1), chain(2), chain(3), v_poset(), lambda_poset(), square_poset()]
        .into_iter()
        .map(Arc::new)
        .collect()
}

/// Folds sub-reports into `b`; a failing sub-check becomes a witness.
fn absorb(b: &mut ReportBuilder, r: Result<VerificationReport, DerivatorError>, must_pass: bool) {
    match r {
        Err(e) => b.fail(e.to_string()),
        Ok(r) => match r.verdict {
            Verdict::Fail => {
                for w in &r.witnesses {
                    b.fail(format!("{} {}: {w}", r.check, r.instance));
                }
                if r.witnesses.is_empty() {
                    b.fail(format!("{} {}", r.check, r.instance));
                }
            }
            Verdict::Inconclusive if must_pass => {
                b.fail(format!("{} {}: inconclusive ({})", r.check, r.instance, r.notes.join("; ")))
            }
            _ => {}
        },
    }
}

fn timed(b: &mut ReportBuilder, started: Instant, limit_s: f64) {
    let s = started.elapsed().as_secs_f64();
    b.note(format!("{s:.2} s of {limit_s} s"));
    b.require(s < limit_s, || format!("took {s:.2} s, limit {limit_s} s"));
}

fn nerve_counts() -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-1", "nerve counts of [0]..[3]");
    let t0 = Instant::now();
    for n in 0..=3usize {
        match build_N(Arc::new(chain(n)), Mode::DirReduced, Truncation::Exact) {
            Err(e) => b.fail(e.to_string()),
            Ok(p) => {
                // a nonempty subchain S has 2^|S| - 2 proper nonempty faces
                let pairs: usize = (1..(1usize << (n + 1))).map(|s| (1usize << (s as u32).count_ones()) - 2).sum();
                let (objs, mors) = (p.total.num_objects(), p.total.num_non_identity());
                b.note(format!("[{n}]: {objs} objects, {mors} morphisms"));
                b.require(objs == (1 << (n + 1)) - 1, || format!("[{n}]: {objs} objects"));
                b.require(mors == pairs, || format!("[{n}]: {mors} morphisms, expected {pairs}"));
            }
        }
    }
    timed(&mut b, t0, 1.0);
    b.finish()
}

fn axiom_suite(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-2", "N1-N4 on the shape suite, N5 on [1], [2], V");
    let t0 = Instant::now();
    let two = TargetCategory::two();
    let mut counts = [0usize; 3];
    for mode in Mode::ALL {
        // full nerves are infinite; their checks hold up to the level
        let t = if mode.is_reduced() { Truncation::Exact } else { Truncation::Level(2) };
        for shape in shape_suite() {
            for r in axiom_reports(&shape, mode, t, &two, budget) {
                if r.check.starts_with("N5") {
                    continue;
                }
                counts[r.verdict as usize] += 1;
                absorb(&mut b, Ok(r), mode.is_reduced());
            }
        }
    }
    b.note(format!("N1-N4: {} pass, {} fail, {} truncation-limited", counts[0], counts[1], counts[2]));
    let n5 = [
        (chain(1), vec![Mode::DirReduced, Mode::InvReduced]),
        (chain(2), vec![Mode::DirReduced, Mode::InvReduced]),
        // V has a final object only
        (v_poset(), vec![Mode::InvReduced]),
    ];
    for (shape, modes) in n5 {
        let shape = Arc::new(shape);
        for mode in modes {
            absorb(&mut b, Ok(crate::axiomcheck::verify_n5_zigzag(&shape, mode, Truncation::Exact, &two, budget)), true);
        }
    }
    timed(&mut b, t0, 30.0);
    b.finish()
}

fn homotopy() -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-3", "parallel faces in the point nerve, free parallel pair");
    let t0 = Instant::now();
    let base = simplex_base(2);
    let s = base.object(1, 0).expect("the 1-simplex");
    let (e0, e1) = (base.morphism(s, 0b01).unwrap(), base.morphism(s, 0b10).unwrap());
    let h = parallel_morphism_homotopy(&base.cat, e0, e1, HomotopyBudget { depth: 3, ..Default::default() });
    b.require(h.is_equal(), || format!("e0, e1: {h:?}"));
    let c = free_parallel_pair();
    let (f, g) = (c.mor_by_name("f").unwrap(), c.mor_by_name("g").unwrap());
    match parallel_morphism_homotopy(&c, f, g, HomotopyBudget::default()) {
        crate::axiomcheck::Homotopy::Distinct(cert) => {
            b.require(cert.check(&c, f, g), || "certificate does not separate f and g".into());
            b.note(format!("phi = {:?} mod {}", cert.phi, cert.modulus));
        }
        other => b.fail(format!("f, g: {other:?}")),
    }
    timed(&mut b, t0, 1.0);
    b.finish()
}

fn projectors(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-4", "projectors on Fun(N([1]), 2)");
    let t0 = Instant::now();
    match build_N(Arc::new(chain(1)), Mode::DirReduced, Truncation::Exact) {
        Err(e) => b.fail(e.to_string()),
        Ok(p) => {
            let r = projector_oracle_check(&p, &TargetCategory::two(), budget);
            if let Ok(r) = &r {
                for n in &r.notes {
                    b.note(n.clone());
                }
            }
            absorb(&mut b, r, true);
        }
    }
    timed(&mut b, t0, 1.0);
    b.finish()
}

fn monads() -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-5", "closure operators on [2] and [3]");
    let t0 = Instant::now();
    for n in [2, 3] {
        let ops = closure_operators(n);
        b.note(format!("[{n}]: {} closure operators", ops.len()));
        for cl in ops {
            match idempotent_monad_adjoint(&closure_monad(n, &cl)) {
                Ok(a) => {
                    b.require(a.ut_equals_tu, || format!("{cl:?}: uT != Tu"));
                    b.require(a.adjunction.check() == Ok(true), || format!("{cl:?}: triangle identities"));
                }
                Err(v) => b.fail(format!("{cl:?}: {:?} {}", v.hypothesis, v.witness)),
            }
        }
    }
    timed(&mut b, t0, 5.0);
    b.finish()
}

fn enlargements(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-6", "E(J) against Fun(J, 2), DirReduced");
    let t0 = Instant::now();
    let two = TargetCategory::two();
    let shapes = [chain(0), chain(1), chain(2), chain(3), v_poset(), lambda_poset()];
    for j in shapes.into_iter().map(Arc::new) {
        let label = crate::axiomcheck::shape_label(&j);
        let plain = FunctorCategory::all(&j, &two, budget).map(|f| f.len());
        let e = enlargement_E(&j, &two, Mode::DirReduced, Truncation::Exact, budget).map(|e| e.num_objects());
        match (plain, e) {
            (Ok(a), Ok(e)) => {
                b.note(format!("{label}: {a} diagrams, |E| = {e}"));
                b.require(a == e, || format!("{label}: {a} diagrams but |E| = {e}"));
            }
            (Err(x), _) | (_, Err(x)) => b.fail(format!("{label}: {x}")),
        }
        absorb(&mut b, restriction_equivalence_check(&j, &two, Mode::DirReduced, budget), true);
    }
    timed(&mut b, t0, 60.0);
    b.finish()
}

/// `[1] -> pt`, `pt -> [1]` and the injections `[1] -> [2]`.
pub(crate) fn small_functors(budget: SearchBudget) -> Vec<Functor> {
    let (i0, i1, i2) = (Arc::new(terminal()), Arc::new(chain(1)), Arc::new(chain(2)));
    let mut out = vec![Functor::constant(i1.clone(), i0.clone(), ObjId(0)), Functor::pick(i0, i1.clone(), ObjId(0))];
    out.extend(
        enumerate_functors(&i1, &i2, budget).unwrap_or_default().into_iter().filter(Functor::is_injective_on_objects),
    );
    out
}

fn fder(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-7", "E(alpha)! by adjunction and by comma colimits");
    let t0 = Instant::now();
    let alphas = small_functors(budget);
    b.require(alphas.len() == 5, || format!("{} functors instead of 5", alphas.len()));
    for alpha in &alphas {
        absorb(&mut b, fder3_fder4_check(alpha, &TargetCategory::two(), Mode::DirReduced, Truncation::Exact, budget), true);
    }
    timed(&mut b, t0, 30.0);
    b.finish()
}

fn left_right(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-8", "InvReduced against DirReduced on pt, [1], [2], V");
    let t0 = Instant::now();
    for i in [terminal(), chain(1), chain(2), v_poset()] {
        let r = left_right_comparison(&Arc::new(i), &TargetCategory::two(), budget);
        if let Ok(r) = &r {
            b.note(r.notes[0].clone());
        }
        absorb(&mut b, r, true);
    }
    timed(&mut b, t0, 60.0);
    b.finish()
}

fn opfibrations(budget: SearchBudget) -> VerificationReport {
    let mut b = ReportBuilder::new("criterion-9", "coslice projections of [1], [2] and pr2 on [1]x[1]");
    let t0 = Instant::now();
    let two = TargetCategory::two();
    let mut alphas = Vec::new();
    for n in 1..=2 {
        let c = Arc::new(chain(n));
        alphas.extend(c.objects().map(|i| coslice_projection(&c, i).pr2));
    }
    let i1 = Arc::new(chain(1));
    alphas.push(product(&i1, &i1).2);
    for alpha in &alphas {
        match FunctorCategory::all(&alpha.dom, &two, budget) {
            Err(e) => b.fail(e.to_string()),
            Ok(fc) => {
                for f in &fc.objects {
                    absorb(&mut b, opfib_fiberwise_check(alpha, f, &two), true);
                }
            }
        }
        for mode in [Mode::DirReduced, Mode::InvReduced] {
            absorb(&mut b, projector_pullback_commutation(alpha, &two, mode, budget), true);
        }
    }
    b.note(format!("{} opfibrations", alphas.len()));
    timed(&mut b, t0, 10.0);
    b.finish()
}

pub fn acceptance_battery(budget: SearchBudget) -> Vec<VerificationReport> {
    [
        nerve_counts(),
        axiom_suite(budget),
        homotopy(),
        projectors(budget),
        monads(),
        enlargements(budget),
        fder(budget),
        left_right(budget),
        opfibrations(budget),
    ]
    .into()
}
