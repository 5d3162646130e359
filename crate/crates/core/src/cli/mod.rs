//! File formats, exports and the command surface of the `workbench` binary.
//!
//! Every command writes human-readable output to the given sink and returns
//! its exit code: 0 all pass, 1 some fail, 2 some inconclusive and none
//! failed, 3 bad input.

pub mod dot;
pub mod format;
pub mod report;
mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::axiomcheck::{
    in_dia_prime, shape_label, verify_n1, verify_n2, verify_n3, verify_n3_projection, verify_n4,
    verify_n5_zigzag, ReportBuilder, Settings, Side, VerificationReport,
};
use crate::derivator::{
    coslice_projection, enlargement_E, fder3_fder4_check, left_right_comparison, restriction_equivalence_check,
    slice_projection, transport_equivalence_check, DerivatorError, TargetCategory,
};
use crate::fincat::{
    chain, classify_category, is_poset, nonidentity_cycle, terminal, CategoryError, FinCat, Functor, SearchBudget,
};
use crate::nerve::{build_N, final_object, initial_object, Mode, Truncation};

pub use format::{CategoryFile, FunctorBlock, ParseError};
pub use report::{SuiteRecord, SuiteReport, SuiteSummary, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_PASS};
pub use suite::acceptance_battery;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Category { path: String, source: CategoryError },
    #[error("{0}")]
    Usage(String),
}

/// A category read from disk with the functors listed in the file.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub file: CategoryFile,
    pub cat: Arc<FinCat>,
    /// A block that does not resolve to a functor keeps its error.
    pub functors: Vec<(String, Result<Functor, String>)>,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

fn parse_file(path: &Path) -> Result<CategoryFile, InputError> {
    CategoryFile::parse(&read(path)?).map_err(|source| InputError::Parse { path: path.display().to_string(), source })
}

pub fn load_category(path: &Path) -> Result<Loaded, InputError> {
    let file = parse_file(path)?;
    let cat = Arc::new(
        file.validate()
            .map_err(|source| InputError::Category { path: path.display().to_string(), source })?,
    );
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut functors = Vec::new();
    for fb in &file.functors {
        let cod = if fb.codomain == "self" {
            cat.clone()
        } else {
            let p = dir.join(&fb.codomain);
            let cf = parse_file(&p)?;
            Arc::new(cf.validate().map_err(|source| InputError::Category { path: p.display().to_string(), source })?)
        };
        functors.push((fb.name.clone(), fb.resolve(&cat, &cod)));
    }
    Ok(Loaded { path: path.to_path_buf(), file, cat, functors })
}

/// `2`, `[n]` or the path of a category file.
pub fn load_target(spec: &str) -> Result<TargetCategory, InputError> {
    if spec == "2" {
        return Ok(TargetCategory::two());
    }
    if let Some(n) = spec.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let n = n.parse().map_err(|_| InputError::Usage(format!("bad target `{spec}`")))?;
        return Ok(TargetCategory::chain_lattice(n));
    }
    let l = load_category(Path::new(spec))?;
    let name = l.path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok(TargetCategory::new(name, l.cat))
}

/// Options shared by the commands; `None` picks the default.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub mode: Option<Mode>,
    pub truncation: Option<Truncation>,
    pub target: Option<String>,
    pub out: Option<PathBuf>,
    pub budget: Option<u64>,
    pub report: Option<PathBuf>,
}

impl Options {
    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::DirReduced)
    }

    /// Exact for reduced modes on acyclic shapes, `k=3` otherwise.
    pub fn truncation(&self, shape: &FinCat) -> Truncation {
        self.truncation.unwrap_or_else(|| {
            let m = self.mode();
            if m.is_reduced() && nonidentity_cycle(shape).is_some() {
                Truncation::Level(3)
            } else {
                m.default_truncation()
            }
        })
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget.map_or_else(SearchBudget::functors, SearchBudget)
    }

    pub fn target(&self) -> Result<TargetCategory, InputError> {
        load_target(self.target.as_deref().unwrap_or("2"))
    }
}

fn input_error(out: &mut dyn Write, e: &InputError) -> i32 {
    writeln!(out, "error: {e}").ok();
    EXIT_INPUT
}

fn finish_suite(reports: &[VerificationReport], opts: &Options, out: &mut dyn Write) -> i32 {
    let suite = SuiteReport::new(reports);
    write!(out, "{}", suite.render()).ok();
    if let Some(p) = &opts.report {
        if let Err(source) = fs::write(p, suite.to_json()) {
            return input_error(out, &InputError::Io { path: p.display().to_string(), source });
        }
    }
    suite.exit_code()
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write) -> i32 {
    let file = match parse_file(path) {
        Ok(f) => f,
        Err(e) => return input_error(out, &e),
    };
    let laws = ["composition", "associativity", "identity"];
    let law_of = |v: &crate::fincat::LawViolation| {
        use crate::fincat::LawViolation::*;
        match v {
            AssociativityViolation { .. } => 1,
            IdentityLawViolation { .. } => 2,
            _ => 0,
        }
    };
    match file.validate() {
        Ok(c) => {
            writeln!(out, "{}: {} objects, {} morphisms", path.display(), c.num_objects(), c.num_morphisms()).ok();
            for l in laws {
                writeln!(out, "{l}: ok").ok();
            }
            EXIT_PASS
        }
        Err(CategoryError::Laws(vs)) => {
            for (i, l) in laws.iter().enumerate() {
                let mine: Vec<_> = vs.iter().filter(|v| law_of(v) == i).collect();
                writeln!(out, "{l}: {}", if mine.is_empty() { "ok" } else { "FAIL" }).ok();
                for v in mine {
                    writeln!(out, "  {v}").ok();
                }
            }
            EXIT_FAIL
        }
        Err(source) => input_error(out, &InputError::Category { path: path.display().to_string(), source }),
    }
}

/// With `--out DIR`, writes `DIR/shape.fincat`, `DIR/total.fincat` (carrying
/// the projection as a functor block) and `DIR/total.dot`.
pub fn cmd_nerve(path: &Path, opts: &Options, out: &mut dyn Write) -> i32 {
    let l = match load_category(path) {
        Ok(l) => l,
        Err(e) => return input_error(out, &e),
    };
    let (mode, t) = (opts.mode(), opts.truncation(&l.cat));
    let pkg = match build_N(l.cat.clone(), mode, t) {
        Ok(p) => p,
        Err(e) => {
            writeln!(out, "error: {e}").ok();
            return EXIT_FAIL;
        }
    };
    writeln!(out, "N({}) {mode} {t}", shape_label(&l.cat)).ok();
    for (n, k) in pkg.nerve.level_sizes().iter().enumerate() {
        writeln!(out, "level {n}: {k} simplices").ok();
    }
    writeln!(
        out,
        "total: {} objects, {} non-identity morphisms ({} vertical)",
        pkg.total.num_objects(),
        pkg.total.num_non_identity(),
        pkg.vertical_morphisms().iter().filter(|&&m| !pkg.total.is_identity(m)).count()
    )
    .ok();
    if let Some(dir) = &opts.out {
        let mut total = CategoryFile::of_category(&pkg.total);
        total.functors.push(FunctorBlock::of_functor("pi", "shape.fincat", &pkg.pi));
        let files = [
            ("shape.fincat", CategoryFile::of_category(&l.cat).export()),
            ("total.fincat", total.export()),
            ("total.dot", dot::nerve_dot(&pkg)),
        ];
        for (name, text) in files {
            let p = dir.join(name);
            if let Err(source) = fs::create_dir_all(dir).and_then(|_| fs::write(&p, text)) {
                return input_error(out, &InputError::Io { path: p.display().to_string(), source });
            }
            writeln!(out, "wrote {}", p.display()).ok();
        }
    }
    EXIT_PASS
}

fn relabel(mut r: VerificationReport, prefix: &str) -> VerificationReport {
    r.instance = format!("{prefix} {}", r.instance);
    r
}

fn fail_report(check: &str, instance: String, e: impl std::fmt::Display) -> VerificationReport {
    fail_in_mode(ReportBuilder::new(check, instance), e)
}

fn fail_in_mode(mut b: ReportBuilder, e: impl std::fmt::Display) -> VerificationReport {
    b.fail(e.to_string());
    b.finish()
}

/// N1 to N5 on one shape, N4 over its slice and coslice projections.
pub fn axiom_reports(
    shape: &Arc<FinCat>,
    mode: Mode,
    t: Truncation,
    target: &TargetCategory,
    budget: SearchBudget,
) -> Vec<VerificationReport> {
    let s = Settings::default();
    let pt = Arc::new(terminal());
    let mut reports = vec![
        verify_n1(shape, mode, t, &s),
        verify_n2(shape, &pt, mode, t),
        verify_n2(shape, shape, mode, t),
        verify_n3(shape, mode, t),
    ];
    let side = Side::compatible(mode);
    for x in shape.objects() {
        let name = shape.obj_name(x);
        let projections = [
            (format!("{name}/I"), coslice_projection(shape, x).pr2),
            (format!("I/{name}"), slice_projection(shape, x).pr1),
        ];
        for (label, alpha) in projections {
            for j in shape.objects() {
                reports.push(relabel(verify_n4(&alpha, j, side, mode, t, &s), &label));
            }
        }
    }
    let extremal = if mode.is_dir() { initial_object(shape) } else { final_object(shape) };
    if extremal.is_some() {
        reports.push(verify_n5_zigzag(shape, mode, t, target, budget));
    }
    reports
}

pub fn cmd_axioms(path: &Path, opts: &Options, out: &mut dyn Write) -> i32 {
    let l = match load_category(path) {
        Ok(l) => l,
        Err(e) => return input_error(out, &e),
    };
    let target = match opts.target() {
        Ok(t) => t,
        Err(e) => return input_error(out, &e),
    };
    let (mode, t) = (opts.mode(), opts.truncation(&l.cat));
    let mut reports = axiom_reports(&l.cat, mode, t, &target, opts.budget());
    // functor blocks are read as projections of hand-written packages
    for (name, f) in &l.functors {
        reports.push(match f {
            Ok(f) => verify_n3_projection(f, &format!("package {name}")),
            Err(e) => fail_report("N3", format!("package {name}"), e),
        });
    }
    finish_suite(&reports, opts, out)
}

fn derived(
    check: &str,
    instance: impl Fn() -> String,
    mode: Mode,
    t: Truncation,
    r: Result<VerificationReport, DerivatorError>,
) -> VerificationReport {
    r.unwrap_or_else(|e| {
        let mut b = ReportBuilder::new(check, instance()).with_mode(mode, t);
        match e {
            // running out of budget refutes nothing
            DerivatorError::EnumerationBudget(_) => {
                b.inconclusive(e.to_string());
                b.finish()
            }
            e => fail_in_mode(b, e),
        }
    })
}

pub fn enlarge_reports(
    shape: &Arc<FinCat>,
    functors: &[(String, Functor)],
    target: &TargetCategory,
    mode: Mode,
    t: Truncation,
    budget: SearchBudget,
    out: &mut dyn Write,
) -> Vec<VerificationReport> {
    let label = shape_label(shape);
    let mut reports = Vec::new();
    match enlargement_E(shape, target, mode, t, budget) {
        Ok(e) => {
            writeln!(out, "E({label}) over {}: {} objects, {} morphisms", target.name(), e.num_objects(), e.num_morphisms())
                .ok();
            let mut b = ReportBuilder::new("enlargement", format!("I={label} {mode}")).with_mode(mode, t);
            b.note(format!("{} objects, {} morphisms", e.num_objects(), e.num_morphisms()));
            reports.push(b.finish());
        }
        Err(e) => reports.push(derived("enlargement", || format!("I={label} {mode}"), mode, t, Err(e))),
    }
    let flags = classify_category(shape);
    if t == Truncation::Exact && in_dia_prime(&flags, mode, Settings::default().convention) {
        reports.push(derived(
            "restriction-equivalence",
            || format!("J={label} {mode}"),
            mode,
            Truncation::Exact,
            restriction_equivalence_check(shape, target, mode, budget),
        ));
    }
    let pt = Arc::new(terminal());
    let mut alphas: Vec<(String, Functor)> = functors.to_vec();
    alphas.push(("I->pt".into(), Functor::constant(shape.clone(), pt.clone(), crate::fincat::ObjId(0))));
    for x in shape.objects() {
        alphas.push((format!("pt->{}", shape.obj_name(x)), Functor::pick(pt.clone(), shape.clone(), x)));
    }
    for (name, alpha) in &alphas {
        reports.push(relabel(
            derived("FDer3-FDer4", || format!("alpha: {} -> {}", shape_label(&alpha.dom), shape_label(&alpha.cod)),
                mode,
                t,
                fder3_fder4_check(alpha, target, mode, t, budget)),
            name,
        ));
    }
    if is_poset(shape) {
        reports.push(derived("left-right", || format!("I={label}"), mode, t, left_right_comparison(shape, target, budget)));
    }
    for j in [pt.clone(), Arc::new(chain(1))] {
        reports.push(derived(
            "transport-equivalence",
            || format!("I={label} J={} {mode}", shape_label(&j)),
            mode,
            t,
            transport_equivalence_check(shape, &j, target, mode, t, budget),
        ));
    }
    reports
}

pub fn cmd_enlarge(path: &Path, opts: &Options, out: &mut dyn Write) -> i32 {
    let l = match load_category(path) {
        Ok(l) => l,
        Err(e) => return input_error(out, &e),
    };
    let target = match opts.target() {
        Ok(t) => t,
        Err(e) => return input_error(out, &e),
    };
    let mut functors = Vec::new();
    for (name, f) in &l.functors {
        match f {
            Ok(f) => functors.push((name.clone(), f.clone())),
            Err(e) => return input_error(out, &InputError::Usage(format!("{}: {e}", l.path.display()))),
        }
    }
    let (mode, t) = (opts.mode(), opts.truncation(&l.cat));
    let reports = enlarge_reports(&l.cat, &functors, &target, mode, t, opts.budget(), out);
    finish_suite(&reports, opts, out)
}

pub fn cmd_suite(opts: &Options, out: &mut dyn Write) -> i32 {
    let reports = acceptance_battery(opts.budget());
    finish_suite(&reports, opts, out)
}
