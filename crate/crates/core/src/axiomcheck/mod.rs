//! Mechanical checks of the nerve axioms on concrete packages.

mod homotopy;
mod n1;
mod n2;
mod n3;
mod n4;
mod n5;
mod report;

use std::sync::Arc;

use crate::fincat::{ClassificationFlags, DegreeConvention, FinCat};
use crate::nerve::Mode;

pub use homotopy::{parallel_morphism_homotopy, HomologyCertificate, Homotopy, HomotopyBudget};
pub use n1::verify_n1;
pub use n2::verify_n2;
pub use n3::{verify_n3, verify_n3_projection};
pub use n4::{verify_n4, Side};
pub use n5::verify_n5_zigzag;
pub use report::{ReportBuilder, VerificationReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub convention: DegreeConvention,
    /// Accept an equivalence where an isomorphism is expected.
    pub equivalence_fallback: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { convention: DegreeConvention::default(), equivalence_fallback: false }
    }
}

/// Membership in the small class of shapes a mode is built for.
pub fn in_dia_prime(flags: &ClassificationFlags, mode: Mode, conv: DegreeConvention) -> bool {
    let graded = if mode.is_dir() { flags.is_direct(conv) } else { flags.is_inverse(conv) };
    graded && (!mode.is_reduced() || flags.is_poset)
}

pub fn dia_prime_name(mode: Mode) -> &'static str {
    match mode {
        Mode::DirFull => "Dir",
        Mode::DirReduced => "Dirpos",
        Mode::InvFull => "Inv",
        Mode::InvReduced => "Invpos",
    }
}

/// Short description of a shape for report instance keys.
pub fn shape_label(c: &Arc<FinCat>) -> String {
    let names: Vec<&str> = c.objects().map(|o| c.obj_name(o)).collect();
    if names.len() <= 6 {
        format!("{{{}}}", names.join(","))
    } else {
        format!("{{{},...}}#{}", names[..4].join(","), names.len())
    }
}
