use std::sync::Arc;

use crate::fincat::{classify_category, comma_category, FinCat};
use crate::nerve::{build_N, Mode, Truncation};

use super::report::{ReportBuilder, VerificationReport};
use super::{dia_prime_name, in_dia_prime, shape_label, Settings};

/// The comma category of `π_I` against itself lies in the mode's `Dia′`.
pub fn verify_n1(shape: &Arc<FinCat>, mode: Mode, truncation: Truncation, settings: &Settings) -> VerificationReport {
    let mut r = ReportBuilder::new("N1", format!("I={} {mode}", shape_label(shape))).with_mode(mode, truncation);
    match build_N(shape.clone(), mode, truncation) {
        Err(e) => r.fail(e.to_string()),
        Ok(p) => {
            let cm = comma_category(&p.pi, &p.pi).expect("same codomain");
            let flags = classify_category(&cm.total);
            r.note(format!(
                "comma has {} objects, {} morphisms; flags {:?}",
                cm.total.num_objects(),
                cm.total.num_morphisms(),
                flags
            ));
            r.require(in_dia_prime(&flags, mode, settings.convention), || {
                format!("comma category is not in {}: {:?}", dia_prime_name(mode), flags)
            });
        }
    }
    r.finish()
}
