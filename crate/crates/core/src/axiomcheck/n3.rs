use std::sync::Arc;

use crate::fincat::{functor_image_checks, FinCat, Functor};
use crate::nerve::{build_N, Mode, Truncation};

use super::report::{ReportBuilder, VerificationReport};
use super::shape_label;

/// `π_I` is surjective on objects and morphisms with connected fibers.
pub fn verify_n3(shape: &Arc<FinCat>, mode: Mode, truncation: Truncation) -> VerificationReport {
    let r = ReportBuilder::new("N3", format!("I={} {mode}", shape_label(shape))).with_mode(mode, truncation);
    match build_N(shape.clone(), mode, truncation) {
        Err(e) => {
            let mut r = r;
            r.fail(e.to_string());
            r.finish()
        }
        Ok(p) => check_projection(r, &p.pi),
    }
}

/// The same check on an arbitrary projection, for hand-built packages.
pub fn verify_n3_projection(pi: &Functor, instance: &str) -> VerificationReport {
    check_projection(ReportBuilder::new("N3", instance), pi)
}

fn check_projection(mut r: ReportBuilder, pi: &Functor) -> VerificationReport {
    let c = functor_image_checks(pi);
    if !c.all() {
        r.fail(c.witness.clone().unwrap_or_default());
    }
    r.note(format!(
        "surjective on objects {}, on morphisms {}, fibers connected {}",
        c.surjective_on_objects, c.surjective_on_morphisms, c.all_fibers_connected
    ));
    r.finish()
}
