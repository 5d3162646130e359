use std::sync::Arc;

use crate::fincat::{coproduct, empty, is_isomorphism_of_categories, FinCat, Functor, MorId, ObjId};
use crate::nerve::{build_N, n_of_functor, Mode, Truncation};

use super::report::{ReportBuilder, VerificationReport};
use super::shape_label;

/// `N(I ⊔ J) = N(I) ⊔ N(J)` via the canonical comparison, and `N(∅) = ∅`.
pub fn verify_n2(i: &Arc<FinCat>, j: &Arc<FinCat>, mode: Mode, truncation: Truncation) -> VerificationReport {
    let mut r = ReportBuilder::new("N2", format!("I={} J={} {mode}", shape_label(i), shape_label(j)))
        .with_mode(mode, truncation);
    match build_N(Arc::new(empty()), mode, truncation) {
        Ok(p) if p.total.num_objects() == 0 => {}
        Ok(p) => r.fail(format!("N(empty) has {} objects", p.total.num_objects())),
        Err(e) => r.fail(format!("N(empty): {e}")),
    }
    let (sum, inl, inr) = coproduct(i, j);
    let built = (|| {
        let pi = build_N(i.clone(), mode, truncation)?;
        let pj = build_N(j.clone(), mode, truncation)?;
        let ps = build_N(sum.clone(), mode, truncation)?;
        let ni = n_of_functor(&inl, &pi, &ps)?;
        let nj = n_of_functor(&inr, &pj, &ps)?;
        Ok::<_, crate::nerve::NerveError>((pi, pj, ps, ni, nj))
    })();
    match built {
        Err(e) => r.fail(e.to_string()),
        Ok((pi, pj, ps, ni, nj)) => {
            let (left, l_in, r_in) = coproduct(&pi.total, &pj.total);
            let mut objs = vec![ObjId(0); left.num_objects()];
            let mut mors = vec![MorId(0); left.num_morphisms()];
            for (inj, n) in [(&l_in, &ni), (&r_in, &nj)] {
                for o in inj.dom.objects() {
                    objs[inj.obj(o).idx()] = n.obj(o);
                }
                for m in inj.dom.morphisms() {
                    mors[inj.mor(m).idx()] = n.mor(m);
                }
            }
            let cmp = Functor::new(left.clone(), ps.total.clone(), objs, mors);
            match cmp {
                Err(e) => r.fail(format!("comparison is not a functor: {e}")),
                Ok(cmp) => {
                    r.note(format!(
                        "comparison on {}+{} objects",
                        pi.total.num_objects(),
                        pj.total.num_objects()
                    ));
                    if r.require(is_isomorphism_of_categories(&cmp), || {
                        "comparison N(I)+N(J) -> N(I+J) is not bijective".into()
                    }) {
                        r.comparison(cmp);
                    }
                }
            }
        }
    }
    r.finish()
}
