use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{
    comma_category, comma_factor, is_equivalence_of_categories, is_isomorphism_of_categories, terminal,
    Functor, NatTrans, ObjId,
};
use crate::nerve::{build_N, n_of_functor, Mode, Truncation};

use super::report::{ReportBuilder, VerificationReport};
use super::{shape_label, Settings};

/// `Left` compares `N(I x_{/J} j)` with `N(I) x_{/J} j`; `Right` compares
/// `N(j x_{/J} I)` with `j x_{/J} N(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Left goes with the Inv constructions, right with Dir.
    pub fn compatible(mode: Mode) -> Side {
        if mode.is_dir() {
            Side::Right
        } else {
            Side::Left
        }
    }
}

pub fn verify_n4(
    alpha: &Functor,
    j: ObjId,
    side: Side,
    mode: Mode,
    truncation: Truncation,
    settings: &Settings,
) -> VerificationReport {
    let jc = &alpha.cod;
    let mut r = ReportBuilder::new(
        format!("N4-{}", if side == Side::Left { "left" } else { "right" }),
        format!(
            "alpha: {} -> {}, j={} {mode}",
            shape_label(&alpha.dom),
            shape_label(jc),
            jc.obj_name(j)
        ),
    )
    .with_mode(mode, truncation);
    let pt = Arc::new(terminal());
    let pick = Functor::pick(pt.clone(), jc.clone(), j);
    let cm = match side {
        Side::Left => comma_category(alpha, &pick),
        Side::Right => comma_category(&pick, alpha),
    }
    .expect("same codomain");
    let built = (|| {
        let pi = build_N(alpha.dom.clone(), mode, truncation)?;
        let pc = build_N(cm.total.clone(), mode, truncation)?;
        let leg = match side {
            Side::Left => &cm.pr1,
            Side::Right => &cm.pr2,
        };
        let nleg = n_of_functor(leg, &pc, &pi)?;
        Ok::<_, crate::nerve::NerveError>((pi, pc, nleg))
    })();
    let (pi, pc, nleg) = match built {
        Ok(x) => x,
        Err(e) => {
            r.fail(e.to_string());
            return r.finish();
        }
    };
    let api = alpha.after(&pi.pi).unwrap();
    let right_cm = match side {
        Side::Left => comma_category(&api, &pick),
        Side::Right => comma_category(&pick, &api),
    }
    .unwrap();
    // the 2-cell of the comma square, pulled back along π of the comma
    let cell = cm.cell.whisker_right(&pc.pi).unwrap();
    let konst = Functor::constant(pc.total.clone(), pt.clone(), ObjId(0));
    let (p, q) = match side {
        Side::Left => (nleg.clone(), konst),
        Side::Right => (konst, nleg.clone()),
    };
    let (tdom, tcod) = match side {
        Side::Left => (api.after(&p).unwrap(), pick.after(&q).unwrap()),
        Side::Right => (pick.after(&p).unwrap(), api.after(&q).unwrap()),
    };
    let theta = NatTrans::new_unchecked(tdom, tcod, cell.components().to_vec()).unwrap();
    r.note(format!(
        "N(comma) has {} objects, comma of N has {}",
        pc.total.num_objects(),
        right_cm.total.num_objects()
    ));
    match comma_factor(&right_cm, &p, &q, &theta) {
        Err(e) => r.fail(format!("comparison functor: {e}")),
        Ok(cmp) => {
            if let Err(e) = cmp.check_laws() {
                r.fail(format!("comparison functor: {e}"));
            } else if is_isomorphism_of_categories(&cmp) {
                r.comparison(cmp);
            } else if settings.equivalence_fallback && is_equivalence_of_categories(&cmp) {
                r.note("comparison is an equivalence but not an isomorphism");
                r.comparison(cmp);
            } else {
                let missing: Vec<String> = right_cm
                    .total
                    .objects()
                    .filter(|o| !cmp.obj_map().contains(o))
                    .take(3)
                    .map(|o| right_cm.total.obj_name(o).to_string())
                    .collect();
                r.fail(format!(
                    "comparison is not an isomorphism ({} vs {} objects); objects missed: {}",
                    pc.total.num_objects(),
                    right_cm.total.num_objects(),
                    missing.join(", ")
                ));
            }
        }
    }
    r.finish()
}

