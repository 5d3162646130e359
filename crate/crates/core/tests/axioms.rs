use std::sync::Arc;

use nerve_workbench::axiomcheck::*;
use nerve_workbench::fincat::*;
use nerve_workbench::nerve::{Mode, Truncation};

fn shapes() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("[0]", Arc::new(chain(0))),
        ("[1]", Arc::new(chain(1))),
        ("[2]", Arc::new(chain(2))),
        ("[3]", Arc::new(chain(3))),
        ("V", Arc::new(v_poset())),
        ("L", Arc::new(lambda_poset())),
        ("square", Arc::new(square_poset())),
    ]
}

fn trunc(mode: Mode) -> Truncation {
    if mode.is_reduced() {
        Truncation::Exact
    } else {
        Truncation::Level(2)
    }
}

/// Slice and coslice projections `I/x -> I`, `x/I -> I`.
fn slice_functors(c: &Arc<FinCat>) -> Vec<Functor> {
    let pt = Arc::new(terminal());
    let id = Functor::identity(c.clone());
    let mut out = Vec::new();
    for x in c.objects() {
        let p = Functor::pick(pt.clone(), c.clone(), x);
        out.push(comma_category(&id, &p).unwrap().pr1);
        out.push(comma_category(&p, &id).unwrap().pr2);
    }
    out
}

#[test]
fn n1_to_n4_on_the_shape_suite() {
    let s = Settings::default();
    for mode in Mode::ALL {
        let t = trunc(mode);
        for (name, c) in shapes() {
            for r in [verify_n1(&c, mode, t, &s), verify_n3(&c, mode, t)] {
                assert!(!r.failed(), "{name} {mode}: {r:?}");
                assert_eq!(r.passed(), mode.is_reduced(), "{name} {mode}: {r:?}");
            }
            let r = verify_n2(&c, &Arc::new(chain(1)), mode, t);
            assert!(!r.failed(), "{name} {mode}: {r:?}");
            for f in slice_functors(&c) {
                for j in c.objects() {
                    let side = Side::compatible(mode);
                    let r = verify_n4(&f, j, side, mode, t, &s);
                    assert!(!r.failed(), "{name} {mode} j={j:?}: {:?} {:?}", r.witnesses, r.notes);
                }
            }
        }
    }
}

#[test]
fn n4_examples() {
    let s = Settings::default();
    let pt = Arc::new(terminal());
    let r = verify_n4(&Functor::identity(pt.clone()), ObjId(0), Side::Left, Mode::DirReduced, Truncation::Exact, &s);
    assert!(r.passed());
    let i1 = Arc::new(chain(1));
    let id = Functor::identity(i1.clone());
    let r = verify_n4(&id, ObjId(0), Side::Right, Mode::DirReduced, Truncation::Exact, &s);
    assert!(r.passed(), "{r:?}");
    let cmp = r.comparison.as_ref().unwrap();
    assert_eq!(cmp.dom.num_objects(), 3);
    assert!(is_isomorphism_of_categories(cmp));
    cmp.check_laws().unwrap();
    // the single chain (0, 0<1) lives on the left; 0/[1] to 1 on the right is empty
    let incl = Functor::pick(pt.clone(), i1.clone(), ObjId(0));
    let left = verify_n4(&incl, ObjId(1), Side::Left, Mode::DirReduced, Truncation::Exact, &s);
    assert!(left.passed());
    assert_eq!(left.comparison.as_ref().unwrap().dom.num_objects(), 1);
    let right = verify_n4(&incl, ObjId(1), Side::Right, Mode::DirReduced, Truncation::Exact, &s);
    assert!(right.passed());
    assert_eq!(right.comparison.as_ref().unwrap().dom.num_objects(), 0);
}

#[test]
fn incompatible_side_fails_with_a_witness() {
    let s = Settings::default();
    let id = Functor::identity(Arc::new(chain(1)));
    let r = verify_n4(&id, ObjId(0), Side::Left, Mode::DirReduced, Truncation::Exact, &s);
    assert!(r.failed());
    assert!(r.witnesses[0].contains("1 vs 2 objects"), "{:?}", r.witnesses);
    let r = verify_n4(&id, ObjId(1), Side::Right, Mode::InvReduced, Truncation::Exact, &s);
    assert!(r.failed());
}
