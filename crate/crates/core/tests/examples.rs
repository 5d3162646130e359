macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(nerve_counts, "nerve_counts.rs");
example!(category_files, "category_files.rs");
example!(axiom_suite, "axiom_suite.rs");
example!(homotopy_certificates, "homotopy_certificates.rs");
example!(cartesian_projectors, "cartesian_projectors.rs");
example!(idempotent_monads, "idempotent_monads.rs");
example!(enlargement, "enlargement.rs");
example!(left_right, "left_right.rs");
example!(adjoint_search, "adjoint_search.rs");
example!(opfibrations, "opfibrations.rs");

#[test]
fn nerve_counts_runs() {
    let out = nerve_counts::run().unwrap();
    assert!(out.contains("DirReduced [2] exact: levels [3, 3, 1], 7 objects, 12 non-identity morphisms"), "{out}");
}

#[test]
fn category_files_runs() {
    let out = category_files::run().unwrap();
    assert!(out.contains("without k.g: 1 law violation(s); first: MissingComposite"), "{out}");
    assert_eq!(out.matches("style=dashed").count(), 11);
}

#[test]
fn axiom_suite_runs() {
    let out = axiom_suite::run().unwrap();
    assert!(out.ends_with("exit code 2\n"), "{out}");
    assert!(!out.contains("\nfail"), "{out}");
}

#[test]
fn homotopy_certificates_runs() {
    let out = homotopy_certificates::run().unwrap();
    assert!(out.contains("checked true"), "{out}");
    assert!(out.lines().next().unwrap().contains(" ~ "), "{out}");
}

#[test]
fn cartesian_projectors_runs() {
    let out = cartesian_projectors::run().unwrap();
    assert!(out.contains("(0,1,0) -> left (1,1,1), right (0,0,0)"), "{out}");
    assert!(out.contains("adjoint search agrees: pass"));
}

#[test]
fn idempotent_monads_runs() {
    let out = idempotent_monads::run().unwrap();
    assert_eq!(out.matches("triangles true, uT = Tu true").count(), 12);
    assert!(out.contains("LandsInSub"));
}

#[test]
fn enlargement_runs() {
    let out = enlargement::run().unwrap();
    assert!(out.contains("{0,1,2}: |Fun(J,2)| = 4, |E(J)| = 4, restriction pass"), "{out}");
    assert!(out.contains("transport along [1] x [1]: pass"));
}

#[test]
fn left_right_runs() {
    let out = left_right::run().unwrap();
    assert_eq!(out.matches(": pass").count(), 5, "{out}");
}

#[test]
fn adjoint_search_runs() {
    let out = adjoint_search::run().unwrap();
    assert!(out.contains("collapse: Left adjoint (0)"), "{out}");
    assert!(out.contains("collapse: Right adjoint (1)"), "{out}");
}

#[test]
fn opfibrations_runs() {
    let out = opfibrations::run().unwrap();
    assert!(out.contains("fiberwise: 6 of 6 diagrams"), "{out}");
    assert!(out.contains("[1]/0 -> [1]: opfibration false"));
}
