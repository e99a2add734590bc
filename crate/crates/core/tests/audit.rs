use spinctl::audit::{full_report, run_check, Status, CATALOG};

#[test]
fn report_covers_catalog_in_order() {
    let report = full_report(1e-10, 0).unwrap();
    let ids: Vec<&str> = report.results.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids, CATALOG);
    for (line, r) in report.to_text().lines().zip(&report.results) {
        assert_eq!(line, r.to_line());
    }
}

#[test]
fn seeds_are_reproducible() {
    for seed in [0, 7] {
        assert_eq!(full_report(1e-10, seed).unwrap().to_text(), full_report(1e-10, seed).unwrap().to_text());
    }
}

#[test]
fn statuses_do_not_depend_on_seed() {
    let a = full_report(1e-10, 0).unwrap();
    let b = full_report(1e-10, 3).unwrap();
    for (x, y) in a.results.iter().zip(&b.results) {
        assert_eq!(x.status, y.status, "{}", x.check_id);
    }
}

#[test]
fn loosening_tolerance_never_adds_failures() {
    let tight = full_report(1e-10, 0).unwrap();
    let loose = full_report(1e-2, 0).unwrap();
    for (t, l) in tight.results.iter().zip(&loose.results) {
        if t.status != Status::Fail {
            assert_ne!(l.status, Status::Fail, "{}", t.check_id);
        }
        if t.status == Status::Pass {
            assert_eq!(l.status, Status::Pass, "{}", t.check_id);
        }
    }
}

#[test]
fn resolved_tokens() {
    let expect = [
        ("isometry_su4", "phase_sign=-1"),
        ("isometry_su3", "u02_sign=+1"),
        ("q_factorization", "u02_sign=+1"),
        ("commutator_eq26", "frame_sign=-1"),
        ("propagator_question", "isometry_only"),
    ];
    for (id, token) in expect {
        let r = run_check(id, 1e-10, 0).unwrap();
        assert_eq!(r.status, Status::Resolved(token.into()), "{id}");
        assert_eq!(r.to_line().matches("RESOLVED:").count(), 1);
    }
}

#[test]
fn exact_identities_pass() {
    for id in ["algebra_eq2_4", "kg_identity", "epsilon_identity", "isometry_su2", "constraint_orthogonality"] {
        assert_eq!(run_check(id, 1e-10, 0).unwrap().status, Status::Pass, "{id}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(run_check("no_such_check", 1e-10, 0).is_err());
    assert!(full_report(f64::NAN, 0).is_err());
    assert!(full_report(-1.0, 0).is_err());
}
