use super::*;

#[test]
fn q_gauss_example() {
    let q = 0.4f64;
    let mut p = Point::new();
    for (k, e) in [("a", 0.5), ("b", 1.2), ("c", 2.5)] {
        p.insert(k.into(), Param::Real(q.powf(e)));
    }
    p.insert("q".into(), Param::Real(q));
    let case = find_case("GAUSS-SUM").unwrap();
    let r = &run_case(&case, &p, None)[0];
    assert!(r.passed() && r.rel_err < 1e-11, "{r:?}");
}

#[test]
fn saalschutz_at_zero_degree() {
    let p = point(&[
        ("q", Param::Real(0.5)),
        ("n", Param::Int(0)),
        ("a", Param::Real(0.3)),
        ("b", Param::Real(0.7)),
        ("c", Param::Real(0.2)),
    ]);
    let r = &run_case(&find_case("SAALSCHUTZ").unwrap(), &p, None)[0];
    assert_eq!((r.lhs, r.rhs), (re(1.0), re(1.0)));
}

#[test]
fn unbalanced_sears_point_is_skipped() {
    let case = find_case("SEARS-43").unwrap();
    let mut p = case.points_for(3, Some(1)).remove(0);
    let f = get_real(&p, "f").unwrap();
    p.insert("f".into(), Param::Real(f * 1.5));
    let r = &run_case(&case, &p, None)[0];
    assert_eq!(r.status, Status::Skip);
    assert!(r.note.starts_with("constraint:"), "{}", r.note);
}

#[test]
fn evaluation_category_passes() {
    let entries = run_all(Some("evaluation"), 1, Some(5));
    let cases = registry().iter().filter(|c| c.category == Category::Evaluation).count();
    assert_eq!(entries.len(), 5 * cases);
    for e in &entries {
        assert!(e.result.passed(), "{} {:?}", e.case_id, e.result);
    }
}

#[test]
fn cancelling_balanced_sum_is_skipped() {
    // both sides are round-off sized here
    let p = point(&[
        ("q", Param::Real(0.8926982439680471)),
        ("n", Param::Int(8)),
        ("a", Param::Real(0.7615676103596642)),
        ("b", Param::Real(-0.4146562375804771)),
        ("c", Param::Real(-0.9339335600322356)),
        ("d", Param::Real(-0.2570527848577682)),
    ]);
    let r = &run_case(&find_case("JACKSON-8W7").unwrap(), &p, None)[0];
    assert_eq!(r.status, Status::Skip);
    assert!(r.note.contains("sum cancels"), "{}", r.note);
}

#[test]
fn unknown_filter_selects_nothing() {
    assert!(run_all(Some("NO-SUCH-IDENTITY"), 1, None).is_empty());
}

#[test]
fn runs_are_deterministic() {
    let a = run_all(Some("transformation"), 42, Some(3));
    let b = run_all(Some("transformation"), 42, Some(3));
    assert_eq!(a, b);
    let c = run_all(Some("transformation"), 43, Some(3));
    assert_ne!(a, c);
}

#[test]
fn ids_are_unique_and_filters_match() {
    let all = registry();
    for w in all.windows(2) {
        assert!(w[0].id < w[1].id);
    }
    let c = find_case("bin-thm").unwrap();
    assert!(c.matches("evaluation") && c.matches("bin") && !c.matches("limit"));
}

#[test]
fn rogers_ramanujan_at_listed_bases() {
    let case = find_case("RR-NUMERIC").unwrap();
    for q in [0.1, 0.2, 0.3, 0.4, 0.5] {
        for which in [1, 2] {
            let p = point(&[("q", Param::Real(q)), ("which", Param::Int(which))]);
            assert!(run_case(&case, &p, None)[0].passed());
        }
    }
}

#[test]
fn tolerance_override_applies_to_sides() {
    let case = find_case("BIN-THM").unwrap();
    let p = case.points_for(1, Some(1)).remove(0);
    assert_eq!(run_case(&case, &p, Some(1e-3))[0].tol, 1e-3);
    assert_eq!(run_case(&case, &p, Some(1e-30))[0].tol, TOL_FLOOR);
}

#[test]
#[ignore = "runs the whole registry"]
fn every_case_passes_somewhere() {
    for case in registry() {
        let entries = run_all(Some(case.id), 1, None);
        let relevant: Vec<_> = entries.iter().filter(|e| e.case_id == case.id).collect();
        assert!(relevant.iter().any(|e| e.result.passed()), "{}", case.id);
        for e in relevant {
            assert!(e.result.status != Status::Fail, "{} {:?}", case.id, e.result);
        }
    }
}
