use super::*;

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn run(name: CheckName, pairs: &[(&str, i64)]) -> CheckReport {
    run_check(name, &params(pairs)).unwrap()
}

fn assert_pass(r: &CheckReport) {
    assert_eq!(r.status, Status::Pass, "{}\n lhs: {}\n rhs: {}", r.check, r.lhs, r.rhs);
}

fn strip_timing(mut reports: Vec<CheckReport>) -> Vec<CheckReport> {
    reports.iter_mut().for_each(|r| r.elapsed_ms = 0);
    reports
}

#[test]
fn names_round_trip() {
    for c in CheckName::ALL {
        assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
    }
    assert!("pstar".parse::<CheckName>().is_err());
}

#[test]
fn pushforward_table_reports_the_displayed_values() {
    let r = run(CheckName::PstarTable, &[("n", 2), ("i_max", 8)]);
    assert_pass(&r);
    assert!(r.lhs.contains("p_*(h^3): 1; "));
    assert!(r.lhs.contains("p_*(h^5): -c2; "));
    assert!(r.lhs.ends_with("p_*(h^7): c2^2 - c4; p_*(h^8): 0"));
    assert_pass(&run(CheckName::PstarTable, &[("n", 3), ("i_max", 10)]));
    let trivial = run(CheckName::PstarTable, &[("n", 2), ("i_max", 3)]);
    assert_pass(&trivial);
    assert_eq!(trivial.params, params(&[("n", 2), ("i_max", 3)]));
}

#[test]
fn q_relation_matches_the_rewrite_rule() {
    let r = run(CheckName::QRelation, &[("n", 2)]);
    assert_pass(&r);
    assert!(r.lhs.starts_with("c_2n(q): c2*h^2 + c4 + h^4; rank(q): 3;"), "{}", r.lhs);
    assert_pass(&run(CheckName::QRelation, &[("n", 3)]));
}

#[test]
fn grr_step() {
    let r = run(CheckName::GrrC1, &[("n", 2)]);
    assert_pass(&r);
    assert!(r.lhs.starts_with("td_1: push_iota(-3/2); beta_*[D]: 0;"), "{}", r.lhs);
    assert!(r.lhs.ends_with("c1(beta_*(ch(W) td)): f1_alpha + f2_lam"), "{}", r.lhs);
}

#[test]
fn degree_chain_binomials() {
    let r = run(CheckName::DegreeChain, &[("n", 2)]);
    assert_pass(&r);
    assert!(r.lhs.starts_with("split: 35*<w^4>*<w^3*a> + 35*<w^4>*<w^3*b>"));
    let r = run(CheckName::DegreeChain, &[("n", 3)]);
    assert_pass(&r);
    assert!(r.lhs.starts_with("split: 462*<w^6>*<w^5*a>"));
}

#[test]
fn diagonal_and_divisor_steps() {
    for n in 2..=3 {
        let r = run(CheckName::DiagonalRestriction, &[("n", n)]);
        assert_pass(&r);
        assert!(r.lhs.ends_with("restriction: a + b + lam"), "{}", r.lhs);
        let r = run(CheckName::DivisorDegree, &[("n", n)]);
        assert_pass(&r);
        assert!(r.lhs.ends_with(&format!("degree: <w^{}*lam>", 2 * n - 1)));
    }
}

#[test]
fn hom_restriction_factor() {
    let r = run(CheckName::HomRestriction, &[("n", 2), ("g", 1)]);
    assert_pass(&r);
    assert!(
        r.lhs.contains("c1(Hom(V,G)): -2*k*h - 2*s*h + 2*alpha - 2*lam;"),
        "{}",
        r.lhs
    );
    assert_pass(&run(CheckName::HomRestriction, &[("n", 3), ("g", 3)]));
    let err = run_check(CheckName::HomRestriction, &params(&[("n", 2), ("g", 2)])).unwrap_err();
    assert!(matches!(err, Error::Guard(_)));
}

#[test]
fn ses_identities() {
    for n in 2..=3 {
        for j in 0..=3 {
            for t in 0..=4 {
                assert_pass(&run(CheckName::SesCh, &[("n", n), ("j", j), ("t", t)]));
            }
        }
    }
}

#[test]
fn slope_polynomial_leading_term() {
    let r = run(CheckName::SlopePolynomial, &[("n", 2)]);
    assert_pass(&r);
    assert!(r.lhs.contains("deg_N Q: 3; leading: 1/6*alpha;"), "{}", r.lhs);
    assert_pass(&run(CheckName::SlopePolynomial, &[("n", 3)]));
}

#[test]
fn inclusion_targets_and_characters() {
    assert_pass(&run(CheckName::InclusionTargets, &[("n", 2)]));
    assert_pass(&run(CheckName::InclusionTargets, &[("n", 3)]));
    assert_pass(&run(CheckName::SymNotInWedge, &[("n", 2), ("t_max", 6)]));
    assert_pass(&run(CheckName::SymNotInWedge, &[("n", 4), ("t_max", 4)]));
}

#[test]
fn negative_controls_fail() {
    let pstar = Check::with_defaults(CheckName::PstarTable, 2).unwrap();
    assert_eq!(pstar.run_perturbed(Perturbation::FlipHRelation).status, Status::Fail);
    let grr = Check::with_defaults(CheckName::GrrC1, 2).unwrap();
    let flipped = grr.run_perturbed(Perturbation::FlipToddCoefficient);
    assert_eq!(flipped.status, Status::Fail);
    assert!(flipped.lhs.starts_with("td_1: push_iota(3/2)"));
    assert_eq!(grr.run_perturbed(Perturbation::None).status, Status::Pass);
}

#[test]
fn guards() {
    for bad in [
        params(&[("n", 7)]),
        params(&[("n", 1)]),
        params(&[]),
        params(&[("n", 2), ("i_max", 11)]),
        params(&[("n", 2), ("bogus", 1)]),
    ] {
        assert!(matches!(Check::new(CheckName::PstarTable, &bad), Err(Error::Guard(_))), "{bad:?}");
    }
    assert!(Check::new(CheckName::SesCh, &params(&[("n", 2), ("t", 9)])).is_err());
    assert!(Check::new(CheckName::SymNotInWedge, &params(&[("n", 2), ("t_max", 9)])).is_err());
    assert!(run_all(&[2, 9]).is_err());
}

#[test]
fn run_all_is_ordered_and_deterministic() {
    assert!(run_all(&[]).unwrap().is_empty());
    let reports = run_all_with(&[2], Some(4)).unwrap();
    assert_eq!(reports.len(), CheckName::ALL.len());
    for (r, c) in reports.iter().zip(CheckName::ALL) {
        assert_eq!(r.check, c.as_str());
        assert_pass(r);
    }
    let serial = run_all_with(&[2], Some(1)).unwrap();
    assert_eq!(strip_timing(reports), strip_timing(serial));
}

#[test]
fn report_json_schema() {
    let r = run(CheckName::QRelation, &[("n", 2)]);
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["check", "elapsed_ms", "lhs", "params", "rhs", "status"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["params"]["n"], 2);
    let back: CheckReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}
