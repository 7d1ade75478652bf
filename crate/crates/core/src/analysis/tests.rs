use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::exactnum::parse_poly;
use crate::linalg::Matrix;
use crate::presentations::{forbidden_relations, relations, GroupSpec, RelationFamily};
use crate::representations::{build_local_rep, Family, LocalRep, Params};
use crate::{GaussianRational, MultiPoly, Scalar};

type Q = GaussianRational;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn qm(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect(),
    )
}

fn poly(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

fn assigned(family: Family, spec: &GroupSpec, pairs: &[(&str, i64)]) -> LocalRep {
    build_local_rep(family, spec, &Params::assign(pairs)).unwrap()
}

fn same_up_to_scalar(a: &MultiPoly, b: &MultiPoly) -> bool {
    let vars = a.vars().clone();
    a.monic() == b.with_vars(&vars).monic()
}

#[test]
fn two_local_virtual_system() {
    let sys = Preset::TwoLocalVirtual.generate().unwrap();
    let expected = [
        "r1*(1 - r1 - r2*r3)",
        "r1*r2*r4",
        "r1*r3*r4",
        "r1*r4*(r1 - r4)",
        "r4*(1 - r2*r3 - r4)",
        "-1 + r1^2 + r2*r3",
        "r2*(r1 + r4)",
        "r3*(r1 + r4)",
        "-1 + r2*r3 + r4^2",
        "r1*(-1 + s1_1 + r2*s3_1)",
        "r1*(-r2 + s2_1 + r2*s4_1)",
        "r1*r4*s3_1",
        "r1*r4*(s1_1 - s4_1)",
        "r4*(r2 - r2*s1_1 - s2_1)",
        "r4*(1 - r2*s3_1 - s4_1)",
    ];
    assert_eq!(sys.len(), expected.len());
    for (eq, want) in sys.equations.iter().zip(expected) {
        assert!(
            same_up_to_scalar(&eq.poly, &poly(want)),
            "{} vs {}",
            eq.poly.render(),
            want
        );
    }
    assert_eq!(sys.equations[0].tags, vec!["PR1[i=1]"]);
    assert_eq!(sys.equations[14].tags, vec!["MR2[i=1,t=1]"]);
}

#[test]
fn two_local_welded_system() {
    let sys = Preset::TwoLocalWelded.generate().unwrap();
    let expected = ["s1_1*(r2*s3_1 - 1)", "r2*s1_1*s4_1", "s4_1*(r2*s3_1 - 1)"];
    assert_eq!(sys.len(), 3);
    for want in expected {
        assert!(
            sys.equations
                .iter()
                .any(|e| same_up_to_scalar(&e.poly, &poly(want))),
            "{}",
            want
        );
    }
    assert_eq!(sys.unknowns, vec!["r2", "s1_1", "s3_1", "s4_1"]);
}

#[test]
fn constraint_errors() {
    let spec = GroupSpec::uv(3, 1);
    let none = Substitution::new();
    assert!(generate_constraints(4, &spec, &[], &none).is_err());
    assert!(generate_constraints(2, &spec, &["PR9[i=1]".to_string()], &none).is_err());
    assert!(Preset::from_name("4local").is_err());
    for p in Preset::ALL {
        assert_eq!(Preset::from_name(p.name()).unwrap(), p);
    }
}

#[test]
fn three_local_system_is_tagged() {
    let sys = Preset::ThreeLocalVirtual.generate().unwrap();
    assert_eq!(sys.unknowns.len(), 27);
    let tags = Preset::ThreeLocalVirtual.tags();
    for e in &sys.equations {
        assert!(e.tags.iter().all(|t| tags.contains(t)));
    }
    for t in &tags {
        assert!(sys.equations.iter().any(|e| e.tags.contains(t)), "{}", t);
    }
}

fn rho_system() -> ConstraintSystem {
    Preset::TwoLocalVirtual
        .generate()
        .unwrap()
        .restricted_to(&["r1", "r2", "r3", "r4"])
}

#[test]
fn rho_subsystem_mod_p() {
    let sys = rho_system();
    assert_eq!(sys.len(), 9);
    let det = poly("r1*r4 - r2*r3");
    for p in [5u64, 7] {
        let sols = enumerate_solutions_mod_p(&sys, p, std::slice::from_ref(&det)).unwrap();
        assert_eq!(sols.solutions.len() as u64, p);
        let buckets = sols.buckets(|s| classify_rho_block([s[0], s[1], s[2], s[3]], p).to_string());
        assert_eq!(buckets.get("identity"), Some(&1));
        assert_eq!(buckets.get("antidiagonal"), Some(&(p as usize - 1)));
        assert_eq!(buckets.get("other"), None);
    }
}

#[test]
fn antidiagonal_sigma_is_unconstrained_mod_5() {
    let sys = Preset::TwoLocalVirtual.generate().unwrap();
    let nonzero = [poly("r1*r4 - r2*r3"), poly("s1_1*s4_1 - s2_1*s3_1")];
    let sols = enumerate_solutions_mod_p(&sys, 5, &nonzero).unwrap();
    let scan = antidiagonal_scan(&sols);
    assert_eq!(scan.gl2, 480);
    assert_eq!(scan.full_solutions, 4 * 480);
    assert!(scan.unconstrained());
}

#[test]
fn mod_p_rejects_bad_input() {
    let sys = rho_system();
    assert!(enumerate_solutions_mod_p(&sys, 2, &[]).is_err());
    assert!(enumerate_solutions_mod_p(&sys, 9, &[]).is_err());
    assert!(enumerate_solutions_mod_p(&sys, 101, &[]).is_err());
    let half = ConstraintSystem {
        unknowns: vec!["r1".into()],
        equations: vec![Equation {
            poly: poly("r1 - 1/5"),
            tags: vec![],
        }],
    };
    assert!(enumerate_solutions_mod_p(&half, 5, &[]).is_err());
    assert_eq!(
        enumerate_solutions_mod_p(&half, 7, &[]).unwrap().solutions,
        vec![vec![3]]
    );
}

#[test]
fn upsilon_prime_criterion_examples() {
    let spec = GroupSpec::uv(3, 1);
    let red = assigned(
        Family::UpsilonPrime,
        &spec,
        &[("s1_1", 2), ("s2_1", -1), ("s3_1", 3), ("s4_1", -2)],
    );
    let v = reducibility_criterion(&red).unwrap();
    assert!(v.reducible);
    assert_eq!(v.to_string(), "reducible; witness [1,1,1]^T");
    let w = v.witness.unwrap();
    assert!(invariant_check(
        &red.constant_generators().unwrap(),
        &w.vector,
        w.side
    ));

    let irr = assigned(
        Family::UpsilonPrime,
        &spec,
        &[("s1_1", 1), ("s2_1", 2), ("s3_1", 3), ("s4_1", 4)],
    );
    let v = reducibility_criterion(&irr).unwrap();
    assert!(!v.reducible);
    assert_eq!(v.to_string(), "irreducible");
    assert_eq!(burnside_dim(&irr.constant_generators().unwrap()), 9);
}

#[test]
fn upsilon_prime_row_branch() {
    let spec = GroupSpec::uv(3, 1);
    let rep = assigned(
        Family::UpsilonPrime,
        &spec,
        &[("s1_1", 2), ("s2_1", 3), ("s3_1", -1), ("s4_1", -2)],
    );
    let v = reducibility_criterion(&rep).unwrap();
    let w = v.witness.unwrap();
    assert_eq!(w.side, Side::Row);
    assert!(invariant_check(
        &rep.constant_generators().unwrap(),
        &w.vector,
        Side::Row
    ));
}

#[test]
fn mixed_branches_are_irreducible() {
    let spec = GroupSpec::uv(3, 2);
    let rep = assigned(
        Family::UpsilonPrime,
        &spec,
        &[
            ("s1_1", 2),
            ("s2_1", -1),
            ("s3_1", 3),
            ("s4_1", -2),
            ("s1_2", 2),
            ("s2_2", 3),
            ("s3_2", -1),
            ("s4_2", -2),
        ],
    );
    assert!(!reducibility_criterion(&rep).unwrap().reducible);
    assert_eq!(burnside_dim(&rep.constant_generators().unwrap()), 9);
}

#[test]
fn epsilon_witnesses() {
    let spec = GroupSpec::uv(4, 2);
    let mut pairs: Vec<(String, i64)> = Vec::new();
    for t in 1..=2 {
        for (k, v) in [
            (1, 2),
            (2, 3),
            (3, 5),
            (4, 7),
            (5, 11),
            (6, 13),
            (7, 17),
            (8, 19),
            (9, 23),
        ] {
            pairs.push((format!("s{}_{}", k, t), v + t as i64));
        }
    }
    for j in 1..=4u8 {
        let family = Family::Epsilon(j);
        let names = family.params(2);
        let mut vals: Vec<(&str, i64)> = vec![];
        for n in &names {
            let v = match n.as_str() {
                "r2" | "r6" => 2,
                other => pairs
                    .iter()
                    .find(|(k, _)| k == other)
                    .map(|p| p.1)
                    .unwrap_or(1),
            };
            vals.push((n.as_str(), v));
        }
        let rep = build_local_rep(family, &spec, &Params::assign(&vals)).unwrap();
        let v = reducibility_criterion(&rep).unwrap();
        assert!(v.reducible);
        let w = v.witness.unwrap();
        assert!(
            invariant_check(&rep.constant_generators().unwrap(), &w.vector, w.side),
            "{}",
            family
        );
        if j == 3 {
            let half = q(1).checked_div(&q(2)).unwrap();
            let want: Vec<Q> = (0..5)
                .map(|e| (0..e).fold(q(1), |a, _| a * &half))
                .collect();
            assert_eq!(
                w,
                Witness {
                    side: Side::Column,
                    vector: want
                }
            );
        }
    }
}

#[test]
fn epsilon4_readings() {
    let rep = build_local_rep(Family::Epsilon(4), &GroupSpec::uv(4, 2), &Params::Symbolic).unwrap();
    let readings = epsilon4_row_readings(&rep).unwrap();
    let holds: Vec<bool> = readings.iter().map(|r| r.1).collect();
    assert_eq!(holds, vec![false, false, true]);
    let upsilon =
        build_local_rep(Family::Upsilon, &GroupSpec::uv(3, 1), &Params::Symbolic).unwrap();
    assert!(epsilon4_row_readings(&upsilon).is_err());
}

#[test]
fn criterion_needs_assignment_and_family() {
    let spec = GroupSpec::uv(3, 1);
    let sym = build_local_rep(Family::UpsilonPrime, &spec, &Params::Symbolic).unwrap();
    assert!(reducibility_criterion(&sym).is_err());
    let ups = assigned(
        Family::Upsilon,
        &spec,
        &[
            ("r2", 1),
            ("s1_1", 1),
            ("s2_1", 2),
            ("s3_1", 3),
            ("s4_1", 4),
        ],
    );
    assert!(reducibility_criterion(&ups).is_err());
}

#[test]
fn spin_examples() {
    let e = |k: usize| -> Vec<Q> { (0..3).map(|j| if j == k { q(1) } else { q(0) }).collect() };
    let diag = qm(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
    assert_eq!(spin(std::slice::from_ref(&diag), &[e(0)]).len(), 1);
    let swap12 = qm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    assert_eq!(spin(&[swap12], &[e(0)]).len(), 2);
    let cycle = qm(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    assert_eq!(spin(std::slice::from_ref(&cycle), &[e(0)]).len(), 3);
    assert_eq!(spin(&[cycle], &[vec![q(1); 3]]).len(), 1);
    assert_eq!(spin(&[diag], &[vec![q(0); 3]]).len(), 0);
}

#[test]
fn burnside_examples() {
    assert_eq!(burnside_dim(&[]), 0);
    assert_eq!(burnside_dim(&[qm(&[&[1, 0], &[0, 2]])]), 2);
    assert_eq!(burnside_dim(&[qm(&[&[1, 1], &[0, 1]])]), 2);
    assert_eq!(
        burnside_dim(&[qm(&[&[1, 1], &[0, 1]]), qm(&[&[1, 0], &[1, 1]])]),
        4
    );
    assert_eq!(
        burnside_dim(&[qm(&[&[1, 1], &[0, 1]]), qm(&[&[2, 0], &[0, 1]])]),
        3
    );
}

#[test]
fn invariant_check_edge_cases() {
    let m = qm(&[&[1, 1], &[0, 1]]);
    assert!(invariant_check(
        std::slice::from_ref(&m),
        &[q(1), q(0)],
        Side::Column
    ));
    assert!(!invariant_check(
        std::slice::from_ref(&m),
        &[q(0), q(1)],
        Side::Column
    ));
    assert!(invariant_check(
        std::slice::from_ref(&m),
        &[q(0), q(1)],
        Side::Row
    ));
    assert!(!invariant_check(
        std::slice::from_ref(&m),
        &[q(0), q(0)],
        Side::Column
    ));
    assert!(!invariant_check(&[m], &[q(1), q(0), q(0)], Side::Column));
}

#[test]
fn verification_reports() {
    let spec = GroupSpec::uv(4, 2);
    let rep = build_local_rep(Family::Upsilon, &spec, &Params::Symbolic).unwrap();
    let rels = relations(&spec);
    let report = verify_relations(&rep, &rels, Mode::Symbolic).unwrap();
    assert_eq!(report.checks.len(), 18);
    assert!(report.all_pass());
    let sampled = verify_relations(&rep, &rels, Mode::Sampled { seed: 7, points: 2 }).unwrap();
    assert!(sampled.all_pass());
    assert_eq!(sampled.seed, Some(7));

    let uw = GroupSpec::uw(3, 1);
    let rep = build_local_rep(Family::Upsilon, &uw, &Params::Symbolic).unwrap();
    let report = verify_relations(&rep, &relations(&uw), Mode::Symbolic).unwrap();
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.tag.as_str())
        .collect();
    assert_eq!(failed, vec!["WR1[i=1,t=1]"]);
    let details = report
        .checks
        .iter()
        .find(|c| !c.passed())
        .unwrap()
        .details
        .as_ref()
        .unwrap();
    assert!(!details["residue"].as_array().unwrap().is_empty());
    let sampled =
        verify_relations(&rep, &relations(&uw), Mode::Sampled { seed: 1, points: 1 }).unwrap();
    assert_eq!(sampled.passed(), report.passed());
}

#[test]
fn welded_families_satisfy_welded_relations() {
    let spec = GroupSpec::uw(4, 2);
    for j in 1..=3u8 {
        for family in [Family::Omega(j), Family::OmegaPrime(j)] {
            let rep = build_local_rep(family, &spec, &Params::Symbolic).unwrap();
            let report = verify_relations(&rep, &relations(&spec), Mode::Symbolic).unwrap();
            assert!(report.all_pass(), "{}", family);
        }
    }
}

#[test]
fn factor_checks() {
    let spec = GroupSpec::uw(3, 1);
    let rels = relations(&spec);
    let wr1 = rels
        .iter()
        .find(|r| r.family == RelationFamily::WR1)
        .unwrap();
    let pk = factor_check(wr1, TargetMap::PiK, &spec).unwrap();
    assert!(!pk.kills);
    assert_eq!((pk.lhs.as_str(), pk.rhs.as_str()), ("(1 2)", "(2 3)"));
    assert!(factor_check(wr1, TargetMap::PiP, &spec).unwrap().kills);
    for rel in forbidden_relations(3, 1) {
        assert!(
            !factor_check(&rel, TargetMap::Phi(1), &GroupSpec::uv(3, 1))
                .unwrap()
                .kills
        );
    }
    assert!(factor_check(wr1, TargetMap::Phi(2), &spec).is_err());
    assert_eq!("phi".parse::<TargetMap>().unwrap(), TargetMap::Phi(1));
}

#[test]
fn criteria_match_burnside() {
    for (family, spec) in [
        (Family::UpsilonPrime, GroupSpec::uv(3, 1)),
        (Family::UpsilonPrime, GroupSpec::uv(3, 2)),
        (Family::OmegaPrime(1), GroupSpec::uw(3, 1)),
        (Family::OmegaPrime(2), GroupSpec::uw(3, 2)),
        (Family::OmegaPrime(3), GroupSpec::uw(3, 1)),
    ] {
        let a = criterion_agreement(family, &spec, 11, 12).unwrap();
        assert_eq!((a.on_locus, a.off_locus), (12, 12));
        assert!(a.ok(), "{:?}", a);
    }
    let ups = GroupSpec::uv(3, 1);
    assert!(criterion_agreement(Family::Upsilon, &ups, 0, 1).is_err());
}

#[test]
fn status_serialization() {
    let c = Check::new("PR1[i=1]", true);
    assert_eq!(
        serde_json::to_value(&c).unwrap(),
        serde_json::json!({"tag": "PR1[i=1]", "status": "pass"})
    );
    let f = Check::new("x", false).with_details(serde_json::json!(1));
    assert_eq!(serde_json::to_value(&f).unwrap()["status"], "fail");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn burnside_is_conjugation_invariant(
        a in proptest::collection::vec(-4i64..=4, 9),
        b in proptest::collection::vec(-4i64..=4, 9),
    ) {
        let m = |v: &[i64]| Matrix::new(3, 3, v.iter().map(|&x| q(x)).collect()).unwrap();
        let p = qm(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let pi = p.inverse().unwrap();
        let mats = [m(&a), m(&b)];
        let conj: Vec<Matrix<Q>> = mats.iter().map(|x| &(&p * x) * &pi).collect();
        prop_assert_eq!(burnside_dim(&mats), burnside_dim(&conj));
    }

    #[test]
    fn spin_is_invariant(
        a in proptest::collection::vec(-4i64..=4, 9),
        v in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let m = Matrix::new(3, 3, a.iter().map(|&x| q(x)).collect()).unwrap();
        let seed: Vec<Q> = v.iter().map(|&x| q(x)).collect();
        let basis = spin(std::slice::from_ref(&m), std::slice::from_ref(&seed));
        let zero = seed.iter().all(Zero::is_zero);
        prop_assert_eq!(basis.is_empty(), zero);
        if basis.len() == 1 {
            prop_assert!(invariant_check(&[m], &seed, Side::Column));
        }
        for b in &basis {
            prop_assert!(b.iter().any(|x| x.is_one()));
        }
    }
}

#[test]
fn three_local_families_satisfy_all_relations() {
    for n in [4, 5] {
        let spec = GroupSpec::uv(n, 2);
        for j in 1..=4u8 {
            let rep = build_local_rep(Family::Epsilon(j), &spec, &Params::Symbolic).unwrap();
            let report = verify_relations(&rep, &relations(&spec), Mode::Symbolic).unwrap();
            assert!(report.all_pass(), "epsilon{} n={}", j, n);
        }
    }
}
