use proptest::prelude::*;

use super::*;
use crate::exactnum::parse_poly;
use crate::presentations::{free_reduce, make_spec, parse_word, Flavor, Letter};

fn p(s: &str) -> RatFunc {
    RatFunc::from_poly(parse_poly(s).unwrap())
}

fn frac(num: &str, den: &str) -> RatFunc {
    p(num).try_div(&p(den)).unwrap()
}

fn pm(rows: &[&[&str]]) -> Matrix<RatFunc> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| p(s)).collect())
            .collect(),
    )
}

fn sym(family: Family, spec: &GroupSpec) -> LocalRep {
    build_local_rep(family, spec, &Params::Symbolic).unwrap()
}

fn word(text: &str, spec: &GroupSpec) -> Word {
    parse_word(text, spec).unwrap()
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }
    assert_eq!("f_rep".parse::<Family>().unwrap(), Family::FRep);
    assert_eq!(
        "upsilon_prime".parse::<Family>().unwrap(),
        Family::UpsilonPrime
    );
    assert!(matches!(
        "lawrence".parse::<Family>(),
        Err(Error::UnknownFamily(_))
    ));
}

#[test]
fn upsilon_blocks() {
    let rep = sym(Family::Upsilon, &GroupSpec::uv(3, 1));
    assert_eq!(rep.degree, 3);
    assert_eq!(rep.params, vec!["r2", "s1_1", "s2_1", "s3_1", "s4_1"]);
    let rho = Matrix::from_rows(vec![vec![p("0"), p("r2")], vec![frac("1", "r2"), p("0")]]);
    assert_eq!(rep.rho_block, rho);
    assert_eq!(
        rep.sigma_blocks[0],
        pm(&[&["s1_1", "s2_1"], &["s3_1", "s4_1"]])
    );
    let conds: Vec<&RatFunc> = rep.side_conditions.iter().map(|c| &c.expr).collect();
    assert_eq!(conds, vec![&p("r2"), &p("s1_1*s4_1 - s2_1*s3_1")]);
}

#[test]
fn epsilon3_blocks() {
    let rep = sym(Family::Epsilon(3), &GroupSpec::uv(4, 2));
    assert_eq!(rep.degree, 5);
    let r = &rep.rho_block;
    assert_eq!(r.row(1), &[frac("1", "r6"), p("-1"), p("r6")]);
    let s = &rep.sigma_blocks[0];
    assert_eq!(
        s.row(1),
        &[p("s4_1"), p("s5_1"), p("r6*(1 - r6*s4_1 - s5_1)")]
    );
    assert_eq!(rep.sigma_blocks[1].row(1)[2], p("r6 - r6^2*s4_2 - r6*s5_2"));
}

#[test]
fn omega2_assignment() {
    let params = Params::assign(&[("r2", 1), ("s2_1", 1), ("s4_1", 2)]);
    let rep = build_local_rep(Family::Omega(2), &GroupSpec::uw(3, 1), &params).unwrap();
    assert_eq!(rep.sigma_blocks[0], pm(&[&["0", "1"], &["1", "2"]]));
    assert!(rep
        .side_conditions
        .iter()
        .all(|c| c.expr.as_constant().is_some()));
}

#[test]
fn side_conditions_are_enforced() {
    let uv = GroupSpec::uv(3, 1);
    let bad_r2 = Params::assign(&[
        ("r2", 0),
        ("s1_1", 1),
        ("s2_1", 0),
        ("s3_1", 0),
        ("s4_1", 1),
    ]);
    assert!(matches!(
        build_local_rep(Family::Upsilon, &uv, &bad_r2),
        Err(Error::SideCondition(_))
    ));
    let singular = Params::assign(&[
        ("r2", 1),
        ("s1_1", 1),
        ("s2_1", 2),
        ("s3_1", 2),
        ("s4_1", 4),
    ]);
    assert!(matches!(
        build_local_rep(Family::Upsilon, &uv, &singular),
        Err(Error::SideCondition(_))
    ));
    let missing = Params::assign(&[("r2", 1)]);
    assert!(matches!(
        build_local_rep(Family::Upsilon, &uv, &missing),
        Err(Error::MissingVariable(_))
    ));
    let extra = Params::assign(&[
        ("r2", 1),
        ("s1_1", 1),
        ("s2_1", 0),
        ("s3_1", 0),
        ("s4_1", 1),
        ("x", 1),
    ]);
    assert!(matches!(
        build_local_rep(Family::Upsilon, &uv, &extra),
        Err(Error::UnknownParameter(_))
    ));

    let uv42 = GroupSpec::uv(4, 2);
    let eps = Params::assign(&[
        ("r6", 2),
        ("s4_1", 1),
        ("s5_1", 0),
        ("s4_2", 1),
        ("s5_2", 1),
    ]);
    assert!(matches!(
        build_local_rep(Family::Epsilon(3), &uv42, &eps),
        Err(Error::SideCondition(_))
    ));
    let om = Params::assign(&[("r2", 1), ("s2_1", 0), ("s3_1", 1)]);
    assert!(matches!(
        build_local_rep(Family::Omega(1), &GroupSpec::uw(3, 1), &om),
        Err(Error::SideCondition(_))
    ));
}

#[test]
fn family_spec_compatibility() {
    let mismatch = |f: Family, spec: GroupSpec| {
        matches!(
            build_local_rep(f, &spec, &Params::Symbolic),
            Err(Error::FamilyMismatch { .. })
        )
    };
    assert!(mismatch(Family::Epsilon(1), GroupSpec::uv(4, 1)));
    assert!(mismatch(Family::Omega(1), GroupSpec::uv(3, 1)));
    assert!(mismatch(Family::OmegaPrime(2), GroupSpec::uv(3, 2)));
    assert!(mismatch(Family::Burau, GroupSpec::uv(3, 1)));
    assert!(mismatch(Family::FRep, make_spec(Flavor::Vt, 3, 1).unwrap()));
    assert!(!mismatch(
        Family::Burau,
        make_spec(Flavor::Vb, 3, 1).unwrap()
    ));
}

#[test]
fn word_evaluation() {
    let uv = GroupSpec::uv(3, 1);
    let ups = sym(Family::Upsilon, &uv);
    assert!(ups.eval_word(&word("r1 r1", &uv)).unwrap().is_identity());
    assert!(ups
        .eval_word(&word("s1,1 s2,1 s2,1^-1 s1,1^-1", &uv))
        .unwrap()
        .is_identity());

    let vb = make_spec(Flavor::Vb, 3, 1).unwrap();
    let burau = sym(Family::Burau, &vb);
    assert_eq!(
        burau.eval_word(&word("s1,1 s2,1 s1,1", &vb)).unwrap(),
        burau.eval_word(&word("s2,1 s1,1 s2,1", &vb)).unwrap()
    );

    let params = Params::assign(&[("s1_1", 2), ("s2_1", -1), ("s3_1", 3), ("s4_1", -2)]);
    let up = build_local_rep(Family::UpsilonPrime, &uv, &params).unwrap();
    let m = up.eval_word(&word("s1,1", &uv)).unwrap();
    let ones = pm(&[&["1"], &["1"], &["1"]]);
    assert_eq!(&m * &ones, ones);
}

#[test]
fn classical_determinants() {
    let vb = make_spec(Flavor::Vb, 3, 1).unwrap();
    for f in [Family::Burau, Family::FRep] {
        let rep = sym(f, &vb);
        assert_eq!(
            rep.sigma_blocks[0].det_fraction_free().unwrap(),
            p("-t"),
            "{}",
            f
        );
    }
    assert_eq!(sym(Family::FRep, &vb).degree, 4);
}

#[test]
fn epsilon2_corner_has_upsilon_shape() {
    let rep = sym(Family::Epsilon(2), &GroupSpec::uv(4, 2));
    for b in std::iter::once(&rep.rho_block).chain(&rep.sigma_blocks) {
        assert_eq!(b.row(2), &[p("0"), p("0"), p("1")]);
        assert_eq!((b.get(0, 2), b.get(1, 2)), (&p("0"), &p("0")));
    }
    assert_eq!(rep.rho_block.get(0, 1), &p("r2"));
    assert_eq!(rep.rho_block.get(1, 0), &frac("1", "r2"));
}

#[test]
fn homogeneity() {
    let spec = GroupSpec::uv(5, 2);
    for f in [Family::Upsilon, Family::Epsilon(4)] {
        let rep = sym(f, &spec);
        for i in 1..spec.n {
            let m = rep.generator_matrix(Generator::Rho(i)).unwrap();
            let k = rep.block_size;
            for a in 0..k {
                for b in 0..k {
                    assert_eq!(m.get(i - 1 + a, i - 1 + b), rep.rho_block.get(a, b));
                }
            }
        }
    }
}

#[test]
fn upsilon_conjugates_to_prime_form() {
    let spec = GroupSpec::uv(4, 2);
    let ups = sym(Family::Upsilon, &spec);
    let r2 = RatFunc::var(&ups.vars, "r2").unwrap();
    let image = conjugate_by_diagonal(&ups, &frac("1", "r2"), Family::UpsilonPrime).unwrap();
    assert_eq!(image.rho_block, pm(&[&["0", "1"], &["1", "0"]]));
    let expected = Matrix::from_rows(vec![
        vec![p("s1_2"), p("s2_2").try_div(&r2).unwrap()],
        vec![p("r2*s3_2"), p("s4_2")],
    ]);
    assert_eq!(image.sigma_blocks[1], expected);

    match conjugation_equivalence(&ups, &image).unwrap() {
        Equivalence::Found { q, witness } => {
            assert_eq!(q, frac("1", "r2"));
            assert_eq!(witness.get(3, 3), &frac("1", "r2^3"));
        }
        other => panic!("{}", other),
    }
    let same = conjugation_equivalence(&ups, &ups).unwrap();
    assert!(matches!(same, Equivalence::Found { ref q, .. } if q == &p("1")));

    // the generic primed family uses independent entries
    let generic = sym(Family::UpsilonPrime, &spec);
    let miss = conjugation_equivalence(&ups, &generic).unwrap();
    assert!(matches!(miss, Equivalence::NotFound { ref attempts } if attempts.len() == 2));
}

#[test]
fn omega_conjugates_to_prime_forms() {
    let spec = GroupSpec::uw(4, 2);
    for j in 1..=3 {
        let a = sym(Family::Omega(j), &spec);
        let b = sym(Family::OmegaPrime(j), &spec);
        let eq = conjugation_equivalence(&a, &b).unwrap();
        assert!(
            matches!(eq, Equivalence::Found { ref q, .. } if q == &frac("1", "r2")),
            "omega{}",
            j
        );
    }
    let b = sym(Family::OmegaPrime(1), &spec);
    let r2 = RatFunc::var(&b.vars, "r2").unwrap();
    let expected = Matrix::from_rows(vec![
        vec![p("0"), p("s2_1").try_div(&r2).unwrap()],
        vec![p("r2*s3_1"), p("0")],
    ]);
    assert_eq!(b.sigma_blocks[0], expected);
}

#[test]
fn degree_mismatch_is_an_error() {
    let a = sym(Family::Upsilon, &GroupSpec::uv(4, 2));
    let b = sym(Family::Epsilon(1), &GroupSpec::uv(4, 2));
    assert!(matches!(
        conjugation_equivalence(&a, &b),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn numeric_specialization() {
    let uv = GroupSpec::uv(3, 1);
    let rep = sym(Family::Upsilon, &uv);
    let at: BTreeMap<String, GaussianRational> = [
        ("r2", 2),
        ("s1_1", 1),
        ("s2_1", 2),
        ("s3_1", 3),
        ("s4_1", 4),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), GaussianRational::from_integer(*v)))
    .collect();
    let mats = rep.numeric_generators(&at).unwrap();
    assert_eq!(mats.len(), 4);
    assert_eq!(mats[0].get(1, 0), &GaussianRational::from_ratio(1, 2));
    assert!(matches!(
        rep.constant_generators(),
        Err(Error::MissingVariable(_))
    ));
}

fn arb_word(n: usize, c: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let letter = (any::<bool>(), 1..n, 1..=c, any::<bool>()).prop_map(|(rho, i, t, inv)| {
        let g = if rho {
            Generator::Rho(i)
        } else {
            Generator::Sigma(i, t)
        };
        Letter::new(g, if inv { -1 } else { 1 })
    });
    proptest::collection::vec(letter, 0..max_len).prop_map(Word::from_letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eval_is_constant_on_reduction_classes(w in arb_word(3, 2, 8)) {
        let spec = GroupSpec::uv(3, 2);
        let rep = sym(Family::Upsilon, &spec);
        prop_assert_eq!(rep.eval_word(&w).unwrap(), rep.eval_word(&free_reduce(&w, &spec)).unwrap());
    }

    #[test]
    fn eval_is_multiplicative(a in arb_word(4, 2, 5), b in arb_word(4, 2, 5)) {
        let spec = GroupSpec::uv(4, 2);
        let rep = sym(Family::Epsilon(3), &spec);
        let lhs = rep.eval_word(&a.concat(&b)).unwrap();
        let rhs = &rep.eval_word(&a).unwrap() * &rep.eval_word(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
