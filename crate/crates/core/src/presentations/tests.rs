use proptest::prelude::*;

use super::*;

fn w(text: &str, spec: &GroupSpec) -> Word {
    parse_word(text, spec).unwrap()
}

fn count(spec: &GroupSpec, family: RelationFamily) -> usize {
    relations(spec)
        .iter()
        .filter(|r| r.family == family)
        .count()
}

#[test]
fn spec_construction() {
    let uv = make_spec(Flavor::Uv, 3, 1).unwrap();
    assert!(
        !uv.welded
            && uv.braid_rel_types.is_empty()
            && uv.involutive_types.is_empty()
            && !uv.singular
    );

    let wt = make_spec(Flavor::Wt, 4, 1).unwrap();
    assert!(wt.welded);
    assert_eq!(
        wt.involutive_types.iter().copied().collect::<Vec<_>>(),
        vec![1]
    );

    let wsg = make_spec(Flavor::Wsg, 4, 2).unwrap();
    assert!(wsg.welded && wsg.singular);
    assert_eq!(wsg.braid_rel_types.len(), 2);

    assert!(make_spec(Flavor::Vsg, 4, 1).is_err());
    assert!(make_spec(Flavor::Vb, 1, 1).is_err());
    assert!("xyz".parse::<Flavor>().is_err());
    assert_eq!("mwb".parse::<Flavor>().unwrap(), Flavor::Mwb);
}

#[test]
fn relation_counts() {
    use RelationFamily::*;
    let uv31 = GroupSpec::uv(3, 1);
    assert_eq!(relations(&uv31).len(), 4);
    assert_eq!(
        (count(&uv31, PR1), count(&uv31, PR3), count(&uv31, MR2)),
        (1, 2, 1)
    );

    let uv42 = GroupSpec::uv(4, 2);
    assert_eq!(relations(&uv42).len(), 18);
    let counts: Vec<usize> = [PR1, PR2, PR3, CR, MR1, MR2]
        .iter()
        .map(|&f| count(&uv42, f))
        .collect();
    assert_eq!(counts, vec![2, 1, 3, 4, 4, 4]);

    let uw31 = GroupSpec::uw(3, 1);
    assert_eq!(relations(&uw31).len(), 5);
    assert_eq!(count(&uw31, WR1), 1);
}

#[test]
fn relation_tags_are_unique() {
    for flavor in Flavor::ALL {
        let c = flavor.fixed_c().unwrap_or(3);
        let spec = make_spec(flavor, 5, c).unwrap();
        let rels = relations(&spec);
        let mut tags: Vec<&str> = rels.iter().map(|r| r.tag.as_str()).collect();
        tags.sort();
        tags.dedup();
        assert_eq!(tags.len(), rels.len(), "{}", spec);
    }
    let tags: Vec<String> = relations(&GroupSpec::uw(3, 1))
        .into_iter()
        .map(|r| r.tag)
        .collect();
    assert_eq!(
        tags,
        vec![
            "PR1[i=1]",
            "PR3[i=1]",
            "PR3[i=2]",
            "MR2[i=1,t=1]",
            "WR1[i=1,t=1]"
        ]
    );
}

#[test]
fn parsing() {
    let spec = GroupSpec::uv(3, 1);
    let word = w("r1 s2,1 s1,1", &spec);
    assert_eq!(
        word,
        Word::positive(&[
            Generator::Rho(1),
            Generator::Sigma(2, 1),
            Generator::Sigma(1, 1)
        ])
    );

    let word = w("s1,1^-1 r2", &spec);
    assert_eq!(
        word.letters(),
        &[
            Letter::new(Generator::Sigma(1, 1), -1),
            Letter::new(Generator::Rho(2), 1)
        ]
    );
    assert_eq!(word.to_string(), "s1,1^-1 r2");
    assert!(w("", &spec).is_empty());

    let err = parse_word("s1,3", &GroupSpec::uv(3, 2)).unwrap_err();
    assert!(matches!(err, Error::IndexOutOfRange(ref m) if m.contains("type index 3 > c = 2")));
    assert!(matches!(
        parse_word("r1 r3", &spec),
        Err(Error::IndexOutOfRange(_))
    ));
    assert!(matches!(
        parse_word("r1 x2", &spec),
        Err(Error::Syntax { pos: 3, .. })
    ));
    assert!(matches!(
        parse_word("s1", &spec),
        Err(Error::Syntax { pos: 0, .. })
    ));
    assert!(matches!(
        parse_word("r1^2", &spec),
        Err(Error::Syntax { .. })
    ));
    assert!(matches!(parse_word("R1", &spec), Err(Error::Syntax { .. })));
}

#[test]
fn reduction() {
    let spec = GroupSpec::uv(3, 1);
    assert!(free_reduce(&w("r1 r1", &spec), &spec).is_empty());
    assert!(free_reduce(&w("r1^-1 r1", &spec), &spec).is_empty());
    assert!(free_reduce(&w("s1,1 s1,1^-1", &spec), &spec).is_empty());
    assert_eq!(free_reduce(&w("s1,1 s1,1", &spec), &spec).len(), 2);
    assert_eq!(free_reduce(&w("r2^-1", &spec), &spec), w("r2", &spec));
    assert!(free_reduce(&w("s1,1 r2 r2 s1,1^-1", &spec), &spec).is_empty());

    let wt = make_spec(Flavor::Wt, 3, 1).unwrap();
    assert!(free_reduce(&w("s1,1 s1,1", &wt), &wt).is_empty());
}

#[test]
fn two_strand_normal_form() {
    let spec = GroupSpec::uv(2, 2);
    assert!(normal_form_n2(&w("r1 r1 s1,1 s1,1^-1", &spec), &spec)
        .unwrap()
        .is_empty());
    assert_eq!(
        normal_form_n2(&w("s1,1 r1 r1 s1,2", &spec), &spec).unwrap(),
        w("s1,1 s1,2", &spec)
    );
    assert_eq!(
        normal_form_n2(&w("r1 s1,1 r1", &spec), &spec).unwrap(),
        w("r1 s1,1 r1", &spec)
    );
    assert!(matches!(
        normal_form_n2(&Word::empty(), &GroupSpec::uv(3, 1)),
        Err(Error::InvalidGroup(_))
    ));
}

#[test]
fn permutation_images() {
    let spec = GroupSpec::uv(3, 2);
    let s1 = Permutation::transposition(3, 1);
    let s2 = Permutation::transposition(3, 2);

    let p = perm_image(&w("r1 s1,1 r2", &spec), PermMap::PiK, 3);
    assert_eq!(p, s1.compose(&s2));
    assert_eq!(p.to_string(), "(1 2 3)");
    assert_eq!(
        perm_image(&w("s1,1", &spec), PermMap::PiP, 3).to_string(),
        "(1 2)"
    );
    assert!(perm_image(&w("s1,1 s2,2 s1,2", &spec), PermMap::PiK, 3).is_identity());
    assert_eq!(Permutation::identity(3).to_string(), "()");

    assert_eq!(iota_check(&w("r1 r2", &spec), 3).unwrap(), s1.compose(&s2));
    assert!(iota_check(&w("r1 s1,1", &spec), 3).is_err());
    assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    assert_eq!(Permutation::from_images(&[2, 3, 1]).unwrap().apply(1), 2);
}

#[test]
fn phi_images() {
    let spec = GroupSpec::uv(3, 2);
    let s1 = Permutation::transposition(3, 1);
    let s2 = Permutation::transposition(3, 2);
    let lhs = w("r1 s2,1 s1,1", &spec);
    let rhs = w("s2,1 s1,1 r2", &spec);
    assert_eq!(
        phi(&lhs, 1, &spec).unwrap(),
        PhiImage {
            count: 2,
            perm: s1.clone()
        }
    );
    assert_eq!(
        phi(&rhs, 1, &spec).unwrap(),
        PhiImage { count: 2, perm: s2 }
    );
    assert_eq!(
        phi(&lhs, 2, &spec).unwrap(),
        PhiImage { count: 0, perm: s1 }
    );
    assert_eq!(phi(&lhs, 1, &spec).unwrap().to_string(), "(2, (1 2))");
    assert_eq!(phi(&w("s1,1^-1", &spec), 1, &spec).unwrap().count, -1);
    assert!(phi(&lhs, 3, &spec).is_err());
}

#[test]
fn abelianization_examples() {
    let spec = GroupSpec::uw(3, 2);
    let relator = w("r1 s2,1 s1,1 r2^-1 s1,1^-1 s2,1^-1", &spec);
    assert!(abelianize(&relator, &spec).unwrap().is_zero());
    let a = abelianize(&w("s1,1 s2,1 r1 r2 r1", &spec), &spec).unwrap();
    assert_eq!((a.sigma_exponents.clone(), a.rho_parity), (vec![2, 0], 1));
    assert_eq!(a.to_string(), "((2, 0), 1)");
    assert!(abelianize(&Word::empty(), &spec).unwrap().is_zero());
}

#[test]
fn coxeter_maps_kill_relations() {
    for flavor in Flavor::ALL {
        for n in 2..=5 {
            let c = flavor.fixed_c().unwrap_or(2);
            let spec = make_spec(flavor, n, c).unwrap();
            for r in relations(&spec) {
                assert!(
                    perm_image(&r.relator(), PermMap::PiP, n).is_identity(),
                    "{} {}",
                    spec,
                    r
                );
                // the welded relation lands on s_i = s_{i+1} under piK
                let killed = perm_image(&r.relator(), PermMap::PiK, n).is_identity();
                assert_eq!(killed, r.family != RelationFamily::WR1, "{} {}", spec, r);
            }
        }
    }
}

#[test]
fn phi_separates_forbidden_moves() {
    for n in 3..=5 {
        let spec = GroupSpec::uv(n, 2);
        for r in relations(&spec) {
            for t0 in 1..=2 {
                assert!(phi(&r.relator(), t0, &spec).unwrap().is_identity(), "{}", r);
            }
        }
        for r in forbidden_relations(n, 2) {
            assert!(!phi(&r.relator(), 1, &spec).unwrap().is_identity(), "{}", r);
        }
    }
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
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn maps_are_homomorphisms(a in arb_word(4, 3, 12), b in arb_word(4, 3, 12)) {
        let spec = GroupSpec::uv(4, 3);
        let ab = a.concat(&b);
        for map in [PermMap::PiP, PermMap::PiK] {
            prop_assert_eq!(perm_image(&ab, map, 4), perm_image(&a, map, 4).compose(&perm_image(&b, map, 4)));
        }
        for t0 in 1..=3 {
            let lhs = phi(&ab, t0, &spec).unwrap();
            let rhs = phi(&a, t0, &spec).unwrap().compose(&phi(&b, t0, &spec).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        let lhs = abelianize(&ab, &spec).unwrap();
        let rhs = abelianize(&a, &spec).unwrap().add(&abelianize(&b, &spec).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_reduce_is_idempotent(a in arb_word(3, 2, 20)) {
        let spec = make_spec(Flavor::Vt, 3, 1).unwrap();
        let spec = GroupSpec { c: 2, ..spec };
        let r = free_reduce(&a, &spec);
        prop_assert!(r.len() <= a.len());
        prop_assert_eq!(free_reduce(&r, &spec), r.clone());
        prop_assert_eq!(perm_image(&r, PermMap::PiP, 3), perm_image(&a, PermMap::PiP, 3));
    }

    #[test]
    fn two_strand_normal_forms_decide_equality(a in arb_word(2, 2, 8), b in arb_word(2, 2, 8), x in arb_word(2, 2, 4)) {
        let spec = GroupSpec::uv(2, 2);
        let nf = |u: &Word| normal_form_n2(u, &spec).unwrap();
        prop_assert_eq!(nf(&a) == nf(&b), free_reduce(&a.concat(&b.inverse()), &spec).is_empty());
        // inserting x x^-1 never changes the normal form
        let padded = a.concat(&x).concat(&x.inverse()).concat(&b);
        prop_assert_eq!(nf(&padded), nf(&a.concat(&b)));
    }
}
