use mild2::linking::{
    eliminate_generator, koch_presentation, linking_data, OrderedPrimeSet, Presentation,
    QuadraticRelator,
};
use mild2::Error;
use proptest::prelude::*;

mod common;

const FIRST: &str = "\
r_1 = [x1,x2][x1,x4][x1,x5]
r_2 = [x2,x1][x2,x3][x2,x5]
r_3 = [x3,x2][x3,x4]
r_4 = x4^2[x4,x1][x4,x3][x4,x5]
r_5 = x5^2[x5,x1][x5,x2]
r = x4x5
";

const FIRST_REDUCED: &str = "\
r_1' = [x1,x2]
r_2' = [x2,x1][x2,x3][x2,x4]
r_3' = [x3,x2][x3,x4]
r_4' = x4^2[x4,x1][x4,x3]
";

const SECOND_REDUCED: &str = "\
r_1' = [x1,x4]
r_2' = [x2,x3]
r_3' = x3^2[x3,x1][x3,x4]
r_4' = x4^2[x4,x2][x4,x3]
";

fn set(v: &[u64]) -> OrderedPrimeSet {
    OrderedPrimeSet::from_u64s(v).unwrap()
}

#[test]
fn golden_presentations() {
    let p = koch_presentation(&set(&[41, 13, 5, 3, 19]));
    assert_eq!(p.to_text(), FIRST);
    assert_eq!(eliminate_generator(&p, None).unwrap().to_text(), FIRST_REDUCED);
    let q = koch_presentation(&set(&[5, 29, 7, 11, 3]));
    assert_eq!(q.render_product_relation().unwrap(), "x3x4x5");
    assert_eq!(eliminate_generator(&q, None).unwrap().to_text(), SECOND_REDUCED);
}

#[test]
fn explicit_elimination_target() {
    let p = koch_presentation(&set(&[41, 13, 5, 3, 19]));
    let q = eliminate_generator(&p, Some(3)).unwrap();
    assert_eq!(q.provenance.eliminated, vec![4]);
    assert_eq!(q.provenance.labels, vec![1, 2, 3, 5]);
    assert!(matches!(
        eliminate_generator(&p, Some(0)),
        Err(Error::NoEliminableGenerator(_))
    ));
    assert!(eliminate_generator(&q, None).is_err());
}

#[test]
fn json_rejects_malformed_documents() {
    for doc in [
        "",
        "{}",
        "[1,2]",
        r#"{"d": 2, "relators": [{"comms": [[1, 3]]}]}"#,
        r#"{"d": 2, "relators": [{"owner": 1, "square": 2, "comms": []}]}"#,
    ] {
        assert!(Presentation::from_json(doc).is_err(), "{doc:?}");
    }
}

#[test]
fn relator_parse_errors() {
    for bad in ["", "x1", "[x1,x2", "[x1x2]", "x0^2", "x6^2", "y1^2"] {
        assert!(QuadraticRelator::parse(bad, 5).is_err(), "{bad:?}");
    }
    assert!(QuadraticRelator::parse("[x1,x1]", 2).unwrap().is_zero());
    let r = QuadraticRelator::parse("[x1,x2][x2,x1] x3²", 3).unwrap();
    assert_eq!(r.render(None), "x3^2");
}

proptest! {
    #[test]
    fn linking_symmetric_when_one_prime_is_one_mod_four(primes in common::prime_subset(2, 8)) {
        let s = set(&primes);
        let l = linking_data(&s);
        for i in 0..l.n() {
            prop_assert!(!l.ell[i][i]);
            for j in 0..l.n() {
                if i != j && !(l.a[i] && l.a[j]) {
                    prop_assert_eq!(l.ell[i][j], l.ell[j][i]);
                } else if i != j {
                    prop_assert_ne!(l.ell[i][j], l.ell[j][i]);
                }
            }
        }
    }

    #[test]
    fn linking_is_permutation_equivariant(
        (primes, perm) in common::prime_subset(2, 8)
            .prop_flat_map(|p| { let n = p.len(); (Just(p), common::permutation(n)) })
    ) {
        let s = set(&primes);
        let t = s.permuted(&perm);
        let (l, m) = (linking_data(&s), linking_data(&t));
        for i in 0..s.len() {
            prop_assert_eq!(l.a[i], m.a[perm[i]]);
            for j in 0..s.len() {
                prop_assert_eq!(l.ell[i][j], m.ell[perm[i]][perm[j]]);
            }
        }
        let p = koch_presentation(&s);
        let q = koch_presentation(&t);
        for (k, r) in p.relators.iter().enumerate() {
            prop_assert_eq!(&r.relator.permuted(&perm), &q.relators[perm[k]].relator);
        }
    }

    #[test]
    fn presentation_json_round_trip(primes in common::prime_subset(1, 8), eliminate in any::<bool>()) {
        let mut p = koch_presentation(&set(&primes));
        if eliminate {
            if let Ok(q) = eliminate_generator(&p, None) {
                p = q;
            }
        }
        let back = Presentation::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.to_text(), p.to_text());
        prop_assert_eq!(back.quadratic_relators(), p.quadratic_relators());
        prop_assert_eq!(back.provenance.labels, p.provenance.labels);
    }

    #[test]
    fn relator_text_round_trip(d in 2usize..7, bits in proptest::collection::vec(any::<bool>(), 30), owner in 0usize..7) {
        let r = common::relator_from_bits(d, &bits);
        let owner = (owner < d).then_some(owner);
        prop_assert_eq!(QuadraticRelator::parse(&r.render(owner), d).unwrap(), r);
    }

    #[test]
    fn elimination_removes_the_generator(primes in common::prime_subset(2, 8)) {
        let p = koch_presentation(&set(&primes));
        let c = p.product_relation.clone().unwrap();
        match eliminate_generator(&p, None) {
            Ok(q) => {
                let t = c.iter().rposition(|&b| b).unwrap();
                prop_assert_eq!(q.d, p.d - 1);
                prop_assert_eq!(q.relators.len(), p.relators.len() - 1);
                prop_assert!(q.product_relation.is_none());
                prop_assert_eq!(q.provenance.eliminated.clone(), vec![t + 1]);
                // relators whose owner commutes with nothing involving x_t are only relabeled
                for r in &p.relators {
                    let i = r.owner.unwrap();
                    if i == t || r.relator.comm(i, t) {
                        continue;
                    }
                    let keep: Vec<usize> = (0..p.d).filter(|&k| k != t).collect();
                    let reduced = &q.relators.iter().find(|s| s.owner == Some(keep.iter().position(|&k| k == i).unwrap())).unwrap().relator;
                    for (a, &ka) in keep.iter().enumerate() {
                        prop_assert_eq!(reduced.square(a), r.relator.square(ka));
                        for (b, &kb) in keep.iter().enumerate() {
                            if a != b {
                                prop_assert_eq!(reduced.comm(a, b), r.relator.comm(ka, kb));
                            }
                        }
                    }
                }
            }
            Err(Error::NoEliminableGenerator(_)) => prop_assert!(c.iter().all(|&b| !b)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
