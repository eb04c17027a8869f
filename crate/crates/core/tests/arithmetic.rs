//! Field axioms, the scalar grammar, and bilinearity of the bracket.

use num_traits::{One, Zero};
use proptest::prelude::*;

use sleib::algebra::bracket;
use sleib::scalar::{format_scalar, parse_scalar};
use sleib::{build_table, GaussianRational as G, ParamVector};

fn scalar() -> impl Strategy<Value = G> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12).prop_map(|(a, b, c, d)| G::complex((a, b), (c, d)))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<G>> {
    proptest::collection::vec(scalar(), dim)
}

proptest! {
    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + G::zero(), a.clone());
        prop_assert_eq!(&a * G::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses(a in scalar()) {
        match a.inv() {
            None => prop_assert!(a.is_zero()),
            Some(x) => prop_assert_eq!(&a * x, G::one()),
        }
    }

    #[test]
    fn norm_is_multiplicative(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
        prop_assert_eq!(&a * a.conj(), G::real(a.norm_sqr()));
    }

    #[test]
    fn grammar_round_trip(a in scalar()) {
        let s = format_scalar(&a);
        prop_assert_eq!(parse_scalar(&s).unwrap(), a);
        prop_assert!(!s.contains("+0i") && !s.contains(' '));
    }

    #[test]
    fn bracket_is_bilinear(
        values in proptest::collection::vec(-3i64..4, 4),
        x in vector(6), y in vector(6), z in vector(6), k in scalar(),
    ) {
        let t = build_table(&ParamVector::from_ints(&values).unwrap());
        let add = |u: &[G], v: &[G]| u.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<_>>();
        let scale = |u: &[G]| u.iter().map(|a| &k * a).collect::<Vec<_>>();
        let xz = bracket(&t, &x, &z).unwrap();
        prop_assert_eq!(bracket(&t, &add(&x, &y), &z).unwrap(), add(&xz, &bracket(&t, &y, &z).unwrap()));
        prop_assert_eq!(bracket(&t, &x, &add(&y, &z)).unwrap(), add(&bracket(&t, &x, &y).unwrap(), &xz));
        prop_assert_eq!(bracket(&t, &scale(&x), &z).unwrap(), scale(&xz));
        prop_assert_eq!(bracket(&t, &x, &scale(&z)).unwrap(), scale(&xz));
    }
}

#[test]
fn grammar_examples() {
    assert_eq!(format_scalar(&G::complex((-5, 3), (2, 1))), "-5/3+2i");
    assert_eq!(parse_scalar("i").unwrap(), G::i());
    assert_eq!(parse_scalar("-i").unwrap(), -G::i());
    assert_eq!(parse_scalar("4/6").unwrap(), G::from_ratio(2, 3));
    assert!(parse_scalar("1/0").is_err());
    assert!(parse_scalar("2x").is_err());
}
