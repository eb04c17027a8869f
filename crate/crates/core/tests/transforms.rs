//! Structural properties of the tables and of adapted basis changes.

use sleib::algebra::{extract_params, is_filiform, leibniz_violations};
use sleib::sampling::{random_nonzero_scalar, random_params, rng_for};
use sleib::transform::{elementary_eta, elementary_sigma, transport};
use sleib::{build_table, AdaptedTriple, Error, GaussianRational as G, ParamVector};

#[test]
fn random_tables_are_leibniz_and_filiform() {
    for dim in 5..=10 {
        let mut rng = rng_for(21, &[dim as u64]);
        for _ in 0..25 {
            let t = build_table(&random_params(&mut rng, dim));
            assert!(leibniz_violations(&t).is_empty());
            assert!(is_filiform(&t));
        }
    }
}

#[test]
fn sigma_and_eta_keep_the_parameters() {
    for dim in 5..=8 {
        let mut rng = rng_for(22, &[dim as u64]);
        let n = dim - 1;
        for _ in 0..10 {
            let p = random_params(&mut rng, dim);
            let t = build_table(&p);
            let s = elementary_sigma(&t, &random_nonzero_scalar(&mut rng));
            assert_eq!(extract_params(&transport(&t, &s).unwrap()).unwrap(), p);
            for k in 2..=n {
                let e = elementary_eta(&t, &random_nonzero_scalar(&mut rng), k).unwrap();
                assert_eq!(extract_params(&transport(&t, &e).unwrap()).unwrap(), p, "η at k = {k}");
            }
        }
    }
}

#[test]
fn identity_and_scaling() {
    let p = ParamVector::from_ints(&[1, 2, 3, 4, 5]).unwrap();
    assert_eq!(sleib::transform_params(&p, &AdaptedTriple::identity()).unwrap(), p);
    // (A, 0, D) rescales β_t by D/A^{t-1} and γ by D²/A^n
    let q = sleib::transform_params(&p, &AdaptedTriple::from_ints(2, 0, 3).unwrap()).unwrap();
    let want = ParamVector::new(
        7,
        vec![G::from_ratio(3, 4), G::from_ratio(6, 8), G::from_ratio(9, 16), G::from_ratio(12, 32)],
        G::from_ratio(45, 64),
    )
    .unwrap();
    assert_eq!(q, want);
}

#[test]
fn degenerate_triples_are_rejected() {
    assert_eq!(AdaptedTriple::from_ints(0, 1, 1), Err(Error::ZeroScale));
    assert_eq!(AdaptedTriple::from_ints(1, 1, 0), Err(Error::ZeroScale));
}
