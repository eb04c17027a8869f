//! Closed forms against transport of structure.

use sleib::criterion::{closed_form_transform, psi_values, rho, triple_compose, triple_invert, TripleAction};
use sleib::sampling::{random_params, random_triple, rng_for};
use sleib::transform::{adapted_change, elementary_delta, transform_params};
use sleib::{build_table, GaussianRational, ParamVector};

/// Compositions of `s` into `parts` summands, each at least 3.
fn compositions(s: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if s == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 3..=s.saturating_sub(3 * (parts - 1)) {
        for mut rest in compositions(s - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// ψ via the composition form of the inner sums: the m-th sum runs over all
/// ways of writing t + 2m − k as m indices ≥ 3.
fn psi_by_compositions(y: &GaussianRational, p: &ParamVector) -> Vec<GaussianRational> {
    let n = p.n();
    let mut psi = vec![GaussianRational::from_int(0); n + 2];
    for t in 3..=n {
        let mut v = p.z(t).clone();
        for k in 3..t {
            let mut c = GaussianRational::from_int(0);
            for m in 1..k {
                let s: GaussianRational = compositions(t + 2 * m - k, m)
                    .iter()
                    .map(|parts| parts.iter().map(|&j| p.z(j).clone()).product::<GaussianRational>())
                    .sum();
                c += GaussianRational::from_int(binom(k - 1, m)) * y.pow(m as u32) * s;
            }
            v -= c * &psi[k];
        }
        psi[t] = v;
    }
    psi[n + 1] = p.gamma().clone();
    psi
}

#[test]
fn psi_matches_composition_form() {
    for dim in 5..=10 {
        let mut rng = rng_for(11, &[dim as u64]);
        for _ in 0..30 {
            let p = random_params(&mut rng, dim);
            let y = sleib::sampling::random_scalar(&mut rng);
            assert_eq!(psi_values(&y, &p), psi_by_compositions(&y, &p), "{p} y={y}");
        }
    }
}

#[test]
fn closed_form_and_rho_match_transport() {
    for dim in 5..=9 {
        let mut rng = rng_for(12, &[dim as u64]);
        for _ in 0..60 {
            let p = random_params(&mut rng, dim);
            let t = random_triple(&mut rng);
            let oracle = transform_params(&p, &t).unwrap();
            assert_eq!(closed_form_transform(&p, &t), oracle, "{p} {t}");
            assert_eq!(rho(&TripleAction::from_triple(&t), &p), oracle, "{p} {t}");
        }
    }
}

#[test]
fn adapted_change_is_the_delta_change() {
    for dim in 5..=9 {
        let mut rng = rng_for(13, &[dim as u64]);
        for _ in 0..40 {
            let table = build_table(&random_params(&mut rng, dim));
            let t = random_triple(&mut rng);
            assert_eq!(adapted_change(&table, &t).unwrap(), elementary_delta(&table, t.a(), t.b(), t.d()).unwrap());
        }
    }
}

#[test]
fn action_laws() {
    for dim in 5..=8 {
        let mut rng = rng_for(14, &[dim as u64]);
        for _ in 0..25 {
            let p = random_params(&mut rng, dim);
            let (t1, t2) = (random_triple(&mut rng), random_triple(&mut rng));
            let two_steps = transform_params(&transform_params(&p, &t1).unwrap(), &t2).unwrap();
            assert_eq!(two_steps, transform_params(&p, &triple_compose(&t1, &t2)).unwrap());
            let back = transform_params(&transform_params(&p, &t1).unwrap(), &triple_invert(&t1)).unwrap();
            assert_eq!(back, p);
        }
    }
}
