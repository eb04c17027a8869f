//! Seeded random scalars, parameter vectors and triples.
//!
//! Values come from a pool that is heavy on 0, ±1 and ±2 so degenerate
//! strata (vanishing invariants, special subsets) are hit often, with
//! a tail of small rationals and Gaussian rationals.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::ParamVector;
use crate::scalar::GaussianRational;
use crate::transform::AdaptedTriple;

pub type SampleRng = ChaCha8Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// An independent generator for `seed` and a path of stream ids, e.g.
/// `(seed, [dim, subset, sample])`. The same inputs always give the same stream.
pub fn rng_for(seed: u64, stream: &[u64]) -> SampleRng {
    let mixed = stream.iter().fold(splitmix(seed), |acc, &s| splitmix(acc ^ splitmix(s)));
    SampleRng::seed_from_u64(mixed)
}

/// One scalar from the degenerate-rich pool.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    match rng.gen_range(0..20) {
        0..=4 => GaussianRational::zero(),
        5..=7 => GaussianRational::from_int(1),
        8 => GaussianRational::from_int(-1),
        9..=10 => GaussianRational::from_int(2),
        11 => GaussianRational::from_int(-2),
        12..=15 => GaussianRational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)),
        16 => GaussianRational::from_int(rng.gen_range(-5..=5)),
        _ => GaussianRational::complex((rng.gen_range(-4..=4), rng.gen_range(1..=3)), (rng.gen_range(-4..=4), rng.gen_range(1..=3))),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    loop {
        let v = random_scalar(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A parameter vector whose entries are all drawn from the pool.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ParamVector {
    let beta = (0..dim - 3).map(|_| random_scalar(rng)).collect();
    ParamVector::new(dim, beta, random_scalar(rng)).expect("dimension in range")
}

/// A parameter vector with every entry nonzero and "generic" (no pool bias
/// towards the small special values).
pub fn random_generic_params<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ParamVector {
    let mut draw = || loop {
        let v = GaussianRational::complex((rng.gen_range(-9..=9), rng.gen_range(1..=7)), (rng.gen_range(-3..=3), rng.gen_range(1..=4)));
        if !v.is_zero() {
            return v;
        }
    };
    let beta = (0..dim - 3).map(|_| draw()).collect();
    ParamVector::new(dim, beta, draw()).expect("dimension in range")
}

pub fn random_triple<R: Rng + ?Sized>(rng: &mut R) -> AdaptedTriple {
    let a = random_nonzero_scalar(rng);
    let b = random_scalar(rng);
    let d = random_nonzero_scalar(rng);
    AdaptedTriple::new(a, b, d).expect("nonzero scales")
}
