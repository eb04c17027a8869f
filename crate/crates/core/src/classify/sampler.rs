//! Random members of a given subset.
//!
//! Plain rejection sampling almost never lands on the thin strata
//! (`Λ_1 = 0`, `γ = 2β_3²`, …), so each "= 0" condition on a derived
//! quantity is solved for one designated parameter first; the full
//! predicate is then re-checked and the draw rejected if it fails.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::sampling::{random_nonzero_scalar, random_params};
use crate::scalar::GaussianRational as G;

use super::specs;
use super::tables::{Env, Quantity, SubsetSpec};

pub const DEFAULT_ATTEMPTS: usize = 2000;

fn c(n: i64) -> G {
    G::from(n)
}

/// Index into `(β_3, …, β_n, γ)` of the parameter solved for, with its value;
/// `None` if the solve is impossible (zero leading coefficient).
fn solve(q: Quantity, p: &ParamVector) -> Option<(usize, G)> {
    let b = |k: usize| p.beta(k).clone();
    let g = p.gamma().clone();
    let idx = |k: usize| k - 3;
    let gamma_idx = p.dim() - 3;
    let over = |num: G, den: G| num.checked_div(&den);
    Some(match q {
        Quantity::Beta(k) => (idx(k), G::zero()),
        Quantity::Gamma => (gamma_idx, G::zero()),
        Quantity::GammaMinus2Beta3Sq => (gamma_idx, c(2) * b(3).pow(2)),
        Quantity::GammaMinus3Beta4Sq => (gamma_idx, c(3) * b(4).pow(2)),
        Quantity::Lambda(1) => (idx(5), over(c(5) * b(4).pow(2), c(4) * b(3))?),
        Quantity::Lambda(2) => (
            idx(6),
            over(c(6) * b(3) * b(4) * b(5) - b(4) * &g - c(4) * b(4).pow(3), c(2) * b(3).pow(2))?,
        ),
        Quantity::Lambda(3) => (idx(6), over(c(7) * b(4).pow(3) - c(2) * b(4) * &g, c(4) * b(3).pow(2))?),
        Quantity::Lambda(4) => (idx(6), over(c(7) * b(4).pow(3), c(4) * b(3).pow(2))?),
        Quantity::Lambda(5) => (idx(6), over(c(3) * b(3) * b(4) * b(5) - c(2) * b(4).pow(3), b(3).pow(2))?),
        Quantity::Lambda(6) => (
            idx(7),
            over(c(28) * b(3).pow(2) * b(4) * b(6) - c(28) * b(4).pow(4) - c(4) * b(3) * b(4) * &g, c(8) * b(3).pow(3))?,
        ),
        Quantity::Lambda(7) => (idx(7), over(c(21) * b(4).pow(4) - c(4) * b(3) * b(4) * &g, c(8) * b(3).pow(3))?),
        Quantity::Lambda(i) => unreachable!("no Λ_{i}"),
    })
}

/// Order in which "= 0" conditions are solved: plain parameters first, then
/// by the parameter they determine (γ, β_5, β_6, β_7), so later solves do
/// not disturb earlier ones.
fn solve_rank(q: Quantity) -> usize {
    match q {
        Quantity::Beta(_) | Quantity::Gamma => 0,
        Quantity::GammaMinus2Beta3Sq | Quantity::GammaMinus3Beta4Sq => 1,
        Quantity::Lambda(1) => 2,
        Quantity::Lambda(2..=5) => 3,
        Quantity::Lambda(_) => 4,
    }
}

fn with_value(p: &ParamVector, index: usize, value: G) -> ParamVector {
    let mut v = p.values();
    v[index] = value;
    ParamVector::from_values(v).expect("same shape")
}

/// One attempt at a member of `spec`; `None` if the draw was rejected.
pub fn try_sample<R: Rng + ?Sized>(rng: &mut R, dim: usize, spec: &SubsetSpec) -> Option<ParamVector> {
    let mut p = random_params(rng, dim);
    // plain "≠ 0" conditions: redraw that parameter until nonzero
    for cond in spec.conds.iter().filter(|c| !c.zero) {
        let index = match cond.quantity {
            Quantity::Beta(k) => k - 3,
            Quantity::Gamma => dim - 3,
            _ => continue,
        };
        if p.values()[index].is_zero() {
            p = with_value(&p, index, random_nonzero_scalar(rng));
        }
    }
    let mut zeros: Vec<Quantity> = spec.conds.iter().filter(|c| c.zero).map(|c| c.quantity).collect();
    zeros.sort_by_key(|q| solve_rank(*q));
    for q in zeros {
        let (index, value) = solve(q, &p)?;
        p = with_value(&p, index, value);
    }
    spec.contains(&Env::new(&p)).then_some(p)
}

/// A member of subset `name`, or `SubsetEmpty` once `attempts` draws fail.
pub fn sample_subset<R: Rng + ?Sized>(rng: &mut R, dim: usize, name: &str, attempts: usize) -> Result<ParamVector> {
    let spec = &specs(dim)?[super::subset_index(dim, name)?];
    (0..attempts)
        .find_map(|_| try_sample(rng, dim, spec))
        .ok_or_else(|| Error::SubsetEmpty { label: format!("{name} (dim {dim})"), attempts })
}
