//! Closed-form isomorphism criterion.
//!
//! Two algebras `L(β)`, `L(β')` of the same dimension are isomorphic iff
//! `β' = ϱ(1/A, B/A, D/A; β)` for some `(A, B, D)` with `AD ≠ 0`. The
//! components of `ϱ` are built from the polynomials `ψ_t(y; z)`.
//!
//! Each formula is available both in the published form and in the form
//! that agrees with [`transform_params`]; the difference is recorded in
//! [`crate::errata`].

use num_traits::Zero;

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::transform::{binomial, transform_params, AdaptedTriple};

/// `(x, y, u) = (1/A, B/A, D/A)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleAction {
    x: GaussianRational,
    y: GaussianRational,
    u: GaussianRational,
}

impl TripleAction {
    pub fn new(x: GaussianRational, y: GaussianRational, u: GaussianRational) -> Result<Self> {
        if x.is_zero() || u.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Self { x, y, u })
    }

    pub fn from_triple(t: &AdaptedTriple) -> Self {
        let x = t.a().inv().expect("A ≠ 0");
        Self { y: t.b() * &x, u: t.d() * &x, x }
    }

    /// The triple `(A, B, D) = (1/x, y/x, u/x)` with this action.
    pub fn to_triple(&self) -> AdaptedTriple {
        let a = self.x.inv().expect("x ≠ 0");
        AdaptedTriple::new(a.clone(), &self.y * &a, &self.u * &a).expect("nonzero scales")
    }

    pub fn x(&self) -> &GaussianRational {
        &self.x
    }

    pub fn y(&self) -> &GaussianRational {
        &self.y
    }

    pub fn u(&self) -> &GaussianRational {
        &self.u
    }
}

/// The inner sum multiplying `C(k-1, k-1-m) y^m` in the recursion for `ψ_t`:
///
/// ```text
/// m = 1:  z_{t+2-k}
/// m ≥ 2:  Σ_{i_{m-1}=k+m}^{t} Σ_{i_{m-2}=k+m}^{i_{m-1}} … Σ_{i_1=k+m}^{i_2}
///             z_{t+3-i_{m-1}} · z_{i_{m-1}+3-i_{m-2}} · … · z_{i_2+3-i_1} · z_{i_1+3-m-k}
/// ```
///
/// Returned for every upper limit `t` in `0..=top` at once (entries for
/// `t < k + m` are zero), since the inner levels do not depend on `t`.
fn nested_sums(z: &[GaussianRational], top: usize, k: usize, m: usize) -> Vec<GaussianRational> {
    let lo = k + m;
    let zero = GaussianRational::zero();
    let zi = |i: usize| z.get(i).unwrap_or(&zero);
    // level[u] = sum over i_1 ≤ … ≤ i_r ≤ u, with the outermost factor still open
    let mut level: Vec<GaussianRational> = (0..=top)
        .map(|u| if u + 3 >= m + k { zi(u + 3 - m - k).clone() } else { zero.clone() })
        .collect();
    for _ in 0..m - 1 {
        let mut next = vec![GaussianRational::zero(); top + 1];
        for (u, slot) in next.iter_mut().enumerate().skip(lo) {
            let mut acc = GaussianRational::zero();
            for i in lo..=u {
                let (a, b) = (zi(u + 3 - i), &level[i]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            *slot = acc;
        }
        level = next;
    }
    level
}

fn z_vector(p: &ParamVector) -> Vec<GaussianRational> {
    (0..=p.dim()).map(|t| if t >= 3 { p.z(t).clone() } else { GaussianRational::zero() }).collect()
}

/// `ψ_3, …, ψ_{n+1}` evaluated bottom-up; index `t` of the result is `ψ_t`
/// (entries below 3 are zero).
pub fn psi_values(y: &GaussianRational, p: &ParamVector) -> Vec<GaussianRational> {
    let n = p.n();
    let z = z_vector(p);
    let ypow: Vec<GaussianRational> = (0..=n).map(|m| y.pow(m as u32)).collect();
    // coef[k][t] = Σ_m C(k-1, k-1-m) y^m S_m(t, k)
    let mut coef = vec![vec![GaussianRational::zero(); n + 1]; n + 1];
    if !y.is_zero() {
        for k in 3..n {
            for m in 1..k {
                let c = GaussianRational::from(binomial(k - 1, k - 1 - m)) * &ypow[m];
                for (t, s) in nested_sums(&z, n, k, m).into_iter().enumerate().skip(k + 1) {
                    if !s.is_zero() {
                        coef[k][t] += &c * s;
                    }
                }
            }
        }
    }
    let mut psi = vec![GaussianRational::zero(); n + 2];
    for t in 3..=n {
        let mut v = z[t].clone();
        for k in 3..t {
            if !coef[k][t].is_zero() && !psi[k].is_zero() {
                v -= &coef[k][t] * &psi[k];
            }
        }
        psi[t] = v;
    }
    psi[n + 1] = z[n + 1].clone();
    psi
}

/// `ψ_t(y; z)` for `3 ≤ t ≤ n+1`, with `z = (β_3, …, β_n, γ)`.
pub fn psi(t: usize, y: &GaussianRational, p: &ParamVector) -> Result<GaussianRational> {
    check_psi_index(t, p)?;
    Ok(psi_values(y, p).swap_remove(t))
}

fn check_psi_index(t: usize, p: &ParamVector) -> Result<()> {
    if !(3..=p.n() + 1).contains(&t) {
        return Err(Error::IndexOutOfRange { index: t, lo: 3, hi: p.n() + 1 });
    }
    Ok(())
}

/// `ψ_t` straight from the recursion, recomputing every `ψ_k` it refers to.
/// Exponential in `t`; only useful as a cross-check on small dimensions.
pub fn psi_unmemoized(t: usize, y: &GaussianRational, p: &ParamVector) -> Result<GaussianRational> {
    check_psi_index(t, p)?;
    if t == p.n() + 1 {
        return Ok(p.gamma().clone());
    }
    let z = z_vector(p);
    let mut v = z[t].clone();
    for k in 3..t {
        let mut c = GaussianRational::zero();
        for m in 1..k {
            let s = &nested_sums(&z, t, k, m)[t];
            c += GaussianRational::from(binomial(k - 1, k - 1 - m)) * y.pow(m as u32) * s;
        }
        v -= c * psi_unmemoized(k, y, p)?;
    }
    Ok(v)
}

/// `ϱ(x, y, u; z)`, component `t` giving `β'_{t+2}` (`t ≤ n-2`) or `γ'` (`t = n-1`):
///
/// ```text
/// ϱ_t     = x^t u ψ_{t+2}(y; z)              1 ≤ t ≤ n-3
/// ϱ_{n-2} = x^{n-2} u (y z_{n+1} + ψ_n(y; z))
/// ϱ_{n-1} = x^{n-2} u² ψ_{n+1}(y; z)
/// ```
pub fn rho(a: &TripleAction, p: &ParamVector) -> ParamVector {
    let n = p.n();
    let psi = psi_values(&a.y, p);
    let mut beta: Vec<GaussianRational> = (1..=n - 3).map(|t| a.x.pow(t as u32) * &a.u * &psi[t + 2]).collect();
    let xn2 = a.x.pow((n - 2) as u32);
    beta.push(&xn2 * &a.u * (&a.y * p.gamma() + &psi[n]));
    let gamma = xn2 * a.u.pow(2) * &psi[n + 1];
    ParamVector::new(p.dim(), beta, gamma).expect("same shape as the input")
}

/// `ϱ` exactly as published: `ϱ_t = x^{t-1} u ψ_{t+2}` for `1 ≤ t ≤ n-2`
/// and `ϱ_{n-1} = x^{n-5} u² ψ_{n+1}`.
pub fn rho_printed(a: &TripleAction, p: &ParamVector) -> ParamVector {
    let n = p.n();
    let psi = psi_values(&a.y, p);
    let beta = (1..=n - 2).map(|t| a.x.pow((t - 1) as u32) * &a.u * &psi[t + 2]).collect();
    let xpow = a.x.powi(n as i64 - 5).expect("x ≠ 0");
    let gamma = xpow * a.u.pow(2) * &psi[n + 1];
    ParamVector::new(p.dim(), beta, gamma).expect("same shape as the input")
}

/// How to read the published formula for `β'_n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Eq2Reading {
    /// `(1/A^{n-2})(D/A)((B/A)γ + ψ_n(B/A; β))`.
    Grouped,
    /// `(1/A^{n-2})(D/A)(B/A)γ + ψ_n(B/A; β)`.
    Sum,
}

/// First argument of `ψ_{n+1}` in the formula for `γ'`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaArgument {
    BOverA,
    /// As published; undefined when `B = 0`.
    AOverB,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClosedFormVariant {
    pub eq2: Eq2Reading,
    pub gamma_arg: GammaArgument,
}

impl ClosedFormVariant {
    pub const CORRECTED: Self = Self { eq2: Eq2Reading::Grouped, gamma_arg: GammaArgument::BOverA };
}

/// `β'` and `γ'` from the closed-form criterion:
///
/// ```text
/// β'_t = (1/A^{t-2})(D/A) ψ_t(B/A; β)                3 ≤ t ≤ n-1
/// β'_n = (1/A^{n-2})(D/A)((B/A)γ + ψ_n(B/A; β))
/// γ'   = (1/A^{n-2})(D/A)² ψ_{n+1}(B/A; β)
/// ```
pub fn closed_form_transform(p: &ParamVector, t: &AdaptedTriple) -> ParamVector {
    closed_form_transform_with(p, t, ClosedFormVariant::CORRECTED).expect("corrected form is total")
}

pub fn closed_form_transform_with(p: &ParamVector, t: &AdaptedTriple, variant: ClosedFormVariant) -> Result<ParamVector> {
    let n = p.n();
    let (a, b, d) = (t.a(), t.b(), t.d());
    let ainv = a.inv().ok_or(Error::ZeroScale)?;
    let y = b * &ainv;
    let psi = psi_values(&y, p);
    let u = d * &ainv;
    let scale = |t: usize| ainv.pow((t - 2) as u32) * &u;

    let mut beta: Vec<GaussianRational> = (3..n).map(|k| scale(k) * &psi[k]).collect();
    let by_gamma = &y * p.gamma();
    beta.push(match variant.eq2 {
        Eq2Reading::Grouped => scale(n) * (by_gamma + &psi[n]),
        Eq2Reading::Sum => scale(n) * by_gamma + &psi[n],
    });

    // ψ_{n+1} ignores its first argument; only definedness differs.
    if variant.gamma_arg == GammaArgument::AOverB && b.is_zero() {
        return Err(Error::ZeroDenominator(format!("A/B with B = 0 in gamma' for triple {t}")));
    }
    let gamma = ainv.pow((n - 2) as u32) * u.pow(2) * &psi[n + 1];
    ParamVector::new(p.dim(), beta, gamma)
}

/// Acting by `t1` then by `t2` equals acting by `(A₁A₂, B₁A₂ + B₂D₁, D₁D₂)`.
pub fn triple_compose(t1: &AdaptedTriple, t2: &AdaptedTriple) -> AdaptedTriple {
    AdaptedTriple::new(t1.a() * t2.a(), t1.b() * t2.a() + t2.b() * t1.d(), t1.d() * t2.d()).expect("AD ≠ 0 is closed under products")
}

/// `(1/A, -B/(AD), 1/D)`, the two-sided inverse under [`triple_compose`].
pub fn triple_invert(t: &AdaptedTriple) -> AdaptedTriple {
    let ai = t.a().inv().expect("A ≠ 0");
    let di = t.d().inv().expect("D ≠ 0");
    let b = -(t.b() * &ai * &di);
    AdaptedTriple::new(ai, b, di).expect("nonzero scales")
}

/// The action `(x, y, u) = (A, -B/D, A/D)` that undoes `t`, in the form
/// the inverse property of `ϱ` is usually written.
pub fn inverse_action(t: &AdaptedTriple) -> TripleAction {
    let di = t.d().inv().expect("D ≠ 0");
    TripleAction::new(t.a().clone(), -(t.b() * &di), t.a() * &di).expect("nonzero scales")
}

/// Does `t` carry `p` to `q`? Decided by transport of structure.
pub fn verify_witness(p: &ParamVector, q: &ParamVector, t: &AdaptedTriple) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(&transform_params(p, t)? == q)
}
