//! Adapted basis changes and transport of structure.
//!
//! `transform_params` (build the table, change basis, re-express every
//! product, read the parameters back) is the reference every closed-form
//! formula in [`crate::criterion`] is checked against.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{basis_vector, bracket, build_table, extract_params, AlgebraTable, ParamVector};
use crate::error::{Error, Result};
use crate::matrix::{Coords, Matrix};
use crate::scalar::GaussianRational;

/// `(A, B, D)` with `AD ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct AdaptedTriple {
    a: GaussianRational,
    b: GaussianRational,
    d: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    #[serde(rename = "A")]
    a: GaussianRational,
    #[serde(rename = "B")]
    b: GaussianRational,
    #[serde(rename = "D")]
    d: GaussianRational,
}

impl TryFrom<TripleRepr> for AdaptedTriple {
    type Error = Error;
    fn try_from(r: TripleRepr) -> Result<Self> {
        AdaptedTriple::new(r.a, r.b, r.d)
    }
}

impl From<AdaptedTriple> for TripleRepr {
    fn from(t: AdaptedTriple) -> Self {
        TripleRepr { a: t.a, b: t.b, d: t.d }
    }
}

impl AdaptedTriple {
    pub fn new(a: GaussianRational, b: GaussianRational, d: GaussianRational) -> Result<Self> {
        if a.is_zero() || d.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Self { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), d.into())
    }

    pub fn identity() -> Self {
        Self { a: GaussianRational::one(), b: GaussianRational::zero(), d: GaussianRational::one() }
    }

    pub fn a(&self) -> &GaussianRational {
        &self.a
    }

    pub fn b(&self) -> &GaussianRational {
        &self.b
    }

    pub fn d(&self) -> &GaussianRational {
        &self.d
    }
}

impl fmt::Display for AdaptedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.d)
    }
}

/// New basis vectors `f(e_0), …, f(e_n)` written in the old basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisChange {
    vectors: Vec<Coords>,
}

impl BasisChange {
    pub fn new(vectors: Vec<Coords>) -> Result<Self> {
        let dim = vectors.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        Ok(Self { vectors })
    }

    pub fn identity(dim: usize) -> Self {
        Self { vectors: (0..dim).map(|i| basis_vector(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Coords] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &Coords {
        &self.vectors[i]
    }

    /// The matrix with `f(e_j)` as column `j`.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors).expect("square by construction")
    }
}

/// `R_a^m(x) = [[…[x, a], a], …, a]` with `m` factors of `a`.
pub fn right_power(t: &AlgebraTable, a: &[GaussianRational], m: usize, x: &[GaussianRational]) -> Result<Coords> {
    let mut v = x.to_vec();
    if v.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: v.len() });
    }
    for _ in 0..m {
        v = bracket(t, &v, a)?;
    }
    Ok(v)
}

/// Fill in `f(e_2) = [f(e_0), f(e_0)]` and `f(e_{i+1}) = [f(e_i), f(e_0)]`.
fn generated_change(t: &AlgebraTable, f0: Coords, f1: Coords) -> BasisChange {
    let dim = t.dim();
    let mut vectors = Vec::with_capacity(dim);
    let f2 = bracket(t, &f0, &f0).expect("dimensions checked by caller");
    vectors.push(f0);
    vectors.push(f1);
    vectors.push(f2);
    for i in 2..dim - 1 {
        let next = bracket(t, &vectors[i], &vectors[0]).expect("dimensions checked by caller");
        vectors.push(next);
    }
    BasisChange { vectors }
}

fn scaled(dim: usize, terms: &[(usize, &GaussianRational)]) -> Coords {
    let mut v = vec![GaussianRational::zero(); dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// `σ(b)`: `f(e_0) = e_0`, `f(e_1) = e_1 + b e_n`.
pub fn elementary_sigma(t: &AlgebraTable, b: &GaussianRational) -> BasisChange {
    let dim = t.dim();
    let one = GaussianRational::one();
    generated_change(t, basis_vector(dim, 0), scaled(dim, &[(1, &one), (dim - 1, b)]))
}

/// `η(a, k)`: `f(e_0) = e_0 + a e_k`, `f(e_1) = e_1`, for `2 ≤ k ≤ n`.
pub fn elementary_eta(t: &AlgebraTable, a: &GaussianRational, k: usize) -> Result<BasisChange> {
    let dim = t.dim();
    let n = dim - 1;
    if !(2..=n).contains(&k) {
        return Err(Error::IndexOutOfRange { index: k, lo: 2, hi: n });
    }
    let one = GaussianRational::one();
    Ok(generated_change(t, scaled(dim, &[(0, &one), (k, a)]), basis_vector(dim, 1)))
}

/// `δ(a, b, d)`: `f(e_0) = a e_0 + b e_1`, `f(e_1) = d e_1 - (bdγ/a) e_{n-1}`,
/// with `γ` read off the (adapted) source table.
pub fn elementary_delta(
    t: &AlgebraTable,
    a: &GaussianRational,
    b: &GaussianRational,
    d: &GaussianRational,
) -> Result<BasisChange> {
    if a.is_zero() || d.is_zero() {
        return Err(Error::ZeroScale);
    }
    let gamma = extract_params(t)?.gamma().clone();
    let (f0, f1) = leading_vectors(t.dim(), a, b, d, &gamma);
    Ok(generated_change(t, f0, f1))
}

fn leading_vectors(
    dim: usize,
    a: &GaussianRational,
    b: &GaussianRational,
    d: &GaussianRational,
    gamma: &GaussianRational,
) -> (Coords, Coords) {
    let n = dim - 1;
    let correction = -(b * d * gamma / a);
    (scaled(dim, &[(0, a), (1, b)]), scaled(dim, &[(1, d), (n - 1, &correction)]))
}

/// Which coefficient of `e_2` to use in `e'_2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum E2Form {
    /// `A² e_2 + AB(β_3 e_3 + … + β_{n-1} e_{n-1}) + B(Aβ_n + Bγ) e_n`.
    Corrected,
    /// The published display, `A(A+B) e_2 + …`.
    Printed,
}

/// The explicit adapted change of basis for `(A, B, D)`:
///
/// ```text
/// e'_0 = A e_0 + B e_1
/// e'_1 = D e_1 - (BDγ/A) e_{n-1}
/// e'_2 = A² e_2 + AB(β_3 e_3 + … + β_{n-1} e_{n-1}) + B(Aβ_n + Bγ) e_n
/// e'_k = A(Σ_{i=0}^{k-2} C(k-1, k-1-i) A^{k-1-i} B^i R_{e_1}^i(e_{k-i}) + B^{k-1} R_{e_1}^{k-1}(e_0))
/// ```
pub fn adapted_change(t: &AlgebraTable, triple: &AdaptedTriple) -> Result<BasisChange> {
    adapted_change_with(t, triple, E2Form::Corrected)
}

pub fn adapted_change_with(t: &AlgebraTable, triple: &AdaptedTriple, form: E2Form) -> Result<BasisChange> {
    let p = extract_params(t)?;
    let dim = t.dim();
    let n = dim - 1;
    let (a, b, d) = (triple.a(), triple.b(), triple.d());
    let (f0, f1) = leading_vectors(dim, a, b, d, p.gamma());

    let mut f2 = vec![GaussianRational::zero(); dim];
    f2[2] = match form {
        E2Form::Corrected => a * a,
        E2Form::Printed => a * (a + b),
    };
    let ab = a * b;
    for k in 3..n {
        f2[k] = &ab * p.beta(k);
    }
    f2[n] += b * (a * p.beta(n) + b * p.gamma());

    let e1 = basis_vector(dim, 1);
    let mut vectors = vec![f0, f1, f2];
    for k in 3..=n {
        let mut v = vec![GaussianRational::zero(); dim];
        for i in 0..=k - 2 {
            let coef = GaussianRational::from(binomial(k - 1, k - 1 - i)) * a.pow((k - 1 - i) as u32) * b.pow(i as u32);
            if coef.is_zero() {
                continue;
            }
            let r = right_power(t, &e1, i, &basis_vector(dim, k - i))?;
            add_scaled(&mut v, &coef, &r);
        }
        let tail = b.pow((k - 1) as u32);
        if !tail.is_zero() {
            let r = right_power(t, &e1, k - 1, &basis_vector(dim, 0))?;
            add_scaled(&mut v, &tail, &r);
        }
        for x in v.iter_mut() {
            *x *= a;
        }
        vectors.push(v);
    }
    BasisChange::new(vectors)
}

fn add_scaled(out: &mut [GaussianRational], coef: &GaussianRational, v: &[GaussianRational]) {
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            *o += coef * x;
        }
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Structure constants of the same product in the basis `f`.
pub fn transport(t: &AlgebraTable, f: &BasisChange) -> Result<AlgebraTable> {
    let dim = t.dim();
    if f.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: f.dim() });
    }
    let inv = f.matrix().inverse()?;
    let mut out = AlgebraTable::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = bracket(t, f.vector(i), f.vector(j))?;
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            out.set_product(i, j, &inv.mul_vec(&v)?);
        }
    }
    Ok(out)
}

/// Parameters of `p` seen from the adapted basis given by `triple`.
///
/// Fails with `NotAdapted` if the transported table leaves the normal
/// form; that can only mean a bug, so it is never patched up.
pub fn transform_params(p: &ParamVector, triple: &AdaptedTriple) -> Result<ParamVector> {
    let t = build_table(p);
    let f = adapted_change(&t, triple)?;
    extract_params(&transport(&t, &f)?)
}
