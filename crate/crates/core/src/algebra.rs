//! Second-class filiform Leibniz algebras as parameter vectors and as full
//! structure-constant tables.
//!
//! On the adapted basis `e_0, …, e_n` the algebra `L(β_3, …, β_n, γ)` has
//!
//! ```text
//! [e_0 e_0] = e_2
//! [e_i e_0] = e_{i+1}                              2 ≤ i ≤ n-1
//! [e_0 e_1] = β_3 e_3 + β_4 e_4 + … + β_n e_n
//! [e_1 e_1] = γ e_n
//! [e_j e_1] = β_3 e_{j+2} + … + β_{n+1-j} e_n      2 ≤ j ≤ n-2
//! ```
//!
//! and every other product of basis vectors is zero. In particular
//! `[e_1 e_0] = 0` and `[x e_j] = 0` for `j ≥ 2`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Coords, Matrix};
use crate::scalar::GaussianRational;

/// Parameters `(β_3, …, β_n, γ)` of one algebra in `SLeib_{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamVector {
    dim: usize,
    beta: Vec<GaussianRational>,
    gamma: GaussianRational,
}

impl ParamVector {
    pub const MIN_DIM: usize = 5;
    pub const MAX_DIM: usize = 64;

    pub fn new(dim: usize, beta: Vec<GaussianRational>, gamma: GaussianRational) -> Result<Self> {
        if !(Self::MIN_DIM..=Self::MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDim(dim, "5..=64"));
        }
        if beta.len() != dim - 3 {
            return Err(Error::InvalidParams(format!(
                "dimension {dim} needs {} beta values, got {}",
                dim - 3,
                beta.len()
            )));
        }
        Ok(Self { dim, beta, gamma })
    }

    /// `(β_3, …, β_n, γ)` in one flat list; the dimension is `len + 2`.
    pub fn from_values(values: Vec<GaussianRational>) -> Result<Self> {
        let mut beta = values;
        let gamma = beta.pop().ok_or_else(|| Error::InvalidParams("empty parameter list".into()))?;
        Self::new(beta.len() + 3, beta, gamma)
    }

    /// Integer shorthand, e.g. `from_ints(&[1, 0, 3])` is `L(1,0,3)` in dimension 5.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::from_values(values.iter().map(|&v| GaussianRational::from_int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Top basis index `n = dim - 1`.
    pub fn n(&self) -> usize {
        self.dim - 1
    }

    pub fn betas(&self) -> &[GaussianRational] {
        &self.beta
    }

    /// `β_k` for `3 ≤ k ≤ n`.
    pub fn beta(&self, k: usize) -> &GaussianRational {
        self.get_beta(k).unwrap_or_else(|| panic!("beta_{k} does not exist in dimension {}", self.dim))
    }

    pub fn get_beta(&self, k: usize) -> Option<&GaussianRational> {
        if (3..=self.n()).contains(&k) {
            Some(&self.beta[k - 3])
        } else {
            None
        }
    }

    pub fn gamma(&self) -> &GaussianRational {
        &self.gamma
    }

    /// The shifted indexing `z_3, …, z_n, z_{n+1} = β_3, …, β_n, γ`.
    pub fn z(&self, t: usize) -> &GaussianRational {
        if t == self.dim {
            &self.gamma
        } else {
            self.beta(t)
        }
    }

    /// `(β_3, …, β_n, γ)`.
    pub fn values(&self) -> Vec<GaussianRational> {
        let mut v = self.beta.clone();
        v.push(self.gamma.clone());
        v
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile { dim: self.dim, beta: self.beta.clone(), gamma: self.gamma.clone() }
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        write!(f, "L({})", parts.join(","))
    }
}

/// On-disk form of one algebra: `{ "dim": 8, "beta": ["1", …], "gamma": "5/7" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub beta: Vec<GaussianRational>,
    pub gamma: GaussianRational,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<ParamVector> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_params()
    }

    pub fn into_params(self) -> Result<ParamVector> {
        ParamVector::new(self.dim, self.beta, self.gamma)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }
}

impl TryFrom<AlgebraFile> for ParamVector {
    type Error = Error;
    fn try_from(file: AlgebraFile) -> Result<Self> {
        file.into_params()
    }
}

/// Structure constants `c[i][j][k]` with `[e_i e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraTable {
    dim: usize,
    c: Vec<GaussianRational>,
}

impl AlgebraTable {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, c: vec![GaussianRational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &GaussianRational {
        &self.c[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: GaussianRational) {
        let o = self.offset(i, j);
        self.c[o + k] = value;
    }

    /// Coordinates of `[e_i e_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[GaussianRational] {
        let o = self.offset(i, j);
        &self.c[o..o + self.dim]
    }

    pub fn set_product(&mut self, i: usize, j: usize, coords: &[GaussianRational]) {
        let o = self.offset(i, j);
        self.c[o..o + self.dim].clone_from_slice(coords);
    }

    pub fn is_zero_product(&self, i: usize, j: usize) -> bool {
        self.product(i, j).iter().all(Zero::is_zero)
    }

    /// Nonzero products as `(i, j, [e_i e_j])`, in index order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[GaussianRational])> + '_ {
        let d = self.dim;
        (0..d)
            .flat_map(move |i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.is_zero_product(i, j))
            .map(|(i, j)| (i, j, self.product(i, j)))
    }
}

pub fn basis_vector(dim: usize, i: usize) -> Coords {
    let mut v = vec![GaussianRational::zero(); dim];
    v[i] = GaussianRational::one();
    v
}

/// The second-class multiplication table of `p`.
pub fn build_table(p: &ParamVector) -> AlgebraTable {
    let dim = p.dim();
    let n = p.n();
    let mut t = AlgebraTable::zeros(dim);
    t.set(0, 0, 2, GaussianRational::one());
    for i in 2..n {
        t.set(i, 0, i + 1, GaussianRational::one());
    }
    for k in 3..=n {
        t.set(0, 1, k, p.beta(k).clone());
    }
    t.set(1, 1, n, p.gamma().clone());
    for j in 2..=n.saturating_sub(2) {
        for k in 3..=(n + 1 - j) {
            t.set(j, 1, j + k - 1, p.beta(k).clone());
        }
    }
    t
}

/// Bilinear extension of the table: `Σ_{i,j} x_i y_j [e_i e_j]`.
pub fn bracket(t: &AlgebraTable, x: &[GaussianRational], y: &[GaussianRational]) -> Result<Coords> {
    let dim = t.dim();
    for v in [x, y] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    let mut out = vec![GaussianRational::zero(); dim];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let row = t.product(i, j);
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let coef = xi * yj;
            for (o, c) in out.iter_mut().zip(row) {
                if !c.is_zero() {
                    *o += &coef * c;
                }
            }
        }
    }
    Ok(out)
}

/// `out += coef · row`, skipping zeros.
fn axpy(out: &mut [GaussianRational], coef: &GaussianRational, row: &[GaussianRational]) {
    for (o, c) in out.iter_mut().zip(row) {
        if !c.is_zero() {
            *o += coef * c;
        }
    }
}

/// Basis triples `(i, j, k)` where `[e_i [e_j e_k]] ≠ [[e_i e_j] e_k] - [[e_i e_k] e_j]`.
///
/// By trilinearity the identity holds on the whole algebra iff this is empty.
pub fn leibniz_violations(t: &AlgebraTable) -> Vec<(usize, usize, usize)> {
    let dim = t.dim();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut diff = vec![GaussianRational::zero(); dim];
                // [e_i [e_j e_k]]
                for (l, c) in t.product(j, k).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    axpy(&mut diff, c, t.product(i, l));
                }
                // - [[e_i e_j] e_k]
                for (l, c) in t.product(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    axpy(&mut diff, &-c, t.product(l, k));
                }
                // + [[e_i e_k] e_j]
                for (l, c) in t.product(i, k).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    axpy(&mut diff, c, t.product(l, j));
                }
                if diff.iter().any(|v| !v.is_zero()) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// `(dim L^1, dim L^2, …)` for `L^1 = L`, `L^{k+1} = [L^k, L]`.
///
/// The list ends at 0 for a nilpotent table. If the series stabilizes at a
/// nonzero space the list ends at the first repeated value.
pub fn lower_central_dims(t: &AlgebraTable) -> Vec<usize> {
    let dim = t.dim();
    let mut current: Vec<Coords> = (0..dim).map(|i| basis_vector(dim, i)).collect();
    let mut dims = vec![dim];
    loop {
        let mut spanning = Vec::new();
        for x in &current {
            for j in 0..dim {
                let v = bracket(t, x, &basis_vector(dim, j)).expect("matching dimensions");
                if v.iter().any(|c| !c.is_zero()) {
                    spanning.extend(v);
                }
            }
        }
        let next = if spanning.is_empty() {
            Vec::new()
        } else {
            let rows = spanning.len() / dim;
            Matrix::from_rows(rows, dim, spanning).expect("well-formed").row_space_basis()
        };
        let d = next.len();
        let last = *dims.last().expect("nonempty");
        dims.push(d);
        if d == 0 || d >= last {
            return dims;
        }
        current = next;
    }
}

/// The profile `(n+1, n-1, n-2, …, 1, 0)` of a filiform algebra of dimension `n+1`.
pub fn filiform_profile(dim: usize) -> Vec<usize> {
    std::iter::once(dim).chain((0..dim - 1).rev()).collect()
}

pub fn is_filiform(t: &AlgebraTable) -> bool {
    lower_central_dims(t) == filiform_profile(t.dim())
}

/// Recover `(β, γ)` from a table in adapted form.
///
/// Every entry is compared against the table the recovered parameters would
/// build, so any deviation from the pattern (including a required zero that
/// is not zero) is reported with its position.
pub fn extract_params(t: &AlgebraTable) -> Result<ParamVector> {
    let dim = t.dim();
    if dim < ParamVector::MIN_DIM {
        return Err(Error::UnsupportedDim(dim, "5..=64"));
    }
    let n = dim - 1;
    let beta = (3..=n).map(|k| t.get(0, 1, k).clone()).collect();
    let gamma = t.get(1, 1, n).clone();
    let p = ParamVector::new(dim, beta, gamma)?;
    let expected = build_table(&p);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let (found, want) = (t.get(i, j, k), expected.get(i, j, k));
                if found != want {
                    return Err(Error::NotAdapted {
                        i,
                        j,
                        k,
                        found: found.to_string(),
                        expected: want.to_string(),
                    });
                }
            }
        }
    }
    Ok(p)
}
