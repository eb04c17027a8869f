//! Classification of `SLeib_5 … SLeib_8`: subset membership, invariant
//! signatures, canonical representatives and isomorphism decisions.

pub mod audit;
pub mod lambda;
pub mod sampler;
pub mod tables;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::ParamVector;
use crate::criterion::{closed_form_transform, verify_witness};
use crate::error::{Error, Result};
use crate::matrix::{solve_linear, Matrix};
use crate::scalar::GaussianRational as G;
use crate::transform::AdaptedTriple;

pub use lambda::{lambda_values, LambdaSet};
use tables::{subsets, Env, Formula, SubsetSpec};

pub const SUPPORTED: &str = "5..=8";

pub fn specs(dim: usize) -> Result<&'static [SubsetSpec]> {
    subsets(dim).ok_or(Error::UnsupportedDim(dim, SUPPORTED))
}

/// Index of the subset called `name` in dimension `dim`.
pub fn subset_index(dim: usize, name: &str) -> Result<usize> {
    specs(dim)?
        .iter()
        .position(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSubset { dim, name: name.to_string() })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SubsetLabel {
    pub dim: usize,
    /// `U1`, …, `F`, or `None` when no published subset contains the algebra.
    pub name: Option<&'static str>,
}

impl SubsetLabel {
    pub fn is_covered(&self) -> bool {
        self.name.is_some()
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.unwrap_or("Uncovered"))
    }
}

/// First matching subset in published order.
pub fn subset_of(p: &ParamVector) -> Result<SubsetLabel> {
    let e = Env::new(p);
    let name = specs(p.dim())?.iter().find(|s| s.contains(&e)).map(|s| s.name);
    Ok(SubsetLabel { dim: p.dim(), name })
}

/// Every subset whose predicate holds; more than one entry is an overlap.
pub fn matching_subsets(p: &ParamVector) -> Result<Vec<&'static str>> {
    let e = Env::new(p);
    Ok(specs(p.dim())?.iter().filter(|s| s.contains(&e)).map(|s| s.name).collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Signature {
    pub label: SubsetLabel,
    pub values: Vec<G>,
    /// Set when a corrected expression replaced the published one.
    pub errata_variant: Option<&'static str>,
}

/// Evaluate `formula`, refusing to divide by zero.
pub fn evaluate_formula(formula: &Formula, p: &ParamVector) -> Result<Vec<G>> {
    let e = Env::new(p);
    (formula.eval)(&e)
        .into_iter()
        .zip(formula.text)
        .map(|(f, text)| f.num.checked_div(&f.den).ok_or_else(|| Error::ZeroDenominator(format!("{text} at {p}"))))
        .collect()
}

pub fn signature(p: &ParamVector) -> Result<Signature> {
    let label = subset_of(p)?;
    let name = label.name.ok_or(Error::Uncovered(p.dim()))?;
    let spec = &specs(p.dim())?[subset_index(p.dim(), name)?];
    let Some(sig) = &spec.signature else {
        return Ok(Signature { label, values: Vec::new(), errata_variant: None });
    };
    let (formula, errata_variant) = sig.effective();
    Ok(Signature { values: evaluate_formula(&formula, p)?, label, errata_variant })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CanonicalClass {
    pub dim: usize,
    pub subset: &'static str,
    pub family: String,
    pub lambdas: Vec<G>,
}

impl CanonicalClass {
    pub fn params(&self) -> ParamVector {
        let spec = &specs(self.dim).expect("built from a supported dim")[subset_index(self.dim, self.subset).expect("known subset")];
        spec.member(&self.lambdas)
    }
}

/// `values = M·λ + c`, fitted on the representative family.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<G>,
}

impl AffineMap {
    pub fn apply(&self, lambdas: &[G]) -> Vec<G> {
        let mut v = self.matrix.mul_vec(lambdas).expect("shape fixed at fit time");
        for (x, c) in v.iter_mut().zip(&self.offset) {
            *x += c;
        }
        v
    }

    pub fn invert(&self, values: &[G]) -> Result<Vec<G>> {
        let rhs: Vec<G> = values.iter().zip(&self.offset).map(|(v, c)| v - c).collect();
        solve_linear(&self.matrix, &rhs)
    }
}

/// Generic starting points for fitting; the first one where every
/// denominator is nonzero on the family is used.
fn base_points(r: usize) -> impl Iterator<Item = Vec<G>> {
    (0..6i64).map(move |s| (0..r as i64).map(|j| G::complex((2 * j + 3 + s, j + 5 + s), (s - j, 7 + j))).collect())
}

/// Fit the signature of `spec`'s family as an affine function of the
/// `λ` slots and check it on further points. `None` if the dependence is
/// not affine or the linear part is singular.
pub fn fit_family_map(spec: &SubsetSpec, formula: &Formula) -> Option<AffineMap> {
    let r = spec.lambda_count();
    let eval = |l: &[G]| evaluate_formula(formula, &spec.member(l)).ok();
    let (base, f0) = base_points(r).find_map(|b| eval(&b).map(|v| (b, v)))?;
    if f0.len() != r {
        return None;
    }
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let mut pt = base.clone();
        pt[j] += G::one();
        let fj = eval(&pt)?;
        cols.push(fj.iter().zip(&f0).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    let matrix = Matrix::from_columns(&cols).ok()?;
    let shift = matrix.mul_vec(&base).ok()?;
    let offset: Vec<G> = f0.iter().zip(&shift).map(|(a, b)| a - b).collect();
    let map = AffineMap { matrix, offset };
    // check away from the fitting points
    for k in 1..=4i64 {
        let pt: Vec<G> = base
            .iter()
            .enumerate()
            .map(|(j, b)| b + G::complex((k * (j as i64 + 2) - 3, 3), (k - j as i64, 5)))
            .collect();
        if eval(&pt)? != map.apply(&pt) {
            return None;
        }
    }
    if map.matrix.rank() < r {
        return None;
    }
    Some(map)
}

type MapTable = Vec<Vec<Option<AffineMap>>>;

fn family_maps() -> &'static MapTable {
    static MAPS: OnceLock<MapTable> = OnceLock::new();
    MAPS.get_or_init(|| {
        (5..=8)
            .map(|dim| {
                specs(dim)
                    .expect("supported")
                    .iter()
                    .map(|s| s.signature.and_then(|sig| fit_family_map(s, &sig.effective().0)))
                    .collect()
            })
            .collect()
    })
}

/// The inversion map of a parametric subset.
pub fn family_map(dim: usize, name: &str) -> Result<Option<&'static AffineMap>> {
    let i = subset_index(dim, name)?;
    let spec = &specs(dim)?[i];
    if spec.signature.is_none() {
        return Ok(None);
    }
    family_maps()[dim - 5][i].as_ref().map(Some).ok_or_else(|| Error::NoRationalInverse { family: spec.family_id() })
}

pub fn canonical_form(p: &ParamVector) -> Result<CanonicalClass> {
    let sig = signature(p)?;
    let name = sig.label.name.expect("signature implies covered");
    let spec = &specs(p.dim())?[subset_index(p.dim(), name)?];
    let lambdas = match family_map(p.dim(), name)? {
        None => Vec::new(),
        Some(map) => map.invert(&sig.values).map_err(|_| Error::NoRationalInverse { family: spec.family_id() })?,
    };
    Ok(CanonicalClass { dim: p.dim(), subset: name, family: spec.family_id(), lambdas })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoVerdict::Isomorphic => "Isomorphic",
            IsoVerdict::NotIsomorphic => "NotIsomorphic",
            IsoVerdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoDecision {
    pub verdict: IsoVerdict,
    /// A triple carrying the first algebra to the second, when one was searched for and found.
    pub witness: Option<AdaptedTriple>,
}

pub const DEFAULT_GRID_BOUND: i64 = 3;

/// Rationals `±a/b` with `1 ≤ a, b ≤ bound`, deduplicated, in a fixed order.
pub fn grid_values(bound: i64, with_zero: bool) -> Vec<G> {
    let mut out: Vec<G> = Vec::new();
    if with_zero {
        out.push(G::zero());
    }
    for b in 1..=bound {
        for a in 1..=bound {
            for v in [G::from_ratio(a, b), G::from_ratio(-a, b)] {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Bounded search for `(A, B, D)` with `p·(A, B, D) = q`: candidates come
/// from the closed form, and a hit is confirmed by transport.
pub fn find_witness(p: &ParamVector, q: &ParamVector, bound: i64) -> Result<Option<AdaptedTriple>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let scales = grid_values(bound, false);
    let shifts = grid_values(bound, true);
    for a in &scales {
        for b in &shifts {
            for d in &scales {
                let t = AdaptedTriple::new(a.clone(), b.clone(), d.clone())?;
                if &closed_form_transform(p, &t) == q && verify_witness(p, q, &t)? {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

pub fn iso_decide(p: &ParamVector, q: &ParamVector) -> Result<IsoDecision> {
    iso_decide_with_bound(p, q, DEFAULT_GRID_BOUND)
}

pub fn iso_decide_with_bound(p: &ParamVector, q: &ParamVector, bound: i64) -> Result<IsoDecision> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let (lp, lq) = (subset_of(p)?, subset_of(q)?);
    if !lp.is_covered() || !lq.is_covered() {
        let witness = find_witness(p, q, bound)?;
        let verdict = if witness.is_some() { IsoVerdict::Isomorphic } else { IsoVerdict::Unknown };
        return Ok(IsoDecision { verdict, witness });
    }
    let same = lp == lq && signature(p)?.values == signature(q)?.values;
    let verdict = if same { IsoVerdict::Isomorphic } else { IsoVerdict::NotIsomorphic };
    Ok(IsoDecision { verdict, witness: None })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyEntry {
    pub subset: &'static str,
    pub family: String,
    pub parameters: usize,
}

/// The published list of representative families, one per subset.
pub fn enumerate_classes(dim: usize) -> Result<Vec<FamilyEntry>> {
    Ok(specs(dim)?
        .iter()
        .map(|s| FamilyEntry { subset: s.name, family: s.family_id(), parameters: s.lambda_count() })
        .collect())
}

/// `n² − 7n + 15` with `n` the dimension.
pub fn conjectured_count(dim: usize) -> i64 {
    let n = dim as i64;
    n * n - 7 * n + 15
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassCount {
    pub dim: usize,
    pub enumerated: usize,
    pub formula: i64,
    pub matches: bool,
}

pub fn class_count(dim: usize) -> Result<ClassCount> {
    let enumerated = enumerate_classes(dim)?.len();
    let formula = conjectured_count(dim);
    Ok(ClassCount { dim, enumerated, formula, matches: enumerated as i64 == formula })
}
