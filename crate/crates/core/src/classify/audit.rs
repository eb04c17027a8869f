//! Orbit-invariance audit of the published subsets and invariants, and a
//! coverage report for the decompositions.
//!
//! For each subset: draw members, move them with random adapted triples
//! (by transport of structure), and check that the image stays in the
//! subset and that every invariant keeps its value. Representative families
//! are checked to lie in their own subset, and inversion maps to be affine.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::sampling::{random_params, random_triple, rng_for};
use crate::scalar::GaussianRational as G;
use crate::transform::{transform_params, AdaptedTriple};

use super::sampler::{sample_subset, DEFAULT_ATTEMPTS};
use super::tables::{Formula, SubsetSpec};
use super::{evaluate_formula, family_map, matching_subsets, specs, subset_of};

pub const TRIPLES_PER_SAMPLE: usize = 20;
pub const COVERAGE_DRAWS: usize = 4000;
const MAX_GAP_WITNESSES: usize = 6;

/// Which version of an invariant was checked.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Variant {
    Printed,
    Corrected,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum DefectKind {
    /// The subset is not closed under the action.
    MembershipNotInvariant,
    /// Component `component` (0-based) of the invariant changes along an orbit.
    SignatureNotInvariant { variant: Variant, component: usize },
    /// The invariant divides by zero on the subset.
    ZeroDenominator { variant: Variant },
    /// The representative family leaves the subset at a sampled `λ`.
    RepresentativeOutside,
    /// No member could be constructed; the conditions are contradictory.
    EmptySubset,
    /// The invariant is not an invertible affine function of the family's `λ`.
    NonAffineInverse,
}

impl fmt::Display for DefectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |v: &Variant| if *v == Variant::Printed { "printed" } else { "corrected" };
        match self {
            DefectKind::MembershipNotInvariant => write!(f, "membership not invariant"),
            DefectKind::SignatureNotInvariant { variant, component } => {
                write!(f, "{} invariant component {} not constant", v(variant), component + 1)
            }
            DefectKind::ZeroDenominator { variant } => write!(f, "{} invariant has zero denominator", v(variant)),
            DefectKind::RepresentativeOutside => write!(f, "representative outside subset"),
            DefectKind::EmptySubset => write!(f, "subset empty"),
            DefectKind::NonAffineInverse => write!(f, "no affine inverse for family"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub params: String,
    pub triple: Option<AdaptedTriple>,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Finding {
    pub dim: usize,
    pub subset: &'static str,
    pub kind: DefectKind,
    /// Number of offending trials.
    pub count: usize,
    pub witness: Witness,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SubsetAudit {
    pub subset: &'static str,
    pub samples: usize,
    pub trials: usize,
    pub value_bearing: bool,
    pub findings: Vec<Finding>,
}

impl SubsetAudit {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoverageReport {
    pub dim: usize,
    pub seed: u64,
    pub draws: usize,
    pub uncovered: usize,
    pub overlaps: usize,
    /// Smallest distinct uncovered parameter vectors seen.
    pub gap_witnesses: Vec<String>,
}

impl CoverageReport {
    pub fn uncovered_fraction(&self) -> String {
        format!("{}/{}", self.uncovered, self.draws)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AuditReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub subsets: Vec<SubsetAudit>,
    pub coverage: CoverageReport,
}

impl AuditReport {
    pub fn findings(&self) -> impl Iterator<Item = &Finding> {
        self.subsets.iter().flat_map(|s| &s.findings)
    }

    pub fn clean(&self) -> bool {
        self.subsets.iter().all(SubsetAudit::passed) && self.coverage.uncovered == 0 && self.coverage.overlaps == 0
    }
}

/// Generic `λ` tuples at which representatives are checked.
pub fn representative_lambdas(r: usize) -> Vec<Vec<G>> {
    let bases = [G::from_ratio(1, 7), G::complex((-5, 3), (2, 1)), G::from_ratio(11, 2)];
    bases.iter().map(|b| (0..r as i64).map(|j| b + G::from_ratio(j, 3)).collect()).collect()
}

/// Outcome of one sample: the offending trials per defect kind.
type Tally = Vec<(DefectKind, Witness)>;

fn audit_sample(spec: &SubsetSpec, dim: usize, p: &ParamVector, seed: u64, stream: &[u64]) -> Tally {
    let mut out = Tally::new();
    let mut formulas: Vec<(Variant, Formula)> = Vec::new();
    if let Some(sig) = spec.signature {
        formulas.push((Variant::Printed, sig.printed));
        if let Some((_, f)) = sig.corrected {
            formulas.push((Variant::Corrected, f));
        }
    }
    let mut base: Vec<Option<Vec<G>>> = Vec::new();
    for (variant, f) in &formulas {
        match evaluate_formula(f, p) {
            Ok(v) => base.push(Some(v)),
            Err(_) => {
                out.push((
                    DefectKind::ZeroDenominator { variant: *variant },
                    Witness { params: p.to_string(), triple: None, detail: f.text.join(", ") },
                ));
                base.push(None);
            }
        }
    }
    let mut rng = rng_for(seed, stream);
    for _ in 0..TRIPLES_PER_SAMPLE {
        let t = random_triple(&mut rng);
        let q = transform_params(p, &t).expect("transport of an adapted table stays adapted");
        let label = subset_of(&q).expect("supported dim");
        if label.name != Some(spec.name) {
            out.push((
                DefectKind::MembershipNotInvariant,
                Witness { params: p.to_string(), triple: Some(t), detail: format!("image {q} lies in {label}") },
            ));
            continue;
        }
        for ((variant, f), b) in formulas.iter().zip(&base) {
            let Some(b) = b else { continue };
            let Ok(v) = evaluate_formula(f, &q) else {
                out.push((
                    DefectKind::ZeroDenominator { variant: *variant },
                    Witness { params: q.to_string(), triple: None, detail: f.text.join(", ") },
                ));
                continue;
            };
            for (component, (x, y)) in b.iter().zip(&v).enumerate() {
                if x != y {
                    out.push((
                        DefectKind::SignatureNotInvariant { variant: *variant, component },
                        Witness {
                            params: p.to_string(),
                            triple: Some(t.clone()),
                            detail: format!("{}: {x} -> {y} at {q}", f.text[component]),
                        },
                    ));
                }
            }
        }
    }
    let _ = dim;
    out
}

fn structural_findings(spec: &SubsetSpec, dim: usize) -> Vec<Finding> {
    let mut out = Vec::new();
    let r = spec.lambda_count();
    let tuples = if r == 0 { vec![Vec::new()] } else { representative_lambdas(r) };
    for lambdas in tuples {
        let rep = spec.member(&lambdas);
        let label = subset_of(&rep).expect("supported dim");
        if label.name != Some(spec.name) {
            out.push(Finding {
                dim,
                subset: spec.name,
                kind: DefectKind::RepresentativeOutside,
                count: 1,
                witness: Witness { params: rep.to_string(), triple: None, detail: format!("lies in {label}") },
            });
            break;
        }
    }
    if let Err(Error::NoRationalInverse { family }) = family_map(dim, spec.name) {
        out.push(Finding {
            dim,
            subset: spec.name,
            kind: DefectKind::NonAffineInverse,
            count: 1,
            witness: Witness { params: family, triple: None, detail: "invariant is not affine in λ on the family".into() },
        });
    }
    out
}

fn audit_subset(spec: &'static SubsetSpec, index: usize, dim: usize, samples: usize, seed: u64) -> SubsetAudit {
    let mut findings = structural_findings(spec, dim);
    let members: Vec<Option<ParamVector>> = (0..samples)
        .map(|i| {
            let mut rng = rng_for(seed, &[dim as u64, index as u64, i as u64, 0]);
            sample_subset(&mut rng, dim, spec.name, DEFAULT_ATTEMPTS).ok()
        })
        .collect();
    if members.iter().all(Option::is_none) {
        findings.push(Finding {
            dim,
            subset: spec.name,
            kind: DefectKind::EmptySubset,
            count: samples,
            witness: Witness { params: spec.predicate_text(), triple: None, detail: format!("{DEFAULT_ATTEMPTS} attempts per sample") },
        });
    }
    let tallies: Vec<Tally> = members
        .par_iter()
        .enumerate()
        .map(|(i, p)| match p {
            Some(p) => audit_sample(spec, dim, p, seed, &[dim as u64, index as u64, i as u64, 1]),
            None => Tally::new(),
        })
        .collect();
    // first witness and total count per kind, in order of first appearance
    let mut merged: Vec<Finding> = Vec::new();
    for (kind, witness) in tallies.into_iter().flatten() {
        match merged.iter_mut().find(|f| f.kind == kind) {
            Some(f) => f.count += 1,
            None => merged.push(Finding { dim, subset: spec.name, kind, count: 1, witness }),
        }
    }
    merged.sort_by(|a, b| a.kind.cmp(&b.kind));
    findings.extend(merged);
    let sampled = members.iter().filter(|m| m.is_some()).count();
    SubsetAudit {
        subset: spec.name,
        samples: sampled,
        trials: sampled * TRIPLES_PER_SAMPLE,
        value_bearing: spec.signature.is_some(),
        findings,
    }
}

/// Seeded draws from the degenerate-rich pool, classified as they come.
pub fn coverage_report(dim: usize, draws: usize, seed: u64) -> Result<CoverageReport> {
    specs(dim)?;
    let mut rng = rng_for(seed, &[dim as u64, u64::MAX]);
    let (mut uncovered, mut overlaps) = (0, 0);
    let mut gaps: BTreeSet<(u64, String)> = BTreeSet::new();
    for _ in 0..draws {
        let p = random_params(&mut rng, dim);
        let hits = matching_subsets(&p)?;
        match hits.len() {
            0 => {
                uncovered += 1;
                let height = p.values().iter().map(|v| v.height()).max().unwrap_or_default();
                gaps.insert((u64::try_from(height).unwrap_or(u64::MAX), p.to_string()));
            }
            1 => {}
            _ => overlaps += 1,
        }
    }
    let gap_witnesses = gaps.into_iter().take(MAX_GAP_WITNESSES).map(|(_, s)| s).collect();
    Ok(CoverageReport { dim, seed, draws, uncovered, overlaps, gap_witnesses })
}

pub fn invariance_audit(dim: usize, samples: usize, seed: u64) -> Result<AuditReport> {
    let all = specs(dim)?;
    let subsets = all
        .par_iter()
        .enumerate()
        .map(|(i, spec)| audit_subset(spec, i, dim, samples, seed))
        .collect();
    Ok(AuditReport { dim, samples, seed, subsets, coverage: coverage_report(dim, COVERAGE_DRAWS, seed)? })
}
