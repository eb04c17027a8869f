//! Known errors in the published formulas and classification tables,
//! each with a machine-checked witness.
//!
//! Formula errata compare a published expression against the transport
//! oracle. Classification defects are the audit findings that are expected
//! (and so tolerated); anything the audit reports outside this registry is
//! a new problem.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{bracket, build_table, ParamVector};
use crate::classify::audit::{coverage_report, invariance_audit, DefectKind, Finding, Variant, Witness};
use crate::classify::{find_witness, specs, subset_of};
use crate::criterion::{
    closed_form_transform_with, inverse_action, rho, rho_printed, ClosedFormVariant, Eq2Reading, GammaArgument,
    TripleAction,
};
use crate::error::Result;
use crate::scalar::GaussianRational as G;
use crate::transform::{adapted_change_with, transform_params, AdaptedTriple, E2Form};

/// Samples per subset and seed used for the registry witnesses.
pub const WITNESS_SAMPLES: usize = 40;
pub const WITNESS_SEED: u64 = 1;
const COVERAGE_SAMPLE: usize = 4000;
const DUPLICATE_GRID_BOUND: i64 = 2;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormulaWitness {
    pub params: String,
    pub triple: String,
    pub printed_value: String,
    pub oracle_value: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormulaErratum {
    pub id: &'static str,
    pub location: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    /// Already a known issue, as opposed to one first exposed by the oracle.
    pub previously_known: bool,
    /// `"erratum"`, or `"confirmed"` when the published statement holds.
    pub status: &'static str,
    pub witness: FormulaWitness,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DocumentedDefect {
    pub dim: usize,
    pub subset: &'static str,
    pub kind: DefectKind,
    pub note: &'static str,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassificationDefect {
    #[serde(flatten)]
    pub defect: DocumentedDefect,
    pub description: String,
    /// `None` when the defect is too rare to show up at the witness seed.
    pub witness: Option<Witness>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ListedRepresentative {
    pub subset: &'static str,
    pub params: String,
}

/// Two listed representatives that are isomorphic.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ListedDuplicate {
    pub dim: usize,
    pub first: ListedRepresentative,
    pub second: ListedRepresentative,
    pub triple: AdaptedTriple,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoverageGap {
    pub dim: usize,
    pub uncovered_fraction: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ErrataDocument {
    pub formula_errata: Vec<FormulaErratum>,
    pub classification_defects: Vec<ClassificationDefect>,
    pub listed_duplicates: Vec<ListedDuplicate>,
    pub coverage_gaps: Vec<CoverageGap>,
}

impl ErrataDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}

fn coords(v: &[G]) -> String {
    let parts: Vec<String> = v.iter().map(G::to_string).collect();
    format!("({})", parts.join(","))
}

fn pv(v: &[i64]) -> ParamVector {
    ParamVector::from_ints(v).expect("fixed witness")
}

fn triple(a: i64, b: i64, d: i64) -> AdaptedTriple {
    AdaptedTriple::from_ints(a, b, d).expect("fixed witness")
}

fn e2_witness() -> FormulaWitness {
    let p = pv(&[1, 2, 3, 4]);
    let t = triple(1, 1, 1);
    let table = build_table(&p);
    let printed = adapted_change_with(&table, &t, E2Form::Printed).expect("adapted");
    let f0 = printed.vector(0);
    let oracle = bracket(&table, f0, f0).expect("same dim");
    FormulaWitness {
        params: p.to_string(),
        triple: t.to_string(),
        printed_value: coords(printed.vector(2)),
        oracle_value: coords(&oracle),
    }
}

fn eq2_witness() -> FormulaWitness {
    let p = pv(&[1, 2, 3, 4]);
    let t = triple(2, 1, 1);
    let variant = ClosedFormVariant { eq2: Eq2Reading::Sum, gamma_arg: GammaArgument::BOverA };
    let printed = closed_form_transform_with(&p, &t, variant).expect("B/A is defined");
    let oracle = transform_params(&p, &t).expect("adapted");
    FormulaWitness {
        params: p.to_string(),
        triple: t.to_string(),
        printed_value: printed.to_string(),
        oracle_value: oracle.to_string(),
    }
}

fn gamma_arg_witness() -> FormulaWitness {
    let p = pv(&[1, 2, 3, 4]);
    let t = triple(2, 0, 3);
    let variant = ClosedFormVariant { eq2: Eq2Reading::Grouped, gamma_arg: GammaArgument::AOverB };
    let printed = match closed_form_transform_with(&p, &t, variant) {
        Ok(q) => q.to_string(),
        Err(_) => "undefined (A/B with B = 0)".to_string(),
    };
    let oracle = transform_params(&p, &t).expect("adapted");
    FormulaWitness { params: p.to_string(), triple: t.to_string(), printed_value: printed, oracle_value: oracle.to_string() }
}

fn rho_witness(gamma_only: bool) -> FormulaWitness {
    let p = pv(&[1, 2, 3, 4, 5]);
    let t = triple(2, 1, 3);
    let a = TripleAction::from_triple(&t);
    let printed = rho_printed(&a, &p);
    let oracle = transform_params(&p, &t).expect("adapted");
    let (printed_value, oracle_value) = if gamma_only {
        (format!("γ' = {}", printed.gamma()), format!("γ' = {}", oracle.gamma()))
    } else {
        (coords(printed.betas()), coords(oracle.betas()))
    };
    FormulaWitness { params: p.to_string(), triple: t.to_string(), printed_value, oracle_value }
}

fn inverse_property_witness() -> FormulaWitness {
    let p = pv(&[1, 2, 3, 4, 5]);
    let t = triple(2, 1, 3);
    let there = rho(&TripleAction::from_triple(&t), &p);
    let back = rho(&inverse_action(&t), &there);
    FormulaWitness {
        params: p.to_string(),
        triple: t.to_string(),
        printed_value: back.to_string(),
        oracle_value: p.to_string(),
    }
}

pub fn formula_errata() -> Vec<FormulaErratum> {
    vec![
        FormulaErratum {
            id: "basis-e2",
            location: "explicit adapted basis, coefficient of e_2 in e'_2",
            printed: "e'_2 = A(A+B)e_2 + AB(α_3e_3 + … + α_{n-1}e_{n-1}) + B(Aα_n + Bγ)e_n",
            corrected: "e'_2 = A²e_2 + AB(β_3e_3 + … + β_{n-1}e_{n-1}) + B(Aβ_n + Bγ)e_n",
            previously_known: false,
            status: "erratum",
            witness: e2_witness(),
        },
        FormulaErratum {
            id: "criterion-beta-n",
            location: "closed-form criterion, β'_n",
            printed: "β'_n = (1/A^{n-2})(D/A)(B/A)γ + ψ_n(B/A; β)",
            corrected: "β'_n = (1/A^{n-2})(D/A)((B/A)γ + ψ_n(B/A; β))",
            previously_known: true,
            status: "erratum",
            witness: eq2_witness(),
        },
        FormulaErratum {
            id: "criterion-gamma-argument",
            location: "closed-form criterion, first argument of ψ_{n+1} in γ'",
            printed: "γ' = (1/A^{n-2})(D/A)² ψ_{n+1}(A/B; β)",
            corrected: "γ' = (1/A^{n-2})(D/A)² ψ_{n+1}(B/A; β)",
            previously_known: true,
            status: "erratum",
            witness: gamma_arg_witness(),
        },
        FormulaErratum {
            id: "rho-components",
            location: "components ϱ_t of the action, 1 ≤ t ≤ n-2",
            printed: "ϱ_t = x^{t-1} u ψ_{t+2}(y; z)",
            corrected: "ϱ_t = x^t u ψ_{t+2}(y; z) for t ≤ n-3; ϱ_{n-2} = x^{n-2} u (y z_{n+1} + ψ_n(y; z))",
            previously_known: false,
            status: "erratum",
            witness: rho_witness(false),
        },
        FormulaErratum {
            id: "rho-last",
            location: "component ϱ_{n-1} of the action",
            printed: "ϱ_{n-1} = x^{n-5} u² ψ_{n+1}(y; z)",
            corrected: "ϱ_{n-1} = x^{n-2} u² ψ_{n+1}(y; z)",
            previously_known: true,
            status: "erratum",
            witness: rho_witness(true),
        },
        FormulaErratum {
            id: "rho-inverse",
            location: "inverse property of the action",
            printed: "ϱ(A, -B/D, A/D; ϱ(1/A, B/A, D/A; β)) = β",
            corrected: "unchanged (holds with the corrected ϱ)",
            previously_known: true,
            status: "confirmed",
            witness: inverse_property_witness(),
        },
    ]
}

use DefectKind::*;

const fn sig(variant: Variant, component: usize) -> DefectKind {
    SignatureNotInvariant { variant, component }
}

const SWAP: &str = "representatives of this pair of subsets are exchanged";
const NOT_CLOSED: &str = "predicate splits an orbit";
const PRINTED_SIG: &str = "published invariant; the corrected one is used instead";

/// Every audit finding the published tables are known to produce.
pub static DOCUMENTED_DEFECTS: &[DocumentedDefect] = &[
    DocumentedDefect { dim: 5, subset: "U4", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 5, subset: "F", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 7, subset: "U3", kind: ZeroDenominator { variant: Variant::Printed }, note: PRINTED_SIG },
    DocumentedDefect {
        dim: 7,
        subset: "U5",
        kind: RepresentativeOutside,
        note: "only at λ = 3, where Λ_3 vanishes on the family",
    },
    DocumentedDefect { dim: 7, subset: "U6", kind: EmptySubset, note: "Λ_3 = 0 and γ = 0 force Λ_4 = 0" },
    DocumentedDefect { dim: 7, subset: "U6", kind: RepresentativeOutside, note: "the subset is empty" },
    DocumentedDefect { dim: 7, subset: "U8", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 7, subset: "U8", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 7, subset: "U10", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 7, subset: "U10", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 7, subset: "U12", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 7, subset: "U12", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 7, subset: "U14", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 7, subset: "U14", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U3", kind: sig(Variant::Printed, 0), note: PRINTED_SIG },
    DocumentedDefect { dim: 8, subset: "U7", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U7", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U7", kind: sig(Variant::Printed, 0), note: "published invariant is not constant on orbits" },
    DocumentedDefect { dim: 8, subset: "U8", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U8", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U8", kind: sig(Variant::Printed, 0), note: "published invariant is not constant on orbits" },
    DocumentedDefect { dim: 8, subset: "U9", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U9", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U10", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U10", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U12", kind: NonAffineInverse, note: "invariant is cubic in λ" },
    DocumentedDefect { dim: 8, subset: "U12", kind: sig(Variant::Printed, 0), note: "published invariant is not constant on orbits" },
    DocumentedDefect { dim: 8, subset: "U13", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U13", kind: NonAffineInverse, note: "invariant is λ^{-2}" },
    DocumentedDefect { dim: 8, subset: "U13", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U13", kind: sig(Variant::Printed, 0), note: "published invariant is not constant on orbits" },
    DocumentedDefect { dim: 8, subset: "U14", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U14", kind: NonAffineInverse, note: "invariant is λ^{-2}" },
    DocumentedDefect { dim: 8, subset: "U14", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U14", kind: sig(Variant::Printed, 0), note: "published invariant is not constant on orbits" },
    DocumentedDefect { dim: 8, subset: "U15", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U15", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U16", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U16", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U17", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U17", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U18", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U18", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U20", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U20", kind: MembershipNotInvariant, note: NOT_CLOSED },
    DocumentedDefect { dim: 8, subset: "U22", kind: RepresentativeOutside, note: SWAP },
    DocumentedDefect { dim: 8, subset: "U22", kind: MembershipNotInvariant, note: NOT_CLOSED },
];

pub fn documented(dim: usize, subset: &str, kind: &DefectKind) -> Option<&'static DocumentedDefect> {
    DOCUMENTED_DEFECTS.iter().find(|d| d.dim == dim && d.subset == subset && &d.kind == kind)
}

pub fn is_documented(f: &Finding) -> bool {
    documented(f.dim, f.subset, &f.kind).is_some()
}

/// Witness for a defect the generic audit does not probe.
fn special_witness(d: &DocumentedDefect) -> Option<Witness> {
    if (d.dim, d.subset, &d.kind) != (7, "U5", &RepresentativeOutside) {
        return None;
    }
    let spec = specs(7).ok()?.iter().find(|s| s.name == "U5")?;
    let rep = spec.member(&[G::from(3)]);
    let label = subset_of(&rep).ok()?;
    Some(Witness { params: rep.to_string(), triple: None, detail: format!("lies in {label}") })
}

pub fn classification_defects() -> Result<Vec<ClassificationDefect>> {
    let mut findings = Vec::new();
    for dim in 5..=8 {
        findings.extend(invariance_audit(dim, WITNESS_SAMPLES, WITNESS_SEED)?.findings().cloned());
    }
    Ok(DOCUMENTED_DEFECTS
        .iter()
        .map(|d| {
            let witness = findings
                .iter()
                .find(|f| f.dim == d.dim && f.subset == d.subset && f.kind == d.kind)
                .map(|f| f.witness.clone())
                .or_else(|| special_witness(d));
            ClassificationDefect { defect: d.clone(), description: d.kind.to_string(), witness }
        })
        .collect())
}

/// Pairs of parameter-free representatives related by a small adapted triple.
pub fn listed_duplicates(dim: usize) -> Result<Vec<ListedDuplicate>> {
    let singles: Vec<(&'static str, ParamVector)> =
        specs(dim)?.iter().filter(|s| s.lambda_count() == 0).map(|s| (s.name, s.member(&[]))).collect();
    let pairs: Vec<(usize, usize)> =
        (0..singles.len()).flat_map(|i| (i + 1..singles.len()).map(move |j| (i, j))).collect();
    let found: Vec<Option<ListedDuplicate>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, p) = &singles[i];
            let (b, q) = &singles[j];
            // β_3 = 0 and γ = 0 are both orbit-invariant conditions
            if p.beta(3).is_zero() != q.beta(3).is_zero() || p.gamma().is_zero() != q.gamma().is_zero() {
                return Ok(None);
            }
            Ok(find_witness(p, q, DUPLICATE_GRID_BOUND)?.map(|triple| ListedDuplicate {
                dim,
                first: ListedRepresentative { subset: a, params: p.to_string() },
                second: ListedRepresentative { subset: b, params: q.to_string() },
                triple,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

pub fn coverage_gaps() -> Result<Vec<CoverageGap>> {
    (5..=8)
        .map(|dim| {
            let r = coverage_report(dim, COVERAGE_SAMPLE, WITNESS_SEED)?;
            Ok(CoverageGap { dim, uncovered_fraction: r.uncovered_fraction(), witnesses: r.gap_witnesses })
        })
        .filter(|g: &Result<CoverageGap>| g.as_ref().map_or(true, |g| !g.witnesses.is_empty()))
        .collect()
}

pub fn errata_document() -> Result<ErrataDocument> {
    let mut listed = Vec::new();
    for dim in 5..=8 {
        listed.extend(listed_duplicates(dim)?);
    }
    Ok(ErrataDocument {
        formula_errata: formula_errata(),
        classification_defects: classification_defects()?,
        listed_duplicates: listed,
        coverage_gaps: coverage_gaps()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_witnesses_disagree_except_confirmed() {
        for e in formula_errata() {
            let w = &e.witness;
            match e.status {
                "confirmed" => assert_eq!(w.printed_value, w.oracle_value, "{}", e.id),
                _ => assert_ne!(w.printed_value, w.oracle_value, "{}", e.id),
            }
        }
    }

    #[test]
    fn gamma_argument_is_undefined_at_b_zero() {
        assert!(gamma_arg_witness().printed_value.starts_with("undefined"));
    }

    #[test]
    fn registry_has_no_duplicates() {
        for (i, d) in DOCUMENTED_DEFECTS.iter().enumerate() {
            assert_eq!(documented(d.dim, d.subset, &d.kind), Some(&DOCUMENTED_DEFECTS[i]));
            assert!(specs(d.dim).unwrap().iter().any(|s| s.name == d.subset));
        }
    }

    #[test]
    fn dim7_u5_special_lambda() {
        let d = documented(7, "U5", &RepresentativeOutside).unwrap();
        assert_eq!(special_witness(d).unwrap().detail, "lies in U7");
    }

    #[test]
    fn dim7_listed_duplicate() {
        let dups = listed_duplicates(7).unwrap();
        assert!(dups.iter().any(|d| d.first.params == "L(0,0,1,0,1)" && d.second.params == "L(0,0,1,1,1)"), "{dups:?}");
    }
}
