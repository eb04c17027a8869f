//! Subset decompositions of `SLeib_5 … SLeib_8`, transcribed as published:
//! the defining conditions (tested in order), the invariant expressions and
//! the representative family of each subset.

use num_traits::Zero;

use crate::algebra::ParamVector;
use crate::scalar::GaussianRational as G;

use super::lambda::{lambda_values, LambdaSet};

/// Parameters and `Λ` values of one algebra, the input of every predicate
/// and invariant.
pub struct Env {
    params: ParamVector,
    lambdas: LambdaSet,
}

impl Env {
    pub fn new(p: &ParamVector) -> Self {
        Self { params: p.clone(), lambdas: lambda_values(p) }
    }

    pub fn params(&self) -> &ParamVector {
        &self.params
    }

    pub fn b(&self, k: usize) -> G {
        self.params.beta(k).clone()
    }

    pub fn g(&self) -> G {
        self.params.gamma().clone()
    }

    pub fn l(&self, i: usize) -> G {
        self.lambdas.get(i).unwrap_or_else(|| panic!("Λ_{i} undefined in dimension {}", self.params.dim())).clone()
    }
}

/// A quantity a subset condition tests against zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quantity {
    Beta(usize),
    Gamma,
    Lambda(usize),
    /// `γ − 2β_3²`
    GammaMinus2Beta3Sq,
    /// `γ − 3β_4²`
    GammaMinus3Beta4Sq,
}

impl Quantity {
    pub fn eval(self, e: &Env) -> G {
        match self {
            Quantity::Beta(k) => e.b(k),
            Quantity::Gamma => e.g(),
            Quantity::Lambda(i) => e.l(i),
            Quantity::GammaMinus2Beta3Sq => e.g() - G::from(2) * e.b(3).pow(2),
            Quantity::GammaMinus3Beta4Sq => e.g() - G::from(3) * e.b(4).pow(2),
        }
    }

    pub fn text(self) -> String {
        match self {
            Quantity::Beta(k) => format!("β{k}"),
            Quantity::Gamma => "γ".into(),
            Quantity::Lambda(i) => format!("Λ{i}"),
            Quantity::GammaMinus2Beta3Sq => "γ-2β3²".into(),
            Quantity::GammaMinus3Beta4Sq => "γ-3β4²".into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cond {
    pub quantity: Quantity,
    pub zero: bool,
}

impl Cond {
    pub fn holds(&self, e: &Env) -> bool {
        self.quantity.eval(e).is_zero() == self.zero
    }

    pub fn text(&self) -> String {
        format!("{}{}0", self.quantity.text(), if self.zero { "=" } else { "≠" })
    }
}

/// One entry of a representative family: a fixed integer or a `λ` slot
/// (1-based).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    Fixed(i64),
    Lambda(usize),
}

/// A quotient `num / den` whose denominator is checked before dividing.
pub struct Frac {
    pub num: G,
    pub den: G,
}

pub type SigFn = fn(&Env) -> Vec<Frac>;

#[derive(Clone, Copy)]
pub struct Formula {
    /// Human-readable components.
    pub text: &'static [&'static str],
    pub eval: SigFn,
}

/// Invariants of a subset as published, plus a replacement where the
/// published expression was found defective and a correct one is known.
#[derive(Clone, Copy)]
pub struct SignatureSpec {
    pub printed: Formula,
    pub corrected: Option<(&'static str, Formula)>,
}

impl SignatureSpec {
    /// The expression actually used for classification.
    pub fn effective(&self) -> (Formula, Option<&'static str>) {
        match self.corrected {
            Some((id, f)) => (f, Some(id)),
            None => (self.printed, None),
        }
    }
}

pub struct SubsetSpec {
    pub name: &'static str,
    pub conds: &'static [Cond],
    pub signature: Option<SignatureSpec>,
    pub family: &'static [Slot],
}

impl SubsetSpec {
    pub fn contains(&self, e: &Env) -> bool {
        self.conds.iter().all(|c| c.holds(e))
    }

    pub fn lambda_count(&self) -> usize {
        self.family
            .iter()
            .filter_map(|s| match s {
                Slot::Lambda(i) => Some(*i),
                Slot::Fixed(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// `L(1,0,λ1,λ1,λ2)`; a lone slot is written `λ`.
    pub fn family_id(&self) -> String {
        let single = self.lambda_count() == 1;
        let parts: Vec<String> = self
            .family
            .iter()
            .map(|s| match s {
                Slot::Fixed(v) => v.to_string(),
                Slot::Lambda(_) if single => "λ".into(),
                Slot::Lambda(i) => format!("λ{i}"),
            })
            .collect();
        format!("L({})", parts.join(","))
    }

    /// The family member with the given `λ` values.
    pub fn member(&self, lambdas: &[G]) -> ParamVector {
        let values = self
            .family
            .iter()
            .map(|s| match s {
                Slot::Fixed(v) => G::from(*v),
                Slot::Lambda(i) => lambdas[i - 1].clone(),
            })
            .collect();
        ParamVector::from_values(values).expect("family has a supported length")
    }

    pub fn predicate_text(&self) -> String {
        self.conds.iter().map(Cond::text).collect::<Vec<_>>().join(", ")
    }
}

use Quantity::{Beta, Gamma, GammaMinus2Beta3Sq, GammaMinus3Beta4Sq, Lambda};
use Slot::{Fixed as X, Lambda as P};

const fn z(quantity: Quantity) -> Cond {
    Cond { quantity, zero: true }
}

const fn nz(quantity: Quantity) -> Cond {
    Cond { quantity, zero: false }
}

fn c(n: i64) -> G {
    G::from(n)
}

fn frac(num: G, den: G) -> Frac {
    Frac { num, den }
}

const fn printed(text: &'static [&'static str], eval: SigFn) -> Option<SignatureSpec> {
    Some(SignatureSpec { printed: Formula { text, eval }, corrected: None })
}

const fn singleton(name: &'static str, conds: &'static [Cond], family: &'static [Slot]) -> SubsetSpec {
    SubsetSpec { name, conds, signature: None, family }
}

// ---------------------------------------------------------------- dim 5

pub static DIM5: [SubsetSpec; 5] = [
    SubsetSpec {
        name: "U1",
        conds: &[nz(Beta(3)), nz(GammaMinus2Beta3Sq)],
        signature: printed(&["γ/β3²"], |e| vec![frac(e.g(), e.b(3).pow(2))]),
        family: &[X(1), X(0), P(1)],
    },
    singleton("U2", &[nz(Beta(3)), z(GammaMinus2Beta3Sq), nz(Beta(4))], &[X(1), X(1), X(2)]),
    singleton("U3", &[z(Beta(3)), nz(Gamma)], &[X(0), X(0), X(1)]),
    singleton("U4", &[z(Beta(3)), z(Gamma), z(Beta(4))], &[X(0), X(1), X(0)]),
    singleton("F", &[z(Beta(3)), z(Gamma), nz(Beta(4))], &[X(0), X(0), X(0)]),
];

// ---------------------------------------------------------------- dim 6

pub static DIM6: [SubsetSpec; 9] = [
    SubsetSpec {
        name: "U1",
        conds: &[nz(Beta(3)), nz(Gamma)],
        signature: printed(&["(2β3β4γ+β3²Λ1)/γ²"], |e| {
            vec![frac(c(2) * e.b(3) * e.b(4) * e.g() + e.b(3).pow(2) * e.l(1), e.g().pow(2))]
        }),
        family: &[X(1), X(0), P(1), X(1)],
    },
    singleton("U2", &[nz(Beta(3)), z(Gamma), nz(Lambda(1))], &[X(1), X(0), X(1), X(0)]),
    singleton("U3", &[nz(Beta(3)), z(Gamma), z(Lambda(1))], &[X(1), X(0), X(0), X(0)]),
    singleton("U4", &[z(Beta(3)), nz(Beta(4)), nz(Gamma)], &[X(0), X(1), X(0), X(1)]),
    singleton("U5", &[z(Beta(3)), nz(Beta(4)), z(Gamma), nz(Beta(5))], &[X(0), X(1), X(1), X(0)]),
    singleton("U6", &[z(Beta(3)), nz(Beta(4)), z(Gamma), z(Beta(5))], &[X(0), X(1), X(0), X(0)]),
    singleton("U7", &[z(Beta(3)), z(Beta(4)), nz(Gamma)], &[X(0), X(0), X(0), X(1)]),
    singleton("U8", &[z(Beta(3)), z(Beta(4)), z(Gamma), nz(Beta(5))], &[X(0), X(0), X(1), X(0)]),
    singleton("F", &[z(Beta(3)), z(Beta(4)), z(Gamma), z(Beta(5))], &[X(0), X(0), X(0), X(0)]),
];

// ---------------------------------------------------------------- dim 7

pub static DIM7: [SubsetSpec; 15] = [
    SubsetSpec {
        name: "U1",
        conds: &[nz(Beta(3)), nz(Lambda(1)), nz(Lambda(2))],
        signature: printed(&["Λ1³/Λ2²", "γΛ1²/Λ2²"], |e| {
            vec![frac(e.l(1).pow(3), e.l(2).pow(2)), frac(e.g() * e.l(1).pow(2), e.l(2).pow(2))]
        }),
        family: &[X(1), X(0), P(1), P(1), P(2)],
    },
    SubsetSpec {
        name: "U2",
        conds: &[nz(Beta(3)), nz(Lambda(1)), z(Lambda(2)), nz(Gamma)],
        signature: printed(&["γ/Λ1"], |e| vec![frac(e.g(), e.l(1))]),
        family: &[X(1), X(0), X(1), X(0), P(1)],
    },
    SubsetSpec {
        name: "U3",
        conds: &[nz(Beta(3)), z(Lambda(1)), nz(Lambda(3)), nz(Gamma)],
        signature: Some(SignatureSpec {
            printed: Formula { text: &["γ³/Λ1²"], eval: |e| vec![frac(e.g().pow(3), e.l(1).pow(2))] },
            corrected: Some((
                "dim7-U3-gamma3-over-lambda3sq",
                Formula { text: &["γ³/Λ3²"], eval: |e| vec![frac(e.g().pow(3), e.l(3).pow(2))] },
            )),
        }),
        family: &[X(1), X(0), X(0), P(1), P(1)],
    },
    SubsetSpec {
        name: "U4",
        conds: &[z(Beta(3)), nz(Beta(4)), nz(Beta(5))],
        signature: printed(&["γ/β4²"], |e| vec![frac(e.g(), e.b(4).pow(2))]),
        family: &[X(0), X(1), X(1), X(0), P(1)],
    },
    SubsetSpec {
        name: "U5",
        conds: &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), nz(GammaMinus3Beta4Sq)],
        signature: printed(&["γ/β4²"], |e| vec![frac(e.g(), e.b(4).pow(2))]),
        family: &[X(0), X(1), X(0), X(0), P(1)],
    },
    singleton("U6", &[nz(Beta(3)), z(Lambda(1)), z(Lambda(3)), z(Gamma), nz(Lambda(4))], &[X(1), X(0), X(0), X(1), X(0)]),
    singleton("U7", &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), z(GammaMinus3Beta4Sq)], &[X(0), X(1), X(0), X(1), X(3)]),
    singleton("U8", &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), nz(Beta(6)), nz(Gamma)], &[X(0), X(0), X(1), X(0), X(1)]),
    singleton("U9", &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), nz(Beta(6)), z(Gamma)], &[X(0), X(0), X(1), X(1), X(0)]),
    singleton("U10", &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), z(Beta(6)), nz(Gamma)], &[X(0), X(0), X(1), X(1), X(1)]),
    singleton("U11", &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), z(Beta(6)), z(Gamma)], &[X(0), X(0), X(1), X(0), X(0)]),
    singleton("U12", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), nz(Beta(6)), nz(Gamma)], &[X(0), X(0), X(0), X(0), X(1)]),
    singleton("U13", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), nz(Beta(6)), z(Gamma)], &[X(0), X(0), X(0), X(1), X(0)]),
    singleton("U14", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), nz(Gamma)], &[X(0), X(0), X(0), X(1), X(1)]),
    singleton("F", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), z(Gamma)], &[X(0), X(0), X(0), X(0), X(0)]),
];

// ---------------------------------------------------------------- dim 8

/// `Λ_7 − 14β_4²Λ_1 − 4β_3β_4γ`, the bracket of the U3 invariant.
fn dim8_u3_core(e: &Env) -> G {
    e.l(7) - c(14) * e.b(4).pow(2) * e.l(1) - c(4) * e.b(3) * e.b(4) * e.g()
}

pub static DIM8: [SubsetSpec; 23] = [
    SubsetSpec {
        name: "U1",
        conds: &[nz(Beta(3)), nz(Lambda(1)), nz(Lambda(5))],
        signature: printed(&["Λ1³/Λ5²", "Λ1⁴(Λ7-28β4Λ5-14β4²Λ1)/Λ5⁴", "β3γΛ1³/Λ5³"], |e| {
            vec![
                frac(e.l(1).pow(3), e.l(5).pow(2)),
                frac(e.l(1).pow(4) * (e.l(7) - c(28) * e.b(4) * e.l(5) - c(14) * e.b(4).pow(2) * e.l(1)), e.l(5).pow(4)),
                frac(e.b(3) * e.g() * e.l(1).pow(3), e.l(5).pow(3)),
            ]
        }),
        family: &[X(1), X(0), P(1), P(1), P(2), P(3)],
    },
    SubsetSpec {
        name: "U2",
        conds: &[nz(Beta(3)), nz(Lambda(1)), z(Lambda(5)), nz(Gamma)],
        signature: printed(&["Λ1³/(β3²γ²)", "Λ1⁴(Λ7-14β4²Λ1)/(β3⁴γ⁴)"], |e| {
            vec![
                frac(e.l(1).pow(3), e.b(3).pow(2) * e.g().pow(2)),
                frac(e.l(1).pow(4) * (e.l(7) - c(14) * e.b(4).pow(2) * e.l(1)), e.b(3).pow(4) * e.g().pow(4)),
            ]
        }),
        family: &[X(1), X(0), P(1), X(0), P(2), P(1)],
    },
    SubsetSpec {
        name: "U3",
        conds: &[nz(Beta(3)), nz(Lambda(1)), z(Lambda(5)), z(Gamma)],
        signature: Some(SignatureSpec {
            printed: Formula {
                text: &["Λ1⁴(Λ7-14β4²Λ1-4β3β4γ)/Λ1²"],
                eval: |e| vec![frac(e.l(1).pow(4) * dim8_u3_core(e), e.l(1).pow(2))],
            },
            corrected: Some((
                "dim8-U3-lambda1-power",
                Formula {
                    text: &["(Λ7-14β4²Λ1-4β3β4γ)/Λ1²"],
                    eval: |e| vec![frac(dim8_u3_core(e), e.l(1).pow(2))],
                },
            )),
        }),
        family: &[X(1), X(0), X(1), X(0), P(1), X(0)],
    },
    SubsetSpec {
        name: "U4",
        conds: &[nz(Beta(3)), z(Lambda(1)), nz(Lambda(4)), nz(Lambda(6))],
        signature: printed(&["Λ4⁴/Λ6³", "β3γΛ4³/Λ6³"], |e| {
            vec![frac(e.l(4).pow(4), e.l(6).pow(3)), frac(e.b(3) * e.g() * e.l(4).pow(3), e.l(6).pow(3))]
        }),
        family: &[X(1), X(0), X(0), P(1), P(1), P(2)],
    },
    SubsetSpec {
        name: "U5",
        conds: &[nz(Beta(3)), z(Lambda(1)), nz(Lambda(4)), z(Lambda(6))],
        signature: printed(&["β3γ/Λ4"], |e| vec![frac(e.b(3) * e.g(), e.l(4))]),
        family: &[X(1), X(0), X(0), X(1), X(0), P(1)],
    },
    SubsetSpec {
        name: "U6",
        conds: &[nz(Beta(3)), z(Lambda(1)), z(Lambda(4)), nz(Gamma), nz(Lambda(7))],
        signature: printed(&["β3⁴γ⁴/Λ7³"], |e| vec![frac(e.b(3).pow(4) * e.g().pow(4), e.l(7).pow(3))]),
        family: &[X(1), X(0), X(0), X(0), P(1), P(1)],
    },
    SubsetSpec {
        name: "U7",
        conds: &[z(Beta(3)), nz(Beta(4)), nz(Beta(5)), nz(Beta(6))],
        signature: printed(&["(β5β6γ+3β4²β7-7β4β5²β6)/β5³", "γ/(β4β5)"], |e| {
            vec![
                frac(
                    e.b(5) * e.b(6) * e.g() + c(3) * e.b(4).pow(2) * e.b(7) - c(7) * e.b(4) * e.b(5).pow(2) * e.b(6),
                    e.b(5).pow(3),
                ),
                frac(e.g(), e.b(4) * e.b(5)),
            ]
        }),
        family: &[X(0), X(1), X(1), X(0), P(1), P(2)],
    },
    SubsetSpec {
        name: "U8",
        conds: &[z(Beta(3)), nz(Beta(4)), nz(Beta(5)), z(Beta(6))],
        signature: printed(&["(β4β5γ+3β4²β7+7β4²β5²)/β5³", "γ/(β4β5)"], |e| {
            vec![
                frac(
                    e.b(4) * e.b(5) * e.g() + c(3) * e.b(4).pow(2) * e.b(7) + c(7) * e.b(4).pow(2) * e.b(5).pow(2),
                    e.b(5).pow(3),
                ),
                frac(e.g(), e.b(4) * e.b(5)),
            ]
        }),
        family: &[X(0), X(1), X(1), X(-1), P(1), P(2)],
    },
    SubsetSpec {
        name: "U9",
        conds: &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), nz(Beta(6)), nz(Gamma)],
        signature: printed(&["β4³(β6γ+3β4²β7)/γ³"], |e| {
            vec![frac(e.b(4).pow(3) * (e.b(6) * e.g() + c(3) * e.b(4).pow(2) * e.b(7)), e.g().pow(3))]
        }),
        family: &[X(0), X(1), X(0), X(0), P(1), X(1)],
    },
    SubsetSpec {
        name: "U10",
        conds: &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), z(Beta(6)), nz(Gamma)],
        signature: printed(&["(β4⁵β7+γ³)/γ³"], |e| vec![frac(e.b(4).pow(5) * e.b(7) + e.g().pow(3), e.g().pow(3))]),
        family: &[X(0), X(1), X(0), X(-1), P(1), X(1)],
    },
    SubsetSpec {
        name: "U11",
        conds: &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), nz(Beta(6))],
        signature: printed(&["β6γ/β5³"], |e| vec![frac(e.b(6) * e.g(), e.b(5).pow(3))]),
        family: &[X(0), X(0), X(1), X(1), X(0), P(1)],
    },
    SubsetSpec {
        name: "U12",
        conds: &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), z(Beta(6)), z(Gamma), nz(Beta(7))],
        signature: printed(&["β7³/β5⁵"], |e| vec![frac(e.b(7).pow(3), e.b(5).pow(5))]),
        family: &[X(0), X(0), X(1), X(0), P(1), X(0)],
    },
    SubsetSpec {
        name: "U13",
        conds: &[z(Beta(3)), z(Beta(4)), z(Beta(5)), nz(Beta(6)), nz(Gamma), nz(Beta(7))],
        signature: printed(&["β6/γ²"], |e| vec![frac(e.b(6), e.g().pow(2))]),
        family: &[X(0), X(0), X(0), X(1), X(0), P(1)],
    },
    SubsetSpec {
        name: "U14",
        conds: &[z(Beta(3)), z(Beta(4)), z(Beta(5)), nz(Beta(6)), nz(Gamma), z(Beta(7))],
        signature: printed(&["β6/γ²"], |e| vec![frac(e.b(6), e.g().pow(2))]),
        family: &[X(0), X(0), X(0), X(1), X(1), P(1)],
    },
    singleton("U15", &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), nz(Beta(6)), z(Gamma), nz(Beta(7))], &[X(0), X(1), X(0), X(0), X(1), X(0)]),
    singleton("U16", &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), nz(Beta(6)), z(Gamma), z(Beta(7))], &[X(0), X(1), X(0), X(0), X(0), X(0)]),
    singleton("U17", &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), z(Beta(6)), z(Gamma), nz(Beta(7))], &[X(0), X(1), X(0), X(-1), X(1), X(0)]),
    singleton("U18", &[z(Beta(3)), nz(Beta(4)), z(Beta(5)), z(Beta(6)), z(Gamma), z(Beta(7))], &[X(0), X(1), X(0), X(-1), X(0), X(0)]),
    singleton("U19", &[z(Beta(3)), z(Beta(4)), nz(Beta(5)), z(Beta(6)), nz(Gamma)], &[X(0), X(0), X(1), X(0), X(0), X(1)]),
    singleton("U20", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), nz(Beta(7)), nz(Gamma)], &[X(0), X(0), X(0), X(0), X(0), X(1)]),
    singleton("U21", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), nz(Beta(7)), z(Gamma)], &[X(0), X(0), X(0), X(0), X(1), X(0)]),
    singleton("U22", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), z(Beta(7)), nz(Gamma)], &[X(0), X(0), X(0), X(0), X(1), X(1)]),
    singleton("F", &[z(Beta(3)), z(Beta(4)), z(Beta(5)), z(Beta(6)), z(Beta(7)), z(Gamma)], &[X(0), X(0), X(0), X(0), X(0), X(0)]),
];

/// The decomposition for `dim`, if one is published.
pub fn subsets(dim: usize) -> Option<&'static [SubsetSpec]> {
    match dim {
        5 => Some(&DIM5),
        6 => Some(&DIM6),
        7 => Some(&DIM7),
        8 => Some(&DIM8),
        _ => None,
    }
}
