//! The polynomial invariants `Λ_1, …, Λ_7` used by the subset predicates.
//!
//! ```text
//! Λ_1 = 4β_3β_5 − 5β_4²
//! Λ_2 = 2β_3²β_6 − 6β_3β_4β_5 + β_4γ + 4β_4³
//! Λ_3 = 4β_3²β_6 + 2β_4γ − 7β_4³
//! Λ_4 = 4β_3²β_6 − 7β_4³
//! Λ_5 = β_3²β_6 − 3β_3β_4β_5 + 2β_4³
//! Λ_6 = 4β_3β_4γ + 8β_3³β_7 − 28β_3²β_4β_6 + 28β_4⁴
//! Λ_7 = 4β_3β_4γ + 8β_3³β_7 − 21β_4⁴
//! ```
//!
//! A component is undefined when it mentions some `β_k` with `k > n`.

use serde::Serialize;

use crate::algebra::ParamVector;
use crate::scalar::GaussianRational as G;

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct LambdaSet {
    values: [Option<G>; 7],
}

impl LambdaSet {
    /// `Λ_i` for `1 ≤ i ≤ 7`, or `None` if it is undefined in this dimension.
    pub fn get(&self, i: usize) -> Option<&G> {
        assert!((1..=7).contains(&i), "no Λ_{i}");
        self.values[i - 1].as_ref()
    }

    pub fn is_defined(&self, i: usize) -> bool {
        self.get(i).is_some()
    }
}

pub fn lambda_values(p: &ParamVector) -> LambdaSet {
    let b = |k: usize| p.get_beta(k).cloned();
    let g = p.gamma().clone();
    let c = |n: i64| G::from(n);
    let (b3, b4) = (p.beta(3).clone(), p.beta(4).clone());
    let mut values: [Option<G>; 7] = Default::default();
    if let Some(b5) = b(5) {
        values[0] = Some(c(4) * &b3 * &b5 - c(5) * b4.pow(2));
        if let Some(b6) = b(6) {
            let b3sq = b3.pow(2);
            values[1] = Some(c(2) * &b3sq * &b6 - c(6) * &b3 * &b4 * &b5 + &b4 * &g + c(4) * b4.pow(3));
            values[2] = Some(c(4) * &b3sq * &b6 + c(2) * &b4 * &g - c(7) * b4.pow(3));
            values[3] = Some(c(4) * &b3sq * &b6 - c(7) * b4.pow(3));
            values[4] = Some(&b3sq * &b6 - c(3) * &b3 * &b4 * &b5 + c(2) * b4.pow(3));
            if let Some(b7) = b(7) {
                let common = c(4) * &b3 * &b4 * &g + c(8) * b3.pow(3) * &b7;
                values[5] = Some(&common - c(28) * &b3sq * &b4 * &b6 + c(28) * b4.pow(4));
                values[6] = Some(common - c(21) * b4.pow(4));
            }
        }
    }
    LambdaSet { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[i64]) -> ParamVector {
        ParamVector::from_ints(v).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let l = lambda_values(&pv(&[1, 0, 1, 0]));
        assert_eq!(l.get(1), Some(&G::from(4)));
        assert!(!l.is_defined(2));
        let l = lambda_values(&pv(&[1, 1, 1, 1, 0]));
        assert_eq!(l.get(5), Some(&G::from(0)));
        assert_eq!(l.get(2), Some(&G::from(2 - 6 + 4)));
        assert_eq!(l.get(3), Some(&G::from(4 - 7)));
        assert!(!l.is_defined(6));
        assert!(!lambda_values(&pv(&[1, 0, 3])).is_defined(1));
    }

    #[test]
    fn dim8_components() {
        // β = (1, 2, 3, 4, 5), γ = 6
        let l = lambda_values(&pv(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(l.get(6), Some(&G::from(4 * 2 * 6 + 8 * 5 - 28 * 2 * 4 + 28 * 16)));
        assert_eq!(l.get(7), Some(&G::from(4 * 2 * 6 + 8 * 5 - 21 * 16)));
    }
}
