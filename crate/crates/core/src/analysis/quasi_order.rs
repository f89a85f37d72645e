//! Quasi-order on sidigraphs whose cycles all have one length `h`.
//!
//! For such a graph the characteristic polynomial is
//! `x^n + sum_k (-1)^k c*(kh) x^(n - kh)`, where `c*(kh)` counts positive
//! minus negative linear subdigraphs of order `kh`. Graphs with all
//! `c* >= 0` are compared coordinatewise on these vectors. When
//! `h = 2 mod 4`, strict dominance forces strictly larger energy.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::analysis::{AnalysisError, BOUND_TOLERANCE};
use crate::charpoly::{charpoly_trace, check_uniform_cycle_length, CharpolyError};
use crate::energy::energy;
use crate::graph::SignedDigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiOrderResult {
    pub relation: Relation,
    /// `c*(kh)` for `k = 1..=n/h`.
    #[serde(serialize_with = "serialize_counts")]
    pub left: Vec<BigInt>,
    #[serde(serialize_with = "serialize_counts")]
    pub right: Vec<BigInt>,
    /// Energies, computed when the monotonicity check applies.
    pub energies: Option<(f64, f64)>,
}

fn serialize_counts<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

/// `c*(kh)` read off the exact characteristic polynomial after checking
/// that every cycle has length `h`.
pub fn signed_linear_counts(g: &SignedDigraph, h: usize) -> Result<Vec<BigInt>, AnalysisError> {
    check_uniform_cycle_length(g, h).map_err(|e| match e {
        CharpolyError::CycleLengthMismatch { .. } | CharpolyError::InvalidCycleLength(_) => {
            AnalysisError::Membership(e.to_string())
        }
        other => AnalysisError::Charpoly(other),
    })?;
    let phi = charpoly_trace(g);
    Ok((1..=g.order() / h)
        .map(|k| {
            let c = phi.order_coefficient(k * h);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

pub fn quasi_order_compare(s1: &SignedDigraph, s2: &SignedDigraph, h: usize) -> Result<QuasiOrderResult, AnalysisError> {
    if s1.order() != s2.order() {
        return Err(AnalysisError::Membership(format!("orders differ ({} vs {})", s1.order(), s2.order())));
    }
    let left = signed_linear_counts(s1, h)?;
    let right = signed_linear_counts(s2, h)?;
    for (which, v) in [("first", &left), ("second", &right)] {
        if let Some((k, c)) = v.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(AnalysisError::Membership(format!("{which} graph has c*({}) = {c} < 0", (k + 1) * h)));
        }
    }
    let le = left.iter().zip(&right).all(|(a, b)| a <= b);
    let ge = left.iter().zip(&right).all(|(a, b)| a >= b);
    let relation = match (le, ge) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Less,
        (false, true) => Relation::Greater,
        (false, false) => Relation::Incomparable,
    };
    let mut energies = None;
    if h % 4 == 2 && matches!(relation, Relation::Less | Relation::Greater) {
        let e1 = energy(s1)?.energy;
        let e2 = energy(s2)?.energy;
        let (lo, hi) = if relation == Relation::Less { (e1, e2) } else { (e2, e1) };
        if !(lo < hi - BOUND_TOLERANCE) {
            return Err(AnalysisError::InvariantViolation(format!(
                "strict quasi-order dominance without strictly larger energy ({lo} vs {hi})"
            )));
        }
        energies = Some((e1, e2));
    }
    Ok(QuasiOrderResult { relation, left, right, energies })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{uniform_signed_counts, DEFAULT_ENUMERATION_CAP};
    use crate::graph::{cycle, digon_union, direct_sum, symmetric_double, Arc, Sign};
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn one_digon_below_two() {
        let one = direct_sum(&[cycle(2, P).unwrap(), SignedDigraph::empty(2).unwrap()]).unwrap();
        let two = digon_union(2, P).unwrap();
        let r = quasi_order_compare(&one, &two, 2).unwrap();
        assert_eq!(r.relation, Relation::Less);
        let (e1, e2) = r.energies.unwrap();
        assert!((e1 - 2.0).abs() < 1e-9 && (e2 - 4.0).abs() < 1e-9);
        assert_eq!(quasi_order_compare(&two, &one, 2).unwrap().relation, Relation::Greater);
        assert_eq!(quasi_order_compare(&two, &two, 2).unwrap().relation, Relation::Equal);
    }

    #[test]
    fn incomparable_pair() {
        // Path 0-1-2-3 of positive digons with the middle one mixed-sign:
        // c*(2) = 2 - 1 and c*(4) = 1.
        let mid = SignedDigraph::from_arcs(
            4,
            [Arc::new(0, 1, P), Arc::new(1, 0, P), Arc::new(1, 2, P), Arc::new(2, 1, N), Arc::new(2, 3, P), Arc::new(3, 2, P)],
        )
        .unwrap();
        let star = symmetric_double(4, &[(0, 1, P), (0, 2, P)]).unwrap();
        let a = signed_linear_counts(&mid, 2).unwrap();
        let b = signed_linear_counts(&star, 2).unwrap();
        assert_eq!(a, [1, 1].map(BigInt::from));
        assert_eq!(b, [2, 0].map(BigInt::from));
        assert_eq!(quasi_order_compare(&star, &mid, 2).unwrap().relation, Relation::Incomparable);
    }

    #[test]
    fn counts_match_census() {
        let g = symmetric_double(6, &[(0, 1, P), (1, 2, N), (2, 3, P), (3, 4, P), (1, 5, P)]).unwrap();
        assert_eq!(signed_linear_counts(&g, 2).unwrap(), uniform_signed_counts(&g, 2, DEFAULT_ENUMERATION_CAP).unwrap());
    }

    #[test]
    fn membership_errors() {
        let d = cycle(2, P).unwrap();
        assert!(matches!(quasi_order_compare(&cycle(3, P).unwrap(), &cycle(3, P).unwrap(), 2), Err(AnalysisError::Membership(_))));
        assert!(matches!(quasi_order_compare(&d, &digon_union(2, P).unwrap(), 2), Err(AnalysisError::Membership(_))));
        // A mixed-sign digon has c*(2) = -1.
        assert!(matches!(quasi_order_compare(&cycle(2, N).unwrap(), &d, 2), Err(AnalysisError::Membership(_))));
    }
}
