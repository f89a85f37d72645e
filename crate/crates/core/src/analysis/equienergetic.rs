//! Families of noncospectral equienergetic pairs.
//!
//! The `K2` families rest on one fact: if every eigenvalue `z` of `S`
//! has `|Re z| <= 1`, the eigenvalues `z + 1` and `z - 1` of
//! `S x K2` (positive digon) satisfy `|Re(z+1)| + |Re(z-1)| = 2`, so the
//! product has energy exactly twice its factor's order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::balance::is_cycle_balanced;
use crate::analysis::closed_form::cycle_energy_closed_form;
use crate::analysis::AnalysisError;
use crate::charpoly::charpoly_trace;
use crate::energy::spectrum;
use crate::graph::{cycle, cycle_with_tail, digon_union, skew_symmetric_star, Sign, SignedDigraph};
use crate::polynomial::IntPolynomial;
use crate::products::{cartesian_product, kronecker_product};

/// Agreement required between the two energies and with the predicted value.
pub const PAIR_TOLERANCE: f64 = 1e-9;
/// Slack on the eigenvalue preconditions.
const PRECONDITION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    OddCycles,
    CycleK2,
    PlnK2,
    KronSkew,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [PairKind::OddCycles, PairKind::CycleK2, PairKind::PlnK2, PairKind::KronSkew];

    pub fn name(self) -> &'static str {
        match self {
            PairKind::OddCycles => "odd-cycles",
            PairKind::CycleK2 => "cycle-k2",
            PairKind::PlnK2 => "pln-k2",
            PairKind::KronSkew => "kron-skew",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            format!("unknown pair kind '{s}' (expected one of odd-cycles, cycle-k2, pln-k2, kron-skew)")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub kind: PairKind,
    pub n: usize,
    pub order: usize,
    pub energies: [f64; 2],
    /// Value both energies must match, when the construction predicts one.
    pub expected_energy: f64,
    pub charpolys: [IntPolynomial; 2],
    pub cospectral: bool,
    pub balanced: [bool; 2],
    /// Balance each member is required to have.
    pub expected_balance: [bool; 2],
    /// Multiplicity of the eigenvalue 1 in each member.
    pub multiplicity_of_one: [usize; 2],
    /// Largest `|Re z|` (or `|Im z|` for kron-skew) over the base graph.
    pub precondition_value: f64,
    pub precondition_bound: f64,
    pub notes: Vec<String>,
}

impl PairReport {
    pub fn energies_equal(&self) -> bool {
        (self.energies[0] - self.energies[1]).abs() <= PAIR_TOLERANCE
    }

    pub fn matches_expected(&self) -> bool {
        self.energies.iter().all(|e| (e - self.expected_energy).abs() <= PAIR_TOLERANCE)
    }

    pub fn passed(&self) -> bool {
        self.energies_equal() && self.matches_expected() && !self.cospectral && self.balanced == self.expected_balance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquienergeticPair {
    pub first: SignedDigraph,
    pub second: SignedDigraph,
    pub report: PairReport,
}

/// Base graph spectrum check for the `K2` families.
fn real_parts_at_most_one(base: &SignedDigraph) -> Result<f64, AnalysisError> {
    let max_re = spectrum(base)?.max_abs_re();
    if max_re > 1.0 + PRECONDITION_SLACK {
        return Err(AnalysisError::Precondition(format!("base graph has an eigenvalue with |Re z| = {max_re} > 1")));
    }
    Ok(max_re)
}

/// Builds the pair for `kind`. For `KronSkew` the base is the positive
/// `n`-cycle with `m = 2`; use [`kron_skew_pair`] for other choices.
pub fn equienergetic_pair(n: usize, kind: PairKind) -> Result<EquienergeticPair, AnalysisError> {
    let k2 = || cycle(2, Sign::Positive);
    match kind {
        PairKind::OddCycles => {
            if n < 3 || n.is_multiple_of(2) {
                return Err(AnalysisError::Precondition(format!("odd-cycles needs odd n >= 3, got {n}")));
            }
            let first = cycle(n, Sign::Negative)?;
            let second = cycle(n, Sign::Positive)?;
            let expected = cycle_energy_closed_form(n, Sign::Positive)?;
            assemble(kind, n, first, second, expected, [false, true], 0.0, 0.0, Vec::new())
        }
        PairKind::CycleK2 => {
            if n < 2 {
                return Err(AnalysisError::Precondition(format!("cycle-k2 needs n >= 2, got {n}")));
            }
            let neg = cycle(n, Sign::Negative)?;
            let pos = cycle(n, Sign::Positive)?;
            let max_re = real_parts_at_most_one(&neg)?.max(real_parts_at_most_one(&pos)?);
            let first = cartesian_product(&neg, &k2()?);
            let second = cartesian_product(&pos, &k2()?);
            assemble(kind, n, first, second, 2.0 * n as f64, [false, true], max_re, 1.0, Vec::new())
        }
        PairKind::PlnK2 => {
            if n < 5 {
                return Err(AnalysisError::Precondition(format!("pln-k2 needs n >= 5, got {n}")));
            }
            let p3 = cycle_with_tail(n, 3, Sign::Negative)?;
            let p4 = cycle_with_tail(n, 4, Sign::Negative)?;
            let max_re = real_parts_at_most_one(&p3)?.max(real_parts_at_most_one(&p4)?);
            let first = cartesian_product(&p3, &k2()?);
            let second = cartesian_product(&p4, &k2()?);
            let notes = vec![format!("eigenvalue 1 expected with multiplicities {} and {}", n - 3, n - 4)];
            assemble(kind, n, first, second, 2.0 * n as f64, [false, false], max_re, 1.0, notes)
        }
        PairKind::KronSkew => kron_skew_pair(&cycle(n, Sign::Positive)?, 2),
    }
}

/// `(S (x) S_m) x K2` paired with `nm` disjoint positive digons; both have
/// energy `2nm`. Requires `2 <= m` and `|Im z| <= 1/sqrt(m-1)` for every
/// eigenvalue of `S`, which makes the Kronecker product's eigenvalues
/// `+-i sqrt(m-1) z` (and zeros) satisfy `|Re| <= 1`.
pub fn kron_skew_pair(base: &SignedDigraph, m: usize) -> Result<EquienergeticPair, AnalysisError> {
    if m < 2 {
        return Err(AnalysisError::Precondition(format!("kron-skew needs m >= 2, got {m}")));
    }
    let n = base.order();
    let max_im = spectrum(base)?.max_abs_im();
    let bound = 1.0 / ((m - 1) as f64).sqrt();
    if max_im > bound + PRECONDITION_SLACK {
        return Err(AnalysisError::Precondition(format!(
            "base graph has an eigenvalue with |Im z| = {max_im} > 1/sqrt(m-1) = {bound}"
        )));
    }
    let mut notes = Vec::new();
    if n >= 2 {
        let alt = 1.0 / ((n - 1) as f64).sqrt();
        notes.push(format!(
            "bound with n in place of m is 1/sqrt(n-1) = {alt}; base satisfies it: {}",
            max_im <= alt + PRECONDITION_SLACK
        ));
    }
    if m > n {
        notes.push(format!("m = {m} exceeds the base order {n}"));
    }
    let skew = skew_symmetric_star(m)?;
    let first = cartesian_product(&kronecker_product(base, &skew), &cycle(2, Sign::Positive)?);
    let second = digon_union(n * m, Sign::Positive)?;
    let first_balanced = is_cycle_balanced(&first).balanced;
    assemble(
        PairKind::KronSkew,
        n,
        first,
        second,
        2.0 * (n * m) as f64,
        [first_balanced, true],
        max_im,
        bound,
        notes,
    )
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    kind: PairKind,
    n: usize,
    first: SignedDigraph,
    second: SignedDigraph,
    expected_energy: f64,
    expected_balance: [bool; 2],
    precondition_value: f64,
    precondition_bound: f64,
    notes: Vec<String>,
) -> Result<EquienergeticPair, AnalysisError> {
    let phi = [charpoly_trace(&first), charpoly_trace(&second)];
    let spec = [spectrum(&first)?, spectrum(&second)?];
    let one = Complex64::new(1.0, 0.0);
    let report = PairReport {
        kind,
        n,
        order: first.order(),
        energies: [spec[0].energy(), spec[1].energy()],
        expected_energy,
        cospectral: phi[0] == phi[1],
        charpolys: phi,
        balanced: [is_cycle_balanced(&first).balanced, is_cycle_balanced(&second).balanced],
        expected_balance,
        multiplicity_of_one: [spec[0].multiplicity_near(one, 1e-6), spec[1].multiplicity_near(one, 1e-6)],
        precondition_value,
        precondition_bound,
        notes,
    };
    Ok(EquienergeticPair { first, second, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_triangles() {
        let p = equienergetic_pair(3, PairKind::OddCycles).unwrap();
        assert!(p.report.passed(), "{:?}", p.report);
        assert_eq!(p.report.charpolys[0], IntPolynomial::from_i64(&[1, 0, 0, 1]));
        assert_eq!(p.report.charpolys[1], IntPolynomial::from_i64(&[-1, 0, 0, 1]));
        assert!((p.report.energies[0] - 2.0).abs() < 1e-9);
        assert!(equienergetic_pair(4, PairKind::OddCycles).is_err());
    }

    #[test]
    fn cycle_k2_four() {
        let p = equienergetic_pair(4, PairKind::CycleK2).unwrap();
        assert_eq!(p.report.order, 8);
        assert!(p.report.passed(), "{:?}", p.report);
        assert!((p.report.energies[0] - 8.0).abs() < 1e-9);
    }

    #[test]
    fn pln_k2_five() {
        let p = equienergetic_pair(5, PairKind::PlnK2).unwrap();
        assert!(p.report.passed(), "{:?}", p.report);
        assert_eq!(p.report.multiplicity_of_one, [2, 1]);
        assert!(equienergetic_pair(4, PairKind::PlnK2).is_err());
    }

    #[test]
    fn kron_skew() {
        let p = equienergetic_pair(3, PairKind::KronSkew).unwrap();
        assert_eq!(p.report.order, 12);
        assert!(p.report.passed(), "{:?}", p.report);
        // The positive triangle has |Im z| = sqrt(3)/2 > 1/sqrt(2).
        assert!(matches!(kron_skew_pair(&cycle(3, Sign::Positive).unwrap(), 3), Err(AnalysisError::Precondition(_))));
        let digon = cycle(2, Sign::Positive).unwrap();
        let p = kron_skew_pair(&digon, 3).unwrap();
        assert!(p.report.passed(), "{:?}", p.report);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in PairKind::ALL {
            assert_eq!(k.name().parse::<PairKind>().unwrap(), k);
        }
        assert!("k2".parse::<PairKind>().is_err());
    }
}
