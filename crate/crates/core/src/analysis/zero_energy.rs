//! Classification of zero-energy sidigraphs.
//!
//! Energy vanishes exactly when every eigenvalue is purely imaginary. The
//! tags name the reason: no cycles at all (nilpotent, trivially), a
//! skew-symmetric adjacency matrix or more generally a purely imaginary
//! spectrum, or cycles whose linear subdigraph types cancel in every order
//! so that `phi = x^n`.

use num_traits::Zero;
use serde::Serialize;

use crate::analysis::AnalysisError;
use crate::charpoly::charpoly_trace;
use crate::graph::SignedDigraph;
use crate::polynomial::IntPolynomial;
use crate::roots::roots;

/// Largest energy still counted as zero.
pub const ZERO_ENERGY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroEnergyClass {
    Acyclic,
    SkewSpectrum,
    TypeBalanced,
    NonZero,
}

impl ZeroEnergyClass {
    pub fn has_zero_energy(self) -> bool {
        self != ZeroEnergyClass::NonZero
    }
}

/// `phi(-x) = (-1)^n phi(x)`: only coefficients of `x^(n - 2k)` are nonzero.
fn has_parity(phi: &IntPolynomial) -> bool {
    let n = phi.degree();
    phi.coeffs().iter().enumerate().all(|(k, c)| (n - k).is_multiple_of(2) || c.is_zero())
}

pub fn zero_energy_class(g: &SignedDigraph) -> Result<ZeroEnergyClass, AnalysisError> {
    if g.is_acyclic() {
        return Ok(ZeroEnergyClass::Acyclic);
    }
    if g.is_skew_symmetric() {
        return Ok(ZeroEnergyClass::SkewSpectrum);
    }
    let phi = charpoly_trace(g);
    if phi == IntPolynomial::monomial(g.order()) {
        return Ok(ZeroEnergyClass::TypeBalanced);
    }
    // A purely imaginary spectrum is symmetric under z -> -z, which the
    // exact parity test checks before the numeric one.
    if has_parity(&phi) && roots(&phi)?.energy() <= ZERO_ENERGY_TOLERANCE {
        return Ok(ZeroEnergyClass::SkewSpectrum);
    }
    Ok(ZeroEnergyClass::NonZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energy;
    use crate::graph::{cycle, path, skew_symmetric_star, Arc, Sign};
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn examples() {
        assert_eq!(zero_energy_class(&path(5, &[P, N, P, N]).unwrap()).unwrap(), ZeroEnergyClass::Acyclic);
        assert_eq!(zero_energy_class(&skew_symmetric_star(4).unwrap()).unwrap(), ZeroEnergyClass::SkewSpectrum);
        let g = SignedDigraph::from_arcs(3, [Arc::new(0, 1, P), Arc::new(1, 0, P), Arc::new(1, 2, P), Arc::new(2, 1, N)])
            .unwrap();
        assert_eq!(zero_energy_class(&g).unwrap(), ZeroEnergyClass::TypeBalanced);
        assert_eq!(zero_energy_class(&cycle(3, N).unwrap()).unwrap(), ZeroEnergyClass::NonZero);
    }

    #[test]
    fn imaginary_spectrum_without_skew_symmetry() {
        // phi = x (x^2 + 1): a mixed-sign digon with a pendant arc.
        let g = SignedDigraph::from_arcs(3, [Arc::new(0, 1, P), Arc::new(1, 0, N), Arc::new(0, 2, P)]).unwrap();
        assert!(!g.is_skew_symmetric() && !g.is_acyclic());
        assert_eq!(energy(&g).unwrap().energy, 0.0);
        assert_eq!(zero_energy_class(&g).unwrap(), ZeroEnergyClass::SkewSpectrum);
    }

    #[test]
    fn parity_is_necessary_not_sufficient() {
        // x^2 - 1 has parity but real roots.
        assert!(has_parity(&IntPolynomial::from_i64(&[-1, 0, 1])));
        assert_eq!(zero_energy_class(&cycle(2, P).unwrap()).unwrap(), ZeroEnergyClass::NonZero);
        assert!(!has_parity(&IntPolynomial::from_i64(&[1, 0, 0, 1])));
    }
}
