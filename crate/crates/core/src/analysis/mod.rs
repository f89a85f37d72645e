//! Structural results built on exact polynomials and computed spectra.

pub mod balance;
pub mod bounds;
pub mod closed_form;
pub mod equienergetic;
pub mod neps_spectrum;
pub mod quasi_order;
pub mod walks;
pub mod zero_energy;

use thiserror::Error;

use crate::charpoly::CharpolyError;
use crate::energy::SpectralError;
use crate::graph::GraphError;
use crate::roots::RootError;

/// Slack added to bound comparisons on top of root-finder residuals.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Charpoly(#[from] CharpolyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not in the comparison class: {0}")]
    Membership(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl From<RootError> for AnalysisError {
    fn from(e: RootError) -> Self {
        AnalysisError::Spectral(SpectralError::Roots(e))
    }
}

pub use balance::{is_cycle_balanced, neps_balance_check, BalanceWitness};
pub use bounds::{arc_bound_check, bounds_report, mcclelland_bound, ArcBound, BoundsReport};
pub use closed_form::cycle_energy_closed_form;
pub use equienergetic::{equienergetic_pair, kron_skew_pair, EquienergeticPair, PairKind, PairReport};
pub use neps_spectrum::composed_neps_spectrum;
pub use quasi_order::{quasi_order_compare, QuasiOrderResult, Relation};
pub use walks::{closed_walk_balance, enumerate_signed_walks, signed_walk_matrix};
pub use zero_energy::{zero_energy_class, ZeroEnergyClass};
