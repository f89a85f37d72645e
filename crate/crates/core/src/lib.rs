//! Signed digraphs: exact characteristic polynomials, spectra, energy and
//! the structural results built on them.

pub mod analysis;
pub mod charpoly;
pub mod corpus;
pub mod energy;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod polynomial;
pub mod products;
pub mod quadrature;
pub mod roots;

pub use charpoly::{charpoly_enumerate, charpoly_trace, CharpolyError};
pub use energy::{coulson_energy, coulson_log_energy, energy, is_cospectral, spectrum, EnergyMethod, EnergyReport, SpectralError};
pub use graph::{Arc, GraphError, Sign, SignedDigraph};
pub use matrix::IntMatrix;
pub use polynomial::IntPolynomial;
pub use products::{neps, NepsBasis};
pub use roots::{roots, Eigenvalue, RootError, Spectrum};
