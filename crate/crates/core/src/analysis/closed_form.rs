use std::f64::consts::PI;

use crate::analysis::AnalysisError;
use crate::graph::Sign;

/// Energy of the directed `n`-cycle with the given cycle sign.
///
/// The positive cycle has eigenvalues `exp(2 pi i j / n)` and the negative
/// one `exp((2j + 1) pi i / n)`; summing `|cos|` over them gives:
///
/// | n mod 4 | positive       | negative       |
/// |---------|----------------|----------------|
/// | 0       | `2 cot(pi/n)`  | `2 csc(pi/n)`  |
/// | odd     | `csc(pi/2n)`   | `csc(pi/2n)`   |
/// | 2       | `2 csc(pi/n)`  | `2 cot(pi/n)`  |
pub fn cycle_energy_closed_form(n: usize, sign: Sign) -> Result<f64, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::Precondition(format!("cycle length must be at least 2, got {n}")));
    }
    let t = PI / n as f64;
    let cot = 2.0 / t.tan();
    let csc = 2.0 / t.sin();
    Ok(match (n % 4, sign) {
        (0, Sign::Positive) | (2, Sign::Negative) => cot,
        (0, Sign::Negative) | (2, Sign::Positive) => csc,
        _ => 1.0 / (t / 2.0).sin(),
    })
}
