//! Energy `E(S) = sum |Re z_j|` and its integral representations.
//!
//! The algebraic route always starts from the exact integer characteristic
//! polynomial. The two integral routes evaluate
//!
//! ```text
//! E = (1/pi) PV int_R ( n - i x phi'(i x) / phi(i x) ) dx
//! E = (1/pi)    int_R x^-2 log| x^n phi(i / x) | dx
//! ```
//!
//! Both integrands have an even real part for real coefficients, so only the
//! half line `x >= 0` is integrated. Eigenvalues `i b` on the imaginary axis
//! are real-line poles of the first integrand at `x = |b|`; they are handled
//! by excising `(|b| - eps, |b| + eps)`, folding the remainder of a window
//! around the pole onto itself (which cancels the `1/(x - b)` part), and
//! extrapolating `eps -> 0` with Richardson steps.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::charpoly::charpoly_trace;
use crate::graph::SignedDigraph;
use crate::polynomial::IntPolynomial;
use crate::quadrature::integrate;
use crate::roots::{roots_with, RootError, RootOptions, Spectrum};

/// Largest accepted error estimate for the integral routes.
pub const INTEGRAL_TOLERANCE: f64 = 1e-4;
/// `|Re z| <= AXIS_TOLERANCE * (1 + |z|)` counts as on the imaginary axis.
pub const AXIS_TOLERANCE: f64 = 1e-9;
/// Eigenvalues this close to the axis are treated as poles by the
/// principal-value route; their energy contribution is below this bound.
const POLE_AXIS_TOLERANCE: f64 = 1e-7;
const QUAD_ABS_TOL: f64 = 1e-11;
const QUAD_MAX_PIECES: usize = 4000;
const RICHARDSON_LEVELS: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("eigenvalue {re} + {im}i lies on the imaginary axis")]
    ImaginaryAxisEigenvalue { re: f64, im: f64 },
    #[error("quadrature error estimate {estimate:e} exceeds {INTEGRAL_TOLERANCE:e}")]
    Quadrature { estimate: f64 },
    #[error("graphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyMethod {
    Algebraic,
    ClosedForm,
    Coulson,
    CoulsonLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Residuals {
    /// Largest root backward error, when roots were computed.
    pub root_residual_max: Option<f64>,
    /// Quadrature plus extrapolation error estimate for integral routes.
    pub integral_error_estimate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub method: EnergyMethod,
    pub residuals: Residuals,
}

pub fn spectrum(g: &SignedDigraph) -> Result<Spectrum, SpectralError> {
    spectrum_with(g, &RootOptions::default())
}

pub fn spectrum_with(g: &SignedDigraph, opts: &RootOptions) -> Result<Spectrum, SpectralError> {
    Ok(roots_with(&charpoly_trace(g), opts)?)
}

pub fn energy(g: &SignedDigraph) -> Result<EnergyReport, SpectralError> {
    energy_with(g, &RootOptions::default())
}

pub fn energy_with(g: &SignedDigraph, opts: &RootOptions) -> Result<EnergyReport, SpectralError> {
    let spec = spectrum_with(g, opts)?;
    Ok(EnergyReport {
        energy: spec.energy(),
        method: EnergyMethod::Algebraic,
        residuals: Residuals { root_residual_max: Some(spec.residual()), integral_error_estimate: None },
    })
}

/// Exact comparison of characteristic polynomials.
pub fn is_cospectral(a: &SignedDigraph, b: &SignedDigraph) -> Result<bool, SpectralError> {
    if a.order() != b.order() {
        return Err(SpectralError::OrderMismatch(a.order(), b.order()));
    }
    Ok(charpoly_trace(a) == charpoly_trace(b))
}

/// Coefficients of `phi` with the zero roots divided out, as floats.
fn deflated(phi: &IntPolynomial) -> Vec<f64> {
    phi.shift_down(phi.trailing_zeros()).to_f64()
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Re(d - w psi'(w) / psi(w))` at `w = i x`.
fn coulson_integrand(coeffs: &[f64], reversed: &[f64], x: f64) -> f64 {
    let d = (coeffs.len() - 1) as f64;
    if x.abs() <= 1.0 {
        let w = Complex64::new(0.0, x);
        let (p, dp) = horner(coeffs, w);
        (d - w * dp / p).re
    } else {
        // With u = 1/w and r the reversed polynomial,
        // d - w psi'(w)/psi(w) = u r'(u) / r(u).
        let u = Complex64::new(0.0, x).inv();
        let (r, dr) = horner(reversed, u);
        (u * dr / r).re
    }
}

pub fn coulson_energy(g: &SignedDigraph) -> Result<EnergyReport, SpectralError> {
    coulson_energy_with(g, &RootOptions::default())
}

pub fn coulson_energy_with(g: &SignedDigraph, opts: &RootOptions) -> Result<EnergyReport, SpectralError> {
    let phi = charpoly_trace(g);
    let spec = roots_with(&phi, opts)?;
    coulson_from_parts(&phi, &spec)
}

/// Principal-value evaluation given the polynomial and its spectrum; the
/// spectrum only locates the poles.
pub fn coulson_from_parts(phi: &IntPolynomial, spec: &Spectrum) -> Result<EnergyReport, SpectralError> {
    let coeffs = deflated(phi);
    let residuals = |err| Residuals { root_residual_max: Some(spec.residual()), integral_error_estimate: Some(err) };
    if coeffs.len() <= 1 {
        return Ok(EnergyReport { energy: 0.0, method: EnergyMethod::Coulson, residuals: residuals(0.0) });
    }
    let reversed: Vec<f64> = coeffs.iter().rev().copied().collect();
    let f = |x: f64| coulson_integrand(&coeffs, &reversed, x);

    let mut poles: Vec<f64> = spec
        .eigenvalues()
        .iter()
        .filter(|v| v.im.abs() > spec.tolerance() && v.re.abs() <= POLE_AXIS_TOLERANCE * (1.0 + v.value().norm()))
        .map(|v| v.im.abs())
        .collect();
    poles.sort_by(f64::total_cmp);
    poles.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));

    let mut windows = Vec::with_capacity(poles.len());
    for (k, &p) in poles.iter().enumerate() {
        let left_gap = if k == 0 { p } else { p - poles[k - 1] };
        let right_gap = poles.get(k + 1).map_or(f64::INFINITY, |q| q - p);
        windows.push((p, (0.4 * left_gap.min(right_gap)).min(0.5)));
    }

    let mut total = 0.0;
    let mut err = 0.0;
    let mut start = 0.0;
    for &(p, delta) in &windows {
        let (v, e) = tan_mapped(&f, start, p - delta);
        total += v;
        err += e;
        let (v, e) = folded_window(&f, p, delta);
        total += v;
        err += e;
        start = p + delta;
    }
    let (v, e) = tan_mapped(&f, start, f64::INFINITY);
    total += v;
    err += e;

    let energy = 2.0 / PI * total;
    let estimate = 2.0 / PI * err;
    if !energy.is_finite() || !(estimate <= INTEGRAL_TOLERANCE) {
        return Err(SpectralError::Quadrature { estimate });
    }
    Ok(EnergyReport { energy: energy.max(0.0), method: EnergyMethod::Coulson, residuals: residuals(estimate) })
}

/// `int_a^b f(x) dx` through `x = tan(theta)`; `b` may be infinite.
fn tan_mapped<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let ta = a.atan();
    let tb = if b.is_infinite() { FRAC_PI_2 } else { b.atan() };
    let r = integrate(
        |t| {
            let x = t.tan();
            f(x) * (1.0 + x * x)
        },
        ta,
        tb,
        QUAD_ABS_TOL,
        0.0,
        QUAD_MAX_PIECES,
    );
    (r.value, r.error)
}

/// `PV int_{p-delta}^{p+delta} f`: the excised integral
/// `I(eps) = int_eps^delta f(p+t) + f(p-t) dt` has an odd expansion in
/// `eps`, so Richardson steps with exponents 1, 3, 5, ... remove it.
fn folded_window<F: Fn(f64) -> f64>(f: &F, p: f64, delta: f64) -> (f64, f64) {
    let h = |t: f64| f(p + t) + f(p - t);
    let mut quad_err = 0.0;
    let mut eps = delta / 4.0;
    let r = integrate(h, eps, delta, QUAD_ABS_TOL, 0.0, QUAD_MAX_PIECES);
    quad_err += r.error;
    let mut excised = vec![r.value];
    for _ in 1..RICHARDSON_LEVELS {
        let r = integrate(h, eps / 2.0, eps, QUAD_ABS_TOL, 0.0, QUAD_MAX_PIECES);
        quad_err += r.error;
        excised.push(excised.last().expect("nonempty") + r.value);
        eps /= 2.0;
    }
    // Richardson table, rows indexed by refinement level.
    let mut table = excised;
    let mut prev_best = table[table.len() - 1];
    let mut best = prev_best;
    for level in 1..RICHARDSON_LEVELS {
        let factor = 2f64.powi(2 * level as i32 - 1);
        let next: Vec<f64> = table.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        prev_best = best;
        best = *next.last().expect("nonempty");
        table = next;
    }
    (best, quad_err + (best - prev_best).abs())
}

pub fn coulson_log_energy(g: &SignedDigraph) -> Result<EnergyReport, SpectralError> {
    coulson_log_energy_with(g, &RootOptions::default())
}

pub fn coulson_log_energy_with(g: &SignedDigraph, opts: &RootOptions) -> Result<EnergyReport, SpectralError> {
    let phi = charpoly_trace(g);
    let spec = roots_with(&phi, opts)?;
    coulson_log_from_parts(&phi, &spec)
}

/// Log-form evaluation. Needs every nonzero eigenvalue off the imaginary
/// axis. Splitting at `x = 1` and substituting `x = 1/t` on the outer part
/// gives
///
/// ```text
/// (pi/2) E = int_0^1 x^-2 log|x^d psi(i/x)| dx + d + int_0^1 log|psi(i t)| dt
/// ```
///
/// where `psi` is `phi` without its zero roots and `d = deg psi`.
pub fn coulson_log_from_parts(phi: &IntPolynomial, spec: &Spectrum) -> Result<EnergyReport, SpectralError> {
    if let Some(v) = spec
        .eigenvalues()
        .iter()
        .find(|v| v.value().norm() > spec.tolerance() && v.re.abs() <= AXIS_TOLERANCE * (1.0 + v.value().norm()))
    {
        return Err(SpectralError::ImaginaryAxisEigenvalue { re: v.re, im: v.im });
    }
    let coeffs = deflated(phi);
    let residuals = |err| Residuals { root_residual_max: Some(spec.residual()), integral_error_estimate: Some(err) };
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(EnergyReport { energy: 0.0, method: EnergyMethod::CoulsonLog, residuals: residuals(0.0) });
    }

    // x^d psi(i/x) = i^d (1 + r(x)), r(x) = sum_{m=1}^{d} psi_{d-m} i^{-m} x^m.
    let inv_i_pow = |m: usize| match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let r_coeffs: Vec<Complex64> = (1..=d).map(|m| coeffs[d - m] * inv_i_pow(m)).collect();
    let inner = |x: f64| {
        let mut r = Complex64::new(0.0, 0.0);
        for c in r_coeffs.iter().rev() {
            r = r * x + c;
        }
        r *= x;
        0.5 * (2.0 * r.re + r.norm_sqr()).ln_1p() / (x * x)
    };
    let outer = |t: f64| horner(&coeffs, Complex64::new(0.0, t)).0.norm().ln();

    let a = integrate(inner, 0.0, 1.0, QUAD_ABS_TOL, 0.0, QUAD_MAX_PIECES);
    let b = integrate(outer, 0.0, 1.0, QUAD_ABS_TOL, 0.0, QUAD_MAX_PIECES);
    let energy = 2.0 / PI * (a.value + d as f64 + b.value);
    let estimate = 2.0 / PI * (a.error + b.error);
    if !energy.is_finite() || !(estimate <= INTEGRAL_TOLERANCE) {
        return Err(SpectralError::Quadrature { estimate });
    }
    Ok(EnergyReport { energy: energy.max(0.0), method: EnergyMethod::CoulsonLog, residuals: residuals(estimate) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, cycle_with_tail, direct_sum, path, skew_symmetric_star, Sign};
    use Sign::{Negative as N, Positive as P};

    const SQRT8: f64 = 2.828_427_124_746_190_3;

    #[test]
    fn algebraic_golden_values() {
        assert!((energy(&cycle(4, N).unwrap()).unwrap().energy - SQRT8).abs() < 1e-12);
        assert_eq!(energy(&path(4, &[P, N, P]).unwrap()).unwrap().energy, 0.0);
        for n in 2..9 {
            assert!(energy(&skew_symmetric_star(n).unwrap()).unwrap().energy < 1e-12);
        }
        assert!((energy(&cycle_with_tail(10, 3, N).unwrap()).unwrap().energy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coulson_matches_known_values() {
        let r = coulson_energy(&cycle(4, N).unwrap()).unwrap();
        assert!((r.energy - SQRT8).abs() < 1e-8, "{r:?}");
        let r = coulson_energy(&cycle(3, P).unwrap()).unwrap();
        assert!((r.energy - 2.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn coulson_principal_value_at_poles() {
        // phi = x^2 + 1: integrand 2/(1 - x^2), principal value 0.
        let r = coulson_energy(&cycle(2, N).unwrap()).unwrap();
        assert!(r.energy.abs() < 1e-8, "{r:?}");
        let r = coulson_energy(&skew_symmetric_star(5).unwrap()).unwrap();
        assert!(r.energy.abs() < 1e-8, "{r:?}");
        // Pole and regular part together.
        let g = direct_sum(&[cycle(2, N).unwrap(), cycle(4, N).unwrap()]).unwrap();
        let r = coulson_energy(&g).unwrap();
        assert!((r.energy - SQRT8).abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn log_form() {
        let r = coulson_log_energy(&cycle(4, N).unwrap()).unwrap();
        assert!((r.energy - SQRT8).abs() < 1e-8, "{r:?}");
        let r = coulson_log_energy(&cycle(2, P).unwrap()).unwrap();
        assert!((r.energy - 2.0).abs() < 1e-8, "{r:?}");
        assert!(matches!(
            coulson_log_energy(&skew_symmetric_star(3).unwrap()),
            Err(SpectralError::ImaginaryAxisEigenvalue { .. })
        ));
        assert_eq!(coulson_log_energy(&path(3, &[P, P]).unwrap()).unwrap().energy, 0.0);
    }

    #[test]
    fn cospectrality_is_exact() {
        assert!(!is_cospectral(&cycle(3, N).unwrap(), &cycle(3, P).unwrap()).unwrap());
        assert!(is_cospectral(&path(5, &[P, P, P, P]).unwrap(), &crate::graph::SignedDigraph::empty(5).unwrap()).unwrap());
        assert!(matches!(
            is_cospectral(&cycle(3, N).unwrap(), &cycle(4, N).unwrap()),
            Err(SpectralError::OrderMismatch(3, 4))
        ));
    }

    #[test]
    fn report_json() {
        let r = energy(&cycle(2, P).unwrap()).unwrap();
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["method"], "algebraic");
        assert!(v["residuals"]["integral_error_estimate"].is_null());
    }
}
