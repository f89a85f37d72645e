//! Complex roots of integer polynomials.
//!
//! Zero roots are split off exactly, the rest is broken into square-free
//! factors with exact multiplicities, and each factor of degree three or
//! more is solved with the Aberth–Ehrlich simultaneous iteration. Linear and
//! quadratic factors are solved in closed form.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::polynomial::IntPolynomial;

/// Roots closer than this are reported as one eigenvalue.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_ITERATIONS: usize = 500;
/// Largest accepted backward error `|p(z)| / sum |c_k| |z|^k`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { tolerance: DEFAULT_CLUSTER_TOLERANCE, max_iterations: DEFAULT_MAX_ITERATIONS }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree 0")]
    Constant,
    #[error("root iteration for a degree-{degree} factor did not converge in {iterations} iterations")]
    NoConvergence { degree: usize, iterations: usize },
    #[error("root residual {residual:e} exceeds {RESIDUAL_TOLERANCE:e}")]
    Residual { residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl Eigenvalue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Multiset of complex eigenvalues. Values within the clustering tolerance
/// of each other are merged with summed multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Eigenvalue>,
    tolerance: f64,
    residual: f64,
}

/// Serializes as an array of `{re, im, multiplicity}`.
impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

impl Spectrum {
    /// Clusters raw values (each with multiplicity 1).
    pub fn from_values(values: impl IntoIterator<Item = Complex64>, tolerance: f64) -> Spectrum {
        Spectrum::from_weighted(values.into_iter().map(|z| (z, 1)), tolerance, 0.0)
    }

    fn from_weighted(values: impl IntoIterator<Item = (Complex64, usize)>, tolerance: f64, residual: f64) -> Spectrum {
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for (z, m) in values {
            match clusters.iter_mut().find(|(c, _)| (*c - z).norm() <= tolerance) {
                Some((c, k)) => {
                    *c = (*c * *k as f64 + z * m as f64) / (*k + m) as f64;
                    *k += m;
                }
                None => clusters.push((z, m)),
            }
        }
        let mut values: Vec<Eigenvalue> =
            clusters.into_iter().map(|(z, m)| Eigenvalue { re: z.re, im: z.im, multiplicity: m }).collect();
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Spectrum { values, tolerance, residual }
    }

    pub fn eigenvalues(&self) -> &[Eigenvalue] {
        &self.values
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Largest backward error over the computed roots.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.values.iter().map(|v| v.multiplicity).sum()
    }

    /// Every eigenvalue repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.values.iter().flat_map(|v| std::iter::repeat_n(v.value(), v.multiplicity)).collect()
    }

    /// `sum |Re z_j|` with multiplicity.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.re.abs() * v.multiplicity as f64).sum()
    }

    /// `sum z_j^m` with multiplicity.
    pub fn power_sum(&self, m: u32) -> Complex64 {
        self.values.iter().map(|v| v.value().powu(m) * v.multiplicity as f64).sum()
    }

    pub fn sum_re_squared(&self) -> f64 {
        self.values.iter().map(|v| v.re * v.re * v.multiplicity as f64).sum()
    }

    pub fn sum_im_squared(&self) -> f64 {
        self.values.iter().map(|v| v.im * v.im * v.multiplicity as f64).sum()
    }

    pub fn max_abs_re(&self) -> f64 {
        self.values.iter().map(|v| v.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Total multiplicity of eigenvalues within `tol` of `z`.
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> usize {
        self.values.iter().filter(|v| (v.value() - z).norm() <= tol).map(|v| v.multiplicity).sum()
    }

    pub fn negated(&self) -> Spectrum {
        Spectrum::from_weighted(
            self.values.iter().map(|v| (-v.value(), v.multiplicity)),
            self.tolerance,
            self.residual,
        )
    }

    /// Closed under conjugation, pairing values within `tol`.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        self.values.iter().all(|v| self.multiplicity_near(v.value().conj(), tol) == self.multiplicity_near(v.value(), tol))
    }

    /// Multiset equality up to `tol`, by greedy nearest matching.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        multiset_close(&self.expanded(), &other.expanded(), tol)
    }
}

/// Greedy nearest-neighbour matching of two complex multisets.
pub fn multiset_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

pub fn roots(p: &IntPolynomial) -> Result<Spectrum, RootError> {
    roots_with(p, &RootOptions::default())
}

pub fn roots_with(p: &IntPolynomial, opts: &RootOptions) -> Result<Spectrum, RootError> {
    if !p.is_monic() {
        return Err(RootError::NotMonic);
    }
    if p.degree() == 0 {
        return Err(RootError::Constant);
    }
    let zeros = p.trailing_zeros();
    let mut found: Vec<(Complex64, usize)> = Vec::new();
    if zeros > 0 {
        found.push((Complex64::zero(), zeros));
    }
    let mut residual = 0.0f64;
    let rest = p.shift_down(zeros);
    for (factor, mult) in rest.squarefree_factors() {
        let (zs, r) = solve_squarefree(&factor, opts)?;
        residual = residual.max(r);
        found.extend(zs.into_iter().map(|z| (z, mult)));
    }
    Ok(Spectrum::from_weighted(found, opts.tolerance, residual))
}

fn solve_squarefree(f: &IntPolynomial, opts: &RootOptions) -> Result<(Vec<Complex64>, f64), RootError> {
    let c = f.coeffs();
    match f.degree() {
        1 => Ok((vec![Complex64::new(-c[0].to_f64().unwrap_or(f64::NAN), 0.0)], 0.0)),
        2 => Ok((solve_quadratic(&c[1], &c[0]), 0.0)),
        _ => {
            let coeffs = f.to_f64();
            let mut zs = aberth(&coeffs, opts.max_iterations)?;
            tidy_conjugates(&coeffs, &mut zs);
            let residual = zs.iter().map(|&z| backward_error(&coeffs, z)).fold(0.0, f64::max);
            if residual > RESIDUAL_TOLERANCE {
                return Err(RootError::Residual { residual });
            }
            Ok((zs, residual))
        }
    }
}

/// Roots of `x^2 + b x + c` with the discriminant sign decided exactly.
fn solve_quadratic(b: &BigInt, c: &BigInt) -> Vec<Complex64> {
    let disc = b * b - BigInt::from(4) * c;
    let bf = b.to_f64().unwrap_or(f64::NAN);
    let df = disc.abs().to_f64().unwrap_or(f64::NAN);
    if disc.is_negative() {
        let im = df.sqrt() / 2.0;
        vec![Complex64::new(-bf / 2.0, im), Complex64::new(-bf / 2.0, -im)]
    } else {
        // q = -(b + sign(b) sqrt(disc)) / 2 avoids cancellation.
        let s = df.sqrt();
        let q = -0.5 * (bf + if bf >= 0.0 { s } else { -s });
        if q == 0.0 {
            return vec![Complex64::zero(), Complex64::zero()];
        }
        let cf = c.to_f64().unwrap_or(f64::NAN);
        vec![Complex64::new(q, 0.0), Complex64::new(cf / q, 0.0)]
    }
}

/// `p(z)` and `p'(z)` by Horner, coefficients constant term first.
fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Newton correction `p(z) / p'(z)`. Outside the unit disk the reversed
/// polynomial is evaluated at `1/z` so large roots do not overflow.
fn newton_ratio(coeffs: &[f64], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let (p, dp) = horner(coeffs, z);
        return p / dp;
    }
    let d = (coeffs.len() - 1) as f64;
    let w = z.inv();
    let rev: Vec<f64> = coeffs.iter().rev().copied().collect();
    let (r, dr) = horner(&rev, w);
    (w * (d - w * dr / r)).inv()
}

fn backward_error(coeffs: &[f64], z: Complex64) -> f64 {
    let (p, scale) = if z.norm() <= 1.0 {
        let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.abs());
        (horner(coeffs, z).0, scale)
    } else {
        let w = z.inv();
        let rev: Vec<f64> = coeffs.iter().rev().copied().collect();
        let scale: f64 = rev.iter().rev().fold(0.0, |acc, c| acc * w.norm() + c.abs());
        (horner(&rev, w).0, scale)
    };
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Fujiwara's bound on the root moduli of a monic polynomial.
fn root_radius(coeffs: &[f64]) -> f64 {
    let d = coeffs.len() - 1;
    let mut r = 0.0f64;
    for k in 1..=d {
        let mut c = coeffs[d - k].abs();
        if k == d {
            c /= 2.0;
        }
        r = r.max(c.powf(1.0 / k as f64));
    }
    2.0 * r.max(f64::MIN_POSITIVE)
}

fn aberth(coeffs: &[f64], max_iterations: usize) -> Result<Vec<Complex64>, RootError> {
    let d = coeffs.len() - 1;
    let radius = root_radius(coeffs);
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut z: Vec<Complex64> = (0..d).map(|k| Complex64::from_polar(radius, 0.4 + k as f64 * golden)).collect();
    let mut done = vec![false; d];
    let eps = f64::EPSILON;

    for _ in 0..max_iterations {
        let mut all_done = true;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let ratio = newton_ratio(coeffs, z[k]);
            if !ratio.is_finite() {
                all_done = false;
                continue;
            }
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            if step.norm() <= 4.0 * eps * z[k].norm().max(eps) || backward_error(coeffs, z[k]) <= 2.0 * eps {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    // Accept stagnation at working precision; the residual check decides.
    if z.iter().all(|&zk| backward_error(coeffs, zk) <= 64.0 * d as f64 * eps) {
        return Ok(z);
    }
    Err(RootError::NoConvergence { degree: d, iterations: max_iterations })
}

/// Snaps numerically real roots onto the real axis and makes complex roots
/// come in exact conjugate pairs, as they must for real coefficients.
fn tidy_conjugates(coeffs: &[f64], zs: &mut [Complex64]) {
    for z in zs.iter_mut() {
        if z.im.abs() <= 1e-10 * (1.0 + z.norm()) {
            let mut x = Complex64::new(z.re, 0.0);
            for _ in 0..3 {
                let r = newton_ratio(coeffs, x);
                if !r.is_finite() {
                    break;
                }
                x.re -= r.re;
            }
            *z = x;
        }
    }
    let upper: Vec<usize> = (0..zs.len()).filter(|&i| zs[i].im > 0.0).collect();
    let mut lower: Vec<usize> = (0..zs.len()).filter(|&i| zs[i].im < 0.0).collect();
    if upper.len() != lower.len() {
        return;
    }
    for i in upper {
        let target = zs[i].conj();
        let (pos, _) = lower
            .iter()
            .enumerate()
            .map(|(p, &j)| (p, (zs[j] - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("equal counts");
        let j = lower.swap_remove(pos);
        let re = 0.5 * (zs[i].re + zs[j].re);
        let im = 0.5 * (zs[i].im - zs[j].im);
        zs[i] = Complex64::new(re, im);
        zs[j] = Complex64::new(re, -im);
    }
}
