//! Eigenvalues of a NEPS product from the eigenvalues of its factors: for
//! every choice `(z_1, ..., z_m)` of one eigenvalue per factor, the product
//! has the eigenvalue `sum_beta prod_i z_i^beta_i`.

use num_complex::Complex64;

use crate::products::NepsBasis;

/// Composed multiset, enumerated with the last factor varying fastest.
/// `factor_spectra[i]` lists the eigenvalues of factor `i` with repetition.
pub fn composed_neps_spectrum(factor_spectra: &[Vec<Complex64>], basis: &NepsBasis) -> Vec<Complex64> {
    assert_eq!(factor_spectra.len(), basis.arity(), "one spectrum per factor");
    let total: usize = factor_spectra.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; factor_spectra.len()];
    for _ in 0..total {
        let value = basis
            .tuples()
            .iter()
            .map(|beta| {
                beta.iter()
                    .zip(&idx)
                    .zip(factor_spectra)
                    .filter(|((b, _), _)| **b)
                    .map(|((_, &j), spec)| spec[j])
                    .product::<Complex64>()
            })
            .sum();
        out.push(value);
        for i in (0..idx.len()).rev() {
            idx[i] += 1;
            if idx[i] < factor_spectra[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    out
}
