//! Signed walk counts. Entry `(i, j)` of `A^l` is the number of positive
//! minus the number of negative walks of length `l` from `i` to `j`.

use num_bigint::BigInt;

use crate::analysis::AnalysisError;
use crate::graph::SignedDigraph;
use crate::matrix::IntMatrix;

pub fn signed_walk_matrix(g: &SignedDigraph, l: u32) -> Result<IntMatrix, AnalysisError> {
    if l == 0 {
        return Err(AnalysisError::Precondition("walk length must be at least 1".into()));
    }
    Ok(IntMatrix::adjacency(g).pow(l))
}

/// `c_m^+ - c_m^-` over closed walks of length `m`, i.e. `trace(A^m)`.
pub fn closed_walk_balance(g: &SignedDigraph, m: u32) -> Result<BigInt, AnalysisError> {
    Ok(signed_walk_matrix(g, m)?.trace())
}

/// Counts positive and negative walks of length `l` by explicit depth-first
/// enumeration, independently of matrix arithmetic. Returns row-major
/// `n x n` tables `(positive, negative)`. Exponential in `l`.
pub fn enumerate_signed_walks(g: &SignedDigraph, l: u32) -> (Vec<u64>, Vec<u64>) {
    let n = g.order();
    let succ = g.successor_lists();
    let mut pos = vec![0u64; n * n];
    let mut neg = vec![0u64; n * n];

    fn extend(
        succ: &[Vec<(usize, crate::graph::Sign)>],
        start: usize,
        at: usize,
        remaining: u32,
        positive: bool,
        pos: &mut [u64],
        neg: &mut [u64],
    ) {
        let n = succ.len();
        if remaining == 0 {
            if positive {
                pos[start * n + at] += 1;
            } else {
                neg[start * n + at] += 1;
            }
            return;
        }
        for &(w, s) in &succ[at] {
            extend(succ, start, w, remaining - 1, positive == s.is_positive(), pos, neg);
        }
    }

    for start in 0..n {
        extend(&succ, start, start, l, true, &mut pos, &mut neg);
    }
    (pos, neg)
}
