//! Exact characteristic polynomials.
//!
//! Two independent routes compute `det(xI - A)`:
//!
//! * [`charpoly_enumerate`] sums over linear subdigraphs (vertex-disjoint
//!   unions of directed cycles): `c_i = sum_L (-1)^p(L) prod_Z s(Z)` over
//!   linear subdigraphs `L` of order `i` with `p(L)` cycles of signs `s(Z)`.
//!   Exponential, capped by vertex count.
//! * [`charpoly_trace`] runs the Faddeev–LeVerrier trace recurrence in exact
//!   big-integer arithmetic. Polynomial time; the divisions are exact for
//!   integer matrices.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Sign, SignedDigraph};
use crate::polynomial::IntPolynomial;

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Upper bound on DFS steps spent scanning for simple cycles.
pub const DEFAULT_CYCLE_SCAN_LIMIT: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharpolyError {
    #[error("graph has {n} vertices, above the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cycle length must be at least 2, got {0}")]
    InvalidCycleLength(usize),
    #[error("found a cycle of length {} but every cycle must have length {expected}: {cycle:?}", cycle.len())]
    CycleLengthMismatch { expected: usize, cycle: Vec<usize> },
    #[error("cycle scan exceeded {0} steps")]
    CycleScanLimit(u64),
}

/// Signed counts of linear subdigraphs for one order, split by parity of the
/// number of cycles and by overall sign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TypeCounts {
    /// odd number of cycles, negative
    pub a: u64,
    /// even number of cycles, positive
    pub b: u64,
    /// odd number of cycles, positive
    pub c: u64,
    /// even number of cycles, negative
    pub d: u64,
}

impl TypeCounts {
    /// Contribution to `c_i`: `(a + b) - (c + d)`.
    pub fn coefficient(&self) -> i128 {
        (self.a as i128 + self.b as i128) - (self.c as i128 + self.d as i128)
    }

    /// Positive minus negative linear subdigraphs.
    pub fn signed_count(&self) -> i128 {
        (self.b as i128 + self.c as i128) - (self.a as i128 + self.d as i128)
    }

    pub fn is_balanced(&self) -> bool {
        self.coefficient() == 0
    }
}

/// Type counts for every order `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearTypeCensus {
    n: usize,
    orders: Vec<TypeCounts>,
}

impl LinearTypeCensus {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Counts for linear subdigraphs on exactly `i` vertices, `1 <= i <= n`.
    pub fn counts(&self, i: usize) -> TypeCounts {
        self.orders[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, TypeCounts)> + '_ {
        self.orders.iter().enumerate().map(|(k, &t)| (k + 1, t))
    }

    pub fn is_empty(&self) -> bool {
        self.orders.iter().all(|t| *t == TypeCounts::default())
    }

    pub fn charpoly(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.n + 1];
        coeffs[self.n] = BigInt::from(1);
        for (i, t) in self.iter() {
            coeffs[self.n - i] = BigInt::from(t.coefficient());
        }
        IntPolynomial::new(coeffs)
    }
}

/// Calls `visit(order, cycles, sign)` once per linear subdigraph. Each one is
/// built by scanning vertices in increasing order and either leaving a vertex
/// uncovered or closing a cycle whose smallest vertex it is.
pub fn for_each_linear_subdigraph<F>(g: &SignedDigraph, cap: usize, mut visit: F) -> Result<(), CharpolyError>
where
    F: FnMut(usize, usize, Sign),
{
    let n = g.order();
    if n > cap || n > 63 {
        return Err(CharpolyError::CapExceeded { n, cap: cap.min(63) });
    }
    let succ = g.successor_lists();
    let mut search = LinearSearch { succ: &succ, n, visit: &mut visit };
    search.next_vertex(0, 0, 0, 0, Sign::Positive);
    Ok(())
}

struct LinearSearch<'a, F> {
    succ: &'a [Vec<(usize, Sign)>],
    n: usize,
    visit: &'a mut F,
}

impl<F: FnMut(usize, usize, Sign)> LinearSearch<'_, F> {
    fn next_vertex(&mut self, v: usize, used: u64, order: usize, cycles: usize, sign: Sign) {
        let mut v = v;
        while v < self.n && used >> v & 1 == 1 {
            v += 1;
        }
        if v >= self.n {
            if cycles > 0 {
                (self.visit)(order, cycles, sign);
            }
            return;
        }
        self.next_vertex(v + 1, used, order, cycles, sign);
        self.extend(v, v, used | 1 << v, 1, order, cycles, sign, Sign::Positive);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        root: usize,
        at: usize,
        used: u64,
        len: usize,
        order: usize,
        cycles: usize,
        sign: Sign,
        path_sign: Sign,
    ) {
        for &(w, s) in &self.succ[at] {
            if w == root {
                self.next_vertex(root + 1, used, order + len, cycles + 1, sign * path_sign * s);
            } else if w > root && used >> w & 1 == 0 {
                self.extend(root, w, used | 1 << w, len + 1, order, cycles, sign, path_sign * s);
            }
        }
    }
}

pub fn linear_type_census(g: &SignedDigraph, cap: usize) -> Result<LinearTypeCensus, CharpolyError> {
    let n = g.order();
    let mut orders = vec![TypeCounts::default(); n];
    for_each_linear_subdigraph(g, cap, |order, cycles, sign| {
        let t = &mut orders[order - 1];
        match (cycles % 2 == 1, sign) {
            (true, Sign::Negative) => t.a += 1,
            (false, Sign::Positive) => t.b += 1,
            (true, Sign::Positive) => t.c += 1,
            (false, Sign::Negative) => t.d += 1,
        }
    })?;
    Ok(LinearTypeCensus { n, orders })
}

pub fn charpoly_enumerate(g: &SignedDigraph, cap: usize) -> Result<IntPolynomial, CharpolyError> {
    Ok(linear_type_census(g, cap)?.charpoly())
}

/// Faddeev–LeVerrier: `M_0 = 0`, `M_k = A M_(k-1) + c_(n-k+1) I`,
/// `c_(n-k) = -tr(A M_k) / k`, where `c_j` is the coefficient of `x^j`.
/// `A M` is formed row by row from the arc list.
pub fn charpoly_trace(g: &SignedDigraph) -> IntPolynomial {
    let n = g.order();
    let succ = g.successor_lists();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![BigInt::zero(); n * n];
    let mut next = vec![BigInt::zero(); n * n];

    for k in 1..=n {
        for i in 0..n {
            let row = &mut next[i * n..(i + 1) * n];
            row.iter_mut().for_each(|x| x.set_zero());
            for &(t, s) in &succ[i] {
                let src = &m[t * n..(t + 1) * n];
                match s {
                    Sign::Positive => row.iter_mut().zip(src).for_each(|(x, y)| *x += y),
                    Sign::Negative => row.iter_mut().zip(src).for_each(|(x, y)| *x -= y),
                }
            }
            next[i * n + i] += &coeffs[n - k + 1];
        }
        std::mem::swap(&mut m, &mut next);

        let mut trace = BigInt::zero();
        for (i, out) in succ.iter().enumerate() {
            for &(t, s) in out {
                match s {
                    Sign::Positive => trace += &m[t * n + i],
                    Sign::Negative => trace -= &m[t * n + i],
                }
            }
        }
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "trace recurrence must divide exactly");
        coeffs[n - k] = -q;
    }
    IntPolynomial::new(coeffs)
}

/// Visits every simple directed cycle once, as a vertex sequence starting at
/// its smallest vertex. Stops early when `visit` breaks.
pub fn for_each_simple_cycle<F>(g: &SignedDigraph, step_limit: u64, mut visit: F) -> Result<(), CharpolyError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let succ = g.successor_lists();
    let n = g.order();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    let mut steps = 0u64;

    fn dfs<F: FnMut(&[usize]) -> ControlFlow<()>>(
        succ: &[Vec<(usize, Sign)>],
        root: usize,
        at: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        steps: &mut u64,
        limit: u64,
        visit: &mut F,
    ) -> Result<ControlFlow<()>, CharpolyError> {
        for &(w, _) in &succ[at] {
            *steps += 1;
            if *steps > limit {
                return Err(CharpolyError::CycleScanLimit(limit));
            }
            if w == root {
                if visit(path).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                let flow = dfs(succ, root, w, on_path, path, steps, limit, visit)?;
                path.pop();
                on_path[w] = false;
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    for root in 0..n {
        path.clear();
        path.push(root);
        on_path[root] = true;
        let flow = dfs(&succ, root, root, &mut on_path, &mut path, &mut steps, step_limit, &mut visit)?;
        on_path[root] = false;
        if flow.is_break() {
            break;
        }
    }
    Ok(())
}

/// Errors unless every directed cycle of `g` has length exactly `h`.
pub fn check_uniform_cycle_length(g: &SignedDigraph, h: usize) -> Result<(), CharpolyError> {
    if h < 2 {
        return Err(CharpolyError::InvalidCycleLength(h));
    }
    let mut bad = None;
    for_each_simple_cycle(g, DEFAULT_CYCLE_SCAN_LIMIT, |c| {
        if c.len() != h {
            bad = Some(c.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match bad {
        Some(cycle) => Err(CharpolyError::CycleLengthMismatch { expected: h, cycle }),
        None => Ok(()),
    }
}

/// `c*(S, kh)` for `k = 1..=n/h`: positive minus negative linear subdigraphs
/// of order `kh`, for a graph whose cycles all have length `h`.
pub fn uniform_signed_counts(g: &SignedDigraph, h: usize, cap: usize) -> Result<Vec<BigInt>, CharpolyError> {
    check_uniform_cycle_length(g, h)?;
    let census = linear_type_census(g, cap)?;
    Ok((1..=g.order() / h).map(|k| BigInt::from(census.counts(k * h).signed_count())).collect())
}

/// `x^n + sum_k (-1)^k c*(S, kh) x^(n - kh)` for a graph whose cycles all
/// have length `h`.
pub fn charpoly_uniform_cycle_length(g: &SignedDigraph, h: usize, cap: usize) -> Result<IntPolynomial, CharpolyError> {
    let n = g.order();
    let counts = uniform_signed_counts(g, h, cap)?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    for (idx, c) in counts.into_iter().enumerate() {
        let k = idx + 1;
        coeffs[n - k * h] = if k % 2 == 0 { c } else { -c };
    }
    Ok(IntPolynomial::new(coeffs))
}
