//! NEPS (non-complete extended p-sum) products and the Cartesian and
//! Kronecker special cases.
//!
//! Product vertices are index tuples `(u_1, ..., u_m)` laid out row-major:
//! the last factor varies fastest.

use serde::{Deserialize, Serialize};

use crate::graph::{Arc, GraphError, Sign, SignedDigraph};

/// A set of distinct nonzero binary tuples covering every coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NepsBasis {
    arity: usize,
    tuples: Vec<Vec<bool>>,
}

impl NepsBasis {
    pub fn new(arity: usize, tuples: Vec<Vec<bool>>) -> Result<NepsBasis, GraphError> {
        let invalid = |msg: String| Err(GraphError::InvalidBasis(msg));
        if arity == 0 {
            return invalid("arity must be positive".into());
        }
        if tuples.is_empty() {
            return invalid("basis is empty".into());
        }
        for (k, t) in tuples.iter().enumerate() {
            if t.len() != arity {
                return invalid(format!("tuple {k} has length {}, expected {arity}", t.len()));
            }
            if t.iter().all(|&b| !b) {
                return invalid("all-zero tuple".into());
            }
            if tuples[..k].contains(t) {
                return invalid(format!("tuple {k} repeats an earlier tuple"));
            }
        }
        if let Some(i) = (0..arity).find(|&i| tuples.iter().all(|t| !t[i])) {
            return invalid(format!("coordinate {i} is not covered"));
        }
        Ok(NepsBasis { arity, tuples })
    }

    /// Parses tuples written as bit strings, e.g. `["10", "01"]`.
    pub fn from_bit_strings<S: AsRef<str>>(tuples: &[S]) -> Result<NepsBasis, GraphError> {
        let parsed: Result<Vec<Vec<bool>>, GraphError> = tuples
            .iter()
            .map(|s| {
                s.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(GraphError::InvalidBasis(format!("bad bit string {:?}", s.as_ref()))),
                    })
                    .collect()
            })
            .collect();
        let parsed = parsed?;
        let arity = parsed.first().map_or(0, Vec::len);
        NepsBasis::new(arity, parsed)
    }

    /// `{(1, 1, ..., 1)}`.
    pub fn kronecker(arity: usize) -> NepsBasis {
        NepsBasis::new(arity, vec![vec![true; arity]]).expect("nonzero arity")
    }

    /// The unit vectors `{e_1, ..., e_m}`.
    pub fn cartesian(arity: usize) -> NepsBasis {
        let tuples = (0..arity).map(|i| (0..arity).map(|j| i == j).collect()).collect();
        NepsBasis::new(arity, tuples).expect("nonzero arity")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<bool>] {
        &self.tuples
    }

    pub fn is_cartesian(&self) -> bool {
        self.tuples.len() == self.arity && self.tuples.iter().all(|t| t.iter().filter(|&&b| b).count() == 1)
    }
}

fn check_arity(factors: &[SignedDigraph], basis: &NepsBasis) -> Result<(), GraphError> {
    if factors.len() != basis.arity() {
        return Err(GraphError::ArityMismatch { basis: basis.arity(), factors: factors.len() });
    }
    Ok(())
}

/// Arcs contributed by a single basis tuple. The tuples of a basis give
/// pairwise disjoint arc sets, so `neps` is their union.
pub fn neps_tuple_arcs(factors: &[SignedDigraph], tuple: &[bool]) -> Vec<Arc> {
    let orders: Vec<usize> = factors.iter().map(SignedDigraph::order).collect();
    let total: usize = orders.iter().product();
    let succ: Vec<_> = factors.iter().map(SignedDigraph::successor_lists).collect();
    let mut arcs = Vec::new();
    let mut coords = vec![0usize; factors.len()];

    for u in 0..total {
        decode(u, &orders, &mut coords);
        // Enumerate the head tuples: fixed coordinates where the bit is 0,
        // an out-neighbour where it is 1.
        let mut partial: Vec<(usize, Sign)> = vec![(0, Sign::Positive)];
        for (i, &bit) in tuple.iter().enumerate() {
            let mut next = Vec::new();
            for &(idx, sign) in &partial {
                if bit {
                    for &(w, s) in &succ[i][coords[i]] {
                        next.push((idx * orders[i] + w, sign * s));
                    }
                } else {
                    next.push((idx * orders[i] + coords[i], sign));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        arcs.extend(partial.into_iter().map(|(v, s)| Arc::new(u, v, s)));
    }
    arcs
}

fn decode(mut index: usize, orders: &[usize], coords: &mut [usize]) {
    for i in (0..orders.len()).rev() {
        coords[i] = index % orders[i];
        index /= orders[i];
    }
}

pub fn neps(factors: &[SignedDigraph], basis: &NepsBasis) -> Result<SignedDigraph, GraphError> {
    check_arity(factors, basis)?;
    let n = factors.iter().map(SignedDigraph::order).product();
    let mut g = SignedDigraph::empty(n)?;
    for t in basis.tuples() {
        for a in neps_tuple_arcs(factors, t) {
            g.insert_arc(a)?;
        }
    }
    Ok(g)
}

pub fn cartesian_product(a: &SignedDigraph, b: &SignedDigraph) -> SignedDigraph {
    neps(&[a.clone(), b.clone()], &NepsBasis::cartesian(2)).expect("cartesian basis is valid")
}

pub fn kronecker_product(a: &SignedDigraph, b: &SignedDigraph) -> SignedDigraph {
    neps(&[a.clone(), b.clone()], &NepsBasis::kronecker(2)).expect("kronecker basis is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, digon_union, path, SignedDigraph};
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn basis_validation() {
        assert!(NepsBasis::new(2, vec![vec![false, false]]).is_err());
        assert!(NepsBasis::new(2, vec![vec![true, false]]).is_err());
        assert!(NepsBasis::new(2, vec![vec![true]]).is_err());
        assert!(NepsBasis::new(2, vec![vec![true, true], vec![true, true]]).is_err());
        assert!(NepsBasis::from_bit_strings(&["10", "01"]).unwrap().is_cartesian());
        assert!(!NepsBasis::kronecker(2).is_cartesian());
        assert!(NepsBasis::from_bit_strings(&["1x"]).is_err());
    }

    #[test]
    fn arity_mismatch() {
        let c = cycle(3, P).unwrap();
        assert!(matches!(
            neps(std::slice::from_ref(&c), &NepsBasis::kronecker(2)),
            Err(GraphError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn identity_factor() {
        let s = cycle(4, N).unwrap();
        let k1 = SignedDigraph::empty(1).unwrap();
        // {(1,0)} leaves the second coordinate uncovered. K1 has no arcs, so
        // adding (0,1) contributes nothing and the product is a copy of S.
        assert!(matches!(NepsBasis::new(2, vec![vec![true, false]]), Err(GraphError::InvalidBasis(_))));
        let prod = neps(&[s.clone(), k1], &NepsBasis::cartesian(2)).unwrap();
        assert_eq!(prod, s);
    }

    #[test]
    fn cartesian_arc_count() {
        let a = cycle(3, N).unwrap();
        let b = path(4, &[P, N, P]).unwrap();
        let p = cartesian_product(&a, &b);
        assert_eq!(p.order(), 12);
        assert_eq!(p.arc_count(), a.arc_count() * b.order() + b.arc_count() * a.order());
    }

    #[test]
    fn kronecker_of_negative_cycle_and_negative_digon_is_positive() {
        let neg_c3 = cycle(3, P).unwrap().negated();
        let neg_k2 = digon_union(1, N).unwrap();
        let p = kronecker_product(&neg_c3, &neg_k2);
        assert_eq!(p.order(), 6);
        assert_eq!(p.arc_count(), 6);
        assert!(p.arcs().all(|a| a.sign == P));
    }

    #[test]
    fn row_major_layout() {
        let a = cycle(2, P).unwrap();
        let b = cycle(3, N).unwrap();
        let p = cartesian_product(&a, &b);
        // (0, 2) -> (0, 0) is the negative closing arc of the 3-cycle.
        assert_eq!(p.sign(2, 0), Some(N));
        // (0, 1) -> (1, 1) comes from the first factor.
        assert_eq!(p.sign(1, 4), Some(P));
    }

    #[test]
    fn tuple_arc_sets_are_disjoint() {
        let f = [cycle(3, N).unwrap(), digon_union(1, P).unwrap(), path(2, &[N]).unwrap()];
        let tuples: Vec<Vec<bool>> =
            (1u8..8).map(|m| (0..3).map(|i| m >> (2 - i) & 1 == 1).collect()).collect();
        let sets: Vec<std::collections::BTreeSet<(usize, usize)>> = tuples
            .iter()
            .map(|t| neps_tuple_arcs(&f, t).into_iter().map(|a| (a.tail, a.head)).collect())
            .collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                assert!(sets[i].is_disjoint(&sets[j]));
            }
        }
    }
}
