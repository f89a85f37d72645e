//! Upper bounds on energy in terms of order, arc count and closed 2-walks.

use serde::Serialize;

use crate::analysis::{AnalysisError, BOUND_TOLERANCE};
use crate::energy::spectrum;
use crate::graph::SignedDigraph;

/// `trace(A^2) = c_2^+ - c_2^-`: each digon contributes twice the product
/// of its two arc signs.
pub fn closed_two_walk_balance(g: &SignedDigraph) -> i64 {
    g.arcs().filter_map(|a| g.sign(a.head, a.tail).map(|b| i64::from((a.sign * b).to_i8()))).sum()
}

/// `sqrt(n (a + c_2^+ - c_2^-) / 2)`.
pub fn mcclelland_bound(g: &SignedDigraph) -> f64 {
    let a = g.arc_count() as i64;
    let t2 = closed_two_walk_balance(g);
    assert!(a + t2 >= 0, "each closed 2-walk uses two arcs");
    (0.5 * g.order() as f64 * (a + t2) as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArcBound {
    pub bound: usize,
    pub attained: bool,
}

/// `E <= a`, with equality exactly for disjoint digons whose two arcs share
/// a sign, plus isolated vertices.
pub fn arc_bound_check(g: &SignedDigraph) -> ArcBound {
    let n = g.order();
    let mut out = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for a in g.arcs() {
        out[a.tail].push(a);
        indeg[a.head] += 1;
    }
    let attained = (0..n).all(|v| match out[v].as_slice() {
        [] => indeg[v] == 0,
        [a] => indeg[v] == 1 && out[a.head].len() == 1 && out[a.head][0].head == v && out[a.head][0].sign == a.sign,
        _ => false,
    });
    ArcBound { bound: g.arc_count(), attained }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub energy: f64,
    pub mcclelland: f64,
    pub arc_bound: ArcBound,
    /// `sum (Re z)^2 + sum (Im z)^2`, at most the arc count.
    pub squared_modulus_sum: f64,
}

impl BoundsReport {
    /// Descriptions of every failed inequality or equality case.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let a = self.arc_bound.bound as f64;
        if self.energy > self.mcclelland + BOUND_TOLERANCE {
            v.push(format!("energy {} exceeds McClelland bound {}", self.energy, self.mcclelland));
        }
        if self.energy > a + BOUND_TOLERANCE {
            v.push(format!("energy {} exceeds arc count {}", self.energy, a));
        }
        let equal = (self.energy - a).abs() <= 1e-7;
        if equal != self.arc_bound.attained {
            v.push(format!(
                "arc bound equality detected as {} but energy {} vs arc count {}",
                self.arc_bound.attained, self.energy, a
            ));
        }
        if self.squared_modulus_sum > a + 1e-8 {
            v.push(format!("squared eigenvalue moduli sum {} exceeds arc count {}", self.squared_modulus_sum, a));
        }
        v
    }
}

pub fn bounds_report(g: &SignedDigraph) -> Result<BoundsReport, AnalysisError> {
    let spec = spectrum(g)?;
    Ok(BoundsReport {
        energy: spec.energy(),
        mcclelland: mcclelland_bound(g),
        arc_bound: arc_bound_check(g),
        squared_modulus_sum: spec.sum_re_squared() + spec.sum_im_squared(),
    })
}
