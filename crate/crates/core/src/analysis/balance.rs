//! Cycle balance through sign potentials.
//!
//! Inside a strong component rooted at `r`, grow a search tree from `r` and
//! set `s(head) = s(tail) * sign(arc)` along tree arcs. If every directed
//! cycle is positive, any two directed paths between the same pair of
//! vertices have equal sign (append a return path to `r` and both closed
//! walks decompose into positive cycles), so every arc of the component
//! satisfies `sign(u, v) = s(u) s(v)`. Conversely an arc violating this
//! closes a negative closed walk, and a negative closed walk always contains
//! a negative simple cycle. Arcs between components lie on no cycle.

use std::collections::VecDeque;

use serde::Serialize;

use crate::analysis::AnalysisError;
use crate::graph::{Sign, SignedDigraph};
use crate::products::{neps, NepsBasis};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceWitness {
    pub balanced: bool,
    /// Vertex signing, one root per strong component; present when balanced.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<Vec<Sign>>,
    /// Vertex sequence of a negative directed cycle; present when not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_cycle: Option<Vec<usize>>,
}

impl BalanceWitness {
    /// Re-checks the witness against `g`.
    pub fn verify(&self, g: &SignedDigraph) -> bool {
        match (&self.potential, &self.negative_cycle) {
            (Some(s), None) if self.balanced => {
                let comp = component_index(g);
                s.len() == g.order()
                    && g.arcs().all(|a| comp[a.tail] != comp[a.head] || s[a.tail] * a.sign == s[a.head])
            }
            (None, Some(c)) if !self.balanced => cycle_sign(g, c) == Some(Sign::Negative),
            _ => false,
        }
    }
}

fn component_index(g: &SignedDigraph) -> Vec<usize> {
    let mut comp = vec![0; g.order()];
    for (k, set) in g.strong_component_sets().iter().enumerate() {
        for &v in set {
            comp[v] = k;
        }
    }
    comp
}

/// Sign of the closed walk `c[0] -> c[1] -> ... -> c[0]`, or `None` if some
/// step is not an arc or a vertex repeats.
pub fn cycle_sign(g: &SignedDigraph, c: &[usize]) -> Option<Sign> {
    if c.len() < 2 {
        return None;
    }
    let mut seen = vec![false; g.order()];
    let mut sign = Sign::Positive;
    for (k, &u) in c.iter().enumerate() {
        if u >= g.order() || std::mem::replace(&mut seen[u], true) {
            return None;
        }
        sign = sign * g.sign(u, c[(k + 1) % c.len()])?;
    }
    Some(sign)
}

pub fn is_cycle_balanced(g: &SignedDigraph) -> BalanceWitness {
    let n = g.order();
    let comp = component_index(g);
    let succ = g.successor_lists();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in g.arcs() {
        pred[a.head].push(a.tail);
    }

    let mut potential = vec![Sign::Positive; n];
    // Tree parent towards the component root, in forward and reverse trees.
    let mut from_root: Vec<Option<usize>> = vec![None; n];
    let mut to_root: Vec<Option<usize>> = vec![None; n];
    let mut root_of = vec![usize::MAX; n];

    for root in 0..n {
        if root_of[root] != usize::MAX {
            continue;
        }
        root_of[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, s) in &succ[u] {
                if comp[v] == comp[u] && root_of[v] == usize::MAX {
                    root_of[v] = root;
                    potential[v] = potential[u] * s;
                    from_root[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in &pred[v] {
                if comp[u] == comp[v] && !seen[u] {
                    seen[u] = true;
                    to_root[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
    }

    for a in g.arcs() {
        if comp[a.tail] != comp[a.head] || potential[a.tail] * a.sign == potential[a.head] {
            continue;
        }
        let root = root_of[a.tail];
        let tree_path = |mut v: usize| {
            let mut p = vec![v];
            while let Some(u) = from_root[v] {
                p.push(u);
                v = u;
            }
            p.reverse();
            p
        };
        let mut back = Vec::new();
        let mut v = a.head;
        while let Some(w) = to_root[v] {
            back.push(w);
            v = w;
        }
        // Walk root ~> tail -> head ~> root, or root ~> head ~> root;
        // exactly one of the two is negative.
        let mut walk = tree_path(a.tail);
        walk.push(a.head);
        walk.extend(&back);
        if walk_sign(g, &walk) == Sign::Positive {
            walk = tree_path(a.head);
            walk.extend(&back);
        }
        debug_assert_eq!(walk.first(), Some(&root));
        let cycle = negative_cycle_in_walk(g, &walk).expect("a negative closed walk contains a negative cycle");
        return BalanceWitness { balanced: false, potential: None, negative_cycle: Some(cycle) };
    }
    BalanceWitness { balanced: true, potential: Some(potential), negative_cycle: None }
}

fn walk_sign(g: &SignedDigraph, walk: &[usize]) -> Sign {
    walk.windows(2).fold(Sign::Positive, |s, w| s * g.sign(w[0], w[1]).expect("walk follows arcs"))
}

/// Splits a closed walk (first vertex repeated last) into simple cycles and
/// returns a negative one; the cycle signs multiply to the walk sign.
fn negative_cycle_in_walk(g: &SignedDigraph, walk: &[usize]) -> Option<Vec<usize>> {
    let mut stack: Vec<usize> = Vec::new();
    for &v in walk {
        if let Some(pos) = stack.iter().position(|&u| u == v) {
            let cycle: Vec<usize> = stack.split_off(pos);
            if cycle_sign(g, &cycle) == Some(Sign::Negative) {
                return Some(cycle);
            }
        }
        stack.push(v);
    }
    None
}

/// Builds the NEPS product and returns whether it is cycle balanced.
///
/// Checks two facts on the way: balanced factors give a balanced product
/// for every basis, and for the Cartesian basis the product is balanced
/// exactly when every factor is.
pub fn neps_balance_check(factors: &[SignedDigraph], basis: &NepsBasis) -> Result<bool, AnalysisError> {
    let product = neps(factors, basis)?;
    let balanced = is_cycle_balanced(&product).balanced;
    let factors_balanced = factors.iter().all(|f| is_cycle_balanced(f).balanced);
    if factors_balanced && !balanced {
        return Err(AnalysisError::InvariantViolation("balanced factors produced an unbalanced NEPS product".into()));
    }
    if basis.is_cartesian() && balanced != factors_balanced {
        return Err(AnalysisError::InvariantViolation(
            "Cartesian product balance differs from factor balance".into(),
        ));
    }
    Ok(balanced)
}
