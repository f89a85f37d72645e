//! The signed digraph data model and its canonical builders.
//!
//! A [`SignedDigraph`] has vertices `0..n` and at most one arc per ordered
//! pair of distinct vertices. Every arc carries a [`Sign`]. Arcs are kept
//! sorted by `(tail, head)` so that iteration, serialization and the derived
//! adjacency matrix are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a sidigraph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({tail}, {head})")]
    DuplicateArc { tail: usize, head: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("{what} needs n >= {min}, got {n}")]
    TooSmall { what: &'static str, n: usize, min: usize },
    #[error("expected {expected} signs, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("direct sum of an empty list")]
    EmptyDirectSum,
    #[error("invalid NEPS basis: {0}")]
    InvalidBasis(String),
    #[error("basis has arity {basis} but {factors} factors were given")]
    ArityMismatch { basis: usize, factors: usize },
}

/// Sign of an arc, cycle or linear subdigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("invalid sign {v}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
}

impl Arc {
    pub fn new(tail: usize, head: usize, sign: Sign) -> Arc {
        Arc { tail, head, sign }
    }
}

/// A signed directed graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedDigraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), Sign>,
}

#[derive(Serialize, Deserialize)]
struct SignedDigraphRepr {
    n: usize,
    arcs: Vec<Arc>,
}

impl Serialize for SignedDigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SignedDigraphRepr { n: self.n, arcs: self.arcs().collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignedDigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SignedDigraphRepr::deserialize(deserializer)?;
        SignedDigraph::from_arcs(repr.n, repr.arcs).map_err(serde::de::Error::custom)
    }
}

impl SignedDigraph {
    /// Arcless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<SignedDigraph, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        Ok(SignedDigraph { n, arcs: BTreeMap::new() })
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<SignedDigraph, GraphError> {
        let mut g = SignedDigraph::empty(n)?;
        for arc in arcs {
            g.insert_arc(arc)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_arc(&mut self, arc: Arc) -> Result<(), GraphError> {
        for v in [arc.tail, arc.head] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if arc.tail == arc.head {
            return Err(GraphError::SelfLoop(arc.tail));
        }
        if self.arcs.insert((arc.tail, arc.head), arc.sign).is_some() {
            return Err(GraphError::DuplicateArc { tail: arc.tail, head: arc.head });
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().map(|(&(tail, head), &sign)| Arc { tail, head, sign })
    }

    pub fn positive_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs().filter(|a| a.sign.is_positive())
    }

    pub fn negative_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs().filter(|a| !a.sign.is_positive())
    }

    pub fn sign(&self, tail: usize, head: usize) -> Option<Sign> {
        self.arcs.get(&(tail, head)).copied()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.arcs.contains_key(&(tail, head))
    }

    /// Out-neighbours of `v` with arc signs, in increasing head order.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.arcs.range((v, 0)..(v + 1, 0)).map(|(&(_, h), &s)| (h, s))
    }

    /// Adjacency lists indexed by tail; cheaper than `out_arcs` in hot loops.
    pub fn successor_lists(&self) -> Vec<Vec<(usize, Sign)>> {
        let mut out = vec![Vec::new(); self.n];
        for a in self.arcs() {
            out[a.tail].push((a.head, a.sign));
        }
        out
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let mut entries = vec![0i8; self.n * self.n];
        for a in self.arcs() {
            entries[a.tail * self.n + a.head] = a.sign.to_i8();
        }
        AdjacencyMatrix { n: self.n, entries }
    }

    /// The underlying unsigned digraph: every arc made positive.
    pub fn unsigned(&self) -> SignedDigraph {
        self.with_all_signs(Sign::Positive)
    }

    pub fn with_all_signs(&self, sign: Sign) -> SignedDigraph {
        SignedDigraph { n: self.n, arcs: self.arcs.keys().map(|&k| (k, sign)).collect() }
    }

    /// Every arc sign flipped.
    pub fn negated(&self) -> SignedDigraph {
        SignedDigraph { n: self.n, arcs: self.arcs.iter().map(|(&k, &s)| (k, -s)).collect() }
    }

    /// True when the adjacency matrix satisfies `A = -Aᵀ`.
    pub fn is_skew_symmetric(&self) -> bool {
        self.arcs().all(|a| self.sign(a.head, a.tail) == Some(-a.sign))
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|a| self.sign(a.head, a.tail) == Some(a.sign))
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<SignedDigraph, GraphError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            index[v] = i;
        }
        let mut g = SignedDigraph::empty(vertices.len())?;
        for a in self.arcs() {
            if index[a.tail] != usize::MAX && index[a.head] != usize::MAX {
                g.insert_arc(Arc::new(index[a.tail], index[a.head], a.sign))?;
            }
        }
        Ok(g)
    }

    /// Vertex sets of the strong components, each sorted, ordered by their
    /// smallest vertex.
    pub fn strong_component_sets(&self) -> Vec<Vec<usize>> {
        let mut comps = tarjan(&self.successor_lists());
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    /// Maximal strongly connected induced subgraphs, ordered by smallest
    /// original vertex.
    pub fn strong_components(&self) -> Vec<SignedDigraph> {
        self.strong_component_sets()
            .iter()
            .map(|vs| self.induced(vs).expect("component vertices are in range"))
            .collect()
    }

    /// True when the graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        self.strong_component_sets().iter().all(|c| c.len() == 1)
    }
}

/// Iterative Tarjan; components come out in reverse topological order.
fn tarjan(succ: &[Vec<(usize, Sign)>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == usize::MAX {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&(w, _)) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}

/// Dense `{-1, 0, 1}` adjacency matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`; with a negative sign only the
/// closing arc is negative.
pub fn cycle(n: usize, sign: Sign) -> Result<SignedDigraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall { what: "cycle", n, min: 2 });
    }
    let arcs = (0..n).map(|i| {
        let s = if i == n - 1 { sign } else { Sign::Positive };
        Arc::new(i, (i + 1) % n, s)
    });
    SignedDigraph::from_arcs(n, arcs)
}

/// Directed path `0 -> 1 -> ... -> n-1` with one sign per arc.
pub fn path(n: usize, signs: &[Sign]) -> Result<SignedDigraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall { what: "path", n, min: 2 });
    }
    if signs.len() != n - 1 {
        return Err(GraphError::LengthMismatch { expected: n - 1, got: signs.len() });
    }
    SignedDigraph::from_arcs(n, signs.iter().enumerate().map(|(i, &s)| Arc::new(i, i + 1, s)))
}

/// Replaces every signed edge by two opposite arcs of the edge's sign.
pub fn symmetric_double(n: usize, edges: &[(usize, usize, Sign)]) -> Result<SignedDigraph, GraphError> {
    let mut g = SignedDigraph::empty(n)?;
    for &(u, v, s) in edges {
        if u != v && u < n && v < n && g.has_arc(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        g.insert_arc(Arc::new(u, v, s))?;
        g.insert_arc(Arc::new(v, u, s))?;
    }
    Ok(g)
}

/// `copies` vertex-disjoint symmetric digons, all with the same sign.
pub fn digon_union(copies: usize, sign: Sign) -> Result<SignedDigraph, GraphError> {
    let edges: Vec<_> = (0..copies).map(|k| (2 * k, 2 * k + 1, sign)).collect();
    symmetric_double(2 * copies, &edges)
}

/// Star with center 0: each leaf `k` gets `0 -> k` positive and `k -> 0`
/// negative, so the adjacency matrix is skew-symmetric.
pub fn skew_symmetric_star(n: usize) -> Result<SignedDigraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall { what: "skew-symmetric star", n, min: 2 });
    }
    let arcs = (1..n).flat_map(|k| [Arc::new(0, k, Sign::Positive), Arc::new(k, 0, Sign::Negative)]);
    SignedDigraph::from_arcs(n, arcs)
}

/// A signed cycle on vertices `0..l` with a positive directed path
/// `0 -> l -> l+1 -> ... -> n-1` hanging off vertex 0.
pub fn cycle_with_tail(n: usize, l: usize, cycle_sign: Sign) -> Result<SignedDigraph, GraphError> {
    if l < 2 {
        return Err(GraphError::TooSmall { what: "cycle length", n: l, min: 2 });
    }
    if n <= l {
        return Err(GraphError::TooSmall { what: "cycle with tail", n, min: l + 1 });
    }
    let mut g = SignedDigraph::empty(n)?;
    for a in cycle(l, cycle_sign)?.arcs() {
        g.insert_arc(a)?;
    }
    let mut prev = 0;
    for v in l..n {
        g.insert_arc(Arc::new(prev, v, Sign::Positive))?;
        prev = v;
    }
    Ok(g)
}

/// Vertex- and arc-disjoint union; part `k` is shifted by the orders of the
/// parts before it.
pub fn direct_sum(parts: &[SignedDigraph]) -> Result<SignedDigraph, GraphError> {
    if parts.is_empty() {
        return Err(GraphError::EmptyDirectSum);
    }
    let n = parts.iter().map(SignedDigraph::order).sum();
    let mut g = SignedDigraph::empty(n)?;
    let mut offset = 0;
    for p in parts {
        for a in p.arcs() {
            g.insert_arc(Arc::new(a.tail + offset, a.head + offset, a.sign))?;
        }
        offset += p.order();
    }
    Ok(g)
}
