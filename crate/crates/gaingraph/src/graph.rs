//! Simple graphs, digraphs, gain graphs and switching functions.
//!
//! Vertices are `0..n` throughout the library; the file formats and CLI
//! translate to 1-based labels at the boundary. All values are immutable
//! after construction, so everything here is freely shareable across
//! threads.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{GainGraphError, Result};
use crate::gain::Gain;

/// A simple undirected graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Build a graph on `n` vertices from a list of undirected edges.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<SimpleGraph> {
        let mut edges = BTreeSet::new();
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GainGraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GainGraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GainGraphError::InvalidEdge(u, v, "loops are not allowed"));
            }
            let key = (u.min(v), u.max(v));
            if !edges.insert(key) {
                return Err(GainGraphError::InvalidEdge(u, v, "parallel edge"));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(SimpleGraph { n, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(min, max)` pairs, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.n == 0 || (0..self.n).all(|v| self.degree(v) == self.degree(0))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count() + 1 - self.n
    }
}

/// A directed graph without self-arcs. A digon is the pair of arcs
/// `(u, v)` and `(v, u)`; the underlying graph is always simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arc_list: &[(usize, usize)]) -> Result<Digraph> {
        let mut arcs = BTreeSet::new();
        for &(u, v) in arc_list {
            if u >= n {
                return Err(GainGraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GainGraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GainGraphError::InvalidEdge(u, v, "self-arcs are not allowed"));
            }
            if !arcs.insert((u, v)) {
                return Err(GainGraphError::InvalidEdge(u, v, "duplicate arc"));
            }
        }
        Ok(Digraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn is_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Forget orientation: one undirected edge per arc or digon pair.
    pub fn underlying_graph(&self) -> SimpleGraph {
        let edges: BTreeSet<(usize, usize)> =
            self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let list: Vec<(usize, usize)> = edges.into_iter().collect();
        SimpleGraph::new(self.n, &list).expect("arcs of a valid digraph map to simple edges")
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.underlying_graph().is_connected()
    }
}

/// A switching function assigns a unit complex number to every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingFunction {
    values: Vec<Gain>,
}

impl SwitchingFunction {
    pub fn new(values: Vec<Gain>) -> SwitchingFunction {
        SwitchingFunction { values }
    }

    /// The identity switching on `n` vertices.
    pub fn identity(n: usize) -> SwitchingFunction {
        SwitchingFunction {
            values: vec![Gain::ONE; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> Gain {
        self.values[v]
    }

    pub fn values(&self) -> &[Gain] {
        &self.values
    }
}

/// A complex unit gain graph: a simple graph together with a gain on each
/// oriented edge, satisfying `gain(u, v) = gain(v, u)^{-1}`.
///
/// Internally one gain is stored per undirected edge, in the direction of
/// the sorted pair `(min, max)`; the opposite direction is derived, so the
/// inversion invariant holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct GainGraph {
    graph: SimpleGraph,
    gains: BTreeMap<(usize, usize), Gain>,
}

impl GainGraph {
    /// Build a gain graph from gains given on arbitrary orientations of the
    /// edges. Each undirected edge must appear exactly once.
    pub fn new(graph: SimpleGraph, oriented_gains: &[(usize, usize, Gain)]) -> Result<GainGraph> {
        let mut gains = BTreeMap::new();
        for &(u, v, g) in oriented_gains {
            if !graph.has_edge(u, v) {
                return Err(GainGraphError::InvalidEdge(u, v, "gain on a non-edge"));
            }
            let key = (u.min(v), u.max(v));
            let stored = if u < v { g } else { g.inverse() };
            if gains.insert(key, stored).is_some() {
                return Err(GainGraphError::InvalidEdge(u, v, "gain assigned twice"));
            }
        }
        if gains.len() != graph.edge_count() {
            return Err(GainGraphError::GraphMismatch(
                "gain assignment does not cover every edge",
            ));
        }
        Ok(GainGraph { graph, gains })
    }

    /// All gains 1 on the given graph.
    pub fn all_ones(graph: SimpleGraph) -> GainGraph {
        let gains = graph.edges().map(|e| (e, Gain::ONE)).collect();
        GainGraph { graph, gains }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    /// Gain of the oriented edge `u -> v`.
    pub fn gain(&self, u: usize, v: usize) -> Gain {
        let g = self.gains[&(u.min(v), u.max(v))];
        if u < v {
            g
        } else {
            g.inverse()
        }
    }

    /// Shift every gain angle by pi; the underlying graph is unchanged.
    pub fn negate(&self) -> GainGraph {
        let gains = self
            .gains
            .iter()
            .map(|(&e, &g)| (e, g.negated()))
            .collect();
        GainGraph {
            graph: self.graph.clone(),
            gains,
        }
    }

    /// Apply a switching function: `gain'(u, v) = z(u)^{-1} gain(u, v) z(v)`.
    /// The result is switching equivalent to `self` by construction.
    pub fn apply_switching(&self, zeta: &SwitchingFunction) -> Result<GainGraph> {
        if zeta.len() != self.graph.vertex_count() {
            return Err(GainGraphError::SwitchingDomain {
                expected: self.graph.vertex_count(),
                found: zeta.len(),
            });
        }
        let gains = self
            .gains
            .iter()
            .map(|(&(u, v), &g)| {
                let switched = zeta.value(u).inverse().compose(g).compose(zeta.value(v));
                ((u, v), switched)
            })
            .collect();
        Ok(GainGraph {
            graph: self.graph.clone(),
            gains,
        })
    }

    /// True when every edge gain has angle in `[-pi/2, pi/2]`, i.e. the
    /// adjacency matrix has entrywise nonnegative real part.
    pub fn has_nonneg_real_part(&self) -> bool {
        self.gains.values().all(|g| g.has_nonneg_real_part())
    }

    pub fn same_underlying_graph(&self, other: &GainGraph) -> bool {
        self.graph == other.graph
    }

    /// Edge-wise gain equality within `tol`, compared on the circle.
    pub fn gains_approx_eq(&self, other: &GainGraph, tol: f64) -> bool {
        self.same_underlying_graph(other)
            && self
                .gains
                .iter()
                .all(|(&e, &g)| g.approx_eq(other.gains[&e], tol))
    }
}
