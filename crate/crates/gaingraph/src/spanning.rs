//! Normal spanning trees, suitable orientations and fundamental cycles.
//!
//! A rooted spanning tree is *normal* when every graph edge joins two
//! vertices that are comparable in the ancestor order. Depth-first search
//! trees of connected graphs have this property, and visiting neighbors in
//! ascending index order makes the tree (and everything derived from it)
//! deterministic.
//!
//! The *suitable orientation* directs tree edges from ancestor to
//! descendant and every non-tree edge from descendant back to ancestor, so
//! each fundamental cycle becomes a directed cycle: the descending tree
//! path from the cycle's top vertex closed by the single non-tree arc.
//! Under this orientation the gain of a fundamental cycle is the plain sum
//! of its member edge angles, which is what makes class signatures cheap.

use std::collections::BTreeMap;

use crate::error::{GainGraphError, Result};
use crate::gain::{canonical_angle, Gain};
use crate::graph::{GainGraph, SimpleGraph};

/// A rooted spanning tree whose tree order makes adjacent vertices
/// comparable. Verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSpanningTree {
    root: usize,
    parent: Vec<usize>,
    depth: Vec<usize>,
    /// Tree edges as (parent, child) in DFS discovery order.
    discovery: Vec<(usize, usize)>,
}

impl NormalSpanningTree {
    /// Depth-first spanning tree rooted at `root`, visiting neighbors in
    /// ascending index order. Fails when the graph is disconnected. The
    /// normality invariant is checked exhaustively over all edges.
    pub fn build(graph: &SimpleGraph, root: usize) -> Result<NormalSpanningTree> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(GainGraphError::VertexOutOfRange(root, n));
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut discovery = Vec::with_capacity(n.saturating_sub(1));
        parent[root] = root;
        // Iterative DFS; each frame tracks how far through the (sorted)
        // neighbor list we are, so discovery order is ascending.
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            let nbrs = graph.neighbors(v);
            if *idx >= nbrs.len() {
                stack.pop();
                continue;
            }
            let w = nbrs[*idx];
            *idx += 1;
            if parent[w] == usize::MAX {
                parent[w] = v;
                depth[w] = depth[v] + 1;
                discovery.push((v, w));
                stack.push((w, 0));
            }
        }
        if parent.contains(&usize::MAX) {
            return Err(GainGraphError::Disconnected);
        }
        let tree = NormalSpanningTree {
            root,
            parent,
            depth,
            discovery,
        };
        for (u, v) in graph.edges() {
            if !tree.comparable(u, v) {
                return Err(GainGraphError::TreeInvariant(
                    "adjacent vertices are incomparable in tree order",
                ));
            }
        }
        Ok(tree)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges as (parent, child) pairs in DFS discovery order.
    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.discovery
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.parent[u] == v || self.parent[v] == u
    }

    /// True when `a` is an ancestor of `b` (including `a == b`).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut v = b;
        while self.depth[v] > self.depth[a] {
            v = self.parent[v];
        }
        v == a
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.is_ancestor(u, v) || self.is_ancestor(v, u)
    }

    /// The path from `a` up to its ancestor `b`, listed from `b` down to
    /// `a`. Panics if `b` is not an ancestor of `a`.
    fn descending_path(&self, b: usize, a: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut v = a;
        while v != b {
            v = self.parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Vertices of the unique tree path from `from` to `to`, inclusive.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut a = from;
        let mut b = to;
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        while self.depth[a] > self.depth[b] {
            up_a.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            up_b.push(b);
            b = self.parent[b];
        }
        while a != b {
            up_a.push(a);
            up_b.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        up_a.push(a);
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }
}

/// The suitable orientation of a connected graph with respect to a normal
/// spanning tree, together with the fixed edge ordering used for gain
/// vectors and incidence vectors: tree edges first in discovery order,
/// then non-tree edges in ascending `(min, max)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct SuitableOrientation {
    graph: SimpleGraph,
    tree: NormalSpanningTree,
    /// Oriented edges (tail, head) in the fixed order.
    edge_order: Vec<(usize, usize)>,
    /// Undirected edge -> index into `edge_order`.
    edge_index: BTreeMap<(usize, usize), usize>,
    tree_edge_count: usize,
}

impl SuitableOrientation {
    /// Orient `graph` with respect to `tree`: tree edges ancestor to
    /// descendant, non-tree edges descendant to ancestor. Checks that the
    /// tree spans the graph and that every fundamental cycle comes out as
    /// a directed cycle.
    pub fn build(graph: &SimpleGraph, tree: &NormalSpanningTree) -> Result<SuitableOrientation> {
        let n = graph.vertex_count();
        if tree.vertex_count() != n {
            return Err(GainGraphError::TreeInvariant(
                "tree does not span the graph",
            ));
        }
        for &(p, c) in tree.tree_edges() {
            if !graph.has_edge(p, c) {
                return Err(GainGraphError::TreeInvariant(
                    "tree edge is not a graph edge",
                ));
            }
        }
        let mut edge_order: Vec<(usize, usize)> = tree.tree_edges().to_vec();
        for (u, v) in graph.edges() {
            if !tree.is_tree_edge(u, v) {
                if !tree.comparable(u, v) {
                    return Err(GainGraphError::TreeInvariant(
                        "adjacent vertices are incomparable in tree order",
                    ));
                }
                // Descendant -> ancestor.
                if tree.is_ancestor(u, v) {
                    edge_order.push((v, u));
                } else {
                    edge_order.push((u, v));
                }
            }
        }
        if edge_order.len() != graph.edge_count() {
            return Err(GainGraphError::TreeInvariant(
                "tree edges missing from the graph",
            ));
        }
        let edge_index = edge_order
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
            .collect();
        let orientation = SuitableOrientation {
            graph: graph.clone(),
            tree: tree.clone(),
            edge_order,
            edge_index,
            tree_edge_count: tree.tree_edges().len(),
        };
        // Every fundamental cycle must be directed under this orientation.
        for cycle in orientation.fundamental_cycles().cycles() {
            for window in cycle.windows(2) {
                if window[0].1 != window[1].0 {
                    return Err(GainGraphError::TreeInvariant(
                        "fundamental cycle is not a directed cycle",
                    ));
                }
            }
        }
        Ok(orientation)
    }

    /// Convenience: DFS normal spanning tree at `root`, then orient.
    pub fn from_root(graph: &SimpleGraph, root: usize) -> Result<SuitableOrientation> {
        let tree = NormalSpanningTree::build(graph, root)?;
        SuitableOrientation::build(graph, &tree)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn tree(&self) -> &NormalSpanningTree {
        &self.tree
    }

    /// The fixed ordering of all m oriented edges.
    pub fn edge_order(&self) -> &[(usize, usize)] {
        &self.edge_order
    }

    pub fn tree_edge_count(&self) -> usize {
        self.tree_edge_count
    }

    /// Non-tree oriented edges (descendant, ancestor), in edge order.
    pub fn non_tree_edges(&self) -> &[(usize, usize)] {
        &self.edge_order[self.tree_edge_count..]
    }

    pub fn edge_position(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// The oriented edge at a given position.
    pub fn oriented_edge(&self, index: usize) -> (usize, usize) {
        self.edge_order[index]
    }

    /// Gain angles of a gain graph read along the suitable orientation:
    /// entry k is the angle of the gain on the k-th oriented edge.
    pub fn gain_angle_vector(&self, phi: &GainGraph) -> Result<Vec<f64>> {
        if phi.graph() != &self.graph {
            return Err(GainGraphError::GraphMismatch(
                "gain graph does not match the oriented graph",
            ));
        }
        Ok(self
            .edge_order
            .iter()
            .map(|&(u, v)| phi.gain(u, v).angle())
            .collect())
    }

    /// Vertex-arc incidence matrix of the oriented graph: entry `(i, j)`
    /// is +1 when edge j originates at vertex i, -1 when it terminates
    /// there. Incidence vectors of cycles lie in its null space.
    pub fn incidence_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.graph.vertex_count();
        let mut q = vec![vec![0i32; self.edge_order.len()]; n];
        for (j, &(u, v)) in self.edge_order.iter().enumerate() {
            q[u][j] = 1;
            q[v][j] = -1;
        }
        q
    }

    /// One directed fundamental cycle per non-tree edge: the descending
    /// tree path between its endpoints closed by the non-tree arc.
    pub fn fundamental_cycles(&self) -> FundamentalCycleBasis {
        let mut cycles = Vec::new();
        let mut incidence = Vec::new();
        let mut non_tree_positions = Vec::new();
        for (offset, &(desc, anc)) in self.non_tree_edges().iter().enumerate() {
            let path = self.tree.descending_path(anc, desc);
            let mut cycle: Vec<(usize, usize)> =
                path.windows(2).map(|w| (w[0], w[1])).collect();
            cycle.push((desc, anc));
            let mut vector = vec![0i32; self.edge_order.len()];
            for &(u, v) in &cycle {
                let pos = self.edge_position(u, v).expect("cycle edge is a graph edge");
                debug_assert_eq!(self.edge_order[pos], (u, v));
                vector[pos] = 1;
            }
            cycles.push(cycle);
            incidence.push(vector);
            non_tree_positions.push(self.tree_edge_count + offset);
        }
        FundamentalCycleBasis {
            cycles,
            incidence,
            non_tree_positions,
            edge_count: self.edge_order.len(),
        }
    }
}

/// The basis of the cycle space given by the directed fundamental cycles,
/// with incidence vectors taken against the orientation's edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycleBasis {
    /// Directed edge sequences, one per non-tree edge.
    cycles: Vec<Vec<(usize, usize)>>,
    incidence: Vec<Vec<i32>>,
    /// Position in edge order of each cycle's non-tree edge.
    non_tree_positions: Vec<usize>,
    edge_count: usize,
}

impl FundamentalCycleBasis {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> &[Vec<(usize, usize)>] {
        &self.cycles
    }

    pub fn cycle(&self, j: usize) -> &[(usize, usize)] {
        &self.cycles[j]
    }

    pub fn incidence_vectors(&self) -> &[Vec<i32>] {
        &self.incidence
    }

    pub fn non_tree_positions(&self) -> &[usize] {
        &self.non_tree_positions
    }

    /// Coordinates of a directed cycle over the basis. Each coefficient is
    /// read off the cycle's incidence entry at the corresponding non-tree
    /// edge; the expansion is then verified exactly in integer arithmetic.
    pub fn cycle_coordinates(
        &self,
        orientation: &SuitableOrientation,
        cycle: &[(usize, usize)],
    ) -> Result<Vec<i32>> {
        let vector = incidence_vector(orientation, cycle)?;
        let coords: Vec<i32> = self
            .non_tree_positions
            .iter()
            .map(|&pos| vector[pos])
            .collect();
        let mut recomposed = vec![0i32; self.edge_count];
        for (c, basis_vector) in coords.iter().zip(&self.incidence) {
            for (r, b) in recomposed.iter_mut().zip(basis_vector) {
                *r += c * b;
            }
        }
        if recomposed != vector {
            return Err(GainGraphError::ShapeError(
                "incidence vector is outside the span of the fundamental cycles",
            ));
        }
        Ok(coords)
    }
}

/// Incidence vector of a directed simple cycle with respect to the
/// orientation's edge order: +1 where the cycle follows the suitable
/// orientation, -1 where it runs against it.
pub fn incidence_vector(
    orientation: &SuitableOrientation,
    cycle: &[(usize, usize)],
) -> Result<Vec<i32>> {
    validate_cycle(orientation.graph(), cycle, true)?;
    let mut vector = vec![0i32; orientation.edge_order().len()];
    for &(u, v) in cycle {
        let pos = orientation
            .edge_position(u, v)
            .ok_or(GainGraphError::ShapeError("edge not in the graph"))?;
        vector[pos] = if orientation.oriented_edge(pos) == (u, v) {
            1
        } else {
            -1
        };
    }
    Ok(vector)
}

fn validate_cycle(graph: &SimpleGraph, cycle: &[(usize, usize)], simple: bool) -> Result<()> {
    if cycle.len() < 3 {
        return Err(GainGraphError::ShapeError("fewer than three edges"));
    }
    for &(u, v) in cycle {
        if !graph.has_edge(u, v) {
            return Err(GainGraphError::ShapeError("edge not in the graph"));
        }
    }
    for w in cycle.windows(2) {
        if w[0].1 != w[1].0 {
            return Err(GainGraphError::ShapeError("edges do not chain"));
        }
    }
    if cycle[cycle.len() - 1].1 != cycle[0].0 {
        return Err(GainGraphError::ShapeError("walk does not close"));
    }
    if simple {
        let mut seen: Vec<usize> = cycle.iter().map(|&(u, _)| u).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != cycle.len() {
            return Err(GainGraphError::ShapeError("vertex repeated"));
        }
    }
    Ok(())
}

/// Gain of a closed directed walk: the sum of edge gain angles,
/// canonicalized. Errors when the edge sequence does not form a closed
/// walk in the underlying graph.
pub fn gain_of_cycle(phi: &GainGraph, cycle: &[(usize, usize)]) -> Result<Gain> {
    validate_cycle(phi.graph(), cycle, false)?;
    let total: f64 = cycle.iter().map(|&(u, v)| phi.gain(u, v).angle()).sum();
    Ok(Gain::from_angle(canonical_angle(total)))
}

/// Gain of the unique tree path from `from` to `to`; 1 when they coincide.
pub fn gain_of_tree_path(
    phi: &GainGraph,
    tree: &NormalSpanningTree,
    from: usize,
    to: usize,
) -> Gain {
    let path = tree.path(from, to);
    let total: f64 = path
        .windows(2)
        .map(|w| phi.gain(w[0], w[1]).angle())
        .sum();
    Gain::from_angle(total)
}
