//! k-generalized Hermitian adjacency matrices of digraphs.
//!
//! Digons map to 1 and single arcs to `e^{+-i pi/(k+1)}`; `k = 1`
//! recovers the classical Hermitian adjacency matrix. Every such matrix
//! is the adjacency matrix of a gain graph whose gains have nonnegative
//! real part, so the largest-eigenvalue sandwich applies unconditionally.
//! A digraph attains spectral radius equal to the maximum degree exactly
//! when its vertices fall into `2k+2` rotation classes following one of
//! two transition patterns, which `verify_structure` reconstructs.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{GainGraphError, Result};
use crate::gain::Gain;
use crate::graph::{Digraph, GainGraph};
use crate::spanning::NormalSpanningTree;
use crate::spectral::{bounds_report, BoundsReport, HermitianMatrix, SPECTRUM_TOL};
use crate::switching::is_balanced;

/// Parameters of the k-generalized construction: the class count is
/// `2k + 2` and the unit rotation is `theta = pi / (k + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KHermitianParams {
    k: usize,
}

impl KHermitianParams {
    pub fn new(k: usize) -> Result<KHermitianParams> {
        if k == 0 {
            return Err(GainGraphError::StructureRule(
                "the generalization index k must be at least 1".into(),
            ));
        }
        Ok(KHermitianParams { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `pi / (k + 1)`, in `(0, pi/2]`.
    pub fn theta(&self) -> f64 {
        PI / (self.k + 1) as f64
    }

    pub fn class_count(&self) -> usize {
        2 * self.k + 2
    }
}

/// Entry rule of the k-generalized Hermitian adjacency matrix.
fn arc_gain(x: &Digraph, u: usize, v: usize, theta: f64) -> Option<Gain> {
    match (x.has_arc(u, v), x.has_arc(v, u)) {
        (true, true) => Some(Gain::ONE),
        (true, false) => Some(Gain::from_angle(theta)),
        (false, true) => Some(Gain::from_angle(-theta)),
        (false, false) => None,
    }
}

/// The k-generalized Hermitian adjacency matrix of a digraph.
pub fn hk_matrix(x: &Digraph, params: KHermitianParams) -> HermitianMatrix {
    let n = x.vertex_count();
    let theta = params.theta();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for u in 0..n {
        for v in (u + 1)..n {
            if let Some(g) = arc_gain(x, u, v, theta) {
                let c = g.to_complex();
                data[u * n + v] = c;
                data[v * n + u] = c.conj();
            }
        }
    }
    HermitianMatrix::new(n, data).expect("construction is Hermitian")
}

/// The gain graph on the underlying graph whose adjacency matrix equals
/// the k-generalized Hermitian adjacency matrix. All its gains lie in
/// `{1, e^{i theta}, e^{-i theta}}` and have nonnegative real part.
pub fn gain_graph_of(x: &Digraph, params: KHermitianParams) -> GainGraph {
    let theta = params.theta();
    let graph = x.underlying_graph();
    let gains: Vec<(usize, usize, Gain)> = graph
        .edges()
        .map(|(u, v)| {
            let g = arc_gain(x, u, v, theta).expect("underlying edge has an arc");
            (u, v, g)
        })
        .collect();
    GainGraph::new(graph, &gains).expect("gains cover exactly the edges")
}

/// Spectral bounds of the k-generalized matrix of a weakly connected
/// digraph. The largest-eigenvalue sandwich and the degree bound are
/// asserted; the gains always have nonnegative real part.
pub fn hk_bounds(x: &Digraph, params: KHermitianParams) -> Result<BoundsReport> {
    if !x.is_weakly_connected() {
        return Err(GainGraphError::NotWeaklyConnected);
    }
    bounds_report(&gain_graph_of(x, params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// Digons stay inside a class; single arcs advance the class by one.
    A,
    /// Classes are independent; digons jump half way around, single arcs
    /// by one more than half.
    B,
}

/// A vertex partition into `2k + 2` rotation classes certifying that the
/// spectral radius attains the maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurePartition {
    pub kind: StructureKind,
    pub class_count: usize,
    /// Class index per vertex, canonicalized so the tree root sits in
    /// class 0.
    pub assignment: Vec<usize>,
}

impl StructurePartition {
    /// Partitions are unique only up to a global rotation of the class
    /// labels.
    pub fn rotation_equivalent(&self, other: &StructurePartition) -> bool {
        if self.kind != other.kind
            || self.class_count != other.class_count
            || self.assignment.len() != other.assignment.len()
            || self.assignment.is_empty()
        {
            return false;
        }
        let c = self.class_count;
        let r = (other.assignment[0] + c - self.assignment[0]) % c;
        self.assignment
            .iter()
            .zip(&other.assignment)
            .all(|(&a, &b)| (a + r) % c == b)
    }
}

fn class_shift(kind: StructureKind, digon: bool, params: KHermitianParams) -> usize {
    let c = params.class_count();
    match (kind, digon) {
        (StructureKind::A, true) => 0,
        (StructureKind::A, false) => 1,
        (StructureKind::B, true) => params.k() + 1,
        (StructureKind::B, false) => (params.k() + 2) % c,
    }
}

/// Build a digraph following one of the two extremal structures. The
/// caller supplies class sizes (one per class, `2k + 2` of them) plus the
/// digons and single arcs; every connection must respect the class
/// transition rule of the chosen kind. Regularity and connectivity are
/// the caller's business; this constructor only enforces the transition
/// rules.
pub fn build_structure(
    kind: StructureKind,
    class_sizes: &[usize],
    digons: &[(usize, usize)],
    arcs: &[(usize, usize)],
    params: KHermitianParams,
) -> Result<Digraph> {
    let c = params.class_count();
    if class_sizes.len() != c {
        return Err(GainGraphError::StructureRule(format!(
            "expected {c} class sizes, got {}",
            class_sizes.len()
        )));
    }
    let n: usize = class_sizes.iter().sum();
    let mut class_of = Vec::with_capacity(n);
    for (idx, &size) in class_sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat_n(idx, size));
    }
    let check = |u: usize, v: usize, digon: bool| -> Result<()> {
        if u >= n || v >= n {
            return Err(GainGraphError::VertexOutOfRange(u.max(v), n));
        }
        let shift = class_shift(kind, digon, params);
        if (class_of[u] + shift) % c != class_of[v] {
            return Err(GainGraphError::StructureRule(format!(
                "connection ({u}, {v}) violates the class transition rule",
            )));
        }
        Ok(())
    };
    let mut arc_list = Vec::with_capacity(2 * digons.len() + arcs.len());
    for &(u, v) in digons {
        check(u, v, true)?;
        arc_list.push((u, v));
        arc_list.push((v, u));
    }
    for &(u, v) in arcs {
        check(u, v, false)?;
        arc_list.push((u, v));
    }
    Digraph::new(n, &arc_list)
}

/// Decide whether the digraph attains `rho = max degree` and, if so,
/// reconstruct the certifying class partition: check regularity, decide
/// the kind from which of the gain graph or its negation is balanced,
/// propagate class labels over a normal spanning tree, and verify every
/// arc's transition. Returns `None` when the digraph is not extremal.
pub fn verify_structure(
    x: &Digraph,
    params: KHermitianParams,
) -> Result<Option<StructurePartition>> {
    if !x.is_weakly_connected() {
        return Err(GainGraphError::NotWeaklyConnected);
    }
    let underlying = x.underlying_graph();
    let spectrum = hk_matrix(x, params).eigenvalues()?;
    let max_degree = underlying.max_degree() as f64;
    if (spectrum.spectral_radius() - max_degree).abs() > SPECTRUM_TOL {
        return Ok(None);
    }
    if !underlying.is_regular() {
        return Ok(None);
    }
    let phi = gain_graph_of(x, params);
    let kind = if is_balanced(&phi)? {
        StructureKind::A
    } else if is_balanced(&phi.negate())? {
        StructureKind::B
    } else {
        return Ok(None);
    };
    let c = params.class_count();
    let tree = NormalSpanningTree::build(&underlying, 0)?;
    let mut assignment = vec![0usize; underlying.vertex_count()];
    for &(p, child) in tree.tree_edges() {
        let shift = if x.is_digon(p, child) {
            class_shift(kind, true, params)
        } else if x.has_arc(p, child) {
            class_shift(kind, false, params)
        } else {
            // Backward arc: invert the forward shift.
            c - class_shift(kind, false, params)
        };
        assignment[child] = (assignment[p] + shift) % c;
    }
    for (u, v) in x.arcs() {
        let digon = x.is_digon(u, v);
        let shift = class_shift(kind, digon, params);
        if (assignment[u] + shift) % c != assignment[v] {
            return Ok(None);
        }
    }
    Ok(Some(StructurePartition {
        kind,
        class_count: c,
        assignment,
    }))
}
