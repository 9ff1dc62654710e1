//! Constructive normalization: produce, inside a given switching class, a
//! representative whose edge gains all have nonnegative real part.
//!
//! Three constructions are provided. For graphs whose cycles are vertex
//! disjoint, a vertex weighting spreads each cycle's gain evenly over its
//! edges. For fundamental subgraphs with a distinguished-edge ordering,
//! each cycle after the first distributes its residual angle over at
//! least two new edges. Complete-graph-on-four-vertices cores (and their
//! subdivisions) are handled by a dedicated case analysis on the three
//! fundamental cycle equations. The top-level dispatcher picks the right
//! construction per fundamental subgraph.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{GainGraphError, Result};
use crate::gain::{canonical_angle, circle_distance, Gain, ANGLE_TOL};
use crate::graph::{GainGraph, SwitchingFunction};
use crate::spanning::{gain_of_tree_path, FundamentalCycleBasis, SuitableOrientation};
use crate::structure::{classify, core_structure, Classification};
use crate::switching::class_signature;

type Edge = (usize, usize);

fn undirected(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

/// Tree-order layout of a directed fundamental cycle: its vertices in
/// ascending tree order, the topmost (leading) vertex, and the cycle's
/// average edge gain angle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleLayout {
    pub cycle_index: usize,
    /// Cycle vertices in ascending tree order; they lie on one descending
    /// tree path, so the order is total.
    pub vertices: Vec<usize>,
    pub leading_vertex: usize,
    /// No other fundamental cycle's leading vertex is a strict ancestor.
    pub is_leading_cycle: bool,
    /// Cycle gain angle in `(-pi, pi]`.
    pub cycle_angle: f64,
    /// `cycle_angle / length`; always in `[-pi/2, pi/2]`.
    pub average_gain_angle: f64,
}

/// Compute the layouts of all fundamental cycles of `phi` under the given
/// orientation.
pub fn cycle_layouts(
    phi: &GainGraph,
    orientation: &SuitableOrientation,
) -> Result<Vec<CycleLayout>> {
    let signature = class_signature(phi, orientation)?;
    let basis = orientation.fundamental_cycles();
    let mut layouts: Vec<CycleLayout> = basis
        .cycles()
        .iter()
        .enumerate()
        .map(|(j, cycle)| {
            let vertices: Vec<usize> = cycle.iter().map(|&(u, _)| u).collect();
            let theta = canonical_angle(signature.angles()[j]);
            CycleLayout {
                cycle_index: j,
                leading_vertex: vertices[0],
                is_leading_cycle: true,
                cycle_angle: theta,
                average_gain_angle: theta / vertices.len() as f64,
                vertices,
            }
        })
        .collect();
    let tree = orientation.tree();
    let leaders: Vec<usize> = layouts.iter().map(|l| l.leading_vertex).collect();
    for layout in &mut layouts {
        layout.is_leading_cycle = !leaders.iter().any(|&other| {
            other != layout.leading_vertex && tree.is_ancestor(other, layout.leading_vertex)
        });
    }
    Ok(layouts)
}

/// The vertex weights driving the vertex-disjoint construction: weights
/// start at 1 on the root, stay constant across edges outside every
/// cycle, and advance by the cycle's average edge gain along cycle edges.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexWeighting {
    weights: Vec<Gain>,
}

impl VertexWeighting {
    pub fn weight(&self, v: usize) -> Gain {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Gain] {
        &self.weights
    }
}

/// Propagate vertex weights down the spanning tree. Requires every tree
/// edge to belong to at most one fundamental cycle, which holds when the
/// cycles are vertex disjoint.
pub fn vertex_weighting(
    orientation: &SuitableOrientation,
    layouts: &[CycleLayout],
) -> Result<VertexWeighting> {
    let basis = orientation.fundamental_cycles();
    let mut edge_cycle: BTreeMap<Edge, usize> = BTreeMap::new();
    for layout in layouts {
        let cycle = basis.cycle(layout.cycle_index);
        for &(u, v) in cycle {
            if edge_cycle.insert(undirected(u, v), layout.cycle_index).is_some() {
                return Err(GainGraphError::CyclesNotDisjoint);
            }
        }
    }
    let tree = orientation.tree();
    let n = orientation.graph().vertex_count();
    let mut weights = vec![Gain::ONE; n];
    for &(p, c) in tree.tree_edges() {
        weights[c] = match edge_cycle.get(&undirected(p, c)) {
            Some(&j) => weights[p].compose(Gain::from_angle(layouts[j].average_gain_angle)),
            None => weights[p],
        };
    }
    Ok(VertexWeighting { weights })
}

/// Normalize a gain graph whose cycles are vertex disjoint: the switching
/// `zeta(v) = W(v) * gain(root..v)^{-1}` sends every cycle edge to the
/// cycle's average edge gain and every other edge to 1.
pub fn gnrp_vertex_disjoint(
    phi: &GainGraph,
    orientation: &SuitableOrientation,
) -> Result<GainGraph> {
    if phi.graph() != orientation.graph() {
        return Err(GainGraphError::GraphMismatch(
            "gain graph does not match the oriented graph",
        ));
    }
    let subgraphs = crate::structure::fundamental_subgraphs(phi.graph(), orientation)?;
    if subgraphs.iter().any(|s| s.cycle_indices.len() != 1) {
        return Err(GainGraphError::CyclesNotDisjoint);
    }
    let layouts = cycle_layouts(phi, orientation)?;
    let weighting = vertex_weighting(orientation, &layouts)?;
    let tree = orientation.tree();
    let root = tree.root();
    let values: Vec<Gain> = (0..phi.graph().vertex_count())
        .map(|v| {
            weighting
                .weight(v)
                .compose(gain_of_tree_path(phi, tree, root, v).inverse())
        })
        .collect();
    phi.apply_switching(&SwitchingFunction::new(values))
}

/// Solve the three cycle equations of the complete graph on four vertices
/// for six edge angles in `[-pi/2, pi/2]`.
///
/// The inputs are the target gain angles of the directed fundamental
/// cycles with respect to the path spanning tree: the 4-cycle through all
/// vertices, then the triangle on the lower three, then the triangle on
/// the upper three. The returned angles belong to the oriented edges
/// `(e12, e23, e34, e41, e42, e31)` and satisfy
/// `x1+x2+x3+x4 = t1`, `x2+x3+x5 = t2`, `x1+x2+x6 = t3` modulo 2 pi.
pub fn gnrp_k4(theta1: f64, theta2: f64, theta3: f64) -> [f64; 6] {
    // Substituting x_p = y_p - pi/2 turns the equations into
    // y-sums equal to (t1 + 2pi, t2 + 3pi/2, t3 + 3pi/2) mod 2pi,
    // solvable with every y in [0, pi].
    let tp = [
        theta1.rem_euclid(TAU),
        (theta2 + 3.0 * FRAC_PI_2).rem_euclid(TAU),
        (theta3 + 3.0 * FRAC_PI_2).rem_euclid(TAU),
    ];
    let low = [tp[0] <= PI, tp[1] <= PI, tp[2] <= PI];
    let (fixed, shift) = match low {
        [true, true, true] => ([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
        [true, true, false] => ([0.0, PI, PI], [0.0, 0.0, PI]),
        [true, false, true] => ([PI, PI, 0.0], [0.0, PI, 0.0]),
        [false, true, true] => ([PI, PI, PI], [PI, 0.0, 0.0]),
        [true, false, false] => ([PI, 0.0, PI], [0.0, PI, PI]),
        [false, true, false] => ([PI, 0.0, 0.0], [PI, 0.0, PI]),
        [false, false, true] => ([0.0, 0.0, PI], [PI, PI, 0.0]),
        [false, false, false] => ([0.0, PI, 0.0], [PI, PI, PI]),
    };
    let y = [
        fixed[0],
        fixed[1],
        fixed[2],
        tp[0] - shift[0],
        tp[1] - shift[1],
        tp[2] - shift[2],
    ];
    [
        y[0] - FRAC_PI_2,
        y[1] - FRAC_PI_2,
        y[2] - FRAC_PI_2,
        y[3] - FRAC_PI_2,
        y[4] - FRAC_PI_2,
        y[5] - FRAC_PI_2,
    ]
}

/// Assign angles cycle by cycle along a distinguished-edge ordering: each
/// cycle's unassigned edges share the residual between its target angle
/// and the angles already fixed on its other edges, canonicalized to
/// `(-pi, pi]` before the split.
fn distribute_residuals(
    basis: &FundamentalCycleBasis,
    signature_angles: &[f64],
    ordering: &[usize],
    edge_angles: &mut BTreeMap<Edge, f64>,
) -> Result<()> {
    for &j in ordering {
        let cycle = basis.cycle(j);
        let mut assigned_sum = 0.0;
        let mut new_edges: Vec<Edge> = Vec::new();
        for &(u, v) in cycle {
            match edge_angles.get(&undirected(u, v)) {
                Some(&a) => assigned_sum += a,
                None => new_edges.push(undirected(u, v)),
            }
        }
        if new_edges.is_empty() {
            return Err(GainGraphError::NumericalConsistency(
                "ordering left a cycle with no edge to carry its residual".into(),
            ));
        }
        let residual = canonical_angle(signature_angles[j] - assigned_sum);
        let per_edge = residual / new_edges.len() as f64;
        for e in new_edges {
            edge_angles.insert(e, per_edge);
        }
    }
    Ok(())
}

/// Assign the subdivision core's branch angles from the case analysis.
fn assign_k4_core(
    basis: &FundamentalCycleBasis,
    signature_angles: &[f64],
    core_cycles: [usize; 3],
    structure: &crate::structure::K4PrimeStructure,
    edge_angles: &mut BTreeMap<Edge, f64>,
) -> Result<()> {
    // Branch membership of each core cycle.
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(3);
    for &j in &core_cycles {
        let edges: std::collections::BTreeSet<Edge> = basis
            .cycle(j)
            .iter()
            .map(|&(u, v)| undirected(u, v))
            .collect();
        let mut branch_ids = Vec::new();
        for (b, branch) in structure.branches.iter().enumerate() {
            let inside = branch.edges.iter().filter(|e| edges.contains(e)).count();
            if inside == branch.edges.len() {
                branch_ids.push(b);
            } else if inside != 0 {
                return Err(GainGraphError::UnsupportedClass(
                    "fundamental cycle cuts a subdivision branch",
                ));
            }
        }
        members.push(branch_ids);
    }
    // Under a normal spanning tree the three cycles always form one
    // 4-branch cycle and two 3-branch cycles overlapping in a single
    // common branch.
    let quad_pos = members
        .iter()
        .position(|m| m.len() == 4)
        .ok_or(GainGraphError::UnsupportedClass(
            "subdivision core lacks a four-branch cycle",
        ))?;
    let tri_pos: Vec<usize> = (0..3).filter(|&i| i != quad_pos).collect();
    if members[tri_pos[0]].len() != 3 || members[tri_pos[1]].len() != 3 {
        return Err(GainGraphError::UnsupportedClass(
            "subdivision core has an unexpected cycle shape",
        ));
    }
    let (tri_a, tri_b) = (tri_pos[0], tri_pos[1]);
    let common: Vec<usize> = members[tri_a]
        .iter()
        .copied()
        .filter(|b| members[tri_b].contains(b) && members[quad_pos].contains(b))
        .collect();
    if common.len() != 1 {
        return Err(GainGraphError::UnsupportedClass(
            "subdivision core cycles do not share a unique branch",
        ));
    }
    let b2 = common[0];
    let pick = |from: &[usize], also: &[usize], exclude: &[usize]| -> Result<usize> {
        let found: Vec<usize> = from
            .iter()
            .copied()
            .filter(|b| also.contains(b) && !exclude.contains(b))
            .collect();
        if found.len() == 1 {
            Ok(found[0])
        } else {
            Err(GainGraphError::UnsupportedClass(
                "subdivision core branch pattern is not path-like",
            ))
        }
    };
    let b1 = pick(&members[quad_pos], &members[tri_a], &[b2])?;
    let b3 = pick(&members[quad_pos], &members[tri_b], &[b2])?;
    let b4 = pick(&members[quad_pos], &members[quad_pos], &[b1, b2, b3])?;
    let b6 = pick(&members[tri_a], &members[tri_a], &[b1, b2])?;
    let b5 = pick(&members[tri_b], &members[tri_b], &[b2, b3])?;

    let x = gnrp_k4(
        signature_angles[core_cycles[quad_pos]],
        signature_angles[core_cycles[tri_b]],
        signature_angles[core_cycles[tri_a]],
    );
    for (branch_id, angle) in [(b1, x[0]), (b2, x[1]), (b3, x[2]), (b4, x[3]), (b5, x[4]), (b6, x[5])]
    {
        let branch = &structure.branches[branch_id];
        let per_edge = angle / branch.edges.len() as f64;
        for &e in &branch.edges {
            edge_angles.insert(e, per_edge);
        }
    }
    Ok(())
}

/// Normalize using plain distinguished-edge orderings for every
/// fundamental subgraph. Fails when a subgraph lacks a plain certificate.
pub fn gnrp_dep(
    phi: &GainGraph,
    orientation: &SuitableOrientation,
    classification: &Classification,
) -> Result<GainGraph> {
    build_normalized(phi, orientation, classification, false)
}

/// Normalize any gain graph whose underlying connected graph admits the
/// extended distinguished-edge property: subdivision cores get the case
/// analysis, everything else the residual distribution.
pub fn gnrp(phi: &GainGraph) -> Result<GainGraph> {
    if !phi.graph().is_connected() {
        return Err(GainGraphError::Disconnected);
    }
    let orientation = SuitableOrientation::from_root(phi.graph(), 0)?;
    let classification = classify(phi.graph(), &orientation)?;
    gnrp_with(phi, &orientation, &classification)
}

/// As [`gnrp`], with the orientation and classification precomputed.
pub fn gnrp_with(
    phi: &GainGraph,
    orientation: &SuitableOrientation,
    classification: &Classification,
) -> Result<GainGraph> {
    build_normalized(phi, orientation, classification, true)
}

fn build_normalized(
    phi: &GainGraph,
    orientation: &SuitableOrientation,
    classification: &Classification,
    allow_k4_cores: bool,
) -> Result<GainGraph> {
    if phi.graph() != orientation.graph() {
        return Err(GainGraphError::GraphMismatch(
            "gain graph does not match the oriented graph",
        ));
    }
    let signature = class_signature(phi, orientation)?;
    let basis = orientation.fundamental_cycles();
    let mut edge_angles: BTreeMap<Edge, f64> = BTreeMap::new();
    for (i, sub) in classification.subgraphs.iter().enumerate() {
        if allow_k4_cores {
            if let Some((witness, remainder)) = &sub.k4_prime {
                let (structure, _) = core_structure(&basis, witness.cycle_indices)
                    .ok_or(GainGraphError::MissingCertificate(i))?;
                assign_k4_core(
                    &basis,
                    signature.angles(),
                    witness.cycle_indices,
                    &structure,
                    &mut edge_angles,
                )?;
                distribute_residuals(
                    &basis,
                    signature.angles(),
                    &remainder.ordering,
                    &mut edge_angles,
                )?;
                continue;
            }
        }
        match &sub.plain_dep {
            Some(cert) => {
                distribute_residuals(
                    &basis,
                    signature.angles(),
                    &cert.ordering,
                    &mut edge_angles,
                )?;
            }
            None if allow_k4_cores => {
                return Err(GainGraphError::UnsupportedClass(
                    "a fundamental subgraph admits neither ordering",
                ))
            }
            None => return Err(GainGraphError::MissingCertificate(i)),
        }
    }
    let oriented: Vec<(usize, usize, Gain)> = orientation
        .edge_order()
        .iter()
        .map(|&(u, v)| {
            let angle = edge_angles
                .get(&undirected(u, v))
                .copied()
                .unwrap_or(0.0);
            (u, v, Gain::from_angle(angle))
        })
        .collect();
    let result = GainGraph::new(phi.graph().clone(), &oriented)?;
    let out_signature = class_signature(&result, orientation)?;
    for (&got, &want) in out_signature.angles().iter().zip(signature.angles()) {
        if circle_distance(got, want) > ANGLE_TOL {
            return Err(GainGraphError::NumericalConsistency(
                "normalization changed the class signature".into(),
            ));
        }
    }
    if !result.has_nonneg_real_part() {
        return Err(GainGraphError::NumericalConsistency(
            "normalization produced an edge with negative real part".into(),
        ));
    }
    Ok(result)
}
