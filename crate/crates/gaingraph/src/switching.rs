//! Switching classes of gain graphs on a fixed connected graph.
//!
//! Two gains on the same graph are switching equivalent exactly when all
//! fundamental cycle gains agree, so the vector of fundamental-cycle gain
//! angles (the *class signature*) identifies the switching class. Within a
//! class all adjacency matrices are cospectral.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::error::{GainGraphError, Result};
use crate::gain::{circle_distance, Gain, ANGLE_TOL};
use crate::graph::{GainGraph, SwitchingFunction};
use crate::spanning::{gain_of_tree_path, SuitableOrientation};

/// Identifies the spanning tree and edge ordering a signature was computed
/// against; signatures are only comparable when fingerprints match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFingerprint {
    pub root: usize,
    pub edge_order: Vec<(usize, usize)>,
}

/// The vector of fundamental-cycle gain angles, each in `[0, 2pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSignature {
    angles: Vec<f64>,
    fingerprint: TreeFingerprint,
}

impl ClassSignature {
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn fingerprint(&self) -> &TreeFingerprint {
        &self.fingerprint
    }

    /// Component-wise equality on the circle within `tol`. Errors when the
    /// signatures come from different trees.
    pub fn approx_eq(&self, other: &ClassSignature, tol: f64) -> Result<bool> {
        if self.fingerprint != other.fingerprint {
            return Err(GainGraphError::FingerprintMismatch);
        }
        Ok(self
            .angles
            .iter()
            .zip(&other.angles)
            .all(|(&a, &b)| circle_distance(a, b) <= tol))
    }

    /// The signature of the entry-wise conjugated class: each entry maps
    /// to `(2pi - r) mod 2pi`. An involution fixing the zero vector.
    pub fn conjugate(&self) -> ClassSignature {
        ClassSignature {
            angles: self
                .angles
                .iter()
                .map(|&r| (TAU - r).rem_euclid(TAU))
                .collect(),
            fingerprint: self.fingerprint.clone(),
        }
    }
}

/// Compute the class signature of `phi` against a suitable orientation:
/// entry j is the gain angle of the j-th directed fundamental cycle,
/// obtained as the inner product of its incidence vector with the gain
/// angle vector, reduced into `[0, 2pi)`.
pub fn class_signature(phi: &GainGraph, orientation: &SuitableOrientation) -> Result<ClassSignature> {
    let theta = orientation.gain_angle_vector(phi)?;
    let basis = orientation.fundamental_cycles();
    let angles = basis
        .incidence_vectors()
        .iter()
        .map(|vector| {
            let total: f64 = vector
                .iter()
                .zip(&theta)
                .map(|(&c, &t)| c as f64 * t)
                .sum();
            total.rem_euclid(TAU)
        })
        .collect();
    Ok(ClassSignature {
        angles,
        fingerprint: TreeFingerprint {
            root: orientation.tree().root(),
            edge_order: orientation.edge_order().to_vec(),
        },
    })
}

/// Outcome of a switching-equivalence test. When the graphs are
/// equivalent the certificate carries a switching function that maps the
/// first gain graph onto the second, validated edge-wise.
#[derive(Debug, Clone)]
pub struct EquivalenceCertificate {
    pub equivalent: bool,
    pub witness: Option<SwitchingFunction>,
    pub signature_first: ClassSignature,
    pub signature_second: ClassSignature,
}

/// Decide whether two gains on the same connected graph are switching
/// equivalent by comparing class signatures, and produce a validating
/// witness when they are.
///
/// The witness is `zeta(v) = gain_1(root..v)^{-1} * gain_2(root..v)` along
/// tree paths: it corrects every tree edge exactly, and equal fundamental
/// cycle gains then force every non-tree edge to match as well.
pub fn are_switching_equivalent(
    phi1: &GainGraph,
    phi2: &GainGraph,
    tol: f64,
) -> Result<EquivalenceCertificate> {
    if !phi1.same_underlying_graph(phi2) {
        return Err(GainGraphError::GraphMismatch(
            "switching equivalence needs identical underlying graphs",
        ));
    }
    let orientation = SuitableOrientation::from_root(phi1.graph(), 0)?;
    are_switching_equivalent_with(phi1, phi2, tol, &orientation)
}

/// As [`are_switching_equivalent`], against a caller-chosen orientation.
pub fn are_switching_equivalent_with(
    phi1: &GainGraph,
    phi2: &GainGraph,
    tol: f64,
    orientation: &SuitableOrientation,
) -> Result<EquivalenceCertificate> {
    if !phi1.same_underlying_graph(phi2) {
        return Err(GainGraphError::GraphMismatch(
            "switching equivalence needs identical underlying graphs",
        ));
    }
    let sig1 = class_signature(phi1, orientation)?;
    let sig2 = class_signature(phi2, orientation)?;
    if !sig1.approx_eq(&sig2, tol)? {
        return Ok(EquivalenceCertificate {
            equivalent: false,
            witness: None,
            signature_first: sig1,
            signature_second: sig2,
        });
    }
    let tree = orientation.tree();
    let root = tree.root();
    let values: Vec<Gain> = (0..phi1.graph().vertex_count())
        .map(|v| {
            gain_of_tree_path(phi1, tree, root, v)
                .inverse()
                .compose(gain_of_tree_path(phi2, tree, root, v))
        })
        .collect();
    let witness = SwitchingFunction::new(values);
    let switched = phi1.apply_switching(&witness)?;
    if !switched.gains_approx_eq(phi2, edgewise_tolerance(phi1, tol)) {
        return Err(GainGraphError::NumericalConsistency(
            "equivalence witness failed edge-wise validation".into(),
        ));
    }
    Ok(EquivalenceCertificate {
        equivalent: true,
        witness: Some(witness),
        signature_first: sig1,
        signature_second: sig2,
    })
}

// Signature agreement within tol bounds edge-wise witness error by tol
// accumulated over a tree path, so scale with the graph size.
fn edgewise_tolerance(phi: &GainGraph, tol: f64) -> f64 {
    tol.max(ANGLE_TOL) * (phi.graph().vertex_count() as f64 + 1.0)
}

/// A gain graph is balanced when every cycle is neutral; it suffices to
/// check the fundamental cycles, which generate all cycle gains.
pub fn is_balanced(phi: &GainGraph) -> Result<bool> {
    let orientation = SuitableOrientation::from_root(phi.graph(), 0)?;
    let sig = class_signature(phi, &orientation)?;
    Ok(sig
        .angles()
        .iter()
        .all(|&a| circle_distance(a, 0.0) <= ANGLE_TOL))
}

/// Build a member of the switching class with the given signature: tree
/// edges carry the supplied gains (in ancestor-to-descendant direction),
/// and each non-tree edge receives the target cycle gain divided by the
/// gain of the rest of its fundamental cycle.
///
/// `tree_gains` must assign a gain to exactly the tree edges, keyed by
/// (parent, child). Varying `tree_gains` sweeps out switching-equivalent,
/// cospectral representatives of the same class.
pub fn construct_representative(
    orientation: &SuitableOrientation,
    signature_angles: &[f64],
    tree_gains: &BTreeMap<(usize, usize), Gain>,
) -> Result<GainGraph> {
    let basis = orientation.fundamental_cycles();
    if signature_angles.len() != basis.len() {
        return Err(GainGraphError::SignatureLength {
            expected: basis.len(),
            found: signature_angles.len(),
        });
    }
    let tree_edges = orientation.tree().tree_edges();
    if tree_gains.len() != tree_edges.len()
        || !tree_edges.iter().all(|e| tree_gains.contains_key(e))
    {
        return Err(GainGraphError::TreeGainCover);
    }
    let mut oriented: Vec<(usize, usize, Gain)> = tree_edges
        .iter()
        .map(|&(p, c)| (p, c, tree_gains[&(p, c)]))
        .collect();
    for (j, cycle) in basis.cycles().iter().enumerate() {
        // The cycle is the descending tree path followed by the non-tree
        // arc, so everything except the last edge is already assigned.
        let path_angle: f64 = cycle[..cycle.len() - 1]
            .iter()
            .map(|&(u, v)| tree_gains[&(u, v)].angle())
            .sum();
        let (u, v) = cycle[cycle.len() - 1];
        oriented.push((u, v, Gain::from_angle(signature_angles[j] - path_angle)));
    }
    let result = GainGraph::new(orientation.graph().clone(), &oriented)?;
    let sig = class_signature(&result, orientation)?;
    for (&got, &want) in sig.angles().iter().zip(signature_angles) {
        if circle_distance(got, want) > ANGLE_TOL {
            return Err(GainGraphError::NumericalConsistency(
                "representative signature drifted from the target".into(),
            ));
        }
    }
    Ok(result)
}
