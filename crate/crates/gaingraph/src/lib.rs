//! Complex unit gain graphs: switching equivalence via fundamental-cycle
//! gain signatures, cospectral class construction, structural
//! classification, constructive normalization of gains to nonnegative
//! real part, spectral-radius bounds, and k-generalized Hermitian
//! adjacency matrices of digraphs.
//!
//! Vertices are indexed `0..n` in this API; the command-line front end
//! speaks 1-based labels. All types are immutable after construction and
//! all operations are pure, so values can be shared freely across
//! threads.

#![forbid(unsafe_code)]

pub mod error;
pub mod gain;
pub mod graph;
pub mod spanning;
pub mod switching;
mod eig;
pub mod spectral;
pub mod structure;
pub mod gnrp;
pub mod hermitian_k;

pub use num_complex::Complex64;

pub use error::{GainGraphError, Result};
pub use gain::{canonical_angle, circle_distance, Gain, ANGLE_TOL};
pub use graph::{Digraph, GainGraph, SimpleGraph, SwitchingFunction};
pub use spanning::{
    gain_of_cycle, gain_of_tree_path, incidence_vector, FundamentalCycleBasis,
    NormalSpanningTree, SuitableOrientation,
};
pub use spectral::{
    adjacency_matrix, bounds_report, char_poly_elementary, char_poly_from_matrix,
    real_cycle_gains_equal, rho_equals_delta, underlying_spectrum, BoundsReport, CharPoly,
    HermitianMatrix, RhoDeltaVerdict, Spectrum, COEFF_TOL, SPECTRUM_TOL,
};
pub use structure::{
    classify, detect_k4_prime, enumerate_cycles, fundamental_subgraphs, has_dep, is_in_dn,
    Classification, DepCertificate, FundamentalSubgraph, K4PrimeWitness, CYCLE_LIMIT,
};
pub use switching::{
    are_switching_equivalent, are_switching_equivalent_with, class_signature,
    construct_representative, is_balanced, ClassSignature, EquivalenceCertificate,
};
pub use gnrp::{
    cycle_layouts, gnrp, gnrp_dep, gnrp_k4, gnrp_vertex_disjoint, gnrp_with, CycleLayout,
};
pub use hermitian_k::{
    build_structure, gain_graph_of, hk_bounds, hk_matrix, verify_structure, KHermitianParams,
    StructureKind, StructurePartition,
};
