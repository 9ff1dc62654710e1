//! Command implementations shared by the binary and the test suites.
//!
//! Every command takes parsed inputs and returns a [`Report`]; the binary
//! handles files, stdout and exit codes. Vertex labels in reports are
//! 1-based, like the file formats.

use gaingraph::{
    adjacency_matrix, are_switching_equivalent_with, char_poly_elementary, char_poly_from_matrix,
    class_signature, classify, gain_graph_of, gnrp_with, hk_matrix, is_in_dn, rho_equals_delta,
    underlying_spectrum, verify_structure, Digraph, GainGraph, GainGraphError, KHermitianParams,
    StructureKind, SuitableOrientation, CYCLE_LIMIT, SPECTRUM_TOL,
};

use crate::format::ParseError;
use crate::report::Report;

/// Options shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct CommonOpts {
    /// Angle comparison tolerance.
    pub tolerance: f64,
    /// Root vertex for spanning-tree constructions, 0-based.
    pub root: usize,
}

impl Default for CommonOpts {
    fn default() -> Self {
        CommonOpts {
            tolerance: gaingraph::ANGLE_TOL,
            root: 0,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Domain(GainGraphError),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<GainGraphError> for CliError {
    fn from(e: GainGraphError) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CmdResult<T> = Result<T, CliError>;

fn push_spectrum_block(report: &mut Report, prefix: &str, values: &[f64]) {
    report.push_floats(&format!("{prefix}.eigenvalues"), values);
    report.push_float(&format!("{prefix}.lambda1"), values[0]);
    report.push_float(&format!("{prefix}.lambda_min"), values[values.len() - 1]);
    let rho = values[0].abs().max(values[values.len() - 1].abs());
    report.push_float(&format!("{prefix}.rho"), rho);
}

/// Spectrum, spectral radius, degree bounds and both characteristic
/// polynomial routes of a gain graph.
pub fn cmd_spectrum(phi: &GainGraph, _opts: CommonOpts) -> CmdResult<Report> {
    let mut report = Report::new("spectrum");
    let graph = phi.graph();
    report.push_usize("n", graph.vertex_count());
    report.push_usize("m", graph.edge_count());
    report.push_usize("max_degree", graph.max_degree());
    report.push_bool("connected", graph.is_connected());
    let spectrum = adjacency_matrix(phi).eigenvalues()?;
    push_spectrum_block(&mut report, "spectrum", spectrum.values());
    report.push_bool("nonneg_real_part", phi.has_nonneg_real_part());
    match char_poly_from_matrix(&adjacency_matrix(phi)) {
        Ok(p) => report.push_floats("charpoly.traces", p.coefficients()),
        Err(e) => report.push_str("charpoly.traces.skipped", e.to_string()),
    }
    match char_poly_elementary(phi) {
        Ok(p) => report.push_floats("charpoly.subgraphs", p.coefficients()),
        Err(GainGraphError::Capacity { .. }) => {
            report.push_str("charpoly.subgraphs.skipped", "capacity")
        }
        Err(e) => return Err(e.into()),
    }
    if graph.is_connected() {
        let bounds = gaingraph::bounds_report(phi)?;
        report.push_float("bounds.rho_underlying", bounds.rho_underlying);
        if let Some(ratio) = bounds.ratio {
            report.push_float("bounds.ratio", ratio);
        }
        report.push_bool("bounds.rho_le_delta", bounds.rho_le_delta);
        report.push_bool("bounds.rho_le_rho_underlying", bounds.rho_le_rho_underlying);
        report.push_bool("bounds.ratio_bounds_hold", bounds.ratio_bounds_hold);
        let verdict = rho_equals_delta(phi)?;
        report.push_bool("rho_equals_delta", verdict.holds);
        report.push_bool("rho_equals_delta.regular", verdict.regular);
        report.push_bool("rho_equals_delta.balanced", verdict.balanced);
        report.push_bool("rho_equals_delta.antibalanced", verdict.antibalanced);
    }
    Ok(report)
}

/// Switching-equivalence decision with signatures and, when equivalent,
/// the validating switching function.
pub fn cmd_equiv(phi1: &GainGraph, phi2: &GainGraph, opts: CommonOpts) -> CmdResult<Report> {
    let orientation = SuitableOrientation::from_root(phi1.graph(), opts.root)?;
    let cert = are_switching_equivalent_with(phi1, phi2, opts.tolerance, &orientation)?;
    let mut report = Report::new("equiv");
    report.push_usize("n", phi1.graph().vertex_count());
    report.push_usize("m", phi1.graph().edge_count());
    report.push_usize("root", opts.root + 1);
    report.push_floats("signature.first", cert.signature_first.angles());
    report.push_floats("signature.second", cert.signature_second.angles());
    report.push_bool("equivalent", cert.equivalent);
    if let Some(witness) = &cert.witness {
        let angles: Vec<f64> = witness.values().iter().map(|g| g.angle()).collect();
        report.push_floats("witness.angles", &angles);
    }
    Ok(report)
}

/// Structural classification of the underlying graph.
pub fn cmd_classify(phi: &GainGraph, opts: CommonOpts) -> CmdResult<Report> {
    let graph = phi.graph();
    let orientation = SuitableOrientation::from_root(graph, opts.root)?;
    let classification = classify(graph, &orientation)?;
    let mut report = Report::new("classify");
    report.push_usize("n", graph.vertex_count());
    report.push_usize("m", graph.edge_count());
    report.push_usize("root", opts.root + 1);
    report.push_usize("fundamental_cycles", orientation.fundamental_cycles().len());
    match is_in_dn(graph, CYCLE_LIMIT) {
        Ok(member) => report.push_bool("dn_member", member),
        Err(GainGraphError::Capacity { .. }) => report.push_str("dn_member.skipped", "capacity"),
        Err(e) => return Err(e.into()),
    }
    report.push_usize("subgraph_count", classification.subgraphs.len());
    for (i, sub) in classification.subgraphs.iter().enumerate() {
        let key = |suffix: &str| format!("subgraph.{}.{suffix}", i + 1);
        let cycles_1b: Vec<usize> = sub.subgraph.cycle_indices.iter().map(|&c| c + 1).collect();
        report.push_usizes(&key("cycles"), &cycles_1b);
        match &sub.plain_dep {
            Some(cert) => {
                let ordering_1b: Vec<usize> = cert.ordering.iter().map(|&c| c + 1).collect();
                report.push_bool(&key("dep"), true);
                report.push_usizes(&key("dep.ordering"), &ordering_1b);
                report.push_usizes(&key("dep.new_edges"), &cert.new_edge_counts);
            }
            None => report.push_bool(&key("dep"), false),
        }
        match &sub.k4_prime {
            Some((witness, remainder)) => {
                report.push_bool(&key("k4_core"), true);
                let core_1b: Vec<usize> = witness.cycle_indices.iter().map(|&c| c + 1).collect();
                let branch_1b: Vec<usize> =
                    witness.branch_vertices.iter().map(|&v| v + 1).collect();
                report.push_usizes(&key("k4_core.cycles"), &core_1b);
                report.push_usizes(&key("k4_core.branch_vertices"), &branch_1b);
                let rem_1b: Vec<usize> = remainder.ordering.iter().map(|&c| c + 1).collect();
                report.push_usizes(&key("k4_core.remainder"), &rem_1b);
            }
            None => report.push_bool(&key("k4_core"), false),
        }
    }
    report.push_bool("in_f", classification.in_f);
    report.push_bool("in_f_prime", classification.in_f_prime);
    Ok(report)
}

/// Normalize the gains to nonnegative real part; returns the report and
/// the normalized gain graph for the caller to write out.
pub fn cmd_gnrp(phi: &GainGraph, opts: CommonOpts) -> CmdResult<(Report, GainGraph)> {
    let graph = phi.graph();
    let orientation = SuitableOrientation::from_root(graph, opts.root)?;
    let classification = classify(graph, &orientation)?;
    let normalized = gnrp_with(phi, &orientation, &classification)?;
    let cert = are_switching_equivalent_with(phi, &normalized, opts.tolerance, &orientation)?;
    if !cert.equivalent {
        return Err(CliError::Domain(GainGraphError::NumericalConsistency(
            "normalized graph left the switching class".into(),
        )));
    }
    let mut report = Report::new("gnrp");
    report.push_usize("n", graph.vertex_count());
    report.push_usize("m", graph.edge_count());
    report.push_usize("root", opts.root + 1);
    report.push_bool("in_f", classification.in_f);
    report.push_bool("in_f_prime", classification.in_f_prime);
    report.push_floats("signature", cert.signature_first.angles());
    let angles: Vec<f64> = orientation
        .edge_order()
        .iter()
        .map(|&(u, v)| normalized.gain(u, v).angle())
        .collect();
    report.push_floats("normalized.angles", &angles);
    let max_abs = angles.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    report.push_float("normalized.max_abs_angle", max_abs);
    report.push_bool("normalized.nonneg_real_part", normalized.has_nonneg_real_part());
    let witness = cert.witness.as_ref().expect("equivalent certificates carry a witness");
    let witness_angles: Vec<f64> = witness.values().iter().map(|g| g.angle()).collect();
    report.push_floats("witness.angles", &witness_angles);
    Ok((report, normalized))
}

/// k-generalized Hermitian analysis of a digraph.
pub fn cmd_hermitian_k(x: &Digraph, k: usize, _opts: CommonOpts) -> CmdResult<Report> {
    let params = KHermitianParams::new(k)?;
    let mut report = Report::new("hermitian-k");
    report.push_usize("k", k);
    report.push_float("theta", params.theta());
    report.push_usize("n", x.vertex_count());
    report.push_usize("arcs", x.arc_count());
    let underlying = x.underlying_graph();
    report.push_usize("max_degree", underlying.max_degree());
    report.push_bool("weakly_connected", x.is_weakly_connected());
    let spectrum = hk_matrix(x, params).eigenvalues()?;
    push_spectrum_block(&mut report, "spectrum", spectrum.values());
    if x.is_weakly_connected() {
        let bounds = gaingraph::hk_bounds(x, params)?;
        report.push_bool("bounds.rho_le_delta", bounds.rho_le_delta);
        report.push_bool("bounds.ratio_bounds_hold", bounds.ratio_bounds_hold);
        let phi = gain_graph_of(x, params);
        report.push_bool("underlying_balanced", gaingraph::is_balanced(&phi)?);
        let extremal =
            (spectrum.spectral_radius() - underlying.max_degree() as f64).abs() <= SPECTRUM_TOL;
        report.push_bool("extremal", extremal);
        match verify_structure(x, params)? {
            Some(partition) => {
                report.push_str(
                    "structure.kind",
                    match partition.kind {
                        StructureKind::A => "A",
                        StructureKind::B => "B",
                    },
                );
                report.push_usize("structure.classes", partition.class_count);
                report.push_usizes("structure.assignment", &partition.assignment);
            }
            None => report.push_str("structure.kind", "none"),
        }
    }
    Ok(report)
}

/// Signature of a gain graph against a rooted orientation; used by tests
/// and the explorer.
pub fn signature_angles(phi: &GainGraph, root: usize) -> CmdResult<Vec<f64>> {
    let orientation = SuitableOrientation::from_root(phi.graph(), root)?;
    Ok(class_signature(phi, &orientation)?.angles().to_vec())
}

/// Underlying spectrum helper re-exported for the explorer.
pub fn underlying_radius(phi: &GainGraph) -> CmdResult<f64> {
    Ok(underlying_spectrum(phi)?.spectral_radius())
}
