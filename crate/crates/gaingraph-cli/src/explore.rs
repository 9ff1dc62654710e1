//! Batch random exploration with reproducible seeding.
//!
//! Random model: Erdos-Renyi graphs with edge probability 1/2,
//! conditioned on connectivity by resampling, vertex count uniform in
//! the requested range, gain angles uniform on `(-pi, pi]`. Digraphs
//! orient each underlying edge uniformly among forward arc, backward arc
//! and digon. Instance i derives its generator from `seed` and `i`
//! alone, so reports are byte-identical across runs and worker counts.

use gaingraph::{
    adjacency_matrix, bounds_report, classify, fundamental_subgraphs, gain_graph_of, gnrp_with,
    hk_bounds, is_in_dn, Digraph, Gain, GainGraph, KHermitianParams, SimpleGraph,
    SuitableOrientation, CYCLE_LIMIT,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::commands::{CliError, CmdResult};
use crate::format::write_gain_graph;
use crate::report::Report;

const EDGE_PROBABILITY: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExploreMode {
    /// Largest-eigenvalue sandwich on unrestricted gains: log the ratio,
    /// persist violations as counterexample candidates.
    Conjecture,
    /// The sandwich under nonnegative real part: guaranteed, asserted.
    ConjectureNonneg,
    /// k-generalized Hermitian matrices of random digraphs.
    HermitianK,
    /// Structural class statistics and normalization spot checks.
    Classes,
}

impl ExploreMode {
    pub fn parse(s: &str) -> Option<ExploreMode> {
        match s {
            "conjecture" => Some(ExploreMode::Conjecture),
            "conjecture-nonneg" => Some(ExploreMode::ConjectureNonneg),
            "hermitian-k" => Some(ExploreMode::HermitianK),
            "classes" => Some(ExploreMode::Classes),
            _ => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            ExploreMode::Conjecture => "conjecture",
            ExploreMode::ConjectureNonneg => "conjecture-nonneg",
            ExploreMode::HermitianK => "hermitian-k",
            ExploreMode::Classes => "classes",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExploreOpts {
    pub mode: ExploreMode,
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
    pub k: usize,
}

/// A counterexample candidate: file name and canonical file content.
pub type Candidate = (String, String);

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(EDGE_PROBABILITY) {
                    edges.push((u, v));
                }
            }
        }
        let g = SimpleGraph::new(n, &edges).expect("generated edges are simple");
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_gains(rng: &mut ChaCha8Rng, graph: &SimpleGraph, max_abs_angle: f64) -> GainGraph {
    let gains: Vec<(usize, usize, Gain)> = graph
        .edges()
        .map(|(u, v)| {
            (
                u,
                v,
                Gain::from_angle(rng.gen_range(-max_abs_angle..=max_abs_angle)),
            )
        })
        .collect();
    GainGraph::new(graph.clone(), &gains).expect("gains cover the edges")
}

pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let graph = random_connected_graph(rng, n);
    let mut arcs = Vec::new();
    for (u, v) in graph.edges() {
        match rng.gen_range(0..3) {
            0 => arcs.push((u, v)),
            1 => arcs.push((v, u)),
            _ => {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
    }
    Digraph::new(n, &arcs).expect("arcs from a simple graph")
}

struct Outcome {
    ratio: Option<f64>,
    violation: Option<String>,
    flags: [bool; 4],
}

pub fn run_explore(opts: ExploreOpts) -> CmdResult<(Report, Vec<Candidate>)> {
    if opts.min_n < 2 || opts.min_n > opts.max_n {
        return Err(CliError::Domain(gaingraph::GainGraphError::Capacity {
            what: "explorer size range",
            limit: opts.max_n,
        }));
    }
    let params = KHermitianParams::new(opts.k.max(1))?;
    let outcomes: Vec<Outcome> = (0..opts.count)
        .into_par_iter()
        .map(|i| run_instance(&opts, params, i))
        .collect();

    let mut report = Report::new("explore");
    report.push_str("mode", opts.mode.name());
    report.push_usize("count", opts.count);
    report.push_usize("min_n", opts.min_n);
    report.push_usize("max_n", opts.max_n);
    report.push_str("seed", opts.seed.to_string());
    if opts.mode == ExploreMode::HermitianK {
        report.push_usize("k", opts.k.max(1));
    }

    let mut candidates = Vec::new();
    let mut violations = 0usize;
    match opts.mode {
        ExploreMode::Conjecture | ExploreMode::ConjectureNonneg | ExploreMode::HermitianK => {
            let mut min_ratio = f64::INFINITY;
            let mut max_ratio = f64::NEG_INFINITY;
            let mut max_index = 0usize;
            for (i, o) in outcomes.iter().enumerate() {
                if let Some(r) = o.ratio {
                    if r < min_ratio {
                        min_ratio = r;
                    }
                    if r > max_ratio {
                        max_ratio = r;
                        max_index = i;
                    }
                }
                if let Some(content) = &o.violation {
                    violations += 1;
                    candidates.push((format!("counterexample-{i}.gg"), content.clone()));
                }
            }
            report.push_float("ratio.min", min_ratio);
            report.push_float("ratio.max", max_ratio);
            report.push_usize("ratio.max_instance", max_index);
            report.push_usize("violations", violations);
            for (name, _) in &candidates {
                report.push_str("counterexample", name);
            }
        }
        ExploreMode::Classes => {
            let mut tallies = [0usize; 4];
            for o in &outcomes {
                for (t, &f) in tallies.iter_mut().zip(&o.flags) {
                    if f {
                        *t += 1;
                    }
                }
                if let Some(content) = &o.violation {
                    violations += 1;
                    candidates.push((format!("counterexample-{violations}.gg"), content.clone()));
                }
            }
            report.push_usize("vertex_disjoint_cycles", tallies[0]);
            report.push_usize("in_f", tallies[1]);
            report.push_usize("in_f_prime", tallies[2]);
            report.push_usize("dn_member", tallies[3]);
            report.push_usize("normalization_failures", violations);
        }
    }
    Ok((report, candidates))
}

fn run_instance(opts: &ExploreOpts, params: KHermitianParams, index: usize) -> Outcome {
    let mut rng = instance_rng(opts.seed, index);
    let n = rng.gen_range(opts.min_n..=opts.max_n);
    match opts.mode {
        ExploreMode::Conjecture | ExploreMode::ConjectureNonneg => {
            let graph = random_connected_graph(&mut rng, n);
            let max_angle = if opts.mode == ExploreMode::Conjecture {
                PI
            } else {
                FRAC_PI_2
            };
            let phi = random_gains(&mut rng, &graph, max_angle);
            conjecture_outcome(&phi, opts.mode == ExploreMode::ConjectureNonneg)
        }
        ExploreMode::HermitianK => {
            let x = random_digraph(&mut rng, n);
            match hk_bounds(&x, params) {
                Ok(report) => Outcome {
                    ratio: report.ratio,
                    violation: (!report.ratio_bounds_hold)
                        .then(|| write_gain_graph(&gain_graph_of(&x, params))),
                    flags: [false; 4],
                },
                Err(_) => Outcome {
                    ratio: None,
                    violation: Some(write_gain_graph(&gain_graph_of(&x, params))),
                    flags: [false; 4],
                },
            }
        }
        ExploreMode::Classes => {
            let graph = random_connected_graph(&mut rng, n);
            classes_outcome(&mut rng, &graph)
        }
    }
}

fn conjecture_outcome(phi: &GainGraph, guaranteed: bool) -> Outcome {
    match bounds_report(phi) {
        Ok(report) => {
            let violated = !report.ratio_bounds_hold;
            Outcome {
                ratio: report.ratio,
                violation: (violated || (guaranteed && !report.nonneg_real_part))
                    .then(|| write_gain_graph(phi)),
                flags: [false; 4],
            }
        }
        // bounds_report only fails on a numerical-consistency breach,
        // which is exactly what deserves persisting.
        Err(_) => Outcome {
            ratio: None,
            violation: Some(write_gain_graph(phi)),
            flags: [false; 4],
        },
    }
}

fn classes_outcome(rng: &mut ChaCha8Rng, graph: &SimpleGraph) -> Outcome {
    let orientation = match SuitableOrientation::from_root(graph, 0) {
        Ok(o) => o,
        Err(_) => {
            return Outcome {
                ratio: None,
                violation: None,
                flags: [false; 4],
            }
        }
    };
    let vertex_disjoint = fundamental_subgraphs(graph, &orientation)
        .map(|subs| subs.iter().all(|s| s.cycle_indices.len() == 1))
        .unwrap_or(false);
    let classification = match classify(graph, &orientation) {
        Ok(c) => c,
        Err(_) => {
            return Outcome {
                ratio: None,
                violation: None,
                flags: [vertex_disjoint, false, false, false],
            }
        }
    };
    let dn = is_in_dn(graph, CYCLE_LIMIT).unwrap_or(false);
    let mut violation = None;
    if classification.in_f_prime {
        // Spot-check the normalization on a random representative.
        let phi = random_gains(rng, graph, PI);
        let ok = gnrp_with(&phi, &orientation, &classification)
            .ok()
            .map(|result| {
                result.has_nonneg_real_part()
                    && adjacency_matrix(&phi)
                        .eigenvalues()
                        .and_then(|a| adjacency_matrix(&result).eigenvalues().map(|b| (a, b)))
                        .map(|(a, b)| a.approx_eq(&b, gaingraph::SPECTRUM_TOL))
                        .unwrap_or(false)
            })
            .unwrap_or(false);
        if !ok {
            violation = Some(write_gain_graph(&phi));
        }
    }
    Outcome {
        ratio: None,
        violation,
        flags: [
            vertex_disjoint,
            classification.in_f,
            classification.in_f_prime,
            dn,
        ],
    }
}
