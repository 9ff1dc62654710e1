//! Acceptance suite: one test per criterion, each printing a summary
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

use gaingraph::*;
use gaingraph_cli::format::parse_gain_graph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::time::Instant;

const SEVEN_VERTEX_EXAMPLE: &str = "\
gaingraph 7
e 1 2 3.141592653589793
e 1 3 -0.7853981633974483
e 2 3 1.5707963267948966
e 3 4 1.5707963267948966
e 4 5 0
e 4 7 -2.356194490192345
e 5 6 2.0943951023931953
e 6 7 3.141592653589793
";

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = SimpleGraph::new(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn random_gains(rng: &mut ChaCha8Rng, graph: &SimpleGraph, max_abs: f64) -> GainGraph {
    let gains: Vec<(usize, usize, Gain)> = graph
        .edges()
        .map(|(u, v)| (u, v, Gain::from_angle(rng.gen_range(-max_abs..=max_abs))))
        .collect();
    GainGraph::new(graph.clone(), &gains).unwrap()
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    if n <= 2 {
        let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
        return SimpleGraph::new(n, edges).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let std::cmp::Reverse(leaf) = heap.pop().unwrap();
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            heap.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = heap.pop().unwrap();
    let std::cmp::Reverse(b) = heap.pop().unwrap();
    edges.push((a, b));
    SimpleGraph::new(n, &edges).unwrap()
}

fn random_switching(rng: &mut ChaCha8Rng, n: usize) -> SwitchingFunction {
    SwitchingFunction::new(
        (0..n)
            .map(|_| Gain::from_angle(rng.gen_range(-PI..PI)))
            .collect(),
    )
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let graph = random_connected_graph(rng, n, p);
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
    Digraph::new(n, &arcs).unwrap()
}

fn spectrum_of(phi: &GainGraph) -> Spectrum {
    adjacency_matrix(phi).eigenvalues().unwrap()
}

/// Worked seven-vertex example: normalization pins the triangle angles,
/// preserves both cycle gains, and certifies the switching.
#[test]
fn acceptance_01_seven_vertex_normalization() {
    let start = Instant::now();
    let phi = parse_gain_graph(SEVEN_VERTEX_EXAMPLE).unwrap();
    let orientation = SuitableOrientation::from_root(phi.graph(), 0).unwrap();
    let classification = classify(phi.graph(), &orientation).unwrap();
    let normalized = gnrp_with(&phi, &orientation, &classification).unwrap();

    let mut max_abs = 0.0f64;
    for &(u, v) in orientation.edge_order() {
        max_abs = max_abs.max(normalized.gain(u, v).angle().abs());
    }
    assert!(max_abs <= FRAC_PI_2 + 1e-12, "max angle {max_abs}");

    for (u, v) in [(0usize, 1usize), (1, 2), (2, 0)] {
        let angle = normalized.gain(u, v).angle();
        assert!(
            (angle + PI / 12.0).abs() <= 1e-9,
            "triangle edge ({u}, {v}) angle {angle}"
        );
    }

    let triangle = [(0, 1), (1, 2), (2, 0)];
    let square = [(3, 4), (4, 5), (5, 6), (6, 3)];
    let tri_before = gain_of_cycle(&phi, &triangle).unwrap();
    let tri_after = gain_of_cycle(&normalized, &triangle).unwrap();
    assert!(tri_before.approx_eq(Gain::from_angle(-FRAC_PI_4), 1e-9));
    assert!(tri_after.approx_eq(tri_before, 1e-9));
    let sq_before = gain_of_cycle(&phi, &square).unwrap();
    let sq_after = gain_of_cycle(&normalized, &square).unwrap();
    assert!(sq_after.approx_eq(sq_before, 1e-9));

    let cert = are_switching_equivalent(&phi, &normalized, ANGLE_TOL).unwrap();
    assert!(cert.equivalent);
    let witness = cert.witness.unwrap();
    let mapped = phi.apply_switching(&witness).unwrap();
    assert!(mapped.gains_approx_eq(&normalized, 1e-8));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "acceptance 01 seven-vertex-normalization: PASS (max |angle| {:.6}, triangle at -pi/12, cycle gains preserved, witness valid, {:?})",
        max_abs, elapsed
    );
}

/// One hundred members of a single switching class on the complete graph
/// on four vertices are mutually cospectral and equivalent.
#[test]
fn acceptance_02_cospectral_class_construction() {
    let start = Instant::now();
    let mut rng = rng(0xC2);
    let g = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let orientation = SuitableOrientation::from_root(&g, 0).unwrap();
    let target = [PI, FRAC_PI_2, 3.0 * FRAC_PI_2];
    let reps: Vec<GainGraph> = (0..100)
        .map(|_| {
            let tree_gains: BTreeMap<(usize, usize), Gain> = orientation
                .tree()
                .tree_edges()
                .iter()
                .map(|&e| (e, Gain::from_angle(rng.gen_range(-PI..PI))))
                .collect();
            construct_representative(&orientation, &target, &tree_gains).unwrap()
        })
        .collect();
    let spectra: Vec<Spectrum> = reps.iter().map(spectrum_of).collect();
    let mut pairs = 0;
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            assert!(
                spectra[i].approx_eq(&spectra[j], 1e-8),
                "spectra {i} and {j} differ"
            );
            let cert =
                are_switching_equivalent_with(&reps[i], &reps[j], ANGLE_TOL, &orientation)
                    .unwrap();
            assert!(cert.equivalent && cert.witness.is_some(), "pair ({i}, {j})");
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "acceptance 02 cospectral-class-construction: PASS ({pairs} pairs cospectral and equivalent, {elapsed:?})"
    );
}

/// Gains never move the spectrum of a tree.
#[test]
fn acceptance_03_tree_spectrum_invariance() {
    let mut rng = rng(0xC3);
    for i in 0..200 {
        let n = rng.gen_range(2..=12);
        let tree = random_tree(&mut rng, n);
        let phi = random_gains(&mut rng, &tree, PI);
        let gained = spectrum_of(&phi);
        let plain = spectrum_of(&GainGraph::all_ones(tree));
        assert!(gained.approx_eq(&plain, 1e-8), "tree {i}");
    }
    println!("acceptance 03 tree-spectrum-invariance: PASS (200 random trees, n <= 12)");
}

/// The subgraph-expansion coefficients match the trace recurrence, and
/// the polynomial roots match the eigensolver.
#[test]
fn acceptance_04_coefficient_formula_oracle() {
    let mut rng = rng(0xC4);
    let mut worst_coeff = 0.0f64;
    let mut worst_root = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(2..=7);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        let phi = random_gains(&mut rng, &graph, PI);
        let by_subgraphs = char_poly_elementary(&phi).unwrap();
        let by_traces = char_poly_from_matrix(&adjacency_matrix(&phi)).unwrap();
        for (a, b) in by_subgraphs
            .coefficients()
            .iter()
            .zip(by_traces.coefficients())
        {
            let diff = (a - b).abs();
            worst_coeff = worst_coeff.max(diff);
            assert!(diff <= 1e-6);
        }
        let roots = by_subgraphs.real_roots_sorted(1e-6).unwrap();
        let eigen = spectrum_of(&phi);
        for (r, e) in roots.iter().zip(eigen.values()) {
            let diff = (r - e).abs();
            worst_root = worst_root.max(diff);
            assert!(diff <= 1e-6);
        }
    }
    println!(
        "acceptance 04 coefficient-formula-oracle: PASS (500 graphs n <= 7, worst coefficient gap {worst_coeff:.2e}, worst root gap {worst_root:.2e})"
    );
}

/// Degree bound everywhere, and the equality characterization in both
/// directions on crafted suites.
#[test]
fn acceptance_05_degree_bound_and_equality() {
    let mut rng = rng(0xC5);
    for _ in 0..500 {
        let n = rng.gen_range(3..=9);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        let phi = random_gains(&mut rng, &graph, PI);
        let spectrum = spectrum_of(&phi);
        assert!(spectrum.spectral_radius() <= phi.graph().max_degree() as f64 + 1e-8);
    }

    let c5 = SimpleGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
    let k4 = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let petersen = {
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        edges.extend([(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]);
        edges.extend([(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]);
        SimpleGraph::new(10, &edges).unwrap()
    };
    let star = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let paw = SimpleGraph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();

    let negate_all = |g: &SimpleGraph| GainGraph::all_ones(g.clone()).negate();
    let with_one_edge = |g: &SimpleGraph, theta: f64| {
        let (u0, v0) = g.edges().next().unwrap();
        let gains: Vec<(usize, usize, Gain)> = g
            .edges()
            .map(|(u, v)| {
                let angle = if (u, v) == (u0, v0) { theta } else { 0.0 };
                (u, v, Gain::from_angle(angle))
            })
            .collect();
        GainGraph::new(g.clone(), &gains).unwrap()
    };

    // (expected equality, instance)
    let suite: Vec<(bool, GainGraph, &str)> = vec![
        (true, GainGraph::all_ones(c5.clone()), "balanced regular"),
        (true, GainGraph::all_ones(k4.clone()), "balanced regular"),
        (true, GainGraph::all_ones(petersen.clone()), "balanced regular"),
        (true, negate_all(&c5), "antibalanced regular"),
        (true, negate_all(&k4), "antibalanced regular"),
        (false, with_one_edge(&c5, FRAC_PI_2), "unbalanced regular"),
        (false, with_one_edge(&petersen, FRAC_PI_2), "unbalanced regular"),
        (false, GainGraph::all_ones(star), "balanced irregular"),
        (false, GainGraph::all_ones(paw), "balanced irregular"),
    ];
    for (expected, phi, label) in &suite {
        let verdict = rho_equals_delta(phi).unwrap();
        assert_eq!(verdict.holds, *expected, "{label}: structural side");
        assert_eq!(verdict.spectral_equal, *expected, "{label}: spectral side");
        assert!(verdict.sides_agree, "{label}");
    }
    println!(
        "acceptance 05 degree-bound-and-equality: PASS (500 random instances bounded, {} crafted cases agree both ways)",
        suite.len()
    );
}

/// The largest-eigenvalue sandwich: asserted under nonnegative real part,
/// for the k-generalized matrices, and after normalization; probed on
/// unrestricted gains.
#[test]
fn acceptance_06_eigenvalue_sandwich() {
    let mut rng = rng(0xC6);
    // (a) Nonnegative real part.
    for _ in 0..500 {
        let n = rng.gen_range(3..=9);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        let phi = random_gains(&mut rng, &graph, FRAC_PI_2);
        let report = bounds_report(&phi).unwrap();
        assert!(report.nonneg_real_part && report.ratio_bounds_hold);
    }
    // (b) k-generalized matrices of 500 digraphs, k = 1..=5.
    let mut digraph_checks = 0;
    for _ in 0..500 {
        let n = rng.gen_range(3..=8);
        let x = random_digraph(&mut rng, n, 0.5);
        for k in 1..=5 {
            let report = hk_bounds(&x, KHermitianParams::new(k).unwrap()).unwrap();
            assert!(report.ratio_bounds_hold && report.rho_le_delta);
            digraph_checks += 1;
        }
    }
    assert_eq!(digraph_checks, 2500);
    // (c) Supported graphs after normalization.
    let mut normalized = 0;
    while normalized < 100 {
        let n = rng.gen_range(4..=9);
        let graph = random_connected_graph(&mut rng, n, 0.35);
        let orientation = SuitableOrientation::from_root(&graph, 0).unwrap();
        let classification = classify(&graph, &orientation).unwrap();
        if !classification.in_f_prime {
            continue;
        }
        let phi = random_gains(&mut rng, &graph, PI);
        let result = gnrp_with(&phi, &orientation, &classification).unwrap();
        let report = bounds_report(&result).unwrap();
        assert!(report.nonneg_real_part && report.ratio_bounds_hold);
        normalized += 1;
    }
    // Probe on unrestricted gains: log the worst ratio; a violation would
    // be persisted as a counterexample candidate, not a failure.
    let mut max_ratio = 0.0f64;
    let mut candidates = Vec::new();
    for i in 0..1000 {
        let n = rng.gen_range(3..=10);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        let phi = random_gains(&mut rng, &graph, PI);
        let spectrum = spectrum_of(&phi);
        let ratio = spectrum.spectral_radius() / spectrum.lambda_max();
        max_ratio = max_ratio.max(ratio);
        if ratio > 3.0 + 1e-8 {
            let path = std::env::temp_dir().join(format!("gaingraph-candidate-{i}.gg"));
            std::fs::write(&path, gaingraph_cli::format::write_gain_graph(&phi)).unwrap();
            candidates.push(path);
        }
    }
    for c in &candidates {
        println!("  counterexample candidate persisted: {}", c.display());
    }
    println!(
        "acceptance 06 eigenvalue-sandwich: PASS (500 nonnegative + 500 digraphs x k=1..5 + 100 normalized asserted; probe max ratio {max_ratio:.6} over 1000 unrestricted, {} candidates)",
        candidates.len()
    );
}

/// Conjugating a class signature entry-wise preserves the spectrum.
#[test]
fn acceptance_07_conjugate_classes() {
    let mut rng = rng(0xC7);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(4..=8);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        if graph.cyclomatic_number() == 0 {
            continue;
        }
        let orientation = SuitableOrientation::from_root(&graph, 0).unwrap();
        let len = orientation.fundamental_cycles().len();
        let target: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..TAU)).collect();
        let conjugate: Vec<f64> = target.iter().map(|&r| (TAU - r).rem_euclid(TAU)).collect();
        let tree_gains = |rng: &mut ChaCha8Rng| -> BTreeMap<(usize, usize), Gain> {
            orientation
                .tree()
                .tree_edges()
                .iter()
                .map(|&e| (e, Gain::from_angle(rng.gen_range(-PI..PI))))
                .collect()
        };
        let rep = construct_representative(&orientation, &target, &tree_gains(&mut rng)).unwrap();
        let conj_rep =
            construct_representative(&orientation, &conjugate, &tree_gains(&mut rng)).unwrap();
        assert!(spectrum_of(&rep).approx_eq(&spectrum_of(&conj_rep), 1e-8));
        done += 1;
    }
    println!("acceptance 07 conjugate-classes: PASS (100 random signature pairs cospectral)");
}

/// On graphs with at most one cycle of each length, cospectrality is
/// exactly agreement of the real parts of all cycle gains.
#[test]
fn acceptance_08_spectrum_determined_by_cycle_gains() {
    let mut rng = rng(0xC8);
    let mut done = 0;
    let mut cospectral_pairs = 0;
    while done < 100 {
        let n = rng.gen_range(4..=10);
        let graph = random_connected_graph(&mut rng, n, 2.2 / n as f64);
        if graph.cyclomatic_number() == 0 || !is_in_dn(&graph, CYCLE_LIMIT).unwrap() {
            continue;
        }
        let phi1 = random_gains(&mut rng, &graph, PI);
        let phi2 = match done % 3 {
            // Conjugate gains: equal real parts on every cycle.
            0 => {
                let gains: Vec<(usize, usize, Gain)> = graph
                    .edges()
                    .map(|(u, v)| (u, v, phi1.gain(u, v).inverse()))
                    .collect();
                GainGraph::new(graph.clone(), &gains).unwrap()
            }
            // Switched copy: identical cycle gains.
            1 => phi1
                .apply_switching(&random_switching(&mut rng, n))
                .unwrap(),
            // Independent gains: generically different.
            _ => random_gains(&mut rng, &graph, PI),
        };
        let p1 = char_poly_from_matrix(&adjacency_matrix(&phi1)).unwrap();
        let p2 = char_poly_from_matrix(&adjacency_matrix(&phi2)).unwrap();
        let cospectral = p1.approx_eq(&p2, 1e-6);
        let real_equal = real_cycle_gains_equal(&phi1, &phi2, 1e-9, CYCLE_LIMIT).unwrap();
        assert_eq!(
            cospectral, real_equal,
            "biconditional failed on instance {done}"
        );
        if cospectral {
            cospectral_pairs += 1;
        }
        done += 1;
    }
    assert!((30..100).contains(&cospectral_pairs));
    println!(
        "acceptance 08 spectrum-determined-by-cycle-gains: PASS (100 pairs, {cospectral_pairs} cospectral, biconditional exact)"
    );
}

fn random_permutation(rng: &mut ChaCha8Rng, s: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..s).collect();
    p.shuffle(rng);
    p
}

fn generate_structure_a(rng: &mut ChaCha8Rng, k: usize) -> (Digraph, StructurePartition) {
    let params = KHermitianParams::new(k).unwrap();
    let c = params.class_count();
    loop {
        let s = rng.gen_range(1..=2);
        let sizes = vec![s; c];
        let with_digons = s >= 2 && rng.gen_bool(0.5);
        let mut digons = Vec::new();
        let mut arcs = Vec::new();
        for p in 0..c {
            let q = (p + 1) % c;
            for (i, &j) in random_permutation(rng, s).iter().enumerate() {
                arcs.push((p * s + i, q * s + j));
            }
            if with_digons && s == 2 {
                digons.push((p * s, p * s + 1));
            }
        }
        let x = build_structure(StructureKind::A, &sizes, &digons, &arcs, params).unwrap();
        if !x.is_weakly_connected() {
            continue;
        }
        let assignment: Vec<usize> = (0..c * s).map(|v| v / s).collect();
        return (
            x,
            StructurePartition {
                kind: StructureKind::A,
                class_count: c,
                assignment,
            },
        );
    }
}

fn generate_structure_b(rng: &mut ChaCha8Rng, k: usize) -> (Digraph, StructurePartition) {
    let params = KHermitianParams::new(k).unwrap();
    let c = params.class_count();
    loop {
        let s = rng.gen_range(1..=2);
        let sizes = vec![s; c];
        let mut digons = Vec::new();
        let mut arcs = Vec::new();
        for m in 0..(k + 1) {
            let q = m + k + 1;
            for (i, &j) in random_permutation(rng, s).iter().enumerate() {
                digons.push((m * s + i, q * s + j));
            }
        }
        for m in 0..c {
            let q = (m + k + 2) % c;
            for (i, &j) in random_permutation(rng, s).iter().enumerate() {
                arcs.push((m * s + i, q * s + j));
            }
        }
        let x = build_structure(StructureKind::B, &sizes, &digons, &arcs, params).unwrap();
        if !x.is_weakly_connected() {
            continue;
        }
        // Keep only strictly antibalanced instances so the recovered
        // kind is unambiguous.
        if is_balanced(&gain_graph_of(&x, params)).unwrap() {
            continue;
        }
        let assignment: Vec<usize> = (0..c * s).map(|v| v / s).collect();
        return (
            x,
            StructurePartition {
                kind: StructureKind::B,
                class_count: c,
                assignment,
            },
        );
    }
}

/// Generated extremal digraphs attain the degree bound and their class
/// partitions are recovered up to rotation; non-extremal digraphs return
/// nothing.
#[test]
fn acceptance_09_structure_round_trip() {
    let mut rng = rng(0xC9);
    for kind in [StructureKind::A, StructureKind::B] {
        for i in 0..50 {
            let k = 1 + i % 3;
            let params = KHermitianParams::new(k).unwrap();
            let (x, expected) = match kind {
                StructureKind::A => generate_structure_a(&mut rng, k),
                StructureKind::B => generate_structure_b(&mut rng, k),
            };
            let spectrum = hk_matrix(&x, params).eigenvalues().unwrap();
            let delta = x.underlying_graph().max_degree() as f64;
            assert!(
                (spectrum.spectral_radius() - delta).abs() <= 1e-8,
                "{kind:?} instance {i}: rho {} vs delta {delta}",
                spectrum.spectral_radius()
            );
            let recovered = verify_structure(&x, params).unwrap().unwrap();
            assert_eq!(recovered.kind, kind, "instance {i}");
            assert!(
                expected.rotation_equivalent(&recovered),
                "{kind:?} instance {i}: {:?} vs {:?}",
                expected.assignment,
                recovered.assignment
            );
        }
    }
    let mut non_extremal = 0;
    while non_extremal < 50 {
        let n = rng.gen_range(3..=8);
        let x = random_digraph(&mut rng, n, 0.5);
        let params = KHermitianParams::new(1 + non_extremal % 3).unwrap();
        let phi = gain_graph_of(&x, params);
        let structural = x.underlying_graph().is_regular()
            && (is_balanced(&phi).unwrap() || is_balanced(&phi.negate()).unwrap());
        if structural {
            continue;
        }
        assert!(verify_structure(&x, params).unwrap().is_none());
        non_extremal += 1;
    }
    println!(
        "acceptance 09 structure-round-trip: PASS (50 + 50 extremal digraphs recovered across k in 1..=3, 50 non-extremal absent)"
    );
}

/// Switching-equivalence decision round trip: switched copies always
/// certify, perturbed signatures never do.
#[test]
fn acceptance_10_equivalence_round_trip() {
    let mut rng = rng(0xCA);
    let mut done = 0;
    while done < 500 {
        let n = rng.gen_range(3..=9);
        let graph = random_connected_graph(&mut rng, n, 0.5);
        if graph.cyclomatic_number() == 0 {
            continue;
        }
        let phi = random_gains(&mut rng, &graph, PI);
        let switched = phi
            .apply_switching(&random_switching(&mut rng, n))
            .unwrap();
        let cert = are_switching_equivalent(&phi, &switched, ANGLE_TOL).unwrap();
        assert!(cert.equivalent);
        let witness = cert.witness.expect("equivalent pairs carry a witness");
        let mapped = phi.apply_switching(&witness).unwrap();
        assert!(mapped.gains_approx_eq(&switched, 1e-7));

        // Perturb one fundamental cycle gain through its non-tree edge.
        let orientation = SuitableOrientation::from_root(&graph, 0).unwrap();
        let non_tree = orientation.non_tree_edges();
        let &(u, v) = non_tree.choose(&mut rng).unwrap();
        let delta = rng.gen_range(1e-3..0.1);
        let gains: Vec<(usize, usize, Gain)> = graph
            .edges()
            .map(|(a, b)| {
                let g = switched.gain(a, b);
                let g = if (a.min(b), a.max(b)) == (u.min(v), u.max(v)) {
                    g.compose(Gain::from_angle(delta))
                } else {
                    g
                };
                (a, b, g)
            })
            .collect();
        let perturbed = GainGraph::new(graph.clone(), &gains).unwrap();
        let cert = are_switching_equivalent(&phi, &perturbed, ANGLE_TOL).unwrap();
        assert!(!cert.equivalent, "instance {done} with delta {delta}");
        done += 1;
    }
    println!(
        "acceptance 10 equivalence-round-trip: PASS (500 switched pairs certified, 500 perturbations rejected)"
    );
}
