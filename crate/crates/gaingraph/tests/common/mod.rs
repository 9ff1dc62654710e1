//! Seeded random instances for the integration suites.

use gaingraph::{Digraph, Gain, GainGraph, SimpleGraph, SwitchingFunction};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph conditioned on connectivity by resampling.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) {
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

/// Uniform random tree from a Pruefer sequence.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    if n == 1 {
        return SimpleGraph::new(1, &[]).unwrap();
    }
    if n == 2 {
        return SimpleGraph::new(2, &[(0, 1)]).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaf_heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &seq {
        let std::cmp::Reverse(leaf) = leaf_heap.pop().unwrap();
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaf_heap.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaf_heap.pop().unwrap();
    let std::cmp::Reverse(b) = leaf_heap.pop().unwrap();
    edges.push((a, b));
    SimpleGraph::new(n, &edges).unwrap()
}

/// Gains uniform on the whole circle.
pub fn random_gain_graph(rng: &mut ChaCha8Rng, graph: &SimpleGraph) -> GainGraph {
    let gains: Vec<(usize, usize, Gain)> = graph
        .edges()
        .map(|(u, v)| (u, v, Gain::from_angle(rng.gen_range(-PI..PI))))
        .collect();
    GainGraph::new(graph.clone(), &gains).unwrap()
}

/// Gains restricted to angles in `[-pi/2, pi/2]` (nonnegative real part).
pub fn random_gain_graph_nonneg(rng: &mut ChaCha8Rng, graph: &SimpleGraph) -> GainGraph {
    let gains: Vec<(usize, usize, Gain)> = graph
        .edges()
        .map(|(u, v)| (u, v, Gain::from_angle(rng.gen_range(-FRAC_PI_2..=FRAC_PI_2))))
        .collect();
    GainGraph::new(graph.clone(), &gains).unwrap()
}

pub fn random_switching(rng: &mut ChaCha8Rng, n: usize) -> SwitchingFunction {
    SwitchingFunction::new(
        (0..n)
            .map(|_| Gain::from_angle(rng.gen_range(-PI..PI)))
            .collect(),
    )
}

/// Random digraph with a connected underlying graph; each edge becomes a
/// forward arc, a backward arc, or a digon with equal probability.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
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
