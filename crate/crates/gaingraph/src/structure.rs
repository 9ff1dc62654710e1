//! Cycle enumeration and the structural graph classes used by the
//! normalization machinery: fundamental subgraphs, distinguished-edge
//! orderings, and complete-graph-on-four-vertices subdivisions.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{GainGraphError, Result};
use crate::graph::SimpleGraph;
use crate::spanning::{FundamentalCycleBasis, SuitableOrientation};

/// Default limit on the number of simple cycles enumerated.
pub const CYCLE_LIMIT: usize = 200_000;

/// Default limit on the number of fundamental cycles per subgraph in the
/// distinguished-edge-ordering search.
pub const DEP_CYCLE_LIMIT: usize = 12;

type Edge = (usize, usize);

fn undirected(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

/// Every simple cycle of the graph exactly once, as a vertex list in
/// canonical form: smallest vertex first, then the smaller of its two
/// cycle neighbors.
pub fn enumerate_cycles(graph: &SimpleGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = graph.vertex_count();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        let mut path = vec![start];
        on_path[start] = true;
        // Each frame remembers how far through the neighbor list we are.
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            let nbrs = graph.neighbors(v);
            if *idx >= nbrs.len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            let w = nbrs[*idx];
            *idx += 1;
            if w == start && path.len() >= 3 && path[1] < path[path.len() - 1] {
                if cycles.len() >= limit {
                    return Err(GainGraphError::Capacity {
                        what: "simple cycle count",
                        limit,
                    });
                }
                cycles.push(path.clone());
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                stack.push((w, 0));
            }
        }
    }
    Ok(cycles)
}

/// Directed edge sequence of a cycle given as a vertex list.
pub fn cycle_edges(vertices: &[usize]) -> Vec<Edge> {
    let k = vertices.len();
    (0..k).map(|i| (vertices[i], vertices[(i + 1) % k])).collect()
}

/// True when the connected graph has at most one cycle of each length.
pub fn is_in_dn(graph: &SimpleGraph, limit: usize) -> Result<bool> {
    if !graph.is_connected() {
        return Err(GainGraphError::Disconnected);
    }
    let cycles = enumerate_cycles(graph, limit)?;
    let mut per_length: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &cycles {
        *per_length.entry(c.len()).or_insert(0) += 1;
    }
    Ok(per_length.values().all(|&count| count <= 1))
}

/// A maximal collection of fundamental cycles whose summed subgraph meets
/// the spanning tree in a subtree. Distinct fundamental subgraphs are
/// vertex disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSubgraph {
    /// Indices into the fundamental cycle basis.
    pub cycle_indices: Vec<usize>,
    /// Undirected edges of the summed subgraph.
    pub edge_set: BTreeSet<Edge>,
    pub vertex_set: BTreeSet<usize>,
}

/// Partition the fundamental cycles into fundamental subgraphs.
///
/// All vertices of a fundamental cycle lie on its tree path, so the sum of
/// a collection meets the tree in a connected subgraph exactly when the
/// cycles' vertex sets form a connected overlap structure; maximal such
/// collections are the connected components of the share-a-vertex graph.
/// The vertex-disjointness of distinct subgraphs and the contractibility
/// of the whole arrangement to a tree are verified before returning.
pub fn fundamental_subgraphs(
    graph: &SimpleGraph,
    orientation: &SuitableOrientation,
) -> Result<Vec<FundamentalSubgraph>> {
    if graph != orientation.graph() {
        return Err(GainGraphError::GraphMismatch(
            "orientation was built for a different graph",
        ));
    }
    let basis = orientation.fundamental_cycles();
    let k = basis.len();
    let vertex_sets: Vec<BTreeSet<usize>> = basis
        .cycles()
        .iter()
        .map(|cycle| cycle.iter().map(|&(u, _)| u).collect())
        .collect();

    let mut component = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if component[i] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![i];
        component[i] = id;
        let mut queue = VecDeque::from([i]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if component[b] == usize::MAX
                    && !vertex_sets[a].is_disjoint(&vertex_sets[b])
                {
                    component[b] = id;
                    members.push(b);
                    queue.push_back(b);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }

    let subgraphs: Vec<FundamentalSubgraph> = groups
        .into_iter()
        .map(|cycle_indices| {
            let mut edge_set = BTreeSet::new();
            let mut vertex_set = BTreeSet::new();
            for &j in &cycle_indices {
                for &(u, v) in basis.cycle(j) {
                    edge_set.insert(undirected(u, v));
                }
                vertex_set.extend(vertex_sets[j].iter().copied());
            }
            FundamentalSubgraph {
                cycle_indices,
                edge_set,
                vertex_set,
            }
        })
        .collect();

    for (i, a) in subgraphs.iter().enumerate() {
        for b in &subgraphs[i + 1..] {
            if !a.vertex_set.is_disjoint(&b.vertex_set) {
                return Err(GainGraphError::NumericalConsistency(
                    "fundamental subgraphs are not vertex disjoint".into(),
                ));
            }
        }
    }
    verify_contracts_to_tree(graph, &subgraphs)?;
    Ok(subgraphs)
}

/// Contract each fundamental subgraph to a single vertex and confirm the
/// quotient is a tree.
fn verify_contracts_to_tree(
    graph: &SimpleGraph,
    subgraphs: &[FundamentalSubgraph],
) -> Result<()> {
    let n = graph.vertex_count();
    let mut label = vec![usize::MAX; n];
    for (id, s) in subgraphs.iter().enumerate() {
        for &v in &s.vertex_set {
            label[v] = id;
        }
    }
    let mut next = subgraphs.len();
    for l in label.iter_mut() {
        if *l == usize::MAX {
            *l = next;
            next += 1;
        }
    }
    let mut quotient_edges = BTreeSet::new();
    for (u, v) in graph.edges() {
        let (a, b) = (label[u], label[v]);
        if a == b {
            if subgraphs
                .get(a)
                .is_none_or(|s| !s.edge_set.contains(&undirected(u, v)))
            {
                return Err(GainGraphError::NumericalConsistency(
                    "contracted quotient has a self loop".into(),
                ));
            }
            continue;
        }
        if !quotient_edges.insert((a.min(b), a.max(b))) {
            return Err(GainGraphError::NumericalConsistency(
                "contracted quotient has a parallel edge".into(),
            ));
        }
    }
    if next == 0 {
        return Ok(());
    }
    if quotient_edges.len() + 1 != next {
        return Err(GainGraphError::NumericalConsistency(
            "contracted quotient is not a tree".into(),
        ));
    }
    // next vertices, next - 1 edges: a tree iff connected.
    let mut adj = vec![Vec::new(); next];
    for &(a, b) in &quotient_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; next];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    if count != next {
        return Err(GainGraphError::NumericalConsistency(
            "contracted quotient is not connected".into(),
        ));
    }
    Ok(())
}

/// An ordering of a fundamental subgraph's cycles in which every cycle
/// after the first contributes more than one new edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepCertificate {
    /// Cycle indices into the fundamental cycle basis, in order.
    pub ordering: Vec<usize>,
    /// Edges each cycle adds beyond the union of its predecessors. The
    /// first entry is the full length of the opening cycle unless the
    /// ordering extends a subdivision core, in which case every entry
    /// must exceed one.
    pub new_edge_counts: Vec<usize>,
}

fn cycle_edge_sets(
    basis: &FundamentalCycleBasis,
    indices: &[usize],
) -> Vec<BTreeSet<Edge>> {
    indices
        .iter()
        .map(|&j| basis.cycle(j).iter().map(|&(u, v)| undirected(u, v)).collect())
        .collect()
}

/// Search for a distinguished-edge ordering of the subgraph's cycles. With
/// `seed_edges` empty this is the plain property (first cycle free, later
/// cycles need more than one new edge); with `seed_edges` set to a core's
/// edges, every cycle in the ordering must add more than one new edge.
fn dep_search(
    basis: &FundamentalCycleBasis,
    cycle_indices: &[usize],
    seed_edges: &BTreeSet<Edge>,
) -> Result<Option<DepCertificate>> {
    let k = cycle_indices.len();
    if k > DEP_CYCLE_LIMIT {
        return Err(GainGraphError::Capacity {
            what: "fundamental cycles per subgraph",
            limit: DEP_CYCLE_LIMIT,
        });
    }
    if k == 0 {
        return Ok(Some(DepCertificate {
            ordering: Vec::new(),
            new_edge_counts: Vec::new(),
        }));
    }
    let edge_sets = cycle_edge_sets(basis, cycle_indices);
    let strict_from_start = !seed_edges.is_empty();
    let mut failed: HashSet<u32> = HashSet::new();
    let mut ordering = Vec::with_capacity(k);
    let mut counts = Vec::with_capacity(k);

    fn recurse(
        edge_sets: &[BTreeSet<Edge>],
        covered: &mut BTreeSet<Edge>,
        used: u32,
        strict_from_start: bool,
        failed: &mut HashSet<u32>,
        ordering: &mut Vec<usize>,
        counts: &mut Vec<usize>,
    ) -> bool {
        let k = edge_sets.len();
        if ordering.len() == k {
            return true;
        }
        if failed.contains(&used) {
            return false;
        }
        // Greedy front: most new edges first, smallest index on ties.
        let mut candidates: Vec<(usize, usize)> = (0..k)
            .filter(|&i| used & (1 << i) == 0)
            .map(|i| (edge_sets[i].difference(covered).count(), i))
            .collect();
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let require_strict = strict_from_start || !ordering.is_empty();
        for (new_edges, i) in candidates {
            if require_strict && new_edges <= 1 {
                continue;
            }
            let added: Vec<Edge> = edge_sets[i]
                .difference(covered)
                .copied()
                .collect();
            covered.extend(added.iter().copied());
            ordering.push(i);
            counts.push(new_edges);
            if recurse(
                edge_sets,
                covered,
                used | (1 << i),
                strict_from_start,
                failed,
                ordering,
                counts,
            ) {
                return true;
            }
            ordering.pop();
            counts.pop();
            for e in &added {
                covered.remove(e);
            }
        }
        failed.insert(used);
        false
    }

    let mut covered = seed_edges.clone();
    if recurse(
        &edge_sets,
        &mut covered,
        0,
        strict_from_start,
        &mut failed,
        &mut ordering,
        &mut counts,
    ) {
        Ok(Some(DepCertificate {
            ordering: ordering.iter().map(|&i| cycle_indices[i]).collect(),
            new_edge_counts: counts,
        }))
    } else {
        Ok(None)
    }
}

/// Distinguished-edge ordering of a fundamental subgraph, if one exists.
pub fn has_dep(
    subgraph: &FundamentalSubgraph,
    basis: &FundamentalCycleBasis,
) -> Result<Option<DepCertificate>> {
    dep_search(basis, &subgraph.cycle_indices, &BTreeSet::new())
}

/// Recompute a certificate's new-edge counts from scratch and check the
/// distinguished-edge condition. `seed_edges` plays the same role as in
/// the search.
pub fn validate_dep_certificate(
    basis: &FundamentalCycleBasis,
    certificate: &DepCertificate,
    seed_edges: &BTreeSet<Edge>,
) -> bool {
    let strict_from_start = !seed_edges.is_empty();
    let mut covered = seed_edges.clone();
    if certificate.ordering.len() != certificate.new_edge_counts.len() {
        return false;
    }
    for (step, (&j, &count)) in certificate
        .ordering
        .iter()
        .zip(&certificate.new_edge_counts)
        .enumerate()
    {
        let edges: BTreeSet<Edge> = basis
            .cycle(j)
            .iter()
            .map(|&(u, v)| undirected(u, v))
            .collect();
        let new: Vec<Edge> = edges.difference(&covered).copied().collect();
        if new.len() != count {
            return false;
        }
        if (strict_from_start || step > 0) && new.len() <= 1 {
            return false;
        }
        covered.extend(new);
    }
    true
}

/// Three fundamental cycles whose sum is the complete graph on four
/// vertices or a subdivision of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K4PrimeWitness {
    pub cycle_indices: [usize; 3],
    /// The four vertices of degree three in the summed subgraph.
    pub branch_vertices: [usize; 4],
}

/// A path of the subdivision joining two branch vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub ends: (usize, usize),
    /// Interior path, as undirected edges from `ends.0` to `ends.1`.
    pub edges: Vec<Edge>,
}

/// Branch decomposition of a subdivision of the complete graph on four
/// vertices: four degree-3 vertices joined by six internally disjoint
/// paths, one per vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K4PrimeStructure {
    pub branch_vertices: [usize; 4],
    pub branches: Vec<Branch>,
}

/// Decide whether an edge set is the complete graph on four vertices or a
/// subdivision of it, and return its branch decomposition if so.
pub fn k4_prime_structure(edge_set: &BTreeSet<Edge>) -> Option<K4PrimeStructure> {
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edge_set {
        *degree.entry(u).or_insert(0) += 1;
        *degree.entry(v).or_insert(0) += 1;
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut branch_vertices: Vec<usize> = Vec::new();
    for (&v, &d) in &degree {
        match d {
            3 => branch_vertices.push(v),
            2 => {}
            _ => return None,
        }
    }
    if branch_vertices.len() != 4 {
        return None;
    }
    // Walk from each branch vertex through degree-2 chains; every pair of
    // branch vertices must be joined by exactly one branch.
    let branch_set: BTreeSet<usize> = branch_vertices.iter().copied().collect();
    let mut branches: Vec<Branch> = Vec::new();
    let mut used: BTreeSet<Edge> = BTreeSet::new();
    for &start in &branch_vertices {
        for &first in &adj[&start] {
            if used.contains(&undirected(start, first)) {
                continue;
            }
            let mut prev = start;
            let mut cur = first;
            let mut edges = vec![undirected(start, first)];
            while !branch_set.contains(&cur) {
                let next = *adj[&cur].iter().find(|&&w| w != prev)?;
                edges.push(undirected(cur, next));
                prev = cur;
                cur = next;
            }
            if cur == start {
                return None;
            }
            for e in &edges {
                used.insert(*e);
            }
            branches.push(Branch {
                ends: (start, cur),
                edges,
            });
        }
    }
    if branches.len() != 6 || used.len() != edge_set.len() {
        return None;
    }
    let mut pairs: BTreeSet<Edge> = BTreeSet::new();
    for b in &branches {
        if !pairs.insert(undirected(b.ends.0, b.ends.1)) {
            return None;
        }
    }
    Some(K4PrimeStructure {
        branch_vertices: [
            branch_vertices[0],
            branch_vertices[1],
            branch_vertices[2],
            branch_vertices[3],
        ],
        branches,
    })
}

/// Look for three cycles of the subgraph summing to the complete graph on
/// four vertices or one of its subdivisions.
pub fn detect_k4_prime(
    subgraph: &FundamentalSubgraph,
    basis: &FundamentalCycleBasis,
) -> Option<K4PrimeWitness> {
    find_k4_prime_core(subgraph, basis).map(|(indices, structure, _)| K4PrimeWitness {
        cycle_indices: indices,
        branch_vertices: structure.branch_vertices,
    })
}

/// Union of three basis cycles together with its branch decomposition,
/// when that union is a complete-graph-on-four-vertices subdivision.
pub(crate) fn core_structure(
    basis: &FundamentalCycleBasis,
    indices: [usize; 3],
) -> Option<(K4PrimeStructure, BTreeSet<Edge>)> {
    let mut union: BTreeSet<Edge> = BTreeSet::new();
    for &j in &indices {
        union.extend(basis.cycle(j).iter().map(|&(u, v)| undirected(u, v)));
    }
    k4_prime_structure(&union).map(|s| (s, union))
}

fn k4_prime_triples(
    subgraph: &FundamentalSubgraph,
    basis: &FundamentalCycleBasis,
) -> Vec<[usize; 3]> {
    let ids = &subgraph.cycle_indices;
    let mut triples = Vec::new();
    if ids.len() < 3 {
        return triples;
    }
    for a in 0..ids.len() {
        for b in (a + 1)..ids.len() {
            for c in (b + 1)..ids.len() {
                let candidate = [ids[a], ids[b], ids[c]];
                if core_structure(basis, candidate).is_some() {
                    triples.push(candidate);
                }
            }
        }
    }
    triples
}

pub(crate) fn find_k4_prime_core(
    subgraph: &FundamentalSubgraph,
    basis: &FundamentalCycleBasis,
) -> Option<([usize; 3], K4PrimeStructure, BTreeSet<Edge>)> {
    k4_prime_triples(subgraph, basis)
        .into_iter()
        .next()
        .and_then(|indices| {
            core_structure(basis, indices).map(|(structure, union)| (indices, structure, union))
        })
}

/// Per-subgraph normalization certificates.
#[derive(Debug, Clone)]
pub struct SubgraphClassification {
    pub subgraph: FundamentalSubgraph,
    /// Plain distinguished-edge ordering, when one exists.
    pub plain_dep: Option<DepCertificate>,
    /// Subdivision core plus a strict ordering of the remaining cycles.
    pub k4_prime: Option<(K4PrimeWitness, DepCertificate)>,
}

/// Structural classification of a connected graph with respect to a
/// suitable orientation.
#[derive(Debug, Clone)]
pub struct Classification {
    /// Every fundamental subgraph admits a plain distinguished-edge
    /// ordering.
    pub in_f: bool,
    /// Every fundamental subgraph admits either a plain ordering or a
    /// subdivision core with a strict ordering of its remaining cycles.
    pub in_f_prime: bool,
    pub subgraphs: Vec<SubgraphClassification>,
}

/// Classify the graph's fundamental subgraphs for the normalization
/// procedures.
pub fn classify(graph: &SimpleGraph, orientation: &SuitableOrientation) -> Result<Classification> {
    let basis = orientation.fundamental_cycles();
    let subgraphs = fundamental_subgraphs(graph, orientation)?;
    let mut out = Vec::with_capacity(subgraphs.len());
    for subgraph in subgraphs {
        let plain_dep = has_dep(&subgraph, &basis)?;
        let k4_prime = classify_k4_prime(&subgraph, &basis)?;
        out.push(SubgraphClassification {
            subgraph,
            plain_dep,
            k4_prime,
        });
    }
    let in_f = out.iter().all(|s| s.plain_dep.is_some());
    let in_f_prime = out
        .iter()
        .all(|s| s.plain_dep.is_some() || s.k4_prime.is_some());
    Ok(Classification {
        in_f,
        in_f_prime,
        subgraphs: out,
    })
}

fn classify_k4_prime(
    subgraph: &FundamentalSubgraph,
    basis: &FundamentalCycleBasis,
) -> Result<Option<(K4PrimeWitness, DepCertificate)>> {
    // A subgraph can contain several subdivision cores; accept the first
    // whose remaining cycles admit a strict ordering.
    for indices in k4_prime_triples(subgraph, basis) {
        let (structure, core_edges) =
            core_structure(basis, indices).expect("triple was validated");
        let remaining: Vec<usize> = subgraph
            .cycle_indices
            .iter()
            .copied()
            .filter(|j| !indices.contains(j))
            .collect();
        if let Some(cert) = dep_search(basis, &remaining, &core_edges)? {
            return Ok(Some((
                K4PrimeWitness {
                    cycle_indices: indices,
                    branch_vertices: structure.branch_vertices,
                },
                cert,
            )));
        }
    }
    Ok(None)
}
