//! Adjacency matrices of gain graphs, their spectra, and two independent
//! characteristic-polynomial computations.
//!
//! The coefficient route through elementary subgraphs only sees the real
//! parts of cycle gains, which is what ties cospectrality to cycle
//! structure; the trace-recurrence route works straight off the matrix.
//! Tests play the two against each other.

use num_complex::Complex64;

use crate::eig::hermitian_eigenvalues;
use crate::error::{GainGraphError, Result};
use crate::graph::GainGraph;
use crate::spanning::gain_of_cycle;
use crate::structure::{cycle_edges, enumerate_cycles, CYCLE_LIMIT};
use crate::switching::is_balanced;

/// Tolerance for spectrum comparisons.
pub const SPECTRUM_TOL: f64 = 1e-8;

/// Per-coefficient tolerance when comparing characteristic polynomials.
pub const COEFF_TOL: f64 = 1e-6;

/// Imaginary residue allowed when real coefficients are extracted from
/// complex arithmetic.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Edge-count guard for the elementary-subgraph enumeration; sized for
/// graphs on up to a dozen vertices.
pub const ELEMENTARY_EDGE_LIMIT: usize = 66;

/// A square complex matrix, validated Hermitian at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<HermitianMatrix> {
        assert_eq!(data.len(), n * n, "matrix data must be n^2 entries");
        let scale = data
            .iter()
            .map(|c| c.norm())
            .fold(1.0f64, f64::max);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let delta = (data[i * n + j] - data[j * n + i].conj()).norm();
                worst = worst.max(delta);
            }
        }
        if worst > 1e-12 * scale {
            return Err(GainGraphError::NotHermitian(worst));
        }
        Ok(HermitianMatrix { n, data })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entry(i, i).re).sum()
    }

    /// All eigenvalues, sorted descending, residual-verified internally.
    /// The sum is additionally checked against the trace.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let values = hermitian_eigenvalues(self.n, &self.data)?;
        let sum: f64 = values.iter().sum();
        let scale = self
            .data
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
            .max(1.0);
        if (sum - self.trace()).abs() > SPECTRUM_TOL * scale {
            return Err(GainGraphError::NumericalConsistency(
                "eigenvalue sum does not match the trace".into(),
            ));
        }
        Ok(Spectrum { values })
    }
}

/// Real eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.values[0]
    }

    pub fn lambda_min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Spectral radius: for a Hermitian matrix this is
    /// `max(|lambda_max|, |lambda_min|)`.
    pub fn spectral_radius(&self) -> f64 {
        self.lambda_max().abs().max(self.lambda_min().abs())
    }

    /// Sorted pairing comparison within `tol`.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// The adjacency matrix of a gain graph: entry `(s, t)` is the gain of the
/// oriented edge from s to t. Hermitian with zero diagonal by
/// construction.
pub fn adjacency_matrix(phi: &GainGraph) -> HermitianMatrix {
    let n = phi.graph().vertex_count();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, v) in phi.graph().edges() {
        let g = phi.gain(u, v).to_complex();
        data[u * n + v] = g;
        data[v * n + u] = g.conj();
    }
    HermitianMatrix::new(n, data).expect("gain adjacency matrices are Hermitian")
}

/// Monic characteristic polynomial `x^n + a_1 x^{n-1} + ... + a_n`,
/// stored as the coefficient vector `(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn new(coeffs: Vec<f64>) -> CharPoly {
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `(a_1, ..., a_n)`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 1.0;
        for &a in &self.coeffs {
            acc = acc * x + a;
        }
        acc
    }

    pub fn approx_eq(&self, other: &CharPoly, tol: f64) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// All complex roots by simultaneous (Durand-Kerner) iteration. This
    /// is an independent route from the eigensolver, which lets the tests
    /// cross-check one against the other.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let radius = 1.0 + self.coeffs.iter().map(|a| a.abs()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n)
            .map(|j| seed.powu(j as u32 + 1) * radius)
            .collect();
        let eval = |x: Complex64| {
            let mut acc = Complex64::new(1.0, 0.0);
            for &a in &self.coeffs {
                acc = acc * x + a;
            }
            acc
        };
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for j in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for k in 0..n {
                    if k != j {
                        denom *= z[j] - z[k];
                    }
                }
                if denom.norm() < 1e-300 {
                    continue;
                }
                let delta = eval(z[j]) / denom;
                z[j] -= delta;
                moved = moved.max(delta.norm());
            }
            if moved < 1e-13 * radius.max(1.0) {
                break;
            }
        }
        z
    }

    /// Real parts of the roots sorted descending, after checking the
    /// imaginary parts are negligible.
    pub fn real_roots_sorted(&self, imag_tol: f64) -> Result<Vec<f64>> {
        let roots = self.roots();
        let scale = 1.0 + self.coeffs.iter().map(|a| a.abs()).fold(0.0, f64::max);
        for r in &roots {
            if r.im.abs() > imag_tol * scale {
                return Err(GainGraphError::NumericalConsistency(format!(
                    "complex root residue {:.3e} for a Hermitian-derived polynomial",
                    r.im.abs()
                )));
            }
        }
        let mut reals: Vec<f64> = roots.iter().map(|r| r.re).collect();
        reals.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));
        Ok(reals)
    }
}

/// Characteristic polynomial via the trace recurrence
/// (Faddeev-LeVerrier): `M_1 = A`, `c_k = -tr(M_k)/k`,
/// `M_{k+1} = A (M_k + c_k I)`. Coefficients of a Hermitian matrix are
/// real; the imaginary residue is checked against a threshold before
/// being discarded.
pub fn char_poly_from_matrix(matrix: &HermitianMatrix) -> Result<CharPoly> {
    let n = matrix.order();
    let mut m: Vec<Complex64> = matrix.data().to_vec();
    let mut coeffs_c: Vec<Complex64> = Vec::with_capacity(n);
    for k in 1..=n {
        let trace: Complex64 = (0..n).map(|i| m[i * n + i]).sum();
        let c = -trace / k as f64;
        coeffs_c.push(c);
        if k == n {
            break;
        }
        // M <- A (M + c I)
        for i in 0..n {
            m[i * n + i] += c;
        }
        let mut next = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for l in 0..n {
                let a_il = matrix.entry(i, l);
                if a_il.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += a_il * m[l * n + j];
                }
            }
        }
        m = next;
    }
    let scale = coeffs_c
        .iter()
        .map(|c| c.norm())
        .fold(1.0f64, f64::max);
    for c in &coeffs_c {
        if c.im.abs() > IMAG_RESIDUE_TOL * scale {
            return Err(GainGraphError::NumericalConsistency(format!(
                "imaginary residue {:.3e} in a characteristic polynomial coefficient",
                c.im.abs()
            )));
        }
    }
    Ok(CharPoly::new(coeffs_c.iter().map(|c| c.re).collect()))
}

/// Characteristic polynomial via elementary subgraphs: the coefficient of
/// `x^{n-i}` sums `(-1)^{components} 2^{cycles} prod Re(cycle gain)` over
/// all subgraphs on `i` vertices whose components are single edges or
/// cycles.
pub fn char_poly_elementary(phi: &GainGraph) -> Result<CharPoly> {
    char_poly_elementary_with_limit(phi, ELEMENTARY_EDGE_LIMIT)
}

pub fn char_poly_elementary_with_limit(phi: &GainGraph, max_edges: usize) -> Result<CharPoly> {
    let graph = phi.graph();
    let n = graph.vertex_count();
    if graph.edge_count() > max_edges {
        return Err(GainGraphError::Capacity {
            what: "edge count for elementary subgraph enumeration",
            limit: max_edges,
        });
    }
    assert!(n <= 64, "bitmask enumeration supports up to 64 vertices");
    let cycles = enumerate_cycles(graph, CYCLE_LIMIT)?;
    // Vertex masks and real cycle-gain parts, in canonical cycle order.
    let mut cycle_masks = Vec::with_capacity(cycles.len());
    let mut cycle_weights = Vec::with_capacity(cycles.len());
    for c in &cycles {
        let mask = c.iter().fold(0u64, |m, &v| m | (1 << v));
        let gain = gain_of_cycle(phi, &cycle_edges(c))?;
        cycle_masks.push(mask);
        cycle_weights.push(gain.real_part());
    }
    let adj_masks: Vec<u64> = (0..n)
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .fold(0u64, |m, &w| m | (1 << w))
        })
        .collect();

    let mut coeffs = vec![0.0f64; n + 1];
    // Enumerate sets of pairwise vertex-disjoint cycles in canonical
    // order, then count matchings of every size on the leftover vertices.
    let mut stack: Vec<(usize, u64, usize, f64)> = vec![(0, 0, 0, 1.0)];
    while let Some((start, used, cycle_count, weight)) = stack.pop() {
        let free = !used;
        let match_counts = count_matchings_by_size(&adj_masks, free & ((1u64 << n) - 1));
        let base_vertices = used.count_ones() as usize;
        let base_sign = if cycle_count % 2 == 0 { 1.0 } else { -1.0 };
        let cycle_factor = (1u64 << cycle_count) as f64 * weight;
        for (j, &count) in match_counts.iter().enumerate() {
            let i = base_vertices + 2 * j;
            if i == 0 || count == 0 {
                continue;
            }
            let sign = if j % 2 == 0 { base_sign } else { -base_sign };
            coeffs[i] += sign * cycle_factor * count as f64;
        }
        for idx in start..cycle_masks.len() {
            if cycle_masks[idx] & used == 0 {
                stack.push((
                    idx + 1,
                    used | cycle_masks[idx],
                    cycle_count + 1,
                    weight * cycle_weights[idx],
                ));
            }
        }
    }
    Ok(CharPoly::new(coeffs[1..].to_vec()))
}

/// Number of matchings of each size (by edge count) among the vertices of
/// `mask`; entry 0 counts the empty matching.
fn count_matchings_by_size(adj_masks: &[u64], mask: u64) -> Vec<u64> {
    if mask == 0 {
        return vec![1];
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << v);
    // v stays unmatched (outside the subgraph).
    let mut counts = count_matchings_by_size(adj_masks, rest);
    // v matched to one of its available neighbors.
    let mut nbrs = adj_masks[v] & rest;
    while nbrs != 0 {
        let w = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        let sub = count_matchings_by_size(adj_masks, rest & !(1u64 << w));
        if counts.len() < sub.len() + 1 {
            counts.resize(sub.len() + 1, 0);
        }
        for (j, &c) in sub.iter().enumerate() {
            counts[j + 1] += c;
        }
    }
    counts
}

/// Spectral quantities of a gain graph together with the bound checks.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub lambda1: f64,
    pub rho: f64,
    pub max_degree: usize,
    pub rho_underlying: f64,
    /// `rho / lambda1`, when the largest eigenvalue is positive.
    pub ratio: Option<f64>,
    pub nonneg_real_part: bool,
    pub rho_le_delta: bool,
    pub rho_le_rho_underlying: bool,
    /// `lambda1 <= rho <= 3 lambda1`. Guaranteed under nonnegative real
    /// part; recorded as conjecture evidence otherwise.
    pub ratio_bounds_hold: bool,
}

/// Compute the spectral radius bounds for a connected gain graph. The
/// degree bound and the underlying-graph bound always hold and are
/// enforced; the `lambda1`-sandwich is enforced only under the
/// nonnegative-real-part hypothesis and reported otherwise.
pub fn bounds_report(phi: &GainGraph) -> Result<BoundsReport> {
    if !phi.graph().is_connected() {
        return Err(GainGraphError::Disconnected);
    }
    let spectrum = adjacency_matrix(phi).eigenvalues()?;
    let underlying = adjacency_matrix(&GainGraph::all_ones(phi.graph().clone())).eigenvalues()?;
    let lambda1 = spectrum.lambda_max();
    let rho = spectrum.spectral_radius();
    let max_degree = phi.graph().max_degree();
    let rho_underlying = underlying.spectral_radius();
    let nonneg_real_part = phi.has_nonneg_real_part();
    let rho_le_delta = rho <= max_degree as f64 + SPECTRUM_TOL;
    let rho_le_rho_underlying = rho <= rho_underlying + SPECTRUM_TOL;
    let ratio_bounds_hold =
        lambda1 <= rho + SPECTRUM_TOL && rho <= 3.0 * lambda1 + SPECTRUM_TOL;
    if !rho_le_delta {
        return Err(GainGraphError::NumericalConsistency(format!(
            "spectral radius {rho:.12} exceeds the maximum degree {max_degree}"
        )));
    }
    if !rho_le_rho_underlying {
        return Err(GainGraphError::NumericalConsistency(format!(
            "spectral radius {rho:.12} exceeds the underlying graph's {rho_underlying:.12}"
        )));
    }
    if nonneg_real_part && !ratio_bounds_hold {
        return Err(GainGraphError::NumericalConsistency(format!(
            "largest-eigenvalue sandwich failed with nonnegative real part: lambda1 = {lambda1:.12}, rho = {rho:.12}"
        )));
    }
    Ok(BoundsReport {
        lambda1,
        rho,
        max_degree,
        rho_underlying,
        ratio: (lambda1 > 0.0).then(|| rho / lambda1),
        nonneg_real_part,
        rho_le_delta,
        rho_le_rho_underlying,
        ratio_bounds_hold,
    })
}

/// Both sides of the degree-equality characterization: the spectral
/// equality `rho = max degree` and the structural condition (regular and
/// balanced up to negation). The structural side is authoritative since
/// structure implies equality exactly; `sides_agree` records whether the
/// numerical side concurred within tolerance.
#[derive(Debug, Clone)]
pub struct RhoDeltaVerdict {
    pub rho: f64,
    pub max_degree: usize,
    pub spectral_equal: bool,
    pub regular: bool,
    pub balanced: bool,
    pub antibalanced: bool,
    /// The structural verdict: regular and (balanced or antibalanced).
    pub holds: bool,
    pub sides_agree: bool,
}

pub fn rho_equals_delta(phi: &GainGraph) -> Result<RhoDeltaVerdict> {
    if !phi.graph().is_connected() {
        return Err(GainGraphError::Disconnected);
    }
    let spectrum = adjacency_matrix(phi).eigenvalues()?;
    let rho = spectrum.spectral_radius();
    let max_degree = phi.graph().max_degree();
    let spectral_equal = (rho - max_degree as f64).abs() <= SPECTRUM_TOL;
    let regular = phi.graph().is_regular();
    let balanced = is_balanced(phi)?;
    let antibalanced = is_balanced(&phi.negate())?;
    let holds = regular && (balanced || antibalanced);
    Ok(RhoDeltaVerdict {
        rho,
        max_degree,
        spectral_equal,
        regular,
        balanced,
        antibalanced,
        holds,
        sides_agree: spectral_equal == holds,
    })
}

/// Compare the real parts of ALL cycle gains (not just fundamental ones)
/// of two gain structures on the same graph, within `tol`.
pub fn real_cycle_gains_equal(
    phi1: &GainGraph,
    phi2: &GainGraph,
    tol: f64,
    cycle_limit: usize,
) -> Result<bool> {
    if !phi1.same_underlying_graph(phi2) {
        return Err(GainGraphError::GraphMismatch(
            "cycle-gain comparison needs identical underlying graphs",
        ));
    }
    let cycles = enumerate_cycles(phi1.graph(), cycle_limit)?;
    for c in &cycles {
        let edges = cycle_edges(c);
        let g1 = gain_of_cycle(phi1, &edges)?;
        let g2 = gain_of_cycle(phi2, &edges)?;
        if (g1.real_part() - g2.real_part()).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spectrum of the all-ones gain structure on the same underlying graph.
pub fn underlying_spectrum(phi: &GainGraph) -> Result<Spectrum> {
    adjacency_matrix(&GainGraph::all_ones(phi.graph().clone())).eigenvalues()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gain::{Gain, ANGLE_TOL};
    use crate::graph::SimpleGraph;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn triangle() -> SimpleGraph {
        SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c4() -> SimpleGraph {
        SimpleGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    fn triangle_with_gain(theta: f64) -> GainGraph {
        GainGraph::new(
            triangle(),
            &[
                (0, 1, Gain::from_angle(theta)),
                (1, 2, Gain::ONE),
                (0, 2, Gain::ONE),
            ],
        )
        .unwrap()
    }

    fn c4_with_gain(theta: f64) -> GainGraph {
        GainGraph::new(
            c4(),
            &[
                (0, 1, Gain::from_angle(theta)),
                (1, 2, Gain::ONE),
                (2, 3, Gain::ONE),
                (0, 3, Gain::ONE),
            ],
        )
        .unwrap()
    }

    #[test]
    fn adjacency_entries_follow_the_gains() {
        let g = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let phi = GainGraph::new(g.clone(), &[(0, 1, Gain::from_angle(FRAC_PI_2))]);
        let phi = phi.unwrap();
        let m = adjacency_matrix(&phi);
        assert!((m.entry(0, 1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((m.entry(1, 0) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(m.entry(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn seven_vertex_worked_matrix_round_trips() {
        // Triangle on {0,1,2} and a square on {3,4,5,6} joined by a
        // bridge, with the gains of the worked example.
        let g = SimpleGraph::new(
            7,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 6), (4, 5), (5, 6)],
        )
        .unwrap();
        let phi = GainGraph::new(
            g.clone(),
            &[
                (0, 1, Gain::from_angle(PI)),
                (0, 2, Gain::from_angle(-FRAC_PI_4)),
                (1, 2, Gain::from_angle(FRAC_PI_2)),
                (2, 3, Gain::from_angle(FRAC_PI_2)),
                (3, 4, Gain::ONE),
                (3, 6, Gain::from_angle(-3.0 * FRAC_PI_4)),
                (4, 5, Gain::from_angle(2.0 * PI / 3.0)),
                (5, 6, Gain::from_angle(PI)),
            ],
        )
        .unwrap();
        let m = adjacency_matrix(&phi);
        let s = 1.0 / SQRT_2;
        assert!((m.entry(0, 2) - Complex64::new(s, -s)).norm() < 1e-12);
        assert!((m.entry(2, 0) - Complex64::new(s, s)).norm() < 1e-12);
        assert!((m.entry(4, 5) - Complex64::new(-0.5, 3.0f64.sqrt() / 2.0)).norm() < 1e-12);
        assert!((m.entry(0, 1) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn known_spectra() {
        let p3 = GainGraph::all_ones(SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap());
        let s = adjacency_matrix(&p3).eigenvalues().unwrap();
        assert!(s.approx_eq(
            &Spectrum { values: vec![SQRT_2, 0.0, -SQRT_2] },
            1e-10
        ));

        let k3 = GainGraph::all_ones(triangle());
        let s = adjacency_matrix(&k3).eigenvalues().unwrap();
        assert!(s.approx_eq(
            &Spectrum { values: vec![2.0, -1.0, -1.0] },
            1e-10
        ));

        // The square with cycle gain -1 has doubled eigenvalues +-sqrt(2).
        let s = adjacency_matrix(&c4_with_gain(PI)).eigenvalues().unwrap();
        assert!(s.approx_eq(
            &Spectrum { values: vec![SQRT_2, SQRT_2, -SQRT_2, -SQRT_2] },
            1e-10
        ));
    }

    #[test]
    fn spectral_radius_takes_the_larger_end() {
        let s = Spectrum { values: vec![2.0, -1.0, -1.0] };
        assert_eq!(s.spectral_radius(), 2.0);
        let s = Spectrum { values: vec![1.0, 1.0, -2.0] };
        assert_eq!(s.spectral_radius(), 2.0);
        let s = Spectrum { values: vec![3f64.sqrt(), 0.0, -(3f64.sqrt())] };
        assert!((s.spectral_radius() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn trace_recurrence_on_small_matrices() {
        let k2 = GainGraph::all_ones(SimpleGraph::new(2, &[(0, 1)]).unwrap());
        let p = char_poly_from_matrix(&adjacency_matrix(&k2)).unwrap();
        assert!(p.approx_eq(&CharPoly::new(vec![0.0, -1.0]), 1e-12));

        let p = char_poly_from_matrix(&adjacency_matrix(&GainGraph::all_ones(triangle()))).unwrap();
        assert!(p.approx_eq(&CharPoly::new(vec![0.0, -3.0, -2.0]), 1e-12));

        let p = char_poly_from_matrix(&adjacency_matrix(&triangle_with_gain(FRAC_PI_2))).unwrap();
        assert!(p.approx_eq(&CharPoly::new(vec![0.0, -3.0, 0.0]), 1e-12));
    }

    #[test]
    fn elementary_route_on_cycles() {
        for theta in [0.0, FRAC_PI_2, 1.1, PI, -2.4] {
            let p = char_poly_elementary(&triangle_with_gain(theta)).unwrap();
            let expected = CharPoly::new(vec![0.0, -3.0, -2.0 * theta.cos()]);
            assert!(p.approx_eq(&expected, 1e-12), "theta = {theta}");

            let p = char_poly_elementary(&c4_with_gain(theta)).unwrap();
            let expected = CharPoly::new(vec![0.0, -4.0, 0.0, 2.0 - 2.0 * theta.cos()]);
            assert!(p.approx_eq(&expected, 1e-12), "theta = {theta}");
        }
    }

    #[test]
    fn tree_coefficients_ignore_gains() {
        let t = SimpleGraph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let plain = char_poly_elementary(&GainGraph::all_ones(t.clone())).unwrap();
        let gained = GainGraph::new(
            t.clone(),
            &[
                (0, 1, Gain::from_angle(1.0)),
                (1, 2, Gain::from_angle(-2.0)),
                (1, 3, Gain::from_angle(0.5)),
            ],
        )
        .unwrap();
        let p = char_poly_elementary(&gained).unwrap();
        assert!(p.approx_eq(&plain, 1e-12));
    }

    #[test]
    fn both_routes_agree_and_roots_match_eigenvalues() {
        let phi = GainGraph::new(
            c4(),
            &[
                (0, 1, Gain::from_angle(0.3)),
                (1, 2, Gain::from_angle(-1.2)),
                (2, 3, Gain::from_angle(2.1)),
                (0, 3, Gain::from_angle(0.9)),
            ],
        )
        .unwrap();
        let p1 = char_poly_elementary(&phi).unwrap();
        let p2 = char_poly_from_matrix(&adjacency_matrix(&phi)).unwrap();
        assert!(p1.approx_eq(&p2, COEFF_TOL));
        let roots = p1.real_roots_sorted(1e-6).unwrap();
        let eigen = adjacency_matrix(&phi).eigenvalues().unwrap();
        for (r, e) in roots.iter().zip(eigen.values()) {
            assert!((r - e).abs() < 1e-6);
        }
    }

    #[test]
    fn bounds_on_the_three_triangles() {
        let balanced = bounds_report(&triangle_with_gain(0.0)).unwrap();
        assert!((balanced.lambda1 - 2.0).abs() < 1e-9);
        assert!((balanced.rho - 2.0).abs() < 1e-9);
        assert_eq!(balanced.max_degree, 2);

        let negated = bounds_report(&triangle_with_gain(PI)).unwrap();
        assert!((negated.rho - 2.0).abs() < 1e-9);
        assert!((negated.lambda1 - 1.0).abs() < 1e-9);
        assert!((negated.ratio.unwrap() - 2.0).abs() < 1e-9);
        assert!(negated.ratio_bounds_hold);

        let quarter = bounds_report(&triangle_with_gain(FRAC_PI_2)).unwrap();
        assert!((quarter.rho - 3f64.sqrt()).abs() < 1e-9);
        assert!(quarter.rho < 2.0);
    }

    #[test]
    fn degree_equality_verdicts() {
        let v = rho_equals_delta(&GainGraph::all_ones(c4())).unwrap();
        assert!(v.holds && v.spectral_equal && v.regular && v.balanced && v.sides_agree);

        let v = rho_equals_delta(&c4_with_gain(PI)).unwrap();
        assert!(!v.holds && !v.spectral_equal && v.sides_agree);
        assert!(!v.antibalanced);

        let star = GainGraph::all_ones(SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        let v = rho_equals_delta(&star).unwrap();
        assert!(!v.holds && !v.regular && v.balanced);
        assert!((v.rho - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn non_hermitian_data_is_rejected() {
        let data = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(matches!(
            HermitianMatrix::new(2, data),
            Err(GainGraphError::NotHermitian(_))
        ));
    }

    #[test]
    fn elementary_enumeration_guard() {
        let phi = GainGraph::all_ones(c4());
        assert!(matches!(
            char_poly_elementary_with_limit(&phi, 3),
            Err(GainGraphError::Capacity { .. })
        ));
    }

    #[test]
    fn real_cycle_gain_comparison() {
        let a = triangle_with_gain(1.0);
        let b = triangle_with_gain(-1.0);
        assert!(real_cycle_gains_equal(&a, &b, ANGLE_TOL, CYCLE_LIMIT).unwrap());
        let c = triangle_with_gain(0.0);
        let d = triangle_with_gain(FRAC_PI_2);
        assert!(!real_cycle_gains_equal(&c, &d, ANGLE_TOL, CYCLE_LIMIT).unwrap());
    }
}
