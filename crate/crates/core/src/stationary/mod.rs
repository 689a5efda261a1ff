//! Stationary states of the search operator for marked components.
//!
//! A stationary state has amplitude `a` on every arc except the arcs joining
//! two marked vertices, where arc `i -> j` carries `c_ij * a` with
//! `c_ij = c_ji`. Each marked vertex `i` needs its amplitudes to cancel:
//! `sum_j c_ij = -d_out(i)`.

mod io;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::Float;
use serde::{Deserialize, Serialize};

pub use io::{read_assignments, write_assignments};

use crate::error::{Error, Result};
use crate::graph::{Graph, MarkedComponent, MarkedSet};
use crate::scalar::Scalar;
use crate::walk::{self, WalkState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentSource {
    MinNorm,
    Injected,
}

/// Coefficients `c` on the internal edges of one component.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryAssignment<T> {
    coefficients: BTreeMap<(usize, usize), T>,
    scale_a: T,
    component: MarkedComponent,
    source: AssignmentSource,
}

impl<T: Scalar> StationaryAssignment<T> {
    /// Accepts a caller-chosen assignment. Every internal edge needs a
    /// coefficient and the zero-sum constraints must hold.
    pub fn inject(
        component: &MarkedComponent,
        coefficients: impl IntoIterator<Item = ((usize, usize), T)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((u, v), c) in coefficients {
            let key = (u.min(v), u.max(v));
            if component.internal_edges().binary_search(&key).is_err() {
                return Err(Error::ForeignEdge { u: key.0, v: key.1 });
            }
            map.insert(key, c);
        }
        Self::checked(component, map, AssignmentSource::Injected)
    }

    fn checked(
        component: &MarkedComponent,
        coefficients: BTreeMap<(usize, usize), T>,
        source: AssignmentSource,
    ) -> Result<Self> {
        if let Some(&(u, v)) =
            component.internal_edges().iter().find(|e| !coefficients.contains_key(e))
        {
            return Err(Error::MissingCoefficient { u, v });
        }
        let sums = vertex_sums(component, &coefficients);
        for (k, (&v, sum)) in component.vertices().iter().zip(sums).enumerate() {
            let target = -T::from_count(component.d_out()[k]);
            let residual = Float::abs(sum - target);
            let tol = T::lit(T::FEASIBILITY_TOL) * Float::max(T::one(), Float::abs(target));
            if !(residual <= tol) {
                return Err(Error::ConstraintViolated { vertex: v, residual: residual.to_f64_lossy() });
            }
        }
        let mut asg = StationaryAssignment {
            coefficients,
            scale_a: T::zero(),
            component: component.clone(),
            source,
        };
        asg.scale_a = global_scale(component.host_edges(), std::slice::from_ref(&asg));
        if !Float::is_finite(asg.scale_a) {
            return Err(Error::ZeroState);
        }
        Ok(asg)
    }

    /// Coefficients keyed by `(i, j)` with `i < j`.
    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), T> {
        &self.coefficients
    }

    pub fn coefficient(&self, u: usize, v: usize) -> Option<T> {
        self.coefficients.get(&(u.min(v), u.max(v))).copied()
    }

    /// Normalization when this component is the only one in the state.
    pub fn scale_a(&self) -> T {
        self.scale_a
    }

    pub fn component(&self) -> &MarkedComponent {
        &self.component
    }

    pub fn source(&self) -> AssignmentSource {
        self.source
    }

    /// `sum c^2` over ordered pairs, i.e. twice the per-edge sum.
    pub fn directed_square_sum(&self) -> T {
        let s = self.coefficients.values().fold(T::zero(), |acc, &c| acc + c * c);
        s + s
    }

    /// `sum c` over ordered pairs.
    pub fn directed_sum(&self) -> T {
        let s = self.coefficients.values().fold(T::zero(), |acc, &c| acc + c);
        s + s
    }

    /// Largest per-vertex violation of `sum_j c_ij = -d_out(i)`.
    pub fn constraint_residual(&self) -> T {
        let sums = vertex_sums(&self.component, &self.coefficients);
        sums.into_iter()
            .zip(self.component.d_out())
            .fold(T::zero(), |acc, (s, &d)| Float::max(acc, Float::abs(s + T::from_count(d))))
    }
}

fn vertex_sums<T: Scalar>(
    component: &MarkedComponent,
    coefficients: &BTreeMap<(usize, usize), T>,
) -> Vec<T> {
    let mut sums = vec![T::zero(); component.len()];
    for (&(u, v), &c) in coefficients {
        sums[component.index_of(u).unwrap()] += c;
        sums[component.index_of(v).unwrap()] += c;
    }
    sums
}

/// Whether a marked component admits a stationary state: always when it has
/// an odd cycle, otherwise iff both color classes have the same `d_out` sum.
pub fn exists_stationary(component: &MarkedComponent) -> bool {
    match component.side_sums() {
        None => true,
        Some((left, right)) => left == right,
    }
}

/// Minimum-norm least-squares solution of the zero-sum constraints.
#[derive(Debug, Clone)]
pub struct LeastSquares<T> {
    /// One value per entry of `internal_edges()`.
    pub coefficients: Vec<T>,
    /// `|B c - b|_2` with `B` the unoriented incidence matrix and `b = -d_out`.
    pub residual: T,
    pub tolerance: T,
}

impl<T: Scalar> LeastSquares<T> {
    pub fn is_feasible(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Solves `min |c|` over the least-squares minimizers of `B c = -d_out` with a
/// dense SVD of the incidence matrix.
pub fn least_squares<T: Scalar>(component: &MarkedComponent) -> LeastSquares<T> {
    let k = component.len();
    let edges = component.internal_edges();
    let rhs = DVector::from_iterator(k, component.d_out().iter().map(|&d| -T::from_count(d)));
    let rhs_norm = rhs.norm();
    let tolerance = T::lit(T::FEASIBILITY_TOL) * Float::max(T::one(), rhs_norm);

    if edges.is_empty() {
        return LeastSquares { coefficients: Vec::new(), residual: rhs_norm, tolerance };
    }

    let mut incidence = DMatrix::<T>::zeros(k, edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        incidence[(component.index_of(u).unwrap(), e)] = T::one();
        incidence[(component.index_of(v).unwrap(), e)] = T::one();
    }
    let svd = incidence.clone().svd(true, true);
    let largest = svd.singular_values.max();
    let cutoff = largest * T::from_count(k.max(edges.len())) * Float::epsilon() * T::lit(16.0);
    let solution = svd.solve(&rhs, cutoff).expect("U and V^T were computed");
    let residual = (&incidence * &solution - &rhs).norm();

    LeastSquares { coefficients: solution.iter().copied().collect(), residual, tolerance }
}

/// The assignment with the smallest `sum c^2`.
///
/// Fails with [`Error::NoStationaryState`] for bipartite components whose side
/// sums differ. A disagreement between the least-squares feasibility test and
/// [`exists_stationary`] is reported as [`Error::ClassifierDisagreement`].
pub fn solve_min_norm<T: Scalar>(component: &MarkedComponent) -> Result<StationaryAssignment<T>> {
    let exists = exists_stationary(component);
    let ls = least_squares::<T>(component);
    match (exists, ls.is_feasible()) {
        (true, true) => {
            let map = component.internal_edges().iter().copied().zip(ls.coefficients).collect();
            StationaryAssignment::checked(component, map, AssignmentSource::MinNorm)
        }
        (false, false) => {
            let (left, right) = component.side_sums().expect("only bipartite components can fail");
            Err(Error::NoStationaryState { left, right })
        }
        (exists, _) => Err(Error::ClassifierDisagreement {
            exists,
            residual: ls.residual.to_f64_lossy(),
            tolerance: ls.tolerance.to_f64_lossy(),
        }),
    }
}

/// Common amplitude `a` for a state assembled from several components:
/// `1 / sqrt(2m - 2|E_M| + sum_directed c^2)` with both sums over all of them.
pub fn global_scale<T: Scalar>(m: usize, assignments: &[StationaryAssignment<T>]) -> T {
    let internal: usize = assignments.iter().map(|a| a.component.internal_edges().len()).sum();
    let squares = assignments.iter().fold(T::zero(), |acc, a| acc + a.directed_square_sum());
    T::one() / Float::sqrt(T::from_count(2 * m - 2 * internal) + squares)
}

/// Assembles the unit stationary state for a set of disjoint components.
///
/// With no assignments this is the uniform initial state.
pub fn build_state<T: Scalar>(
    g: &Graph,
    assignments: &[StationaryAssignment<T>],
) -> Result<WalkState<T>> {
    if g.arc_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut owner = vec![false; g.vertex_count()];
    for asg in assignments {
        for &v in asg.component.vertices() {
            if v >= g.vertex_count() {
                return Err(Error::UnknownVertex { v, n: g.vertex_count() });
            }
            if std::mem::replace(&mut owner[v], true) {
                return Err(Error::OverlappingComponents { vertex: v });
            }
        }
        for &(u, v) in asg.coefficients.keys() {
            if !g.has_edge(u, v) {
                return Err(Error::ForeignEdge { u, v });
            }
        }
        if asg.component.host_edges() != g.edge_count() {
            return Err(Error::ComponentMismatch);
        }
    }

    let a = global_scale(g.edge_count(), assignments);
    if !Float::is_finite(a) {
        return Err(Error::ZeroState);
    }
    let mut amplitudes = vec![a; g.arc_count()];
    for asg in assignments {
        for (&(u, v), &c) in &asg.coefficients {
            let arc = g.find_arc(u, v).unwrap();
            amplitudes[arc] = c * a;
            amplitudes[g.reverse(arc)] = c * a;
        }
    }
    WalkState::from_amplitudes(g, amplitudes)
}

/// One of the three amplitude conditions that make a state stationary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StationaryCondition {
    /// All arcs leaving unmarked vertices share one amplitude.
    UnmarkedUniform,
    /// Each marked vertex's amplitudes sum to zero.
    MarkedZeroSum,
    /// Every arc carries the same amplitude as its reverse.
    ReversePairsEqual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationarityReport<T> {
    /// `|U' s - s|_inf`.
    pub residual: T,
    /// Spread (max - min) of unmarked amplitudes.
    pub unmarked_spread: T,
    /// Largest `|sum|` of a marked vertex's amplitudes.
    pub marked_sum: T,
    /// Largest `|s(u -> v) - s(v -> u)|`.
    pub pair_mismatch: T,
}

impl<T: Scalar> StationarityReport<T> {
    /// Conditions whose deviation exceeds `tol`.
    pub fn failures(&self, tol: T) -> Vec<StationaryCondition> {
        let mut failed = Vec::new();
        if !(self.unmarked_spread <= tol) {
            failed.push(StationaryCondition::UnmarkedUniform);
        }
        if !(self.marked_sum <= tol) {
            failed.push(StationaryCondition::MarkedZeroSum);
        }
        if !(self.pair_mismatch <= tol) {
            failed.push(StationaryCondition::ReversePairsEqual);
        }
        failed
    }

    pub fn is_stationary(&self, tol: T) -> bool {
        self.residual <= tol
    }
}

/// Measures how far `s` is from being a fixed point of one search step, and
/// checks the amplitude conditions directly.
pub fn verify_stationary<T: Scalar>(
    g: &Graph,
    marked: &MarkedSet,
    s: &WalkState<T>,
) -> StationarityReport<T> {
    let mut stepped = s.clone();
    walk::step(g, &mut stepped, marked);
    let residual = stepped.max_abs_diff(s);
    let amps = s.amplitudes();

    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    let mut marked_sum = T::zero();
    for v in 0..g.vertex_count() {
        let ports = &amps[g.arc_range(v)];
        if marked.contains(v) {
            let sum = ports.iter().fold(T::zero(), |acc, &x| acc + x);
            marked_sum = Float::max(marked_sum, Float::abs(sum));
        } else {
            for &x in ports {
                lo = Float::min(lo, x);
                hi = Float::max(hi, x);
            }
        }
    }
    let unmarked_spread = if hi >= lo { hi - lo } else { T::zero() };
    let pair_mismatch = g
        .reverse_map()
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (a, &b)| Float::max(acc, Float::abs(amps[a] - amps[b])));

    StationarityReport { residual, unmarked_spread, marked_sum, pair_mismatch }
}

/// Inner product of two states on the same graph.
pub fn overlap<T: Scalar>(s1: &WalkState<T>, s2: &WalkState<T>) -> Result<T> {
    if s1.len() != s2.len() {
        return Err(Error::DimensionMismatch { expected: s1.len(), found: s2.len() });
    }
    if !s1.same_graph(s2) {
        return Err(Error::GraphMismatch);
    }
    Ok(s1.amplitudes().iter().zip(s2.amplitudes()).fold(T::zero(), |acc, (&x, &y)| acc + x * y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, marked_components};

    fn component(g: &Graph, marked: &[usize]) -> MarkedComponent {
        let m = MarkedSet::new(g, marked.iter().copied()).unwrap();
        let mut comps = marked_components(g, &m);
        assert_eq!(comps.len(), 1);
        comps.pop().unwrap()
    }

    #[test]
    fn existence_examples() {
        let cycle = generate::cycle(5).unwrap();
        assert!(exists_stationary(&component(&cycle, &[3, 4])));
        let torus = generate::torus2d(5, 5).unwrap();
        assert!(!exists_stationary(&component(&torus, &[12])));
        let k5 = generate::complete(5).unwrap();
        assert!(exists_stationary(&component(&k5, &[1, 2, 3])));
    }

    #[test]
    fn min_norm_on_five_cycle() {
        let g = generate::cycle(5).unwrap();
        let asg = solve_min_norm::<f64>(&component(&g, &[3, 4])).unwrap();
        assert!((asg.coefficient(3, 4).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(asg.source(), AssignmentSource::MinNorm);
    }

    #[test]
    fn min_norm_on_block() {
        let g = generate::torus2d(4, 4).unwrap();
        let asg = solve_min_norm::<f64>(&component(&g, &[5, 6, 9, 10])).unwrap();
        for &c in asg.coefficients().values() {
            assert!((c + 1.0).abs() < 1e-12, "{c}");
        }
        assert!((asg.scale_a() - 1.0 / 64f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn min_norm_on_regular_pair() {
        for d in [3, 4, 5] {
            let g = generate::random_regular(20, d, 11).unwrap();
            let (u, v) = g.edges().next().unwrap();
            let asg = solve_min_norm::<f64>(&component(&g, &[u, v])).unwrap();
            assert!((asg.coefficient(u, v).unwrap() + (d as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn infeasible_single_vertex() {
        let g = generate::path(4).unwrap();
        let err = solve_min_norm::<f64>(&component(&g, &[0])).unwrap_err();
        assert!(matches!(err, Error::NoStationaryState { left: 1, right: 0 }));
        assert_eq!(err.to_string(), "no stationary state: bipartite sums 1 \u{2260} 0");
    }

    #[test]
    fn triangle_solution() {
        // K5, marked triangle: each vertex has two unmarked neighbors, so every c = -1
        let g = generate::complete(5).unwrap();
        let asg = solve_min_norm::<f64>(&component(&g, &[0, 1, 2])).unwrap();
        assert!(asg.coefficients().values().all(|&c| (c + 1.0).abs() < 1e-12));
        assert!(asg.constraint_residual() < 1e-12);
    }

    #[test]
    fn fully_marked_host_has_no_state() {
        let g = generate::path(3).unwrap();
        let err = solve_min_norm::<f64>(&component(&g, &[0, 1, 2])).unwrap_err();
        assert!(matches!(err, Error::ZeroState), "{err}");
    }

    #[test]
    fn inject_validates() {
        let g = generate::torus2d(4, 4).unwrap();
        let comp = component(&g, &[5, 6, 9, 10]);
        let ok = StationaryAssignment::<f64>::inject(
            &comp,
            [((5, 6), 1.0), ((9, 10), 1.0), ((5, 9), -3.0), ((6, 10), -3.0)],
        )
        .unwrap();
        assert!((ok.scale_a() - 1.0 / (4.0f64 * 24.0).sqrt()).abs() < 1e-15);
        assert!(matches!(
            StationaryAssignment::<f64>::inject(&comp, [((5, 6), -1.0), ((9, 10), -1.0), ((5, 9), -1.0)]),
            Err(Error::MissingCoefficient { u: 6, v: 10 })
        ));
        assert!(matches!(
            StationaryAssignment::<f64>::inject(&comp, [((5, 6), 0.0), ((9, 10), -1.0), ((5, 9), -1.0), ((6, 10), -1.0)]),
            Err(Error::ConstraintViolated { .. })
        ));
        assert!(matches!(
            StationaryAssignment::<f64>::inject(&comp, [((4, 5), -1.0)]),
            Err(Error::ForeignEdge { u: 4, v: 5 })
        ));
    }

    #[test]
    fn build_state_without_assignments_is_initial() {
        let g = generate::torus2d(4, 5).unwrap();
        let s = build_state::<f64>(&g, &[]).unwrap();
        assert_eq!(s, WalkState::initial(&g).unwrap());
    }

    #[test]
    fn build_state_rejects_overlap() {
        let g = generate::cycle(6).unwrap();
        let comp = component(&g, &[0, 1]);
        let asg = solve_min_norm::<f64>(&comp).unwrap();
        assert!(matches!(
            build_state(&g, &[asg.clone(), asg]),
            Err(Error::OverlappingComponents { vertex: 0 })
        ));
    }

    #[test]
    fn build_state_rejects_foreign_graph() {
        let g = generate::cycle(6).unwrap();
        let asg = solve_min_norm::<f64>(&component(&g, &[0, 1])).unwrap();
        let other = generate::path(6).unwrap();
        assert!(matches!(build_state(&other, &[asg.clone()]), Err(Error::ComponentMismatch)));
        let shifted = Graph::from_edges(6, &[(0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(matches!(build_state(&shifted, &[asg]), Err(Error::ForeignEdge { u: 0, v: 1 })));
    }

    #[test]
    fn verify_reports_failed_conditions() {
        let g = generate::torus2d(4, 4).unwrap();
        let m = MarkedSet::new(&g, [5]).unwrap();
        let s = WalkState::<f64>::initial(&g).unwrap();
        let report = verify_stationary(&g, &m, &s);
        assert!(report.residual > 0.1);
        assert_eq!(report.failures(1e-12), vec![StationaryCondition::MarkedZeroSum]);
    }

    #[test]
    fn overlap_checks_dimensions() {
        let a = generate::cycle(5).unwrap();
        let b = generate::cycle(6).unwrap();
        let sa = WalkState::<f64>::initial(&a).unwrap();
        let sb = WalkState::<f64>::initial(&b).unwrap();
        assert!(matches!(overlap(&sa, &sb), Err(Error::DimensionMismatch { .. })));
        assert!((overlap(&sa, &sa).unwrap() - 1.0).abs() < 1e-15);
        let e0 = WalkState::<f64>::basis(&a, 0);
        let e1 = WalkState::<f64>::basis(&a, 1);
        assert_eq!(overlap(&e0, &e1).unwrap(), 0.0);
    }

    #[test]
    fn f32_solver() {
        let g = generate::torus2d(4, 4).unwrap();
        let asg = solve_min_norm::<f32>(&component(&g, &[5, 6, 9, 10])).unwrap();
        assert!(asg.coefficients().values().all(|&c| (c + 1.0).abs() < 1e-5));
    }
}
