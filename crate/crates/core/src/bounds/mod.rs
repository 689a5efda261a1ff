//! Upper bounds on the probability of measuring a marked vertex.
//!
//! For a marked component with a stationary assignment `c`, the marked
//! probability at any step is at most
//!
//! ```text
//! 4 a0^2 (sum_directed c^2 + 2 D_out + 2 |E_M|),   a0 = 1/sqrt(2m)
//! ```
//!
//! and the bounds of disjoint components add up.

mod lemma;

use std::fmt;

use num_traits::Float;
use serde::Serialize;

pub use lemma::{lemma_argmax, lemma_brute_force, lemma_maximum, lemma_objective};

use crate::error::{Error, Result};
use crate::graph::{Graph, MarkedComponent, MarkedSet};
use crate::scalar::Scalar;
use crate::stationary::{AssignmentSource, StationaryAssignment};
use crate::walk::{self, WalkState};

/// Largest `t_max` picked by [`default_t_max`].
pub const MAX_DEFAULT_STEPS: usize = 10_000;

/// Bound contribution of one component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentTerm<T> {
    pub component: usize,
    pub directed_square_sum: T,
    pub total_out: usize,
    pub internal_edges: usize,
    pub term: T,
    pub source: AssignmentSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub per_component: Vec<ComponentTerm<T>>,
    pub total_bound: T,
    pub m: usize,
    /// `injected` as soon as any component used an injected assignment.
    pub assignment_source: AssignmentSource,
}

/// Bound for one component:
/// `(2/m) (sum_directed c^2 + 2 D_out + 2 |E_M|)`.
pub fn component_bound<T: Scalar>(
    component: &MarkedComponent,
    assignment: &StationaryAssignment<T>,
    m: usize,
) -> Result<T> {
    if assignment.component().vertices() != component.vertices()
        || assignment.component().internal_edges() != component.internal_edges()
    {
        return Err(Error::ComponentMismatch);
    }
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let a0_sq = T::one() / T::from_count(2 * m);
    let bracket = assignment.directed_square_sum()
        + T::from_count(2 * component.total_out() + 2 * component.internal_edges().len());
    Ok(T::lit(4.0) * a0_sq * bracket)
}

/// Sums the component bounds of disjoint components.
pub fn total_bound<T: Scalar>(
    parts: &[(&MarkedComponent, &StationaryAssignment<T>)],
    m: usize,
) -> Result<BoundReport<T>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut per_component = Vec::with_capacity(parts.len());
    let mut total = T::zero();
    let mut source = AssignmentSource::MinNorm;
    for (id, &(component, assignment)) in parts.iter().enumerate() {
        for &v in component.vertices() {
            if !seen.insert(v) {
                return Err(Error::OverlappingComponents { vertex: v });
            }
        }
        let term = component_bound(component, assignment, m)?;
        total += term;
        if assignment.source() == AssignmentSource::Injected {
            source = AssignmentSource::Injected;
        }
        per_component.push(ComponentTerm {
            component: id,
            directed_square_sum: assignment.directed_square_sum(),
            total_out: component.total_out(),
            internal_edges: component.internal_edges().len(),
            term,
            source: assignment.source(),
        });
    }
    Ok(BoundReport { per_component, total_bound: total, m, assignment_source: source })
}

impl<T: Scalar> fmt::Display for BoundReport<T> {
    /// Key-value text, one block per component.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let source = |s: AssignmentSource| match s {
            AssignmentSource::MinNorm => "min_norm",
            AssignmentSource::Injected => "injected",
        };
        writeln!(f, "m = {}", self.m)?;
        writeln!(f, "total_bound = {:e}", self.total_bound)?;
        writeln!(f, "assignment_source = {}", source(self.assignment_source))?;
        for term in &self.per_component {
            writeln!(f)?;
            writeln!(f, "[component {}]", term.component)?;
            writeln!(f, "directed_square_sum = {:e}", term.directed_square_sum)?;
            writeln!(f, "total_out = {}", term.total_out)?;
            writeln!(f, "internal_edges = {}", term.internal_edges)?;
            writeln!(f, "source = {}", source(term.source))?;
            writeln!(f, "term = {:e}", term.term)?;
        }
        Ok(())
    }
}

/// `10 * diameter^2`, capped at [`MAX_DEFAULT_STEPS`].
pub fn default_t_max(g: &Graph) -> usize {
    let d = g.diameter();
    d.saturating_mul(d).saturating_mul(10).min(MAX_DEFAULT_STEPS)
}

/// Largest marked probability seen over `t_max` steps from the initial state,
/// `p_M(0)` included.
pub fn max_marked_probability_oracle<T: Scalar>(
    g: &Graph,
    marked: &MarkedSet,
    t_max: usize,
) -> Result<T> {
    let mut best = T::zero();
    walk::evolve(g, WalkState::initial(g)?, marked, t_max, |_, p| best = Float::max(best, p))?;
    Ok(best)
}
