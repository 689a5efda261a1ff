//! Coined discrete-time quantum walk search on undirected graphs.
//!
//! The crate simulates the search operator `S * C * Q` (flip-flop shift,
//! Grover coin, sign-flip query), builds stationary states for connected
//! components of marked vertices, and evaluates upper bounds on the
//! probability of measuring a marked vertex.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod scalar;
pub mod stationary;
pub mod walk;

pub use bounds::{
    component_bound, default_t_max, lemma_argmax, lemma_brute_force, lemma_maximum, lemma_objective,
    max_marked_probability_oracle, total_bound, BoundReport, ComponentTerm,
};
pub use error::{Error, Result};
pub use graph::{generate, marked_components, Family, Graph, MarkedComponent, MarkedSet};
pub use scalar::Scalar;
pub use stationary::{
    build_state, exists_stationary, least_squares, overlap, solve_min_norm, verify_stationary,
    AssignmentSource, LeastSquares, StationarityReport, StationaryAssignment, StationaryCondition,
};
pub use walk::{
    apply_coin, apply_query, apply_shift, evolve, marked_probability, step, WalkState, Walker,
};

pub type WalkState64 = WalkState<f64>;
pub type WalkState32 = WalkState<f32>;
pub type StationaryAssignment64 = StationaryAssignment<f64>;
pub type StationaryAssignment32 = StationaryAssignment<f32>;
pub type StationarityReport64 = StationarityReport<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundReport32 = BoundReport<f32>;
