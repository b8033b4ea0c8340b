//! Exact best-case solver for fixed points, point pairs and segments.

mod reach;
mod search;

pub use reach::{
    classify_point_type, critical_path, enumerate_sequences, min_lambda, propagate_reach, reach_feasible, CriticalPath,
    Element, LambdaSearch, Outcome, PointType, ReachState, SCase, Shape, SupportSequence, MAX_BISECTION_STEPS,
};
pub use search::{path_bottleneck, solve_exact, ExactOptions, ExactReport, LevelRecord};
