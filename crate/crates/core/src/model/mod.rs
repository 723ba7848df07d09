//! Problem data, solutions, the objective and the feasibility checker.

mod check;
mod instance;
pub(crate) mod objective;
mod solution;

pub use check::{check_feasibility, check_with, ConstraintFamily, Violation, ViolationReport};
pub use instance::{FleetParams, Instance, Node, Point};
pub use objective::{objective, objective_with, ObjectiveBreakdown, WAITING_PENALTY};
pub(crate) use solution::{cost_of, realize_into};
pub use solution::{Schedule, Scored, Solution, Status};

/// Absolute tolerance used when comparing times and quantities.
pub const TOL: f64 = 1e-6;
