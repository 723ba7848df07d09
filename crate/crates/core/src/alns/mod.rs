//! Adaptive large neighbourhood search over sprayer routes.

mod accept;
mod config;
mod destroy;
mod pool;
mod repair;
mod run;
mod weights;

pub use accept::{accept, acceptance_probability, initial_temperature, temperature};
pub use config::{AlnsConfig, LocalSearchStrategy};
pub use destroy::{
    position_costs, refill_neighbours, subtour_after, subtour_before, zone_nodes, DestroyOp,
    Destroyer, Removal,
};
pub use pool::ArcPool;
pub use repair::{repair, RepairOp};
pub(crate) use run::run_restricted;
pub use run::{run, AlnsOutcome, TraceRow};
pub use weights::{update_weights, OperatorStat, OperatorStats};
