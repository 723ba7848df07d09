//! Routing for a fleet of capacity-limited sprayers resupplied in the field
//! by one faster tanker, where the amount sprayed at each node is a decision
//! inside a per-node range.
//!
//! The crate holds the model and feasibility checker ([`model`]), the
//! constructive scheduler with its tank-fraction line search
//! ([`schedule`]), two construction heuristics ([`construct`]), adaptive
//! large neighbourhood search ([`alns`]), exact refill and service
//! re-optimization plus the arc-pool phase ([`intensify`]), an exhaustive
//! solver for tiny instances ([`oracle`]), bounds ([`bounds`]), the
//! round-robin field practice ([`baseline`]) and instance, solution and
//! results files ([`io`]). [`matheuristic::solve`] strings the phases
//! together.
//!
//! ```no_run
//! use sstrpvst::io::{generate, GeneratorProfile, SizeClass};
//! use sstrpvst::matheuristic::{solve, SolverConfig};
//!
//! let inst = generate(&GeneratorProfile::new(SizeClass::Small, 2, 1))?;
//! let out = solve(&inst, &SolverConfig::default())?;
//! println!("{:.3}", out.best.total());
//! # Ok::<(), sstrpvst::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per component.

pub mod alns;
pub mod baseline;
pub mod bounds;
pub mod construct;
pub mod error;
mod insertion;
pub mod intensify;
pub mod io;
pub mod lp;
pub mod matheuristic;
pub mod model;
pub mod oracle;
pub mod schedule;

pub use error::{Error, Result};
