//! Instance generation, JSON files and result tables.

mod generate;
mod json;
mod results;

pub use generate::{generate, GeneratorProfile, SizeClass, SPRAYER_CAPACITY};
pub use json::{
    instance_from_json, instance_to_json, load_instance, load_solution, save_instance,
    save_solution, sig9, solution_from_json, solution_to_json, INSTANCE_SCHEMA, SOLUTION_SCHEMA,
};
pub use results::{aggregate, write_results, write_trace, Aggregate, RunRecord};
