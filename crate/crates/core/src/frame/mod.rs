//! Pointed frames and models: states, a serial belief relation, and a
//! selection function over the states believed possible at the actual state.

mod file;
mod generate;
pub mod modal;
mod model;
mod validate;

pub use file::{load_model, model_from_json, model_to_json, save_model};
pub use generate::{generate_frame, FrameParams, DROP_ATTEMPTS, ORDER_RETRIES};
pub use modal::{eval_extended, ModalFormula, NestingError};
pub use model::{ModelParts, PointedModel, Ranking, Selection};
pub use validate::{
    validate_frame, validate_sampled, Clause, ValidationReport, Violation, DEFAULT_SAMPLES, EXHAUSTIVE_STATE_LIMIT,
};
