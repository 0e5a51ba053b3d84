use super::{check_postulates, table_from_model, Counterexample, Postulate};
use crate::error::{Error, Result};
use crate::frame::{generate_frame, Clause, FrameParams, PointedModel};

/// A frame with a perturbed 4d entry whose contraction breaks (K-7).
#[derive(Debug, Clone)]
pub struct K7Hit {
    pub seed: u64,
    pub model: PointedModel,
    pub counterexample: Counterexample,
}

/// Tries seeds `0..budget` of 4d-dropping generation over two atoms and
/// four states, returning the first frame whose table fails (K-7).
pub fn find_k7_counterexample(budget: u64) -> Result<Option<K7Hit>> {
    let mut params = FrameParams::new(2, 4);
    params.drop_clause = Some(Clause::D);
    for seed in 0..budget {
        let model = match generate_frame(&params, seed) {
            Ok(m) => m,
            Err(Error::GenerationExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        let report = check_postulates(&table_from_model(&model)?)?;
        if let Some(cx) = report.counterexample(Postulate::K7) {
            return Ok(Some(K7Hit { seed, counterexample: cx.clone(), model }));
        }
    }
    Ok(None)
}
