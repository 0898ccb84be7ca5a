//! The Learn subroutine: a soft-margin linear separator fit by deterministic
//! primal subgradient descent on the (optionally weighted) hinge loss with
//! L2 regularization, plus training-error evaluators.

use rand::seq::SliceRandom;

use crate::data::{dot, Dataset, Label, LinearHypothesis, Predictor, WeightedDataset};
use crate::error::{Error, Result};
use crate::seeds;

/// Whether the per-example weight vector participates in training.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Uniform,
    PerExample,
}

#[derive(Debug, Clone)]
pub struct LearnerConfig {
    /// L2 regularization strength (> 0).
    pub regularization: f64,
    /// Number of passes over the data.
    pub epochs: u32,
    pub seed: u64,
    pub weighting: Weighting,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            regularization: 1e-3,
            epochs: 50,
            seed: 0,
            weighting: Weighting::Uniform,
        }
    }
}

impl LearnerConfig {
    fn validate(&self) -> Result<()> {
        if !(self.regularization > 0.0) || !self.regularization.is_finite() {
            return Err(Error::param("regularization", "must be > 0"));
        }
        if self.epochs == 0 {
            return Err(Error::param("epochs", "must be >= 1"));
        }
        Ok(())
    }
}

/// Output of `learn`. `single_class` is set when the dataset carried only
/// one label and the constant classifier for that class was returned.
#[derive(Debug, Clone)]
pub struct LearnResult {
    pub hypothesis: LinearHypothesis,
    pub single_class: Option<Label>,
}

/// Regularized weighted hinge objective
/// (reg/2)||w||^2 + sum_i q_i * max(0, 1 - y_i (w.x_i + b)) / sum_i q_i.
pub fn hinge_objective(
    data: &Dataset,
    weights: Option<&[f64]>,
    regularization: f64,
    hypothesis: &LinearHypothesis,
) -> f64 {
    let w = hypothesis.weights();
    let total: f64 = match weights {
        Some(q) => q.iter().sum(),
        None => data.len() as f64,
    };
    let mut loss = 0.0;
    for (i, ex) in data.examples().iter().enumerate() {
        let margin = ex.label().as_f64() * hypothesis.margin(ex.features());
        let hinge = (1.0 - margin).max(0.0);
        let q = weights.map_or(1.0, |q| q[i]);
        loss += q * hinge;
    }
    0.5 * regularization * dot(w, w) + loss / total
}

/// Trains a linear separator. See `learn_traced` for the variant that also
/// records the objective on the averaged iterate at every epoch end.
pub fn learn(data: &Dataset, weights: Option<&[f64]>, cfg: &LearnerConfig) -> Result<LearnResult> {
    run_learn(data, weights, cfg, false).map(|(result, _)| result)
}

/// Like `learn`, returning the objective value of the averaged iterate at
/// the end of every epoch.
pub fn learn_traced(
    data: &Dataset,
    weights: Option<&[f64]>,
    cfg: &LearnerConfig,
) -> Result<(LearnResult, Vec<f64>)> {
    run_learn(data, weights, cfg, true)
}

fn run_learn(
    data: &Dataset,
    weights: Option<&[f64]>,
    cfg: &LearnerConfig,
    trace_objective: bool,
) -> Result<(LearnResult, Vec<f64>)> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let weights = match cfg.weighting {
        Weighting::Uniform => None,
        Weighting::PerExample => weights,
    };
    if let Some(q) = weights {
        if q.len() != data.len() {
            return Err(Error::DimensionMismatch {
                expected: data.len(),
                found: q.len(),
            });
        }
        if q.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::param("weights", "must be strictly positive"));
        }
    }

    let n = data.len();
    let p = data.dim();

    // single-class data gets the constant classifier for that class
    let first = data.examples()[0].label();
    if data.examples().iter().all(|e| e.label() == first) {
        let hypothesis = LinearHypothesis::new(vec![0.0; p], first.as_f64())?;
        return Ok((
            LearnResult {
                hypothesis,
                single_class: Some(first),
            },
            Vec::new(),
        ));
    }

    let reg = self_or_min(cfg.regularization);
    let total_weight: f64 = weights.map_or(n as f64, |q| q.iter().sum());
    // per-example subgradient scale; 1 for uniform weights
    let scale = |i: usize| -> f64 {
        weights.map_or(1.0, |q| q[i] * n as f64 / total_weight)
    };

    let mut rng = seeds::stream(cfg.seed, 0x5EA2);
    let mut order: Vec<usize> = (0..n).collect();

    let mut w = vec![0.0f64; p];
    let mut b = 0.0f64;
    let mut avg_w = vec![0.0f64; p];
    let mut avg_b = 0.0f64;
    let radius = 1.0 / reg.sqrt();
    let step_offset = n as f64;
    let mut step: u64 = 0;
    let mut curve = Vec::new();

    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            step += 1;
            let eta = 1.0 / (reg * (step as f64 + step_offset));
            let ex = &data.examples()[i];
            let y = ex.label().as_f64();
            let margin = y * (dot(&w, ex.features()) + b);

            let shrink = 1.0 - eta * reg;
            for v in w.iter_mut() {
                *v *= shrink;
            }
            if margin < 1.0 {
                let coef = eta * scale(i) * y;
                for (v, x) in w.iter_mut().zip(ex.features()) {
                    *v += coef * x;
                }
                b += coef;
            }
            // keep the iterate in the ball the regularized optimum lives in
            let norm_sq = dot(&w, &w);
            if norm_sq > radius * radius {
                let factor = radius / norm_sq.sqrt();
                for v in w.iter_mut() {
                    *v *= factor;
                }
            }
        }
        // running average over epoch-end iterates
        let e = epoch as f64;
        for (a, v) in avg_w.iter_mut().zip(w.iter()) {
            *a += (v - *a) / e;
        }
        avg_b += (b - avg_b) / e;
        if trace_objective {
            let snapshot = LinearHypothesis::new(avg_w.clone(), avg_b)?;
            curve.push(hinge_objective(data, weights, reg, &snapshot));
        }
    }

    let hypothesis = LinearHypothesis::new(avg_w, avg_b)?;
    Ok((
        LearnResult {
            hypothesis,
            single_class: None,
        },
        curve,
    ))
}

fn self_or_min(reg: f64) -> f64 {
    reg.max(1e-12)
}

/// Fraction of examples whose prediction disagrees with the label.
pub fn error_rate<P: Predictor>(hypothesis: &P, data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if hypothesis.input_dim() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: hypothesis.input_dim(),
        });
    }
    let wrong = data
        .examples()
        .iter()
        .filter(|e| hypothesis.predict_unchecked(e.features()) != e.label())
        .count();
    Ok(wrong as f64 / data.len() as f64)
}

/// Weight of misclassified examples divided by the total weight.
pub fn weighted_error<P: Predictor>(hypothesis: &P, wdata: &WeightedDataset) -> Result<f64> {
    if wdata.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if hypothesis.input_dim() != wdata.data().dim() {
        return Err(Error::DimensionMismatch {
            expected: wdata.data().dim(),
            found: hypothesis.input_dim(),
        });
    }
    let mut wrong = 0.0;
    let mut total = 0.0;
    for (ex, &q) in wdata.data().examples().iter().zip(wdata.weights()) {
        total += q;
        if hypothesis.predict_unchecked(ex.features()) != ex.label() {
            wrong += q;
        }
    }
    Ok(wrong / total)
}
