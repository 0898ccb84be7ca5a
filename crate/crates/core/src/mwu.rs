//! Multiplicative weight update on machine B and weighted sampling of the
//! hard-example set. Misclassified weights are multiplied by (1+rho); the
//! sample size rule is min{ceil((p/c)log2(p/c)), ceil(p/c^2)}.

use rand::Rng;

use crate::data::{Dataset, LinearHypothesis, Predictor, WeightedDataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct MwuParams {
    pub rho: f64,
    pub c: f64,
}

impl MwuParams {
    pub fn new(rho: f64, c: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::param("rho", format!("must be in (0,1), got {rho}")));
        }
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::param("c", format!("must be in (0,1), got {c}")));
        }
        Ok(MwuParams { rho, c })
    }

    /// rho = 0.75 unless overridden.
    pub fn with_default_rho(c: f64) -> Result<Self> {
        MwuParams::new(0.75, c)
    }
}

/// Multiplies the weight of every example misclassified by `hypothesis`
/// by (1+rho); correctly classified weights are untouched. Order preserved.
pub fn update_weights(
    wdata: &WeightedDataset,
    hypothesis: &LinearHypothesis,
    rho: f64,
) -> Result<WeightedDataset> {
    if hypothesis.input_dim() != wdata.data().dim() {
        return Err(Error::DimensionMismatch {
            expected: wdata.data().dim(),
            found: hypothesis.input_dim(),
        });
    }
    let factor = 1.0 + rho;
    let weights = wdata
        .data()
        .examples()
        .iter()
        .zip(wdata.weights())
        .map(|(ex, &w)| {
            if hypothesis.predict_unchecked(ex.features()) != ex.label() {
                w * factor
            } else {
                w
            }
        })
        .collect();
    WeightedDataset::with_weights(wdata.data().clone(), weights)
}

/// Sum of weights misclassified by `hypothesis` (the quantity the potential
/// recurrence is driven by).
pub fn misclassified_weight(
    wdata: &WeightedDataset,
    hypothesis: &LinearHypothesis,
) -> Result<f64> {
    if hypothesis.input_dim() != wdata.data().dim() {
        return Err(Error::DimensionMismatch {
            expected: wdata.data().dim(),
            found: hypothesis.input_dim(),
        });
    }
    Ok(wdata
        .data()
        .examples()
        .iter()
        .zip(wdata.weights())
        .filter(|(ex, _)| hypothesis.predict_unchecked(ex.features()) != ex.label())
        .map(|(_, &w)| w)
        .sum())
}

/// The hard-example sample size min{ceil((p/c)·log2(p/c)), ceil(p/c^2)}.
pub fn sample_size(p: usize, c: f64) -> Result<usize> {
    if p == 0 {
        return Err(Error::param("p", "dimension must be >= 1"));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::param("c", format!("must be in (0,1), got {c}")));
    }
    let ratio = p as f64 / c;
    let by_log = (ratio * ratio.log2()).ceil();
    let by_square = (p as f64 / (c * c)).ceil();
    let size = by_log.min(by_square) as usize;
    Ok(size.max(1))
}

/// Sum of all weights (the potential function).
pub fn compute_potential(wdata: &WeightedDataset) -> f64 {
    wdata.weights().iter().sum()
}

/// Vose alias table for O(1) draws proportional to fixed weights.
#[derive(Debug, Clone)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    pub fn new(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::param("weights", "must be strictly positive"));
        }
        let n = weights.len();
        let total: f64 = weights.iter().sum();
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * n as f64 / total).collect();
        let mut prob = vec![0.0; n];
        let mut alias = vec![0usize; n];
        let mut small: Vec<usize> = Vec::new();
        let mut large: Vec<usize> = Vec::new();
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            large.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                small.push(l);
            } else {
                large.push(l);
            }
        }
        for &i in small.iter().chain(large.iter()) {
            prob[i] = 1.0;
        }
        Ok(AliasTable { prob, alias })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let i = rng.gen_range(0..self.prob.len());
        if rng.gen::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i]
        }
    }
}

/// Draws `size` examples i.i.d. with replacement, each example chosen with
/// probability proportional to its weight. Duplicates are retained; a draw
/// larger than the dataset is meaningful.
pub fn sample_rb<R: Rng>(
    wdata: &WeightedDataset,
    size: usize,
    rng: &mut R,
) -> Result<Dataset> {
    if size == 0 {
        return Err(Error::param("size", "must be >= 1"));
    }
    if wdata.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let table = AliasTable::new(wdata.weights())?;
    let examples = (0..size)
        .map(|_| wdata.data().examples()[table.sample(rng)].clone())
        .collect();
    Dataset::from_examples(wdata.data().dim(), examples)
}
