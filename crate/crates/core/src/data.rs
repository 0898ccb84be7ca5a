//! Core domain types: labeled examples, datasets, weighted datasets and the
//! linear / majority-vote hypotheses exchanged by the protocols.

use crate::error::{Error, Result};

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn as_f64(self) -> f64 {
        match self {
            Label::Neg => -1.0,
            Label::Pos => 1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Neg => -1,
            Label::Pos => 1,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }

    /// sign(v) with the degenerate value 0 mapping to the positive class.
    pub fn from_sign(v: f64) -> Label {
        if v >= 0.0 {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Whether an example came from a genuine oracle draw or from the adversary.
/// Bookkeeping only: learners and protocols never branch on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Genuine,
    Outlier,
}

/// One labeled feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    features: Vec<f64>,
    label: Label,
    provenance: Provenance,
}

impl Example {
    pub fn new(features: Vec<f64>, label: Label, provenance: Provenance) -> Result<Self> {
        if let Some(index) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteFeature { index });
        }
        Ok(Example {
            features,
            label,
            provenance,
        })
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn dim(&self) -> usize {
        self.features.len()
    }

    pub fn with_label(&self, label: Label) -> Example {
        Example {
            features: self.features.clone(),
            label,
            provenance: self.provenance,
        }
    }
}

/// An ordered list of examples of a fixed dimension. Order is stable;
/// protocol determinism depends on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    examples: Vec<Example>,
    dim: usize,
}

impl Dataset {
    /// Empty dataset of the given dimension.
    pub fn empty(dim: usize) -> Self {
        Dataset {
            examples: Vec::new(),
            dim,
        }
    }

    pub fn from_examples(dim: usize, examples: Vec<Example>) -> Result<Self> {
        for ex in &examples {
            if ex.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: ex.dim(),
                });
            }
        }
        Ok(Dataset { examples, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn push(&mut self, example: Example) -> Result<()> {
        if example.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: example.dim(),
            });
        }
        self.examples.push(example);
        Ok(())
    }

    pub fn extend(&mut self, other: &Dataset) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        self.examples.extend_from_slice(&other.examples);
        Ok(())
    }

    pub fn outlier_count(&self) -> usize {
        self.examples
            .iter()
            .filter(|e| e.provenance() == Provenance::Outlier)
            .count()
    }
}

/// A dataset plus one strictly positive weight per example (the
/// multiplicative-weights state on machine B).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDataset {
    data: Dataset,
    weights: Vec<f64>,
}

impl WeightedDataset {
    /// All weights initialized to 1.
    pub fn uniform(data: Dataset) -> Self {
        let weights = vec![1.0; data.len()];
        WeightedDataset { data, weights }
    }

    pub fn with_weights(data: Dataset, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != data.len() {
            return Err(Error::DimensionMismatch {
                expected: data.len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::param(
                "weights",
                "every weight must be strictly positive and finite",
            ));
        }
        Ok(WeightedDataset { data, weights })
    }

    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

/// Anything that maps a feature vector to a label.
pub trait Predictor {
    fn input_dim(&self) -> usize;

    /// Prediction without the dimension check; callers must have validated
    /// the dimension once per dataset.
    fn predict_unchecked(&self, features: &[f64]) -> Label;

    fn predict(&self, features: &[f64]) -> Result<Label> {
        if features.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                found: features.len(),
            });
        }
        Ok(self.predict_unchecked(features))
    }
}

/// A single linear separator: predicts sign(w.x + b), with 0 mapping to +1.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearHypothesis {
    w: Vec<f64>,
    b: f64,
}

impl LinearHypothesis {
    pub fn new(w: Vec<f64>, b: f64) -> Result<Self> {
        if let Some(index) = w.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteFeature { index });
        }
        if !b.is_finite() {
            return Err(Error::param("b", "offset must be finite"));
        }
        Ok(LinearHypothesis { w, b })
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn offset(&self) -> f64 {
        self.b
    }

    pub fn margin(&self, features: &[f64]) -> f64 {
        dot(&self.w, features) + self.b
    }

    /// The separator with both w and b negated.
    pub fn negated(&self) -> LinearHypothesis {
        LinearHypothesis {
            w: self.w.iter().map(|v| -v).collect(),
            b: -self.b,
        }
    }
}

impl Predictor for LinearHypothesis {
    fn input_dim(&self) -> usize {
        self.w.len()
    }

    fn predict_unchecked(&self, features: &[f64]) -> Label {
        Label::from_sign(self.margin(features))
    }
}

/// Unweighted majority vote over an ordered list of separators.
/// Exact ties go to the positive class.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorityHypothesis {
    members: Vec<LinearHypothesis>,
}

impl MajorityHypothesis {
    pub fn new(members: Vec<LinearHypothesis>) -> Result<Self> {
        let first_dim = match members.first() {
            Some(h) => h.input_dim(),
            None => return Err(Error::EmptyEnsemble),
        };
        for h in &members {
            if h.input_dim() != first_dim {
                return Err(Error::DimensionMismatch {
                    expected: first_dim,
                    found: h.input_dim(),
                });
            }
        }
        Ok(MajorityHypothesis { members })
    }

    pub fn members(&self) -> &[LinearHypothesis] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Predictor for MajorityHypothesis {
    fn input_dim(&self) -> usize {
        self.members[0].input_dim()
    }

    fn predict_unchecked(&self, features: &[f64]) -> Label {
        let mut pos = 0usize;
        for h in &self.members {
            if h.predict_unchecked(features) == Label::Pos {
                pos += 1;
            }
        }
        // strictly more negative votes are needed to output Neg
        if 2 * pos >= self.members.len() {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x * y;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyp(w: &[f64], b: f64) -> LinearHypothesis {
        LinearHypothesis::new(w.to_vec(), b).unwrap()
    }

    #[test]
    fn predict_sign_cases() {
        let h = hyp(&[1.0, 0.0], 0.0);
        assert_eq!(h.predict(&[2.0, 5.0]).unwrap(), Label::Pos);
        // zero margin maps to +1
        assert_eq!(h.predict(&[0.0, 3.0]).unwrap(), Label::Pos);
        let hn = hyp(&[-1.0, 0.0], 0.0);
        assert_eq!(hn.predict(&[2.0, 0.0]).unwrap(), Label::Neg);
    }

    #[test]
    fn predict_dimension_mismatch() {
        let h = hyp(&[1.0, 0.0], 0.0);
        assert!(matches!(
            h.predict(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn majority_vote_cases() {
        let pos = hyp(&[1.0], 0.0);
        let neg = hyp(&[-1.0], -1.0);
        let x = [1.0];

        let unanimous = MajorityHypothesis::new(vec![neg.clone(), neg.clone(), neg.clone()]).unwrap();
        assert_eq!(unanimous.predict(&x).unwrap(), Label::Neg);

        let tie = MajorityHypothesis::new(vec![pos.clone(), neg.clone()]).unwrap();
        assert_eq!(tie.predict(&x).unwrap(), Label::Pos);

        let strict = MajorityHypothesis::new(vec![pos, neg.clone(), neg]).unwrap();
        assert_eq!(strict.predict(&x).unwrap(), Label::Neg);
    }

    #[test]
    fn majority_empty_is_error() {
        assert!(matches!(
            MajorityHypothesis::new(vec![]),
            Err(Error::EmptyEnsemble)
        ));
    }

    #[test]
    fn example_rejects_non_finite() {
        assert!(Example::new(vec![1.0, f64::NAN], Label::Pos, Provenance::Genuine).is_err());
        assert!(Example::new(vec![f64::INFINITY], Label::Neg, Provenance::Genuine).is_err());
    }

    #[test]
    fn dataset_enforces_dimension() {
        let ex = Example::new(vec![1.0, 2.0], Label::Pos, Provenance::Genuine).unwrap();
        assert!(Dataset::from_examples(3, vec![ex.clone()]).is_err());
        let mut d = Dataset::empty(2);
        d.push(ex).unwrap();
        let bad = Example::new(vec![1.0], Label::Pos, Provenance::Genuine).unwrap();
        assert!(d.push(bad).is_err());
    }

    #[test]
    fn weighted_dataset_validation() {
        let ex = Example::new(vec![0.0], Label::Pos, Provenance::Genuine).unwrap();
        let d = Dataset::from_examples(1, vec![ex.clone(), ex]).unwrap();
        let w = WeightedDataset::uniform(d.clone());
        assert_eq!(w.weights(), &[1.0, 1.0]);
        assert!(WeightedDataset::with_weights(d.clone(), vec![1.0]).is_err());
        assert!(WeightedDataset::with_weights(d.clone(), vec![1.0, 0.0]).is_err());
        assert!(WeightedDataset::with_weights(d, vec![1.0, -2.0]).is_err());
    }

    #[test]
    fn scale_invariance_off_boundary() {
        let h = hyp(&[0.7, -1.3, 0.2], 0.4);
        let scaled = hyp(&[1.4, -2.6, 0.4], 0.8);
        let points = [
            [0.3, 0.8, -0.5],
            [2.0, -1.0, 4.0],
            [-3.3, 0.1, 0.9],
            [0.0, 0.0, 0.0],
        ];
        for x in &points {
            assert_eq!(h.predict_unchecked(x), scaled.predict_unchecked(x));
        }
    }
}
