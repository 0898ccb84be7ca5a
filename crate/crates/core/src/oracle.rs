//! Noisy example oracles and synthetic task generation.
//!
//! An oracle answers positive/negative example requests. Each request is
//! answered genuinely with probability 1-lambda; with probability lambda the
//! adversary supplies the example instead. Three fixed adversary strategies
//! are provided behind one interface.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::data::{Dataset, Example, Label, Provenance};
use crate::error::{Error, Result};
use crate::seeds;

const TAG_COIN: u64 = 0x01;
const TAG_GENUINE: u64 = 0x02;
const TAG_ADVERSARY: u64 = 0x03;
const TAG_SHUFFLE: u64 = 0x04;

/// A generative feature distribution over R^p.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureDistribution {
    DiagonalGaussian { mean: Vec<f64>, std_dev: Vec<f64> },
}

impl FeatureDistribution {
    pub fn dim(&self) -> usize {
        match self {
            FeatureDistribution::DiagonalGaussian { mean, .. } => mean.len(),
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match self {
            FeatureDistribution::DiagonalGaussian { mean, std_dev } => mean
                .iter()
                .zip(std_dev.iter())
                .map(|(m, s)| {
                    let z: f64 = StandardNormal.sample(rng);
                    m + s * z
                })
                .collect(),
        }
    }
}

/// How the adversary answers a corrupted request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryStrategy {
    /// Features from N(0, I_p) with a uniformly random label.
    GaussianNoise,
    /// A genuine draw for the requested class, returned with a flipped label.
    LabelFlip,
    /// A draw from the opposite class distribution, labeled as the
    /// requested class.
    MarginAttack,
}

impl AdversaryStrategy {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "gaussian-noise" => Ok(AdversaryStrategy::GaussianNoise),
            "label-flip" => Ok(AdversaryStrategy::LabelFlip),
            "margin-attack" => Ok(AdversaryStrategy::MarginAttack),
            other => Err(Error::param(
                "adversary",
                format!("unknown strategy `{other}`"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AdversaryStrategy::GaussianNoise => "gaussian-noise",
            AdversaryStrategy::LabelFlip => "label-flip",
            AdversaryStrategy::MarginAttack => "margin-attack",
        }
    }
}

/// Configuration of one oracle pair (POS and NEG sides share the state).
#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub lambda: f64,
    pub pos: FeatureDistribution,
    pub neg: FeatureDistribution,
    pub adversary: AdversaryStrategy,
    pub seed: u64,
}

impl OracleConfig {
    pub fn for_task(
        task: &GaussianMixtureTask,
        lambda: f64,
        adversary: AdversaryStrategy,
        seed: u64,
    ) -> OracleConfig {
        OracleConfig {
            lambda,
            pos: task.pos_distribution(),
            neg: task.neg_distribution(),
            adversary,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.lambda) {
            return Err(Error::param(
                "lambda",
                format!("must satisfy 0 <= lambda < 1/2, got {}", self.lambda),
            ));
        }
        if self.pos.dim() != self.neg.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.pos.dim(),
                found: self.neg.dim(),
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.pos.dim()
    }
}

/// Stateful oracle pair. The corruption coin, the genuine generator and the
/// adversary generator are independent streams, so genuine draws never
/// depend on the adversary parameters.
pub struct Oracle {
    cfg: OracleConfig,
    coin: ChaCha8Rng,
    genuine: ChaCha8Rng,
    adversary: ChaCha8Rng,
}

impl Oracle {
    pub fn new(cfg: OracleConfig) -> Result<Self> {
        cfg.validate()?;
        let seed = cfg.seed;
        Ok(Oracle {
            cfg,
            coin: seeds::stream(seed, TAG_COIN),
            genuine: seeds::stream(seed, TAG_GENUINE),
            adversary: seeds::stream(seed, TAG_ADVERSARY),
        })
    }

    /// n examples from the noisy positive oracle.
    pub fn draw_pos(&mut self, n: usize) -> Vec<Example> {
        self.draw(Label::Pos, n)
    }

    /// n examples from the noisy negative oracle.
    pub fn draw_neg(&mut self, n: usize) -> Vec<Example> {
        self.draw(Label::Neg, n)
    }

    fn draw(&mut self, requested: Label, n: usize) -> Vec<Example> {
        (0..n)
            .map(|_| {
                if self.coin.gen::<f64>() < self.cfg.lambda {
                    self.adversarial(requested)
                } else {
                    self.genuine(requested)
                }
            })
            .collect()
    }

    fn genuine(&mut self, requested: Label) -> Example {
        let dist = match requested {
            Label::Pos => &self.cfg.pos,
            Label::Neg => &self.cfg.neg,
        };
        let features = dist.sample(&mut self.genuine);
        Example::new(features, requested, Provenance::Genuine)
            .expect("gaussian draws are finite")
    }

    fn adversarial(&mut self, requested: Label) -> Example {
        let (features, label) = match self.cfg.adversary {
            AdversaryStrategy::GaussianNoise => {
                let p = self.cfg.dim();
                let features: Vec<f64> = (0..p)
                    .map(|_| StandardNormal.sample(&mut self.adversary))
                    .collect();
                let label = if self.adversary.gen::<bool>() {
                    Label::Pos
                } else {
                    Label::Neg
                };
                (features, label)
            }
            AdversaryStrategy::LabelFlip => {
                let dist = match requested {
                    Label::Pos => &self.cfg.pos,
                    Label::Neg => &self.cfg.neg,
                };
                (dist.sample(&mut self.adversary), requested.flipped())
            }
            AdversaryStrategy::MarginAttack => {
                let dist = match requested {
                    Label::Pos => &self.cfg.neg,
                    Label::Neg => &self.cfg.pos,
                };
                (dist.sample(&mut self.adversary), requested)
            }
        };
        Example::new(features, label, Provenance::Outlier).expect("gaussian draws are finite")
    }
}

/// A two-component Gaussian mixture with mirrored means and diagonal
/// covariances; the synthetic classification task.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixtureTask {
    pub mu1: Vec<f64>,
    pub mu2: Vec<f64>,
    pub sigma1: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub separation: f64,
}

impl GaussianMixtureTask {
    pub fn dim(&self) -> usize {
        self.mu1.len()
    }

    pub fn pos_distribution(&self) -> FeatureDistribution {
        FeatureDistribution::DiagonalGaussian {
            mean: self.mu1.clone(),
            std_dev: self.sigma1.clone(),
        }
    }

    pub fn neg_distribution(&self) -> FeatureDistribution {
        FeatureDistribution::DiagonalGaussian {
            mean: self.mu2.clone(),
            std_dev: self.sigma2.clone(),
        }
    }
}

/// Builds a mixture task with ||mu1 - mu2|| >= separation * (max diagonal
/// standard deviation). Deterministic in the seed.
pub fn make_task(p: usize, separation: f64, seed: u64) -> Result<GaussianMixtureTask> {
    if p == 0 {
        return Err(Error::param("p", "dimension must be >= 1"));
    }
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(Error::param("separation", "must be > 0"));
    }
    let mut rng = seeds::stream(seed, 0x7A5C);
    let sigma1: Vec<f64> = (0..p).map(|_| rng.gen_range(0.5..1.5)).collect();
    let sigma2: Vec<f64> = (0..p).map(|_| rng.gen_range(0.5..1.5)).collect();
    let max_std = sigma1
        .iter()
        .chain(sigma2.iter())
        .cloned()
        .fold(f64::MIN, f64::max);

    let mut direction: Vec<f64> = (0..p).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    // a fresh direction is drawn in the degenerate (near-zero) case
    let direction = if norm < 1e-9 {
        let mut d = vec![0.0; p];
        d[0] = 1.0;
        d
    } else {
        direction.iter_mut().for_each(|v| *v /= norm);
        direction
    };

    // slight over-scale keeps the separation guarantee despite rounding
    let scale = 0.5 * separation * max_std * (1.0 + 1e-9);
    let mu1: Vec<f64> = direction.iter().map(|d| d * scale).collect();
    let mu2: Vec<f64> = mu1.iter().map(|v| -v).collect();
    Ok(GaussianMixtureTask {
        mu1,
        mu2,
        sigma1,
        sigma2,
        separation,
    })
}

/// Draws n_pos positive and n_neg negative oracle examples and shuffles the
/// concatenation deterministically by the oracle seed.
pub fn draw_labeled_sample(cfg: &OracleConfig, n_pos: usize, n_neg: usize) -> Result<Dataset> {
    let dim = cfg.dim();
    let mut oracle = Oracle::new(cfg.clone())?;
    let mut examples = oracle.draw_pos(n_pos);
    examples.extend(oracle.draw_neg(n_neg));
    let mut shuffle_rng = seeds::stream(cfg.seed, TAG_SHUFFLE);
    examples.shuffle(&mut shuffle_rng);
    Dataset::from_examples(dim, examples)
}

/// Replaces each example with an adversarial one with probability lambda,
/// mirroring per-request oracle corruption on an already materialized
/// dataset (used for CSV-loaded data).
pub fn corrupt_dataset(
    data: &Dataset,
    lambda: f64,
    adversary: AdversaryStrategy,
    seed: u64,
) -> Result<Dataset> {
    if !(0.0..0.5).contains(&lambda) {
        return Err(Error::param(
            "lambda",
            format!("must satisfy 0 <= lambda < 1/2, got {lambda}"),
        ));
    }
    let p = data.dim();
    let mut coin = seeds::stream(seed, TAG_COIN);
    let mut adv = seeds::stream(seed, TAG_ADVERSARY);
    let by_label = |label: Label| -> Vec<&Example> {
        data.examples().iter().filter(|e| e.label() == label).collect()
    };
    let pos_pool = by_label(Label::Pos);
    let neg_pool = by_label(Label::Neg);

    let mut out = Vec::with_capacity(data.len());
    for ex in data.examples() {
        if coin.gen::<f64>() >= lambda {
            out.push(ex.clone());
            continue;
        }
        let corrupted = match adversary {
            AdversaryStrategy::GaussianNoise => {
                let features: Vec<f64> = (0..p).map(|_| StandardNormal.sample(&mut adv)).collect();
                let label = if adv.gen::<bool>() { Label::Pos } else { Label::Neg };
                Example::new(features, label, Provenance::Outlier)?
            }
            AdversaryStrategy::LabelFlip => Example::new(
                ex.features().to_vec(),
                ex.label().flipped(),
                Provenance::Outlier,
            )?,
            AdversaryStrategy::MarginAttack => {
                let pool = match ex.label() {
                    Label::Pos => &neg_pool,
                    Label::Neg => &pos_pool,
                };
                if pool.is_empty() {
                    // no opposite-class example to borrow features from
                    Example::new(
                        ex.features().to_vec(),
                        ex.label().flipped(),
                        Provenance::Outlier,
                    )?
                } else {
                    let donor = pool[adv.gen_range(0..pool.len())];
                    Example::new(donor.features().to_vec(), ex.label(), Provenance::Outlier)?
                }
            }
        };
        out.push(corrupted);
    }
    Dataset::from_examples(p, out)
}
