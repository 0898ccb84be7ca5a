//! Executable communication protocols: the two-machine weighted-sampling
//! protocol, its k-machine coordinator generalization, and the naive
//! ship-everything baseline. Every message is charged to a cost ledger in
//! the (p+1)-unit word model.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::data::{Dataset, LinearHypothesis, MajorityHypothesis, WeightedDataset};
use crate::error::{Error, Result};
use crate::learner::{self, LearnerConfig};
use crate::ledger::{CostLedger, MachineId, Payload};
use crate::mwu;
use crate::seeds;

const TAG_SAMPLING: u64 = 0x10;
const TAG_NAIVE_SUBSAMPLE: u64 = 0x11;

/// Which expression maps the malicious rate to the per-round weighted-error
/// budget c. The proof-consistent form reproduces the (1-lambda)/(1-2lambda)^2
/// communication scaling; the literal form is its reciprocal in the
/// lambda-dependent factor and is kept for comparison. Both agree at
/// lambda = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CFormula {
    #[default]
    ProofConsistent,
    Algorithm1Literal,
}

impl CFormula {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "proof-consistent" => Ok(CFormula::ProofConsistent),
            "algorithm-1-literal" => Ok(CFormula::Algorithm1Literal),
            other => Err(Error::param(
                "c_formula",
                format!("unknown formula `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    pub epsilon: f64,
    pub lambda: f64,
    pub rho: f64,
    pub c_formula: CFormula,
    pub seed: u64,
}

impl ProtocolConfig {
    pub fn new(epsilon: f64, lambda: f64, seed: u64) -> ProtocolConfig {
        ProtocolConfig {
            epsilon,
            lambda,
            rho: 0.75,
            c_formula: CFormula::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param(
                "epsilon",
                format!("must be in (0,1), got {}", self.epsilon),
            ));
        }
        if !(0.0..0.5).contains(&self.lambda) {
            return Err(Error::param(
                "lambda",
                format!("must satisfy 0 <= lambda < 1/2, got {}", self.lambda),
            ));
        }
        if self.lambda >= self.epsilon {
            return Err(Error::param(
                "lambda",
                format!("must be < epsilon ({} >= {})", self.lambda, self.epsilon),
            ));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::param(
                "rho",
                format!("must be in (0,1), got {}", self.rho),
            ));
        }
        Ok(())
    }

    /// Round count ceil(5 * log2(1/epsilon)).
    pub fn rounds(&self) -> u32 {
        (5.0 * (1.0 / self.epsilon).log2()).ceil().max(1.0) as u32
    }

    /// Per-round weighted-error budget c derived from lambda.
    pub fn sampling_rate(&self) -> f64 {
        let l = self.lambda;
        match self.c_formula {
            CFormula::ProofConsistent => 0.2 * (1.0 - 2.0 * l).powi(2) / (1.0 - l),
            CFormula::Algorithm1Literal => 0.2 * (1.0 - l) / (1.0 - 2.0 * l).powi(2),
        }
    }
}

/// One row of the per-round trace.
#[derive(Debug, Clone, Copy)]
pub struct RoundTrace {
    pub round: u32,
    /// Training error of this round's hypothesis on the union of the
    /// original datasets.
    pub train_error: f64,
    /// Weight fraction of B's examples the hypothesis misclassifies,
    /// measured against the weights at the start of the round.
    pub weighted_misclassified_fraction: f64,
    /// Absolute misclassified weight backing the fraction.
    pub misclassified_weight: f64,
    /// Potential (sum of weights) at the start of the round.
    pub potential: f64,
    /// Ledger total after the round's messages.
    pub cumulative_units: u64,
}

/// Output of a weighted-sampling run.
#[derive(Debug, Clone)]
pub struct WsRun {
    pub majority: MajorityHypothesis,
    pub ledger: CostLedger,
    pub trace: Vec<RoundTrace>,
    /// Potential after the final update (the value a (T+1)-th round would
    /// observe).
    pub final_potential: f64,
}

/// An ordered list of per-machine shards sharing one dimension. Machine i
/// holds shard i-1.
#[derive(Debug, Clone)]
pub struct Partition {
    shards: Vec<Dataset>,
}

impl Partition {
    pub fn new(shards: Vec<Dataset>) -> Result<Self> {
        let first_dim = match shards.first() {
            Some(s) => s.dim(),
            None => return Err(Error::TooFewMachines { required: 1, got: 0 }),
        };
        for shard in &shards {
            if shard.is_empty() {
                return Err(Error::EmptyDataset);
            }
            if shard.dim() != first_dim {
                return Err(Error::DimensionMismatch {
                    expected: first_dim,
                    found: shard.dim(),
                });
            }
        }
        Ok(Partition { shards })
    }

    pub fn machines(&self) -> usize {
        self.shards.len()
    }

    pub fn dim(&self) -> usize {
        self.shards[0].dim()
    }

    pub fn shard(&self, machine: usize) -> &Dataset {
        &self.shards[machine - 1]
    }

    pub fn shards(&self) -> &[Dataset] {
        &self.shards
    }

    /// Concatenation of all shards in machine order.
    pub fn union(&self) -> Dataset {
        let mut union = Dataset::empty(self.dim());
        for shard in &self.shards {
            union.extend(shard).expect("shards share the dimension");
        }
        union
    }

    pub fn total_len(&self) -> usize {
        self.shards.iter().map(|s| s.len()).sum()
    }
}

/// The total units the naive baseline charges for this partition:
/// sum over machines 2..k of (p+1)*|shard|.
pub fn naive_cost_units(parts: &Partition) -> u64 {
    let word = (parts.dim() + 1) as u64;
    parts
        .shards()
        .iter()
        .skip(1)
        .map(|s| s.len() as u64 * word)
        .sum()
}

/// Runs the two-machine weighted-sampling protocol: per round, A learns on
/// its cumulative pool and ships the hypothesis; B applies the
/// multiplicative update to its weights and ships a weighted sample of the
/// rule size back.
pub fn run_ws_2machine(
    x_a: &Dataset,
    x_b: &Dataset,
    cfg: &ProtocolConfig,
    learner: &LearnerConfig,
) -> Result<WsRun> {
    cfg.validate()?;
    if x_a.is_empty() || x_b.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if x_a.dim() != x_b.dim() {
        return Err(Error::DimensionMismatch {
            expected: x_a.dim(),
            found: x_b.dim(),
        });
    }
    let p = x_a.dim();
    let rounds = cfg.rounds();
    let c = cfg.sampling_rate();
    let batch = mwu::sample_size(p, c)?;

    let machine_a = MachineId(1);
    let machine_b = MachineId(2);
    let mut rng = seeds::stream(cfg.seed, TAG_SAMPLING);
    let mut ledger = CostLedger::new(p);

    let mut union = x_a.clone();
    union.extend(x_b)?;

    let mut pool = x_a.clone();
    let mut weighted_b = WeightedDataset::uniform(x_b.clone());
    let mut members = Vec::with_capacity(rounds as usize);
    let mut trace = Vec::with_capacity(rounds as usize);
    let mut pending: Option<Dataset> = None;

    for round in 1..=rounds {
        if let Some(received) = pending.take() {
            pool.extend(&received)?;
        }
        let hypothesis = learner::learn(&pool, None, learner)?.hypothesis;
        ledger.charge(round, machine_a, machine_b, Payload::Hypothesis);

        let potential = mwu::compute_potential(&weighted_b);
        let misclassified = mwu::misclassified_weight(&weighted_b, &hypothesis)?;
        weighted_b = mwu::update_weights(&weighted_b, &hypothesis, cfg.rho)?;
        let sample = mwu::sample_rb(&weighted_b, batch, &mut rng)?;
        ledger.charge(
            round,
            machine_b,
            machine_a,
            Payload::ExampleBatch { count: sample.len() },
        );

        let train_error = learner::error_rate(&hypothesis, &union)?;
        trace.push(RoundTrace {
            round,
            train_error,
            weighted_misclassified_fraction: misclassified / potential,
            misclassified_weight: misclassified,
            potential,
            cumulative_units: ledger.total_units(),
        });
        members.push(hypothesis);
        pending = Some(sample);
    }

    Ok(WsRun {
        majority: MajorityHypothesis::new(members)?,
        ledger,
        trace,
        final_potential: mwu::compute_potential(&weighted_b),
    })
}

/// Rounds the fractional allocations total*f_i to integers summing exactly
/// to `total` (largest-remainder rule; ties broken by lower index).
fn largest_remainder(total: usize, fractions: &[f64]) -> Vec<usize> {
    let raw: Vec<f64> = fractions.iter().map(|f| total as f64 * f).collect();
    let mut sizes: Vec<usize> = raw.iter().map(|r| r.floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..fractions.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = raw[a] - raw[a].floor();
        let fb = raw[b] - raw[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        sizes[i] += 1;
    }
    sizes
}

/// Runs the k-machine coordinator variant: machine 1 learns, machines 2..k
/// jointly hold the weighted data. Per round the machines report their
/// total weights (one scalar each), the coordinator answers with the weight
/// fractions (one scalar each), every machine ships its proportional share
/// of the weighted sample, and the coordinator broadcasts the freshly
/// learned classifier.
pub fn run_ws_kmachine(
    parts: &Partition,
    cfg: &ProtocolConfig,
    learner: &LearnerConfig,
) -> Result<WsRun> {
    cfg.validate()?;
    if parts.machines() < 2 {
        return Err(Error::TooFewMachines {
            required: 2,
            got: parts.machines(),
        });
    }
    let p = parts.dim();
    let k = parts.machines();
    let rounds = cfg.rounds();
    let c = cfg.sampling_rate();
    let batch = mwu::sample_size(p, c)?;

    let coordinator = MachineId(1);
    let mut rng = seeds::stream(cfg.seed, TAG_SAMPLING);
    let mut ledger = CostLedger::new(p);
    let union = parts.union();

    let mut pool = parts.shard(1).clone();
    let mut weighted: Vec<WeightedDataset> = (2..=k)
        .map(|i| WeightedDataset::uniform(parts.shard(i).clone()))
        .collect();
    let mut members = Vec::with_capacity(rounds as usize);
    let mut trace = Vec::with_capacity(rounds as usize);

    for round in 1..=rounds {
        // weight totals up, fractions back
        let totals: Vec<f64> = weighted.iter().map(mwu::compute_potential).collect();
        for i in 0..weighted.len() {
            ledger.charge(round, MachineId(i as u32 + 2), coordinator, Payload::Scalar);
        }
        let joint: f64 = totals.iter().sum();
        let fractions: Vec<f64> = totals.iter().map(|t| t / joint).collect();
        for i in 0..weighted.len() {
            ledger.charge(round, coordinator, MachineId(i as u32 + 2), Payload::Scalar);
        }

        // proportional weighted samples
        let sizes = largest_remainder(batch, &fractions);
        for (i, (wd, &size)) in weighted.iter().zip(sizes.iter()).enumerate() {
            if size > 0 {
                let sample = mwu::sample_rb(wd, size, &mut rng)?;
                pool.extend(&sample)?;
            }
            ledger.charge(
                round,
                MachineId(i as u32 + 2),
                coordinator,
                Payload::ExampleBatch { count: size },
            );
        }

        // learn on the cumulative pool, broadcast the classifier
        let hypothesis = learner::learn(&pool, None, learner)?.hypothesis;
        for i in 0..weighted.len() {
            ledger.charge(round, coordinator, MachineId(i as u32 + 2), Payload::Hypothesis);
        }

        let mut misclassified = 0.0;
        for wd in &weighted {
            misclassified += mwu::misclassified_weight(wd, &hypothesis)?;
        }

        for wd in weighted.iter_mut() {
            *wd = mwu::update_weights(wd, &hypothesis, cfg.rho)?;
        }

        let train_error = learner::error_rate(&hypothesis, &union)?;
        trace.push(RoundTrace {
            round,
            train_error,
            weighted_misclassified_fraction: misclassified / joint,
            misclassified_weight: misclassified,
            potential: joint,
            cumulative_units: ledger.total_units(),
        });
        members.push(hypothesis);
    }

    let final_potential = weighted.iter().map(mwu::compute_potential).sum();
    Ok(WsRun {
        majority: MajorityHypothesis::new(members)?,
        ledger,
        trace,
        final_potential,
    })
}

/// Optional subsampling budget for the naive baseline, typically derived
/// from the robust sample-complexity bound.
#[derive(Debug, Clone, Copy)]
pub struct NaiveSizing {
    /// Total examples the whole protocol may ship; each machine gets
    /// ceil(total/k).
    pub total_budget: usize,
    pub seed: u64,
}

/// Output of the naive baseline.
#[derive(Debug, Clone)]
pub struct NaiveRun {
    pub hypothesis: LinearHypothesis,
    pub ledger: CostLedger,
}

/// Machines 2..k ship their full shard (or a uniform subsample of the
/// budget) to machine 1, which learns once.
pub fn run_naive(
    parts: &Partition,
    learner: &LearnerConfig,
    sizing: Option<NaiveSizing>,
) -> Result<NaiveRun> {
    if parts.machines() < 2 {
        return Err(Error::TooFewMachines {
            required: 2,
            got: parts.machines(),
        });
    }
    let p = parts.dim();
    let k = parts.machines();
    let coordinator = MachineId(1);
    let mut ledger = CostLedger::new(p);
    let mut pool = parts.shard(1).clone();

    let per_machine_budget = sizing.map(|s| (s.total_budget + k - 1) / k);
    let mut subsample_rng: Option<ChaCha8Rng> =
        sizing.map(|s| seeds::stream(s.seed, TAG_NAIVE_SUBSAMPLE));

    for machine in 2..=k {
        let shard = parts.shard(machine);
        let sent: Dataset = match per_machine_budget {
            Some(budget) if budget < shard.len() => {
                let rng = subsample_rng.as_mut().expect("rng exists with sizing");
                uniform_subsample(shard, budget, rng)?
            }
            _ => shard.clone(),
        };
        ledger.charge(
            1,
            MachineId(machine as u32),
            coordinator,
            Payload::ExampleBatch { count: sent.len() },
        );
        pool.extend(&sent)?;
    }

    let hypothesis = learner::learn(&pool, None, learner)?.hypothesis;
    Ok(NaiveRun { hypothesis, ledger })
}

/// `count` distinct examples chosen uniformly (partial Fisher-Yates).
fn uniform_subsample<R: Rng>(data: &Dataset, count: usize, rng: &mut R) -> Result<Dataset> {
    let n = data.len();
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..count.min(n) {
        let j = rng.gen_range(i..n);
        indices.swap(i, j);
    }
    let examples = indices[..count.min(n)]
        .iter()
        .map(|&i| data.examples()[i].clone())
        .collect();
    Dataset::from_examples(data.dim(), examples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{Example, Label, Provenance};
    use crate::oracle::{self, AdversaryStrategy, OracleConfig};

    fn mixture_shards(p: usize, per_shard: usize, k: usize, lambda: f64, seed: u64) -> Partition {
        let task = oracle::make_task(p, 6.0, seed).unwrap();
        let shards = (0..k)
            .map(|i| {
                let cfg = OracleConfig::for_task(
                    &task,
                    lambda,
                    AdversaryStrategy::GaussianNoise,
                    seeds::mix(seed, 100 + i as u64),
                );
                oracle::draw_labeled_sample(&cfg, per_shard / 2, per_shard - per_shard / 2)
                    .unwrap()
            })
            .collect();
        Partition::new(shards).unwrap()
    }

    #[test]
    fn round_count_follows_epsilon() {
        assert_eq!(ProtocolConfig::new(0.1, 0.0, 0).rounds(), 17);
        assert_eq!(ProtocolConfig::new(0.5, 0.0, 0).rounds(), 5);
    }

    #[test]
    fn config_invariants_are_checked_before_any_round() {
        let data = mixture_shards(4, 40, 2, 0.0, 3);
        let bad = ProtocolConfig::new(0.1, 0.3, 0); // lambda >= epsilon
        let err = run_ws_2machine(data.shard(1), data.shard(2), &bad, &LearnerConfig::default());
        assert!(err.is_err());
        let bad_eps = ProtocolConfig::new(1.2, 0.0, 0);
        assert!(run_ws_2machine(
            data.shard(1),
            data.shard(2),
            &bad_eps,
            &LearnerConfig::default()
        )
        .is_err());
    }

    #[test]
    fn two_machine_ledger_structure_and_exact_total() {
        let p = 6;
        let parts = mixture_shards(p, 120, 2, 0.0, 11);
        let cfg = ProtocolConfig::new(0.5, 0.0, 21);
        let learner = LearnerConfig {
            epochs: 5,
            ..LearnerConfig::default()
        };
        let run = run_ws_2machine(parts.shard(1), parts.shard(2), &cfg, &learner).unwrap();

        let rounds = cfg.rounds() as usize;
        assert_eq!(run.ledger.count_hypothesis_messages(), rounds);
        assert_eq!(run.ledger.count_batch_messages(), rounds);
        assert_eq!(run.ledger.count_scalar_messages(), 0);
        assert_eq!(run.ledger.entries().len(), 2 * rounds);

        // strict alternation: hypothesis A->B then batch B->A
        for (i, entry) in run.ledger.entries().iter().enumerate() {
            if i % 2 == 0 {
                assert!(matches!(entry.payload, Payload::Hypothesis));
                assert_eq!(entry.sender, MachineId(1));
                assert_eq!(entry.receiver, MachineId(2));
            } else {
                assert!(matches!(entry.payload, Payload::ExampleBatch { .. }));
                assert_eq!(entry.sender, MachineId(2));
                assert_eq!(entry.receiver, MachineId(1));
            }
        }

        // exact closed form: T(p+1)(1 + sample_size)
        let size = mwu::sample_size(p, cfg.sampling_rate()).unwrap();
        let expected = rounds as u64 * (p as u64 + 1) * (1 + size as u64);
        assert_eq!(run.ledger.total_units(), expected);
        assert_eq!(run.majority.len(), rounds);
        assert_eq!(run.trace.len(), rounds);
    }

    #[test]
    fn cumulative_pool_growth_is_visible_in_potential_trace() {
        let parts = mixture_shards(5, 100, 2, 0.0, 5);
        let cfg = ProtocolConfig::new(0.5, 0.0, 9);
        let learner = LearnerConfig {
            epochs: 5,
            ..LearnerConfig::default()
        };
        let run = run_ws_2machine(parts.shard(1), parts.shard(2), &cfg, &learner).unwrap();
        // potential trace starts at |X_B| and follows the exact recurrence
        assert_eq!(run.trace[0].potential, parts.shard(2).len() as f64);
        for w in run.trace.windows(2) {
            let expected = w[0].potential + cfg.rho * w[0].misclassified_weight;
            assert!((w[1].potential - expected).abs() <= 1e-12 * expected.max(1.0));
        }
        let last = run.trace.last().unwrap();
        let expected_final = last.potential + cfg.rho * last.misclassified_weight;
        assert!((run.final_potential - expected_final).abs() <= 1e-12 * expected_final.max(1.0));
    }

    #[test]
    fn identical_seeds_reproduce_identical_runs() {
        let parts = mixture_shards(4, 80, 2, 0.1, 77);
        let cfg = ProtocolConfig::new(0.4, 0.1, 123);
        let learner = LearnerConfig {
            epochs: 4,
            ..LearnerConfig::default()
        };
        let a = run_ws_2machine(parts.shard(1), parts.shard(2), &cfg, &learner).unwrap();
        let b = run_ws_2machine(parts.shard(1), parts.shard(2), &cfg, &learner).unwrap();
        assert_eq!(a.majority, b.majority);
        assert_eq!(a.ledger.total_units(), b.ledger.total_units());
        for (x, y) in a.trace.iter().zip(b.trace.iter()) {
            assert_eq!(x.train_error, y.train_error);
            assert_eq!(x.potential, y.potential);
        }
    }

    #[test]
    fn k2_coordinator_cost_exceeds_two_machine_by_exactly_the_scalars() {
        let parts = mixture_shards(4, 60, 2, 0.0, 42);
        let cfg = ProtocolConfig::new(0.5, 0.0, 3);
        let learner = LearnerConfig {
            epochs: 4,
            ..LearnerConfig::default()
        };
        let two = run_ws_2machine(parts.shard(1), parts.shard(2), &cfg, &learner).unwrap();
        let coord = run_ws_kmachine(&parts, &cfg, &learner).unwrap();
        let t = cfg.rounds() as u64;
        assert_eq!(
            coord.ledger.total_units(),
            two.ledger.total_units() + 2 * t
        );
    }

    #[test]
    fn k_machine_batches_sum_to_the_rule_size() {
        let parts = mixture_shards(5, 48, 4, 0.0, 8);
        let cfg = ProtocolConfig::new(0.5, 0.0, 4);
        let learner = LearnerConfig {
            epochs: 3,
            ..LearnerConfig::default()
        };
        let run = run_ws_kmachine(&parts, &cfg, &learner).unwrap();
        let size = mwu::sample_size(5, cfg.sampling_rate()).unwrap() as u64;
        let word = 6u64;
        for round in 1..=cfg.rounds() {
            let batch_units: u64 = run
                .ledger
                .entries()
                .iter()
                .filter(|e| e.round == round && matches!(e.payload, Payload::ExampleBatch { .. }))
                .map(|e| e.units)
                .sum();
            assert_eq!(batch_units, size * word);
        }
        // per round: (k-1) weight scalars + (k-1) fraction scalars
        assert_eq!(
            run.ledger.count_scalar_messages() as u64,
            2 * 3 * cfg.rounds() as u64
        );
        assert_eq!(
            run.ledger.count_hypothesis_messages() as u64,
            3 * cfg.rounds() as u64
        );
    }

    #[test]
    fn largest_remainder_is_exact_and_handles_zero_shares() {
        assert_eq!(largest_remainder(10, &[0.5, 0.5]), vec![5, 5]);
        assert_eq!(largest_remainder(1, &[0.5, 0.5]), vec![1, 0]);
        assert_eq!(largest_remainder(7, &[0.6, 0.4]), vec![4, 3]);
        let sizes = largest_remainder(5, &[1.0, 0.0, 0.0]);
        assert_eq!(sizes, vec![5, 0, 0]);
        for total in [0usize, 1, 13, 997] {
            let fr = [0.21, 0.33, 0.46];
            let sizes = largest_remainder(total, &fr);
            assert_eq!(sizes.iter().sum::<usize>(), total);
        }
    }

    #[test]
    fn naive_cost_is_exactly_the_shipped_words() {
        let parts = mixture_shards(100, 200, 2, 0.0, 31);
        let run = run_naive(
            &parts,
            &LearnerConfig {
                epochs: 2,
                ..LearnerConfig::default()
            },
            None,
        )
        .unwrap();
        assert_eq!(run.ledger.total_units(), 101 * 200);
        assert_eq!(run.ledger.total_units(), naive_cost_units(&parts));

        let parts4 = mixture_shards(100, 100, 4, 0.0, 32);
        let run4 = run_naive(
            &parts4,
            &LearnerConfig {
                epochs: 2,
                ..LearnerConfig::default()
            },
            None,
        )
        .unwrap();
        assert_eq!(run4.ledger.total_units(), 3 * 101 * 100);
    }

    #[test]
    fn naive_sizing_caps_per_machine_shipments() {
        let parts = mixture_shards(8, 100, 3, 0.0, 6);
        let sizing = NaiveSizing {
            total_budget: 60,
            seed: 5,
        };
        let run = run_naive(
            &parts,
            &LearnerConfig {
                epochs: 2,
                ..LearnerConfig::default()
            },
            Some(sizing),
        )
        .unwrap();
        // ceil(60/3) = 20 per machine, two sending machines
        assert_eq!(run.ledger.total_units(), 2 * 20 * 9);
    }

    #[test]
    fn too_few_machines_is_an_error() {
        let single = Partition::new(vec![Dataset::from_examples(
            1,
            vec![Example::new(vec![1.0], Label::Pos, Provenance::Genuine).unwrap()],
        )
        .unwrap()])
        .unwrap();
        assert!(matches!(
            run_naive(&single, &LearnerConfig::default(), None),
            Err(Error::TooFewMachines { .. })
        ));
        assert!(matches!(
            run_ws_kmachine(
                &single,
                &ProtocolConfig::new(0.5, 0.0, 0),
                &LearnerConfig::default()
            ),
            Err(Error::TooFewMachines { .. })
        ));
    }
}
