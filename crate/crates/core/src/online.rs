//! r-pass online learning emulated over a partition: machines stream their
//! locally permuted shards through a bounded-state learner, handing the
//! state to the next machine at every shard boundary (cyclically, returning
//! to machine 1 at the end of each pass). The ledger charges exactly
//! k * r * s units of state transfer for k machines, r passes and an s-unit
//! state.

use rand::seq::SliceRandom;

use crate::data::{Example, LinearHypothesis};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, MachineId, Payload};
use crate::protocol::Partition;
use crate::seeds;

const TAG_STREAM: u64 = 0x20;

/// A learner with bounded working storage, consumed one example at a time.
pub trait StreamingLearner {
    fn observe(&mut self, example: &Example);
    fn finalize(&self) -> LinearHypothesis;
    /// Size of the transferable state, in units of the cost model.
    fn state_units(&self) -> u64;
}

/// The classic online perceptron: state is (w, b), i.e. p+1 units.
#[derive(Debug, Clone, PartialEq)]
pub struct OnlinePerceptron {
    w: Vec<f64>,
    b: f64,
}

impl OnlinePerceptron {
    pub fn new(dim: usize) -> Self {
        OnlinePerceptron {
            w: vec![0.0; dim],
            b: 0.0,
        }
    }
}

impl StreamingLearner for OnlinePerceptron {
    fn observe(&mut self, example: &Example) {
        let y = example.label().as_f64();
        let mut activation = self.b;
        for (w, x) in self.w.iter().zip(example.features()) {
            activation += w * x;
        }
        if y * activation <= 0.0 {
            for (w, x) in self.w.iter_mut().zip(example.features()) {
                *w += y * x;
            }
            self.b += y;
        }
    }

    fn finalize(&self) -> LinearHypothesis {
        LinearHypothesis::new(self.w.clone(), self.b).expect("perceptron state is finite")
    }

    fn state_units(&self) -> u64 {
        (self.w.len() + 1) as u64
    }
}

/// The per-machine streams: each shard deterministically permuted by the
/// seed. Their concatenation in machine order is the stream a single
/// machine would consume.
pub fn machine_streams(parts: &Partition, seed: u64) -> Vec<Vec<Example>> {
    parts
        .shards()
        .iter()
        .enumerate()
        .map(|(i, shard)| {
            let mut stream: Vec<Example> = shard.examples().to_vec();
            let mut rng = seeds::stream(seed, TAG_STREAM + i as u64);
            stream.shuffle(&mut rng);
            stream
        })
        .collect()
}

/// Emulates `passes` passes of the streaming learner over the concatenated
/// machine streams, charging one state transfer per machine boundary per
/// pass (k transfers per pass, cyclic). Any number of machines >= 1 is
/// accepted; with one machine the per-pass self-handoff is charged once.
pub fn emulate_online<L: StreamingLearner>(
    mut learner: L,
    parts: &Partition,
    passes: u32,
    seed: u64,
) -> Result<(LinearHypothesis, CostLedger)> {
    if passes == 0 {
        return Err(Error::param("passes", "must be >= 1"));
    }
    let k = parts.machines();
    let streams = machine_streams(parts, seed);
    let mut ledger = CostLedger::new(parts.dim());
    let units = learner.state_units();

    for pass in 1..=passes {
        for (i, stream) in streams.iter().enumerate() {
            for example in stream {
                learner.observe(example);
            }
            let sender = MachineId(i as u32 + 1);
            let receiver = MachineId(((i + 1) % k) as u32 + 1);
            ledger.charge(pass, sender, receiver, Payload::StateTransfer { units });
        }
    }

    Ok((learner.finalize(), ledger))
}
