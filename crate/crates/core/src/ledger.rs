//! Append-only communication cost accounting in the (p+1)-unit vector-word
//! model: a batch of n examples in R^p costs n*(p+1) units, one linear
//! hypothesis costs (p+1) units, one scalar costs 1 unit.

/// Identifies a machine in a protocol run. Machine 1 is the coordinator
/// in the k-machine and naive protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MachineId(pub u32);

impl std::fmt::Display for MachineId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M{}", self.0)
    }
}

/// What a single message carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Payload {
    /// A batch of `count` examples; costs count*(p+1) units.
    ExampleBatch { count: usize },
    /// One linear hypothesis; costs (p+1) units.
    Hypothesis,
    /// One scalar (e.g. a total weight or a weight fraction); costs 1 unit.
    Scalar,
    /// Opaque streaming-learner state of a declared size in units
    /// (used by the online emulation, which transfers s units per handoff).
    StateTransfer { units: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub round: u32,
    pub sender: MachineId,
    pub receiver: MachineId,
    pub payload: Payload,
    pub units: u64,
}

/// Append-only message log with exact unit accounting.
#[derive(Debug, Clone)]
pub struct CostLedger {
    dim: usize,
    entries: Vec<LedgerEntry>,
    total_units: u64,
}

impl CostLedger {
    pub fn new(dim: usize) -> Self {
        CostLedger {
            dim,
            entries: Vec::new(),
            total_units: 0,
        }
    }

    /// Units for one vector word in R^dim.
    pub fn word_units(&self) -> u64 {
        (self.dim + 1) as u64
    }

    fn units_for(&self, payload: Payload) -> u64 {
        match payload {
            Payload::ExampleBatch { count } => count as u64 * self.word_units(),
            Payload::Hypothesis => self.word_units(),
            Payload::Scalar => 1,
            Payload::StateTransfer { units } => units,
        }
    }

    /// Appends one message and returns the units it was charged.
    pub fn charge(
        &mut self,
        round: u32,
        sender: MachineId,
        receiver: MachineId,
        payload: Payload,
    ) -> u64 {
        let units = self.units_for(payload);
        self.entries.push(LedgerEntry {
            round,
            sender,
            receiver,
            payload,
            units,
        });
        self.total_units += units;
        units
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn total_units(&self) -> u64 {
        self.total_units
    }

    /// Optional bits-per-word multiplier for reporting in bits.
    pub fn total_bits(&self, bits_per_word: u64) -> u64 {
        self.total_units * bits_per_word
    }

    pub fn count_hypothesis_messages(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.payload, Payload::Hypothesis))
            .count()
    }

    pub fn count_batch_messages(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.payload, Payload::ExampleBatch { .. }))
            .count()
    }

    pub fn count_scalar_messages(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.payload, Payload::Scalar))
            .count()
    }
}
