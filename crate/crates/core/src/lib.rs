//! Deterministic simulator and library for communication-efficient
//! distributed and online robust learning under malicious oracle noise.
//!
//! The crate executes a boosting-style weighted-sampling protocol between a
//! learning machine and one or more data-holding machines, a naive
//! ship-everything baseline, and an r-pass streaming emulation; accounts
//! every message exactly in a (p+1)-unit vector-word cost model; and
//! evaluates the matching closed-form communication, space and
//! sample-complexity bounds for side-by-side comparison with measured
//! ledgers.

pub mod bounds;
pub mod data;
pub mod dataio;
pub mod error;
pub mod experiment;
pub mod learner;
pub mod ledger;
pub mod mwu;
pub mod online;
pub mod oracle;
pub mod protocol;
pub(crate) mod seeds;

pub use data::{
    Dataset, Example, Label, LinearHypothesis, MajorityHypothesis, Predictor, Provenance,
    WeightedDataset,
};
pub use error::{Error, Result};
pub use ledger::{CostLedger, LedgerEntry, MachineId, Payload};
