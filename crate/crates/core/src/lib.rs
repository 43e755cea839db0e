//! Entropy-based assessment of data views and greedy construction of
//! classifier cascades for a rare target class.
//!
//! The pipeline: measure how unevenly each class is spread in a view
//! ([`entropy`]), train candidate machines over coarsened label partitions
//! ([`machines`]), and let [`storm::select`] grow a cascade that keeps the
//! machines which reduce that imbalance the most.

pub mod entropy;
pub mod error;
pub mod io;
pub mod machines;
pub mod model;
pub mod oracle;
pub mod par;
pub mod purity;
pub mod resample;
pub mod split;
pub mod storm;

pub use entropy::{
    class_entropy, entropy_imbalance, entropy_imbalance_gain, euclidean_distance, DensityConfig,
    EntropyReport,
};
pub use error::{Result, StormError};
pub use machines::{train, MachineKind, MachineSpec, TrainedMachine};
pub use model::{Dataset, Instance, LabelPartition, OriginalClassSet, ViewSchema};
pub use par::Execution;
pub use split::{stratified_split, Split};
pub use storm::{
    assemble_cascade, assess, cascade_predict, evaluate, select, Cascade, Metrics, StormConfig,
};
