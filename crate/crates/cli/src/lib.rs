//! State files, the reproduction report and output formatting behind the
//! `deficitlab` binary.

pub mod format;
pub mod report;
pub mod statefile;

pub use report::{run_reproduce, AdjudicationReport, ClaimRecord, ClaimStatus, ReproduceSettings};
pub use statefile::{parse_state_file, StateFile, StateFileError};
