//! File formats, experiment harness and plotting for `toric-core`.

pub mod corpus;
pub mod experiments;
pub mod profile_file;
pub mod svg;
pub mod tables;

pub use experiments::{run_corpus_bounds, run_fc_scan, run_sweep, RunConfig, SweepOp, SweepRecord};
pub use profile_file::{load_profile, parse_family_spec, save_profile, ProfileFile};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] toric_core::Error),
    #[error("io: {0}")]
    Io(String),
    #[error("format: {0}")]
    Format(String),
}

impl LabError {
    /// Process exit code: 2 for invalid input of any kind.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

impl From<csv::Error> for LabError {
    fn from(e: csv::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
