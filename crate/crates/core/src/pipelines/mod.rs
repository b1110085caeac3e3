//! Pipelines built on the clustering methods: approximate network community
//! profiles, seeded label prediction, and recovery scoring.

mod labels;
mod ncp;
mod recovery;

pub use labels::{assign_labels, predict_labels, LabelAssignment};
pub use ncp::{compute_ncp, write_ncp_csv, NcpBest, NcpConfig, NcpRecord, NcpSpec, SizeBins};
pub use recovery::{evaluate_recovery, RecoveryScore};
