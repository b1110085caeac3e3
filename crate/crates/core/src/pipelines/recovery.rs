use serde::Serialize;

use crate::cluster::Cluster;
use crate::graph::Graph;

/// Overlap of a found cluster with a target, weighted by volume and by count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoveryScore {
    /// `vol(A ∩ B) / vol(A)`.
    pub precision: f64,
    /// `vol(A ∩ B) / vol(B)`.
    pub recall: f64,
    pub precision_cardinality: f64,
    pub recall_cardinality: f64,
}

pub fn evaluate_recovery(g: &Graph, found: &Cluster, target: &Cluster) -> RecoveryScore {
    let (a, b) = (found.members(), target.members());
    let (mut i, mut j) = (0, 0);
    let (mut shared_volume, mut shared_count) = (0.0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared_volume += g.degree(a[i]);
                shared_count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    RecoveryScore {
        precision: ratio(shared_volume, found.volume()),
        recall: ratio(shared_volume, target.volume()),
        precision_cardinality: ratio(shared_count as f64, a.len() as f64),
        recall_cardinality: ratio(shared_count as f64, b.len() as f64),
    }
}
