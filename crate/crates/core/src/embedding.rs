use std::collections::HashMap;
use std::io::Write;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::Result;

/// Sparse nonnegative vertex vector, stored as `(vertex, value)` pairs sorted
/// by vertex. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseEmbedding {
    entries: Vec<(u32, f64)>,
}

impl SparseEmbedding {
    pub fn new() -> Self {
        Self::default()
    }

    /// Drops zero and negative entries; sums repeated vertices.
    pub fn from_pairs<I: IntoIterator<Item = (u32, f64)>>(pairs: I) -> Self {
        let mut entries: Vec<(u32, f64)> = pairs.into_iter().collect();
        entries.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (v, x) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += x,
                _ => merged.push((v, x)),
            }
        }
        merged.retain(|&(_, x)| x > 0.0);
        Self { entries: merged }
    }

    pub fn from_map(map: &HashMap<u32, f64>) -> Self {
        Self::from_pairs(map.iter().map(|(&v, &x)| (v, x)))
    }

    pub fn get(&self, v: u32) -> f64 {
        self.entries
            .binary_search_by_key(&v, |&(u, _)| u)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|&(_, x)| x).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_pairs(self.entries.iter().map(|&(v, x)| (v, x * factor)))
    }

    /// Two-column `vertex,value` CSV with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "vertex,value")?;
        for &(v, x) in &self.entries {
            writeln!(out, "{v},{x}")?;
        }
        Ok(())
    }
}

/// Serializes as a `{vertex: value}` map.
impl Serialize for SparseEmbedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (v, x) in &self.entries {
            map.serialize_entry(v, x)?;
        }
        map.end()
    }
}
