use std::collections::BTreeMap;
use std::io::Write;

use crate::cluster::SeedSet;
use crate::diffusion::{diffuse, DiffusionParams, SpectralMethod};
use crate::embedding::SparseEmbedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex predicted class (or `None` when no diffusion reached the
/// vertex) and the winning degree-normalized score.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelAssignment {
    pub labels: Vec<Option<u32>>,
    pub scores: Vec<f64>,
}

impl LabelAssignment {
    /// `vertex,label,score` rows; unreached vertices are written as `unlabeled`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "vertex,label,score")?;
        for (v, (label, score)) in self.labels.iter().zip(&self.scores).enumerate() {
            match label {
                Some(c) => writeln!(out, "{v},{c},{score}")?,
                None => writeln!(out, "{v},unlabeled,0")?,
            }
        }
        Ok(())
    }

    pub fn unlabeled(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }
}

/// One seeded diffusion per class, then [`assign_labels`].
pub fn predict_labels(
    g: &Graph,
    class_seeds: &BTreeMap<u32, SeedSet>,
    params: &DiffusionParams,
    method: SpectralMethod,
) -> Result<LabelAssignment> {
    check_classes(class_seeds)?;
    let mut vectors = BTreeMap::new();
    for (&class, seeds) in class_seeds {
        vectors.insert(class, diffuse(g, seeds, params, method)?);
    }
    assign_labels(g, &vectors, class_seeds)
}

fn check_classes(class_seeds: &BTreeMap<u32, SeedSet>) -> Result<()> {
    if class_seeds.is_empty() {
        return Err(Error::InvalidParameter("no classes given".into()));
    }
    let mut seen = BTreeMap::new();
    for (&class, seeds) in class_seeds {
        for &s in seeds.as_slice() {
            if seen.insert(s, class).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "vertex {s} seeds more than one class"
                )));
            }
        }
    }
    Ok(())
}

/// Every vertex takes the class with the largest `x_c(v) / deg(v)`, ties to
/// the smaller class id; vertices where every vector is zero stay unlabeled.
/// Seeds keep their own class.
pub fn assign_labels(
    g: &Graph,
    vectors: &BTreeMap<u32, SparseEmbedding>,
    class_seeds: &BTreeMap<u32, SeedSet>,
) -> Result<LabelAssignment> {
    check_classes(class_seeds)?;
    let n = g.n();
    let mut labels: Vec<Option<u32>> = vec![None; n];
    let mut scores = vec![0.0f64; n];
    for (&class, x) in vectors {
        for (v, value) in x.iter() {
            g.check_vertex(v as u64)?;
            let score = value / g.degree(v);
            let slot = v as usize;
            if labels[slot].is_none() || score > scores[slot] {
                labels[slot] = Some(class);
                scores[slot] = score;
            }
        }
    }
    for (&class, seeds) in class_seeds {
        for &s in seeds.as_slice() {
            labels[s as usize] = Some(class);
            scores[s as usize] = vectors.get(&class).map_or(0.0, |x| x.get(s)) / g.degree(s);
        }
    }
    Ok(LabelAssignment { labels, scores })
}
