//! Pearson correlation between feature columns.

use rayon::prelude::*;

use crate::dataset::SparseDataset;
use crate::error::{Error, Result};

/// Rows are centered and transposed this many at a time, bounding the
/// scratch buffer to `N * ROW_BLOCK` values.
const ROW_BLOCK: usize = 1024;

/// Symmetric `N × N` matrix of feature correlations.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CorrMatrix {
    /// Wraps a row-major `n × n` matrix after checking symmetry, that every
    /// entry lies in `[-1, 1]` and that the diagonal holds only 0 or 1.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n} entries"),
                found: format!("{} entries", entries.len()),
            });
        }
        for i in 0..n {
            let d = entries[i * n + i];
            if d != 0.0 && d != 1.0 {
                return Err(Error::invalid_argument(format!("diagonal entry {i} is {d}, expected 0 or 1")));
            }
            for j in 0..n {
                let v = entries[i * n + j];
                if !(-1.0..=1.0).contains(&v) {
                    return Err(Error::invalid_argument(format!("entry ({i},{j}) = {v} outside [-1, 1]")));
                }
                if v != entries[j * n + i] {
                    return Err(Error::invalid_argument(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(CorrMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Pearson product-moment correlation of every pair of feature columns.
///
/// Uses two passes (means, then centered cross products). A column whose
/// values are all identical has zero variance; every entry in its row and
/// column, diagonal included, is 0.
///
/// Each entry is accumulated in a fixed order regardless of thread count, so
/// the result is bit-for-bit reproducible.
pub fn pearson_matrix(dataset: &SparseDataset) -> Result<CorrMatrix> {
    let m = dataset.n_samples();
    let n = dataset.n_features();
    if m < 2 {
        return Err(Error::invalid_argument(format!(
            "correlation needs at least 2 samples, got {m}"
        )));
    }

    let mut means = vec![0.0; n];
    for s in 0..m {
        for (acc, &v) in means.iter_mut().zip(dataset.row(s)) {
            *acc += v;
        }
    }
    means.iter_mut().for_each(|x| *x /= m as f64);

    let first = dataset.row(0);
    let mut constant = vec![true; n];
    for s in 1..m {
        for ((c, &v), &v0) in constant.iter_mut().zip(dataset.row(s)).zip(first) {
            *c &= v == v0;
        }
    }

    // Upper triangle of the centered cross-product (scatter) matrix, row i
    // holding columns i..n.
    let mut scatter: Vec<Vec<f64>> = (0..n).map(|i| vec![0.0; n - i]).collect();
    let mut block = vec![0.0; n * ROW_BLOCK];
    for start in (0..m).step_by(ROW_BLOCK) {
        let len = ROW_BLOCK.min(m - start);
        for k in 0..len {
            for (j, &v) in dataset.row(start + k).iter().enumerate() {
                block[j * ROW_BLOCK + k] = v - means[j];
            }
        }
        let block = &block;
        scatter.par_iter_mut().enumerate().for_each(|(i, row)| {
            let xi = &block[i * ROW_BLOCK..i * ROW_BLOCK + len];
            for (off, acc) in row.iter_mut().enumerate() {
                let j = i + off;
                let xj = &block[j * ROW_BLOCK..j * ROW_BLOCK + len];
                *acc += xi.iter().zip(xj).map(|(a, b)| a * b).sum::<f64>();
            }
        });
    }

    let var: Vec<f64> = (0..n).map(|i| scatter[i][0]).collect();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        if constant[i] || var[i] <= 0.0 {
            continue;
        }
        entries[i * n + i] = 1.0;
        for j in i + 1..n {
            if constant[j] || var[j] <= 0.0 {
                continue;
            }
            let r = (scatter[i][j - i] / (var[i].sqrt() * var[j].sqrt())).clamp(-1.0, 1.0);
            entries[i * n + j] = r;
            entries[j * n + i] = r;
        }
    }
    Ok(CorrMatrix { n, entries })
}
