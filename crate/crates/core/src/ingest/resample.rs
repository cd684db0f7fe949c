//! Seeded train/validation/test allocation and feature inversion.

use crate::dataset::SparseDataset;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitSpec {
    pub n_train: usize,
    pub n_val: usize,
    pub n_test: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BootstrapSplit {
    pub train: SparseDataset,
    pub val: SparseDataset,
    pub test: SparseDataset,
    /// Source row indices of each subset, ascending.
    pub train_indices: Vec<usize>,
    pub val_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

/// Shuffles all row indices with the seeded generator and slices the result
/// into consecutive train, validation and test blocks. Each block is then
/// sorted so subset rows keep their source order.
pub fn bootstrap_split(dataset: &SparseDataset, spec: SplitSpec) -> Result<BootstrapSplit> {
    let m = dataset.n_samples();
    let total = spec
        .n_train
        .checked_add(spec.n_val)
        .and_then(|s| s.checked_add(spec.n_test))
        .filter(|&t| t <= m)
        .ok_or_else(|| {
            Error::invalid_argument(format!(
                "split {}:{}:{} needs more than the {m} available samples",
                spec.n_train, spec.n_val, spec.n_test
            ))
        })?;
    let perm = SeededRng::new(spec.seed).permutation(m);
    let mut blocks = [
        perm[..spec.n_train].to_vec(),
        perm[spec.n_train..spec.n_train + spec.n_val].to_vec(),
        perm[spec.n_train + spec.n_val..total].to_vec(),
    ];
    blocks.iter_mut().for_each(|b| b.sort_unstable());
    let [train_indices, val_indices, test_indices] = blocks;
    Ok(BootstrapSplit {
        train: dataset.select_rows(&train_indices)?,
        val: dataset.select_rows(&val_indices)?,
        test: dataset.select_rows(&test_indices)?,
        train_indices,
        val_indices,
        test_indices,
    })
}

/// Flips `x -> 1 - x` in `k` columns chosen as the first `k` entries of the
/// seeded permutation of `0..N`. Returns the new dataset and the chosen
/// columns in ascending order.
///
/// The choice depends only on `(N, k, seed)`, so a second call with the same
/// arguments undoes the first.
pub fn invert_features(dataset: &SparseDataset, k: usize, seed: u64) -> Result<(SparseDataset, Vec<usize>)> {
    let n = dataset.n_features();
    if k > n {
        return Err(Error::invalid_argument(format!(
            "cannot invert {k} of {n} features"
        )));
    }
    let mut cols = SeededRng::new(seed).permutation(n);
    cols.truncate(k);
    cols.sort_unstable();

    for &c in &cols {
        if let Some(s) = (0..dataset.n_samples()).find(|&s| {
            let v = dataset.get(s, c);
            v != 0.0 && v != 1.0
        }) {
            return Err(Error::invalid_argument(format!(
                "feature {c} is not binary (sample {s} has {})",
                dataset.get(s, c)
            )));
        }
    }

    let mut out = dataset.clone();
    let values = out.values_mut();
    for row in values.chunks_mut(n.max(1)) {
        for &c in &cols {
            row[c] = 1.0 - row[c];
        }
    }
    Ok((out, cols))
}
