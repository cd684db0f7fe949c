//! In-memory sample × feature matrices with class labels.

use crate::error::{Error, Result};

/// An `M × N` real-valued sample matrix, stored row-major, with one name per
/// feature column and one class index per sample row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseDataset {
    values: Vec<f64>,
    n_samples: usize,
    n_features: usize,
    feature_names: Vec<String>,
    labels: Vec<u32>,
    n_classes: u32,
}

impl SparseDataset {
    /// Builds a dataset from row-major `values`.
    ///
    /// Fails if the value count is not `labels.len() * feature_names.len()`,
    /// if any value is non-finite, if `n_classes` is zero, or if a label is
    /// out of range.
    pub fn new(
        values: Vec<f64>,
        feature_names: Vec<String>,
        labels: Vec<u32>,
        n_classes: u32,
    ) -> Result<Self> {
        let n_samples = labels.len();
        let n_features = feature_names.len();
        if values.len() != n_samples * n_features {
            return Err(Error::ShapeMismatch {
                expected: format!("{n_samples}x{n_features} = {} values", n_samples * n_features),
                found: format!("{} values", values.len()),
            });
        }
        if n_classes == 0 {
            return Err(Error::invalid_argument("n_classes must be positive"));
        }
        if let Some((i, l)) = labels.iter().enumerate().find(|(_, &l)| l >= n_classes) {
            return Err(Error::invalid_argument(format!(
                "label {l} of sample {i} is outside 0..{n_classes}"
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid_argument(format!(
                "non-finite value at sample {}, feature {}",
                pos / n_features.max(1),
                pos % n_features.max(1)
            )));
        }
        Ok(SparseDataset {
            values,
            n_samples,
            n_features,
            feature_names,
            labels,
            n_classes,
        })
    }

    /// Same as [`SparseDataset::new`] with features named `f0, f1, …`.
    pub fn with_default_names(
        values: Vec<f64>,
        n_features: usize,
        labels: Vec<u32>,
        n_classes: u32,
    ) -> Result<Self> {
        let names = (0..n_features).map(|i| format!("f{i}")).collect();
        Self::new(values, names, labels, n_classes)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> u32 {
        self.n_classes
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Row-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, sample: usize) -> &[f64] {
        let start = sample * self.n_features;
        &self.values[start..start + self.n_features]
    }

    pub fn get(&self, sample: usize, feature: usize) -> f64 {
        self.values[sample * self.n_features + feature]
    }

    /// Copies one feature column out of the row-major storage.
    pub fn column(&self, feature: usize) -> Vec<f64> {
        self.values
            .iter()
            .skip(feature)
            .step_by(self.n_features.max(1))
            .copied()
            .collect()
    }

    /// New dataset holding the given sample rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n_samples) {
            return Err(Error::invalid_argument(format!(
                "sample index {bad} out of range for {} samples",
                self.n_samples
            )));
        }
        let mut values = Vec::with_capacity(indices.len() * self.n_features);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        Ok(SparseDataset {
            values,
            n_samples: indices.len(),
            n_features: self.n_features,
            feature_names: self.feature_names.clone(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            n_classes: self.n_classes,
        })
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}
