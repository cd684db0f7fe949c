//! Dataset directories: the hand-off format between pipeline steps.
//!
//! ```text
//! <dir>/values.npy   (M, N) <f8, row-major
//! <dir>/labels.npy   (M,)   <i8
//! <dir>/meta.json    DatasetMeta
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::npy::{read_npy, write_npy, NpyData};
use crate::dataset::SparseDataset;
use crate::error::{Error, Result};
use crate::ingest::OneHotEncoder;

pub const VALUES_FILE: &str = "values.npy";
pub const LABELS_FILE: &str = "labels.npy";
pub const META_FILE: &str = "meta.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub n_samples: usize,
    pub n_features: usize,
    pub n_classes: u32,
    pub feature_names: Vec<String>,
    /// Steps that produced this dataset, oldest first.
    pub provenance: Vec<String>,
    /// Rows of the parent dataset this one was drawn from, if it is a split.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_indices: Option<Vec<usize>>,
    /// Columns flipped by the last inversion step, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverted_features: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoder: Option<OneHotEncoder>,
}

impl DatasetMeta {
    pub fn describe(dataset: &SparseDataset, provenance: Vec<String>) -> Self {
        DatasetMeta {
            n_samples: dataset.n_samples(),
            n_features: dataset.n_features(),
            n_classes: dataset.n_classes(),
            feature_names: dataset.feature_names().to_vec(),
            provenance,
            source_indices: None,
            inverted_features: None,
            encoder: None,
        }
    }
}

/// `<file name> sha256:<first 16 hex digits>`, for provenance records that do
/// not depend on where the input lives.
pub fn describe_input_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let digest = Sha256::digest(&bytes);
    let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    Ok(format!("{name} sha256:{}", &hex::encode(digest)[..16]))
}

pub fn write_dataset_dir(dir: &Path, dataset: &SparseDataset, meta: &DatasetMeta) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_npy(
        &dir.join(VALUES_FILE),
        &[dataset.n_samples(), dataset.n_features()],
        &NpyData::F64(dataset.values().to_vec()),
    )?;
    write_npy(
        &dir.join(LABELS_FILE),
        &[dataset.n_samples()],
        &NpyData::I64(dataset.labels().iter().map(|&l| i64::from(l)).collect()),
    )?;
    let mut text = serde_json::to_string_pretty(meta).expect("metadata serializes");
    text.push('\n');
    let meta_path = dir.join(META_FILE);
    fs::write(&meta_path, text).map_err(|e| Error::io(meta_path, e))
}

pub fn read_dataset_dir(dir: &Path) -> Result<(SparseDataset, DatasetMeta)> {
    let meta_path = dir.join(META_FILE);
    let text = fs::read(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
    let meta: DatasetMeta = serde_json::from_slice(&text).map_err(|e| Error::parse(0, format!("{}: {e}", meta_path.display())))?;

    let (shape, values) = read_npy(&dir.join(VALUES_FILE))?;
    if shape != [meta.n_samples, meta.n_features] {
        return Err(Error::ShapeMismatch {
            expected: format!("values of shape ({}, {})", meta.n_samples, meta.n_features),
            found: format!("{shape:?}"),
        });
    }
    let (lshape, labels) = read_npy(&dir.join(LABELS_FILE))?;
    if lshape != [meta.n_samples] {
        return Err(Error::ShapeMismatch {
            expected: format!("labels of shape ({},)", meta.n_samples),
            found: format!("{lshape:?}"),
        });
    }
    let labels = match labels {
        NpyData::I64(v) => v
            .into_iter()
            .map(|l| u32::try_from(l).map_err(|_| Error::invalid_input(format!("negative or huge label {l}"))))
            .collect::<Result<Vec<u32>>>()?,
        _ => return Err(Error::invalid_input("labels must be stored as <i8")),
    };
    let dataset = SparseDataset::new(values.to_f64(), meta.feature_names.clone(), labels, meta.n_classes)?;
    Ok((dataset, meta))
}
