//! Categorical tables and their one-hot encoding.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::SparseDataset;
use crate::error::{Error, Result};

/// Attribute names of the UCI Mushroom file, in column order after the target.
const MUSHROOM_ATTRIBUTES: [&str; 22] = [
    "cap-shape",
    "cap-surface",
    "cap-color",
    "bruises",
    "odor",
    "gill-attachment",
    "gill-spacing",
    "gill-size",
    "gill-color",
    "stalk-shape",
    "stalk-root",
    "stalk-surface-above-ring",
    "stalk-surface-below-ring",
    "stalk-color-above-ring",
    "stalk-color-below-ring",
    "veil-type",
    "veil-color",
    "ring-number",
    "ring-type",
    "spore-print-color",
    "population",
    "habitat",
];

/// String-valued records with a target column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoricalTable {
    rows: Vec<Vec<String>>,
    targets: Vec<String>,
}

impl CategoricalTable {
    pub fn new(rows: Vec<Vec<String>>, targets: Vec<String>) -> Result<Self> {
        if rows.len() != targets.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} targets", rows.len()),
                found: format!("{} targets", targets.len()),
            });
        }
        if let Some(first) = rows.first() {
            let width = first.len();
            if let Some(i) = rows.iter().position(|r| r.len() != width) {
                return Err(Error::invalid_input(format!(
                    "row {i} has {} attributes, expected {width}",
                    rows[i].len()
                )));
            }
        }
        Ok(CategoricalTable { rows, targets })
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Parses the UCI Mushroom layout: comma-separated, no header, target in the
/// first column. Blank lines are skipped.
pub fn read_categorical_csv(path: &Path) -> Result<CategoricalTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_categorical_csv(&text)
}

pub(crate) fn parse_categorical_csv(text: &str) -> Result<CategoricalTable> {
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',').map(|f| f.trim().to_string());
        let target = fields.next().expect("split yields at least one field");
        let attrs: Vec<String> = fields.collect();
        if attrs.is_empty() {
            return Err(Error::invalid_input(format!("line {}: no attributes after target", lineno + 1)));
        }
        targets.push(target);
        rows.push(attrs);
    }
    CategoricalTable::new(rows, targets)
}

fn target_class(t: &str) -> Result<u32> {
    match t {
        "e" | "edible" => Ok(0),
        "p" | "poisonous" => Ok(1),
        other => Err(Error::invalid_input(format!("unknown target label '{other}'"))),
    }
}

/// Per-attribute category lists learned from a table.
///
/// Categories are those actually observed, sorted, with the `?` missing
/// token treated as an ordinary category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneHotEncoder {
    attribute_names: Vec<String>,
    categories: Vec<Vec<String>>,
}

impl OneHotEncoder {
    pub fn fit(table: &CategoricalTable) -> Result<Self> {
        if table.n_rows() == 0 {
            return Err(Error::invalid_input("cannot encode an empty table"));
        }
        let width = table.n_attributes();
        let mut seen = vec![BTreeSet::new(); width];
        for row in table.rows() {
            for (set, v) in seen.iter_mut().zip(row) {
                set.insert(v.clone());
            }
        }
        let attribute_names = if width == MUSHROOM_ATTRIBUTES.len() {
            MUSHROOM_ATTRIBUTES.iter().map(|s| s.to_string()).collect()
        } else {
            (0..width).map(|i| format!("attr{i}")).collect()
        };
        Ok(OneHotEncoder {
            attribute_names,
            categories: seen.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn categories(&self) -> &[Vec<String>] {
        &self.categories
    }

    pub fn n_features(&self) -> usize {
        self.categories.iter().map(Vec::len).sum()
    }

    /// Column names as `attribute=category`.
    pub fn feature_names(&self) -> Vec<String> {
        self.attribute_names
            .iter()
            .zip(&self.categories)
            .flat_map(|(a, cats)| cats.iter().map(move |c| format!("{a}={c}")))
            .collect()
    }

    /// Encodes `table`; a category not seen during fitting is an error.
    pub fn encode(&self, table: &CategoricalTable) -> Result<SparseDataset> {
        if table.n_rows() == 0 {
            return Err(Error::invalid_input("cannot encode an empty table"));
        }
        if table.n_attributes() != self.categories.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} attributes", self.categories.len()),
                found: format!("{} attributes", table.n_attributes()),
            });
        }
        let n = self.n_features();
        let mut values = vec![0.0; table.n_rows() * n];
        let mut labels = Vec::with_capacity(table.n_rows());
        for (i, (row, target)) in table.rows().iter().zip(table.targets()).enumerate() {
            labels.push(target_class(target)?);
            let mut base = 0;
            for (a, (v, cats)) in row.iter().zip(&self.categories).enumerate() {
                let k = cats.binary_search(v).map_err(|_| {
                    Error::invalid_input(format!(
                        "row {i}: category '{v}' of attribute {} was not seen when fitting",
                        self.attribute_names[a]
                    ))
                })?;
                values[i * n + base + k] = 1.0;
                base += cats.len();
            }
        }
        SparseDataset::new(values, self.feature_names(), labels, 2)
    }
}

/// Fits an encoder on `table` and encodes it.
pub fn one_hot_encode(table: &CategoricalTable) -> Result<(OneHotEncoder, SparseDataset)> {
    let enc = OneHotEncoder::fit(table)?;
    let ds = enc.encode(table)?;
    Ok((enc, ds))
}
