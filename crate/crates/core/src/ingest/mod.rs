//! Loading datasets and preparing bootstrap samples.

mod categorical;
mod idx;
mod resample;

pub use categorical::{one_hot_encode, read_categorical_csv, CategoricalTable, OneHotEncoder};
pub use idx::{read_idx, read_idx_bytes, write_idx};
pub use resample::{bootstrap_split, invert_features, BootstrapSplit, SplitSpec};
