//! Files: NPY arrays, PNG previews and the on-disk dataset directory.

pub mod dataset_dir;
pub mod npy;
mod preview;

pub use dataset_dir::{describe_input_file, read_dataset_dir, write_dataset_dir, DatasetMeta};
pub use npy::{read_array, write_array, Precision};
pub use preview::{preview_dimensions, render_preview, render_preview_gray};
