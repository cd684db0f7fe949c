//! Shared test helpers. Also pulled into the CLI crate's tests by path.
#![allow(dead_code)]

pub mod mushroom;
pub mod oracles;

use std::path::PathBuf;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

pub fn mnist_fixture() -> (PathBuf, PathBuf) {
    let d = data_dir();
    (d.join("mnist-100-images-idx3-ubyte"), d.join("mnist-100-labels-idx1-ubyte"))
}
