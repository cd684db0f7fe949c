//! Synthetic stand-in for the UCI Mushroom file: same layout (target first,
//! 22 single-letter categorical attributes, '?' for missing stalk-root),
//! same row count and class balance, and each attribute's observed category
//! set. Attribute values depend on the class so correlations are non-trivial.
//!
//! Set `MUSHROOM_DATA=/path/to/agaricus-lepiota.data` to use the real file.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};

pub const ROWS: usize = 8124;
const EDIBLE: usize = 4208;

/// Categories observed per attribute in the UCI file.
pub const CATEGORIES: [&str; 22] = [
    "bcfkxs", "fgsy", "bcegnprwuy", "ft", "acflmnpsy", "af", "cw", "bn", "beghknopruwy", "et",
    "?bcer", "fksy", "fksy", "bcegnopwy", "bcegnopwy", "p", "nowy", "not", "eflnp", "bhknoruwy",
    "acnsvy", "dglmpuw",
];

pub fn generate(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Per attribute and class, an unnormalized weight per category.
    let weights: Vec<[Vec<f64>; 2]> = CATEGORIES
        .iter()
        .map(|cats| {
            let mut w = || (0..cats.len()).map(|_| rng.random_range(0.2..1.0f64).powi(3)).collect();
            [w(), w()]
        })
        .collect();
    let mut classes: Vec<usize> = (0..ROWS).map(|r| usize::from(r >= EDIBLE)).collect();
    for i in (1..ROWS).rev() {
        classes.swap(i, rng.random_range(0..=i));
    }
    let mut out = String::with_capacity(ROWS * 46);
    for class in classes {
        out.push(if class == 0 { 'e' } else { 'p' });
        for (cats, w) in CATEGORIES.iter().zip(&weights) {
            let w = &w[class];
            let total: f64 = w.iter().sum();
            let mut u = rng.random_range(0.0..total);
            let mut pick = cats.len() - 1;
            for (k, &wk) in w.iter().enumerate() {
                if u < wk {
                    pick = k;
                    break;
                }
                u -= wk;
            }
            out.push(',');
            out.push(cats.as_bytes()[pick] as char);
        }
        out.push('\n');
    }
    out
}

/// The real file if `MUSHROOM_DATA` points at one, otherwise a synthetic file
/// written into `dir`.
pub fn mushroom_file(dir: &Path) -> PathBuf {
    if let Some(p) = std::env::var_os("MUSHROOM_DATA") {
        return PathBuf::from(p);
    }
    let path = dir.join("agaricus-lepiota.data");
    std::fs::write(&path, generate(2020)).unwrap();
    path
}
