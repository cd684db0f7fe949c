//! Grid fill orders: which pixel of a `P × P` image receives the n-th
//! selected feature.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Returns the smallest even `P` with `P * P >= n_features`.
pub fn image_side(n_features: usize) -> Result<usize> {
    if n_features == 0 {
        return Err(Error::invalid_argument("feature count must be at least 1"));
    }
    // Integer ceil(sqrt(n)); avoids float rounding near perfect squares.
    let mut p = (n_features as f64).sqrt() as usize;
    while p * p < n_features {
        p += 1;
    }
    while p > 0 && (p - 1) * (p - 1) >= n_features {
        p -= 1;
    }
    Ok(if p.is_multiple_of(2) { p } else { p + 1 })
}

/// How feature ranks are laid out on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FillVariant {
    /// Boustrophedon rows: left to right on even rows, right to left on odd rows.
    Linear,
    /// Center-out square rings followed by the bottom/right border.
    Circular,
    /// Plain row-major.
    Raster,
}

impl FillVariant {
    pub fn order(self, side: usize) -> Result<FillOrder> {
        match self {
            FillVariant::Linear => linear_fill_order(side),
            FillVariant::Circular => circular_fill_order(side),
            FillVariant::Raster => raster_fill_order(side),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FillVariant::Linear => "LINEAR",
            FillVariant::Circular => "CIRCULAR",
            FillVariant::Raster => "RASTER",
        }
    }
}

impl fmt::Display for FillVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FillVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(FillVariant::Linear),
            "circular" => Ok(FillVariant::Circular),
            "raster" => Ok(FillVariant::Raster),
            other => Err(Error::invalid_argument(format!("unknown fill variant '{other}'"))),
        }
    }
}

/// A bijection from visit rank `0..P²` to grid cell `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillOrder {
    side: usize,
    cells: Vec<(usize, usize)>,
}

impl FillOrder {
    pub fn side(&self) -> usize {
        self.side
    }

    /// Cells indexed by visit rank.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn cell(&self, rank: usize) -> (usize, usize) {
        self.cells[rank]
    }

    /// Row-major flat pixel offset for each rank.
    pub fn offsets(&self) -> Vec<usize> {
        self.cells.iter().map(|&(r, c)| r * self.side + c).collect()
    }

    /// Inverse map: the `P × P` grid (row-major) holding each cell's rank.
    pub fn rank_grid(&self) -> Vec<usize> {
        let mut grid = vec![0; self.side * self.side];
        for (rank, &(r, c)) in self.cells.iter().enumerate() {
            grid[r * self.side + c] = rank;
        }
        grid
    }

    fn is_bijection(&self) -> bool {
        let n = self.side * self.side;
        if self.cells.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &(r, c) in &self.cells {
            if r >= self.side || c >= self.side || std::mem::replace(&mut seen[r * self.side + c], true) {
                return false;
            }
        }
        true
    }
}

fn check_side(side: usize) -> Result<()> {
    if side == 0 || !side.is_multiple_of(2) {
        return Err(Error::invalid_argument(format!(
            "grid side must be even and positive, got {side}"
        )));
    }
    Ok(())
}

pub fn linear_fill_order(side: usize) -> Result<FillOrder> {
    check_side(side)?;
    let cells = (0..side * side)
        .map(|r| {
            let row = r / side;
            let k = r % side;
            (row, if row.is_multiple_of(2) { k } else { side - 1 - k })
        })
        .collect();
    Ok(FillOrder { side, cells })
}

pub fn raster_fill_order(side: usize) -> Result<FillOrder> {
    check_side(side)?;
    let cells = (0..side * side).map(|r| (r / side, r % side)).collect();
    Ok(FillOrder { side, cells })
}

/// Center-out ring spiral.
///
/// Starts at `(c, c)` with `c = P/2 - 1`. Each ring of radius `r` covers the
/// box `[c-r, c+r]²`: down its left column, right along its bottom row, up its
/// right column, then left along its top row stopping one short of the start.
/// The last row and last column, which no ring reaches on an even grid, are
/// visited last: bottom row left to right, then right column bottom to top.
pub fn circular_fill_order(side: usize) -> Result<FillOrder> {
    check_side(side)?;
    let c = side / 2 - 1;
    let mut cells = Vec::with_capacity(side * side);
    cells.push((c, c));
    for r in 1..side / 2 {
        let (lo, hi) = (c - r, c + r);
        cells.extend((lo..=hi).map(|row| (row, lo)));
        cells.extend((lo + 1..=hi).map(|col| (hi, col)));
        cells.extend((lo..hi).rev().map(|row| (row, hi)));
        cells.extend((lo + 1..hi).rev().map(|col| (lo, col)));
    }
    let last = side - 1;
    cells.extend((0..side).map(|col| (last, col)));
    cells.extend((0..last).rev().map(|row| (row, last)));
    let order = FillOrder { side, cells };
    debug_assert!(order.is_bijection());
    Ok(order)
}
