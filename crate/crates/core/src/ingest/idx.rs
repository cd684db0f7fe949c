//! IDX files (the MNIST distribution format).
//!
//! Images: big-endian magic `0x00000803`, then `count`, `rows`, `cols` as
//! u32, then `count * rows * cols` unsigned bytes row-major.
//! Labels: magic `0x00000801`, `count`, then `count` bytes.

use std::fs;
use std::path::Path;

use crate::dataset::SparseDataset;
use crate::error::{Error, Result};

const IMAGES_MAGIC: u32 = 0x0000_0803;
const LABELS_MAGIC: u32 = 0x0000_0801;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    what: &'static str,
}

impl<'a> Cursor<'a> {
    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or_else(|| {
            Error::parse(
                self.bytes.len(),
                format!("{} truncated: needed {n} bytes at offset {}", self.what, self.pos),
            )
        })?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }
}

/// Reads an image file and its label file into a dataset with one feature
/// per pixel (row-major) and raw 0–255 values.
pub fn read_idx(images_path: &Path, labels_path: &Path) -> Result<SparseDataset> {
    let images = fs::read(images_path).map_err(|e| Error::io(images_path, e))?;
    let labels = fs::read(labels_path).map_err(|e| Error::io(labels_path, e))?;
    read_idx_bytes(&images, &labels)
}

/// Class count is one more than the largest label present.
pub fn read_idx_bytes(images: &[u8], labels: &[u8]) -> Result<SparseDataset> {
    let mut img = Cursor { bytes: images, pos: 0, what: "image file" };
    let magic = img.u32()?;
    if magic != IMAGES_MAGIC {
        return Err(Error::parse(0, format!("bad image magic {magic:#010x}, expected {IMAGES_MAGIC:#010x}")));
    }
    let count = img.u32()? as usize;
    let rows = img.u32()? as usize;
    let cols = img.u32()? as usize;
    let area = rows * cols;
    let payload = img.take(count * area)?;
    if img.pos != images.len() {
        return Err(Error::parse(img.pos, "trailing bytes after image payload"));
    }

    let mut lab = Cursor { bytes: labels, pos: 0, what: "label file" };
    let magic = lab.u32()?;
    if magic != LABELS_MAGIC {
        return Err(Error::parse(0, format!("bad label magic {magic:#010x}, expected {LABELS_MAGIC:#010x}")));
    }
    let n_labels = lab.u32()? as usize;
    if n_labels != count {
        return Err(Error::parse(4, format!("label count {n_labels} does not match image count {count}")));
    }
    let label_bytes = lab.take(n_labels)?;
    if lab.pos != labels.len() {
        return Err(Error::parse(lab.pos, "trailing bytes after label payload"));
    }

    let labels: Vec<u32> = label_bytes.iter().map(|&b| u32::from(b)).collect();
    let n_classes = labels.iter().max().map_or(1, |&m| m + 1);
    let names = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| format!("r{r}c{c}")))
        .collect();
    let values = payload.iter().map(|&b| f64::from(b)).collect();
    SparseDataset::new(values, names, labels, n_classes)
}

/// Writes an image/label file pair. `pixels` holds `labels.len()` images of
/// `rows * cols` bytes each.
pub fn write_idx(
    images_path: &Path,
    labels_path: &Path,
    rows: usize,
    cols: usize,
    pixels: &[u8],
    labels: &[u8],
) -> Result<()> {
    if pixels.len() != labels.len() * rows * cols {
        return Err(Error::ShapeMismatch {
            expected: format!("{} images of {rows}x{cols}", labels.len()),
            found: format!("{} pixel bytes", pixels.len()),
        });
    }
    let mut img = Vec::with_capacity(16 + pixels.len());
    for v in [IMAGES_MAGIC, labels.len() as u32, rows as u32, cols as u32] {
        img.extend_from_slice(&v.to_be_bytes());
    }
    img.extend_from_slice(pixels);
    let mut lab = Vec::with_capacity(8 + labels.len());
    for v in [LABELS_MAGIC, labels.len() as u32] {
        lab.extend_from_slice(&v.to_be_bytes());
    }
    lab.extend_from_slice(labels);
    fs::write(images_path, img).map_err(|e| Error::io(images_path, e))?;
    fs::write(labels_path, lab).map_err(|e| Error::io(labels_path, e))?;
    Ok(())
}
