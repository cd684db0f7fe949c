//! Grayscale PNG contact sheets of selected images.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::error::{Error, Result};
use crate::transform::ImageSet;

const BORDER: u8 = 255;
const FLAT: u8 = 128;

/// `(width, height)` in pixels of a sheet with `count` tiles of side `side`
/// laid out `cols` per row, with 1-pixel borders around every tile.
pub fn preview_dimensions(count: usize, side: usize, cols: usize) -> (usize, usize) {
    let rows = count.div_ceil(cols.max(1));
    (cols * side + cols + 1, rows * side + rows + 1)
}

/// Renders the sheet into a row-major 8-bit buffer.
///
/// Intensities are min–max scaled over all selected images together. If the
/// selection holds a single value everywhere, every tile is drawn mid-gray.
pub fn render_preview_gray(
    images: &ImageSet,
    sample_indices: &[usize],
    grid_cols: usize,
) -> Result<(usize, usize, Vec<u8>)> {
    if sample_indices.is_empty() {
        return Err(Error::invalid_argument("no samples selected for preview"));
    }
    if grid_cols == 0 {
        return Err(Error::invalid_argument("preview needs at least one column"));
    }
    if let Some(&bad) = sample_indices.iter().find(|&&i| i >= images.count()) {
        return Err(Error::invalid_argument(format!(
            "sample {bad} out of range for {} images",
            images.count()
        )));
    }

    let (lo, hi) = sample_indices
        .iter()
        .flat_map(|&i| images.image(i).iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let range = hi - lo;
    let scale = |v: f64| -> u8 {
        if range > 0.0 {
            ((v - lo) / range * 255.0).round() as u8
        } else {
            FLAT
        }
    };

    let side = images.side();
    let (width, height) = preview_dimensions(sample_indices.len(), side, grid_cols);
    let mut buf = vec![BORDER; width * height];
    for (slot, &i) in sample_indices.iter().enumerate() {
        let top = (slot / grid_cols) * (side + 1) + 1;
        let left = (slot % grid_cols) * (side + 1) + 1;
        for (r, row) in images.image(i).chunks_exact(side).enumerate() {
            let dst = (top + r) * width + left;
            for (px, &v) in buf[dst..dst + side].iter_mut().zip(row) {
                *px = scale(v);
            }
        }
    }
    Ok((width, height, buf))
}

/// Writes the sheet from [`render_preview_gray`] as an 8-bit grayscale PNG.
pub fn render_preview(images: &ImageSet, sample_indices: &[usize], grid_cols: usize, path: &Path) -> Result<()> {
    let (width, height, buf) = render_preview_gray(images, sample_indices, grid_cols)?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut enc = png::Encoder::new(BufWriter::new(file), width as u32, height as u32);
    enc.set_color(png::ColorType::Grayscale);
    enc.set_depth(png::BitDepth::Eight);
    let to_io = |e: png::EncodingError| Error::io(path, std::io::Error::other(e));
    let mut writer = enc.write_header().map_err(to_io)?;
    writer.write_image_data(&buf).map_err(to_io)?;
    writer.finish().map_err(to_io)?;
    Ok(())
}
