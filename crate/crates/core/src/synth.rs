//! Rasterizers for synthetic test scenes: disks, rectangles, ellipses and
//! half-planes. A pixel is inside a shape when its center is.

use crate::raster::BinaryMask;

/// Disk of radius `r` centered at `(center_row, center_col)`.
pub fn disk(width: usize, height: usize, center_row: f64, center_col: f64, r: f64) -> BinaryMask {
    BinaryMask::from_fn(width, height, |row, col| {
        let dr = row as f64 - center_row;
        let dc = col as f64 - center_col;
        dr * dr + dc * dc <= r * r
    })
}

/// Axis-aligned rectangle covering `rows` x `cols` (half-open ranges).
pub fn rectangle(
    width: usize,
    height: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> BinaryMask {
    BinaryMask::from_fn(width, height, |row, col| rows.contains(&row) && cols.contains(&col))
}

/// Axis-aligned ellipse with semi-axes `a` (columns) and `b` (rows).
pub fn ellipse(
    width: usize,
    height: usize,
    center_row: f64,
    center_col: f64,
    a: f64,
    b: f64,
) -> BinaryMask {
    BinaryMask::from_fn(width, height, |row, col| {
        let dr = (row as f64 - center_row) / b;
        let dc = (col as f64 - center_col) / a;
        dr * dr + dc * dc <= 1.0
    })
}

/// Half-plane `{(row, col) : a*col + b*row <= c}`.
pub fn half_plane(width: usize, height: usize, a: f64, b: f64, c: f64) -> BinaryMask {
    BinaryMask::from_fn(width, height, |row, col| a * col as f64 + b * row as f64 <= c)
}
