//! Exact Euclidean distance transform (Meijster's two-pass algorithm) and
//! the signed distance field built from it.

use super::{BinaryMask, ScalarField};
use crate::error::{Error, Result};

/// Signed Euclidean distance to the mask boundary: each pixel holds the
/// exact distance to the nearest pixel of the opposite value, negative
/// inside the mask and positive outside.
///
/// Fails with [`Error::NoBoundary`] when the mask is uniform.
pub fn signed_distance(mask: &BinaryMask) -> Result<ScalarField> {
    if mask.is_empty() || mask.is_full() {
        return Err(Error::NoBoundary);
    }
    let to_ones = squared_distance_to(mask, true);
    let to_zeros = squared_distance_to(mask, false);
    let mut field = ScalarField::zeros(mask.width(), mask.height());
    for row in 0..mask.height() {
        for col in 0..mask.width() {
            let i = row * mask.width() + col;
            let value = if mask.get(row, col) {
                -(to_zeros[i] as f64).sqrt()
            } else {
                (to_ones[i] as f64).sqrt()
            };
            field.set(row, col, value);
        }
    }
    Ok(field)
}

/// Squared Euclidean distance from every pixel to the nearest pixel whose
/// value equals `feature`. Exact integer arithmetic throughout.
pub(crate) fn squared_distance_to(mask: &BinaryMask, feature: bool) -> Vec<i64> {
    let w = mask.width();
    let h = mask.height();
    // No real distance can reach w + h, so this acts as infinity while
    // keeping squares well inside i64 range.
    let inf = (w + h) as i64;

    // First pass: per-column vertical distances.
    let mut g = vec![inf; w * h];
    for col in 0..w {
        if mask.get(0, col) == feature {
            g[col] = 0;
        }
        for row in 1..h {
            let i = row * w + col;
            g[i] = if mask.get(row, col) == feature {
                0
            } else {
                (g[i - w] + 1).min(inf)
            };
        }
        for row in (0..h - 1).rev() {
            let i = row * w + col;
            if g[i + w] + 1 < g[i] {
                g[i] = g[i + w] + 1;
            }
        }
    }

    // Second pass: per-row lower envelope of the parabolas
    // f(x, i) = (x - i)^2 + g(i)^2.
    let mut dist = vec![0i64; w * h];
    let mut s = vec![0usize; w];
    let mut t = vec![0i64; w];
    for row in 0..h {
        let grow = &g[row * w..(row + 1) * w];
        let f = |x: i64, i: usize| -> i64 {
            let dx = x - i as i64;
            dx * dx + grow[i] * grow[i]
        };
        // Horizontal position where the parabola at u overtakes the one at i.
        let sep = |i: usize, u: usize| -> i64 {
            let (i, u) = (i as i64, u as i64);
            let gi = grow[i as usize];
            let gu = grow[u as usize];
            (u * u - i * i + gu * gu - gi * gi).div_euclid(2 * (u - i))
        };

        let mut q: isize = 0;
        s[0] = 0;
        t[0] = 0;
        for u in 1..w {
            while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
                q -= 1;
            }
            if q < 0 {
                q = 0;
                s[0] = u;
                t[0] = 0;
            } else {
                let boundary = 1 + sep(s[q as usize], u);
                if boundary < w as i64 {
                    q += 1;
                    s[q as usize] = u;
                    t[q as usize] = boundary;
                }
            }
        }
        for x in (0..w).rev() {
            dist[row * w + x] = f(x as i64, s[q as usize]);
            if x as i64 == t[q as usize] {
                q -= 1;
            }
        }
    }
    dist
}
