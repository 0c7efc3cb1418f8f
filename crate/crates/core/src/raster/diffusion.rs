//! Discrete Gaussian scale-space: exact solution of the semi-discrete heat
//! equation dv/dt = Lv, where L is the 5-point Laplacian with zero-flux
//! (Neumann) walls at the image frame.
//!
//! The grid Laplacian is diagonalized by the separable cosine basis
//! phi_p(k) = cos(pi p (k + 1/2) / n) with eigenvalue 2 cos(pi p / n) - 2,
//! so the semigroup exp(tL) is applied exactly: forward cosine transform,
//! per-mode decay exp(t (lambda_row + lambda_col)), inverse transform.
//! Grids are small, so the transforms are plain dense matrix products.

use super::ScalarField;
use crate::error::{Error, Result};

/// Diffuses `field` for scale `s`, i.e. runs the heat equation for time
/// t = s^2. Mass (the total sum) is conserved; a nonnegative input stays
/// nonnegative.
pub fn heat_convolve(field: &ScalarField, s: f64) -> Result<ScalarField> {
    if s < 0.0 {
        return Err(Error::NegativeScale(s));
    }
    let t = s * s;
    if t == 0.0 {
        return Ok(field.clone());
    }

    let w = field.width();
    let h = field.height();
    let row_basis = cosine_basis(w);
    let col_basis = cosine_basis(h);

    // Forward transform along rows, then columns.
    let mut coeff = vec![0.0f64; w * h];
    let mut tmp = vec![0.0f64; w * h];
    for row in 0..h {
        forward_line(&row_basis, field.values(), row * w, 1, w, &mut tmp[row * w..(row + 1) * w]);
    }
    for col in 0..w {
        let mut line = vec![0.0f64; h];
        forward_line(&col_basis, &tmp, col, w, h, &mut line);
        for (row, v) in line.iter().enumerate() {
            coeff[row * w + col] = *v;
        }
    }

    // Per-mode decay.
    let decay_w: Vec<f64> = (0..w).map(|p| (t * eigenvalue(p, w)).exp()).collect();
    let decay_h: Vec<f64> = (0..h).map(|p| (t * eigenvalue(p, h)).exp()).collect();
    for row in 0..h {
        for col in 0..w {
            coeff[row * w + col] *= decay_h[row] * decay_w[col];
        }
    }

    // Inverse transform along columns, then rows.
    for col in 0..w {
        let mut line = vec![0.0f64; h];
        inverse_line(&col_basis, &coeff, col, w, h, &mut line);
        for (row, v) in line.iter().enumerate() {
            tmp[row * w + col] = *v;
        }
    }
    let mut out = ScalarField::zeros(w, h);
    for row in 0..h {
        let mut line = vec![0.0f64; w];
        inverse_line(&row_basis, &tmp, row * w, 1, w, &mut line);
        out.values_mut()[row * w..(row + 1) * w].copy_from_slice(&line);
    }

    // exp(tL) is a stochastic matrix, so negatives from a nonnegative input
    // can only be rounding noise; scrub them to keep sign invariants exact.
    if field.values().iter().all(|&v| v >= 0.0) {
        for v in out.values_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
    }
    Ok(out)
}

/// Eigenvalue of the 1-D zero-flux Laplacian for mode `p` on `n` points.
fn eigenvalue(p: usize, n: usize) -> f64 {
    2.0 * (std::f64::consts::PI * p as f64 / n as f64).cos() - 2.0
}

/// Orthonormal cosine basis: basis[p * n + k] = w_p cos(pi p (k+1/2) / n).
fn cosine_basis(n: usize) -> Vec<f64> {
    let mut basis = vec![0.0f64; n * n];
    let w0 = (1.0 / n as f64).sqrt();
    let wp = (2.0 / n as f64).sqrt();
    for p in 0..n {
        let weight = if p == 0 { w0 } else { wp };
        for k in 0..n {
            let angle = std::f64::consts::PI * p as f64 * (k as f64 + 0.5) / n as f64;
            basis[p * n + k] = weight * angle.cos();
        }
    }
    basis
}

fn forward_line(basis: &[f64], data: &[f64], start: usize, stride: usize, n: usize, out: &mut [f64]) {
    for p in 0..n {
        let mut acc = 0.0;
        for k in 0..n {
            acc += basis[p * n + k] * data[start + k * stride];
        }
        out[p] = acc;
    }
}

fn inverse_line(basis: &[f64], data: &[f64], start: usize, stride: usize, n: usize, out: &mut [f64]) {
    for k in 0..n {
        let mut acc = 0.0;
        for p in 0..n {
            acc += basis[p * n + k] * data[start + p * stride];
        }
        out[k] = acc;
    }
}
