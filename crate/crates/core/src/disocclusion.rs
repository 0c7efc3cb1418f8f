//! Elastica-minimizing binary inpainting by threshold dynamics: each
//! iteration applies one Grzibovskis-Heintz step (driving the squared
//! curvature down), one Merriman-Bence-Osher step (driving the length
//! down), and a fidelity step that restores every pixel outside the
//! inpainting region from the input.

use crate::error::{Error, Result};
use crate::raster::{heat_convolve, require_same_dims, BinaryMask};

/// Parameters of the threshold-dynamics iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdDynamicsConfig {
    /// Grzibovskis-Heintz kernel ratio; must lie in (0, 1), close to 1.
    pub alpha: f64,
    /// Diffusion time of one step.
    pub dt: f64,
    /// Elastica length weight.
    pub beta: f64,
    /// Stop when the fraction of changed pixels drops to this value.
    pub stop_tol: f64,
    /// Iteration cap; hitting it flags the result unconverged.
    pub max_iters: usize,
}

impl Default for ThresholdDynamicsConfig {
    fn default() -> Self {
        ThresholdDynamicsConfig {
            alpha: 0.99,
            dt: 12.0,
            beta: 0.6,
            stop_tol: 1e-3,
            max_iters: 500,
        }
    }
}

impl ThresholdDynamicsConfig {
    pub fn validate(&self) -> Result<()> {
        // NaN fails every comparison, so each check also rejects it.
        let in_unit = self.alpha > 0.0 && self.alpha < 1.0;
        if !in_unit {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        let positive_dt = self.dt > 0.0;
        if !positive_dt {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        let nonnegative_beta = self.beta >= 0.0;
        if !nonnegative_beta {
            return Err(Error::InvalidConfig(format!(
                "beta must be nonnegative, got {}",
                self.beta
            )));
        }
        let positive_tol = self.stop_tol > 0.0;
        if !positive_tol {
            return Err(Error::InvalidConfig(format!(
                "stop_tol must be positive, got {}",
                self.stop_tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive".into()));
        }
        Ok(())
    }
}

/// Completed shape plus convergence bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct InpaintResult {
    pub shape: BinaryMask,
    pub converged: bool,
    pub iterations: usize,
}

/// One Grzibovskis-Heintz step: keep the pixels where
/// `2 alpha G_sqrt(dt) * 1_shape - 2 G_(alpha^2 sqrt(dt)) * 1_shape <= alpha - 1`.
pub fn gh_step(shape: &BinaryMask, cfg: &ThresholdDynamicsConfig) -> BinaryMask {
    let field = shape.to_field();
    let wide = heat_convolve(&field, cfg.dt.sqrt()).expect("scale is nonnegative");
    let narrow =
        heat_convolve(&field, cfg.alpha * cfg.alpha * cfg.dt.sqrt()).expect("scale is nonnegative");
    let threshold = cfg.alpha - 1.0;
    BinaryMask::from_fn(shape.width(), shape.height(), |row, col| {
        2.0 * cfg.alpha * wide.get(row, col) - 2.0 * narrow.get(row, col) <= threshold
    })
}

/// One Merriman-Bence-Osher step: diffuse the indicator for time
/// `beta * dt` and keep the pixels at or above 1/2. Pairing the length step
/// at time `beta * dt` with the curvature step at time `dt` is what weights
/// length against squared curvature by `beta`, independently of `dt`.
pub fn mbo_step(shape: &BinaryMask, cfg: &ThresholdDynamicsConfig) -> BinaryMask {
    let field = shape.to_field();
    let diffused =
        heat_convolve(&field, (cfg.beta * cfg.dt).sqrt()).expect("scale is nonnegative");
    diffused.threshold(|v| v >= 0.5)
}

/// Inpaints the region `inpaint_mask` of the shape `visible`, starting from
/// `visible` united with `init_fill`. Pixels outside the region always equal
/// the input; iteration stops once the changed-pixel fraction drops to
/// `stop_tol` (or at `max_iters`, flagged unconverged).
pub fn inpaint(
    visible: &BinaryMask,
    inpaint_mask: &BinaryMask,
    init_fill: &BinaryMask,
    cfg: &ThresholdDynamicsConfig,
) -> Result<InpaintResult> {
    inpaint_with_observer(visible, inpaint_mask, init_fill, cfg, |_| {})
}

/// Same as [`inpaint`], invoking `observer` with every iterate (including
/// the initial shape) as it is produced.
pub fn inpaint_with_observer(
    visible: &BinaryMask,
    inpaint_mask: &BinaryMask,
    init_fill: &BinaryMask,
    cfg: &ThresholdDynamicsConfig,
    mut observer: impl FnMut(&BinaryMask),
) -> Result<InpaintResult> {
    cfg.validate()?;
    require_same_dims(visible, inpaint_mask)?;
    require_same_dims(visible, init_fill)?;
    if !visible.is_disjoint(inpaint_mask) {
        return Err(Error::RegionsOverlap {
            context: "visible shape vs inpainting region",
        });
    }
    if !init_fill.is_subset_of(inpaint_mask) {
        return Err(Error::FillOutsideRegion);
    }

    let total = (visible.width() * visible.height()) as f64;
    let mut shape = visible.union(init_fill);
    observer(&shape);
    for iteration in 1..=cfg.max_iters {
        let smoothed = mbo_step(&gh_step(&shape, cfg), cfg);
        let next = BinaryMask::from_fn(shape.width(), shape.height(), |row, col| {
            if inpaint_mask.get(row, col) {
                smoothed.get(row, col)
            } else {
                visible.get(row, col)
            }
        });
        observer(&next);
        let changed = count_diff(&next, &shape);
        shape = next;
        if changed as f64 / total <= cfg.stop_tol {
            return Ok(InpaintResult {
                shape,
                converged: true,
                iterations: iteration,
            });
        }
    }
    Ok(InpaintResult {
        shape,
        converged: false,
        iterations: cfg.max_iters,
    })
}

fn count_diff(a: &BinaryMask, b: &BinaryMask) -> usize {
    let mut n = 0;
    for row in 0..a.height() {
        for col in 0..a.width() {
            if a.get(row, col) != b.get(row, col) {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn cfg() -> ThresholdDynamicsConfig {
        ThresholdDynamicsConfig::default()
    }

    #[test]
    fn gh_keeps_flat_fields_fixed() {
        let ones = BinaryMask::from_fn(16, 16, |_, _| true);
        assert_eq!(gh_step(&ones, &cfg()), ones);
        let zeros = BinaryMask::new(16, 16);
        assert_eq!(gh_step(&zeros, &cfg()), zeros);
    }

    #[test]
    fn gh_leaves_a_half_plane_interior_alone() {
        let mask = synth::half_plane(64, 64, 1.0, 0.0, 31.0);
        let out = gh_step(&mask, &cfg());
        for row in 0..64usize {
            for col in 0..64usize {
                let dist = col as f64 - 31.0;
                if dist.abs() >= 3.0 {
                    assert_eq!(out.get(row, col), mask.get(row, col), "at ({row},{col})");
                }
            }
        }
    }

    #[test]
    fn mbo_keeps_all_ones_and_barely_moves_a_straight_edge() {
        let ones = BinaryMask::from_fn(16, 16, |_, _| true);
        assert_eq!(mbo_step(&ones, &cfg()), ones);

        let edge = synth::half_plane(64, 64, 1.0, 0.0, 31.0);
        let out = mbo_step(&edge, &cfg());
        for row in 0..64usize {
            for col in 0..64usize {
                let dist = col as f64 - 31.0;
                if dist.abs() >= 1.5 {
                    assert_eq!(out.get(row, col), edge.get(row, col), "at ({row},{col})");
                }
            }
        }
    }

    #[test]
    fn mbo_shrinks_a_small_disk() {
        let disk = synth::disk(64, 64, 31.5, 31.5, 8.0);
        let out = mbo_step(&disk, &cfg());
        assert!(out.count_ones() < disk.count_ones());
    }

    #[test]
    fn isolated_region_stays_empty() {
        let visible = synth::rectangle(64, 64, 4..10, 4..10);
        let mask = synth::rectangle(64, 64, 40..56, 40..56);
        let empty = BinaryMask::new(64, 64);
        let result = inpaint(&visible, &mask, &empty, &cfg()).unwrap();
        assert!(result.converged);
        assert_eq!(result.shape, visible);
    }

    #[test]
    fn overlap_and_leaking_fill_are_rejected() {
        let visible = synth::rectangle(32, 32, 4..20, 4..20);
        let overlapping = synth::rectangle(32, 32, 10..28, 10..28);
        let empty = BinaryMask::new(32, 32);
        assert!(matches!(
            inpaint(&visible, &overlapping, &empty, &cfg()),
            Err(Error::RegionsOverlap { .. })
        ));

        let mask = synth::rectangle(32, 32, 24..30, 24..30);
        let leaking = synth::rectangle(32, 32, 0..2, 0..2);
        assert!(matches!(
            inpaint(&visible, &mask, &leaking, &cfg()),
            Err(Error::FillOutsideRegion)
        ));
    }

    #[test]
    fn fidelity_holds_on_every_iterate() {
        let disk = synth::disk(96, 96, 48.0, 48.0, 24.0);
        let square = synth::rectangle(96, 96, 16..48, 48..80);
        let visible = disk.difference(&square);
        let fill = square.clone();
        let mut violations = 0usize;
        let result = inpaint_with_observer(&visible, &square, &fill, &cfg(), |iterate| {
            for row in 0..96 {
                for col in 0..96 {
                    if !square.get(row, col) && iterate.get(row, col) != visible.get(row, col) {
                        violations += 1;
                    }
                }
            }
        })
        .unwrap();
        assert_eq!(violations, 0);
        assert!(visible.is_subset_of(&result.shape));
    }

    #[test]
    fn identical_inputs_give_identical_outputs() {
        let disk = synth::disk(64, 64, 32.0, 32.0, 16.0);
        let square = synth::rectangle(64, 64, 8..32, 32..56);
        let visible = disk.difference(&square);
        let fill = square.clone();
        let a = inpaint(&visible, &square, &fill, &cfg()).unwrap();
        let b = inpaint(&visible, &square, &fill, &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rerunning_on_stationary_output_is_stable() {
        // Two abutting rectangles: the shared straight edge is stationary
        // under the dynamics, so the converged output is a true fixpoint.
        let visible = synth::rectangle(128, 128, 20..50, 44..84);
        let mask = synth::rectangle(128, 128, 50..70, 44..84);
        let empty = BinaryMask::new(128, 128);
        let first = inpaint(&visible, &mask, &empty, &cfg()).unwrap();
        assert!(first.converged);
        let refill = first.shape.intersection(&mask);
        let second = inpaint(&visible, &mask, &refill, &cfg()).unwrap();
        let changed = count_diff(&second.shape, &first.shape);
        assert!(changed as f64 / (128.0 * 128.0) <= cfg().stop_tol);
    }
}
