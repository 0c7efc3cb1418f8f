//! End-to-end pipeline: bi-level decomposition or label selection, the
//! three hypotheses, scoring, and report/mask emission.

use std::path::Path;

use serde::Serialize;

use crate::complexity::ComplexityParams;
use crate::disocclusion::ThresholdDynamicsConfig;
use crate::error::{Error, Result};
use crate::geometry::ElasticaParams;
use crate::hypothesis::{build_hypotheses, interpret, Hypothesis, HypothesisReport, SceneInput};
use crate::io::{write_mask_pgm, GrayMap};
use crate::raster::BinaryMask;

/// User-facing configuration of a pipeline run.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunConfig {
    pub beta: f64,
    pub alpha: f64,
    pub dt: f64,
    pub stop_tol: f64,
    pub max_iters: usize,
    pub fit_window: usize,
    /// Strictly increasing bi-level thresholds for grayscale input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<f64>>,
    /// Two labels selecting the scene regions of a label map.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<(u32, u32)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            beta: 0.6,
            alpha: 0.99,
            dt: 12.0,
            stop_tol: 1e-3,
            max_iters: 500,
            fit_window: 7,
            thresholds: None,
            labels: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.dynamics().validate()?;
        if self.fit_window < 2 {
            return Err(Error::InvalidConfig("fit_window must be at least 2".into()));
        }
        if let Some(ts) = &self.thresholds {
            if ts.len() < 2 || ts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidThresholds);
            }
        }
        Ok(())
    }

    pub fn dynamics(&self) -> ThresholdDynamicsConfig {
        ThresholdDynamicsConfig {
            alpha: self.alpha,
            dt: self.dt,
            beta: self.beta,
            stop_tol: self.stop_tol,
            max_iters: self.max_iters,
        }
    }

    pub fn elastica(&self) -> ElasticaParams {
        ElasticaParams { beta: self.beta }
    }
}

/// Full report written to disk: the interpretation plus the configuration
/// that produced it. Field order is the serialization order.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub hypotheses: Vec<HypothesisReport>,
    pub selected: u8,
    pub omega1: f64,
    pub omega2: f64,
    pub config: RunConfig,
}

/// Hypotheses plus the report.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub hypotheses: [Hypothesis; 3],
    pub report: Report,
}

/// One mask per consecutive threshold pair: pixels with
/// `t[n] <= value < t[n+1]`. Masks are pairwise disjoint.
pub fn decompose_bilevel(image: &GrayMap, thresholds: &[f64]) -> Result<Vec<BinaryMask>> {
    if thresholds.len() < 2 || thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidThresholds);
    }
    Ok(thresholds
        .windows(2)
        .map(|pair| {
            BinaryMask::from_fn(image.width, image.height, |row, col| {
                let v = image.get(row, col) as f64;
                pair[0] <= v && v < pair[1]
            })
        })
        .collect())
}

/// Decomposes a grayscale image and picks the scene pair: the bi-level set
/// holding the most frame pixels is background; of the rest, the two
/// largest sets become X1 and X2 (in band order).
pub fn scene_from_bilevel(image: &GrayMap, thresholds: &[f64]) -> Result<SceneInput> {
    let masks = decompose_bilevel(image, thresholds)?;
    let frame_count = |mask: &BinaryMask| -> usize {
        let (w, h) = (mask.width(), mask.height());
        mask.ones()
            .filter(|p| p.row == 0 || p.col == 0 || p.row == h - 1 || p.col == w - 1)
            .count()
    };
    // Only a set that actually reaches the frame can be background.
    let background = masks
        .iter()
        .enumerate()
        .map(|(i, m)| (frame_count(m), m.count_ones(), std::cmp::Reverse(i)))
        .enumerate()
        .filter(|(_, key)| key.0 > 0)
        .max_by_key(|(_, key)| *key)
        .map(|(i, _)| i);

    let mut candidates: Vec<(usize, usize)> = masks
        .iter()
        .enumerate()
        .filter(|(i, m)| Some(*i) != background && !m.is_empty())
        .map(|(i, m)| (i, m.count_ones()))
        .collect();
    if candidates.len() < 2 {
        return Err(Error::NeedTwoObjects);
    }
    candidates.sort_by_key(|&(i, area)| (std::cmp::Reverse(area), i));
    let mut picked = [candidates[0].0, candidates[1].0];
    picked.sort();
    SceneInput::new(masks[picked[0]].clone(), masks[picked[1]].clone())
}

/// Builds the scene pair from a label map.
pub fn scene_from_labels(labels: &GrayMap, a: u32, b: u32) -> Result<SceneInput> {
    let mask_of = |label: u32| -> Result<BinaryMask> {
        let mask = BinaryMask::from_fn(labels.width, labels.height, |row, col| {
            labels.get(row, col) as u32 == label
        });
        if mask.is_empty() {
            Err(Error::EmptyLabel(label))
        } else {
            Ok(mask)
        }
    };
    SceneInput::new(mask_of(a)?, mask_of(b)?)
}

/// Runs hypothesis construction and scoring over a scene.
pub fn run_scene(scene: &SceneInput, config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let hypotheses = build_hypotheses(scene, &config.dynamics(), config.fit_window)?;
    let interpretation = interpret(
        &hypotheses,
        scene,
        &config.elastica(),
        &ComplexityParams::default(),
    )?;
    Ok(RunOutcome {
        hypotheses,
        report: Report {
            hypotheses: interpretation.hypotheses,
            selected: interpretation.selected,
            omega1: interpretation.omega1,
            omega2: interpretation.omega2,
            config: config.clone(),
        },
    })
}

/// Writes `report.json` (always) and the per-hypothesis layer and
/// completed-object masks (when `render` is set) into `out_dir`.
pub fn write_outputs(out_dir: &Path, outcome: &RunOutcome, render: bool) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let mut json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    json.push('\n');
    std::fs::write(out_dir.join("report.json"), json)?;
    if render {
        for h in &outcome.hypotheses {
            let prefix = format!("h{}", h.index);
            write_mask_pgm(&out_dir.join(format!("{prefix}_layer1.pgm")), &h.layer1)?;
            write_mask_pgm(&out_dir.join(format!("{prefix}_layer2.pgm")), &h.layer2)?;
            write_mask_pgm(&out_dir.join(format!("{prefix}_completed.pgm")), &h.completed)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn three_level_image() -> GrayMap {
        // Background 0, one object at 128, another at 255.
        let a = synth::rectangle(64, 64, 10..30, 10..30);
        let b = synth::rectangle(64, 64, 30..50, 10..30);
        GrayMap::from_fn(64, 64, |row, col| {
            if a.get(row, col) {
                128
            } else if b.get(row, col) {
                255
            } else {
                0
            }
        })
    }

    #[test]
    fn bilevel_masks_follow_the_threshold_pairs() {
        let image = three_level_image();
        let masks = decompose_bilevel(&image, &[64.0, 192.0, 256.0]).unwrap();
        assert_eq!(masks.len(), 2);
        assert_eq!(masks[0], synth::rectangle(64, 64, 10..30, 10..30));
        assert_eq!(masks[1], synth::rectangle(64, 64, 30..50, 10..30));
    }

    #[test]
    fn constant_image_has_no_scene_pair() {
        let image = GrayMap::from_fn(16, 16, |_, _| 7);
        assert!(matches!(
            scene_from_bilevel(&image, &[64.0, 192.0, 256.0]),
            Err(Error::NeedTwoObjects)
        ));
    }

    #[test]
    fn masks_round_trip_through_a_synthetic_image() {
        let a = synth::disk(64, 64, 24.0, 24.0, 10.0);
        let b = synth::rectangle(64, 64, 40..60, 30..60);
        let image = GrayMap::from_fn(64, 64, |row, col| {
            if a.get(row, col) {
                100
            } else if b.get(row, col) {
                200
            } else {
                0
            }
        });
        let scene = scene_from_bilevel(&image, &[50.0, 150.0, 256.0]).unwrap();
        assert_eq!(*scene.x1(), a);
        assert_eq!(*scene.x2(), b);
    }

    #[test]
    fn label_maps_select_regions() {
        let image = GrayMap::from_fn(32, 32, |row, col| {
            if row < 8 && col < 8 {
                3
            } else if row >= 24 && col >= 24 {
                9
            } else {
                0
            }
        });
        let scene = scene_from_labels(&image, 3, 9).unwrap();
        assert_eq!(scene.x1().count_ones(), 64);
        assert_eq!(scene.x2().count_ones(), 64);
        assert!(matches!(scene_from_labels(&image, 3, 4), Err(Error::EmptyLabel(4))));
    }

    #[test]
    fn invalid_thresholds_are_rejected() {
        let image = three_level_image();
        assert!(matches!(
            decompose_bilevel(&image, &[192.0, 64.0]),
            Err(Error::InvalidThresholds)
        ));
        let config = RunConfig {
            thresholds: Some(vec![10.0, 10.0]),
            ..Default::default()
        };
        assert!(config.validate().is_err());
    }
}
