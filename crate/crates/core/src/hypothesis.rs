//! The three distal interpretations of a two-region scene and their
//! Bayesian scores.
//!
//! Given proximal regions X1 and X2, hypothesis 1 reads X1 as an occluder
//! in front of a completed X2, hypothesis 2 swaps the roles, and hypothesis
//! 3 reads both regions as complete objects fitting together at one depth
//! (the mosaic). Likelihoods come from the elastica energy of the common
//! and disoccluded boundary sets; priors come from shape complexity.

use serde::Serialize;

use crate::complexity::{shape_complexity_with, ComplexityParams};
use crate::disocclusion::{inpaint, ThresholdDynamicsConfig};
use crate::error::{Error, Result};
use crate::geometry::{curvature_field, elastica_energy, find_endpoints, relatable, ElasticaParams};
use crate::mask_init::{binarize_votes, halfspace_votes};
use crate::raster::{external_boundary, BinaryMask, PixelSet};

/// The proximal stimulus: two disjoint nonempty regions on one grid.
#[derive(Debug, Clone)]
pub struct SceneInput {
    x1: BinaryMask,
    x2: BinaryMask,
}

impl SceneInput {
    pub fn new(x1: BinaryMask, x2: BinaryMask) -> Result<Self> {
        if !x1.same_dims(&x2) {
            return Err(Error::DimensionMismatch(
                x1.width(),
                x1.height(),
                x2.width(),
                x2.height(),
            ));
        }
        if x1.is_empty() {
            return Err(Error::EmptyRegion { context: "first region" });
        }
        if x2.is_empty() {
            return Err(Error::EmptyRegion { context: "second region" });
        }
        if !x1.is_disjoint(&x2) {
            return Err(Error::RegionsOverlap {
                context: "proximal regions",
            });
        }
        Ok(SceneInput { x1, x2 })
    }

    pub fn x1(&self) -> &BinaryMask {
        &self.x1
    }

    pub fn x2(&self) -> &BinaryMask {
        &self.x2
    }
}

/// One distal interpretation.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    /// 1, 2 or 3.
    pub index: u8,
    /// The region read as being in front; none for the mosaic.
    pub occluder: Option<BinaryMask>,
    /// The completed occluded object (the union of both regions for the
    /// mosaic).
    pub completed: BinaryMask,
    /// Object at depth 1.
    pub layer1: BinaryMask,
    /// Object at depth 2 (contains its proximal region).
    pub layer2: BinaryMask,
    /// Pixels where the two objects' boundaries meet.
    pub b_common: PixelSet,
    /// Hallucinated boundary of the completed object.
    pub b_disoccluded: PixelSet,
    /// Completion changed nothing, so this interpretation carries the same
    /// objects as the mosaic.
    pub coincident: bool,
    /// Completion hit the iteration cap.
    pub unconverged: bool,
}

/// Builds all three hypotheses. The occlusion hypotheses complete the
/// hidden region through endpoint voting and threshold dynamics, and may
/// run concurrently.
pub fn build_hypotheses(
    scene: &SceneInput,
    cfg: &ThresholdDynamicsConfig,
    fit_window: usize,
) -> Result<[Hypothesis; 3]> {
    cfg.validate()?;
    let shared = mosaic_boundary(scene);

    let (h1, h2) = std::thread::scope(|s| {
        let first = s.spawn(|| occlusion_hypothesis(1, scene.x1(), scene.x2(), cfg, fit_window, &shared));
        let second = s.spawn(|| occlusion_hypothesis(2, scene.x2(), scene.x1(), cfg, fit_window, &shared));
        (
            first.join().expect("hypothesis thread panicked"),
            second.join().expect("hypothesis thread panicked"),
        )
    });

    let h3 = Hypothesis {
        index: 3,
        occluder: None,
        completed: scene.x1().union(scene.x2()),
        layer1: scene.x1().clone(),
        layer2: scene.x2().clone(),
        b_common: shared.clone(),
        b_disoccluded: shared,
        coincident: true,
        unconverged: false,
    };
    Ok([h1?, h2?, h3])
}

/// Boundary pixels of X1 meeting the boundary of X2 (8-adjacency
/// tolerance); the mosaic's common and disoccluded boundary.
fn mosaic_boundary(scene: &SceneInput) -> PixelSet {
    external_boundary(scene.x1()).near8(&external_boundary(scene.x2()))
}

fn occlusion_hypothesis(
    index: u8,
    occluder: &BinaryMask,
    target: &BinaryMask,
    cfg: &ThresholdDynamicsConfig,
    fit_window: usize,
    shared: &PixelSet,
) -> Result<Hypothesis> {
    let endpoints = find_endpoints(target, occluder, fit_window);
    let mut pairs = Vec::new();
    for i in 0..endpoints.len() {
        for j in i + 1..endpoints.len() {
            if relatable(&endpoints[i], &endpoints[j]) {
                pairs.push((endpoints[i], endpoints[j]));
            }
        }
    }
    let votes = halfspace_votes(&pairs, occluder, target);
    let init = binarize_votes(&votes, occluder, target);
    let fill = init.difference(target);
    let result = inpaint(target, occluder, &fill, cfg)?;

    let completed = result.shape;
    let coincident = completed == *target;
    let (b_common, b_disoccluded) = if coincident {
        (shared.clone(), shared.clone())
    } else {
        let completed_boundary = external_boundary(&completed);
        let bd = completed_boundary.difference(&external_boundary(target));
        let bc = external_boundary(occluder).near8(&completed_boundary);
        (bc, bd)
    };
    Ok(Hypothesis {
        index,
        occluder: Some(occluder.clone()),
        completed: completed.clone(),
        layer1: occluder.clone(),
        layer2: completed,
        b_common,
        b_disoccluded,
        coincident,
        unconverged: !result.converged,
    })
}

/// Recomputes the common/disoccluded boundary pair of a hypothesis from its
/// masks.
pub fn boundary_sets(h: &Hypothesis, scene: &SceneInput) -> (PixelSet, PixelSet) {
    if h.coincident {
        let shared = mosaic_boundary(scene);
        return (shared.clone(), shared);
    }
    let occluder = h.occluder.as_ref().expect("non-mosaic hypotheses have an occluder");
    let visible = if h.index == 1 { scene.x2() } else { scene.x1() };
    let completed_boundary = external_boundary(&h.completed);
    let bd = completed_boundary.difference(&external_boundary(visible));
    let bc = external_boundary(occluder).near8(&completed_boundary);
    (bc, bd)
}

/// Boundary-elastica energies and the likelihood factors
/// `exp(-omega1 E_i)` with `omega1 = 1 / max_i E_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Likelihoods {
    pub energies: [f64; 3],
    pub like_tilde: [f64; 3],
    pub omega1: f64,
}

/// Scores `E_i = sum_{B^c}(kappa^2 + beta) + sum_{B^d}(kappa^2 + beta)`,
/// sampling curvature from the completed object's field; hypotheses that
/// coincide with the mosaic sample the field of X1, whose boundary hosts
/// their shared boundary sets, so coincident interpretations score
/// identically.
pub fn likelihood_scores(
    hyps: &[Hypothesis; 3],
    scene: &SceneInput,
    params: &ElasticaParams,
) -> Result<Likelihoods> {
    let shared_field = curvature_field(scene.x1())?;
    let mut energies = [0.0f64; 3];
    for (i, h) in hyps.iter().enumerate() {
        let energy = if h.coincident {
            elastica_energy(&h.b_common, &shared_field, params)
                + elastica_energy(&h.b_disoccluded, &shared_field, params)
        } else {
            let field = curvature_field(&h.completed)?;
            elastica_energy(&h.b_common, &field, params)
                + elastica_energy(&h.b_disoccluded, &field, params)
        };
        energies[i] = energy;
    }
    let max = energies.iter().copied().fold(0.0f64, f64::max);
    let omega1 = if max > 0.0 { 1.0 / max } else { 0.0 };
    let like_tilde = energies.map(|e| (-omega1 * e).exp());
    Ok(Likelihoods {
        energies,
        like_tilde,
        omega1,
    })
}

/// Per-layer complexities and the prior factors `exp(-omega2 T_i)` with
/// `T_i` the summed complexity of both layers and `omega2 = 1 / max_i T_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priors {
    pub complexities: [[f64; 2]; 3],
    pub totals: [f64; 3],
    pub prior_tilde: [f64; 3],
    pub omega2: f64,
}

pub fn prior_scores(hyps: &[Hypothesis; 3], params: &ComplexityParams) -> Priors {
    let mut complexities = [[0.0f64; 2]; 3];
    let mut totals = [0.0f64; 3];
    for (i, h) in hyps.iter().enumerate() {
        let c1 = shape_complexity_with(&h.layer1, params);
        let c2 = shape_complexity_with(&h.layer2, params);
        complexities[i] = [c1, c2];
        totals[i] = c1 + c2;
    }
    let max = totals.iter().copied().fold(0.0f64, f64::max);
    let omega2 = if max > 0.0 { 1.0 / max } else { 0.0 };
    let prior_tilde = totals.map(|t| (-omega2 * t).exp());
    Priors {
        complexities,
        totals,
        prior_tilde,
        omega2,
    }
}

/// Normalized posteriors and the argmax (ties go to the lowest index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub posteriors: [f64; 3],
    /// 1-based index of the preferred hypothesis.
    pub selected: u8,
}

pub fn select(like_tilde: &[f64; 3], prior_tilde: &[f64; 3]) -> Selection {
    let products = [
        like_tilde[0] * prior_tilde[0],
        like_tilde[1] * prior_tilde[1],
        like_tilde[2] * prior_tilde[2],
    ];
    let total: f64 = products.iter().sum();
    let posteriors = products.map(|p| p / total);
    let mut selected = 0usize;
    for i in 1..3 {
        if posteriors[i] > posteriors[selected] {
            selected = i;
        }
    }
    Selection {
        posteriors,
        selected: (selected + 1) as u8,
    }
}

/// Report entry for one hypothesis.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct HypothesisReport {
    pub index: u8,
    #[serde(rename = "E_B")]
    pub e_b: f64,
    pub compl: [f64; 2],
    pub like_tilde: f64,
    pub prior_tilde: f64,
    pub posterior: f64,
    pub unconverged: bool,
}

/// Scores and selection for a whole scene.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InterpretationReport {
    pub hypotheses: Vec<HypothesisReport>,
    pub selected: u8,
    pub omega1: f64,
    pub omega2: f64,
}

/// Runs the full scoring pipeline over prebuilt hypotheses.
pub fn interpret(
    hyps: &[Hypothesis; 3],
    scene: &SceneInput,
    elastica: &ElasticaParams,
    complexity: &ComplexityParams,
) -> Result<InterpretationReport> {
    let likes = likelihood_scores(hyps, scene, elastica)?;
    let priors = prior_scores(hyps, complexity);
    let selection = select(&likes.like_tilde, &priors.prior_tilde);
    let hypotheses = (0..3)
        .map(|i| HypothesisReport {
            index: (i + 1) as u8,
            e_b: likes.energies[i],
            compl: priors.complexities[i],
            like_tilde: likes.like_tilde[i],
            prior_tilde: priors.prior_tilde[i],
            posterior: selection.posteriors[i],
            unconverged: hyps[i].unconverged,
        })
        .collect();
    Ok(InterpretationReport {
        hypotheses,
        selected: selection.selected,
        omega1: likes.omega1,
        omega2: priors.omega2,
    })
}
