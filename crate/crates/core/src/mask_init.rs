//! Initialization of the inpainting region: every relatable endpoint pair
//! votes for the closed half-planes through its endpoints on the side of
//! the visible shape; the vote image is then binarized at a descending
//! percentile threshold so the fill adds no new connected components.

use crate::geometry::{ContourEndpoint, Vec2};
use crate::raster::{connected_components, BinaryMask, Connectivity, ScalarField};

/// Per-pixel vote counts; integer-valued, nonzero only inside the
/// inpainting region.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteField {
    votes: ScalarField,
}

impl VoteField {
    pub fn votes(&self) -> &ScalarField {
        &self.votes
    }
}

/// Accumulates one vote per endpoint of every relatable pair: each region
/// pixel in the closed half-plane through the endpoint (normal to the
/// tangent, on the side holding the majority of the visible shape) gets +1.
pub fn halfspace_votes(
    pairs: &[(ContourEndpoint, ContourEndpoint)],
    inpaint_mask: &BinaryMask,
    visible: &BinaryMask,
) -> VoteField {
    assert!(inpaint_mask.same_dims(visible), "mask dimensions differ");
    let mut votes = ScalarField::zeros(inpaint_mask.width(), inpaint_mask.height());
    for (a, b) in pairs {
        for endpoint in [a, b] {
            cast_vote(endpoint, inpaint_mask, visible, &mut votes);
        }
    }
    VoteField { votes }
}

fn cast_vote(
    endpoint: &ContourEndpoint,
    inpaint_mask: &BinaryMask,
    visible: &BinaryMask,
    votes: &mut ScalarField,
) {
    let normal = endpoint.tangent.perp();
    let side = |p: Vec2| normal.dot(p - endpoint.position);

    let mut positive = 0usize;
    let mut negative = 0usize;
    for p in visible.ones() {
        let s = side(Vec2::new(p.col as f64, p.row as f64));
        if s > 1e-12 {
            positive += 1;
        } else if s < -1e-12 {
            negative += 1;
        }
    }
    let sign = if positive >= negative { 1.0 } else { -1.0 };

    for row in 0..inpaint_mask.height() {
        for col in 0..inpaint_mask.width() {
            if !inpaint_mask.get(row, col) {
                continue;
            }
            if sign * side(Vec2::new(col as f64, row as f64)) >= -1e-12 {
                votes.set(row, col, votes.get(row, col) + 1.0);
            }
        }
    }
}

/// Binarizes the vote image. The threshold starts at the 75th percentile of
/// the positive votes (nearest-rank, ascending) and descends through
/// distinct values until the thresholded fill united with the visible shape
/// has no more 4-connected components than the visible shape alone. Returns
/// `visible` united with the accepted fill; with all-zero votes (or if no
/// threshold is acceptable) the fill is empty.
pub fn binarize_votes(
    votes: &VoteField,
    inpaint_mask: &BinaryMask,
    visible: &BinaryMask,
) -> BinaryMask {
    assert!(inpaint_mask.same_dims(visible), "mask dimensions differ");
    let mut positive: Vec<f64> = Vec::new();
    for row in 0..inpaint_mask.height() {
        for col in 0..inpaint_mask.width() {
            let v = votes.votes().get(row, col);
            if inpaint_mask.get(row, col) && v > 0.0 {
                positive.push(v);
            }
        }
    }
    if positive.is_empty() {
        return visible.clone();
    }
    positive.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = positive.len();
    let start = positive[(3 * m).div_ceil(4) - 1];

    let mut thresholds: Vec<f64> = positive.clone();
    thresholds.dedup();
    let base_components = connected_components(visible, Connectivity::Four).len();
    for &threshold in thresholds.iter().rev() {
        if threshold > start {
            continue;
        }
        let fill = fill_at(votes, inpaint_mask, threshold);
        let union = visible.union(&fill);
        if connected_components(&union, Connectivity::Four).len() <= base_components {
            return union;
        }
    }
    visible.clone()
}

/// Region pixels whose vote count reaches `threshold`.
pub fn fill_at(votes: &VoteField, inpaint_mask: &BinaryMask, threshold: f64) -> BinaryMask {
    BinaryMask::from_fn(inpaint_mask.width(), inpaint_mask.height(), |row, col| {
        inpaint_mask.get(row, col) && votes.votes().get(row, col) >= threshold
    })
}
