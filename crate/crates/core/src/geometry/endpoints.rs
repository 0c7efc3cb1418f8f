//! Contour endpoints: where the visible shape's boundary meets the
//! inpainting region, with tangents estimated by a total-least-squares
//! line fit over the boundary stretch leading up to each endpoint.

use std::collections::VecDeque;

use super::{ContourEndpoint, Vec2};
use crate::raster::{
    connected_components, external_boundary, neighbors8, BinaryMask, Connectivity, Pixel, PixelSet,
};

/// Detects one endpoint per extremity of every maximal run of visible
/// boundary pixels that are 8-adjacent to the inpainting region. The tangent
/// at each endpoint is fitted over the `fit_window` nearest boundary pixels
/// outside the contact run and oriented toward the region.
///
/// Returns an empty list when no visible pixel touches the region. The two
/// masks must be disjoint.
pub fn find_endpoints(
    visible: &BinaryMask,
    inpaint_mask: &BinaryMask,
    fit_window: usize,
) -> Vec<ContourEndpoint> {
    assert!(visible.same_dims(inpaint_mask), "mask dimensions differ");
    assert!(
        visible.is_disjoint(inpaint_mask),
        "visible shape overlaps the inpainting region"
    );

    let boundary = external_boundary(visible);
    let contact: PixelSet = boundary
        .iter()
        .filter(|p| neighbors8(*p).any(|q| inpaint_mask.contains_pixel(q)))
        .collect();
    if contact.is_empty() {
        return Vec::new();
    }

    let contact_mask = BinaryMask::from_fn(visible.width(), visible.height(), |r, c| {
        contact.contains(Pixel::new(r, c))
    });
    let mut endpoints = Vec::new();
    for run in connected_components(&contact_mask, Connectivity::Eight) {
        for extremity in run_extremities(&run) {
            let window = fit_pixels(&boundary, &contact, extremity, fit_window);
            if window.len() < 2 {
                continue;
            }
            if let Some(tangent) = fitted_tangent(&window, extremity, inpaint_mask) {
                // The interpolated contour must continue into the occluded
                // region; a contour that merely runs alongside the region
                // (its extremity tangent grazing the region's edge) is not
                // interrupted and spawns no endpoint.
                if enters_region(to_point(extremity), tangent, inpaint_mask) {
                    endpoints.push(ContourEndpoint::new(to_point(extremity), tangent));
                }
            }
        }
    }
    endpoints.sort_by(|a, b| {
        (a.position.y, a.position.x)
            .partial_cmp(&(b.position.y, b.position.x))
            .unwrap()
    });
    endpoints
}

/// The two pixels of a run at maximal path distance (one pixel for a
/// singleton run), found by a double breadth-first sweep.
fn run_extremities(run: &PixelSet) -> Vec<Pixel> {
    let start = run.first().expect("runs are nonempty");
    let e1 = farthest_in_run(run, start);
    let e2 = farthest_in_run(run, e1);
    if e1 == e2 {
        vec![e1]
    } else {
        vec![e1.min(e2), e1.max(e2)]
    }
}

fn farthest_in_run(run: &PixelSet, from: Pixel) -> Pixel {
    let mut dist: std::collections::BTreeMap<Pixel, usize> = Default::default();
    let mut queue = VecDeque::new();
    dist.insert(from, 0);
    queue.push_back(from);
    let mut best = (0usize, from);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d > best.0 || (d == best.0 && p < best.1) {
            best = (d, p);
        }
        for q in neighbors8(p) {
            if run.contains(q) && !dist.contains_key(&q) {
                dist.insert(q, d + 1);
                queue.push_back(q);
            }
        }
    }
    best.1
}

/// Collects up to `window` boundary pixels reachable from the extremity
/// without re-entering the contact run: the stretch of visible contour that
/// precedes the endpoint.
fn fit_pixels(boundary: &PixelSet, contact: &PixelSet, extremity: Pixel, window: usize) -> Vec<Pixel> {
    let mut out = vec![extremity];
    let mut visited: std::collections::BTreeSet<Pixel> = [extremity].into();
    let mut queue = VecDeque::new();
    queue.push_back(extremity);
    while let Some(p) = queue.pop_front() {
        if out.len() >= window {
            break;
        }
        // Deterministic expansion: sorted neighborhood.
        let mut next: Vec<Pixel> = neighbors8(p)
            .filter(|q| boundary.contains(*q) && !contact.contains(*q) && !visited.contains(q))
            .collect();
        next.sort();
        for q in next {
            if out.len() >= window {
                break;
            }
            visited.insert(q);
            out.push(q);
            queue.push_back(q);
        }
    }
    out
}

/// Total-least-squares line direction through the window, oriented from the
/// window toward the inpainting region.
fn fitted_tangent(window: &[Pixel], extremity: Pixel, inpaint_mask: &BinaryMask) -> Option<Vec2> {
    let n = window.len() as f64;
    let mean_x = window.iter().map(|p| p.col as f64).sum::<f64>() / n;
    let mean_y = window.iter().map(|p| p.row as f64).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for p in window {
        let dx = p.col as f64 - mean_x;
        let dy = p.row as f64 - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let direction = Vec2::new(theta.cos(), theta.sin());

    let toward_endpoint = to_point(extremity) - Vec2::new(mean_x, mean_y);
    let mut sign = direction.dot(toward_endpoint);
    if sign.abs() < 1e-9 {
        // Window centered on the endpoint; orient toward the nearest
        // in-region neighbor instead.
        let target = neighbors8(extremity).find(|q| inpaint_mask.contains_pixel(*q))?;
        sign = direction.dot(to_point(target) - to_point(extremity));
    }
    let tangent = if sign >= 0.0 { direction } else { direction.scaled(-1.0) };
    Some(tangent.normalized())
}

fn to_point(p: Pixel) -> Vec2 {
    Vec2::new(p.col as f64, p.row as f64)
}

/// Whether the ray from `origin` along `tangent` reaches a region pixel
/// within its first few steps.
fn enters_region(origin: Vec2, tangent: Vec2, inpaint_mask: &BinaryMask) -> bool {
    (1..=3).any(|k| {
        let x = origin.x + k as f64 * tangent.x;
        let y = origin.y + k as f64 * tangent.y;
        let col = x.round();
        let row = y.round();
        row >= 0.0
            && col >= 0.0
            && inpaint_mask.contains_pixel(Pixel::new(row as usize, col as usize))
    })
}
