//! Shape complexity from boundary statistics: entropy of centroid
//! distances, entropy of turning angles, perceptual roughness, and a
//! symmetry-sensitive randomness term, combined as
//! `C = (1 + R) (0.6 min(Cd, Ca) + 0.07 max(Cd, Ca) + 0.33 P)`
//! and summed over the 4-connected components of the shape.
//!
//! All point arithmetic runs on integer coordinates scaled by the component
//! size, so the measure is exactly invariant under translation and under
//! grid rotations by multiples of 90 degrees.

use crate::raster::{connected_components, BinaryMask, Connectivity, Pixel, PixelSet};

/// Tunable constants of the complexity measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityParams {
    /// Histogram bins for both entropy terms.
    pub bins: usize,
    /// Spacing between the boundary samples forming each turning angle.
    pub angle_stride: usize,
}

impl Default for ComplexityParams {
    fn default() -> Self {
        ComplexityParams {
            bins: 16,
            angle_stride: 3,
        }
    }
}

/// Total complexity of a shape: the sum of per-component complexities.
/// Empty shapes and single-pixel components contribute zero.
pub fn shape_complexity(shape: &BinaryMask) -> f64 {
    shape_complexity_with(shape, &ComplexityParams::default())
}

pub fn shape_complexity_with(shape: &BinaryMask, params: &ComplexityParams) -> f64 {
    connected_components(shape, Connectivity::Four)
        .iter()
        .map(|component| component_complexity(component, params))
        .sum()
}

fn component_complexity(component: &PixelSet, params: &ComplexityParams) -> f64 {
    let trace = trace_outer_boundary(component);
    if trace.len() < 2 {
        return 0.0;
    }

    // Centroid of the filled component, kept as an exact rational
    // (sum_x / n, sum_y / n) by scaling all points by n.
    let n = component.len() as i64;
    let (sum_col, sum_row) = component
        .iter()
        .fold((0i64, 0i64), |(sc, sr), p| (sc + p.col as i64, sr + p.row as i64));

    // Distances from boundary pixels (the unique set) to the centroid.
    let boundary_set: std::collections::BTreeSet<Pixel> = trace.iter().copied().collect();
    let distances: Vec<f64> = boundary_set
        .iter()
        .map(|p| scaled_centroid_distance(*p, n, sum_col, sum_row))
        .collect();
    let d_max = distances.iter().copied().fold(0.0f64, f64::max);
    if d_max <= 0.0 {
        return 0.0;
    }
    let dist_entropy = normalized_entropy(
        distances.iter().map(|d| bin_index(*d, d_max, params.bins)),
        params.bins,
    );

    // Turning angles over boundary triplets spaced angle_stride apart.
    let angles = turning_angles(&trace, params.angle_stride);
    let angle_entropy = normalized_entropy(
        angles
            .iter()
            .map(|theta| bin_index(*theta, std::f64::consts::PI, params.bins)),
        params.bins,
    );
    let roughness = if angles.is_empty() {
        0.0
    } else {
        angles
            .iter()
            .map(|theta| (theta - std::f64::consts::PI).abs() / std::f64::consts::PI)
            .sum::<f64>()
            / angles.len() as f64
    };

    let randomness = trace_randomness(&trace, n, sum_col, sum_row);

    let (lo, hi) = if dist_entropy <= angle_entropy {
        (dist_entropy, angle_entropy)
    } else {
        (angle_entropy, dist_entropy)
    };
    (1.0 + randomness) * (0.6 * lo + 0.07 * hi + 0.33 * roughness)
}

/// Distance from `p` to the component centroid, computed from integers:
/// |n*p - (sum_col, sum_row)| / n.
fn scaled_centroid_distance(p: Pixel, n: i64, sum_col: i64, sum_row: i64) -> f64 {
    let dx = n * p.col as i64 - sum_col;
    let dy = n * p.row as i64 - sum_row;
    ((dx * dx + dy * dy) as f64).sqrt() / n as f64
}

fn bin_index(value: f64, max: f64, bins: usize) -> usize {
    (((value / max) * bins as f64) as usize).min(bins - 1)
}

fn normalized_entropy(bin_indices: impl Iterator<Item = usize>, bins: usize) -> f64 {
    let mut counts = vec![0usize; bins];
    let mut total = 0usize;
    for idx in bin_indices {
        counts[idx] += 1;
        total += 1;
    }
    if total == 0 {
        return 0.0;
    }
    let mut entropy = 0.0;
    for &c in &counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            entropy -= p * p.log2();
        }
    }
    entropy / (bins as f64).log2()
}

/// Angle at the middle point of each triplet `(t[i], t[i+s], t[i+2s])`,
/// cyclically for every i; pi means locally straight. Triplets with
/// coincident points (backtracking walks) are skipped.
fn turning_angles(trace: &[Pixel], stride: usize) -> Vec<f64> {
    let n = trace.len();
    if n <= 2 * stride {
        return Vec::new();
    }
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let a = trace[i];
        let b = trace[(i + stride) % n];
        let c = trace[(i + 2 * stride) % n];
        let ux = a.col as i64 - b.col as i64;
        let uy = a.row as i64 - b.row as i64;
        let vx = c.col as i64 - b.col as i64;
        let vy = c.row as i64 - b.row as i64;
        let nu = (ux * ux + uy * uy) as f64;
        let nv = (vx * vx + vy * vy) as f64;
        if nu == 0.0 || nv == 0.0 {
            continue;
        }
        let cos = ((ux * vx + uy * vy) as f64 / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0);
        angles.push(cos.acos());
    }
    angles
}

/// Randomness: the two boundary arcs between the most mutually distant
/// boundary points are reparameterized to a common arc-length parameter and
/// compared through their centroid-distance profiles; the maximal profile
/// gap, divided by the diameter, is the randomness. Mirror-symmetric arcs
/// give identical profiles, hence zero. Diameter ties are resolved by
/// taking the maximum over all tied pairs.
fn trace_randomness(trace: &[Pixel], n: i64, sum_col: i64, sum_row: i64) -> f64 {
    let len = trace.len();
    if len < 4 {
        return 0.0;
    }
    let mut best_sq = 0i64;
    let mut tied_pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            let dx = trace[i].col as i64 - trace[j].col as i64;
            let dy = trace[i].row as i64 - trace[j].row as i64;
            let sq = dx * dx + dy * dy;
            if sq > best_sq {
                best_sq = sq;
                tied_pairs.clear();
                tied_pairs.push((i, j));
            } else if sq == best_sq {
                tied_pairs.push((i, j));
            }
        }
    }
    if best_sq == 0 {
        return 0.0;
    }
    let diameter = (best_sq as f64).sqrt();
    let profile = |p: Pixel| scaled_centroid_distance(p, n, sum_col, sum_row);

    let mut worst = 0.0f64;
    for (i, j) in tied_pairs {
        let arc1: Vec<Pixel> = cyclic_slice(trace, i, j);
        let mut arc2: Vec<Pixel> = cyclic_slice(trace, j, i);
        arc2.reverse();
        let p1 = arc_profile(&arc1, profile);
        let p2 = arc_profile(&arc2, profile);
        worst = worst.max(profile_deviation(&p1, &p2));
    }
    worst / diameter
}

/// Trace points from index `from` to index `to`, inclusive, walking forward
/// cyclically.
fn cyclic_slice(trace: &[Pixel], from: usize, to: usize) -> Vec<Pixel> {
    let len = trace.len();
    let mut out = Vec::new();
    let mut i = from;
    loop {
        out.push(trace[i]);
        if i == to {
            break;
        }
        i = (i + 1) % len;
    }
    out
}

/// Normalized arc-length parameter and profile value at each arc vertex.
fn arc_profile(arc: &[Pixel], profile: impl Fn(Pixel) -> f64) -> Vec<(f64, f64)> {
    let mut cumulative = vec![0.0f64];
    for pair in arc.windows(2) {
        let dx = pair[1].col as f64 - pair[0].col as f64;
        let dy = pair[1].row as f64 - pair[0].row as f64;
        cumulative.push(cumulative.last().unwrap() + (dx * dx + dy * dy).sqrt());
    }
    let total = *cumulative.last().unwrap();
    arc.iter()
        .zip(cumulative.iter())
        .map(|(p, s)| {
            let t = if total > 0.0 { s / total } else { 0.0 };
            (t, profile(*p))
        })
        .collect()
}

/// Maximal gap between two piecewise-linear profiles, sampled at the union
/// of their knots.
fn profile_deviation(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
    let mut knots: Vec<f64> = p1.iter().chain(p2.iter()).map(|(t, _)| *t).collect();
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();
    knots
        .iter()
        .map(|&t| (interpolate(p1, t) - interpolate(p2, t)).abs())
        .fold(0.0f64, f64::max)
}

fn interpolate(profile: &[(f64, f64)], t: f64) -> f64 {
    match profile.binary_search_by(|(pt, _)| pt.partial_cmp(&t).unwrap()) {
        Ok(i) => profile[i].1,
        Err(0) => profile[0].1,
        Err(i) if i >= profile.len() => profile[profile.len() - 1].1,
        Err(i) => {
            let (t0, v0) = profile[i - 1];
            let (t1, v1) = profile[i];
            if t1 == t0 {
                v0
            } else {
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }
}

/// Ordered outer boundary of a 4-connected component as a closed pixel
/// walk, obtained by following the crack edges between the component and
/// its exterior clockwise (component kept on the right of travel). Inner
/// hole contours are not traced. The successor rule is purely local, so the
/// walk is exactly equivariant under translations and quarter turns, up to
/// a cyclic shift.
pub fn trace_outer_boundary(component: &PixelSet) -> Vec<Pixel> {
    let Some(start) = component.first() else {
        return Vec::new();
    };
    let inside = |row: isize, col: isize| -> bool {
        row >= 0 && col >= 0 && component.contains(Pixel::new(row as usize, col as usize))
    };
    // Cell in the quadrant of corner (r, c) indicated by the signs of
    // (qx, qy) in (col, row) axes.
    let quadrant_inside = |r: isize, c: isize, qx: isize, qy: isize| -> bool {
        let row = if qy > 0 { r } else { r - 1 };
        let col = if qx > 0 { c } else { c - 1 };
        inside(row, col)
    };

    // Directed crack edges; direction (dx, dy) in (col, row) axes. The start
    // pixel is row-major minimal, so its top edge borders the exterior and
    // walking it rightward keeps the component on the right.
    let start_corner = (start.row as isize, start.col as isize);
    let start_dir = (1isize, 0isize);
    let mut corner = start_corner;
    let mut dir = start_dir;
    let mut walk: Vec<Pixel> = Vec::new();
    // A component of n pixels has at most 4n crack edges.
    let cap = 4 * component.len() + 4;
    for _ in 0..cap {
        // Pixel on the right of this edge: quadrant of (dir + side) at the
        // edge midpoint, which is the cell the edge belongs to.
        let side = (-dir.1, dir.0);
        let pixel_q = (dir.0 + side.0, dir.1 + side.1);
        // For an edge leaving `corner`, the bordered cell sits in the
        // quadrant of `corner` pointed to by dir + side.
        let row = if pixel_q.1 > 0 { corner.0 } else { corner.0 - 1 };
        let col = if pixel_q.0 > 0 { corner.1 } else { corner.1 - 1 };
        debug_assert!(inside(row, col), "crack edge lost the component");
        let pixel = Pixel::new(row as usize, col as usize);
        if walk.last() != Some(&pixel) {
            walk.push(pixel);
        }

        // Advance to the next corner and pick the turn from the two cells
        // ahead of it.
        corner = (corner.0 + dir.1, corner.1 + dir.0);
        let right_ahead = quadrant_inside(corner.0, corner.1, dir.0 + side.0, dir.1 + side.1);
        let left_ahead = quadrant_inside(corner.0, corner.1, dir.0 - side.0, dir.1 - side.1);
        dir = if right_ahead && left_ahead {
            (dir.1, -dir.0) // turn left
        } else if right_ahead {
            dir // straight
        } else {
            (-dir.1, dir.0) // turn right; also splits pinched diagonals
        };
        if corner == start_corner && dir == start_dir {
            break;
        }
    }
    if walk.len() > 1 && walk.first() == walk.last() {
        walk.pop();
    }
    walk
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn translated(mask: &BinaryMask, dr: usize, dc: usize, w: usize, h: usize) -> BinaryMask {
        BinaryMask::from_fn(w, h, |row, col| {
            row >= dr && col >= dc && {
                let (r, c) = (row - dr, col - dc);
                r < mask.height() && c < mask.width() && mask.get(r, c)
            }
        })
    }

    fn rotated90(mask: &BinaryMask, w: usize, h: usize) -> BinaryMask {
        // (row, col) -> (col, h_in - 1 - row), placed on a w x h canvas.
        BinaryMask::from_fn(w, h, |row, col| {
            let src_row = mask.height() as isize - 1 - col as isize;
            let src_col = row as isize;
            src_row >= 0
                && src_col >= 0
                && (src_row as usize) < mask.height()
                && (src_col as usize) < mask.width()
                && mask.get(src_row as usize, src_col as usize)
        })
    }

    #[test]
    fn empty_and_single_pixel_shapes_have_zero_complexity() {
        let empty = BinaryMask::new(8, 8);
        assert_eq!(shape_complexity(&empty), 0.0);
        let mut single = BinaryMask::new(8, 8);
        single.set(3, 3, true);
        assert_eq!(shape_complexity(&single), 0.0);
    }

    #[test]
    fn disk_is_the_simplest_shape_in_the_suite() {
        let area_disk = synth::disk(96, 96, 47.5, 47.5, 20.0);
        let disk_area = area_disk.count_ones() as f64;
        // Square, L-shape and star with roughly the same area.
        let side = disk_area.sqrt().round() as usize;
        let square = synth::rectangle(96, 96, 20..20 + side, 20..20 + side);
        let arm = (disk_area / 3.0).sqrt().round() as usize;
        let l_shape = synth::rectangle(96, 96, 10..10 + 3 * arm, 10..10 + arm)
            .union(&synth::rectangle(96, 96, 10 + 2 * arm..10 + 3 * arm, 10..10 + 2 * arm));
        let star = BinaryMask::from_fn(96, 96, |row, col| {
            let dr = row as f64 - 47.5;
            let dc = col as f64 - 47.5;
            let radius = (dr * dr + dc * dc).sqrt();
            let angle = dr.atan2(dc);
            radius <= 14.0 + 12.0 * (5.0 * angle).cos().max(0.0)
        });

        let c_disk = shape_complexity(&area_disk);
        for (name, other) in [("square", &square), ("l-shape", &l_shape), ("star", &star)] {
            let c_other = shape_complexity(other);
            assert!(
                c_disk < c_other,
                "disk ({c_disk}) should be simpler than {name} ({c_other})"
            );
        }
    }

    #[test]
    fn disk_distance_entropy_is_low() {
        let disk = synth::disk(96, 96, 47.5, 47.5, 20.0);
        let comps = connected_components(&disk, Connectivity::Four);
        let trace = trace_outer_boundary(&comps[0]);
        let n = comps[0].len() as i64;
        let (sc, sr) = comps[0]
            .iter()
            .fold((0i64, 0i64), |(a, b), p| (a + p.col as i64, b + p.row as i64));
        let dmax = trace
            .iter()
            .map(|p| scaled_centroid_distance(*p, n, sc, sr))
            .fold(0.0f64, f64::max);
        let entropy = normalized_entropy(
            trace
                .iter()
                .map(|p| bin_index(scaled_centroid_distance(*p, n, sc, sr), dmax, 16)),
            16,
        );
        assert!(entropy < 0.2, "distance entropy {entropy}");
    }

    #[test]
    fn complexity_is_translation_invariant() {
        let star = BinaryMask::from_fn(64, 64, |row, col| {
            let dr = row as f64 - 20.0;
            let dc = col as f64 - 22.0;
            let radius = (dr * dr + dc * dc).sqrt();
            let angle = dr.atan2(dc);
            radius <= 8.0 + 6.0 * (4.0 * angle).cos()
        });
        let moved = translated(&star, 17, 9, 64, 64);
        assert_eq!(moved.count_ones(), star.count_ones());
        let delta = (shape_complexity(&star) - shape_complexity(&moved)).abs();
        assert!(delta <= 1e-12, "delta {delta}");
    }

    #[test]
    fn complexity_is_quarter_turn_invariant() {
        let blob = BinaryMask::from_fn(64, 64, |row, col| {
            let dr = row as f64 - 30.0;
            let dc = col as f64 - 28.0;
            let radius = (dr * dr + dc * dc).sqrt();
            let angle = dr.atan2(dc);
            radius <= 10.0 + 5.0 * (3.0 * angle).cos() + 2.0 * (7.0 * angle).sin()
        });
        let turned = rotated90(&blob, 64, 64);
        assert_eq!(turned.count_ones(), blob.count_ones());
        let delta = (shape_complexity(&blob) - shape_complexity(&turned)).abs();
        assert!(delta <= 1e-12, "delta {delta}");
    }

    #[test]
    fn complexity_is_additive_over_components() {
        let a = synth::disk(96, 96, 20.0, 20.0, 9.0);
        let b = synth::rectangle(96, 96, 60..80, 50..90);
        let both = a.union(&b);
        let sum = shape_complexity(&a) + shape_complexity(&b);
        assert!((shape_complexity(&both) - sum).abs() <= 1e-12);
    }

    #[test]
    fn symmetric_shape_has_zero_randomness() {
        let disk = synth::disk(64, 64, 31.5, 31.5, 14.0);
        let comps = connected_components(&disk, Connectivity::Four);
        let trace = trace_outer_boundary(&comps[0]);
        let n = comps[0].len() as i64;
        let (sc, sr) = comps[0]
            .iter()
            .fold((0i64, 0i64), |(a, b), p| (a + p.col as i64, b + p.row as i64));
        let r = trace_randomness(&trace, n, sc, sr);
        assert!(r < 0.05, "randomness {r}");
    }

    #[test]
    fn boundary_trace_is_closed_and_on_the_boundary() {
        let blob = synth::ellipse(48, 48, 24.0, 22.0, 15.0, 9.0);
        let comps = connected_components(&blob, Connectivity::Four);
        let trace = trace_outer_boundary(&comps[0]);
        assert!(trace.len() >= 30);
        let boundary = crate::raster::external_boundary(&blob);
        for pair in trace.windows(2) {
            let dr = pair[0].row.abs_diff(pair[1].row);
            let dc = pair[0].col.abs_diff(pair[1].col);
            assert!(dr <= 1 && dc <= 1, "walk jumps");
        }
        for p in &trace {
            // Every crack edge exposes a 4-side, so traced pixels sit on
            // the external boundary exactly.
            assert!(boundary.contains(*p), "trace pixel off the boundary");
        }
        // Closed: last step returns next to the start.
        let first = trace[0];
        let last = *trace.last().unwrap();
        assert!(first.row.abs_diff(last.row) <= 1 && first.col.abs_diff(last.col) <= 1);
    }

    #[test]
    fn two_pixel_component_is_degenerate_but_finite() {
        let mut mask = BinaryMask::new(8, 8);
        mask.set(2, 2, true);
        mask.set(2, 3, true);
        let c = shape_complexity(&mask);
        assert!(c.is_finite() && c >= 0.0);
    }
}
