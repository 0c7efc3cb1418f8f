//! Pixel-grid primitives: binary masks, scalar fields, pixel sets,
//! connected components and external boundaries.
//!
//! All grids are row-major with `(row, col)` addressing; row 0 is the top
//! row. Off-grid pixels count as background (value 0) for boundary
//! extraction and as zero-flux walls for diffusion.

mod distance;
mod diffusion;

pub use diffusion::heat_convolve;
pub use distance::signed_distance;

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A single grid coordinate. Ordered row-major, so `BTreeSet<Pixel>`
/// iterates top-to-bottom, left-to-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pixel {
    pub row: usize,
    pub col: usize,
}

impl Pixel {
    pub fn new(row: usize, col: usize) -> Self {
        Pixel { row, col }
    }
}

/// Pixel adjacency used for component labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

/// Rectangular bit grid; 1 marks the inside of a shape or region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    values: Vec<bool>,
}

impl BinaryMask {
    /// All-zero mask. Panics if either dimension is zero.
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width >= 1 && height >= 1, "mask dimensions must be >= 1");
        BinaryMask {
            width,
            height,
            values: vec![false; width * height],
        }
    }

    /// Builds a mask from a per-pixel predicate.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = BinaryMask::new(width, height);
        for row in 0..height {
            for col in 0..width {
                mask.values[row * width + col] = f(row, col);
            }
        }
        mask
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.values[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.values[row * self.width + col] = value;
    }

    pub fn contains_pixel(&self, p: Pixel) -> bool {
        p.row < self.height && p.col < self.width && self.get(p.row, p.col)
    }

    /// Number of 1-pixels.
    pub fn count_ones(&self) -> usize {
        self.values.iter().filter(|v| **v).count()
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(|v| !v)
    }

    pub fn is_full(&self) -> bool {
        self.values.iter().all(|v| *v)
    }

    pub fn same_dims(&self, other: &BinaryMask) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Iterator over the coordinates of all 1-pixels in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = Pixel> + '_ {
        (0..self.height).flat_map(move |row| {
            (0..self.width)
                .filter(move |&col| self.get(row, col))
                .map(move |col| Pixel::new(row, col))
        })
    }

    pub fn union(&self, other: &BinaryMask) -> BinaryMask {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &BinaryMask) -> BinaryMask {
        self.zip_with(other, |a, b| a && b)
    }

    /// Pixels of `self` that are not in `other`.
    pub fn difference(&self, other: &BinaryMask) -> BinaryMask {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn is_disjoint(&self, other: &BinaryMask) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.difference(other).is_empty()
    }

    /// Intersection-over-union of two masks; 1.0 when both are empty.
    pub fn iou(&self, other: &BinaryMask) -> f64 {
        let inter = self.intersection(other).count_ones();
        let union = self.union(other).count_ones();
        if union == 0 {
            1.0
        } else {
            inter as f64 / union as f64
        }
    }

    /// 0/1 scalar field with the same dimensions.
    pub fn to_field(&self) -> ScalarField {
        ScalarField {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|&v| if v { 1.0 } else { 0.0 }).collect(),
        }
    }

    fn zip_with(&self, other: &BinaryMask, f: impl Fn(bool, bool) -> bool) -> BinaryMask {
        assert!(self.same_dims(other), "mask dimensions differ");
        BinaryMask {
            width: self.width,
            height: self.height,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// Rectangular grid of finite reals (distances, votes, curvatures,
/// diffused densities).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width >= 1 && height >= 1, "field dimensions must be >= 1");
        ScalarField {
            width,
            height,
            values: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.values[row * self.width + col] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Thresholds the field into a mask: pixels where `pred` holds become 1.
    pub fn threshold(&self, pred: impl Fn(f64) -> bool) -> BinaryMask {
        BinaryMask {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|&v| pred(v)).collect(),
        }
    }

    pub fn same_dims(&self, other: &ScalarField) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// A set of grid coordinates with deterministic (row-major) iteration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PixelSet {
    members: BTreeSet<Pixel>,
}

impl PixelSet {
    pub fn new() -> Self {
        PixelSet::default()
    }

    pub fn insert(&mut self, p: Pixel) -> bool {
        self.members.insert(p)
    }

    pub fn contains(&self, p: Pixel) -> bool {
        self.members.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Pixel> + '_ {
        self.members.iter().copied()
    }

    pub fn first(&self) -> Option<Pixel> {
        self.members.iter().next().copied()
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &PixelSet) -> PixelSet {
        PixelSet {
            members: self.members.difference(&other.members).copied().collect(),
        }
    }

    /// Members of `self` lying within Chebyshev distance 1 of some member
    /// of `other` (8-adjacency tolerance, equality included).
    pub fn near8(&self, other: &PixelSet) -> PixelSet {
        PixelSet {
            members: self
                .members
                .iter()
                .filter(|p| {
                    neighbors8(**p).chain(std::iter::once(**p)).any(|q| other.contains(q))
                })
                .copied()
                .collect(),
        }
    }
}

impl FromIterator<Pixel> for PixelSet {
    fn from_iter<I: IntoIterator<Item = Pixel>>(iter: I) -> Self {
        PixelSet {
            members: iter.into_iter().collect(),
        }
    }
}

/// The 4-neighbors of a pixel that may exist on some grid (no underflow);
/// callers still bound-check against width/height.
pub(crate) fn neighbors4(p: Pixel) -> impl Iterator<Item = Pixel> {
    let deltas: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
    deltas.into_iter().filter_map(move |(dr, dc)| offset(p, dr, dc))
}

pub(crate) fn neighbors8(p: Pixel) -> impl Iterator<Item = Pixel> {
    let deltas: [(isize, isize); 8] = [
        (-1, -1),
        (-1, 0),
        (-1, 1),
        (0, -1),
        (0, 1),
        (1, -1),
        (1, 0),
        (1, 1),
    ];
    deltas.into_iter().filter_map(move |(dr, dc)| offset(p, dr, dc))
}

pub(crate) fn offset(p: Pixel, dr: isize, dc: isize) -> Option<Pixel> {
    let row = p.row.checked_add_signed(dr)?;
    let col = p.col.checked_add_signed(dc)?;
    Some(Pixel::new(row, col))
}

/// Partitions the 1-pixels of `mask` into maximal connected sets under the
/// given adjacency. Components are ordered by their smallest member in
/// row-major order.
pub fn connected_components(mask: &BinaryMask, connectivity: Connectivity) -> Vec<PixelSet> {
    let mut visited = vec![false; mask.width() * mask.height()];
    let mut components = Vec::new();
    for row in 0..mask.height() {
        for col in 0..mask.width() {
            let idx = row * mask.width() + col;
            if !mask.get(row, col) || visited[idx] {
                continue;
            }
            let mut component = PixelSet::new();
            let mut queue = VecDeque::new();
            visited[idx] = true;
            queue.push_back(Pixel::new(row, col));
            while let Some(p) = queue.pop_front() {
                component.insert(p);
                let neighbors: Vec<Pixel> = match connectivity {
                    Connectivity::Four => neighbors4(p).collect(),
                    Connectivity::Eight => neighbors8(p).collect(),
                };
                for q in neighbors {
                    if q.row >= mask.height() || q.col >= mask.width() {
                        continue;
                    }
                    let qi = q.row * mask.width() + q.col;
                    if mask.get(q.row, q.col) && !visited[qi] {
                        visited[qi] = true;
                        queue.push_back(q);
                    }
                }
            }
            components.push(component);
        }
    }
    components
}

/// 1-pixels having at least one 4-neighbor that is 0 or off-grid. The image
/// frame counts as exterior.
pub fn external_boundary(mask: &BinaryMask) -> PixelSet {
    let mut boundary = PixelSet::new();
    for row in 0..mask.height() {
        for col in 0..mask.width() {
            if !mask.get(row, col) {
                continue;
            }
            let p = Pixel::new(row, col);
            let exposed = row == 0
                || col == 0
                || row == mask.height() - 1
                || col == mask.width() - 1
                || neighbors4(p).any(|q| {
                    q.row < mask.height() && q.col < mask.width() && !mask.get(q.row, q.col)
                });
            if exposed {
                boundary.insert(p);
            }
        }
    }
    boundary
}

pub(crate) fn require_same_dims(a: &BinaryMask, b: &BinaryMask) -> Result<()> {
    if a.same_dims(b) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_mask(rng: &mut ChaCha8Rng, width: usize, height: usize, fill: f64) -> BinaryMask {
        BinaryMask::from_fn(width, height, |_, _| rng.gen_bool(fill))
    }

    /// Independent labeling oracle: iterative min-label propagation, no
    /// flood fill involved.
    fn label_propagation(mask: &BinaryMask, connectivity: Connectivity) -> Vec<PixelSet> {
        let w = mask.width();
        let h = mask.height();
        let mut labels: Vec<Option<usize>> = (0..w * h)
            .map(|i| if mask.values[i] { Some(i) } else { None })
            .collect();
        loop {
            let mut changed = false;
            for row in 0..h {
                for col in 0..w {
                    let idx = row * w + col;
                    let Some(current) = labels[idx] else { continue };
                    let neighbors: Vec<Pixel> = match connectivity {
                        Connectivity::Four => neighbors4(Pixel::new(row, col)).collect(),
                        Connectivity::Eight => neighbors8(Pixel::new(row, col)).collect(),
                    };
                    let mut best = current;
                    for q in neighbors {
                        if q.row < h && q.col < w {
                            if let Some(l) = labels[q.row * w + q.col] {
                                best = best.min(l);
                            }
                        }
                    }
                    if best < current {
                        labels[idx] = Some(best);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, PixelSet> = Default::default();
        for row in 0..h {
            for col in 0..w {
                if let Some(l) = labels[row * w + col] {
                    groups.entry(l).or_default().insert(Pixel::new(row, col));
                }
            }
        }
        groups.into_values().collect()
    }

    #[test]
    fn all_zero_mask_has_no_components() {
        let mask = BinaryMask::new(8, 8);
        assert!(connected_components(&mask, Connectivity::Four).is_empty());
    }

    #[test]
    fn diagonal_pixels_split_under_4_join_under_8() {
        let mut mask = BinaryMask::new(4, 4);
        mask.set(1, 1, true);
        mask.set(2, 2, true);
        assert_eq!(connected_components(&mask, Connectivity::Four).len(), 2);
        assert_eq!(connected_components(&mask, Connectivity::Eight).len(), 1);
    }

    #[test]
    fn components_match_label_propagation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mask = random_mask(&mut rng, 16, 16, 0.45);
            for conn in [Connectivity::Four, Connectivity::Eight] {
                let got = connected_components(&mask, conn);
                let want = label_propagation(&mask, conn);
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn components_partition_the_foreground() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mask = random_mask(&mut rng, 24, 24, 0.5);
        let comps = connected_components(&mask, Connectivity::Four);
        let mut seen = PixelSet::new();
        for c in &comps {
            for p in c.iter() {
                assert!(mask.get(p.row, p.col));
                assert!(seen.insert(p), "components are not disjoint");
            }
        }
        assert_eq!(seen.len(), mask.count_ones());
        // ordered by smallest member
        let firsts: Vec<Pixel> = comps.iter().map(|c| c.first().unwrap()).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }

    #[test]
    fn single_pixel_is_its_own_boundary() {
        let mut mask = BinaryMask::new(5, 5);
        mask.set(2, 3, true);
        let b = external_boundary(&mask);
        assert_eq!(b.len(), 1);
        assert!(b.contains(Pixel::new(2, 3)));
    }

    #[test]
    fn filled_block_boundary_is_the_ring() {
        let mask = BinaryMask::from_fn(7, 7, |r, c| (2..5).contains(&r) && (2..5).contains(&c));
        let b = external_boundary(&mask);
        assert_eq!(b.len(), 8);
        assert!(!b.contains(Pixel::new(3, 3)));
    }

    #[test]
    fn boundary_matches_neighbor_scan_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let mask = random_mask(&mut rng, 32, 32, 0.5);
            let got = external_boundary(&mask);
            for row in 0..32usize {
                for col in 0..32usize {
                    if !mask.get(row, col) {
                        assert!(!got.contains(Pixel::new(row, col)));
                        continue;
                    }
                    let mut exposed = false;
                    for (dr, dc) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
                        let r = row as isize + dr;
                        let c = col as isize + dc;
                        if r < 0 || c < 0 || r >= 32 || c >= 32 || !mask.get(r as usize, c as usize) {
                            exposed = true;
                        }
                    }
                    assert_eq!(got.contains(Pixel::new(row, col)), exposed);
                }
            }
        }
    }

    #[test]
    fn removing_boundary_strictly_shrinks() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let mask = random_mask(&mut rng, 16, 16, 0.6);
            if mask.is_empty() || mask.is_full() {
                continue;
            }
            let boundary = external_boundary(&mask);
            assert!(!boundary.is_empty());
            let mut shrunk = mask.clone();
            for p in boundary.iter() {
                shrunk.set(p.row, p.col, false);
            }
            assert!(shrunk.count_ones() < mask.count_ones());
        }
    }
}
