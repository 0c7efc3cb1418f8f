//! Amodal completion and depth ordering for two-layer binary scenes.
//!
//! Given a planar image segmented into two regions, the engine builds the
//! three possible depth interpretations (either region occluding the other,
//! or both fitting together as a mosaic), completes the occluded object by
//! elastica-minimizing threshold dynamics, and selects the perceptually
//! preferred interpretation with a Bayesian score that combines a
//! boundary-elastica likelihood with a shape-complexity prior.
//!
//! The pipeline entry points live in [`pipeline`]; the layers underneath
//! are usable on their own:
//!
//! - [`raster`]: masks, components, boundaries, exact distance transforms
//!   and the discrete heat semigroup.
//! - [`geometry`]: curvature fields, elastica energies, contour endpoints
//!   and the relatability test.
//! - [`mask_init`]: relatability-driven half-space voting that seeds the
//!   completion.
//! - [`disocclusion`]: the threshold-dynamics inpainting loop.
//! - [`complexity`]: boundary-statistics shape complexity.
//! - [`hypothesis`]: hypothesis construction, scoring and selection.

pub mod complexity;
pub mod disocclusion;
pub mod error;
pub mod geometry;
pub mod hypothesis;
pub mod io;
pub mod mask_init;
pub mod pipeline;
pub mod raster;
pub mod synth;

pub use error::{Error, Result};
