//! Geometric measure theory computations on simplicial complexes and
//! polygon signatures.
//!
//! Three tool families share this crate:
//!
//! - **Flat norm**: the multiscale simplicial flat norm of integer chains
//!   on oriented planar 2-complexes, solved as a totally unimodular linear
//!   program with a certified integral decomposition ([`flat_norm`]).
//! - **Mesh quality**: simplicial regularity constants, angle bounds,
//!   deformation-theorem mass bound calculators, and square-grid rotation
//!   selection ([`mesh_quality`]).
//! - **Area invariant**: exact integral area invariant signatures of simple
//!   polygons and reconstruction of curves from a fixed-radius signature by
//!   derivative-free direct search ([`area_invariant`], [`reconstruction`]).
//!
//! Data-parallel inner loops (signatures, Monte Carlo sampling, poll-step
//! evaluation) run on rayon under the default `parallel` feature and fall
//! back to sequential execution without it; results are identical either
//! way.

pub mod area_invariant;
pub mod error;
pub mod exec;
pub mod flat_norm;
pub mod geometry;
pub mod halton;
pub mod io;
pub mod lp;
pub mod mesh_quality;
pub mod polygon;
pub mod predicates;
pub mod reconstruction;
pub mod svg;
pub mod synthetic;

pub use area_invariant::{
    circle_lens_area, disk_polygon_area, monte_carlo_area, signature, Signature,
};
pub use error::{Error, Result};
pub use flat_norm::{
    build_lp, lambda_sweep, solve_flat_norm, FlatNormDecomposition, FlatNormProblem,
};
pub use geometry::{
    boundary, mass, measure_complex, strip_complex, Chain, OrientedComplex2, Point2,
    SimplexMeasures,
};
pub use mesh_quality::{
    c_theta, grid_rotation, regularity_constant, sdt_bounds, BoundVariant, DeformationBounds,
    GridRotation, RegularityReport,
};
pub use polygon::{is_simple, SimplePolygon};
pub use reconstruction::{
    best_fit_circle, mads_solve, multiresolution_reconstruct, objective, synthesize,
    FourierPolygon, SearchState,
};
