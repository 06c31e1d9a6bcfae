//! Deterministic generators of random planar triangulations and random
//! integer chains, used by property tests and validation runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{strip_complex, Chain, OrientedComplex2, Point2};

/// A jittered-grid triangulation of a `cols x rows` block of unit cells,
/// each cell split along a randomly chosen diagonal. Produces
/// `2 * cols * rows` triangles with bounded aspect ratios for moderate
/// jitter (up to ~0.3).
pub fn jittered_triangulation(
    cols: usize,
    rows: usize,
    jitter: f64,
    seed: u64,
) -> Result<OrientedComplex2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index = |i: usize, j: usize| j * (cols + 1) + i;

    let mut vertices = Vec::with_capacity((cols + 1) * (rows + 1));
    for j in 0..=rows {
        for i in 0..=cols {
            let dx: f64 = rng.random_range(-0.5..0.5) * jitter;
            let dy: f64 = rng.random_range(-0.5..0.5) * jitter;
            vertices.push(Point2::new(i as f64 + dx, j as f64 + dy));
        }
    }

    let mut triangles = Vec::with_capacity(2 * cols * rows);
    for j in 0..rows {
        for i in 0..cols {
            let (a, b, c, d) = (
                index(i, j),
                index(i + 1, j),
                index(i + 1, j + 1),
                index(i, j + 1),
            );
            if rng.random_bool(0.5) {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            } else {
                triangles.push([a, b, d]);
                triangles.push([b, c, d]);
            }
        }
    }

    OrientedComplex2::new(vertices, vec![], triangles)
}

/// A random integral 1-chain over `count` distinct edges with nonzero
/// coefficients in `-max_coeff..=max_coeff`.
pub fn random_one_chain(
    complex: &OrientedComplex2,
    count: usize,
    max_coeff: i64,
    seed: u64,
) -> Result<Chain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num_edges = complex.edges().len();
    let mut chain = Chain::zero(1);
    for _ in 0..count.min(num_edges) {
        let edge = rng.random_range(0..num_edges);
        let mut coefficient = 0;
        while coefficient == 0 {
            coefficient = rng.random_range(-max_coeff..=max_coeff);
        }
        // Overwrite rather than accumulate so coefficients stay in range.
        let current = chain.coefficient(edge);
        chain.add_term(edge, coefficient - current)?;
    }
    Ok(chain)
}

/// The fixed set of small complexes (at most four triangles each) used by
/// the brute-force oracle comparisons.
pub fn small_complex_generators() -> Vec<(String, OrientedComplex2)> {
    let sqrt3 = 3f64.sqrt();
    let mut out = Vec::new();

    out.push((
        "equilateral".to_string(),
        OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.5, sqrt3 / 2.0),
            ],
            vec![(0, 1), (1, 2), (2, 0)],
            vec![[0, 1, 2]],
        )
        .unwrap(),
    ));

    out.push((
        "split-square".to_string(),
        OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
            vec![],
            vec![[0, 1, 2], [0, 2, 3]],
        )
        .unwrap(),
    ));

    out.push((
        "fan".to_string(),
        OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, -0.2),
                Point2::new(1.4, 0.8),
                Point2::new(0.6, 1.3),
                Point2::new(-0.5, 0.9),
            ],
            vec![],
            vec![[0, 1, 2], [0, 2, 3], [0, 3, 4]],
        )
        .unwrap(),
    ));

    out.push((
        "pinwheel".to_string(),
        OrientedComplex2::new(
            vec![
                Point2::new(0.5, 0.5),
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
            vec![],
            vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
        )
        .unwrap(),
    ));

    let (strip, _, _) = strip_complex(2, 1.0).unwrap();
    out.push(("strip-2".to_string(), strip));

    out
}
