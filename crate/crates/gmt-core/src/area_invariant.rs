//! Integral area invariant signatures: exact areas of disk/polygon-interior
//! intersections, one per polygon vertex, plus a Monte Carlo oracle.
//!
//! The exact area follows the circulation form of Green's theorem around
//! the boundary of the disk/interior intersection: polygon edge
//! portions inside the disk contribute straight-line circulation terms, and
//! maximal circle arcs inside the polygon contribute sector terms. Arc
//! membership is decided by a winding-number test of arc midpoints with
//! exact orientation predicates, which stays robust when the center lies on
//! the polygon boundary (the usual case: centers are vertices).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec;
use crate::geometry::Point2;
use crate::polygon::{winding_number, SimplePolygon};

/// Discriminant clamp for edge/circle intersection; smaller magnitudes are
/// treated as tangency, which contributes no crossing.
const TANGENCY_EPS: f64 = 1e-14;

/// A fixed-radius signature: one disk-interior intersection area per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub radius: f64,
    pub values: Vec<f64>,
}

impl Signature {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        if self.values.is_empty() {
            0.0
        } else {
            self.values.iter().sum::<f64>() / self.values.len() as f64
        }
    }
}

/// Exact area of `B(center, r)` intersected with the open interior of the
/// polygon.
pub fn disk_polygon_area(polygon: &SimplePolygon, center: Point2, r: f64) -> f64 {
    assert!(r > 0.0 && r.is_finite(), "radius must be positive");
    let vs = polygon.vertices();
    let n = vs.len();
    let r2 = r * r;

    let mut area = 0.0;
    let mut crossing_angles: Vec<f64> = Vec::new();

    for i in 0..n {
        // Center-local coordinates for conditioning.
        let a = Point2::new(vs[i].x - center.x, vs[i].y - center.y);
        let b = Point2::new(vs[(i + 1) % n].x - center.x, vs[(i + 1) % n].y - center.y);
        let d = Point2::new(b.x - a.x, b.y - a.y);

        // |a + t d|^2 = r^2 as a quadratic in t.
        let qa = d.x * d.x + d.y * d.y;
        let qb = 2.0 * (a.x * d.x + a.y * d.y);
        let qc = a.x * a.x + a.y * a.y - r2;
        let disc = qb * qb - 4.0 * qa * qc;

        let mut cuts = [0.0f64; 2];
        let mut num_cuts = 0;
        if disc.abs() >= TANGENCY_EPS && disc > 0.0 {
            let sq = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * sq);
            let (t1, t2) = if qb == 0.0 {
                (-sq / (2.0 * qa), sq / (2.0 * qa))
            } else {
                (q / qa, qc / q)
            };
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            for t in [lo, hi] {
                if t > 0.0 && t < 1.0 {
                    cuts[num_cuts] = t;
                    num_cuts += 1;
                }
            }
        }

        let point_at = |t: f64| Point2::new(a.x + t * d.x, a.y + t * d.y);
        let mut prev_t = 0.0;
        let mut prev_p = a;
        for &t in cuts[..num_cuts].iter().chain(std::iter::once(&1.0)) {
            let p = if t == 1.0 { b } else { point_at(t) };
            let mid = point_at(0.5 * (prev_t + t));
            if mid.x * mid.x + mid.y * mid.y < r2 {
                area += 0.5 * (prev_p.x * p.y - p.x * prev_p.y);
            }
            prev_t = t;
            prev_p = p;
        }
        for &t in &cuts[..num_cuts] {
            let p = point_at(t);
            crossing_angles.push(p.y.atan2(p.x));
        }
    }

    if crossing_angles.is_empty() {
        // The whole circle is one arc: inside or outside the polygon.
        let probe = Point2::new(center.x + r, center.y);
        if winding_number(vs, probe) != 0 {
            area += PI * r2;
        }
    } else {
        crossing_angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let m = crossing_angles.len();
        for i in 0..m {
            let lo = crossing_angles[i];
            let hi = if i + 1 < m {
                crossing_angles[i + 1]
            } else {
                crossing_angles[0] + 2.0 * PI
            };
            let span = hi - lo;
            if span <= 0.0 {
                continue;
            }
            let mid = lo + span / 2.0;
            let probe = Point2::new(center.x + r * mid.cos(), center.y + r * mid.sin());
            if winding_number(vs, probe) != 0 {
                area += 0.5 * r2 * span;
            }
        }
    }

    area.clamp(0.0, PI * r2)
}

/// The signature of a polygon at radius `r`: per-vertex disk areas, in
/// vertex order. Entries are computed in parallel when the `parallel`
/// feature is enabled; results equal the sequential order exactly.
pub fn signature(polygon: &SimplePolygon, r: f64) -> Signature {
    let n = polygon.len();
    let values = exec::map_indices(n, |k| disk_polygon_area(polygon, polygon.vertices()[k], r));
    Signature { radius: r, values }
}

/// Sequential reference implementation of [`signature`].
pub fn signature_seq(polygon: &SimplePolygon, r: f64) -> Signature {
    let values = polygon
        .vertices()
        .iter()
        .map(|&v| disk_polygon_area(polygon, v, r))
        .collect();
    Signature { radius: r, values }
}

/// Samples per deterministic Monte Carlo block.
const MC_BLOCK: u64 = 1 << 16;

fn mc_block_hits(
    polygon: &SimplePolygon,
    center: Point2,
    r: f64,
    block_samples: u64,
    block_seed: u64,
) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(block_seed);
    let mut hits = 0;
    let mut accepted = 0;
    while accepted < block_samples {
        let x: f64 = rng.random_range(-r..=r);
        let y: f64 = rng.random_range(-r..=r);
        if x * x + y * y > r * r {
            continue;
        }
        accepted += 1;
        let p = Point2::new(center.x + x, center.y + y);
        if winding_number(polygon.vertices(), p) != 0 {
            hits += 1;
        }
    }
    hits
}

fn mc_seed_for_block(seed: u64, block: u64) -> u64 {
    seed ^ block.wrapping_mul(0x9e3779b97f4a7c15)
}

/// Monte Carlo estimate of the disk/polygon intersection area by uniform
/// rejection sampling in the disk. Returns `(estimate, stderr)` with
/// `stderr = pi r^2 sqrt(p (1 - p) / samples)`.
///
/// Sampling is split into fixed blocks with per-block seeds, so a fixed
/// seed reproduces the identical estimate at any thread count.
pub fn monte_carlo_area(
    polygon: &SimplePolygon,
    center: Point2,
    r: f64,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    assert!(samples >= 1, "at least one sample required");
    let blocks = samples.div_ceil(MC_BLOCK);
    let hits: u64 = exec::map_indices(blocks as usize, |b| {
        let b = b as u64;
        let quota = if (b + 1) * MC_BLOCK <= samples {
            MC_BLOCK
        } else {
            samples - b * MC_BLOCK
        };
        mc_block_hits(polygon, center, r, quota, mc_seed_for_block(seed, b))
    })
    .into_iter()
    .sum();

    let disk = PI * r * r;
    let p = hits as f64 / samples as f64;
    (disk * p, disk * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Sequential reference implementation of [`monte_carlo_area`]; identical
/// output by construction.
pub fn monte_carlo_area_seq(
    polygon: &SimplePolygon,
    center: Point2,
    r: f64,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    assert!(samples >= 1, "at least one sample required");
    let blocks = samples.div_ceil(MC_BLOCK);
    let mut hits = 0;
    for b in 0..blocks {
        let quota = if (b + 1) * MC_BLOCK <= samples {
            MC_BLOCK
        } else {
            samples - b * MC_BLOCK
        };
        hits += mc_block_hits(polygon, center, r, quota, mc_seed_for_block(seed, b));
    }
    let disk = PI * r * r;
    let p = hits as f64 / samples as f64;
    (disk * p, disk * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Area of the intersection of two disks with radii `r` and `big_r` whose
/// centers are `d` apart, in a cancellation-safe `atan2` form.
pub fn circle_lens_area(d: f64, r: f64, big_r: f64) -> f64 {
    if d >= r + big_r {
        return 0.0;
    }
    if d <= (big_r - r).abs() {
        let rm = r.min(big_r);
        return PI * rm * rm;
    }
    let k2 = (-d + r + big_r) * (d + r - big_r) * (d - r + big_r) * (d + r + big_r);
    let k = k2.max(0.0).sqrt();
    r * r * k.atan2(d * d + r * r - big_r * big_r)
        + big_r * big_r * k.atan2(d * d + big_r * big_r - r * r)
        - 0.5 * k
}
