//! Curve reconstruction from a fixed-radius signature.
//!
//! Polygons are parameterized by truncated Fourier series (4m coefficients)
//! and fitted by minimizing the squared signature mismatch with an
//! OrthoMADS-style direct search: deterministic Halton-seeded orthogonal
//! poll bases of 4m+1 directions, partial (opportunistic) polling, and an
//! extreme barrier that assigns infinite objective to non-simple polygons.

use std::f64::consts::PI;

use crate::area_invariant::{circle_lens_area, disk_polygon_area, Signature};
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::Point2;
use crate::halton::{first_primes, halton_point};
use crate::polygon::{is_simple, signed_area};

/// Initial poll frame size.
const FRAME_INITIAL: f64 = 0.5;
/// Mesh size stays this factor below the frame size.
const MESH_RATIO: f64 = 16.0;
/// Search stops when the mesh is finer than this.
const MESH_MIN: f64 = 1e-9;
/// Bisection residual target for the best-fit circle.
const CIRCLE_RESIDUAL: f64 = 1e-10;
/// Largest circumradius the best-fit bisection will report, as a multiple
/// of the signature radius.
const CIRCLE_RADIUS_CAP: f64 = 2e4;

/// A closed polygon parameterized by a 4 x m Fourier coefficient matrix.
///
/// Rows are x-cosine, x-sine, y-cosine, y-sine; column `j` holds the
/// coefficients of harmonic `j`. The synthesized polygon need not be
/// simple; simplicity is the optimization constraint.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierPolygon {
    harmonics: usize,
    vertex_count: usize,
    coeffs: [Vec<f64>; 4],
}

impl FourierPolygon {
    pub fn zeros(harmonics: usize, vertex_count: usize) -> Result<Self> {
        if harmonics == 0 {
            return Err(Error::Domain("at least one harmonic required".into()));
        }
        if vertex_count < 3 {
            return Err(Error::Domain("at least three vertices required".into()));
        }
        Ok(FourierPolygon {
            harmonics,
            vertex_count,
            coeffs: std::array::from_fn(|_| vec![0.0; harmonics]),
        })
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn coefficient(&self, row: usize, j: usize) -> f64 {
        self.coeffs[row][j]
    }

    pub fn set_coefficient(&mut self, row: usize, j: usize, value: f64) {
        self.coeffs[row][j] = value;
    }

    /// Number of free variables, `4m`.
    pub fn dim(&self) -> usize {
        4 * self.harmonics
    }

    /// Flatten row-major into a variable vector of length `4m`.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        for row in &self.coeffs {
            v.extend_from_slice(row);
        }
        v
    }

    pub fn from_vector(vars: &[f64], harmonics: usize, vertex_count: usize) -> Result<Self> {
        if vars.len() != 4 * harmonics {
            return Err(Error::Domain(format!(
                "expected {} variables, got {}",
                4 * harmonics,
                vars.len()
            )));
        }
        let mut fp = FourierPolygon::zeros(harmonics, vertex_count)?;
        for row in 0..4 {
            fp.coeffs[row].copy_from_slice(&vars[row * harmonics..(row + 1) * harmonics]);
        }
        Ok(fp)
    }

    /// Extend to `new_m` harmonics with zero coefficients; the synthesized
    /// polygon is unchanged.
    pub fn zero_padded(&self, new_m: usize) -> Result<Self> {
        if new_m < self.harmonics {
            return Err(Error::Domain(
                "zero padding cannot reduce the harmonic count".into(),
            ));
        }
        let mut fp = FourierPolygon::zeros(new_m, self.vertex_count)?;
        for row in 0..4 {
            fp.coeffs[row][..self.harmonics].copy_from_slice(&self.coeffs[row]);
        }
        Ok(fp)
    }
}

/// Evaluate the Fourier sums at `s_k = k / N` for `k = 1..=N`.
///
/// The trigonometric argument is `2 pi j k / N`, which closes the polygon
/// (vertices for `k` and `k + N` coincide).
pub fn synthesize(fp: &FourierPolygon) -> Vec<Point2> {
    let n = fp.vertex_count;
    let m = fp.harmonics;
    (1..=n)
        .map(|k| {
            let s = k as f64 / n as f64;
            let mut x = 0.0;
            let mut y = 0.0;
            for j in 0..m {
                let arg = 2.0 * PI * j as f64 * s;
                let (sin, cos) = arg.sin_cos();
                x += fp.coeffs[0][j] * cos + fp.coeffs[1][j] * sin;
                y += fp.coeffs[2][j] * cos + fp.coeffs[3][j] * sin;
            }
            Point2::new(x, y)
        })
        .collect()
}

/// Squared signature mismatch with an extreme barrier: infinite whenever
/// the synthesized polygon is not simple.
pub fn objective(fp: &FourierPolygon, target: &Signature) -> f64 {
    debug_assert_eq!(fp.vertex_count, target.len());
    let vertices = synthesize(fp);
    signature_of_candidate(&vertices, target.radius).map_or(f64::INFINITY, |sig| {
        sig.values
            .iter()
            .zip(&target.values)
            .map(|(g, t)| (g - t) * (g - t))
            .sum()
    })
}

/// Signature of a raw vertex loop, or `None` if it is not simple. Clockwise
/// loops are evaluated on the reversed copy and the values are mapped back
/// to the original vertex indices.
pub fn signature_of_candidate(vertices: &[Point2], radius: f64) -> Option<Signature> {
    if !is_simple(vertices) {
        return None;
    }
    let ccw: Vec<Point2> = if signed_area(vertices) > 0.0 {
        vertices.to_vec()
    } else {
        vertices.iter().rev().cloned().collect()
    };
    let values = (0..vertices.len())
        .map(|k| disk_polygon_area_raw(&ccw, vertices[k], radius))
        .collect();
    Some(Signature { radius, values })
}

fn disk_polygon_area_raw(ccw: &[Point2], center: Point2, radius: f64) -> f64 {
    // The vertex list is already validated simple and counterclockwise.
    let poly = crate::polygon::SimplePolygon::new(ccw.to_vec())
        .expect("candidate validated simple and counterclockwise");
    disk_polygon_area(&poly, center, radius)
}

/// Result of a best-fit circle solve.
#[derive(Clone, Debug)]
pub struct BestFitCircle {
    /// Regular `N`-gon of circumradius `radius`, stored in the j = 1
    /// harmonic slots of an m = 2 coefficient matrix.
    pub polygon: FourierPolygon,
    pub radius: f64,
    /// Remaining lens-area residual at the reported radius.
    pub residual: f64,
    /// True when bisection stopped at the radius cap without meeting the
    /// residual target (the half-plane limit of the lens equation).
    pub saturated: bool,
}

/// Solve `lens_area(R) = mean(target)` for the circumradius of a regular
/// polygon whose boundary carries the target's average density, where the
/// probing disk of radius `r` is centered on a circle of radius `R`
/// (center distance `d = R`).
pub fn best_fit_circle(target: &Signature) -> Result<BestFitCircle> {
    let r = target.radius;
    if target.is_empty() {
        return Err(Error::Domain("empty signature".into()));
    }
    let mean = target.mean();
    if mean <= 0.0 {
        return Err(Error::NoSolution(format!(
            "mean signature {mean} is not positive"
        )));
    }
    if mean >= PI * r * r {
        return Err(Error::NoSolution(format!(
            "mean signature {mean} is at least the full disk area {}",
            PI * r * r
        )));
    }

    let lens = |big_r: f64| circle_lens_area(big_r, r, big_r);
    let mut lo = r / 2.0 * (1.0 + 1e-12);
    let mut hi = CIRCLE_RADIUS_CAP * r;
    let mut saturated = false;

    // The lens area increases from pi r^2 / 4 toward pi r^2 / 2 on this
    // interval; clamp means outside the attainable range.
    let radius = if mean <= lens(lo) {
        saturated = true;
        lo
    } else if mean >= lens(hi) {
        saturated = true;
        hi
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if lens(mid) < mean {
                lo = mid;
            } else {
                hi = mid;
            }
            if (lens(lo) - mean).abs() <= CIRCLE_RESIDUAL {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    let residual = (lens(radius) - mean).abs();
    if !saturated && residual > 1e-6 {
        saturated = true;
    }

    let mut polygon = FourierPolygon::zeros(2, target.len())?;
    polygon.set_coefficient(0, 1, radius);
    polygon.set_coefficient(3, 1, radius);
    Ok(BestFitCircle {
        polygon,
        radius,
        residual,
        saturated,
    })
}

/// State of a direct search run.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub incumbent: FourierPolygon,
    pub objective: f64,
    pub mesh_size: f64,
    pub frame_size: f64,
    pub evaluations: usize,
    pub halton_index: u64,
}

/// Build the 4m+1 poll directions for one iteration: a Householder
/// orthogonal basis from a Halton unit vector, scaled to the frame and
/// rounded to the mesh, plus the negated sum.
fn poll_directions(halton_index: u64, bases: &[u64], frame: f64, mesh: f64) -> Vec<Vec<f64>> {
    let n = bases.len();
    let u = halton_point(halton_index, bases);
    let mut q: Vec<f64> = u.iter().map(|&x| 2.0 * x - 1.0).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-12 {
        q = vec![0.0; n];
        q[0] = 1.0;
    } else {
        for x in &mut q {
            *x /= norm;
        }
    }

    // Columns of H = I - 2 q q^T are orthonormal.
    let mut directions = Vec::with_capacity(n + 1);
    for col in 0..n {
        let mut d: Vec<f64> = (0..n)
            .map(|row| {
                let h = if row == col { 1.0 } else { 0.0 };
                frame * (h - 2.0 * q[row] * q[col])
            })
            .collect();
        for x in &mut d {
            *x = mesh * (*x / mesh).round();
        }
        if d.iter().all(|&x| x == 0.0) {
            // Keep the poll set positive-spanning after rounding.
            let lead = (0..n)
                .max_by(|&a, &b| {
                    let ha = if a == col { 1.0 } else { 0.0 } - 2.0 * q[a] * q[col];
                    let hb = if b == col { 1.0 } else { 0.0 } - 2.0 * q[b] * q[col];
                    ha.abs().partial_cmp(&hb.abs()).unwrap()
                })
                .unwrap();
            let h = if lead == col { 1.0 } else { 0.0 } - 2.0 * q[lead] * q[col];
            d[lead] = mesh * h.signum();
        }
        directions.push(d);
    }
    let negated_sum: Vec<f64> = (0..n)
        .map(|row| -directions.iter().map(|d| d[row]).sum::<f64>())
        .collect();
    directions.push(negated_sum);
    directions
}

/// Raw (unrounded, unscaled) Householder basis for property tests.
pub fn householder_basis(halton_index: u64, dim: usize) -> Vec<Vec<f64>> {
    let bases = first_primes(dim);
    let u = halton_point(halton_index, &bases);
    let mut q: Vec<f64> = u.iter().map(|&x| 2.0 * x - 1.0).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-12 {
        q = vec![0.0; dim];
        q[0] = 1.0;
    } else {
        for x in &mut q {
            *x /= norm;
        }
    }
    (0..dim)
        .map(|col| {
            (0..dim)
                .map(|row| {
                    let h = if row == col { 1.0 } else { 0.0 };
                    h - 2.0 * q[row] * q[col]
                })
                .collect()
        })
        .collect()
}

/// Evaluate candidates in deterministic order, stopping at the first
/// strict improvement; at most `allowance` evaluations are consumed.
///
/// With the `parallel` feature the batch is evaluated speculatively in
/// parallel, but acceptance and the consumed-evaluation count follow the
/// same direction order, so the search trajectory is identical to the
/// sequential build.
fn poll_batch(
    candidates: &[FourierPolygon],
    target: &Signature,
    incumbent_objective: f64,
    allowance: usize,
) -> (usize, Option<(usize, f64)>) {
    let limit = candidates.len().min(allowance);
    if limit == 0 {
        return (0, None);
    }
    if cfg!(feature = "parallel") {
        let values = exec::map_indices(limit, |i| objective(&candidates[i], target));
        for (i, &f) in values.iter().enumerate() {
            if f < incumbent_objective {
                return (i + 1, Some((i, f)));
            }
        }
        (limit, None)
    } else {
        for (i, candidate) in candidates.iter().take(limit).enumerate() {
            let f = objective(candidate, target);
            if f < incumbent_objective {
                return (i + 1, Some((i, f)));
            }
        }
        (limit, None)
    }
}

/// Minimize the signature mismatch over `4m` Fourier coefficients by
/// mesh-adaptive direct search with partial polling.
///
/// Deterministic: the poll directions come from a Halton stream starting at
/// `halton_start`, and two runs with identical inputs produce identical
/// evaluation sequences.
pub fn mads_solve(
    target: &Signature,
    initial: &FourierPolygon,
    budget: usize,
    halton_start: u64,
) -> Result<SearchState> {
    let m = initial.harmonics();
    let n = 4 * m;
    if target.len() != initial.vertex_count() {
        return Err(Error::Domain(format!(
            "target has {} entries for {} vertices",
            target.len(),
            initial.vertex_count()
        )));
    }
    if budget < n + 1 {
        return Err(Error::Domain(format!(
            "budget {budget} is below one poll frame of {} evaluations",
            n + 1
        )));
    }
    let bases = first_primes(n);

    let mut incumbent = initial.to_vector();
    let mut best = objective(initial, target);
    let mut evaluations = 1usize;
    let mut frame = FRAME_INITIAL;
    let mut halton_index = halton_start.max(1);
    let infeasible_start = !best.is_finite();
    let mut first_frame = true;

    // Sum-of-squares objective: zero is the global minimum.
    while best > 0.0 && evaluations < budget && frame / MESH_RATIO >= MESH_MIN {
        let mesh = frame / MESH_RATIO;
        let directions = poll_directions(halton_index, &bases, frame, mesh);
        halton_index += 1;

        let candidates: Vec<FourierPolygon> = directions
            .iter()
            .map(|d| {
                let vars: Vec<f64> = incumbent.iter().zip(d).map(|(x, dx)| x + dx).collect();
                FourierPolygon::from_vector(&vars, m, initial.vertex_count())
                    .expect("dimension preserved")
            })
            .collect();

        let allowance = budget - evaluations;
        let (consumed, improvement) = poll_batch(&candidates, target, best, allowance);
        evaluations += consumed;

        match improvement {
            Some((idx, f)) => {
                incumbent = candidates[idx].to_vector();
                best = f;
                frame = (2.0 * frame).min(FRAME_INITIAL);
            }
            None => {
                if first_frame && infeasible_start {
                    return Err(Error::InfeasibleStart);
                }
                frame /= 4.0;
            }
        }
        first_frame = false;
    }

    if !best.is_finite() {
        return Err(Error::InfeasibleStart);
    }
    Ok(SearchState {
        incumbent: FourierPolygon::from_vector(&incumbent, m, initial.vertex_count())?,
        objective: best,
        mesh_size: frame / MESH_RATIO,
        frame_size: frame,
        evaluations,
        halton_index,
    })
}

/// Reconstruct through an ascending harmonic schedule. The first stage
/// starts from the best-fit circle; each later stage starts from the
/// previous incumbent zero-padded to the new harmonic count.
pub fn multiresolution_reconstruct(
    target: &Signature,
    m_schedule: &[usize],
    budget_per_stage: usize,
) -> Result<Vec<SearchState>> {
    if m_schedule.is_empty() {
        return Err(Error::Domain("empty harmonic schedule".into()));
    }
    if m_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("harmonic schedule must be ascending".into()));
    }
    if m_schedule[0] < 2 {
        return Err(Error::Domain(
            "the first stage needs m >= 2 to hold the best-fit circle harmonics".into(),
        ));
    }

    let circle = best_fit_circle(target)?;
    let mut initial = circle.polygon.zero_padded(m_schedule[0])?;
    let mut halton_start = 1;
    let mut stages = Vec::with_capacity(m_schedule.len());
    for &m in m_schedule {
        initial = initial.zero_padded(m)?;
        let state = mads_solve(target, &initial, budget_per_stage, halton_start)?;
        halton_start = state.halton_index;
        initial = state.incumbent.clone();
        stages.push(state);
    }
    Ok(stages)
}
