//! Simplicial regularity constants, angle bounds, deformation-theorem mass
//! bound calculators, and grid-rotation selection.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{measure_complex, OrientedComplex2, Point2};

/// Angular tolerance for deduplicating edge directions.
const DIRECTION_DEDUP: f64 = 1e-12;

/// Shape-regularity summary of a 2-complex.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    /// Minimum interior angle over all triangles, radians.
    pub theta_min: f64,
    /// The regularity constant: maximum of the per-triangle values.
    pub vartheta: f64,
    pub per_triangle_vartheta: Vec<f64>,
    /// The angle-based upper bound evaluated at `theta_min`.
    pub c_theta_bound: f64,
}

/// Evaluated deformation mass bounds (upper bounds, all nonnegative).
#[derive(Clone, Copy, Debug)]
pub struct DeformationBounds {
    pub mass_p: f64,
    pub mass_boundary_p: f64,
    pub mass_q: f64,
    pub mass_r: f64,
    pub flat_distance: f64,
}

/// Which base expansion factor multiplies the regularity constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundVariant {
    /// Factor `4 vartheta`.
    Classic,
    /// Factor `(2 + eps) vartheta`.
    SingleTight { eps: f64 },
    /// Factor `(2m + 2n + eps) vartheta` for deforming `m` d-currents and
    /// `n` (d+1)-currents simultaneously.
    Multi { m: u32, n: u32, eps: f64 },
}

impl BoundVariant {
    pub fn base_factor(&self, vartheta: f64) -> f64 {
        match *self {
            BoundVariant::Classic => 4.0 * vartheta,
            BoundVariant::SingleTight { eps } => (2.0 + eps) * vartheta,
            BoundVariant::Multi { m, n, eps } => (2.0 * m as f64 + 2.0 * n as f64 + eps) * vartheta,
        }
    }
}

fn triangle_angles(a: Point2, b: Point2, c: Point2) -> [f64; 3] {
    let la = b.distance(&c);
    let lb = c.distance(&a);
    let lc = a.distance(&b);
    let angle = |opp: f64, s1: f64, s2: f64| {
        let cos = ((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2)).clamp(-1.0, 1.0);
        cos.acos()
    };
    [
        angle(la, lb, lc),
        angle(lb, lc, la),
        angle(lc, la, lb),
    ]
}

/// The angle-based regularity bound `C_theta = (48/pi) cot(theta/2)^2 +
/// 4 cot(theta/2)`, valid for `0 < theta <= pi/3`.
pub fn c_theta(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= PI / 3.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "c_theta requires theta in (0, pi/3], got {theta}"
        )));
    }
    let cot = 1.0 / (theta / 2.0).tan();
    Ok(48.0 / PI * cot * cot + 4.0 * cot)
}

/// Per-triangle regularity `(4/pi) diam perim / inradius^2 + 2 diam /
/// inradius`, its maximum over the complex, and the minimum interior angle.
pub fn regularity_constant(complex: &OrientedComplex2) -> Result<RegularityReport> {
    if complex.triangles().is_empty() {
        return Err(Error::Domain(
            "regularity constant requires at least one triangle".into(),
        ));
    }
    let measures = measure_complex(complex)?;
    let vs = complex.vertices();

    let mut theta_min = f64::INFINITY;
    let mut per_triangle = Vec::with_capacity(complex.triangles().len());
    for (t, &[a, b, c]) in complex.triangles().iter().enumerate() {
        let diam = measures.triangle_diameters[t];
        let perim = measures.triangle_perimeters[t];
        let inr = measures.triangle_inradii[t];
        per_triangle.push(4.0 / PI * diam * perim / (inr * inr) + 2.0 * diam / inr);
        for angle in triangle_angles(vs[a], vs[b], vs[c]) {
            theta_min = theta_min.min(angle);
        }
    }
    let vartheta = per_triangle.iter().cloned().fold(0.0, f64::max);

    Ok(RegularityReport {
        theta_min,
        vartheta,
        per_triangle_vartheta: per_triangle,
        c_theta_bound: c_theta(theta_min)?,
    })
}

/// Check `diameter / inradius <= 2 cot(theta_min / 2)` for one triangle.
/// Returns `(ratio, bound, ok)`.
pub fn diameter_inradius_ratio_bound_check(
    a: Point2,
    b: Point2,
    c: Point2,
) -> Result<(f64, f64, bool)> {
    let complex = OrientedComplex2::new(vec![a, b, c], vec![], vec![[0, 1, 2]])?;
    let measures = measure_complex(&complex)?;
    let ratio = measures.triangle_diameters[0] / measures.triangle_inradii[0];
    let theta_min = triangle_angles(a, b, c)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let bound = 2.0 / (theta_min / 2.0).tan();
    Ok((ratio, bound, ratio <= bound + 1e-9))
}

/// Evaluate the five deformation mass bounds with base factor `f`:
///
/// ```text
/// M(P)  <= f^(p-d) M(T) + D f^(p-d+1) M(bT)
/// M(bP) <= f^(p-d+1) M(bT)
/// M(Q)  <= D f^(p-d) (1 + f) M(bT)
/// M(R)  <= D f^(p-d) M(T)
/// F(T,P) <= D f^(p-d) (M(T) + (1 + f) M(bT))
/// ```
pub fn sdt_bounds(
    p: u32,
    d: u32,
    vartheta: f64,
    delta_diam: f64,
    mass_t: f64,
    mass_bt: f64,
    variant: BoundVariant,
) -> Result<DeformationBounds> {
    if p < d {
        return Err(Error::Domain(format!(
            "deformation requires p >= d, got p = {p}, d = {d}"
        )));
    }
    for (name, v) in [
        ("vartheta", vartheta),
        ("delta_diam", delta_diam),
        ("mass_t", mass_t),
        ("mass_bt", mass_bt),
    ] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!(
                "{name} must be finite and nonnegative, got {v}"
            )));
        }
    }

    let f = variant.base_factor(vartheta);
    let codim = (p - d) as i32;
    let fp = f.powi(codim);
    let fp1 = f.powi(codim + 1);

    Ok(DeformationBounds {
        mass_p: fp * mass_t + delta_diam * fp1 * mass_bt,
        mass_boundary_p: fp1 * mass_bt,
        mass_q: delta_diam * fp * (1.0 + f) * mass_bt,
        mass_r: delta_diam * fp * mass_t,
        flat_distance: delta_diam * fp * (mass_t + (1.0 + f) * mass_bt),
    })
}

/// A grid rotation together with its guaranteed minimum created angle.
#[derive(Clone, Copy, Debug)]
pub struct GridRotation {
    /// Rotation of the square grid, in `[0, pi/2)`.
    pub phi: f64,
    /// Every angle between a rotated grid direction and an input edge
    /// direction is at least this, `pi / (2N)`.
    pub guaranteed_min_angle: f64,
    /// `N`: the number of distinct avoided directions mod pi.
    pub direction_count: usize,
}

/// Pick a square-grid rotation avoiding the direction set
/// `E = {phi_e, phi_e + pi/2}` of the input edges.
///
/// Directions are deduplicated, the set collapses onto the circle of
/// directions mod pi/2, and the rotation is the midpoint of the largest
/// angular gap, which guarantees a margin of at least `pi / (2N)`.
pub fn grid_rotation(edges: &[Point2]) -> Result<GridRotation> {
    let quarter = PI / 2.0;
    let mut dirs: Vec<f64> = edges
        .iter()
        .filter(|v| (v.x != 0.0 || v.y != 0.0) && v.is_finite())
        .map(|v| v.y.atan2(v.x).rem_euclid(PI))
        .collect();
    if dirs.is_empty() {
        return Err(Error::Domain(
            "grid rotation requires at least one nonzero edge direction".into(),
        ));
    }

    // E = {phi, phi + pi/2} mod pi, deduplicated on the circle.
    let mut avoided: Vec<f64> = dirs
        .drain(..)
        .flat_map(|phi| [phi, (phi + quarter).rem_euclid(PI)])
        .collect();
    avoided.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut deduped: Vec<f64> = Vec::with_capacity(avoided.len());
    for phi in avoided {
        if deduped
            .last()
            .map_or(true, |&last| phi - last > DIRECTION_DEDUP)
        {
            deduped.push(phi);
        }
    }
    // Wraparound duplicate: pi - tiny vs 0.
    if deduped.len() > 1 {
        let first = deduped[0];
        let last = *deduped.last().unwrap();
        if PI - last + first <= DIRECTION_DEDUP {
            deduped.pop();
        }
    }
    let n = deduped.len();

    // Both grid directions collapse mod pi/2, as does each {phi, phi+pi/2}
    // pair of E, so work on the circle of circumference pi/2.
    let mut folded: Vec<f64> = deduped.iter().map(|&phi| phi.rem_euclid(quarter)).collect();
    folded.sort_by(|a, b| a.partial_cmp(b).unwrap());
    folded.dedup_by(|a, b| (*a - *b).abs() <= DIRECTION_DEDUP);
    if folded.len() > 1 {
        let first = folded[0];
        let last = *folded.last().unwrap();
        if quarter - last + first <= DIRECTION_DEDUP {
            folded.pop();
        }
    }

    // Midpoint of the largest circular gap.
    let mut best_gap = f64::NEG_INFINITY;
    let mut phi = 0.0;
    for (i, &lo) in folded.iter().enumerate() {
        let hi = if i + 1 < folded.len() {
            folded[i + 1]
        } else {
            folded[0] + quarter
        };
        let gap = hi - lo;
        if gap > best_gap {
            best_gap = gap;
            phi = (lo + gap / 2.0).rem_euclid(quarter);
        }
    }

    Ok(GridRotation {
        phi,
        guaranteed_min_angle: PI / (2.0 * n as f64),
        direction_count: n,
    })
}

/// Smallest angle between the line through direction `alpha` and the line
/// through direction `beta` (both mod pi), in `[0, pi/2]`.
pub fn line_angle(alpha: f64, beta: f64) -> f64 {
    let diff = (alpha - beta).rem_euclid(PI);
    diff.min(PI - diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::strip_complex;

    const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;

    #[test]
    fn c_theta_sixty_degrees_matches_equilateral() {
        let c60 = c_theta(PI / 3.0).unwrap();
        assert!((c60 - (144.0 / PI + 4.0 * SQRT3)).abs() < 1e-9);

        let complex = OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.5, SQRT3 / 2.0),
            ],
            vec![],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let report = regularity_constant(&complex).unwrap();
        assert!((report.vartheta - c60).abs() < 1e-9);
        assert!((report.theta_min - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn c_theta_thirty_degrees_equals_beta() {
        let beta = 4.0 * (2.0 + SQRT3) * (24.0 + 12.0 * SQRT3 + PI) / PI;
        assert!((c_theta(PI / 6.0).unwrap() - beta).abs() < 1e-9);
        assert!((beta - 227.7354729090).abs() < 1e-6);
    }

    #[test]
    fn c_theta_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 1..=100 {
            let theta = PI / 3.0 * k as f64 / 100.0;
            let value = c_theta(theta).unwrap();
            assert!(value < prev);
            prev = value;
        }
        assert!(c_theta(0.0).is_err());
        assert!(c_theta(PI / 2.0).is_err());
    }

    #[test]
    fn thirty_sixty_ninety_respects_lemma_bound() {
        let complex = OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(SQRT3, 0.0),
                Point2::new(0.0, 1.0),
            ],
            vec![],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let report = regularity_constant(&complex).unwrap();
        assert!((report.theta_min - PI / 6.0).abs() < 1e-12);
        assert!(report.vartheta <= report.c_theta_bound);
    }

    #[test]
    fn strip_is_equilateral_regular() {
        let (complex, _, _) = strip_complex(3, 1.5).unwrap();
        let report = regularity_constant(&complex).unwrap();
        assert!((report.theta_min - PI / 3.0).abs() < 1e-12);
        for v in &report.per_triangle_vartheta {
            assert!((v - report.vartheta).abs() < 1e-9);
        }
    }

    #[test]
    fn equilateral_ratio_is_extremal() {
        let (ratio, bound, ok) = diameter_inradius_ratio_bound_check(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, SQRT3 / 2.0),
        )
        .unwrap();
        assert!(ok);
        assert!((ratio - 2.0 * SQRT3).abs() < 1e-12);
        assert!((bound - 2.0 * SQRT3).abs() < 1e-12);
    }

    #[test]
    fn sliver_ratio_still_bounded() {
        // A one-degree sliver: bound grows, check still passes.
        let theta: f64 = PI / 180.0;
        let (_, _, ok) = diameter_inradius_ratio_bound_check(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(theta.cos(), theta.sin()),
        )
        .unwrap();
        assert!(ok);
    }

    #[test]
    fn sdt_bounds_p_equals_d() {
        let b = sdt_bounds(2, 2, 10.0, 0.5, 3.0, 2.0, BoundVariant::Classic).unwrap();
        // f^0 = 1: M(P) <= M(T) + 4 vartheta Delta M(bT).
        assert!((b.mass_p - (3.0 + 0.5 * 40.0 * 2.0)).abs() < 1e-12);
        assert!(sdt_bounds(1, 2, 10.0, 0.5, 3.0, 2.0, BoundVariant::Classic).is_err());
    }

    #[test]
    fn multi_with_unit_counts_reproduces_classic() {
        let classic = sdt_bounds(2, 1, 52.76, 0.1, 1.0, 2.0, BoundVariant::Classic).unwrap();
        let multi = sdt_bounds(
            2,
            1,
            52.76,
            0.1,
            1.0,
            2.0,
            BoundVariant::Multi { m: 1, n: 0, eps: 2.0 },
        )
        .unwrap();
        assert!((classic.mass_p - multi.mass_p).abs() < 1e-9);
        assert!((classic.flat_distance - multi.flat_distance).abs() < 1e-9);
    }

    #[test]
    fn plug_in_evaluation_pinned() {
        let vartheta = 52.764826840741364;
        let b = sdt_bounds(2, 1, vartheta, 0.1, 1.0, 2.0, BoundVariant::Classic).unwrap();
        let f = 4.0 * vartheta;
        assert!((b.mass_p - (f + 0.1 * f * f * 2.0)).abs() < 1e-9);
        assert!((b.mass_boundary_p - f * f * 2.0).abs() < 1e-9);
        assert!((b.mass_q - 0.1 * f * (1.0 + f) * 2.0).abs() < 1e-9);
        assert!((b.mass_r - 0.1 * f).abs() < 1e-9);
        assert!((b.flat_distance - 0.1 * f * (1.0 + (1.0 + f) * 2.0)).abs() < 1e-9);
    }

    #[test]
    fn tightened_variant_dominated_by_classic() {
        let classic = sdt_bounds(3, 1, 8.0, 0.2, 1.0, 1.0, BoundVariant::Classic).unwrap();
        let tight = sdt_bounds(
            3,
            1,
            8.0,
            0.2,
            1.0,
            1.0,
            BoundVariant::SingleTight { eps: 1e-9 },
        )
        .unwrap();
        assert!(tight.mass_p <= classic.mass_p);
        assert!(tight.mass_boundary_p <= classic.mass_boundary_p);
        assert!(tight.mass_q <= classic.mass_q);
        assert!(tight.mass_r <= classic.mass_r);
        assert!(tight.flat_distance <= classic.flat_distance);
    }

    #[test]
    fn grid_rotation_single_edge() {
        let rot = grid_rotation(&[Point2::new(1.0, 0.0)]).unwrap();
        assert_eq!(rot.direction_count, 2);
        assert!((rot.guaranteed_min_angle - PI / 4.0).abs() < 1e-12);
        assert!((rot.phi - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rotation_axis_aligned_square() {
        // Directions 0 and pi/2 collapse to the same avoided set.
        let rot = grid_rotation(&[
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, -2.0),
        ])
        .unwrap();
        assert_eq!(rot.direction_count, 2);
        for grid_dir in [rot.phi, rot.phi + PI / 2.0] {
            for edge_dir in [0.0, PI / 2.0] {
                assert!(line_angle(grid_dir, edge_dir) >= PI / 4.0 - 1e-9);
            }
        }
    }

    #[test]
    fn grid_rotation_eight_spokes() {
        let edges: Vec<Point2> = (0..8)
            .map(|k| {
                let t = k as f64 * PI / 8.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        let rot = grid_rotation(&edges).unwrap();
        assert_eq!(rot.direction_count, 8);
        // Exhaustive check against all input directions at both grid lines.
        for edge in &edges {
            let e = edge.y.atan2(edge.x);
            for grid_dir in [rot.phi, rot.phi + PI / 2.0] {
                assert!(line_angle(grid_dir, e) >= rot.guaranteed_min_angle - 1e-9);
            }
        }
    }
}
