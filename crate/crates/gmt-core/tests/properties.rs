//! Property tests for the spec-level invariants: chain algebra, flat norm
//! bounds, regularity inequalities, grid rotation margins, and signature
//! bounds.

use std::f64::consts::PI;

use proptest::prelude::*;

use gmt_core::area_invariant::{disk_polygon_area, signature};
use gmt_core::flat_norm::{decomposition_cost, lambda_sweep, solve_flat_norm, FlatNormProblem};
use gmt_core::geometry::{boundary, mass, measure_complex, Chain, OrientedComplex2, Point2};
use gmt_core::mesh_quality::{
    grid_rotation, line_angle, regularity_constant, sdt_bounds, BoundVariant,
};
use gmt_core::polygon::{regular_ngon, SimplePolygon};
use gmt_core::synthetic::jittered_triangulation;

fn test_complex() -> OrientedComplex2 {
    jittered_triangulation(3, 3, 0.25, 424242).unwrap()
}

fn chain_from_terms(complex: &OrientedComplex2, terms: &[(usize, i64)]) -> Chain {
    let n = complex.edges().len();
    Chain::from_terms(1, terms.iter().map(|&(e, c)| (e % n, c))).unwrap()
}

fn term_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -2i64..=2), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_is_absolutely_homogeneous(terms in term_strategy(), k in -5i64..=5) {
        let complex = test_complex();
        let measures = measure_complex(&complex).unwrap();
        let chain = chain_from_terms(&complex, &terms);
        let scaled = chain.checked_scale(k).unwrap();
        let lhs = mass(&scaled, &measures).unwrap();
        let rhs = k.unsigned_abs() as f64 * mass(&chain, &measures).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn boundary_is_linear(
        terms_t in term_strategy(),
        terms_u in term_strategy(),
        a in -3i64..=3,
        b in -3i64..=3,
    ) {
        let complex = test_complex();
        let t = chain_from_terms(&complex, &terms_t);
        let u = chain_from_terms(&complex, &terms_u);
        let combined = t
            .checked_scale(a)
            .unwrap()
            .checked_add(&u.checked_scale(b).unwrap())
            .unwrap();
        let lhs = boundary(&combined, &complex).unwrap();
        let rhs = boundary(&t, &complex)
            .unwrap()
            .checked_scale(a)
            .unwrap()
            .checked_add(&boundary(&u, &complex).unwrap().checked_scale(b).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_of_boundary_vanishes(terms in prop::collection::vec((0usize..18, -3i64..=3), 0..8)) {
        let complex = test_complex();
        let nt = complex.triangles().len();
        let two_chain = Chain::from_terms(2, terms.iter().map(|&(t, c)| (t % nt, c))).unwrap();
        let once = boundary(&two_chain, &complex).unwrap();
        prop_assert!(boundary(&once, &complex).unwrap().is_zero());
    }

    #[test]
    fn triangle_area_inradius_identity(
        ax in -1.0f64..1.0, ay in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0,
        cx in -1.0f64..1.0, cy in -1.0f64..1.0,
    ) {
        let result = OrientedComplex2::new(
            vec![Point2::new(ax, ay), Point2::new(bx, by), Point2::new(cx, cy)],
            vec![],
            vec![[0, 1, 2]],
        );
        // Degenerate triples are rejected at construction; skip those.
        prop_assume!(result.is_ok());
        let m = measure_complex(&result.unwrap()).unwrap();
        let area = m.triangle_areas[0];
        let reassembled = m.triangle_inradii[0] * m.triangle_perimeters[0] / 2.0;
        prop_assert!((area - reassembled).abs() <= 1e-12 * area.max(1e-300));
    }
}

proptest! {
    // LP solves per case; keep the case count moderate.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flat_norm_triangle_inequality(
        terms_t in term_strategy(),
        terms_u in term_strategy(),
    ) {
        let complex = test_complex();
        let measures = measure_complex(&complex).unwrap();
        let t = chain_from_terms(&complex, &terms_t);
        let u = chain_from_terms(&complex, &terms_u);
        let sum = t.checked_add(&u).unwrap();
        let solve = |c: &Chain| {
            let problem = FlatNormProblem::new(&complex, &measures, c, 1.0).unwrap();
            solve_flat_norm(&problem).unwrap().value
        };
        prop_assert!(solve(&sum) <= solve(&t) + solve(&u) + 1e-9);
    }

    #[test]
    fn flat_norm_bounded_by_any_feasible_point(
        terms in term_strategy(),
        fill in prop::collection::vec((0usize..18, -2i64..=2), 0..6),
        lambda in 0.0f64..4.0,
    ) {
        let complex = test_complex();
        let measures = measure_complex(&complex).unwrap();
        let input = chain_from_terms(&complex, &terms);
        let nt = complex.triangles().len();
        let s = Chain::from_terms(2, fill.iter().map(|&(t, c)| (t % nt, c))).unwrap();

        let problem = FlatNormProblem::new(&complex, &measures, &input, lambda).unwrap();
        let value = solve_flat_norm(&problem).unwrap().value;
        // X = T, S = 0 is feasible, as is the supplied fill.
        prop_assert!(value <= mass(&input, &measures).unwrap() + 1e-9);
        let supplied = decomposition_cost(&complex, &measures, &input, &s, lambda).unwrap();
        prop_assert!(value <= supplied + 1e-9);
    }

    #[test]
    fn sweep_values_nondecreasing(terms in term_strategy()) {
        let complex = test_complex();
        let measures = measure_complex(&complex).unwrap();
        let input = chain_from_terms(&complex, &terms);
        let lambdas = [0.0, 0.25, 1.0, 3.0, 10.0, 1000.0];
        let sweep = lambda_sweep(&complex, &measures, &input, &lambdas).unwrap();
        for pair in sweep.windows(2) {
            prop_assert!(pair[0].1 <= pair[1].1 + 1e-9);
        }
        // Large lambda keeps the chain: X = T, S = 0.
        let last = &sweep.last().unwrap().2;
        prop_assert!(last.s_chain.is_zero());
        prop_assert!((sweep.last().unwrap().1 - mass(&input, &measures).unwrap()).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn regularity_bounded_by_angle_constant(
        bx in 0.2f64..2.0, by in -0.5f64..0.5, cx in -1.0f64..1.0, cy in 0.2f64..2.0,
    ) {
        let result = OrientedComplex2::new(
            vec![Point2::new(0.0, 0.0), Point2::new(bx, by), Point2::new(cx, cy)],
            vec![],
            vec![[0, 1, 2]],
        );
        prop_assume!(result.is_ok());
        let report = regularity_constant(&result.unwrap()).unwrap();
        prop_assert!(report.vartheta <= report.c_theta_bound * (1.0 + 1e-6));
    }

    #[test]
    fn grid_rotation_clears_every_direction(angles in prop::collection::vec(0.0f64..PI, 1..24)) {
        let edges: Vec<Point2> = angles.iter().map(|&t| Point2::new(t.cos(), t.sin())).collect();
        let rot = grid_rotation(&edges).unwrap();
        for &t in &angles {
            for grid_dir in [rot.phi, rot.phi + PI / 2.0] {
                prop_assert!(line_angle(grid_dir, t) >= rot.guaranteed_min_angle - 1e-9);
            }
        }
    }

    #[test]
    fn deformation_bounds_monotone(
        vartheta in 1.0f64..100.0,
        delta in 0.0f64..5.0,
        mass_t in 0.0f64..10.0,
        mass_bt in 0.0f64..10.0,
        bump in 0.01f64..2.0,
        which in 0usize..4,
    ) {
        let base = sdt_bounds(2, 1, vartheta, delta, mass_t, mass_bt, BoundVariant::Classic).unwrap();
        let mut args = [vartheta, delta, mass_t, mass_bt];
        args[which] += bump;
        let bumped = sdt_bounds(2, 1, args[0], args[1], args[2], args[3], BoundVariant::Classic).unwrap();
        prop_assert!(bumped.mass_p >= base.mass_p - 1e-12);
        prop_assert!(bumped.mass_boundary_p >= base.mass_boundary_p - 1e-12);
        prop_assert!(bumped.mass_q >= base.mass_q - 1e-12);
        prop_assert!(bumped.mass_r >= base.mass_r - 1e-12);
        prop_assert!(bumped.flat_distance >= base.flat_distance - 1e-12);
    }

    #[test]
    fn tight_variant_never_exceeds_classic(
        vartheta in 1.0f64..100.0,
        delta in 0.0f64..5.0,
        mass_t in 0.0f64..10.0,
        mass_bt in 0.0f64..10.0,
    ) {
        let classic = sdt_bounds(3, 1, vartheta, delta, mass_t, mass_bt, BoundVariant::Classic).unwrap();
        let tight = sdt_bounds(
            3, 1, vartheta, delta, mass_t, mass_bt,
            BoundVariant::Multi { m: 1, n: 0, eps: 1e-12 },
        ).unwrap();
        prop_assert!(tight.mass_p <= classic.mass_p + 1e-9);
        prop_assert!(tight.mass_boundary_p <= classic.mass_boundary_p + 1e-9);
        prop_assert!(tight.mass_q <= classic.mass_q + 1e-9);
        prop_assert!(tight.mass_r <= classic.mass_r + 1e-9);
        prop_assert!(tight.flat_distance <= classic.flat_distance + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn signature_values_within_disk_bounds(
        cx in -3.0f64..3.0,
        cy in -3.0f64..3.0,
        r in 0.05f64..2.0,
    ) {
        let poly = SimplePolygon::new(regular_ngon(24, 1.0, Point2::new(0.0, 0.0))).unwrap();
        let area = disk_polygon_area(&poly, Point2::new(cx, cy), r);
        prop_assert!(area >= 0.0);
        prop_assert!(area <= PI * r * r + 1e-12);
        // Far means empty; deep inside (with room) means the full disk.
        let dist = (cx * cx + cy * cy).sqrt();
        if dist > 1.0 + r {
            prop_assert!(area == 0.0);
        }
        if dist + r < (PI / 24.0).cos() {
            prop_assert!((area - PI * r * r).abs() <= 1e-9);
        }
    }

    #[test]
    fn signature_translation_invariant(dx in -5.0f64..5.0, dy in -5.0f64..5.0) {
        let base: Vec<Point2> = (0..24)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 24.0;
                let rho = 1.0 + 0.25 * (2.0 * t).cos();
                Point2::new(rho * t.cos(), rho * t.sin())
            })
            .collect();
        let moved: Vec<Point2> = base.iter().map(|p| Point2::new(p.x + dx, p.y + dy)).collect();
        let sig_a = signature(&SimplePolygon::new(base).unwrap(), 0.4);
        let sig_b = signature(&SimplePolygon::new(moved).unwrap(), 0.4);
        for (a, b) in sig_a.values.iter().zip(&sig_b.values) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }
}
