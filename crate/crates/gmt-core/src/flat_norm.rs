//! The multiscale simplicial flat norm.
//!
//! `F_{K,lambda}(T) = min M(X) + lambda M(S)` over decompositions
//! `T = X + boundary(S)` with `X` and `S` chains on the complex. The search
//! is a linear program over split nonnegative coefficient pairs whose
//! constraint matrix `[I -I B -B]` is totally unimodular, so a basic
//! optimum has integer coordinates; the solver certifies this by rounding
//! and re-verifying the decomposition identity in integer arithmetic.

use crate::error::{Error, Result};
use crate::geometry::{boundary, mass, Chain, OrientedComplex2, SimplexMeasures};
use crate::lp::{self, LinearProgram};

/// A flat norm instance: an input chain of dimension 0 or 1 on a complex,
/// a nonnegative scale, and the Euclidean simplex weights.
#[derive(Clone, Debug)]
pub struct FlatNormProblem<'a> {
    complex: &'a OrientedComplex2,
    measures: &'a SimplexMeasures,
    input: &'a Chain,
    lambda: f64,
}

impl<'a> FlatNormProblem<'a> {
    pub fn new(
        complex: &'a OrientedComplex2,
        measures: &'a SimplexMeasures,
        input: &'a Chain,
        lambda: f64,
    ) -> Result<Self> {
        if input.dimension() > 1 {
            return Err(Error::InvalidChain(format!(
                "flat norm input must have dimension 0 or 1, got {}",
                input.dimension()
            )));
        }
        input.validate(complex)?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::Domain("lambda must be finite and >= 0".into()));
        }
        Ok(FlatNormProblem {
            complex,
            measures,
            input,
            lambda,
        })
    }

    pub fn complex(&self) -> &OrientedComplex2 {
        self.complex
    }

    pub fn input(&self) -> &Chain {
        self.input
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn dimensions(&self) -> (u8, usize, usize) {
        let d = self.input.dimension();
        let num_d = self.complex.num_simplices(d);
        let num_fill = self.complex.num_simplices(d + 1);
        (d, num_d, num_fill)
    }
}

/// An optimal decomposition `input = x_chain + boundary(s_chain)`.
#[derive(Clone, Debug)]
pub struct FlatNormDecomposition {
    pub x_chain: Chain,
    pub s_chain: Chain,
    /// Optimal objective `M(X) + lambda M(S)`.
    pub value: f64,
    /// True when the basic optimum rounded to integers and the rounded
    /// decomposition satisfies the identity exactly.
    pub is_integral: bool,
    pub lp_iterations: usize,
}

/// Assemble the LP for a flat norm instance.
///
/// Variable layout: `x+` per d-simplex, then `x-`, then `s+` per
/// (d+1)-simplex, then `s-`. One equality row per d-simplex:
/// `(x+ - x-) + B (s+ - s-) = t` where `B` is the signed incidence matrix.
pub fn build_lp(problem: &FlatNormProblem) -> LinearProgram {
    let (d, num_d, num_fill) = problem.dimensions();
    let measures = problem.measures;

    let d_weight = |i: usize| -> f64 {
        match d {
            0 => 1.0,
            _ => measures.edge_lengths[i],
        }
    };
    let fill_weight = |f: usize| -> f64 {
        match d {
            0 => measures.edge_lengths[f],
            _ => measures.triangle_areas[f],
        }
    };

    let num_vars = 2 * num_d + 2 * num_fill;
    let mut cost = Vec::with_capacity(num_vars);
    let mut columns = Vec::with_capacity(num_vars);

    for i in 0..num_d {
        cost.push(d_weight(i));
        columns.push(vec![(i, 1.0)]);
    }
    for i in 0..num_d {
        cost.push(d_weight(i));
        columns.push(vec![(i, -1.0)]);
    }

    // Signed incidence column of each filler simplex.
    let fill_column = |f: usize| -> Vec<(usize, f64)> {
        match d {
            0 => {
                let (tail, head) = problem.complex.edges()[f];
                if head == tail {
                    vec![]
                } else {
                    vec![(head, 1.0), (tail, -1.0)]
                }
            }
            _ => problem.complex.triangle_edges()[f]
                .iter()
                .map(|&(edge, sign)| (edge, sign as f64))
                .collect(),
        }
    };
    for f in 0..num_fill {
        cost.push(problem.lambda * fill_weight(f));
        columns.push(fill_column(f));
    }
    for f in 0..num_fill {
        cost.push(problem.lambda * fill_weight(f));
        columns.push(fill_column(f).into_iter().map(|(r, v)| (r, -v)).collect());
    }

    let mut rhs = vec![0.0; num_d];
    for (i, c) in problem.input.iter() {
        rhs[i] = c as f64;
    }

    LinearProgram {
        num_rows: num_d,
        cost,
        columns,
        rhs,
    }
}

/// Solve the flat norm LP and certify integrality.
pub fn solve_flat_norm(problem: &FlatNormProblem) -> Result<FlatNormDecomposition> {
    let (d, num_d, num_fill) = problem.dimensions();
    let lp = build_lp(problem);

    // X = T, S = 0 is feasible: put x+_i (t_i >= 0) or x-_i (t_i < 0) in
    // the basis for row i, giving a diagonal +-1 basis matrix.
    let initial_basis: Vec<usize> = (0..num_d)
        .map(|i| if lp.rhs[i] >= 0.0 { i } else { num_d + i })
        .collect();
    let solution = lp::solve(&lp, &initial_basis)?;

    // Recover signed coefficients from the split pairs.
    let x_values: Vec<f64> = (0..num_d)
        .map(|i| solution.values[i] - solution.values[num_d + i])
        .collect();
    let s_values: Vec<f64> = (0..num_fill)
        .map(|f| solution.values[2 * num_d + f] - solution.values[2 * num_d + num_fill + f])
        .collect();

    let near_integer = x_values
        .iter()
        .chain(&s_values)
        .all(|&v| (v - v.round()).abs() <= 1e-7);

    let x_chain = Chain::from_terms(
        d,
        x_values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, v.round() as i64)),
    )?;
    let s_chain = Chain::from_terms(
        d + 1,
        s_values
            .iter()
            .enumerate()
            .map(|(f, &v)| (f, v.round() as i64)),
    )?;

    // Exact re-verification of T = X + boundary(S) in integer arithmetic.
    let is_integral = near_integer && {
        let reassembled = x_chain.checked_add(&boundary(&s_chain, problem.complex)?)?;
        reassembled == *problem.input
    };

    Ok(FlatNormDecomposition {
        x_chain,
        s_chain,
        value: solution.objective,
        is_integral,
        lp_iterations: solution.iterations,
    })
}

/// Solve the same instance at each scale of an ascending lambda list.
pub fn lambda_sweep(
    complex: &OrientedComplex2,
    measures: &SimplexMeasures,
    input: &Chain,
    lambdas: &[f64],
) -> Result<Vec<(f64, f64, FlatNormDecomposition)>> {
    if lambdas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("lambda list must be ascending".into()));
    }
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let problem = FlatNormProblem::new(complex, measures, input, lambda)?;
        let decomposition = solve_flat_norm(&problem)?;
        out.push((lambda, decomposition.value, decomposition));
    }
    Ok(out)
}

/// Objective of an explicit candidate decomposition, used by tests as a
/// feasible upper bound and by the brute-force oracle.
pub fn decomposition_cost(
    complex: &OrientedComplex2,
    measures: &SimplexMeasures,
    input: &Chain,
    s_chain: &Chain,
    lambda: f64,
) -> Result<f64> {
    let x_chain = input.checked_sub(&boundary(s_chain, complex)?)?;
    Ok(mass(&x_chain, measures)? + lambda * mass(s_chain, measures)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{measure_complex, strip_complex, OrientedComplex2, Point2};

    fn equilateral(side: f64) -> OrientedComplex2 {
        OrientedComplex2::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(side, 0.0),
                Point2::new(side / 2.0, side * 3f64.sqrt() / 2.0),
            ],
            vec![(0, 1), (1, 2), (2, 0)],
            vec![[0, 1, 2]],
        )
        .unwrap()
    }

    /// Exhaustive minimum over integer fills with coefficients in
    /// `-bound..=bound`; X is determined by the decomposition identity.
    fn brute_force(
        complex: &OrientedComplex2,
        measures: &SimplexMeasures,
        input: &Chain,
        lambda: f64,
        bound: i64,
    ) -> f64 {
        let nf = complex.num_simplices(input.dimension() + 1);
        let mut best = f64::INFINITY;
        let width = (2 * bound + 1) as usize;
        let total = width.pow(nf as u32);
        for code in 0..total {
            let mut c = code;
            let mut terms = Vec::with_capacity(nf);
            for f in 0..nf {
                let k = (c % width) as i64 - bound;
                c /= width;
                if k != 0 {
                    terms.push((f, k));
                }
            }
            let s = Chain::from_terms(input.dimension() + 1, terms).unwrap();
            let cost = decomposition_cost(complex, measures, input, &s, lambda).unwrap();
            best = best.min(cost);
        }
        best
    }

    #[test]
    fn lp_size_single_triangle() {
        let complex = equilateral(1.0);
        let measures = measure_complex(&complex).unwrap();
        let input = Chain::from_terms(1, [(0, 1), (1, 1), (2, 1)]).unwrap();
        let problem = FlatNormProblem::new(&complex, &measures, &input, 1.0).unwrap();
        let lp = build_lp(&problem);
        assert_eq!(lp.cost.len(), 8);
        assert_eq!(lp.num_rows, 3);
    }

    #[test]
    fn lp_size_strip() {
        let (complex, top, _) = strip_complex(2, 2.0).unwrap();
        let measures = measure_complex(&complex).unwrap();
        let problem = FlatNormProblem::new(&complex, &measures, &top, 1.0).unwrap();
        let lp = build_lp(&problem);
        // 10 edges and 4 triangles: 2*10 + 2*4 split variables.
        assert_eq!(lp.cost.len(), 28);
        assert_eq!(lp.num_rows, 10);
    }

    #[test]
    fn zero_chain_solves_to_zero() {
        let complex = equilateral(1.0);
        let measures = measure_complex(&complex).unwrap();
        let input = Chain::zero(1);
        let problem = FlatNormProblem::new(&complex, &measures, &input, 1.0).unwrap();
        let d = solve_flat_norm(&problem).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.x_chain.is_zero() && d.s_chain.is_zero());
        assert!(d.is_integral);
    }

    #[test]
    fn triangle_boundary_scale_threshold() {
        let complex = equilateral(1.0);
        let measures = measure_complex(&complex).unwrap();
        let input = Chain::from_terms(1, [(0, 1), (1, 1), (2, 1)]).unwrap();

        // Oracle values from exhaustive search over |k| <= 3 fills.
        for (lambda, expected) in [
            (1.0, 3f64.sqrt() / 4.0),
            (20.0, 3.0),
            (4.0 * 3f64.sqrt(), 3.0),
        ] {
            let oracle = brute_force(&complex, &measures, &input, lambda, 3);
            assert!(
                (oracle - expected).abs() <= 1e-9,
                "oracle {oracle} vs expected {expected} at lambda {lambda}"
            );
            let problem = FlatNormProblem::new(&complex, &measures, &input, lambda).unwrap();
            let d = solve_flat_norm(&problem).unwrap();
            assert!(
                (d.value - expected).abs() <= 1e-9,
                "lp {0} vs expected {expected} at lambda {lambda}",
                d.value
            );
            assert!(d.is_integral);
        }

        // At lambda = 1 the fill is the triangle itself and X vanishes.
        let problem = FlatNormProblem::new(&complex, &measures, &input, 1.0).unwrap();
        let d = solve_flat_norm(&problem).unwrap();
        assert!(d.x_chain.is_zero());
        assert_eq!(d.s_chain.coefficient(0), 1);
    }

    #[test]
    fn sweep_matches_brute_force_and_is_monotone() {
        let complex = equilateral(1.0);
        let measures = measure_complex(&complex).unwrap();
        let input = Chain::from_terms(1, [(0, 1), (1, 1), (2, 1)]).unwrap();
        let lambdas = [1.0, 4.0 * 3f64.sqrt(), 20.0];
        let sweep = lambda_sweep(&complex, &measures, &input, &lambdas).unwrap();
        let expected = [3f64.sqrt() / 4.0, 3.0, 3.0];
        for ((_, value, _), want) in sweep.iter().zip(expected) {
            assert!((value - want).abs() <= 1e-9);
        }
        for w in sweep.windows(2) {
            assert!(w[0].1 <= w[1].1 + 1e-12);
        }

        let empty = Chain::zero(1);
        for (_, value, _) in lambda_sweep(&complex, &measures, &empty, &lambdas).unwrap() {
            assert_eq!(value, 0.0);
        }
    }

    #[test]
    fn strip_value_is_top_chain_mass() {
        let (complex, top, _) = strip_complex(2, 2.0).unwrap();
        let measures = measure_complex(&complex).unwrap();
        let problem = FlatNormProblem::new(&complex, &measures, &top, 1.0).unwrap();
        let d = solve_flat_norm(&problem).unwrap();
        assert!((d.value - 8.0).abs() <= 1e-9);
        assert!(d.is_integral);
        assert!(d.s_chain.is_zero());
    }

    #[test]
    fn point_mass_flat_norm_uses_edges_as_fillers() {
        // Two vertices joined by a unit edge; T = head - tail. Filling by
        // the edge cancels T entirely: value = min(2, lambda * 1).
        let complex = OrientedComplex2::new(
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)],
            vec![(0, 1)],
            vec![],
        )
        .unwrap();
        let measures = measure_complex(&complex).unwrap();
        let input = Chain::from_terms(0, [(0, -1), (1, 1)]).unwrap();
        for (lambda, expected) in [(0.5, 0.5), (10.0, 2.0)] {
            let problem = FlatNormProblem::new(&complex, &measures, &input, lambda).unwrap();
            let d = solve_flat_norm(&problem).unwrap();
            assert!((d.value - expected).abs() <= 1e-9, "lambda {lambda}");
            assert!(d.is_integral);
        }
    }
}
