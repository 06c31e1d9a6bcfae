//! Oriented simplicial 2-complexes in the plane, integer chains, boundary
//! operators, and Euclidean simplex measures.
//!
//! Complexes are immutable after construction and validated up front:
//! counterclockwise triangles, distinct simplices, signed edge incidence
//! with `boundary(boundary(.)) = 0` as an exact integer identity.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// A point in the plane. Coordinates must be finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Relative area threshold below which a triangle is rejected as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

/// Twice the signed area of triangle `(a, b, c)`; positive iff counterclockwise.
pub fn signed_area2(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// An oriented simplicial 2-complex embedded in the plane.
///
/// Edges are ordered vertex pairs `(tail, head)`; triangles are vertex
/// triples normalized to counterclockwise order at construction. Each
/// triangle stores its three boundary edges with signs so that the signed
/// sum traverses the triangle counterclockwise.
#[derive(Clone, Debug)]
pub struct OrientedComplex2 {
    vertices: Vec<Point2>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    triangle_edges: Vec<[(usize, i64); 3]>,
}

impl OrientedComplex2 {
    /// Build a complex from vertices, explicit edges, and triangles.
    ///
    /// Triangles listed in clockwise order are flipped to counterclockwise.
    /// Edges required by a triangle but missing from `edges` are appended
    /// (in triangle order), so `edges` may list only the simplices that
    /// chains need stable indices for.
    pub fn new(
        vertices: Vec<Point2>,
        edges: Vec<(usize, usize)>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidComplex(format!(
                    "vertex {i} has non-finite coordinates"
                )));
            }
        }

        let nv = vertices.len();
        let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut all_edges = Vec::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(Error::InvalidComplex(format!(
                    "edge {i} references vertex out of range"
                )));
            }
            if a == b {
                return Err(Error::InvalidComplex(format!(
                    "edge {i} has identical endpoints"
                )));
            }
            let key = (a.min(b), a.max(b));
            if edge_index.insert(key, i).is_some() {
                return Err(Error::InvalidComplex(format!(
                    "duplicate edge on vertex pair {key:?}"
                )));
            }
            all_edges.push((a, b));
        }

        let mut seen_triangles: HashMap<[usize; 3], usize> = HashMap::new();
        let mut oriented = Vec::with_capacity(triangles.len());
        for (t, &tri) in triangles.iter().enumerate() {
            let [a, b, c] = tri;
            if a >= nv || b >= nv || c >= nv {
                return Err(Error::InvalidComplex(format!(
                    "triangle {t} references vertex out of range"
                )));
            }
            if a == b || b == c || a == c {
                return Err(Error::InvalidComplex(format!(
                    "triangle {t} has repeated vertices"
                )));
            }
            let mut key = tri;
            key.sort_unstable();
            if seen_triangles.insert(key, t).is_some() {
                return Err(Error::InvalidComplex(format!(
                    "duplicate triangle on vertex triple {key:?}"
                )));
            }

            let (pa, pb, pc) = (vertices[a], vertices[b], vertices[c]);
            let area2 = signed_area2(pa, pb, pc);
            let diam = pa
                .distance(&pb)
                .max(pb.distance(&pc))
                .max(pc.distance(&pa));
            if area2.abs() * 0.5 <= DEGENERACY_THRESHOLD * diam * diam {
                return Err(Error::DegenerateTriangle {
                    index: t,
                    reason: "area below degeneracy threshold".into(),
                });
            }
            // Normalize to counterclockwise.
            oriented.push(if area2 > 0.0 { [a, b, c] } else { [a, c, b] });
        }

        let mut triangle_edges = Vec::with_capacity(oriented.len());
        for &[a, b, c] in &oriented {
            let mut incidence = [(0usize, 0i64); 3];
            for (slot, (ta, tb)) in [(a, b), (b, c), (c, a)].into_iter().enumerate() {
                let key = (ta.min(tb), ta.max(tb));
                let idx = *edge_index.entry(key).or_insert_with(|| {
                    all_edges.push((ta, tb));
                    all_edges.len() - 1
                });
                let sign = if all_edges[idx] == (ta, tb) { 1 } else { -1 };
                incidence[slot] = (idx, sign);
            }
            triangle_edges.push(incidence);
        }

        let complex = OrientedComplex2 {
            vertices,
            edges: all_edges,
            triangles: oriented,
            triangle_edges,
        };
        complex.verify_boundary_of_boundary()?;
        Ok(complex)
    }

    /// Checks the matrix identity `boundary_1 . boundary_2 = 0` exactly.
    fn verify_boundary_of_boundary(&self) -> Result<()> {
        for (t, incidence) in self.triangle_edges.iter().enumerate() {
            let mut vertex_sum: BTreeMap<usize, i64> = BTreeMap::new();
            for &(edge, sign) in incidence {
                let (tail, head) = self.edges[edge];
                *vertex_sum.entry(head).or_insert(0) += sign;
                *vertex_sum.entry(tail).or_insert(0) -= sign;
            }
            if vertex_sum.values().any(|&c| c != 0) {
                return Err(Error::InvalidComplex(format!(
                    "triangle {t} incidence does not close (boundary of boundary != 0)"
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Signed boundary edges of each triangle, counterclockwise.
    pub fn triangle_edges(&self) -> &[[(usize, i64); 3]] {
        &self.triangle_edges
    }

    pub fn num_simplices(&self, dimension: u8) -> usize {
        match dimension {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            2 => self.triangles.len(),
            _ => 0,
        }
    }
}

/// A sparse integer-coefficient formal sum of simplices of one dimension.
///
/// Only nonzero coefficients are stored. All arithmetic is checked; an
/// overflow surfaces as [`Error::Overflow`] rather than wrapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dimension: u8,
    coefficients: BTreeMap<usize, i64>,
}

impl Chain {
    pub fn zero(dimension: u8) -> Self {
        Chain {
            dimension,
            coefficients: BTreeMap::new(),
        }
    }

    /// Build a chain from `(simplex index, coefficient)` pairs. Repeated
    /// indices accumulate; zero totals are dropped.
    pub fn from_terms<I>(dimension: u8, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut chain = Chain::zero(dimension);
        for (index, coefficient) in terms {
            chain.add_term(index, coefficient)?;
        }
        Ok(chain)
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> i64 {
        self.coefficients.get(&index).copied().unwrap_or(0)
    }

    /// Iterate `(simplex index, coefficient)` in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&i, &c)| (i, c))
    }

    pub fn add_term(&mut self, index: usize, coefficient: i64) -> Result<()> {
        let entry = self.coefficients.entry(index).or_insert(0);
        *entry = entry.checked_add(coefficient).ok_or(Error::Overflow)?;
        if *entry == 0 {
            self.coefficients.remove(&index);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Chain) -> Result<Chain> {
        if self.dimension != other.dimension {
            return Err(Error::InvalidChain(format!(
                "cannot add chains of dimension {} and {}",
                self.dimension, other.dimension
            )));
        }
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Chain) -> Result<Chain> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Chain> {
        let mut out = Chain::zero(self.dimension);
        if factor == 0 {
            return Ok(out);
        }
        for (i, c) in self.iter() {
            out.add_term(i, c.checked_mul(factor).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// Validate every stored index against the complex.
    pub fn validate(&self, complex: &OrientedComplex2) -> Result<()> {
        let limit = complex.num_simplices(self.dimension);
        if self.dimension > 2 {
            return Err(Error::InvalidChain(format!(
                "dimension {} not supported on a 2-complex",
                self.dimension
            )));
        }
        for (i, _) in self.iter() {
            if i >= limit {
                return Err(Error::InvalidChain(format!(
                    "index {i} out of range for {} simplices of dimension {}",
                    limit, self.dimension
                )));
            }
        }
        Ok(())
    }
}

/// Euclidean measures of every simplex in a complex.
#[derive(Clone, Debug)]
pub struct SimplexMeasures {
    pub edge_lengths: Vec<f64>,
    pub triangle_areas: Vec<f64>,
    pub triangle_diameters: Vec<f64>,
    pub triangle_perimeters: Vec<f64>,
    pub triangle_inradii: Vec<f64>,
}

/// Compute edge lengths, triangle areas, diameters (= longest side),
/// perimeters, and inradii (`2 * area / perimeter`).
pub fn measure_complex(complex: &OrientedComplex2) -> Result<SimplexMeasures> {
    let vs = complex.vertices();
    let edge_lengths: Vec<f64> = complex
        .edges()
        .iter()
        .map(|&(a, b)| vs[a].distance(&vs[b]))
        .collect();

    let mut areas = Vec::new();
    let mut diameters = Vec::new();
    let mut perimeters = Vec::new();
    let mut inradii = Vec::new();
    for (t, &[a, b, c]) in complex.triangles().iter().enumerate() {
        let (pa, pb, pc) = (vs[a], vs[b], vs[c]);
        let sides = [pa.distance(&pb), pb.distance(&pc), pc.distance(&pa)];
        let diameter = sides.iter().cloned().fold(0.0, f64::max);
        let perimeter: f64 = sides.iter().sum();
        let area = 0.5 * signed_area2(pa, pb, pc).abs();
        if area <= DEGENERACY_THRESHOLD * diameter * diameter {
            return Err(Error::DegenerateTriangle {
                index: t,
                reason: "area below degeneracy threshold".into(),
            });
        }
        areas.push(area);
        diameters.push(diameter);
        perimeters.push(perimeter);
        inradii.push(2.0 * area / perimeter);
    }

    Ok(SimplexMeasures {
        edge_lengths,
        triangle_areas: areas,
        triangle_diameters: diameters,
        triangle_perimeters: perimeters,
        triangle_inradii: inradii,
    })
}

/// Apply the signed incidence matrix to a chain.
///
/// Dimension-2 chains map to their signed edge sums, dimension-1 chains to
/// `head - tail` vertex sums, and dimension-0 chains to the zero 0-chain.
pub fn boundary(chain: &Chain, complex: &OrientedComplex2) -> Result<Chain> {
    chain.validate(complex)?;
    match chain.dimension() {
        0 => Ok(Chain::zero(0)),
        1 => {
            let mut out = Chain::zero(0);
            for (edge, coefficient) in chain.iter() {
                let (tail, head) = complex.edges()[edge];
                out.add_term(head, coefficient)?;
                out.add_term(tail, coefficient.checked_neg().ok_or(Error::Overflow)?)?;
            }
            Ok(out)
        }
        2 => {
            let mut out = Chain::zero(1);
            for (tri, coefficient) in chain.iter() {
                for &(edge, sign) in &complex.triangle_edges()[tri] {
                    out.add_term(edge, coefficient.checked_mul(sign).ok_or(Error::Overflow)?)?;
                }
            }
            Ok(out)
        }
        d => Err(Error::InvalidChain(format!(
            "boundary undefined for dimension {d}"
        ))),
    }
}

/// Mass of a chain: `sum |coefficient| * simplex volume`. Vertices carry
/// unit 0-volume.
pub fn mass(chain: &Chain, measures: &SimplexMeasures) -> Result<f64> {
    let volume = |dimension: u8, index: usize| -> Result<f64> {
        let v = match dimension {
            0 => Some(1.0),
            1 => measures.edge_lengths.get(index).copied(),
            2 => measures.triangle_areas.get(index).copied(),
            _ => None,
        };
        v.ok_or_else(|| {
            Error::InvalidChain(format!(
                "index {index} out of range for dimension {dimension} measures"
            ))
        })
    };
    let mut total = 0.0;
    for (i, c) in chain.iter() {
        total += (c.unsigned_abs() as f64) * volume(chain.dimension(), i)?;
    }
    Ok(total)
}

/// The strip complex of `2n` equilateral triangles spanning from the origin
/// to `(n * sqrt(3) * side, 0)`.
///
/// Returns the complex, the top zigzag chain from endpoint to endpoint, and
/// the matching bottom zigzag chain (a second shortest-path witness of the
/// same mass).
pub fn strip_complex(n: usize, side: f64) -> Result<(OrientedComplex2, Chain, Chain)> {
    if n == 0 {
        return Err(Error::Domain("strip requires n >= 1".into()));
    }
    if !(side > 0.0 && side.is_finite()) {
        return Err(Error::Domain("strip requires a positive finite side".into()));
    }
    let h = side * 3f64.sqrt() / 2.0;

    // Vertex layout: midline points 0..=n, then top apexes, then bottom apexes.
    let mut vertices = Vec::with_capacity(3 * n + 1);
    for k in 0..=n {
        vertices.push(Point2::new(2.0 * k as f64 * h, 0.0));
    }
    let top = |k: usize| n + 1 + k;
    let bottom = |k: usize| 2 * n + 1 + k;
    for k in 0..n {
        vertices.push(Point2::new((2 * k + 1) as f64 * h, side / 2.0));
    }
    for k in 0..n {
        vertices.push(Point2::new((2 * k + 1) as f64 * h, -side / 2.0));
    }

    // Five edges per cell, ordered so the two zigzag chains use +1 coefficients.
    let mut edges = Vec::with_capacity(5 * n);
    let mut triangles = Vec::with_capacity(2 * n);
    let mut top_chain = Chain::zero(1);
    let mut bottom_chain = Chain::zero(1);
    for k in 0..n {
        let base = edges.len();
        edges.push((k, top(k)));
        edges.push((k, bottom(k)));
        edges.push((top(k), bottom(k)));
        edges.push((top(k), k + 1));
        edges.push((bottom(k), k + 1));
        triangles.push([k, bottom(k), top(k)]);
        triangles.push([top(k), bottom(k), k + 1]);
        top_chain.add_term(base, 1)?;
        top_chain.add_term(base + 3, 1)?;
        bottom_chain.add_term(base + 1, 1)?;
        bottom_chain.add_term(base + 4, 1)?;
    }

    let complex = OrientedComplex2::new(vertices, edges, triangles)?;
    Ok((complex, top_chain, bottom_chain))
}
