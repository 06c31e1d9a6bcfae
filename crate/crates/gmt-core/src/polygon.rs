//! Simple polygons, simplicity testing, and robust point containment.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::predicates::orient2d;

/// A simple polygon with counterclockwise vertex order, implicitly closed.
#[derive(Clone, Debug)]
pub struct SimplePolygon {
    vertices: Vec<Point2>,
}

impl SimplePolygon {
    /// Wrap a vertex list, requiring simplicity and positive signed area.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if !is_simple(&vertices) {
            return Err(Error::Domain("polygon is not simple".into()));
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(Error::Domain(
                "polygon must be counterclockwise (positive signed area)".into(),
            ));
        }
        Ok(SimplePolygon { vertices })
    }

    /// Accept either orientation, reversing clockwise input to
    /// counterclockwise. Returns the polygon and whether it was reversed.
    pub fn new_any_orientation(vertices: Vec<Point2>) -> Result<(Self, bool)> {
        if !is_simple(&vertices) {
            return Err(Error::Domain("polygon is not simple".into()));
        }
        if signed_area(&vertices) > 0.0 {
            Ok((SimplePolygon { vertices }, false))
        } else {
            let mut reversed = vertices;
            reversed.reverse();
            Ok((SimplePolygon { vertices: reversed }, true))
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Winding-number containment of a point in the open interior.
    pub fn contains(&self, p: Point2) -> bool {
        winding_number(&self.vertices, p) != 0
    }
}

/// Signed area of a closed vertex loop (shoelace).
pub fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut sum2 = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        sum2 += a.x * b.y - b.x * a.y;
    }
    sum2 / 2.0
}

/// Winding number of the closed loop around `p`, using exact orientation
/// signs for the edge-side tests. Nonzero means inside; points exactly on
/// the boundary may report either side.
pub fn winding_number(vertices: &[Point2], p: Point2) -> i32 {
    let n = vertices.len();
    let mut winding = 0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient2d(a, b, p) > 0.0 {
                winding += 1;
            }
        } else if b.y <= p.y && orient2d(a, b, p) < 0.0 {
            winding -= 1;
        }
    }
    winding
}

fn bbox_overlap(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> bool {
    a1.x.min(a2.x) <= b1.x.max(b2.x)
        && b1.x.min(b2.x) <= a1.x.max(a2.x)
        && a1.y.min(a2.y) <= b1.y.max(b2.y)
        && b1.y.min(b2.y) <= a1.y.max(a2.y)
}

/// True when `c` lies strictly inside the segment `(a, b)`, given that
/// `a`, `b`, `c` are collinear.
fn collinear_point_interior(a: Point2, b: Point2, c: Point2) -> bool {
    let within = |lo: f64, hi: f64, v: f64| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        lo < v && v < hi
    };
    if a.x != b.x {
        within(a.x, b.x, c.x)
    } else {
        within(a.y, b.y, c.y)
    }
}

/// Simplicity test for a closed vertex loop: no zero-length edges, no
/// proper crossing between non-adjacent edges, and no vertex in the
/// interior of a non-incident edge. O(n^2) pairwise segment tests with
/// exact orientation signs. Degenerate input returns `false`.
pub fn is_simple(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    for v in vertices {
        if !v.is_finite() {
            return false;
        }
    }
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if a == b {
            return false;
        }
    }

    for i in 0..n {
        let a1 = vertices[i];
        let a2 = vertices[(i + 1) % n];
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let b1 = vertices[j];
            let b2 = vertices[(j + 1) % n];
            if !bbox_overlap(a1, a2, b1, b2) {
                continue;
            }

            let o1 = orient2d(a1, a2, b1);
            let o2 = orient2d(a1, a2, b2);
            let o3 = orient2d(b1, b2, a1);
            let o4 = orient2d(b1, b2, a2);

            if adjacent {
                // Shared endpoint is fine; overlap along the common line or
                // the far endpoint touching the other edge's interior is not.
                let shared = if j == i + 1 { a2 } else { a1 };
                let (a_far, b_far) = if j == i + 1 { (a1, b2) } else { (a2, b1) };
                if orient2d(shared, a_far, b_far) == 0.0
                    && (collinear_point_interior(b_far, shared, a_far)
                        || collinear_point_interior(a_far, shared, b_far)
                        || a_far == b_far)
                {
                    return false;
                }
                continue;
            }

            // Proper crossing.
            if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
                return false;
            }
            // Endpoint of one edge in the interior of the other, or
            // collinear overlap.
            if o1 == 0.0 && collinear_point_interior(a1, a2, b1) {
                return false;
            }
            if o2 == 0.0 && collinear_point_interior(a1, a2, b2) {
                return false;
            }
            if o3 == 0.0 && collinear_point_interior(b1, b2, a1) {
                return false;
            }
            if o4 == 0.0 && collinear_point_interior(b1, b2, a2) {
                return false;
            }
            // Shared endpoints between non-adjacent edges.
            if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                return false;
            }
        }
    }
    true
}

/// A regular `n`-gon of circumradius `r` centered at `c`, counterclockwise.
pub fn regular_ngon(n: usize, r: f64, c: Point2) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Point2::new(c.x + r * t.cos(), c.y + r * t.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(side: f64) -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(side, 0.0),
            Point2::new(side, side),
            Point2::new(0.0, side),
        ]
    }

    #[test]
    fn convex_square_is_simple() {
        assert!(is_simple(&square(1.0)));
        assert!(SimplePolygon::new(square(1.0)).is_ok());
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bowtie = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(!is_simple(&bowtie));
        assert!(SimplePolygon::new(bowtie).is_err());
    }

    #[test]
    fn large_ngon_is_simple() {
        // A 256-gon with mild lobed modulation stays simple.
        let vertices: Vec<Point2> = (0..256)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 256.0;
                let rho = 1.0 + 0.05 * (4.0 * t).cos();
                Point2::new(rho * t.cos(), rho * t.sin())
            })
            .collect();
        assert!(is_simple(&vertices));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(!is_simple(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]));
        // Zero-length edge.
        assert!(!is_simple(&[
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
        ]));
        // Vertex in the interior of a non-incident edge.
        assert!(!is_simple(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]));
        // Collinear spike: adjacent edges double back.
        assert!(!is_simple(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]));
    }

    #[test]
    fn clockwise_input_reversed() {
        let mut cw = square(1.0);
        cw.reverse();
        assert!(SimplePolygon::new(cw.clone()).is_err());
        let (poly, reversed) = SimplePolygon::new_any_orientation(cw).unwrap();
        assert!(reversed);
        assert!(poly.area() > 0.0);
    }

    #[test]
    fn winding_containment() {
        let poly = SimplePolygon::new(square(2.0)).unwrap();
        assert!(poly.contains(Point2::new(1.0, 1.0)));
        assert!(!poly.contains(Point2::new(3.0, 1.0)));
        assert!(!poly.contains(Point2::new(-0.5, -0.5)));
        // Concave polygon: winding handles reflex regions.
        let concave = SimplePolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 4.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 4.0),
        ])
        .unwrap();
        assert!(concave.contains(Point2::new(3.5, 2.0)));
        assert!(!concave.contains(Point2::new(2.0, 2.5)));
    }
}
