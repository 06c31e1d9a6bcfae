//! Exact-sign 2D orientation predicate.
//!
//! `orient2d` returns a value with the exact sign of the determinant
//! `(b - a) x (c - a)`. A cheap floating-point filter handles the common
//! case; near-degenerate inputs fall back to an exact evaluation with
//! floating-point expansions (nonoverlapping multi-term sums, after
//! Shewchuk's adaptive predicates).

use crate::geometry::Point2;

const SPLITTER: f64 = 134217729.0; // 2^27 + 1
const EPSILON: f64 = f64::EPSILON / 2.0; // 2^-53
// Filter bound for the 2x2 determinant: (3 + 16 eps) eps.
const CCW_ERRBOUND: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bvirt = x - a;
    let avirt = x - bvirt;
    let bround = b - bvirt;
    let around = a - avirt;
    (x, around + bround)
}

/// Requires `|a| >= |b|`.
#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bvirt = x - a;
    (x, b - bvirt)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let abig = c - a;
    let ahi = c - abig;
    (ahi, a - ahi)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err = x - ahi * bhi - alo * bhi - ahi * blo;
    (x, alo * blo - err)
}

/// Sum of two nonoverlapping expansions (components in increasing order of
/// magnitude), with zero elimination. The result is nonoverlapping and in
/// increasing order, so its last component carries the sign of the total.
fn fast_expansion_sum_zeroelim(e: &[f64], f: &[f64], h: &mut Vec<f64>) {
    h.clear();
    let mut eindex = 0;
    let mut findex = 0;

    // True when the e-component should be consumed next (|e| <= |f|).
    let take_e = |en: f64, fn_: f64| (fn_ > en) == (fn_ > -en);

    let mut q;
    if findex >= f.len() || (eindex < e.len() && take_e(e[eindex], f[findex])) {
        q = e[eindex];
        eindex += 1;
    } else {
        q = f[findex];
        findex += 1;
    }

    let mut first = true;
    while eindex < e.len() || findex < f.len() {
        let now = if findex >= f.len() || (eindex < e.len() && take_e(e[eindex], f[findex])) {
            eindex += 1;
            e[eindex - 1]
        } else {
            findex += 1;
            f[findex - 1]
        };
        let (qnew, hh) = if first {
            first = false;
            fast_two_sum(now, q)
        } else {
            two_sum(q, now)
        };
        q = qnew;
        if hh != 0.0 {
            h.push(hh);
        }
    }
    if q != 0.0 || h.is_empty() {
        h.push(q);
    }
}

fn orient2d_exact(a: Point2, b: Point2, c: Point2) -> f64 {
    // Exact expansion of ax by - ax cy + ay cx - ay bx + bx cy - by cx.
    let terms = [
        two_product(a.x, b.y),
        two_product(-a.x, c.y),
        two_product(a.y, c.x),
        two_product(-a.y, b.x),
        two_product(b.x, c.y),
        two_product(-b.y, c.x),
    ];

    let mut acc: Vec<f64> = vec![terms[0].1, terms[0].0];
    let mut out = Vec::with_capacity(12);
    for &(hi, lo) in &terms[1..] {
        fast_expansion_sum_zeroelim(&acc, &[lo, hi], &mut out);
        std::mem::swap(&mut acc, &mut out);
    }
    *acc.last().unwrap_or(&0.0)
}

/// Twice the signed area of `(a, b, c)` with exactly correct sign:
/// positive for counterclockwise, negative for clockwise, zero for
/// collinear points.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;

    let detsum = if detleft > 0.0 {
        if detright <= 0.0 {
            return det;
        }
        detleft + detright
    } else if detleft < 0.0 {
        if detright >= 0.0 {
            return det;
        }
        -detleft - detright
    } else {
        return det;
    };

    if det.abs() >= CCW_ERRBOUND * detsum {
        det
    } else {
        orient2d_exact(a, b, c)
    }
}
