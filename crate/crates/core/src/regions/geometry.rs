//! Planar geometry on traced boundaries: convexity, membership, Hausdorff distance.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::RegionPolygon;

#[inline]
fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

#[inline]
fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Twice the signed area (shoelace); positive for counter-clockwise order.
pub fn signed_area2(points: &[Complex64]) -> f64 {
    let n = points.len();
    (0..n).map(|i| cross(points[i], points[(i + 1) % n])).sum()
}

pub fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (dot(p - a, ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn distance_to_boundary(points: &[Complex64], w: Complex64) -> f64 {
    let n = points.len();
    match n {
        0 => f64::INFINITY,
        1 => (w - points[0]).norm(),
        _ => (0..n).map(|i| point_segment_distance(w, points[i], points[(i + 1) % n])).fold(f64::INFINITY, f64::min),
    }
}

fn inside_convex(points: &[Complex64], w: Complex64) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    let orient = signed_area2(points).signum();
    (0..n).all(|i| {
        let a = points[i];
        let b = points[(i + 1) % n];
        orient * cross(b - a, w - a) >= 0.0
    })
}

/// True iff consecutive edge cross products never change sign and the boundary
/// turns exactly once around.
///
/// Cross products with magnitude below `tol·(mean edge length)²` count as zero.
pub fn polygon_convexity(poly: &RegionPolygon, tol: f64) -> bool {
    let pts = &poly.points;
    let n = pts.len();
    if n < 3 {
        return false;
    }
    let edges: Vec<Complex64> = (0..n).map(|i| pts[(i + 1) % n] - pts[i]).collect();
    let mean = edges.iter().map(|e| e.norm()).sum::<f64>() / n as f64;
    let threshold = tol * mean * mean;

    let (mut pos, mut neg) = (false, false);
    let mut turning = 0.0;
    for i in 0..n {
        let (e1, e2) = (edges[i], edges[(i + 1) % n]);
        let c = cross(e1, e2);
        if c > threshold {
            pos = true;
        } else if c < -threshold {
            neg = true;
        }
        turning += c.atan2(dot(e1, e2));
    }
    !(pos && neg) && (turning.abs() - 2.0 * PI).abs() < 1e-6
}

/// True iff `w` is inside the convex polygon or within distance `tol` of it.
pub fn polygon_contains(poly: &RegionPolygon, w: Complex64, tol: f64) -> bool {
    inside_convex(&poly.points, w) || distance_to_boundary(&poly.points, w) <= tol
}

/// Distance to the boundary, negative inside the convex polygon.
pub fn signed_distance(poly: &RegionPolygon, w: Complex64) -> f64 {
    let d = distance_to_boundary(&poly.points, w);
    if inside_convex(&poly.points, w) {
        -d
    } else {
        d
    }
}

fn directed_hausdorff(from: &[Complex64], to: &[Complex64]) -> f64 {
    from.iter().map(|&p| distance_to_boundary(to, p)).fold(0.0, f64::max)
}

/// Symmetrised Hausdorff distance between the vertices of each polygon and the
/// closed edge chain of the other.
pub fn hausdorff(a: &RegionPolygon, b: &RegionPolygon) -> f64 {
    directed_hausdorff(&a.points, &b.points).max(directed_hausdorff(&b.points, &a.points))
}
