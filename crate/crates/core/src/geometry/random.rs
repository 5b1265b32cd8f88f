use rand::Rng;

use super::{ConvexPolygon, Point2};
use crate::Result;

/// Random convex polygon: hull of `n` points on a jittered ellipse centered at the origin.
///
/// Vertices are snapped to multiples of `2^-20`, which keeps products with
/// small integers exact (useful when checking scale covariance to the ulp).
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> Result<ConvexPolygon<f64>> {
    let n = n.max(3);
    loop {
        let aspect = rng.gen_range(0.45..1.0);
        let tilt = rng.gen_range(0.0..std::f64::consts::PI);
        let (s, c) = tilt.sin_cos();
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Point2<f64>> = angles
            .iter()
            .map(|&t| {
                let r = radius * rng.gen_range(0.8..1.0);
                let (x, y) = (r * t.cos(), r * aspect * t.sin());
                Point2::new(snap(c * x - s * y), snap(s * x + c * y))
            })
            .collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.area() > 0.2 * radius * radius {
                return Ok(p);
            }
        }
    }
}

/// Convex polygon strictly inside `outer`: hull of random convex combinations of its vertices.
pub fn random_inner_polygon<R: Rng + ?Sized>(rng: &mut R, outer: &ConvexPolygon<f64>, n: usize) -> Result<ConvexPolygon<f64>> {
    let v = outer.vertices();
    let c = outer.centroid();
    loop {
        let pts: Vec<Point2<f64>> = (0..n.max(3))
            .map(|_| {
                let i = rng.gen_range(0..v.len());
                let j = (i + 1) % v.len();
                let t = rng.gen_range(0.0..1.0);
                let on_edge = v[i] * (1.0 - t) + v[j] * t;
                let shrink = rng.gen_range(0.55..0.98);
                let p = c + (on_edge - c) * shrink;
                Point2::new(snap(p.x), snap(p.y))
            })
            .collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.vertices().iter().all(|&q| outer.contains(q, 0.0)) && p.area() > 0.15 * outer.area() {
                return Ok(p);
            }
        }
    }
}

fn snap(x: f64) -> f64 {
    const Q: f64 = (1u64 << 20) as f64;
    (x * Q).round() / Q
}
