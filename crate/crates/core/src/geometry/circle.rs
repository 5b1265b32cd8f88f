use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Point2;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Circle<T> {
    pub center: Point2<T>,
    pub radius: T,
}

impl<T: Scalar> Circle<T> {
    fn contains(&self, p: Point2<T>) -> bool {
        // relative slack absorbs rounding in the circumcircle construction
        p.dist(self.center) <= self.radius * (T::one() + T::lit(1e-12)) + T::epsilon()
    }

    fn diametral(a: Point2<T>, b: Point2<T>) -> Self {
        Self {
            center: (a + b) * T::half(),
            radius: a.dist(b) * T::half(),
        }
    }

    /// Circle through three points; falls back to the widest diametral circle
    /// when they are (numerically) collinear.
    fn through(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Self {
        let (ab, ac) = (b - a, c - a);
        let d = T::two() * ab.cross(ac);
        let scale = ab.norm() * ac.norm();
        if d.abs() <= T::lit(1e-14) * scale {
            let pairs = [(a, b), (a, c), (b, c)];
            let (p, q) = pairs
                .into_iter()
                .max_by(|x, y| x.0.dist(x.1).partial_cmp(&y.0.dist(y.1)).unwrap())
                .unwrap();
            return Self::diametral(p, q);
        }
        let (b2, c2) = (ab.norm_sq(), ac.norm_sq());
        let off = Point2::new(ac.y * b2 - ab.y * c2, ab.x * c2 - ac.x * b2) * (T::one() / d);
        let center = a + off;
        Self {
            center,
            radius: off.norm().max(center.dist(b)).max(center.dist(c)),
        }
    }
}

/// Smallest circle containing all points (Welzl, iterative form).
///
/// The points are visited in a fixed pseudo-random order, so the result is
/// deterministic and the expected running time linear.
pub fn min_enclosing_circle<T: Scalar>(points: &[Point2<T>]) -> Circle<T> {
    assert!(!points.is_empty(), "enclosing circle of an empty set");
    let mut pts = points.to_vec();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut c = Circle {
        center: pts[0],
        radius: T::zero(),
    };
    for i in 1..pts.len() {
        if c.contains(pts[i]) {
            continue;
        }
        c = Circle {
            center: pts[i],
            radius: T::zero(),
        };
        for j in 0..i {
            if c.contains(pts[j]) {
                continue;
            }
            c = Circle::diametral(pts[i], pts[j]);
            for k in 0..j {
                if !c.contains(pts[k]) {
                    c = Circle::through(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{regular_polygon, ConvexPolygon};

    #[test]
    fn unit_square() {
        let sq = ConvexPolygon::<f64>::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let c = sq.min_enclosing_circle();
        assert!((c.center.x - 0.5).abs() < 1e-14);
        assert!((c.center.y - 0.5).abs() < 1e-14);
        assert!((c.radius - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn equilateral_triangle_needs_circumradius() {
        let tri = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 3f64.sqrt() / 2.0),
        ])
        .unwrap();
        let c = tri.min_enclosing_circle();
        assert!((c.radius - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(c.radius > tri.diameter() / 2.0);
    }

    #[test]
    fn hexagon_hits_half_diameter() {
        let hex = regular_polygon(6, 0.75f64).unwrap();
        let c = hex.min_enclosing_circle();
        assert!((c.radius - hex.diameter() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let tri = ConvexPolygon::new(vec![
            Point2::<f64>::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(2.0, 0.5),
        ])
        .unwrap();
        let c = tri.min_enclosing_circle();
        assert!((c.radius - 2.0).abs() < 1e-14);
    }

    #[test]
    fn collinear_cloud() {
        let pts: Vec<_> = (0..5).map(|k| Point2::new(k as f64, 0.0)).collect();
        let c = min_enclosing_circle(&pts);
        assert!((c.radius - 2.0).abs() < 1e-14);
    }
}
