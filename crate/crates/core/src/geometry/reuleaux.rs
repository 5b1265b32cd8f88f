use super::{ConvexPolygon, Point2};
use crate::{Error, Result, Scalar};

/// Inscribed polygonal approximation of the Reuleaux `n`-gon of constant width `width`.
///
/// The underlying regular `n`-gon has its long diagonals (vertex to the two
/// farthest vertices) equal to `width`; for `n = 3` that is the side length.
/// Each arc, centered at a vertex and joining the two opposite vertices, is
/// sampled at `arc_samples` equally spaced points including both endpoints, so
/// every returned vertex lies on the true boundary and the result has exactly
/// `n * (arc_samples - 1)` vertices.
pub fn reuleaux_polygon<T: Scalar>(
    n: usize,
    width: T,
    arc_samples: usize,
) -> Result<ConvexPolygon<T>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "Reuleaux polygons need an odd number of sides >= 3, got {n}"
        )));
    }
    if !(width > T::zero()) || !width.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "width must be positive, got {width}"
        )));
    }
    if arc_samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "arc_samples must be >= 2, got {arc_samples}"
        )));
    }
    let nn = T::from_count(n);
    let pi = T::PI();
    let circumradius = width / (T::two() * (pi / (T::two() * nn)).cos());
    let step = T::TAU() / nn;
    let corner = |k: usize| Point2::polar(step * T::from_count(k % n) + T::FRAC_PI_2()).scale(circumradius);

    let half = (n - 1) / 2;
    let arc_span = pi / nn;
    let segs = arc_samples - 1;
    let mut verts = Vec::with_capacity(n * segs);
    // Boundary walk: the arc from corner k to corner k+1 is centered at the
    // corner opposite that side, k + 1 + half.
    for k in 0..n {
        let center = corner(k + 1 + half);
        let start = corner(k) - center;
        let theta0 = start.y.atan2(start.x);
        verts.push(corner(k));
        for s in 1..segs {
            let theta = theta0 + arc_span * T::from_count(s) / T::from_count(segs);
            verts.push(center + Point2::polar(theta).scale(width));
        }
    }
    ConvexPolygon::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_width_for_any_sampling() {
        for n in [3, 5, 7, 9, 11] {
            for m in [2, 3, 8, 33, 200] {
                let r = reuleaux_polygon(n, 1.0f64, m).unwrap();
                assert!((r.diameter() - 1.0).abs() < 1e-12, "n={n} m={m}");
                assert_eq!(r.len(), n * (m - 1));
            }
        }
    }

    #[test]
    fn triangle_side_equals_width() {
        let r = reuleaux_polygon(3, 2.5f64, 2).unwrap();
        let v = r.vertices();
        for i in 0..3 {
            assert!((v[i].dist(v[(i + 1) % 3]) - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn perimeter_increases_toward_barbier() {
        let mut last = 0.0;
        for m in [2, 3, 5, 9, 17, 65, 257, 1025] {
            let p = reuleaux_polygon(3, 1.0f64, m).unwrap().perimeter();
            assert!(p > last && p < PI, "m={m} p={p}");
            // oracle: chord sum of an arc of angle π/3 split in m-1 equal parts
            let chords = 3.0 * (m - 1) as f64 * 2.0 * (PI / 6.0 / (m - 1) as f64).sin();
            assert!((p - chords).abs() < 1e-12);
            last = p;
        }
        assert!(PI - last < 1e-5);
    }

    #[test]
    fn pentagon_area_exceeds_triangle() {
        let a3 = reuleaux_polygon(3, 1.0f64, 400).unwrap().area();
        let a5 = reuleaux_polygon(5, 1.0f64, 400).unwrap().area();
        // exact Reuleaux triangle area (π − √3)/2
        assert!((a3 - (PI - 3f64.sqrt()) / 2.0).abs() < 1e-5);
        assert!(a5 > a3);
        assert!(a5 < PI / 4.0);
    }

    #[test]
    fn vertices_lie_on_true_boundary() {
        // every sample is at distance `width` from the corner its arc is centered at
        let r = reuleaux_polygon(5, 1.0f64, 6).unwrap();
        let far = r
            .vertices()
            .iter()
            .map(|p| {
                r.vertices()
                    .iter()
                    .map(|q| p.dist(*q))
                    .fold(0.0, f64::max)
            })
            .collect::<Vec<_>>();
        for d in far {
            assert!((d - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(reuleaux_polygon(4, 1.0f64, 8).is_err());
        assert!(reuleaux_polygon(1, 1.0f64, 8).is_err());
        assert!(reuleaux_polygon(3, 0.0f64, 8).is_err());
        assert!(reuleaux_polygon(3, 1.0f64, 1).is_err());
    }
}
