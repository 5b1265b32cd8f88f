use serde::{Deserialize, Serialize};

use super::circle::{min_enclosing_circle, Circle};
use super::Point2;
use crate::{Error, Result, Scalar};

/// Relative tolerance for merging coincident and collinear vertices.
const MERGE_RTOL: f64 = 1e-12;

/// A convex polygon with counterclockwise vertices.
///
/// Construction merges coincident and collinear consecutive vertices, so the
/// stored vertex list is strictly convex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", try_from = "Vec<[T; 2]>", into = "Vec<[T; 2]>")]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> TryFrom<Vec<[T; 2]>> for ConvexPolygon<T> {
    type Error = Error;
    fn try_from(v: Vec<[T; 2]>) -> Result<Self> {
        Self::new(v.into_iter().map(Point2::from).collect())
    }
}

impl<T: Scalar> From<ConvexPolygon<T>> for Vec<[T; 2]> {
    fn from(p: ConvexPolygon<T>) -> Self {
        p.vertices.into_iter().map(Into::into).collect()
    }
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates a counterclockwise convex vertex list.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("vertex {i} is not finite")));
        }
        let extent = vertices
            .iter()
            .fold(T::zero(), |m, p| m.max(p.x.abs()).max(p.y.abs()));
        let rtol = T::lit(MERGE_RTOL);

        let mut v = vertices;
        v.dedup_by(|b, a| b.dist(*a) <= rtol * extent);
        while v.len() > 1 && v[0].dist(v[v.len() - 1]) <= rtol * extent {
            v.pop();
        }

        // Drop collinear interior points of straight runs until nothing changes.
        loop {
            let n = v.len();
            if n < 3 {
                return Err(Error::InvalidPolygon(
                    "vertices are collinear (degenerate polygon)".into(),
                ));
            }
            let drop = (0..n).find(|&i| {
                let a = v[(i + n - 1) % n];
                let b = v[i];
                let c = v[(i + 1) % n];
                let (u, w) = (b - a, c - b);
                u.cross(w).abs() <= rtol * u.norm() * w.norm() && u.dot(w) > T::zero()
            });
            match drop {
                Some(i) => {
                    v.remove(i);
                }
                None => break,
            }
        }

        let n = v.len();
        let mut turning = T::zero();
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            let (u, w) = (b - a, c - b);
            let cr = u.cross(w);
            if cr <= T::zero() {
                return Err(Error::InvalidPolygon(format!(
                    "vertex {} breaks convexity or counterclockwise order",
                    (i + 1) % n
                )));
            }
            turning = turning + cr.atan2(u.dot(w));
        }
        let full_turn = T::TAU();
        if (turning - full_turn).abs() > T::lit(1e-6) {
            return Err(Error::InvalidPolygon(
                "boundary winds more than once (not simple)".into(),
            ));
        }
        let poly = Self { vertices: v };
        if poly.area() <= T::zero() {
            return Err(Error::InvalidPolygon("nonpositive area".into()));
        }
        Ok(poly)
    }

    /// Convex hull of an arbitrary point cloud (Andrew's monotone chain).
    pub fn hull(points: &[Point2<T>]) -> Result<Self> {
        let mut pts: Vec<Point2<T>> = points.to_vec();
        if let Some(i) = pts.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("point {i} is not finite")));
        }
        pts.sort_by(|a, b| {
            a.x.partial_cmp(&b.x)
                .unwrap()
                .then(a.y.partial_cmp(&b.y).unwrap())
        });
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("hull needs 3 distinct points".into()));
        }
        let turn = |o: Point2<T>, a: Point2<T>, b: Point2<T>| (a - o).cross(b - o);
        let mut lower: Vec<Point2<T>> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2<T>> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: T, y0: T, x1: T, y1: T) -> Result<Self> {
        Self::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn perimeter(&self) -> T {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Shoelace area.
    pub fn area(&self) -> T {
        let twice: T = self.edges().map(|(a, b)| a.cross(b)).sum();
        twice * T::half()
    }

    pub fn centroid(&self) -> Point2<T> {
        let mut cx = T::zero();
        let mut cy = T::zero();
        let mut a2 = T::zero();
        for (p, q) in self.edges() {
            let c = p.cross(q);
            cx = cx + (p.x + q.x) * c;
            cy = cy + (p.y + q.y) * c;
            a2 = a2 + c;
        }
        let k = T::one() / (T::lit(3.0) * a2);
        Point2::new(cx * k, cy * k)
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Point2<T>, Point2<T>) {
        let first = self.vertices[0];
        self.vertices
            .iter()
            .fold((first, first), |(lo, hi), p| {
                (
                    Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                    Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
                )
            })
    }

    /// Diameter and a pair of vertex indices realizing it (rotating calipers).
    pub fn diameter_pair(&self) -> (T, usize, usize) {
        let v = &self.vertices;
        let n = v.len();
        let area2 = |a: usize, b: usize, c: usize| (v[b] - v[a]).cross(v[c] - v[a]);
        let mut best = (T::zero(), 0, 0);
        let mut j = 1;
        for i in 0..n {
            let ni = (i + 1) % n;
            while area2(i, ni, (j + 1) % n) > area2(i, ni, j) {
                j = (j + 1) % n;
            }
            for (a, b) in [(i, j), (ni, j)] {
                let d = v[a].dist(v[b]);
                if d > best.0 {
                    best = (d, a, b);
                }
            }
        }
        best
    }

    pub fn diameter(&self) -> T {
        self.diameter_pair().0
    }

    /// Support function `max_{x ∈ P} ⟨x, dir⟩`.
    pub fn support(&self, dir: Point2<T>) -> T {
        self.vertices
            .iter()
            .map(|p| p.dot(dir))
            .fold(T::neg_infinity(), T::max)
    }

    /// Closed-set membership with absolute tolerance `tol`.
    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        self.edges().all(|(a, b)| {
            let e = b - a;
            e.cross(p - a) >= -tol * e.norm()
        })
    }

    /// Euclidean distance from `p` to the closed polygon (0 inside).
    pub fn distance_to(&self, p: Point2<T>) -> T {
        if self.contains(p, T::zero()) {
            return T::zero();
        }
        self.boundary_distance(p)
    }

    /// Distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point2<T>) -> T {
        self.edges()
            .map(|(a, b)| segment_distance(p, a, b))
            .fold(T::infinity(), T::min)
    }

    /// `tΩ`: every vertex multiplied by `t > 0`.
    pub fn scale(&self, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive and finite, got {t}"
            )));
        }
        Ok(Self {
            vertices: self.vertices.iter().map(|p| p.scale(t)).collect(),
        })
    }

    pub fn translate(&self, d: Point2<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + d).collect(),
        }
    }

    pub fn min_enclosing_circle(&self) -> Circle<T> {
        min_enclosing_circle(&self.vertices)
    }

    /// Smallest distance from the origin to an edge line; the radius of the
    /// largest origin-centered disk inside the polygon when the origin is interior.
    pub fn origin_inradius(&self) -> T {
        self.edges()
            .map(|(a, b)| (b - a).cross(-a) / (b - a).norm())
            .fold(T::infinity(), T::min)
    }

    /// Minkowski gauge `inf { t > 0 : p ∈ tP }` about the origin.
    ///
    /// Errors unless the origin lies strictly inside.
    pub fn gauge(&self, p: Point2<T>) -> Result<T> {
        let mut g = T::zero();
        for (a, b) in self.edges() {
            let e = b - a;
            // outward normal n = (e.y, −e.x); the edge line is ⟨n, x⟩ = ⟨n, a⟩
            let n = Point2::new(e.y, -e.x);
            let offset = n.dot(a);
            if !(offset > T::zero()) {
                return Err(Error::InvalidParameter("gauge needs the origin strictly inside".into()));
            }
            g = g.max(n.dot(p) / offset);
        }
        Ok(g)
    }
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance<T: Scalar>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    let e = b - a;
    let len2 = e.norm_sq();
    if len2 == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(e) / len2).max(T::zero()).min(T::one());
    p.dist(a + e * t)
}

/// Regular `n`-gon with circumradius `r` centered at the origin, first vertex on the +x axis.
pub fn regular_polygon<T: Scalar>(n: usize, circumradius: T) -> Result<ConvexPolygon<T>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular polygon needs n >= 3, got {n}"
        )));
    }
    if !(circumradius > T::zero()) || !circumradius.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "circumradius must be positive, got {circumradius}"
        )));
    }
    let step = T::TAU() / T::from_count(n);
    let verts = (0..n)
        .map(|k| Point2::polar(step * T::from_count(k)).scale(circumradius))
        .collect();
    ConvexPolygon::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPolygon<f64> {
        ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn gauge_and_inradius() {
        let sq = ConvexPolygon::<f64>::rectangle(-1.0, -2.0, 3.0, 2.0).unwrap();
        assert!((sq.origin_inradius() - 1.0).abs() < 1e-15);
        assert!((sq.gauge(Point2::new(3.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((sq.gauge(Point2::new(-2.0, 1.0)).unwrap() - 2.0).abs() < 1e-15);
        assert!((sq.gauge(Point2::new(1.5, 0.5)).unwrap() - 0.5).abs() < 1e-15);
        let off = sq.translate(Point2::new(5.0, 0.0));
        assert!(off.gauge(Point2::new(1.0, 1.0)).is_err());
    }

    #[test]
    fn square_measures() {
        let sq = unit_square();
        assert!((sq.diameter() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sq.perimeter(), 4.0);
        assert_eq!(sq.area(), 1.0);
        let c = sq.centroid();
        assert!((c.x - 0.5).abs() < 1e-15 && (c.y - 0.5).abs() < 1e-15);
    }

    #[test]
    fn right_triangle_area() {
        let t = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(t.area(), 0.5);
    }

    #[test]
    fn equilateral_perimeter() {
        let h = 3f64.sqrt() / 2.0;
        let t = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, h),
        ])
        .unwrap();
        assert!((t.perimeter() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let two = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)];
        assert!(ConvexPolygon::new(two).is_err());
        let line = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        ];
        assert!(ConvexPolygon::new(line).is_err());
        let cw = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
        ];
        assert!(ConvexPolygon::new(cw).is_err());
        let nan = vec![
            Point2::new(0.0, 0.0),
            Point2::new(f64::NAN, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(ConvexPolygon::new(nan).is_err());
    }

    #[test]
    fn rejects_pentagram() {
        let star: Vec<_> = (0..5)
            .map(|k| Point2::polar(std::f64::consts::TAU * (2 * k) as f64 / 5.0))
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
    }

    #[test]
    fn merges_collinear_and_duplicate_vertices() {
        let p = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.5, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.area(), 1.0);
    }

    #[test]
    fn hull_of_cloud() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.3, 0.4),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.5),
        ];
        let h = ConvexPolygon::hull(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.area(), 1.0);
    }

    #[test]
    fn regular_polygons() {
        let sq = regular_polygon(4, 0.5f64.sqrt()).unwrap();
        assert!((sq.area() - 1.0).abs() < 1e-14);
        assert!((sq.perimeter() - 4.0).abs() < 1e-14);
        let hex = regular_polygon(6, 1.0f64).unwrap();
        assert!((hex.diameter() - 2.0).abs() < 1e-14);
        let big = regular_polygon(4096, 1.0f64).unwrap();
        assert!((big.perimeter() - std::f64::consts::TAU).abs() < 1e-5);
        assert!(regular_polygon(2, 1.0f64).is_err());
        assert!(regular_polygon(5, -1.0f64).is_err());
    }

    #[test]
    fn regular_perimeter_matches_closed_form() {
        for n in 3..20 {
            let r = 1.3;
            let p = regular_polygon(n, r).unwrap();
            let closed = 2.0 * n as f64 * r * (std::f64::consts::PI / n as f64).sin();
            // oracle: direct edge summation
            let v = p.vertices();
            let direct: f64 = (0..n).map(|i| v[i].dist(v[(i + 1) % n])).sum();
            assert!((p.perimeter() - closed).abs() < 1e-12);
            assert!((direct - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling() {
        let sq = unit_square();
        assert_eq!(sq.scale(1.0).unwrap(), sq);
        let s2 = sq.scale(2.0).unwrap();
        assert!((s2.diameter() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s2.area(), 4.0);
        assert!(sq.scale(0.0).is_err());
        assert!(sq.scale(-1.0).is_err());
    }

    #[test]
    fn distances() {
        let sq = unit_square();
        assert_eq!(sq.distance_to(Point2::new(0.5, 0.5)), 0.0);
        assert!((sq.distance_to(Point2::new(2.0, 0.5)) - 1.0).abs() < 1e-15);
        assert!((sq.distance_to(Point2::new(2.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((sq.boundary_distance(Point2::new(0.5, 0.25)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        let sq = ConvexPolygon::<f32>::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((sq.diameter() - 2f32.sqrt()).abs() < 1e-6);
        assert_eq!(sq.area(), 1.0);
    }
}
