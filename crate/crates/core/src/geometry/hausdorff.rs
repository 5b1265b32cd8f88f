use super::{ConvexPolygon, Point2};
use crate::{Error, Result, Scalar};

/// Default number of support-function sampling angles.
pub const DEFAULT_ANGLES: usize = 720;

/// Symmetric Hausdorff distance between two closed convex polygons.
///
/// Combines two estimates: the support-function gap sampled at `angles`
/// uniformly spaced directions, which can only underestimate, and the
/// largest vertex-to-polygon distance in both directions. For convex sets the
/// directed distance is attained at a vertex, so the second term is exact and
/// the maximum of the two equals the true distance up to rounding.
pub fn hausdorff_distance<T: Scalar>(a: &ConvexPolygon<T>, b: &ConvexPolygon<T>, angles: usize) -> T {
    let vertex_gap = directed(a, b).max(directed(b, a));
    support_gap(a, b, angles).max(vertex_gap)
}

/// `max_k |h_a(θ_k) − h_b(θ_k)|` over `angles` equally spaced directions.
pub fn support_gap<T: Scalar>(a: &ConvexPolygon<T>, b: &ConvexPolygon<T>, angles: usize) -> T {
    let step = T::TAU() / T::from_count(angles.max(1));
    (0..angles)
        .map(|k| {
            let d = Point2::polar(step * T::from_count(k));
            (a.support(d) - b.support(d)).abs()
        })
        .fold(T::zero(), T::max)
}

/// Exact Hausdorff distance between a convex polygon and the disk of radius
/// `r` centered at `c`, which must lie strictly inside the polygon:
/// `max(max_v |v − c| − r, r − min_edge dist(c, edge line))`.
pub fn disk_hausdorff_distance<T: Scalar>(poly: &ConvexPolygon<T>, c: Point2<T>, r: T) -> Result<T> {
    let shifted = poly.translate(-c);
    let inr = shifted.origin_inradius();
    if !(inr > T::zero()) {
        return Err(Error::InvalidParameter("disk center must lie inside the polygon".into()));
    }
    let outr = shifted.vertices().iter().map(|v| v.norm()).fold(T::zero(), T::max);
    Ok((outr - r).max(r - inr))
}

fn directed<T: Scalar>(from: &ConvexPolygon<T>, to: &ConvexPolygon<T>) -> T {
    from.vertices()
        .iter()
        .map(|&p| to.distance_to(p))
        .fold(T::zero(), T::max)
}
