//! Planar convex geometry: polygons, diameters, enclosing circles, Reuleaux
//! polygons, Hausdorff distance and the domain descriptions the solver ingests.

mod circle;
mod domain;
mod hausdorff;
mod point;
mod polygon;
pub mod random;
mod reuleaux;

pub use circle::{min_enclosing_circle, Circle};
pub use domain::{DomainSpec, PlanarDomain};
pub use hausdorff::{disk_hausdorff_distance, hausdorff_distance, support_gap, DEFAULT_ANGLES};
pub use point::Point2;
pub use polygon::{regular_polygon, segment_distance, ConvexPolygon};
pub use reuleaux::reuleaux_polygon;

use crate::{Error, Result, Scalar};

/// Absolute tolerance for geometric equality checks at unit scale.
pub const GEOM_TOL: f64 = 1e-9;

/// Lower eigenvalue bound from Jung's theorem: `(N+1)/(2N) · π² / diam²`.
pub fn jung_bound<T: Scalar>(diam: T, dim: usize) -> Result<T> {
    if !(diam > T::zero()) || !diam.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "diameter must be positive, got {diam}"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let n = T::from_count(dim);
    Ok((n + T::one()) / (T::two() * n) * T::PI() * T::PI() / (diam * diam))
}

/// Jung radius `d · sqrt(N / (2(N+1)))`: every set of diameter `d` fits in a ball this size.
pub fn jung_radius<T: Scalar>(diam: T, dim: usize) -> T {
    let n = T::from_count(dim);
    diam * (n / (T::two() * (n + T::one()))).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn jung_values() {
        assert!((jung_bound(1.0f64, 2).unwrap() - 0.75 * PI * PI).abs() < 1e-13);
        assert!((jung_bound(1.0f64, 2).unwrap() - 7.4022).abs() < 1e-4);
        assert!((jung_bound(2.0, 2).unwrap() - 3.0 * PI * PI / 16.0).abs() < 1e-13);
        assert!((jung_bound(1.0, 1).unwrap() - PI * PI).abs() < 1e-13);
        let far = jung_bound(1.0, 1_000_000).unwrap();
        assert!((far - 0.5 * PI * PI).abs() < 1e-5);
        assert!(jung_bound(0.0, 2).is_err());
        assert!(jung_bound(-1.0, 2).is_err());
        assert!(jung_bound(1.0, 0).is_err());
    }

    #[test]
    fn jung_radius_planar() {
        assert!((jung_radius(1.0f64, 2) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }
}
