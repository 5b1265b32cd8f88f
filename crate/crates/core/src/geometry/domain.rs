use serde::{Deserialize, Serialize};

use super::{reuleaux_polygon, Circle, ConvexPolygon, Point2};
use crate::{Error, Result, Scalar};

/// Domain description as read from JSON.
///
/// ```json
/// {"type":"ball","r":1.0,"dim":2}
/// {"type":"hyperrect","alphas":[1.0,0.5]}
/// {"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}
/// {"type":"reuleaux","n":3,"width":1.0,"arc_samples":64}
/// ```
///
/// Balls are centered at the origin and hyperrectangles are `∏(−α_i, α_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", bound = "T: Scalar")]
pub enum DomainSpec<T> {
    Ball {
        r: T,
        dim: usize,
    },
    #[serde(rename = "hyperrect")]
    HyperRect {
        alphas: Vec<T>,
    },
    Polygon {
        vertices: ConvexPolygon<T>,
    },
    Reuleaux {
        n: usize,
        width: T,
        arc_samples: usize,
    },
}

/// A planar domain in the form the rasterizer understands.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanarDomain<T> {
    Disk { center: Point2<T>, radius: T },
    Polygon(ConvexPolygon<T>),
}

impl<T: Scalar> DomainSpec<T> {
    pub fn ball(r: T, dim: usize) -> Self {
        Self::Ball { r, dim }
    }

    pub fn rect(a1: T, a2: T) -> Self {
        Self::HyperRect {
            alphas: vec![a1, a2],
        }
    }

    pub fn polygon(p: ConvexPolygon<T>) -> Self {
        Self::Polygon { vertices: p }
    }

    pub fn reuleaux(n: usize, width: T, arc_samples: usize) -> Self {
        Self::Reuleaux {
            n,
            width,
            arc_samples,
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            Self::Ball { dim, .. } => *dim,
            Self::HyperRect { alphas } => alphas.len(),
            Self::Polygon { .. } | Self::Reuleaux { .. } => 2,
        }
    }

    /// Checks the per-variant parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: T| {
            if x > T::zero() && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {x}"
                )))
            }
        };
        match self {
            Self::Ball { r, dim } => {
                positive("ball radius", *r)?;
                if *dim == 0 {
                    return Err(Error::InvalidParameter("ball dimension must be >= 1".into()));
                }
                Ok(())
            }
            Self::HyperRect { alphas } => {
                if alphas.is_empty() {
                    return Err(Error::InvalidParameter("hyperrect needs at least one half-side".into()));
                }
                alphas.iter().try_for_each(|&a| positive("half-side", a))
            }
            Self::Polygon { .. } => Ok(()),
            Self::Reuleaux {
                n,
                width,
                arc_samples,
            } => reuleaux_polygon(*n, *width, *arc_samples).map(|_| ()),
        }
    }

    /// Resolve to a planar domain; fails for balls and boxes in dimension ≠ 2.
    pub fn to_planar(&self) -> Result<PlanarDomain<T>> {
        self.validate()?;
        match self {
            Self::Ball { r, dim } => {
                if *dim != 2 {
                    return Err(Error::UnsupportedDimension(*dim));
                }
                Ok(PlanarDomain::Disk {
                    center: Point2::origin(),
                    radius: *r,
                })
            }
            Self::HyperRect { alphas } => {
                if alphas.len() != 2 {
                    return Err(Error::UnsupportedDimension(alphas.len()));
                }
                let (a, b) = (alphas[0], alphas[1]);
                Ok(PlanarDomain::Polygon(ConvexPolygon::rectangle(-a, -b, a, b)?))
            }
            Self::Polygon { vertices } => Ok(PlanarDomain::Polygon(vertices.clone())),
            Self::Reuleaux {
                n,
                width,
                arc_samples,
            } => Ok(PlanarDomain::Polygon(reuleaux_polygon(*n, *width, *arc_samples)?)),
        }
    }

    /// `tΩ`, keeping the variant.
    pub fn scale(&self, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive and finite, got {t}"
            )));
        }
        Ok(match self {
            Self::Ball { r, dim } => Self::Ball { r: *r * t, dim: *dim },
            Self::HyperRect { alphas } => Self::HyperRect {
                alphas: alphas.iter().map(|&a| a * t).collect(),
            },
            Self::Polygon { vertices } => Self::Polygon {
                vertices: vertices.scale(t)?,
            },
            Self::Reuleaux {
                n,
                width,
                arc_samples,
            } => Self::Reuleaux {
                n: *n,
                width: *width * t,
                arc_samples: *arc_samples,
            },
        })
    }

    /// Short human-readable identifier used in tables.
    pub fn label(&self) -> String {
        match self {
            Self::Ball { r, dim } => format!("ball(r={r},N={dim})"),
            Self::HyperRect { alphas } => {
                let a: Vec<String> = alphas.iter().map(|a| a.to_string()).collect();
                format!("rect({})", a.join(","))
            }
            Self::Polygon { vertices } => format!("polygon({} vertices)", vertices.len()),
            Self::Reuleaux { n, width, .. } => format!("reuleaux(n={n},w={width})"),
        }
    }
}

impl<T: Scalar> PlanarDomain<T> {
    pub fn diameter(&self) -> T {
        match self {
            Self::Disk { radius, .. } => T::two() * *radius,
            Self::Polygon(p) => p.diameter(),
        }
    }

    pub fn perimeter(&self) -> T {
        match self {
            Self::Disk { radius, .. } => T::TAU() * *radius,
            Self::Polygon(p) => p.perimeter(),
        }
    }

    pub fn area(&self) -> T {
        match self {
            Self::Disk { radius, .. } => T::PI() * *radius * *radius,
            Self::Polygon(p) => p.area(),
        }
    }

    pub fn bounding_box(&self) -> (Point2<T>, Point2<T>) {
        match self {
            Self::Disk { center, radius } => {
                let r = Point2::new(*radius, *radius);
                (*center - r, *center + r)
            }
            Self::Polygon(p) => p.bounding_box(),
        }
    }

    pub fn enclosing_circle(&self) -> Circle<T> {
        match self {
            Self::Disk { center, radius } => Circle {
                center: *center,
                radius: *radius,
            },
            Self::Polygon(p) => p.min_enclosing_circle(),
        }
    }

    /// Distance from `p` to the boundary.
    pub fn boundary_distance(&self, p: Point2<T>) -> T {
        match self {
            Self::Disk { center, radius } => (p.dist(*center) - *radius).abs(),
            Self::Polygon(poly) => poly.boundary_distance(p),
        }
    }

    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        match self {
            Self::Disk { center, radius } => p.dist(*center) <= *radius + tol,
            Self::Polygon(poly) => poly.contains(p, tol),
        }
    }
}
