//! Uniform lattice restricted to a convex planar domain, with boundary-clipped
//! stencil arms for every interior node and direction.
//!
//! Geometry is evaluated in lattice units: the domain is translated to the
//! anchor and divided by `h` before any intersection is computed. Arm lengths
//! are stored in units of `h`, so a domain and its rescaling produce identical
//! internal data whenever the normalized coordinates agree.

mod field;
mod stencil;

use std::io::Write;

use rayon::prelude::*;

pub use field::ScalarField;
pub use stencil::{build_stencil, Direction, StencilSet};

use crate::geometry::{PlanarDomain, Point2};
use crate::{Error, Result, Scalar};

/// Marker for "no interior neighbor" (the arm ends on the boundary).
pub const NO_NODE: u32 = u32::MAX;

/// Nodes closer than this (in lattice units) to the boundary count as boundary.
const INTERIOR_MARGIN: f64 = 1e-9;

/// Default relative floor for clipped arms.
pub const DEFAULT_ARM_FLOOR: f64 = 1e-6;

/// The two legs of a second-difference stencil at one node and direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arm<T> {
    /// Forward leg length in units of `h`.
    pub plus: T,
    /// Backward leg length in units of `h`.
    pub minus: T,
    /// Interior index of the forward endpoint, or [`NO_NODE`].
    pub next: u32,
    /// Interior index of the backward endpoint, or [`NO_NODE`].
    pub prev: u32,
    /// Weights of the normalized second difference
    /// `w_plus·u(x+) + w_minus·u(x−) − w_center·u(x)`.
    pub w_plus: T,
    pub w_minus: T,
    pub w_center: T,
}

impl<T: Scalar> Arm<T> {
    fn new(plus: T, minus: T, next: u32, prev: u32) -> Self {
        let two = T::two();
        let sum = plus + minus;
        Self {
            plus,
            minus,
            next,
            prev,
            w_plus: two / (plus * sum),
            w_minus: two / (minus * sum),
            w_center: two / (plus * minus),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GridOptions<T> {
    /// Lattice point to align the grid to; defaults to the bounding-box center.
    pub anchor: Option<Point2<T>>,
    /// Clipped arms shorter than `floor · h · |e|` are raised to that length.
    pub arm_floor: T,
}

impl<T: Scalar> Default for GridOptions<T> {
    fn default() -> Self {
        Self {
            anchor: None,
            arm_floor: T::lit(DEFAULT_ARM_FLOOR),
        }
    }
}

/// Domain in lattice units relative to the anchor.
enum Shape<T> {
    Disk { center: Point2<T>, radius: T },
    Polygon { verts: Vec<Point2<T>> },
}

impl<T: Scalar> Shape<T> {
    fn strictly_inside(&self, x: Point2<T>) -> bool {
        let margin = T::lit(INTERIOR_MARGIN);
        match self {
            Shape::Disk { center, radius } => (x - *center).norm() < *radius - margin,
            Shape::Polygon { verts } => {
                let n = verts.len();
                (0..n).all(|i| {
                    let (a, b) = (verts[i], verts[(i + 1) % n]);
                    let e = b - a;
                    e.cross(x - a) > margin * e.norm()
                })
            }
        }
    }

    /// Parameter `t > 0` where the ray `x + t·e` leaves the domain.
    fn exit(&self, x: Point2<T>, e: Point2<T>) -> T {
        match self {
            Shape::Disk { center, radius } => {
                let d = x - *center;
                let a = e.norm_sq();
                let b = d.dot(e);
                let c = d.norm_sq() - *radius * *radius;
                let disc = (b * b - a * c).max(T::zero()).sqrt();
                if b <= T::zero() {
                    (disc - b) / a
                } else {
                    -c / (b + disc)
                }
            }
            Shape::Polygon { verts } => {
                let n = verts.len();
                let mut t = T::infinity();
                for i in 0..n {
                    let (a, b) = (verts[i], verts[(i + 1) % n]);
                    let edge = b - a;
                    let rate = edge.cross(e);
                    if rate < T::zero() {
                        t = t.min(edge.cross(x - a) / -rate);
                    }
                }
                t
            }
        }
    }

    fn bounds(&self) -> (Point2<T>, Point2<T>) {
        match self {
            Shape::Disk { center, radius } => {
                let r = Point2::new(*radius, *radius);
                (*center - r, *center + r)
            }
            Shape::Polygon { verts } => {
                let f = verts[0];
                verts.iter().fold((f, f), |(lo, hi), p| {
                    (
                        Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                        Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
                    )
                })
            }
        }
    }
}

/// Rasterized domain: interior nodes and their clipped stencil arms.
#[derive(Debug, Clone)]
pub struct Grid2<T> {
    anchor: Point2<T>,
    h: T,
    imin: i64,
    jmin: i64,
    nx: usize,
    ny: usize,
    stencil: StencilSet<T>,
    /// grid node index (row-major, `j * nx + i`) per interior node
    interior: Vec<usize>,
    node_to_interior: Vec<u32>,
    arms: Vec<Arm<T>>,
}

/// Rasterizes a planar domain with default options.
pub fn rasterize<T: Scalar>(domain: &PlanarDomain<T>, h: T, stencil: &StencilSet<T>) -> Result<Grid2<T>> {
    rasterize_with(domain, h, stencil, GridOptions::default())
}

/// Rasterizes a planar domain on the lattice `anchor + h·ℤ²`.
pub fn rasterize_with<T: Scalar>(
    domain: &PlanarDomain<T>,
    h: T,
    stencil: &StencilSet<T>,
    opts: GridOptions<T>,
) -> Result<Grid2<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    let anchor = opts.anchor.unwrap_or_else(|| {
        let (lo, hi) = domain.bounding_box();
        Point2::new((lo.x + hi.x) * T::half(), (lo.y + hi.y) * T::half())
    });
    let to_lattice = |p: Point2<T>| Point2::new((p.x - anchor.x) / h, (p.y - anchor.y) / h);
    let shape = match domain {
        PlanarDomain::Disk { center, radius } => Shape::Disk {
            center: to_lattice(*center),
            radius: *radius / h,
        },
        PlanarDomain::Polygon(p) => Shape::Polygon {
            verts: p.vertices().iter().map(|&v| to_lattice(v)).collect(),
        },
    };

    let (lo, hi) = shape.bounds();
    let to_i64 = |x: T| x.to_i64().ok_or_else(|| Error::InvalidParameter("grid extent overflows".into()));
    let (imin, imax) = (to_i64(lo.x.ceil())?, to_i64(hi.x.floor())?);
    let (jmin, jmax) = (to_i64(lo.y.ceil())?, to_i64(hi.y.floor())?);
    if imax < imin || jmax < jmin {
        return Err(Error::GridTooCoarse { h: h.as_f64() });
    }
    let nx = (imax - imin + 1) as usize;
    let ny = (jmax - jmin + 1) as usize;
    if nx.saturating_mul(ny) > 50_000_000 {
        return Err(Error::InvalidParameter(format!(
            "grid of {nx}x{ny} nodes is too large"
        )));
    }

    let lattice = |i: i64, j: i64| Point2::new(T::from_i64(i).unwrap(), T::from_i64(j).unwrap());
    let mut node_to_interior = vec![NO_NODE; nx * ny];
    let mut interior = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if shape.strictly_inside(lattice(imin + i as i64, jmin + j as i64)) {
                node_to_interior[j * nx + i] = interior.len() as u32;
                interior.push(j * nx + i);
            }
        }
    }
    if interior.is_empty() {
        return Err(Error::GridTooCoarse { h: h.as_f64() });
    }

    let floor = opts.arm_floor;
    let lookup = |i: i64, j: i64| -> u32 {
        if i < imin || i > imax || j < jmin || j > jmax {
            return NO_NODE;
        }
        node_to_interior[(j - jmin) as usize * nx + (i - imin) as usize]
    };
    let leg = |x: Point2<T>, i: i64, j: i64, p: i32, q: i32, len: T| -> (T, u32) {
        let nb = lookup(i + p as i64, j + q as i64);
        if nb != NO_NODE {
            return (len, nb);
        }
        let e = Point2::new(T::from_i32(p).unwrap(), T::from_i32(q).unwrap());
        let t = shape.exit(x, e);
        if t >= T::one() {
            (len, NO_NODE)
        } else {
            (t.max(floor) * len, NO_NODE)
        }
    };
    let arms: Vec<Arm<T>> = interior
        .par_iter()
        .flat_map_iter(|&node| {
            let i = imin + (node % nx) as i64;
            let j = jmin + (node / nx) as i64;
            let x = lattice(i, j);
            stencil.directions().iter().map(move |d| {
                let (plus, next) = leg(x, i, j, d.p, d.q, d.len);
                let (minus, prev) = leg(x, i, j, -d.p, -d.q, d.len);
                Arm::new(plus, minus, next, prev)
            })
        })
        .collect();

    Ok(Grid2 {
        anchor,
        h,
        imin,
        jmin,
        nx,
        ny,
        stencil: stencil.clone(),
        interior,
        node_to_interior,
        arms,
    })
}

impl<T: Scalar> Grid2<T> {
    pub fn h(&self) -> T {
        self.h
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn interior_count(&self) -> usize {
        self.interior.len()
    }

    pub fn stencil(&self) -> &StencilSet<T> {
        &self.stencil
    }

    pub fn anchor(&self) -> Point2<T> {
        self.anchor
    }

    /// Physical coordinates of grid node `(0, 0)`.
    pub fn origin(&self) -> Point2<T> {
        self.position_of_lattice(self.imin, self.jmin)
    }

    /// Grid node index of each interior node.
    pub fn interior_nodes(&self) -> &[usize] {
        &self.interior
    }

    /// Interior index of grid node `node`, if it is interior.
    pub fn interior_index(&self, node: usize) -> Option<usize> {
        match self.node_to_interior.get(node) {
            Some(&k) if k != NO_NODE => Some(k as usize),
            _ => None,
        }
    }

    pub fn is_interior(&self, node: usize) -> bool {
        self.interior_index(node).is_some()
    }

    /// Lattice coordinates `(I, J)` of interior node `k` relative to the anchor.
    pub fn lattice_coords(&self, k: usize) -> (i64, i64) {
        let node = self.interior[k];
        (self.imin + (node % self.nx) as i64, self.jmin + (node / self.nx) as i64)
    }

    fn position_of_lattice(&self, i: i64, j: i64) -> Point2<T> {
        Point2::new(
            self.anchor.x + T::from_i64(i).unwrap() * self.h,
            self.anchor.y + T::from_i64(j).unwrap() * self.h,
        )
    }

    /// Physical position of grid node `node` (any node, interior or not).
    pub fn node_position(&self, node: usize) -> Point2<T> {
        self.position_of_lattice(self.imin + (node % self.nx) as i64, self.jmin + (node / self.nx) as i64)
    }

    /// Physical position of interior node `k`.
    pub fn position(&self, k: usize) -> Point2<T> {
        self.node_position(self.interior[k])
    }

    /// All arms of interior node `k`, one per stencil direction, in units of `h`.
    #[inline]
    pub fn arms_of(&self, k: usize) -> &[Arm<T>] {
        let d = self.stencil.len();
        &self.arms[k * d..(k + 1) * d]
    }

    /// Physical arm lengths `(s₊, s₋)` of interior node `k` along direction `dir`.
    pub fn arm_lengths(&self, k: usize, dir: usize) -> (T, T) {
        let a = self.arms_of(k)[dir];
        (a.plus * self.h, a.minus * self.h)
    }

    /// Writes the mask and arms as CSV: one row per (node, direction) for
    /// interior nodes, one row with empty direction fields otherwise.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "j", "x", "y", "interior", "dir", "p", "q", "s_plus", "s_minus"])?;
        for node in 0..self.node_count() {
            let (i, j) = (node % self.nx, node / self.nx);
            let x = self.node_position(node);
            let base = [i.to_string(), j.to_string(), x.x.to_string(), x.y.to_string()];
            match self.interior_index(node) {
                None => {
                    let mut rec = base.to_vec();
                    rec.extend(["0", "", "", "", "", ""].map(String::from));
                    w.write_record(&rec)?;
                }
                Some(k) => {
                    for (d, dir) in self.stencil.directions().iter().enumerate() {
                        let (sp, sm) = self.arm_lengths(k, d);
                        let mut rec = base.to_vec();
                        rec.extend([
                            "1".to_string(),
                            d.to_string(),
                            dir.p.to_string(),
                            dir.q.to_string(),
                            sp.to_string(),
                            sm.to_string(),
                        ]);
                        w.write_record(&rec)?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexPolygon;

    fn disk(r: f64) -> PlanarDomain<f64> {
        PlanarDomain::Disk {
            center: Point2::origin(),
            radius: r,
        }
    }

    #[test]
    fn unit_disk_coarse() {
        let st = build_stencil(1).unwrap();
        let g = rasterize(&disk(1.0), 0.5, &st).unwrap();
        // lattice points with |x| < 1 at spacing 1/2: |(i,j)| < 2
        let want = (-2..=2i32)
            .flat_map(|i| (-2..=2i32).map(move |j| (i, j)))
            .filter(|&(i, j)| i * i + j * j < 4)
            .count();
        assert_eq!(g.interior_count(), want);
        let center = (0..g.interior_count())
            .find(|&k| g.lattice_coords(k) == (0, 0))
            .unwrap();
        for (d, dir) in st.directions().iter().enumerate() {
            let (sp, sm) = g.arm_lengths(center, d);
            assert_eq!(sp, 0.5 * dir.len);
            assert_eq!(sm, 0.5 * dir.len);
        }
    }

    #[test]
    fn square_arms_clip_to_axis_distance() {
        let st = build_stencil(2).unwrap();
        let sq = PlanarDomain::Polygon(ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap());
        let h = 0.4;
        let g = rasterize(&sq, h, &st).unwrap();
        for k in 0..g.interior_count() {
            let x = g.position(k);
            for (d, dir) in st.directions().iter().enumerate() {
                let (sp, sm) = g.arm_lengths(k, d);
                // oracle: slab intersection of the ray with [-1, 1]²
                let ray = |sign: f64| {
                    let e = dir.unit * sign;
                    let mut t = f64::INFINITY;
                    for (xc, ec) in [(x.x, e.x), (x.y, e.y)] {
                        if ec > 0.0 {
                            t = t.min((1.0 - xc) / ec);
                        } else if ec < 0.0 {
                            t = t.min((-1.0 - xc) / ec);
                        }
                    }
                    t.min(h * dir.len)
                };
                assert!((sp - ray(1.0)).abs() < 1e-12, "k={k} d={d}");
                assert!((sm - ray(-1.0)).abs() < 1e-12, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn thin_triangle_too_coarse() {
        let tri = PlanarDomain::Polygon(
            ConvexPolygon::new(vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.95, 1.0),
            ])
            .unwrap(),
        );
        let st = build_stencil(1).unwrap();
        assert!(matches!(rasterize(&tri, 0.3, &st), Err(Error::GridTooCoarse { .. })));
        assert!(rasterize(&tri, -0.3, &st).is_err());
    }

    #[test]
    fn boundary_nodes_are_excluded() {
        // nodes on x = ±1 and y = ±1 lie exactly on the boundary
        let sq = PlanarDomain::Polygon(ConvexPolygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap());
        let st = build_stencil(1).unwrap();
        let g = rasterize(&sq, 0.25, &st).unwrap();
        assert_eq!(g.interior_count(), 7 * 7);
        // arms of the node next to the right edge end exactly at the boundary node
        let k = (0..g.interior_count()).find(|&k| g.lattice_coords(k) == (3, 0)).unwrap();
        let a = g.arms_of(k)[0];
        assert_eq!(a.plus, 1.0);
        assert_eq!(a.next, NO_NODE);
        assert_ne!(a.prev, NO_NODE);
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let st = build_stencil(1).unwrap();
        let g = rasterize(&disk(1.0), 0.5, &st).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert!(lines[0].starts_with("i,j,x,y,interior"));
        let outside = g.node_count() - g.interior_count();
        assert_eq!(lines.len(), 1 + outside + g.interior_count() * 4);
    }
}
