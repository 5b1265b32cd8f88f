use crate::geometry::Point2;
use crate::{Error, Result, Scalar};

/// A lattice direction `(p, q)` with `gcd(|p|, |q|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    pub p: i32,
    pub q: i32,
    /// `|(p, q)|`
    pub len: T,
    pub unit: Point2<T>,
}

/// Coprime lattice directions of width at most `W`, one per antipodal pair.
///
/// Ordered by shell `max(|p|, |q|)`, then `|p| + |q|`, then descending `(p, q)`,
/// so the axes come first: `W = 1` gives `(1,0), (0,1), (1,1), (1,-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilSet<T> {
    width: usize,
    dirs: Vec<Direction<T>>,
}

fn gcd(mut a: i32, mut b: i32) -> i32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

impl<T: Scalar> StencilSet<T> {
    pub fn new(width: usize) -> Result<Self> {
        if width < 1 {
            return Err(Error::InvalidParameter(format!(
                "stencil width must be >= 1, got {width}"
            )));
        }
        if width > 64 {
            return Err(Error::InvalidParameter(format!(
                "stencil width {width} is unreasonably large (max 64)"
            )));
        }
        let w = width as i32;
        let mut pq = Vec::new();
        for p in 0..=w {
            for q in -w..=w {
                let canonical = p > 0 || (p == 0 && q > 0);
                if canonical && gcd(p, q) == 1 {
                    pq.push((p, q));
                }
            }
        }
        pq.sort_by_key(|&(p, q)| (p.abs().max(q.abs()), p.abs() + q.abs(), -p, -q));
        let dirs = pq
            .into_iter()
            .map(|(p, q)| {
                let v = Point2::new(T::from_i32(p).unwrap(), T::from_i32(q).unwrap());
                let len = v.norm();
                Direction {
                    p,
                    q,
                    len,
                    unit: v.scale(T::one() / len),
                }
            })
            .collect();
        Ok(Self { width, dirs })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn directions(&self) -> &[Direction<T>] {
        &self.dirs
    }

    pub fn get(&self, k: usize) -> &Direction<T> {
        &self.dirs[k]
    }

    /// Largest angle between consecutive directions on the half circle.
    pub fn max_angular_gap(&self) -> T {
        let mut angles: Vec<T> = self
            .dirs
            .iter()
            .map(|d| {
                let a = d.unit.y.atan2(d.unit.x);
                if a < T::zero() { a + T::PI() } else { a }
            })
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let wrap = angles[0] + T::PI() - angles[angles.len() - 1];
        angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(wrap, T::max)
    }
}

/// Builds the width-`W` direction set.
pub fn build_stencil<T: Scalar>(width: usize) -> Result<StencilSet<T>> {
    StencilSet::new(width)
}
