use super::Grid2;
use crate::geometry::Point2;
use crate::{Error, Result, Scalar};

/// Values on every node of a grid; zero at non-interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<T> {
    nx: usize,
    ny: usize,
    values: Vec<T>,
}

impl<T: Scalar> ScalarField<T> {
    pub fn zeros(grid: &Grid2<T>) -> Self {
        Self {
            nx: grid.nx(),
            ny: grid.ny(),
            values: vec![T::zero(); grid.node_count()],
        }
    }

    /// Field from one value per interior node.
    pub fn from_interior(grid: &Grid2<T>, interior: &[T]) -> Result<Self> {
        if interior.len() != grid.interior_count() {
            return Err(Error::FieldMismatch {
                field: interior.len(),
                grid: grid.interior_count(),
            });
        }
        let mut f = Self::zeros(grid);
        for (&node, &v) in grid.interior_nodes().iter().zip(interior) {
            f.values[node] = v;
        }
        Ok(f)
    }

    /// Samples `f` at the interior nodes.
    pub fn sample(grid: &Grid2<T>, f: impl Fn(Point2<T>) -> T) -> Self {
        let vals: Vec<T> = (0..grid.interior_count()).map(|k| f(grid.position(k))).collect();
        Self::from_interior(grid, &vals).expect("sized from grid")
    }

    /// Checks that this field belongs to `grid`.
    pub fn check(&self, grid: &Grid2<T>) -> Result<()> {
        if self.nx != grid.nx() || self.ny != grid.ny() || self.values.len() != grid.node_count() {
            return Err(Error::FieldMismatch {
                field: self.values.len(),
                grid: grid.node_count(),
            });
        }
        Ok(())
    }

    pub fn interior_values(&self, grid: &Grid2<T>) -> Result<Vec<T>> {
        self.check(grid)?;
        Ok(grid.interior_nodes().iter().map(|&n| self.values[n]).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[j * self.nx + i]
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Writes `x,y,u` rows for the interior nodes.
    pub fn write_csv<W: std::io::Write>(&self, grid: &Grid2<T>, out: W) -> Result<()> {
        self.check(grid)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y", "u"])?;
        for (k, &node) in grid.interior_nodes().iter().enumerate() {
            let p = grid.position(k);
            w.write_record([p.x.to_string(), p.y.to_string(), self.values[node].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
