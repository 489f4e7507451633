//! Designs of experiments: point sets in the half-open unit hypercube.

use crate::{Error, Result};

/// An `n_points × n_dims` matrix of coordinates, each in `[0, 1)`.
///
/// Storage is row-major (one sample point per row). Every entry is validated
/// on construction; values equal to `1.0` are rejected rather than clamped so
/// upstream sampler bugs surface immediately.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    points: Vec<f64>,
    n_points: usize,
    n_dims: usize,
}

impl Design {
    /// Builds a design from row-major values, validating shape and range.
    pub fn new(points: Vec<f64>, n_points: usize, n_dims: usize) -> Result<Self> {
        if n_points == 0 || n_dims == 0 {
            return Err(Error::EmptyDesign);
        }
        let expected = n_points * n_dims;
        if points.len() != expected {
            return Err(Error::ShapeMismatch {
                n_points,
                n_dims,
                expected,
                got: points.len(),
            });
        }
        for (idx, &x) in points.iter().enumerate() {
            if !(0.0..1.0).contains(&x) {
                return Err(Error::CoordinateOutOfRange {
                    row: idx / n_dims,
                    col: idx % n_dims,
                    value: x,
                });
            }
        }
        Ok(Self {
            points,
            n_points,
            n_dims,
        })
    }

    /// Builds a design from one row per sample point.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyDesign);
        }
        let n_dims = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n_dims {
                return Err(Error::RaggedRow {
                    row,
                    expected: n_dims,
                    got: r.len(),
                });
            }
        }
        let points = rows.iter().flatten().copied().collect();
        Self::new(points, rows.len(), n_dims)
    }

    /// Number of sample points (rows).
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of dimensions (columns).
    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// Coordinate of sample `row` in dimension `col`.
    ///
    /// Panics if either index is out of range.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.points[row * self.n_dims + col]
    }

    /// One sample point as a slice.
    ///
    /// Panics if `row` is out of range.
    pub fn row(&self, row: usize) -> &[f64] {
        &self.points[row * self.n_dims..(row + 1) * self.n_dims]
    }

    /// All coordinates in row-major order.
    pub fn values(&self) -> &[f64] {
        &self.points
    }

    /// Iterator over the sample points.
    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.points.chunks_exact(self.n_dims)
    }

    /// Iterator over one column's coordinates.
    ///
    /// Panics if `col` is out of range.
    pub fn column(&self, col: usize) -> impl Iterator<Item = f64> + '_ {
        assert!(col < self.n_dims, "column {col} out of range");
        self.points.iter().skip(col).step_by(self.n_dims).copied()
    }
}
