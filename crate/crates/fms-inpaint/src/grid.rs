//! Image containers and domain geometry.
//!
//! All operators in this crate act on [`ImageGrid`]: a dense `rows x cols`
//! array of `f64` intensities (nominally in `[0, 1]`) together with the
//! rectangular domain `[0, a] x [0, b]` it discretizes. Pixel `(y, x)`
//! represents the cell center `((x + 1/2) dx, (y + 1/2) dy)`; the default
//! geometry takes `a = cols` and `b = rows` so that `dx = dy = 1`.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Grid dimensions plus the physical extent of the rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridShape {
    rows: usize,
    cols: usize,
    /// Domain width `a` (the x-extent).
    width: f64,
    /// Domain height `b` (the y-extent).
    height: f64,
}

impl GridShape {
    /// Unit-pixel geometry: domain `[0, cols] x [0, rows]`, `dx = dy = 1`.
    pub fn unit(rows: usize, cols: usize) -> Self {
        GridShape {
            rows,
            cols,
            width: cols as f64,
            height: rows as f64,
        }
    }

    /// Explicit domain extents. Errors unless `rows, cols >= 1` and
    /// `width, height > 0`.
    pub fn new(rows: usize, cols: usize, width: f64, height: f64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid must have at least one row and one column, got {rows}x{cols}"
            )));
        }
        if !(width > 0.0) || !(height > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "domain extents must be positive, got width={width}, height={height}"
            )));
        }
        Ok(GridShape {
            rows,
            cols,
            width,
            height,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Domain width `a`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Domain height `b`.
    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn dx(&self) -> f64 {
        self.width / self.cols as f64
    }

    pub fn dy(&self) -> f64 {
        self.height / self.rows as f64
    }

    /// Area of one grid cell, the weight of the discrete `L^2` inner product.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Total number of pixels.
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(rows, cols)` pair as used by `ndarray` constructors.
    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Errors unless `dims` matches this shape's pixel dimensions.
    pub fn check_dims(&self, dims: (usize, usize)) -> Result<()> {
        if dims == self.dims() {
            Ok(())
        } else {
            Err(Error::shape_mismatch(self.dims(), dims))
        }
    }
}

/// A grayscale image on a [`GridShape`], indexed `[y, x]` = `[row, col]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    shape: GridShape,
    values: Array2<f64>,
}

impl ImageGrid {
    /// Wraps pixel values under unit-pixel geometry.
    pub fn new(values: Array2<f64>) -> Self {
        let (rows, cols) = values.dim();
        ImageGrid {
            shape: GridShape::unit(rows, cols),
            values,
        }
    }

    /// Wraps pixel values on an explicit domain. Errors on a dimension
    /// mismatch between `shape` and `values`.
    pub fn with_shape(shape: GridShape, values: Array2<f64>) -> Result<Self> {
        shape.check_dims(values.dim())?;
        Ok(ImageGrid { shape, values })
    }

    /// Constant image.
    pub fn constant(shape: GridShape, value: f64) -> Self {
        ImageGrid {
            shape,
            values: Array2::from_elem(shape.dims(), value),
        }
    }

    /// Builds pixel `(y, x)` as `f(y, x)`.
    pub fn from_fn(shape: GridShape, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        ImageGrid {
            shape,
            values: Array2::from_shape_fn(shape.dims(), |(y, x)| f(y, x)),
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<f64> {
        &mut self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    /// Discrete `L^2` norm: `sqrt(sum u^2 * dx * dy)`.
    pub fn l2_norm(&self) -> f64 {
        let sum_sq: f64 = self.values.iter().map(|v| v * v).sum();
        (sum_sq * self.shape.cell_area()).sqrt()
    }

    pub fn mean(&self) -> f64 {
        self.values.sum() / self.shape.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest absolute pixel value.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// True when every pixel is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Copy with every pixel clamped to `[lo, hi]`.
    pub fn clamped(&self, lo: f64, hi: f64) -> Self {
        ImageGrid {
            shape: self.shape,
            values: self.values.mapv(|v| v.clamp(lo, hi)),
        }
    }

    /// `sqrt(sum (self - other)^2 * dx * dy)`; errors on shape mismatch.
    pub fn l2_distance(&self, other: &ImageGrid) -> Result<f64> {
        self.shape.check_dims(other.values.dim())?;
        let mut sum_sq = 0.0;
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            let d = a - b;
            sum_sq += d * d;
        }
        Ok((sum_sq * self.shape.cell_area()).sqrt())
    }
}
