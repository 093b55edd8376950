//! Diagonalizing transforms and the fractional Laplacian.
//!
//! The semi-implicit schemes in [`crate::solvers`] invert linear operators
//! that are diagonal in one of two bases:
//!
//! * [`Basis::NeumannCosine`] — the eigenbasis of the Laplacian with
//!   homogeneous Neumann boundary conditions on `[0, a] x [0, b]`:
//!   `phi_{m,n}(x, y) ~ cos((m-1) pi x / a) cos((n-1) pi y / b)` with
//!   eigenvalue `lambda_{m,n} = pi^2 ((m-1)^2/a^2 + (n-1)^2/b^2)`.
//!   Sampling `phi_{m,n}` at cell centers `x = (i + 1/2) dx` yields exactly
//!   the orthonormal DCT-II basis vectors, so the discrete transform is a
//!   2-D DCT-II (analysis) / DCT-III (synthesis) pair while the eigenvalues
//!   stay those of the continuous operator.
//! * [`Basis::PeriodicDft`] — the 2-D DFT, which diagonalizes the periodic
//!   five-point Laplacian with symbol
//!   `L_{i,j} = 2/dx^2 (cos(2 pi i/m) - 1) + 2/dy^2 (cos(2 pi j/n) - 1)`.
//!
//! A [`SpectralPlan`] fixes the basis and a fractional exponent `alpha`,
//! precomputing the eigenvalue grid `lambda >= 0` (for the DFT basis,
//! `lambda = -L`) together with `lambda^(alpha/2)` and `lambda^alpha`, and
//! caching the FFT kernels. The fractional Laplacian `(-Laplace)^(alpha/2)`
//! then acts coefficient-wise as multiplication by `lambda^(alpha/2)`.
//!
//! Both cosine transforms are computed through a complex FFT of the even
//! extension `[x, reverse(x)]` of length `2N`, which keeps `rustfft` as the
//! only transform dependency and works for arbitrary (not just even or
//! power-of-two) sizes.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::Array2;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{GridShape, ImageGrid};

/// Which eigenbasis a [`SpectralPlan`] diagonalizes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Neumann (cosine) eigenfunctions; used by the FMS model.
    NeumannCosine,
    /// Periodic DFT modes; used by the CVMS, TV-L2 and TV-H^-1 baselines.
    PeriodicDft,
}

/// Continuous Neumann eigenvalue `lambda_{m,n}` on `[0, a] x [0, b]`,
/// with 1-based mode indices as in `phi_{m,n}`.
///
/// # Panics
///
/// Panics if `m` or `n` is zero (mode indices start at 1) or if an extent
/// is not positive.
pub fn neumann_eigenvalue(m: usize, n: usize, a: f64, b: f64) -> f64 {
    assert!(m >= 1 && n >= 1, "Neumann mode indices are 1-based");
    assert!(a > 0.0 && b > 0.0, "domain extents must be positive");
    let p = (m - 1) as f64;
    let q = (n - 1) as f64;
    PI * PI * (p * p / (a * a) + q * q / (b * b))
}

/// Symbol of the periodic five-point Laplacian at DFT mode `(i, j)`,
/// `i` indexing the x-direction (`0 <= i < cols`) and `j` the y-direction
/// (`0 <= j < rows`). Always `<= 0`.
pub fn dft_laplacian_symbol(i: usize, j: usize, shape: &GridShape) -> f64 {
    assert!(
        i < shape.cols() && j < shape.rows(),
        "DFT mode out of range"
    );
    let dx = shape.dx();
    let dy = shape.dy();
    let wx = 2.0 * PI * i as f64 / shape.cols() as f64;
    let wy = 2.0 * PI * j as f64 / shape.rows() as f64;
    2.0 / (dx * dx) * (wx.cos() - 1.0) + 2.0 / (dy * dy) * (wy.cos() - 1.0)
}

/// Coefficients of an image in a plan's basis.
///
/// Stored as complex numbers for both bases so that the solvers share one
/// coefficient-space code path; Neumann-cosine coefficients carry an exactly
/// zero imaginary part when produced by [`SpectralPlan::forward`].
#[derive(Debug, Clone)]
pub struct CoefficientGrid {
    shape: GridShape,
    basis: Basis,
    values: Array2<Complex64>,
}

impl CoefficientGrid {
    /// Wraps a coefficient array; errors if `values` does not match `shape`.
    pub fn new(shape: GridShape, basis: Basis, values: Array2<Complex64>) -> Result<Self> {
        shape.check_dims(values.dim())?;
        Ok(CoefficientGrid {
            shape,
            basis,
            values,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Coefficient `[ky, kx]` multiplies the mode with `kx` oscillations in
    /// x and `ky` in y (0-based; Neumann mode `phi_{m,n}` sits at
    /// `[n - 1, m - 1]`).
    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.values
    }

    /// `sqrt(sum |c|^2)` over all coefficients.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One dimension's worth of cosine-transform machinery.
struct CosineAxis {
    /// Forward FFT of length `2n`.
    fft: Arc<dyn Fft<f64>>,
    /// Inverse FFT of length `2n`.
    ifft: Arc<dyn Fft<f64>>,
    /// `0.5 * s_k * exp(-i pi k / (2n))`; analysis coefficient is
    /// `Re(tw_fwd[k] * FFT([x, rev x])[k])`.
    tw_fwd: Vec<Complex64>,
    /// `exp(+i pi k / (2n)) / (n * s_k)`; synthesis seeds
    /// `Y[k] = tw_inv[k] * c_k` before the inverse FFT.
    tw_inv: Vec<Complex64>,
}

impl CosineAxis {
    fn new(planner: &mut FftPlanner<f64>, n: usize) -> Self {
        let fft = planner.plan_fft_forward(2 * n);
        let ifft = planner.plan_fft_inverse(2 * n);
        let mut tw_fwd = Vec::with_capacity(n);
        let mut tw_inv = Vec::with_capacity(n);
        for k in 0..n {
            // Orthonormal DCT scaling: s_0 = sqrt(1/n), s_k = sqrt(2/n).
            let s = if k == 0 {
                (1.0 / n as f64).sqrt()
            } else {
                (2.0 / n as f64).sqrt()
            };
            let theta = PI * k as f64 / (2.0 * n as f64);
            tw_fwd.push(Complex64::from_polar(0.5 * s, -theta));
            tw_inv.push(Complex64::from_polar(1.0 / (n as f64 * s), theta));
        }
        CosineAxis {
            fft,
            ifft,
            tw_fwd,
            tw_inv,
        }
    }

    fn len(&self) -> usize {
        self.tw_fwd.len()
    }

    /// Orthonormal DCT-II of every row of `data` (rows of length `self.len()`).
    fn dct2_rows(&self, data: &mut Array2<f64>) {
        let n = self.len();
        let mut ext = vec![Complex64::default(); 2 * n];
        let mut scratch = vec![Complex64::default(); self.fft.get_inplace_scratch_len()];
        for mut row in data.rows_mut() {
            for (i, v) in row.iter().enumerate() {
                let c = Complex64::new(*v, 0.0);
                ext[i] = c;
                ext[2 * n - 1 - i] = c;
            }
            self.fft.process_with_scratch(&mut ext, &mut scratch);
            for (k, out) in row.iter_mut().enumerate() {
                *out = (self.tw_fwd[k] * ext[k]).re;
            }
        }
    }

    /// Orthonormal DCT-III (inverse of [`Self::dct2_rows`]) of every row.
    fn dct3_rows(&self, data: &mut Array2<f64>) {
        let n = self.len();
        let mut ext = vec![Complex64::default(); 2 * n];
        let mut scratch = vec![Complex64::default(); self.ifft.get_inplace_scratch_len()];
        for mut row in data.rows_mut() {
            ext[n] = Complex64::default();
            for (k, v) in row.iter().enumerate() {
                let y = self.tw_inv[k] * *v;
                ext[k] = y;
                if k > 0 {
                    ext[2 * n - k] = y.conj();
                }
            }
            self.ifft.process_with_scratch(&mut ext, &mut scratch);
            for (i, out) in row.iter_mut().enumerate() {
                *out = ext[i].re;
            }
        }
    }
}

/// One dimension's worth of DFT machinery.
struct DftAxis {
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl DftAxis {
    fn new(planner: &mut FftPlanner<f64>, n: usize) -> Self {
        DftAxis {
            fft: planner.plan_fft_forward(n),
            ifft: planner.plan_fft_inverse(n),
        }
    }

    /// Unnormalized forward DFT of every row (each row is one transform).
    fn fft_rows(&self, data: &mut Array2<Complex64>) {
        let mut scratch = vec![Complex64::default(); self.fft.get_inplace_scratch_len()];
        let flat = data.as_slice_mut().expect("standard layout");
        self.fft.process_with_scratch(flat, &mut scratch);
    }

    /// Unnormalized inverse DFT of every row.
    fn ifft_rows(&self, data: &mut Array2<Complex64>) {
        let mut scratch = vec![Complex64::default(); self.ifft.get_inplace_scratch_len()];
        let flat = data.as_slice_mut().expect("standard layout");
        self.ifft.process_with_scratch(flat, &mut scratch);
    }
}

enum TransformKernels {
    Cosine { x: CosineAxis, y: CosineAxis },
    Dft { x: DftAxis, y: DftAxis },
}

/// Precomputed transform kernels and eigenvalue grids for one image shape,
/// basis, and fractional exponent.
///
/// Plans are immutable after construction and safe to share across threads.
pub struct SpectralPlan {
    shape: GridShape,
    basis: Basis,
    alpha: f64,
    lambda: Array2<f64>,
    lambda_half_alpha: Array2<f64>,
    lambda_alpha: Array2<f64>,
    kernels: TransformKernels,
}

impl std::fmt::Debug for SpectralPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralPlan")
            .field("shape", &self.shape)
            .field("basis", &self.basis)
            .field("alpha", &self.alpha)
            .finish_non_exhaustive()
    }
}

impl SpectralPlan {
    /// Builds a plan for `shape` in `basis` with fractional exponent
    /// `alpha in (0, 2]`.
    pub fn new(shape: GridShape, basis: Basis, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 2], got {alpha}"
            )));
        }
        let (rows, cols) = shape.dims();
        let lambda = match basis {
            Basis::NeumannCosine => Array2::from_shape_fn((rows, cols), |(ky, kx)| {
                neumann_eigenvalue(kx + 1, ky + 1, shape.width(), shape.height())
            }),
            Basis::PeriodicDft => Array2::from_shape_fn((rows, cols), |(ky, kx)| {
                -dft_laplacian_symbol(kx, ky, &shape)
            }),
        };
        // alpha = 2 and alpha = 1 admit exact power grids; keeping them
        // bitwise-consistent with `lambda` lets integer-order runs agree
        // with the unfractional operators to the last ulp.
        let (lambda_half_alpha, lambda_alpha) = if alpha == 2.0 {
            (lambda.clone(), &lambda * &lambda)
        } else if alpha == 1.0 {
            (lambda.mapv(f64::sqrt), lambda.clone())
        } else {
            (
                lambda.mapv(|l| l.powf(alpha / 2.0)),
                lambda.mapv(|l| l.powf(alpha)),
            )
        };
        let mut planner = FftPlanner::new();
        let kernels = match basis {
            Basis::NeumannCosine => TransformKernels::Cosine {
                x: CosineAxis::new(&mut planner, cols),
                y: CosineAxis::new(&mut planner, rows),
            },
            Basis::PeriodicDft => TransformKernels::Dft {
                x: DftAxis::new(&mut planner, cols),
                y: DftAxis::new(&mut planner, rows),
            },
        };
        Ok(SpectralPlan {
            shape,
            basis,
            alpha,
            lambda,
            lambda_half_alpha,
            lambda_alpha,
            kernels,
        })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Eigenvalues `lambda[ky, kx] >= 0` of `-Laplace` in this basis
    /// (for [`Basis::PeriodicDft`] this is `-L_{kx,ky}`).
    pub fn lambda_grid(&self) -> &Array2<f64> {
        &self.lambda
    }

    /// `lambda^(alpha/2)`, the symbol of `(-Laplace)^(alpha/2)`.
    pub fn lambda_half_alpha(&self) -> &Array2<f64> {
        &self.lambda_half_alpha
    }

    /// `lambda^alpha`, the symbol of `((-Laplace)^(alpha/2))^2`.
    pub fn lambda_alpha(&self) -> &Array2<f64> {
        &self.lambda_alpha
    }

    /// Analysis transform: coefficients of `u` in this plan's basis.
    pub fn forward(&self, u: &ImageGrid) -> Result<CoefficientGrid> {
        self.shape.check_dims(u.values().dim())?;
        let values = match &self.kernels {
            TransformKernels::Cosine { x, y } => {
                let mut work = u.values().clone();
                x.dct2_rows(&mut work);
                let mut workt = transposed(&work);
                y.dct2_rows(&mut workt);
                let coeffs = transposed(&workt);
                coeffs.mapv(|v| Complex64::new(v, 0.0))
            }
            TransformKernels::Dft { x, y } => {
                let mut work = u.values().mapv(|v| Complex64::new(v, 0.0));
                x.fft_rows(&mut work);
                let mut workt = transposed(&work);
                y.fft_rows(&mut workt);
                transposed(&workt)
            }
        };
        CoefficientGrid::new(self.shape, self.basis, values)
    }

    /// Synthesis transform: reconstructs the image whose coefficients are
    /// `c`. For the cosine basis only the real parts of `c` are meaningful
    /// and the imaginary parts are ignored; for the DFT basis the real part
    /// of the complex synthesis is returned.
    pub fn inverse(&self, c: &CoefficientGrid) -> Result<ImageGrid> {
        self.shape.check_dims(c.values().dim())?;
        if c.basis() != self.basis {
            return Err(Error::InvalidParameter(format!(
                "coefficient basis {:?} does not match plan basis {:?}",
                c.basis(),
                self.basis
            )));
        }
        let values = match &self.kernels {
            TransformKernels::Cosine { x, y } => {
                let mut work = c.values().mapv(|z| z.re);
                x.dct3_rows(&mut work);
                let mut workt = transposed(&work);
                y.dct3_rows(&mut workt);
                transposed(&workt)
            }
            TransformKernels::Dft { x, y } => {
                let mut work = c.values().clone();
                x.ifft_rows(&mut work);
                let mut workt = transposed(&work);
                y.ifft_rows(&mut workt);
                let norm = 1.0 / self.shape.len() as f64;
                transposed(&workt).mapv(|z| z.re * norm)
            }
        };
        ImageGrid::with_shape(self.shape, values)
    }
}

/// Explicit standard-layout transpose (avoids layout-dependent views).
fn transposed<T: Copy + Default>(a: &Array2<T>) -> Array2<T> {
    let (r, c) = a.dim();
    Array2::from_shape_fn((c, r), |(i, j)| a[[j, i]])
}

/// Applies `(-Laplace)^(alpha/2)` to `u` through the plan's basis:
/// transform, multiply by `lambda^(alpha/2)`, transform back.
pub fn apply_fractional_laplacian(plan: &SpectralPlan, u: &ImageGrid) -> Result<ImageGrid> {
    let mut c = plan.forward(u)?;
    for (v, &s) in c.values_mut().iter_mut().zip(plan.lambda_half_alpha()) {
        *v *= s;
    }
    plan.inverse(&c)
}
