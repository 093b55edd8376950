//! Grayscale image inpainting with a fractional-order Mumford-Shah-type
//! (FMS) model, solved spectrally, plus three classical baselines (CVMS,
//! TV-L2, TV-H^-1) under the same convexity-splitting time discretization.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`grid`] — image/domain containers ([`ImageGrid`], [`GridShape`]).
//! * [`spectral`] — the two diagonalizing transforms (Neumann cosine basis
//!   and periodic DFT), precomputed eigenvalue grids, and the fractional
//!   Laplacian they induce.
//! * [`fields`] — pointwise/stencil operators: masks, fidelity weights,
//!   gradient/divergence, TV curvature, and the model energy.
//! * [`solvers`] — one semi-implicit Fourier step per model and the
//!   iteration driver [`solvers::run`] with its per-iteration [`RunLog`].
//! * [`metrics`] — PSNR / SNR / SSIM for quantitative comparisons.
//! * [`synthetic`] — deterministic test images and masks.
//! * [`verify`] — self-contained validation studies (dense-matrix oracles,
//!   temporal order, boundedness, parameter trends) used by the test suite
//!   and the `verify` CLI subcommand.
//! * [`io`] — PNG/PGM loading with grayscale normalization, mask decoding,
//!   and CSV writers for logs and reports.
//!
//! The binary target `fms-inpaint` exposes the same functionality as a CLI
//! (`inpaint`, `metrics`, `verify`, `sweep`); the `examples/` directory
//! shows each major capability as a small runnable program.

pub mod error;
pub mod fields;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod solvers;
pub mod spectral;
pub mod synthetic;
pub mod verify;

pub use error::{Error, Result};
pub use fields::{FidelityField, Mask};
pub use grid::{GridShape, ImageGrid};
pub use metrics::MetricsReport;
pub use solvers::{Model, ModelParams, RunLog, RunRecord, StopReason};
pub use spectral::{Basis, CoefficientGrid, SpectralPlan};
