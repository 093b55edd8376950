//! Deterministic synthetic images, masks, and damage for tests and studies.
//!
//! Three canonical problems cover the smooth-versus-edge axis the studies
//! vary across: a raised-cosine "smooth bump" (compatible with the Neumann
//! boundary conditions exactly), a two-tone vertical "stripe" pattern
//! (piecewise smooth, edge-dominated), and a linear "ramp" (a gray-shade
//! gradient). All generators are pure functions of their arguments; the
//! seeded helpers use a fixed-stream ChaCha generator so every study is
//! reproducible bit-for-bit.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fields::Mask;
use crate::grid::{GridShape, ImageGrid};

/// Identifier for the canonical synthetic problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    /// Product of raised cosines; smooth and Neumann-compatible.
    SmoothBump,
    /// Two-tone vertical bands; piecewise smooth with sharp edges.
    Stripe,
    /// Horizontal linear gradient; a smooth gray-shade image.
    Ramp,
}

impl Problem {
    /// The problem's image at the given shape.
    pub fn image(self, shape: GridShape) -> ImageGrid {
        match self {
            Problem::SmoothBump => smooth_bump(shape),
            Problem::Stripe => stripes(shape, band_width_for(shape), 0.15, 0.85),
            Problem::Ramp => ramp(shape, 0.1, 0.9),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::SmoothBump => "smooth-bump",
            Problem::Stripe => "stripe",
            Problem::Ramp => "ramp",
        }
    }
}

/// Default stripe band width: eight bands across the image, at least 2 px.
fn band_width_for(shape: GridShape) -> usize {
    (shape.cols() / 8).max(2)
}

/// `u(x, y) = 1/4 (1 - cos(2 pi x/a)) (1 - cos(2 pi y/b))` sampled at cell
/// centers: smooth, in `[0, 1]`, with zero normal derivative on the domain
/// boundary.
pub fn smooth_bump(shape: GridShape) -> ImageGrid {
    let (a, b) = (shape.width(), shape.height());
    let (dx, dy) = (shape.dx(), shape.dy());
    ImageGrid::from_fn(shape, |y, x| {
        let xc = (x as f64 + 0.5) * dx;
        let yc = (y as f64 + 0.5) * dy;
        0.25 * (1.0 - (2.0 * PI * xc / a).cos()) * (1.0 - (2.0 * PI * yc / b).cos())
    })
}

/// Vertical two-tone bands, each `band_width` pixels wide, alternating
/// `hi` then `lo` from the left edge.
pub fn stripes(shape: GridShape, band_width: usize, lo: f64, hi: f64) -> ImageGrid {
    let w = band_width.max(1);
    ImageGrid::from_fn(shape, |_, x| if (x / w) % 2 == 0 { hi } else { lo })
}

/// Horizontal linear gradient from `lo` (left edge) to `hi` (right edge).
pub fn ramp(shape: GridShape, lo: f64, hi: f64) -> ImageGrid {
    let cols = shape.cols();
    if cols == 1 {
        return ImageGrid::constant(shape, lo);
    }
    let step = (hi - lo) / (cols - 1) as f64;
    ImageGrid::from_fn(shape, |_, x| lo + step * x as f64)
}

/// Centered square mask covering approximately `area_fraction` of the
/// image. Errors unless `area_fraction` is in `(0, 1)` small enough to
/// leave undamaged pixels.
pub fn centered_box_mask(rows: usize, cols: usize, area_fraction: f64) -> Result<Mask> {
    if !(area_fraction > 0.0 && area_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "area fraction must lie in (0, 1), got {area_fraction}"
        )));
    }
    let side = ((rows * cols) as f64 * area_fraction).sqrt().round() as usize;
    let h = side.min(rows);
    let w = side.min(cols);
    let y0 = (rows - h) / 2;
    let x0 = (cols - w) / 2;
    box_mask(rows, cols, y0, x0, h, w)
}

/// Rectangular mask with top-left corner `(y0, x0)` and size `h x w`.
/// Errors if the box exceeds the grid or covers it entirely.
pub fn box_mask(
    rows: usize,
    cols: usize,
    y0: usize,
    x0: usize,
    h: usize,
    w: usize,
) -> Result<Mask> {
    if y0 + h > rows || x0 + w > cols {
        return Err(Error::InvalidParameter(format!(
            "box {h}x{w} at ({y0},{x0}) exceeds {rows}x{cols} grid"
        )));
    }
    Mask::from_fn(rows, cols, |y, x| {
        y >= y0 && y < y0 + h && x >= x0 && x < x0 + w
    })
}

/// Copy of `image` with damaged pixels replaced by `fill` — the observed
/// (damaged) input an inpainting run starts from.
pub fn apply_damage(image: &ImageGrid, mask: &Mask, fill: f64) -> Result<ImageGrid> {
    image.shape().check_dims(mask.dims())?;
    let mut out = image.clone();
    for ((y, x), v) in out.values_mut().indexed_iter_mut() {
        if mask.is_damaged(y, x) {
            *v = fill;
        }
    }
    Ok(out)
}

/// Uniformly random image in `[0, 1)` from a fixed-seed generator.
pub fn random_image(shape: GridShape, seed: u64) -> ImageGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageGrid::from_fn(shape, |_, _| rng.gen::<f64>())
}

/// `image + amplitude * (uniform[0,1) - 1/2)`, seeded.
pub fn perturbed(image: &ImageGrid, amplitude: f64, seed: u64) -> ImageGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageGrid::new(
        image
            .values()
            .mapv(|v| v + amplitude * (rng.gen::<f64>() - 0.5)),
    )
}

/// Random mask damaging each pixel independently with probability `p`
/// (never all pixels; the generator is re-drawn if the sample degenerates,
/// which for any realistic grid is a theoretical corner only).
pub fn random_mask(rows: usize, cols: usize, p: f64, seed: u64) -> Result<Mask> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "damage probability must lie in [0, 1), got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let candidate = Array2::from_shape_fn((rows, cols), |_| rng.gen::<f64>() < p);
        if !candidate.iter().all(|&d| d) {
            return Mask::new(candidate);
        }
    }
    Err(Error::AllDamaged)
}
