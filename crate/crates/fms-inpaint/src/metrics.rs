//! Image quality metrics: PSNR, SNR, and SSIM.
//!
//! All three operate on `f64` intensities with the convention that images
//! live on `[0, 1]` (PSNR takes an explicit peak, so 8-bit-scaled data gives
//! identical values with `peak = 255`). PSNR and SNR return `+inf` as the
//! "identical" sentinel rather than erroring; SNR on a constant reference
//! is genuinely undefined and errors. SSIM uses the standard 11x11 Gaussian
//! window with sigma 1.5 and K1 = 0.01, K2 = 0.03 on dynamic range 1.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::grid::ImageGrid;

/// Final-run summary bundling the three metrics with run bookkeeping.
#[derive(Debug, Clone)]
pub struct MetricsReport {
    /// Peak signal-to-noise ratio in dB (`+inf` when identical).
    pub psnr: f64,
    /// Signal-to-noise ratio in dB (`+inf` for zero noise, NaN if undefined).
    pub snr: f64,
    /// Structural similarity in `[-1, 1]` (NaN if the image is too small).
    pub ssim: f64,
    /// Iterations the producing run took.
    pub iterations: usize,
    /// Wall-clock seconds of the producing run (informational; never part
    /// of deterministic file output).
    pub wall_time: f64,
}

impl MetricsReport {
    /// Compares `test` against `reference`, mapping degenerate-input errors
    /// to NaN so a report can always be formed.
    pub fn compare(
        reference: &ImageGrid,
        test: &ImageGrid,
        iterations: usize,
        wall_time: f64,
    ) -> Result<Self> {
        let psnr_db = psnr(reference, test, 1.0)?;
        let snr_db = match snr(reference, test) {
            Ok(v) => v,
            Err(Error::DegenerateInput(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        let ssim_val = match ssim(reference, test) {
            Ok(v) => v,
            Err(Error::ImageTooSmall(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        Ok(MetricsReport {
            psnr: psnr_db,
            snr: snr_db,
            ssim: ssim_val,
            iterations,
            wall_time,
        })
    }
}

impl std::fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "psnr {:.4} dB, snr {:.4} dB, ssim {:.6} ({} iterations, {:.2} s)",
            self.psnr, self.snr, self.ssim, self.iterations, self.wall_time
        )
    }
}

fn mse(reference: &ImageGrid, test: &ImageGrid) -> Result<f64> {
    reference.shape().check_dims(test.values().dim())?;
    let n = reference.shape().len() as f64;
    let sum: f64 = reference
        .values()
        .iter()
        .zip(test.values())
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum();
    Ok(sum / n)
}

/// Peak signal-to-noise ratio `10 log10(peak^2 / MSE)` in dB.
///
/// Identical images give `+inf` (zero MSE is a sentinel, not an error).
pub fn psnr(reference: &ImageGrid, test: &ImageGrid, peak: f64) -> Result<f64> {
    if !(peak > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "peak must be positive, got {peak}"
        )));
    }
    let m = mse(reference, test)?;
    if m == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (peak * peak / m).log10())
}

/// Signal-to-noise ratio `10 log10(var(reference) / var(reference - test))`
/// in dB, with population variances about the mean.
///
/// Zero noise variance (e.g. `test = reference + const`) gives `+inf`;
/// a constant reference makes the ratio undefined and errors.
pub fn snr(reference: &ImageGrid, test: &ImageGrid) -> Result<f64> {
    reference.shape().check_dims(test.values().dim())?;
    let n = reference.shape().len() as f64;
    let ref_mean = reference.mean();
    let var_ref: f64 = reference
        .values()
        .iter()
        .map(|v| {
            let d = v - ref_mean;
            d * d
        })
        .sum::<f64>()
        / n;
    if var_ref == 0.0 {
        return Err(Error::DegenerateInput(
            "SNR is undefined for a constant reference image".into(),
        ));
    }
    let noise_mean = (reference.values() - test.values()).mean().unwrap_or(0.0);
    let var_noise: f64 = reference
        .values()
        .iter()
        .zip(test.values())
        .map(|(a, b)| {
            let d = (a - b) - noise_mean;
            d * d
        })
        .sum::<f64>()
        / n;
    if var_noise == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (var_ref / var_noise).log10())
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;

fn gaussian_window() -> [f64; SSIM_WINDOW] {
    let mut w = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (i, v) in w.iter_mut().enumerate() {
        let d = i as f64 - c;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
        sum += *v;
    }
    for v in &mut w {
        *v /= sum;
    }
    w
}

/// Separable "valid" convolution with a symmetric 1-D kernel: output is
/// `(rows - 10) x (cols - 10)`.
fn conv_valid(img: &Array2<f64>, k: &[f64; SSIM_WINDOW]) -> Array2<f64> {
    let (rows, cols) = img.dim();
    let (out_r, out_c) = (rows - SSIM_WINDOW + 1, cols - SSIM_WINDOW + 1);
    // Horizontal pass.
    let mut h = Array2::zeros((rows, out_c));
    for y in 0..rows {
        for x in 0..out_c {
            let mut acc = 0.0;
            for (t, kv) in k.iter().enumerate() {
                acc += kv * img[[y, x + t]];
            }
            h[[y, x]] = acc;
        }
    }
    // Vertical pass.
    let mut out = Array2::zeros((out_r, out_c));
    for y in 0..out_r {
        for x in 0..out_c {
            let mut acc = 0.0;
            for (t, kv) in k.iter().enumerate() {
                acc += kv * h[[y + t, x]];
            }
            out[[y, x]] = acc;
        }
    }
    out
}

/// Mean structural similarity with the standard 11x11 Gaussian window
/// (sigma 1.5), `K1 = 0.01`, `K2 = 0.03`, dynamic range 1.
///
/// Errors if either dimension is smaller than the window.
pub fn ssim(reference: &ImageGrid, test: &ImageGrid) -> Result<f64> {
    reference.shape().check_dims(test.values().dim())?;
    let (rows, cols) = reference.shape().dims();
    if rows < SSIM_WINDOW || cols < SSIM_WINDOW {
        return Err(Error::ImageTooSmall(format!(
            "ssim needs at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {rows}x{cols}"
        )));
    }
    let k = gaussian_window();
    let a = reference.values();
    let b = test.values();
    let mu1 = conv_valid(a, &k);
    let mu2 = conv_valid(b, &k);
    let m11 = conv_valid(&(a * a), &k);
    let m22 = conv_valid(&(b * b), &k);
    let m12 = conv_valid(&(a * b), &k);

    let c1 = SSIM_K1 * SSIM_K1;
    let c2 = SSIM_K2 * SSIM_K2;
    let mut total = 0.0;
    for (((&u1, &u2), &s11), (&s22, &s12)) in mu1
        .iter()
        .zip(mu2.iter())
        .zip(m11.iter())
        .zip(m22.iter().zip(m12.iter()))
    {
        let var1 = s11 - u1 * u1;
        let var2 = s22 - u2 * u2;
        let cov = s12 - u1 * u2;
        let num = (2.0 * u1 * u2 + c1) * (2.0 * cov + c2);
        let den = (u1 * u1 + u2 * u2 + c1) * (var1 + var2 + c2);
        total += num / den;
    }
    Ok(total / mu1.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridShape;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(rows: usize, cols: usize, seed: u64) -> ImageGrid {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ImageGrid::from_fn(GridShape::unit(rows, cols), |_, _| rng.gen::<f64>())
    }

    #[test]
    fn psnr_of_identical_images_is_infinite() {
        let a = random_image(8, 8, 1);
        assert_eq!(psnr(&a, &a, 1.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_of_half_gray_offset() {
        let shape = GridShape::unit(16, 16);
        let zero = ImageGrid::constant(shape, 0.0);
        let half = ImageGrid::constant(shape, 0.5);
        // MSE = 0.25 => 10 log10(4) = 6.0206 dB.
        let v = psnr(&zero, &half, 1.0).unwrap();
        assert!((v - 10.0 * 4.0f64.log10()).abs() < 1e-12);
        assert!((v - 6.0206).abs() < 1e-3);
    }

    #[test]
    fn psnr_of_uniform_tenth_offset_is_twenty() {
        let a = random_image(8, 8, 2);
        let b = ImageGrid::new(a.values().mapv(|v| v + 0.1));
        let v = psnr(&a, &b, 1.0).unwrap();
        assert!((v - 20.0).abs() < 1e-9);
    }

    #[test]
    fn psnr_rejects_bad_peak_and_shapes() {
        let a = random_image(4, 4, 3);
        let b = random_image(4, 5, 3);
        assert!(psnr(&a, &b, 1.0).is_err());
        assert!(psnr(&a, &a, 0.0).is_err());
    }

    #[test]
    fn psnr_ordering_matches_mse_ordering() {
        let a = random_image(12, 12, 4);
        let noisy = ImageGrid::new(a.values().mapv(|v| v + 0.08));
        let less_noisy = ImageGrid::new(a.values().mapv(|v| v + 0.02));
        assert!(psnr(&a, &less_noisy, 1.0).unwrap() > psnr(&a, &noisy, 1.0).unwrap());
    }

    #[test]
    fn snr_constant_shift_is_infinite() {
        // Dyadic intensities keep the shift exact in floating point, so
        // the noise is exactly constant and its variance exactly zero.
        let a = crate::synthetic::stripes(GridShape::unit(8, 8), 2, 0.25, 0.5);
        let b = ImageGrid::new(a.values().mapv(|v| v + 0.25));
        assert_eq!(snr(&a, &b).unwrap(), f64::INFINITY);
    }

    #[test]
    fn snr_checkerboard_case_is_twenty() {
        // Reference +-1 checkerboard (variance 1), aligned +-0.1 noise
        // checkerboard (variance 0.01): 10 log10(100) = 20 dB.
        let shape = GridShape::unit(16, 16);
        let sign = |y: usize, x: usize| if (y + x) % 2 == 0 { 1.0 } else { -1.0 };
        let reference = ImageGrid::from_fn(shape, |y, x| sign(y, x));
        let test = ImageGrid::from_fn(shape, |y, x| sign(y, x) * 1.1);
        let v = snr(&reference, &test).unwrap();
        assert!((v - 20.0).abs() < 1e-6, "snr = {v}");
    }

    #[test]
    fn snr_errors_on_constant_reference() {
        let shape = GridShape::unit(8, 8);
        let a = ImageGrid::constant(shape, 0.5);
        let b = random_image(8, 8, 6);
        assert!(matches!(snr(&a, &b), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn ssim_of_identical_images_is_exactly_one() {
        let a = random_image(16, 20, 7);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn ssim_is_symmetric() {
        let a = random_image(14, 14, 8);
        let b = random_image(14, 14, 9);
        let ab = ssim(&a, &b).unwrap();
        let ba = ssim(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-12);
    }

    #[test]
    fn ssim_of_inverted_binary_image_is_small() {
        // Two-tone stripes against their inversion: strong structural
        // anti-correlation, far below any similarity threshold.
        let shape = GridShape::unit(16, 16);
        let a = ImageGrid::from_fn(shape, |_, x| if (x / 4) % 2 == 0 { 1.0 } else { 0.0 });
        let b = ImageGrid::new(a.values().mapv(|v| 1.0 - v));
        let v = ssim(&a, &b).unwrap();
        assert!(v < 0.05, "ssim = {v}");
    }

    #[test]
    fn ssim_near_one_for_tiny_noise() {
        let a = random_image(16, 16, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = ImageGrid::new(a.values().mapv(|v| v + 1e-6 * (rng.gen::<f64>() - 0.5)));
        assert!(ssim(&a, &b).unwrap() > 0.9999);
    }

    #[test]
    fn ssim_rejects_small_images() {
        let a = random_image(10, 16, 12);
        let b = random_image(10, 16, 13);
        assert!(matches!(ssim(&a, &b), Err(Error::ImageTooSmall(_))));
    }

    #[test]
    fn metrics_are_flip_invariant() {
        let a = random_image(16, 16, 14);
        let b = random_image(16, 16, 15);
        let flip = |img: &ImageGrid| {
            let v = img.values();
            let (r, c) = v.dim();
            ImageGrid::new(Array2::from_shape_fn((r, c), |(y, x)| {
                v[[r - 1 - y, c - 1 - x]]
            }))
        };
        let (af, bf) = (flip(&a), flip(&b));
        assert!((psnr(&a, &b, 1.0).unwrap() - psnr(&af, &bf, 1.0).unwrap()).abs() < 1e-12);
        assert!((snr(&a, &b).unwrap() - snr(&af, &bf).unwrap()).abs() < 1e-12);
        assert!((ssim(&a, &b).unwrap() - ssim(&af, &bf).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn report_maps_degenerate_snr_to_nan() {
        let shape = GridShape::unit(16, 16);
        let a = ImageGrid::constant(shape, 0.5);
        let b = random_image(16, 16, 16);
        let r = MetricsReport::compare(&a, &b, 10, 0.5).unwrap();
        assert!(r.snr.is_nan());
        assert!(r.psnr.is_finite());
        assert!(r.ssim.is_finite());
    }
}
