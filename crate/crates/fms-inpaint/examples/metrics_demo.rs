//! Shows the three image-quality metrics on hand-checkable cases and on a
//! sequence of progressively noisier images.

use fms_inpaint::synthetic::{perturbed, smooth_bump};
use fms_inpaint::{metrics, GridShape, ImageGrid, Result};

fn main() -> Result<()> {
    // constant 0 vs constant 0.5 with peak 1: MSE = 1/4, PSNR = 10*log10(4)
    let zero = ImageGrid::constant(GridShape::unit(16, 16), 0.0);
    let half = ImageGrid::constant(GridShape::unit(16, 16), 0.5);
    println!(
        "PSNR(0, 0.5)            = {:.4} dB   (10*log10(4) = 6.0206)",
        metrics::psnr(&zero, &half, 1.0)?
    );

    // checkerboard +/-0.25 with +/-0.025 extra swing: variance ratio 100
    let shape = GridShape::unit(8, 8);
    let sign = |y: usize, x: usize| if (y + x) % 2 == 0 { 1.0 } else { -1.0 };
    let board = ImageGrid::from_fn(shape, |y, x| 0.5 + 0.25 * sign(y, x));
    let swung = ImageGrid::from_fn(shape, |y, x| 0.5 + 0.275 * sign(y, x));
    println!(
        "SNR(checkerboard case)  = {:.4} dB   (10*log10(100) = 20)",
        metrics::snr(&board, &swung)?
    );

    let bump = smooth_bump(GridShape::unit(64, 64));
    println!(
        "SSIM(u, u)              = {}        (identical images)",
        metrics::ssim(&bump, &bump)?
    );

    println!();
    println!("{:>10} {:>10} {:>10} {:>10}", "noise amp", "psnr (dB)", "snr (dB)", "ssim");
    for amp in [0.01, 0.05, 0.1, 0.2] {
        let noisy = perturbed(&bump, amp, 7);
        println!(
            "{:>10} {:>10.2} {:>10.2} {:>10.4}",
            amp,
            metrics::psnr(&bump, &noisy, 1.0)?,
            metrics::snr(&bump, &noisy)?,
            metrics::ssim(&bump, &noisy)?
        );
    }
    Ok(())
}
