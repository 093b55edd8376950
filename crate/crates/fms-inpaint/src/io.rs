//! File plumbing: PNG/PGM images in and out, mask loading, CSV logs and
//! sweep tables, study report files, and the end-to-end inpainting job
//! used by the command-line driver.
//!
//! Intensities are normalized to `[0, 1]` on load (8-bit by 255, 16-bit
//! by 65535; color collapsed with the 0.299/0.587/0.114 luminance
//! weights) and quantized back to 8-bit on save. All CSV output formats
//! floats with Rust's shortest-roundtrip `Display`, so identical runs
//! produce byte-identical files.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use image::{DynamicImage, GrayImage, ImageReader, Luma};
use ndarray::Array2;

use crate::error::{Error, Result};
use crate::fields::Mask;
use crate::grid::ImageGrid;
use crate::metrics::MetricsReport;
use crate::solvers::{run, Model, ModelParams, RunLog, StopReason};
use crate::verify::{AlphaRow, StudyReport};

fn luminance(r: f64, g: f64, b: f64) -> f64 {
    0.299 * r + 0.587 * g + 0.114 * b
}

/// Reads an 8- or 16-bit grayscale (or color, via luminance) PNG/PGM
/// image into `[0, 1]` intensities.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageGrid> {
    let img = ImageReader::open(path)?.decode()?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let arr = match img {
        DynamicImage::ImageLuma8(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            im.get_pixel(x as u32, y as u32).0[0] as f64 / 255.0
        }),
        DynamicImage::ImageLumaA8(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            im.get_pixel(x as u32, y as u32).0[0] as f64 / 255.0
        }),
        DynamicImage::ImageLuma16(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            im.get_pixel(x as u32, y as u32).0[0] as f64 / 65535.0
        }),
        DynamicImage::ImageLumaA16(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            im.get_pixel(x as u32, y as u32).0[0] as f64 / 65535.0
        }),
        DynamicImage::ImageRgb8(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            let p = im.get_pixel(x as u32, y as u32).0;
            luminance(
                p[0] as f64 / 255.0,
                p[1] as f64 / 255.0,
                p[2] as f64 / 255.0,
            )
        }),
        DynamicImage::ImageRgba8(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            let p = im.get_pixel(x as u32, y as u32).0;
            luminance(
                p[0] as f64 / 255.0,
                p[1] as f64 / 255.0,
                p[2] as f64 / 255.0,
            )
        }),
        DynamicImage::ImageRgb16(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            let p = im.get_pixel(x as u32, y as u32).0;
            luminance(
                p[0] as f64 / 65535.0,
                p[1] as f64 / 65535.0,
                p[2] as f64 / 65535.0,
            )
        }),
        DynamicImage::ImageRgba16(im) => Array2::from_shape_fn((h, w), |(y, x)| {
            let p = im.get_pixel(x as u32, y as u32).0;
            luminance(
                p[0] as f64 / 65535.0,
                p[1] as f64 / 65535.0,
                p[2] as f64 / 65535.0,
            )
        }),
        other => {
            let rgb = other.to_rgb32f();
            Array2::from_shape_fn((h, w), |(y, x)| {
                let p = rgb.get_pixel(x as u32, y as u32).0;
                luminance(p[0] as f64, p[1] as f64, p[2] as f64)
            })
        }
    };
    Ok(ImageGrid::new(arr))
}

/// Clamps to `[0, 1]`, quantizes to 8-bit, and writes the format implied
/// by the extension (`.png` or `.pgm`, the latter as binary P5).
pub fn save_image(grid: &ImageGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let (rows, cols) = grid.shape().dims();
    let mut out = GrayImage::new(cols as u32, rows as u32);
    for ((y, x), &v) in grid.values().indexed_iter() {
        let q = (v.clamp(0.0, 1.0) * 255.0).round() as u8;
        out.put_pixel(x as u32, y as u32, Luma([q]));
    }
    let is_pnm = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("pnm"));
    if is_pnm {
        // The default PNM writer picks the ASCII subtype; force raw P5.
        use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
        use image::ImageEncoder;
        let file = BufWriter::new(File::create(path)?);
        let encoder = PnmEncoder::new(file)
            .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary));
        encoder.write_image(
            out.as_raw(),
            cols as u32,
            rows as u32,
            image::ExtendedColorType::L8,
        )?;
    } else {
        out.save(path)?;
    }
    Ok(())
}

/// Loads a mask image whose dimensions must match `dims = (rows, cols)`:
/// pixels brighter than 0.5 mark the damaged region. Rejects an
/// all-damaged mask.
pub fn load_mask(path: impl AsRef<Path>, dims: (usize, usize)) -> Result<Mask> {
    let img = load_image(path)?;
    if img.shape().dims() != dims {
        return Err(Error::shape_mismatch(dims, img.shape().dims()));
    }
    Mask::new(img.values().mapv(|v| v > 0.5))
}

/// Writes the per-iteration CSV log; the metric columns appear exactly
/// when the run was scored against a ground truth.
pub fn write_run_log<W: Write>(mut w: W, log: &RunLog) -> Result<()> {
    let with_metrics = log.records.first().is_some_and(|r| r.metrics.is_some());
    if with_metrics {
        writeln!(w, "k,energy,rel_increment,grad_norm_sq,psnr,snr,ssim")?;
    } else {
        writeln!(w, "k,energy,rel_increment,grad_norm_sq")?;
    }
    for r in &log.records {
        match &r.metrics {
            Some(m) => writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.k, r.energy, r.rel_increment, r.grad_norm_sq, m.psnr, m.snr, m.ssim
            )?,
            None => writeln!(
                w,
                "{},{},{},{}",
                r.k, r.energy, r.rel_increment, r.grad_norm_sq
            )?,
        }
    }
    Ok(())
}

pub fn save_run_log(path: impl AsRef<Path>, log: &RunLog) -> Result<()> {
    write_run_log(BufWriter::new(File::create(path)?), log)
}

/// Writes a fractional-power sweep as `alpha,psnr,snr,ssim,iterations`.
pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[AlphaRow]) -> Result<()> {
    writeln!(w, "alpha,psnr,snr,ssim,iterations")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.alpha, r.psnr, r.snr, r.ssim, r.iterations
        )?;
    }
    Ok(())
}

pub fn save_sweep_csv(path: impl AsRef<Path>, rows: &[AlphaRow]) -> Result<()> {
    write_sweep_csv(BufWriter::new(File::create(path)?), rows)
}

/// Writes a study's measurements as
/// `name,value,lower,upper,informational,pass`.
pub fn write_study_csv<W: Write>(mut w: W, report: &StudyReport) -> Result<()> {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    writeln!(w, "name,value,lower,upper,informational,pass")?;
    for m in &report.measurements {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            m.name,
            m.value,
            opt(m.lower),
            opt(m.upper),
            m.informational,
            m.passes()
        )?;
    }
    Ok(())
}

/// Writes `<study>.csv` (measurements) and `<study>.txt` (the rendered
/// report) under `dir`, creating it if needed; returns both paths.
pub fn save_study_report(dir: impl AsRef<Path>, report: &StudyReport) -> Result<(PathBuf, PathBuf)> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{}.csv", report.study));
    let txt_path = dir.join(format!("{}.txt", report.study));
    write_study_csv(BufWriter::new(File::create(&csv_path)?), report)?;
    let mut txt = BufWriter::new(File::create(&txt_path)?);
    writeln!(txt, "{report}")?;
    Ok((csv_path, txt_path))
}

/// A complete inpainting job: which model, which files, which parameters.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub model: Model,
    pub input_path: PathBuf,
    pub mask_path: PathBuf,
    pub output_path: PathBuf,
    pub ground_truth_path: Option<PathBuf>,
    pub log_path: Option<PathBuf>,
    pub params: ModelParams,
}

/// What a job produced, for the one-line summary and the exit code.
#[derive(Debug, Clone)]
pub struct JobSummary {
    pub stop_reason: StopReason,
    pub iterations: usize,
    pub final_rel_increment: f64,
    pub final_energy: f64,
    /// Scores against the ground truth, when one was supplied.
    pub metrics: Option<MetricsReport>,
}

/// Loads the inputs, runs the model, writes the restored image and the
/// optional CSV log. Input and mask are read before any iteration
/// starts, so path problems surface immediately.
pub fn execute_job(cfg: &JobConfig) -> Result<JobSummary> {
    cfg.params.validate()?;
    let f = load_image(&cfg.input_path)?;
    let mask = load_mask(&cfg.mask_path, f.shape().dims())?;
    let ground_truth = match &cfg.ground_truth_path {
        Some(p) => Some(load_image(p)?),
        None => None,
    };
    let started = Instant::now();
    let (out, log) = run(cfg.model, &f, &mask, &cfg.params, ground_truth.as_ref())?;
    let wall_time = started.elapsed().as_secs_f64();
    save_image(&out, &cfg.output_path)?;
    if let Some(log_path) = &cfg.log_path {
        save_run_log(log_path, &log)?;
    }
    let metrics = match &ground_truth {
        Some(gt) => Some(MetricsReport::compare(gt, &out, log.iterations(), wall_time)?),
        None => None,
    };
    Ok(JobSummary {
        stop_reason: log.stop_reason,
        iterations: log.iterations(),
        final_rel_increment: log.last_record().map_or(0.0, |r| r.rel_increment),
        final_energy: log.last_record().map_or(f64::NAN, |r| r.energy),
        metrics,
    })
}
