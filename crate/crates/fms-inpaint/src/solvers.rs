//! The four inpainting models and the shared iteration driver.
//!
//! Every model advances `u_t = (regularizer) + lambda (f - u)` by one
//! semi-implicit convexity-splitting step: the stiff linear part is treated
//! implicitly and inverted coefficient-wise in the model's eigenbasis,
//! while the TV curvature and the fidelity term stay explicit. The models:
//!
//! * [`fms_step`] — fractional model
//!   `u_t = -mu (-Lap)^alpha u + div(grad u/|grad u|_delta) + lambda (f-u)`
//!   in the Neumann cosine basis, with splitting terms
//!   `C1 (-Lap)^(alpha/2)` and `C2` on both sides.
//! * [`cvms_step`] — the alpha-free variant with the biharmonic smoother
//!   `-mu Lap^2 u`, in the periodic DFT basis.
//! * [`tvl2_step`] / [`tvh1_step`] — second- and fourth-order TV flows,
//!   also periodic, sharing the same splitting machinery.
//!
//! [`run`] iterates a model from `U_0 = f` with relative-increment
//! stopping, per-iteration logging ([`RunLog`]), and divergence detection;
//! the iterate is never clamped during the run, only the returned image.

use ndarray::Zip;

use crate::error::{Error, Result};
use crate::fields::{curvature, energy, fidelity_field, grad_norm_sq, FidelityField, Mask};
use crate::grid::{GridShape, ImageGrid};
use crate::metrics;
use crate::spectral::{Basis, SpectralPlan};

/// Model selector for [`run`] and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Fractional fourth-order model (the main one); Neumann cosine basis.
    Fms,
    /// Convexity-split fourth-order variant; periodic DFT basis.
    Cvms,
    /// Second-order TV flow with L2 fidelity; periodic DFT basis.
    TvL2,
    /// Fourth-order TV flow (H^-1-type); periodic DFT basis.
    TvH1,
}

impl Model {
    pub fn basis(self) -> Basis {
        match self {
            Model::Fms => Basis::NeumannCosine,
            Model::Cvms | Model::TvL2 | Model::TvH1 => Basis::PeriodicDft,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Fms => "fms",
            Model::Cvms => "cvms",
            Model::TvL2 => "tvl2",
            Model::TvH1 => "tvh1",
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fms" => Ok(Model::Fms),
            "cvms" => Ok(Model::Cvms),
            "tvl2" => Ok(Model::TvL2),
            "tvh1" => Ok(Model::TvH1),
            other => Err(Error::InvalidParameter(format!(
                "unknown model '{other}' (expected fms, cvms, tvl2 or tvh1)"
            ))),
        }
    }
}

/// Time step, regularization, splitting, and stopping parameters.
///
/// [`ModelParams::default`] is the reference configuration
/// (`dt = 1`, `delta = 0.01`, `mu = 0.9`, `lambda0 = 250`,
/// `c1 = 1/delta = 100`, `c2 = 50`). Note that this default has
/// `c2 < lambda0`, which violates the boundedness-theorem hypothesis
/// `C2 > lambda0`; [`ModelParams::strict_theorem`] raises `c2` to satisfy
/// it. See [`ModelParams::satisfies_theorem_hypothesis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Time step `dt > 0`.
    pub dt: f64,
    /// TV regularization `delta > 0` in `sqrt(|grad u|^2 + delta^2)`.
    pub delta: f64,
    /// Smoothness weight `mu > 0`.
    pub mu: f64,
    /// Fidelity weight `lambda0 > 0` on undamaged pixels.
    pub lambda0: f64,
    /// Convexity-splitting constant for the gradient term, `c1 >= 0`.
    pub c1: f64,
    /// Convexity-splitting constant for the fidelity term, `c2 >= 0`.
    pub c2: f64,
    /// Fractional power `alpha` in `(0, 2]` (FMS only).
    pub alpha: f64,
    /// Iteration cap for [`run`].
    pub max_iter: usize,
    /// Relative-increment stopping threshold (`0` disables early stopping).
    pub rel_tol: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            dt: 1.0,
            delta: 0.01,
            mu: 0.9,
            lambda0: 250.0,
            c1: 100.0,
            c2: 50.0,
            alpha: 1.6,
            max_iter: 2000,
            rel_tol: 1e-6,
        }
    }
}

impl ModelParams {
    /// Default parameters with `c2` raised above `lambda0` so the
    /// boundedness-theorem hypothesis (`C1 >= 1/delta`, `C2 > lambda0`)
    /// holds.
    pub fn strict_theorem() -> Self {
        ModelParams {
            c2: 300.0,
            ..ModelParams::default()
        }
    }

    /// True when `c1 >= 1/delta` and `c2 > lambda0`.
    pub fn satisfies_theorem_hypothesis(&self) -> bool {
        self.c1 * self.delta >= 1.0 && self.c2 > self.lambda0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.delta > 0.0) {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if !(self.mu > 0.0) {
            return bad(format!("mu must be positive, got {}", self.mu));
        }
        if !(self.lambda0 > 0.0) {
            return bad(format!("lambda0 must be positive, got {}", self.lambda0));
        }
        if !(self.c1 >= 0.0) {
            return bad(format!("c1 must be nonnegative, got {}", self.c1));
        }
        if !(self.c2 >= 0.0) {
            return bad(format!("c2 must be nonnegative, got {}", self.c2));
        }
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return bad(format!("alpha must lie in (0, 2], got {}", self.alpha));
        }
        if !(self.rel_tol >= 0.0) {
            return bad(format!("rel_tol must be nonnegative, got {}", self.rel_tol));
        }
        Ok(())
    }
}

/// Why a [`run`] stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Relative increment fell below `rel_tol`.
    Converged,
    /// Iteration cap reached.
    MaxIter,
    /// A step produced nonfinite values; the last finite iterate is
    /// returned.
    Diverged,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StopReason::Converged => "converged",
            StopReason::MaxIter => "max-iter",
            StopReason::Diverged => "diverged",
        })
    }
}

/// Ground-truth comparison values, present when [`run`] was given one.
#[derive(Debug, Clone, Copy)]
pub struct IterationMetrics {
    pub psnr: f64,
    pub snr: f64,
    pub ssim: f64,
}

/// One iteration's observables: `k` is 1-based, the remaining fields
/// describe the iterate `U_k` produced by step `k` (`rel_increment` is
/// `|U_k - U_{k-1}| / |U_{k-1}|`).
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub k: usize,
    pub energy: f64,
    pub rel_increment: f64,
    pub grad_norm_sq: f64,
    pub metrics: Option<IterationMetrics>,
}

/// Per-iteration records (strictly ordered by `k`) plus the stop reason.
#[derive(Debug, Clone)]
pub struct RunLog {
    pub records: Vec<RunRecord>,
    pub stop_reason: StopReason,
}

impl RunLog {
    /// Number of completed (finite) iterations.
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn last_record(&self) -> Option<&RunRecord> {
        self.records.last()
    }
}

fn check_step_inputs(
    u_k: &ImageGrid,
    f: &ImageGrid,
    lam: &FidelityField,
    plan: &SpectralPlan,
    expected_basis: Basis,
) -> Result<GridShape> {
    let shape = u_k.shape();
    shape.check_dims(f.values().dim())?;
    shape.check_dims(lam.dims())?;
    plan.shape().check_dims(shape.dims())?;
    if plan.basis() != expected_basis {
        return Err(Error::InvalidParameter(format!(
            "{:?} plan passed to a step that requires {:?}",
            plan.basis(),
            expected_basis
        )));
    }
    Ok(shape)
}

/// Curvature plus fidelity forcing `kappa(u) + lambda (f - u)`.
fn forcing(u_k: &ImageGrid, f: &ImageGrid, lam: &FidelityField, delta: f64) -> Result<ImageGrid> {
    let mut r = curvature(u_k, delta)?;
    Zip::from(r.values_mut())
        .and(f.values())
        .and(u_k.values())
        .and(lam.values())
        .for_each(|r, &fv, &uv, &lv| *r += lv * (fv - uv));
    Ok(r)
}

/// One step of the fractional model in the Neumann cosine basis:
///
/// `u_hat+ = [(1/dt + C1 l^(a/2) + C2) u_hat + kappa_hat + fid_hat]
///           / [1/dt + mu l^a + C1 l^(a/2) + C2]`
///
/// per mode, where `l` is the Neumann eigenvalue grid. The plan must be
/// built with [`Basis::NeumannCosine`] and the same `alpha` as `p`.
pub fn fms_step(
    u_k: &ImageGrid,
    f: &ImageGrid,
    lam: &FidelityField,
    p: &ModelParams,
    plan: &SpectralPlan,
) -> Result<ImageGrid> {
    p.validate()?;
    check_step_inputs(u_k, f, lam, plan, Basis::NeumannCosine)?;
    if plan.alpha() != p.alpha {
        return Err(Error::InvalidParameter(format!(
            "plan alpha {} does not match params alpha {}",
            plan.alpha(),
            p.alpha
        )));
    }
    let r_hat = plan.forward(&forcing(u_k, f, lam, p.delta)?)?;
    let mut u_hat = plan.forward(u_k)?;
    let inv_dt = 1.0 / p.dt;
    Zip::from(u_hat.values_mut())
        .and(r_hat.values())
        .and(plan.lambda_half_alpha())
        .and(plan.lambda_alpha())
        .for_each(|u, &r, &lh, &la| {
            let a = inv_dt + p.c1 * lh + p.c2;
            *u = (*u * a + r) / (a + p.mu * la);
        });
    plan.inverse(&u_hat)
}

/// One step of the alpha-free fourth-order variant in the DFT basis:
///
/// `u_hat+ = [(1/dt - C1 L + C2) u_hat + kappa_hat + fid_hat]
///           / [1/dt - (mu + C1) L + C2]`
///
/// with `L <= 0` the periodic five-point symbol (the plan stores `-L`).
pub fn cvms_step(
    u_k: &ImageGrid,
    f: &ImageGrid,
    lam: &FidelityField,
    p: &ModelParams,
    plan: &SpectralPlan,
) -> Result<ImageGrid> {
    p.validate()?;
    check_step_inputs(u_k, f, lam, plan, Basis::PeriodicDft)?;
    let r_hat = plan.forward(&forcing(u_k, f, lam, p.delta)?)?;
    let mut u_hat = plan.forward(u_k)?;
    let inv_dt = 1.0 / p.dt;
    Zip::from(u_hat.values_mut())
        .and(r_hat.values())
        .and(plan.lambda_grid())
        .for_each(|u, &r, &l| {
            let a = inv_dt + p.c1 * l + p.c2;
            *u = (*u * a + r) / (a + p.mu * l);
        });
    plan.inverse(&u_hat)
}

/// One step of the second-order TV-L2 flow in the DFT basis:
///
/// `(1/dt - C1 L) u_hat+ = u_hat/dt - C1 L u_hat + kappa_hat + fid_hat`.
pub fn tvl2_step(
    u_k: &ImageGrid,
    f: &ImageGrid,
    lam: &FidelityField,
    p: &ModelParams,
    plan: &SpectralPlan,
) -> Result<ImageGrid> {
    p.validate()?;
    check_step_inputs(u_k, f, lam, plan, Basis::PeriodicDft)?;
    let r_hat = plan.forward(&forcing(u_k, f, lam, p.delta)?)?;
    let mut u_hat = plan.forward(u_k)?;
    let inv_dt = 1.0 / p.dt;
    Zip::from(u_hat.values_mut())
        .and(r_hat.values())
        .and(plan.lambda_grid())
        .for_each(|u, &r, &l| {
            let a = inv_dt + p.c1 * l;
            *u = (*u * a + r) / a;
        });
    plan.inverse(&u_hat)
}

/// One step of the fourth-order TV-H^-1-type flow in the DFT basis:
///
/// `(1/dt + C1 L^2) u_hat+ = u_hat/dt + C1 L^2 u_hat + (-L) kappa_hat
///                           + fid_hat`,
///
/// the `-Lap kappa` term applied spectrally.
pub fn tvh1_step(
    u_k: &ImageGrid,
    f: &ImageGrid,
    lam: &FidelityField,
    p: &ModelParams,
    plan: &SpectralPlan,
) -> Result<ImageGrid> {
    p.validate()?;
    let shape = check_step_inputs(u_k, f, lam, plan, Basis::PeriodicDft)?;
    let kappa_hat = plan.forward(&curvature(u_k, p.delta)?)?;
    let mut fid = ImageGrid::constant(shape, 0.0);
    Zip::from(fid.values_mut())
        .and(f.values())
        .and(u_k.values())
        .and(lam.values())
        .for_each(|o, &fv, &uv, &lv| *o = lv * (fv - uv));
    let fid_hat = plan.forward(&fid)?;
    let mut u_hat = plan.forward(u_k)?;
    let inv_dt = 1.0 / p.dt;
    Zip::from(u_hat.values_mut())
        .and(kappa_hat.values())
        .and(fid_hat.values())
        .and(plan.lambda_grid())
        .for_each(|u, &kh, &fh, &l| {
            let a = inv_dt + p.c1 * l * l;
            *u = (*u * a + kh * l + fh) / a;
        });
    plan.inverse(&u_hat)
}

/// Iterates `model` from `U_0 = f` until the relative increment drops
/// below `p.rel_tol`, `p.max_iter` steps complete, or a step goes
/// nonfinite. Returns the final iterate clamped to `[0, 1]` (the iteration
/// itself is never clamped) and the per-iteration log; when `ground_truth`
/// is given, each record also carries PSNR/SNR/SSIM against it.
pub fn run(
    model: Model,
    f: &ImageGrid,
    mask: &Mask,
    p: &ModelParams,
    ground_truth: Option<&ImageGrid>,
) -> Result<(ImageGrid, RunLog)> {
    p.validate()?;
    f.shape().check_dims(mask.dims())?;
    if let Some(gt) = ground_truth {
        f.shape().check_dims(gt.values().dim())?;
    }
    let lam = fidelity_field(mask, p.lambda0)?;
    let plan_alpha = match model {
        Model::Fms => p.alpha,
        _ => 2.0,
    };
    let plan = SpectralPlan::new(f.shape(), model.basis(), plan_alpha)?;

    let mut u = f.clone();
    let mut records = Vec::new();
    let mut stop_reason = StopReason::MaxIter;
    for k in 1..=p.max_iter {
        let next = match model {
            Model::Fms => fms_step(&u, f, &lam, p, &plan)?,
            Model::Cvms => cvms_step(&u, f, &lam, p, &plan)?,
            Model::TvL2 => tvl2_step(&u, f, &lam, p, &plan)?,
            Model::TvH1 => tvh1_step(&u, f, &lam, p, &plan)?,
        };
        if !next.is_finite() {
            stop_reason = StopReason::Diverged;
            break;
        }
        let dist = next.l2_distance(&u)?;
        let norm = u.l2_norm();
        let rel_increment = if norm > 0.0 {
            dist / norm
        } else if dist == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let metrics = ground_truth.map(|gt| IterationMetrics {
            psnr: metrics::psnr(gt, &next, 1.0).unwrap_or(f64::NAN),
            snr: metrics::snr(gt, &next).unwrap_or(f64::NAN),
            ssim: metrics::ssim(gt, &next).unwrap_or(f64::NAN),
        });
        records.push(RunRecord {
            k,
            energy: energy(&next, f, &lam, p.mu, p.delta, &plan)?,
            rel_increment,
            grad_norm_sq: grad_norm_sq(&next),
            metrics,
        });
        u = next;
        if rel_increment < p.rel_tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }
    let log = RunLog {
        records,
        stop_reason,
    };
    Ok((u.clamped(0.0, 1.0), log))
}
