//! Acceptance gate: one test per shipped acceptance criterion.
//!
//! Each test prints exactly one line
//!
//! ```text
//! acceptance N (<slug>): PASS|FAIL — <measured values>
//! ```
//!
//! before asserting, so `cargo test --test acceptance -- --nocapture` gives a
//! criterion-by-criterion scoreboard. Two criteria (7 and 8) pin the
//! reference parameter set (dt = 1, lambda0 = 250, C2 = 50), which violates
//! the linear stability bound lambda0*dt < 2*(1 + C2*dt) of the splitting;
//! those runs diverge and the tests fail with the measured values rather
//! than being weakened. See README "Parameter stability".

use std::time::Instant;

use fms_inpaint::fields::fidelity_field;
use fms_inpaint::solvers::{self, cvms_step, fms_step, tvh1_step, tvl2_step};
use fms_inpaint::synthetic::{self, Problem};
use fms_inpaint::verify::{self, oracle};
use fms_inpaint::{
    metrics, Basis, GridShape, ImageGrid, Mask, Model, ModelParams, SpectralPlan, StopReason,
};

fn report(n: usize, slug: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {n} ({slug}): {verdict} — {detail}");
    assert!(pass, "acceptance {n} ({slug}): {detail}");
}

#[test]
fn acceptance_01_transform_roundtrip() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for &(rows, cols) in &[(2, 3), (8, 8), (16, 12), (31, 33), (48, 64), (64, 64)] {
        let shape = GridShape::unit(rows, cols);
        let u = synthetic::random_image(shape, 7 + rows as u64 * 1000 + cols as u64);
        for basis in [Basis::NeumannCosine, Basis::PeriodicDft] {
            let plan = SpectralPlan::new(shape, basis, 1.6).unwrap();
            let back = plan.inverse(&plan.forward(&u).unwrap()).unwrap();
            let err = (back.values() - u.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            worst = worst.max(err / (1e-10 * u.max_abs()));
        }
    }
    let dt = start.elapsed().as_secs_f64();
    report(
        1,
        "transform-roundtrip",
        worst < 1.0 && dt < 1.0,
        &format!("worst error {:.3}x the 1e-10*max|u| budget, {dt:.2} s (< 1 s)", worst),
    );
}

#[test]
fn acceptance_02_fractional_operator_oracle() {
    let start = Instant::now();
    let shape = GridShape::unit(8, 8);
    let u = synthetic::random_image(shape, 42);
    let mut worst = 0.0_f64;
    for alpha in [0.5, 1.0, 1.4, 2.0] {
        let plan = SpectralPlan::new(shape, Basis::NeumannCosine, alpha).unwrap();
        let fast = fms_inpaint::spectral::apply_fractional_laplacian(&plan, &u).unwrap();
        let dense = oracle::dense_fractional_laplacian(&u, alpha).unwrap();
        let err = (fast.values() - dense.values())
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        worst = worst.max(err);
    }
    let dt = start.elapsed().as_secs_f64();
    report(
        2,
        "fractional-operator-oracle",
        worst < 1e-8 && dt < 1.0,
        &format!("max abs error {worst:.3e} (< 1e-8) over alpha in {{0.5,1,1.4,2}}, {dt:.2} s (< 1 s)"),
    );
}

#[test]
fn acceptance_03_stepper_oracles() {
    let start = Instant::now();
    let shape = GridShape::unit(16, 16);
    let u = synthetic::random_image(shape, 11);
    let f = synthetic::random_image(shape, 12);
    let mask = synthetic::random_mask(16, 16, 0.3, 13).unwrap();
    let mut worst = 0.0_f64;
    let mut lines = Vec::new();

    let mut check = |name: &str, got: ImageGrid, want: ImageGrid| {
        let num = (got.values() - want.values()).mapv(|v| v * v).sum().sqrt();
        let den = want.values().mapv(|v| v * v).sum().sqrt();
        let rel = num / den;
        worst = worst.max(rel);
        lines.push(format!("{name} {rel:.2e}"));
    };

    for alpha in [1.4, 2.0] {
        let p = ModelParams { alpha, ..ModelParams::default() };
        let lam = fidelity_field(&mask, p.lambda0).unwrap();
        let plan = SpectralPlan::new(shape, Basis::NeumannCosine, alpha).unwrap();
        check(
            &format!("fms(a={alpha})"),
            fms_step(&u, &f, &lam, &p, &plan).unwrap(),
            oracle::dense_fms_step(&u, &f, &lam, &p).unwrap(),
        );
    }
    let p = ModelParams::default();
    let lam = fidelity_field(&mask, p.lambda0).unwrap();
    let plan = SpectralPlan::new(shape, Basis::PeriodicDft, 2.0).unwrap();
    check(
        "cvms",
        cvms_step(&u, &f, &lam, &p, &plan).unwrap(),
        oracle::dense_cvms_step(&u, &f, &lam, &p).unwrap(),
    );
    check(
        "tvl2",
        tvl2_step(&u, &f, &lam, &p, &plan).unwrap(),
        oracle::dense_tvl2_step(&u, &f, &lam, &p).unwrap(),
    );
    check(
        "tvh1",
        tvh1_step(&u, &f, &lam, &p, &plan).unwrap(),
        oracle::dense_tvh1_step(&u, &f, &lam, &p).unwrap(),
    );

    let dt = start.elapsed().as_secs_f64();
    report(
        3,
        "stepper-oracles",
        worst < 1e-8 && dt < 10.0,
        &format!("relative errors: {} (< 1e-8), {dt:.2} s (< 10 s)", lines.join(", ")),
    );
}

#[test]
fn acceptance_04_constant_fixed_point() {
    let shape = GridShape::unit(16, 16);
    let c = 0.6;
    let u = ImageGrid::constant(shape, c);
    let masks = [
        Mask::none(16, 16),
        synthetic::centered_box_mask(16, 16, 0.3).unwrap(),
        synthetic::random_mask(16, 16, 0.4, 99).unwrap(),
    ];
    let mut worst = 0.0_f64;
    for model in [Model::Fms, Model::Cvms, Model::TvL2, Model::TvH1] {
        let p = ModelParams::default();
        let alpha = if model == Model::Fms { p.alpha } else { 2.0 };
        let plan = SpectralPlan::new(shape, model.basis(), alpha).unwrap();
        for mask in &masks {
            let lam = fidelity_field(mask, p.lambda0).unwrap();
            let next = match model {
                Model::Fms => fms_step(&u, &u, &lam, &p, &plan),
                Model::Cvms => cvms_step(&u, &u, &lam, &p, &plan),
                Model::TvL2 => tvl2_step(&u, &u, &lam, &p, &plan),
                Model::TvH1 => tvh1_step(&u, &u, &lam, &p, &plan),
            }
            .unwrap();
            let err = next.values().iter().fold(0.0_f64, |m, v| m.max((v - c).abs()));
            worst = worst.max(err);
        }
    }
    report(
        4,
        "constant-fixed-point",
        worst <= 1e-12,
        &format!("max per-step drift {worst:.3e} (<= 1e-12) over 4 models x 3 masks"),
    );
}

#[test]
fn acceptance_05_temporal_order() {
    let start = Instant::now();
    let dts = [0.2, 0.1, 0.05, 0.025];
    let mut pass = true;
    let mut lines = Vec::new();
    for model in [Model::Fms, Model::Cvms] {
        let rep = verify::temporal_order_study(model, Problem::SmoothBump, &dts).unwrap();
        pass &= rep.pass();
        let orders: Vec<String> = rep
            .measurements
            .iter()
            .filter(|m| m.name.starts_with("order_at"))
            .map(|m| format!("{:.3}", m.value))
            .collect();
        lines.push(format!("{model} p = [{}]", orders.join(", ")));
    }
    let dt = start.elapsed().as_secs_f64();
    pass &= dt < 30.0;
    report(
        5,
        "temporal-order",
        pass,
        &format!("{} (required in [0.8, 1.2]), {dt:.1} s (< 30 s)", lines.join("; ")),
    );
}

#[test]
fn acceptance_06_boundedness_strict_theorem() {
    let start = Instant::now();
    let rep = verify::boundedness_study(&ModelParams::strict_theorem()).unwrap();
    let worst = rep
        .measurements
        .iter()
        .filter(|m| !m.informational)
        .fold(0.0_f64, |m, x| m.max(x.value));
    let dt = start.elapsed().as_secs_f64();
    report(
        6,
        "boundedness-strict-theorem",
        rep.pass() && dt < 60.0,
        &format!(
            "max grad-energy growth ratio {worst:.3} (cap 1e3, finite, no NaN) for dt in {{0.1,1,10}} to T=100, {dt:.1} s (< 60 s)"
        ),
    );
}

#[test]
fn acceptance_07_alpha_trend_reference_params() {
    let start = Instant::now();
    let shape = GridShape::unit(256, 256);
    let truth = Problem::Ramp.image(shape);
    let mask = synthetic::centered_box_mask(256, 256, 0.2).unwrap();
    let rep = verify::alpha_trend_study_on(&truth, &mask, 1.0, &ModelParams::default()).unwrap();
    assert!(!rep.skipped, "trend study unexpectedly skipped");

    let get = |name: &str| {
        rep.measurements
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
            .unwrap_or(f64::NAN)
    };
    let finite = get("ramp_finite_run_fraction");
    let argmax = get("ramp_argmax_alpha");
    let gain = get("ramp_psnr_gain_over_alpha_1");
    let dt = start.elapsed().as_secs_f64();
    report(
        7,
        "alpha-trend-reference-params",
        rep.pass() && dt < 120.0,
        &format!(
            "finite runs {:.0}/6 (all six must finish finite for the PSNRs to mean anything), \
             argmax alpha = {argmax} (required strictly inside (1,2)), gain over alpha=1 = {gain:.2} dB \
             (required >= 1), {dt:.1} s (< 120 s); the reference parameters violate \
             lambda0*dt < 2*(1 + C2*dt) and every run diverges",
            finite * 6.0
        ),
    );
}

#[test]
fn acceptance_08_inpainting_efficacy_reference_params() {
    let start = Instant::now();
    let shape = GridShape::unit(128, 128);
    let truth = Problem::Stripe.image(shape);
    let mask = synthetic::centered_box_mask(128, 128, 0.2).unwrap();
    let damaged = synthetic::apply_damage(&truth, &mask, 0.5).unwrap();
    let psnr_in = metrics::psnr(&truth, &damaged, 1.0).unwrap();

    let p = ModelParams::default();
    let (out, log) = solvers::run(Model::Fms, &damaged, &mask, &p, Some(&truth)).unwrap();
    let psnr_out = metrics::psnr(&truth, &out, 1.0).unwrap();
    let ssim_out = metrics::ssim(&truth, &out).unwrap();
    let dt = start.elapsed().as_secs_f64();

    let pass = log.stop_reason != StopReason::Diverged
        && psnr_out - psnr_in >= 10.0
        && ssim_out > 0.9
        && dt < 60.0;
    report(
        8,
        "inpainting-efficacy-reference-params",
        pass,
        &format!(
            "stop={stop}, PSNR {psnr_in:.2} -> {psnr_out:.2} dB (gain {gain:.2}, required >= 10), \
             SSIM {ssim_out:.4} (required > 0.9), {dt:.1} s (< 60 s); the reference parameters \
             (dt=1, lambda0=250, C2=50) are outside the splitting's stability region — the same \
             problem under --strict-theorem (C2=300) reaches PSNR gain ~1.3 dB stably",
            stop = log.stop_reason,
            gain = psnr_out - psnr_in,
        ),
    );
}

#[test]
fn acceptance_09_metric_correctness() {
    let a = ImageGrid::constant(GridShape::unit(16, 16), 0.0);
    let b = ImageGrid::constant(GridShape::unit(16, 16), 0.5);
    let psnr = metrics::psnr(&a, &b, 1.0).unwrap();
    let psnr_ok = (psnr - 6.0206).abs() <= 1e-3;

    let img = synthetic::random_image(GridShape::unit(32, 32), 5);
    let ssim = metrics::ssim(&img, &img).unwrap();
    let ssim_ok = (ssim - 1.0).abs() <= 1e-12;

    // Hand-computed SNR: reference 0.5 +/- 0.25 checkerboard (variance
    // exactly 1/16), test offset by +/- 0.025 on the same pattern (MSE
    // 1/1600), so SNR = 10*log10(100) = 20 dB.
    let shape = GridShape::unit(8, 8);
    let sign = |y: usize, x: usize| if (y + x) % 2 == 0 { 1.0 } else { -1.0 };
    let reference = ImageGrid::from_fn(shape, |y, x| 0.5 + 0.25 * sign(y, x));
    let test = ImageGrid::from_fn(shape, |y, x| 0.5 + 0.275 * sign(y, x));
    let snr = metrics::snr(&reference, &test).unwrap();
    let snr_ok = (snr - 20.0).abs() <= 1e-6;

    report(
        9,
        "metric-correctness",
        psnr_ok && ssim_ok && snr_ok,
        &format!(
            "PSNR(0 vs 0.5) = {psnr:.5} dB (6.0206 +/- 1e-3), SSIM(a,a) = {ssim} (= 1), \
             checkerboard SNR = {snr:.9} dB (20 +/- 1e-6)"
        ),
    );
}

#[test]
fn acceptance_10_desk_scale_performance() {
    let shape = GridShape::unit(512, 512);
    let truth = Problem::Stripe.image(shape);
    let mask = synthetic::centered_box_mask(512, 512, 0.2).unwrap();
    let damaged = synthetic::apply_damage(&truth, &mask, 0.5).unwrap();
    // The criterion fixes the workload (1000 FMS iterations at 512x512),
    // not the parameters; run a stable configuration with early stopping
    // disabled so exactly 1000 steps execute.
    let p = ModelParams {
        max_iter: 1000,
        rel_tol: 0.0,
        ..ModelParams::strict_theorem()
    };
    let start = Instant::now();
    let (_, log) = solvers::run(Model::Fms, &damaged, &mask, &p, None).unwrap();
    let dt = start.elapsed().as_secs_f64();
    report(
        10,
        "desk-scale-performance",
        log.iterations() == 1000 && log.stop_reason == StopReason::MaxIter && dt < 120.0,
        &format!("{} iterations at 512x512 in {dt:.1} s (< 120 s)", log.iterations()),
    );
}

#[test]
fn acceptance_11_determinism() {
    let bin = env!("CARGO_BIN_EXE_fms-inpaint");
    let dir = tempfile::tempdir().unwrap();
    let shape = GridShape::unit(64, 64);
    let truth = Problem::Stripe.image(shape);
    let mask = synthetic::centered_box_mask(64, 64, 0.2).unwrap();
    let damaged = synthetic::apply_damage(&truth, &mask, 0.5).unwrap();
    let mask_img = ImageGrid::from_fn(shape, |y, x| if mask.is_damaged(y, x) { 1.0 } else { 0.0 });

    let input = dir.path().join("damaged.png");
    let mask_path = dir.path().join("mask.png");
    let gt_path = dir.path().join("truth.png");
    fms_inpaint::io::save_image(&damaged, &input).unwrap();
    fms_inpaint::io::save_image(&mask_img, &mask_path).unwrap();
    fms_inpaint::io::save_image(&truth, &gt_path).unwrap();

    let run = |tag: &str| {
        let out = dir.path().join(format!("out{tag}.png"));
        let log = dir.path().join(format!("log{tag}.csv"));
        let status = std::process::Command::new(bin)
            .args(["inpaint", "--model", "fms", "--strict-theorem", "--max-iter", "60"])
            .arg("--log")
            .arg(&log)
            .arg("--ground-truth")
            .arg(&gt_path)
            .args([&input, &mask_path, &out])
            .output()
            .unwrap();
        assert!(
            status.status.success(),
            "inpaint run {tag} failed: {}",
            String::from_utf8_lossy(&status.stderr)
        );
        (std::fs::read(&out).unwrap(), std::fs::read(&log).unwrap())
    };

    let (img1, log1) = run("1");
    let (img2, log2) = run("2");
    report(
        11,
        "determinism",
        img1 == img2 && log1 == log2,
        &format!(
            "two identical `inpaint` invocations: output PNGs identical = {}, per-iteration \
             CSV logs identical = {} ({} bytes / {} bytes)",
            img1 == img2,
            log1 == log2,
            img1.len(),
            log1.len()
        ),
    );
}
