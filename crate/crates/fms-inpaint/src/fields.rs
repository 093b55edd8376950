//! Pointwise and stencil operators: damage masks, fidelity weights,
//! gradient/divergence, TV curvature, and the model energy.
//!
//! The discrete gradient uses forward differences with a reflective
//! boundary (the difference across the last column/row is zero) and the
//! divergence is its exact negative adjoint, so that
//! `<grad u, p> + <u, div p> = 0` holds to machine precision and
//! `div(grad u)` is the five-point Neumann Laplacian. The curvature
//! `kappa = div(grad u / sqrt(|grad u|^2 + delta^2))` built from this pair
//! is what the solvers feed back as the explicit TV term.

use ndarray::{Array2, Zip};

use crate::error::{Error, Result};
use crate::grid::ImageGrid;
use crate::spectral::SpectralPlan;

/// Set of damaged (to-be-inpainted) pixels.
///
/// At least one pixel must remain undamaged; a mask with no fidelity anchor
/// leaves the mean intensity unconstrained and is rejected at construction.
#[derive(Debug, Clone)]
pub struct Mask {
    damaged: Array2<bool>,
}

impl Mask {
    /// Wraps a damage indicator (`true` = damaged). Errors if every pixel
    /// is damaged.
    pub fn new(damaged: Array2<bool>) -> Result<Self> {
        if damaged.iter().all(|&d| d) {
            return Err(Error::AllDamaged);
        }
        Ok(Mask { damaged })
    }

    /// Mask with no damaged pixels.
    pub fn none(rows: usize, cols: usize) -> Self {
        Mask {
            damaged: Array2::from_elem((rows, cols), false),
        }
    }

    /// Builds pixel `(y, x)` as damaged iff `f(y, x)`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        Mask::new(Array2::from_shape_fn((rows, cols), |(y, x)| f(y, x)))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.damaged.dim()
    }

    pub fn damaged(&self) -> &Array2<bool> {
        &self.damaged
    }

    pub fn is_damaged(&self, y: usize, x: usize) -> bool {
        self.damaged[[y, x]]
    }

    pub fn damaged_count(&self) -> usize {
        self.damaged.iter().filter(|&&d| d).count()
    }

    /// Fraction of the image area marked damaged, in `[0, 1)`.
    pub fn damaged_fraction(&self) -> f64 {
        self.damaged_count() as f64 / self.damaged.len() as f64
    }
}

/// Pixelwise fidelity weight `lambda(x) >= 0`: `lambda0` on kept pixels,
/// `0` on damaged ones (or any custom nonnegative field).
#[derive(Debug, Clone)]
pub struct FidelityField {
    values: Array2<f64>,
}

impl FidelityField {
    /// Uniform weight, e.g. `0.0` for a pure-diffusion run. Errors on a
    /// negative value.
    pub fn constant(rows: usize, cols: usize, value: f64) -> Result<Self> {
        if value < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "fidelity weight must be nonnegative, got {value}"
            )));
        }
        Ok(FidelityField {
            values: Array2::from_elem((rows, cols), value),
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.values.dim()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }
}

/// `lambda(x) = lambda0 * (1 - chi_D(x))`: full weight on kept pixels,
/// zero inside the damage set. Errors unless `lambda0 > 0`.
pub fn fidelity_field(mask: &Mask, lambda0: f64) -> Result<FidelityField> {
    if !(lambda0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda0 must be positive, got {lambda0}"
        )));
    }
    Ok(FidelityField {
        values: mask.damaged().mapv(|d| if d { 0.0 } else { lambda0 }),
    })
}

/// Forward-difference gradient `(u_x, u_y)` with reflective boundary:
/// the difference across the last column (for `u_x`) and last row (for
/// `u_y`) is zero.
pub fn gradient(u: &ImageGrid) -> (ImageGrid, ImageGrid) {
    let shape = u.shape();
    let (rows, cols) = shape.dims();
    let inv_dx = 1.0 / shape.dx();
    let inv_dy = 1.0 / shape.dy();
    let v = u.values();
    let mut gx = Array2::zeros((rows, cols));
    let mut gy = Array2::zeros((rows, cols));
    for y in 0..rows {
        for x in 0..cols {
            if x + 1 < cols {
                gx[[y, x]] = (v[[y, x + 1]] - v[[y, x]]) * inv_dx;
            }
            if y + 1 < rows {
                gy[[y, x]] = (v[[y + 1, x]] - v[[y, x]]) * inv_dy;
            }
        }
    }
    (
        ImageGrid::with_shape(shape, gx).expect("same dims"),
        ImageGrid::with_shape(shape, gy).expect("same dims"),
    )
}

/// Discrete divergence of the vector field `(px, py)`, the exact negative
/// adjoint of [`gradient`]: `<grad u, p> + <u, div p> = 0`.
pub fn divergence(px: &ImageGrid, py: &ImageGrid) -> Result<ImageGrid> {
    let shape = px.shape();
    shape.check_dims(py.values().dim())?;
    let (rows, cols) = shape.dims();
    let inv_dx = 1.0 / shape.dx();
    let inv_dy = 1.0 / shape.dy();
    let pxv = px.values();
    let pyv = py.values();
    let mut div = Array2::zeros((rows, cols));
    for y in 0..rows {
        for x in 0..cols {
            let dxp = if cols == 1 {
                0.0
            } else if x == 0 {
                pxv[[y, 0]]
            } else if x == cols - 1 {
                -pxv[[y, x - 1]]
            } else {
                pxv[[y, x]] - pxv[[y, x - 1]]
            };
            let dyp = if rows == 1 {
                0.0
            } else if y == 0 {
                pyv[[0, x]]
            } else if y == rows - 1 {
                -pyv[[y - 1, x]]
            } else {
                pyv[[y, x]] - pyv[[y - 1, x]]
            };
            div[[y, x]] = dxp * inv_dx + dyp * inv_dy;
        }
    }
    ImageGrid::with_shape(shape, div)
}

/// Regularized TV curvature
/// `kappa = div(grad u / sqrt(|grad u|^2 + delta^2))`.
///
/// Bounded by `|kappa| <= 4 / min(dx, dy)` since the normalized field has
/// components in `(-1, 1)`. Errors unless `delta > 0`.
pub fn curvature(u: &ImageGrid, delta: f64) -> Result<ImageGrid> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let (mut gx, mut gy) = gradient(u);
    let d2 = delta * delta;
    Zip::from(gx.values_mut())
        .and(gy.values_mut())
        .for_each(|x, y| {
            let mag = (*x * *x + *y * *y + d2).sqrt();
            *x /= mag;
            *y /= mag;
        });
    divergence(&gx, &gy)
}

/// Squared discrete `H^1` seminorm `sum (u_x^2 + u_y^2) dx dy`.
pub fn grad_norm_sq(u: &ImageGrid) -> f64 {
    let (gx, gy) = gradient(u);
    let sum: f64 = gx
        .values()
        .iter()
        .zip(gy.values().iter())
        .map(|(a, b)| a * a + b * b)
        .sum();
    sum * u.shape().cell_area()
}

/// Discrete model energy
///
/// `E(u) = sum [ lambda/2 (f - u)^2 + mu/2 (Lap u)^2
///               + sqrt(|grad u|^2 + delta^2) ] dx dy`,
///
/// with the Laplacian evaluated spectrally through `plan` (so a run's
/// energy is measured with the same operator its scheme inverts). Errors
/// on shape mismatches or nonpositive `mu`/`delta`.
pub fn energy(
    u: &ImageGrid,
    f: &ImageGrid,
    lambda_field: &FidelityField,
    mu: f64,
    delta: f64,
    plan: &SpectralPlan,
) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "mu must be positive, got {mu}"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let shape = u.shape();
    shape.check_dims(f.values().dim())?;
    shape.check_dims(lambda_field.dims())?;
    plan.shape().check_dims(shape.dims())?;

    // (-Lap u) via the plan's eigenvalue grid; squaring removes the sign.
    let mut c = plan.forward(u)?;
    for (v, &l) in c.values_mut().iter_mut().zip(plan.lambda_grid()) {
        *v *= l;
    }
    let neg_lap = plan.inverse(&c)?;

    let (gx, gy) = gradient(u);
    let d2 = delta * delta;
    let mut total = 0.0;
    for (((&uv, &fv), &lam), ((&lp, &gxv), &gyv)) in u
        .values()
        .iter()
        .zip(f.values())
        .zip(lambda_field.values())
        .zip(neg_lap.values().iter().zip(gx.values()).zip(gy.values()))
    {
        let r = fv - uv;
        total += 0.5 * lam * r * r;
        total += 0.5 * mu * lp * lp;
        total += (gxv * gxv + gyv * gyv + d2).sqrt();
    }
    Ok(total * shape.cell_area())
}
