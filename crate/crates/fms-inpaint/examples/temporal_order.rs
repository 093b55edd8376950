//! Measures the time-stepping scheme's self-convergence order for the
//! fractional and CVMS models on the smooth-bump problem: the observed
//! order should sit near 1 (first-order splitting).

use fms_inpaint::synthetic::Problem;
use fms_inpaint::verify::temporal_order_study;
use fms_inpaint::{Model, Result};

fn main() -> Result<()> {
    let dts = [0.2, 0.1, 0.05, 0.025];
    for model in [Model::Fms, Model::Cvms] {
        let report = temporal_order_study(model, Problem::SmoothBump, &dts)?;
        println!("{report}");
        println!();
    }
    Ok(())
}
