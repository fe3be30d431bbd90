//! Consistency of realizations with a structure function, and the
//! invariant-zero view of cancelled poles.

use std::path::Path;

use dsf_minreal::cli::parse_model;
use dsf_minreal::dsf::consistency_check;
use dsf_minreal::minreal::{minreal_pipeline, MinrealOptions};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example2_dsf.json");
    let tol = Tolerances::default();
    let d = parse_model(&path, &tol)?.model.to_dsf(&tol)?;

    let out = minreal_pipeline(&d, &MinrealOptions::default())?;
    let part = &out.realizations[0];
    println!(
        "emitted realization: {}",
        consistency_check(part, &d, tol.tol_eval, tol.tol_root)?
    );

    let mut perturbed = part.clone();
    perturbed.a22[(0, 0)] += 0.1;
    println!(
        "perturbed A22: {}",
        consistency_check(&perturbed, &d, tol.tol_eval, tol.tol_root)?
    );

    for check in &out.report.realizations[0].zero_checks {
        println!(
            "cancelled pole {}: zero of V {}, zero of G {}; at {}: {} / {}",
            check.pole,
            check.v_zero,
            check.g_zero,
            check.control_point,
            check.v_control,
            check.g_control
        );
    }
    Ok(())
}
