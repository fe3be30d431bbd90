//! DOT and JSON network exports at the structure-function and realization
//! levels.

use std::path::Path;

use dsf_minreal::cli::{parse_model, Network};
use dsf_minreal::minreal::{minreal_pipeline, MinrealOptions};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example2_dsf.json");
    let tol = Tolerances::default();
    let d = parse_model(&path, &tol)?.model.to_dsf(&tol)?;

    let measured = Network::from_dsf(&d, tol.tol_struct, true);
    println!("{}", measured.to_json());

    let out = minreal_pipeline(
        &d,
        &MinrealOptions {
            enumerate_all: true,
            ..MinrealOptions::default()
        },
    )?;
    for (report, part) in out.report.realizations.iter().zip(&out.realizations) {
        let net = Network::from_realization(part, tol.tol_struct, false);
        println!("// R* = {}", report.family);
        print!("{}", net.to_dot());
        // The measured layer is the same in every realization.
        assert_eq!(net.measured_edges(), measured.measured_edges());
    }
    Ok(())
}
