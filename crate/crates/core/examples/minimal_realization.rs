//! Every minimal realization of a three-node structure function with four
//! poles, verified against the input.

use std::path::Path;

use dsf_minreal::cli::parse_model;
use dsf_minreal::dsf::compute_dsf;
use dsf_minreal::minreal::{minreal_pipeline, MinrealOptions};
use dsf_minreal::ratcore::rmat_equal;
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example2_dsf.json");
    let tol = Tolerances::default();
    let d = parse_model(&path, &tol)?.model.to_dsf(&tol)?;

    let opts = MinrealOptions {
        enumerate_all: true,
        ..MinrealOptions::default()
    };
    let out = minreal_pipeline(&d, &opts)?;
    let r = &out.report;
    println!(
        "l = {}, phi = {}, minimal order = {}",
        r.l, r.phi, r.minimal_order
    );

    for (report, part) in r.realizations.iter().zip(&out.realizations) {
        println!("\nR* = {} (order {})", report.family, part.order());
        println!("A = {}", part.a());
        println!("B = {}", part.b());
        let back = compute_dsf(part, tol.tol_root)?;
        let same = rmat_equal(back.q(), d.q(), 1e-7)? && rmat_equal(back.p(), d.p(), 1e-7)?;
        println!("reproduces [Q, P]: {same}");
    }
    Ok(())
}
