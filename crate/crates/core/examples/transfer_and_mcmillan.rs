//! Transfer function of a structure function and its McMillan degree,
//! compared with the order needed to realize the structure itself.

use std::path::Path;

use dsf_minreal::cli::parse_model;
use dsf_minreal::dsf::dsf_to_transfer;
use dsf_minreal::minreal::{minimal_order, EdgeRule, ShiftMode};
use dsf_minreal::ratcore::rmat_poles;
use dsf_minreal::sslib::{gilbert_realization, mcmillan_degree};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example2_dsf.json");
    let tol = Tolerances::default();
    let d = parse_model(&path, &tol)?.model.to_dsf(&tol)?;

    let g = dsf_to_transfer(&d, tol.tol_root)?;
    println!("G =\n{g}");
    println!(
        "poles of G: {:?}",
        rmat_poles(&g, tol.tol_pole, tol.tol_root)?
    );
    let deg = mcmillan_degree(&g, tol.tol_pole, tol.tol_root, tol.tol_rank)?;
    println!("McMillan degree of G: {deg}");

    let ss = gilbert_realization(&g, tol.tol_pole, tol.tol_root, tol.tol_rank)?;
    println!("Gilbert realization of G has order {}", ss.order());

    let order = minimal_order(&d, EdgeRule::SupportDisjoint, ShiftMode::Auto, &tol)?;
    println!(
        "a realization that preserves [Q, P] needs order {} ({} hidden states)",
        order.order, order.hidden
    );
    Ok(())
}
