//! Dynamical structure function of a five-state network with two hidden
//! states, and the structure it reveals among the measured states.

use std::path::Path;

use dsf_minreal::cli::{parse_model, Model};
use dsf_minreal::dsf::{boolean_structure, compute_dsf, dsf_to_transfer, structure_limits};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example1_state_space.json");
    let tol = Tolerances::default();
    let Model::Realization(part) = parse_model(&path, &tol)?.model else {
        unreachable!("the data file is a state-space model")
    };
    println!("measured {}, hidden {}", part.measured(), part.hidden());

    let d = compute_dsf(&part, tol.tol_root)?;
    println!("{d}");

    let limits = structure_limits(&d, tol.tol_root)?;
    println!("lim s Q = {}", limits.a11_offdiag);
    println!("lim s P = {}", limits.b1);

    // Q[1][0] has relative degree two, so it is invisible in lim s Q but
    // still a structural link.
    let bs = boolean_structure(&d, tol.tol_struct);
    for i in 0..d.measured() {
        for j in 0..d.measured() {
            if bs.q_adj[(i, j)] {
                println!("y{} -> y{}", j + 1, i + 1);
            }
        }
    }

    let g = dsf_to_transfer(&d, tol.tol_root)?;
    println!("G = (I - Q)^-1 P =\n{g}");
    Ok(())
}
