//! Residue directions, the compatibility graph and its maximum cliques.

use std::path::Path;

use dsf_minreal::cli::parse_model;
use dsf_minreal::minreal::{
    compatibility_graph, construct_rstar, extract_modes, maximum_cliques, EdgeRule, ShiftMode,
    DEFAULT_FREE_VALUE,
};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/example1_state_space.json");
    let tol = Tolerances::default();
    let d = parse_model(&path, &tol)?.model.to_dsf(&tol)?;

    let g = extract_modes(&d, ShiftMode::Auto, &tol)?;
    for (i, pole) in g.poles.iter().enumerate() {
        println!(
            "pole {pole:>3}: E = {:?}, support {:?}",
            g.e[i].as_slice(),
            g.support(i)
        );
    }
    println!("D1 = {}", g.d1);

    for rule in [EdgeRule::SupportDisjoint, EdgeRule::Orthogonal] {
        let graph = compatibility_graph(&g, rule, tol.tol_orth);
        let cliques = maximum_cliques(&graph, true);
        println!(
            "{rule}: {} edges, phi = {}",
            graph.edge_count(),
            cliques.phi
        );
        for clique in &cliques.cliques {
            let poles: Vec<f64> = clique.iter().map(|&i| g.poles[i]).collect();
            let rstar = construct_rstar(&g, clique, DEFAULT_FREE_VALUE)?;
            println!("  {poles:?} -> R* = {rstar}");
        }
    }
    Ok(())
}
