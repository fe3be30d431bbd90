//! Reading and writing the JSON model formats.

use std::path::Path;

use dsf_minreal::cli::{parse_model_str, write_model, Model, ModelFile};
use dsf_minreal::dsf::compute_dsf;
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let text = r#"{
        "kind": "dsf_pole_residue",
        "poles": [-1, -3],
        "KQ": [[[0, 1], [0, 0]], [[0, 0], [2, 0]]],
        "KP": [[[1], [0]], [[0], [1]]]
    }"#;
    let d = parse_model_str(text, &tol)?.model.to_dsf(&tol)?;
    println!("{d}");

    let dir = std::env::temp_dir();
    let dsf_path = dir.join("dsf_minreal_example_dsf.json");
    write_model(&dsf_path, &ModelFile::from_dsf(&d))?;
    println!("{}", std::fs::read_to_string(&dsf_path)?);

    let ss_text = r#"{"kind": "state_space", "A": [[-1, 0, 1], [0, -2, 0], [1, 1, -3]], "B": [[1], [0], [0]], "C": [[0, 1, 0], [1, 0, 0]]}"#;
    let Model::Realization(part) = parse_model_str(ss_text, &tol)?.model else {
        unreachable!()
    };
    println!("output-normal form A = {}", part.a());
    let ss_path = dir.join("dsf_minreal_example_ss.json");
    write_model(&ss_path, &ModelFile::from_realization(&part))?;
    let reread = dsf_minreal::cli::parse_model(Path::new(&ss_path), &tol)?;
    assert_eq!(reread.model, Model::Realization(part.clone()));
    println!(
        "[Q, P] of that model:\n{}",
        compute_dsf(&part, tol.tol_root)?
    );
    Ok(())
}
