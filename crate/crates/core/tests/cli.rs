mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::data_path;
use dsf_minreal::cli::{parse_model, parse_model_str, write_model, Model, ModelFile};
use dsf_minreal::Tolerances;
use tempfile::tempdir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsf-minreal"))
        .args(args)
        .output()
        .unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn minreal_example2_report() {
    let model = data_path("example2_dsf.json");
    let out = bin(&["minreal", path_str(&model), "--enumerate-all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("phi = 1"));
    assert!(text.contains("minimal order = p + l - phi = 3 + 4 - 1 = 6"));
    assert!(text.contains("hidden states = 3"));
    let families: Vec<&str> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix("R* = "))
        .collect();
    assert_eq!(
        families,
        [
            "diag{a,-1,-1}",
            "diag{-2,a,-2}",
            "diag{-3,-3,a}",
            "diag{-4,-4,-4}"
        ]
    );
}

#[test]
fn minreal_is_byte_stable() {
    let model = data_path("example2_dsf.json");
    let first = bin(&["minreal", path_str(&model), "--enumerate-all", "--json"]);
    let second = bin(&["minreal", path_str(&model), "--enumerate-all", "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["minimal_order"], 6);
    assert_eq!(report["mcmillan_degree_g"], 4);
}

#[test]
fn emitted_realizations_verify() {
    let dir = tempdir().unwrap();
    let model = data_path("example2_dsf.json");
    let out = bin(&[
        "minreal",
        path_str(&model),
        "--enumerate-all",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for k in 1..=4 {
        let real = dir.path().join(format!("realization_{k}.json"));
        let v = bin(&["verify", path_str(&model), path_str(&real)]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        assert!(stdout(&v).contains("minimal order = 6 (minimal)"));
        // A realization is also consistent with its own structure function.
        let own = bin(&["verify", path_str(&real), path_str(&real)]);
        assert_eq!(own.status.code(), Some(0));
    }
}

#[test]
fn perturbed_realization_fails_verification() {
    let dir = tempdir().unwrap();
    let model = data_path("example2_dsf.json");
    bin(&[
        "minreal",
        path_str(&model),
        "--out-dir",
        path_str(dir.path()),
    ]);
    let real = dir.path().join("realization_1.json");
    let mut file: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&real).unwrap()).unwrap();
    let a55 = file["A"][5][5].as_f64().unwrap();
    file["A"][5][5] = serde_json::json!(a55 + 0.1);
    fs::write(&real, serde_json::to_string(&file).unwrap()).unwrap();
    let v = bin(&["verify", path_str(&model), path_str(&real)]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("consistent = false"));
}

#[test]
fn assumption_violations_exit_2() {
    let dir = tempdir().unwrap();
    // 1 / (s^2 + 2s + 5) has complex poles.
    let complex = dir.path().join("complex.json");
    fs::write(
        &complex,
        r#"{"kind":"dsf_coeff","Q":[[{"num":[0],"den":[1]}]],"P":[[{"num":[1],"den":[5,2,1]}]]}"#,
    )
    .unwrap();
    let out = bin(&["minreal", path_str(&complex)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("complex poles"));

    let repeated = dir.path().join("repeated.json");
    fs::write(
        &repeated,
        r#"{"kind":"dsf_coeff","Q":[[{"num":[0],"den":[1]}]],"P":[[{"num":[1],"den":[1,2,1]}]]}"#,
    )
    .unwrap();
    assert_eq!(
        bin(&["minreal", path_str(&repeated)]).status.code(),
        Some(2)
    );

    let rank_two = dir.path().join("rank2.json");
    fs::write(
        &rank_two,
        r#"{"kind":"dsf_pole_residue","poles":[-1],"KQ":[[[0,0],[0,0]]],"KP":[[[1,0],[0,1]]]}"#,
    )
    .unwrap();
    let out = bin(&["minreal", path_str(&rank_two)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank 2"));
}

#[test]
fn input_errors_exit_3() {
    let dir = tempdir().unwrap();
    assert_eq!(
        bin(&["minreal", "/nonexistent/model.json"]).status.code(),
        Some(3)
    );

    let ragged = dir.path().join("ragged.json");
    fs::write(
        &ragged,
        r#"{"kind":"state_space","A":[[1,0],[0]],"B":[[1],[0]],"p":1}"#,
    )
    .unwrap();
    let out = bin(&["minreal", path_str(&ragged)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema error"));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"kind\": \"dsf_coeff\",\n  \"Q\": [\n").unwrap();
    let out = bin(&["graph", path_str(&broken)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    assert_eq!(bin(&["minreal"]).status.code(), Some(3));
    assert_eq!(
        bin(&[
            "minreal",
            path_str(&data_path("example2_dsf.json")),
            "--edge-rule",
            "diagonal"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn shift_flag() {
    let model = data_path("integrator_dsf.json");
    let auto = stdout(&bin(&["minreal", path_str(&model)]));
    assert!(auto.contains("shift: a = 3"));
    let manual = stdout(&bin(&["minreal", path_str(&model), "--shift", "-6.5"]));
    assert!(manual.contains("shift: a = -6.5"));
    let phi = |t: &str| {
        t.lines()
            .find(|l| l.starts_with("phi"))
            .unwrap()
            .to_string()
    };
    assert_eq!(phi(&auto), phi(&manual));
    assert_eq!(
        bin(&["minreal", path_str(&model), "--shift", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["minreal", path_str(&model), "--shift", "-2"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn extract_writes_a_dsf_file() {
    let dir = tempdir().unwrap();
    let model = data_path("example1_state_space.json");
    let dsf_path = dir.path().join("dsf.json");
    let out = bin(&["extract", path_str(&model), "-o", path_str(&dsf_path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("nonzero lim s Q: (1,3) (3,2)"));
    let tol = Tolerances::default();
    let from_file = parse_model(&dsf_path, &tol)
        .unwrap()
        .model
        .to_dsf(&tol)
        .unwrap();
    let direct = parse_model(&model, &tol)
        .unwrap()
        .model
        .to_dsf(&tol)
        .unwrap();
    assert!(dsf_minreal::ratcore::rmat_equal(from_file.q(), direct.q(), 1e-12).unwrap());
    assert!(dsf_minreal::ratcore::rmat_equal(from_file.p(), direct.p(), 1e-12).unwrap());
}

#[test]
fn extract_of_decoupled_system_has_zero_q() {
    let dir = tempdir().unwrap();
    let model = dir.path().join("diag.json");
    fs::write(
        &model,
        r#"{"kind":"state_space","A":[[-1,0],[0,-2]],"B":[[1],[1]],"p":2}"#,
    )
    .unwrap();
    let out = bin(&["extract", path_str(&model)]);
    assert!(stdout(&out).contains("nonzero lim s Q: none"));
    let graph = bin(&["graph", path_str(&model), "--dsf-level", "--format", "json"]);
    let net: serde_json::Value = serde_json::from_slice(&graph.stdout).unwrap();
    assert_eq!(net["edges"].as_array().unwrap().len(), 0);
}

#[test]
fn graph_of_example1_structure() {
    let model = data_path("example1_state_space.json");
    let out = bin(&["graph", path_str(&model), "--dsf-level", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let net: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let edges: Vec<(String, String)> = net["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["from"].as_str().unwrap().to_string(),
                e["to"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let want = [("y1", "y2"), ("y2", "y3"), ("y3", "y1")];
    assert_eq!(edges.len(), 3);
    for (from, to) in want {
        assert!(edges.contains(&(from.into(), to.into())));
    }
    // Full realization graph: two hidden nodes.
    let dot = stdout(&bin(&["graph", path_str(&model)]));
    assert_eq!(dot.matches("kind=hidden").count(), 2);
    assert_eq!(dot.matches("kind=measured").count(), 3);
}

#[test]
fn graph_of_a_minimal_realization() {
    let dir = tempdir().unwrap();
    let model = data_path("example2_dsf.json");
    bin(&[
        "minreal",
        path_str(&model),
        "--enumerate-all",
        "--out-dir",
        path_str(dir.path()),
    ]);
    let dsf_dot = stdout(&bin(&["graph", path_str(&model)]));
    let measured_edges = |dot: &str| -> Vec<String> {
        dot.lines()
            .filter(|l| l.contains("->") && !l.contains('z') && !l.contains("//"))
            .map(|l| l.trim().to_string())
            .collect()
    };
    for k in 1..=4 {
        let real = dir.path().join(format!("realization_{k}.json"));
        let dot = stdout(&bin(&["graph", path_str(&real)]));
        assert_eq!(dot.matches("kind=measured").count(), 3);
        assert_eq!(dot.matches("kind=hidden").count(), 3);
        assert_eq!(measured_edges(&dot), measured_edges(&dsf_dot));
    }
}

#[test]
fn write_read_idempotence() {
    let dir = tempdir().unwrap();
    let tol = Tolerances::default();
    for name in [
        "example2_dsf.json",
        "example1_state_space.json",
        "integrator_dsf.json",
    ] {
        let loaded = parse_model(&data_path(name), &tol).unwrap().model;
        let file = match &loaded {
            Model::Dsf(d) => ModelFile::from_dsf(d),
            Model::Realization(part) => ModelFile::from_realization(part),
        };
        let path = dir.path().join(name);
        write_model(&path, &file).unwrap();
        let reread = parse_model(&path, &tol).unwrap().model;
        assert_eq!(reread, loaded, "{name}");
        let rewritten = match &reread {
            Model::Dsf(d) => ModelFile::from_dsf(d),
            Model::Realization(part) => ModelFile::from_realization(part),
        };
        assert_eq!(rewritten.to_json(), fs::read_to_string(&path).unwrap());
    }
}

#[test]
fn file_tolerances_and_flags() {
    let text = r#"{"kind":"dsf_coeff","Q":[[{"num":[0],"den":[1]}]],"P":[[{"num":[1],"den":[1,1]}]],
                   "tolerances":{"tol_orth":1e-6}}"#;
    let loaded = parse_model_str(text, &Tolerances::default()).unwrap();
    let t = loaded.tolerances.unwrap();
    assert_eq!(t.tol_orth, 1e-6);
    assert_eq!(t.tol_pole, Tolerances::default().tol_pole);
}

#[test]
fn output_normal_form_is_applied() {
    let text = r#"{"kind":"state_space","A":[[-1,0,1],[0,-2,0],[1,1,-3]],"B":[[1],[0],[0]],"C":[[0,1,0],[1,0,0]]}"#;
    let Model::Realization(part) = parse_model_str(text, &Tolerances::default()).unwrap().model
    else {
        panic!("expected a realization")
    };
    assert_eq!(part.measured(), 2);
    assert_eq!(part.hidden(), 1);
    assert_eq!(part.a11[(0, 0)], -2.0);
    assert_eq!(part.a11[(1, 1)], -1.0);
}
