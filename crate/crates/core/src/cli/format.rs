//! JSON model files.
//!
//! Three kinds share one envelope, distinguished by `"kind"`:
//!
//! ```text
//! {"kind": "state_space", "A": [[..]], "B": [[..]], "C": [[..]], "p": 3}
//! {"kind": "dsf_coeff", "Q": [[{"num": [c0, c1, ..], "den": [..]}, ..]], "P": [[..]]}
//! {"kind": "dsf_pole_residue", "poles": [..], "KQ": [[[..]]], "KP": [[[..]]]}
//! ```
//!
//! Coefficients are ascending in `s`. `C` may be omitted when `p` is given,
//! in which case `C = [I_p 0]`. Any kind may carry a `"tolerances"` object
//! overriding individual defaults.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dsf::Dsf;
use crate::ratcore::{Polynomial, RationalFunction, RationalMatrix};
use crate::sslib::{output_normal_form, PartitionedRealization, StateSpace};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelFile {
    StateSpace {
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        #[serde(rename = "B")]
        b: Vec<Vec<f64>>,
        #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
        c: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<Tolerances>,
    },
    DsfCoeff {
        #[serde(rename = "Q")]
        q: Vec<Vec<CoeffEntry>>,
        #[serde(rename = "P")]
        p: Vec<Vec<CoeffEntry>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<Tolerances>,
    },
    DsfPoleResidue {
        poles: Vec<f64>,
        #[serde(rename = "KQ")]
        kq: Vec<Vec<Vec<f64>>>,
        #[serde(rename = "KP")]
        kp: Vec<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerances: Option<Tolerances>,
    },
}

/// One rational entry, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

/// A validated model.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Realization(PartitionedRealization),
    Dsf(Dsf),
}

impl Model {
    /// The structure function of the model, computed for realizations.
    pub fn to_dsf(&self, tol: &Tolerances) -> Result<Dsf, CliError> {
        match self {
            Model::Dsf(d) => Ok(d.clone()),
            Model::Realization(part) => Ok(crate::dsf::compute_dsf(part, tol.tol_root)?),
        }
    }
}

/// A model together with the tolerances it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedModel {
    pub model: Model,
    pub tolerances: Option<Tolerances>,
}

impl ModelFile {
    pub fn tolerances(&self) -> Option<Tolerances> {
        match self {
            ModelFile::StateSpace { tolerances, .. }
            | ModelFile::DsfCoeff { tolerances, .. }
            | ModelFile::DsfPoleResidue { tolerances, .. } => *tolerances,
        }
    }

    /// Validates shapes and builds the in-memory model. State-space models
    /// whose output map is not `[I_p 0]` are brought to that form.
    pub fn into_model(self, tol: &Tolerances) -> Result<Model, CliError> {
        match self {
            ModelFile::StateSpace { a, b, c, p, .. } => {
                let a = to_matrix("A", &a)?;
                let n = a.nrows();
                let b = to_matrix("B", &b)?;
                let c = match (c, p) {
                    (Some(c), _) => to_matrix("C", &c)?,
                    (None, Some(p)) if p <= n => {
                        DMatrix::from_fn(p, n, |i, j| if i == j { 1.0 } else { 0.0 })
                    }
                    (None, Some(p)) => {
                        return Err(CliError::schema(format!(
                            "p = {p} exceeds the state dimension {n}"
                        )))
                    }
                    (None, None) => {
                        return Err(CliError::schema("state_space needs \"C\" or \"p\""))
                    }
                };
                if let Some(p) = p {
                    if p != c.nrows() {
                        return Err(CliError::schema(format!(
                            "\"p\" is {p} but C has {} rows",
                            c.nrows()
                        )));
                    }
                }
                if a.ncols() != n || b.nrows() != n || c.ncols() != n {
                    return Err(CliError::schema(format!(
                        "inconsistent shapes: A {}x{}, B {}x{}, C {}x{}",
                        a.nrows(),
                        a.ncols(),
                        b.nrows(),
                        b.ncols(),
                        c.nrows(),
                        c.ncols()
                    )));
                }
                let ss = StateSpace::strictly_proper(a, b, c)?;
                Ok(Model::Realization(output_normal_form(&ss, tol.tol_rank)?))
            }
            ModelFile::DsfCoeff { q, p, .. } => {
                let q = to_rational("Q", &q, tol)?;
                let p = to_rational("P", &p, tol)?;
                Ok(Model::Dsf(Dsf::new(q, p)?))
            }
            ModelFile::DsfPoleResidue { poles, kq, kp, .. } => {
                if kq.len() != poles.len() || kp.len() != poles.len() {
                    return Err(CliError::schema(format!(
                        "{} poles but {} KQ and {} KP matrices",
                        poles.len(),
                        kq.len(),
                        kp.len()
                    )));
                }
                let kq = kq
                    .iter()
                    .enumerate()
                    .map(|(i, k)| to_matrix(&format!("KQ[{i}]"), k))
                    .collect::<Result<Vec<_>, _>>()?;
                let kp = kp
                    .iter()
                    .enumerate()
                    .map(|(i, k)| to_matrix(&format!("KP[{i}]"), k))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Model::Dsf(Dsf::from_pole_residue(
                    &poles,
                    &kq,
                    &kp,
                    tol.tol_root,
                )?))
            }
        }
    }

    /// `state_space` file of a partitioned realization, with `C` omitted.
    pub fn from_realization(part: &PartitionedRealization) -> Self {
        ModelFile::StateSpace {
            a: from_matrix(&part.a()),
            b: from_matrix(&part.b()),
            c: None,
            p: Some(part.measured()),
            tolerances: None,
        }
    }

    /// `dsf_coeff` file of a structure function.
    pub fn from_dsf(d: &Dsf) -> Self {
        ModelFile::DsfCoeff {
            q: from_rational(d.q()),
            p: from_rational(d.p()),
            tolerances: None,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files always serialize");
        s.push('\n');
        s
    }
}

/// Reads and validates a model file. Tolerances in the file apply on top of
/// `base`.
pub fn parse_model(path: &Path, base: &Tolerances) -> Result<LoadedModel, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_model_str(&text, base).map_err(|e| e.in_file(path))
}

/// [`parse_model`] on a string.
pub fn parse_model_str(text: &str, base: &Tolerances) -> Result<LoadedModel, CliError> {
    let file: ModelFile = serde_json::from_str(text).map_err(CliError::parse)?;
    let tolerances = file.tolerances();
    let tol = tolerances.unwrap_or(*base);
    Ok(LoadedModel {
        model: file.into_model(&tol)?,
        tolerances,
    })
}

/// Writes `file` as pretty JSON.
pub fn write_model(path: &Path, file: &ModelFile) -> Result<(), CliError> {
    fs::write(path, file.to_json()).map_err(|e| CliError::io(path, e))
}

fn to_matrix(name: &str, rows: &[Vec<f64>]) -> Result<DMatrix<f64>, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(CliError::schema(format!(
            "{name}: row {i} has {} entries, expected {cols}",
            rows[i].len()
        )));
    }
    Ok(DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

fn from_matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn to_rational(
    name: &str,
    rows: &[Vec<CoeffEntry>],
    tol: &Tolerances,
) -> Result<RationalMatrix, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(CliError::schema(format!(
            "{name}: row {i} has {} entries, expected {cols}",
            rows[i].len()
        )));
    }
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let f = crate::ratcore::rat_reduce(
                Polynomial::new(e.num.clone()),
                Polynomial::new(e.den.clone()),
                tol.tol_root,
            )
            .map_err(|err| CliError::schema(format!("{name}[{i}][{j}]: {err}")))?;
            entries.push(f);
        }
    }
    Ok(RationalMatrix::new(rows.len(), cols, entries)?)
}

fn from_rational(m: &RationalMatrix) -> Vec<Vec<CoeffEntry>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| coeff_entry(m.get(i, j))).collect())
        .collect()
}

fn coeff_entry(f: &RationalFunction) -> CoeffEntry {
    let num = if f.is_zero() {
        vec![0.0]
    } else {
        f.num().coeffs().to_vec()
    };
    CoeffEntry {
        num,
        den: f.den().coeffs().to_vec(),
    }
}
