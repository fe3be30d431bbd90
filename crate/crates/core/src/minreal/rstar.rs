use std::fmt;

use serde::{Deserialize, Serialize};

use super::GilbertData;
use crate::error::{Error, Result};
use crate::ratcore::format_value;

/// Default value materialized for unconstrained `R*` entries.
pub const DEFAULT_FREE_VALUE: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RStarEntry {
    /// Pinned to a pole so that the pole cancels.
    Fixed(f64),
    /// Any real value works.
    Free,
}

/// Constant diagonal design matrix `R*`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RStar {
    pub entries: Vec<RStarEntry>,
    pub free_value: f64,
}

impl RStar {
    /// All entries free.
    pub fn free(p: usize, free_value: f64) -> Self {
        Self {
            entries: vec![RStarEntry::Free; p],
            free_value,
        }
    }

    /// All entries fixed to the given diagonal.
    pub fn fixed(diagonal: &[f64]) -> Self {
        Self {
            entries: diagonal.iter().map(|&r| RStarEntry::Fixed(r)).collect(),
            free_value: DEFAULT_FREE_VALUE,
        }
    }

    /// The diagonal with free entries set to `free_value`.
    pub fn materialize(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| match e {
                RStarEntry::Fixed(r) => *r,
                RStarEntry::Free => self.free_value,
            })
            .collect()
    }

    /// Family notation, e.g. `diag{a,-1,-1}` with `a` marking free entries.
    pub fn family(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                RStarEntry::Fixed(r) => format_value(*r),
                RStarEntry::Free => "a".to_string(),
            })
            .collect();
        format!("diag{{{}}}", parts.join(","))
    }
}

impl fmt::Display for RStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family())
    }
}

/// Pins `R*[j][j] = lambda_i` for every `i` in the clique and every `j` in the
/// support of `E_i`.
pub fn construct_rstar(g: &GilbertData, clique: &[usize], free_value: f64) -> Result<RStar> {
    let mut entries = vec![RStarEntry::Free; g.measured()];
    for &i in clique {
        let lambda = g.poles[i];
        for j in g.support(i) {
            match entries[j] {
                RStarEntry::Fixed(prev) if prev != lambda => {
                    return Err(Error::ConflictingAssignment {
                        position: j,
                        first: prev,
                        second: lambda,
                    })
                }
                _ => entries[j] = RStarEntry::Fixed(lambda),
            }
        }
    }
    Ok(RStar {
        entries,
        free_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector, RowDVector};

    fn data(poles: &[f64], es: &[&[f64]]) -> GilbertData {
        let p = es[0].len();
        GilbertData {
            poles: poles.to_vec(),
            e: es.iter().map(|e| DVector::from_row_slice(e)).collect(),
            f: es.iter().map(|_| RowDVector::zeros(p)).collect(),
            residues: es.iter().map(|_| DMatrix::zeros(p, p)).collect(),
            d1: DMatrix::zeros(p, p),
            shift: 0.0,
        }
    }

    #[test]
    fn family_notation() {
        let g = data(&[-1.0, -4.0], &[&[0.0, -0.5, -0.5], &[-1.0, -1.0, -1.0]]);
        assert_eq!(
            construct_rstar(&g, &[0], -1.0).unwrap().family(),
            "diag{a,-1,-1}"
        );
        let r4 = construct_rstar(&g, &[1], -1.0).unwrap();
        assert_eq!(r4.to_string(), "diag{-4,-4,-4}");
        assert_eq!(r4.materialize(), vec![-4.0; 3]);
    }

    #[test]
    fn free_entries_materialize() {
        let g = data(&[-2.0], &[&[1.0, 0.0]]);
        let r = construct_rstar(&g, &[0], 7.5).unwrap();
        assert_eq!(r.materialize(), vec![-2.0, 7.5]);
    }

    #[test]
    fn overlapping_supports_conflict() {
        let g = data(&[-1.0, -2.0], &[&[1.0, 1.0], &[1.0, -1.0]]);
        let err = construct_rstar(&g, &[0, 1], -1.0).unwrap_err();
        assert!(matches!(
            err,
            Error::ConflictingAssignment { position: 0, .. }
        ));
    }
}
