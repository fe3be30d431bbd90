use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GilbertData;

/// When two residue directions may be cancelled by the same constant `R*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeRule {
    /// No row index is in both supports.
    #[default]
    SupportDisjoint,
    /// `|E_i^T E_j| <= tol_orth |E_i| |E_j|`.
    Orthogonal,
}

impl fmt::Display for EdgeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeRule::SupportDisjoint => "support-disjoint",
            EdgeRule::Orthogonal => "orthogonal",
        })
    }
}

impl FromStr for EdgeRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "support-disjoint" => Ok(EdgeRule::SupportDisjoint),
            "orthogonal" => Ok(EdgeRule::Orthogonal),
            other => Err(format!(
                "unknown edge rule '{other}' (expected support-disjoint or orthogonal)"
            )),
        }
    }
}

/// Undirected simple graph on the poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatGraph {
    adj: Vec<Vec<bool>>,
    rule: EdgeRule,
}

impl CompatGraph {
    /// Graph with the given undirected edges. Self-loops are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], rule: EdgeRule) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i != j {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
        Self { adj, rule }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn rule(&self) -> EdgeRule {
        self.rule
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(|(j, _)| j)
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.node_count();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_clique(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(k, &i)| nodes[k + 1..].iter().all(|&j| i != j && self.adj[i][j]))
    }
}

/// Builds the compatibility graph of the residue directions.
///
/// Supports are taken after the cleanup done by `extract_modes`, so an entry
/// counts as nonzero when it exceeds `tol_orth` times the max-norm of its
/// vector.
pub fn compatibility_graph(g: &GilbertData, rule: EdgeRule, tol_orth: f64) -> CompatGraph {
    let l = g.len();
    let mut edges = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            let (ei, ej) = (&g.e[i], &g.e[j]);
            let compatible = match rule {
                EdgeRule::Orthogonal => ei.dot(ej).abs() <= tol_orth * ei.norm() * ej.norm(),
                EdgeRule::SupportDisjoint => {
                    let (fi, fj) = (tol_orth * ei.amax(), tol_orth * ej.amax());
                    !ei.iter()
                        .zip(ej.iter())
                        .any(|(a, b)| a.abs() > fi && b.abs() > fj)
                }
            };
            if compatible {
                edges.push((i, j));
            }
        }
    }
    CompatGraph::from_edges(l, &edges, rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector, RowDVector};

    fn data(es: &[&[f64]]) -> GilbertData {
        let p = es[0].len();
        GilbertData {
            poles: (0..es.len()).map(|i| -(i as f64) - 1.0).collect(),
            e: es.iter().map(|e| DVector::from_row_slice(e)).collect(),
            f: es.iter().map(|_| RowDVector::zeros(p)).collect(),
            residues: es.iter().map(|_| DMatrix::zeros(p, p)).collect(),
            d1: DMatrix::zeros(p, p),
            shift: 0.0,
        }
    }

    #[test]
    fn rules_differ_on_sign_cancelling_overlap() {
        let g = data(&[&[1.0, 1.0, 0.0], &[1.0, -1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let disjoint = compatibility_graph(&g, EdgeRule::SupportDisjoint, 1e-8);
        assert_eq!(disjoint.edges(), vec![(0, 2), (1, 2)]);
        let orth = compatibility_graph(&g, EdgeRule::Orthogonal, 1e-8);
        assert_eq!(orth.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn single_node_has_no_edges() {
        let g = data(&[&[1.0, 2.0]]);
        assert_eq!(
            compatibility_graph(&g, EdgeRule::SupportDisjoint, 1e-8).edge_count(),
            0
        );
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in [EdgeRule::SupportDisjoint, EdgeRule::Orthogonal] {
            assert_eq!(rule.to_string().parse::<EdgeRule>().unwrap(), rule);
        }
        assert!("sideways".parse::<EdgeRule>().is_err());
    }
}
