//! Network topology export.
//!
//! Edges point from cause to effect: a nonzero `Q[i][j]` (or `A[i][j]`)
//! draws `j -> i`, and a nonzero `P[i][k]` (or `B[i][k]`) draws `u_k -> i`.
//! Self-loops are omitted.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::dsf::{boolean_structure, Dsf};
use crate::sslib::PartitionedRealization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Measured,
    Hidden,
    Input,
}

impl NodeKind {
    fn as_str(self) -> &'static str {
        match self {
            NodeKind::Measured => "measured",
            NodeKind::Hidden => "hidden",
            NodeKind::Input => "input",
        }
    }

    fn color(self) -> &'static str {
        match self {
            NodeKind::Measured => "red",
            NodeKind::Hidden => "blue",
            NodeKind::Input => "gray",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
}

/// Directed network over measured, hidden and (optionally) input nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Network {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// `adjacency[i][j] = 1` iff there is an edge from node `j` to node `i`.
    pub adjacency: Vec<Vec<u8>>,
}

impl Network {
    fn build(kinds: Vec<(String, NodeKind)>, links: Vec<(usize, usize)>) -> Self {
        let n = kinds.len();
        let mut adjacency = vec![vec![0u8; n]; n];
        let mut edges = Vec::new();
        for &(from, to) in &links {
            adjacency[to][from] = 1;
            edges.push(Edge {
                from: kinds[from].0.clone(),
                to: kinds[to].0.clone(),
            });
        }
        let nodes = kinds
            .into_iter()
            .map(|(id, kind)| Node { id, kind })
            .collect();
        Self {
            nodes,
            edges,
            adjacency,
        }
    }

    /// Measured-layer network of a structure function.
    pub fn from_dsf(d: &Dsf, tol_struct: f64, with_inputs: bool) -> Self {
        let bs = boolean_structure(d, tol_struct);
        let (p, m) = (d.measured(), d.inputs());
        let mut kinds = measured_nodes(p);
        let mut links = Vec::new();
        for i in 0..p {
            for j in 0..p {
                if i != j && bs.q_adj[(i, j)] {
                    links.push((j, i));
                }
            }
        }
        if with_inputs {
            kinds.extend(input_nodes(m));
            for i in 0..p {
                for k in 0..m {
                    if bs.p_adj[(i, k)] {
                        links.push((p + k, i));
                    }
                }
            }
        }
        links.sort_unstable();
        Self::build(kinds, links)
    }

    /// Full network of a realization, measured states first. An entry of
    /// `A` or `B` counts when it exceeds `tol_struct` times the largest entry
    /// of `[A B]`.
    pub fn from_realization(
        part: &PartitionedRealization,
        tol_struct: f64,
        with_inputs: bool,
    ) -> Self {
        let (p, h, m) = (part.measured(), part.hidden(), part.inputs());
        let a = part.a();
        let b = part.b();
        let floor = tol_struct * a.amax().max(b.amax());
        let nonzero = |x: f64| x.abs() > floor;
        let mut kinds = measured_nodes(p);
        kinds.extend((1..=h).map(|k| (format!("z{k}"), NodeKind::Hidden)));
        let mut links = pattern(&a, true, nonzero);
        if with_inputs {
            kinds.extend(input_nodes(m));
            links.extend(
                pattern(&b, false, nonzero)
                    .into_iter()
                    .map(|(k, i)| (p + h + k, i)),
            );
        }
        links.sort_unstable();
        Self::build(kinds, links)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("networks always serialize");
        s.push('\n');
        s
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph network {\n");
        out.push_str("  // edge j -> i: node j acts directly on node i; self-loops omitted\n");
        for node in &self.nodes {
            let _ = writeln!(
                out,
                "  {} [kind={}, color={}];",
                node.id,
                node.kind.as_str(),
                node.kind.color()
            );
        }
        for edge in &self.edges {
            let dashed = self.kind_of(&edge.from) == Some(NodeKind::Hidden)
                || self.kind_of(&edge.to) == Some(NodeKind::Hidden);
            let style = if dashed { " [style=dashed]" } else { "" };
            let _ = writeln!(out, "  {} -> {}{};", edge.from, edge.to, style);
        }
        out.push_str("}\n");
        out
    }

    fn kind_of(&self, id: &str) -> Option<NodeKind> {
        self.nodes.iter().find(|n| n.id == id).map(|n| n.kind)
    }

    /// Edges between measured nodes only.
    pub fn measured_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .filter(|e| {
                self.kind_of(&e.from) == Some(NodeKind::Measured)
                    && self.kind_of(&e.to) == Some(NodeKind::Measured)
            })
            .map(|e| (e.from.clone(), e.to.clone()))
            .collect()
    }
}

fn measured_nodes(p: usize) -> Vec<(String, NodeKind)> {
    (1..=p)
        .map(|k| (format!("y{k}"), NodeKind::Measured))
        .collect()
}

fn input_nodes(m: usize) -> Vec<(String, NodeKind)> {
    (1..=m)
        .map(|k| (format!("u{k}"), NodeKind::Input))
        .collect()
}

/// `(from, to)` pairs for the nonzeros of `m`, where column indexes the
/// source.
fn pattern(
    m: &DMatrix<f64>,
    skip_diagonal: bool,
    nonzero: impl Fn(f64) -> bool,
) -> Vec<(usize, usize)> {
    let mut links = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if !(skip_diagonal && i == j) && nonzero(m[(i, j)]) {
                links.push((j, i));
            }
        }
    }
    links
}
