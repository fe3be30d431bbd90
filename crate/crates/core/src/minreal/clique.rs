use serde::{Deserialize, Serialize};

use super::CompatGraph;

/// Maximum cliques of a compatibility graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    /// Sorted node sets, lexicographically ordered. One entry unless all
    /// maximum cliques were requested.
    pub cliques: Vec<Vec<usize>>,
    /// Size of a maximum clique. `0` only for the empty graph.
    pub phi: usize,
}

/// Exact maximum clique search (Bron–Kerbosch with pivoting, pruned by the
/// size of the best clique found so far).
///
/// Ties are broken lexicographically on the sorted node sets; without
/// `enumerate_all` only the first is returned.
pub fn maximum_cliques(cg: &CompatGraph, enumerate_all: bool) -> CliqueResult {
    let mut search = Search {
        graph: cg,
        best: 0,
        found: Vec::new(),
    };
    let candidates: Vec<usize> = (0..cg.node_count()).collect();
    search.expand(&mut Vec::new(), candidates, Vec::new());
    let mut cliques = search.found;
    for c in &mut cliques {
        c.sort_unstable();
    }
    cliques.sort();
    cliques.dedup();
    if !enumerate_all {
        cliques.truncate(1);
    }
    CliqueResult {
        cliques,
        phi: search.best,
    }
}

struct Search<'a> {
    graph: &'a CompatGraph,
    best: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() {
                if r.len() > self.best {
                    self.best = r.len();
                    self.found.clear();
                }
                if r.len() == self.best {
                    self.found.push(r.clone());
                }
            }
            return;
        }
        if r.len() + p.len() < self.best {
            return;
        }
        let g = self.graph;
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| {
                (
                    p.iter().filter(|&&v| g.has_edge(u, v)).count(),
                    std::cmp::Reverse(u),
                )
            })
            .expect("p is nonempty");
        let branch: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(pivot, v))
            .collect();
        for v in branch {
            let p_next = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let x_next = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            r.push(v);
            self.expand(r, p_next, x_next);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
            if r.len() + p.len() < self.best {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minreal::EdgeRule;

    fn graph(n: usize, edges: &[(usize, usize)]) -> CompatGraph {
        CompatGraph::from_edges(n, edges, EdgeRule::SupportDisjoint)
    }

    #[test]
    fn edgeless_graph() {
        let res = maximum_cliques(&graph(4, &[]), true);
        assert_eq!(res.phi, 1);
        assert_eq!(res.cliques, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            maximum_cliques(&graph(4, &[]), false).cliques,
            vec![vec![0]]
        );
    }

    #[test]
    fn complete_graph() {
        let edges: Vec<_> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        let res = maximum_cliques(&graph(5, &edges), true);
        assert_eq!(res.phi, 5);
        assert_eq!(res.cliques, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let res = maximum_cliques(&graph(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), true);
        assert_eq!(res.phi, 3);
        assert_eq!(res.cliques, vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn empty_graph() {
        let res = maximum_cliques(&graph(0, &[]), true);
        assert_eq!(res.phi, 0);
        assert_eq!(res.cliques, vec![Vec::<usize>::new()]);
    }
}
