//! Greedy dominating sets on the catch digraph and its intersection graph.

use serde::{Deserialize, Serialize};

use crate::digraph::{CatchDigraph, IntersectionGraph};
use crate::scalar::Scalar;

/// Greedy dominating set in selection order, with the closed neighborhood
/// each member contributes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub members: Vec<usize>,
    pub coverage: Vec<Vec<usize>>,
}

impl DominatingSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the closed neighborhoods of the members cover `0..n`.
    pub fn dominates(&self, n: usize) -> bool {
        let mut covered = vec![false; n];
        for list in &self.coverage {
            for &v in list {
                if v < n {
                    covered[v] = true;
                }
            }
        }
        covered.into_iter().all(|c| c)
    }
}

/// Greedy dominating set ranked by outdegree in the original digraph.
///
/// Outdegrees are never recomputed. Vertices are visited by decreasing
/// outdegree (lower index first on ties) and a vertex is selected when its
/// closed neighborhood still contains an uncovered vertex.
pub fn greedy_mds<T: Scalar>(digraph: &CatchDigraph<T>) -> DominatingSet {
    let n = digraph.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        digraph
            .outdegree(b)
            .cmp(&digraph.outdegree(a))
            .then(a.cmp(&b))
    });

    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut members = Vec::new();
    let mut coverage = Vec::new();
    for v in order {
        if remaining == 0 {
            break;
        }
        let nbhd = digraph.closed_neighborhood(v);
        let gain = nbhd.iter().filter(|&&u| !covered[u]).count();
        if gain == 0 {
            continue;
        }
        for &u in &nbhd {
            if !covered[u] {
                covered[u] = true;
                remaining -= 1;
            }
        }
        members.push(v);
        coverage.push(nbhd);
    }
    DominatingSet { members, coverage }
}

/// Greedy dominating set of the intersection graph, scored by the number
/// of points each ball covers.
///
/// Each step selects the remaining vertex whose ball covers the most points
/// (lower vertex first on ties) and removes it and its neighbors from the
/// graph. Returns intersection-graph vertex indices in selection order.
pub fn greedy_mds_scored<T: Scalar>(graph: &IntersectionGraph<T>) -> Vec<usize> {
    let k = graph.len();
    let mut active = vec![true; k];
    let mut selected = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for v in (0..k).filter(|&v| active[v]) {
            match best {
                Some(b) if graph.coverage(v).len() <= graph.coverage(b).len() => {}
                _ => best = Some(v),
            }
        }
        let Some(v) = best else { break };
        active[v] = false;
        for &u in graph.neighbors(v) {
            active[u] = false;
        }
        selected.push(v);
    }
    selected
}
