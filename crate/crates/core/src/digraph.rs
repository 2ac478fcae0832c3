//! Catch digraphs and the intersection graph of a dominating set.

use crate::error::{CcdError, Result};
use crate::geometry::{CoveringBall, DistanceMatrix};
use crate::scalar::Scalar;

/// Digraph with an arc `i -> j` whenever `j != i` lies in the ball of `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatchDigraph<T> {
    balls: Vec<CoveringBall<T>>,
    /// Sorted out-neighbors, self excluded.
    out: Vec<Vec<usize>>,
}

impl<T: Scalar> CatchDigraph<T> {
    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn balls(&self) -> &[CoveringBall<T>] {
        &self.balls
    }

    pub fn ball(&self, v: usize) -> CoveringBall<T> {
        self.balls[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        self.out.iter().map(Vec::len).collect()
    }

    /// `N̄(v)`: `v` together with its out-neighbors, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut nb = Vec::with_capacity(self.out[v].len() + 1);
        let at = self.out[v].partition_point(|&u| u < v);
        nb.extend_from_slice(&self.out[v][..at]);
        nb.push(v);
        nb.extend_from_slice(&self.out[v][at..]);
        nb
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.out[from].binary_search(&to).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

/// Builds the catch digraph of `balls` over the points behind `dm`.
///
/// `balls[i]` must be the ball centered at point `i`.
pub fn build_catch_digraph<T: Scalar>(
    dm: &DistanceMatrix<T>,
    balls: &[CoveringBall<T>],
) -> Result<CatchDigraph<T>> {
    let n = dm.len();
    if balls.len() != n {
        return Err(CcdError::Input(format!(
            "{} balls given for {n} points",
            balls.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for (i, ball) in balls.iter().enumerate() {
        if ball.center != i {
            return Err(CcdError::Input(format!(
                "ball {i} is centered at point {}",
                ball.center
            )));
        }
        let row = dm.row(i);
        out.push(
            (0..n)
                .filter(|&j| j != i && row[j] <= ball.radius)
                .collect(),
        );
    }
    Ok(CatchDigraph {
        balls: balls.to_vec(),
        out,
    })
}

/// Undirected graph on dominating-set members, adjacent when their balls
/// cover a common point.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionGraph<T> {
    members: Vec<usize>,
    balls: Vec<CoveringBall<T>>,
    coverage: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl<T: Scalar> IntersectionGraph<T> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Point index of each vertex.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn ball(&self, v: usize) -> CoveringBall<T> {
        self.balls[v]
    }

    /// Points covered by vertex `v` (its closed neighborhood in the digraph).
    pub fn coverage(&self, v: usize) -> &[usize] {
        &self.coverage[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let k = self.len();
        let mut seen = vec![false; k];
        let mut components = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub fn build_intersection_graph<T: Scalar>(
    digraph: &CatchDigraph<T>,
    mds: &[usize],
) -> Result<IntersectionGraph<T>> {
    if let Some(&bad) = mds.iter().find(|&&v| v >= digraph.len()) {
        return Err(CcdError::Input(format!(
            "dominating set member {bad} out of range (n = {})",
            digraph.len()
        )));
    }
    let coverage: Vec<Vec<usize>> = mds
        .iter()
        .map(|&v| digraph.closed_neighborhood(v))
        .collect();
    let k = mds.len();
    let mut adjacency = vec![Vec::new(); k];
    for u in 0..k {
        for v in (u + 1)..k {
            if sorted_intersect(&coverage[u], &coverage[v]) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    Ok(IntersectionGraph {
        members: mds.to_vec(),
        balls: mds.iter().map(|&v| digraph.ball(v)).collect(),
        coverage,
        adjacency,
    })
}
