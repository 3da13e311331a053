use serde::{Deserialize, Serialize};

use super::GraphError;

/// A simple directed graph on vertices `0..n`.
///
/// No loops and no repeated arcs. Antiparallel pairs are allowed and form
/// digons. Immutable once built; deletions return a new graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph", into = "RawDigraph")]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = GraphError;
    fn try_from(raw: RawDigraph) -> Result<Self, GraphError> {
        Digraph::from_arcs(raw.n, raw.arcs)
    }
}

impl From<Digraph> for RawDigraph {
    fn from(d: Digraph) -> Self {
        RawDigraph { n: d.n, arcs: d.arcs }
    }
}

impl Digraph {
    /// Validates and builds a digraph. Arc order in the input is irrelevant.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, arcs))
    }

    // Caller guarantees: sorted, deduplicated, loop-free, in range.
    fn from_sorted_unchecked(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        // out lists are sorted because arcs are; in lists are filled in
        // increasing order of source, hence sorted as well.
        Digraph {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    /// The directed cycle `0 → 1 → … → n−1 → 0`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 2, "a directed cycle needs at least two vertices");
        Self::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// Every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::from_arcs(n, arcs).expect("complete digraph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Sorted out-neighbourhood N⁺(v).
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Sorted in-neighbourhood N⁻(v).
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// δ⁺(D); `None` on the empty vertex set.
    pub fn min_out_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.out_degree(v)).min()
    }

    pub fn max_out_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.out_degree(v)).max()
    }

    /// Number of vertices of out-degree exactly 1.
    pub fn count_out_degree_one(&self) -> usize {
        (0..self.n).filter(|&v| self.out_degree(v) == 1).count()
    }

    /// True iff no vertex is a sink. Vacuously true on zero vertices.
    pub fn is_sinkless(&self) -> bool {
        self.out_adj.iter().all(|o| !o.is_empty())
    }

    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&v| self.out_adj[v].is_empty())
    }

    /// True iff every in- and out-degree equals one, i.e. the graph is a
    /// vertex-disjoint union of directed cycles covering every vertex.
    pub fn is_union_of_cycles(&self) -> bool {
        (0..self.n).all(|v| self.out_adj[v].len() == 1 && self.in_adj[v].len() == 1)
    }

    /// Deletes `v` and its arcs. Returns the smaller graph together with the
    /// map from its vertex indices back to indices of `self`.
    pub fn remove_vertex(&self, v: usize) -> (Digraph, Vec<usize>) {
        assert!(v < self.n, "vertex {v} out of range");
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        let shift = |u: usize| if u > v { u - 1 } else { u };
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        (Self::from_sorted_unchecked(self.n - 1, arcs), keep)
    }

    /// Sub-digraph induced on `vertices` (any order); vertex `i` of the result
    /// is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a], pos[b]));
        Digraph::from_arcs(vertices.len(), arcs).expect("induced subgraph of a simple digraph")
    }
}
