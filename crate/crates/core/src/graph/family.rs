use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BoundKind, GraphError, RainbowCycleCertificate, RainbowStep, Rational};

/// An undirected edge, stored with `lo() <= hi()`. `lo() == hi()` is a loop,
/// which only appears in contracted instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn is_loop(self) -> bool {
        self.0 == self.1
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`; `None` if `v` is not an endpoint.
    pub fn other(self, v: usize) -> Option<usize> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl From<[usize; 2]> for Edge {
    fn from(a: [usize; 2]) -> Self {
        Edge::new(a[0], a[1])
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Identifies one edge of an instance: family (colour) index and position
/// inside the family. Stable under contraction up to the family renumbering
/// recorded in the contraction map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub family: usize,
    pub pos: usize,
}

/// A rainbow cycle as a closed walk: `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % k]`. A single loop has `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeRef>,
}

impl RainbowCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn to_certificate(
        &self,
        inst: &RainbowInstance,
        kind: BoundKind,
        bound: Rational,
    ) -> RainbowCycleCertificate {
        RainbowCycleCertificate {
            kind,
            steps: self
                .edges
                .iter()
                .map(|&r| RainbowStep {
                    edge: inst.edge(r),
                    color: r.family,
                })
                .collect(),
            bound,
        }
    }
}

/// An edge-family system `F_0, …, F_{m−1}` over an undirected multigraph on
/// `0..n`. Family `i` is colour `i`.
///
/// Instances built with [`RainbowInstance::new`] are *simple-origin*: no loops
/// and no family repeats an edge. Edges shared between different families
/// are legal input. [`RainbowInstance::multigraph`] lifts both restrictions;
/// contraction produces such instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowInstance {
    n: usize,
    families: Vec<Vec<Edge>>,
    simple_origin: bool,
}

impl RainbowInstance {
    pub fn new(n: usize, families: Vec<Vec<Edge>>) -> Result<Self, GraphError> {
        Self::build(n, families, true)
    }

    pub fn multigraph(n: usize, families: Vec<Vec<Edge>>) -> Result<Self, GraphError> {
        Self::build(n, families, false)
    }

    fn build(n: usize, families: Vec<Vec<Edge>>, simple: bool) -> Result<Self, GraphError> {
        for (i, fam) in families.iter().enumerate() {
            match fam.len() {
                0 => return Err(GraphError::EmptyFamily(i)),
                1 | 2 => {}
                size => return Err(GraphError::FamilyTooLarge { family: i, size }),
            }
            for e in fam {
                if e.hi() >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: e.hi(), n });
                }
                if simple && e.is_loop() {
                    return Err(GraphError::LoopInFamily(i));
                }
            }
            if simple && fam.len() == 2 && fam[0] == fam[1] {
                return Err(GraphError::RepeatedEdgeInFamily(i));
            }
        }
        Ok(RainbowInstance {
            n,
            families,
            simple_origin: simple,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of families.
    pub fn m(&self) -> usize {
        self.families.len()
    }

    pub fn families(&self) -> &[Vec<Edge>] {
        &self.families
    }

    pub fn family(&self, i: usize) -> &[Edge] {
        &self.families[i]
    }

    pub fn edge(&self, r: EdgeRef) -> Edge {
        self.families[r.family][r.pos]
    }

    /// Number of size-1 families.
    pub fn p(&self) -> usize {
        self.families.iter().filter(|f| f.len() == 1).count()
    }

    pub fn is_simple_origin(&self) -> bool {
        self.simple_origin
    }

    /// All edges with their references, family by family.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, Edge)> + '_ {
        self.families.iter().enumerate().flat_map(|(family, f)| {
            f.iter()
                .enumerate()
                .map(move |(pos, &e)| (EdgeRef { family, pos }, e))
        })
    }

    pub fn contains(&self, family: usize, e: Edge) -> bool {
        self.families.get(family).is_some_and(|f| f.contains(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: usize, v: usize) -> Edge {
        Edge::new(u, v)
    }

    #[test]
    fn edges_are_normalised() {
        assert_eq!(e(3, 1), e(1, 3));
        assert_eq!(e(3, 1).lo(), 1);
        assert_eq!(e(1, 3).other(3), Some(1));
        assert_eq!(e(1, 3).other(2), None);
        assert!(e(2, 2).is_loop());
    }

    #[test]
    fn counts_singletons() {
        let inst = RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(1, 2)], vec![e(0, 3), e(1, 3)], vec![e(2, 3)]],
        )
        .unwrap();
        assert_eq!(inst.m(), 4);
        assert_eq!(inst.p(), 2);
        assert_eq!(inst.edges().count(), 6);
    }

    #[test]
    fn rejects_bad_families() {
        assert_eq!(
            RainbowInstance::new(2, vec![vec![]]),
            Err(GraphError::EmptyFamily(0))
        );
        assert_eq!(
            RainbowInstance::new(4, vec![vec![e(0, 1), e(1, 2), e(2, 3)]]),
            Err(GraphError::FamilyTooLarge { family: 0, size: 3 })
        );
        assert_eq!(
            RainbowInstance::new(2, vec![vec![e(1, 1)]]),
            Err(GraphError::LoopInFamily(0))
        );
        assert_eq!(
            RainbowInstance::new(2, vec![vec![e(0, 1), e(1, 0)]]),
            Err(GraphError::RepeatedEdgeInFamily(0))
        );
        assert!(matches!(
            RainbowInstance::new(2, vec![vec![e(0, 2)]]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn multigraph_allows_loops_and_repeats() {
        let inst = RainbowInstance::multigraph(2, vec![vec![e(0, 0), e(0, 0)], vec![e(0, 1)]]).unwrap();
        assert!(!inst.is_simple_origin());
    }

    #[test]
    fn shared_edges_across_families_are_legal() {
        assert!(RainbowInstance::new(3, vec![vec![e(0, 1)], vec![e(0, 1), e(0, 2)]]).is_ok());
    }
}
