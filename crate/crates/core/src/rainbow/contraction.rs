use serde::Serialize;

use crate::graph::{Edge, EdgeRef, RainbowInstance};

use super::HStructure;

/// How a contracted instance relates to its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionMap {
    /// The vertex `V(H)` collapses to, in the contracted instance.
    pub h: usize,
    /// Parent vertex -> contracted vertex.
    pub vertex_map: Vec<usize>,
    /// Contracted vertex -> parent vertex; `None` for `h`.
    pub preimage: Vec<Option<usize>>,
    /// Contracted family index -> parent family index.
    pub family_map: Vec<usize>,
    /// Parent vertices that make up `h`.
    pub members: Vec<usize>,
}

impl ContractionMap {
    /// The parent edge a contracted edge came from.
    pub fn lift_ref(&self, r: EdgeRef) -> EdgeRef {
        EdgeRef {
            family: self.family_map[r.family],
            pos: r.pos,
        }
    }

    pub fn in_h(&self, parent_vertex: usize) -> bool {
        self.vertex_map[parent_vertex] == self.h
    }
}

/// Identifies `V(H)` to a single vertex `h` and drops every colour used by
/// `H`. Other families keep their size and order; loops and parallel edges
/// created by the identification are kept. The result has `n − t − 1`
/// vertices and `p − 1` size-1 families.
///
/// `h` takes the slot of the smallest vertex of `H`; the remaining vertices
/// keep their relative order.
pub fn contract(inst: &RainbowInstance, h: &HStructure) -> (RainbowInstance, ContractionMap) {
    let n = inst.n();
    let mut in_h = vec![false; n];
    for &v in &h.vertices {
        in_h[v] = true;
    }
    let h_slot = *h.vertices.iter().min().expect("H has at least the seed edge");

    let mut vertex_map = vec![usize::MAX; n];
    let mut preimage = Vec::with_capacity(n - h.vertices.len() + 1);
    let mut h_new = usize::MAX;
    for v in 0..n {
        if in_h[v] {
            if v == h_slot {
                h_new = preimage.len();
                preimage.push(None);
            }
        } else {
            vertex_map[v] = preimage.len();
            preimage.push(Some(v));
        }
    }
    for &v in &h.vertices {
        vertex_map[v] = h_new;
    }

    let mut removed = vec![false; inst.m()];
    for c in h.colors() {
        removed[c] = true;
    }
    let mut family_map = Vec::new();
    let mut families = Vec::new();
    for (i, fam) in inst.families().iter().enumerate() {
        if removed[i] {
            continue;
        }
        family_map.push(i);
        families.push(
            fam.iter()
                .map(|e| Edge::new(vertex_map[e.lo()], vertex_map[e.hi()]))
                .collect(),
        );
    }

    let contracted = RainbowInstance::multigraph(preimage.len(), families)
        .expect("contraction preserves family sizes and ranges");
    let mut members = h.vertices.clone();
    members.sort_unstable();
    (
        contracted,
        ContractionMap {
            h: h_new,
            vertex_map,
            preimage,
            family_map,
            members,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rainbow::build_greedy_subgraph;

    fn e(u: usize, v: usize) -> Edge {
        Edge::new(u, v)
    }

    #[test]
    fn trivial_h_drops_one_vertex_and_one_family() {
        let inst = RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(2, 3)], vec![e(1, 3)], vec![e(0, 3)]],
        )
        .unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        assert_eq!(h.t(), 0);
        let (g, map) = contract(&inst, &h);
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.p(), inst.p() - 1);
        assert_eq!(map.h, 0);
        assert_eq!(map.family_map, vec![1, 2, 3]);
        // 0-2 -> h-1, 2-3 -> 1-2, 1-3 -> h-2, 0-3 -> h-2 (parallel, new).
        assert_eq!(g.family(0), &[e(0, 1), e(1, 2)]);
        assert_eq!(g.family(1), &[e(0, 2)]);
        assert_eq!(g.family(2), &[e(0, 2)]);
    }

    #[test]
    fn chain_collapses_to_one_vertex() {
        let inst = RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(1, 2)], vec![e(0, 3), e(2, 3)], vec![e(1, 3)]],
        )
        .unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        let (g, map) = contract(&inst, &h);
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 1);
        assert_eq!(g.family(0), &[e(0, 0)]);
        assert!(!g.is_simple_origin());
        assert_eq!(map.members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn endpoints_outside_h_keep_their_identity() {
        // H = {0,1} (t = 0); family {2-3, 0-3} becomes {2-3, h-3}.
        let inst = RainbowInstance::new(
            5,
            vec![
                vec![e(0, 1)],
                vec![e(2, 3), e(0, 3)],
                vec![e(1, 4)],
                vec![e(2, 4)],
                vec![e(3, 4)],
            ],
        )
        .unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        assert_eq!(h.t(), 0);
        let (g, map) = contract(&inst, &h);
        let (two, three) = (map.vertex_map[2], map.vertex_map[3]);
        assert_eq!(g.family(0), &[e(two, three), e(map.h, three)]);
        assert_eq!(g.family(0).len(), 2);
        assert_eq!(map.preimage[three], Some(3));
        assert_eq!(map.lift_ref(EdgeRef { family: 0, pos: 1 }), EdgeRef { family: 1, pos: 1 });
    }
}
