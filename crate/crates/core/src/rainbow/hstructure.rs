//! The greedily grown subgraph `H` and rainbow paths inside it.
//!
//! `H_0` is the single edge of a size-1 family. `H_i` adds a new vertex
//! `x_i` joined to two distinct vertices `a_i, b_i` of `H_{i−1}` by the two
//! edges of one unused size-2 family. Within `H` two edges share a colour
//! only when they are such an attachment pair, so a simple path in `H` is
//! rainbow iff it never turns `a_i → x_i → b_i`. Every pair of vertices of
//! `H_i` is then joined by a rainbow path of length at most `⌊i/2⌋ + 1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Edge, EdgeRef, RainbowInstance};

use super::RainbowError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub x: usize,
    pub a: usize,
    pub b: usize,
    pub color: usize,
    /// The edge `x a`.
    pub edge_a: EdgeRef,
    /// The edge `x b`.
    pub edge_b: EdgeRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStructure {
    pub seed: EdgeRef,
    pub seed_edge: Edge,
    pub attachments: Vec<Attachment>,
    /// Seed endpoints, then `x_1, …, x_t` in attachment order.
    pub vertices: Vec<usize>,
}

impl HStructure {
    /// Number of attachment steps.
    pub fn t(&self) -> usize {
        self.attachments.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Colours used by `H`: the seed's first, then each attachment's.
    pub fn colors(&self) -> Vec<usize> {
        std::iter::once(self.seed.family)
            .chain(self.attachments.iter().map(|a| a.color))
            .collect()
    }

    /// Edges of `H` as `(ref, edge)` in construction order.
    pub fn edges(&self) -> Vec<(EdgeRef, Edge)> {
        let mut out = vec![(self.seed, self.seed_edge)];
        for a in &self.attachments {
            out.push((a.edge_a, Edge::new(a.x, a.a)));
            out.push((a.edge_b, Edge::new(a.x, a.b)));
        }
        out
    }

    /// `H_i`: the first `i` attachments.
    pub fn prefix(&self, i: usize) -> HStructure {
        HStructure {
            seed: self.seed,
            seed_edge: self.seed_edge,
            attachments: self.attachments[..i].to_vec(),
            vertices: self.vertices[..i + 2].to_vec(),
        }
    }

    /// `⌊t/2⌋ + 1`, the guaranteed rainbow diameter.
    pub fn diameter_bound(&self) -> usize {
        self.t() / 2 + 1
    }
}

/// Grows `H` from the single edge of family `seed_color` until no unused
/// size-2 family can attach a new vertex. Candidates are scanned by
/// increasing colour; a family attaches at most one vertex (its two edges
/// share at most one endpoint).
///
/// Requires pairwise edge-disjoint families and a loop-free seed.
pub fn build_greedy_subgraph(
    inst: &RainbowInstance,
    seed_color: usize,
) -> Result<HStructure, RainbowError> {
    let fam = inst
        .families()
        .get(seed_color)
        .ok_or(RainbowError::NoSuchFamily(seed_color))?;
    if fam.len() != 1 {
        return Err(RainbowError::SeedNotSingleton(seed_color));
    }
    let seed_edge = fam[0];
    if seed_edge.is_loop() {
        return Err(RainbowError::LoopPresent);
    }
    if super::shared_edge(inst).is_some() {
        return Err(RainbowError::FamiliesNotDisjoint);
    }

    let n = inst.n();
    let mut in_h = vec![false; n];
    in_h[seed_edge.lo()] = true;
    in_h[seed_edge.hi()] = true;
    let mut used = vec![false; inst.m()];
    used[seed_color] = true;
    let mut h = HStructure {
        seed: EdgeRef {
            family: seed_color,
            pos: 0,
        },
        seed_edge,
        attachments: Vec::new(),
        vertices: vec![seed_edge.lo(), seed_edge.hi()],
    };

    loop {
        let next = (0..inst.m())
            .filter(|&c| !used[c] && inst.family(c).len() == 2)
            .find_map(|c| attachment_for(inst, c, &in_h));
        let Some(att) = next else { break };
        used[att.color] = true;
        in_h[att.x] = true;
        h.vertices.push(att.x);
        h.attachments.push(att);
    }
    Ok(h)
}

fn attachment_for(inst: &RainbowInstance, color: usize, in_h: &[bool]) -> Option<Attachment> {
    let [e0, e1] = [inst.family(color)[0], inst.family(color)[1]];
    if e0 == e1 || e0.is_loop() || e1.is_loop() {
        return None;
    }
    // Shared endpoint x outside H, both far endpoints inside H.
    [e0.lo(), e0.hi()]
        .into_iter()
        .filter(|&x| e1.touches(x) && !in_h[x])
        .find_map(|x| {
            let a = e0.other(x)?;
            let b = e1.other(x)?;
            (in_h[a] && in_h[b] && a != b).then_some(Attachment {
                x,
                a,
                b,
                color,
                edge_a: EdgeRef { family: color, pos: 0 },
                edge_b: EdgeRef { family: color, pos: 1 },
            })
        })
}

/// A path `vertices[0] → … → vertices[k]` with `edges[i]` joining
/// `vertices[i]` and `vertices[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeRef>,
}

impl RainbowPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

struct Local {
    // Per vertex of H: (neighbour, index into `edges`).
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(EdgeRef, Edge)>,
}

impl Local {
    fn new(h: &HStructure, n: usize) -> Self {
        let edges = h.edges();
        let mut adj = vec![Vec::new(); n];
        for (i, (_, e)) in edges.iter().enumerate() {
            adj[e.lo()].push((e.hi(), i));
            adj[e.hi()].push((e.lo(), i));
        }
        Local { adj, edges }
    }

    fn color(&self, i: usize) -> usize {
        self.edges[i].0.family
    }

    // Shortest walk u → v in which consecutive edges differ in colour
    // (this forbids both U-turns and a_i → x_i → b_i turns). States are
    // (vertex, edge used to enter it).
    fn turn_restricted_walk(&self, u: usize, v: usize) -> Option<RainbowPath> {
        let m = self.edges.len();
        // State id: edge index * 2 + direction; entering vertex is the
        // direction's head.
        const UNSEEN: usize = usize::MAX - 1;
        const START: usize = usize::MAX;
        let head = |state: usize| {
            let e = self.edges[state / 2].1;
            if state % 2 == 0 {
                e.hi()
            } else {
                e.lo()
            }
        };
        let mut prev = vec![UNSEEN; 2 * m];
        let mut queue = VecDeque::new();
        for &(w, i) in &self.adj[u] {
            let st = 2 * i + usize::from(w == self.edges[i].1.lo());
            if prev[st] == UNSEEN {
                prev[st] = START;
                queue.push_back(st);
            }
        }
        let mut found = None;
        while let Some(st) = queue.pop_front() {
            let at = head(st);
            if at == v {
                found = Some(st);
                break;
            }
            let c = self.color(st / 2);
            for &(w, i) in &self.adj[at] {
                if self.color(i) == c {
                    continue;
                }
                let nst = 2 * i + usize::from(w == self.edges[i].1.lo());
                if prev[nst] == UNSEEN {
                    prev[nst] = st;
                    queue.push_back(nst);
                }
            }
        }
        let mut st = found?;
        let mut edges = Vec::new();
        let mut vertices = vec![v];
        loop {
            edges.push(st / 2);
            let e = self.edges[st / 2].1;
            let tail = if st % 2 == 0 { e.lo() } else { e.hi() };
            vertices.push(tail);
            if prev[st] == START {
                break;
            }
            st = prev[st];
        }
        edges.reverse();
        vertices.reverse();
        Some(RainbowPath {
            vertices,
            edges: edges.into_iter().map(|i| self.edges[i].0).collect(),
        })
    }

    // Exhaustive fallback over simple paths with distinct colours.
    fn simple_rainbow_path(&self, u: usize, v: usize) -> Option<RainbowPath> {
        let mut best: Option<RainbowPath> = None;
        let mut on_path = vec![false; self.adj.len()];
        let mut path = RainbowPath {
            vertices: vec![u],
            edges: Vec::new(),
        };
        let mut colors = Vec::new();
        on_path[u] = true;
        self.dfs(u, v, &mut on_path, &mut path, &mut colors, &mut best);
        best
    }

    fn dfs(
        &self,
        cur: usize,
        v: usize,
        on_path: &mut [bool],
        path: &mut RainbowPath,
        colors: &mut Vec<usize>,
        best: &mut Option<RainbowPath>,
    ) {
        if cur == v {
            if best.as_ref().map_or(true, |b| path.len() < b.len()) {
                *best = Some(path.clone());
            }
            return;
        }
        if best.as_ref().is_some_and(|b| path.len() + 1 >= b.len()) {
            return;
        }
        for &(w, i) in &self.adj[cur] {
            let c = self.color(i);
            if on_path[w] || colors.contains(&c) {
                continue;
            }
            on_path[w] = true;
            colors.push(c);
            path.vertices.push(w);
            path.edges.push(self.edges[i].0);
            self.dfs(w, v, on_path, path, colors, best);
            path.edges.pop();
            path.vertices.pop();
            colors.pop();
            on_path[w] = false;
        }
    }
}

fn is_simple_rainbow(p: &RainbowPath) -> bool {
    let mut vs = p.vertices.clone();
    vs.sort_unstable();
    vs.dedup();
    let mut cs: Vec<usize> = p.edges.iter().map(|r| r.family).collect();
    cs.sort_unstable();
    cs.dedup();
    vs.len() == p.vertices.len() && cs.len() == p.edges.len()
}

/// A shortest rainbow path inside `H` from `u` to `v`, without checking the
/// diameter bound. `None` if `u` or `v` is outside `H` or no path exists.
pub fn shortest_path_in_h(h: &HStructure, u: usize, v: usize) -> Option<RainbowPath> {
    if !h.contains(u) || !h.contains(v) {
        return None;
    }
    if u == v {
        return Some(RainbowPath {
            vertices: vec![u],
            edges: Vec::new(),
        });
    }
    let n = h.vertices.iter().max().map_or(0, |&m| m + 1);
    let local = Local::new(h, n);
    // A simple rainbow path is a turn-respecting walk, so if the shortest
    // such walk is simple it is optimal. Otherwise search exhaustively.
    match local.turn_restricted_walk(u, v) {
        Some(p) if is_simple_rainbow(&p) => Some(p),
        Some(_) => local.simple_rainbow_path(u, v),
        None => None,
    }
}

/// Rainbow path in `H` from `u` to `v` of length at most `⌊t/2⌋ + 1`.
/// A longer shortest path contradicts the diameter claim and is reported
/// as [`RainbowError::ClaimViolation`].
pub fn rainbow_path_in_h(h: &HStructure, u: usize, v: usize) -> Result<RainbowPath, RainbowError> {
    if !h.contains(u) || !h.contains(v) {
        return Err(RainbowError::NotInH(if h.contains(u) { v } else { u }));
    }
    let path = shortest_path_in_h(h, u, v).ok_or_else(|| {
        RainbowError::ClaimViolation(format!("no rainbow path from {u} to {v} in {h:?}"))
    })?;
    if path.len() > h.diameter_bound() {
        return Err(RainbowError::ClaimViolation(format!(
            "rainbow distance {u}-{v} is {} > ⌊t/2⌋+1 = {} in {h:?}",
            path.len(),
            h.diameter_bound()
        )));
    }
    Ok(path)
}

/// All-pairs rainbow distances inside `H`, as `((u, v), d)` for `u < v`.
pub fn distance_table(h: &HStructure) -> Vec<((usize, usize), Option<usize>)> {
    let mut vs = h.vertices.clone();
    vs.sort_unstable();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.push(((u, v), shortest_path_in_h(h, u, v).map(|p| p.len())));
        }
    }
    out
}

/// Checks the diameter claim on every prefix `H_0, …, H_t`: all distances at
/// most `⌊i/2⌋ + 1`, and for even `i` at most one pair at exactly
/// `i/2 + 1`. Returns the number of (prefix, pair) distances checked.
pub fn check_diameter_claim(h: &HStructure) -> Result<usize, String> {
    let mut checked = 0;
    for i in 0..=h.t() {
        let hi = h.prefix(i);
        let bound = i / 2 + 1;
        let mut extremal = 0;
        for ((u, v), d) in distance_table(&hi) {
            checked += 1;
            let d = d.ok_or_else(|| format!("H_{i}: no rainbow path {u}-{v}"))?;
            if d > bound {
                return Err(format!("H_{i}: dist({u},{v}) = {d} > {bound}"));
            }
            if d == bound {
                extremal += 1;
            }
        }
        if i % 2 == 0 && extremal > 1 {
            return Err(format!("H_{i}: {extremal} pairs at distance {bound}, at most 1 allowed"));
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::shortest_rainbow_path;

    fn e(u: usize, v: usize) -> Edge {
        Edge::new(u, v)
    }

    fn chain() -> RainbowInstance {
        RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(1, 2)], vec![e(0, 3), e(2, 3)], vec![e(1, 3)]],
        )
        .unwrap()
    }

    fn brute(h: &HStructure, u: usize, v: usize) -> Option<usize> {
        let edges: Vec<(Edge, usize)> = h.edges().into_iter().map(|(r, e)| (e, r.family)).collect();
        shortest_rainbow_path(&edges, u, v)
    }

    #[test]
    fn single_forced_attachment() {
        let inst = RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(1, 2)], vec![e(2, 3)], vec![e(1, 3)]],
        )
        .unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        assert_eq!(h.t(), 1);
        assert_eq!(h.vertices, vec![0, 1, 2]);
        assert_eq!(h.attachments[0].x, 2);
        assert_eq!(h.attachments[0].color, 1);
    }

    #[test]
    fn vacuous_growth() {
        let inst = RainbowInstance::new(
            4,
            vec![vec![e(0, 1)], vec![e(0, 2), e(2, 3)], vec![e(1, 3)], vec![e(0, 3)]],
        )
        .unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        assert_eq!(h.t(), 0);
        assert_eq!(h.vertices, vec![0, 1]);
    }

    #[test]
    fn chain_attaches_twice() {
        let h = build_greedy_subgraph(&chain(), 0).unwrap();
        assert_eq!(h.t(), 2);
        assert_eq!(h.vertices, vec![0, 1, 2, 3]);
        assert_eq!((h.attachments[1].x, h.attachments[1].color), (3, 2));
        assert_eq!(h.colors(), vec![0, 1, 2]);
    }

    #[test]
    fn seed_must_be_singleton() {
        assert_eq!(
            build_greedy_subgraph(&chain(), 1),
            Err(RainbowError::SeedNotSingleton(1))
        );
        let shared = RainbowInstance::new(3, vec![vec![e(0, 1)], vec![e(0, 1), e(1, 2)], vec![e(0, 2)]])
            .unwrap();
        assert_eq!(
            build_greedy_subgraph(&shared, 0),
            Err(RainbowError::FamiliesNotDisjoint)
        );
    }

    #[test]
    fn path_examples() {
        let h = build_greedy_subgraph(&chain(), 0).unwrap();
        let p = rainbow_path_in_h(&h, 2, 2).unwrap();
        assert!(p.is_empty());
        let h1 = h.prefix(1);
        let p = rainbow_path_in_h(&h1, 0, 2).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.edges[0].family, 1);
        let h0 = h.prefix(0);
        let p = rainbow_path_in_h(&h0, 1, 0).unwrap();
        assert_eq!(p.vertices, vec![1, 0]);
        assert_eq!(p.edges, vec![EdgeRef { family: 0, pos: 0 }]);
        assert!(matches!(rainbow_path_in_h(&h1, 0, 3), Err(RainbowError::NotInH(3))));
    }

    #[test]
    fn forbidden_turn_is_avoided() {
        // x_1 = 2 hangs off 0 and 1 with colour 1. The path 0-2-1 repeats
        // colour 1, so 0..1 must use the seed.
        let h = build_greedy_subgraph(&chain(), 0).unwrap().prefix(1);
        let p = rainbow_path_in_h(&h, 0, 1).unwrap();
        assert_eq!(p.len(), 1);
        // 1 -> 3 in the full chain: 1-0-3 (colours 0, 2) or 1-2-3 (1, 2).
        let h = build_greedy_subgraph(&chain(), 0).unwrap();
        let p = rainbow_path_in_h(&h, 1, 3).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(brute(&h, 1, 3), Some(2));
    }

    #[test]
    fn claim_on_chain() {
        let h = build_greedy_subgraph(&chain(), 0).unwrap();
        assert!(check_diameter_claim(&h).is_ok());
        for ((u, v), d) in distance_table(&h) {
            assert_eq!(d, brute(&h, u, v));
        }
    }

    #[test]
    fn long_ear_sequence_matches_brute_force() {
        // Each new vertex attaches to the two most recent ones: a "strip".
        let n = 9;
        let mut fams = vec![vec![e(0, 1)]];
        for x in 2..n {
            fams.push(vec![e(x, x - 1), e(x, x - 2)]);
        }
        let inst = RainbowInstance::new(n, fams).unwrap();
        let h = build_greedy_subgraph(&inst, 0).unwrap();
        assert_eq!(h.t(), n - 2);
        check_diameter_claim(&h).unwrap();
        for ((u, v), d) in distance_table(&h) {
            assert_eq!(d, brute(&h, u, v), "pair {u}-{v}");
        }
    }
}
