use crate::graph::{
    BoundKind, Edge, EdgeRef, RainbowCycle, RainbowCycleCertificate, RainbowInstance, Rational,
};

use super::OracleError;

pub const MAX_RAINBOW_ORACLE_N: usize = 16;
const MAX_COLORS: usize = 64;

/// Exact shortest rainbow cycle, in the instance's own vertex and family
/// indices. `Ok(None)` means no rainbow cycle exists.
///
/// Loops give length 1 and parallel edges of different families give
/// length 2; longer cycles are found by iterative deepening over simple
/// paths that carry a used-colour mask, anchored at the cycle's smallest
/// vertex.
pub fn shortest_rainbow_cycle(inst: &RainbowInstance) -> Result<Option<RainbowCycle>, OracleError> {
    let n = inst.n();
    if n > MAX_RAINBOW_ORACLE_N {
        return Err(OracleError::ResourceCap {
            what: "rainbow oracle vertices",
            limit: MAX_RAINBOW_ORACLE_N,
        });
    }
    if inst.m() > MAX_COLORS {
        return Err(OracleError::ResourceCap {
            what: "rainbow oracle families",
            limit: MAX_COLORS,
        });
    }

    let edges: Vec<_> = inst.edges().collect();
    if let Some(&(r, e)) = edges.iter().find(|(_, e)| e.is_loop()) {
        return Ok(Some(RainbowCycle {
            vertices: vec![e.lo()],
            edges: vec![r],
        }));
    }
    for (i, &(r1, e1)) in edges.iter().enumerate() {
        for &(r2, e2) in &edges[i + 1..] {
            if e1 == e2 && r1.family != r2.family {
                return Ok(Some(RainbowCycle {
                    vertices: vec![e1.lo(), e1.hi()],
                    edges: vec![r1, r2],
                }));
            }
        }
    }

    let mut adj: Vec<Vec<(usize, EdgeRef)>> = vec![Vec::new(); n];
    for &(r, e) in &edges {
        adj[e.lo()].push((e.hi(), r));
        adj[e.hi()].push((e.lo(), r));
    }

    let mut search = Search {
        adj: &adj,
        on_path: vec![false; n],
        vertices: Vec::with_capacity(n),
        refs: Vec::with_capacity(n),
    };
    for k in 3..=n {
        for s in 0..n {
            search.vertices.clear();
            search.refs.clear();
            search.vertices.push(s);
            search.on_path[s] = true;
            let found = search.extend(s, s, 0, k);
            search.on_path[s] = false;
            if found {
                return Ok(Some(RainbowCycle {
                    vertices: search.vertices.clone(),
                    edges: search.refs.clone(),
                }));
            }
        }
    }
    Ok(None)
}

struct Search<'a> {
    adj: &'a [Vec<(usize, EdgeRef)>],
    on_path: Vec<bool>,
    vertices: Vec<usize>,
    refs: Vec<EdgeRef>,
}

impl Search<'_> {
    // Path s..=u holds `vertices.len()` vertices; look for a closing edge
    // once it holds k of them.
    fn extend(&mut self, s: usize, u: usize, used: u64, k: usize) -> bool {
        if self.vertices.len() == k {
            for &(w, r) in &self.adj[u] {
                if w == s && used & (1 << r.family) == 0 {
                    self.refs.push(r);
                    return true;
                }
            }
            return false;
        }
        for &(w, r) in &self.adj[u] {
            let bit = 1u64 << r.family;
            if w > s && !self.on_path[w] && used & bit == 0 {
                self.on_path[w] = true;
                self.vertices.push(w);
                self.refs.push(r);
                if self.extend(s, w, used | bit, k) {
                    self.on_path[w] = false;
                    return true;
                }
                self.refs.pop();
                self.vertices.pop();
                self.on_path[w] = false;
            }
        }
        false
    }
}

/// Length of a shortest rainbow path from `u` to `v` through the coloured
/// edge list `edges` (colours are arbitrary labels), by exhaustive search
/// over simple paths. `Some(0)` when `u == v`; `None` when no rainbow path
/// exists.
pub fn shortest_rainbow_path(
    edges: &[(Edge, usize)],
    u: usize,
    v: usize,
) -> Option<usize> {
    if u == v {
        return Some(0);
    }
    let n = edges.iter().map(|(e, _)| e.hi() + 1).max().unwrap_or(0).max(u + 1).max(v + 1);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(e, c) in edges {
        if !e.is_loop() {
            adj[e.lo()].push((e.hi(), c));
            adj[e.hi()].push((e.lo(), c));
        }
    }
    fn dfs(
        adj: &[Vec<(usize, usize)>],
        cur: usize,
        target: usize,
        depth: usize,
        on_path: &mut Vec<bool>,
        used: &mut Vec<usize>,
        best: &mut Option<usize>,
    ) {
        if cur == target {
            if best.map_or(true, |b| depth < b) {
                *best = Some(depth);
            }
            return;
        }
        if best.is_some_and(|b| depth + 1 >= b) {
            return;
        }
        for &(w, c) in &adj[cur] {
            if !on_path[w] && !used.contains(&c) {
                on_path[w] = true;
                used.push(c);
                dfs(adj, w, target, depth + 1, on_path, used, best);
                used.pop();
                on_path[w] = false;
            }
        }
    }
    let mut on_path = vec![false; n];
    on_path[u] = true;
    let mut best = None;
    dfs(&adj, u, v, 0, &mut on_path, &mut Vec::new(), &mut best);
    best
}

/// `rg` with a certificate whose bound is its own (optimal) length.
pub fn shortest_rainbow_cycle_exact(
    inst: &RainbowInstance,
) -> Result<Option<RainbowCycleCertificate>, OracleError> {
    Ok(shortest_rainbow_cycle(inst)?
        .map(|c| c.to_certificate(inst, BoundKind::ExactRg, Rational::from(c.len()))))
}
