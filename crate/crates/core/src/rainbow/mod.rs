//! Short rainbow cycles for families of size at most two.
//!
//! With `n` families on `n` vertices, `p` of them singletons, there is a
//! rainbow cycle of length at most `⌈(n+p)/2⌉`. The construction:
//!
//! 1. A loop is a rainbow cycle of length 1; an edge shared by two families
//!    is one of length 2.
//! 2. With no singleton families the exact oracle answers (the all-pairs
//!    case is a published theorem, asserted post hoc).
//! 3. Otherwise grow `H` from a singleton family, contract it to a vertex
//!    `h`, and recurse on `n − t − 1` vertices with `p − 1` singletons.
//!    A recursive cycle through `h` opens into a path between two vertices
//!    of `H`, closed by a short rainbow path inside `H` whose colours were
//!    removed by the contraction.

mod contraction;
mod hstructure;

pub use contraction::{contract, ContractionMap};
pub use hstructure::{
    build_greedy_subgraph, check_diameter_claim, distance_table, rainbow_path_in_h,
    shortest_path_in_h, Attachment, HStructure, RainbowPath,
};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    check_rainbow_cycle, text::write_rainbow, BoundKind, EdgeRef, RainbowCycle,
    RainbowCycleCertificate, RainbowInstance, Rational,
};
use crate::oracles::{shortest_rainbow_cycle, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RainbowError {
    #[error("instance has {m} families on {n} vertices; exactly n families are required")]
    NotSquare { n: usize, m: usize },
    #[error("instance has no vertices")]
    Empty,
    #[error("only simple-origin instances are accepted here")]
    NotSimpleOrigin,
    #[error("no family {0}")]
    NoSuchFamily(usize),
    #[error("family {0} does not have exactly one edge")]
    SeedNotSingleton(usize),
    #[error("families are not pairwise edge-disjoint")]
    FamiliesNotDisjoint,
    #[error("instance contains a loop")]
    LoopPresent,
    #[error("vertex {0} is not in H")]
    NotInH(usize),
    #[error("CLAIM VIOLATION (counterexample?): {0}")]
    ClaimViolation(String),
    #[error("BOUND VIOLATION (counterexample?): {0}")]
    BoundViolation(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// ⌈(n+p)/2⌉.
pub fn rainbow_bound(n: usize, p: usize) -> usize {
    (n + p).div_ceil(2)
}

/// The first loop, as a length-1 cycle.
fn loop_cycle(inst: &RainbowInstance) -> Option<RainbowCycle> {
    inst.edges().find(|(_, e)| e.is_loop()).map(|(r, e)| RainbowCycle {
        vertices: vec![e.lo()],
        edges: vec![r],
    })
}

/// The first vertex pair carried by two different families, as a length-2
/// cycle. Repeats inside one family do not count.
pub(crate) fn shared_edge(inst: &RainbowInstance) -> Option<RainbowCycle> {
    let mut first: HashMap<crate::graph::Edge, EdgeRef> = HashMap::new();
    for (r, e) in inst.edges() {
        match first.get(&e) {
            Some(&q) if q.family != r.family => {
                return Some(RainbowCycle {
                    vertices: vec![e.lo(), e.hi()],
                    edges: vec![q, r],
                })
            }
            Some(_) => {}
            None => {
                first.insert(e, r);
            }
        }
    }
    None
}

/// Length-2 rainbow cycle from an edge shared by two families, if any.
pub fn shared_edge_cycle(inst: &RainbowInstance) -> Option<RainbowCycleCertificate> {
    shared_edge(inst).map(|c| c.to_certificate(inst, BoundKind::HalfNPlusP, Rational::from(2u64)))
}

/// How one recursion level was resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LevelOutcome {
    Loop,
    SharedEdge,
    Oracle { length: usize },
    Contracted { t: usize, through_h: bool },
}

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub n: usize,
    pub p: usize,
    pub outcome: LevelOutcome,
    /// `H` when the level contracted, in that level's indices.
    pub h: Option<HStructure>,
    /// Length returned by this level.
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RainbowTrace {
    pub levels: Vec<Level>,
}

impl RainbowTrace {
    pub fn structures(&self) -> impl Iterator<Item = &HStructure> {
        self.levels.iter().filter_map(|l| l.h.as_ref())
    }
}

/// Runs the construction on any instance with `m = n` (multigraphs
/// included) and returns the cycle in the instance's own indices.
pub fn solve(inst: &RainbowInstance, trace: &mut Vec<Level>) -> Result<RainbowCycle, RainbowError> {
    let (n, m, p) = (inst.n(), inst.m(), inst.p());
    if m != n {
        return Err(RainbowError::NotSquare { n, m });
    }
    if n == 0 {
        return Err(RainbowError::Empty);
    }
    let bound = rainbow_bound(n, p);
    let level = trace.len();
    trace.push(Level {
        n,
        p,
        outcome: LevelOutcome::Loop,
        h: None,
        length: 0,
    });

    let (cycle, outcome) = if let Some(c) = loop_cycle(inst) {
        (c, LevelOutcome::Loop)
    } else if let Some(c) = shared_edge(inst) {
        (c, LevelOutcome::SharedEdge)
    } else if p == 0 {
        let c = shortest_rainbow_cycle(inst)?.ok_or_else(|| {
            RainbowError::BoundViolation(format!(
                "no rainbow cycle in an all-pairs instance\n{}",
                write_rainbow(inst)
            ))
        })?;
        if c.len() > n.div_ceil(2) {
            return Err(RainbowError::BoundViolation(format!(
                "all-pairs instance has rg = {} > ⌈n/2⌉ = {}\n{}",
                c.len(),
                n.div_ceil(2),
                write_rainbow(inst)
            )));
        }
        let length = c.len();
        (c, LevelOutcome::Oracle { length })
    } else {
        let seed = (0..m)
            .find(|&i| inst.family(i).len() == 1)
            .expect("p > 0 implies a singleton family");
        let h = build_greedy_subgraph(inst, seed)?;
        let t = h.t();
        let (sub, map) = contract(inst, &h);
        debug_assert_eq!(sub.n(), n - t - 1);
        debug_assert_eq!(sub.p() + 1, p);
        let sub_bound = rainbow_bound(sub.n(), sub.p());
        if sub_bound + t / 2 > bound {
            return Err(RainbowError::BoundViolation(format!(
                "recursion arithmetic: ⌈(n'+p')/2⌉ + ⌊t/2⌋ = {} > {bound}",
                sub_bound + t / 2
            )));
        }
        trace[level].h = Some(h.clone());
        let inner = solve(&sub, trace)?;
        let through_h = inner.vertices.contains(&map.h);
        let c = lift(inst, &h, &map, inner)?;
        (c, LevelOutcome::Contracted { t, through_h })
    };

    if cycle.len() > bound {
        return Err(RainbowError::BoundViolation(format!(
            "rainbow cycle of length {} > ⌈(n+p)/2⌉ = {bound}\n{}",
            cycle.len(),
            write_rainbow(inst)
        )));
    }
    trace[level].outcome = outcome;
    trace[level].length = cycle.len();
    Ok(cycle)
}

/// Maps a cycle of the contracted instance back to the parent. A cycle that
/// avoids `h` carries over unchanged; one through `h` becomes a path between
/// two vertices of `H`, closed by a rainbow path inside `H`.
fn lift(
    parent: &RainbowInstance,
    h: &HStructure,
    map: &ContractionMap,
    c: RainbowCycle,
) -> Result<RainbowCycle, RainbowError> {
    let mut vertices = c.vertices;
    let mut edges: Vec<EdgeRef> = c.edges.into_iter().map(|r| map.lift_ref(r)).collect();

    let Some(at) = vertices.iter().position(|&v| v == map.h) else {
        return Ok(RainbowCycle {
            vertices: vertices
                .into_iter()
                .map(|v| map.preimage[v].expect("h is not on this cycle"))
                .collect(),
            edges,
        });
    };
    vertices.rotate_left(at);
    edges.rotate_left(at);
    let k = edges.len();

    // Opened path: a = start in H, then the outside vertices, then b in H.
    let first = parent.edge(edges[0]);
    let last = parent.edge(edges[k - 1]);
    let (a, b) = if k == 1 {
        (first.lo(), first.hi())
    } else {
        let a = if map.in_h(first.lo()) { first.lo() } else { first.hi() };
        let b = if map.in_h(last.lo()) { last.lo() } else { last.hi() };
        (a, b)
    };
    debug_assert!(map.in_h(a) && map.in_h(b));

    let mut out_vertices = vec![a];
    out_vertices.extend(
        vertices[1..]
            .iter()
            .map(|&v| map.preimage[v].expect("h appears once on a cycle")),
    );
    if a == b {
        if k == 1 {
            return Err(RainbowError::LoopPresent);
        }
        return Ok(RainbowCycle {
            vertices: out_vertices,
            edges,
        });
    }
    let closing = rainbow_path_in_h(h, b, a)?;
    out_vertices.push(b);
    out_vertices.extend_from_slice(&closing.vertices[1..closing.vertices.len() - 1]);
    edges.extend(closing.edges);
    Ok(RainbowCycle {
        vertices: out_vertices,
        edges,
    })
}

/// A rainbow cycle of length at most ⌈(n+p)/2⌉, plus the recursion trace.
pub fn find_rainbow_cycle_traced(
    inst: &RainbowInstance,
) -> Result<(RainbowCycleCertificate, RainbowTrace), RainbowError> {
    if !inst.is_simple_origin() {
        return Err(RainbowError::NotSimpleOrigin);
    }
    let mut levels = Vec::new();
    let cycle = solve(inst, &mut levels)?;
    let bound = Rational::from(rainbow_bound(inst.n(), inst.p()));
    let cert = cycle.to_certificate(inst, BoundKind::HalfNPlusP, bound);
    check_rainbow_cycle(inst, &cert).map_err(|e| {
        RainbowError::BoundViolation(format!("invalid certificate: {e}\n{}", write_rainbow(inst)))
    })?;
    Ok((cert, RainbowTrace { levels }))
}

/// A rainbow cycle of length at most ⌈(n+p)/2⌉ for `n` families of size
/// 1 or 2 on `n` vertices.
pub fn find_rainbow_cycle(inst: &RainbowInstance) -> Result<RainbowCycleCertificate, RainbowError> {
    find_rainbow_cycle_traced(inst).map(|(c, _)| c)
}
