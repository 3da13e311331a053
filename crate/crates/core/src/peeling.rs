//! Potential-based vertex peeling.
//!
//! With `φ(D) = Σ_v 1/(deg⁺(v)+1)`, deleting `v` changes the potential by
//!
//! ```text
//! φ(D) − φ(D−v) = 1/(deg⁺(v)+1) − Σ_{u ∈ N⁻(v)} 1/(deg⁺(u)·(deg⁺(u)+1))
//! ```
//!
//! Summed over all `v`, both terms equal `φ(D)`, so some vertex can always
//! be removed without raising `φ`. On a sink-less graph that is not a
//! disjoint union of cycles, one such vertex also keeps the graph sink-less.
//! Peeling to exhaustion therefore ends in a union of cycles `K` with
//! `g(D) <= g(K) <= |V(K)| = 2φ(K) <= 2φ(D)`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{text::write_digraph, BoundKind, CycleCertificate, Digraph, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("vertex {0} is a sink")]
    SinkPresent(usize),
    #[error("digraph is not sink-less: vertex {0} has out-degree 0")]
    NotSinkless(usize),
    #[error("digraph has no vertices")]
    Empty,
    #[error("LEMMA VIOLATION (counterexample?): {0}")]
    LemmaViolation(String),
}

/// ψ(D) = Σ 1/deg⁺(v). Undefined, and an error, when a sink exists.
pub fn psi(d: &Digraph) -> Result<Rational, PeelError> {
    if let Some(s) = d.sinks().next() {
        return Err(PeelError::SinkPresent(s));
    }
    Ok((0..d.n()).map(|v| Rational::recip_of(d.out_degree(v))).sum())
}

/// φ(D) = Σ 1/(deg⁺(v)+1). Zero on the empty graph.
pub fn phi(d: &Digraph) -> Rational {
    (0..d.n()).map(|v| Rational::recip_of(d.out_degree(v) + 1)).sum()
}

/// Both sides of the removal condition at `v`: `(1/(deg⁺(v)+1),
/// Σ_{u∈N⁻(v)} 1/(deg⁺(u)(deg⁺(u)+1)))`. `v` is removable iff `lhs >= rhs`.
pub fn removal_sides(d: &Digraph, v: usize) -> (Rational, Rational) {
    let lhs = Rational::recip_of(d.out_degree(v) + 1);
    let rhs = d
        .in_neighbors(v)
        .iter()
        .map(|&u| {
            let k = d.out_degree(u);
            Rational::recip_of(k * (k + 1))
        })
        .sum();
    (lhs, rhs)
}

/// Vertices whose deletion does not increase φ, ascending.
pub fn removable_vertices(d: &Digraph) -> Vec<usize> {
    (0..d.n())
        .filter(|&v| {
            let (lhs, rhs) = removal_sides(d, v);
            lhs >= rhs
        })
        .collect()
}

/// `(Σ_v lhs(v), Σ_v rhs(v))`. The left sum is φ(D); the right sum is
/// φ(D) minus the number of sinks, so both equal φ(D) when `d` is sink-less.
pub fn removal_side_sums(d: &Digraph) -> (Rational, Rational) {
    let mut l = Rational::zero();
    let mut r = Rational::zero();
    for v in 0..d.n() {
        let (lhs, rhs) = removal_sides(d, v);
        l += lhs;
        r += rhs;
    }
    (l, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelStep {
    Remove(usize),
    UnionOfCycles,
}

fn require_sinkless(d: &Digraph) -> Result<(), PeelError> {
    if d.n() == 0 {
        return Err(PeelError::Empty);
    }
    match d.sinks().next() {
        Some(s) => Err(PeelError::NotSinkless(s)),
        None => Ok(()),
    }
}

/// Removable vertices whose deletion also leaves the graph sink-less.
pub fn eligible_vertices(d: &Digraph) -> Vec<usize> {
    removable_vertices(d)
        .into_iter()
        .filter(|&v| {
            // Deleting v creates a sink exactly at in-neighbours whose only
            // out-neighbour is v.
            d.in_neighbors(v).iter().all(|&u| d.out_degree(u) >= 2)
        })
        .collect()
}

/// One peeling step with an explicit choice among eligible vertices.
pub fn peel_step_with(
    d: &Digraph,
    choose: &mut impl FnMut(&Digraph, &[usize]) -> usize,
) -> Result<PeelStep, PeelError> {
    require_sinkless(d)?;
    if d.is_union_of_cycles() {
        return Ok(PeelStep::UnionOfCycles);
    }
    let eligible = eligible_vertices(d);
    if eligible.is_empty() {
        return Err(PeelError::LemmaViolation(format!(
            "no removable vertex keeps the graph sink-less, yet it is not a union of cycles\n{}",
            write_digraph(d)
        )));
    }
    let v = choose(d, &eligible);
    assert!(eligible.contains(&v), "peeling policy chose ineligible vertex {v}");
    Ok(PeelStep::Remove(v))
}

fn smallest(_: &Digraph, eligible: &[usize]) -> usize {
    eligible[0]
}

/// One peeling step: `UnionOfCycles` if `d` already is one, otherwise the
/// smallest eligible vertex.
pub fn peel_step(d: &Digraph) -> Result<PeelStep, PeelError> {
    peel_step_with(d, &mut smallest)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelRecord {
    /// Removed vertex, as an index of the input digraph.
    pub vertex: usize,
    pub phi_after: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelingTrace {
    pub phi_initial: Rational,
    pub steps: Vec<PeelRecord>,
    /// The final union of cycles, reindexed to `0..|K|`.
    pub terminal: Digraph,
    /// `terminal_vertices[i]` is the input index of terminal vertex `i`.
    pub terminal_vertices: Vec<usize>,
}

impl PeelingTrace {
    /// Vertex-disjoint cycles of the terminal graph in input indices, each
    /// rotated to start at its smallest terminal index.
    pub fn terminal_cycles(&self) -> Vec<Vec<usize>> {
        let k = &self.terminal;
        let mut seen = vec![false; k.n()];
        let mut out = Vec::new();
        for s in 0..k.n() {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                cycle.push(self.terminal_vertices[v]);
                v = k.out_neighbors(v)[0];
            }
            out.push(cycle);
        }
        out
    }

    /// The shortest terminal cycle, certified against 2φ of the input.
    pub fn certificate(&self) -> CycleCertificate {
        let shortest = self
            .terminal_cycles()
            .into_iter()
            .min_by_key(|c| c.len())
            .expect("terminal union of cycles is nonempty");
        CycleCertificate {
            kind: BoundKind::TwoPhi,
            vertices: shortest,
            bound: Rational::from_integer(2) * self.phi_initial.clone(),
        }
    }

    /// Replays the trace against `d` and checks every invariant: φ never
    /// increases, every intermediate graph is sink-less, the terminal graph
    /// is a union of cycles with φ(K) = |V(K)|/2.
    pub fn check(&self, d: &Digraph) -> Result<(), String> {
        if self.phi_initial != phi(d) {
            return Err("initial φ mismatch".into());
        }
        let mut cur = d.clone();
        let mut labels: Vec<usize> = (0..d.n()).collect();
        let mut prev = self.phi_initial.clone();
        for rec in &self.steps {
            let pos = labels
                .iter()
                .position(|&x| x == rec.vertex)
                .ok_or_else(|| format!("vertex {} removed twice", rec.vertex))?;
            let (next, map) = cur.remove_vertex(pos);
            labels = map.into_iter().map(|i| labels[i]).collect();
            cur = next;
            if !cur.is_sinkless() {
                return Err(format!("sink created by removing {}", rec.vertex));
            }
            let now = phi(&cur);
            if now != rec.phi_after {
                return Err(format!("φ after removing {} misreported", rec.vertex));
            }
            if now > prev {
                return Err(format!("φ increased when removing {}", rec.vertex));
            }
            prev = now;
        }
        if cur != self.terminal || labels != self.terminal_vertices {
            return Err("terminal graph does not match the replay".into());
        }
        if !cur.is_union_of_cycles() {
            return Err("terminal graph is not a union of cycles".into());
        }
        if phi(&cur) != Rational::new(cur.n() as i64, 2) {
            return Err("φ(K) differs from |V(K)|/2".into());
        }
        Ok(())
    }
}

/// Peels with a custom choice among eligible vertices.
pub fn peel_with(
    d: &Digraph,
    mut choose: impl FnMut(&Digraph, &[usize]) -> usize,
) -> Result<PeelingTrace, PeelError> {
    require_sinkless(d)?;
    let phi_initial = phi(d);
    let mut cur = d.clone();
    let mut labels: Vec<usize> = (0..d.n()).collect();
    let mut steps = Vec::new();
    loop {
        match peel_step_with(&cur, &mut choose)? {
            PeelStep::UnionOfCycles => break,
            PeelStep::Remove(v) => {
                let (next, map) = cur.remove_vertex(v);
                steps.push(PeelRecord {
                    vertex: labels[v],
                    phi_after: phi(&next),
                });
                labels = map.into_iter().map(|i| labels[i]).collect();
                cur = next;
            }
        }
    }
    Ok(PeelingTrace {
        phi_initial,
        steps,
        terminal: cur,
        terminal_vertices: labels,
    })
}

/// Peels to a union of cycles, always removing the smallest eligible vertex.
pub fn peel(d: &Digraph) -> Result<PeelingTrace, PeelError> {
    peel_with(d, smallest)
}

/// A directed cycle of length at most 2φ(D), for sink-less nonempty `d`.
pub fn short_cycle_via_peeling(d: &Digraph) -> Result<CycleCertificate, PeelError> {
    Ok(peel(d)?.certificate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_cycle;
    use crate::oracles::girth;

    fn apex() -> Digraph {
        // Triangle 1 -> 2 -> 3 -> 1 and apex 0 with arcs to 1 and 2.
        Digraph::from_arcs(4, [(1, 2), (2, 3), (3, 1), (0, 1), (0, 2)]).unwrap()
    }

    // Independent route: φ(D−v) <= φ(D), by recomputing φ from scratch.
    fn removable_by_difference(d: &Digraph) -> Vec<usize> {
        let whole = phi(d);
        (0..d.n()).filter(|&v| phi(&d.remove_vertex(v).0) <= whole).collect()
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&Digraph::cycle(3)).unwrap(), Rational::from_integer(3));
        assert_eq!(psi(&Digraph::complete(3)).unwrap(), Rational::new(3, 2));
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(psi(&arc), Err(PeelError::SinkPresent(1)));
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(&Digraph::cycle(3)), Rational::new(3, 2));
        assert_eq!(phi(&Digraph::complete(3)), Rational::from_integer(1));
        assert_eq!(phi(&apex()), Rational::new(11, 6));
        assert_eq!(phi(&Digraph::empty(0)), Rational::zero());
        let two_digons = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(phi(&two_digons), Rational::from_integer(2));
    }

    #[test]
    fn removable_on_triangle_is_everything() {
        let t = Digraph::cycle(3);
        assert_eq!(removable_vertices(&t), vec![0, 1, 2]);
        let (lhs, rhs) = removal_sides(&t, 0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn removable_on_out_star() {
        // u=0 -> v=1, v -> a=2, v -> b=3.
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let (lhs, rhs) = removal_sides(&d, 1);
        assert_eq!((lhs, rhs), (Rational::new(1, 3), Rational::new(1, 2)));
        assert_eq!(removable_vertices(&d), vec![0, 2, 3]);
        assert_eq!(removable_vertices(&d), removable_by_difference(&d));
    }

    #[test]
    fn sources_are_always_removable() {
        let d = apex();
        assert_eq!(d.in_degree(0), 0);
        assert!(removable_vertices(&d).contains(&0));
    }

    #[test]
    fn side_sums_equal_phi() {
        for d in [apex(), Digraph::complete(4), Digraph::cycle(5)] {
            let (l, r) = removal_side_sums(&d);
            assert_eq!(l, phi(&d));
            assert_eq!(r, phi(&d));
        }
    }

    #[test]
    fn peel_step_examples() {
        assert_eq!(peel_step(&Digraph::cycle(3)), Ok(PeelStep::UnionOfCycles));
        assert_eq!(peel_step(&apex()), Ok(PeelStep::Remove(0)));
        assert_eq!(peel_step(&Digraph::complete(3)), Ok(PeelStep::Remove(0)));
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(peel_step(&arc), Err(PeelError::NotSinkless(1)));
        assert_eq!(peel_step(&Digraph::empty(0)), Err(PeelError::Empty));
    }

    #[test]
    fn apex_peels_to_triangle() {
        let d = apex();
        let trace = peel(&d).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].vertex, 0);
        assert_eq!(trace.steps[0].phi_after, Rational::new(3, 2));
        assert_eq!(trace.terminal_vertices, vec![1, 2, 3]);
        trace.check(&d).unwrap();
    }

    #[test]
    fn triangle_certificates() {
        let t = Digraph::cycle(3);
        let trace = peel(&t).unwrap();
        assert!(trace.steps.is_empty());
        let c = trace.certificate();
        assert_eq!(c.vertices, vec![0, 1, 2]);
        assert_eq!(c.bound, Rational::from_integer(3));
        assert!(validate_cycle(&t, &c));
    }

    #[test]
    fn bidirected_triangle_gives_digon() {
        let k3 = Digraph::complete(3);
        let trace = peel(&k3).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.terminal.n(), 2);
        let c = trace.certificate();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.bound, Rational::from_integer(2));
        assert!(validate_cycle(&k3, &c));
    }

    #[test]
    fn five_cycle_certifies_itself() {
        let c5 = Digraph::cycle(5);
        let c = short_cycle_via_peeling(&c5).unwrap();
        assert_eq!(c.vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(c.bound, Rational::from_integer(5));
    }

    #[test]
    fn custom_policy_is_respected() {
        let k4 = Digraph::complete(4);
        let trace = peel_with(&k4, |_, eligible| *eligible.last().unwrap()).unwrap();
        trace.check(&k4).unwrap();
        assert_eq!(trace.steps[0].vertex, 3);
    }

    #[test]
    fn exhaustive_four_vertices() {
        // Every labeled sink-less digraph on 4 vertices: the two routes to
        // removability agree, peeling validates, and g <= 2φ < 2ψ.
        let pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let arcs = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| *a);
            let d = Digraph::from_arcs(4, arcs).unwrap();
            assert_eq!(removable_vertices(&d), removable_by_difference(&d));
            if !d.is_sinkless() {
                continue;
            }
            let trace = peel(&d).unwrap();
            trace.check(&d).unwrap();
            let cert = trace.certificate();
            assert!(validate_cycle(&d, &cert));
            let g = girth(&d).unwrap() as u64;
            assert!(cert.bound.cmp_int(g).is_ge());
            let two_psi = Rational::from_integer(2) * psi(&d).unwrap();
            assert!(two_psi.cmp_int(g).is_gt());
        }
    }
}
