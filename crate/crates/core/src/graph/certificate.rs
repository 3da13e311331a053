//! Checkable witnesses for short cycles and rainbow cycles.
//!
//! Validation never trusts the producer: it re-derives every arc, colour and
//! vertex from the host graph or family system.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Digraph, Edge, Rational, RainbowInstance};

/// What a certificate's bound stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// 2·φ(D) from potential peeling.
    TwoPhi,
    /// ⌈(n+p)/2⌉, for out-degrees in {1,2} or family sizes in {1,2}.
    HalfNPlusP,
    /// Exact directed girth found by exhaustive search.
    ExactGirth,
    /// Exact shortest rainbow cycle found by exhaustive search.
    ExactRg,
}

/// A directed cycle `v_0 → v_1 → … → v_{k−1} → v_0` with the bound it certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub kind: BoundKind,
    pub vertices: Vec<usize>,
    pub bound: Rational,
}

impl CycleCertificate {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// One edge of a rainbow cycle together with the family it is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowStep {
    pub edge: Edge,
    pub color: usize,
}

/// A rainbow cycle listed as consecutive edges of a closed walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowCycleCertificate {
    pub kind: BoundKind,
    pub steps: Vec<RainbowStep>,
    pub bound: Rational,
}

impl RainbowCycleCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn colors(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.color)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("cycle has {0} vertices; at least {1} required")]
    TooShort(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} repeated")]
    RepeatedVertex(usize),
    #[error("arc {0}->{1} missing")]
    MissingArc(usize, usize),
    #[error("length {len} exceeds certified bound {bound}")]
    ExceedsBound { len: usize, bound: Rational },
    #[error("colour {0} used twice")]
    RepeatedColor(usize),
    #[error("edge {edge} is not in family {color}")]
    EdgeNotInFamily { edge: Edge, color: usize },
    #[error("edges do not form a closed walk with distinct vertices")]
    NotACycle,
    #[error("loop certificate against a simple-origin instance")]
    LoopInSimpleInstance,
}

/// Full check of a directed-cycle certificate against `d`.
pub fn check_cycle(d: &Digraph, c: &CycleCertificate) -> Result<(), CertificateError> {
    let k = c.vertices.len();
    if k < 2 {
        return Err(CertificateError::TooShort(k, 2));
    }
    let mut seen = HashSet::with_capacity(k);
    for &v in &c.vertices {
        if v >= d.n() {
            return Err(CertificateError::VertexOutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(CertificateError::RepeatedVertex(v));
        }
    }
    for i in 0..k {
        let (u, v) = (c.vertices[i], c.vertices[(i + 1) % k]);
        if !d.has_arc(u, v) {
            return Err(CertificateError::MissingArc(u, v));
        }
    }
    if c.bound.cmp_int(k as u64).is_lt() {
        return Err(CertificateError::ExceedsBound {
            len: k,
            bound: c.bound.clone(),
        });
    }
    Ok(())
}

pub fn validate_cycle(d: &Digraph, c: &CycleCertificate) -> bool {
    check_cycle(d, c).is_ok()
}

/// Walks the certificate's edges as a closed walk and returns its vertex
/// sequence `v_0, …, v_{k−1}`, where step `i` joins `v_i` and `v_{i+1}`.
pub fn rainbow_walk_vertices(steps: &[RainbowStep]) -> Option<Vec<usize>> {
    let first = steps.first()?.edge;
    'orient: for (start, next) in [(first.lo(), first.hi()), (first.hi(), first.lo())] {
        let mut vertices = vec![start];
        let mut cur = next;
        for s in &steps[1..] {
            vertices.push(cur);
            match s.edge.other(cur) {
                Some(w) => cur = w,
                None => continue 'orient,
            }
        }
        if cur != start {
            continue;
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        if vertices.iter().all(|v| seen.insert(*v)) {
            return Some(vertices);
        }
    }
    None
}

pub fn check_rainbow_cycle(
    inst: &RainbowInstance,
    c: &RainbowCycleCertificate,
) -> Result<(), CertificateError> {
    let k = c.steps.len();
    if k == 0 {
        return Err(CertificateError::TooShort(0, 1));
    }
    let mut colors = HashSet::with_capacity(k);
    for s in &c.steps {
        if !colors.insert(s.color) {
            return Err(CertificateError::RepeatedColor(s.color));
        }
        if !inst.contains(s.color, s.edge) {
            return Err(CertificateError::EdgeNotInFamily {
                edge: s.edge,
                color: s.color,
            });
        }
    }
    if k == 1 && inst.is_simple_origin() {
        return Err(CertificateError::LoopInSimpleInstance);
    }
    if rainbow_walk_vertices(&c.steps).is_none() {
        return Err(CertificateError::NotACycle);
    }
    if c.bound.cmp_int(k as u64).is_lt() {
        return Err(CertificateError::ExceedsBound {
            len: k,
            bound: c.bound.clone(),
        });
    }
    Ok(())
}

pub fn validate_rainbow_cycle(inst: &RainbowInstance, c: &RainbowCycleCertificate) -> bool {
    check_rainbow_cycle(inst, c).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(vertices: Vec<usize>, bound: i64, kind: BoundKind) -> CycleCertificate {
        CycleCertificate {
            kind,
            vertices,
            bound: Rational::from_integer(bound),
        }
    }

    fn step(u: usize, v: usize, color: usize) -> RainbowStep {
        RainbowStep {
            edge: Edge::new(u, v),
            color,
        }
    }

    fn rcert(steps: Vec<RainbowStep>) -> RainbowCycleCertificate {
        RainbowCycleCertificate {
            kind: BoundKind::ExactRg,
            bound: Rational::from(steps.len()),
            steps,
        }
    }

    #[test]
    fn triangle_certificates() {
        let t = Digraph::cycle(3);
        assert!(validate_cycle(&t, &cert(vec![0, 1, 2], 3, BoundKind::ExactGirth)));
        assert!(validate_cycle(&t, &cert(vec![1, 2, 0], 3, BoundKind::ExactGirth)));
        assert_eq!(
            check_cycle(&t, &cert(vec![0, 2, 1], 3, BoundKind::ExactGirth)),
            Err(CertificateError::MissingArc(0, 2))
        );
        assert!(matches!(
            check_cycle(&t, &cert(vec![0, 1, 2], 2, BoundKind::ExactGirth)),
            Err(CertificateError::ExceedsBound { len: 3, .. })
        ));
    }

    #[test]
    fn digon_within_two_phi() {
        let d = Digraph::cycle(2);
        assert!(validate_cycle(&d, &cert(vec![0, 1], 2, BoundKind::TwoPhi)));
        assert_eq!(
            check_cycle(&d, &cert(vec![0], 2, BoundKind::TwoPhi)),
            Err(CertificateError::TooShort(1, 2))
        );
    }

    #[test]
    fn exhaustive_rotations_on_four_vertices() {
        // Every sequence over 0..4 of length 2..=4 is accepted by the
        // validator exactly when it is a rotation of a directed cycle of the
        // graph; here the graph is C_4 plus the digon 0<->2.
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 0), (0, 2)]).unwrap();
        let cycles: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3], vec![0, 2], vec![0, 1, 2], vec![0, 2, 3]];
        let rotations: HashSet<Vec<usize>> = cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |r| {
                let mut x = c.clone();
                x.rotate_left(r);
                x
            }))
            .collect();
        let mut accepted = 0;
        for k in 2..=4usize {
            for code in 0..4usize.pow(k as u32) {
                let seq: Vec<usize> = (0..k).map(|i| (code / 4usize.pow(i as u32)) % 4).collect();
                let ok = validate_cycle(&d, &cert(seq.clone(), 4, BoundKind::ExactGirth));
                assert_eq!(ok, rotations.contains(&seq), "{seq:?}");
                accepted += ok as usize;
            }
        }
        assert_eq!(accepted, rotations.len());
    }

    #[test]
    fn rainbow_shared_edge_cycle() {
        let inst = RainbowInstance::new(
            3,
            vec![vec![Edge::new(0, 1)], vec![Edge::new(0, 1), Edge::new(0, 2)]],
        )
        .unwrap();
        assert!(validate_rainbow_cycle(&inst, &rcert(vec![step(0, 1, 0), step(0, 1, 1)])));
        assert_eq!(
            check_rainbow_cycle(&inst, &rcert(vec![step(0, 1, 0), step(0, 2, 1)])),
            Err(CertificateError::NotACycle)
        );
        assert_eq!(
            check_rainbow_cycle(&inst, &rcert(vec![step(0, 1, 1), step(0, 1, 1)])),
            Err(CertificateError::RepeatedColor(1))
        );
    }

    #[test]
    fn rainbow_triangle_on_four_vertices() {
        let inst = RainbowInstance::new(
            4,
            vec![
                vec![Edge::new(0, 1)],
                vec![Edge::new(0, 2), Edge::new(1, 2)],
                vec![Edge::new(0, 3), Edge::new(1, 3)],
                vec![Edge::new(2, 3)],
            ],
        )
        .unwrap();
        let c = rcert(vec![step(1, 2, 1), step(2, 3, 3), step(1, 3, 2)]);
        assert!(validate_rainbow_cycle(&inst, &c));
        assert_eq!(rainbow_walk_vertices(&c.steps), Some(vec![1, 2, 3]));
        let wrong_family = rcert(vec![step(1, 2, 1), step(2, 3, 3), step(1, 3, 0)]);
        assert!(matches!(
            check_rainbow_cycle(&inst, &wrong_family),
            Err(CertificateError::EdgeNotInFamily { .. })
        ));
    }

    #[test]
    fn loops_only_in_multigraphs() {
        let multi = RainbowInstance::multigraph(1, vec![vec![Edge::new(0, 0)]]).unwrap();
        assert!(validate_rainbow_cycle(&multi, &rcert(vec![step(0, 0, 0)])));
        let simple = RainbowInstance::new(2, vec![vec![Edge::new(0, 1)]]).unwrap();
        assert_eq!(
            check_rainbow_cycle(&simple, &rcert(vec![step(0, 1, 0)])),
            Err(CertificateError::LoopInSimpleInstance)
        );
    }

    #[test]
    fn walk_rejects_figure_eight() {
        // Two triangles through vertex 0: closed walk, repeated vertex.
        let steps = vec![
            step(0, 1, 0),
            step(1, 2, 1),
            step(2, 0, 2),
            step(0, 3, 3),
            step(3, 4, 4),
            step(4, 0, 5),
        ];
        assert_eq!(rainbow_walk_vertices(&steps), None);
    }

    #[test]
    fn json_shape() {
        let c = cert(vec![0, 1], 2, BoundKind::TwoPhi);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"two-phi","vertices":[0,1],"bound":{"num":2,"den":1}}"#
        );
    }
}
