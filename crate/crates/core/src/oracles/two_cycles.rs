use serde::Serialize;

use crate::graph::{check_cycle, text::write_digraph, BoundKind, CycleCertificate, Digraph, Rational};

use super::{for_each_cycle, OracleError};

/// Two directed cycles (possibly the same one) meeting in as few vertices as
/// the host digraph allows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCyclePair {
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    /// Sorted common vertices.
    pub intersection: Vec<usize>,
    /// Number of out-degree-1 vertices of the host.
    pub p: usize,
    /// `true` iff every out-degree lies in {1, 2}; only then is
    /// `|intersection| <= p + 1` guaranteed.
    pub in_hypothesis: bool,
    /// `c1 == c2`, which happens when the host has a single cycle.
    pub degenerate: bool,
}

impl TwoCyclePair {
    pub fn intersection_bound(&self) -> usize {
        self.p + 1
    }
}

fn out_degrees_in_one_two(d: &Digraph) -> bool {
    (0..d.n()).all(|v| matches!(d.out_degree(v), 1 | 2))
}

/// Exhaustive search for a pair of cycles with the smallest common vertex
/// set; ties go to the smaller `|C1| + |C2|`, then to enumeration order.
///
/// The pair may repeat a cycle. When all out-degrees are 1 or 2 the
/// intersection must have at most `p + 1` vertices; anything else is
/// returned as [`OracleError::TheoremViolation`].
pub fn two_cycles_min_intersection(d: &Digraph) -> Result<TwoCyclePair, OracleError> {
    if d.n() > 64 {
        return Err(OracleError::ResourceCap {
            what: "two-cycle search vertices",
            limit: 64,
        });
    }
    let mut cycles: Vec<(Vec<usize>, u64)> = Vec::new();
    for_each_cycle(d, d.n(), |c| {
        let mask = c.iter().fold(0u64, |m, &v| m | (1 << v));
        cycles.push((c.to_vec(), mask));
    })?;
    if cycles.is_empty() {
        return Err(OracleError::Acyclic);
    }

    let mut best = (u32::MAX, usize::MAX, 0usize, 0usize);
    for (i, (ci, mi)) in cycles.iter().enumerate() {
        for (j, (cj, mj)) in cycles.iter().enumerate().skip(i) {
            let key = ((mi & mj).count_ones(), ci.len() + cj.len(), i, j);
            if key < best {
                best = key;
            }
        }
    }
    let (_, _, i, j) = best;
    let common = cycles[i].1 & cycles[j].1;
    let pair = TwoCyclePair {
        c1: cycles[i].0.clone(),
        c2: cycles[j].0.clone(),
        intersection: (0..d.n()).filter(|&v| common & (1 << v) != 0).collect(),
        p: d.count_out_degree_one(),
        in_hypothesis: out_degrees_in_one_two(d),
        degenerate: i == j,
    };
    if pair.in_hypothesis && pair.intersection.len() > pair.intersection_bound() {
        return Err(OracleError::TheoremViolation(format!(
            "cycles {:?} and {:?} meet in {} vertices, more than p+1 = {}\n{}",
            pair.c1,
            pair.c2,
            pair.intersection.len(),
            pair.intersection_bound(),
            write_digraph(d)
        )));
    }
    Ok(pair)
}

/// ⌈(n+p)/2⌉ for a digraph with all out-degrees in {1, 2}.
pub fn deg2_bound(d: &Digraph) -> Rational {
    Rational::from((d.n() + d.count_out_degree_one()).div_ceil(2))
}

/// For out-degrees in {1, 2}: the shorter cycle of a minimum-intersection
/// pair, certified against ⌈(n+p)/2⌉.
///
/// `|C1| + |C2| − |C1 ∩ C2| <= n` and `|C1 ∩ C2| <= p + 1` give
/// `min(|C1|, |C2|) <= (n + p + 1) / 2`.
pub fn deg2_short_cycle(d: &Digraph) -> Result<CycleCertificate, OracleError> {
    if !out_degrees_in_one_two(d) {
        return Err(OracleError::Precondition(
            "every out-degree must be 1 or 2".into(),
        ));
    }
    let pair = two_cycles_min_intersection(d)?;
    let shorter = if pair.c2.len() < pair.c1.len() {
        pair.c2
    } else {
        pair.c1
    };
    let cert = CycleCertificate {
        kind: BoundKind::HalfNPlusP,
        vertices: shorter,
        bound: deg2_bound(d),
    };
    check_cycle(d, &cert).map_err(|e| OracleError::BoundViolation(format!("{e}\n{}", write_digraph(d))))?;
    Ok(cert)
}
