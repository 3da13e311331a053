use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{text::write_digraph, Digraph, Rational};
use crate::oracles::girth;
use crate::peeling::psi;

use super::enumerate::{labeled_count, labeled_digraph, LABELED_CAP};
use super::{HarnessError, RatioRecord};

pub const RATIO_CAP: usize = 16;
/// Hill-climbing steps without improvement before a restart.
const PATIENCE: u32 = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSearch {
    pub n: usize,
    pub budget: u64,
    pub seed: u64,
    /// Sink-less digraphs whose ratio was computed.
    pub evaluated: u64,
    pub exhaustive: bool,
    pub best: Option<RatioRecord>,
    /// Instances with `g >= 2ψ`; always expected empty.
    pub violations: Vec<String>,
}

struct Search {
    out: RatioSearch,
    best_value: Option<(usize, Rational)>,
}

impl Search {
    /// Ratio `g/ψ` of a sink-less digraph as `(g, ψ)`, recording it.
    fn evaluate(&mut self, d: &Digraph, index: u64) -> (usize, Rational) {
        self.out.evaluated += 1;
        let g = girth(d).expect("sink-less digraphs have cycles");
        let p = psi(d).expect("sink-less");
        if (p.clone() * Rational::from(2u64)).cmp_int(g as u64) != Ordering::Greater {
            self.out.violations.push(write_digraph(d));
        }
        let improves = self
            .best_value
            .as_ref()
            .map_or(true, |(bg, bp)| ratio_cmp((g, &p), (*bg, bp)) == Ordering::Greater);
        if improves {
            self.best_value = Some((g, p.clone()));
            self.out.best = Some(RatioRecord {
                girth: g,
                ratio: g as f64 / p.to_f64(),
                psi: p.clone(),
                n: d.n(),
                index,
                instance: write_digraph(d),
            });
        }
        (g, p)
    }

    fn exhausted(&self) -> bool {
        self.out.evaluated >= self.out.budget
    }
}

fn ratio_cmp(a: (usize, &Rational), b: (usize, &Rational)) -> Ordering {
    (Rational::from(a.0) * b.1).cmp(&(Rational::from(b.0) * a.1))
}

fn to_digraph(n: usize, out: &[Vec<usize>]) -> Digraph {
    let arcs = out
        .iter()
        .enumerate()
        .flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)));
    Digraph::from_arcs(n, arcs).expect("out-lists hold distinct non-self targets")
}

fn random_out_lists(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let max_deg = (n - 1).min(3);
    (0..n)
        .map(|v| {
            let k = rng.gen_range(1..=max_deg);
            let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            let mut pick = Vec::with_capacity(k);
            for _ in 0..k {
                pick.push(others.swap_remove(rng.gen_range(0..others.len())));
            }
            pick.sort_unstable();
            pick
        })
        .collect()
}

/// Redirects, adds, or drops one arc, keeping every out-degree positive.
fn mutate(n: usize, out: &mut [Vec<usize>], rng: &mut ChaCha8Rng) {
    let v = rng.gen_range(0..n);
    let free: Vec<usize> = (0..n).filter(|&w| w != v && !out[v].contains(&w)).collect();
    let list = &mut out[v];
    match rng.gen_range(0..3) {
        0 if !free.is_empty() => {
            let i = rng.gen_range(0..list.len());
            list[i] = free[rng.gen_range(0..free.len())];
        }
        1 if !free.is_empty() => list.push(free[rng.gen_range(0..free.len())]),
        2 if list.len() > 1 => {
            list.swap_remove(rng.gen_range(0..list.len()));
        }
        _ => {}
    }
    list.sort_unstable();
}

/// Searches sink-less digraphs on `n` vertices for a large `g/ψ`.
///
/// When the whole labeled space fits in `budget` it is scanned in arc-mask
/// order; otherwise random starts are improved by single-arc moves, up to
/// `budget` evaluations. Every evaluated instance is also checked against
/// `g < 2ψ`.
pub fn extremal_ratio_search(n: usize, budget: u64, seed: u64) -> Result<RatioSearch, HarnessError> {
    if n > RATIO_CAP {
        return Err(HarnessError::CapExceeded {
            generator: "search-ratio",
            n,
            cap: RATIO_CAP,
        });
    }
    let exhaustive = n <= LABELED_CAP && labeled_count(n) <= budget;
    let mut s = Search {
        out: RatioSearch {
            n,
            budget,
            seed,
            evaluated: 0,
            exhaustive,
            best: None,
            violations: Vec::new(),
        },
        best_value: None,
    };
    if n < 2 || budget == 0 {
        return Ok(s.out);
    }

    if exhaustive {
        for mask in 0..labeled_count(n) {
            let d = labeled_digraph(n, mask);
            if d.is_sinkless() {
                s.evaluate(&d, mask);
            }
        }
        return Ok(s.out);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while !s.exhausted() {
        let mut cur = random_out_lists(n, &mut rng);
        let mut cur_val = s.evaluate(&to_digraph(n, &cur), s.out.evaluated);
        let mut stale = 0;
        while stale < PATIENCE && !s.exhausted() {
            let mut next = cur.clone();
            mutate(n, &mut next, &mut rng);
            let val = s.evaluate(&to_digraph(n, &next), s.out.evaluated);
            if ratio_cmp((val.0, &val.1), (cur_val.0, &cur_val.1)) == Ordering::Greater {
                stale = 0;
            } else {
                stale += 1;
            }
            if ratio_cmp((val.0, &val.1), (cur_val.0, &cur_val.1)) != Ordering::Less {
                cur = next;
                cur_val = val;
            }
        }
    }
    Ok(s.out)
}
