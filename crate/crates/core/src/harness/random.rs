use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, RainbowInstance};

use super::HarnessError;

/// Largest `n` for random rainbow instances.
pub const RAINBOW_CAP: usize = 12;
/// Largest `n` for exhaustive disjoint pairings.
pub const PAIRINGS_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RainbowMode {
    /// No edge appears in two families.
    Disjoint,
    /// Families are drawn independently and may share edges.
    Unconstrained,
}

/// Seed for instance `index` of size `n` under a run seed.
pub fn derive_seed(seed: u64, n: usize, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 48) ^ index);
    rng.next_u64()
}

fn all_edges(n: usize) -> Vec<Edge> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)))
        .collect()
}

pub fn disjoint_feasible(n: usize, p: usize) -> bool {
    p <= n && 2 * n - p <= n * n.saturating_sub(1) / 2
}

/// `n` families on `n` vertices, exactly `p` of them single edges,
/// reproducible from `seed`.
pub fn random_rainbow_instance(
    n: usize,
    p: usize,
    seed: u64,
    mode: RainbowMode,
) -> Result<RainbowInstance, HarnessError> {
    if n > RAINBOW_CAP {
        return Err(HarnessError::CapExceeded {
            generator: "rainbow",
            n,
            cap: RAINBOW_CAP,
        });
    }
    if p > n {
        return Err(HarnessError::BadConfig(format!("p = {p} exceeds n = {n}")));
    }
    let edges = all_edges(n);
    let needs_pairs = p < n;
    if edges.is_empty() && n > 0 || needs_pairs && edges.len() < 2 {
        return Err(HarnessError::Infeasible { n, p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes: Vec<usize> = (0..n).map(|i| if i < p { 1 } else { 2 }).collect();
    sizes.shuffle(&mut rng);

    let families = match mode {
        RainbowMode::Disjoint => {
            if !disjoint_feasible(n, p) {
                return Err(HarnessError::Infeasible { n, p });
            }
            let mut pool = edges;
            pool.shuffle(&mut rng);
            let mut it = pool.into_iter();
            sizes
                .iter()
                .map(|&s| it.by_ref().take(s).collect())
                .collect()
        }
        RainbowMode::Unconstrained => sizes
            .iter()
            .map(|&s| {
                let i = rng.gen_range(0..edges.len());
                if s == 1 {
                    return vec![edges[i]];
                }
                let mut j = rng.gen_range(0..edges.len() - 1);
                if j >= i {
                    j += 1;
                }
                vec![edges[i], edges[j]]
            })
            .collect(),
    };
    Ok(RainbowInstance::new(n, families).expect("generated families are valid"))
}

/// Instance `index` of a mixed stream: `p` uniform in `0..=n`, disjoint
/// when that is possible and the draw says so, unconstrained otherwise.
pub fn mixed_rainbow_instance(n: usize, seed: u64, index: u64) -> Result<RainbowInstance, HarnessError> {
    let s = derive_seed(seed, n, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let p = rng.gen_range(0..=n);
    let mode = if rng.gen_bool(0.5) && disjoint_feasible(n, p) {
        RainbowMode::Disjoint
    } else {
        RainbowMode::Unconstrained
    };
    random_rainbow_instance(n, p, rng.next_u64(), mode)
}

/// Every way to split `2n` distinct edges of `K_n` into `n` unordered
/// pairs, one family per pair, families listed by their smallest edge.
/// Non-empty only when `C(n,2) >= 2n`.
pub fn disjoint_pairings(n: usize) -> Result<Vec<RainbowInstance>, HarnessError> {
    if n > PAIRINGS_CAP {
        return Err(HarnessError::CapExceeded {
            generator: "pairings",
            n,
            cap: PAIRINGS_CAP,
        });
    }
    let edges = all_edges(n);
    let mut out = Vec::new();
    if 2 * n > edges.len() || n == 0 {
        return Ok(out);
    }
    for mask in 0u64..1 << edges.len() {
        if mask.count_ones() as usize != 2 * n {
            continue;
        }
        let chosen: Vec<Edge> = (0..edges.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| edges[i])
            .collect();
        pairings(&chosen, &mut Vec::new(), &mut |fams| {
            out.push(RainbowInstance::new(n, fams.to_vec()).expect("disjoint pairs are valid"));
        });
    }
    Ok(out)
}

fn pairings(rest: &[Edge], acc: &mut Vec<Vec<Edge>>, emit: &mut impl FnMut(&[Vec<Edge>])) {
    let Some((&first, tail)) = rest.split_first() else {
        emit(acc);
        return;
    };
    for i in 0..tail.len() {
        let mut remaining = tail.to_vec();
        let partner = remaining.remove(i);
        acc.push(vec![first, partner]);
        pairings(&remaining, acc, emit);
        acc.pop();
    }
}
