use serde::{Deserialize, Serialize};

use crate::graph::Digraph;

use super::HarnessError;

/// Largest `n` for labeled enumeration: `2^(n(n−1))` graphs.
pub const LABELED_CAP: usize = 5;
/// Largest `n` for out-neighbourhood maps.
pub const OUTMAP_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DigraphFilter {
    None,
    Sinkless,
    StronglyConnected,
}

impl DigraphFilter {
    pub fn accepts(self, d: &Digraph) -> bool {
        match self {
            DigraphFilter::None => true,
            DigraphFilter::Sinkless => d.is_sinkless(),
            DigraphFilter::StronglyConnected => is_strongly_connected(d),
        }
    }
}

fn reach_mask(n: usize, start: usize, next: impl Fn(usize) -> u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut grown = 0;
        for v in 0..n {
            if frontier & (1 << v) != 0 {
                grown |= next(v);
            }
        }
        frontier = grown & !seen;
        seen |= grown;
    }
    seen
}

/// Every vertex reaches every other. The empty digraph counts as not
/// strongly connected.
pub fn is_strongly_connected(d: &Digraph) -> bool {
    let n = d.n();
    if n == 0 || n > 64 {
        return false;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mask = |vs: &[usize]| vs.iter().fold(0u64, |m, &w| m | (1 << w));
    reach_mask(n, 0, |v| mask(d.out_neighbors(v))) == all
        && reach_mask(n, 0, |v| mask(d.in_neighbors(v))) == all
}

/// Arc slots in bitmask order: `(u, v)` for `u != v`, lexicographic.
pub fn arc_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

pub fn labeled_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1))
}

/// The labeled digraph whose arc set is bit-encoded by `mask` over
/// [`arc_slots`].
pub fn labeled_digraph(n: usize, mask: u64) -> Digraph {
    let arcs = arc_slots(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, a)| a);
    Digraph::from_arcs(n, arcs).expect("slots are valid arcs")
}

fn check_labeled_cap(n: usize) -> Result<(), HarnessError> {
    if n > LABELED_CAP {
        return Err(HarnessError::CapExceeded {
            generator: "labeled",
            n,
            cap: LABELED_CAP,
        });
    }
    Ok(())
}

/// All `2^(n(n−1))` labeled simple digraphs on `n` vertices that pass
/// `filter`, in increasing arc-bitmask order.
pub fn enumerate_digraphs(
    n: usize,
    filter: DigraphFilter,
) -> Result<impl Iterator<Item = Digraph>, HarnessError> {
    check_labeled_cap(n)?;
    Ok((0..labeled_count(n))
        .map(move |m| labeled_digraph(n, m))
        .filter(move |d| filter.accepts(d)))
}

/// Digraphs where every vertex picks an out-neighbourhood with between
/// `dmin` and `dmax` vertices, indexed in mixed radix (vertex 0 least
/// significant).
#[derive(Clone, Debug)]
pub struct OutmapSpace {
    n: usize,
    /// `choices[v]`: candidate out-neighbourhoods of `v`, as vertex lists.
    choices: Vec<Vec<Vec<usize>>>,
}

impl OutmapSpace {
    pub fn new(n: usize, dmin: usize, dmax: usize) -> Result<Self, HarnessError> {
        if n > OUTMAP_CAP {
            return Err(HarnessError::CapExceeded {
                generator: "outmaps",
                n,
                cap: OUTMAP_CAP,
            });
        }
        if dmin > dmax {
            return Err(HarnessError::BadConfig(format!(
                "out-degree range {dmin}..{dmax} is empty"
            )));
        }
        let choices = (0..n)
            .map(|v| {
                let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
                let mut subsets: Vec<Vec<usize>> = (0u32..1 << others.len())
                    .filter(|s| (dmin..=dmax).contains(&(s.count_ones() as usize)))
                    .map(|s| {
                        others
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| s & (1 << i) != 0)
                            .map(|(_, &w)| w)
                            .collect()
                    })
                    .collect();
                subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                subsets
            })
            .collect();
        Ok(OutmapSpace { n, choices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(Σ_{d=dmin..dmax} C(n−1, d))^n`.
    pub fn len(&self) -> u64 {
        self.choices.iter().map(|c| c.len() as u64).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mut index: u64) -> Digraph {
        let mut arcs = Vec::with_capacity(2 * self.n);
        for (v, c) in self.choices.iter().enumerate() {
            let k = c.len() as u64;
            let pick = &c[(index % k) as usize];
            index /= k;
            arcs.extend(pick.iter().map(|&w| (v, w)));
        }
        Digraph::from_arcs(self.n, arcs).expect("choices are valid arcs")
    }

    pub fn iter(&self) -> impl Iterator<Item = Digraph> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Every digraph with all out-degrees in `dmin..=dmax`.
pub fn enumerate_outmaps(
    n: usize,
    dmin: usize,
    dmax: usize,
) -> Result<impl Iterator<Item = Digraph>, HarnessError> {
    let space = OutmapSpace::new(n, dmin, dmax)?;
    Ok((0..space.len()).map(move |i| space.get(i)))
}
