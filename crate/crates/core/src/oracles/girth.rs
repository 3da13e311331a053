use std::collections::VecDeque;

use crate::graph::{BoundKind, CycleCertificate, Digraph, Rational};

/// Exact directed girth by breadth-first search from every vertex.
///
/// From source `s`, a shortest `s → … → u` path plus an arc `u → s` is a
/// shortest cycle through `s`. Returns `None` when `d` is acyclic (girth ∞),
/// otherwise a witness whose bound is its own length.
pub fn girth_exact(d: &Digraph) -> Option<CycleCertificate> {
    let n = d.n();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        if d.in_degree(s) == 0 || d.out_degree(s) == 0 {
            continue;
        }
        // Only cycles shorter than the best so far matter.
        let limit = best.as_ref().map_or(n, |c| c.len() - 1);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if dist[u] + 1 > limit {
                break;
            }
            for &w in d.out_neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        // Closing arc u -> s of smallest dist[u]; ties by smaller u.
        let closing = d
            .in_neighbors(s)
            .iter()
            .filter(|&&u| dist[u] != usize::MAX)
            .min_by_key(|&&u| (dist[u], u));
        if let Some(&u) = closing {
            let len = dist[u] + 1;
            if best.as_ref().map_or(true, |c| len < c.len()) {
                let mut path = vec![u];
                let mut cur = u;
                while cur != s {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                best = Some(path);
                if len == 2 {
                    break;
                }
            }
        }
    }

    best.map(|vertices| CycleCertificate {
        kind: BoundKind::ExactGirth,
        bound: Rational::from(vertices.len()),
        vertices,
    })
}

/// Girth as a number; `None` means ∞.
pub fn girth(d: &Digraph) -> Option<usize> {
    girth_exact(d).map(|c| c.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_cycle;

    #[test]
    fn acyclic_is_infinite() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(girth_exact(&path), None);
        assert_eq!(girth(&Digraph::empty(0)), None);
    }

    #[test]
    fn small_girths() {
        assert_eq!(girth(&Digraph::cycle(2)), Some(2));
        assert_eq!(girth(&Digraph::complete(3)), Some(2));
        let c5 = Digraph::cycle(5);
        let w = girth_exact(&c5).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert!(validate_cycle(&c5, &w));
    }

    #[test]
    fn finds_short_cycle_off_the_first_source() {
        // 0 -> 1 -> 2 -> 3 -> 0 plus the triangle 1 -> 2 -> 4 -> 1.
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 1)]).unwrap();
        let w = girth_exact(&d).unwrap();
        assert_eq!(w.len(), 3);
        assert!(validate_cycle(&d, &w));
    }
}
