use crate::graph::Digraph;

use super::OracleError;

/// Hard cap on the number of cycles any enumeration may produce.
pub const MAX_ENUMERATED_CYCLES: usize = 10_000_000;

/// Calls `visit` once per directed simple cycle of length `<= max_len`, in
/// canonical form (rotation starting at the cycle's smallest vertex).
///
/// Plain backtracking: from each start `s`, extend simple paths through
/// vertices larger than `s` and report every arc that closes back to `s`.
/// Fails with [`OracleError::ResourceCap`] instead of truncating.
pub fn for_each_cycle(
    d: &Digraph,
    max_len: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<usize, OracleError> {
    let n = d.n();
    let mut count = 0usize;
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::with_capacity(n);
    // Stack of (vertex, index of next out-neighbour to try).
    let mut stack: Vec<(usize, usize)> = Vec::with_capacity(n);

    for s in 0..n {
        if max_len < 2 {
            break;
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        stack.clear();
        stack.push((s, 0));
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let outs = d.out_neighbors(u);
            if *next < outs.len() {
                let w = outs[*next];
                *next += 1;
                if w == s {
                    if path.len() >= 2 {
                        count += 1;
                        if count > MAX_ENUMERATED_CYCLES {
                            on_path.iter_mut().for_each(|x| *x = false);
                            return Err(OracleError::ResourceCap {
                                what: "enumerated cycles",
                                limit: MAX_ENUMERATED_CYCLES,
                            });
                        }
                        visit(&path);
                    }
                } else if w > s && !on_path[w] && path.len() < max_len {
                    on_path[w] = true;
                    path.push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[u] = false;
                path.pop();
            }
        }
    }
    Ok(count)
}

/// Every directed simple cycle of length `<= max_len`, canonical rotation,
/// in discovery order.
pub fn enumerate_cycles(d: &Digraph, max_len: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let mut out = Vec::new();
    for_each_cycle(d, max_len, |c| out.push(c.to_vec()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_one_cycle() {
        assert_eq!(enumerate_cycles(&Digraph::cycle(3), 3).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn bidirected_triangle_has_five() {
        let cycles = enumerate_cycles(&Digraph::complete(3), 3).unwrap();
        assert_eq!(cycles.len(), 5);
        assert_eq!(cycles.iter().filter(|c| c.len() == 2).count(), 3);
        assert_eq!(enumerate_cycles(&Digraph::complete(3), 2).unwrap().len(), 3);
    }

    #[test]
    fn dag_has_none() {
        let d = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(enumerate_cycles(&d, 4).unwrap().is_empty());
    }

    #[test]
    fn complete_digraph_counts() {
        // Directed simple cycles of K*_n: sum over k of C(n,k)(k-1)!.
        // n = 4: 6*1 + 4*2 + 1*6 = 20; n = 5: 10 + 20 + 30 + 24 = 84.
        assert_eq!(enumerate_cycles(&Digraph::complete(4), 4).unwrap().len(), 20);
        assert_eq!(enumerate_cycles(&Digraph::complete(5), 5).unwrap().len(), 84);
    }

    #[test]
    fn canonical_rotation() {
        for c in enumerate_cycles(&Digraph::complete(4), 4).unwrap() {
            assert_eq!(c[0], *c.iter().min().unwrap());
        }
    }
}
