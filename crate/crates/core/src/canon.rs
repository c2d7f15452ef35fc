//! Canonical labelling for the small uncoloured graphs that arise as red
//! graphs of red-blue complete graphs.
//!
//! Iterative refinement (split cells by neighbour counts against every cell
//! until stable) followed by backtracking over the residual non-singleton
//! cells. Branches that individualise mutual twins are skipped, which keeps
//! highly symmetric graphs (empty, complete, unions of cliques) linear
//! instead of factorial. The canonical form is the maximal packed
//! upper-triangular bit string over all leaves, so it fits in a `u64` for
//! `n ≤ 11`.

/// Edge list of a packed upper-triangular form.
pub fn unpack_edges(bits: u64, n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if bits >> idx & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    edges
}

/// Canonical form of the graph given by bitmask adjacency rows: the maximal
/// packed upper triangle over all vertex labellings, restricted by
/// refinement.
pub fn canonical_form(adj: &[u64], n: usize) -> u64 {
    assert!(
        n * n.saturating_sub(1) / 2 <= 64,
        "canonical_form supports n <= 11"
    );
    if n <= 1 {
        return 0;
    }
    let mut best = 0u64;
    let mut have_leaf = false;
    let cells = refine(adj, n, vec![(0..n).collect()]);
    search(adj, n, cells, &mut best, &mut have_leaf);
    best
}

fn search(adj: &[u64], n: usize, cells: Vec<Vec<usize>>, best: &mut u64, have_leaf: &mut bool) {
    let target = match cells.iter().position(|c| c.len() > 1) {
        None => {
            // discrete partition: evaluate the labelling
            let mut label = vec![0usize; n];
            for (pos, cell) in cells.iter().enumerate() {
                label[pos] = cell[0];
            }
            let mut bits = 0u64;
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if adj[label[i]] >> label[j] & 1 == 1 {
                        bits |= 1 << idx;
                    }
                    idx += 1;
                }
            }
            if !*have_leaf || bits > *best {
                *best = bits;
                *have_leaf = true;
            }
            return;
        }
        Some(t) => t,
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // skip vertices twinned with an already-tried branch: swapping the
        // two is an automorphism, so the subtrees evaluate identically
        if tried.iter().any(|&u| {
            let mask = !(1u64 << u) & !(1u64 << v);
            adj[u] & mask == adj[v] & mask
        }) {
            continue;
        }
        tried.push(v);
        let mut child: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
        for (ci, c) in cells.iter().enumerate() {
            if ci == target {
                child.push(vec![v]);
                child.push(c.iter().copied().filter(|&u| u != v).collect());
            } else {
                child.push(c.clone());
            }
        }
        let refined = refine(adj, n, child);
        search(adj, n, refined, best, have_leaf);
    }
}

/// Equitable refinement: repeatedly split every cell by the vector of
/// neighbour counts into all current cells, ordering fragments by that
/// vector (descending). Cell order depends only on the split history, so it
/// is isomorphism-invariant.
fn refine(adj: &[u64], _n: usize, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key: Vec<u32> = masks.iter().map(|&m| (adj[v] & m).count_ones()).collect();
                    (key, v)
                })
                .collect();
            keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            let mut frag: Vec<usize> = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    frag.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut frag));
                    frag.push(w[1].1);
                    changed = true;
                }
            }
            next.push(frag);
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    /// Packs the upper triangle of `adj` under the identity labelling.
    fn pack_upper(adj: &[u64], n: usize) -> u64 {
        let mut bits = 0u64;
        let mut idx = 0;
        for (i, row) in adj.iter().enumerate().take(n) {
            for j in (i + 1)..n {
                if row >> j & 1 == 1 {
                    bits |= 1 << idx;
                }
                idx += 1;
            }
        }
        bits
    }

    fn rows_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn random_graph(n: usize, rng: &mut SeededRng) -> Vec<u64> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.bool_with(0.5) {
                    edges.push((i, j));
                }
            }
        }
        rows_from_edges(n, &edges)
    }

    fn permuted(adj: &[u64], n: usize, perm: &[usize]) -> Vec<u64> {
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && adj[perm[i]] >> perm[j] & 1 == 1 {
                    out[i] |= 1 << j;
                }
            }
        }
        out
    }

    #[test]
    fn canonical_is_permutation_invariant() {
        let mut rng = SeededRng::new(11);
        for n in 2..=9usize {
            for _ in 0..60 {
                let adj = random_graph(n, &mut rng);
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    let j = rng.below(i as u64 + 1) as usize;
                    perm.swap(i, j);
                }
                let shuffled = permuted(&adj, n, &perm);
                assert_eq!(canonical_form(&adj, n), canonical_form(&shuffled, n));
            }
        }
    }

    #[test]
    fn canonical_distinguishes_nonisomorphic() {
        // path P4 vs star K_{1,3}
        let p4 = rows_from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = rows_from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_form(&p4, 4), canonical_form(&star, 4));
    }

    #[test]
    fn canonical_form_is_realisable() {
        // the canonical form unpacks to a graph with the same canonical form
        let mut rng = SeededRng::new(5);
        for _ in 0..50 {
            let adj = random_graph(7, &mut rng);
            let form = canonical_form(&adj, 7);
            let back = rows_from_edges(7, &unpack_edges(form, 7));
            assert_eq!(pack_upper(&back, 7), form);
            assert_eq!(canonical_form(&back, 7), form);
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        // empty, complete, and unions of cliques exercise the twin skip
        let empty = vec![0u64; 9];
        assert_eq!(canonical_form(&empty, 9), 0);
        let mut complete = vec![0u64; 9];
        for (i, row) in complete.iter_mut().enumerate() {
            *row = ((1u64 << 9) - 1) & !(1 << i);
        }
        assert_eq!(canonical_form(&complete, 9), (1u64 << 36) - 1);
    }
}
