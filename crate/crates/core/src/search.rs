//! Exhaustive and local search for extremal hosts.
//!
//! Exhaustive generation is isomorph-free: graphs are grown one vertex at a
//! time and a child is kept iff it is the canonical representative of its
//! class, so each isomorphism class of red graphs (equivalently, of red-blue
//! complete graphs) appears exactly once. The generation work for the final
//! level is split across parents and processed in parallel; the merge and
//! the final sort by canonical form make the output order deterministic.
//!
//! The hard cap is `n ≤ 9` (274668 classes); beyond that, the edge-flip
//! local search is the supported path.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, unpack_edges};
use crate::counting::{count_copies, SpecialisedCounter};
use crate::formulas::rational_to_f64;
use crate::graph::{assess_bipartition, assess_quasirandomness, Colour, ColouredCompleteGraph};
use crate::pattern::PatternGraph;
use crate::rng::SeededRng;
use crate::{Error, Result};

/// Largest order for exhaustive generation.
pub const ENUMERATION_CAP: usize = 9;

/// Score below which a graph is labelled quasirandom by
/// [`classify_extremal`].
pub const QUASIRANDOM_SCORE_CUTOFF: f64 = 0.1;

// ---------------------------------------------------------------------------
// Isomorph-free exhaustive generation
// ---------------------------------------------------------------------------

/// Canonical packed red graphs, one per isomorphism class on `n` vertices,
/// sorted ascending.
pub fn enumerate_red_classes(n: usize) -> Result<Vec<u64>> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(Error::CapExceeded(format!(
            "exhaustive generation supports 1 ≤ n ≤ {ENUMERATION_CAP}, got {n}; \
             use the edge-flip local search for larger orders"
        )));
    }
    let mut level: Vec<u64> = vec![0]; // the single graph on one vertex
    for k in 2..=n {
        let expand = |&parent: &u64| -> Vec<u64> {
            let edges = unpack_edges(parent, k - 1);
            let mut base = vec![0u64; k];
            for (a, b) in edges {
                base[a] |= 1 << b;
                base[b] |= 1 << a;
            }
            let mut out = Vec::with_capacity(1 << (k - 1));
            for mask in 0u64..(1 << (k - 1)) {
                let mut adj = base.clone();
                adj[k - 1] = mask;
                for (v, row) in adj.iter_mut().enumerate().take(k - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                out.push(canonical_form(&adj, k));
            }
            out
        };
        let mut seen: HashSet<u64> = HashSet::new();
        if level.len() >= 64 {
            for chunk in level.par_iter().map(expand).collect::<Vec<_>>() {
                seen.extend(chunk);
            }
        } else {
            for parent in &level {
                seen.extend(expand(parent));
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// One representative red-blue `K_n` per isomorphism class, in canonical
/// order.
pub fn enumerate_nonisomorphic(n: usize) -> Result<impl Iterator<Item = ColouredCompleteGraph>> {
    let classes = enumerate_red_classes(n)?;
    Ok(classes
        .into_iter()
        .map(move |bits| graph_from_class(bits, n)))
}

/// Rebuilds the red-blue graph of a packed red class.
pub fn graph_from_class(bits: u64, n: usize) -> ColouredCompleteGraph {
    ColouredCompleteGraph::from_red_edges(n, &unpack_edges(bits, n)).expect("valid class")
}

/// Canonical packed form of a graph's red class (`n ≤ 11`).
pub fn red_class_of(g: &ColouredCompleteGraph) -> u64 {
    let n = g.n();
    let mut adj = vec![0u64; n];
    for (x, y) in g.pairs() {
        if g.is_red(x, y) {
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
    }
    canonical_form(&adj, n)
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

/// Structural label of an extremal graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// One colour class is exactly `K_{a,b}` (reported with `a ≤ b`).
    Partitioned {
        a: usize,
        b: usize,
        colour: Colour,
    },
    /// The red graph is a balanced complete multipartite Turán graph.
    Turan {
        parts: usize,
    },
    Quasirandom {
        sigma: f64,
        score: f64,
    },
    Other {
        score: f64,
    },
}

/// Outcome of a maximisation run.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub pattern: String,
    pub n: usize,
    pub max_value: u128,
    /// Extremal graphs in text form, pairwise non-isomorphic for the
    /// exhaustive search.
    pub extremal: Vec<String>,
    pub classifications: Vec<Classification>,
    pub graphs_examined: u64,
    /// True when the value is exact (exhaustive run) rather than a lower
    /// bound from local search.
    pub exhaustive: bool,
}

impl SearchResult {
    pub fn extremal_graphs(&self) -> Vec<ColouredCompleteGraph> {
        self.extremal
            .iter()
            .map(|s| s.parse().expect("stored graph parses"))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Brute force maximisation
// ---------------------------------------------------------------------------

/// Exact `max(H, n)` over every red-blue `K_n`, with the complete extremal
/// list up to isomorphism. Counting uses the specialised counter when one
/// applies; every extremal graph is re-counted with the generic embedding
/// counter before it is admitted.
pub fn brute_force_max(h: &PatternGraph, n: usize) -> Result<SearchResult> {
    let classes = enumerate_red_classes(n)?;
    let counter = SpecialisedCounter::recognise(h);
    let count_one = |bits: &u64| -> u128 {
        let g = graph_from_class(*bits, n);
        match counter {
            Some((c, false)) => c.count(&g),
            Some((c, true)) => c.count(&g.swap_colours()),
            None => count_copies(h, &g),
        }
    };
    let counted: Vec<(u64, u128)> = if classes.len() >= 256 {
        classes.par_iter().map(|b| (*b, count_one(b))).collect()
    } else {
        classes.iter().map(|b| (*b, count_one(b))).collect()
    };
    let max_value = counted.iter().map(|&(_, c)| c).max().unwrap_or(0);
    let mut extremal = Vec::new();
    let mut classifications = Vec::new();
    for &(bits, c) in &counted {
        if c == max_value {
            let g = graph_from_class(bits, n);
            // an extremal graph must survive the independent generic counter
            assert_eq!(
                count_copies(h, &g),
                max_value,
                "specialised counter disagrees with the embedding counter"
            );
            classifications.push(classify_extremal(&g));
            extremal.push(g.to_string());
        }
    }
    Ok(SearchResult {
        pattern: h.to_string(),
        n,
        max_value,
        extremal,
        classifications,
        graphs_examined: counted.len() as u64,
        exhaustive: true,
    })
}

/// Exact maximum of the alternating `t`-walk total over every red-blue
/// `K_n`, with the extremal classes.
pub fn brute_force_max_walks(n: usize, t: usize) -> Result<(u128, Vec<ColouredCompleteGraph>)> {
    let classes = enumerate_red_classes(n)?;
    let mut best = 0u128;
    let mut arg = Vec::new();
    for bits in classes {
        let g = graph_from_class(bits, n);
        let w = crate::counting::walk_profile(&g, t)?.totals[t];
        if w > best {
            best = w;
            arg.clear();
            arg.push(g);
        } else if w == best {
            arg.push(g);
        }
    }
    Ok((best, arg))
}

// ---------------------------------------------------------------------------
// Local search
// ---------------------------------------------------------------------------

/// Steepest-ascent hill climbing over single-edge flips from seeded random
/// starts. Only strictly improving flips are taken, so every climb
/// terminates; the result is a lower bound on `max(H, n)`. Deterministic
/// given `(seed, restarts)`.
pub fn local_search_max(
    h: &PatternGraph,
    n: usize,
    seed: u64,
    restarts: u32,
) -> Result<SearchResult> {
    if n < h.h() {
        return Err(Error::InvalidArgument(format!(
            "host order {n} smaller than pattern order {}",
            h.h()
        )));
    }
    let counter = SpecialisedCounter::recognise(h);
    let count_g = |g: &ColouredCompleteGraph| -> u128 {
        match counter {
            Some((c, false)) => c.count(g),
            Some((c, true)) => c.count(&g.swap_colours()),
            None => count_copies(h, g),
        }
    };
    let mut rng = SeededRng::new(seed);
    let mut best_value = 0u128;
    let mut best_graphs: Vec<ColouredCompleteGraph> = Vec::new();
    let mut examined = 0u64;
    for _ in 0..restarts.max(1) {
        let mut g = ColouredCompleteGraph::from_fn(n, |_, _| {
            if rng.bool_with(0.5) {
                Colour::Red
            } else {
                Colour::Blue
            }
        });
        let mut value = count_g(&g);
        examined += 1;
        loop {
            let mut best_flip: Option<(usize, usize, u128)> = None;
            for (x, y) in g.pairs() {
                let cand = g.flip_edge(x, y).expect("valid pair");
                let cv = count_g(&cand);
                examined += 1;
                if cv > value && best_flip.is_none_or(|(_, _, b)| cv > b) {
                    best_flip = Some((x, y, cv));
                }
            }
            match best_flip {
                Some((x, y, cv)) => {
                    g = g.flip_edge(x, y).expect("valid pair");
                    value = cv;
                }
                None => break,
            }
        }
        if value > best_value || best_graphs.is_empty() {
            best_value = value;
            best_graphs = vec![g];
        } else if value == best_value && best_graphs.len() < 8 {
            let new_text = g.to_string();
            if !best_graphs.iter().any(|b| b.to_string() == new_text) {
                best_graphs.push(g);
            }
        }
    }
    let classifications = best_graphs.iter().map(classify_extremal).collect();
    Ok(SearchResult {
        pattern: h.to_string(),
        n,
        max_value: best_value,
        extremal: best_graphs.iter().map(|g| g.to_string()).collect(),
        classifications,
        graphs_examined: examined,
        exhaustive: false,
    })
}

// ---------------------------------------------------------------------------
// Vertex profiles and extension bounds
// ---------------------------------------------------------------------------

/// Copies of the pattern through each host vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VertexCopyProfile {
    pub per_vertex: Vec<u128>,
    pub total: u128,
    pub mean: f64,
    /// `max_x |count(x) − mean| / mean`; zero on vertex-transitive hosts.
    pub max_deviation_ratio: f64,
}

pub fn vertex_copy_profile(h: &PatternGraph, g: &ColouredCompleteGraph) -> VertexCopyProfile {
    let mut through = vec![0u128; g.n()];
    let total = count_embeddings_with_incidence(h, g, &mut through);
    let aut = h.aut_count() as u128;
    let per_vertex: Vec<u128> = through.iter().map(|&e| e / aut).collect();
    let copies = total / aut;
    let mean = per_vertex.iter().sum::<u128>() as f64 / g.n() as f64;
    let max_dev = per_vertex
        .iter()
        .map(|&c| (c as f64 - mean).abs())
        .fold(0.0f64, f64::max);
    VertexCopyProfile {
        per_vertex,
        total: copies,
        mean,
        max_deviation_ratio: if mean > 0.0 { max_dev / mean } else { 0.0 },
    }
}

fn count_embeddings_with_incidence(
    h: &PatternGraph,
    g: &ColouredCompleteGraph,
    through: &mut [u128],
) -> u128 {
    // plain backtracking that visits every embedding explicitly
    fn rec(
        h: &PatternGraph,
        g: &ColouredCompleteGraph,
        k: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        through: &mut [u128],
        total: &mut u128,
    ) {
        if k == h.h() {
            *total += 1;
            for &v in image.iter() {
                through[v] += 1;
            }
            return;
        }
        'cand: for w in 0..g.n() {
            if used[w] {
                continue;
            }
            for &(a, b, c) in h.edges() {
                let other = if a == k && b < k {
                    image[b]
                } else if b == k && a < k {
                    image[a]
                } else {
                    continue;
                };
                if g.colour(w, other) != c {
                    continue 'cand;
                }
            }
            image.push(w);
            used[w] = true;
            rec(h, g, k + 1, image, used, through, total);
            used[w] = false;
            image.pop();
        }
    }
    let mut total = 0u128;
    if h.h() <= g.n() {
        rec(
            h,
            g,
            0,
            &mut Vec::with_capacity(h.h()),
            &mut vec![false; g.n()],
            through,
            &mut total,
        );
    }
    total
}

/// Report of the spanning-subpattern extension bound
/// `max(H, n) ≤ t·max(H⁻, n)/#(H⁻, H)` checked against exhaustive values.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    /// Maximum host-side completions of a fixed labelled copy of the
    /// subpattern into a copy of the full pattern.
    pub t: u128,
    /// `#(H⁻, H)`: copies of the subpattern inside the pattern.
    pub s: u128,
    pub max_h: u128,
    pub max_h_minus: u128,
    /// `t·max(H⁻,n)/s` as an exact rational rendered to float.
    pub bound: f64,
    pub holds: bool,
    pub tight: bool,
}

/// Verifies the extension bound at order `n` by exhaustive search on both
/// patterns. `h_minus` must be a spanning subpattern of `h`.
pub fn extension_check(
    h: &PatternGraph,
    h_minus: &PatternGraph,
    n: usize,
) -> Result<ExtensionReport> {
    if h_minus.h() != h.h() {
        return Err(Error::InvalidArgument(
            "subpattern must span the pattern's vertex set".into(),
        ));
    }
    for &(a, b, c) in h_minus.edges() {
        if h.colour_of(a, b) != Some(c) {
            return Err(Error::InvalidArgument(format!(
                "subpattern edge {a}-{b} missing from the pattern"
            )));
        }
    }
    let t = max_extensions(h, h_minus);
    let s = h_minus.copies_in_pattern(h);
    if s == 0 {
        return Err(Error::InvalidArgument(
            "subpattern does not embed in the pattern".into(),
        ));
    }
    let max_h = brute_force_max(h, n)?.max_value;
    let max_h_minus = brute_force_max(h_minus, n)?.max_value;
    let bound = crate::formulas::extension_bound(max_h_minus, t, s as u128)?;
    let holds = num::BigRational::from_integer(num::BigInt::from(max_h)) <= bound;
    let tight = num::BigRational::from_integer(num::BigInt::from(max_h)) == bound;
    Ok(ExtensionReport {
        t,
        s: s as u128,
        max_h,
        max_h_minus,
        bound: rational_to_f64(&bound),
        holds,
        tight,
    })
}

/// Maximum, over all host colourings of the free pairs, of the number of
/// distinct copies of `h` on the subpattern's vertex set that contain the
/// fixed labelled subpattern.
fn max_extensions(h: &PatternGraph, h_minus: &PatternGraph) -> u128 {
    let hv = h.h();
    let free: Vec<(usize, usize)> = {
        let mut f = Vec::new();
        for i in 0..hv {
            for j in (i + 1)..hv {
                if h_minus.colour_of(i, j).is_none() {
                    f.push((i, j));
                }
            }
        }
        f
    };
    let minus_edges: HashSet<(usize, usize, Colour)> = h_minus.edges().iter().copied().collect();
    let mut best = 0u128;
    for mask in 0u64..(1 << free.len()) {
        let host = ColouredCompleteGraph::from_fn(hv, |x, y| {
            if let Some(c) = h_minus.colour_of(x, y) {
                c
            } else {
                let idx = free
                    .iter()
                    .position(|&(a, b)| (a, b) == (x.min(y), x.max(y)))
                    .expect("free pair");
                if mask >> idx & 1 == 1 {
                    Colour::Red
                } else {
                    Colour::Blue
                }
            }
        });
        // copies of h in this completed host whose edge set covers h_minus
        let copies = copies_covering(h, &host, &minus_edges);
        best = best.max(copies);
    }
    best
}

fn copies_covering(
    h: &PatternGraph,
    host: &ColouredCompleteGraph,
    required: &HashSet<(usize, usize, Colour)>,
) -> u128 {
    let hv = h.h();
    let mut perm: Vec<usize> = (0..hv).collect();
    let mut edge_sets: HashSet<Vec<(usize, usize, Colour)>> = HashSet::new();
    permute_all(&mut perm, 0, &mut |p| {
        // does mapping pattern vertex i to host vertex p[i] realise h?
        for &(a, b, c) in h.edges() {
            if host.colour(p[a], p[b]) != c {
                return;
            }
        }
        let mut img: Vec<(usize, usize, Colour)> = h
            .edges()
            .iter()
            .map(|&(a, b, c)| {
                let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                (x, y, c)
            })
            .collect();
        img.sort_unstable_by_key(|&(x, y, _)| (x, y));
        let covers = required.iter().all(|r| img.contains(r));
        if covers {
            edge_sets.insert(img);
        }
    });
    edge_sets.len() as u128
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Detects exact partitioned structure (either colour a complete bipartite
/// graph), exact Turán-red structure, or labels the graph
/// quasirandom/other by its codegree deviation score.
pub fn classify_extremal(g: &ColouredCompleteGraph) -> Classification {
    for colour in [Colour::Red, Colour::Blue] {
        if let Some((a, b)) = complete_bipartite_split(g, colour) {
            return Classification::Partitioned {
                a: a.min(b),
                b: a.max(b),
                colour,
            };
        }
    }
    if let Some(parts) = turan_red_parts(g) {
        return Classification::Turan { parts };
    }
    let qa = assess_quasirandomness(g);
    if qa.score <= QUASIRANDOM_SCORE_CUTOFF {
        Classification::Quasirandom {
            sigma: qa.sigma,
            score: qa.score,
        }
    } else {
        Classification::Other { score: qa.score }
    }
}

/// If the `colour` class is exactly `K_{X,Y}` for a bipartition of the
/// vertices, returns `(|X|, |Y|)`.
fn complete_bipartite_split(g: &ColouredCompleteGraph, colour: Colour) -> Option<(usize, usize)> {
    let n = g.n();
    let anchor = (0..n).find(|&v| g.degree(v, colour) > 0);
    let in_x: Vec<bool> = match anchor {
        None => return Some((0, n)), // empty colour class = K_{0,n}
        Some(u) => (0..n).map(|v| v == u || g.colour(u, v) != colour).collect(),
    };
    for (x, y) in g.pairs() {
        let cross = in_x[x] != in_x[y];
        if (g.colour(x, y) == colour) != cross {
            return None;
        }
    }
    let a = in_x.iter().filter(|&&b| b).count();
    Some((a, n - a))
}

/// If the red graph is a complete multipartite Turán graph with at least two
/// parts (sizes differing by at most one), returns the part count.
#[allow(clippy::needless_range_loop)]
fn turan_red_parts(g: &ColouredCompleteGraph) -> Option<usize> {
    let n = g.n();
    // parts = connected components of the blue graph, each a clique
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..n {
                if w != v && comp[w] == usize::MAX && !g.is_red(v, w) {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                if g.is_red(members[i], members[j]) {
                    return None; // component not a blue clique
                }
            }
        }
        sizes.push(members.len());
    }
    if sizes.len() < 2 {
        return None;
    }
    let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
    if hi - lo <= 1 {
        Some(sizes.len())
    } else {
        None
    }
}

/// Candidate-driven partitioned detection used by callers that want a
/// near-partitioned diagnosis rather than only the exact structure: runs the
/// greedy improver from degree-based and given splits and returns the best
/// assessment.
pub fn best_bipartition(g: &ColouredCompleteGraph) -> crate::graph::BipartitionAssessment {
    let n = g.n();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    // red neighbourhood of the max-red-degree vertex
    if let Some(u) = (0..n).max_by_key(|&v| g.red_degree(v)) {
        candidates.push((0..n).filter(|&v| v != u && g.is_red(u, v)).collect());
    }
    candidates.push((0..n / 2).collect());
    let mut best: Option<crate::graph::BipartitionAssessment> = None;
    for c in candidates {
        let improved = crate::graph::improve_bipartition(g, &c).expect("valid vertices");
        let a = assess_bipartition(g, &improved).expect("valid vertices");
        if best.as_ref().is_none_or(|b| a.delta < b.delta) {
            best = Some(a);
        }
    }
    best.expect("at least one candidate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_partitioned, construct_quasirandom, construct_turan_red};
    use crate::pattern;

    #[test]
    fn enumeration_counts_small() {
        let expected = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(
                enumerate_red_classes(i + 1).unwrap().len(),
                e,
                "n = {}",
                i + 1
            );
        }
        assert!(enumerate_red_classes(10).is_err());
        assert!(enumerate_red_classes(0).is_err());
    }

    #[test]
    fn enumeration_count_n8() {
        assert_eq!(enumerate_red_classes(8).unwrap().len(), 12346);
    }

    #[test]
    #[ignore = "slow: full generation at the n = 9 cap"]
    fn enumeration_count_n9() {
        assert_eq!(enumerate_red_classes(9).unwrap().len(), 274668);
    }

    #[test]
    fn enumeration_matches_brute_dedup_small() {
        // independent check: canonical-dedup over all 2^C(n,2) colourings
        for n in 4..=6usize {
            let pairs = n * (n - 1) / 2;
            let all = crate::canon::unpack_edges(((1u128 << pairs) - 1) as u64, n);
            let mut seen = HashSet::new();
            for mask in 0u64..(1 << pairs) {
                let mut adj = vec![0u64; n];
                for (idx, &(i, j)) in all.iter().enumerate() {
                    if mask >> idx & 1 == 1 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
                seen.insert(canonical_form(&adj, n));
            }
            let gen: HashSet<u64> = enumerate_red_classes(n).unwrap().into_iter().collect();
            assert_eq!(seen, gen, "n = {n}");
        }
    }

    #[test]
    fn brute_force_rbrb_small() {
        let r = brute_force_max(&pattern::rbrb_c4(), 5).unwrap();
        assert_eq!(r.max_value, 6);
        assert_eq!(r.extremal.len(), 2); // K_{2,3} red and its colour swap
        assert_eq!(r.graphs_examined, 34);
        for c in &r.classifications {
            match c {
                Classification::Partitioned { a, b, .. } => {
                    assert_eq!((*a, *b), (2, 3));
                }
                other => panic!("unexpected classification {other:?}"),
            }
        }
    }

    #[test]
    fn brute_force_walks_red_c5() {
        let (best, arg) = brute_force_max_walks(5, 3).unwrap();
        assert_eq!(best, 80);
        assert!(!arg.is_empty());
        for g in arg {
            for v in 0..5 {
                assert_eq!(g.red_degree(v), 2);
            }
        }
    }

    #[test]
    fn local_search_monochromatic_pattern() {
        let all_red_triangle = pattern::mono_triangle(Colour::Red);
        let r = local_search_max(&all_red_triangle, 9, 5, 4).unwrap();
        // the unique maximiser is the all-red K_9 with C(9,3) triangles
        assert_eq!(r.max_value, 84);
        let g = &r.extremal_graphs()[0];
        assert_eq!(g.red_edge_count(), 36);
    }

    #[test]
    fn local_search_bounded_by_brute_force() {
        let h = pattern::rrbb_c4();
        let brute = brute_force_max(&h, 6).unwrap().max_value;
        let local = local_search_max(&h, 6, 1, 6).unwrap().max_value;
        assert!(local <= brute);
        assert_eq!(local, brute); // 6 restarts reliably find the optimum here
    }

    // pinned by this exhaustive run: at n = 7 the (1,6) and (2,5) splits tie
    // at 60 in both colours, and two further non-partitioned graphs join them
    #[test]
    fn brute_force_rrbb_n7_pinned() {
        let r = brute_force_max(&pattern::rrbb_c4(), 7).unwrap();
        assert_eq!(r.max_value, 60);
        assert_eq!(r.extremal.len(), 6);
        assert_eq!(crate::formulas::rrbb_value(7, 1).unwrap(), 60);
        assert_eq!(crate::formulas::rrbb_value(7, 2).unwrap(), 60);
        let partitioned = r
            .classifications
            .iter()
            .filter(|c| matches!(c, Classification::Partitioned { .. }))
            .count();
        assert_eq!(partitioned, 4);
    }

    #[test]
    #[ignore = "slow: larger local-search experiment"]
    fn local_search_rrrb_n60_lands_quasirandom() {
        let r = local_search_max(&pattern::rrrb_c4(), 60, 2, 3).unwrap();
        let ratio = r.max_value as f64 / (27.0 / 512.0 * 60f64.powi(4));
        assert!(ratio > 0.9 && ratio < 1.1, "ratio {ratio}");
        assert!(matches!(
            r.classifications[0],
            Classification::Quasirandom { .. }
        ));
    }

    #[test]
    fn local_search_reaches_known_maximum() {
        let r = local_search_max(&pattern::rbrb_c4(), 12, 5, 6).unwrap();
        assert_eq!(r.max_value, crate::formulas::rbrb_max(12));
        match &r.classifications[0] {
            Classification::Partitioned { a, b, .. } => assert_eq!((*a, *b), (6, 6)),
            other => panic!("unexpected classification {other:?}"),
        }
    }

    #[test]
    #[ignore = "slow: larger local-search run"]
    fn local_search_rbrb_n20() {
        let r = local_search_max(&pattern::rbrb_c4(), 20, 1, 50).unwrap();
        assert_eq!(r.max_value, crate::formulas::rbrb_max(20)); // 4050
    }

    #[test]
    #[ignore = "slow: exhaustive walk maximisation at the n = 9 cap"]
    fn brute_force_walk_max_n9() {
        // a 4-regular red graph exists at n = 9, so the bound is attained
        let (best, arg) = brute_force_max_walks(9, 2).unwrap();
        assert_eq!(best, 288);
        assert!(arg.iter().all(|g| (0..9).all(|v| g.red_degree(v) == 4)));
    }

    // with a handful of restarts the climber reaches the exhaustive optimum
    // for every named pattern at n = 6
    #[test]
    fn local_search_agrees_with_brute_force_at_n6() {
        for (name, h) in pattern::named_four_vertex_patterns() {
            let brute = brute_force_max(&h, 6).unwrap().max_value;
            let local = local_search_max(&h, 6, 11, 8).unwrap().max_value;
            assert!(local <= brute, "{name}");
            assert_eq!(local, brute, "{name}");
        }
    }

    #[test]
    fn local_search_deterministic() {
        let h = pattern::rbrb_c4();
        let a = local_search_max(&h, 10, 42, 3).unwrap();
        let b = local_search_max(&h, 10, 42, 3).unwrap();
        assert_eq!(a.max_value, b.max_value);
        assert_eq!(a.extremal, b.extremal);
    }

    #[test]
    fn vertex_profile_sums_and_transitivity() {
        let g = construct_quasirandom(9, 0.5, 2).unwrap();
        let h = pattern::rrbb_c4();
        let p = vertex_copy_profile(&h, &g);
        let total = count_copies(&h, &g);
        assert_eq!(p.per_vertex.iter().sum::<u128>(), 4 * total);
        assert_eq!(p.total, total);
        // red C_n is vertex-transitive: equal counts everywhere
        let cn = ColouredCompleteGraph::from_red_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)],
        )
        .unwrap();
        let p = vertex_copy_profile(&pattern::rbr_path(), &cn);
        assert!(p.per_vertex.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(p.max_deviation_ratio, 0.0);
    }

    #[test]
    fn extension_check_ccext() {
        let rep = extension_check(&pattern::ccext(), &pattern::rbrb_c4(), 6).unwrap();
        assert_eq!(rep.t, 2);
        assert_eq!(rep.s, 1);
        assert_eq!(rep.max_h_minus, 18);
        assert_eq!(rep.max_h, 36);
        assert!(rep.holds && rep.tight);
        // non-spanning subpattern is rejected
        let edge = PatternGraph::new(2, &[(0, 1, Colour::Red)]).unwrap();
        assert!(extension_check(&pattern::ccext(), &edge, 5).is_err());
    }

    #[test]
    fn extension_check_rrbb_extensions() {
        for h in [pattern::rrbbext_a(), pattern::rrbbext_b()] {
            let rep = extension_check(&h, &pattern::rrbb_c4(), 7).unwrap();
            assert_eq!(rep.t, 1);
            assert_eq!(rep.s, 1);
            assert!(rep.holds);
        }
    }

    #[test]
    fn classify_constructions() {
        let p = construct_partitioned(9, 4, Colour::Red).unwrap();
        assert_eq!(
            classify_extremal(&p),
            Classification::Partitioned {
                a: 4,
                b: 5,
                colour: Colour::Red
            }
        );
        let t = construct_turan_red(7, 3).unwrap();
        assert_eq!(classify_extremal(&t), Classification::Turan { parts: 3 });
        let q = construct_quasirandom(100, 0.75, 7).unwrap();
        match classify_extremal(&q) {
            Classification::Quasirandom { sigma, score } => {
                assert!((sigma - 0.75).abs() < 0.03);
                assert!(score < QUASIRANDOM_SCORE_CUTOFF);
            }
            other => panic!("unexpected {other:?}"),
        }
        // balanced partitioned graphs are reported as partitioned, not Turán
        let b = construct_partitioned(8, 4, Colour::Blue).unwrap();
        assert_eq!(
            classify_extremal(&b),
            Classification::Partitioned {
                a: 4,
                b: 4,
                colour: Colour::Blue
            }
        );
    }

    #[test]
    fn best_bipartition_finds_planted_split() {
        let g = construct_partitioned(12, 6, Colour::Red).unwrap();
        let noisy = g.flip_edge(0, 1).unwrap().flip_edge(6, 7).unwrap();
        let a = best_bipartition(&noisy);
        assert!(a.delta <= 2.0 / 66.0 + 1e-12, "delta {}", a.delta);
    }

    #[test]
    fn search_result_serialises() {
        let r = brute_force_max(&pattern::rbrb_c4(), 4).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"max_value\""));
        let graphs = r.extremal_graphs();
        assert_eq!(graphs.len(), r.extremal.len());
    }
}
