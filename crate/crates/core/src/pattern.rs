//! Small red-blue patterns and weighted (quantum) combinations of them.
//!
//! A pattern's non-edges are unconstrained: a copy of `H` in a host only has
//! to realise the coloured edges of `H`. Copies are unlabelled subgraphs, so
//! counts divide embedding counts by the order of the colour-preserving
//! automorphism group, which is computed once at construction by brute force
//! over all `h!` vertex permutations (patterns are tiny, `h ≤ 8` in
//! practice).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Colour;
use crate::{Error, Result};

/// A red-blue pattern graph on vertices `0..h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternGraph {
    h: usize,
    /// Coloured edges `(i, j, colour)` with `i < j`.
    edges: Vec<(usize, usize, Colour)>,
    aut_count: u64,
}

impl PatternGraph {
    pub fn new(h: usize, edges: &[(usize, usize, Colour)]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for &(i, j, c) in edges {
            if i == j || i >= h || j >= h {
                return Err(Error::InvalidArgument(format!(
                    "pattern edge ({i}, {j}) out of range for h = {h}"
                )));
            }
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate pattern pair ({i}, {j})"
                )));
            }
            norm.push((i, j, c));
        }
        norm.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut p = PatternGraph {
            h,
            edges: norm,
            aut_count: 0,
        };
        p.aut_count = p.count_automorphisms();
        Ok(p)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn edges(&self) -> &[(usize, usize, Colour)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Order of the colour-preserving automorphism group.
    pub fn aut_count(&self) -> u64 {
        self.aut_count
    }

    pub fn colour_of(&self, i: usize, j: usize) -> Option<Colour> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|&&(a, b, _)| (a, b) == (i, j))
            .map(|&(_, _, c)| c)
    }

    pub fn degree(&self, i: usize, colour: Colour) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b, c)| c == colour && (a == i || b == i))
            .count()
    }

    /// The pattern with every edge colour swapped.
    pub fn swap_colours(&self) -> PatternGraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(i, j, c)| (i, j, c.other()))
            .collect();
        PatternGraph::new(self.h, &edges).expect("swap preserves validity")
    }

    /// True if the uncoloured pattern is connected (isolated vertices count
    /// as components).
    pub fn is_connected(&self) -> bool {
        if self.h == 0 {
            return true;
        }
        let mut seen = vec![false; self.h];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b, _) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn count_automorphisms(&self) -> u64 {
        let mut adj = vec![vec![None; self.h]; self.h];
        for &(i, j, c) in &self.edges {
            adj[i][j] = Some(c);
            adj[j][i] = Some(c);
        }
        let mut perm: Vec<usize> = (0..self.h).collect();
        let mut count = 0u64;
        permute(&mut perm, 0, &mut |p| {
            let ok = (0..self.h).all(|i| ((i + 1)..self.h).all(|j| adj[i][j] == adj[p[i]][p[j]]));
            if ok {
                count += 1;
            }
        });
        count
    }

    /// Number of copies of `self` inside another pattern `host`: injective
    /// maps sending every edge of `self` onto a `host` edge of the same
    /// colour, counted up to automorphisms of `self`.
    pub fn copies_in_pattern(&self, host: &PatternGraph) -> u64 {
        if self.h > host.h {
            return 0;
        }
        let mut host_adj = vec![vec![None; host.h]; host.h];
        for &(i, j, c) in &host.edges {
            host_adj[i][j] = Some(c);
            host_adj[j][i] = Some(c);
        }
        let mut embeddings = 0u64;
        let mut image = vec![usize::MAX; self.h];
        let mut used = vec![false; host.h];
        self.embed_rec(0, &host_adj, &mut image, &mut used, &mut embeddings);
        debug_assert_eq!(embeddings % self.aut_count, 0);
        embeddings / self.aut_count
    }

    fn embed_rec(
        &self,
        v: usize,
        host_adj: &[Vec<Option<Colour>>],
        image: &mut [usize],
        used: &mut [bool],
        embeddings: &mut u64,
    ) {
        if v == self.h {
            *embeddings += 1;
            return;
        }
        'cand: for w in 0..host_adj.len() {
            if used[w] {
                continue;
            }
            for &(a, b, c) in &self.edges {
                let other = if a == v && image[b] != usize::MAX {
                    image[b]
                } else if b == v && image[a] != usize::MAX {
                    image[a]
                } else {
                    continue;
                };
                if host_adj[w][other] != Some(c) {
                    continue 'cand;
                }
            }
            image[v] = w;
            used[w] = true;
            self.embed_rec(v + 1, host_adj, image, used, embeddings);
            used[w] = false;
            image[v] = usize::MAX;
        }
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={};", self.h)?;
        for (k, &(i, j, c)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}:{}", i + 1, j + 1, c)?;
        }
        Ok(())
    }
}

/// A formal real-weighted sum of patterns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumPattern {
    terms: Vec<(f64, PatternGraph)>,
}

impl QuantumPattern {
    pub fn new(terms: Vec<(f64, PatternGraph)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument(
                "quantum pattern needs at least one term".into(),
            ));
        }
        if terms.iter().any(|(c, _)| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "quantum coefficients must be finite".into(),
            ));
        }
        Ok(QuantumPattern { terms })
    }

    pub fn terms(&self) -> &[(f64, PatternGraph)] {
        &self.terms
    }

    pub fn scaled(&self, c: f64) -> Result<QuantumPattern> {
        QuantumPattern::new(self.terms.iter().map(|(w, p)| (c * w, p.clone())).collect())
    }
}

/// An uncoloured graph, used by the induced-count bridge and the random
/// baseline density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncolouredGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UncolouredGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            if !seen.insert((i, j)) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({i}, {j})")));
            }
            norm.push((i, j));
        }
        norm.sort_unstable();
        Ok(UncolouredGraph { n, edges: norm })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Completion into a red-blue pattern: edges red, non-edges blue.
    pub fn completed_pattern(&self) -> PatternGraph {
        let mut coloured = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let c = if self.edges.binary_search(&(i, j)).is_ok() {
                    Colour::Red
                } else {
                    Colour::Blue
                };
                coloured.push((i, j, c));
            }
        }
        PatternGraph::new(self.n, &coloured).expect("valid completion")
    }

    /// Order of the (uncoloured) automorphism group.
    pub fn aut_count(&self) -> u64 {
        self.completed_pattern().aut_count()
    }

    pub fn complement(&self) -> UncolouredGraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.edges.binary_search(&(i, j)).is_err() {
                    edges.push((i, j));
                }
            }
        }
        UncolouredGraph { n: self.n, edges }
    }
}

// ---------------------------------------------------------------------------
// Named patterns
// ---------------------------------------------------------------------------

use Colour::{Blue as B, Red as R};

/// Path on three vertices whose two edges are red then blue.
pub fn rbr_path() -> PatternGraph {
    PatternGraph::new(3, &[(0, 1, R), (1, 2, B)]).unwrap()
}

/// Alternating 4-cycle: cycle `0-1-2-3` coloured R, B, R, B.
pub fn rbrb_c4() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, B), (2, 3, R), (0, 3, B)]).unwrap()
}

/// 4-cycle with two adjacent red and two adjacent blue edges.
pub fn rrbb_c4() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, R), (2, 3, B), (0, 3, B)]).unwrap()
}

/// 4-cycle with exactly three red edges.
pub fn rrrb_c4() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, R), (2, 3, R), (0, 3, B)]).unwrap()
}

/// Alternating 4-cycle plus a red chord between an antipodal pair.
pub fn ccext() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, B), (2, 3, R), (0, 3, B), (0, 2, R)]).unwrap()
}

/// RRBB 4-cycle plus a blue chord between its two bichromatic vertices.
pub fn rrbbext_a() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, R), (2, 3, B), (0, 3, B), (0, 2, B)]).unwrap()
}

/// RRBB 4-cycle plus a red chord between its monochromatic vertices.
pub fn rrbbext_b() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, R), (2, 3, B), (0, 3, B), (1, 3, R)]).unwrap()
}

/// All-red 4-cycle plus a blue chord.
pub fn ccextt() -> PatternGraph {
    PatternGraph::new(4, &[(0, 1, R), (1, 2, R), (2, 3, R), (0, 3, R), (0, 2, B)]).unwrap()
}

/// Alternating cycle on `len` edges as a pattern (`len` even, at least 4).
pub fn alternating_cycle(len: usize) -> Result<PatternGraph> {
    if len < 4 || !len.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "alternating cycle length must be even and at least 4, got {len}"
        )));
    }
    let edges: Vec<_> = (0..len)
        .map(|i| {
            let c = if i % 2 == 0 { R } else { B };
            (i, (i + 1) % len, c)
        })
        .collect();
    PatternGraph::new(len, &edges)
}

/// Monochromatic triangle.
pub fn mono_triangle(colour: Colour) -> PatternGraph {
    PatternGraph::new(3, &[(0, 1, colour), (1, 2, colour), (0, 2, colour)]).unwrap()
}

/// The four-vertex patterns that get names, in a fixed presentation order.
pub fn named_four_vertex_patterns() -> Vec<(&'static str, PatternGraph)> {
    vec![
        ("rbrb_c4", rbrb_c4()),
        ("rrbb_c4", rrbb_c4()),
        ("rrrb_c4", rrrb_c4()),
        ("ccext", ccext()),
        ("rrbbext_a", rrbbext_a()),
        ("rrbbext_b", rrbbext_b()),
        ("ccextt", ccextt()),
    ]
}

/// Looks up a named pattern; see [`named_four_vertex_patterns`] plus
/// `rbr_path` and `alt_cycle_<len>`.
pub fn named_pattern(name: &str) -> Result<PatternGraph> {
    if name == "rbr_path" {
        return Ok(rbr_path());
    }
    if let Some(rest) = name.strip_prefix("alt_cycle_") {
        let len: usize = rest
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad cycle length in {name:?}")))?;
        return alternating_cycle(len);
    }
    named_four_vertex_patterns()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown pattern name {name:?}")))
}

/// Parses the literal edge-list form `"1-2:R,2-3:B"` (vertices 1-based).
pub fn parse_edge_list(spec: &str) -> Result<PatternGraph> {
    let mut edges = Vec::new();
    let mut max_v = 0usize;
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (pair, colour) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("edge {part:?} missing colour")))?;
        let (a, b) = pair
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("edge {part:?} missing endpoint")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex in {part:?}")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex in {part:?}")))?;
        if a == 0 || b == 0 {
            return Err(Error::Parse("vertices are 1-based".into()));
        }
        let c = match colour.trim() {
            "R" | "r" => R,
            "B" | "b" => B,
            other => return Err(Error::Parse(format!("bad colour {other:?}"))),
        };
        max_v = max_v.max(a).max(b);
        edges.push((a - 1, b - 1, c));
    }
    if edges.is_empty() {
        return Err(Error::Parse("empty edge list".into()));
    }
    PatternGraph::new(max_v, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts_of_named_patterns() {
        assert_eq!(rbr_path().aut_count(), 1);
        assert_eq!(rbrb_c4().aut_count(), 4);
        assert_eq!(rrbb_c4().aut_count(), 2);
        assert_eq!(rrrb_c4().aut_count(), 2);
        assert_eq!(ccext().aut_count(), 2);
        assert_eq!(rrbbext_a().aut_count(), 2);
        assert_eq!(rrbbext_b().aut_count(), 2);
        assert_eq!(ccextt().aut_count(), 4);
        assert_eq!(alternating_cycle(6).unwrap().aut_count(), 6);
        assert_eq!(mono_triangle(R).aut_count(), 6);
    }

    #[test]
    fn aut_count_divides_h_factorial() {
        for (_, p) in named_four_vertex_patterns() {
            assert_eq!(24 % p.aut_count(), 0);
        }
    }

    #[test]
    fn pattern_validation() {
        assert!(PatternGraph::new(3, &[(0, 0, R)]).is_err());
        assert!(PatternGraph::new(3, &[(0, 1, R), (1, 0, B)]).is_err());
        assert!(PatternGraph::new(2, &[(0, 2, R)]).is_err());
    }

    #[test]
    fn copies_of_cycle_inside_extensions() {
        assert_eq!(rbrb_c4().copies_in_pattern(&ccext()), 1);
        assert_eq!(rrbb_c4().copies_in_pattern(&rrbbext_a()), 1);
        assert_eq!(rrbb_c4().copies_in_pattern(&rrbbext_b()), 1);
        assert_eq!(rbr_path().copies_in_pattern(&rbrb_c4()), 4);
    }

    #[test]
    fn swap_round_trip() {
        for (_, p) in named_four_vertex_patterns() {
            assert_eq!(p.swap_colours().swap_colours(), p);
            assert_eq!(p.swap_colours().aut_count(), p.aut_count());
        }
    }

    #[test]
    fn edge_list_parsing() {
        let p = parse_edge_list("1-2:R,2-3:B").unwrap();
        assert_eq!(p, rbr_path());
        assert!(parse_edge_list("0-1:R").is_err());
        assert!(parse_edge_list("1-2:G").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn named_lookup() {
        assert!(named_pattern("rbrb_c4").is_ok());
        assert!(named_pattern("alt_cycle_6").is_ok());
        assert!(named_pattern("alt_cycle_5").is_err());
        assert!(named_pattern("nope").is_err());
    }

    #[test]
    fn uncoloured_complement() {
        let c4 = UncolouredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4.aut_count(), 8);
        assert_eq!(c4.complement().edge_count(), 2);
    }
}
