//! Red-blue complete graphs: storage, constructions, and structural
//! assessments.
//!
//! A [`ColouredCompleteGraph`] stores one bit per unordered pair (red = 1) in
//! a packed upper-triangular array, plus per-vertex bitset rows for both
//! colours. Codegrees are then word-AND + popcount, which is what keeps the
//! pair-statistics counters at `O(n^3 / 64)`.
//!
//! Graphs are immutable after construction; mutating operations
//! ([`ColouredCompleteGraph::swap_colours`], [`ColouredCompleteGraph::flip_edge`])
//! return new values, so a graph can be shared freely across threads.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rng::SeededRng;
use crate::{Error, Result};

/// Edge colour of a red-blue graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "R",
            Colour::Blue => "B",
        })
    }
}

/// Index of the pair `(x, y)`, `x < y`, in row-major upper-triangular order.
#[inline]
pub fn pair_index(n: usize, x: usize, y: usize) -> usize {
    debug_assert!(x < y && y < n);
    x * (2 * n - x - 1) / 2 + (y - x - 1)
}

/// A complete graph on `n` vertices with every edge coloured red or blue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredCompleteGraph {
    n: usize,
    words: usize,
    /// Packed upper-triangular red bits in row-major pair order.
    tri: Vec<u64>,
    /// `n` rows of `words` words each; bit `y` of row `x` set iff `xy` red.
    red_rows: Vec<u64>,
    blue_rows: Vec<u64>,
    red_deg: Vec<u32>,
    blue_deg: Vec<u32>,
}

impl ColouredCompleteGraph {
    /// Builds a graph by evaluating `colour_of` on every pair `x < y`.
    pub fn from_fn(n: usize, mut colour_of: impl FnMut(usize, usize) -> Colour) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut tri = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
        let mut red_rows = vec![0u64; n.max(1) * words];
        for x in 0..n {
            for y in (x + 1)..n {
                if colour_of(x, y) == Colour::Red {
                    let p = pair_index(n, x, y);
                    tri[p / 64] |= 1 << (p % 64);
                    red_rows[x * words + y / 64] |= 1 << (y % 64);
                    red_rows[y * words + x / 64] |= 1 << (x % 64);
                }
            }
        }
        let mut blue_rows = vec![0u64; n.max(1) * words];
        for x in 0..n {
            for w in 0..words {
                let mut mask = !red_rows[x * words + w];
                // clear bits at and beyond n, and the self-loop bit
                let lo = w * 64;
                if n < lo + 64 {
                    mask &= if n <= lo { 0 } else { (1u64 << (n - lo)) - 1 };
                }
                if x / 64 == w {
                    mask &= !(1u64 << (x % 64));
                }
                blue_rows[x * words + w] = mask;
            }
        }
        let red_deg: Vec<u32> = (0..n)
            .map(|x| {
                red_rows[x * words..(x + 1) * words]
                    .iter()
                    .map(|w| w.count_ones())
                    .sum()
            })
            .collect();
        let blue_deg: Vec<u32> = (0..n).map(|x| (n as u32 - 1) - red_deg[x]).collect();
        ColouredCompleteGraph {
            n,
            words,
            tri,
            red_rows,
            blue_rows,
            red_deg,
            blue_deg,
        }
    }

    /// Builds a graph from the set of red edges; all other pairs are blue.
    pub fn from_red_edges(n: usize, red: &[(usize, usize)]) -> Result<Self> {
        for &(x, y) in red {
            if x == y || x >= n || y >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({x}, {y}) out of range for n = {n}"
                )));
            }
        }
        let mut is_red = vec![false; n * n.saturating_sub(1) / 2];
        for &(x, y) in red {
            let (x, y) = if x < y { (x, y) } else { (y, x) };
            is_red[pair_index(n, x, y)] = true;
        }
        Ok(Self::from_fn(n, |x, y| {
            if is_red[pair_index(n, x, y)] {
                Colour::Red
            } else {
                Colour::Blue
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_red(&self, x: usize, y: usize) -> bool {
        debug_assert!(x != y);
        self.red_rows[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    #[inline]
    pub fn colour(&self, x: usize, y: usize) -> Colour {
        if self.is_red(x, y) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    #[inline]
    pub fn red_degree(&self, x: usize) -> usize {
        self.red_deg[x] as usize
    }

    #[inline]
    pub fn blue_degree(&self, x: usize) -> usize {
        self.blue_deg[x] as usize
    }

    #[inline]
    pub fn degree(&self, x: usize, c: Colour) -> usize {
        match c {
            Colour::Red => self.red_degree(x),
            Colour::Blue => self.blue_degree(x),
        }
    }

    /// Bitset row of the red neighbourhood of `x`.
    #[inline]
    pub fn red_row(&self, x: usize) -> &[u64] {
        &self.red_rows[x * self.words..(x + 1) * self.words]
    }

    /// Bitset row of the blue neighbourhood of `x`.
    #[inline]
    pub fn blue_row(&self, x: usize) -> &[u64] {
        &self.blue_rows[x * self.words..(x + 1) * self.words]
    }

    #[inline]
    pub fn row(&self, x: usize, c: Colour) -> &[u64] {
        match c {
            Colour::Red => self.red_row(x),
            Colour::Blue => self.blue_row(x),
        }
    }

    /// `|N_R(x) ∩ N_R(y)|` via word-AND + popcount.
    #[inline]
    pub fn red_codegree(&self, x: usize, y: usize) -> usize {
        self.red_row(x)
            .iter()
            .zip(self.red_row(y))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn blue_codegree(&self, x: usize, y: usize) -> usize {
        self.blue_row(x)
            .iter()
            .zip(self.blue_row(y))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_deg.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    pub fn blue_edge_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.red_edge_count()
    }

    /// Red edge density `e(R) / C(n, 2)`.
    pub fn red_density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.red_edge_count() as f64 / (self.n * (self.n - 1) / 2) as f64
    }

    /// The packed red bits of the upper triangle, for hashing/dedup at small `n`.
    pub fn red_bits_u64(&self) -> u64 {
        assert!(
            self.n * self.n.saturating_sub(1) / 2 <= 64,
            "red_bits_u64 needs C(n,2) <= 64"
        );
        self.tri[0]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| ((x + 1)..self.n).map(move |y| (x, y)))
    }

    /// Colour involution: every red edge becomes blue and vice versa.
    pub fn swap_colours(&self) -> ColouredCompleteGraph {
        ColouredCompleteGraph {
            n: self.n,
            words: self.words,
            tri: {
                let mut t = self.tri.clone();
                let total = self.n * self.n.saturating_sub(1) / 2;
                for (i, w) in t.iter_mut().enumerate() {
                    *w = !*w;
                    let lo = i * 64;
                    if total < lo + 64 {
                        *w &= if total <= lo {
                            0
                        } else {
                            (1u64 << (total - lo)) - 1
                        };
                    }
                }
                t
            },
            red_rows: self.blue_rows.clone(),
            blue_rows: self.red_rows.clone(),
            red_deg: self.blue_deg.clone(),
            blue_deg: self.red_deg.clone(),
        }
    }

    /// Toggles the colour of the single pair `xy`.
    pub fn flip_edge(&self, x: usize, y: usize) -> Result<ColouredCompleteGraph> {
        if x == y || x >= self.n || y >= self.n {
            return Err(Error::InvalidArgument(format!(
                "flip_edge({x}, {y}) invalid for n = {}",
                self.n
            )));
        }
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let mut g = self.clone();
        let p = pair_index(self.n, x, y);
        g.tri[p / 64] ^= 1 << (p % 64);
        for (a, b) in [(x, y), (y, x)] {
            g.red_rows[a * g.words + b / 64] ^= 1 << (b % 64);
            g.blue_rows[a * g.words + b / 64] ^= 1 << (b % 64);
        }
        if self.is_red(x, y) {
            g.red_deg[x] -= 1;
            g.red_deg[y] -= 1;
            g.blue_deg[x] += 1;
            g.blue_deg[y] += 1;
        } else {
            g.red_deg[x] += 1;
            g.red_deg[y] += 1;
            g.blue_deg[x] -= 1;
            g.blue_deg[y] -= 1;
        }
        Ok(g)
    }

    /// Applies a vertex relabelling: vertex `perm[i]` of `self` becomes vertex
    /// `i` of the result.
    pub fn relabelled(&self, perm: &[usize]) -> ColouredCompleteGraph {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(self.n, |x, y| self.colour(perm[x], perm[y]))
    }
}

impl fmt::Debug for ColouredCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredCompleteGraph(n={}, {})", self.n, self)
    }
}

/// Text format: first line `n`, second line the upper-triangular colour
/// string in row-major order, one of `R`/`B` per pair.
impl fmt::Display for ColouredCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (x, y) in self.pairs() {
            write!(f, "{}", self.colour(x, y))?;
        }
        Ok(())
    }
}

impl FromStr for ColouredCompleteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph text".into()))?
            .trim();
        let n: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
        let body = lines.next().unwrap_or("").trim();
        let expected = n * n.saturating_sub(1) / 2;
        if body.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} colour characters for n = {n}, got {}",
                body.len()
            )));
        }
        let mut cols = Vec::with_capacity(expected);
        for ch in body.chars() {
            cols.push(match ch {
                'R' => Colour::Red,
                'B' => Colour::Blue,
                _ => return Err(Error::Parse(format!("bad colour character {ch:?}"))),
            });
        }
        Ok(Self::from_fn(n, |x, y| cols[pair_index(n, x, y)]))
    }
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Complete graph on `n` vertices in which the pairs between the first `a`
/// and the last `n - a` vertices get `bip_colour` and every other pair the
/// other colour. The `bip_colour` class is then exactly `K_{a, n-a}`.
pub fn construct_partitioned(
    n: usize,
    a: usize,
    bip_colour: Colour,
) -> Result<ColouredCompleteGraph> {
    if a > n {
        return Err(Error::InvalidArgument(format!(
            "part size {a} exceeds n = {n}"
        )));
    }
    Ok(ColouredCompleteGraph::from_fn(n, |x, y| {
        if (x < a) != (y < a) {
            bip_colour
        } else {
            bip_colour.other()
        }
    }))
}

/// Part sizes of the complete `parts`-partite Turán graph on `n` vertices.
pub fn turan_part_sizes(n: usize, parts: usize) -> Vec<usize> {
    let q = n / parts;
    let r = n % parts;
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

/// Red edges form the Turán graph `T_parts(n)` (complete multipartite with
/// part sizes differing by at most one); intra-part pairs are blue.
pub fn construct_turan_red(n: usize, parts: usize) -> Result<ColouredCompleteGraph> {
    if parts == 0 || parts > n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "part count {parts} invalid for n = {n}"
        )));
    }
    let sizes = turan_part_sizes(n, parts);
    let mut part_of = vec![0usize; n];
    let mut v = 0;
    for (i, &s) in sizes.iter().enumerate() {
        for _ in 0..s {
            part_of[v] = i;
            v += 1;
        }
    }
    Ok(ColouredCompleteGraph::from_fn(n, |x, y| {
        if part_of[x] != part_of[y] {
            Colour::Red
        } else {
            Colour::Blue
        }
    }))
}

/// Each pair is independently red with probability `sigma`.
///
/// Deterministic given `(n, sigma, seed)`: pairs are visited in row-major
/// upper-triangular order and each consumes exactly one `unit_f64` draw from
/// [`SeededRng::new(seed)`](SeededRng).
pub fn construct_quasirandom(n: usize, sigma: f64, seed: u64) -> Result<ColouredCompleteGraph> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::InvalidArgument(format!(
            "density {sigma} outside [0, 1]"
        )));
    }
    let mut rng = SeededRng::new(seed);
    Ok(ColouredCompleteGraph::from_fn(n, |_, _| {
        if rng.unit_f64() < sigma {
            Colour::Red
        } else {
            Colour::Blue
        }
    }))
}

// ---------------------------------------------------------------------------
// Assessments
// ---------------------------------------------------------------------------

/// Smallest `ε` such that `Σ_x |d_R(x) − (n−1)/2| ≤ ε·C(n,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BalanceAssessment {
    pub epsilon: f64,
}

/// The defining sum is evaluated exactly in integers (doubled to avoid
/// halves) before the single final division.
pub fn assess_balance(g: &ColouredCompleteGraph) -> BalanceAssessment {
    let n = g.n();
    if n < 2 {
        return BalanceAssessment { epsilon: 0.0 };
    }
    // Σ_x |2 d_R(x) − (n−1)|  =  2 Σ_x |d_R(x) − (n−1)/2|
    let doubled: u64 = (0..n)
        .map(|x| (2 * g.red_degree(x)) as i64 - (n as i64 - 1))
        .map(|d| d.unsigned_abs())
        .sum();
    BalanceAssessment {
        epsilon: doubled as f64 / (n * (n - 1)) as f64,
    }
}

/// Red density `σ` and the codegree deviation score
/// `(1/n³)·Σ_{x≠y} | |N_R(x) ∩ N_R(y)| − σ²n |`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuasirandomnessAssessment {
    pub sigma: f64,
    pub score: f64,
}

pub fn assess_quasirandomness(g: &ColouredCompleteGraph) -> QuasirandomnessAssessment {
    let n = g.n();
    if n < 2 {
        return QuasirandomnessAssessment {
            sigma: 0.0,
            score: 0.0,
        };
    }
    let sigma = g.red_density();
    let target = sigma * sigma * n as f64;
    let mut sum = 0.0;
    for (x, y) in g.pairs() {
        sum += 2.0 * (g.red_codegree(x, y) as f64 - target).abs();
    }
    QuasirandomnessAssessment {
        sigma,
        score: sum / (n as f64).powi(3),
    }
}

/// How far a given bipartition is from making one colour class exactly the
/// complete bipartite graph between the parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipartitionAssessment {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Colour playing the cross role: the colour whose edge set has the
    /// smaller symmetric difference with `E(K_{X,Y})`. Ties go to red.
    pub minority_colour: Colour,
    /// Edges of the minority graph `M(X, Y)`: pairs on which the chosen
    /// colour disagrees with the bipartition.
    pub minority_edges: Vec<(usize, usize)>,
    /// Edit distances for both candidate colours, red first.
    pub edits: [usize; 2],
    /// Smallest `δ` for which both the size condition and the edit condition
    /// hold with this bipartition.
    pub delta: f64,
}

/// Evaluates both candidate minority colours for the bipartition
/// `{X, V∖X}`, selects the smaller edit distance, and reports the minimal
/// `δ` this bipartition witnesses.
pub fn assess_bipartition(
    g: &ColouredCompleteGraph,
    x_set: &[usize],
) -> Result<BipartitionAssessment> {
    let n = g.n();
    let mut in_x = vec![false; n];
    for &v in x_set {
        if v >= n {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        in_x[v] = true;
    }
    let x: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let y: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();

    let mut red_edits = 0usize; // |E(R) △ E(K_{X,Y})|
    let mut blue_edits = 0usize;
    let mut red_minority = Vec::new();
    let mut blue_minority = Vec::new();
    for (u, v) in g.pairs() {
        let cross = in_x[u] != in_x[v];
        let red = g.is_red(u, v);
        if red != cross {
            red_edits += 1;
            red_minority.push((u, v));
        }
        if red == cross {
            blue_edits += 1;
            blue_minority.push((u, v));
        }
    }
    let (minority_colour, edits, minority_edges) = if red_edits <= blue_edits {
        (Colour::Red, red_edits, red_minority)
    } else {
        (Colour::Blue, blue_edits, blue_minority)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let delta_edits = if pairs == 0 {
        0.0
    } else {
        edits as f64 / pairs as f64
    };
    let (lo, hi) = (n / 2, n.div_ceil(2));
    let small = x.len().min(y.len());
    let large = x.len().max(y.len());
    let delta_size = if n == 0 {
        0.0
    } else {
        let need_lo = lo.saturating_sub(small) as f64 / n as f64;
        let need_hi = large.saturating_sub(hi) as f64 / n as f64;
        need_lo.max(need_hi)
    };
    Ok(BipartitionAssessment {
        x,
        y,
        minority_colour,
        minority_edges,
        edits: [red_edits, blue_edits],
        delta: delta_edits.max(delta_size),
    })
}

/// Greedy improver: repeatedly moves any single vertex across the bipartition
/// while this strictly reduces the minority edge count. Local only; makes no
/// optimality claim.
pub fn improve_bipartition(g: &ColouredCompleteGraph, x_init: &[usize]) -> Result<Vec<usize>> {
    let n = g.n();
    let mut in_x = vec![false; n];
    for &v in x_init {
        if v >= n {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        in_x[v] = true;
    }
    let minority_count = |in_x: &[bool]| -> usize {
        let mut best_red = 0usize;
        let mut best_blue = 0usize;
        for (u, v) in g.pairs() {
            let cross = in_x[u] != in_x[v];
            if g.is_red(u, v) != cross {
                best_red += 1;
            } else {
                best_blue += 1;
            }
        }
        best_red.min(best_blue)
    };
    let mut current = minority_count(&in_x);
    loop {
        let mut improved = false;
        for v in 0..n {
            in_x[v] = !in_x[v];
            let cand = minority_count(&in_x);
            if cand < current {
                current = cand;
                improved = true;
            } else {
                in_x[v] = !in_x[v];
            }
        }
        if !improved {
            break;
        }
    }
    Ok((0..n).filter(|&v| in_x[v]).collect())
}
