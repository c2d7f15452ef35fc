//! Exact counters.
//!
//! The generic embedding counter backtracks over pattern vertices in a static
//! most-constrained-first order, intersecting candidate sets as bitset rows;
//! it is the oracle every specialised counter is checked against. The
//! specialised counters evaluate the antipodal and codegree identities for
//! coloured 4-cycles in `O(n³/w)` word operations, and the alternating-walk
//! dynamic programme runs in `O(t·n²)`.
//!
//! Counts are held in 128-bit integers: the walk totals grow like
//! `n(n/2)^t` and overflow 64 bits already for `n = 400, t ≥ 6`. The walk DP
//! uses checked arithmetic and reports overflow as an error rather than
//! wrapping.

use crate::graph::{Colour, ColouredCompleteGraph};
use crate::pattern::{PatternGraph, QuantumPattern, UncolouredGraph};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Generic embedding counter
// ---------------------------------------------------------------------------

/// Number of injective maps `V(H) → V(G)` sending every edge of `H` to a
/// host pair of the same colour. Non-edges of `H` are unconstrained.
pub fn count_embeddings(h: &PatternGraph, g: &ColouredCompleteGraph) -> u128 {
    let plan = EmbeddingPlan::new(h);
    plan.count(g)
}

/// Unlabelled copies: embeddings divided by the order of the pattern's
/// colour-preserving automorphism group. Always an integer.
pub fn count_copies(h: &PatternGraph, g: &ColouredCompleteGraph) -> u128 {
    let e = count_embeddings(h, g);
    assert_eq!(
        e % h.aut_count() as u128,
        0,
        "embeddings not divisible by automorphisms"
    );
    e / h.aut_count() as u128
}

/// Weighted count of a quantum pattern: integer copy counts are computed
/// exactly, then scaled by the real coefficients.
pub fn count_quantum(q: &QuantumPattern, g: &ColouredCompleteGraph) -> f64 {
    q.terms()
        .iter()
        .map(|(c, p)| c * count_copies(p, g) as f64)
        .sum()
}

/// Static embedding order plus per-vertex constraint lists, reusable across
/// hosts.
struct EmbeddingPlan {
    h: usize,
    /// `constraints[k]` lists `(earlier_slot, colour)` pairs that the vertex
    /// placed at slot `k` must satisfy.
    constraints: Vec<Vec<(usize, Colour)>>,
}

impl EmbeddingPlan {
    fn new(h: &PatternGraph) -> Self {
        let n = h.h();
        let deg = |v: usize| {
            h.edges()
                .iter()
                .filter(|&&(a, b, _)| a == v || b == v)
                .count()
        };
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            // most edges into the already-placed set, ties by total degree
            let best = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let into = h
                        .edges()
                        .iter()
                        .filter(|&&(a, b, _)| (a == v && placed[b]) || (b == v && placed[a]))
                        .count();
                    (into, deg(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[best] = true;
            order.push(best);
        }
        let slot_of = {
            let mut s = vec![0usize; n];
            for (k, &v) in order.iter().enumerate() {
                s[v] = k;
            }
            s
        };
        let mut constraints = vec![Vec::new(); n];
        for &(a, b, c) in h.edges() {
            let (sa, sb) = (slot_of[a], slot_of[b]);
            let (early, late) = if sa < sb { (sa, sb) } else { (sb, sa) };
            constraints[late].push((early, c));
        }
        EmbeddingPlan { h: n, constraints }
    }

    fn count(&self, g: &ColouredCompleteGraph) -> u128 {
        if self.h > g.n() {
            return 0;
        }
        if self.h == 0 {
            return 1;
        }
        let words = g.n().div_ceil(64);
        let mut full = vec![!0u64; words];
        if !g.n().is_multiple_of(64) {
            full[words - 1] = (1u64 << (g.n() % 64)) - 1;
        }
        let mut used = vec![0u64; words];
        let mut image = vec![0usize; self.h];
        let mut total = 0u128;
        self.rec(g, 0, &full, &mut used, &mut image, &mut total);
        total
    }

    fn rec(
        &self,
        g: &ColouredCompleteGraph,
        k: usize,
        full: &[u64],
        used: &mut [u64],
        image: &mut [usize],
        total: &mut u128,
    ) {
        let words = used.len();
        let mut cand = vec![0u64; words];
        for w in 0..words {
            cand[w] = full[w] & !used[w];
        }
        for &(slot, colour) in &self.constraints[k] {
            let row = g.row(image[slot], colour);
            for w in 0..words {
                cand[w] &= row[w];
            }
        }
        if k + 1 == self.h {
            *total += cand.iter().map(|w| w.count_ones() as u128).sum::<u128>();
            return;
        }
        for w in 0..words {
            let mut bits = cand[w];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let v = w * 64 + b;
                image[k] = v;
                used[w] |= 1 << b;
                self.rec(g, k + 1, full, used, image, total);
                used[w] &= !(1 << b);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Alternating-walk dynamic programme
// ---------------------------------------------------------------------------

/// Per-vertex alternating-walk counts and their aggregates.
///
/// `w_red[k][x]` counts alternating `k`-walks starting at `x` whose first
/// edge is red (`w_red[0][x] = 1`), and symmetrically for `w_blue`.
/// `totals[k]` is the number of alternating `k`-walks, `rho[k] =
/// Σ_x w_red[k][x]²·d_B(x)` and `beta[k] = Σ_x w_blue[k][x]²·d_R(x)`.
#[derive(Clone, Debug)]
pub struct WalkProfile {
    pub t: usize,
    pub w_red: Vec<Vec<u128>>,
    pub w_blue: Vec<Vec<u128>>,
    pub totals: Vec<u128>,
    pub rho: Vec<u128>,
    pub beta: Vec<u128>,
}

/// Runs the walk DP up to length `t`. `O(t·n²)`; checked 128-bit arithmetic.
pub fn walk_profile(g: &ColouredCompleteGraph, t: usize) -> Result<WalkProfile> {
    let n = g.n();
    let overflow = || Error::Overflow("alternating-walk count exceeds 128 bits".into());
    let mut w_red = vec![vec![1u128; n]];
    let mut w_blue = vec![vec![1u128; n]];
    for k in 1..=t {
        let mut red_k = vec![0u128; n];
        let mut blue_k = vec![0u128; n];
        for x in 0..n {
            let mut r_acc = 0u128;
            for (w, &bits) in g.red_row(x).iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let y = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    r_acc = r_acc.checked_add(w_blue[k - 1][y]).ok_or_else(overflow)?;
                }
            }
            red_k[x] = r_acc;
            let mut b_acc = 0u128;
            for (w, &bits) in g.blue_row(x).iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let y = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    b_acc = b_acc.checked_add(w_red[k - 1][y]).ok_or_else(overflow)?;
                }
            }
            blue_k[x] = b_acc;
        }
        w_red.push(red_k);
        w_blue.push(blue_k);
    }
    let mut totals = Vec::with_capacity(t + 1);
    totals.push(n as u128);
    for k in 1..=t {
        let mut sum = 0u128;
        for x in 0..n {
            sum = sum
                .checked_add(w_red[k][x])
                .and_then(|s| s.checked_add(w_blue[k][x]))
                .ok_or_else(overflow)?;
        }
        totals.push(sum);
    }
    let mut rho = Vec::with_capacity(t + 1);
    let mut beta = Vec::with_capacity(t + 1);
    for k in 0..=t {
        let mut r = 0u128;
        let mut b = 0u128;
        for x in 0..n {
            r = w_red[k][x]
                .checked_mul(w_red[k][x])
                .and_then(|s| s.checked_mul(g.blue_degree(x) as u128))
                .and_then(|s| r.checked_add(s))
                .ok_or_else(overflow)?;
            b = w_blue[k][x]
                .checked_mul(w_blue[k][x])
                .and_then(|s| s.checked_mul(g.red_degree(x) as u128))
                .and_then(|s| b.checked_add(s))
                .ok_or_else(overflow)?;
        }
        rho.push(r);
        beta.push(b);
    }
    Ok(WalkProfile {
        t,
        w_red,
        w_blue,
        totals,
        rho,
        beta,
    })
}

/// Brute-force oracle: enumerates every alternating `t`-walk as an ordered
/// `(t+1)`-tuple. Exponential; intended for `n ≤ 8`, `t ≤ 4`.
pub fn count_alternating_walks_brute(g: &ColouredCompleteGraph, t: usize) -> u128 {
    let n = g.n();
    if t == 0 {
        return n as u128;
    }
    fn rec(
        g: &ColouredCompleteGraph,
        prev: usize,
        last_colour: Option<Colour>,
        remaining: usize,
        total: &mut u128,
    ) {
        if remaining == 0 {
            *total += 1;
            return;
        }
        for y in 0..g.n() {
            if y == prev {
                continue;
            }
            let c = g.colour(prev, y);
            if last_colour == Some(c) {
                continue;
            }
            rec(g, y, Some(c), remaining - 1, total);
        }
    }
    let mut total = 0u128;
    for x in 0..n {
        rec(g, x, None, t, &mut total);
    }
    total
}

/// Matrix of `w_k^R(x, y)`: alternating `k`-walks from `x` to `y` whose
/// first edge is red, flattened row-major. Diagonal entries count closed
/// alternating walks. `O(k·n³)` additions.
pub fn pair_alternating_walks(g: &ColouredCompleteGraph, k: usize) -> Result<Vec<u128>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "pair walk length must be at least 1".into(),
        ));
    }
    let n = g.n();
    let overflow = || Error::Overflow("pair walk count exceeds 128 bits".into());
    // wr[x*n+y], wb[x*n+y] for the current length
    let mut wr = vec![0u128; n * n];
    let mut wb = vec![0u128; n * n];
    for (x, y) in g.pairs() {
        if g.is_red(x, y) {
            wr[x * n + y] = 1;
            wr[y * n + x] = 1;
        } else {
            wb[x * n + y] = 1;
            wb[y * n + x] = 1;
        }
    }
    for _ in 2..=k {
        let mut nr = vec![0u128; n * n];
        let mut nb = vec![0u128; n * n];
        for x in 0..n {
            for (w, &bits) in g.red_row(x).iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let z = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for y in 0..n {
                        nr[x * n + y] = nr[x * n + y]
                            .checked_add(wb[z * n + y])
                            .ok_or_else(overflow)?;
                    }
                }
            }
            for (w, &bits) in g.blue_row(x).iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let z = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for y in 0..n {
                        nb[x * n + y] = nb[x * n + y]
                            .checked_add(wr[z * n + y])
                            .ok_or_else(overflow)?;
                    }
                }
            }
        }
        wr = nr;
        wb = nb;
    }
    Ok(wr)
}

// ---------------------------------------------------------------------------
// Alternating cycles
// ---------------------------------------------------------------------------

/// Number of unlabelled alternating cycles on `len` edges (`len` even,
/// at least 4). Each cycle is produced exactly once: the smallest vertex is
/// the anchor and the traversal direction is fixed by comparing its two
/// neighbours on the cycle.
pub fn count_alternating_cycles(g: &ColouredCompleteGraph, len: usize) -> Result<u128> {
    if !len.is_multiple_of(2) || len < 4 {
        return Err(Error::InvalidArgument(format!(
            "alternating cycle length must be even and at least 4, got {len}"
        )));
    }
    let n = g.n();
    if len > n {
        return Ok(0);
    }
    let words = n.div_ceil(64);
    let mut total = 0u128;
    let mut path = vec![0usize; len];
    let mut used = vec![0u64; words];
    for v0 in 0..n {
        path[0] = v0;
        used[v0 / 64] |= 1 << (v0 % 64);
        extend_cycle(g, &mut path, &mut used, 1, len, &mut total);
        used[v0 / 64] &= !(1 << (v0 % 64));
    }
    Ok(total)
}

fn extend_cycle(
    g: &ColouredCompleteGraph,
    path: &mut [usize],
    used: &mut [u64],
    depth: usize,
    len: usize,
    total: &mut u128,
) {
    let v0 = path[0];
    let prev = path[depth - 1];
    let first_colour = if depth >= 2 {
        Some(g.colour(path[0], path[1]))
    } else {
        None
    };
    let need = if depth >= 2 {
        Some(g.colour(path[depth - 2], prev).other())
    } else {
        None
    };
    let words = used.len();

    if depth == len - 1 {
        // Last slot: candidates must close the cycle with the colour opposite
        // to the first edge, satisfy the alternation with the previous edge,
        // be unused, and exceed path[1] (direction canonicalisation).
        let c0 = first_colour.expect("len >= 4");
        let row_prev = g.row(prev, need.expect("len >= 4"));
        let row_close = g.row(v0, c0.other());
        let mut count = 0u128;
        for w in 0..words {
            let mut bits = row_prev[w] & row_close[w] & !used[w];
            // keep only vertices greater than path[1] and not below v0
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let v = w * 64 + b;
                if v > path[1] && v > v0 {
                    count += 1;
                }
            }
        }
        *total += count;
        return;
    }

    for w in 0..words {
        let mut bits = match need {
            Some(c) => g.row(prev, c)[w] & !used[w],
            None => !used[w],
        };
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let v = w * 64 + b;
            if v >= g.n() || v <= v0 {
                continue;
            }
            path[depth] = v;
            used[w] |= 1 << b;
            extend_cycle(g, path, used, depth + 1, len, total);
            used[w] &= !(1 << b);
        }
    }
}

// ---------------------------------------------------------------------------
// Pair statistics and codegree identities
// ---------------------------------------------------------------------------

/// Exact per-pair statistics. For each unordered pair `xy`:
/// `w2_xy = |N_R(x) ∩ N_B(y)| = d_R(x) − codeg_R(x,y) − [xy red]` is the
/// number of alternating red-then-blue 2-walks from `x` to `y`;
/// `bic`/`mon`/`t_rrrb` are the numbers of RRBB (bichromatic pair), RRBB
/// (monochromatic pair) and RRRB (non-adjacent pair) copies hanging on the
/// pair.
#[derive(Clone, Debug)]
pub struct PairStat {
    pub x: usize,
    pub y: usize,
    pub red_codegree: usize,
    pub w2_xy: usize,
    pub w2_yx: usize,
    pub bic: u128,
    pub mon: u128,
    pub t_rrrb: u128,
    /// True when `w2_xy + w2_yx = n − 2`, i.e. every other vertex is the
    /// midpoint of an alternating 2-walk between `x` and `y`.
    pub full: bool,
}

#[derive(Clone, Debug)]
pub struct PairStats {
    pub n: usize,
    pub pairs: Vec<PairStat>,
}

pub fn pair_stats(g: &ColouredCompleteGraph) -> PairStats {
    let n = g.n();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (x, y) in g.pairs() {
        let cr = g.red_codegree(x, y);
        let r_xy = usize::from(g.is_red(x, y));
        let w2_xy = g.red_degree(x) - cr - r_xy;
        let w2_yx = g.red_degree(y) - cr - r_xy;
        // |N_B(x) ∩ N_B(y)| = n − 2 − d_R(x) − d_R(y) + 2·[xy red] + codeg_R
        let cb = (n + 2 * r_xy + cr) - 2 - g.red_degree(x) - g.red_degree(y);
        debug_assert_eq!(cb, g.blue_codegree(x, y));
        let choose2 = |k: usize| (k as u128) * (k as u128 - if k > 0 { 1 } else { 0 }) / 2;
        pairs.push(PairStat {
            x,
            y,
            red_codegree: cr,
            w2_xy,
            w2_yx,
            bic: cr as u128 * cb as u128,
            mon: choose2(w2_xy) + choose2(w2_yx),
            t_rrrb: cr as u128 * (w2_xy + w2_yx) as u128,
            full: w2_xy + w2_yx == n - 2,
        });
    }
    PairStats { n, pairs }
}

/// Alternating 4-cycles counted from antipodal pairs:
/// `½ Σ_{x<y} w₂^R(x,y)·w₂^R(y,x)`.
pub fn count_rbrb_antipodal(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let mut doubled = 0u128;
    for (x, y) in g.pairs() {
        let cr = g.red_codegree(x, y);
        let r_xy = usize::from(g.is_red(x, y));
        let w2_xy = g.red_degree(x) - cr - r_xy;
        let w2_yx = g.red_degree(y) - cr - r_xy;
        doubled += w2_xy as u128 * w2_yx as u128;
    }
    debug_assert_eq!(doubled % 2, 0);
    doubled / 2
}

/// RRBB 4-cycles via the bichromatic-pair identity:
/// `Σ_{x<y} codeg_R(x,y)·codeg_B(x,y)`.
pub fn count_rrbb_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let n = g.n();
    let mut total = 0u128;
    for (x, y) in g.pairs() {
        let cr = g.red_codegree(x, y);
        let r_xy = usize::from(g.is_red(x, y));
        let cb = (n + 2 * r_xy + cr) - 2 - g.red_degree(x) - g.red_degree(y);
        total += cr as u128 * cb as u128;
    }
    total
}

/// RRRB 4-cycles via the non-adjacent-pair identity:
/// `½ Σ_{x<y} codeg_R(x,y)·(w₂^R(x,y) + w₂^R(y,x))`.
pub fn count_rrrb_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let mut doubled = 0u128;
    for (x, y) in g.pairs() {
        let cr = g.red_codegree(x, y);
        let r_xy = usize::from(g.is_red(x, y));
        let w2_sum = g.red_degree(x) + g.red_degree(y) - 2 * cr - 2 * r_xy;
        doubled += cr as u128 * w2_sum as u128;
    }
    debug_assert_eq!(doubled % 2, 0);
    doubled / 2
}

/// Alternating 4-cycle plus red antipodal chord:
/// `Σ_{xy red} w₂^R(x,y)·w₂^R(y,x)`.
pub fn count_ccext_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let mut total = 0u128;
    for (x, y) in g.pairs() {
        if !g.is_red(x, y) {
            continue;
        }
        let cr = g.red_codegree(x, y);
        let w2_xy = g.red_degree(x) - cr - 1;
        let w2_yx = g.red_degree(y) - cr - 1;
        total += w2_xy as u128 * w2_yx as u128;
    }
    total
}

/// RRBB plus blue chord at the bichromatic pair:
/// `Σ_{xy blue} codeg_R(x,y)·codeg_B(x,y)`.
pub fn count_rrbbext_a_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let n = g.n();
    let mut total = 0u128;
    for (x, y) in g.pairs() {
        if g.is_red(x, y) {
            continue;
        }
        let cr = g.red_codegree(x, y);
        let cb = (n + cr) - 2 - g.red_degree(x) - g.red_degree(y);
        total += cr as u128 * cb as u128;
    }
    total
}

/// RRBB plus red chord at the monochromatic pair:
/// `Σ_{xy red} (C(w₂^R(x,y),2) + C(w₂^R(y,x),2))`.
pub fn count_rrbbext_b_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let choose2 = |k: usize| (k as u128) * (k.saturating_sub(1) as u128) / 2;
    let mut total = 0u128;
    for (x, y) in g.pairs() {
        if !g.is_red(x, y) {
            continue;
        }
        let cr = g.red_codegree(x, y);
        let w2_xy = g.red_degree(x) - cr - 1;
        let w2_yx = g.red_degree(y) - cr - 1;
        total += choose2(w2_xy) + choose2(w2_yx);
    }
    total
}

/// All-red 4-cycle plus blue chord:
/// `Σ_{xy blue} C(codeg_R(x,y), 2)`.
pub fn count_ccextt_codegree(g: &ColouredCompleteGraph) -> u128 {
    if g.n() < 4 {
        return 0;
    }
    let choose2 = |k: usize| (k as u128) * (k.saturating_sub(1) as u128) / 2;
    let mut total = 0u128;
    for (x, y) in g.pairs() {
        if !g.is_red(x, y) {
            total += choose2(g.red_codegree(x, y));
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Specialised-counter dispatch
// ---------------------------------------------------------------------------

/// A counter that evaluates one pattern quickly, produced by
/// [`SpecialisedCounter::recognise`]. Falls back to the generic embedding
/// counter for unrecognised patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialisedCounter {
    Rbrb,
    Rrbb,
    Rrrb,
    Ccext,
    RrbbExtA,
    RrbbExtB,
    Ccextt,
}

impl SpecialisedCounter {
    /// Recognises `h` up to isomorphism and colour swap among the patterns
    /// with codegree counters. Returns the counter and whether the host must
    /// be colour-swapped first.
    pub fn recognise(h: &PatternGraph) -> Option<(SpecialisedCounter, bool)> {
        use SpecialisedCounter::*;
        let table: [(SpecialisedCounter, PatternGraph); 7] = [
            (Rbrb, crate::pattern::rbrb_c4()),
            (Rrbb, crate::pattern::rrbb_c4()),
            (Rrrb, crate::pattern::rrrb_c4()),
            (Ccext, crate::pattern::ccext()),
            (RrbbExtA, crate::pattern::rrbbext_a()),
            (RrbbExtB, crate::pattern::rrbbext_b()),
            (Ccextt, crate::pattern::ccextt()),
        ];
        for (kind, p) in &table {
            if patterns_isomorphic(h, p) {
                return Some((*kind, false));
            }
            if patterns_isomorphic(h, &p.swap_colours()) {
                return Some((*kind, true));
            }
        }
        None
    }

    pub fn count(self, g: &ColouredCompleteGraph) -> u128 {
        match self {
            SpecialisedCounter::Rbrb => count_rbrb_antipodal(g),
            SpecialisedCounter::Rrbb => count_rrbb_codegree(g),
            SpecialisedCounter::Rrrb => count_rrrb_codegree(g),
            SpecialisedCounter::Ccext => count_ccext_codegree(g),
            SpecialisedCounter::RrbbExtA => count_rrbbext_a_codegree(g),
            SpecialisedCounter::RrbbExtB => count_rrbbext_b_codegree(g),
            SpecialisedCounter::Ccextt => count_ccextt_codegree(g),
        }
    }
}

/// Colour-preserving isomorphism test for small patterns.
pub fn patterns_isomorphic(a: &PatternGraph, b: &PatternGraph) -> bool {
    a.h() == b.h()
        && a.edge_count() == b.edge_count()
        && a.degree_multiset() == b.degree_multiset()
        && a.copies_in_pattern(b) >= 1
}

impl PatternGraph {
    fn degree_multiset(&self) -> Vec<(usize, usize)> {
        let mut m: Vec<(usize, usize)> = (0..self.h())
            .map(|v| (self.degree(v, Colour::Red), self.degree(v, Colour::Blue)))
            .collect();
        m.sort_unstable();
        m
    }
}

/// Copy count using the specialised counter when one applies, otherwise the
/// generic embedding counter.
pub fn count_copies_dispatch(h: &PatternGraph, g: &ColouredCompleteGraph) -> u128 {
    match SpecialisedCounter::recognise(h) {
        Some((c, false)) => c.count(g),
        Some((c, true)) => c.count(&g.swap_colours()),
        None => count_copies(h, g),
    }
}

// ---------------------------------------------------------------------------
// Triangle identity and induced counts
// ---------------------------------------------------------------------------

/// Both sides of the triangle/path identity, computed independently:
/// left, `C(n,3)` minus the number of monochromatic triangles; right, half
/// the number of one-red-one-blue 2-paths.
pub fn goodman_identity_check(g: &ColouredCompleteGraph) -> (u128, u128) {
    let n = g.n() as u128;
    let total_triangles = n * (n - 1) * (n - 2) / 6;
    let mut mono3 = 0u128; // 3 × (red triangles + blue triangles)
    for (x, y) in g.pairs() {
        if g.is_red(x, y) {
            mono3 += g.red_codegree(x, y) as u128;
        } else {
            mono3 += g.blue_codegree(x, y) as u128;
        }
    }
    debug_assert_eq!(mono3 % 3, 0);
    let lhs = total_triangles - mono3 / 3;
    let mut paths = 0u128;
    for x in 0..g.n() {
        paths += g.red_degree(x) as u128 * g.blue_degree(x) as u128;
    }
    debug_assert_eq!(paths % 2, 0);
    (lhs, paths / 2)
}

/// Number of induced copies of the uncoloured `f` in the uncoloured `j`:
/// both are completed to red-blue form (edges red, non-edges blue) and the
/// copy counter is applied.
pub fn induced_count(f: &UncolouredGraph, j: &UncolouredGraph) -> u128 {
    if f.n > j.n {
        return 0;
    }
    let pattern = f.completed_pattern();
    let host = ColouredCompleteGraph::from_red_edges(j.n, &j.edges).expect("valid host");
    count_copies(&pattern, &host)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_partitioned, construct_quasirandom, construct_turan_red};
    use crate::pattern::{self, UncolouredGraph};
    use Colour::{Blue as B, Red as R};

    fn red_c5() -> ColouredCompleteGraph {
        ColouredCompleteGraph::from_red_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn single_edge_counts_edges() {
        let g = construct_quasirandom(12, 0.4, 9).unwrap();
        let red_edge = PatternGraph::new(2, &[(0, 1, R)]).unwrap();
        assert_eq!(count_copies(&red_edge, &g), g.red_edge_count() as u128);
        let blue_edge = PatternGraph::new(2, &[(0, 1, B)]).unwrap();
        assert_eq!(count_copies(&blue_edge, &g), g.blue_edge_count() as u128);
    }

    #[test]
    fn rbrb_on_small_partitioned_graphs() {
        let g = construct_partitioned(5, 2, R).unwrap();
        assert_eq!(count_copies(&pattern::rbrb_c4(), &g), 6);
        let g = construct_partitioned(4, 2, R).unwrap();
        assert_eq!(count_copies(&pattern::rbrb_c4(), &g), 2);
        let g = construct_partitioned(6, 3, R).unwrap();
        assert_eq!(count_rbrb_antipodal(&g), 18);
    }

    // disconnected patterns: isolated vertices multiply counts by falling
    // factorials of the leftover host vertices
    #[test]
    fn isolated_pattern_vertices() {
        let g = construct_quasirandom(11, 0.45, 77).unwrap();
        let e = g.red_edge_count() as u128;
        // one red edge plus an isolated vertex
        let h = PatternGraph::new(3, &[(0, 1, R)]).unwrap();
        assert_eq!(h.aut_count(), 2);
        assert_eq!(count_copies(&h, &g), e * 9);
        // two disjoint red edges
        let h = PatternGraph::new(4, &[(0, 1, R), (2, 3, R)]).unwrap();
        assert_eq!(h.aut_count(), 8);
        let brute: u128 = {
            // pairs of disjoint red edges by direct double count
            let mut total = 0u128;
            let red: Vec<(usize, usize)> =
                g.pairs().filter(|&(x, y)| g.is_red(x, y)).collect();
            for (i, &(a, b)) in red.iter().enumerate() {
                for &(c, d) in red.iter().skip(i + 1) {
                    if a != c && a != d && b != c && b != d {
                        total += 1;
                    }
                }
            }
            total
        };
        assert_eq!(count_copies(&h, &g), brute);
    }

    #[test]
    fn pattern_larger_than_host_counts_zero() {
        let g = construct_quasirandom(3, 0.5, 0).unwrap();
        assert_eq!(count_copies(&pattern::rbrb_c4(), &g), 0);
    }

    #[test]
    fn monochromatic_hosts() {
        let blue = construct_quasirandom(9, 0.0, 0).unwrap();
        assert_eq!(count_rbrb_antipodal(&blue), 0);
        assert_eq!(count_rrbb_codegree(&blue), 0);
        assert_eq!(count_rrrb_codegree(&blue), 0);
        assert_eq!(count_alternating_cycles(&blue, 4).unwrap(), 0);
        let red = construct_quasirandom(9, 1.0, 0).unwrap();
        assert_eq!(count_alternating_cycles(&red, 4).unwrap(), 0);
        // no colour alternation possible in a monochromatic graph
        assert_eq!(walk_profile(&red, 2).unwrap().totals[2], 0);
    }

    #[test]
    fn walk_profile_red_c5() {
        let p = walk_profile(&red_c5(), 3).unwrap();
        assert_eq!(p.totals[1], 20);
        assert_eq!(p.totals[3], 80); // 2·5·2³
        for x in 0..5 {
            assert_eq!(p.w_red[0][x], 1);
            assert_eq!(p.w_blue[0][x], 1);
        }
    }

    #[test]
    fn walk_profile_matches_tuple_enumeration() {
        for seed in 0..6 {
            let g = construct_quasirandom(8, 0.5, seed).unwrap();
            let p = walk_profile(&g, 4).unwrap();
            for t in 1..=4 {
                assert_eq!(p.totals[t], count_alternating_walks_brute(&g, t));
            }
        }
    }

    #[test]
    fn walk_reversal_bijection_even_lengths() {
        let g = construct_quasirandom(10, 0.6, 3).unwrap();
        let p = walk_profile(&g, 4).unwrap();
        for k in (2..=4).step_by(2) {
            let red: u128 = p.w_red[k].iter().sum();
            let blue: u128 = p.w_blue[k].iter().sum();
            assert_eq!(red, blue);
        }
    }

    #[test]
    fn walk_bound_and_rho_beta_recursion() {
        let g = construct_quasirandom(11, 0.5, 8).unwrap();
        let n = g.n() as f64;
        let p = walk_profile(&g, 5).unwrap();
        for t in 1..=5 {
            let bound = 2.0 * n * ((n - 1.0) / 2.0).powi(t as i32);
            assert!((p.totals[t] as f64) <= bound + 1e-6);
        }
        for k in 1..=5 {
            let cap = ((n - 1.0) / 2.0).powi(2);
            assert!(p.rho[k] as f64 <= cap * p.beta[k - 1] as f64 + 1e-6);
            assert!(p.beta[k] as f64 <= cap * p.rho[k - 1] as f64 + 1e-6);
        }
    }

    #[test]
    fn pair_walk_matrix_basics() {
        let g = construct_partitioned(6, 3, R).unwrap();
        let w1 = pair_alternating_walks(&g, 1).unwrap();
        for (x, y) in g.pairs() {
            assert_eq!(w1[x * 6 + y], u128::from(g.is_red(x, y)));
        }
        // same-part vertices admit no red-then-blue 2-walk in the red-cross
        // construction: the midpoint would need a red edge into the part
        // and a blue edge out of it, which cross pairs never provide
        let w2 = pair_alternating_walks(&g, 2).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    assert_eq!(w2[x * 6 + y], 0);
                }
            }
        }
        // Σ_{x≠y} w₂^R(x,y) equals the alternating 2-path count Σ_x d_R d_B
        let total: u128 = (0..6)
            .flat_map(|x| (0..6).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y)
            .map(|(x, y)| w2[x * 6 + y])
            .sum();
        let paths: u128 = (0..6)
            .map(|x| g.red_degree(x) as u128 * g.blue_degree(x) as u128)
            .sum();
        assert_eq!(total, paths);
    }

    #[test]
    fn pair_walks_against_brute_matrix() {
        let g = construct_quasirandom(7, 0.5, 11).unwrap();
        let n = g.n();
        for k in 1..=3usize {
            let w = pair_alternating_walks(&g, k).unwrap();
            // brute force: enumerate alternating walks x→y of length k
            // starting red
            let mut brute = vec![0u128; n * n];
            fn rec(
                g: &ColouredCompleteGraph,
                cur: usize,
                last: Option<Colour>,
                left: usize,
                out: &mut [u128],
                start: usize,
            ) {
                if left == 0 {
                    out[start * g.n() + cur] += 1;
                    return;
                }
                for y in 0..g.n() {
                    if y == cur {
                        continue;
                    }
                    let c = g.colour(cur, y);
                    match last {
                        None if c != Colour::Red => continue,
                        Some(l) if l == c => continue,
                        _ => {}
                    }
                    rec(g, y, Some(c), left - 1, out, start);
                }
            }
            for x in 0..n {
                rec(&g, x, None, k, &mut brute, x);
            }
            assert_eq!(w, brute, "length {k}");
        }
    }

    #[test]
    fn alternating_cycles_small_cases() {
        let g = construct_partitioned(4, 2, R).unwrap();
        assert_eq!(count_alternating_cycles(&g, 4).unwrap(), 2);
        let g = construct_partitioned(8, 4, R).unwrap();
        assert_eq!(count_alternating_cycles(&g, 4).unwrap(), 72);
        assert!(count_alternating_cycles(&g, 5).is_err());
        assert!(count_alternating_cycles(&g, 2).is_err());
    }

    #[test]
    fn alternating_cycles_longer_lengths() {
        // the balanced partitioned graph attains (1/2t)(a)_{2t}(b)_{2t} for
        // cycles of length 4t and has no alternating cycles of length 4t+2
        let g = construct_partitioned(10, 5, R).unwrap();
        assert_eq!(count_alternating_cycles(&g, 8).unwrap(), 3600); // (5)₄²/4
        assert_eq!(count_alternating_cycles(&g, 6).unwrap(), 0);
        assert_eq!(
            crate::formulas::alt_cycle_max(10, 2),
            count_alternating_cycles(&g, 8).unwrap()
        );
        // and the DFS agrees with the generic counter on a random host
        let alt8 = pattern::alternating_cycle(8).unwrap();
        let r = construct_quasirandom(9, 0.5, 424).unwrap();
        assert_eq!(
            count_alternating_cycles(&r, 8).unwrap(),
            count_copies(&alt8, &r)
        );
    }

    #[test]
    fn specialised_counters_match_generic_oracle() {
        let sigmas = [0.15, 0.35, 0.5, 0.65, 0.85];
        let alt6 = pattern::alternating_cycle(6).unwrap();
        for seed in 0..40u64 {
            let n = 4 + (seed % 9) as usize; // 4..=12
            let g = construct_quasirandom(n, sigmas[seed as usize % 5], 1000 + seed).unwrap();
            assert_eq!(
                count_rbrb_antipodal(&g),
                count_copies(&pattern::rbrb_c4(), &g)
            );
            assert_eq!(
                count_rrbb_codegree(&g),
                count_copies(&pattern::rrbb_c4(), &g)
            );
            assert_eq!(
                count_rrrb_codegree(&g),
                count_copies(&pattern::rrrb_c4(), &g)
            );
            assert_eq!(
                count_ccext_codegree(&g),
                count_copies(&pattern::ccext(), &g)
            );
            assert_eq!(
                count_rrbbext_a_codegree(&g),
                count_copies(&pattern::rrbbext_a(), &g)
            );
            assert_eq!(
                count_rrbbext_b_codegree(&g),
                count_copies(&pattern::rrbbext_b(), &g)
            );
            assert_eq!(
                count_ccextt_codegree(&g),
                count_copies(&pattern::ccextt(), &g)
            );
            assert_eq!(
                count_alternating_cycles(&g, 4).unwrap(),
                count_copies(&pattern::rbrb_c4(), &g)
            );
            if n >= 6 {
                assert_eq!(
                    count_alternating_cycles(&g, 6).unwrap(),
                    count_copies(&alt6, &g)
                );
            }
        }
    }

    #[test]
    fn dispatch_recognises_swapped_patterns() {
        let g = construct_quasirandom(9, 0.7, 21).unwrap();
        let bbbr = pattern::rrrb_c4().swap_colours();
        assert_eq!(count_copies_dispatch(&bbbr, &g), count_copies(&bbbr, &g));
        let unknown = PatternGraph::new(3, &[(0, 1, R), (1, 2, B), (0, 2, R)]).unwrap();
        assert!(SpecialisedCounter::recognise(&unknown).is_none());
        assert_eq!(
            count_copies_dispatch(&unknown, &g),
            count_copies(&unknown, &g)
        );
    }

    #[test]
    fn swap_symmetry_of_counts() {
        for seed in 0..10u64 {
            let g = construct_quasirandom(9, 0.45, 70 + seed).unwrap();
            for (_, h) in pattern::named_four_vertex_patterns() {
                assert_eq!(
                    count_copies(&h, &g.swap_colours()),
                    count_copies(&h.swap_colours(), &g)
                );
            }
        }
    }

    #[test]
    fn copies_times_aut_is_embeddings() {
        let g = construct_quasirandom(10, 0.5, 5).unwrap();
        for (_, h) in pattern::named_four_vertex_patterns() {
            assert_eq!(
                count_copies(&h, &g) * h.aut_count() as u128,
                count_embeddings(&h, &g)
            );
        }
    }

    #[test]
    fn quantum_linearity_and_completion_identity() {
        let g = construct_quasirandom(8, 0.5, 13).unwrap();
        let h = pattern::rbrb_c4();
        let q = QuantumPattern::new(vec![(1.0, h.clone())]).unwrap();
        assert_eq!(count_quantum(&q, &g), count_copies(&h, &g) as f64);
        let scaled = q.scaled(2.5).unwrap();
        assert_eq!(
            count_quantum(&scaled, &g),
            2.5 * count_copies(&h, &g) as f64
        );

        // #(CC, G) decomposes over the red-blue K4 isomorphism classes:
        // Σ_K #(CC, K) · (number of induced K in G). The BB and RR classes
        // contain two copies of CC, the BR class one.
        let k4s = all_coloured_k4_classes();
        let mut total = 0u128;
        for k in &k4s {
            let cc_in_k = pattern::rbrb_c4().copies_in_pattern(k);
            if cc_in_k == 0 {
                continue;
            }
            let host_count = count_copies(k, &g);
            total += cc_in_k as u128 * host_count;
        }
        assert_eq!(total, count_copies(&pattern::rbrb_c4(), &g));
    }

    /// All red-blue complete patterns on 4 vertices, one per isomorphism
    /// class, by brute dedup.
    fn all_coloured_k4_classes() -> Vec<PatternGraph> {
        let mut reps: Vec<PatternGraph> = Vec::new();
        for mask in 0u32..64 {
            let mut edges = Vec::new();
            for (idx, (i, j)) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .iter()
                .enumerate()
            {
                let c = if mask >> idx & 1 == 1 { R } else { B };
                edges.push((*i, *j, c));
            }
            let p = PatternGraph::new(4, &edges).unwrap();
            if !reps.iter().any(|r| patterns_isomorphic(r, &p)) {
                reps.push(p);
            }
        }
        assert_eq!(reps.len(), 11);
        reps
    }

    #[test]
    fn goodman_identity_cases() {
        let red = construct_quasirandom(5, 1.0, 0).unwrap();
        assert_eq!(goodman_identity_check(&red), (0, 0));
        let (lhs, rhs) = goodman_identity_check(&red_c5());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, 10);
        for seed in 0..10 {
            let g = construct_quasirandom(9, 0.55, 300 + seed).unwrap();
            let (l, r) = goodman_identity_check(&g);
            assert_eq!(l, r);
        }
    }

    #[test]
    fn full_edge_cap() {
        for seed in 0..5 {
            let g = construct_quasirandom(10, 0.5, 40 + seed).unwrap();
            for st in pair_stats(&g).pairs {
                assert!(st.w2_xy + st.w2_yx <= g.n() - 2);
            }
        }
        // in a balanced partitioned graph every cross pair is full
        let g = construct_partitioned(8, 4, R).unwrap();
        let stats = pair_stats(&g);
        for st in stats.pairs {
            let cross = (st.x < 4) != (st.y < 4);
            assert_eq!(st.full, cross);
        }
    }

    // each alternating (2t−1)-path completes into at most one alternating
    // 2t-cycle, and each cycle contains exactly 2t such paths
    #[test]
    fn cycle_count_bounded_by_path_count() {
        let rbr = PatternGraph::new(4, &[(0, 1, R), (1, 2, B), (2, 3, R)]).unwrap();
        let brb = rbr.swap_colours();
        for seed in 0..8u64 {
            let g = construct_quasirandom(9, 0.5, 900 + seed).unwrap();
            let cycles = count_alternating_cycles(&g, 4).unwrap();
            let paths = count_copies(&rbr, &g) + count_copies(&brb, &g);
            assert!(4 * cycles <= paths);
        }
    }

    // the walk bound 2n((n−1)/2)^t is attained by 4-regular red graphs at
    // n = 9: take the circulant with offsets {±1, ±2}
    #[test]
    fn walk_bound_attained_by_circulant() {
        let mut edges = Vec::new();
        for v in 0..9usize {
            edges.push((v, (v + 1) % 9));
            edges.push((v, (v + 2) % 9));
        }
        let g = ColouredCompleteGraph::from_red_edges(9, &edges).unwrap();
        let p = walk_profile(&g, 3).unwrap();
        assert_eq!(p.totals[2], 288); // 2·9·4²
        assert_eq!(p.totals[3], 1152); // 2·9·4³
    }

    #[test]
    fn induced_counts() {
        let c4 = UncolouredGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let k22 = UncolouredGraph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(induced_count(&c4, &k22), 1);
        // K_{m,m} has C(m,2)² induced 4-cycles
        for m in 2..=5usize {
            let mut edges = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    edges.push((a, m + b));
                }
            }
            let kmm = UncolouredGraph::new(2 * m, &edges).unwrap();
            let choose2 = (m * (m - 1) / 2) as u128;
            assert_eq!(induced_count(&c4, &kmm), choose2 * choose2);
        }
        // complementation symmetry I(F, J) = I(F̄, J̄)
        let j = UncolouredGraph::new(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5), (1, 2)])
            .unwrap();
        let f = UncolouredGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            induced_count(&f, &j),
            induced_count(&f.complement(), &j.complement())
        );
        // K4 minus an edge in the 5-partite Turán graph on 10 vertices
        let t5 = construct_turan_red(10, 5).unwrap();
        let t5_edges: Vec<(usize, usize)> = t5.pairs().filter(|&(x, y)| t5.is_red(x, y)).collect();
        let t5u = UncolouredGraph::new(10, &t5_edges).unwrap();
        let k4e = UncolouredGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(induced_count(&k4e, &t5u), 5 * 24);
    }

    #[test]
    fn counts_commute_with_swap_via_generic_counter() {
        // #(H, swap(G)) = #(swap(H), G)
        let g = construct_quasirandom(11, 0.6, 77).unwrap();
        let h = pattern::rrrb_c4();
        assert_eq!(
            count_copies(&h, &g.swap_colours()),
            count_copies(&h.swap_colours(), &g)
        );
    }
}
