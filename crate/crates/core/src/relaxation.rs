//! Numerical relaxation machinery for degree/codegree analysis.
//!
//! The central object is the degree-codegree vector `(d, z)`: normalised red
//! degrees `d_x = d_R(x)/n` and red codegrees `z_xy = |N_R(x)∩N_R(y)|/n`.
//! Graph-derived vectors always satisfy
//!
//! * (P1) `0 ≤ d_x ≤ 1`,
//! * (P2) `max{0, d_x+d_y−1} ≤ z_xy ≤ min{d_x, d_y}` (graphical), and
//! * (P3) `Σ_{x<y} z_xy = (n/2)(τn − σ)` with `σ = (1/n)Σd`, `τ = (1/n)Σd²`,
//!
//! while the feasible set of the relaxation only imposes (P1) and (P3).
//! Everything here is generic over the scalar: `f64` for sweeps, and
//! arbitrary-precision rationals for the exactness claims of the
//! equalisation iteration.

use num::rational::BigRational;
use num::{BigInt, FromPrimitive, ToPrimitive};
use serde::Serialize;

use crate::graph::ColouredCompleteGraph;
use crate::pattern::PatternGraph;
use crate::rng::SeededRng;
use crate::{Error, Result};

/// Scalar abstraction: reference-friendly field ops plus conversions.
pub trait RelaxScalar:
    num::traits::NumRef + Clone + PartialOrd + FromPrimitive + ToPrimitive + std::fmt::Debug
{
}
impl<T> RelaxScalar for T where
    T: num::traits::NumRef + Clone + PartialOrd + FromPrimitive + ToPrimitive + std::fmt::Debug
{
}

fn scalar<T: RelaxScalar>(i: i64) -> T {
    T::from_i64(i).expect("small integer")
}

fn abs<T: RelaxScalar>(x: &T) -> T {
    if *x < T::zero() {
        T::zero() - x
    } else {
        x.clone()
    }
}

// ---------------------------------------------------------------------------
// Degree-codegree vectors
// ---------------------------------------------------------------------------

/// The relaxation pair `(d, z)`; `z` is stored in row-major upper-triangular
/// pair order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeCodegreeVector<T> {
    pub n: usize,
    pub d: Vec<T>,
    pub z: Vec<T>,
}

impl<T: RelaxScalar> DegreeCodegreeVector<T> {
    pub fn new(d: Vec<T>, z: Vec<T>) -> Result<Self> {
        let n = d.len();
        if z.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "z length {} does not match C({n},2)",
                z.len()
            )));
        }
        Ok(DegreeCodegreeVector { n, d, z })
    }

    pub fn pair_count(&self) -> usize {
        self.z.len()
    }

    /// `σ = (1/n)Σ d_i`.
    pub fn sigma(&self) -> T {
        let sum = self.d.iter().fold(T::zero(), |acc, x| acc + x);
        sum / scalar::<T>(self.n as i64)
    }

    /// `τ = (1/n)Σ d_i²`.
    pub fn tau(&self) -> T {
        let sum = self.d.iter().fold(T::zero(), |acc, x| acc + x.clone() * x);
        sum / scalar::<T>(self.n as i64)
    }

    /// `t_ij = d_i + d_j − 4 z_ij`, in pair order.
    pub fn t_entries(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.z.len());
        let mut idx = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let t = self.d[i].clone() + &self.d[j] - scalar::<T>(4) * self.z[idx].clone();
                out.push(t);
                idx += 1;
            }
        }
        out
    }

    /// `ℓ = C(n,2)⁻¹ Σ t_ij`; invariant under the equalisation steps. Zero
    /// when there are no pairs.
    pub fn ell(&self) -> T {
        let ts = self.t_entries();
        if ts.is_empty() {
            return T::zero();
        }
        let sum = ts.iter().fold(T::zero(), |acc, x| acc + x);
        sum / scalar::<T>(ts.len() as i64)
    }

    /// `ε_ij` defined by `t_ij = ℓ − 4 ε_ij`.
    pub fn eps_entries(&self) -> Vec<T> {
        let ell = self.ell();
        self.t_entries()
            .into_iter()
            .map(|t| (ell.clone() - t) / scalar::<T>(4))
            .collect()
    }

    /// `f(d, z) = (1/n²) Σ_{i<j} z_ij (d_i + d_j − 2 z_ij)`.
    pub fn objective_f(&self) -> T {
        let mut sum = T::zero();
        let mut idx = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let inner = self.d[i].clone() + &self.d[j] - scalar::<T>(2) * self.z[idx].clone();
                sum = sum + self.z[idx].clone() * inner;
                idx += 1;
            }
        }
        let n = scalar::<T>(self.n as i64);
        sum / (n.clone() * n)
    }

    /// `Σ|t_ij − ℓ|`: the quantity the equalisation drives down.
    pub fn spread(&self) -> T {
        let ell = self.ell();
        self.t_entries()
            .iter()
            .fold(T::zero(), |acc, t| acc + abs(&(t.clone() - &ell)))
    }

    /// Residual of (P3): `Σ z − (n/2)(τn − σ)`; zero for members of the
    /// feasible set.
    pub fn p3_residual(&self) -> T {
        let zsum = self.z.iter().fold(T::zero(), |acc, x| acc + x);
        let n = scalar::<T>(self.n as i64);
        let target = n.clone() * (self.tau() * n.clone() - self.sigma()) / scalar::<T>(2);
        zsum - target
    }

    /// (P1): every `d_i ∈ [0, 1]`.
    pub fn p1_ok(&self) -> bool {
        self.d.iter().all(|x| T::zero() <= *x && *x <= T::one())
    }

    /// (P2) for every pair; tracked but not required for feasibility.
    pub fn is_graphical(&self) -> bool {
        let mut idx = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let lo_cand = self.d[i].clone() + &self.d[j] - T::one();
                let lo = if lo_cand < T::zero() {
                    T::zero()
                } else {
                    lo_cand
                };
                let hi = if self.d[i] < self.d[j] {
                    self.d[i].clone()
                } else {
                    self.d[j].clone()
                };
                if self.z[idx] < lo || self.z[idx] > hi {
                    return false;
                }
                idx += 1;
            }
        }
        true
    }

    pub fn map<U: RelaxScalar>(&self, f: impl Fn(&T) -> U) -> DegreeCodegreeVector<U> {
        DegreeCodegreeVector {
            n: self.n,
            d: self.d.iter().map(&f).collect(),
            z: self.z.iter().map(&f).collect(),
        }
    }
}

impl DegreeCodegreeVector<BigRational> {
    pub fn to_f64(&self) -> DegreeCodegreeVector<f64> {
        self.map(|x| x.to_f64().unwrap())
    }
}

/// Float degree-codegree vector of a graph.
pub fn vector_from_graph(g: &ColouredCompleteGraph) -> DegreeCodegreeVector<f64> {
    let n = g.n();
    let d = (0..n).map(|x| g.red_degree(x) as f64 / n as f64).collect();
    let z = g
        .pairs()
        .map(|(x, y)| g.red_codegree(x, y) as f64 / n as f64)
        .collect();
    DegreeCodegreeVector { n, d, z }
}

/// Exact rational degree-codegree vector of a graph (denominator `n`).
pub fn vector_from_graph_rational(g: &ColouredCompleteGraph) -> DegreeCodegreeVector<BigRational> {
    let n = g.n();
    let rat = |num: usize| BigRational::new(BigInt::from(num), BigInt::from(n));
    let d = (0..n).map(|x| rat(g.red_degree(x))).collect();
    let z = g.pairs().map(|(x, y)| rat(g.red_codegree(x, y))).collect();
    DegreeCodegreeVector { n, d, z }
}

// ---------------------------------------------------------------------------
// Equalisation iteration
// ---------------------------------------------------------------------------

/// Trace of one equalisation run: `steps[k] = (Σ_k, f_k)` with the initial
/// state at `k = 0`. Each step moves `γ/5` of codegree mass from the pair
/// with minimal `t` to the pair with maximal `t`, which drops `Σ` by exactly
/// `8γ/5` and raises `f` by at least `γ²/25n²`.
#[derive(Clone, Debug, Serialize)]
pub struct EqualizationTrace<T> {
    pub gamma: T,
    pub steps: Vec<(T, T)>,
    pub terminated: bool,
}

impl<T: RelaxScalar> EqualizationTrace<T> {
    /// CSV rows `step,Sigma,f`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,Sigma,f\n");
        for (k, (s, f)) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                k,
                s.to_f64().unwrap_or(f64::NAN),
                f.to_f64().unwrap_or(f64::NAN)
            ));
        }
        out
    }
}

/// Runs the equalisation until no pair sits `γ` above the mean `ℓ` while
/// another sits `γ` below. The pair selection is the maximal and minimal
/// `t`-entry (first index on ties), which makes traces deterministic.
pub fn equalize<T: RelaxScalar>(
    v: &DegreeCodegreeVector<T>,
    gamma: &T,
) -> Result<(EqualizationTrace<T>, DegreeCodegreeVector<T>)> {
    if *gamma <= T::zero() {
        return Err(Error::InvalidArgument("gamma must be positive".into()));
    }
    if v.pair_count() == 0 {
        let trace = EqualizationTrace {
            gamma: gamma.clone(),
            steps: vec![(T::zero(), T::zero())],
            terminated: true,
        };
        return Ok((trace, v.clone()));
    }
    let mut cur = v.clone();
    let ell = cur.ell();
    let shift = gamma.clone() / scalar::<T>(5);
    let mut steps = vec![(cur.spread(), cur.objective_f())];
    loop {
        let ts = cur.t_entries();
        let mut hi = 0usize;
        let mut lo = 0usize;
        for (i, t) in ts.iter().enumerate() {
            if *t > ts[hi] {
                hi = i;
            }
            if *t < ts[lo] {
                lo = i;
            }
        }
        let hi_qualifies = ts[hi].clone() >= ell.clone() + gamma;
        let lo_qualifies = ts[lo].clone() <= ell.clone() - gamma;
        if !(hi_qualifies && lo_qualifies) {
            break;
        }
        cur.z[hi] = cur.z[hi].clone() + &shift;
        cur.z[lo] = cur.z[lo].clone() - &shift;
        steps.push((cur.spread(), cur.objective_f()));
    }
    Ok((
        EqualizationTrace {
            gamma: gamma.clone(),
            steps,
            terminated: true,
        },
        cur,
    ))
}

// ---------------------------------------------------------------------------
// Quadratic profile analysis
// ---------------------------------------------------------------------------

/// `g_σ(τ) = −(1/8)(8τ² − (8σ+1)τ + σ²)`.
pub fn g_sigma(sigma: f64, tau: f64) -> f64 {
    -(8.0 * tau * tau - (8.0 * sigma + 1.0) * tau + sigma * sigma) / 8.0
}

/// Density above which the maximiser of `g_σ` moves to the boundary
/// `τ = σ²`: `(1+√2)/4`.
pub fn profile_crossover() -> f64 {
    crate::formulas::profile_crossover()
}

/// The maximising `τ*` of `g_σ` over `τ ≥ σ²`.
pub fn tau_star(sigma: f64) -> f64 {
    if sigma < profile_crossover() {
        sigma / 2.0 + 1.0 / 16.0
    } else {
        sigma * sigma
    }
}

// ---------------------------------------------------------------------------
// Pair functions
// ---------------------------------------------------------------------------

/// Values of the pair functions at `(p, q, r)` and the tradeoff gap.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PairFunctions {
    /// `b = r(1−p−q+r)`: bichromatic-pair weight.
    pub b: f64,
    /// `m = ½(p−r)² + ½(q−r)²`: monochromatic-pair weight.
    pub m: f64,
    /// `t = b + m`.
    pub t: f64,
    pub graphical: bool,
    /// `½ − p(1−p) − b·(1/(2p(1−p)) − 2) − t`; nonnegative on the graphical
    /// region, absent when `p ∈ {0, 1}` or the triple is not graphical.
    pub gap: Option<f64>,
}

pub fn is_graphical_triple(p: f64, q: f64, r: f64) -> bool {
    r >= (p + q - 1.0).max(0.0) - 1e-15 && r <= p.min(q) + 1e-15
}

pub fn rrbb_pair_functions(p: f64, q: f64, r: f64) -> PairFunctions {
    let b = r * (1.0 - p - q + r);
    let m = 0.5 * (p - r) * (p - r) + 0.5 * (q - r) * (q - r);
    let t = b + m;
    let graphical = is_graphical_triple(p, q, r);
    let gap = if graphical && p > 0.0 && p < 1.0 {
        Some(0.5 - p * (1.0 - p) - b * (0.5 / (p * (1.0 - p)) - 2.0) - t)
    } else {
        None
    };
    PairFunctions {
        b,
        m,
        t,
        graphical,
        gap,
    }
}

/// Closed form of the tradeoff gap, expanded as a quadratic in `r`; agrees
/// with `rrbb_pair_functions(..).gap` and exists as an independent route for
/// testing.
pub fn tradeoff_gap_quadratic(p: f64, q: f64, r: f64) -> f64 {
    (-r * r
        + r * (3.0 * p + q - 2.0 * p * p - 1.0)
        + p * (1.0 - p) * ((1.0 - p) * (1.0 - p) - q * q))
        / (2.0 * p * (1.0 - p))
}

/// Partition of pair values around a fixed `p`, mirroring the
/// twin/antitwin split of near-extremal hosts. `A0` collects pairs whose
/// `t`-value is small; the rest go to `S` (codegree near zero) or `T`
/// (codegree near ½) when they fit, and are reported back otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct PairClasses {
    pub a0: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub unclassified: Vec<usize>,
}

pub fn rrbb_classify_pairs(p: f64, pairs: &[(f64, f64)], eta: f64) -> PairClasses {
    let mut out = PairClasses {
        a0: vec![],
        s: vec![],
        t: vec![],
        unclassified: vec![],
    };
    for (i, &(q, r)) in pairs.iter().enumerate() {
        let tv = rrbb_pair_functions(p, q, r).t;
        if tv < 0.25 - eta {
            out.a0.push(i);
        } else if r <= eta {
            out.s.push(i);
        } else if r >= 0.5 - eta {
            out.t.push(i);
        } else {
            out.unclassified.push(i);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Canonical-pattern scores
// ---------------------------------------------------------------------------

/// `p_H(α, β) = Σ_i (1−α)^{d_b^i}(1−β)^{d_r^i} + α^{d_r^i}β^{d_b^i}`.
pub fn canonical_score(h: &PatternGraph, alpha: f64, beta: f64) -> f64 {
    use crate::graph::Colour;
    (0..h.h())
        .map(|i| {
            let dr = h.degree(i, Colour::Red) as i32;
            let db = h.degree(i, Colour::Blue) as i32;
            (1.0 - alpha).powi(db) * (1.0 - beta).powi(dr) + alpha.powi(dr) * beta.powi(db)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CanonicalGridReport {
    pub canonical: bool,
    /// Largest score seen on the sweep region `η ≤ α+β ≤ 1+δ`.
    pub max_score: f64,
    pub worst_alpha: f64,
    pub worst_beta: f64,
    /// The score must stay at or below `h − η/2`.
    pub threshold: f64,
}

/// Sweeps `p_H` over the grid `α, β ∈ [0,1]` restricted to
/// `η ≤ α+β ≤ 1+10⁻³` and compares against `h − η/2`.
pub fn is_canonical_grid(h: &PatternGraph, eta: f64, grid_step: f64) -> CanonicalGridReport {
    const SUM_SLACK: f64 = 1e-3;
    let threshold = h.h() as f64 - eta / 2.0;
    let mut max_score = f64::NEG_INFINITY;
    let mut worst = (0.0, 0.0);
    let steps = (1.0 / grid_step).round() as usize;
    for ai in 0..=steps {
        let alpha = ai as f64 * grid_step;
        for bi in 0..=steps {
            let beta = bi as f64 * grid_step;
            let s = alpha + beta;
            if s < eta || s > 1.0 + SUM_SLACK {
                continue;
            }
            let score = canonical_score(h, alpha, beta);
            if score > max_score {
                max_score = score;
                worst = (alpha, beta);
            }
        }
    }
    CanonicalGridReport {
        canonical: max_score <= threshold,
        max_score,
        worst_alpha: worst.0,
        worst_beta: worst.1,
        threshold,
    }
}

// ---------------------------------------------------------------------------
// Auxiliary inequality batteries
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize)]
pub struct InequalityReport {
    pub trials: u64,
    pub product_violations: u64,
    /// Worst slack of `Ms/4 − Σ aᵢbᵢ` (nonnegative when the inequality
    /// holds).
    pub product_worst_slack: f64,
    pub cubic_violations: u64,
    /// Worst slack of `1 − x⁴ − (1/n)Σ(1−xᵢ²)(1+xxᵢ)`.
    pub cubic_worst_slack: f64,
}

/// Random batteries for the two auxiliary inequalities:
/// `Σ aᵢbᵢ ≤ Ms/4` for nonnegative integers with `aᵢ+bᵢ ≤ s`,
/// `M = Σ(aᵢ+bᵢ)`; and `(1/n)Σ(1−xᵢ²)(1+xxᵢ) ≤ 1−x⁴` for `xᵢ ∈ [−1,1]`
/// with mean `x ∈ (0,1]`.
pub fn small_inequality_checks(seed: u64, trials: u64) -> InequalityReport {
    let mut rng = SeededRng::new(seed);
    let mut report = InequalityReport {
        trials,
        product_violations: 0,
        product_worst_slack: f64::INFINITY,
        cubic_violations: 0,
        cubic_worst_slack: f64::INFINITY,
    };
    for _ in 0..trials {
        // product inequality over integers
        let n = 1 + rng.below(24) as usize;
        let s = 1 + rng.below(19);
        let mut m = 0u64;
        let mut dot = 0u64;
        for _ in 0..n {
            let a = rng.below(s + 1);
            let b = rng.below(s - a + 1);
            m += a + b;
            dot += a * b;
        }
        // compare 4 Σab ≤ M s in integers
        if 4 * dot > m * s {
            report.product_violations += 1;
        }
        let slack = (m * s) as f64 / 4.0 - dot as f64;
        report.product_worst_slack = report.product_worst_slack.min(slack);

        // cubic mean inequality
        let n = 1 + rng.below(30) as usize;
        let xs: Vec<f64> = (0..n).map(|_| 2.0 * rng.unit_f64() - 1.0).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let (xs, mean) = if mean > 0.0 {
            (xs, mean)
        } else {
            // flip signs so the mean is positive; skip the measure-zero case
            let flipped: Vec<f64> = xs.iter().map(|x| -x).collect();
            let m = -mean;
            if m <= 0.0 {
                continue;
            }
            (flipped, m)
        };
        let lhs = xs
            .iter()
            .map(|&x| (1.0 - x * x) * (1.0 + mean * x))
            .sum::<f64>()
            / n as f64;
        let rhs = 1.0 - mean.powi(4);
        if lhs > rhs + 1e-12 {
            report.cubic_violations += 1;
        }
        report.cubic_worst_slack = report.cubic_worst_slack.min(rhs - lhs);
    }
    report
}

// ---------------------------------------------------------------------------
// Multipartite profile optimisation
// ---------------------------------------------------------------------------

/// `λ(x) = Σ xᵢ²(1−xᵢ)²` over part-ratio vectors with `xᵢ ≥ 0`,
/// `Σ xᵢ ≤ 1`.
pub fn lambda_q(x: &[f64]) -> Result<f64> {
    if x.iter().any(|&v| v < -1e-12) || x.iter().sum::<f64>() > 1.0 + 1e-9 {
        return Err(Error::InvalidArgument("not a point of the simplex".into()));
    }
    Ok(x.iter().map(|&v| v * v * (1.0 - v) * (1.0 - v)).sum())
}

/// Maximises `λ` by a simplex grid scan over up to `max_parts` parts
/// followed by coordinate refinement with shrinking steps. Returns the
/// argmax (sorted descending) and the value.
pub fn optimize_lambda_q(max_parts: usize, grid: usize) -> (Vec<f64>, f64) {
    let mut best_x: Vec<f64> = vec![];
    let mut best_v = f64::NEG_INFINITY;
    for parts in 1..=max_parts {
        let mut x = vec![0usize; parts];
        scan(&mut x, 0, grid, &mut |ks| {
            let xs: Vec<f64> = ks.iter().map(|&k| k as f64 / grid as f64).collect();
            let v = lambda_q(&xs).unwrap();
            if v > best_v {
                best_v = v;
                best_x = xs;
            }
        });
    }
    // refinement: move mass between coordinates or trade against the unused
    // remainder, halving the step until it is negligible
    let mut x = best_x;
    let mut step = 1.0 / grid as f64;
    while step > 1e-11 {
        let mut improved = false;
        loop {
            let mut better: Option<(Vec<f64>, f64)> = None;
            let slack = 1.0 - x.iter().sum::<f64>();
            for i in 0..x.len() {
                let mut moves: Vec<Vec<f64>> = Vec::new();
                if slack >= step {
                    let mut cand = x.clone();
                    cand[i] += step;
                    moves.push(cand);
                }
                if x[i] >= step {
                    let mut cand = x.clone();
                    cand[i] -= step;
                    moves.push(cand);
                }
                for j in 0..x.len() {
                    if i != j && x[j] >= step {
                        let mut cand = x.clone();
                        cand[i] += step;
                        cand[j] -= step;
                        moves.push(cand);
                    }
                }
                for cand in moves {
                    let v = lambda_q(&cand).unwrap();
                    if v > best_v + 1e-18 && better.as_ref().is_none_or(|(_, bv)| v > *bv) {
                        better = Some((cand, v));
                    }
                }
            }
            match better {
                Some((cand, v)) => {
                    x = cand;
                    best_v = v;
                    improved = true;
                }
                None => break,
            }
        }
        let _ = improved;
        step /= 2.0;
    }
    x.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (x, best_v)
}

fn scan(x: &mut Vec<usize>, i: usize, left: usize, visit: &mut impl FnMut(&[usize])) {
    if i == x.len() {
        visit(x);
        return;
    }
    let cap = if i == 0 { left } else { left.min(x[i - 1]) }; // sorted descending
    for k in 0..=cap {
        x[i] = k;
        scan(x, i + 1, left - k, visit);
    }
}

// ---------------------------------------------------------------------------
// Strictness margins of the complete tripartite maximiser
// ---------------------------------------------------------------------------

/// Exact induced count `Σ_i C(mᵢ,2)·C(n−mᵢ,2)` of the weighted 4-cycle /
/// diamond quantum pattern in a complete tripartite graph.
pub fn tripartite_induced_count(parts: &[u128]) -> u128 {
    let n: u128 = parts.iter().sum();
    parts
        .iter()
        .map(|&m| crate::formulas::binomial(m, 2) * crate::formulas::binomial(n - m, 2))
        .sum()
}

/// Exact single-edge flip losses and new-vertex attachment gaps of the
/// complete tripartite graph with parts `(m1, m2, m3)`. All counts are exact
/// finite-`n` values, not asymptotic constants.
#[derive(Clone, Debug, Serialize)]
pub struct QStrictMargins {
    pub parts: [u128; 3],
    pub n: u128,
    pub base: u128,
    /// Loss from deleting an edge between parts `i < j`, per `(i, j)`.
    pub inter_flip_losses: Vec<((usize, usize), i128)>,
    /// Loss from inserting an edge inside part `i`.
    pub intra_flip_losses: Vec<(usize, i128)>,
    /// `ΔI(A)`: induced-count gain of attaching a new vertex to the parts in
    /// `A`, for every `A ⊆ {0,1,2}` (indexed by bitmask).
    pub attach_gains: Vec<u128>,
    /// Minimum of `ΔI(A*) − ΔI(A)` over `|A*| = 2` and `|A| ≠ 2`.
    pub s2_min_gap: i128,
}

pub fn q_strict_margins(m1: u128, m2: u128, m3: u128) -> QStrictMargins {
    let parts = [m1, m2, m3];
    let n: u128 = m1 + m2 + m3;
    let base = tripartite_induced_count(&parts);
    let c2 = |m: u128| crate::formulas::binomial(m, 2);

    let mut inter = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let k = 3 - i - j;
            let (mi, mj, mk) = (parts[i], parts[j], parts[k]);
            // delete an edge between parts i and j: the 4-cycles through it
            // (one more vertex in each side) and the diamonds through it
            // disappear; the pair becomes non-adjacent and supports C(mk,2)
            // new 4-cycles with both others in part k
            let loss = 2 * (mi as i128 - 1) * (mj as i128 - 1)
                + mk as i128 * (mi as i128 + mj as i128 - 2)
                - c2(mk) as i128;
            inter.push(((i, j), loss));
        }
    }
    let mut intra = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let (mj, mk) = (parts[j], parts[k]);
        // insert an edge inside part i: its 4-cycles become diamonds and its
        // diamonds vanish
        let loss = c2(mj) as i128 + c2(mk) as i128 + (mj * mk) as i128;
        intra.push((i, loss));
    }

    let mut attach = Vec::with_capacity(8);
    for mask in 0usize..8 {
        let in_a = |i: usize| mask >> i & 1 == 1;
        let out_sum: u128 = (0..3).filter(|&i| !in_a(i)).map(|i| parts[i]).sum();
        let in_pairs: u128 = (0..3).filter(|&i| in_a(i)).map(|i| c2(parts[i])).sum();
        // 4-cycles: v pairs with an outside vertex against a nonadjacent pair
        // inside an attached part
        let c4 = out_sum * in_pairs;
        // diamonds with the non-edge inside an attached part, third vertex in
        // a different attached part
        let mut diamond_in = 0u128;
        for i in 0..3 {
            if in_a(i) {
                let others: u128 = (0..3)
                    .filter(|&k| k != i && in_a(k))
                    .map(|k| parts[k])
                    .sum();
                diamond_in += c2(parts[i]) * others;
            }
        }
        // diamonds with the non-edge at v: partner outside, the adjacent pair
        // split across two attached parts
        let mut cross: u128 = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if in_a(i) && in_a(j) {
                    cross += parts[i] * parts[j];
                }
            }
        }
        let diamond_out = out_sum * cross;
        attach.push(2 * c4 + diamond_in + diamond_out);
    }

    let mut s2_min_gap = i128::MAX;
    for a_star in 0..8usize {
        if (a_star as u32).count_ones() != 2 {
            continue;
        }
        for a in 0..8usize {
            if (a as u32).count_ones() == 2 {
                continue;
            }
            let gap = attach[a_star] as i128 - attach[a] as i128;
            s2_min_gap = s2_min_gap.min(gap);
        }
    }

    QStrictMargins {
        parts,
        n,
        base,
        inter_flip_losses: inter,
        intra_flip_losses: intra,
        attach_gains: attach,
        s2_min_gap,
    }
}
