//! Closed-form evaluators for the extremal values, bounds, and baseline
//! functions used throughout the crate.
//!
//! Every evaluator carries an exact path (128-bit integers or arbitrary
//! precision rationals) alongside the float view; floor expressions are never
//! evaluated in floating point. [`evaluate`] exposes the evaluators behind
//! stable string identifiers for the CLI.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::pattern::PatternGraph;
use crate::{Error, Result};

/// A named formula evaluation: exact value when the formula is exact, float
/// always.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaValue {
    pub name: String,
    /// Exact value as a decimal string of a rational (numerator/denominator)
    /// when available.
    pub exact: Option<String>,
    pub float: f64,
    /// Set for formulas whose statement carries a validity regime.
    pub in_regime: Option<bool>,
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut result = 1u128;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Falling factorial `(n)_k = n(n−1)···(n−k+1)`.
pub fn falling(n: u128, k: u128) -> u128 {
    let mut result = 1u128;
    for i in 0..k {
        if i > n {
            return 0;
        }
        result *= n - i;
    }
    result
}

fn big(n: u128) -> BigInt {
    BigInt::from_u128(n).unwrap()
}

fn ratio(n: u128, d: u128) -> BigRational {
    BigRational::new(big(n), big(d))
}

// ---------------------------------------------------------------------------
// Exact integer formulas
// ---------------------------------------------------------------------------

/// `⌊(n/2)·⌊(n−1)/2⌋·⌈(n−1)/2⌉⌋`: the maximum number of triangles carrying
/// both colours. Zero for `n < 3`.
pub fn goodman_max(n: u128) -> u128 {
    if n < 3 {
        return 0;
    }
    n * ((n - 1) / 2) * (n / 2) / 2
}

/// `½·⌊n²/4⌋·⌊(n−2)²/4⌋`: the maximum number of alternating 4-cycles, exact
/// for every `n`.
pub fn rbrb_max(n: u128) -> u128 {
    if n < 4 {
        return 0;
    }
    let a = n * n / 4;
    let b = (n - 2) * (n - 2) / 4;
    debug_assert_eq!(a * b % 2, 0);
    a * b / 2
}

/// `(1/2t)·(⌈n/2⌉)_{2t}·(⌊n/2⌋)_{2t}`: the maximum number of alternating
/// `4t`-cycles (for large `n`); zero when `n < 4t`.
pub fn alt_cycle_max(n: u128, t: u128) -> u128 {
    assert!(t >= 1);
    if n < 4 * t {
        return 0;
    }
    let prod = falling(n.div_ceil(2), 2 * t) * falling(n / 2, 2 * t);
    debug_assert_eq!(prod % (2 * t), 0);
    prod / (2 * t)
}

/// `3(a·C(n−a,3) + (n−a)·C(a,3))`: RRBB 4-cycles of the `(a, n−a)`-partitioned
/// graph.
pub fn rrbb_value(n: u128, a: u128) -> Result<u128> {
    if a > n {
        return Err(Error::InvalidArgument(format!(
            "part size {a} exceeds n = {n}"
        )));
    }
    Ok(3 * (a * binomial(n - a, 3) + (n - a) * binomial(a, 3)))
}

fn isqrt(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u128;
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    while x * x > v {
        x -= 1;
    }
    x
}

/// The argmax part sizes for [`rrbb_value`] among the two rounded candidates
/// `⌊½(n+√(3n−4))⌋` and `⌈½(n+√(3n−4))⌉`; both are returned on a tie. The
/// candidates are compared explicitly rather than trusting a closed-form
/// argmax.
pub fn rrbb_best_a(n: u128) -> Vec<u128> {
    if n < 2 {
        return vec![n];
    }
    let disc = 3 * n - 4;
    let x = isqrt(disc);
    // ⌊(n+s)/2⌋ with s = √disc equals ⌊(n+⌊s⌋)/2⌋
    let lo = (n + x) / 2;
    let exact = x * x == disc && (n + x).is_multiple_of(2);
    let hi = if exact { lo } else { lo + 1 };
    let mut cands: Vec<u128> = [lo.min(n), hi.min(n)].into_iter().collect();
    cands.dedup();
    let best = cands
        .iter()
        .map(|&a| rrbb_value(n, a).unwrap())
        .max()
        .unwrap();
    cands.retain(|&a| rrbb_value(n, a).unwrap() == best);
    cands
}

/// `Σ_{i∈[3]} C(nᵢ,2)·C(n−nᵢ,2)` with balanced tripartition sizes: the
/// number of all-red-4-cycle-plus-blue-chord copies of the Turán-red graph.
pub fn k112_tripartite_max(n: u128) -> u128 {
    let q = n / 3;
    let r = n % 3;
    let sizes = [q + u128::from(r > 0), q + u128::from(r > 1), q];
    sizes
        .iter()
        .map(|&s| binomial(s, 2) * binomial(n - s, 2))
        .sum()
}

// ---------------------------------------------------------------------------
// Walk and cycle bounds
// ---------------------------------------------------------------------------

/// `2n((n−1)/2)^t`: the alternating-walk maximum; attained exactly by
/// `(n−1)/2`-regular red graphs.
pub fn walk_bound(n: u128, t: u32) -> FormulaValue {
    let exact = ratio(2 * n, 1) * ratio(n.saturating_sub(1), 2).pow(t as i32);
    formula_from_rational("walk_bound", exact, None)
}

/// `n((n−1)/2)^t`: the alternating-path bound.
pub fn path_bound(n: u128, t: u32) -> FormulaValue {
    let exact = ratio(n, 1) * ratio(n.saturating_sub(1), 2).pow(t as i32);
    formula_from_rational("path_bound", exact, None)
}

/// `(1 − ε⁴/4)·2n((n−1)/2)^t`: walk bound for an `ε`-unbalanced graph.
pub fn unbalanced_walk_bound(n: u128, t: u32, epsilon: f64) -> Result<FormulaValue> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} outside [0, 1]"
        )));
    }
    let eps = BigRational::from_float(epsilon).unwrap();
    let factor = BigRational::one() - eps.pow(4) / ratio(4, 1);
    let exact = factor * ratio(2 * n, 1) * ratio(n.saturating_sub(1), 2).pow(t as i32);
    Ok(formula_from_rational("unbalanced_walk_bound", exact, None))
}

/// `t·maxHminus / copies_in_H`: copy bound transferred from a spanning
/// subpattern with `t` host-side extensions.
pub fn extension_bound(max_h_minus: u128, t: u128, copies_in_h: u128) -> Result<BigRational> {
    if copies_in_h == 0 {
        return Err(Error::InvalidArgument(
            "copies_in_h must be positive".into(),
        ));
    }
    Ok(ratio(t * max_h_minus, copies_in_h))
}

// ---------------------------------------------------------------------------
// Density profiles and random baselines
// ---------------------------------------------------------------------------

/// Crossover density `(1+√2)/4` above which the degree-regular branch of the
/// quadratic profile wins.
pub fn profile_crossover() -> f64 {
    (1.0 + std::f64::consts::SQRT_2) / 4.0
}

/// `½σ³(1−σ)`: leading RRRB density among hosts of red density `σ`.
/// `in_regime` records whether `σ` lies in the proven range
/// `σ ≥ (1+√2)/4`; the expression itself is evaluable everywhere.
pub fn rrrb_profile(sigma: f64) -> Result<FormulaValue> {
    check_unit(sigma)?;
    let s = BigRational::from_float(sigma).unwrap();
    let exact = s.pow(3) * (BigRational::one() - s.clone()) / ratio(2, 1);
    Ok(formula_from_rational(
        "rrrb_profile",
        exact,
        Some(sigma >= profile_crossover()),
    ))
}

/// `(27/512)·n⁴`: the leading term of the global RRRB maximum.
pub fn rrrb_leading(n: u128) -> FormulaValue {
    formula_from_rational("rrrb_leading", ratio(27, 512) * ratio(n, 1).pow(4), None)
}

/// `12σ³(1−σ)`: the random-baseline density of the quantum pattern whose
/// induced count matches RRRB counts over completed hosts.
pub fn rand_q(sigma: f64) -> Result<FormulaValue> {
    check_unit(sigma)?;
    let s = BigRational::from_float(sigma).unwrap();
    let exact = ratio(12, 1) * s.pow(3) * (BigRational::one() - s);
    Ok(formula_from_rational("rand_q", exact, None))
}

/// `(v!/|Aut F|)·σ^e·(1−σ)^(C(v,2)−e)`: expected induced density of an
/// uncoloured pattern in the binomial random graph.
pub fn rand_density(vertices: u128, edges: u128, aut: u128, sigma: f64) -> Result<FormulaValue> {
    check_unit(sigma)?;
    if aut == 0 {
        return Err(Error::InvalidArgument(
            "automorphism count must be positive".into(),
        ));
    }
    let non_edges = binomial(vertices, 2) - edges;
    let s = BigRational::from_float(sigma).unwrap();
    let exact = ratio(falling(vertices, vertices), aut)
        * s.pow(edges as i32)
        * (BigRational::one() - s).pow(non_edges as i32);
    Ok(formula_from_rational("rand_density", exact, None))
}

fn check_unit(sigma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::InvalidArgument(format!(
            "sigma {sigma} outside [0, 1]"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Partitioned-host transfer count
// ---------------------------------------------------------------------------

/// Copies of a spanning connected subpattern `h` of the `(a0, b0)`-partitioned
/// base graph inside the `(s, t)`-partitioned graph with the same colour
/// pattern: `C(s,a0)C(t,b0)·base`, symmetrised over the two part roles when
/// `a0 ≠ b0`.
pub fn partitioned_pattern_count(
    h: &PatternGraph,
    a0: usize,
    b0: usize,
    s: u128,
    t: u128,
) -> Result<u128> {
    if h.h() != a0 + b0 {
        return Err(Error::InvalidArgument(format!(
            "pattern on {} vertices is not spanning for parts ({a0}, {b0})",
            h.h()
        )));
    }
    if !h.is_connected() {
        return Err(Error::InvalidArgument("pattern must be connected".into()));
    }
    if s.min(t) < a0.max(b0) as u128 {
        return Err(Error::InvalidArgument(format!(
            "need min(s,t) ≥ max(a0,b0): ({s}, {t}) vs ({a0}, {b0})"
        )));
    }
    let base_graph = crate::graph::construct_partitioned(a0 + b0, a0, crate::graph::Colour::Red)?;
    let base = crate::counting::count_copies(h, &base_graph);
    if base == 0 {
        return Err(Error::InvalidArgument(
            "pattern is not a subgraph of the partitioned base graph".into(),
        ));
    }
    let ways = if a0 == b0 {
        binomial(s, a0 as u128) * binomial(t, b0 as u128)
    } else {
        binomial(s, a0 as u128) * binomial(t, b0 as u128)
            + binomial(s, b0 as u128) * binomial(t, a0 as u128)
    };
    Ok(ways * base)
}

// ---------------------------------------------------------------------------
// Summary-table densities
// ---------------------------------------------------------------------------

/// Normalised maximum density `lim max(H,n)/n^h` for the named rows of the
/// results summary. Parametric names: `alt_walk_<t>`, `alt_path_<2t>`,
/// `alt_cycle_<4t>`.
pub fn table1_density(name: &str) -> Result<BigRational> {
    if let Some(t) = name.strip_prefix("alt_walk_") {
        let t: u32 = t.parse().map_err(|_| bad_name(name))?;
        if t < 1 {
            return Err(bad_name(name));
        }
        return Ok(ratio(1, 1 << (t - 1)));
    }
    if let Some(l) = name.strip_prefix("alt_path_") {
        let l: u32 = l.parse().map_err(|_| bad_name(name))?;
        if l < 2 || !l.is_multiple_of(2) {
            return Err(bad_name(name));
        }
        return Ok(ratio(1, 1 << (l / 2)));
    }
    if let Some(l) = name.strip_prefix("alt_cycle_") {
        let l: u32 = l.parse().map_err(|_| bad_name(name))?;
        if l < 4 || !l.is_multiple_of(4) {
            return Err(bad_name(name));
        }
        let t = (l / 4) as u128;
        return Ok(ratio(1, t * (1u128 << (4 * t + 1))));
    }
    match name {
        "rbrb_c4" => Ok(ratio(1, 32)),
        "rrbb_c4" => Ok(ratio(1, 96)),
        "rrrb_c4" | "bbbr_c4" => Ok(ratio(27, 512)),
        "ccext" => Ok(ratio(1, 16)),
        "rrbbext_a" => Ok(ratio(1, 96)),
        "rrbbext_b" => Ok(ratio(1, 96)),
        "ccextt" => Ok(ratio(1, 27)),
        _ => Err(bad_name(name)),
    }
}

fn bad_name(name: &str) -> Error {
    Error::InvalidArgument(format!("unknown summary-table row {name:?}"))
}

// ---------------------------------------------------------------------------
// String registry for the CLI
// ---------------------------------------------------------------------------

/// Parameters a named formula may consume.
#[derive(Clone, Debug, Default)]
pub struct FormulaParams {
    pub n: Option<u128>,
    pub t: Option<u32>,
    pub a: Option<u128>,
    pub sigma: Option<f64>,
    pub epsilon: Option<f64>,
    pub row: Option<String>,
}

fn need<T: Copy>(v: Option<T>, what: &str, formula: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("formula {formula} needs --{what}")))
}

/// Evaluates a formula by its stable identifier.
pub fn evaluate(name: &str, p: &FormulaParams) -> Result<FormulaValue> {
    match name {
        "goodman_max" => Ok(integer_value(name, goodman_max(need(p.n, "n", name)?))),
        "rbrb_max" => Ok(integer_value(name, rbrb_max(need(p.n, "n", name)?))),
        "alt_cycle_max" => Ok(integer_value(
            name,
            alt_cycle_max(need(p.n, "n", name)?, need(p.t, "t", name)? as u128),
        )),
        "rrbb_value" => Ok(integer_value(
            name,
            rrbb_value(need(p.n, "n", name)?, need(p.a, "a", name)?)?,
        )),
        "rrbb_best_a" => {
            let best = rrbb_best_a(need(p.n, "n", name)?);
            Ok(FormulaValue {
                name: name.into(),
                exact: Some(
                    best.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ),
                float: best[0] as f64,
                in_regime: None,
            })
        }
        "k112_tripartite_max" => Ok(integer_value(
            name,
            k112_tripartite_max(need(p.n, "n", name)?),
        )),
        "walk_bound" => Ok(walk_bound(need(p.n, "n", name)?, need(p.t, "t", name)?)),
        "path_bound" => Ok(path_bound(need(p.n, "n", name)?, need(p.t, "t", name)?)),
        "unbalanced_walk_bound" => unbalanced_walk_bound(
            need(p.n, "n", name)?,
            need(p.t, "t", name)?,
            need(p.epsilon, "epsilon", name)?,
        ),
        "rrrb_profile" => rrrb_profile(need(p.sigma, "sigma", name)?),
        "rrrb_leading" => Ok(rrrb_leading(need(p.n, "n", name)?)),
        "rand_q" => rand_q(need(p.sigma, "sigma", name)?),
        "profile_crossover" => Ok(FormulaValue {
            name: name.into(),
            exact: None,
            float: profile_crossover(),
            in_regime: None,
        }),
        "table1_density" => {
            let row = p
                .row
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("table1_density needs --row".into()))?;
            Ok(formula_from_rational(
                "table1_density",
                table1_density(row)?,
                None,
            ))
        }
        _ => Err(Error::InvalidArgument(format!("unknown formula {name:?}"))),
    }
}

pub fn formula_names() -> &'static [&'static str] {
    &[
        "goodman_max",
        "rbrb_max",
        "alt_cycle_max",
        "rrbb_value",
        "rrbb_best_a",
        "k112_tripartite_max",
        "walk_bound",
        "path_bound",
        "unbalanced_walk_bound",
        "rrrb_profile",
        "rrrb_leading",
        "rand_q",
        "profile_crossover",
        "table1_density",
    ]
}

fn integer_value(name: &str, v: u128) -> FormulaValue {
    FormulaValue {
        name: name.into(),
        exact: Some(v.to_string()),
        float: v as f64,
        in_regime: None,
    }
}

fn formula_from_rational(name: &str, exact: BigRational, in_regime: Option<bool>) -> FormulaValue {
    let float = rational_to_f64(&exact);
    let exact_str = if exact.denom().is_one() {
        exact.numer().to_string()
    } else {
        format!("{}/{}", exact.numer(), exact.denom())
    };
    FormulaValue {
        name: name.into(),
        exact: Some(exact_str),
        float,
        in_regime,
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or_else(|| {
        if r.numer().is_negative() {
            f64::MIN
        } else {
            f64::MAX
        }
    }) / r.denom().to_f64().unwrap_or(f64::MAX)
}
