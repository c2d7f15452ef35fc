//! The acceptance battery: every exactness, equivalence, and stability
//! criterion the crate promises, runnable as one suite.
//!
//! Each criterion returns a [`CriterionResult`] with a pass flag and a
//! human-readable detail line. The battery is used both by the `verify` CLI
//! subcommand and by the `acceptance` integration test; all tolerances are
//! pinned here, in code.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigInt, FromPrimitive};

use crate::counting::{
    count_alternating_walks_brute, count_copies, count_rrbb_codegree, count_rrrb_codegree,
    walk_profile, SpecialisedCounter,
};
use crate::formulas;
use crate::graph::{
    assess_balance, construct_partitioned, construct_quasirandom, construct_turan_red, Colour,
    ColouredCompleteGraph,
};
use crate::pattern::{self, PatternGraph};
use crate::relaxation::{
    self, equalize, g_sigma, is_canonical_grid, optimize_lambda_q, q_strict_margins,
    vector_from_graph_rational, DegreeCodegreeVector,
};
use crate::rng::SeededRng;
use crate::search::{brute_force_max, enumerate_red_classes, graph_from_class, red_class_of};

#[derive(Clone, Debug, serde::Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: &[(u32, &str)] = &[
    (1, "rbrb_exactness"),
    (2, "goodman_exactness"),
    (3, "walk_equality"),
    (4, "oracle_equivalence"),
    (5, "ccext_exactness"),
    (6, "rrrb_asymptotic"),
    (7, "equalization_invariants"),
    (8, "tradeoff_gap"),
    (9, "canonical_score_pin"),
    (10, "lambda_q_strictness"),
    (11, "property_suites"),
    (12, "construction_exactness"),
];

/// Runs the whole battery in order.
pub fn run_all() -> Vec<CriterionResult> {
    let mut battery = Battery::default();
    CRITERIA.iter().map(|&(id, _)| battery.run(id)).collect()
}

/// Runs one criterion by id.
pub fn run_criterion(id: u32) -> Option<CriterionResult> {
    if CRITERIA.iter().all(|&(i, _)| i != id) {
        return None;
    }
    Some(Battery::default().run(id))
}

/// Shared state: isomorphism classes and brute-force maxima are computed once
/// and reused across criteria.
#[derive(Default)]
struct Battery {
    classes: BTreeMap<usize, Vec<u64>>,
    max_cache: BTreeMap<(String, usize), u128>,
}

impl Battery {
    fn classes(&mut self, n: usize) -> &[u64] {
        self.classes
            .entry(n)
            .or_insert_with(|| enumerate_red_classes(n).expect("n within cap"))
    }

    /// Exact `max(H, n)` using the shared class list and the fastest
    /// applicable counter.
    fn brute_max(&mut self, h: &PatternGraph, n: usize) -> u128 {
        let key = (h.to_string(), n);
        if let Some(&v) = self.max_cache.get(&key) {
            return v;
        }
        let counter = SpecialisedCounter::recognise(h);
        let v = self
            .classes(n)
            .iter()
            .map(|&bits| {
                let g = graph_from_class(bits, n);
                match counter {
                    Some((c, false)) => c.count(&g),
                    Some((c, true)) => c.count(&g.swap_colours()),
                    None => count_copies(h, &g),
                }
            })
            .max()
            .unwrap_or(0);
        self.max_cache.insert(key, v);
        v
    }

    fn run(&mut self, id: u32) -> CriterionResult {
        let name = CRITERIA.iter().find(|&&(i, _)| i == id).unwrap().1;
        let (passed, detail) = match id {
            1 => self.rbrb_exactness(),
            2 => self.goodman_exactness(),
            3 => walk_equality(),
            4 => oracle_equivalence(),
            5 => self.ccext_exactness(),
            6 => rrrb_asymptotic(),
            7 => equalization_invariants(),
            8 => tradeoff_gap(),
            9 => canonical_score_pin(),
            10 => lambda_q_strictness(),
            11 => self.property_suites(),
            12 => self.construction_exactness(),
            _ => unreachable!(),
        };
        CriterionResult {
            id,
            name,
            passed,
            detail,
        }
    }

    /// 1. Exact alternating-4-cycle maxima for 4 ≤ n ≤ 8, with the extremal
    ///    set being exactly the two balanced partitioned graphs.
    fn rbrb_exactness(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 4..=8usize {
            let r = brute_force_max(&pattern::rbrb_c4(), n).expect("within cap");
            let expect = formulas::rbrb_max(n as u128);
            if r.max_value != expect {
                ok = false;
                notes.push(format!("n={n}: value {} != {expect}", r.max_value));
                continue;
            }
            let mut found: Vec<u64> = r.extremal_graphs().iter().map(red_class_of).collect();
            found.sort_unstable();
            let mut want: Vec<u64> = [Colour::Red, Colour::Blue]
                .into_iter()
                .map(|c| red_class_of(&construct_partitioned(n, n / 2, c).unwrap()))
                .collect();
            want.sort_unstable();
            if found != want {
                ok = false;
                notes.push(format!(
                    "n={n}: extremal set is not the balanced bipartite pair"
                ));
            } else {
                notes.push(format!("n={n}: max {expect}, extremal set exact"));
            }
        }
        (ok, notes.join("; "))
    }

    /// 2. The Goodman value: half the exact 2-path maximum equals
    ///    `⌊(n/2)⌊(n−1)/2⌋⌈(n−1)/2⌉⌋` for 3 ≤ n ≤ 8 (a 2-path copy count is
    ///    twice the number of bichromatic triangles, so the maxima pair up with
    ///    the factor 2).
    fn goodman_exactness(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 3..=8usize {
            let max_path = self.brute_max(&pattern::rbr_path(), n);
            let expect = formulas::goodman_max(n as u128);
            if max_path != 2 * expect {
                ok = false;
                notes.push(format!("n={n}: path max {max_path} != 2·{expect}"));
            } else {
                notes.push(format!("n={n}: ½·{max_path} = {expect}"));
            }
        }
        (ok, notes.join("; "))
    }

    /// 5. Exact chorded-alternating-4-cycle maxima for 4 ≤ n ≤ 7, agreeing
    ///    with the extension bound from the 4-cycle value.
    fn ccext_exactness(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 4..=7usize {
            let max = self.brute_max(&pattern::ccext(), n);
            let nn = n as u128;
            let expect = (nn * nn / 4) * ((nn - 2) * (nn - 2) / 4);
            let bound = formulas::extension_bound(formulas::rbrb_max(nn), 2, 1).unwrap();
            let bound_int = BigRational::from_integer(BigInt::from_u128(expect).unwrap());
            if max != expect || bound != bound_int {
                ok = false;
                notes.push(format!(
                    "n={n}: max {max}, expected {expect}, bound {bound}"
                ));
            } else {
                notes.push(format!("n={n}: {max}"));
            }
        }
        (ok, notes.join("; "))
    }

    /// 11. Property suites: auxiliary inequalities, colour-swap symmetry,
    ///     order monotonicity, and the unbalanced walk bound.
    fn property_suites(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();

        // 10^4 seeded trials of each auxiliary inequality
        let rep = relaxation::small_inequality_checks(2024, 10_000);
        if rep.product_violations != 0 || rep.cubic_violations != 0 {
            ok = false;
            notes.push(format!(
                "inequality violations: product {}, cubic {}",
                rep.product_violations, rep.cubic_violations
            ));
        } else {
            notes.push(format!(
                "10^4 trials each: 0 violations (worst slack {:.3e} / {:.3e})",
                rep.product_worst_slack, rep.cubic_worst_slack
            ));
        }

        // colour-swap symmetry of maxima at n ≤ 7
        let mut swap_ok = true;
        for (pname, h) in pattern::named_four_vertex_patterns() {
            for n in 4..=7usize {
                let a = self.brute_max(&h, n);
                let b = self.brute_max(&h.swap_colours(), n);
                if a != b {
                    swap_ok = false;
                    ok = false;
                    notes.push(format!("swap asymmetry: {pname}, n={n}: {a} vs {b}"));
                }
            }
        }
        if swap_ok {
            notes.push("swap symmetry holds for all 7 named patterns, n ≤ 7".into());
        }

        // (n−h)·max(H,n) ≤ n·max(H,n−1) for the four-vertex patterns
        let mut mono_ok = true;
        for (pname, h) in pattern::named_four_vertex_patterns() {
            for n in 5..=8usize {
                let big = self.brute_max(&h, n);
                let small = self.brute_max(&h, n - 1);
                if (n as u128 - 4) * big > n as u128 * small {
                    mono_ok = false;
                    ok = false;
                    notes.push(format!("monotonicity fails: {pname}, n={n}"));
                }
            }
        }
        if mono_ok {
            notes.push("density monotonicity holds for n = 5..8".into());
        }

        // walk bound under imbalance on 50 skewed constructions
        let mut stab_ok = true;
        let mut checked = 0u64;
        let mut rng = SeededRng::new(99);
        while checked < 50 {
            let n = 8 + (rng.below(8) as usize); // 8..=15
            let g = match checked % 4 {
                0 => construct_partitioned(n, n / 4, Colour::Red).unwrap(),
                1 => construct_quasirandom(n, 0.15 + 0.1 * (checked % 3) as f64, 7000 + checked)
                    .unwrap(),
                2 => construct_quasirandom(n, 0.8, 8000 + checked).unwrap(),
                _ => construct_partitioned(n, 1, Colour::Blue).unwrap(),
            };
            let eps = assess_balance(&g).epsilon;
            let profile = walk_profile(&g, 4).unwrap();
            for t in 2..=4usize {
                let cap = (1.0 - eps.powi(4) / 4.0)
                    * 2.0
                    * n as f64
                    * ((n as f64 - 1.0) / 2.0).powi(t as i32);
                if profile.totals[t] as f64 > cap * (1.0 + 1e-12) {
                    stab_ok = false;
                    ok = false;
                    notes.push(format!(
                        "stability breach: n={n}, t={t}, W={} > {cap:.3}",
                        profile.totals[t]
                    ));
                }
            }
            checked += 1;
        }
        if stab_ok {
            notes.push("walk stability bound holds on 50 unbalanced constructions".into());
        }

        (ok, notes.join("; "))
    }

    /// 12. Construction-vs-formula exactness at n ≤ 60, and brute force at
    ///     least the construction at n ≤ 8 (strict excesses reported, not
    ///     failed).
    fn construction_exactness(&mut self) -> (bool, String) {
        let mut ok = true;
        let mut notes = Vec::new();

        for n in 4..=60usize {
            let nn = n as u128;
            for a in [formulas::rrbb_best_a(nn)[0], nn / 2] {
                let g = construct_partitioned(n, a as usize, Colour::Red).unwrap();
                let direct = count_rrbb_codegree(&g);
                let formula = formulas::rrbb_value(nn, a).unwrap();
                if direct != formula {
                    ok = false;
                    notes.push(format!(
                        "rrbb mismatch: n={n}, a={a}: {direct} != {formula}"
                    ));
                }
            }
            let t3 = construct_turan_red(n, 3).unwrap();
            let direct = crate::counting::count_ccextt_codegree(&t3);
            let formula = formulas::k112_tripartite_max(nn);
            if direct != formula {
                ok = false;
                notes.push(format!("tripartite mismatch: n={n}: {direct} != {formula}"));
            }
        }
        if ok {
            notes.push("construction counts match formulas exactly for n = 4..60".into());
        }

        // brute force vs construction at n ≤ 8: never below; excess is a
        // finding, not a failure (the sharp statements hold for large n)
        for n in 4..=8usize {
            let nn = n as u128;
            let brute = self.brute_max(&pattern::rrbb_c4(), n);
            let constructed = (0..=nn)
                .map(|a| formulas::rrbb_value(nn, a).unwrap())
                .max()
                .unwrap();
            if brute < constructed {
                ok = false;
                notes.push(format!(
                    "rrbb brute {brute} below construction {constructed} at n={n}"
                ));
            } else if brute > constructed {
                notes.push(format!(
                    "finding: rrbb brute {brute} exceeds best bipartite {constructed} at n={n}"
                ));
            }

            let brute = self.brute_max(&pattern::ccextt(), n);
            let constructed = formulas::k112_tripartite_max(nn);
            if brute < constructed {
                ok = false;
                notes.push(format!(
                    "tripartite brute {brute} below construction {constructed} at n={n}"
                ));
            } else if brute > constructed {
                notes.push(format!(
                    "finding: tripartite brute {brute} exceeds Turán value {constructed} at n={n}"
                ));
            }

            let brute = self.brute_max(&pattern::rrrb_c4(), n);
            let sample = count_rrrb_codegree(&construct_quasirandom(n, 0.75, 1).unwrap());
            if brute < sample {
                ok = false;
                notes.push(format!(
                    "rrrb brute {brute} below sampled host {sample} at n={n}"
                ));
            }
        }
        (ok, notes.join("; "))
    }
}

/// 3. The walk DP reproduces `W[t] = 10·2^t` on the red 5-cycle for every
///    `t ≤ 20` (exercises the 128-bit path).
fn walk_equality() -> (bool, String) {
    let c5 = ColouredCompleteGraph::from_red_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        .unwrap();
    let profile = walk_profile(&c5, 20).expect("no overflow at n = 5");
    for t in 1..=20usize {
        let expect = 10u128 << t;
        if profile.totals[t] != expect {
            return (false, format!("t={t}: W={} != {expect}", profile.totals[t]));
        }
    }
    (true, "W[t] = 10·2^t exactly for t = 1..20".into())
}

/// 4. Every specialised counter agrees with the generic embedding counter on
///    500 seeded graphs with 4 ≤ n ≤ 12. Zero tolerance.
fn oracle_equivalence() -> (bool, String) {
    let sigmas = [0.1, 0.25, 0.5, 0.75, 0.9];
    let alt6 = pattern::alternating_cycle(6).unwrap();
    let mut graphs = 0u32;
    for seed in 0..500u64 {
        let n = 4 + (seed % 9) as usize;
        let sigma = sigmas[(seed / 9) as usize % sigmas.len()];
        let g = construct_quasirandom(n, sigma, 31_000 + seed).unwrap();
        graphs += 1;
        let checks: [(&str, u128, u128); 4] = [
            (
                "rbrb",
                crate::counting::count_rbrb_antipodal(&g),
                count_copies(&pattern::rbrb_c4(), &g),
            ),
            (
                "rrbb",
                count_rrbb_codegree(&g),
                count_copies(&pattern::rrbb_c4(), &g),
            ),
            (
                "rrrb",
                count_rrrb_codegree(&g),
                count_copies(&pattern::rrrb_c4(), &g),
            ),
            (
                "alt4",
                crate::counting::count_alternating_cycles(&g, 4).unwrap(),
                count_copies(&pattern::rbrb_c4(), &g),
            ),
        ];
        for (what, fast, oracle) in checks {
            if fast != oracle {
                return (
                    false,
                    format!("{what} mismatch at n={n}, seed={seed}: {fast} vs {oracle}"),
                );
            }
        }
        if n >= 6 {
            let fast = crate::counting::count_alternating_cycles(&g, 6).unwrap();
            let oracle = count_copies(&alt6, &g);
            if fast != oracle {
                return (
                    false,
                    format!("alt6 mismatch at n={n}, seed={seed}: {fast} vs {oracle}"),
                );
            }
        }
        if n <= 8 {
            let profile = walk_profile(&g, 4).unwrap();
            for t in 1..=4usize {
                let brute = count_alternating_walks_brute(&g, t);
                if profile.totals[t] != brute {
                    return (
                        false,
                        format!(
                            "walk mismatch at n={n}, seed={seed}, t={t}: {} vs {brute}",
                            profile.totals[t]
                        ),
                    );
                }
            }
        }
    }
    (
        true,
        format!("{graphs} seeded graphs, all specialised counters exact"),
    )
}

/// 6. Codegree RRRB counts on the seeded quasirandom host at n = 400 sit on
///    the density profile.
fn rrrb_asymptotic() -> (bool, String) {
    let n = 400usize;
    let n4 = (n as f64).powi(4);
    let g = construct_quasirandom(n, 0.75, 1).unwrap();
    let peak_ratio = count_rrrb_codegree(&g) as f64 / (27.0 / 512.0 * n4);
    if !(0.95..=1.05).contains(&peak_ratio) {
        return (
            false,
            format!("peak ratio {peak_ratio:.4} outside [0.95, 1.05]"),
        );
    }
    let mut notes = vec![format!("peak ratio {peak_ratio:.4}")];
    for sigma in [0.65, 0.75, 0.90] {
        let g = construct_quasirandom(n, sigma, 1).unwrap();
        let target = 0.5 * sigma.powi(3) * (1.0 - sigma) * n4;
        let ratio = count_rrrb_codegree(&g) as f64 / target;
        if !(0.93..=1.07).contains(&ratio) {
            return (
                false,
                format!("profile ratio {ratio:.4} at sigma {sigma} outside [0.93, 1.07]"),
            );
        }
        notes.push(format!("σ={sigma}: ratio {ratio:.4}"));
    }
    (true, notes.join(", "))
}

/// 7. Equalisation traces on 50 seeded vectors: Σ drops by exactly 8γ/5 per
///    step (rational arithmetic), f gains at least γ²/25n², and the iteration
///    terminates.
fn equalization_invariants() -> (bool, String) {
    let mut rng = SeededRng::new(4040);
    let mut total_steps = 0usize;
    for trial in 0..50u64 {
        let (vec, gamma) = if trial % 2 == 0 {
            // graph-derived vector
            let n = 6 + (trial % 7) as usize;
            let g = construct_quasirandom(n, 0.3 + 0.1 * (trial % 5) as f64, 600 + trial).unwrap();
            (
                vector_from_graph_rational(&g),
                BigRational::new(BigInt::from(1), BigInt::from(4)),
            )
        } else {
            // synthetic rational vector, nudged onto the feasible set
            let n = 5 + (trial % 8) as usize;
            let d: Vec<BigRational> = (0..n)
                .map(|_| BigRational::new(BigInt::from(rng.below(17) as i64), BigInt::from(16)))
                .collect();
            let pairs = n * (n - 1) / 2;
            let mut z: Vec<BigRational> = (0..pairs)
                .map(|_| BigRational::new(BigInt::from(rng.below(33) as i64), BigInt::from(32)))
                .collect();
            let v0 = DegreeCodegreeVector::new(d.clone(), z.clone()).unwrap();
            let resid = v0.p3_residual();
            let last = z.len() - 1;
            z[last] = z[last].clone() - resid;
            (
                DegreeCodegreeVector::new(d, z).unwrap(),
                BigRational::new(BigInt::from(1), BigInt::from(10)),
            )
        };
        let (trace, fin) = equalize(&vec, &gamma).unwrap();
        let drop = BigRational::new(BigInt::from(8), BigInt::from(5)) * gamma.clone();
        let floor = gamma.clone() * gamma.clone()
            / BigRational::from_integer(BigInt::from(25 * (vec.n * vec.n) as i64));
        for w in trace.steps.windows(2) {
            if w[0].0.clone() - &w[1].0 != drop {
                return (false, format!("trial {trial}: Σ drop not exactly 8γ/5"));
            }
            if w[1].1.clone() - &w[0].1 < floor {
                return (false, format!("trial {trial}: f gain below γ²/25n²"));
            }
        }
        if fin.p3_residual() != vec.p3_residual() {
            return (
                false,
                format!("trial {trial}: feasibility residual changed"),
            );
        }
        total_steps += trace.steps.len() - 1;
    }
    (true, format!("50 traces exact, {total_steps} steps total"))
}

/// 8. The pair-function tradeoff gap is nonnegative on a 10⁶-point graphical
///    grid, and the boundary-regime quadratic bound holds on its τ-grid.
fn tradeoff_gap() -> (bool, String) {
    let mut worst = f64::INFINITY;
    for pi in 0..100 {
        let p = 0.05 + 0.9 * pi as f64 / 99.0;
        for qi in 0..100 {
            let q = 0.05 + 0.9 * qi as f64 / 99.0;
            let lo = (p + q - 1.0).max(0.0);
            let hi = p.min(q);
            for ri in 0..100 {
                let r = lo + (hi - lo) * ri as f64 / 99.0;
                let gap = relaxation::rrbb_pair_functions(p, q, r)
                    .gap
                    .expect("graphical");
                worst = worst.min(gap);
            }
        }
    }
    if worst < -1e-12 {
        return (false, format!("tradeoff gap {worst:.3e} below -1e-12"));
    }
    for sigma in [0.61f64, 0.7, 0.8, 0.9, 1.0] {
        let mut tau = sigma * sigma;
        while tau <= sigma * sigma + 1.0 {
            let bound = sigma.powi(3) * (1.0 - sigma) - 0.5 * (tau - sigma * sigma).powi(2);
            if g_sigma(sigma, tau) > bound + 1e-12 {
                return (
                    false,
                    format!("quadratic bound breached at σ={sigma}, τ={tau}"),
                );
            }
            tau += 1e-3;
        }
    }
    (
        true,
        format!("10^6-point grid min gap {worst:.3e}; boundary bound holds"),
    )
}

/// 9. The pinned canonical-score value and the canonical verdict of the
///    RRBB pattern.
fn canonical_score_pin() -> (bool, String) {
    let h = PatternGraph::new(
        5,
        &[
            (0, 2, Colour::Red),
            (0, 3, Colour::Red),
            (0, 4, Colour::Red),
            (1, 2, Colour::Red),
            (1, 3, Colour::Red),
            (1, 4, Colour::Red),
            (3, 4, Colour::Blue),
        ],
    )
    .unwrap();
    let score = relaxation::canonical_score(&h, 0.99, 0.01);
    if (score - 5.8806).abs() > 1e-9 {
        return (false, format!("score {score} not within 1e-9 of 5.8806"));
    }
    let report = is_canonical_grid(&pattern::rrbb_c4(), 0.01, 0.005);
    if !report.canonical {
        return (
            false,
            format!("RRBB grid verdict false (max {})", report.max_score),
        );
    }
    (
        true,
        format!("score {score:.10}; RRBB canonical on the grid"),
    )
}

/// 10. The profile optimiser lands on (⅓,⅓,⅓) with value 4/27, and the
///     balanced tripartite strictness margins sit at their constants with all
///     attachment gaps positive.
fn lambda_q_strictness() -> (bool, String) {
    let (x, v) = optimize_lambda_q(6, 12);
    if (v - 4.0 / 27.0).abs() > 1e-9 {
        return (false, format!("optimum {v} not within 1e-9 of 4/27"));
    }
    for (i, xi) in x.iter().take(3).enumerate() {
        if (xi - 1.0 / 3.0).abs() > 1e-6 {
            return (
                false,
                format!("coordinate {i} = {xi} not within 1e-6 of 1/3"),
            );
        }
    }
    if x.len() > 3 && x[3] > 1e-6 {
        return (false, "more than three active parts".into());
    }
    let m = q_strict_margins(20, 20, 20);
    let total = 60.0f64;
    let inter = m.inter_flip_losses[0].1 as f64 / (total * total);
    let intra = m.intra_flip_losses[0].1 as f64 / (total * total);
    if (inter / (7.0 / 18.0) - 1.0).abs() > 0.10 {
        return (
            false,
            format!("inter-part flip loss ratio {inter:.4} off 7/18 by >10%"),
        );
    }
    if (intra / (2.0 / 9.0) - 1.0).abs() > 0.10 {
        return (
            false,
            format!("intra-part flip loss ratio {intra:.4} off 2/9 by >10%"),
        );
    }
    if m.s2_min_gap <= 0 {
        return (
            false,
            format!("attachment gap {} not positive", m.s2_min_gap),
        );
    }
    (
        true,
        format!(
            "λ* = {v:.12}; flip losses {inter:.4}/{intra:.4}; min attachment gap {}",
            m.s2_min_gap
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_table_is_consistent() {
        assert_eq!(CRITERIA.len(), 12);
        assert!(run_criterion(0).is_none());
        let r = run_criterion(3).unwrap();
        assert_eq!(r.name, "walk_equality");
        assert!(r.passed, "{}", r.detail);
    }
}
