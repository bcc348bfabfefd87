//! Self-test harness: oracle equivalences and comparisons with the shipped
//! reference tables.

use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::golden;
use crate::algebra::{int, Rational, Series};
use crate::flows::{
    enumerate_balanced, euler_circuits_best, euler_tour_bruteforce, realize_digraph, EULER_BRUTEFORCE_ARC_LIMIT,
};
use crate::genus::{g0_series, g1_series, gg_series, gg_series_oracle, graph_contribution};
use crate::graphs::{
    enumerate_gamma_g_bounded, enumerate_gamma_r, enumerate_min_degree3, spanning_tree_reps, GraphEntry, Multigraph,
};
use crate::momentpolys::{interpolate_polynomial, moment_polynomial, pairing_oracle_gue, trace_word_oracle, weighted_tour_sum};
use crate::moments::{complex_moment_bruteforce, nonloop_complex_moment};
use crate::treeseries::tree_series;
use crate::wright::{genus1_scheme_series, tree_function, w_series, wg_from_bivariate, BivariateAutSum};
use crate::MonomialPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Quick => "quick",
            Level::Full => "full",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub detail: String,
}

impl CheckResult {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "seconds": format!("{:.3}", self.seconds),
            "detail": self.detail,
        })
    }
}

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub full_only: bool,
    run: fn() -> Outcome,
}

pub fn checks() -> Vec<Check> {
    let c = |name, full_only, run| Check { name, full_only, run };
    vec![
        c("moment_dp_vs_bruteforce", false, moment_dp as fn() -> Outcome),
        c("moment_mod4_vanishing", false, mod4_vanishing),
        c("best_vs_bruteforce", false, best_vs_bruteforce),
        c("moment_polynomials_m1", false, || polynomials(1, &[1, 2, 3, 4])),
        c("moment_polynomials_m2", false, || polynomials(2, &[2, 3])),
        c("oracle_triangle_small", false, || oracle_triangle(&[(1, 1), (1, 2), (1, 3), (2, 1)])),
        c("tree_series", false, trees),
        c("genus0_table", false, || genus_table(0, 6, 10)),
        c("genus1_table", false, || genus_table(1, 4, 5)),
        c("genus2_m2_through_x4", false, || genus2(2, 4)),
        c("per_graph_contributions", false, per_graph),
        c("min_degree3_counts", false, || min_degree3_counts(&[2, 3])),
        c("k4_counts", false, k4_counts),
        c("wright_series", false, wright),
        c("genus1_scheme_series", false, schemes),
        c("moment_polynomials_m2_r4", true, || polynomials(2, &[4])),
        c("oracle_triangle_m2_r2", true, || oracle_triangle(&[(2, 2)])),
        c("genus2_m1_through_x7", true, || genus2(1, 7)),
        c("genus2_m2_through_x5", true, || genus2(2, 5)),
        c("genus2_m3_leading", true, || genus2(3, 2)),
        c("k4_contribution", true, k4_contribution),
        c("genus_oracle_equivalence", true, genus_oracle),
        c("min_degree3_count_g4", true, || min_degree3_counts(&[4])),
    ]
}

pub fn run(level: Level) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|c| level == Level::Full || !c.full_only)
        .map(|c| {
            let start = Instant::now();
            let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
            let seconds = start.elapsed().as_secs_f64();
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name: c.name, passed, seconds, detail }
        })
        .collect()
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: &T, want: &T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn prefix_eq(what: &str, got: &Series, want: &Series, through: usize) -> std::result::Result<(), String> {
    for k in 0..=through {
        let (g, w) = (got.coeff(k), want.coeff(k));
        match (g, w) {
            (Some(g), Some(w)) if g == w => {}
            _ => {
                return Err(format!(
                    "{what}: x^{k} coefficient {} differs from {}",
                    g.map(|c| c.to_string()).unwrap_or_else(|| "missing".into()),
                    w.map(|c| c.to_string()).unwrap_or_else(|| "missing".into()),
                ))
            }
        }
    }
    Ok(())
}

fn moment_dp() -> Outcome {
    let mut n = 0;
    for m in 1..=3 {
        for a in 0..=12 {
            for b in 0..=12 - a {
                let brute = complex_moment_bruteforce(m, a, b).map_err(err)?;
                let dp = nonloop_complex_moment(m, a, b);
                if brute != dp {
                    return Err(format!("m = {m}, a = {a}, b = {b}: recursion {dp}, enumeration {brute}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} moments agree"))
}

fn mod4_vanishing() -> Outcome {
    for m in 1..=4 {
        for a in 0..=24 {
            for b in 0..=24 {
                let v = nonloop_complex_moment(m, a, b);
                let allowed = (a + b) % (2 * m) == 0 && (a as i64 - b as i64).rem_euclid(4) == 0;
                if !allowed && !v.is_zero() {
                    return Err(format!("m = {m}, a = {a}, b = {b} should vanish, got {v}"));
                }
            }
        }
    }
    Ok("vanishing pattern holds for m <= 4, a, b <= 24".into())
}

fn best_vs_bruteforce() -> Outcome {
    let mut n = 0;
    for r in 1..=3 {
        for entry in enumerate_gamma_r(r).map_err(err)? {
            for m in 1..=2 {
                for gamma in enumerate_balanced(&entry.graph, m, false) {
                    let d = realize_digraph(&gamma);
                    if d.arc_count() > EULER_BRUTEFORCE_ARC_LIMIT {
                        continue;
                    }
                    let brute = euler_tour_bruteforce(&d).map_err(err)?;
                    for root in 0..entry.graph.vertex_count() {
                        let best = euler_circuits_best(&d, root).map_err(err)?;
                        if best != brute {
                            return Err(format!("BEST {best} vs enumeration {brute} on {:?}", d.arcs));
                        }
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} digraphs"))
}

fn polynomials(m: usize, rs: &[usize]) -> Outcome {
    for &r in rs {
        let got = moment_polynomial(m, r).map_err(err)?.to_monomial();
        let want = golden::moment_polynomial(m, r).map_err(err)?;
        expect_eq(&format!("P^({m}) with r = {r}"), &got, &want)?;
    }
    Ok(format!("r in {rs:?}"))
}

/// Interpolates `P^(m)_{2mr}` from trace-word sums at `N = 1..=deg+2`.
pub fn interpolated_polynomial(m: usize, r: usize) -> crate::Result<MonomialPoly> {
    let degree = m * r + 1;
    let mut samples = vec![(BigInt::zero(), int(0))];
    for n in 1..=degree + 1 {
        samples.push((BigInt::from(n), Rational::from_integer(trace_word_oracle(m, r, n)?)));
    }
    interpolate_polynomial(&samples, degree)
}

fn oracle_triangle(cases: &[(usize, usize)]) -> Outcome {
    for &(m, r) in cases {
        let pipeline = moment_polynomial(m, r).map_err(err)?.to_monomial();
        let words = interpolated_polynomial(m, r).map_err(err)?;
        expect_eq(&format!("trace words, m = {m}, r = {r}"), &words, &pipeline)?;
        if m == 1 {
            let pairings = pairing_oracle_gue(r).map_err(err)?;
            expect_eq(&format!("pairings, r = {r}"), &pairings, &pipeline)?;
        }
    }
    Ok(format!("{cases:?}"))
}

fn trees() -> Outcome {
    for s in 1..=4 {
        let want = golden::named_series(&format!("F_{s}^(2)")).map_err(err)?;
        prefix_eq(&format!("F_{s}^(2)"), &tree_series(2, s, 8), &want, 7)?;
    }
    let catalan = golden::named_series("F_1^(1)").map_err(err)?;
    prefix_eq("F_1^(1)", &tree_series(1, 1, 11), &catalan, 10)?;
    Ok("F_1..4^(2) through x^7, Catalan through x^10".into())
}

fn genus_table(g: usize, m_max: usize, through: usize) -> Outcome {
    for (m, want) in golden::genus_table(g).map_err(err)? {
        if m > m_max {
            continue;
        }
        let got = match g {
            0 => g0_series(m, through + 1),
            _ => g1_series(m, through + 1),
        };
        prefix_eq(&format!("G_{g}^({m})"), &got, &want, through)?;
    }
    Ok(format!("m <= {m_max} through x^{through}"))
}

fn genus2(m: usize, through: usize) -> Outcome {
    let got = gg_series(m, 2, through + 1, false).map_err(err)?;
    let want = golden::genus_row(2, m).map_err(err)?;
    prefix_eq(&format!("G_2^({m})"), &got, &want, through)?;
    Ok(format!("through x^{through}"))
}

fn contribution_of(name: &str, through: usize) -> Outcome {
    let entry = golden::misc()["series"]
        .as_array()
        .and_then(|l| l.iter().find(|s| s["name"] == name))
        .ok_or_else(|| format!("no reference for {name}"))?;
    let v = entry["graph"]["v"].as_u64().unwrap_or(0) as usize;
    let edges: Vec<(usize, usize)> = entry["graph"]["edges"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| (e[0].as_u64().unwrap_or(0) as usize, e[1].as_u64().unwrap_or(0) as usize))
        .collect();
    let m = entry["m"].as_u64().unwrap_or(1) as usize;
    let g = GraphEntry::from_graph(&Multigraph::new(v, &edges).map_err(err)?);
    let got = graph_contribution(&g.graph, &g.aut, m, through + 1);
    let want = golden::named_series(name).map_err(err)?;
    prefix_eq(name, &got, &want, through)?;
    Ok(format!("{name} through x^{through}"))
}

fn per_graph() -> Outcome {
    for name in ["theta^(2)", "double_loop^(2)", "dumbbell^(2)"] {
        contribution_of(name, 4)?;
    }
    Ok("theta, double loop, dumbbell through x^4".into())
}

fn k4_contribution() -> Outcome {
    contribution_of("K4^(2)", 6)
}

fn min_degree3_counts(gs: &[usize]) -> Outcome {
    for &g in gs {
        let graphs = enumerate_min_degree3(g, false).map_err(err)?;
        let want = golden::min_degree3_count(g).ok_or_else(|| format!("no reference count for g = {g}"))?;
        expect_eq(&format!("|min degree 3, g = {g}|"), &(graphs.len() as u64), &want)?;
        if g == 2 {
            let mut auts: Vec<BigInt> = graphs.iter().map(|e| e.aut.clone()).collect();
            auts.sort();
            if auts != [8, 8, 12].map(BigInt::from) {
                return Err(format!("automorphism orders {auts:?}"));
            }
        }
    }
    Ok(format!("g in {gs:?}"))
}

fn k4_graph() -> Multigraph {
    Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4")
}

fn k4_counts() -> Outcome {
    let k4 = k4_graph();
    let counts: Vec<usize> = (1..=4).map(|m| enumerate_balanced(&k4, m, true).len()).collect();
    if counts != [1, 15, 15, 65] {
        return Err(format!("nonzero-moment digraph counts {counts:?}"));
    }
    let reps = spanning_tree_reps(&k4, 0).len();
    expect_eq("spanning-tree representatives", &reps, &16)?;
    Ok("digraphs 1, 15, 15, 65; 16 spanning trees".into())
}

fn wright() -> Outcome {
    prefix_eq("T", &tree_function(5), &golden::named_series("T").map_err(err)?, 4)?;
    let w0 = w_series(0, 8, false).map_err(err)?;
    prefix_eq("W_0", &w0, &golden::named_series("W_0 corrected").map_err(err)?, 7)?;
    for g in 1..=2 {
        let got = w_series(g, 7, false).map_err(err)?;
        prefix_eq(&format!("W_{g}"), &got, &golden::named_series(&format!("W_{g}")).map_err(err)?, 6)?;
    }
    let w5 = wg_from_bivariate(&BivariateAutSum::shipped_g5(), 9);
    prefix_eq("W_5", &w5, &golden::named_series("W_5").map_err(err)?, 8)?;
    Ok("T, W_0, W_1, W_2, W_5".into())
}

fn schemes() -> Outcome {
    let got = genus1_scheme_series(7);
    prefix_eq("genus 1 schemes", &got, &golden::named_series("genus1_schemes").map_err(err)?, 6)?;
    for r in 2..=4 {
        let p = moment_polynomial(1, r).map_err(err)?.to_monomial();
        let sub = p.coeff(r - 1) / int(2 * r);
        expect_eq(&format!("N^{} coefficient, r = {r}", r - 1), got.coeff(r - 1).unwrap_or(&int(0)), &sub)?;
    }
    Ok("through x^6, matches the subleading moment coefficients for r <= 4".into())
}

fn genus_oracle() -> Outcome {
    for m in 1..=2 {
        let pipeline = gg_series(m, 2, 4, false).map_err(err)?;
        let oracle = gg_series_oracle(m, 2, 3).map_err(err)?;
        prefix_eq(&format!("G_2^({m}) oracle"), &pipeline, &oracle, 3)?;
        let low = g1_series(m, 4);
        let direct = genus1_direct(m, 3).map_err(err)?;
        prefix_eq(&format!("G_1^({m}) direct"), &low, &direct, 3)?;
    }
    Ok("G_2 and G_1 through x^3 for m <= 2".into())
}

fn genus1_direct(m: usize, vmax: usize) -> crate::Result<Series> {
    let mut coeffs = vec![int(0); vmax + 1];
    for e in enumerate_gamma_g_bounded(1, vmax)? {
        let v = e.graph.vertex_count();
        let denom = BigInt::from(2 * m * e.graph.edge_count()) * &e.aut_v;
        coeffs[v] += Rational::new(weighted_tour_sum(&e, m)?, denom);
    }
    Ok(Series::new(coeffs))
}
