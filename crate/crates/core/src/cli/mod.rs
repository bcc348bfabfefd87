//! Command line front end.
//!
//! Every subcommand produces an [`Output`] which is rendered as a json
//! envelope (sorted keys), csv rows or plain text. Errors are written to
//! stderr as a json object and mapped to exit codes 2 (usage), 3 (guard)
//! and 4 (self-test failure).

pub mod cache;
pub mod golden;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{format_rational, Rational, Series};
use crate::error::{Error, Result};
use crate::flows::{enumerate_balanced, euler_circuits_best, euler_tour_bruteforce, realize_digraph, EULER_BRUTEFORCE_ARC_LIMIT};
use crate::genus::{check_genus_guard, g0_series, g1_series, gg_series_from_graphs, gg_series_oracle, graph_contribution};
use crate::graphs::{enumerate_gamma_g_bounded, enumerate_gamma_r, enumerate_min_degree3, GraphEntry};
use crate::momentpolys::{check_poly_guard, moment_polynomial_from_graphs, pairing_oracle_gue, trace_word_oracle};
use crate::moments::{MomentSpec, Normalization};
use crate::treeseries::tree_series;
use crate::wright::{genus1_scheme_series, w_series, wg_from_bivariate, BivariateAutSum};

pub use cache::{GraphCache, Lookup, CACHE_ENV};
pub use output::{Format, Kind, Output, VERSION};
pub use selftest::Level;

use output::{error_kind, error_object, exit_code, EXIT_OK, EXIT_SELFTEST, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "hypermap", version, about = "Exact moment polynomials and genus series of the hypergraph matrix model")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Directory for cached graph families (default: $HYPERMAP_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Lift the desk-scale guards on genus and enumeration sizes.
    #[arg(long, global = true)]
    pub allow_large: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Formal moment of a letter pattern.
    Moments(MomentsArgs),
    /// Colored plane tree series F_s^(m).
    Trees(TreesArgs),
    /// Moment polynomial P^(m)_{2mr}(N).
    Poly(PolyArgs),
    /// Genus series G_g^(m).
    Genus(GenusArgs),
    /// Wright's series W_g or the genus 1 scheme series.
    Wright(WrightArgs),
    /// Independent oracles.
    Oracle(OracleArgs),
    /// Oracle equivalences and reference-table comparisons.
    Selftest(SelftestArgs),
    /// Tabulated genus series and graph families.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Loop,
    Nonloop,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub m: usize,
    /// Number of z letters (all letters for the loop normalization).
    #[arg(long)]
    pub a: usize,
    /// Number of conjugate letters.
    #[arg(long, default_value_t = 0)]
    pub b: usize,
    #[arg(long, value_enum, default_value = "nonloop")]
    pub normalization: NormalizationArg,
}

#[derive(Debug, Args)]
pub struct TreesArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Highest power of x to emit.
    #[arg(long)]
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Falling,
    Monomial,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "falling")]
    pub basis: Basis,
    /// Divide by 2mr.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Args)]
pub struct GenusArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub order: usize,
    /// Use the direct sum over all graphs of Betti number g.
    #[arg(long, conflicts_with = "per_graph")]
    pub oracle: bool,
    /// Vertex bound for --oracle (default: --order).
    #[arg(long, requires = "oracle")]
    pub vmax: Option<usize>,
    /// Emit each minimum-degree-3 graph's contribution.
    #[arg(long)]
    pub per_graph: bool,
}

#[derive(Debug, Args)]
pub struct WrightArgs {
    #[arg(long, required_unless_present = "schemes")]
    pub g: Option<usize>,
    #[arg(long)]
    pub order: usize,
    /// Genus 1 unicellular map series from its two schemes.
    #[arg(long, conflicts_with = "g")]
    pub schemes: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub oracle: OracleCommand,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// <Tr X^{2mr}> by summing over index words at matrix size N.
    TraceWords {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// P^(1)_{2r} from oriented pairings (Gaussian case).
    Pairings {
        #[arg(long)]
        r: usize,
    },
    /// P^(m)_{2mr} interpolated from trace words, next to the graph pipeline.
    Interpolate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
    },
    /// BEST theorem against exhaustive tour enumeration on every balanced
    /// digraph over graphs with r edges.
    Euler {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(value_enum, default_value = "quick")]
    pub level: Level,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[command(subcommand)]
    pub table: TableCommand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Betti number g, minimum degree 3.
    MinDegree3,
    /// Betti number g, at most --vmax vertices.
    Betti,
    /// Exactly r edges.
    Edges,
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    /// G_g^(m) for m = 1..=m_max.
    Genus {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        order: usize,
    },
    /// A graph family with automorphism orders.
    Graphs {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        vmax: Option<usize>,
    },
}

/// Parses `args` (including the program name), runs the command and writes
/// to `out` / `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            let _ = err.write_all(error_object("usage", first, EXIT_USAGE).as_bytes());
            return EXIT_USAGE;
        }
    };
    let result = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidArgument(format!("cannot start {} workers: {e}", cli.jobs))),
        }
    } else {
        execute(&cli)
    };
    match result {
        Ok((output, code)) => {
            let _ = out.write_all(output.render(cli.format).as_bytes());
            code
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = err.write_all(error_object(error_kind(&e), &e.to_string(), code).as_bytes());
            code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("--{name} must be at least 1")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(Output, i32)> {
    let cache = GraphCache::from_options(cli.cache_dir.as_deref(), cli.no_cache);
    let output = match &cli.command {
        Command::Moments(a) => moments(a)?,
        Command::Trees(a) => trees(a)?,
        Command::Poly(a) => poly(a, &cache)?,
        Command::Genus(a) => genus(a, &cache, cli.allow_large)?,
        Command::Wright(a) => wright(a, cli.allow_large)?,
        Command::Oracle(a) => oracle(a, &cache)?,
        Command::Selftest(a) => return Ok(selftest(a)),
        Command::Tables(a) => tables(a, &cache, cli.allow_large)?,
    };
    Ok((output, EXIT_OK))
}

fn moments(a: &MomentsArgs) -> Result<Output> {
    let normalization = match a.normalization {
        NormalizationArg::Loop => Normalization::Loop,
        NormalizationArg::Nonloop => Normalization::Nonloop,
    };
    let value = MomentSpec::new(a.m, normalization)?.evaluate(a.a, a.b).to_string();
    let name = match a.normalization {
        NormalizationArg::Loop => "loop",
        NormalizationArg::Nonloop => "nonloop",
    };
    let params = json!({ "m": a.m, "a": a.a, "b": a.b, "normalization": name });
    let row = json!({ "a": a.a, "b": a.b, "value": value });
    let mut o = Output::table(Kind::Table, params, json!({ "rows": [row.clone()] }), &["a", "b", "value"], &[row]);
    o.text = value;
    Ok(o)
}

fn trees(a: &TreesArgs) -> Result<Output> {
    positive("m", a.m)?;
    positive("s", a.s)?;
    let params = json!({ "m": a.m, "s": a.s, "order": a.order });
    Ok(Output::series(params, &tree_series(a.m, a.s, a.order + 1)))
}

fn cached(cache: &GraphCache, name: &str, compute: impl FnOnce() -> Result<Vec<GraphEntry>>) -> Result<(Vec<GraphEntry>, bool)> {
    let (entries, status) = cache.get_or_compute(name, compute)?;
    if status == Lookup::Corrupt {
        eprintln!("{}", json!({ "warning": "cache entry failed its digest check and was recomputed", "family": name }));
    }
    Ok((entries, status == Lookup::Hit))
}

fn poly(a: &PolyArgs, cache: &GraphCache) -> Result<Output> {
    check_poly_guard(a.m, a.r)?;
    let (graphs, hit) = cached(cache, &format!("gamma_r{}", a.r), || enumerate_gamma_r(a.r))?;
    let mut p = moment_polynomial_from_graphs(a.m, &graphs)?;
    if a.normalized {
        p = p.scale(&Rational::new(1.into(), BigInt::from(2 * a.m * a.r)));
    }
    let basis = match a.basis {
        Basis::Falling => "falling",
        Basis::Monomial => "monomial",
    };
    let params = json!({ "m": a.m, "r": a.r, "basis": basis, "normalized": a.normalized });
    let mut o = match a.basis {
        Basis::Falling => Output::falling(params, &p),
        Basis::Monomial => Output::monomial(params, &p.to_monomial()),
    };
    o.cache_hit = hit;
    Ok(o)
}

fn min_degree3(cache: &GraphCache, g: usize, allow_large: bool) -> Result<(Vec<GraphEntry>, bool)> {
    cached(cache, &format!("gamma_ge3_g{g}"), || enumerate_min_degree3(g, allow_large))
}

fn genus(a: &GenusArgs, cache: &GraphCache, allow_large: bool) -> Result<Output> {
    positive("m", a.m)?;
    let order = a.order + 1;
    let params = json!({ "m": a.m, "g": a.g, "order": a.order, "oracle": a.oracle, "per_graph": a.per_graph });
    if a.oracle {
        let vmax = a.vmax.unwrap_or(a.order);
        if vmax < a.order {
            return Err(Error::InvalidArgument(format!(
                "the direct sum is exact only through x^vmax; --order {} exceeds --vmax {vmax}",
                a.order
            )));
        }
        let s = gg_series_oracle(a.m, a.g, vmax)?.truncate(order);
        return Ok(Output::series(params, &s));
    }
    if a.per_graph {
        check_genus_guard(a.g, allow_large)?;
        let (graphs, hit) = min_degree3(cache, a.g, allow_large)?;
        let rows: Vec<Value> = graphs
            .iter()
            .map(|e| {
                let s = graph_contribution(&e.graph, &e.aut, a.m, order);
                let rec = e.record();
                json!({
                    "v": rec.v,
                    "edges": serde_json::to_string(&rec.edges).expect("edge list"),
                    "aut": rec.aut,
                    "series": s.to_string(),
                    "coeffs": s.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
                })
            })
            .collect();
        let total = gg_series_from_graphs(a.m, &graphs, order);
        let payload = json!({ "graphs": rows, "total": Output::series(Value::Null, &total).payload });
        let mut o = Output::table(Kind::Table, params, payload, &["v", "edges", "aut", "series"], &rows);
        o.cache_hit = hit;
        return Ok(o);
    }
    let (s, hit) = match a.g {
        0 => (g0_series(a.m, order), false),
        1 => (g1_series(a.m, order), false),
        g => {
            check_genus_guard(g, allow_large)?;
            let (graphs, hit) = min_degree3(cache, g, allow_large)?;
            (gg_series_from_graphs(a.m, &graphs, order), hit)
        }
    };
    let mut o = Output::series(params, &s);
    o.cache_hit = hit;
    Ok(o)
}

fn wright(a: &WrightArgs, allow_large: bool) -> Result<Output> {
    let order = a.order + 1;
    if a.schemes {
        let params = json!({ "schemes": true, "order": a.order });
        return Ok(Output::series(params, &genus1_scheme_series(order)));
    }
    let g = a.g.expect("clap enforces --g without --schemes");
    let params = json!({ "g": g, "order": a.order });
    let s = match g {
        5 => wg_from_bivariate(&BivariateAutSum::shipped_g5(), order),
        g if g > 5 => return Err(Error::Guard(format!("no Wright series available for g = {g}"))),
        g => w_series(g, order, allow_large)?,
    };
    Ok(Output::series(params, &s))
}

fn oracle(a: &OracleArgs, cache: &GraphCache) -> Result<Output> {
    match &a.oracle {
        OracleCommand::TraceWords { m, r, n } => {
            positive("m", *m)?;
            let value = trace_word_oracle(*m, *r, *n)?.to_string();
            let params = json!({ "oracle": "trace-words", "m": m, "r": r, "n": n });
            let row = json!({ "n": n, "value": value });
            let mut o = Output::table(Kind::Table, params, json!({ "rows": [row.clone()] }), &["n", "value"], &[row]);
            o.text = value;
            Ok(o)
        }
        OracleCommand::Pairings { r } => {
            let params = json!({ "oracle": "pairings", "m": 1, "r": r });
            Ok(Output::monomial(params, &pairing_oracle_gue(*r)?))
        }
        OracleCommand::Interpolate { m, r } => {
            positive("m", *m)?;
            check_poly_guard(*m, *r)?;
            let words = selftest::interpolated_polynomial(*m, *r)?;
            let (graphs, hit) = cached(cache, &format!("gamma_r{r}"), || enumerate_gamma_r(*r))?;
            let pipeline = moment_polynomial_from_graphs(*m, &graphs)?.to_monomial();
            let agree = words == pipeline;
            let params = json!({ "oracle": "interpolate", "m": m, "r": r });
            let rows = vec![
                json!({ "route": "trace-words", "polynomial": words.to_string() }),
                json!({ "route": "graphs", "polynomial": pipeline.to_string() }),
            ];
            let payload = json!({ "agree": agree, "rows": rows.clone(),
                "coeffs": words.coeff_strings() });
            let mut o = Output::table(Kind::Table, params, payload, &["route", "polynomial"], &rows);
            o.cache_hit = hit;
            Ok(o)
        }
        OracleCommand::Euler { r, m } => {
            positive("m", *m)?;
            let (graphs, hit) = cached(cache, &format!("gamma_r{r}"), || enumerate_gamma_r(*r))?;
            let mut rows = Vec::new();
            for (index, entry) in graphs.iter().enumerate() {
                for gamma in enumerate_balanced(&entry.graph, *m, false) {
                    let d = realize_digraph(&gamma);
                    let best = euler_circuits_best(&d, 0)?;
                    let brute = if d.arc_count() <= EULER_BRUTEFORCE_ARC_LIMIT {
                        Value::String(euler_tour_bruteforce(&d)?.to_string())
                    } else {
                        Value::Null
                    };
                    let agree = match &brute {
                        Value::String(s) => *s == best.to_string(),
                        _ => true,
                    };
                    rows.push(json!({
                        "graph": index,
                        "arcs": d.arc_count(),
                        "best": best.to_string(),
                        "bruteforce": brute,
                        "agree": agree,
                    }));
                }
            }
            let agree = rows.iter().all(|r| r["agree"] == true);
            let params = json!({ "oracle": "euler", "m": m, "r": r });
            let payload = json!({ "agree": agree, "rows": rows.clone() });
            let mut o = Output::table(Kind::Table, params, payload, &["graph", "arcs", "best", "bruteforce", "agree"], &rows);
            o.cache_hit = hit;
            Ok(o)
        }
    }
}

fn selftest(a: &SelftestArgs) -> (Output, i32) {
    let results = selftest::run(a.level);
    let failed = results.iter().filter(|r| !r.passed).count();
    let rows: Vec<Value> = results.iter().map(|r| r.to_json()).collect();
    let payload = json!({
        "level": a.level.as_str(),
        "checks": rows.clone(),
        "passed": results.len() - failed,
        "failed": failed,
    });
    let params = json!({ "level": a.level.as_str() });
    let mut o = Output::table(Kind::Table, params, payload, &["name", "passed", "seconds", "detail"], &rows);
    o.text = results
        .iter()
        .map(|r| format!("{} {:<28} {:>9.3}s  {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.seconds, r.detail))
        .collect::<Vec<_>>()
        .join("\n");
    (o, if failed == 0 { EXIT_OK } else { EXIT_SELFTEST })
}

fn tables(a: &TablesArgs, cache: &GraphCache, allow_large: bool) -> Result<Output> {
    match &a.table {
        TableCommand::Genus { g, m_max, order } => {
            positive("m-max", *m_max)?;
            let (graphs, hit) = if *g >= 2 {
                check_genus_guard(*g, allow_large)?;
                min_degree3(cache, *g, allow_large)?
            } else {
                (Vec::new(), false)
            };
            let rows: Vec<Value> = (1..=*m_max)
                .map(|m| {
                    let s: Series = match g {
                        0 => g0_series(m, order + 1),
                        1 => g1_series(m, order + 1),
                        _ => gg_series_from_graphs(m, &graphs, order + 1),
                    };
                    json!({
                        "m": m,
                        "series": s.to_string(),
                        "coeffs": Output::series(Value::Null, &s).payload["coeffs"].clone(),
                    })
                })
                .collect();
            let params = json!({ "g": g, "m_max": m_max, "order": order });
            let mut o = Output::table(Kind::Table, params, json!({ "rows": rows.clone() }), &["m", "series"], &rows);
            o.cache_hit = hit;
            Ok(o)
        }
        TableCommand::Graphs { family, g, r, vmax } => {
            let need = |v: Option<usize>, flag: &str| {
                v.ok_or_else(|| Error::InvalidArgument(format!("this family needs --{flag}")))
            };
            let (name, params, compute): (String, Value, Box<dyn FnOnce() -> Result<Vec<GraphEntry>>>) = match family {
                Family::MinDegree3 => {
                    let g = need(*g, "g")?;
                    (format!("gamma_ge3_g{g}"), json!({ "family": "min-degree3", "g": g }),
                        Box::new(move || enumerate_min_degree3(g, allow_large)))
                }
                Family::Betti => {
                    let (g, vmax) = (need(*g, "g")?, need(*vmax, "vmax")?);
                    (format!("gamma_g{g}_v{vmax}"), json!({ "family": "betti", "g": g, "vmax": vmax }),
                        Box::new(move || enumerate_gamma_g_bounded(g, vmax)))
                }
                Family::Edges => {
                    let r = need(*r, "r")?;
                    (format!("gamma_r{r}"), json!({ "family": "edges", "r": r }), Box::new(move || enumerate_gamma_r(r)))
                }
            };
            let (graphs, hit) = cached(cache, &name, compute)?;
            let records: Vec<Value> = graphs
                .iter()
                .map(|e| serde_json::to_value(e.record()).expect("record serializes"))
                .collect();
            let rows: Vec<Value> = graphs
                .iter()
                .map(|e| {
                    let rec = e.record();
                    json!({ "v": rec.v, "edges": serde_json::to_string(&rec.edges).expect("edges"), "aut": rec.aut, "aut_v": rec.aut_v })
                })
                .collect();
            let payload = json!({ "count": graphs.len(), "graphs": records });
            let mut o = Output::table(Kind::GraphList, params, payload, &["v", "edges", "aut", "aut_v"], &rows);
            o.cache_hit = hit;
            Ok(o)
        }
    }
}
