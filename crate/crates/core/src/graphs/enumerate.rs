use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::canon::canonical_form;
use super::multigraph::{aut_orders, Multigraph};
use crate::error::{Error, Result};

pub const MAX_GAMMA_R: usize = 5;
pub const MAX_BOUNDED_VERTICES: usize = 8;

/// Canonically labeled graph with its automorphism counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEntry {
    pub graph: Multigraph,
    pub aut: BigInt,
    pub aut_v: BigInt,
}

impl GraphEntry {
    pub fn from_graph(g: &Multigraph) -> Self {
        let graph = canonical_form(g).graph(g);
        let (aut, aut_v) = aut_orders(&graph);
        GraphEntry { graph, aut, aut_v }
    }

    pub fn record(&self) -> GraphRecord {
        GraphRecord {
            v: self.graph.vertex_count(),
            edges: self.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            aut: self.aut.to_string(),
            aut_v: self.aut_v.to_string(),
        }
    }
}

/// One line of a graph cache file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub v: usize,
    pub edges: Vec<[usize; 2]>,
    pub aut: String,
    pub aut_v: String,
}

impl GraphRecord {
    pub fn entry(&self) -> Result<GraphEntry> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad automorphism count {s:?}")))
        };
        Ok(GraphEntry {
            graph: Multigraph::new(self.v, &edges)?,
            aut: parse(&self.aut)?,
            aut_v: parse(&self.aut_v)?,
        })
    }
}

pub fn write_jsonl(path: &Path, entries: &[GraphEntry]) -> Result<()> {
    let io = |e: std::io::Error| Error::Inconsistent(format!("{}: {e}", path.display()));
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for entry in entries {
        let line = serde_json::to_string(&entry.record()).expect("record serializes");
        writeln!(f, "{line}").map_err(io)?;
    }
    f.flush().map_err(io)
}

pub fn read_jsonl(path: &Path) -> Result<Vec<GraphEntry>> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    let f = std::io::BufReader::new(std::fs::File::open(path).map_err(io)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: GraphRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        out.push(rec.entry()?);
    }
    Ok(out)
}

fn dedupe(graphs: impl IntoIterator<Item = Multigraph>) -> Vec<Multigraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let c = canonical_form(&g);
        if seen.insert(c.code.clone()) {
            out.push(c.graph(&g));
        }
    }
    out
}

fn trees(v: usize) -> Vec<Multigraph> {
    let mut level = vec![Multigraph::new(1, &[]).unwrap()];
    for _ in 1..v {
        let next = level
            .iter()
            .flat_map(|t| (0..t.vertex_count()).map(move |p| t.with_leaf(p)))
            .collect::<Vec<_>>();
        level = dedupe(next);
    }
    level
}

/// Connected graphs on `v` vertices with Betti number `g`: every such graph
/// is a spanning tree plus `g` further edges.
fn connected_with_betti(v: usize, g: usize) -> Vec<Multigraph> {
    let mut level = trees(v);
    for _ in 0..g {
        let next = level
            .iter()
            .flat_map(|h| {
                (0..v).flat_map(move |a| (a..v).map(move |b| h.with_edge(a, b)))
            })
            .collect::<Vec<_>>();
        level = dedupe(next);
    }
    level
}

fn finish(graphs: Vec<Multigraph>) -> Vec<GraphEntry> {
    let mut out: Vec<GraphEntry> = graphs.iter().map(GraphEntry::from_graph).collect();
    out.sort_by(|a, b| {
        let key = |e: &GraphEntry| (e.graph.vertex_count(), e.graph.edge_count(), canonical_form(&e.graph).code);
        key(a).cmp(&key(b))
    });
    out
}

/// All connected multigraphs with `r` edges, one per isomorphism class.
pub fn enumerate_gamma_r(r: usize) -> Result<Vec<GraphEntry>> {
    if r == 0 || r > MAX_GAMMA_R {
        return Err(Error::Guard(format!("edge count must be in 1..={MAX_GAMMA_R}, got {r}")));
    }
    let graphs = (0..=r).flat_map(|g| connected_with_betti(r + 1 - g, g)).collect();
    Ok(finish(graphs))
}

/// Connected graphs with Betti number `g` and at most `vmax` vertices. For
/// `g = 0` the single vertex is excluded.
pub fn enumerate_gamma_g_bounded(g: usize, vmax: usize) -> Result<Vec<GraphEntry>> {
    if vmax > MAX_BOUNDED_VERTICES {
        return Err(Error::Guard(format!(
            "vertex bound must be at most {MAX_BOUNDED_VERTICES}, got {vmax}"
        )));
    }
    let vmin = if g == 0 { 2 } else { 1 };
    let graphs = (vmin..=vmax).flat_map(|v| connected_with_betti(v, g)).collect();
    Ok(finish(graphs))
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Fill a symmetric multiplicity matrix with prescribed degrees, loops
/// counting twice.
fn realize(
    rem: &mut Vec<usize>,
    mult: &mut Vec<Vec<u8>>,
    i: usize,
    j: usize,
    f: &mut impl FnMut(&[Vec<u8>]),
) {
    let n = rem.len();
    if i == n {
        f(mult);
        return;
    }
    if j == n {
        if rem[i] == 0 {
            realize(rem, mult, i + 1, i + 1, f);
        }
        return;
    }
    if j == i {
        for l in 0..=rem[i] / 2 {
            rem[i] -= 2 * l;
            mult[i][i] = l as u8;
            realize(rem, mult, i, j + 1, f);
            rem[i] += 2 * l;
        }
        mult[i][i] = 0;
        return;
    }
    // Whatever row i still owes must fit into the remaining columns.
    let tail: usize = rem[j + 1..].iter().sum();
    let lo = rem[i].saturating_sub(tail);
    for k in lo..=rem[i].min(rem[j]) {
        rem[i] -= k;
        rem[j] -= k;
        mult[i][j] = k as u8;
        mult[j][i] = k as u8;
        realize(rem, mult, i, j + 1, f);
        rem[i] += k;
        rem[j] += k;
    }
    mult[i][j] = 0;
    mult[j][i] = 0;
}

/// Connected graphs of Betti number `g` with every degree at least 3. Their
/// degrees `d` satisfy `sum (d - 2) = 2g - 2`, so each degree sequence comes
/// from a partition of `2g - 2`.
pub fn enumerate_min_degree3(g: usize, allow_large: bool) -> Result<Vec<GraphEntry>> {
    let top = if allow_large { 5 } else { 4 };
    if g < 2 || g > top {
        return Err(Error::Guard(format!(
            "genus must be in 2..={top} (5 needs allow_large), got {g}"
        )));
    }
    let mut seen = HashSet::new();
    let mut graphs = Vec::new();
    for part in partitions(2 * g - 2, 2 * g - 2) {
        let n = part.len();
        let mut rem: Vec<usize> = part.iter().map(|p| p + 2).collect();
        let mut mult = vec![vec![0u8; n]; n];
        realize(&mut rem, &mut mult, 0, 0, &mut |m| {
            let h = Multigraph::from_matrix(m);
            if !h.is_connected() {
                return;
            }
            let c = canonical_form(&h);
            if seen.insert(c.code.clone()) {
                graphs.push(c.graph(&h));
            }
        });
    }
    Ok(finish(graphs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let r1 = enumerate_gamma_r(1).unwrap();
        assert_eq!(r1.len(), 2);
        let r2 = enumerate_gamma_r(2).unwrap();
        assert_eq!(r2.len(), 4);
        assert!(enumerate_gamma_r(6).is_err());
        let g0 = enumerate_gamma_g_bounded(0, 3).unwrap();
        assert_eq!(g0.len(), 2);
        let g1 = enumerate_gamma_g_bounded(1, 2).unwrap();
        assert_eq!(g1.len(), 3);
    }

    #[test]
    fn min_degree_three() {
        let g2 = enumerate_min_degree3(2, false).unwrap();
        assert_eq!(g2.len(), 3);
        let mut auts: Vec<_> = g2.iter().map(|e| e.aut.clone()).collect();
        auts.sort();
        assert_eq!(auts, vec![BigInt::from(8), BigInt::from(8), BigInt::from(12)]);
        assert_eq!(enumerate_min_degree3(3, false).unwrap().len(), 15);
        assert!(enumerate_min_degree3(5, false).is_err());
        assert!(enumerate_min_degree3(1, true).is_err());
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gamma_ge3_g2.jsonl");
        let entries = enumerate_min_degree3(2, false).unwrap();
        write_jsonl(&path, &entries).unwrap();
        assert_eq!(read_jsonl(&path).unwrap(), entries);
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4, 4).len(), 5);
    }
}
