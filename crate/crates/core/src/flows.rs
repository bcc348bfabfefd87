//! Balanced digraph structures on the `2m`-thickening of a multigraph, their
//! moment weights, and essentially different Eulerian tour counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{factorial, integer_determinant};
use crate::error::{Error, Result};
use crate::graphs::{edge_classes, ClassKind, EdgeClass, Multigraph};
use crate::moments::{loop_moment, nonloop_complex_moment};

/// Lattice point of the flow polytope: `(a_S, b_S)` for every non-loop
/// class, with `a_S` thickened edges along the reference orientation.
#[derive(Clone, Debug)]
pub struct BalancedDigraphStructure {
    pub m: usize,
    pub host: Arc<Multigraph>,
    pub classes: Arc<Vec<EdgeClass>>,
    /// Aligned with `classes`; `None` for loop classes.
    pub params: Vec<Option<(usize, usize)>>,
}

impl PartialEq for BalancedDigraphStructure {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && *self.host == *other.host && self.params == other.params
    }
}

impl BalancedDigraphStructure {
    pub fn class_params(&self, class: usize) -> Option<(usize, usize)> {
        self.params[class]
    }

    pub fn is_balanced(&self) -> bool {
        let mut net = vec![0i64; self.host.vertex_count()];
        for (c, p) in self.classes.iter().zip(&self.params) {
            if let Some((a, b)) = *p {
                let (u, v) = c.endpoints;
                let d = a as i64 - b as i64;
                net[u] += d;
                net[v] -= d;
            }
        }
        net.iter().all(|&x| x == 0)
    }
}

/// Directed multigraph given by arc multiplicities; `(u, u)` entries are loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitDigraph {
    pub vertex_count: usize,
    pub arcs: BTreeMap<(usize, usize), usize>,
}

impl ExplicitDigraph {
    pub fn new(vertex_count: usize) -> Self {
        ExplicitDigraph { vertex_count, arcs: BTreeMap::new() }
    }

    pub fn add_arcs(&mut self, u: usize, v: usize, count: usize) {
        if count > 0 {
            *self.arcs.entry((u, v)).or_insert(0) += count;
        }
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.values().sum()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.iter().filter(|((a, _), _)| *a == u).map(|(_, &c)| c).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|((_, b), _)| *b == v).map(|(_, &c)| c).sum()
    }

    pub fn is_balanced(&self) -> bool {
        (0..self.vertex_count).all(|v| self.out_degree(v) == self.in_degree(v))
    }

    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &(a, b) in self.arcs.keys() {
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn nonloop_classes(classes: &[EdgeClass]) -> Vec<usize> {
    (0..classes.len()).filter(|&i| classes[i].kind != ClassKind::Loop).collect()
}

/// All balanced structures on the `2m`-thickening. With `nonzero_only`,
/// each class is restricted to `4 | a_S - b_S`, the only structures with
/// nonzero moment.
pub fn enumerate_balanced(
    g: &Multigraph,
    m: usize,
    nonzero_only: bool,
) -> Vec<BalancedDigraphStructure> {
    let host = Arc::new(g.clone());
    let classes = Arc::new(edge_classes(g));
    let order = nonloop_classes(&classes);
    let n = g.vertex_count();
    // Remaining flow capacity per vertex from classes not yet assigned.
    let mut capacity = vec![0i64; n];
    for &c in &order {
        let cap = (2 * m * classes[c].size()) as i64;
        let (u, v) = classes[c].endpoints;
        capacity[u] += cap;
        capacity[v] += cap;
    }
    let mut out = Vec::new();
    let mut params = vec![None; classes.len()];
    let mut net = vec![0i64; n];
    let mut search = |params: &mut Vec<Option<(usize, usize)>>| {
        out.push(BalancedDigraphStructure {
            m,
            host: host.clone(),
            classes: classes.clone(),
            params: params.clone(),
        });
    };
    balance_dfs(
        &classes, &order, 0, m, nonzero_only, &mut net, &mut capacity, &mut params, &mut search,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn balance_dfs(
    classes: &[EdgeClass],
    order: &[usize],
    depth: usize,
    m: usize,
    nonzero_only: bool,
    net: &mut Vec<i64>,
    capacity: &mut Vec<i64>,
    params: &mut Vec<Option<(usize, usize)>>,
    emit: &mut impl FnMut(&mut Vec<Option<(usize, usize)>>),
) {
    if depth == order.len() {
        if net.iter().all(|&x| x == 0) {
            emit(params);
        }
        return;
    }
    let c = order[depth];
    let total = 2 * m * classes[c].size();
    let (u, v) = classes[c].endpoints;
    capacity[u] -= total as i64;
    capacity[v] -= total as i64;
    for a in 0..=total {
        let b = total - a;
        if nonzero_only && (a as i64 - b as i64).rem_euclid(4) != 0 {
            continue;
        }
        let d = a as i64 - b as i64;
        net[u] += d;
        net[v] -= d;
        if net[u].abs() <= capacity[u] && net[v].abs() <= capacity[v] {
            params[c] = Some((a, b));
            balance_dfs(classes, order, depth + 1, m, nonzero_only, net, capacity, params, emit);
        }
        net[u] -= d;
        net[v] += d;
    }
    params[c] = None;
    capacity[u] += total as i64;
    capacity[v] += total as i64;
}

/// `a_S = b_S = m|S|` on every class.
pub fn canonical_digraph(g: &Multigraph, m: usize) -> BalancedDigraphStructure {
    let classes = edge_classes(g);
    let params = classes
        .iter()
        .map(|c| (c.kind != ClassKind::Loop).then(|| (m * c.size(), m * c.size())))
        .collect();
    BalancedDigraphStructure {
        m,
        host: Arc::new(g.clone()),
        classes: Arc::new(classes),
        params,
    }
}

/// Product of class moments: loop moments for loop classes, complex moments
/// `<z^a zbar^b>` for the rest.
pub fn moment_contribution(gamma: &BalancedDigraphStructure) -> BigInt {
    let m = gamma.m;
    let mut total = BigInt::one();
    for (c, p) in gamma.classes.iter().zip(&gamma.params) {
        let factor = match *p {
            None => loop_moment(m, 2 * m * c.size()),
            Some((a, b)) => nonloop_complex_moment(m, a, b),
        };
        if factor.is_zero() {
            return factor;
        }
        total *= factor;
    }
    total
}

pub fn realize_digraph(gamma: &BalancedDigraphStructure) -> ExplicitDigraph {
    let mut d = ExplicitDigraph::new(gamma.host.vertex_count());
    for (c, p) in gamma.classes.iter().zip(&gamma.params) {
        let (u, v) = c.endpoints;
        match *p {
            None => d.add_arcs(u, u, 2 * gamma.m * c.size()),
            Some((a, b)) => {
                d.add_arcs(u, v, a);
                d.add_arcs(v, u, b);
            }
        }
    }
    d
}

/// Spanning arborescences with every arc pointing toward `root`, from the
/// reduced out-degree Laplacian. Loops do not matter.
pub fn oriented_spanning_tree_count(d: &ExplicitDigraph, root: usize) -> Result<BigInt> {
    if !d.is_weakly_connected() {
        return Err(Error::Disconnected);
    }
    let n = d.vertex_count;
    let keep: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let index = |v: usize| keep.iter().position(|&k| k == v);
    let mut lap = vec![vec![BigInt::zero(); keep.len()]; keep.len()];
    for (&(u, v), &c) in &d.arcs {
        if u == v {
            continue;
        }
        if let Some(i) = index(u) {
            lap[i][i] += c;
            if let Some(j) = index(v) {
                lap[i][j] -= c;
            }
        }
    }
    Ok(integer_determinant(&lap))
}

/// Eulerian circuits through a fixed initial arc (BEST theorem), arcs
/// treated as distinguishable.
pub fn euler_circuits_best(d: &ExplicitDigraph, root: usize) -> Result<BigInt> {
    let sigma = oriented_spanning_tree_count(d, root)?;
    let mut prod = sigma;
    for u in 0..d.vertex_count {
        let out = d.out_degree(u);
        if out > 0 {
            prod *= factorial(out - 1);
        }
    }
    Ok(prod)
}

/// Essentially different Eulerian tours `W(gamma)`: all tours of the
/// thickening divided by the permutations of interchangeable edges.
pub fn edet_count(gamma: &BalancedDigraphStructure) -> Result<BigInt> {
    edet_count_rooted(gamma, 0)
}

pub fn edet_count_rooted(gamma: &BalancedDigraphStructure, root: usize) -> Result<BigInt> {
    let d = realize_digraph(gamma);
    let circuits = euler_circuits_best(&d, root)?;
    let tours = circuits * BigInt::from(2 * gamma.m * gamma.host.edge_count());
    let mut omega = BigInt::one();
    for (c, p) in gamma.classes.iter().zip(&gamma.params) {
        match *p {
            None => omega *= factorial(2 * gamma.m * c.size()),
            Some((a, b)) => omega *= factorial(a) * factorial(b),
        }
    }
    let (q, r) = tours.div_rem(&omega);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!(
            "tour count {tours} not divisible by {omega}"
        )));
    }
    Ok(q)
}

pub const EULER_BRUTEFORCE_ARC_LIMIT: usize = 12;

/// Eulerian tours starting with a fixed arc, by backtracking over
/// distinguishable arcs.
pub fn euler_tour_bruteforce(d: &ExplicitDigraph) -> Result<BigInt> {
    let arcs: Vec<(usize, usize)> = d
        .arcs
        .iter()
        .flat_map(|(&k, &c)| std::iter::repeat(k).take(c))
        .collect();
    if arcs.len() > EULER_BRUTEFORCE_ARC_LIMIT {
        return Err(Error::Guard(format!(
            "brute-force tours limited to {EULER_BRUTEFORCE_ARC_LIMIT} arcs, got {}",
            arcs.len()
        )));
    }
    if arcs.is_empty() {
        return Ok(BigInt::zero());
    }
    let mut used = vec![false; arcs.len()];
    used[0] = true;
    let count = tour_rec(&arcs, &mut used, arcs[0].1, arcs[0].0, 1);
    Ok(BigInt::from(count))
}

fn tour_rec(arcs: &[(usize, usize)], used: &mut [bool], at: usize, start: usize, done: usize) -> u64 {
    if done == arcs.len() {
        return u64::from(at == start);
    }
    let mut total = 0;
    for i in 0..arcs.len() {
        if !used[i] && arcs[i].0 == at {
            used[i] = true;
            total += tour_rec(arcs, used, arcs[i].1, start, done + 1);
            used[i] = false;
        }
    }
    total
}
