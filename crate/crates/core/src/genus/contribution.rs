use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::factors::{r_loop, r_parallel, r_single};
use super::kernels::KernelTable;
use crate::algebra::{factorial, Rational, Series};
use crate::error::{Error, Result};
use crate::flows::enumerate_balanced;
use crate::graphs::{
    edge_classes, enumerate_min_degree3, spanning_tree_reps, ClassKind, GraphEntry, Multigraph,
};
use crate::treeseries::tree_series;

pub const MAX_GENUS: usize = 3;
pub const MAX_GENUS_LARGE: usize = 4;

/// `sum_gamma sum_T R(gamma, T)` for one graph of minimum degree 3,
/// truncated to `order`.
pub fn graph_contribution(g: &Multigraph, aut: &BigInt, m: usize, order: usize) -> Series {
    let v = g.vertex_count();
    if order <= v {
        return Series::zero(order);
    }
    // Every factor of the vertex prefactor starts at x^1, so the rest of
    // the product is only needed to order - v.
    let k = order - v;
    let kt = KernelTable::new(m, k);
    let mut pre = Series::constant(Rational::new(BigInt::from(1), aut.clone()), k);
    for u in 0..v {
        let s = m * g.degree(u);
        let f = tree_series(m, s, k + 1).shift_down(1).expect("F_s starts at x");
        pre = &pre * &f.scale_int(&factorial(s - 1));
    }
    let classes = edge_classes(g);
    for c in classes.iter().filter(|c| c.kind == ClassKind::Loop) {
        pre = &pre * &r_loop(&kt, c.size());
    }
    let trees = spanning_tree_reps(g, 0);
    let mut total = Series::zero(k);
    for gamma in enumerate_balanced(g, m, true) {
        // Each class factor depends only on whether the tree uses the class
        // and with which orientation.
        let mut cache: HashMap<(usize, Option<bool>), Series> = HashMap::new();
        for tree in &trees {
            let mut prod = Series::one(k);
            for (ci, c) in classes.iter().enumerate() {
                let Some((a, b)) = gamma.params[ci] else { continue };
                let state = tree.agrees_with_reference(g, c.edges[0]);
                let factor = cache.entry((ci, state)).or_insert_with(|| match c.kind {
                    ClassKind::Single => r_single(&kt, a, state),
                    _ => r_parallel(&kt, c.size(), a, b, state),
                });
                prod = &prod * &*factor;
                if prod.is_zero() {
                    break;
                }
            }
            total = &total + &prod;
        }
    }
    (&pre * &total).shift_up(v)
}

pub fn check_genus_guard(g: usize, allow_large: bool) -> Result<()> {
    let top = if allow_large { MAX_GENUS_LARGE } else { MAX_GENUS };
    if g < 2 || g > top {
        return Err(Error::Guard(format!(
            "genus series for g >= 2 limited to g <= {top}{}, got {g}",
            if allow_large { "" } else { " without --allow-large" }
        )));
    }
    Ok(())
}

/// `G_g^(m)` for `g >= 2` as the sum of graph contributions over the
/// minimum-degree-3 graphs of Betti number `g`.
pub fn gg_series(m: usize, g: usize, order: usize, allow_large: bool) -> Result<Series> {
    check_genus_guard(g, allow_large)?;
    let graphs = enumerate_min_degree3(g, false)?;
    Ok(gg_series_from_graphs(m, &graphs, order))
}

pub fn gg_series_from_graphs(m: usize, graphs: &[GraphEntry], order: usize) -> Series {
    graphs
        .par_iter()
        .map(|e| graph_contribution(&e.graph, &e.aut, m, order))
        .reduce(|| Series::zero(order), |a, b| &a + &b)
}
