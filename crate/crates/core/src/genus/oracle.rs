use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{Rational, Series};
use crate::error::{Error, Result};
use crate::graphs::enumerate_gamma_g_bounded;
use crate::momentpolys::weighted_tour_sum;

/// Largest vertex bound accepted by [`gg_series_oracle`] for a given `m`.
pub fn oracle_vertex_limit(m: usize) -> usize {
    match m {
        1 => 6,
        2 => 4,
        _ => 3,
    }
}

/// Direct sum `(1/2m) sum over graphs of Betti number g with at most vmax
/// vertices of x^v / (e |Aut_v G|) sum_gamma W M`. Exact through `x^vmax`.
pub fn gg_series_oracle(m: usize, g: usize, vmax: usize) -> Result<Series> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if vmax > oracle_vertex_limit(m) {
        return Err(Error::Guard(format!(
            "oracle limited to vmax <= {} for m = {m}, got {vmax}",
            oracle_vertex_limit(m)
        )));
    }
    let graphs = enumerate_gamma_g_bounded(g, vmax)?;
    let terms: Vec<(usize, Rational)> = graphs
        .par_iter()
        .map(|e| {
            let v = e.graph.vertex_count();
            let s = weighted_tour_sum(e, m)?;
            let denom = BigInt::from(2 * m * e.graph.edge_count()) * &e.aut_v;
            Ok((v, Rational::new(s, denom)))
        })
        .collect::<Result<_>>()?;
    let mut coeffs = vec![Rational::from_integer(0.into()); vmax + 1];
    for (v, c) in terms {
        coeffs[v] += c;
    }
    Ok(Series::new(coeffs))
}
