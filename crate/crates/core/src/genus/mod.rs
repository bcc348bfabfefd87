//! Genus-stratified generating functions: closed forms for genus 0 and 1,
//! the edge-class product formula for higher genus, and a direct summation
//! oracle over graphs of fixed Betti number.

mod contribution;
mod factors;
mod kernels;
mod low;
mod oracle;

pub use contribution::{check_genus_guard, gg_series, gg_series_from_graphs, graph_contribution, MAX_GENUS, MAX_GENUS_LARGE};
pub use factors::{
    local_loop_params, local_parallel_params, r_loop, r_loop_enumerated, r_parallel,
    r_parallel_enumerated, r_single, LocalLoopParams,
    LocalParallelParams,
};
pub use kernels::{mu_series, phi_series, KernelTable, PhiKernelParams};
pub use low::{g0_series, g1_series, leading_coefficient};
pub use oracle::{gg_series_oracle, oracle_vertex_limit};
