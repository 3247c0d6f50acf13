pub mod exact_arith;
pub mod series;
pub mod ff;
pub mod mv_counts;
pub mod uv_counts;
pub mod uv_families;
pub mod oracle;
