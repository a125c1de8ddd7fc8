//! Shared inputs for the criterion benchmarks in `benches/`.

/// Group orders swept by the table and duality benchmarks.
pub const ORDERS: [u32; 4] = [16, 64, 256, 1024];

/// Shot counts for the sampling benchmarks.
pub const SHOTS: [u64; 3] = [1_000, 100_000, 1_000_000];
