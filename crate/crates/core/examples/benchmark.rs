//! Floating-point work and wall time of the recursive solve against the dense
//! Newton–Euler solve. Build with `--release` for meaningful timings.
//!
//! cargo run --release --example benchmark -- [evaluations]

use prp3::sim::{bench, SimConfig};

fn main() -> prp3::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let report = bench(&SimConfig { bench_n: n, ..Default::default() })?;
    print!("{report}");
    if let Some(cheaper) = report.recursive_is_cheaper() {
        println!("recursive path needs fewer flops: {cheaper}");
    }
    Ok(())
}
