//! Sampled estimate of `ε̄^s` and its `1/√N` convergence.
//!
//! `cargo run --release --example stochastic -- [seed]`

use qorw::distribution::WalkerInit;
use qorw::simulation::{convergence_table, eps_bar_s, stochastic_estimate, SimulatorSpec};
use qorw::walk::Builtin;

fn main() -> qorw::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let m = Builtin::ExampleII.build()?;
    let spec = SimulatorSpec::new(&m, 2, &WalkerInit::origin())?;
    let exact = eps_bar_s(&spec)?;
    let est = stochastic_estimate(&spec, 20_000, seed, 4)?;
    println!("N={} max σ̂={:.3e} max |z|={:.2}", est.samples, est.max_std_err(), est.max_z_score(exact.matrix()));
    println!("{:>8} {:>12} {:>12}", "N", "error", "σ̂");
    for row in convergence_table(&spec, &[500, 2_000, 8_000, 32_000], seed, 4, 4)? {
        println!("{:>8} {:>12.3e} {:>12.3e}", row.samples, row.max_entry_error, row.predicted_sigma);
    }
    Ok(())
}
