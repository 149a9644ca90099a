//! Occupation probabilities from the spectral engine next to the lattice oracle.
//!
//! `cargo run --example evolve -- [n]`

use qorw::distribution::{probabilities, WalkerInit};
use qorw::oracle::oracle_run;
use qorw::walk::Builtin;

fn main() -> qorw::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let m = Builtin::ExampleII.build()?;
    let init = WalkerInit::origin();
    let spectral = probabilities(&m, &init, n)?;
    let lattice = oracle_run(&m, &init, n)?;
    println!("{:>5} {:>22} {:>22}", "m", "spectral", "oracle");
    for (site, p) in spectral.sites().filter(|&(_, p)| p > 1e-15) {
        println!("{site:>5} {p:>22.16} {:>22.16}", lattice.prob(site));
    }
    println!("max |Δ| = {:.2e}, total = {:.16}", spectral.max_abs_diff(&lattice), spectral.total());
    Ok(())
}
