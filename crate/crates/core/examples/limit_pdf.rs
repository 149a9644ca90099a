//! Histogram of the limiting velocity `L/n` for one of the reference walks.
//!
//! `cargo run --release --example limit_pdf -- [ii|v3|iv] [bins]`

use qorw::distribution::{asymptotic_pdf, PdfOptions, WalkerInit};
use qorw::walk::Builtin;

fn main() -> qorw::Result<()> {
    let mut args = std::env::args().skip(1);
    let model = match args.next().as_deref() {
        Some("v3") => Builtin::V3,
        Some("iv") => Builtin::ExampleIV { q: 0.0 },
        _ => Builtin::ExampleII,
    };
    let bins: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(40);
    let m = model.build()?;
    let hist = asymptotic_pdf(&m, &WalkerInit::origin(), &PdfOptions::quadrature(bins, 2000 * bins))?;
    let peak = (0..hist.bins()).map(|i| hist.density(i)).fold(0.0, f64::max);
    for i in 0..hist.bins() {
        let bar = (60.0 * hist.density(i) / peak).round() as usize;
        println!("{:+.3} {:8.4} {}", hist.center(i), hist.density(i), "#".repeat(bar));
    }
    println!("{model}: mass={:.12} mean={:+.6} second={:.6}", hist.total_mass(), hist.moment(1), hist.moment(2));
    Ok(())
}
