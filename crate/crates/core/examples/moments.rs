//! Finite-n moments `⟨L^s⟩_n / n^s` approaching their limits `⟨h^s⟩`.

use qorw::distribution::{asymptotic_moment, moment, WalkerInit};
use qorw::walk::Builtin;

fn main() -> qorw::Result<()> {
    let m = Builtin::ExampleIV { q: 0.3 }.build()?;
    let init = WalkerInit::origin();
    for s in 1..=4u32 {
        let limit = asymptotic_moment(&m, &init, s)?;
        print!("s={s} limit={limit:+.6}");
        for n in [10, 40, 160] {
            let scaled = moment(&m, &init, n, s)? / (n as f64).powi(s as i32);
            print!("  n={n}: {scaled:+.6}");
        }
        println!();
    }
    Ok(())
}
