//! Sorts every built-in walk into classical and non-classical by the
//! `φ₊` dependence of its kernel.

use qorw::walk::{classicality_test, Builtin};

fn main() -> qorw::Result<()> {
    for b in Builtin::catalogue() {
        let m = b.build()?;
        let r = classicality_test(&m, 64, 1e-10)?;
        let verdict = if r.classical { "classical" } else { "non-classical" };
        println!("{:<12} k={} {:<14} variation={:.2e}", b.to_string(), m.k(), verdict, r.max_variation);
    }
    Ok(())
}
