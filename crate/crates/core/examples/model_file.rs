//! Writes a custom walk as JSON, reads it back and evolves it.

use std::f64::consts::FRAC_PI_4;

use qorw::algebra::{DensityMatrix, KrausChannel};
use qorw::distribution::{probabilities, WalkerInit};
use qorw::walk::WalkModel;

fn main() -> qorw::Result<()> {
    let model = WalkModel::new(
        "damped_rotation",
        vec![
            KrausChannel::rotation(FRAC_PI_4),
            KrausChannel::amplitude_damping(0.2)?.compose(&KrausChannel::rotation(FRAC_PI_4))?,
        ],
        Some(KrausChannel::amplitude_damping(0.1)?),
        DensityMatrix::plus(),
    )?;
    let path = std::env::temp_dir().join("qorw_damped_rotation.json");
    std::fs::write(&path, model.to_json())?;
    let back = WalkModel::from_file(&path)?;
    println!("{}", std::fs::read_to_string(&path)?);
    let a = probabilities(&model, &WalkerInit::origin(), 6)?;
    let b = probabilities(&back, &WalkerInit::origin(), 6)?;
    println!("round trip max |Δp| = {:.1e}", a.max_abs_diff(&b));
    Ok(())
}
