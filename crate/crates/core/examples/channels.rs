//! Builds the standard coin channels, checks completeness and applies them to `|+⟩⟨+|`.

use std::f64::consts::FRAC_PI_4;

use qorw::algebra::{rotation_unitary, DensityMatrix, KrausChannel};

fn main() -> qorw::Result<()> {
    let channels = [
        KrausChannel::rotation(FRAC_PI_4),
        KrausChannel::amplitude_damping(0.4)?,
        KrausChannel::amplitude_damping_from_rate(2.0, 0.25)?,
        KrausChannel::mixing(&rotation_unitary(FRAC_PI_4), 0.5)?,
        KrausChannel::amplitude_damping(0.4)?.compose(&KrausChannel::rotation(FRAC_PI_4))?,
    ];
    let plus = DensityMatrix::plus();
    for ch in &channels {
        let report = ch.validate();
        let out = ch.apply(&plus)?;
        let m = out.matrix();
        println!(
            "{:<18} kraus={} cptp={} dev={:.1e}  ρ00={:.4} ρ01={:.4}",
            ch.label(),
            ch.kraus().len(),
            report.pass,
            report.deviation,
            m[(0, 0)].re,
            m[(0, 1)],
        );
    }
    Ok(())
}
