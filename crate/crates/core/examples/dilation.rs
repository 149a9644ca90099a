//! The ancilla dilation of one averaged walk step, compared with the
//! direct channel at a handful of phases.

use qorw::algebra::DensityMatrix;
use qorw::distribution::WalkerInit;
use qorw::simulation::{build_h, build_w, dilated_eps_phi, eps_phi, SimulatorSpec};
use qorw::walk::Builtin;

fn main() -> qorw::Result<()> {
    let m = Builtin::ExampleII.build()?;
    let spec = SimulatorSpec::new(&m, 1, &WalkerInit::origin())?;
    let coin = DensityMatrix::pure(&[0.6.into(), 0.8.into()])?;
    for phi in [0.0, 0.4, 1.3, 2.9] {
        let w = build_w(&spec, phi)?;
        let h = build_h(&spec, phi)?;
        let direct = eps_phi(&spec, &coin, phi);
        let dilated = dilated_eps_phi(&spec, std::slice::from_ref(&coin), phi)?;
        println!(
            "φ={phi:.1}  |W W† − 1|={:.1e}  |H + H†|={:.1e}  |ε_dil − ε|={:.1e}",
            w.unitarity_deviation(),
            (&h + &h.adjoint()).max_abs(),
            dilated.max_abs_diff(direct.matrix()),
        );
    }
    Ok(())
}
