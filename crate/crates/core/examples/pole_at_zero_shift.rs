//! A structure function with an integrator. The residues of `s [Q P]` vanish
//! at `s = 0`, so the variable is shifted to `s - a` first.

use dsf_minreal::dsf::Dsf;
use dsf_minreal::minreal::{extract_modes, minreal_pipeline, MinrealOptions, ShiftMode};
use dsf_minreal::ratcore::{RationalFunction, RationalMatrix};
use dsf_minreal::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let q = RationalMatrix::new(
        2,
        2,
        vec![
            RationalFunction::zero(),
            RationalFunction::first_order(2.0, -3.0),
            RationalFunction::first_order(1.0, -2.0),
            RationalFunction::zero(),
        ],
    )?;
    let p = RationalMatrix::new(
        2,
        1,
        vec![
            RationalFunction::first_order(1.0, 0.0),
            RationalFunction::zero(),
        ],
    )?;
    let d = Dsf::new(q, p)?;

    if let Err(e) = extract_modes(&d, ShiftMode::Fixed(0.0), &tol) {
        println!("without a shift: {e}");
    }
    for shift in [
        ShiftMode::Auto,
        ShiftMode::Fixed(5.0),
        ShiftMode::Fixed(-7.5),
    ] {
        let out = minreal_pipeline(
            &d,
            &MinrealOptions {
                shift,
                ..MinrealOptions::default()
            },
        )?;
        let r = &out.report;
        println!(
            "{shift:?}: a = {}, poles {:?}, phi = {}, order = {}, consistent = {}",
            r.shift, r.poles, r.phi, r.minimal_order, r.realizations[0].consistent
        );
    }
    Ok(())
}
