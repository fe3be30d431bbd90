//! Polynomials, root finding, reduction and partial fractions.

use dsf_minreal::ratcore::{
    format_value, poly_real_roots, rat_reduce, to_pole_residue, Polynomial, RationalFunction,
    RationalMatrix,
};
use dsf_minreal::Result;

fn main() -> Result<()> {
    let den = Polynomial::from_roots(&[-1.0, -2.0, -3.0]);
    let num = Polynomial::from_roots(&[-2.0]).scale(4.0);
    println!("den = {den}");
    let roots = poly_real_roots(&den, 1e-8)?;
    println!("roots of den: {:?}", roots.real);

    // The common factor (s + 2) cancels.
    let f = rat_reduce(num, den, 1e-8)?;
    println!("reduced: {f}");

    let g = RationalFunction::first_order(1.0, -3.0);
    let m = RationalMatrix::new(1, 2, vec![f.clone(), f.add(&g, 1e-8)?])?;
    let prf = to_pole_residue(&m, 1e-6, 1e-8)?;
    for (pole, k) in prf.poles.iter().zip(&prf.residues) {
        let row: Vec<String> = k.iter().map(|&x| format_value(x)).collect();
        println!("pole {}: residue [{}]", format_value(*pole), row.join(", "));
    }
    Ok(())
}
