//! Cross-check of the two evaluations of Z(s): the collocation determinant
//! against the periodic-orbit expansion. Near and right of the critical line
//! the two agree to ~1e-14; far into Re s < 0 the truncated expansion
//! degrades (its terms grow before they decay, and the recursion cancels
//! catastrophically in double precision), which is precisely why the
//! determinant route is the one that reaches deep into the left half-plane.

use num_complex::Complex64;
use schottky_resonances::orbits::LengthSpectra;
use schottky_resonances::schottky::three_funnel;
use schottky_resonances::transfer::lparts;

fn main() -> schottky_resonances::Result<()> {
    let data = three_funnel(10.0, 10.0, 10.0)?;
    let parts = lparts(&data, 24, 1)?;
    let spectra = LengthSpectra::new(&data, 12)?;

    println!("{:>16} {:>28} {:>28} {:>12}", "s", "determinant", "orbit expansion", "|diff|");
    for &s in &[
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.3, 5.0),
        Complex64::new(0.1, 1.0),
        Complex64::new(-0.2, 2.0),
    ] {
        let z_det = parts.zeta(s)?.to_complex();
        let z_poe = spectra.zeta(s, 12);
        println!(
            "{:>16} {:>28} {:>28} {:>12.2e}",
            format!("{:+.2}{:+.2}i", s.re, s.im),
            format!("{:+.15}{:+.15}i", z_det.re, z_det.im),
            format!("{:+.15}{:+.15}i", z_poe.re, z_poe.im),
            (z_det - z_poe).norm()
        );
    }
    Ok(())
}
