//! The hyperbolic cylinder is the one surface whose zeta function has a
//! closed product form, so the computed zeros can be checked against an
//! exact lattice: s = -k + (2 pi / l) i m, each seen with winding number 2
//! because the symbolic coding counts both orientations of the one closed
//! geodesic.

use num_complex::Complex64;
use schottky_resonances::schottky::hyperbolic_cylinder;
use schottky_resonances::transfer::lparts;
use schottky_resonances::zeros::{find_resonances, SearchOptions, Window};

fn main() -> schottky_resonances::Result<()> {
    let l = 4.0;
    let data = hyperbolic_cylinder(l)?;
    let parts = lparts(&data, 16, 0)?;

    let window = Window::new(-2.1, 1.0, -4.0, 4.0)?;
    let mut opts = SearchOptions::new(window);
    opts.spacing = 0.1;
    opts.multiplicity = true;
    opts.radius_cap = 0.1;
    let set = find_resonances(&parts, &opts)?;

    println!("cylinder l = {l}: {} zeros in the window", set.resonances.len());
    println!("{:>24} {:>12} {:>9} {:>12}", "s", "residual", "winding", "|s - exact|");
    for r in &set.resonances {
        let k = (-r.s.re).round();
        let m = (r.s.im / (2.0 * std::f64::consts::PI / l)).round();
        let exact = Complex64::new(-k, m * 2.0 * std::f64::consts::PI / l);
        println!(
            "{:>24} {:>12.2e} {:>9} {:>12.2e}",
            format!("{:+.6}{:+.6}i", r.s.re, r.s.im),
            r.residual,
            r.multiplicity.map_or("?".into(), |w| w.to_string()),
            (r.s - exact).norm()
        );
    }
    Ok(())
}
