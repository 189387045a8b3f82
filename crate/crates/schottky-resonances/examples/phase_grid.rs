//! Writes log|Z| and arg Z on a rectangle around a multiplicity-2 resonance
//! of the symmetric surface X(7,7,7) - the data behind a phase plot: around
//! a double zero the phase wheel is traversed twice. Output goes to the
//! given path (default phase_grid.csv).

use num_complex::Complex64;
use schottky_resonances::schottky::three_funnel;
use schottky_resonances::transfer::lparts;
use schottky_resonances::zeros::multiplicity;
use std::io::Write;

fn main() -> schottky_resonances::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "phase_grid.csv".into());
    let data = three_funnel(7.0, 7.0, 7.0)?;
    let parts = lparts(&data, 14, 1)?;

    // a known double zero of this surface (winding 2)
    let center = Complex64::new(0.000754, 0.904760);
    let w = multiplicity(&parts, center, 0.01, 64)?;
    println!("winding around {:+.6}{:+.6}i: {w}", center.re, center.im);

    let (nr, ni) = (61usize, 61usize);
    let (re0, re1) = (center.re - 0.05, center.re + 0.05);
    let (im0, im1) = (center.im - 0.05, center.im + 0.05);
    let mut out = String::from("re_s,im_s,log_abs_Z,arg_Z\n");
    for i in 0..nr {
        let re = re0 + (re1 - re0) * i as f64 / (nr - 1) as f64;
        for j in 0..ni {
            let im = im0 + (im1 - im0) * j as f64 / (ni - 1) as f64;
            let z = parts.zeta(Complex64::new(re, im))?;
            out.push_str(&format!("{re},{im},{},{}\n", z.log_modulus, z.phase));
        }
    }
    std::fs::File::create(&path)?.write_all(out.as_bytes())?;
    println!("wrote {}x{} grid to {path}", nr, ni);
    Ok(())
}
