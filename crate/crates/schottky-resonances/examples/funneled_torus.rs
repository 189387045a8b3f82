//! A funneled torus Y(l1, l2, phi). The natural generators put one disk
//! around infinity, so both are conjugated by a rotation (pi/8 by default)
//! before the interval data is read off. Too-short geodesics make the disks
//! overlap, which validation reports rather than silently accepting.

use schottky_resonances::schottky::funneled_torus;
use schottky_resonances::transfer::lparts;
use schottky_resonances::zeros::{find_resonances, SearchOptions, Window};

fn main() -> schottky_resonances::Result<()> {
    let phi = std::f64::consts::FRAC_PI_2;
    match funneled_torus(1.0, 1.0, phi) {
        Err(e) => println!("Y(1,1,pi/2) is rejected as expected:\n  {e}\n"),
        Ok(_) => println!("unexpected: tiny torus accepted\n"),
    }

    let data = funneled_torus(7.0, 7.0, phi)?;
    println!("Y(7,7,pi/2): q = {}, Euler characteristic = {}", data.q(), data.euler_characteristic());
    for k in data.ig() {
        let iv = data.interval(k);
        println!("  I_{k}: center {:+.6}, radius {:.6}", iv.center(), iv.radius());
    }

    let parts = lparts(&data, 16, 1)?;
    let window = Window::new(-0.1, 0.6, -1.5, 1.5)?;
    let set = find_resonances(&parts, &SearchOptions::new(window))?;
    println!("resonances with Re s > -0.1, |Im s| < 1.5:");
    for r in &set.resonances {
        println!("  {:+.9}{:+.9}i", r.s.re, r.s.im);
    }
    Ok(())
}
