//! Resonances of the symmetric three-funnel surface X(10,10,10) near the
//! critical line, with the largest real zero (the Hausdorff dimension of the
//! limit set) located first by real-axis bisection.

use schottky_resonances::schottky::three_funnel;
use schottky_resonances::transfer::lparts;
use schottky_resonances::zeros::{find_resonances, largest_real_zero, SearchOptions, Window};

fn main() -> schottky_resonances::Result<()> {
    let data = three_funnel(10.0, 10.0, 10.0)?;
    let parts = lparts(&data, 16, 1)?;

    let delta = largest_real_zero(&parts, 0.9, 0.01, 0.02, 1e-9)
        .expect("a real zero below 0.9");
    println!("largest real zero (limit-set dimension): delta = {delta:.9}");

    let window = Window::new(-0.2, delta + 0.05, -2.0, 2.0)?;
    let set = find_resonances(&parts, &SearchOptions::new(window))?;
    println!("{} resonances in [{}, {}] x [-2, 2]:", set.resonances.len(), -0.2, delta + 0.05);
    for r in &set.resonances {
        println!("  {:+.9}{:+.9}i   residual {:.1e}", r.s.re, r.s.im, r.residual);
    }
    println!("(conjugate pairs appear symmetrically; the chain near Re s = delta is visible)");
    Ok(())
}
