//! The symbolic length spectrum: every cyclically admissible word up to a
//! given length, with the geodesic length of its group element. Each
//! unoriented geodesic appears once per orientation and once per cyclic
//! representative of its word.

use schottky_resonances::orbits::orbits;
use schottky_resonances::schottky::three_funnel;

fn main() -> schottky_resonances::Result<()> {
    let data = three_funnel(6.0, 6.0, 6.0)?;
    let mut all = Vec::new();
    for k in 1..=4 {
        all.extend(orbits(&data, k)?);
    }
    all.sort_by(|a, b| a.length.partial_cmp(&b.length).unwrap());

    println!("shortest closed orbits of X(6,6,6) up to 4 letters:");
    println!("{:>6} {:>16} {:>14} {:>16}", "k", "word", "length", "trace");
    for o in all.iter().take(20) {
        let word: Vec<String> = o.word.iter().map(|c| c.to_string()).collect();
        println!(
            "{:>6} {:>16} {:>14.9} {:>16.6}",
            o.word.len(),
            word.join(" "),
            o.length,
            o.trace
        );
    }
    println!("... ({} orbits total)", all.len());
    Ok(())
}
