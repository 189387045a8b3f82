//! Symmetric n-funnel surfaces need their inner generator parameters tuned
//! so that equivalent waists have equal circumference; the solver bisects
//! each inner parameter against its separating waist word until fixed point.

use schottky_resonances::schottky::n_funnel;

fn main() -> schottky_resonances::Result<()> {
    for widths in [vec![3.0; 4], vec![1.0; 4], vec![10.0; 6]] {
        let data = n_funnel(&widths, None)?;
        println!(
            "{} funnels of width {}: q = {}, valid = {}",
            widths.len(),
            widths[0],
            data.q(),
            data.validate().is_empty()
        );
        for k in 1..=data.q() as i32 {
            let lk = data.generator(k).translation_length()?;
            print!("  l_{k} = {lk:.9}");
            if k >= 2 && k <= data.q() as i32 - 1 {
                let word = data.generator(k - 1).compose(&data.generator(-(k + 1)));
                print!("   waist word length = {:.9}", word.translation_length()?);
            }
            println!();
        }
    }
    Ok(())
}
