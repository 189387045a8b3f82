//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line. Criterion 5 is long-running and ignored by default;
//! run it with `cargo test --test acceptance -- --ignored`.

use num_complex::Complex64;
use std::time::Instant;

use schottky_resonances::chebyshev::{kernel, ChebGrid};
use schottky_resonances::orbits::LengthSpectra;
use schottky_resonances::refinement::{block_partners, index_set, Word};
use schottky_resonances::schottky::{hyperbolic_cylinder, n_funnel, three_funnel};
use schottky_resonances::transfer::{lparts, ScaledComplex};
use schottky_resonances::zeros::{
    find_resonances, largest_real_zero, multiplicity, scan_line, NewtonConfig, SearchOptions,
    Window,
};

fn report(criterion: &str, pass: bool, detail: &str, elapsed: f64) -> bool {
    println!(
        "criterion {criterion}: {} — {detail} ({elapsed:.1} s)",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

/// `log(1 - e^w)`, stable over the whole plane.
fn log1m_exp(w: Complex64) -> Complex64 {
    if w.re > 50.0 {
        w + Complex64::new(0.0, std::f64::consts::PI) + (1.0 - (-w).exp()).ln()
    } else if w.re < -50.0 {
        -w.exp()
    } else {
        (1.0 - w.exp()).ln()
    }
}

/// Truncated product over the cylinder coding's orbit lengths: both
/// orientations of the single closed geodesic enter, so each factor is
/// squared. Independent of the operator discretization.
fn cylinder_product(l: f64, factors: usize) -> impl Fn(Complex64) -> Option<ScaledComplex> {
    move |s: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..factors {
            acc += 2.0 * log1m_exp(-(s + k as f64) * l);
        }
        Some(ScaledComplex::new(acc.re, acc.im))
    }
}

/// Greedy nearest-neighbour bijection; `None` if the counts differ, the
/// largest matched distance otherwise.
fn match_sets(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let (mut best, mut bi) = (f64::INFINITY, usize::MAX);
        for (i, &y) in b.iter().enumerate() {
            if !used[i] && (x - y).norm() < best {
                best = (x - y).norm();
                bi = i;
            }
        }
        used[bi] = true;
        worst = worst.max(best);
    }
    Some(worst)
}

#[test]
fn criterion_1_cylinder_lattice() {
    let t0 = Instant::now();
    let data = hyperbolic_cylinder(4.0).unwrap();
    let parts = lparts(&data, 16, 0).unwrap();
    let window = Window::new(-2.1, 1.0, -6.5, 6.5).unwrap();
    let cfg = NewtonConfig::default();
    let scan = |eval: &dyn schottky_resonances::zeros::ZetaEvaluator| {
        scan_line(eval, window.re_min, (-6.5, 6.5), 0.05, &window, &cfg, 1e-6)
    };
    let found = scan(&parts);
    let oracle_eval = cylinder_product(4.0, 40);
    let oracle = scan(&oracle_eval);

    // expected lattice: -k + (2 pi / 4) i m, k in {0,1,2}, |m| <= 4
    let lattice: Vec<Complex64> = (0..3)
        .flat_map(|k| {
            (-4..=4).map(move |m| {
                Complex64::new(-(k as f64), m as f64 * std::f64::consts::FRAC_PI_2)
            })
        })
        .collect();

    let found_s: Vec<Complex64> = found.iter().map(|r| r.s).collect();
    let oracle_s: Vec<Complex64> = oracle.iter().map(|r| r.s).collect();
    let vs_oracle = match_sets(&found_s, &oracle_s);
    let oracle_vs_lattice = match_sets(&oracle_s, &lattice);

    let mut windings = Vec::new();
    for r in &found {
        windings.push(multiplicity(&parts, r.s, 0.15, 64).unwrap());
    }
    let constant_winding = windings.windows(2).all(|w| w[0] == w[1]);

    let pass = found.len() == 27
        && oracle.len() == 27
        && vs_oracle.map_or(false, |d| d < 1e-8)
        && oracle_vs_lattice.map_or(false, |d| d < 1e-8)
        && constant_winding;
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report(
            "1",
            pass,
            &format!(
                "{} zeros (expect 27), max |lattice - product oracle zeros| = {:.2e}, \
                 max |pipeline - oracle| = {:.2e}, winding constant = {} (value {})",
                found.len(),
                oracle_vs_lattice.unwrap_or(f64::NAN),
                vs_oracle.unwrap_or(f64::NAN),
                constant_winding,
                windings.first().copied().unwrap_or(0),
            ),
            elapsed
        ),
        "cylinder lattice mismatch"
    );
    assert!(elapsed < 10.0, "criterion 1 runtime {elapsed:.1} s exceeds 10 s");
}

#[test]
fn criterion_2_cross_method_equivalence() {
    let t0 = Instant::now();
    let data = three_funnel(10.0, 10.0, 10.0).unwrap();
    let parts = lparts(&data, 24, 1).unwrap();
    let spectra = LengthSpectra::new(&data, 12).unwrap();
    let points = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.3, 5.0),
        Complex64::new(-0.5, 2.0),
    ];
    let mut all_pass = true;
    let mut details = Vec::new();
    for &s in &points {
        let z_lc = parts.zeta(s).unwrap().to_complex();
        let z_poe = spectra.zeta(s, 12);
        let diff = (z_lc - z_poe).norm();
        let pass = diff < 1e-6;
        all_pass &= pass;
        details.push(format!(
            "s = {}{:+}i: |diff| = {:.3e} {}",
            s.re,
            s.im,
            diff,
            if pass { "pass" } else { "FAIL" }
        ));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let pass = report("2", all_pass, &details.join("; "), elapsed);
    assert!(elapsed < 30.0, "criterion 2 runtime {elapsed:.1} s exceeds 30 s");
    // The third point sits left of the imaginary axis, where the orbit
    // expansion truncated at order 12 has not converged and its recursion
    // sums terms near 1e27 whose double-precision round-off dwarfs the
    // target tolerance. The criterion is asserted as stated.
    assert!(pass, "cross-method equivalence failed: {}", details.join("; "));
}

#[test]
fn criterion_3_discretization_stability() {
    let t0 = Instant::now();
    let data = three_funnel(10.0, 10.0, 10.0).unwrap();
    let p16 = lparts(&data, 16, 1).unwrap();
    let p32 = lparts(&data, 32, 1).unwrap();
    let p24 = lparts(&data, 24, 1).unwrap();
    let p24r2 = lparts(&data, 24, 2).unwrap();
    let points = [
        Complex64::new(0.3, 0.0),
        Complex64::new(0.3, 5.0),
        Complex64::new(-0.5, 2.0),
    ];
    let mut worst_n = 0.0f64;
    let mut worst_r = 0.0f64;
    for &s in &points {
        let z16 = p16.zeta(s).unwrap();
        let z32 = p32.zeta(s).unwrap();
        let z24 = p24.zeta(s).unwrap();
        let z24r2 = p24r2.zeta(s).unwrap();
        // compare as complex values with the common exponential offset removed
        let offset = z24.log_modulus;
        worst_n = worst_n.max((z16.rescaled(offset) - z32.rescaled(offset)).norm());
        worst_r = worst_r.max((z24.rescaled(offset) - z24r2.rescaled(offset)).norm());
    }
    let pass = worst_n < 1e-8 && worst_r < 1e-8;
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report(
            "3",
            pass,
            &format!("max |Z_16 - Z_32| = {worst_n:.2e}, max |Z_(n=1) - Z_(n=2)| = {worst_r:.2e}"),
            elapsed
        ),
        "discretization stability violated"
    );
    assert!(elapsed < 120.0, "criterion 3 runtime {elapsed:.1} s exceeds 2 min");
}

#[test]
fn criterion_4_waist_tuning_anchor() {
    let t0 = Instant::now();
    let data = n_funnel(&[3.0, 3.0, 3.0, 3.0], None).unwrap();
    let l2 = data.generator(2).translation_length().unwrap();
    let pass = (l2 - 4.853373).abs() < 1e-5;
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report("4", pass, &format!("inner l_2 = {l2:.9} (target 4.853373 +- 1e-5)"), elapsed),
        "waist anchor missed: l2 = {l2}"
    );
    assert!(elapsed < 5.0, "criterion 4 runtime {elapsed:.1} s exceeds 5 s");
}

/// Long-running stretch target; excluded from the default suite.
#[test]
#[ignore = "minutes-scale: Hausdorff-dimension anchor at refinement level 3"]
fn criterion_5_hausdorff_dimension_anchor() {
    let t0 = Instant::now();
    let data = n_funnel(&[1.0, 1.0, 1.0, 1.0], None).unwrap();
    let parts = lparts(&data, 6, 3).unwrap();
    let delta = largest_real_zero(&parts, 0.88, 0.80, 0.01, 1e-5).unwrap();
    let pass = (delta - 0.86076).abs() < 5e-4;
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report("5", pass, &format!("delta = {delta:.6} (target 0.86076 +- 5e-4)"), elapsed),
        "Hausdorff anchor missed: delta = {delta}"
    );
}

#[test]
fn criterion_6_multiplicity_observation() {
    let t0 = Instant::now();
    // symmetric surface: some resonances wind twice
    let data = three_funnel(7.0, 7.0, 7.0).unwrap();
    let parts = lparts(&data, 12, 1).unwrap();
    let window = Window::new(-0.3, 0.19, 0.5, 2.0).unwrap();
    let mut opts = SearchOptions::new(window);
    opts.multiplicity = true;
    let set = find_resonances(&parts, &opts).unwrap();
    let doubles = set
        .resonances
        .iter()
        .filter(|r| !r.topological && r.multiplicity == Some(2))
        .count();
    let symmetric_has_double = doubles >= 1;

    // slightly asymmetric surface: every resonance is simple
    let data = three_funnel(10.0, 10.0, 10.2).unwrap();
    let parts = lparts(&data, 12, 1).unwrap();
    let window = Window::new(-0.8, 0.3, 0.0, 2.6).unwrap();
    let mut opts = SearchOptions::new(window);
    opts.spacing = 0.02;
    opts.multiplicity = true;
    // the zero at the origin is a flagged topological zero of higher order,
    // not a resonance; the simplicity claim concerns the resonances
    let set = find_resonances(&parts, &opts).unwrap();
    let n_found = set.resonances.iter().filter(|r| !r.topological).count();
    let all_simple = n_found > 10
        && set
            .resonances
            .iter()
            .filter(|r| !r.topological)
            .all(|r| r.multiplicity == Some(1));

    let pass = symmetric_has_double && all_simple;
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report(
            "6",
            pass,
            &format!(
                "X(7,7,7): {doubles} double zero(s) in window; \
                 X(10,10,10.2): {n_found} zeros, all simple = {all_simple}"
            ),
            elapsed
        ),
        "multiplicity observation failed"
    );
    assert!(elapsed < 300.0, "criterion 6 runtime {elapsed:.1} s exceeds 5 min");
}

#[test]
fn criterion_7_invariant_suites() {
    let t0 = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // word-set cardinality vs brute force, q <= 4, n <= 4
    'words: for q in 1..=4usize {
        for n in 0..=4usize {
            let ws = index_set(q, n);
            if ws.len() != 2 * q * (2 * q - 1).pow(n as u32) {
                failures.push(format!("|W_{n}| wrong for q={q}"));
                break 'words;
            }
            let brute = brute_force_words(q, n);
            let ours: std::collections::HashSet<Vec<i32>> =
                ws.iter().map(|w| w.letters().to_vec()).collect();
            if ours != brute {
                failures.push(format!("W_{n} mismatch vs brute force for q={q}"));
                break 'words;
            }
        }
    }

    // kernel node-delta property
    'kern: for n in 1..=16usize {
        let grid = ChebGrid::new(n);
        for (i, &xi) in grid.nodes().iter().enumerate() {
            for (j, &xj) in grid.nodes().iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (kernel(n, xi, xj) - expect).abs() > 1e-10 {
                    failures.push(format!("kernel delta fails at N={n}"));
                    break 'kern;
                }
            }
        }
    }

    // degree-(N-1) polynomial reproduction
    {
        use schottky_resonances::chebyshev::interpolate;
        use schottky_resonances::geometry::Interval;
        let n = 12;
        let grid = ChebGrid::new(n);
        let iv = Interval::new(-0.4, 2.1).unwrap();
        let coeffs: Vec<f64> = (0..n).map(|k| ((k * 2654435761 + 1) % 1000) as f64 / 500.0 - 1.0).collect();
        let poly = |x: f64| {
            let u = (x - iv.center()) / iv.radius();
            coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
        };
        let values: Vec<f64> =
            grid.nodes().iter().map(|&x| poly(iv.center() + iv.radius() * x)).collect();
        let scale = values.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        for i in 0..50 {
            let x = iv.lo() + iv.radius() * 2.0 * i as f64 / 49.0;
            if (interpolate(&grid, &values, iv, x) - poly(x)).abs() > 1e-10 * scale {
                failures.push("polynomial reproduction fails".into());
                break;
            }
        }
    }

    // Schwarz reflection of the determinant
    {
        let data = three_funnel(10.0, 10.0, 10.0).unwrap();
        let parts = lparts(&data, 12, 1).unwrap();
        for i in 0..20 {
            let s = Complex64::new(-0.4 + 0.07 * i as f64, 0.2 + 0.17 * i as f64);
            let z = parts.zeta(s).unwrap();
            let zc = parts.zeta(s.conj()).unwrap();
            let lm_ok =
                (z.log_modulus - zc.log_modulus).abs() < 1e-9 * (1.0 + z.log_modulus.abs());
            let ph_ok =
                schottky_resonances::linalg::wrap_phase(z.phase + zc.phase).abs() < 1e-7;
            if !lm_ok || !ph_ok {
                failures.push(format!("Schwarz reflection fails at s = {s}"));
                break;
            }
        }
    }

    // conjugation-symmetric resonance set
    {
        let data = three_funnel(6.0, 6.0, 6.0).unwrap();
        let parts = lparts(&data, 10, 1).unwrap();
        let window = Window::new(-0.8, 0.4, -2.0, 2.0).unwrap();
        let cfg = NewtonConfig::default();
        let found = scan_line(&parts, -0.8, (-2.0, 2.0), 0.05, &window, &cfg, 1e-6);
        if found.is_empty() {
            failures.push("X(6,6,6) scan found nothing".into());
        }
        for r in &found {
            if !found.iter().any(|o| (o.s - r.s.conj()).norm() < 1e-6 * (1.0 + r.s.norm())) {
                failures.push(format!("unpaired zero {} in X(6,6,6) window", r.s));
                break;
            }
        }
    }

    // orbit counts vs brute force over all tuples
    {
        let surfaces = [
            hyperbolic_cylinder(4.0).unwrap(),
            three_funnel(10.0, 10.0, 10.0).unwrap(),
            n_funnel(&[3.0; 4], None).unwrap(),
        ];
        'orbits: for data in &surfaces {
            let q = data.q();
            for k in 1..=8usize {
                let got = schottky_resonances::orbits::orbits(data, k).unwrap().len();
                let brute = brute_force_orbit_count(q, k);
                let formula = ((2 * q as i64 - 1).pow(k as u32)
                    + q as i64
                    + (q as i64 - 1) * if k % 2 == 0 { 1 } else { -1 })
                    as usize;
                if got != brute || got != formula {
                    failures.push(format!(
                        "orbit count q={q} k={k}: enumerated {got}, brute {brute}, formula {formula}"
                    ));
                    break 'orbits;
                }
            }
        }
    }

    // sparsity pattern equals the displayed level-0 and level-1 matrices
    {
        if let Some(msg) = sparsity_pattern_mismatch() {
            failures.push(msg);
        }
    }

    let pass = failures.is_empty();
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(
        report(
            "7",
            pass,
            &if pass {
                "word counts, kernel delta, polynomial reproduction, Schwarz reflection, \
                 conjugation symmetry, orbit counts, sparsity patterns"
                    .to_string()
            } else {
                failures.join("; ")
            },
            elapsed
        ),
        "invariant suite failures: {failures:?}"
    );
    assert!(elapsed < 30.0, "criterion 7 runtime {elapsed:.1} s exceeds 30 s");
}

fn brute_force_words(q: usize, n: usize) -> std::collections::HashSet<Vec<i32>> {
    let alphabet: Vec<i32> = (-(q as i32)..0).chain(1..=q as i32).collect();
    let mut tuples: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..=n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                alphabet.iter().map(move |&k| {
                    let mut t2 = t.clone();
                    t2.push(k);
                    t2
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .filter(|t| (1..n).all(|k| t[k] != -t[k - 1]) && (n == 0 || t[n] != t[n - 1]))
        .collect()
}

fn brute_force_orbit_count(q: usize, k: usize) -> usize {
    let alphabet: Vec<i32> = (-(q as i32)..0).chain(1..=q as i32).collect();
    let mut count = 0usize;
    let mut word = vec![0i32; k];
    fn rec(depth: usize, k: usize, word: &mut Vec<i32>, alphabet: &[i32], count: &mut usize) {
        if depth == k {
            if word[0] != -word[k - 1] {
                *count += 1;
            }
            return;
        }
        for &c in alphabet {
            if depth > 0 && c == -word[depth - 1] {
                continue;
            }
            word[depth] = c;
            rec(depth + 1, k, word, alphabet, count);
        }
    }
    rec(0, k, &mut word, &alphabet, &mut count);
    count
}

/// Nonzero pattern and coefficient letters of the displayed level-0 and
/// level-1 matrices for two generator pairs.
fn sparsity_pattern_mismatch() -> Option<String> {
    // level 0, rows and columns ordered (-2, -1, 1, 2); entry = coefficient
    // letter j of tau_s(S_j)
    let level0: [(i32, Vec<(i32, i32)>); 4] = [
        (-2, vec![(-2, -2), (-1, -1), (1, 1)]),
        (-1, vec![(-2, -2), (-1, -1), (2, 2)]),
        (1, vec![(-2, -2), (1, 1), (2, 2)]),
        (2, vec![(-1, -1), (1, 1), (2, 2)]),
    ];
    for (v, expected) in &level0 {
        let vw = Word::new(vec![*v], 2).unwrap();
        let partners = block_partners(2, &vw);
        let got: Vec<(i32, i32)> = partners
            .iter()
            .map(|w| (w.letters()[0], w.target()))
            .collect();
        let mut want: Vec<(i32, i32)> = expected.iter().map(|&(w, j)| (w, j)).collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        if got_sorted != want {
            return Some(format!("level-0 row {v}: got {got:?}, displayed {want:?}"));
        }
    }
    // level 1: function-vector order of the displayed matrix and its nonzero
    // columns (with coefficient letters) per row band
    let order: [(i32, i32); 12] = [
        (2, 1),
        (2, -2),
        (2, -1),
        (1, -2),
        (1, -1),
        (1, 2),
        (-1, -2),
        (-1, 1),
        (-1, 2),
        (-2, 1),
        (-2, 2),
        (-2, -1),
    ];
    // (row band first letter, [(column index 1-based, letter)])
    let bands: [(i32, Vec<(usize, i32)>); 4] = [
        (2, vec![(2, -2), (4, -1), (7, 1)]),
        (1, vec![(3, -2), (5, -1), (12, 2)]),
        (-1, vec![(1, -2), (8, 1), (10, 2)]),
        (-2, vec![(6, -1), (9, 1), (11, 2)]),
    ];
    for (row_first, cols) in &bands {
        for (vi, v) in order.iter().enumerate().filter(|(_, v)| v.0 == *row_first) {
            let vw = Word::new(vec![v.0, v.1], 2).unwrap();
            let partners = block_partners(2, &vw);
            // displayed: expected (column word, letter) pairs
            let mut want: Vec<(Vec<i32>, i32)> = cols
                .iter()
                .map(|&(c, j)| (vec![order[c - 1].0, order[c - 1].1], j))
                .collect();
            // ours: partner words with coefficient letter -w_1
            let mut got: Vec<(Vec<i32>, i32)> = partners
                .iter()
                .map(|w| (w.letters().to_vec(), -w.letters()[0]))
                .collect();
            want.sort();
            got.sort();
            if want != got {
                return Some(format!(
                    "level-1 row {vi} ({:?}): got {got:?}, displayed {want:?}",
                    v
                ));
            }
        }
    }
    None
}
