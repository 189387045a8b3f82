//! Chebyshev nodes, the Lagrange interpolation kernel and the N x N
//! sub-blocks of the discretized transfer operator.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::geometry::{DdInterval, Interval, MoebiusTransform};

/// Gauss-Chebyshev nodes `x_j = cos((2j - 1) pi / (2N))`, j = 1..N, strictly
/// decreasing, with the Chebyshev values `T_k(x_j)` tabulated once.
#[derive(Debug, Clone)]
pub struct ChebGrid {
    n: usize,
    nodes: Vec<f64>,
    /// `T_k(x_j)` stored k-major: `t[k * n + j]`.
    t_nodes: Vec<f64>,
    /// The same table in double-double precision, for block assembly. The
    /// f64 three-term recurrence drifts by O(k) ulps, which the determinant
    /// of a refined operator amplifies visibly.
    t_nodes_dd: Vec<Dd>,
}

impl ChebGrid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "order must be at least 1");
        let mut nodes = vec![0.0; n];
        // fill symmetrically so x_j = -x_{N+1-j} holds exactly
        for j in 1..=n / 2 {
            let x = ((2 * j - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            nodes[j - 1] = x;
            nodes[n - j] = -x;
        }
        let t_nodes = cheb_table(n, &nodes);
        let t_nodes_dd = cheb_table_dd(n, &nodes);
        ChebGrid { n, nodes, t_nodes, t_nodes_dd }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    fn t_row(&self, k: usize) -> &[f64] {
        &self.t_nodes[k * self.n..(k + 1) * self.n]
    }
}

/// Values `T_k(x)` for k = 0..n-1 at each `x` in `xs`, by the three-term
/// recurrence (stable near |x| = 1, unlike cos(k arccos x)).
fn cheb_table(n: usize, xs: &[f64]) -> Vec<f64> {
    let m = xs.len();
    let mut t = vec![0.0; n * m];
    t[..m].fill(1.0);
    if n > 1 {
        t[m..2 * m].copy_from_slice(xs);
    }
    for k in 2..n {
        for (j, &x) in xs.iter().enumerate() {
            t[k * m + j] = 2.0 * x * t[(k - 1) * m + j] - t[(k - 2) * m + j];
        }
    }
    t
}

fn cheb_table_dd(n: usize, xs: &[f64]) -> Vec<Dd> {
    let m = xs.len();
    let mut t = vec![Dd::ZERO; n * m];
    for v in &mut t[..m] {
        *v = Dd::new(1.0);
    }
    if n > 1 {
        for (j, &x) in xs.iter().enumerate() {
            t[m + j] = Dd::new(x);
        }
    }
    for k in 2..n {
        for (j, &x) in xs.iter().enumerate() {
            t[k * m + j] = Dd::new(2.0 * x) * t[(k - 1) * m + j] - t[(k - 2) * m + j];
        }
    }
    t
}

fn cheb_values_dd(n: usize, x: Dd) -> Vec<Dd> {
    let mut t = vec![Dd::ZERO; n];
    t[0] = Dd::new(1.0);
    if n > 1 {
        t[1] = x;
    }
    let two_x = x.scale(2.0);
    for k in 2..n {
        t[k] = two_x * t[k - 1] - t[k - 2];
    }
    t
}

fn cheb_values(n: usize, x: f64) -> Vec<f64> {
    let mut t = vec![0.0; n];
    t[0] = 1.0;
    if n > 1 {
        t[1] = x;
    }
    for k in 2..n {
        t[k] = 2.0 * x * t[k - 1] - t[k - 2];
    }
    t
}

/// The interpolation kernel
/// `K_N(x, y) = (1/N) [T_0(x) T_0(y) + 2 sum_{k=1}^{N-1} T_k(x) T_k(y)]`,
/// which satisfies `K_N(x_i, x_j) = delta_ij` on the nodes.
pub fn kernel(n: usize, x: f64, y: f64) -> f64 {
    let tx = cheb_values(n, x);
    let ty = cheb_values(n, y);
    let mut acc = tx[0] * ty[0];
    for k in 1..n {
        acc += 2.0 * tx[k] * ty[k];
    }
    acc / n as f64
}

/// Lagrange-Chebyshev interpolant through the node values of `interval`,
/// evaluated at `x`. Points outside the interval extrapolate.
pub fn interpolate(grid: &ChebGrid, values: &[f64], interval: Interval, x: f64) -> f64 {
    assert_eq!(values.len(), grid.order());
    let u = (x - interval.center()) / interval.radius();
    let tu = cheb_values(grid.order(), u);
    let mut acc = 0.0;
    for (j, &v) in values.iter().enumerate() {
        let mut k_uj = tu[0];
        for k in 1..grid.order() {
            k_uj += 2.0 * tu[k] * grid.t_row(k)[j];
        }
        acc += k_uj / grid.order() as f64 * v;
    }
    acc
}

/// Static parts of one transfer-operator block: derivative samples
/// `f_i = g'(c_v + r_v x_i)` (with their logs) and the kernel matrix
/// `m_ij = K_N[(g.(c_v + r_v x_i) - c_w)/r_w, x_j]`. The full block for
/// parameter s is `diag(f^s) m`.
#[derive(Debug, Clone)]
pub struct LBlock {
    pub f: Vec<f64>,
    /// `ln f_i` in double-double form, so the s-dependent weights
    /// `exp(s log f_i)` can be formed to full f64 accuracy.
    pub log_f: Vec<Dd>,
    /// Row-major N x N kernel samples.
    pub m: Vec<f64>,
}

/// Relative slack allowed before a mapped node counts as outside the target.
const CONTAINMENT_TOL: f64 = 1e-12;

/// Builds the sub-block for the pullback map `g`, asserting that every mapped
/// collocation point of `I_v` lands inside `I_w`.
pub fn lblock(
    grid: &ChebGrid,
    iv: Interval,
    iw: Interval,
    g: &MoebiusTransform,
) -> Result<LBlock> {
    lblock_dd(
        grid,
        &DdInterval::from_interval(iv),
        &DdInterval::from_interval(iw),
        g,
        &format!("[{}, {}]", iv.lo(), iv.hi()),
        &format!("[{}, {}]", iw.lo(), iw.hi()),
    )
}

pub(crate) fn lblock_dd(
    grid: &ChebGrid,
    iv: &DdInterval,
    iw: &DdInterval,
    g: &MoebiusTransform,
    v_label: &str,
    w_label: &str,
) -> Result<LBlock> {
    let n = grid.order();
    let mut f = Vec::with_capacity(n);
    let mut log_f = Vec::with_capacity(n);
    let mut m = vec![0.0; n * n];
    for (i, &xi) in grid.nodes().iter().enumerate() {
        let y = iv.center + iv.radius.scale(xi);
        let u = (g.apply_dd(y) - iw.center) / iw.radius;
        if u.to_f64().abs() > 1.0 + CONTAINMENT_TOL || !u.to_f64().is_finite() {
            return Err(Error::ContainmentViolation {
                v: v_label.to_string(),
                w: w_label.to_string(),
                excess: u.to_f64().abs() - 1.0,
            });
        }
        let den = g.linear_denominator_dd(y);
        let fi_dd = Dd::new(1.0) / (den * den);
        let fi = fi_dd.to_f64();
        if !(fi > 0.0) || !fi.is_finite() {
            return Err(Error::NonpositiveDerivative {
                v: v_label.to_string(),
                w: w_label.to_string(),
                x: y.to_f64(),
                value: fi,
            });
        }
        f.push(fi);
        log_f.push(den.abs().ln().scale(-2.0));
        let tu = cheb_values_dd(n, u);
        let inv_n = Dd::new(1.0).scale(1.0 / n as f64);
        let row = &mut m[i * n..(i + 1) * n];
        for (j, r) in row.iter_mut().enumerate() {
            let mut acc = Dd::new(1.0);
            for k in 1..n {
                acc = acc + (tu[k] * grid.t_nodes_dd[k * n + j]).scale(2.0);
            }
            *r = (acc * inv_n).to_f64();
        }
    }
    Ok(LBlock { f, log_f, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generator_s;
    use crate::schottky::hyperbolic_cylinder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nodes_decreasing_and_symmetric() {
        for n in 1..=24 {
            let g = ChebGrid::new(n);
            let xs = g.nodes();
            for j in 0..n {
                assert!(xs[j] > -1.0 && xs[j] < 1.0);
                assert_eq!(xs[j], -xs[n - 1 - j]);
                if j > 0 {
                    assert!(xs[j] < xs[j - 1]);
                }
            }
        }
    }

    #[test]
    fn kernel_node_delta() {
        for n in 1..=16 {
            let g = ChebGrid::new(n);
            for (i, &xi) in g.nodes().iter().enumerate() {
                for (j, &xj) in g.nodes().iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (kernel(n, xi, xj) - expect).abs() < 1e-10,
                        "N={n} i={i} j={j}: {}",
                        kernel(n, xi, xj)
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_order_one_is_constant() {
        for &(x, y) in &[(0.3, -0.9), (0.0, 0.0), (-1.0, 1.0)] {
            assert_eq!(kernel(1, x, y), 1.0);
        }
    }

    #[test]
    fn kernel_reproduces_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 12;
        let g = ChebGrid::new(n);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-1.0..1.0);
            let sum: f64 = g.nodes().iter().map(|&xj| kernel(n, x, xj)).sum();
            assert!((sum - 1.0).abs() < 1e-12, "sum = {sum}");
        }
    }

    #[test]
    fn interpolation_exact_on_low_degree_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 10;
        let grid = ChebGrid::new(n);
        let iv = Interval::new(0.7, 1.3).unwrap();
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let poly = |x: f64| {
            let u = (x - iv.center()) / iv.radius();
            coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
        };
        let values: Vec<f64> =
            grid.nodes().iter().map(|&x| poly(iv.center() + iv.radius() * x)).collect();
        let scale = values.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs()));
        for _ in 0..50 {
            let x = iv.center() + iv.radius() * rng.gen_range(-1.0..1.0);
            assert!((interpolate(&grid, &values, iv, x) - poly(x)).abs() < 1e-10 * scale);
        }
        // constants reproduce everywhere
        let threes = vec![3.5; n];
        assert!((interpolate(&grid, &threes, iv, 0.2) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn interpolation_spectral_accuracy_for_exp() {
        let iv = Interval::from_endpoints(0.0, 1.0).unwrap();
        let sup_err = |n: usize| {
            let grid = ChebGrid::new(n);
            let values: Vec<f64> =
                grid.nodes().iter().map(|&x| (iv.center() + iv.radius() * x).exp()).collect();
            let mut err = 0.0f64;
            for i in 0..100 {
                let x = i as f64 / 99.0;
                err = err.max((interpolate(&grid, &values, iv, x) - x.exp()).abs());
            }
            err
        };
        assert!(sup_err(16) < 1e-12);
        // geometric decay until roundoff
        assert!(sup_err(12) < 0.5 * sup_err(8));
    }

    #[test]
    fn dct_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 16;
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mu: Vec<f64> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / n as f64).cos()
                            * v[j]
                    })
                    .sum::<f64>()
                    / n as f64
            })
            .collect();
        for j in 0..n {
            let back: f64 = mu[0]
                + 2.0
                    * (1..n)
                        .map(|k| {
                            mu[k]
                                * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / n as f64)
                                    .cos()
                        })
                        .sum::<f64>();
            assert!((back - v[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn lblock_identity() {
        let grid = ChebGrid::new(8);
        let iv = Interval::new(0.3, 0.9).unwrap();
        let b = lblock(&grid, iv, iv, &MoebiusTransform::identity()).unwrap();
        for i in 0..8 {
            assert!((b.f[i] - 1.0).abs() < 1e-14);
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((b.m[i * 8 + j] - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn lblock_cylinder_contraction() {
        let data = hyperbolic_cylinder(4.0).unwrap();
        let grid = ChebGrid::new(12);
        // block (v, w) = ((1), (1)) of tau_s(S_1): pullback map S_{-1}
        let b = lblock(&grid, data.interval(1), data.interval(1), &data.generator(-1)).unwrap();
        for i in 0..12 {
            assert!(b.f[i] > 0.0 && b.f[i] < 1.0, "f = {}", b.f[i]);
            let row_sum: f64 = b.m[i * 12..(i + 1) * 12].iter().sum();
            assert!((row_sum - 1.0).abs() < 1e-10);
            assert!((b.log_f[i].to_f64() - b.f[i].ln()).abs() < 1e-13);
        }
    }

    #[test]
    fn lblock_rejects_escaping_points() {
        let grid = ChebGrid::new(6);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let shift = MoebiusTransform::new(1.0, 3.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            lblock(&grid, iv, iv, &shift),
            Err(Error::ContainmentViolation { .. })
        ));
        // S_1 maps I_1 outside of itself (it lands in I_{-1})
        let data = hyperbolic_cylinder(4.0).unwrap();
        assert!(lblock(&grid, data.interval(1), data.interval(1), &data.generator(1)).is_err());
        let _ = generator_s(4.0, 1.0).unwrap();
    }
}
