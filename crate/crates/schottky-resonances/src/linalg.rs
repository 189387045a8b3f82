//! Dense row-major matrices and LU-based log-determinants.

use num_complex::Complex64;

pub trait Scalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    fn modulus(self) -> f64;
    fn argument(self) -> f64;
}

impl Scalar for f64 {
    const ZERO: f64 = 0.0;
    const ONE: f64 = 1.0;
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn argument(self) -> f64 {
        if self < 0.0 {
            std::f64::consts::PI
        } else {
            0.0
        }
    }
}

impl Scalar for Complex64 {
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn argument(self) -> f64 {
        self.arg()
    }
}

#[derive(Debug, Clone)]
pub struct Matrix<T: Scalar> {
    n: usize,
    data: Vec<T>,
}

pub type CMatrix = Matrix<Complex64>;
pub type RMatrix = Matrix<f64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![T::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = T::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                let orow = other.row(k);
                let row = out.row_mut(i);
                for j in 0..n {
                    row[j] = row[j] + aik * orow[j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut t = T::ZERO;
        for i in 0..self.n {
            t = t + self.get(i, i);
        }
        t
    }

    /// In-place LU factorization with partial pivoting, returning
    /// `(log|det|, arg det)`. The log-modulus is the sum of `ln|u_ii|`, the
    /// phase collects the pivot-swap parity and the arguments of the `u_ii`,
    /// wrapped to (-pi, pi]. An exactly zero pivot yields `-infinity`.
    pub fn log_det(mut self) -> (f64, f64) {
        let n = self.n;
        let mut log_mod = 0.0f64;
        let mut phase = 0.0f64;
        let mut swaps = 0usize;
        for k in 0..n {
            let mut p = k;
            let mut best = self.get(k, k).modulus();
            for i in k + 1..n {
                let v = self.get(i, k).modulus();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return (f64::NEG_INFINITY, 0.0);
            }
            if p != k {
                self.data.swap(p * n + k, k * n + k);
                for j in k + 1..n {
                    self.data.swap(p * n + j, k * n + j);
                }
                swaps += 1;
            }
            let pivot = self.get(k, k);
            log_mod += pivot.modulus().ln();
            phase += pivot.argument();
            let (head, tail) = self.data.split_at_mut((k + 1) * n);
            let prow = &head[k * n..(k + 1) * n];
            for i in k + 1..n {
                let off = i * n - (k + 1) * n;
                let row = &mut tail[off..off + n];
                let l = row[k] / pivot;
                row[k] = l;
                for j in k + 1..n {
                    row[j] = row[j] - l * prow[j];
                }
            }
        }
        if swaps % 2 == 1 {
            phase += std::f64::consts::PI;
        }
        (log_mod, wrap_phase(phase))
    }
}

/// Reduces an angle to the principal branch (-pi, pi].
pub fn wrap_phase(phi: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut p = phi % two_pi;
    if p <= -std::f64::consts::PI {
        p += two_pi;
    } else if p > std::f64::consts::PI {
        p -= two_pi;
    }
    p
}
