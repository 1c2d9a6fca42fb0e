//! Finite trigonometric series used to describe potentials and conjugations.

use std::f64::consts::TAU;

/// A real 1-D trigonometric polynomial
/// `a0 + sum_k [ cos_coeffs[k-1] cos(2 pi k x) + sin_coeffs[k-1] sin(2 pi k x) ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    pub a0: f64,
    pub cos_coeffs: Vec<f64>,
    pub sin_coeffs: Vec<f64>,
}

impl TrigSeries {
    pub fn new(a0: f64, cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Self {
        Self {
            a0,
            cos_coeffs,
            sin_coeffs,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, vec![], vec![])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.a0;
        for (k, &a) in self.cos_coeffs.iter().enumerate() {
            v += a * (TAU * (k + 1) as f64 * x).cos();
        }
        for (k, &b) in self.sin_coeffs.iter().enumerate() {
            v += b * (TAU * (k + 1) as f64 * x).sin();
        }
        v
    }

    pub fn d1(&self, x: f64) -> f64 {
        let mut v = 0.0;
        for (k, &a) in self.cos_coeffs.iter().enumerate() {
            let w = TAU * (k + 1) as f64;
            v -= a * w * (w * x).sin();
        }
        for (k, &b) in self.sin_coeffs.iter().enumerate() {
            let w = TAU * (k + 1) as f64;
            v += b * w * (w * x).cos();
        }
        v
    }

    pub fn d2(&self, x: f64) -> f64 {
        let mut v = 0.0;
        for (k, &a) in self.cos_coeffs.iter().enumerate() {
            let w = TAU * (k + 1) as f64;
            v -= a * w * w * (w * x).cos();
        }
        for (k, &b) in self.sin_coeffs.iter().enumerate() {
            let w = TAU * (k + 1) as f64;
            v -= b * w * w * (w * x).sin();
        }
        v
    }

    /// The series for `x -> f(x - shift)`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut cos_coeffs = vec![0.0; self.cos_coeffs.len().max(self.sin_coeffs.len())];
        let mut sin_coeffs = vec![0.0; cos_coeffs.len()];
        for k in 0..cos_coeffs.len() {
            let w = TAU * (k + 1) as f64;
            let (s, c) = (w * shift).sin_cos();
            let a = self.cos_coeffs.get(k).copied().unwrap_or(0.0);
            let b = self.sin_coeffs.get(k).copied().unwrap_or(0.0);
            // cos(w(x-s)) = cos wx cos ws + sin wx sin ws, same for sin
            cos_coeffs[k] = a * c - b * s;
            sin_coeffs[k] = a * s + b * c;
        }
        Self::new(self.a0, cos_coeffs, sin_coeffs)
    }
}

/// One term `amp * trig(2 pi wave . x)` of an n-dimensional trig polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    pub wave: Vec<i32>,
    /// `true` for cosine, `false` for sine.
    pub is_cos: bool,
}

/// An n-dimensional trigonometric polynomial with analytic gradient and Hessian.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    pub terms: Vec<TrigTerm>,
}

impl TrigPoly {
    pub fn new(terms: Vec<TrigTerm>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let phase = TAU * dot_wave(&t.wave, x);
                t.amp * if t.is_cos { phase.cos() } else { phase.sin() }
            })
            .sum()
    }

    pub fn grad(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for t in &self.terms {
            let phase = TAU * dot_wave(&t.wave, x);
            let d = t.amp * TAU * if t.is_cos { -phase.sin() } else { phase.cos() };
            for (o, &w) in out.iter_mut().zip(t.wave.iter()) {
                *o += d * w as f64;
            }
        }
    }

    /// Hessian in row-major order (`n x n`).
    pub fn hessian(&self, x: &[f64], out: &mut [f64]) {
        let n = x.len();
        out.fill(0.0);
        for t in &self.terms {
            let phase = TAU * dot_wave(&t.wave, x);
            let d2 = -t.amp * TAU * TAU * if t.is_cos { phase.cos() } else { phase.sin() };
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] += d2 * t.wave[i] as f64 * t.wave[j] as f64;
                }
            }
        }
    }
}

fn dot_wave(wave: &[i32], x: &[f64]) -> f64 {
    wave.iter().zip(x.iter()).map(|(&w, &xi)| w as f64 * xi).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn series_derivatives_match_finite_differences() {
        let f = TrigSeries::new(0.3, vec![0.5, -0.2], vec![0.1, 0.0, 0.7]);
        let h = 1e-6;
        for &x in &[0.0, 0.123, 0.5, 0.99] {
            let fd1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            let fd2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
            assert_abs_diff_eq!(f.d1(x), fd1, epsilon = 1e-6);
            assert_abs_diff_eq!(f.d2(x), fd2, epsilon = 1e-3);
        }
    }

    #[test]
    fn shifted_series_translates_the_graph() {
        let f = TrigSeries::new(1.0, vec![0.4], vec![-0.3, 0.2]);
        let g = f.shifted(0.3);
        for &x in &[0.0, 0.2, 0.77] {
            assert_abs_diff_eq!(g.eval(x), f.eval(x - 0.3), epsilon = 1e-14);
        }
    }

    #[test]
    fn poly_gradient_matches_finite_differences() {
        let u = TrigPoly::new(vec![
            TrigTerm { amp: 0.02, wave: vec![1, 0], is_cos: false },
            TrigTerm { amp: 0.03, wave: vec![0, 1], is_cos: true },
            TrigTerm { amp: -0.01, wave: vec![2, -1], is_cos: false },
        ]);
        let x = [0.21, 0.68];
        let mut g = [0.0; 2];
        u.grad(&x, &mut g);
        let h = 1e-6;
        for i in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let fd = (u.eval(&xp) - u.eval(&xm)) / (2.0 * h);
            assert_abs_diff_eq!(g[i], fd, epsilon = 1e-8);
        }
    }
}
