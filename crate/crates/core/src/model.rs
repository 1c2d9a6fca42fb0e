//! Hamiltonian/Lagrangian test families on the torus.
//!
//! Three kinds are supported:
//! * `Mechanical1d`: `H(x, p) = p^2/2 - F(x)` with a nonnegative trigonometric
//!   potential `F`, the setting with hyperbolic equilibria and separatrix.
//! * `QuadraticKam`: `H(x, p) = omega . q + |q|^2/2` with `q = p - c - u_x(x)`,
//!   built so that `v = u` solves the cell problem exactly and the flow on the
//!   invariant graph is conjugate to the linear flow with rotation `omega`.
//! * `GenericTonelli`: a black-box Hamiltonian evaluator; gradients by central
//!   differences and the Legendre transform by damped Newton.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::quad::adaptive_simpson;
use crate::torus::{circle_dist, wrap_unit, TorusPoint};
use crate::trig::{TrigPoly, TrigSeries, TrigTerm};

/// Finite-difference step for generic-model gradients.
const FD_STEP: f64 = 1e-6;
/// Newton tolerance for the generic Legendre transform.
const NEWTON_TOL: f64 = 1e-10;
const NEWTON_MAX_ITER: usize = 50;
/// Potentials are validated for nonnegativity on this many sample points.
const POSITIVITY_SAMPLES: usize = 10_000;

type HamFn = dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync;

/// Payload of a [`TonelliModel`].
#[derive(Clone)]
pub enum ModelKind {
    Mechanical1d { potential: TrigSeries },
    QuadraticKam {
        omega: Vec<f64>,
        offset: Vec<f64>,
        conjugation: TrigPoly,
    },
    GenericTonelli { hamiltonian: Arc<HamFn>, dim: usize },
}

impl fmt::Debug for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Mechanical1d { potential } => {
                f.debug_struct("Mechanical1d").field("potential", potential).finish()
            }
            ModelKind::QuadraticKam { omega, offset, conjugation } => f
                .debug_struct("QuadraticKam")
                .field("omega", omega)
                .field("offset", offset)
                .field("conjugation", conjugation)
                .finish(),
            ModelKind::GenericTonelli { dim, .. } => {
                f.debug_struct("GenericTonelli").field("dim", dim).finish()
            }
        }
    }
}

/// An evaluatable Tonelli Hamiltonian/Lagrangian pair.
#[derive(Debug, Clone)]
pub struct TonelliModel {
    kind: ModelKind,
    dim: usize,
    name: String,
}

/// Zeros of the potential and the actions of the separatrix arcs between them.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentActions {
    /// Ordered zeros of `F` in `[0, 1)`.
    pub zeros: Vec<f64>,
    /// `actions[i]` integrates `sqrt(2F)` over `[zeros[i], zeros[i+1]]`
    /// (wrapping around for the last segment).
    pub actions: Vec<f64>,
    pub c_minus: f64,
    pub c_plus: f64,
}

/// Which branch of the separatrix `p = +-sqrt(2F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl TonelliModel {
    /// Mechanical 1-D model `H = p^2/2 - F(x)`; checks `F >= 0` on a dense grid.
    pub fn mechanical_1d(name: &str, potential: TrigSeries) -> Result<Self> {
        for j in 0..POSITIVITY_SAMPLES {
            let x = j as f64 / POSITIVITY_SAMPLES as f64;
            let v = potential.eval(x);
            if v < -1e-12 {
                return Err(CoreError::Model(format!(
                    "potential is negative at x = {x:.6} (F = {v:.3e})"
                )));
            }
        }
        Ok(Self {
            kind: ModelKind::Mechanical1d { potential },
            dim: 1,
            name: name.to_string(),
        })
    }

    /// Quadratic model with a known exact solution `u` and rotation `omega`.
    ///
    /// `H(x, p) := omega . (p - c - u_x) + |p - c - u_x|^2 / 2`, so
    /// `H(x, c + u_x) = 0`: `u` solves the cell problem with `h(c) = 0` and the
    /// flow on `graph(c + u_x)` is `x' = omega`.
    pub fn quadratic_kam(
        name: &str,
        omega: &[f64],
        offset: &[f64],
        conjugation: TrigPoly,
    ) -> Result<Self> {
        let n = omega.len();
        if n == 0 || n > 2 || offset.len() != n {
            return Err(CoreError::Model("rotation/offset dimension must be 1 or 2".into()));
        }
        if omega.iter().map(|w| w * w).sum::<f64>() == 0.0 {
            return Err(CoreError::Model("rotation vector must be nonzero".into()));
        }
        if conjugation.terms.iter().any(|t| t.wave.len() != n) {
            return Err(CoreError::Model("conjugation wave vectors have wrong dimension".into()));
        }
        Ok(Self {
            kind: ModelKind::QuadraticKam {
                omega: omega.to_vec(),
                offset: offset.to_vec(),
                conjugation,
            },
            dim: n,
            name: name.to_string(),
        })
    }

    /// Wrap a black-box Hamiltonian. A spot convexity check (positive definite
    /// `H_pp` by finite differences at 32 pseudo-random states) runs at
    /// construction.
    pub fn generic(name: &str, dim: usize, hamiltonian: Arc<HamFn>) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(CoreError::Model("dimension must be 1 or 2".into()));
        }
        let model = Self {
            kind: ModelKind::GenericTonelli { hamiltonian, dim },
            dim,
            name: name.to_string(),
        };
        model.spot_convexity_check()?;
        Ok(model)
    }

    /// Named presets used throughout the studies.
    ///
    /// * `"F1"`: `F(x) = (pi^2/4)(1 - cos 2 pi x)`, single well, critical
    ///   values `+-2`.
    /// * `"F2"`: `F(x) = (1 + 0.5 sin 2 pi x)^2 sin^2(2 pi x)`, asymmetric
    ///   double well with distinct segment actions.
    /// * `"kam1d"`: `omega = 1`, `u = 0.05 sin 2 pi x`.
    /// * `"kam2d"`: `omega = (1, golden ratio)`,
    ///   `u = 0.02 sin 2 pi x1 + 0.03 cos 2 pi x2`.
    pub fn preset(name: &str) -> Result<Self> {
        let quarter_pi2 = std::f64::consts::PI * std::f64::consts::PI / 4.0;
        match name {
            "F1" => Self::mechanical_1d(
                "F1",
                TrigSeries::new(quarter_pi2, vec![-quarter_pi2], vec![]),
            ),
            "F2" => {
                // (1 + s/2)^2 s^2 with s = sin 2 pi x, expanded in harmonics
                Self::mechanical_1d(
                    "F2",
                    TrigSeries::new(
                        19.0 / 32.0,
                        vec![0.0, -5.0 / 8.0, 0.0, 1.0 / 32.0],
                        vec![3.0 / 4.0, 0.0, -1.0 / 4.0],
                    ),
                )
            }
            "kam1d" => Self::quadratic_kam(
                "kam1d",
                &[1.0],
                &[0.0],
                TrigPoly::new(vec![TrigTerm { amp: 0.05, wave: vec![1], is_cos: false }]),
            ),
            "kam2d" => Self::quadratic_kam(
                "kam2d",
                &[1.0, golden_ratio()],
                &[0.0, 0.0],
                TrigPoly::new(vec![
                    TrigTerm { amp: 0.02, wave: vec![1, 0], is_cos: false },
                    TrigTerm { amp: 0.03, wave: vec![0, 1], is_cos: true },
                ]),
            ),
            other => Err(CoreError::Model(format!("unknown preset '{other}'"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn is_mechanical(&self) -> bool {
        matches!(self.kind, ModelKind::Mechanical1d { .. })
    }

    /// Rotation vector of a quadratic-KAM model.
    pub fn kam_rotation(&self) -> Option<&[f64]> {
        match &self.kind {
            ModelKind::QuadraticKam { omega, .. } => Some(omega),
            _ => None,
        }
    }

    /// Momentum offset `c` recorded in a quadratic-KAM model.
    pub fn kam_offset(&self) -> Option<&[f64]> {
        match &self.kind {
            ModelKind::QuadraticKam { offset, .. } => Some(offset),
            _ => None,
        }
    }

    /// Exact solution `u` of the cell problem for a quadratic-KAM model.
    pub fn kam_exact_solution(&self, x: &[f64]) -> Option<f64> {
        match &self.kind {
            ModelKind::QuadraticKam { conjugation, .. } => Some(conjugation.eval(x)),
            _ => None,
        }
    }

    /// Potential of a mechanical model.
    pub fn potential(&self) -> Result<&TrigSeries> {
        match &self.kind {
            ModelKind::Mechanical1d { potential } => Ok(potential),
            _ => Err(CoreError::Model("operation requires a mechanical 1-D model".into())),
        }
    }

    /// `H(x, p)` together with `H_x` and `H_p`, written into the out slices.
    pub fn hamiltonian_into(
        &self,
        x: &[f64],
        p: &[f64],
        hx: &mut [f64],
        hp: &mut [f64],
    ) -> Result<f64> {
        if x.iter().chain(p.iter()).any(|v| !v.is_finite()) {
            return Err(CoreError::Domain("non-finite state in Hamiltonian evaluation".into()));
        }
        match &self.kind {
            ModelKind::Mechanical1d { potential } => {
                let h = 0.5 * p[0] * p[0] - potential.eval(x[0]);
                hx[0] = -potential.d1(x[0]);
                hp[0] = p[0];
                Ok(h)
            }
            ModelKind::QuadraticKam { omega, offset, conjugation } => {
                let n = self.dim;
                let mut ux = [0.0; 2];
                let mut hess = [0.0; 4];
                conjugation.grad(x, &mut ux[..n]);
                conjugation.hessian(x, &mut hess[..n * n]);
                let mut h = 0.0;
                let mut q = [0.0; 2];
                for i in 0..n {
                    q[i] = p[i] - offset[i] - ux[i];
                    h += omega[i] * q[i] + 0.5 * q[i] * q[i];
                    hp[i] = omega[i] + q[i];
                }
                for k in 0..n {
                    let mut v = 0.0;
                    for i in 0..n {
                        v -= (omega[i] + q[i]) * hess[i * n + k];
                    }
                    hx[k] = v;
                }
                Ok(h)
            }
            ModelKind::GenericTonelli { hamiltonian, .. } => {
                let h = hamiltonian(x, p);
                let n = self.dim;
                let mut xp = [0.0; 2];
                let mut xm = [0.0; 2];
                for k in 0..n {
                    xp[..n].copy_from_slice(x);
                    xm[..n].copy_from_slice(x);
                    xp[k] += FD_STEP;
                    xm[k] -= FD_STEP;
                    hx[k] = (hamiltonian(&xp[..n], p) - hamiltonian(&xm[..n], p)) / (2.0 * FD_STEP);
                    xp[..n].copy_from_slice(p);
                    xm[..n].copy_from_slice(p);
                    xp[k] += FD_STEP;
                    xm[k] -= FD_STEP;
                    hp[k] = (hamiltonian(x, &xp[..n]) - hamiltonian(x, &xm[..n])) / (2.0 * FD_STEP);
                }
                Ok(h)
            }
        }
    }

    /// Allocating convenience wrapper around [`Self::hamiltonian_into`].
    pub fn hamiltonian(&self, x: &TorusPoint, p: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
        let n = self.dim;
        let mut hx = vec![0.0; n];
        let mut hp = vec![0.0; n];
        let h = self.hamiltonian_into(x.coords(), p, &mut hx, &mut hp)?;
        Ok((h, hx, hp))
    }

    /// `H(x, p)` without gradients.
    pub fn hamiltonian_value(&self, x: &[f64], p: &[f64]) -> Result<f64> {
        let mut hx = [0.0; 2];
        let mut hp = [0.0; 2];
        let n = self.dim;
        self.hamiltonian_into(x, p, &mut hx[..n], &mut hp[..n])
    }

    /// `L(x, xi)` together with `L_x` and `L_xi`.
    ///
    /// Closed form for the mechanical and quadratic kinds; the generic kind
    /// inverts `H_p(x, p) = xi` by damped Newton seeded at `p = xi` and uses
    /// `L = xi . p - H`, `L_xi = p`, `L_x = -H_x`.
    pub fn lagrangian_into(
        &self,
        x: &[f64],
        xi: &[f64],
        lx: &mut [f64],
        lxi: &mut [f64],
    ) -> Result<f64> {
        if x.iter().chain(xi.iter()).any(|v| !v.is_finite()) {
            return Err(CoreError::Domain("non-finite state in Lagrangian evaluation".into()));
        }
        match &self.kind {
            ModelKind::Mechanical1d { potential } => {
                let l = 0.5 * xi[0] * xi[0] + potential.eval(x[0]);
                lx[0] = potential.d1(x[0]);
                lxi[0] = xi[0];
                Ok(l)
            }
            ModelKind::QuadraticKam { omega, offset, conjugation } => {
                let n = self.dim;
                let mut ux = [0.0; 2];
                let mut hess = [0.0; 4];
                conjugation.grad(x, &mut ux[..n]);
                conjugation.hessian(x, &mut hess[..n * n]);
                let mut l = 0.0;
                for i in 0..n {
                    let d = xi[i] - omega[i];
                    l += xi[i] * (offset[i] + ux[i]) + 0.5 * d * d;
                    lxi[i] = offset[i] + ux[i] + d;
                }
                for k in 0..n {
                    let mut v = 0.0;
                    for i in 0..n {
                        v += xi[i] * hess[i * n + k];
                    }
                    lx[k] = v;
                }
                Ok(l)
            }
            ModelKind::GenericTonelli { .. } => {
                let n = self.dim;
                let mut p = [0.0; 2];
                p[..n].copy_from_slice(xi);
                self.invert_velocity(x, xi, &mut p[..n])?;
                let mut hx = [0.0; 2];
                let mut hp = [0.0; 2];
                let h = self.hamiltonian_into(x, &p[..n], &mut hx[..n], &mut hp[..n])?;
                let mut l = -h;
                for i in 0..n {
                    l += xi[i] * p[i];
                    lxi[i] = p[i];
                    lx[i] = -hx[i];
                }
                Ok(l)
            }
        }
    }

    /// Allocating convenience wrapper around [`Self::lagrangian_into`].
    pub fn lagrangian(&self, x: &TorusPoint, xi: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
        let n = self.dim;
        let mut lx = vec![0.0; n];
        let mut lxi = vec![0.0; n];
        let l = self.lagrangian_into(x.coords(), xi, &mut lx, &mut lxi)?;
        Ok((l, lx, lxi))
    }

    /// Damped Newton for `H_p(x, p) = xi`, writing the momentum into `p`.
    fn invert_velocity(&self, x: &[f64], xi: &[f64], p: &mut [f64]) -> Result<()> {
        let n = self.dim;
        let mut hx = [0.0; 2];
        let mut hp = [0.0; 2];
        let mut residual = f64::INFINITY;
        for _ in 0..NEWTON_MAX_ITER {
            self.hamiltonian_into(x, p, &mut hx[..n], &mut hp[..n])?;
            let mut r = [0.0; 2];
            for i in 0..n {
                r[i] = hp[i] - xi[i];
            }
            residual = norm(&r[..n]);
            if residual < NEWTON_TOL {
                return Ok(());
            }
            // Jacobian H_pp by forward differences of H_p
            let mut jac = [0.0; 4];
            let mut hp2 = [0.0; 2];
            let mut pp = [0.0; 2];
            for k in 0..n {
                pp[..n].copy_from_slice(p);
                pp[k] += FD_STEP;
                self.hamiltonian_into(x, &pp[..n], &mut hx[..n], &mut hp2[..n])?;
                for i in 0..n {
                    jac[i * n + k] = (hp2[i] - hp[i]) / FD_STEP;
                }
            }
            let step = solve_small(&jac[..n * n], &r[..n], n)?;
            // damping: halve until the residual decreases
            let mut lambda = 1.0;
            let mut accepted = false;
            for _ in 0..20 {
                let mut cand = [0.0; 2];
                for i in 0..n {
                    cand[i] = p[i] - lambda * step[i];
                }
                self.hamiltonian_into(x, &cand[..n], &mut hx[..n], &mut hp2[..n])?;
                let mut r2 = [0.0; 2];
                for i in 0..n {
                    r2[i] = hp2[i] - xi[i];
                }
                if norm(&r2[..n]) < residual {
                    p[..n].copy_from_slice(&cand[..n]);
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        Err(CoreError::Convergence { iterations: NEWTON_MAX_ITER, residual })
    }

    /// `+-sqrt(2 F(x))`, the separatrix branch momentum of a mechanical model.
    pub fn separatrix_momentum(&self, x: &TorusPoint, branch: Branch) -> Result<f64> {
        let f = self.potential()?.eval(x.coords()[0]).max(0.0);
        let m = (2.0 * f).sqrt();
        Ok(match branch {
            Branch::Plus => m,
            Branch::Minus => -m,
        })
    }

    /// Critical values `c_- = -int sqrt(2F)` and `c_+ = +int sqrt(2F)`.
    pub fn critical_c(&self) -> Result<(f64, f64)> {
        let total = self.action_between(0.0, 1.0, 1e-11)?;
        Ok((-total, total))
    }

    /// Integral of `sqrt(2F)` over `[a, b]` (a <= b, in lifted coordinates).
    pub fn action_between(&self, a: f64, b: f64, tol: f64) -> Result<f64> {
        let pot = self.potential()?;
        let integrand = |x: f64| (2.0 * pot.eval(x).max(0.0)).sqrt();
        // split at interior zeros of F where sqrt(2F) has kinks
        let mut cuts = vec![a];
        if let Ok(seg) = self.find_zeros() {
            let lo = a.floor() as i64 - 1;
            let hi = b.ceil() as i64 + 1;
            for k in lo..=hi {
                for &z in &seg {
                    let zl = z + k as f64;
                    if zl > a + 1e-12 && zl < b - 1e-12 {
                        cuts.push(zl);
                    }
                }
            }
        }
        cuts.push(b);
        cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let mut total = 0.0;
        let per = tol / cuts.len() as f64;
        for w in cuts.windows(2) {
            total += adaptive_simpson(&integrand, w[0], w[1], per)?;
        }
        Ok(total)
    }

    /// Zeros of the potential found by sign-change bisection on `F_x`,
    /// filtered by `F < 1e-10`.
    pub fn find_zeros(&self) -> Result<Vec<f64>> {
        let pot = self.potential()?;
        let samples = 4096;
        let mut zeros: Vec<f64> = Vec::new();
        for j in 0..samples {
            let a = j as f64 / samples as f64;
            let b = (j + 1) as f64 / samples as f64;
            let fa = pot.d1(a);
            let fb = pot.d1(b);
            if fa == 0.0 && pot.eval(a) < 1e-10 {
                push_zero(&mut zeros, a);
                continue;
            }
            if fa * fb < 0.0 {
                let mut lo = a;
                let mut hi = b;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if pot.d1(lo) * pot.d1(mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                let z = wrap_unit(0.5 * (lo + hi));
                if pot.eval(z) < 1e-10 {
                    push_zero(&mut zeros, z);
                }
            }
        }
        zeros.sort_by(|p, q| p.partial_cmp(q).unwrap());
        if zeros.is_empty() {
            return Err(CoreError::Model("potential has no zeros".into()));
        }
        Ok(zeros)
    }

    /// Ordered zeros of `F` with the per-segment separatrix actions.
    ///
    /// Fails with a model error if a zero is degenerate (`F_xx <= 1e-6`).
    pub fn segment_actions(&self) -> Result<SegmentActions> {
        let pot = self.potential()?;
        let zeros = self.find_zeros()?;
        for &z in &zeros {
            if pot.d2(z) <= 1e-6 {
                return Err(CoreError::Model(format!(
                    "degenerate zero at x = {z:.6} (F_xx = {:.3e})",
                    pot.d2(z)
                )));
            }
        }
        let mut actions = Vec::with_capacity(zeros.len());
        for i in 0..zeros.len() {
            let a = zeros[i];
            let b = if i + 1 < zeros.len() { zeros[i + 1] } else { zeros[0] + 1.0 };
            actions.push(self.action_between(a, b, 1e-10)?);
        }
        let c_plus: f64 = actions.iter().sum();
        Ok(SegmentActions { zeros, actions, c_minus: -c_plus, c_plus })
    }

    /// A loose per-axis bound on `|H_p|` over the critical band, used to size
    /// control boxes: `sqrt(2 max F) + |c| + margin` for mechanical models and
    /// `max |omega| + max |u_x| + margin` for quadratic ones.
    pub fn control_radius_hint(&self, c: &[f64]) -> f64 {
        let c_norm = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        match &self.kind {
            ModelKind::Mechanical1d { potential } => {
                let mut fmax = 0.0f64;
                for j in 0..512 {
                    fmax = fmax.max(potential.eval(j as f64 / 512.0));
                }
                (2.0 * fmax).sqrt() + c_norm + 1.0
            }
            ModelKind::QuadraticKam { omega, conjugation, .. } => {
                let n = self.dim;
                let mut gmax = 0.0f64;
                let mut g = [0.0; 2];
                for j in 0..64 {
                    for k in 0..(if n == 2 { 64 } else { 1 }) {
                        let x = [j as f64 / 64.0, k as f64 / 64.0];
                        conjugation.grad(&x[..n], &mut g[..n]);
                        gmax = gmax.max(g[..n].iter().fold(0.0f64, |m, v| m.max(v.abs())));
                    }
                }
                omega.iter().fold(0.0f64, |m, v| m.max(v.abs())) + gmax + 1.0
            }
            ModelKind::GenericTonelli { .. } => 2.0 * c_norm + 6.0,
        }
    }

    fn spot_convexity_check(&self) -> Result<()> {
        let n = self.dim;
        // low-discrepancy sample of 32 states in the box |p| <= 3
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..32 {
            let x = [next(), next()];
            let p = [6.0 * next() - 3.0, 6.0 * next() - 3.0];
            let mut hpp = [0.0; 4];
            let h = FD_STEP.sqrt();
            for i in 0..n {
                for j in 0..n {
                    let mut ppp = p;
                    let mut ppm = p;
                    let mut pmp = p;
                    let mut pmm = p;
                    ppp[i] += h;
                    ppp[j] += h;
                    ppm[i] += h;
                    ppm[j] -= h;
                    pmp[i] -= h;
                    pmp[j] += h;
                    pmm[i] -= h;
                    pmm[j] -= h;
                    hpp[i * n + j] = (self.hamiltonian_value(&x[..n], &ppp[..n])?
                        - self.hamiltonian_value(&x[..n], &ppm[..n])?
                        - self.hamiltonian_value(&x[..n], &pmp[..n])?
                        + self.hamiltonian_value(&x[..n], &pmm[..n])?)
                        / (4.0 * h * h);
                }
            }
            let pd = if n == 1 {
                hpp[0] > 0.0
            } else {
                hpp[0] > 0.0 && hpp[0] * hpp[3] - hpp[1] * hpp[2] > 0.0
            };
            if !pd {
                return Err(CoreError::Model(
                    "Hessian H_pp fails the positive-definite spot check".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `(1 + sqrt 5) / 2`.
pub fn golden_ratio() -> f64 {
    0.5 * (1.0 + 5.0f64.sqrt())
}

fn push_zero(zeros: &mut Vec<f64>, z: f64) {
    if zeros.iter().all(|&w| circle_dist(w, z) > 1e-6) {
        zeros.push(z);
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Solve a 1x1 or 2x2 linear system (row-major matrix).
fn solve_small(m: &[f64], rhs: &[f64], n: usize) -> Result<[f64; 2]> {
    let mut out = [0.0; 2];
    if n == 1 {
        if m[0].abs() < 1e-14 {
            return Err(CoreError::Convergence { iterations: 0, residual: f64::INFINITY });
        }
        out[0] = rhs[0] / m[0];
    } else {
        let det = m[0] * m[3] - m[1] * m[2];
        if det.abs() < 1e-14 {
            return Err(CoreError::Convergence { iterations: 0, residual: f64::INFINITY });
        }
        out[0] = (rhs[0] * m[3] - rhs[1] * m[1]) / det;
        out[1] = (m[0] * rhs[1] - m[2] * rhs[0]) / det;
    }
    Ok(out)
}
