//! Periodic grids, sampled scalar fields and momentum fields.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{CoreError, Result};
use crate::torus::wrap_unit;

/// A uniform periodic grid on the torus, one or two axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicGrid {
    dims: Vec<usize>,
}

impl PeriodicGrid {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.len() > 2 {
            return Err(CoreError::Domain("grid dimension must be 1 or 2".into()));
        }
        if dims.iter().any(|&n| n < 16) {
            return Err(CoreError::Domain("grid resolution must be at least 16".into()));
        }
        Ok(Self { dims: dims.to_vec() })
    }

    pub fn line(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(&[n, n])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        1.0 / self.dims[axis] as f64
    }

    pub fn min_spacing(&self) -> f64 {
        self.dims.iter().map(|&n| 1.0 / n as f64).fold(f64::INFINITY, f64::min)
    }

    /// Row-major flat index of the node with per-axis indices `idx`.
    pub fn flat(&self, idx: &[usize]) -> usize {
        match self.dims.len() {
            1 => idx[0],
            _ => idx[0] * self.dims[1] + idx[1],
        }
    }

    /// Coordinates of the node with flat index `k`.
    pub fn node(&self, k: usize, out: &mut [f64]) {
        match self.dims.len() {
            1 => out[0] = k as f64 / self.dims[0] as f64,
            _ => {
                out[0] = (k / self.dims[1]) as f64 / self.dims[0] as f64;
                out[1] = (k % self.dims[1]) as f64 / self.dims[1] as f64;
            }
        }
    }
}

/// Metadata attached to a solved or constructed field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMeta {
    pub model: String,
    pub c: Vec<f64>,
    pub eps: f64,
    pub h: f64,
    pub dt: f64,
    pub residual: f64,
}

impl FieldMeta {
    pub fn empty(n: usize) -> Self {
        Self { model: String::new(), c: vec![0.0; n], eps: 0.0, h: 0.0, dt: 0.0, residual: 0.0 }
    }
}

/// A periodic grid sampling of a scalar function with multilinear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: PeriodicGrid,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl ScalarField {
    pub fn constant(grid: PeriodicGrid, value: f64) -> Self {
        let n = grid.len();
        let dim = grid.dim();
        Self { grid, values: vec![value; n], meta: FieldMeta::empty(dim) }
    }

    pub fn from_fn<F: Fn(&[f64]) -> f64>(grid: PeriodicGrid, f: F) -> Self {
        let mut field = Self::constant(grid, 0.0);
        let mut x = [0.0; 2];
        for k in 0..field.values.len() {
            field.grid.node(k, &mut x);
            field.values[k] = f(&x[..field.grid.dim()]);
        }
        field
    }

    /// Periodic multilinear interpolation at an arbitrary point.
    pub fn interp(&self, x: &[f64]) -> f64 {
        interp_values(&self.grid, &self.values, 1, 0, x)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn sup_dist(&self, other: &ScalarField) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Empirical Lipschitz constant: the largest one-sided difference quotient.
    pub fn lipschitz(&self) -> f64 {
        let mut lip = 0.0f64;
        let dims = self.grid.dims();
        match self.grid.dim() {
            1 => {
                let n = dims[0];
                for j in 0..n {
                    let d = (self.values[(j + 1) % n] - self.values[j]) * n as f64;
                    lip = lip.max(d.abs());
                }
            }
            _ => {
                let (n0, n1) = (dims[0], dims[1]);
                for i in 0..n0 {
                    for j in 0..n1 {
                        let v = self.values[i * n1 + j];
                        let dx = (self.values[((i + 1) % n0) * n1 + j] - v) * n0 as f64;
                        let dy = (self.values[i * n1 + (j + 1) % n1] - v) * n1 as f64;
                        lip = lip.max(dx.abs()).max(dy.abs());
                    }
                }
            }
        }
        lip
    }

    /// Write the compact binary dump (magic `WKAM1`, little endian).
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let mut buf: Vec<u8> = Vec::with_capacity(64 + 8 * self.values.len());
        buf.extend_from_slice(b"WKAM1");
        let n = self.grid.dim() as u32;
        buf.extend_from_slice(&n.to_le_bytes());
        for &d in self.grid.dims() {
            buf.extend_from_slice(&(d as u32).to_le_bytes());
        }
        buf.extend_from_slice(&self.meta.eps.to_le_bytes());
        for &c in &self.meta.c {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        buf.extend_from_slice(&self.meta.h.to_le_bytes());
        for &v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(&buf)?;
        Ok(())
    }

    /// Read a binary dump written by [`Self::write_binary`].
    pub fn read_binary(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        let mut off = 0usize;
        let take = |off: &mut usize, n: usize| -> Result<&[u8]> {
            if *off + n > bytes.len() {
                return Err(CoreError::Format("truncated field dump".into()));
            }
            let s = &bytes[*off..*off + n];
            *off += n;
            Ok(s)
        };
        if take(&mut off, 5)? != b"WKAM1" {
            return Err(CoreError::Format("bad magic, expected WKAM1".into()));
        }
        let n = u32::from_le_bytes(take(&mut off, 4)?.try_into().unwrap()) as usize;
        if n == 0 || n > 2 {
            return Err(CoreError::Format("bad dimension in field dump".into()));
        }
        let mut dims = Vec::with_capacity(n);
        for _ in 0..n {
            dims.push(u32::from_le_bytes(take(&mut off, 4)?.try_into().unwrap()) as usize);
        }
        let read_f64 = |off: &mut usize| -> Result<f64> {
            Ok(f64::from_le_bytes(take(off, 8)?.try_into().unwrap()))
        };
        let eps = read_f64(&mut off)?;
        let mut c = Vec::with_capacity(n);
        for _ in 0..n {
            c.push(read_f64(&mut off)?);
        }
        let h = read_f64(&mut off)?;
        let grid = PeriodicGrid::new(&dims)?;
        let mut values = Vec::with_capacity(grid.len());
        for _ in 0..grid.len() {
            values.push(read_f64(&mut off)?);
        }
        let mut meta = FieldMeta::empty(n);
        meta.eps = eps;
        meta.c = c;
        meta.h = h;
        Ok(Self { grid, values, meta })
    }
}

/// The reconstructed momentum `c + v_x`, the argmin controls that produced it
/// and per-node shock flags.
#[derive(Debug, Clone)]
pub struct MomentumField {
    pub grid: PeriodicGrid,
    /// `dim` momentum components per node, interleaved.
    pub momentum: Vec<f64>,
    /// The Bellman argmin control per node, interleaved like `momentum`.
    pub control: Vec<f64>,
    pub shock: Vec<bool>,
}

impl MomentumField {
    /// Interpolated momentum component `axis` at `x`.
    pub fn interp_momentum(&self, x: &[f64], axis: usize) -> f64 {
        interp_values(&self.grid, &self.momentum, self.grid.dim(), axis, x)
    }

    pub fn interp_momentum_vec(&self, x: &[f64], out: &mut [f64]) {
        for a in 0..self.grid.dim() {
            out[a] = self.interp_momentum(x, a);
        }
    }

    /// True when the cell containing `x` touches a shock-flagged node.
    pub fn near_shock(&self, x: &[f64]) -> bool {
        let dims = self.grid.dims();
        match self.grid.dim() {
            1 => {
                let n = dims[0];
                let t = wrap_unit(x[0]) * n as f64;
                let i = t.floor() as usize % n;
                self.shock[i] || self.shock[(i + 1) % n]
            }
            _ => {
                let (n0, n1) = (dims[0], dims[1]);
                let t0 = wrap_unit(x[0]) * n0 as f64;
                let t1 = wrap_unit(x[1]) * n1 as f64;
                let i = t0.floor() as usize % n0;
                let j = t1.floor() as usize % n1;
                [(i, j), ((i + 1) % n0, j), (i, (j + 1) % n1), ((i + 1) % n0, (j + 1) % n1)]
                    .iter()
                    .any(|&(a, b)| self.shock[a * n1 + b])
            }
        }
    }
}

/// Write field values (plus optional momentum/shock columns) as CSV.
pub fn write_field_csv(
    path: &Path,
    field: &ScalarField,
    momentum: Option<&MomentumField>,
) -> Result<()> {
    let dim = field.grid.dim();
    let mut out = String::new();
    let idx_cols: Vec<String> = (0..dim).map(|a| format!("i{}", a + 1)).collect();
    let x_cols: Vec<String> = (0..dim).map(|a| format!("x{}", a + 1)).collect();
    out.push_str(&idx_cols.join(","));
    out.push(',');
    out.push_str(&x_cols.join(","));
    out.push_str(",value");
    if momentum.is_some() {
        for a in 0..dim {
            out.push_str(&format!(",momentum{}", a + 1));
        }
        out.push_str(",shock");
    }
    out.push('\n');
    let mut x = [0.0; 2];
    for k in 0..field.values.len() {
        field.grid.node(k, &mut x);
        let mut idx = [0usize; 2];
        match dim {
            1 => idx[0] = k,
            _ => {
                idx[0] = k / field.grid.dims()[1];
                idx[1] = k % field.grid.dims()[1];
            }
        }
        for a in 0..dim {
            out.push_str(&format!("{},", idx[a]));
        }
        for a in 0..dim {
            out.push_str(&format!("{:.12e},", x[a]));
        }
        out.push_str(&format!("{:.12e}", field.values[k]));
        if let Some(m) = momentum {
            for a in 0..dim {
                out.push_str(&format!(",{:.12e}", m.momentum[k * dim + a]));
            }
            out.push_str(&format!(",{}", u8::from(m.shock[k])));
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Shared periodic multilinear interpolation over interleaved node data.
fn interp_values(grid: &PeriodicGrid, data: &[f64], stride: usize, offset: usize, x: &[f64]) -> f64 {
    let dims = grid.dims();
    match grid.dim() {
        1 => {
            let n = dims[0];
            let t = wrap_unit(x[0]) * n as f64;
            let i = t.floor() as usize % n;
            let frac = t - t.floor();
            let a = data[i * stride + offset];
            let b = data[((i + 1) % n) * stride + offset];
            a + frac * (b - a)
        }
        _ => {
            let (n0, n1) = (dims[0], dims[1]);
            let t0 = wrap_unit(x[0]) * n0 as f64;
            let t1 = wrap_unit(x[1]) * n1 as f64;
            let i = t0.floor() as usize % n0;
            let j = t1.floor() as usize % n1;
            let f0 = t0 - t0.floor();
            let f1 = t1 - t1.floor();
            let ip = (i + 1) % n0;
            let jp = (j + 1) % n1;
            let v00 = data[(i * n1 + j) * stride + offset];
            let v01 = data[(i * n1 + jp) * stride + offset];
            let v10 = data[(ip * n1 + j) * stride + offset];
            let v11 = data[(ip * n1 + jp) * stride + offset];
            let a = v00 + f1 * (v01 - v00);
            let b = v10 + f1 * (v11 - v10);
            a + f0 * (b - a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolation_reproduces_nodes_and_wraps() {
        let grid = PeriodicGrid::line(32).unwrap();
        let f = ScalarField::from_fn(grid, |x| (std::f64::consts::TAU * x[0]).sin());
        assert_abs_diff_eq!(f.interp(&[0.25]), f.values[8], epsilon = 1e-15);
        // wrap: interpolation just left of 0 uses the last node and node 0
        let left = f.interp(&[-0.015625 / 2.0]);
        let expect = 0.5 * (f.values[31] + f.values[0]);
        assert_abs_diff_eq!(left, expect, epsilon = 1e-12);
    }

    #[test]
    fn bilinear_interpolation_is_exact_on_multilinear_data() {
        let grid = PeriodicGrid::square(16).unwrap();
        // a multilinear-in-cell function: product of per-axis hat samples
        let f = ScalarField::from_fn(grid, |x| x[0].min(0.5) + 2.0 * x[1].min(0.5));
        let v = f.interp(&[10.2 / 16.0, 3.7 / 16.0]);
        let a = 10.2f64 / 16.0;
        let b = 3.7f64 / 16.0;
        assert_abs_diff_eq!(v, a.min(0.5) + 2.0 * b.min(0.5), epsilon = 1e-12);
    }

    #[test]
    fn binary_roundtrip_preserves_everything() {
        let grid = PeriodicGrid::line(64).unwrap();
        let mut f = ScalarField::from_fn(grid, |x| x[0] * x[0]);
        f.meta.eps = 0.01;
        f.meta.c = vec![0.7];
        f.meta.h = 0.0;
        let dir = std::env::temp_dir().join("wkam_grid_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.wkam");
        f.write_binary(&path).unwrap();
        let g = ScalarField::read_binary(&path).unwrap();
        assert_eq!(f.values, g.values);
        assert_eq!(g.meta.eps, 0.01);
        assert_eq!(g.meta.c, vec![0.7]);
    }
}
