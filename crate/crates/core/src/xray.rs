//! X-ray plots: the curves `Re f = 0` and `Im f = 0` of a complex function
//! over a rectangle, found as sign changes between neighbouring pixels.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermite::{HermiteEngine, HermiteMethod};
use crate::quad::EvalResult;
use crate::scalar::{from_i64, is_finite, lit, Real};
use crate::special::omega;

/// A rectangle `[x_min, x_max] × [y_min, y_max]` split into `nx × ny` pixels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T: Real> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T, nx: usize, ny: usize) -> Result<Self> {
        if !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::Precondition("grid needs x_min < x_max and y_min < y_max".into()));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::Precondition(format!("grid needs at least 2×2 pixels, got {nx}×{ny}")));
        }
        Ok(Self { x_min, x_max, y_min, y_max, nx, ny })
    }

    /// The square `(-half, half)²` at `n × n` pixels.
    pub fn square(half: T, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / from_i64(self.nx as i64)
    }

    pub fn dy(&self) -> T {
        (self.y_max - self.y_min) / from_i64(self.ny as i64)
    }

    /// Centre of pixel `(j, k)`; column `j` counts from the left, row `k`
    /// from the bottom.
    pub fn center(&self, j: usize, k: usize) -> Complex<T> {
        let half = lit::<T>(0.5);
        Complex::new(
            self.x_min + (from_i64::<T>(j as i64) + half) * self.dx(),
            self.y_min + (from_i64::<T>(k as i64) + half) * self.dy(),
        )
    }

    /// Row whose band contains `y` (clamped to the grid).
    pub fn row_at(&self, y: T) -> usize {
        let k = ((y - self.y_min) / self.dy()).floor().to_i64().unwrap_or(0);
        k.clamp(0, self.ny as i64 - 1) as usize
    }
}

/// Function values on a grid, row-major with row 0 at the bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct GridValues<T: Real> {
    pub grid: GridSpec<T>,
    pub values: Vec<Complex<T>>,
    /// Set where the value is non-finite, failed, or missed its tolerance.
    pub degraded: Vec<bool>,
}

impl<T: Real> GridValues<T> {
    pub fn index(&self, j: usize, k: usize) -> usize {
        k * self.grid.nx + j
    }

    pub fn at(&self, j: usize, k: usize) -> Complex<T> {
        self.values[self.index(j, k)]
    }

    pub fn degraded_count(&self) -> usize {
        self.degraded.iter().filter(|&&d| d).count()
    }

    /// Sign changes of `(Re f, Im f)` along row `k`, skipping degraded pixels.
    pub fn row_sign_changes(&self, k: usize) -> (usize, usize) {
        let start = self.index(0, k);
        let end = start + self.grid.nx;
        sign_changes(&self.values[start..end], &self.degraded[start..end])
    }

    /// Sign changes along the row nearest the real axis.
    pub fn real_axis_crossings(&self) -> (usize, usize) {
        self.row_sign_changes(self.grid.row_at(T::zero()))
    }

    /// CSV with header `x,y,re,im,degraded`, one line per pixel in storage order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,re,im,degraded")?;
        for k in 0..self.grid.ny {
            for j in 0..self.grid.nx {
                let c = self.grid.center(j, k);
                let v = self.at(j, k);
                let d = u8::from(self.degraded[self.index(j, k)]);
                writeln!(out, "{},{},{},{},{}", c.re, c.im, v.re, v.im, d)?;
            }
        }
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> io::Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        self.write_csv(&mut out)?;
        out.flush()
    }
}

fn sign_changes<T: Real>(values: &[Complex<T>], degraded: &[bool]) -> (usize, usize) {
    let mut prev: Option<(bool, bool)> = None;
    let (mut re, mut im) = (0, 0);
    for (v, &d) in values.iter().zip(degraded) {
        if d {
            continue;
        }
        let signs = (nonneg(v.re), nonneg(v.im));
        if let Some(p) = prev {
            re += usize::from(p.0 != signs.0);
            im += usize::from(p.1 != signs.1);
        }
        prev = Some(signs);
    }
    (re, im)
}

fn eval_row<T, F>(f: &F, grid: &GridSpec<T>, k: usize) -> Vec<(Complex<T>, bool)>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<EvalResult<T>>,
{
    (0..grid.nx)
        .map(|j| match f(grid.center(j, k)) {
            Ok(r) => (r.value, r.degraded || !is_finite(r.value)),
            Err(_) => (Complex::new(T::nan(), T::nan()), true),
        })
        .collect()
}

/// Evaluates `f` at every pixel centre; rows run in parallel.
pub fn eval_grid<T, F>(f: F, grid: &GridSpec<T>) -> GridValues<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T> + Sync,
{
    eval_grid_checked(|z| Ok(EvalResult::exact(f(z))), grid)
}

/// Like [`eval_grid`] for evaluations that report precision or fail. Failed
/// and degraded samples are kept as degraded pixels; a failure stores NaN.
pub fn eval_grid_checked<T, F>(f: F, grid: &GridSpec<T>) -> GridValues<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<EvalResult<T>> + Sync,
{
    let rows: Vec<Vec<(Complex<T>, bool)>> = (0..grid.ny).into_par_iter().map(|k| eval_row(&f, grid, k)).collect();
    let (values, degraded) = rows.into_iter().flatten().unzip();
    GridValues { grid: *grid, values, degraded }
}

/// Sign changes of `(Re f, Im f)` along the grid row nearest the real axis,
/// evaluating that row only.
pub fn axis_crossings<T, F>(f: F, grid: &GridSpec<T>) -> (usize, usize)
where
    T: Real,
    F: Fn(Complex<T>) -> Result<EvalResult<T>> + Sync,
{
    let row = eval_row(&f, grid, grid.row_at(T::zero()));
    let (values, degraded): (Vec<_>, Vec<_>) = row.into_iter().unzip();
    sign_changes(&values, &degraded)
}

/// Label of one x-ray pixel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PixelClass {
    None,
    ReZero,
    ImZero,
    Both,
    Degraded,
}

impl PixelClass {
    pub fn rgb(self) -> [u8; 3] {
        match self {
            PixelClass::None => [255, 255, 255],
            PixelClass::ReZero => [0, 0, 0],
            PixelClass::ImZero => [128, 128, 128],
            PixelClass::Both => [255, 0, 0],
            PixelClass::Degraded => [255, 255, 0],
        }
    }
}

/// Pixel labels over a grid, row 0 at the bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct XRayImage<T: Real> {
    pub grid: GridSpec<T>,
    pub classes: Vec<PixelClass>,
}

// exact zero counts as positive
fn nonneg<T: Real>(x: T) -> bool {
    x >= T::zero()
}

/// Labels each pixel by sign changes of `Re f` and `Im f` against its right
/// and upper neighbours. Degraded pixels keep the degraded label.
pub fn detect_zero_curves<T: Real>(values: &GridValues<T>) -> XRayImage<T> {
    let (nx, ny) = (values.grid.nx, values.grid.ny);
    let mut classes = Vec::with_capacity(nx * ny);
    for k in 0..ny {
        for j in 0..nx {
            let i = values.index(j, k);
            if values.degraded[i] {
                classes.push(PixelClass::Degraded);
                continue;
            }
            let v = values.values[i];
            let (mut re, mut im) = (false, false);
            let neighbours =
                [(j + 1 < nx).then(|| values.index(j + 1, k)), (k + 1 < ny).then(|| values.index(j, k + 1))];
            for n in neighbours.into_iter().flatten() {
                let w = values.values[n];
                if values.degraded[n] {
                    continue;
                }
                re |= nonneg(v.re) != nonneg(w.re);
                im |= nonneg(v.im) != nonneg(w.im);
            }
            classes.push(match (re, im) {
                (true, true) => PixelClass::Both,
                (true, false) => PixelClass::ReZero,
                (false, true) => PixelClass::ImZero,
                (false, false) => PixelClass::None,
            });
        }
    }
    XRayImage { grid: values.grid, classes }
}

impl<T: Real> XRayImage<T> {
    pub fn at(&self, j: usize, k: usize) -> PixelClass {
        self.classes[k * self.grid.nx + j]
    }

    pub fn count(&self, class: PixelClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// Binary PPM (`P6`), top row first so that `y_max` is at the top.
    pub fn to_ppm(&self) -> Vec<u8> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let header = format!("P6\n{nx} {ny}\n255\n");
        let mut bytes = Vec::with_capacity(header.len() + 3 * nx * ny);
        bytes.extend_from_slice(header.as_bytes());
        for k in (0..ny).rev() {
            for j in 0..nx {
                bytes.extend_from_slice(&self.at(j, k).rgb());
            }
        }
        bytes
    }

    pub fn write_image(&self, path: impl AsRef<Path>) -> io::Result<()> {
        std::fs::write(path, self.to_ppm())
    }
}

/// The x-ray integrand `H_ν(z√π) e^{-πz²} / (1 + e^{-2πωz})`.
pub fn figure_integrand<T: Real>(
    engine: &HermiteEngine<T>,
    nu: Complex<T>,
    z: Complex<T>,
    tol: T,
) -> Result<EvalResult<T>> {
    let w = z * T::PI().sqrt();
    let h = engine.eval_weighted(nu, w, HermiteMethod::Auto, tol, T::one())?;
    let e = omega::<T>() * z * (T::PI() * lit(2.0));
    let one = Complex::new(T::one(), T::zero());
    let damping = if e.re >= T::zero() {
        one / (one + (-e).exp())
    } else {
        let x = e.exp();
        x / (x + one)
    };
    let value = h.value() * damping;
    let mut result = h.result;
    result.value = value;
    result.degraded = result.degraded || !is_finite(value);
    Ok(result)
}

/// Order `ν = -(½ + ti)` of the figure for parameter `t`.
pub fn figure_order<T: Real>(t: T) -> Complex<T> {
    Complex::new(lit(-0.5), -t)
}

/// Evaluates the figure integrand for parameter `t` over `(-half, half)²`.
pub fn figure_values<T: Real>(engine: &HermiteEngine<T>, t: T, half: T, res: usize, tol: T) -> Result<GridValues<T>> {
    let grid = GridSpec::square(half, res)?;
    let nu = figure_order(t);
    Ok(eval_grid_checked(|z| figure_integrand(engine, nu, z, tol), &grid))
}

/// Sign changes along the real axis of the figure integrand for parameter
/// `t` on the `res × res` grid over `(-half, half)²`.
pub fn figure_axis_crossings<T: Real>(
    engine: &HermiteEngine<T>,
    t: T,
    half: T,
    res: usize,
    tol: T,
) -> Result<(usize, usize)> {
    let grid = GridSpec::square(half, res)?;
    let nu = figure_order(t);
    Ok(axis_crossings(|z| figure_integrand(engine, nu, z, tol), &grid))
}

/// Default Hermite tolerance for figure pixels; only signs matter.
pub const FIGURE_TOL: f64 = 1e-6;
