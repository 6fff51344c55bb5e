//! Brute-force checks from below: escape-test rasters of `Q⁻ⁿ(D)`, discrete
//! difference sets, raster areas and a sampling test of the disk-difference
//! formula.
//!
//! All rasters live on one lattice: cell centres sit at integer multiples of
//! `cell`. Differences of cell centres are then again lattice points, which
//! makes the discrete difference set exact.

use std::f64::consts::SQRT_2;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg32;
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, ComplexPoint, Disk, Parameter};
use crate::limits::Limits;

/// Set-cell pair counts above this use the FFT correlation.
pub const DIRECT_PAIR_LIMIT: u64 = 1 << 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskMode {
    /// Cell set iff its centre passes the plain escape test.
    Inner,
    /// Escape thresholds inflated so every cell meeting the set is kept.
    Outer,
    /// Result of a discrete difference.
    Difference,
    /// Cells whose centre lies in a given disk.
    Disk,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridMask {
    /// Lower-left corner of cell `(0, 0)`.
    pub origin: ComplexPoint,
    pub cell: f64,
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the bottom.
    #[serde(skip)]
    pub bits: Vec<bool>,
    pub mode: MaskMode,
}

impl GridMask {
    /// Empty `(2·half_w+1) × (2·half_h+1)` mask whose central cell is centred at 0.
    pub fn centered(half_w: usize, half_h: usize, cell: f64, mode: MaskMode) -> Self {
        let origin = ComplexPoint::new(
            -(half_w as f64 + 0.5) * cell,
            -(half_h as f64 + 0.5) * cell,
        );
        let (width, height) = (2 * half_w + 1, 2 * half_h + 1);
        Self {
            origin,
            cell,
            width,
            height,
            bits: vec![false; width * height],
            mode,
        }
    }

    /// Lattice mask of the cells whose centre lies in `disk`.
    pub fn from_disk(disk: &Disk, cell: f64) -> Self {
        let reach = disk.center.re.abs().max(disk.center.im.abs()) + disk.radius;
        let half = (reach / cell).ceil() as usize + 1;
        let mut mask = Self::centered(half, half, cell, MaskMode::Disk);
        let w = mask.width;
        let origin = mask.origin;
        mask.bits
            .par_chunks_mut(w)
            .enumerate()
            .for_each(|(j, row)| {
                let y = origin.im + (j as f64 + 0.5) * cell;
                for (i, b) in row.iter_mut().enumerate() {
                    let x = origin.re + (i as f64 + 0.5) * cell;
                    *b = disk.center.dist(ComplexPoint::new(x, y)) <= disk.radius;
                }
            });
        mask
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.width + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[j * self.width + i] = v;
    }

    pub fn center(&self, i: usize, j: usize) -> ComplexPoint {
        ComplexPoint::new(
            self.origin.re + (i as f64 + 0.5) * self.cell,
            self.origin.im + (j as f64 + 0.5) * self.cell,
        )
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// Smallest `(i0, j0, i1, j1)` (inclusive) containing every set cell.
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let mut bbox: Option<(usize, usize, usize, usize)> = None;
        for (j, row) in self.bits.chunks(self.width).enumerate() {
            let first = row.iter().position(|&b| b);
            let last = row.iter().rposition(|&b| b);
            if let (Some(f), Some(l)) = (first, last) {
                bbox = Some(match bbox {
                    None => (f, j, l, j),
                    Some((i0, j0, i1, _)) => (i0.min(f), j0, i1.max(l), j),
                });
            }
        }
        bbox
    }

    /// Whether the mask is centred on 0 and invariant under `z ↦ −z`.
    pub fn is_point_symmetric(&self) -> bool {
        let centred = |origin: f64, len: usize| {
            (origin + len as f64 * self.cell / 2.0).abs() <= 1e-9 * self.cell
        };
        if !centred(self.origin.re, self.width) || !centred(self.origin.im, self.height) {
            return false;
        }
        let n = self.bits.len();
        (0..n).all(|k| self.bits[k] == self.bits[n - 1 - k])
    }

    /// `self ⊆ other` cell by cell on a shared lattice window.
    pub fn is_subset_of(&self, other: &GridMask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.origin == other.origin
            && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

/// Escape test: `|Q^k(z)| ≤ |c|` for `0 ≤ k ≤ n`.
pub fn in_preimage(z: ComplexPoint, p: &Parameter, n: usize) -> bool {
    let limit = p.abs_c() * p.abs_c();
    let mut w = z;
    for k in 0..=n {
        if w.norm_sqr() > limit {
            return false;
        }
        if k < n {
            w = geometry::forward_map(w, p);
        }
    }
    true
}

/// Per-iterate escape thresholds `|c| + e_k` for outer masks.
///
/// With `h` the half cell diagonal, `e_0 = h` and `e_{k+1} = e_k·(2R_1 + e_k)`:
/// if some point `a` of the cell lies in `Q⁻ⁿ(D)` then `|Q^k(a)| ≤ R_1` for
/// `k < n`, and `|Q(a) − Q(b)| = |a − b|·|a + b|` bounds how far the centre's
/// orbit `b` can drift.
pub fn outer_thresholds(p: &Parameter, n: usize, cell: f64) -> Vec<f64> {
    let two_r1 = 2.0 * (2.0 * p.abs_c()).sqrt();
    let mut e = cell * SQRT_2 / 2.0;
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(p.abs_c() + e);
        e *= two_r1 + e;
    }
    out
}

/// Raster of `Q⁻ⁿ(D)` on the centred square of side at least `2(|c| + cell)`.
pub fn rasterize_preimage(p: &Parameter, n: usize, cell: f64, mode: MaskMode) -> Result<GridMask> {
    rasterize_preimage_with(p, n, cell, mode, &Limits::default())
}

pub fn rasterize_preimage_with(
    p: &Parameter,
    n: usize,
    cell: f64,
    mode: MaskMode,
    limits: &Limits,
) -> Result<GridMask> {
    if !(cell > 0.0 && cell.is_finite()) {
        return Err(Error::out_of_range("cell", format!("{cell} is not positive")));
    }
    let half = ((p.abs_c() + cell) / cell).ceil();
    let side = 2.0 * half + 1.0;
    if side * side > limits.max_cells as f64 {
        return Err(Error::SizeCap {
            what: "preimage raster cells",
            requested: (side * side).min(u64::MAX as f64) as u64,
            cap: limits.max_cells,
            hint: "use a coarser cell",
        });
    }
    let thresholds_sq: Vec<f64> = match mode {
        MaskMode::Inner => vec![p.abs_c() * p.abs_c(); n + 1],
        MaskMode::Outer => outer_thresholds(p, n, cell).iter().map(|t| t * t).collect(),
        other => {
            return Err(Error::out_of_range(
                "mask mode",
                format!("{other:?} is not a preimage mode"),
            ))
        }
    };
    let half = half as usize;
    let mut mask = GridMask::centered(half, half, cell, mode);
    let (w, origin) = (mask.width, mask.origin);
    mask.bits
        .par_chunks_mut(w)
        .enumerate()
        .for_each(|(j, row)| {
            let y = origin.im + (j as f64 + 0.5) * cell;
            for (i, bit) in row.iter_mut().enumerate() {
                let mut z = ComplexPoint::new(origin.re + (i as f64 + 0.5) * cell, y);
                let mut inside = true;
                for (k, t2) in thresholds_sq.iter().enumerate() {
                    if z.norm_sqr() > *t2 {
                        inside = false;
                        break;
                    }
                    if k < n {
                        z = geometry::forward_map(z, p);
                    }
                }
                *bit = inside;
            }
        });
    Ok(mask)
}

/// Which algorithm computes a discrete difference set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffMethod {
    /// Reference semantics: every pair of set cells.
    Direct,
    /// Cross-correlation by 2-D FFT, thresholded at 1/2.
    Fft,
    /// `Direct` for small pair counts, `Fft` otherwise.
    Auto,
}

/// `{x − y : x ∈ a, y ∈ b}` over the window `[a.min − b.max, a.max − b.min]`.
pub fn grid_minkowski_diff(a: &GridMask, b: &GridMask) -> Result<GridMask> {
    grid_minkowski_diff_using(a, b, DiffMethod::Auto, &Limits::default())
}

pub fn grid_minkowski_diff_using(
    a: &GridMask,
    b: &GridMask,
    method: DiffMethod,
    limits: &Limits,
) -> Result<GridMask> {
    if a.cell != b.cell {
        return Err(Error::CellMismatch(a.cell, b.cell));
    }
    let cell = a.cell;
    let width = a.width + b.width - 1;
    let height = a.height + b.height - 1;
    Limits::check(
        (width as u64).saturating_mul(height as u64),
        limits.max_cells,
        "difference raster cells",
        "use a coarser cell",
    )?;
    let origin = ComplexPoint::new(
        a.origin.re - b.origin.re - (b.width as f64 - 0.5) * cell,
        a.origin.im - b.origin.im - (b.height as f64 - 0.5) * cell,
    );
    let mut out = GridMask {
        origin,
        cell,
        width,
        height,
        bits: vec![false; width * height],
        mode: MaskMode::Difference,
    };
    let (Some(ba), Some(bb)) = (a.bounding_box(), b.bounding_box()) else {
        return Ok(out);
    };
    let ca = crop(a, ba);
    let cb = crop(b, bb);
    let method = match method {
        DiffMethod::Auto => {
            let pairs = count(&ca).saturating_mul(count(&cb));
            if pairs <= DIRECT_PAIR_LIMIT {
                DiffMethod::Direct
            } else {
                DiffMethod::Fft
            }
        }
        m => m,
    };
    let sub = match method {
        DiffMethod::Direct => correlate_direct(&ca, &cb),
        _ => correlate_fft(&ca, &cb),
    };
    // sub index (u, v) is the offset ia − ib + (cb.w − 1) within the crops
    let sw = ca.w + cb.w - 1;
    let off_i = ba.0 as isize - bb.0 as isize + (b.width as isize - 1) - (cb.w as isize - 1);
    let off_j = ba.1 as isize - bb.1 as isize + (b.height as isize - 1) - (cb.h as isize - 1);
    for (v, row) in sub.chunks(sw).enumerate() {
        let j = (v as isize + off_j) as usize;
        for (u, &bit) in row.iter().enumerate() {
            if bit {
                let i = (u as isize + off_i) as usize;
                out.bits[j * width + i] = true;
            }
        }
    }
    Ok(out)
}

struct Crop {
    w: usize,
    h: usize,
    bits: Vec<bool>,
}

fn crop(m: &GridMask, (i0, j0, i1, j1): (usize, usize, usize, usize)) -> Crop {
    let (w, h) = (i1 - i0 + 1, j1 - j0 + 1);
    let mut bits = Vec::with_capacity(w * h);
    for j in j0..=j1 {
        bits.extend_from_slice(&m.bits[j * m.width + i0..=j * m.width + i1]);
    }
    Crop { w, h, bits }
}

fn count(c: &Crop) -> u64 {
    c.bits.iter().filter(|&&b| b).count() as u64
}

/// Output `(u, v)` with `u = ia − ib + (b.w − 1)`, `v = ja − jb + (b.h − 1)`.
fn correlate_direct(a: &Crop, b: &Crop) -> Vec<bool> {
    let rows = |c: &Crop| -> Vec<Vec<usize>> {
        c.bits
            .chunks(c.w)
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i).collect())
            .collect()
    };
    let (ra, rb) = (rows(a), rows(b));
    let (w, h) = (a.w + b.w - 1, a.h + b.h - 1);
    let mut out = vec![false; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(v, row)| {
        // ja − jb = v − (b.h − 1)
        for (ja, xs) in ra.iter().enumerate() {
            let jb = ja as isize + (b.h as isize - 1) - v as isize;
            if jb < 0 || jb >= b.h as isize {
                continue;
            }
            let ys = &rb[jb as usize];
            if ys.is_empty() {
                continue;
            }
            for &x in xs {
                for &y in ys {
                    row[x + b.w - 1 - y] = true;
                }
            }
        }
    });
    out
}

fn fft_rows(data: &mut [Complex<f64>], len: usize, fft: &dyn Fft<f64>) {
    let scratch_len = fft.get_inplace_scratch_len();
    data.par_chunks_mut(len).for_each_init(
        || vec![Complex::new(0.0, 0.0); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
}

fn transpose(data: &[Complex<f64>], w: usize, h: usize) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(0.0, 0.0); w * h];
    out.par_chunks_mut(h).enumerate().for_each(|(i, col)| {
        for (j, v) in col.iter_mut().enumerate() {
            *v = data[j * w + i];
        }
    });
    out
}

/// Forward 2-D transform of a `w × h` row-major array; the result is stored
/// transposed (`h`-long rows, one per column).
fn fft2_forward(
    mut data: Vec<Complex<f64>>,
    w: usize,
    h: usize,
    row: &dyn Fft<f64>,
    col: &dyn Fft<f64>,
) -> Vec<Complex<f64>> {
    fft_rows(&mut data, w, row);
    let mut t = transpose(&data, w, h);
    fft_rows(&mut t, h, col);
    t
}

fn correlate_fft(a: &Crop, b: &Crop) -> Vec<bool> {
    let (w, h) = (a.w + b.w - 1, a.h + b.h - 1);
    let (pw, ph) = (w.next_power_of_two(), h.next_power_of_two());
    let mut planner = FftPlanner::<f64>::new();
    let (row_f, col_f) = (planner.plan_fft_forward(pw), planner.plan_fft_forward(ph));
    let (row_i, col_i) = (planner.plan_fft_inverse(pw), planner.plan_fft_inverse(ph));

    let mut pa = vec![Complex::new(0.0, 0.0); pw * ph];
    for j in 0..a.h {
        for i in 0..a.w {
            if a.bits[j * a.w + i] {
                pa[j * pw + i].re = 1.0;
            }
        }
    }
    // b reversed in both axes turns correlation into convolution
    let mut pb = vec![Complex::new(0.0, 0.0); pw * ph];
    for j in 0..b.h {
        for i in 0..b.w {
            if b.bits[j * b.w + i] {
                pb[(b.h - 1 - j) * pw + (b.w - 1 - i)].re = 1.0;
            }
        }
    }
    let fa = fft2_forward(pa, pw, ph, row_f.as_ref(), col_f.as_ref());
    let fb = fft2_forward(pb, pw, ph, row_f.as_ref(), col_f.as_ref());
    let mut prod: Vec<Complex<f64>> = fa.par_iter().zip(&fb).map(|(x, y)| x * y).collect();
    drop((fa, fb));
    fft_rows(&mut prod, ph, col_i.as_ref());
    let mut back = transpose(&prod, ph, pw);
    drop(prod);
    fft_rows(&mut back, pw, row_i.as_ref());

    let scale = 1.0 / (pw * ph) as f64;
    let mut out = vec![false; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(v, row)| {
        for (u, bit) in row.iter_mut().enumerate() {
            *bit = back[v * pw + u].re * scale > 0.5;
        }
    });
    out
}

/// `(set cells)·cell²`.
pub fn mask_area(g: &GridMask) -> f64 {
    g.count() as f64 * g.cell * g.cell
}

/// Samples `k` pairs `x ∈ d2`, `y ∈ d1` uniformly (rejection from the bounding
/// square) and checks that every `x − y` lies in [`geometry::minkowski_diff_disks`].
/// Returns the largest observed `|(x − y) − (O₂ − O₁)|`.
///
/// The generator is PCG-XSH-RR 64/32 (a 64-bit LCG with a permuted 32-bit
/// output) seeded through `seed_from_u64`, so runs are reproducible.
pub fn sample_diff_check(d2: &Disk, d1: &Disk, k: usize, seed: u64) -> Result<f64> {
    if k < 1000 {
        return Err(Error::out_of_range("sample count", format!("{k} < 1000")));
    }
    let target = geometry::minkowski_diff_disks(d2, d1);
    let tol = 1e-12 * target.radius.max(1.0);
    let mut rng = Pcg32::seed_from_u64(seed);
    let mut in_disk = |d: &Disk| loop {
        let u: f64 = rng.random_range(-1.0..=1.0);
        let v: f64 = rng.random_range(-1.0..=1.0);
        if u * u + v * v <= 1.0 {
            break d.center + ComplexPoint::new(u, v).scale(d.radius);
        }
    };
    let mut sup: f64 = 0.0;
    for _ in 0..k {
        let x = in_disk(d2);
        let y = in_disk(d1);
        let dist = (x - y).dist(target.center);
        if dist > target.radius + tol {
            return Err(Error::ContainmentViolation {
                distance: dist,
                radius: target.radius,
            });
        }
        sup = sup.max(dist);
    }
    Ok(sup)
}
