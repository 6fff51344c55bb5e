//! Symbolic pieces `I_{s₀…s_n} = G_{s₀}∘…∘G_{s_n}(D)` and the difference-disk
//! cover of `Q⁻ⁿ(D) − Q⁻ⁿ(D)`.
//!
//! A piece is represented by the images of `m` equally spaced samples of `∂D`.
//! The inverse branches are open maps, so the image of the boundary bounds the
//! piece and carries its diameter. This holds while the square-root cut (the
//! positive real axis) stays off the interior of `D − c`, which is the case
//! exactly when `Re c ≥ 0`; for `Re c < 0` generation is refused.

use std::f64::consts::SQRT_2;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::boundary_samples;
use crate::error::{Error, Result};
use crate::geometry::{
    self, diametral_pair, minkowski_diff_disks, ComplexPoint, Disk, Parameter, Symbol,
};
use crate::limits::Limits;
use crate::numeric::pairwise_sum;

pub const DEFAULT_SAMPLES: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SymbolSequence(Vec<Symbol>);

impl SymbolSequence {
    pub fn new(bits: Vec<Symbol>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::out_of_range("symbol sequence", "must be non-empty"));
        }
        Ok(Self(bits))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// `n` for a sequence `s₀…s_n`.
    pub fn depth(&self) -> usize {
        self.0.len() - 1
    }

    /// `s₁…s_n`, the sequence of the piece this one is the `G_{s₀}`-image of.
    pub fn parent(&self) -> Option<SymbolSequence> {
        (self.0.len() > 1).then(|| SymbolSequence(self.0[1..].to_vec()))
    }

    /// `s₀…s_{n−1}`: the enclosing piece one level up in the nesting.
    pub fn prefix(&self) -> Option<SymbolSequence> {
        (self.0.len() > 1).then(|| SymbolSequence(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Symbol::Zero => "0",
                Symbol::One => "1",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SymbolSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                _ => Err(Error::out_of_range("symbol", format!("{ch:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PieceCover {
    pub seq: SymbolSequence,
    pub samples: Vec<ComplexPoint>,
    pub sampled_diam: f64,
    pub disk: Disk,
}

impl PieceCover {
    fn from_samples(seq: SymbolSequence, samples: Vec<ComplexPoint>) -> Self {
        let (i, j, d) = diametral_pair(&samples);
        let disk = geometry::enclosing_disk_from_pair(samples[i], samples[j], d);
        Self {
            seq,
            samples,
            sampled_diam: d,
            disk,
        }
    }
}

fn check_generation(p: &Parameter, n: usize, m: usize, limits: &Limits) -> Result<()> {
    if p.c().re < 0.0 {
        return Err(Error::BranchCutCrossesDomain);
    }
    if m < 16 {
        return Err(Error::out_of_range("samples", format!("{m} < 16")));
    }
    if n >= 40 {
        return Err(Error::out_of_range("depth", format!("{n} >= 40")));
    }
    let points = (1u64 << (n + 1)).saturating_mul(m as u64);
    Limits::check(
        points,
        limits.max_points,
        "piece samples",
        "lower the depth or the sample count",
    )
}

/// All `2^{n+1}` depth-`n` pieces in lexicographic order of `s₀…s_n`.
///
/// Evaluation runs right to left: `G_{s_n}` is applied to the boundary samples
/// first, and every suffix is computed once and shared by both of its
/// extensions.
pub fn generate_pieces(p: &Parameter, n: usize, m: usize) -> Result<Vec<PieceCover>> {
    generate_pieces_with(p, n, m, &Limits::default())
}

pub fn generate_pieces_with(
    p: &Parameter,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<Vec<PieceCover>> {
    let levels = generate_levels_with(p, n, m, limits)?;
    Ok(levels.into_iter().last().unwrap_or_default())
}

/// Pieces at every depth `0..=n`; entry `k` holds the depth-`k` pieces.
pub fn generate_levels(p: &Parameter, n: usize, m: usize) -> Result<Vec<Vec<PieceCover>>> {
    generate_levels_with(p, n, m, &Limits::default())
}

pub fn generate_levels_with(
    p: &Parameter,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<Vec<Vec<PieceCover>>> {
    check_generation(p, n, m, limits)?;
    let boundary = boundary_samples(p.abs_c(), m);

    // Entry k holds (suffix, samples) for the 2^{k+1} suffixes of length k+1.
    // Sorting by the full sequence puts each level into lexicographic order.
    let mut level: Vec<(Vec<Symbol>, Vec<ComplexPoint>)> = vec![(Vec::new(), boundary)];
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let mut next: Vec<(Vec<Symbol>, Vec<ComplexPoint>)> = level
            .par_iter()
            .flat_map_iter(|(suffix, pts)| {
                Symbol::ALL.into_iter().map(move |s| {
                    let mut seq = Vec::with_capacity(suffix.len() + 1);
                    seq.push(s);
                    seq.extend_from_slice(suffix);
                    let image = pts
                        .iter()
                        .map(|&z| geometry::inverse_branch(z, s, p))
                        .collect();
                    (seq, image)
                })
            })
            .collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        let pieces = next
            .par_iter()
            .map(|(seq, pts)| PieceCover::from_samples(SymbolSequence(seq.clone()), pts.clone()))
            .collect();
        out.push(pieces);
        level = next;
    }
    Ok(out)
}

pub fn piece_disks(pieces: &[PieceCover]) -> Vec<Disk> {
    pieces.iter().map(|pc| pc.disk).collect()
}

/// Row-major `(i, j) ↦ disks[i] − disks[j]`, including the diagonal.
pub fn difference_cover(disks: &[Disk]) -> Result<Vec<Disk>> {
    difference_cover_with(disks, &Limits::default())
}

pub fn difference_cover_with(disks: &[Disk], limits: &Limits) -> Result<Vec<Disk>> {
    let len = disks.len() as u64;
    Limits::check(
        len.saturating_mul(len),
        limits.max_pairs,
        "difference-cover pairs",
        "lower the depth, or use the sum of areas only",
    )?;
    Ok(disks
        .par_iter()
        .flat_map_iter(|a| disks.iter().map(move |b| minkowski_diff_disks(a, b)))
        .collect())
}

/// `Σ π·radius²` with order-fixed pairwise summation.
pub fn sum_area(disks: &[Disk]) -> f64 {
    let areas: Vec<f64> = disks.iter().map(Disk::area).collect();
    pairwise_sum(&areas)
}

/// Sum of the cover areas without materializing the `L²` pairs:
/// `Σ_{i,j} π(ρ_i + ρ_j)²`.
pub fn pair_sum_area(disks: &[Disk]) -> f64 {
    let rows: Vec<f64> = disks
        .par_iter()
        .map(|a| {
            let row: Vec<f64> = disks
                .iter()
                .map(|b| std::f64::consts::PI * (a.radius + b.radius).powi(2))
                .collect();
            pairwise_sum(&row)
        })
        .collect();
    pairwise_sum(&rows)
}

/// Outer raster estimate of the area of a union of disks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnionArea {
    pub area: f64,
    pub cells: u64,
    pub cell: f64,
    /// `Σ π((ρ + 2h)² − ρ²)` with `h` the half cell diagonal: the most the
    /// dilated cell test can add over the exact area sum.
    pub dilation_margin: f64,
}

/// Counts lattice cells (centres at integer multiples of `cell`) whose centre
/// lies within `radius + cell·√2/2` of some disk centre.
///
/// Every cell meeting a disk is counted, so `area` bounds the union from above;
/// every counted cell lies in the disk dilated by a full cell diagonal, which
/// gives `area ≤ sum_area + dilation_margin`.
pub fn union_area_grid(disks: &[Disk], cell: f64) -> Result<UnionArea> {
    union_area_grid_with(disks, cell, &Limits::default())
}

pub fn union_area_grid_with(disks: &[Disk], cell: f64, limits: &Limits) -> Result<UnionArea> {
    if !(cell > 0.0 && cell.is_finite()) {
        return Err(Error::out_of_range("cell", format!("{cell} is not positive")));
    }
    let half_diag = cell * SQRT_2 / 2.0;
    if disks.is_empty() {
        return Ok(UnionArea {
            area: 0.0,
            cells: 0,
            cell,
            dilation_margin: 0.0,
        });
    }
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for d in disks {
        if !d.center.is_finite() || !d.radius.is_finite() {
            return Err(Error::NonFinite("disk"));
        }
        let r = d.radius + half_diag;
        lo = (lo.0.min(d.center.re - r), lo.1.min(d.center.im - r));
        hi = (hi.0.max(d.center.re + r), hi.1.max(d.center.im + r));
    }
    let i0 = (lo.0 / cell).floor() as i64 - 1;
    let j0 = (lo.1 / cell).floor() as i64 - 1;
    let width = ((hi.0 / cell).ceil() as i64 + 1 - i0 + 1) as usize;
    let height = ((hi.1 / cell).ceil() as i64 + 1 - j0 + 1) as usize;
    Limits::check(
        (width as u64).saturating_mul(height as u64),
        limits.max_cells,
        "union raster cells",
        "use a coarser cell",
    )?;

    let cells: u64 = (0..height)
        .into_par_iter()
        .map(|row| {
            let y = (j0 + row as i64) as f64 * cell;
            let mut marks = vec![false; width];
            for d in disks {
                let reach = d.radius + half_diag;
                let dy = y - d.center.im;
                if dy.abs() > reach {
                    continue;
                }
                let dx = (reach * reach - dy * dy).max(0.0).sqrt();
                let first = ((d.center.re - dx) / cell).ceil() as i64 - i0;
                let last = ((d.center.re + dx) / cell).floor() as i64 - i0;
                let first = first.max(0) as usize;
                let last = last.min(width as i64 - 1);
                if last < first as i64 {
                    continue;
                }
                for (k, mark) in marks[first..=last as usize].iter_mut().enumerate() {
                    if !*mark {
                        let x = (i0 + (first + k) as i64) as f64 * cell;
                        let cx = x - d.center.re;
                        *mark = cx * cx + dy * dy <= reach * reach;
                    }
                }
            }
            marks.iter().filter(|&&b| b).count() as u64
        })
        .sum();

    let margins: Vec<f64> = disks
        .iter()
        .map(|d| {
            let grown = d.radius + 2.0 * half_diag;
            std::f64::consts::PI * (grown * grown - d.radius * d.radius)
        })
        .collect();
    Ok(UnionArea {
        area: cells as f64 * cell * cell,
        cells,
        cell,
        dilation_margin: pairwise_sum(&margins),
    })
}

/// Arguments of a piece's samples span at most this much (`[0, 2π)` normalization).
pub fn argument_spread(samples: &[ComplexPoint]) -> f64 {
    let (lo, hi) = samples
        .iter()
        .filter(|z| **z != ComplexPoint::ZERO)
        .map(|z| z.arg())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| {
            (lo.min(a), hi.max(a))
        });
    if lo > hi {
        0.0
    } else {
        hi - lo
    }
}
