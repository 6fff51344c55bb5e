//! Output formats: CSV tables, PGM mask dumps with JSON sidecars, PPM images.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{BoundRow, RadiusBounds};
use crate::cover::PieceCover;
use crate::geometry::{ComplexPoint, Disk};
use crate::numeric::fmt17;
use crate::oracle::{GridMask, MaskMode};

pub const MASK_SCHEMA: &str = "juliadiff.mask/1";

/// `n,R_n,r_n,K_n,bound,ratio_step`; `radii` must hold at least `R_n` for every row.
pub fn bounds_csv(rows: &[BoundRow], radii: &RadiusBounds) -> String {
    let mut out = String::from("n,R_n,r_n,K_n,bound,ratio_step\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.n,
            fmt17(radii.outer(row.n)),
            fmt17(radii.inner(row.n)),
            fmt17(row.k_n),
            fmt17(row.bound),
            fmt17(row.ratio_step),
        );
    }
    out
}

/// `seq,center_re,center_im,radius,sampled_diam`.
pub fn pieces_csv(pieces: &[PieceCover]) -> String {
    let mut out = String::from("seq,center_re,center_im,radius,sampled_diam\n");
    for pc in pieces {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            pc.seq,
            fmt17(pc.disk.center.re),
            fmt17(pc.disk.center.im),
            fmt17(pc.disk.radius),
            fmt17(pc.sampled_diam),
        );
    }
    out
}

/// `i,j,center_re,center_im,radius` for a row-major `L × L` difference cover.
pub fn difference_cover_csv(cover: &[Disk], side: usize) -> String {
    let mut out = String::from("i,j,center_re,center_im,radius\n");
    for (k, d) in cover.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            k / side,
            k % side,
            fmt17(d.center.re),
            fmt17(d.center.im),
            fmt17(d.radius),
        );
    }
    out
}

/// Binary PGM (P5), 0 = out, 255 = in, top row first.
pub fn mask_pgm(mask: &GridMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width, mask.height).into_bytes();
    out.reserve(mask.width * mask.height);
    for row in mask.bits.chunks(mask.width).rev() {
        out.extend(row.iter().map(|&b| if b { 255u8 } else { 0 }));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaskSidecar {
    pub schema: &'static str,
    pub origin: ComplexPoint,
    pub cell: f64,
    pub width: usize,
    pub height: usize,
    pub mode: MaskMode,
    pub n: usize,
    pub c: ComplexPoint,
}

impl MaskSidecar {
    pub fn new(mask: &GridMask, n: usize, c: ComplexPoint) -> Self {
        Self {
            schema: MASK_SCHEMA,
            origin: mask.origin,
            cell: mask.cell,
            width: mask.width,
            height: mask.height,
            mode: mask.mode,
            n,
            c,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes") + "\n"
    }
}

/// Binary PPM (P6) from row-major RGB triples, top row first.
pub fn ppm(width: usize, height: usize, rgb: &[[u8; 3]]) -> Vec<u8> {
    assert_eq!(rgb.len(), width * height, "pixel count");
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(3 * rgb.len());
    for px in rgb {
        out.extend_from_slice(px);
    }
    out
}
