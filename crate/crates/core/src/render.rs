//! Fixed-palette PPM renders of piece covers and difference covers.

use crate::cover::PieceCover;
use crate::geometry::{ComplexPoint, Disk};
use crate::io::ppm;

const BACKGROUND: [u8; 3] = [12, 12, 16];
const AXES: [u8; 3] = [90, 90, 90];
const DOMAIN: [u8; 3] = [70, 110, 160];
const OUTLINE: [u8; 3] = [235, 170, 60];
const SAMPLE: [u8; 3] = [245, 245, 245];
const FILL: [u8; 3] = [40, 18, 6];

/// A square raster over `[−half_extent, half_extent]²`.
pub struct Canvas {
    size: usize,
    half_extent: f64,
    pixels: Vec<[u8; 3]>,
}

impl Canvas {
    pub fn new(size: usize, half_extent: f64) -> Self {
        Self {
            size,
            half_extent,
            pixels: vec![BACKGROUND; size * size],
        }
    }

    fn to_pixel(&self, z: ComplexPoint) -> (f64, f64) {
        let scale = self.size as f64 / (2.0 * self.half_extent);
        (
            (z.re + self.half_extent) * scale,
            (self.half_extent - z.im) * scale,
        )
    }

    fn put(&mut self, x: i64, y: i64, rgb: [u8; 3]) {
        if x >= 0 && y >= 0 && (x as usize) < self.size && (y as usize) < self.size {
            self.pixels[y as usize * self.size + x as usize] = rgb;
        }
    }

    fn add(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let px = &mut self.pixels[y * self.size + x];
        for (c, v) in px.iter_mut().zip(rgb) {
            *c = c.saturating_add(v);
        }
    }

    pub fn axes(&mut self) {
        let (ox, oy) = self.to_pixel(ComplexPoint::ZERO);
        for k in 0..self.size as i64 {
            self.put(ox.floor() as i64, k, AXES);
            self.put(k, oy.floor() as i64, AXES);
        }
    }

    pub fn point(&mut self, z: ComplexPoint, rgb: [u8; 3]) {
        let (x, y) = self.to_pixel(z);
        self.put(x.floor() as i64, y.floor() as i64, rgb);
    }

    pub fn circle(&mut self, d: &Disk, rgb: [u8; 3]) {
        let scale = self.size as f64 / (2.0 * self.half_extent);
        let steps = ((2.0 * std::f64::consts::PI * d.radius * scale).ceil() as usize).clamp(8, 1 << 16);
        for k in 0..steps {
            let t = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            self.point(d.center + ComplexPoint::from_polar(d.radius, t), rgb);
        }
    }

    /// Adds `rgb` to every pixel whose centre lies in `d`, saturating.
    pub fn fill(&mut self, d: &Disk, rgb: [u8; 3]) {
        let scale = self.size as f64 / (2.0 * self.half_extent);
        let (cx, cy) = self.to_pixel(d.center);
        let r = d.radius * scale;
        let y0 = (cy - r).floor().max(0.0) as usize;
        let y1 = ((cy + r).ceil() as i64).clamp(0, self.size as i64) as usize;
        for y in y0..y1 {
            let dy = y as f64 + 0.5 - cy;
            if dy.abs() > r {
                continue;
            }
            let dx = (r * r - dy * dy).sqrt();
            let x0 = (cx - dx - 0.5).ceil().max(0.0) as usize;
            let x1 = ((cx + dx - 0.5).floor() as i64).min(self.size as i64 - 1);
            if x1 < x0 as i64 {
                continue;
            }
            for x in x0..=x1 as usize {
                self.add(x, y, rgb);
            }
        }
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        ppm(self.size, self.size, &self.pixels)
    }
}

/// The domain disk, every piece's enclosing disk outlined and its samples.
pub fn render_cover(pieces: &[PieceCover], domain: &Disk, size: usize) -> Vec<u8> {
    let mut canvas = Canvas::new(size, domain.radius * 1.05);
    canvas.axes();
    canvas.circle(domain, DOMAIN);
    for pc in pieces {
        canvas.circle(&pc.disk, OUTLINE);
    }
    for pc in pieces {
        for &z in &pc.samples {
            canvas.point(z, SAMPLE);
        }
    }
    canvas.to_ppm()
}

/// Difference disks filled at low intensity so overlaps read brighter.
pub fn render_difference(cover: &[Disk], size: usize) -> Vec<u8> {
    let extent = cover
        .iter()
        .map(|d| d.center.re.abs().max(d.center.im.abs()) + d.radius)
        .fold(1e-9, f64::max)
        * 1.05;
    let mut canvas = Canvas::new(size, extent);
    for d in cover {
        canvas.fill(d, FILL);
    }
    canvas.axes();
    canvas.to_ppm()
}
