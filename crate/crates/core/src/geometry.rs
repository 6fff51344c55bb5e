//! Planar primitives: the quadratic map and its two inverse branches, point-set
//! diameters, the half-lune enclosing disk and differences of disks.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull;

/// Point sets up to this size use the quadratic all-pairs diameter.
pub const ALL_PAIRS_LIMIT: usize = 4096;

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const ZERO: ComplexPoint = ComplexPoint { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(r * c, r * s)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn dist_sqr(self, other: Self) -> f64 {
        (self - other).norm_sqr()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    pub fn square(self) -> Self {
        Self::new(
            self.re * self.re - self.im * self.im,
            2.0 * self.re * self.im,
        )
    }

    /// Argument normalized into `[0, 2π)`.
    pub fn arg(self) -> f64 {
        let theta = self.im.atan2(self.re);
        if theta < 0.0 {
            let shifted = theta + 2.0 * PI;
            // -tiny + 2π rounds up to 2π
            if shifted >= 2.0 * PI {
                f64::from_bits((2.0 * PI).to_bits() - 1)
            } else {
                shifted
            }
        } else {
            theta
        }
    }

    pub fn midpoint(self, other: Self) -> Self {
        Self::new(0.5 * (self.re + other.re), 0.5 * (self.im + other.im))
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for ComplexPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexPoint {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for ComplexPoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl From<(f64, f64)> for ComplexPoint {
    fn from((re, im): (f64, f64)) -> Self {
        Self::new(re, im)
    }
}

/// The parameter `c` of `z ↦ z² + c`, restricted to the Cantor regime `|c| > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Parameter {
    c: ComplexPoint,
    abs_c: f64,
}

impl Parameter {
    pub fn new(c: ComplexPoint) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::NonFinite("c"));
        }
        let abs_c = c.norm();
        if abs_c <= 2.0 {
            return Err(Error::NotCantorRegime { abs_c });
        }
        Ok(Self { c, abs_c })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(ComplexPoint::new(re, im))
    }

    pub fn c(&self) -> ComplexPoint {
        self.c
    }

    pub fn abs_c(&self) -> f64 {
        self.abs_c
    }

    /// The closed disk `{|z| ≤ |c|}` whose preimages define the pieces.
    pub fn domain(&self) -> Disk {
        Disk::new(ComplexPoint::ZERO, self.abs_c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: ComplexPoint,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: ComplexPoint, radius: f64) -> Self {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Self { center, radius }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// Closed-disk membership with an absolute slack.
    pub fn contains(&self, z: ComplexPoint, slack: f64) -> bool {
        self.center.dist(z) <= self.radius + slack
    }
}

/// Sign selecting one of the two square-root branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// One letter of a symbol sequence; selects the inverse branch `G₀` or `G₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Symbol {
    Zero = 0,
    One = 1,
}

impl Symbol {
    pub const ALL: [Symbol; 2] = [Symbol::Zero, Symbol::One];

    pub fn sign(self) -> Sign {
        match self {
            Symbol::Zero => Sign::Plus,
            Symbol::One => Sign::Minus,
        }
    }
}

impl TryFrom<u8> for Symbol {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Symbol::Zero),
            1 => Ok(Symbol::One),
            _ => Err(Error::out_of_range("symbol", format!("{v} is not 0 or 1"))),
        }
    }
}

pub fn forward_map(z: ComplexPoint, p: &Parameter) -> ComplexPoint {
    z.square() + p.c
}

/// `±√r·e^{iθ/2}` for `z = r·e^{iθ}` with `θ ∈ [0, 2π)`.
///
/// The plus branch lands in the upper half-plane or on the positive real
/// axis (argument in `[0, π)`); the minus branch is its negation. Computed
/// from the principal root with the cancellation-free half-angle formulas,
/// then flipped into the `[0, π)` half-plane.
pub fn sqrt_branch(z: ComplexPoint, sign: Sign) -> ComplexPoint {
    let plus = if z.im == 0.0 {
        if z.re >= 0.0 {
            ComplexPoint::new(z.re.sqrt(), 0.0)
        } else {
            ComplexPoint::new(0.0, (-z.re).sqrt())
        }
    } else {
        let t = ((z.re.abs() + z.norm()) * 0.5).sqrt();
        let principal = if z.re >= 0.0 {
            ComplexPoint::new(t, z.im / (2.0 * t))
        } else {
            ComplexPoint::new(z.im.abs() / (2.0 * t), t.copysign(z.im))
        };
        if principal.im < 0.0 {
            -principal
        } else {
            principal
        }
    };
    match sign {
        Sign::Plus => plus,
        Sign::Minus => -plus,
    }
}

/// `G_s(z) = F_±(z − c)`, a right inverse of the quadratic map.
pub fn inverse_branch(z: ComplexPoint, s: Symbol, p: &Parameter) -> ComplexPoint {
    sqrt_branch(z - p.c, s.sign())
}

/// Largest pairwise distance. Panics on an empty slice.
pub fn diameter(points: &[ComplexPoint]) -> f64 {
    diametral_pair(points).2
}

/// A pair `(i, j)`, `i ≤ j`, realizing the diameter, and the diameter itself.
/// Ties go to the lexicographically smallest index pair.
///
/// Panics on an empty slice.
pub fn diametral_pair(points: &[ComplexPoint]) -> (usize, usize, f64) {
    assert!(!points.is_empty(), "diameter of an empty point set");
    let (i, j, d2) = if points.len() <= ALL_PAIRS_LIMIT {
        all_pairs_diametral(points)
    } else {
        hull::calipers_diametral(points)
    };
    (i, j, d2.sqrt())
}

/// Returns `(i, j, squared distance)`.
pub(crate) fn all_pairs_diametral(points: &[ComplexPoint]) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0);
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate().skip(i + 1) {
            let d2 = a.dist_sqr(b);
            if d2 > best.2 {
                best = (i, j, d2);
            }
        }
    }
    best
}

/// Disk centred at the midpoint of a diametral pair with radius `(√3/2)·diam`.
///
/// Every point of the set lies in the lens cut out by the two disks of radius
/// `diam` around the pair, and that lens fits in this disk. Panics on an empty
/// slice.
pub fn enclosing_disk(points: &[ComplexPoint]) -> Disk {
    let (i, j, d) = diametral_pair(points);
    enclosing_disk_from_pair(points[i], points[j], d)
}

/// [`enclosing_disk`] for an already known diametral pair `x, y` at distance `diam`.
pub fn enclosing_disk_from_pair(x: ComplexPoint, y: ComplexPoint, diam: f64) -> Disk {
    Disk::new(x.midpoint(y), HALF_SQRT3 * diam)
}

/// The difference set `d2 − d1 = {x − y : x ∈ d2, y ∈ d1}`.
///
/// Exactly the disk centred at `O₂ − O₁` with radius `r₁ + r₂`; for equal radii
/// `R` that is `2R`.
pub fn minkowski_diff_disks(d2: &Disk, d1: &Disk) -> Disk {
    Disk::new(d2.center - d1.center, d1.radius + d2.radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    fn close(a: ComplexPoint, b: ComplexPoint, tol: f64) -> bool {
        a.dist(b) <= tol
    }

    fn c5() -> Parameter {
        Parameter::from_parts(5.0, 0.0).unwrap()
    }

    #[test]
    fn parameter_rejects_connected_regime() {
        assert!(matches!(
            Parameter::from_parts(2.0, 0.0),
            Err(Error::NotCantorRegime { .. })
        ));
        assert!(Parameter::from_parts(f64::NAN, 3.0).is_err());
        let p = Parameter::from_parts(3.0, 4.0).unwrap();
        assert!((p.abs_c() - 5.0).abs() <= 5.0 * 1e-15);
    }

    #[test]
    fn forward_map_examples() {
        let p = c5();
        assert_eq!(forward_map(pt(0.0, 0.0), &p), pt(5.0, 0.0));
        assert_eq!(forward_map(pt(0.0, 1.0), &p), pt(4.0, 0.0));
        let q = Parameter::from_parts(-5.5, 0.0).unwrap();
        assert_eq!(forward_map(pt(1.0, 1.0), &q), pt(-5.5, 2.0));
    }

    #[test]
    fn sqrt_branch_examples() {
        assert_eq!(sqrt_branch(pt(4.0, 0.0), Sign::Plus), pt(2.0, 0.0));
        assert_eq!(sqrt_branch(pt(-4.0, 0.0), Sign::Plus), pt(0.0, 2.0));
        assert_eq!(sqrt_branch(pt(4.0, 0.0), Sign::Minus), pt(-2.0, 0.0));
        assert_eq!(sqrt_branch(ComplexPoint::ZERO, Sign::Plus), ComplexPoint::ZERO);
        // just below the cut: θ ≈ 2π halves to ≈ π
        let w = sqrt_branch(pt(4.0, -1e-9), Sign::Plus);
        assert!(close(w, pt(-2.0, 0.0), 1e-9));
        assert!(w.im > 0.0);
    }

    #[test]
    fn sqrt_branch_matches_polar_definition() {
        for k in 0..360 {
            let theta = (k as f64 + 0.5) * PI / 180.0;
            let z = ComplexPoint::from_polar(2.5, theta);
            let expected = ComplexPoint::from_polar(2.5f64.sqrt(), theta / 2.0);
            assert!(close(sqrt_branch(z, Sign::Plus), expected, 1e-14), "θ={theta}");
        }
    }

    #[test]
    fn inverse_branch_examples() {
        let p = c5();
        assert_eq!(inverse_branch(pt(5.0, 0.0), Symbol::Zero, &p), ComplexPoint::ZERO);
        assert_eq!(inverse_branch(pt(9.0, 0.0), Symbol::Zero, &p), pt(2.0, 0.0));
        assert_eq!(inverse_branch(pt(9.0, 0.0), Symbol::One, &p), pt(-2.0, 0.0));
        let w = inverse_branch(pt(5.0, 4.0), Symbol::Zero, &p);
        let s2 = 2f64.sqrt();
        assert!(close(w, pt(s2, s2), 1e-15));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&[pt(0.0, 0.0), pt(3.0, 0.0), pt(0.0, 4.0)]), 5.0);
        assert_eq!(diameter(&[pt(7.0, 0.0)]), 0.0);
        let circle: Vec<_> = (0..64)
            .map(|k| ComplexPoint::from_polar(1.0, 2.0 * PI * k as f64 / 64.0))
            .collect();
        assert!((diameter(&circle) - 2.0).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "empty")]
    fn diameter_of_empty_set_panics() {
        diameter(&[]);
    }

    #[test]
    fn diameter_large_sets_use_calipers_consistently() {
        let n = ALL_PAIRS_LIMIT + 500;
        let pts: Vec<_> = (0..n)
            .map(|k| {
                let t = k as f64 * 0.618_033_988_749_895;
                pt((t * 7.1).sin() * 3.0, (t * 3.3).cos() * 1.5)
            })
            .collect();
        let fast = diametral_pair(&pts);
        let slow = all_pairs_diametral(&pts);
        assert_eq!((fast.0, fast.1), (slow.0, slow.1));
        assert_eq!(fast.2, slow.2.sqrt());
    }

    #[test]
    fn enclosing_disk_examples() {
        let d = enclosing_disk(&[pt(-1.0, 0.0), pt(1.0, 0.0)]);
        assert_eq!(d.center, ComplexPoint::ZERO);
        assert!((d.radius - 3f64.sqrt()).abs() < 1e-15);

        let p = pt(2.0, -1.0);
        assert_eq!(enclosing_disk(&[p]), Disk::new(p, 0.0));
    }

    #[test]
    fn enclosing_disk_equilateral_triangle() {
        let tri = [pt(0.0, 0.0), pt(1.0, 0.0), pt(0.5, 3f64.sqrt() / 2.0)];
        let d = enclosing_disk(&tri);
        assert!((d.radius - 3f64.sqrt() / 2.0).abs() < 1e-15);
        // all sides tie at 1; (0, 1) is the lexicographically smallest pair
        assert_eq!(d.center, pt(0.5, 0.0));
        // oracle: for each choice of diametral pair the opposite vertex sits on
        // the boundary and the pair itself strictly inside
        for (a, b, other) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let center = tri[a].midpoint(tri[b]);
            let r = 3f64.sqrt() / 2.0;
            assert!((center.dist(tri[other]) - r).abs() < 1e-15);
            assert!(center.dist(tri[a]) < r && center.dist(tri[b]) < r);
        }
        for v in tri {
            assert!(d.contains(v, 1e-12 * d.radius));
        }
    }

    #[test]
    fn minkowski_difference_examples() {
        let unit = Disk::new(ComplexPoint::ZERO, 1.0);
        assert_eq!(minkowski_diff_disks(&unit, &unit), Disk::new(ComplexPoint::ZERO, 2.0));
        let d2 = Disk::new(pt(3.0, 4.0), 0.5);
        let d1 = Disk::new(pt(1.0, 1.0), 0.5);
        assert_eq!(minkowski_diff_disks(&d2, &d1), Disk::new(pt(2.0, 3.0), 1.0));
        let uneq = minkowski_diff_disks(&Disk::new(pt(1.0, 0.0), 0.25), &unit);
        assert_eq!(uneq, Disk::new(pt(1.0, 0.0), 1.25));
    }

    #[test]
    fn arg_is_normalized() {
        assert_eq!(pt(1.0, 0.0).arg(), 0.0);
        assert!((pt(-1.0, 0.0).arg() - PI).abs() < 1e-15);
        assert!((pt(0.0, -1.0).arg() - 1.5 * PI).abs() < 1e-15);
        assert!(pt(1.0, -1e-300).arg() < 2.0 * PI);
        assert!(pt(1.0, -1e-300).arg() > 6.28);
    }
}
