//! Scalar side of the argument: radius recursions and their limits, the
//! piece-diameter bound `K_n`, the depth-`n` area bound `12π·4ⁿ·K_n²`, the
//! parameter threshold `|c| > 3 + √3` and the geometric decay data.
//!
//! For `z` in the depth-`n` preimage `Q_c⁻ⁿ(D)` the modulus satisfies
//! `r_n ≤ |z| ≤ R_n` with
//!
//! ```text
//! R_1 = √(2|c|),  R_{k+1} = √(|c| + R_k)
//! r_1 = 0,        r_{k+1} = √(|c| − R_k)
//! ```
//!
//! Both recursions are evaluated in `f64`. `sqrt` and `+`/`−` are monotone
//! under round-to-nearest, so the computed sequences inherit monotonicity
//! exactly; once they reach their fixed point they stay there.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, ComplexPoint, Parameter, Symbol};

/// `K_n` switches from a direct product to a log-space sum above this depth.
pub const LOG_SPACE_DEPTH: usize = 64;

/// Longest `r` scan allowed when searching for the decay onset `N`.
const MAX_ONSET_SCAN: usize = 10_000_000;

pub fn theorem_threshold() -> f64 {
    3.0 + 3f64.sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusBounds {
    abs_c: f64,
    outer: Vec<f64>,
    inner: Vec<f64>,
    outer_limit: f64,
    inner_limit: f64,
}

impl RadiusBounds {
    pub fn abs_c(&self) -> f64 {
        self.abs_c
    }

    /// Number of terms held (`R_1 … R_len`).
    pub fn len(&self) -> usize {
        self.outer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outer.is_empty()
    }

    /// `R_k`, 1-indexed.
    pub fn outer(&self, k: usize) -> f64 {
        self.outer[k - 1]
    }

    /// `r_k`, 1-indexed.
    pub fn inner(&self, k: usize) -> f64 {
        self.inner[k - 1]
    }

    pub fn outer_seq(&self) -> &[f64] {
        &self.outer
    }

    pub fn inner_seq(&self) -> &[f64] {
        &self.inner
    }

    pub fn outer_limit(&self) -> f64 {
        self.outer_limit
    }

    pub fn inner_limit(&self) -> f64 {
        self.inner_limit
    }

    fn require(&self, k: usize) -> Result<()> {
        if k > self.len() {
            Err(Error::out_of_range(
                "radius index",
                format!("needs r_{k}, only {} terms computed", self.len()),
            ))
        } else {
            Ok(())
        }
    }

    /// `ln K_n` for `n ≥ 1`.
    fn ln_k_n(&self, n: usize, diam_i0: f64) -> Result<f64> {
        check_depth(n)?;
        self.require(n + 1)?;
        let ln_prod: f64 = (2..=n + 1).map(|k| self.inner(k).ln()).sum();
        Ok(-(n as f64) * 0.5 * LN_2 - ln_prod + diam_i0.ln())
    }

    /// `K_n = 2^{−n/2}·(r_2⋯r_{n+1})⁻¹·diam I₀`, the bound on every depth-`n`
    /// piece diameter.
    pub fn k_n(&self, n: usize, diam_i0: f64) -> Result<f64> {
        check_depth(n)?;
        self.require(n + 1)?;
        if n > LOG_SPACE_DEPTH {
            return Ok(self.ln_k_n(n, diam_i0)?.exp());
        }
        let prod: f64 = (2..=n + 1).map(|k| self.inner(k)).product();
        Ok(2f64.powf(-(n as f64) / 2.0) / prod * diam_i0)
    }

    pub fn bound_row(&self, n: usize, diam_i0: f64) -> Result<BoundRow> {
        self.require(n + 2)?;
        let k_n = self.k_n(n, diam_i0)?;
        let bound = if n > LOG_SPACE_DEPTH {
            ((12.0 * PI).ln() + n as f64 * 4f64.ln() + 2.0 * self.ln_k_n(n, diam_i0)?).exp()
        } else {
            12.0 * PI * 4f64.powi(n as i32) * k_n * k_n
        };
        let r = self.inner(n + 2);
        Ok(BoundRow {
            n,
            k_n,
            bound,
            ratio_step: 2.0 / (r * r),
        })
    }
}

fn check_depth(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::out_of_range("depth", "K_n is defined for n >= 1"))
    } else {
        Ok(())
    }
}

/// One row of the depth table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub k_n: f64,
    /// `12π·4ⁿ·K_n²`, the upper bound on `m(Q⁻ⁿ(D) − Q⁻ⁿ(D))`.
    pub bound: f64,
    /// `bound(n+1)/bound(n) = 2/r_{n+2}²`.
    pub ratio_step: f64,
}

pub fn radius_sequences(p: &Parameter, n_max: usize) -> Result<RadiusBounds> {
    if n_max == 0 {
        return Err(Error::out_of_range("n_max", "need at least one term"));
    }
    let a = p.abs_c();
    let mut outer = Vec::with_capacity(n_max);
    let mut inner = Vec::with_capacity(n_max);
    outer.push((2.0 * a).sqrt());
    inner.push(0.0);
    for k in 1..n_max {
        let prev = outer[k - 1];
        outer.push((a + prev).sqrt());
        inner.push((a - prev).sqrt());
    }
    let (outer_limit, inner_limit) = radius_limits(p);
    Ok(RadiusBounds {
        abs_c: a,
        outer,
        inner,
        outer_limit,
        inner_limit,
    })
}

/// Closed-form fixed points `(R_∞, r_∞)`:
/// `R_∞ = (1 + √(1+4|c|))/2`, `r_∞ = √((2|c| − 1 − √(1+4|c|))/2)`.
pub fn radius_limits(p: &Parameter) -> (f64, f64) {
    let a = p.abs_c();
    let s = (1.0 + 4.0 * a).sqrt();
    ((1.0 + s) / 2.0, ((2.0 * a - 1.0 - s) / 2.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiamMode {
    /// `2R_1`, a true upper bound on `diam I₀`.
    Certified,
    /// Diameter of `samples` boundary points of `D` pushed through `G₀`; a
    /// lower estimate, for judging how tight the certified value is.
    Sampled { samples: usize },
}

pub fn diam_i0_bound(p: &Parameter, mode: DiamMode) -> Result<f64> {
    match mode {
        DiamMode::Certified => Ok(2.0 * (2.0 * p.abs_c()).sqrt()),
        DiamMode::Sampled { samples } => {
            if samples < 16 {
                return Err(Error::out_of_range("samples", format!("{samples} < 16")));
            }
            let pts: Vec<_> = boundary_samples(p.abs_c(), samples)
                .into_iter()
                .map(|z| geometry::inverse_branch(z, Symbol::Zero, p))
                .collect();
            Ok(geometry::diameter(&pts))
        }
    }
}

/// `m` equally spaced points on the circle `|z| = radius`, starting at angle 0.
pub fn boundary_samples(radius: f64, m: usize) -> Vec<ComplexPoint> {
    (0..m)
        .map(|k| ComplexPoint::from_polar(radius, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// `K_n` computed from scratch (see [`RadiusBounds::k_n`]).
pub fn k_n(p: &Parameter, n: usize, diam_i0: f64) -> Result<f64> {
    check_depth(n)?;
    radius_sequences(p, n + 1)?.k_n(n, diam_i0)
}

pub fn lemma4_bound(p: &Parameter, n: usize, diam_i0: f64) -> Result<BoundRow> {
    check_depth(n)?;
    radius_sequences(p, n + 2)?.bound_row(n, diam_i0)
}

/// Rows `1..=n_max` of the depth table.
pub fn bound_table(p: &Parameter, n_max: usize, diam_i0: f64) -> Result<Vec<BoundRow>> {
    let radii = radius_sequences(p, n_max + 2)?;
    (1..=n_max).map(|n| radii.bound_row(n, diam_i0)).collect()
}

/// `|c| > 3 + √3`, i.e. the upper branch of `|c|² − 6|c| + 6 > 0`.
///
/// Compared against the threshold directly so the boundary value itself is
/// rejected exactly rather than by the sign of a rounded polynomial.
pub fn theorem_condition(p: &Parameter) -> bool {
    p.abs_c() > theorem_threshold()
}

/// Width of the admissible interval for `ε`: `2|c| − 1 − √(1+4|c|) − 4`.
pub fn epsilon_margin(p: &Parameter) -> f64 {
    let a = p.abs_c();
    2.0 * a - 1.0 - (1.0 + 4.0 * a).sqrt() - 4.0
}

/// Constants of the geometric decay `bound(n) ≤ k_const·ratioⁿ` for `n > N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayParams {
    pub epsilon: f64,
    pub delta: f64,
    /// `N`: `r_n ≥ √2 + δ` for every `n > N`.
    pub onset: usize,
    /// `(√2/(√2+δ))²`.
    pub ratio: f64,
    /// Prefactor anchored at `n = N + 1`.
    pub k_const: f64,
}

/// `epsilon = None` picks half of [`epsilon_margin`]. `K` is anchored on the
/// certified `diam I₀`.
pub fn decay_params(p: &Parameter, epsilon: Option<f64>) -> Result<DecayParams> {
    if !theorem_condition(p) {
        return Err(Error::DecayNotGuaranteed { abs_c: p.abs_c() });
    }
    let margin = epsilon_margin(p);
    let epsilon = match epsilon {
        None => margin / 2.0,
        Some(e) if e > 0.0 && e < margin => e,
        Some(e) => return Err(Error::EpsilonOutOfRange { epsilon: e, margin }),
    };
    let a = p.abs_c();
    let delta = ((2.0 * a - 1.0 - epsilon - (1.0 + 4.0 * a).sqrt()) / 2.0).sqrt() - SQRT_2;
    if !(delta > 0.0) {
        return Err(Error::Numerical(format!("delta = {delta} is not positive")));
    }
    let target = SQRT_2 + delta;

    // r is nondecreasing, so the first index reaching the target ends the scan
    let mut r = 0.0;
    let mut big_r = (2.0 * a).sqrt();
    let mut first = None;
    for n in 1..=MAX_ONSET_SCAN {
        if r >= target {
            first = Some(n);
            break;
        }
        r = (a - big_r).sqrt();
        big_r = (a + big_r).sqrt();
    }
    let first = first.ok_or_else(|| {
        Error::Numerical(format!("r_n did not reach {target} within {MAX_ONSET_SCAN} terms"))
    })?;
    let onset = first - 1;

    let ratio = (SQRT_2 / target).powi(2);
    let diam = diam_i0_bound(p, DiamMode::Certified)?;
    let anchor = lemma4_bound(p, onset + 1, diam)?;
    let k_const = anchor.bound / ratio.powi(onset as i32 + 1);
    Ok(DecayParams {
        epsilon,
        delta,
        onset,
        ratio,
        k_const,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen from a 40-digit mpmath evaluation of the recursions.
    const C5_OUTER: [f64; 4] = [
        3.162_277_660_168_379_3,
        2.856_970_013_872_805_7,
        2.803_028_721_556_881_5,
        2.793_390_184_266_580_7,
    ];
    const C5_INNER: [f64; 5] = [
        0.0,
        1.355_626_179_974_265_9,
        1.463_909_145_448_307_6,
        1.482_218_363_954_217_9,
        1.485_466_194_746_086_9,
    ];
    const C5_OUTER_LIMIT: f64 = 2.791_287_847_477_920_0;
    const C5_INNER_LIMIT: f64 = 1.486_173_661_629_784_1;
    const C3_INNER_LIMIT: f64 = 0.834_999_618_124_466_8;
    const C5_K1: f64 = 3.298_944_813_152_306_4;
    const C5_K2: f64 = 1.593_477_474_605_034_8;
    const C5_BOUND1: f64 = 1_641.123_298_159_684_3;

    fn param(re: f64) -> Parameter {
        Parameter::from_parts(re, 0.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn radius_fixtures_c5() {
        let rb = radius_sequences(&param(5.0), 5).unwrap();
        for (k, want) in C5_OUTER.iter().enumerate() {
            assert!(rel(rb.outer(k + 1), *want) < 1e-15, "R_{}", k + 1);
        }
        assert_eq!(rb.inner(1), 0.0);
        for (k, want) in C5_INNER.iter().enumerate().skip(1) {
            assert!(rel(rb.inner(k + 1), *want) < 1e-15, "r_{}", k + 1);
        }
        assert!(rel(rb.outer_limit(), C5_OUTER_LIMIT) < 1e-15);
        assert!(rel(rb.inner_limit(), C5_INNER_LIMIT) < 1e-15);
    }

    #[test]
    fn radius_fixtures_c3() {
        let rb = radius_sequences(&param(3.0), 2).unwrap();
        assert!(rel(rb.outer(1), 6f64.sqrt()) < 1e-16);
        assert!(rel(rb.inner_limit(), C3_INNER_LIMIT) < 1e-15);
    }

    #[test]
    fn limits_are_fixed_points() {
        for a in [2.5, 3.0, 5.0, 100.0] {
            let p = param(a);
            let (big, small) = radius_limits(&p);
            assert!((big * big - a - big).abs() <= 1e-12);
            assert!(rel(big * big, a + big) < 1e-14);
            assert!(rel(small, (a - big).sqrt()) < 1e-14);
        }
    }

    #[test]
    fn inner_limit_at_threshold_is_sqrt2() {
        let (_, small) = radius_limits(&param(theorem_threshold()));
        assert!((small - SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(radius_sequences(&param(5.0), 0).is_err());
    }

    #[test]
    fn diam_examples() {
        let p5 = param(5.0);
        let cert = diam_i0_bound(&p5, DiamMode::Certified).unwrap();
        assert!(rel(cert, 2.0 * 10f64.sqrt()) < 1e-16);
        let sampled = diam_i0_bound(&p5, DiamMode::Sampled { samples: 4096 }).unwrap();
        assert!(sampled <= cert);
        // regression fixture (numpy brute force): ∂D passes through c and -|c|,
        // whose images 0 and i√10 realize the sampled diameter
        assert!((sampled - 3.162_277_660_168_379_5).abs() < 1e-12, "{sampled}");
        assert!(diam_i0_bound(&p5, DiamMode::Sampled { samples: 8 }).is_err());
        let cert100 = diam_i0_bound(&param(100.0), DiamMode::Certified).unwrap();
        assert!(rel(cert100, 28.284_271_247_461_9) < 1e-15);
    }

    #[test]
    fn k_n_examples() {
        let p = param(5.0);
        let d = 2.0 * 10f64.sqrt();
        let k1 = k_n(&p, 1, d).unwrap();
        assert!(rel(k1, C5_K1) < 1e-14, "{k1}");
        let k2 = k_n(&p, 2, d).unwrap();
        assert!(rel(k2, C5_K2) < 1e-14);
        assert!(rel(k2, k1 / (SQRT_2 * C5_INNER[2])) < 1e-14);
        assert!(matches!(k_n(&p, 0, d), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn k_n_telescopes_across_log_space_switch() {
        let p = param(5.0);
        let rb = radius_sequences(&p, 400).unwrap();
        for n in 1..390 {
            let a = rb.k_n(n, 1.0).unwrap();
            let b = rb.k_n(n + 1, 1.0).unwrap();
            assert!(rel(b * SQRT_2 * rb.inner(n + 2), a) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn lemma4_examples() {
        let p = param(5.0);
        let d = diam_i0_bound(&p, DiamMode::Certified).unwrap();
        let row = lemma4_bound(&p, 1, d).unwrap();
        assert!(rel(row.bound, C5_BOUND1) < 1e-13, "{}", row.bound);
        assert!(rel(row.bound, 12.0 * PI * 4.0 * row.k_n * row.k_n) < 1e-15);

        let far = lemma4_bound(&p, 300, d).unwrap();
        assert!((far.ratio_step - 2.0 / (C5_INNER_LIMIT * C5_INNER_LIMIT)).abs() < 1e-12);
        let far3 = lemma4_bound(&param(3.0), 300, d).unwrap();
        assert!((far3.ratio_step - 2.868_517_091_821_33).abs() < 1e-12);
    }

    #[test]
    fn ratio_step_is_successive_quotient() {
        let p = param(5.0);
        let d = 2.0 * 10f64.sqrt();
        let table = bound_table(&p, 120, d).unwrap();
        for w in table.windows(2) {
            assert!(rel(w[1].bound / w[0].bound, w[0].ratio_step) < 1e-12, "n={}", w[0].n);
        }
    }

    #[test]
    fn theorem_condition_examples() {
        assert!(theorem_condition(&param(5.0)));
        assert!(!theorem_condition(&param(theorem_threshold())));
        assert!(!theorem_condition(&param(3.0)));
        assert!(theorem_condition(&param(4.74)));
        assert!(!theorem_condition(&param(4.73)));
    }

    #[test]
    fn condition_agrees_with_polynomial_away_from_boundary() {
        for k in 0..400 {
            let a = 2.01 + k as f64 * 0.02;
            if (a - theorem_threshold()).abs() < 1e-9 {
                continue;
            }
            let poly = a * a - 6.0 * a + 6.0 > 0.0 && a > 3.0;
            assert_eq!(theorem_condition(&param(a)), poly, "|c|={a}");
        }
    }

    #[test]
    fn decay_examples() {
        let p = param(5.0);
        let fixed = decay_params(&p, Some(0.1)).unwrap();
        assert!((fixed.delta - 0.055_042_083_361_193_08).abs() < 1e-14);
        assert!((fixed.ratio - 0.926_478_316_093_856).abs() < 1e-14);
        assert_eq!(fixed.onset, 3);

        let auto = decay_params(&p, None).unwrap();
        assert!((auto.epsilon - 0.208_712_152_522_080_0).abs() < 1e-14);
        assert!((auto.delta - 0.036_426_322_733_143_16).abs() < 1e-13);
        assert_eq!(auto.onset, 2);
        assert!(auto.ratio > 0.0 && auto.ratio < 1.0);
    }

    #[test]
    fn decay_rejections() {
        assert!(matches!(
            decay_params(&param(3.0), None),
            Err(Error::DecayNotGuaranteed { .. })
        ));
        let p = param(5.0);
        let margin = epsilon_margin(&p);
        assert!(matches!(
            decay_params(&p, Some(margin)),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        assert!(decay_params(&p, Some(0.0)).is_err());
        assert!(decay_params(&p, Some(-0.1)).is_err());
    }
}
