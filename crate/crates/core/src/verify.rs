//! The invariant suite behind `juliadiff verify`.
//!
//! Every check produces a [`Check`] line; the report is a pure function of the
//! configuration (no timings, no thread-dependent reductions), so two runs with
//! the same configuration serialize to identical bytes.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg32;
use serde::Serialize;

use crate::bounds::{
    self, bound_table, decay_params, diam_i0_bound, radius_limits, radius_sequences,
    theorem_condition, DecayParams, DiamMode,
};
use crate::cover::{
    argument_spread, difference_cover, generate_levels, piece_disks, sum_area, union_area_grid,
    PieceCover,
};
use crate::error::Result;
use crate::geometry::{
    forward_map, inverse_branch, minkowski_diff_disks, sqrt_branch, ComplexPoint, Disk, Parameter,
    Sign, Symbol,
};
use crate::limits::Limits;
use crate::numeric::fmt17;
use crate::oracle::{
    grid_minkowski_diff, grid_minkowski_diff_using, mask_area, rasterize_preimage,
    sample_diff_check, DiffMethod, GridMask, MaskMode,
};

pub const REPORT_SCHEMA: &str = "juliadiff.verify/1";

/// Radius range of the random disk pairs in [`check_disk_difference_sampling`].
pub const DISK_RADII: std::ops::Range<f64> = 0.05..0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub c: ComplexPoint,
    pub depth: usize,
    pub samples: usize,
    pub cell: f64,
    pub epsilon: Option<f64>,
    /// Random disk pairs for the sampling check of the disk difference.
    pub disk_pairs: usize,
    /// Point pairs drawn per disk pair.
    pub pair_samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            c: ComplexPoint::new(5.0, 0.0),
            depth: 5,
            samples: 512,
            cell: 0.01,
            epsilon: None,
            disk_pairs: 16,
            pair_samples: 100_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_owned(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skip(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_owned(),
            status: Status::Skip,
            detail: detail.into(),
        }
    }

    fn failed(name: &str, err: impl std::fmt::Display) -> Self {
        Self::new(name, false, format!("error: {err}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// One depth of the chain raster ≤ union ≤ sum ≤ worst case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichRow {
    pub n: usize,
    /// Area of the discrete self-difference of the inner raster of the set the
    /// depth-`n` pieces cover (escape test through iterate `n + 1`).
    pub raster_area: f64,
    /// Same, for the escape test through iterate `n` only.
    pub raster_area_shallow: f64,
    pub union_area: f64,
    pub dilation_margin: f64,
    /// Sum of the difference-disk areas built from the sampled pieces.
    pub sum_area: f64,
    /// `12π·4ⁿ·K_n²` with the certified `diam I₀`.
    pub worst_case: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub config: VerifyConfig,
    pub abs_c: f64,
    pub theorem_condition: bool,
    pub decay: Option<DecayParams>,
    pub checks: Vec<Check>,
    pub sandwich: Vec<SandwichRow>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify c={} |c|={} depth={} samples={} cell={}",
            self.config.c,
            fmt17(self.abs_c),
            self.config.depth,
            self.config.samples,
            self.config.cell
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = writeln!(out, "{tag} {:<28} {}", c.name, c.detail);
        }
        if !self.sandwich.is_empty() {
            let _ = writeln!(
                out,
                "n,raster_area,raster_area_shallow,union_area,dilation_margin,sum_area,worst_case,holds"
            );
            for r in &self.sandwich {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt17(r.raster_area),
                    fmt17(r.raster_area_shallow),
                    fmt17(r.union_area),
                    fmt17(r.dilation_margin),
                    fmt17(r.sum_area),
                    fmt17(r.worst_case),
                    r.holds
                );
            }
        }
        let _ = writeln!(out, "{}", if self.passed { "ALL PASS" } else { "FAILED" });
        out
    }
}

/// Runs every check for `config`.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let p = Parameter::new(config.c)?;
    let mut checks = Vec::new();

    checks.extend(check_branch_maps(&p));
    checks.push(check_disk_difference_sampling(
        config.disk_pairs,
        config.pair_samples,
        config.seed,
    ));
    checks.push(check_disk_difference_raster(config.cell.max(0.01)));
    checks.extend(check_radius_sequences(&p, 10_000));
    checks.push(check_condition_equivalence());

    let decay = decay_params(&p, config.epsilon).ok();
    checks.extend(check_decay(&p, config.epsilon));

    let mut sandwich = Vec::new();
    match generate_levels(&p, config.depth, config.samples) {
        Ok(levels) => {
            checks.extend(check_pieces(&p, &levels));
            match sandwich_rows(&p, &levels, config.cell) {
                Ok((rows, extra)) => {
                    let ok = rows.iter().all(|r| r.holds);
                    checks.push(Check::new(
                        "lemma4.sandwich",
                        ok,
                        format!("raster < union <= sum + margin, union < worst at n=1..={}", config.depth),
                    ));
                    checks.extend(extra);
                    sandwich = rows;
                }
                Err(e) => checks.push(Check::failed("lemma4.sandwich", e)),
            }
        }
        Err(e) => checks.push(Check::failed("cover.generate", e)),
    }
    checks.push(check_diff_methods(config.seed));

    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerifyReport {
        schema: REPORT_SCHEMA,
        config: *config,
        abs_c: p.abs_c(),
        theorem_condition: theorem_condition(&p),
        decay,
        checks,
        sandwich,
        passed,
    })
}

fn probe_points(radius: f64) -> Vec<ComplexPoint> {
    let mut pts = vec![ComplexPoint::ZERO];
    for ring in 1..=24 {
        let r = radius * ring as f64 / 24.0;
        for k in 0..96 {
            pts.push(ComplexPoint::from_polar(r, 2.0 * PI * (k as f64 + 0.25) / 96.0));
        }
    }
    // points straddling the cut
    for k in 1..=12 {
        let x = radius * k as f64 / 12.0;
        pts.extend([
            ComplexPoint::new(x, 0.0),
            ComplexPoint::new(x, 1e-12),
            ComplexPoint::new(x, -1e-12),
        ]);
    }
    pts
}

/// Round trip, branch symmetry, the `[0, π)` cut and `G_s(D) ⊆ D`.
pub fn check_branch_maps(p: &Parameter) -> Vec<Check> {
    let pts = probe_points(2.0 * p.abs_c());
    let mut worst_trip: f64 = 0.0;
    let mut symmetric = true;
    for &z in &pts {
        for s in Symbol::ALL {
            let w = inverse_branch(z, s, p);
            let err = forward_map(w, p).dist(z) / (z.norm() + p.abs_c());
            worst_trip = worst_trip.max(err);
        }
        symmetric &= inverse_branch(z, Symbol::One, p) == -inverse_branch(z, Symbol::Zero, p);
    }
    let cut_ok = pts
        .iter()
        .filter(|z| **z != ComplexPoint::ZERO)
        .map(|&z| sqrt_branch(z, Sign::Plus))
        .all(|w| w.im > 0.0 || (w.im == 0.0 && w.re > 0.0));

    let domain = p.domain();
    let mut worst_reach: f64 = 0.0;
    for z in pts.iter().filter(|z| z.norm() <= domain.radius) {
        for s in Symbol::ALL {
            worst_reach = worst_reach.max(inverse_branch(*z, s, p).norm());
        }
    }
    vec![
        Check::new(
            "branch.round_trip",
            worst_trip <= 1e-12,
            format!("max relative error {worst_trip:.3e}"),
        ),
        Check::new("branch.symmetry", symmetric, "G1 = -G0 exactly"),
        Check::new("branch.cut", cut_ok, "F+ lands in arg [0, pi)"),
        Check::new(
            "branch.containment",
            worst_reach <= domain.radius,
            format!("max |G_s(z)| = {worst_reach:.6} <= |c| = {:.6}", domain.radius),
        ),
    ]
}

/// Seeded random equal-radius disk pairs through [`sample_diff_check`]; each
/// must stay inside the predicted disk and reach its boundary within `1e-2`.
///
/// The sup gap after `k` draws scales linearly with the radius (median about
/// `0.01·R` at `k = 10⁵`), so radii are drawn from `[0.05, 0.3]`, the scale of
/// the difference disks from depth 2 on.
pub fn check_disk_difference_sampling(pairs: usize, k: usize, seed: u64) -> Check {
    let mut rng = Pcg32::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut worst_gap: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for t in 0..pairs {
        let r: f64 = rng.random_range(DISK_RADII);
        let c1 = ComplexPoint::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let c2 = ComplexPoint::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let (d1, d2) = (Disk::new(c1, r), Disk::new(c2, r));
        match sample_diff_check(&d2, &d1, k, seed.wrapping_add(t as u64)) {
            Ok(sup) => {
                worst_gap = worst_gap.max(2.0 * r - sup);
                worst_rel = worst_rel.max(1.0 - sup / (2.0 * r));
            }
            Err(e) => return Check::failed("lemma3.sampling", e),
        }
    }
    Check::new(
        "lemma3.sampling",
        worst_gap <= 1e-2,
        format!(
            "{pairs} pairs x {k} samples, contained; max gap to 2R {worst_gap:.3e} (relative {worst_rel:.3e})"
        ),
    )
}

/// Disk raster minus disk raster against the doubled disk, within one cell.
pub fn check_disk_difference_raster(cell: f64) -> Check {
    let d1 = Disk::new(ComplexPoint::new(0.37, -0.21), 0.8);
    let d2 = Disk::new(ComplexPoint::new(-1.13, 0.52), 0.8);
    let diff = match grid_minkowski_diff(&GridMask::from_disk(&d2, cell), &GridMask::from_disk(&d1, cell)) {
        Ok(d) => d,
        Err(e) => return Check::failed("lemma3.raster", e),
    };
    let predicted = minkowski_diff_disks(&d2, &d1);
    let mut worst: f64 = 0.0;
    for j in 0..diff.height {
        for i in 0..diff.width {
            let r = diff.center(i, j).dist(predicted.center);
            let inside = r <= predicted.radius;
            if diff.get(i, j) != inside {
                worst = worst.max((r - predicted.radius).abs());
            }
        }
    }
    Check::new(
        "lemma3.raster",
        worst <= cell,
        format!("max boundary disagreement {worst:.3e} vs cell {cell}"),
    )
}

pub fn check_radius_sequences(p: &Parameter, terms: usize) -> Vec<Check> {
    let rb = match radius_sequences(p, terms) {
        Ok(rb) => rb,
        Err(e) => return vec![Check::failed("radius.sequences", e)],
    };
    let outer = rb.outer_seq();
    let inner = rb.inner_seq();
    let monotone = outer.windows(2).all(|w| w[1] <= w[0]) && inner.windows(2).all(|w| w[1] >= w[0]);
    // strict until the fixed point is reached in floating point
    let strict = outer
        .windows(2)
        .zip(inner.windows(2))
        .take_while(|(o, _)| (o[0] - rb.outer_limit()).abs() > 1e-13)
        .all(|(o, i)| o[1] < o[0] && i[1] > i[0]);
    let a = p.abs_c();
    let recursion = (1..terms).all(|k| {
        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-15 * y.abs();
        rel(rb.outer(k + 1), (a + rb.outer(k)).sqrt()) && rel(rb.inner(k + 1), (a - rb.outer(k)).sqrt())
    });
    let (big, small) = radius_limits(p);
    let tail = terms.min(200);
    let converged = (rb.outer(tail) - big).abs() <= 1e-12 && (rb.inner(tail) - small).abs() <= 1e-12;
    let ordered = inner.iter().all(|&r| r <= small + 1e-12)
        && small < big
        && outer.iter().all(|&r| r >= big - 1e-12);
    vec![
        Check::new(
            "radius.monotone",
            monotone && strict,
            format!("{terms} terms: R nonincreasing, r nondecreasing, strict before convergence"),
        ),
        Check::new("radius.recursion", recursion, "R_{k+1}=sqrt(|c|+R_k), r_{k+1}=sqrt(|c|-R_k)"),
        Check::new(
            "radius.limits",
            converged && ordered,
            format!("R_inf={} r_inf={}", fmt17(big), fmt17(small)),
        ),
    ]
}

/// `|c| > 3+√3` exactly when the asymptotic step ratio `2/r_∞²` is below 1.
pub fn check_condition_equivalence() -> Check {
    let mut ok = true;
    for a in [3.0, 4.0, 4.73, 4.74, 5.0, 10.0] {
        let p = Parameter::from_parts(a, 0.0).expect("|c| > 2");
        let (_, small) = radius_limits(&p);
        ok &= theorem_condition(&p) == (2.0 / (small * small) < 1.0);
    }
    Check::new("theorem.equivalence", ok, "condition <=> 2/r_inf^2 < 1 at |c| in {3,4,4.73,4.74,5,10}")
}

pub fn check_decay(p: &Parameter, epsilon: Option<f64>) -> Vec<Check> {
    if !theorem_condition(p) {
        return vec![Check::skip(
            "theorem.decay",
            format!("decay not guaranteed: |c| = {} <= 3+sqrt(3)", p.abs_c()),
        )];
    }
    let dp = match decay_params(p, epsilon) {
        Ok(dp) => dp,
        Err(e) => return vec![Check::failed("theorem.decay", e)],
    };
    let diam = diam_i0_bound(p, DiamMode::Certified).expect("certified diameter");
    let rows = match bound_table(p, 500, diam) {
        Ok(r) => r,
        Err(e) => return vec![Check::failed("theorem.decay", e)],
    };
    let rb = radius_sequences(p, 503).expect("radii");
    let tail_ok = rows
        .iter()
        .filter(|r| r.n > dp.onset)
        .all(|r| r.bound <= dp.k_const * dp.ratio.powi(r.n as i32) * (1.0 + 1e-12));
    let below_one = rows.iter().filter(|r| r.n > dp.onset).all(|r| r.ratio_step < 1.0);
    let identity = rows.iter().all(|r| {
        let rr = rb.inner(r.n + 2);
        (r.ratio_step - 2.0 / (rr * rr)).abs() <= 1e-12 * r.ratio_step
    });
    let telescoping = rows.windows(2).all(|w| {
        let lhs = w[1].k_n * SQRT_2 * rb.inner(w[0].n + 2);
        (lhs - w[0].k_n).abs() <= 1e-12 * w[0].k_n
    });
    let onset_ok = (dp.onset + 1..dp.onset + 50).all(|n| rb.inner(n) >= SQRT_2 + dp.delta)
        && (dp.onset == 0 || rb.inner(dp.onset) < SQRT_2 + dp.delta);
    vec![
        Check::new(
            "theorem.decay",
            tail_ok && below_one,
            format!(
                "eps={} delta={} N={} ratio={} K={}; bound(n) <= K*ratio^n for N<n<=500",
                fmt17(dp.epsilon),
                fmt17(dp.delta),
                dp.onset,
                fmt17(dp.ratio),
                fmt17(dp.k_const)
            ),
        ),
        Check::new("theorem.onset", onset_ok, "r_n >= sqrt2+delta exactly for n > N"),
        Check::new("lemma4.ratio_step", identity, "ratio_step = 2/r_{n+2}^2"),
        Check::new("lemma1.k_n_telescoping", telescoping, "K_{n+1}*sqrt2*r_{n+2} = K_n"),
    ]
}

/// Lemma-1 contraction and diameter bound, Lemma-2 enclosure and radius bound,
/// membership, argument spread and nesting, for every depth `1..levels.len()`.
///
/// `levels[k]` must hold the depth-`k` pieces from [`generate_levels`].
pub fn check_pieces(p: &Parameter, levels: &[Vec<PieceCover>]) -> Vec<Check> {
    let depth = levels.len().saturating_sub(1);
    let rb = radius_sequences(p, depth + 3).expect("radii");
    let certified = diam_i0_bound(p, DiamMode::Certified).expect("certified diameter");
    let a = p.abs_c();

    let mut contraction = (true, 0.0f64);
    let mut diam_ok = (true, 0.0f64);
    let mut enclosure = true;
    let mut radius_ok = true;
    let mut membership = true;
    let mut spread = (true, 0.0f64);
    let mut nesting = true;

    for n in 1..=depth {
        let k_n = rb.k_n(n, certified).expect("K_n");
        let factor = SQRT_2 * rb.inner(n + 1);
        let parents = &levels[n - 1];
        for pc in &levels[n] {
            let parent_seq = pc.seq.parent().expect("depth >= 1");
            let parent = parents
                .binary_search_by(|q| q.seq.cmp(&parent_seq))
                .map(|k| &parents[k])
                .expect("parent piece");
            let (ok, worst) = pairwise_contraction(&pc.samples, &parent.samples, factor);
            contraction = (contraction.0 && ok, contraction.1.max(worst));

            diam_ok = (diam_ok.0 && pc.sampled_diam <= k_n, diam_ok.1.max(pc.sampled_diam / k_n));
            radius_ok &= pc.disk.radius < 3f64.sqrt() / 2.0 * k_n;
            let tol = 1e-12 * pc.disk.radius.max(f64::MIN_POSITIVE);
            enclosure &= pc.samples.iter().all(|&z| pc.disk.contains(z, tol));

            let s = argument_spread(&pc.samples);
            spread = (spread.0 && s <= PI / 2.0 + 1e-9, spread.1.max(s));

            let prefix = pc.seq.prefix().expect("depth >= 1");
            let outer = parents
                .binary_search_by(|q| q.seq.cmp(&prefix))
                .map(|k| &parents[k])
                .expect("prefix piece");
            let tol = 1e-12 * outer.disk.radius;
            nesting &= pc.samples.iter().all(|&z| outer.disk.contains(z, tol));

            membership &= pc.samples.iter().all(|&z| {
                let mut w = z;
                (0..=n).all(|k| {
                    let ok = w.norm() <= a * (1.0 + 1e-9);
                    if k < n {
                        w = forward_map(w, p);
                    }
                    ok
                })
            });
        }
    }
    vec![
        Check::new(
            "lemma1.contraction",
            contraction.0,
            format!(
                "|G(z)-G(w)|*sqrt2*r_(n+1) <= |z-w|(1+1e-9), n=1..={depth}; worst ratio {:.9}",
                contraction.1
            ),
        ),
        Check::new(
            "lemma1.diameter",
            diam_ok.0,
            format!("sampled diam <= K_n; worst diam/K_n {:.6}", diam_ok.1),
        ),
        Check::new("lemma2.enclosure", enclosure, "samples inside their disk (tol 1e-12*radius)"),
        Check::new("lemma2.radius", radius_ok, "disk radius < (sqrt3/2) K_n"),
        Check::new("cover.membership", membership, "|Q^k(z)| <= |c|(1+1e-9) for k <= n"),
        Check::new(
            "cover.argument_spread",
            spread.0,
            format!("max spread {:.9} <= pi/2", spread.1),
        ),
        Check::new("cover.nesting", nesting, "depth-n samples inside the prefix piece's disk"),
    ]
}

/// All sample pairs: `|z_i − z_j|·factor ≤ |w_i − w_j|·(1 + 1e-9)` where `w` are
/// the parent samples and `z = G_s(w)`. Returns the worst
/// `|z_i − z_j|·factor / |w_i − w_j|`.
fn pairwise_contraction(child: &[ComplexPoint], parent: &[ComplexPoint], factor: f64) -> (bool, f64) {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for i in 0..child.len() {
        for j in i + 1..child.len() {
            let lhs = child[i].dist(child[j]) * factor;
            let rhs = parent[i].dist(parent[j]);
            ok &= lhs <= rhs * (1.0 + 1e-9);
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
        }
    }
    (ok, worst)
}

/// Rows of the sandwich chain for depths `1..levels.len()`, plus the raster
/// symmetry and nesting checks that come out of the same masks.
pub fn sandwich_rows(
    p: &Parameter,
    levels: &[Vec<PieceCover>],
    cell: f64,
) -> Result<(Vec<SandwichRow>, Vec<Check>)> {
    let depth = levels.len().saturating_sub(1);
    let certified = diam_i0_bound(p, DiamMode::Certified)?;
    let mut rows = Vec::with_capacity(depth);
    let mut diff_masks = Vec::with_capacity(depth + 1);
    for k in 1..=depth + 1 {
        let inner = rasterize_preimage(p, k, cell, MaskMode::Inner)?;
        diff_masks.push(grid_minkowski_diff(&inner, &inner)?);
    }
    // diff_masks[k-1] is the self-difference of the iterate-k raster
    for n in 1..=depth {
        let disks = piece_disks(&levels[n]);
        let cover = difference_cover(&disks)?;
        let union = union_area_grid(&cover, cell)?;
        let sum = sum_area(&cover);
        let worst = bounds::lemma4_bound(p, n, certified)?.bound;
        let raster = mask_area(&diff_masks[n]);
        let shallow = mask_area(&diff_masks[n - 1]);
        let holds = raster < union.area
            && union.area <= sum + union.dilation_margin
            && union.area < worst
            && sum < worst;
        rows.push(SandwichRow {
            n,
            raster_area: raster,
            raster_area_shallow: shallow,
            union_area: union.area,
            dilation_margin: union.dilation_margin,
            sum_area: sum,
            worst_case: worst,
            holds,
        });
    }
    let symmetric = diff_masks.iter().all(GridMask::is_point_symmetric);
    let nested = diff_masks.windows(2).all(|w| w[1].is_subset_of(&w[0]));
    let checks = vec![
        Check::new("oracle.symmetry", symmetric, "X-X = -(X-X) cell by cell"),
        Check::new("oracle.monotone", nested, "difference rasters nested in depth"),
    ];
    Ok((rows, checks))
}

/// Direct and FFT correlation must agree bit for bit on random masks.
pub fn check_diff_methods(seed: u64) -> Check {
    let mut rng = Pcg32::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let limits = Limits::default();
    for (t, &(w, h, density)) in [(17usize, 23usize, 0.3f64), (64, 48, 0.05), (256, 256, 0.01), (120, 200, 0.5)]
        .iter()
        .enumerate()
    {
        let mut a = GridMask::centered(w / 2, h / 2, 0.1, MaskMode::Inner);
        let mut b = GridMask::centered(h / 3, w / 3, 0.1, MaskMode::Inner);
        for bit in a.bits.iter_mut().chain(b.bits.iter_mut()) {
            *bit = rng.random_bool(density);
        }
        let direct = grid_minkowski_diff_using(&a, &b, DiffMethod::Direct, &limits);
        let fft = grid_minkowski_diff_using(&a, &b, DiffMethod::Fft, &limits);
        match (direct, fft) {
            (Ok(d), Ok(f)) if d == f => {}
            (Ok(_), Ok(_)) => {
                return Check::new("oracle.fft_vs_direct", false, format!("case {t} differs"))
            }
            (Err(e), _) | (_, Err(e)) => return Check::failed("oracle.fft_vs_direct", e),
        }
    }
    Check::new("oracle.fft_vs_direct", true, "4 random mask pairs up to 256x256 agree exactly")
}
