use std::f64::consts::PI;

use proptest::prelude::*;

use juliadiff_core::bounds::{bound_table, diam_i0_bound, radius_sequences, DiamMode};
use juliadiff_core::cover::{difference_cover, generate_pieces, piece_disks, sum_area, union_area_grid, SymbolSequence};
use juliadiff_core::geometry::{
    diametral_pair, enclosing_disk, forward_map, inverse_branch, minkowski_diff_disks, sqrt_branch,
};
use juliadiff_core::limits::Limits;
use juliadiff_core::numeric::fmt17;
use juliadiff_core::oracle::{
    grid_minkowski_diff, grid_minkowski_diff_using, in_preimage, mask_area, rasterize_preimage,
    DiffMethod, GridMask, MaskMode,
};
use juliadiff_core::{ComplexPoint, Disk, Parameter, Sign, Symbol};

fn point(bound: f64) -> impl Strategy<Value = ComplexPoint> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| ComplexPoint::new(re, im))
}

/// `c` in the Cantor regime with `Re c ≥ 0`, `|c|` in `(2.05, 40)`.
fn parameter() -> impl Strategy<Value = Parameter> {
    (2.05f64..40.0, -PI / 2.0..=PI / 2.0)
        .prop_map(|(r, t)| Parameter::new(ComplexPoint::from_polar(r, t)).unwrap())
}

fn mask(max_half: usize) -> impl Strategy<Value = GridMask> {
    (0..=max_half, 0..=max_half, 0.0f64..0.6, any::<u64>()).prop_map(|(hw, hh, density, seed)| {
        let mut m = GridMask::centered(hw, hh, 0.25, MaskMode::Inner);
        let mut x = seed | 1;
        for bit in m.bits.iter_mut() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            *bit = (x >> 11) as f64 / (1u64 << 53) as f64 <= density;
        }
        m
    })
}

proptest! {
    #[test]
    fn branches_invert_the_map(p in parameter(), z in point(50.0)) {
        for s in Symbol::ALL {
            let back = forward_map(inverse_branch(z, s, &p), &p);
            prop_assert!(back.dist(z) <= 1e-13 * (z.norm() + p.abs_c()));
        }
    }

    #[test]
    fn branches_are_negatives(p in parameter(), z in point(50.0)) {
        prop_assert_eq!(inverse_branch(z, Symbol::One, &p), -inverse_branch(z, Symbol::Zero, &p));
    }

    #[test]
    fn plus_root_lies_in_the_upper_half_plane(z in point(1e3)) {
        prop_assume!(z != ComplexPoint::ZERO);
        let w = sqrt_branch(z, Sign::Plus);
        prop_assert!(w.im > 0.0 || (w.im == 0.0 && w.re > 0.0));
        prop_assert!(w.square().dist(z) <= 1e-14 * z.norm());
        prop_assert_eq!(sqrt_branch(z, Sign::Minus), -w);
    }

    #[test]
    fn branches_map_the_domain_into_itself(p in parameter(), r in 0.0f64..=1.0, t in 0.0..2.0 * PI) {
        let z = ComplexPoint::from_polar(r * p.abs_c(), t);
        for s in Symbol::ALL {
            prop_assert!(inverse_branch(z, s, &p).norm() <= p.abs_c());
        }
    }

    #[test]
    fn enclosing_disk_holds_every_point(pts in prop::collection::vec(point(10.0), 1..200)) {
        let (i, j, d) = diametral_pair(&pts);
        let brute = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.dist(*b)))
            .fold(0.0, f64::max);
        prop_assert!((d - pts[i].dist(pts[j])).abs() <= 1e-15 * d.max(1.0));
        prop_assert!((d - brute).abs() <= 1e-12 * brute.max(1.0));
        let disk = enclosing_disk(&pts);
        prop_assert!((disk.radius - 3f64.sqrt() / 2.0 * d).abs() <= 1e-12 * d.max(1.0));
        for z in &pts {
            prop_assert!(disk.contains(*z, 1e-12 * disk.radius.max(1e-300)));
        }
    }

    #[test]
    fn disk_difference_holds_sampled_differences(
        c1 in point(5.0), c2 in point(5.0), r1 in 0.0f64..3.0, r2 in 0.0f64..3.0,
        t1 in 0.0..2.0 * PI, t2 in 0.0..2.0 * PI, u1 in 0.0f64..=1.0, u2 in 0.0f64..=1.0,
    ) {
        let (d1, d2) = (Disk::new(c1, r1), Disk::new(c2, r2));
        let x = c2 + ComplexPoint::from_polar(r2 * u2, t2);
        let y = c1 + ComplexPoint::from_polar(r1 * u1, t1);
        let diff = minkowski_diff_disks(&d2, &d1);
        prop_assert!(diff.contains(x - y, 1e-12 * (diff.radius + diff.center.norm() + 1.0)));
    }

    #[test]
    fn radius_sequences_are_monotone(p in parameter()) {
        let rb = radius_sequences(&p, 500).unwrap();
        prop_assert!(rb.outer_seq().windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(rb.inner_seq().windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(rb.inner(500) < rb.outer(500));
    }

    #[test]
    fn bound_rows_follow_the_step_ratio(p in parameter()) {
        let diam = diam_i0_bound(&p, DiamMode::Certified).unwrap();
        let rows = bound_table(&p, 120, diam).unwrap();
        for w in rows.windows(2) {
            // bound(n+1) = bound(n)·4·K_{n+1}²/K_n² = bound(n)·ratio_step(n)
            prop_assert!((w[1].bound - w[0].bound * w[0].ratio_step).abs() <= 1e-10 * w[1].bound);
        }
    }

    #[test]
    fn symbol_sequences_round_trip(bits in prop::collection::vec(0u8..2, 1..40)) {
        let seq = SymbolSequence::new(bits.iter().map(|&b| Symbol::try_from(b).unwrap()).collect()).unwrap();
        let text = seq.to_string();
        prop_assert_eq!(text.len(), bits.len());
        prop_assert_eq!(text.parse::<SymbolSequence>().unwrap(), seq);
    }

    #[test]
    fn fmt17_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fft_and_direct_differences_agree(a in mask(127), b in mask(60)) {
        let limits = Limits::default();
        let direct = grid_minkowski_diff_using(&a, &b, DiffMethod::Direct, &limits).unwrap();
        let fft = grid_minkowski_diff_using(&a, &b, DiffMethod::Fft, &limits).unwrap();
        prop_assert_eq!(direct, fft);
    }

    #[test]
    fn self_differences_are_point_symmetric(a in mask(40)) {
        let d = grid_minkowski_diff(&a, &a).unwrap();
        prop_assert!(d.is_point_symmetric());
        prop_assert!(mask_area(&d) >= mask_area(&a) || a.count() == 0);
    }

    #[test]
    fn inner_rasters_sit_inside_outer_rasters(p in parameter(), n in 0usize..4) {
        let cell = p.abs_c() / 40.0;
        let inner = rasterize_preimage(&p, n, cell, MaskMode::Inner).unwrap();
        let outer = rasterize_preimage(&p, n, cell, MaskMode::Outer).unwrap();
        prop_assert!(inner.is_subset_of(&outer));
        for j in 0..inner.height {
            for i in 0..inner.width {
                prop_assert_eq!(inner.get(i, j), in_preimage(inner.center(i, j), &p, n));
            }
        }
    }

    #[test]
    fn pieces_stay_in_the_preimage(p in parameter(), n in 0usize..5) {
        let pieces = generate_pieces(&p, n, 64).unwrap();
        prop_assert_eq!(pieces.len(), 1 << (n + 1));
        for pc in &pieces {
            for &z in &pc.samples {
                let mut w = z;
                for _ in 0..=n {
                    prop_assert!(w.norm() <= p.abs_c() * (1.0 + 1e-9));
                    w = forward_map(w, &p);
                }
            }
        }
        let cover = difference_cover(&piece_disks(&pieces)).unwrap();
        let union = union_area_grid(&cover, 0.05 * p.abs_c()).unwrap();
        prop_assert!(union.area <= sum_area(&cover) + union.dilation_margin);
    }
}
