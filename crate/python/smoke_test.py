"""Smoke test for the juliadiff extension module."""

import json
import math

import juliadiff as jd


def main():
    assert jd.theorem_condition(4.74)
    assert not jd.theorem_condition(4.73)
    assert not jd.theorem_condition(3 + math.sqrt(3))

    outer, inner = jd.radius_sequences(5.0, 0.0, 5)
    assert math.isclose(outer[0], math.sqrt(10), rel_tol=0, abs_tol=1e-12)
    assert inner[0] == 0.0
    big, small = jd.radius_limits(5.0)
    assert math.isclose(big, (1 + math.sqrt(21)) / 2, abs_tol=1e-12)
    assert math.isclose(small, math.sqrt((9 - math.sqrt(21)) / 2), abs_tol=1e-12)

    rows = jd.bound_table(5.0, 0.0, 50)
    assert abs(rows[-1]["ratio_step"] - 2 / small**2) < 1e-12
    decay = jd.decay_params(5.0, epsilon=0.1)
    assert decay["onset"] == 3
    try:
        jd.decay_params(3.0)
    except ValueError as e:
        assert "decay not guaranteed" in str(e)
    else:
        raise AssertionError("c=3 must be refused")

    pieces = jd.generate_pieces(5.0, 0.0, 3, samples=128)
    assert len(pieces) == 16 and pieces[0].seq == "0000"
    cover = jd.difference_cover(pieces)
    assert len(cover) == 256
    union, margin = jd.union_area(cover, 0.01)
    assert union <= jd.sum_area(cover) + margin

    d = jd.minkowski_diff_disks(jd.Disk((3, 4), 0.5), jd.Disk((1, 1), 0.5))
    assert d.center == (2.0, 3.0) and d.radius == 1.0
    assert jd.sample_diff_check(jd.Disk((3, 4), 0.5), jd.Disk((1, 1), 0.5), 10_000) <= 1.0

    mask = jd.rasterize_preimage(5.0, 0.0, 2, cell=0.02)
    diff = jd.mask_difference(mask, mask)
    assert diff.is_point_symmetric() and diff.area() > mask.area()
    assert diff.to_pgm().startswith(b"P5\n")

    try:
        jd.theorem_condition(1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("|c| <= 2 must be refused")

    report = json.loads(jd.run_verify(5.0, depth=3, cell=0.02))
    assert report["schema"] == "juliadiff.verify/1"
    assert report["passed"], [c for c in report["checks"] if c["status"] == "fail"]
    print("smoke test ok:", len(report["checks"]), "checks passed")


if __name__ == "__main__":
    main()
