"""Smoke tests for the python module against known closed-form values."""

import math
import sys

import hofer_spectrum as hs


def approx(a, b, tol=1e-6):
    assert abs(a - b) <= tol * max(1.0, abs(b)), f"{a} != {b} (tol {tol})"


def test_shift_rho():
    H = hs.make_shift(0.02, 256)
    approx(hs.rho_raw(H, 0.75, 0.1, 0.4), 2 * 0.75 * 0.3, 1e-4)
    approx(hs.rho_normalized(H, 0.75, 0.1, 0.4), 1.0, 1e-4)


def test_profile_rho():
    H = hs.field("h*h", "annulus", 256)
    expect = 2 * 0.75 * (0.65**2 - 0.35**2)
    approx(hs.rho_raw(H, 0.75, 0.1, 0.4), expect, 1e-3)


def test_contour_tree_median():
    H = hs.make_shift(0.02, 192)
    t = hs.contour_tree(H, 0.2, 0.75)
    approx(t["total_measure"], 1.5, 1e-6)
    approx(t["median"]["level"], 0.55, 1e-6)


def test_flow_and_winding():
    H = hs.make_shift(0.02, 256)
    wv = hs.winding_vector(H, (0.0, 0.5), 1.0, [], 0.05)
    assert wv["winding"] == [1]
    approx(hs.hofer_energy(H, 1.0), H.max_value() - H.min_value(), 1e-9)


def test_flux_law():
    H = hs.field("sin(2*pi*theta)*h*(1-h)", "annulus", 256)
    cut = [(0.2, 0.3), (0.6, 0.7)]
    expect = H.value(0.2, 0.3) - H.value(0.6, 0.7)
    approx(hs.flux_through_cut(H, cut), expect, 1e-6)


def test_homology():
    assert hs.word_length([2, -3]) == 5
    assert hs.word_length_bfs([2, -3]) == 5
    a, b = hs.decompose_torus(3, 5)
    assert a == [2, 1] and b == [1, 4]
    rep = hs.l_a_bounds(0, 1, 1.0, 0.75, [4])
    approx(rep["lower"], 1.0)
    approx(rep["upper"], 3.0)


def test_errors():
    try:
        hs.field("bogus(h)")
    except ValueError:
        pass
    else:
        raise AssertionError("expected a parse error")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
