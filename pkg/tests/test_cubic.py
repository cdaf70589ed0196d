import cmath

import numpy as np
import pytest

from schwarzian import (
    INF,
    DegenerateInput,
    J,
    Mobius,
    Poly,
    criticality_discriminant,
    cross_ratio,
    cubic_fiber_explicit,
    four_group,
    h_alpha,
    is_regular_tetrahedron,
    lift_correspondence,
    ratio_orbit,
    schwarzian,
    wronskian,
)
from schwarzian.algebra import riemann_close
from schwarzian.cubic import TETRAHEDRAL_RATIOS, critical_points_of

from conftest import rand_complex


def test_cross_ratio_normalization():
    # [0, 1, t, inf] = t under this convention's Mobius normalization
    assert abs(cross_ratio(1, J, J * J, 0) - TETRAHEDRAL_RATIOS[0]) <= 1e-10


def test_cross_ratio_finite_formula():
    a, b, c, d = 0, 1, 2, 4
    val = cross_ratio(a, b, c, d)
    assert abs(val - ((a - c) * (b - d)) / ((c - b) * (d - a))) <= 1e-12


def test_cross_ratio_infinity_limits():
    base = [0.3, -1.2 + 0.4j, 2.0, 5.0 - 1.0j]
    for pos in range(4):
        pts = list(base)
        pts[pos] = INF
        val = cross_ratio(*pts)
        big = list(base)
        big[pos] = 1e9
        approx = cross_ratio(*big)
        assert abs(val - approx) <= 1e-6 * (1 + abs(val))


def test_cross_ratio_mobius_invariance(rng):
    pts = [0.5, -1.0 + 0.3j, 2.2, -0.7j]
    t = cross_ratio(*pts)
    for _ in range(5):
        m = Mobius(*(rand_complex(rng) + 0.5 for _ in range(4)))
        imgs = [m(p) for p in pts]
        assert abs(cross_ratio(*imgs) - t) <= 1e-8 * (1 + abs(t))


def test_cross_ratio_rejects_degenerate():
    with pytest.raises(DegenerateInput):
        cross_ratio(1, 1, 2, 3)
    with pytest.raises(DegenerateInput):
        cross_ratio(INF, INF, 1, 2)


def test_ratio_orbit():
    t = 0.3 + 0.4j
    orbit = ratio_orbit(t)
    assert len(orbit) == 6
    assert t in orbit
    assert any(abs(v - 1 / t) <= 1e-12 for v in orbit)
    with pytest.raises(DegenerateInput):
        ratio_orbit(1.0)


def test_ratio_orbit_closed_under_involutions():
    t = 1.7 - 0.6j
    orbit = set()
    for v in ratio_orbit(t):
        orbit.update(ratio_orbit(v))
    assert len({round(v.real, 9) + 1j * round(v.imag, 9) for v in orbit}) == 6


def test_tetrahedron_canonical():
    assert is_regular_tetrahedron([1, J, J * J, 0])
    assert is_regular_tetrahedron([0, 1, J, J * J])
    assert not is_regular_tetrahedron([0, 1, 2, 3])
    assert not is_regular_tetrahedron([1, -1, 1j, 2j])


def test_tetrahedron_mobius_images(rng):
    base = [1, J, J * J, 0]
    for _ in range(10):
        m = Mobius(*(rand_complex(rng) + 0.3 for _ in range(4)))
        imgs = [m(p) for p in base]
        if any(p is INF for p in imgs):
            continue
        assert is_regular_tetrahedron(imgs)


def test_criticality_discriminant_examples():
    # z^4 - 2z: w = (0, -2, 0, 0) -> 0 + 0 - 0 = 0
    assert abs(criticality_discriminant((0, -2, 0, 0))) <= 1e-12
    # z^4 - 1: w = (-1, 0, 0, 0) -> -12
    assert abs(criticality_discriminant((-1, 0, 0, 0)) - (-12)) <= 1e-12


def test_cubic_fiber_explicit_z4_minus_1():
    branches = cubic_fiber_explicit((-1, 0, 0, 0))
    assert len(branches) == 2
    root3 = np.sqrt(3.0)
    got = sorted((b.a_p[1].imag for b in branches))
    assert np.allclose(got, [-root3, root3], atol=1e-12)
    for b in branches:
        w = wronskian(b)
        assert np.allclose(w.coeffs, [-1, 0, 0, 0, 1], atol=1e-10)


def test_cubic_fiber_explicit_merged():
    branches = cubic_fiber_explicit((0, -2, 0, 0))
    assert len(branches) == 1
    b = branches[0]
    assert np.allclose(b.vector(), [1, 0, 0, 0], atol=1e-12)
    w = wronskian(b)
    assert np.allclose(w.coeffs, [0, -2, 0, 0, 1], atol=1e-10)


def test_cubic_fiber_explicit_random(rng):
    for _ in range(10):
        w = tuple(rand_complex(rng) for _ in range(4))
        for b in cubic_fiber_explicit(w):
            got = wronskian(b)
            for x, y in zip(got.coeffs, list(w) + [1.0]):
                assert abs(x - y) <= 1e-9 * (1 + abs(y))


def test_three_predicates_agree(rng):
    for _ in range(25):
        w = tuple(rand_complex(rng) for _ in range(4))
        disc = criticality_discriminant(w)
        roots = np.roots([1.0, w[3], w[2], w[1], w[0]])
        if min(
            abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :]
        ) < 1e-3:
            continue
        tet = is_regular_tetrahedron(list(roots), tol=1e-6)
        merged = len(cubic_fiber_explicit(w)) == 1
        disc_zero = abs(disc) <= 1e-8 * (1 + max(abs(x) for x in w))
        assert tet == merged == disc_zero


def test_h_alpha_structure():
    h = h_alpha(2)
    # den is rescaled monic, num by the same factor
    assert np.allclose(h.num.coeffs, [2, 0, 1.5, 1])
    assert np.allclose(h.den.coeffs, [0.5, 3, 0, 1])
    with pytest.raises(DegenerateInput):
        h_alpha(1)
    with pytest.raises(DegenerateInput):
        h_alpha(J)


def test_h_alpha_critical_points():
    for alpha in (2, 3 + 1j):
        h = h_alpha(alpha)
        crit = critical_points_of(h)
        expected = [1, J, J * J, complex(alpha) ** 2]
        for e in expected:
            assert min(abs(c - e) for c in crit) <= 1e-7


def test_four_group_properties():
    pts = [1, J, J * J, 0]
    ms = four_group(pts)
    assert len(ms) == 3
    for m in ms:
        assert not m.is_identity()
        # involution
        sq = m @ m
        for z in (0.3, 1.1 - 0.2j, -2.0):
            assert riemann_close(sq(z), z, tol=1e-8)
        # permutes the set
        for p in pts:
            image = m(p)
            assert any(riemann_close(image, q, tol=1e-7) for q in pts)


def test_four_group_random_quadruple(rng):
    pts = [rand_complex(rng, 1.5) for _ in range(4)]
    ms = four_group(pts)
    for m in ms:
        for p in pts:
            assert any(riemann_close(m(p), q, tol=1e-6) for q in pts)


def test_lift_correspondence_h2():
    h = h_alpha(2)
    pairs = lift_correspondence(h)
    assert len(pairs) == 3
    for m, n in pairs:
        for k in range(8):
            z = 0.9 * cmath.exp(2j * cmath.pi * (k + 0.21) / 8)
            assert riemann_close(h(m(z)), n(h(z)), tol=1e-7)


def test_lift_correspondence_schwarzian_compatible():
    # S_h has poles exactly at the critical points, each with leading -3/2
    from schwarzian import laurent_at

    h = h_alpha(3 + 1j)
    s = schwarzian(h)
    for c in critical_points_of(h):
        g = laurent_at(s, c, 2)
        assert abs(g.leading - (-1.5)) <= 1e-7
