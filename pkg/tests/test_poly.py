from math import factorial, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import hermite_e
from numpy.polynomial import polynomial as P
from scipy.special import eval_genlaguerre

from fdstates.poly import (
    PolyFamily,
    hermite_he,
    hermite_he_roots,
    hermite_orthonormal,
    laguerre_gen,
    meixner_sheffer,
    meixner_sheffer_derivative,
    meixner_sheffer_orthonormal,
    meixner_sheffer_roots,
    poly_table,
)


def ms_coefficients(n):
    """G_n as a power-series coefficient array, built independently with numpy."""
    g = [np.array([1.0]), np.array([0.0, 1.0])]
    for k in range(1, n):
        g.append(P.polysub(P.polymulx(g[k]), 2 * k * (2 * k - 1) * g[k - 1]))
    return g[n]


def test_hermite_examples():
    assert hermite_he(0, 3.7) == 1.0
    assert hermite_he(2, 1.0) == 0.0
    assert abs(hermite_he(4, sqrt(3 + sqrt(6)))) < 1e-12


@pytest.mark.parametrize("n", [0, 1, 2, 5, 11, 20])
def test_hermite_matches_numpy_hermite_e(n):
    x = np.linspace(-6, 6, 41)
    ref = hermite_e.hermeval(x, [0] * n + [1])
    np.testing.assert_allclose(hermite_he(n, x), ref, rtol=1e-12, atol=1e-12)


def test_hermite_roots_small():
    assert np.array_equal(hermite_he_roots(1), [0.0])
    a, b = sqrt(3 + sqrt(6)), sqrt(3 - sqrt(6))
    np.testing.assert_allclose(hermite_he_roots(4), [-a, -b, b, a], rtol=0, atol=1e-12)


def test_hermite_roots_vs_companion_matrix():
    for n in (5, 19, 40):
        comp = np.sort(hermite_e.hermeroots([0] * n + [1]).real)
        np.testing.assert_allclose(hermite_he_roots(n), comp, atol=1e-8)


def test_smallest_positive_root_n19():
    r = hermite_he_roots(19)
    x1 = r[r > 0].min()
    assert abs(x1 / (2 * np.pi / sqrt(78)) - 1) < 0.03


@pytest.mark.parametrize("s", range(10, 41, 2))
def test_smallest_root_approximation(s):
    r = hermite_he_roots(s + 1)
    x1 = r[r > 0].min()
    assert abs(x1 / (2 * np.pi / sqrt(4 * s + 6)) - 1) <= 0.05


@pytest.mark.parametrize("fam", [PolyFamily.HERMITE_HE, PolyFamily.MEIXNER_SHEFFER])
@pytest.mark.parametrize("n", [1, 2, 3, 8, 19, 40, 120])
def test_root_table_invariants(fam, n):
    tab = poly_table(fam, n)
    assert tab.degree == n and tab.roots.size == n
    assert np.all(np.diff(tab.roots) > 0)
    assert np.array_equal(tab.roots, -tab.roots[::-1])
    assert tab.residuals().max() <= 1e-12


def test_hermite_interlacing():
    for n in range(2, 30):
        a, b = hermite_he_roots(n), hermite_he_roots(n + 1)
        assert np.all(b[:-1] < a) and np.all(a < b[1:])


def test_roots_are_cached_and_read_only():
    a = hermite_he_roots(12)
    assert a is hermite_he_roots(12)
    with pytest.raises(ValueError):
        a[0] = 1.0


def test_meixner_sheffer_examples():
    assert meixner_sheffer(0, -5.1) == 1.0
    assert abs(meixner_sheffer(2, sqrt(2))) < 1e-15
    assert abs(meixner_sheffer(3, sqrt(14))) < 1e-12
    assert meixner_sheffer_derivative(2, 0.0) == 0.0
    assert meixner_sheffer_derivative(1, 3.3) == 1.0
    assert abs(meixner_sheffer_derivative(3, sqrt(14)) - 28.0) < 1e-12


def test_meixner_sheffer_roots_small():
    assert np.array_equal(meixner_sheffer_roots(1), [0.0])
    np.testing.assert_allclose(meixner_sheffer_roots(2), [-sqrt(2), sqrt(2)], atol=1e-14)
    np.testing.assert_allclose(meixner_sheffer_roots(3), [-sqrt(14), 0, sqrt(14)], atol=1e-13)


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_meixner_sheffer_vs_power_series(n):
    c = ms_coefficients(n)
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(meixner_sheffer(n, x), P.polyval(x, c), rtol=1e-12, atol=1e-9)
    np.testing.assert_allclose(meixner_sheffer_derivative(n, x), P.polyval(x, P.polyder(c)),
                               rtol=1e-12, atol=1e-9)


def test_orthonormal_tables_match_raw_recurrences():
    x = np.linspace(-5, 5, 13)
    h, dh = hermite_orthonormal(10, x)
    g, dg = meixner_sheffer_orthonormal(6, x)
    for n in range(11):
        np.testing.assert_allclose(h[n] * sqrt(factorial(n)), hermite_he(n, x), rtol=1e-12, atol=1e-10)
    for n in range(7):
        scale = sqrt(factorial(2 * n))
        np.testing.assert_allclose(g[n] * scale, meixner_sheffer(n, x), rtol=1e-12, atol=1e-8)
        np.testing.assert_allclose(dg[n] * scale, meixner_sheffer_derivative(n, x), rtol=1e-12, atol=1e-8)
    # He'_n = n He_{n-1}
    for n in range(1, 11):
        np.testing.assert_allclose(dh[n] * sqrt(factorial(n)), n * hermite_he(n - 1, x),
                                   rtol=1e-12, atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(0, 60), x=st.floats(-20, 20))
def test_parity_symmetry(n, x):
    for f in (hermite_he, meixner_sheffer):
        a, b = f(n, -x), (-1) ** n * f(n, x)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_laguerre_examples():
    assert laguerre_gen(0, -3.5, 1.2) == 1.0
    assert laguerre_gen(1, 0, 2) == -1.0
    assert abs(-laguerre_gen(1, -2, 0.7**2) - (1 + 0.7**2)) < 1e-15


@pytest.mark.parametrize("a", [0.0, 0.5, 3.0, 7.25])
def test_laguerre_vs_scipy(a):
    x = np.linspace(0, 30, 31)
    for n in range(20):
        ref = eval_genlaguerre(n, a, x)
        np.testing.assert_allclose(laguerre_gen(n, a, x), ref, rtol=1e-10, atol=1e-10 * np.abs(ref).max())


def test_laguerre_truncated_exponential_identity():
    worst = 0.0
    for s in range(31):
        for y in np.linspace(0, 25, 51):
            direct = sum(y**n / factorial(n) for n in range(s + 1))
            worst = max(worst, abs((-1) ** s * laguerre_gen(s, -s - 1, y) - direct) / direct)
    assert worst <= 1e-10


def test_bad_degree():
    with pytest.raises(ValueError):
        hermite_he(-1, 0.0)
    with pytest.raises(ValueError):
        hermite_he_roots(0)
