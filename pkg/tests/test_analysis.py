import numpy as np
import pytest

from polymono import Interval, Polynomial, TightEnvelope, compare, decompose, jacobian_decomposition, tight_envelope
from polymono import width_profile
from polymono.analysis import reference_decomposition

from conftest import P1, P2, random_poly


def _brute(p, x, y, n=100_001):
    xs = np.linspace(min(x, y), max(x, y), n)
    vals = p(xs)
    return vals.min() if x <= y else vals.max()


def test_tight_envelope_examples():
    assert tight_envelope(P1, -1.0, 2.0) == 1.0
    assert tight_envelope(P1, 2.0, -1.0) == 5.0
    assert tight_envelope(P2, 0.3, 0.3) == P2(0.3)


def test_tight_envelope_against_brute_force(rng):
    for _ in range(100):
        p = random_poly(rng)
        x, y = rng.uniform(-3, 3, 2)
        scale = np.abs(p(np.linspace(-3, 3, 101))).max()
        assert tight_envelope(p, x, y) == pytest.approx(_brute(p, x, y), abs=1e-6 * (1 + scale))


def test_sandwich_against_tight_envelope(rng):
    for _ in range(100):
        p = random_poly(rng)
        df = decompose(p)
        lo, hi = np.sort(rng.uniform(-3, 3, 2))
        assert df(lo, hi) <= tight_envelope(p, lo, hi) + 1e-7
        assert tight_envelope(p, hi, lo) <= df(hi, lo) + 1e-7


def test_width_profile_example1():
    prof = width_profile(decompose(P1), -5, 5, 1.0, 0.5, 11)
    i = 5
    assert prof.z[i] == 0.0
    assert prof.g_hi[i] == pytest.approx(2.5625, abs=1e-12)
    # q(-0.5) - r(1) with the closed-form q, r
    q = lambda x: x ** 3 / 6 + x ** 2 / 2 + x / 2 + 1
    r = lambda y: y ** 3 / 6 - y ** 2 / 2 + y / 2
    assert prof.g_lo[i] == pytest.approx(q(-0.5) - r(1.0), abs=1e-12)
    assert prof.g_lo[i] == pytest.approx(0.6875, abs=1e-12)


def test_width_profile_jacobian():
    jd = jacobian_decomposition(P1, Interval(-2, 2))
    prof = width_profile(jd, -1, 1, 1.0, 0.5, 3)
    assert prof.g_hi[1] == pytest.approx(8.0)
    assert prof.g_lo[1] == pytest.approx(-4.75)


def test_width_profile_tight_is_range_of_p(rng):
    p = random_poly(rng, 5)
    prof = width_profile(TightEnvelope(p), -1, 1, 0.4, 0.2, 21)
    for z, w in zip(prof.z, prof.width):
        xs = np.linspace(z - 0.2, z + 0.4, 20_001)
        assert w == pytest.approx(np.ptp(p(xs)), abs=1e-6)
        assert w >= 0


def test_width_profile_argument_checks():
    g = decompose(P1)
    with pytest.raises(ValueError):
        width_profile(g, 1, -1, 1, 0.5, 5)
    with pytest.raises(ValueError):
        width_profile(g, -1, 1, 1, 0.5, 1)
    with pytest.raises(ValueError):
        width_profile(g, -1, 1, -1, 0.5, 5)


def test_width_profile_rejects_non_decomposition():
    with pytest.raises(ArithmeticError):
        width_profile(lambda x, y: y - x, -1, 1, 1, 0.5, 5)


def test_compare_identity():
    prof = width_profile(decompose(P1), -1, 1, 1, 0.5, 21)
    dom = compare(prof, prof)
    assert dom.fraction_inside == 1.0 and dom.mean_width_ratio == 1.0


def test_compare_polynomial_inside_jacobian():
    a = width_profile(decompose(P1), -1, 1, 1, 0.5, 201)
    b = width_profile(jacobian_decomposition(P1, Interval(-2, 2)), -1, 1, 1, 0.5, 201)
    dom = compare(a, b)
    assert dom.fraction_inside == 1.0
    assert dom.mean_width_ratio < 0.5


def test_compare_legendre_references():
    a = width_profile(reference_decomposition("legendre4-frobenius"), -1.5, 1.5, 0.25, 0.3, 201)
    b = width_profile(reference_decomposition("legendre4-one-norm"), -1.5, 1.5, 0.25, 0.3, 201)
    assert compare(a, b).fraction_inside == 1.0


def test_compare_grid_mismatch():
    g = decompose(P1)
    with pytest.raises(ValueError):
        compare(width_profile(g, -1, 1, 1, 0.5, 11), width_profile(g, -1, 1, 1, 0.5, 12))
    with pytest.raises(ValueError):
        compare(width_profile(g, -1, 1, 1, 0.5, 11), width_profile(g, -1, 1, 0.5, 0.5, 11))


def test_csv_format():
    text = width_profile(decompose(P1), -1, 1, 1, 0.5, 3).to_csv()
    lines = text.splitlines()
    assert lines[0] == "z,g_hi,g_lo,width"
    assert len(lines) == 4
    assert lines[2].startswith("0,")


def test_reference_names():
    for name in ("legendre4-frobenius", "legendre4-one-norm"):
        g = reference_decomposition(name)
        np.testing.assert_allclose((g.q - g.r).coeffs, P2.coeffs, atol=1e-12)
    with pytest.raises(KeyError):
        reference_decomposition("nope")


def test_frobenius_optimum_inside_published_legendre_reference():
    # the published solution is the spectral split plus a common PSD shift, so
    # the exact optimum must be nested inside it
    grid = (-1.5, 1.5, 0.25, 0.3, 201)
    ours = width_profile(decompose(P2, "frobenius"), *grid)
    ref = width_profile(reference_decomposition("legendre4-frobenius"), *grid)
    assert compare(ours, ref, tol=1e-6).fraction_inside == 1.0
