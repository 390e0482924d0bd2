import cmath
import math

import mpmath
import numpy as np
import pytest
from scipy.special import gammaln

from su11cs.algebra import IrrepParams, TruncationPolicy, basis
from su11cs.states import (
    Family,
    StateSpec,
    TruncationError,
    evolve_check,
    nbgcs,
    nbgcs_norm,
    nbgcs_overlap_closed,
    overlap,
    pabgcs,
    pabgcs_from_diagram,
    pabgcs_norm,
    pabgcs_overlap_closed,
)

HALF = IrrepParams(0.5)


def _nbgcs_direct(x, m, lam, terms=80):
    a = mpmath.mpf(lam) + 0.5
    return float(mpmath.fsum(x**n * mpmath.rf(a, n) / (mpmath.rf(a + m, n) ** 2 * mpmath.factorial(n)) for n in range(terms)))


def _pabgcs_direct(x, m, lam, terms=80):
    b = mpmath.mpf(lam) + 0.5 + m
    return float(mpmath.fsum(x**n * mpmath.rf(m + 1, n) / (mpmath.rf(b, n) * mpmath.factorial(n) ** 2) for n in range(terms)))


def test_statespec_coercion_and_validation():
    s = StateSpec("NBGCS", 1, 2, HALF)
    assert s.family is Family.NBGCS and isinstance(s.z, complex)
    with pytest.raises(ValueError):
        StateSpec(Family.BGCS, 1, 1, HALF)
    with pytest.raises(ValueError):
        StateSpec(Family.NBGCS, 1, -1, HALF)
    with pytest.raises(ValueError):
        StateSpec(Family.NBGCS, 1, 1.5, HALF)


@pytest.mark.parametrize("z_abs, m, lam", [(0.0, 2, 0.5), (1.0, 0, 0.5), (1.0, 1, 0.5), (3.0, 4, 2.5), (5.5, 2, 4.5)])
def test_nbgcs_norm_direct_sum(z_abs, m, lam):
    assert nbgcs_norm(z_abs, m, IrrepParams(lam)) == pytest.approx(_nbgcs_direct(z_abs**2, m, lam), rel=1e-12)


@pytest.mark.parametrize("z_abs, m, lam", [(0.0, 2, 0.5), (1.0, 1, 0.5), (2.0, 3, 2.5), (4.0, 5, 0.5)])
def test_pabgcs_norm_direct_sum(z_abs, m, lam):
    assert pabgcs_norm(z_abs, m, IrrepParams(lam)) == pytest.approx(_pabgcs_direct(z_abs**2, m, lam), rel=1e-12)


def test_norm_bessel_collapse():
    i0 = 2.2795853023360673
    assert nbgcs_norm(1.0, 0, HALF) == pytest.approx(i0, rel=1e-14)
    assert pabgcs_norm(1.0, 1, HALF) == pytest.approx(i0, rel=1e-14)


def test_nbgcs_coefficients():
    v = nbgcs(StateSpec(Family.NBGCS, 1.0, 1, HALF))
    assert v.coeffs[1] / v.coeffs[0] == pytest.approx(0.5)
    w = nbgcs(StateSpec(Family.BGCS, 1.0, 0, HALF))
    n = np.arange(w.cutoff + 1)
    expected = np.exp(-2 * gammaln(n + 1)) / 2.2795853023360673
    assert np.allclose(np.abs(w.coeffs) ** 2, expected, rtol=1e-13, atol=1e-300)


def test_pabgcs_coefficients_and_support():
    v = pabgcs(StateSpec(Family.PABGCS, 1.0, 1, HALF))
    assert v.coeffs[0] == 0
    assert v.coeffs[2] / v.coeffs[1] == pytest.approx(1.0)
    w = pabgcs(StateSpec(Family.PABGCS, 2 + 1j, 4, IrrepParams(2.5)))
    assert not w.coeffs[:4].any()


@pytest.mark.parametrize("family", [Family.NBGCS, Family.PABGCS])
@pytest.mark.parametrize("z", [0.3, 1 + 1j, 4j, -6.0])
@pytest.mark.parametrize("m", [0, 3])
def test_constructor_normalization_and_tail(family, z, m):
    trunc = TruncationPolicy()
    v = (nbgcs if family is Family.NBGCS else pabgcs)(StateSpec(family, z, m, IrrepParams(1.5)), trunc)
    assert abs(v.norm2() - 1) <= 4 * trunc.tail_tol + 1e-15
    assert v.tail_bound <= trunc.tail_tol
    assert v.cutoff >= trunc.cutoff


def test_phase_of_coefficients():
    z = 1.3 * cmath.exp(0.4j)
    v = nbgcs(StateSpec(Family.NBGCS, z, 2, HALF))
    n = np.arange(1, 6)
    assert np.allclose(np.angle(v.coeffs[n]), np.angle(np.exp(0.4j * n)))


@pytest.mark.parametrize("z_abs", [300.0, 1000.0])
def test_large_z_past_closed_form_overflow(z_abs):
    # the 1F2 normalization overflows beyond |z| of a few hundred
    for fn, fam in ((nbgcs, Family.NBGCS), (pabgcs, Family.PABGCS)):
        v = fn(StateSpec(fam, z_abs, 2, HALF))
        assert abs(v.norm2() - 1) <= 1e-15 and v.tail_bound <= 1e-15
        assert np.argmax(np.abs(v.coeffs)) > z_abs / 2


def test_auto_cutoff_grows_and_ceiling_enforced():
    big = nbgcs(StateSpec(Family.NBGCS, 20.0, 0, HALF))
    assert big.cutoff > 32 and big.tail_bound < 1e-15
    with pytest.raises(TruncationError):
        nbgcs(StateSpec(Family.NBGCS, 5000.0, 0, HALF))


@pytest.mark.parametrize("lam", [0.5, 2.5])
@pytest.mark.parametrize("z", [0.0, 0.5, 1 - 2j])
def test_limit_chain(lam, z):
    p = IrrepParams(lam)
    bg = nbgcs(StateSpec(Family.BGCS, z, 0, p))
    for fam, fn in ((Family.NBGCS, nbgcs), (Family.PABGCS, pabgcs)):
        v = fn(StateSpec(fam, z, 0, p))
        k = max(v.cutoff, bg.cutoff)
        assert np.max(np.abs(v.padded(k).coeffs - bg.padded(k).coeffs)) <= 1e-13
    assert np.max(np.abs(nbgcs(StateSpec(Family.NBGCS, 0, 3, p)).coeffs - basis(0, p, 32).coeffs)) == 0
    for m in range(6):
        v = pabgcs(StateSpec(Family.PABGCS, 0, m, p))
        assert np.array_equal(v.coeffs, basis(m, p, v.cutoff).coeffs)


@pytest.mark.parametrize("m, z, lam", [(0, 1.0, 0.5), (2, 1.0, 0.5), (3, 0.0, 0.5), (5, 2 - 1j, 2.5), (1, 4.0, 0.5)])
def test_pabgcs_from_diagram(m, z, lam):
    spec = StateSpec(Family.PABGCS, z, m, IrrepParams(lam))
    a, b = pabgcs_from_diagram(spec), pabgcs(spec)
    k = max(a.cutoff, b.cutoff)
    assert np.max(np.abs(a.padded(k).coeffs - b.padded(k).coeffs)) <= 1e-10


def test_overlap_basics():
    v = nbgcs(StateSpec(Family.NBGCS, 1 + 1j, 2, HALF))
    assert overlap(v, v) == pytest.approx(1, abs=1e-14)
    assert overlap(basis(2, HALF, 5), basis(3, HALF, 5)) == 0
    with pytest.raises(ValueError):
        overlap(v, basis(0, IrrepParams(1.5), 5))


@pytest.mark.parametrize(
    "z1, m1, z2, m2",
    [(1.0, 0, 1.0, 1), (1 + 1j, 2, 0.5j, 2), (-2.0, 5, 1 - 1j, 0), (3.0, 1, 3.0, 1)],
)
def test_nbgcs_overlap_closed(z1, m1, z2, m2):
    p = IrrepParams(1.5)
    u = nbgcs(StateSpec(Family.NBGCS, z1, m1, p))
    v = nbgcs(StateSpec(Family.NBGCS, z2, m2, p))
    closed = nbgcs_overlap_closed(z1, m1, z2, m2, p)
    assert abs(closed - overlap(u, v)) <= 1e-10
    assert abs(closed) <= 1 + 1e-14


def test_nbgcs_overlap_special_cases():
    assert nbgcs_overlap_closed(1 + 2j, 3, 1 + 2j, 3, HALF) == pytest.approx(1, abs=1e-14)
    assert nbgcs_overlap_closed(2.0, 1, 0, 1, HALF) == pytest.approx(nbgcs_norm(2.0, 1, HALF) ** -0.5)


def test_pabgcs_overlap_examples():
    assert pabgcs_overlap_closed(1 + 1j, 1 + 1j, 3, HALF) == pytest.approx(1, abs=1e-14)
    u = pabgcs(StateSpec(Family.PABGCS, 1, 2, HALF))
    v = pabgcs(StateSpec(Family.PABGCS, 1j, 2, HALF))
    assert abs(pabgcs_overlap_closed(1, 1j, 2, HALF) - overlap(u, v)) <= 1e-10
    assert abs(pabgcs_overlap_closed(0.3, 2j, 0, HALF) - nbgcs_overlap_closed(0.3, 0, 2j, 0, HALF)) <= 1e-13


@pytest.mark.parametrize("m_bra, m_ket", [(1, 3), (3, 1), (0, 2), (4, 0)])
def test_pabgcs_overlap_unequal_orders(m_bra, m_ket):
    p = IrrepParams(2.5)
    z1, z2 = 1.2 - 0.7j, -0.4 + 1.1j
    u = pabgcs(StateSpec(Family.PABGCS, z1, m_bra, p))
    v = pabgcs(StateSpec(Family.PABGCS, z2, m_ket, p))
    assert abs(pabgcs_overlap_closed(z1, z2, m_ket, p, m_bra=m_bra) - overlap(u, v)) <= 1e-12


@pytest.mark.parametrize(
    "z, m, t, lam",
    [(1 + 0.5j, 2, 0.7, 0.5), (2.0, 0, 0.0, 0.5), (0.3j, 4, math.pi, 2.5), (-1 - 1j, 1, 5.0, 4.5)],
)
def test_evolve_check(z, m, t, lam):
    assert evolve_check(StateSpec(Family.NBGCS, z, m, IrrepParams(lam)), t) <= 1e-11


def test_evolve_periodicity():
    from su11cs.algebra import hamiltonian_phase

    p = HALF
    v = nbgcs(StateSpec(Family.NBGCS, 1 + 1j, 2, p))
    out = hamiltonian_phase(v, math.pi)
    assert np.allclose(out.coeffs, cmath.exp(-1j * math.pi * p.alpha) * v.coeffs, atol=1e-14)
    with pytest.raises(ValueError):
        evolve_check(StateSpec(Family.PABGCS, 1, 1, p), 0.1)
