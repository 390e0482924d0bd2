import math
import warnings

import pytest
from scipy import special as sps
from scipy.integrate import quad

from su11cs.algebra import IrrepParams
from su11cs.measures import (
    LambdaConditionWarning,
    meijer_g_log_mellin,
    measure_pointwise_m0,
    nbgcs_moment_check,
    pabgcs_moment_check,
    pabgcs_moment_constant,
)
from su11cs.states import nbgcs_norm

HALF = IrrepParams(0.5)


def _mellin(s, a, b, m, n):
    lg, sg = meijer_g_log_mellin(s, a, b, m, n)
    return sg * math.exp(lg)


@pytest.mark.parametrize("b1, b2, s", [(0.3, 1.1, 1.0), (0.0, 2.0, 2.5), (1.5, 0.5, 3.0)])
def test_mellin_against_bessel_k_kernel(b1, b2, s):
    # G^{2,0}_{0,2}(x | b1, b2) = 2 x^{(b1+b2)/2} K_{b1-b2}(2√x)
    def g(x):
        return 2 * x ** ((b1 + b2) / 2) * sps.kv(b1 - b2, 2 * math.sqrt(x))

    ref, _ = quad(lambda x: x ** (s - 1) * g(x), 0, math.inf, epsrel=1e-11, limit=200)
    assert _mellin(s, [], [b1, b2], 2, 0) == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("a, b, s", [(0.2, 0.5, 0.3), (-1.0, 0.0, 1.5)])
def test_mellin_against_beta_kernel(a, b, s):
    # G^{1,1}_{1,1}(x | a; b) = Γ(1−a+b) x^b (1+x)^{a−b−1}
    def g(x):
        return math.gamma(1 - a + b) * x**b * (1 + x) ** (a - b - 1)

    ref, _ = quad(lambda x: x ** (s - 1) * g(x), 0, math.inf, epsrel=1e-11, limit=200)
    assert _mellin(s, [a], [b], 1, 1) == pytest.approx(ref, rel=1e-8)


def test_mellin_cancels_paired_poles():
    # Γ(1−0−s)/Γ(1−0−s) at integer s cancels instead of producing inf/inf
    lg, sg = meijer_g_log_mellin(3, [0.0, 1.0], [0.0, 2.0, 2.0, 0.0], 3, 1)
    expected = math.lgamma(3) + 2 * math.lgamma(5) - math.lgamma(4)
    assert sg == 1 and lg == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        meijer_g_log_mellin(1, [0.0], [-1.0], 1, 1)


@pytest.mark.parametrize("lam", [0.5, 2.5, 4.5])
@pytest.mark.parametrize("m", [0, 1, 2, 5])
def test_nbgcs_moment_ratio_is_one(lam, m):
    for n in range(0, 51, 7):
        assert nbgcs_moment_check(n, m, IrrepParams(lam)).ratio == pytest.approx(1, abs=1e-12)


def test_nbgcs_moment_examples():
    r = nbgcs_moment_check(0, 0, HALF)
    assert r.computed_moment == pytest.approx(1 / math.pi) and r.required_moment == pytest.approx(1 / math.pi)
    r = nbgcs_moment_check(7, 2, HALF)
    assert abs(r.ratio - 1) <= 1e-12
    lam = 2.5
    for n in range(6):
        r = nbgcs_moment_check(n, 0, IrrepParams(lam))
        bgcs = math.factorial(n) * math.gamma(lam + 0.5 + n) / (math.pi * math.gamma(lam + 0.5))
        assert r.required_moment == pytest.approx(bgcs, rel=1e-13)


def test_moments_in_log_space_do_not_overflow():
    r = nbgcs_moment_check(200, 5, IrrepParams(4.5))
    assert math.isfinite(r.log_computed) and r.ratio == pytest.approx(1, abs=1e-11)
    assert r.computed_moment == math.inf  # too big for a double, but the log is fine


def test_lambda_condition_is_a_warning():
    with pytest.warns(LambdaConditionWarning):
        r = nbgcs_moment_check(3, 1, IrrepParams(1.0))
    assert not r.lambda_condition_met and r.ratio == pytest.approx(1, abs=1e-12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert nbgcs_moment_check(3, 1, IrrepParams(4.5)).lambda_condition_met


@pytest.mark.parametrize("lam", [0.5, 2.5, 4.5])
@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_pabgcs_moment_ratio_constant(lam, m):
    r0, spread = pabgcs_moment_constant(m, IrrepParams(lam))
    assert spread <= 1e-12
    assert r0 == pytest.approx(0.5, rel=1e-13)


def test_pabgcs_n0_by_hand():
    # n = 0, m = 2, λ = 1/2: computed = Γ(1)·Γ(3)·... straight from the Gamma products
    m, a = 2, 1.0
    computed = math.gamma(a + m) / math.gamma(m + 1) * math.gamma(m + 1) / (2 * math.pi * math.gamma(a + m))
    required = 1 / math.pi
    r = pabgcs_moment_check(0, m, HALF)
    assert r.computed_moment == pytest.approx(computed, rel=1e-14)
    assert r.required_moment == pytest.approx(required, rel=1e-14)


def test_pabgcs_m0_degenerates_to_nbgcs():
    assert pabgcs_moment_check(4, 0, HALF).ratio == pytest.approx(nbgcs_moment_check(4, 0, HALF).ratio)


def test_pointwise_m0_spot_and_domain():
    assert measure_pointwise_m0(1.0, HALF) == pytest.approx(2 / math.pi * sps.iv(0, 2) * sps.kv(0, 2), rel=1e-10)
    assert measure_pointwise_m0(1.0, HALF) == pytest.approx(0.1652861, abs=1e-7)
    for x in (1e-3, 0.5, 3.0, 10.0):
        assert measure_pointwise_m0(x, IrrepParams(2.5)) > 0
    with pytest.raises(ValueError):
        measure_pointwise_m0(0.0, HALF)


@pytest.mark.parametrize("lam", [0.5, 2.5])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_pointwise_m0_reproduces_moments(lam, n):
    # ∫₀^∞ xⁿ K(√x)/𝔐(√x) dx = n!(λ+1/2)ₙ/π, evaluated by adaptive quadrature
    p = IrrepParams(lam)

    def f(x):
        r = math.sqrt(x)
        return x**n * measure_pointwise_m0(r, p) / nbgcs_norm(r, 0, p)

    val, _ = quad(f, 0, 400, limit=400, epsrel=1e-12)
    assert val == pytest.approx(nbgcs_moment_check(n, 0, p).required_moment, rel=1e-8)
