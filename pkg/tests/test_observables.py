import math
from fractions import Fraction

import numpy as np
import pytest

from thermoqubit.errors import MandelUndefinedError
from thermoqubit.observables import (
    fidelity_closed_form,
    fidelity_numeric,
    laguerre_assoc,
    mandel_closed_form,
    mandel_numeric,
)
from thermoqubit.thermal import (
    DEFAULT_AMPLITUDES,
    PhysicalAmplitudes,
    ThermalParams,
    thermal_state_density_operator,
)

RNG = np.random.default_rng(2718)


def params_for(n_bar):
    return ThermalParams.from_mean_occupation(n_bar)


def random_amps():
    raw = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    raw /= np.linalg.norm(raw)
    return PhysicalAmplitudes(*raw)


# ---------------------------------------------------------------------------
# fidelity
# ---------------------------------------------------------------------------

def test_fidelity_pure_limit():
    assert abs(fidelity_numeric(DEFAULT_AMPLITUDES, params_for(0.0)) - 1.0) < 1e-12
    for _ in range(20):
        f = fidelity_numeric(random_amps(), params_for(0.0))
        assert abs(f - 1.0) < 1e-12


def test_fidelity_vacuum_amplitudes():
    # the heated vacuum keeps ground-state weight k = 1/(1+n_bar)
    f = fidelity_numeric(PhysicalAmplitudes(1, 0, 0, 0), params_for(1.0))
    assert abs(f - math.sqrt(0.5)) < 1e-12


def test_fidelity_dual_path_oracle():
    # brute-force fidelity through the operator-constructed density matrix
    params = params_for(0.5)
    cutoff = 60
    rho = thermal_state_density_operator(DEFAULT_AMPLITUDES, params, cutoff)
    psi = DEFAULT_AMPLITUDES.as_vector(cutoff).data
    brute = math.sqrt(float(np.real(psi.conj() @ rho.data @ psi)))
    fast = fidelity_numeric(DEFAULT_AMPLITUDES, params, cutoff)
    assert abs(fast - brute) < 1e-10


def test_fidelity_global_phase_invariance():
    params = params_for(0.4)
    base = fidelity_numeric(DEFAULT_AMPLITUDES, params)
    phase = complex(math.cos(1.1), math.sin(1.1))
    rotated = PhysicalAmplitudes(*(phase * a for a in DEFAULT_AMPLITUDES.as_tuple()))
    assert abs(fidelity_numeric(rotated, params) - base) < 1e-10


def test_fidelity_closed_form_vacuum_case():
    report = fidelity_closed_form(PhysicalAmplitudes(1, 0, 0, 0), params_for(0.0))
    assert report.value_closed_form == pytest.approx(1.0, abs=1e-14)
    assert report.abs_discrepancy == pytest.approx(0.0, abs=1e-12)


def test_fidelity_closed_form_reports_drift_at_zero_temperature():
    # the numeric value is exactly 1 at n_bar = 0, so any discrepancy is
    # the printed series' own error; it is known to be nonzero
    report = fidelity_closed_form(DEFAULT_AMPLITUDES, params_for(0.0))
    assert abs(report.value_numeric - 1.0) < 1e-12
    assert report.abs_discrepancy == pytest.approx(
        abs(report.value_closed_form - 1.0), abs=1e-12)
    assert report.abs_discrepancy > 1e-6


@pytest.mark.parametrize("n_bar", [0.1, 0.3, 1.0])
def test_fidelity_closed_form_series_logged(n_bar):
    report = fidelity_closed_form(DEFAULT_AMPLITUDES, params_for(n_bar))
    assert math.isfinite(report.value_closed_form)
    assert report.abs_discrepancy >= 0.0
    assert report.params["n_bar"] == n_bar


# ---------------------------------------------------------------------------
# Mandel Q
# ---------------------------------------------------------------------------

def test_mandel_pure_state_value():
    # direct evaluation on the pure state: <N> = 2.85, <N^2> = 9.69
    q = mandel_numeric(DEFAULT_AMPLITUDES, params_for(0.0))
    assert abs(q - (-0.45)) < 1e-9


def test_mandel_thermal_statistics():
    q = mandel_numeric(PhysicalAmplitudes(1, 0, 0, 0), params_for(0.7))
    assert abs(q - 0.7) < 1e-9


def test_mandel_sign_change():
    q_cold = mandel_numeric(DEFAULT_AMPLITUDES, params_for(0.2))
    q_warm = mandel_numeric(DEFAULT_AMPLITUDES, params_for(0.4))
    assert q_cold < 0.0 < q_warm


def test_mandel_undefined_on_vacuum():
    with pytest.raises(MandelUndefinedError):
        mandel_numeric(PhysicalAmplitudes(1, 0, 0, 0), params_for(0.0))


def test_mandel_closed_form_zero_temperature():
    report = mandel_closed_form(DEFAULT_AMPLITUDES, params_for(0.0))
    # hand evaluation of the printed coefficients: c2 = 2.85, c5 = 8.1225,
    # c8 = 9.69, so Q = (c8 - c5)/c2 - 1 = -0.45
    assert abs(report.value_closed_form - (-0.45)) < 1e-12
    assert report.abs_discrepancy < 1e-9


def test_mandel_closed_form_undefined_denominator():
    with pytest.raises(MandelUndefinedError):
        mandel_closed_form(PhysicalAmplitudes(1, 0, 0, 0), params_for(0.0))


@pytest.mark.parametrize("n_bar", [0.1, 0.3, 1.0, 10.0])
def test_mandel_closed_form_discrepancy_logged(n_bar):
    # the printed <N^2> coefficient table is suspect; the numeric path is
    # ground truth and the report only documents the drift
    report = mandel_closed_form(DEFAULT_AMPLITUDES, params_for(n_bar))
    assert math.isfinite(report.value_closed_form)
    assert report.abs_discrepancy == pytest.approx(
        abs(report.value_numeric - report.value_closed_form), rel=1e-12)


# ---------------------------------------------------------------------------
# associated Laguerre recurrence
# ---------------------------------------------------------------------------

def laguerre_exact(n, k, arg: Fraction) -> Fraction:
    """Exact rational L_n^k via the finite sum, independent of the recurrence."""
    total = Fraction(0)
    for i in range(n + 1):
        total += (Fraction(-1) ** i * Fraction(math.comb(n + k, n - i))
                  * arg**i / Fraction(math.factorial(i)))
    return total


def test_laguerre_constant_order():
    for k in (0, 1, 5):
        for arg in (0.0, 0.5, 3.7):
            assert laguerre_assoc(0, k, arg) == 1.0


def test_laguerre_first_order():
    assert laguerre_assoc(1, 2, 3.0) == pytest.approx(0.0, abs=1e-14)


def test_laguerre_second_order():
    # L_2^1(x) = x^2/2 - 3x + 3
    assert laguerre_assoc(2, 1, 2.0) == pytest.approx(-1.0, abs=1e-14)


def test_laguerre_against_exact_rational():
    for n in range(21):
        for k in (0, 1, 2, 3, 4):
            for arg in (Fraction(1, 4), Fraction(2), Fraction(27, 5)):
                exact = float(laguerre_exact(n, k, arg))
                got = laguerre_assoc(n, k, float(arg))
                scale = max(1.0, abs(exact))
                assert abs(got - exact) / scale < 1e-10, (n, k, arg)


def test_laguerre_vectorized():
    xs = np.linspace(0.0, 12.0, 7)
    vec = laguerre_assoc(5, 2, xs)
    for xi, vi in zip(xs, vec):
        assert vi == pytest.approx(laguerre_assoc(5, 2, float(xi)), rel=1e-12)


def test_laguerre_rejects_bad_degree():
    with pytest.raises(ValueError):
        laguerre_assoc(-1, 0, 1.0)
    with pytest.raises(ValueError):
        laguerre_assoc(601, 0, 1.0)
