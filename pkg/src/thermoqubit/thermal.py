"""Thermal-state machinery for a single bosonic mode.

A thermal occupation n_bar fixes the hyperbolic Bogoliubov angle theta
through u = cosh(theta) = sqrt(1 + n_bar), v = sinh(theta) = sqrt(n_bar).
The mixed state obtained by heating the pure superposition

    |Psi> = x|0> + y|1> + z|2> + w|4>

is constructed by three independent routes:

* `thermal_state_density_expansion` sums the sixteen explicit ladder
  families of the series form term by term;
* `thermal_state_density_operator` builds the creation-operator polynomial
  f(a^dagger) and conjugates the bare thermal density matrix with it;
* `thermal_number_states` purifies the thermal state on the doubled
  (original x tilde) space and reduces it back.

The three must agree to truncation accuracy; the verification suite and
tests lean on that triple agreement as the core cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from .errors import CutoffError
from .fock import (
    FockMatrix,
    FockVector,
    build_ladder,
    identity,
    tensor_product,
)

TAIL_TOL_DEFAULT = 1e-10
CUTOFF_CAP = 512
_CUTOFF_FLOOR = 8  # must hold |4> plus the +4 ladder shift of the operators


@dataclass(frozen=True)
class ThermalParams:
    """Temperature scalars: beta*omega, n_bar and the Bogoliubov factors.

    Invariants (up to rounding): n_bar = 1/(exp(beta_omega) - 1),
    u = sqrt(1 + n_bar), v = sqrt(n_bar), u^2 - v^2 = 1,
    theta = arcsinh(sqrt(n_bar)).
    """

    beta_omega: float
    n_bar: float
    u: float
    v: float
    theta: float

    @classmethod
    def from_beta_omega(cls, beta_omega: float) -> "ThermalParams":
        return cls.from_mean_occupation(mean_occupation(beta_omega))

    @classmethod
    def from_mean_occupation(cls, n_bar: float) -> "ThermalParams":
        if n_bar < 0:
            raise ValueError(f"mean occupation must be nonnegative, got {n_bar}")
        n_bar = float(n_bar)
        return cls(
            beta_omega=beta_omega_from_occupation(n_bar),
            n_bar=n_bar,
            u=math.sqrt(1.0 + n_bar),
            v=math.sqrt(n_bar),
            theta=math.asinh(math.sqrt(n_bar)),
        )

    @property
    def k(self) -> float:
        """Ground-state weight 1/(1 + n_bar) of the thermal distribution."""
        return 1.0 / (1.0 + self.n_bar)

    @property
    def k1(self) -> float:
        """Geometric ratio n_bar/(1 + n_bar) of the thermal distribution."""
        return self.n_bar / (1.0 + self.n_bar)


def mean_occupation(beta_omega: float) -> float:
    """Bose-Einstein occupation 1/(exp(beta*omega) - 1) of a single mode."""
    if not beta_omega > 0:
        raise ValueError(f"beta*omega must be positive, got {beta_omega}")
    return 1.0 / math.expm1(beta_omega)


def beta_omega_from_occupation(n_bar: float) -> float:
    """Inverse of mean_occupation; returns +inf at n_bar = 0."""
    if n_bar < 0:
        raise ValueError(f"mean occupation must be nonnegative, got {n_bar}")
    if n_bar == 0:
        return math.inf
    return math.log1p(1.0 / n_bar)


def bogoliubov_factors(n_bar: float) -> ThermalParams:
    """ThermalParams for a given occupation: u = sqrt(1+n_bar), v = sqrt(n_bar)."""
    return ThermalParams.from_mean_occupation(n_bar)


@dataclass(frozen=True)
class PhysicalAmplitudes:
    """Amplitudes (x, y, z, w) on the Fock states |0>, |1>, |2>, |4>."""

    x: complex
    y: complex
    z: complex
    w: complex

    def norm(self) -> float:
        return math.sqrt(abs(self.x) ** 2 + abs(self.y) ** 2
                         + abs(self.z) ** 2 + abs(self.w) ** 2)

    def require_normalized(self, tol: float = 1e-12):
        if abs(self.norm() - 1.0) > tol:
            raise ValueError(f"amplitudes not normalized: |norm-1| = "
                             f"{abs(self.norm() - 1.0):.3e}")

    def normalized(self) -> "PhysicalAmplitudes":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero amplitude vector")
        return PhysicalAmplitudes(self.x / n, self.y / n, self.z / n, self.w / n)

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (complex(self.x), complex(self.y), complex(self.z), complex(self.w))

    def as_vector(self, cutoff: int) -> FockVector:
        """Embed as a single-mode Fock vector (needs cutoff >= 4)."""
        if cutoff < 4:
            raise ValueError("cutoff must be at least 4 to hold |4>")
        vec = np.zeros(cutoff + 1, dtype=complex)
        vec[0], vec[1], vec[2], vec[4] = self.as_tuple()
        return FockVector(vec, cutoff)

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(abs(complex(a).imag) <= tol for a in self.as_tuple())


# Amplitude set used throughout the temperature studies and as CLI default.
DEFAULT_AMPLITUDES = PhysicalAmplitudes(0.2, 0.3, 0.6, math.sqrt(0.51))


def _ladder_coefficients(amps: PhysicalAmplitudes, params: ThermalParams):
    """Coefficients of f = x + (y/u) a^+ + (z/(sqrt2 u^2)) a^+2 + (w/(sqrt24 u^4)) a^+4,
    keyed by the power of the raising operator."""
    u = params.u
    return {
        0: complex(amps.x),
        1: complex(amps.y) / u,
        2: complex(amps.z) / (math.sqrt(2.0) * u**2),
        4: complex(amps.w) / (math.sqrt(24.0) * u**4),
    }


def auto_cutoff(n_bar: float, tail_tol: float = TAIL_TOL_DEFAULT) -> int:
    """Smallest cutoff whose neglected tail is below tail_tol.

    Two conditions must hold: the bare geometric tail k1^(N+1) must be
    below tail_tol*(1-k1), and the quartically weighted tail of the
    heaviest ladder family (the a^+4 one, bounded with unit amplitude)
    must be below tail_tol.  The quartic condition is what keeps traces
    and number moments of the full mixed state accurate, not just those
    of the bare thermal vacuum.  Capped at CUTOFF_CAP with a hard error.
    """
    if n_bar < 0:
        raise ValueError(f"mean occupation must be nonnegative, got {n_bar}")
    if n_bar == 0:
        return _CUTOFF_FLOOR
    k = 1.0 / (1.0 + n_bar)
    k1 = n_bar / (1.0 + n_bar)
    u8 = (1.0 + n_bar) ** 4

    n = np.arange(0, CUTOFF_CAP + 1500, dtype=float)
    with np.errstate(under="ignore"):
        log_terms = (math.log(k) + n * math.log(k1)
                     + np.log(n + 1) + np.log(n + 2) + np.log(n + 3) + np.log(n + 4)
                     - math.log(24.0 * u8))
        terms = np.exp(log_terms)
    suffix = np.cumsum(terms[::-1])[::-1]

    log_k1 = math.log(k1)
    for cand in range(_CUTOFF_FLOOR, CUTOFF_CAP + 1):
        if (cand + 1) * log_k1 >= math.log(tail_tol * (1.0 - k1)):
            continue
        if suffix[max(cand - 3, 0)] >= tail_tol:
            continue
        return cand
    raise CutoffError(
        f"no cutoff <= {CUTOFF_CAP} reaches tail tolerance {tail_tol} at "
        f"n_bar = {n_bar}"
    )


def validate_cutoff(cutoff: int, params: ThermalParams,
                    tail_tol: float = TAIL_TOL_DEFAULT):
    """Check the bare geometric tail condition k1^(cutoff+1) < tail_tol*(1-k1)."""
    if cutoff < _CUTOFF_FLOOR:
        raise CutoffError(f"cutoff {cutoff} below the minimum {_CUTOFF_FLOOR}")
    if cutoff > CUTOFF_CAP:
        raise CutoffError(f"cutoff {cutoff} exceeds the hard cap {CUTOFF_CAP}")
    k1 = params.k1
    if k1 == 0.0:
        return
    if (cutoff + 1) * math.log(k1) >= math.log(tail_tol * (1.0 - k1)):
        raise CutoffError(
            f"cutoff {cutoff} leaves geometric tail mass above {tail_tol} "
            f"at n_bar = {params.n_bar}"
        )


def resolve_cutoff(cutoff, params: ThermalParams,
                   tail_tol: float = TAIL_TOL_DEFAULT) -> int:
    """Accept an explicit cutoff (validated) or None/'auto' (selected)."""
    if cutoff is None or cutoff == "auto":
        return auto_cutoff(params.n_bar, tail_tol)
    cutoff = int(cutoff)
    validate_cutoff(cutoff, params, tail_tol)
    return cutoff


def thermal_vacuum_density(params: ThermalParams, cutoff: int,
                           tail_tol: float = TAIL_TOL_DEFAULT) -> FockMatrix:
    """Bare thermal density matrix: diagonal k * k1^n with k = 1/(1+n_bar)."""
    validate_cutoff(cutoff, params, tail_tol)
    diag = params.k * params.k1 ** np.arange(cutoff + 1)
    return FockMatrix(np.diag(diag.astype(complex)), cutoff)


def _occupation_shift_root(n: np.ndarray, shift: int) -> np.ndarray:
    """sqrt((n+1)(n+2)...(n+shift)) evaluated stably for vector n."""
    if shift == 0:
        return np.ones_like(n, dtype=float)
    return np.exp(0.5 * (gammaln(n + shift + 1) - gammaln(n + 1)))


def thermal_state_density_expansion(amps: PhysicalAmplitudes,
                                    params: ThermalParams, cutoff: int,
                                    tail_tol: float = TAIL_TOL_DEFAULT) -> FockMatrix:
    """Mixed state of the heated superposition, summed family by family.

    Sixteen ladder families contribute, one per pair (p, q) of raising
    powers from {0, 1, 2, 4}: the (p, q) family adds

        c_p * conj(c_q) * k * k1^n * sqrt((n+p)!/n!) * sqrt((n+q)!/n!)

    at matrix position (n+p, n+q) for n = 0..cutoff, dropping terms whose
    ket or bra index exceeds the cutoff.  c_p are the 1/u-normalized
    amplitude coefficients of the creation polynomial; the conjugate
    always sits on the bra-side coefficient, which keeps the result
    Hermitian (the printed series form of the source derivation has a
    non-Hermitian y/z slip in one family; the conjugation structure of
    the expectation-value expansion fixes it).
    """
    amps.require_normalized()
    validate_cutoff(cutoff, params, tail_tol)
    k, k1 = params.k, params.k1
    coeffs = _ladder_coefficients(amps, params)
    n_all = np.arange(cutoff + 1, dtype=float)
    with np.errstate(under="ignore"):
        geom = k * k1 ** n_all
    rho = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for p, cp in coeffs.items():
        for q, cq in coeffs.items():
            n_max = cutoff - max(p, q)  # keep both |n+p> and <n+q|
            if n_max < 0:
                continue
            n = np.arange(n_max + 1)
            vals = (cp * np.conj(cq)) * geom[: n_max + 1] \
                * _occupation_shift_root(n, p) * _occupation_shift_root(n, q)
            rho[n + p, n + q] += vals
    return FockMatrix(rho, cutoff)


def thermal_state_density_operator(amps: PhysicalAmplitudes,
                                   params: ThermalParams, cutoff: int,
                                   tail_tol: float = TAIL_TOL_DEFAULT) -> FockMatrix:
    """Same mixed state, built as f rho_thermal f^dagger with explicit matrices.

    f is the creation polynomial x + (y/u) a^+ + (z/(sqrt2 u^2)) (a^+)^2 +
    (w/(sqrt24 u^4)) (a^+)^4.  Internally everything is assembled at
    cutoff+4 and cropped, so the +4 ladder shift never truncates a visible
    amplitude.  Serves as the independent oracle for the expansion path.
    """
    amps.require_normalized()
    validate_cutoff(cutoff, params, tail_tol)
    inner = cutoff + 4
    _, raising = build_ladder(inner)
    r = raising.data
    coeffs = _ladder_coefficients(amps, params)
    f = (coeffs[0] * np.eye(inner + 1, dtype=complex)
         + coeffs[1] * r
         + coeffs[2] * (r @ r)
         + coeffs[4] * np.linalg.matrix_power(r, 4))
    diag = params.k * params.k1 ** np.arange(inner + 1)
    rho_inner = f @ np.diag(diag.astype(complex)) @ f.conj().T
    return FockMatrix(rho_inner[: cutoff + 1, : cutoff + 1], cutoff)


def _pair_sector_indices(cutoff: int, sector: int) -> np.ndarray:
    """Composite indices of the sector with fixed n - n_tilde = sector."""
    d = cutoff + 1
    if sector >= 0:
        nt = np.arange(d - sector)
        n = nt + sector
    else:
        n = np.arange(d + sector)
        nt = n - sector
    return nt * d + n


def _sector_generator(cutoff: int, sector: int) -> np.ndarray:
    """Pair-creation generator restricted to one n - n_tilde sector.

    The two-mode generator a^+ a^+_tilde - a a_tilde couples |n, nt> only
    to |n+1, nt+1>, so it is block-diagonal over sectors; within a sector
    the sub-diagonal couplings are sqrt((n+1)(nt+1)).
    """
    size = cutoff + 1 - abs(sector)
    j = np.arange(size - 1, dtype=float)
    if sector >= 0:
        coup = np.sqrt((j + sector + 1.0) * (j + 1.0))
    else:
        coup = np.sqrt((j + 1.0) * (j - sector + 1.0))
    return np.diag(coup, -1) - np.diag(coup, 1)


def bogoliubov_unitary(params: ThermalParams, cutoff: int,
                       tail_tol: float = TAIL_TOL_DEFAULT) -> FockMatrix:
    """exp(theta (a^+ a^+_tilde - a a_tilde)) on the doubled truncated space.

    Real-generator convention: the doubled vacuum maps to the two-mode
    squeezed vacuum with nonnegative coefficients sech(theta) tanh(theta)^n,
    matching the manifestly positive thermal density matrix.  Computed
    sector by sector (the generator is block-diagonal over n - n_tilde),
    which is exactly equivalent to exponentiating the full generator.
    """
    validate_cutoff(cutoff, params, tail_tol)
    d = cutoff + 1
    u = np.zeros((d * d, d * d), dtype=complex)
    for sector in range(-cutoff, cutoff + 1):
        idx = _pair_sector_indices(cutoff, sector)
        block = scipy.linalg.expm(params.theta * _sector_generator(cutoff, sector))
        u[np.ix_(idx, idx)] = block
    return FockMatrix(u, cutoff, mode_count=2)


def _thermal_vacuum_vector(params: ThermalParams, cutoff: int) -> FockVector:
    """U(beta)|0, 0_tilde> without forming the full two-mode unitary.

    The doubled vacuum lives in the n = n_tilde sector, which the pair
    generator never leaves, so only that sector's block is exponentiated.
    """
    d = cutoff + 1
    block = scipy.linalg.expm(params.theta * _sector_generator(cutoff, 0))
    vec = np.zeros(d * d, dtype=complex)
    vec[_pair_sector_indices(cutoff, 0)] = block[:, 0]
    return FockVector(vec, cutoff, mode_count=2)


def _raise_original(vec: FockVector) -> FockVector:
    """(a^dagger x I) applied to a two-mode vector (amplitude above the
    cutoff is dropped)."""
    d = vec.cutoff + 1
    m = vec.data.reshape(d, d)  # [n_tilde, n]
    out = np.zeros_like(m)
    out[:, 1:] = m[:, :-1] * np.sqrt(np.arange(1.0, d))
    return FockVector(out.reshape(-1), vec.cutoff, mode_count=2)


def thermal_number_states(params: ThermalParams, cutoff: int,
                          tail_tol: float = TAIL_TOL_DEFAULT) -> list[FockVector]:
    """Purified thermal Fock states |0(b)>, |1(b)>, |2(b)>, |4(b)>.

    |n(b)> = (a^dagger)^n |0(b)> / (u^n sqrt(n!)) on the doubled space;
    the 1/u^n factors make each state unit norm.
    """
    validate_cutoff(cutoff, params, tail_tol)
    u = params.u
    v0 = _thermal_vacuum_vector(params, cutoff)
    v1 = _raise_original(v0)
    v2 = _raise_original(v1)
    v3 = _raise_original(v2)
    v4 = _raise_original(v3)
    return [
        v0,
        FockVector(v1.data / u, cutoff, mode_count=2),
        FockVector(v2.data / (math.sqrt(2.0) * u**2), cutoff, mode_count=2),
        FockVector(v4.data / (math.sqrt(24.0) * u**4), cutoff, mode_count=2),
    ]


def thermal_superposition_state(amps: PhysicalAmplitudes,
                                params: ThermalParams, cutoff: int,
                                tail_tol: float = TAIL_TOL_DEFAULT) -> FockVector:
    """|Psi(b)> = x|0(b)> + y|1(b)> + z|2(b)> + w|4(b)> on the doubled space."""
    amps.require_normalized()
    s0, s1, s2, s4 = thermal_number_states(params, cutoff, tail_tol)
    x, y, z, w = amps.as_tuple()
    data = x * s0.data + y * s1.data + z * s2.data + w * s4.data
    return FockVector(data, cutoff, mode_count=2)


def gate_thermalization_residual(gate: FockMatrix, amps_in: PhysicalAmplitudes,
                                 params: ThermalParams, cutoff: int) -> float:
    """Norm distance between heating-then-gating and gating-then-heating.

    Compares U(b) (gate x I) U^+(b) U(b)|psi', 0_tilde> against
    U(b) (gate|psi'>, 0_tilde) on the doubled truncated space.  Any
    residual is pure truncation/rounding: the truncated Bogoliubov
    unitary is exactly unitary, so the identity holds algebraically.
    """
    if gate.mode_count != 1:
        raise ValueError("gate must act on the single original mode")
    if gate.cutoff != cutoff:
        raise ValueError(f"gate cutoff {gate.cutoff} != requested {cutoff}")
    unit_dev = np.abs(gate.data.conj().T @ gate.data
                      - np.eye(cutoff + 1)).max()
    if unit_dev > 1e-10:
        raise ValueError(f"gate is not unitary: max |U^+U - I| = {unit_dev:.3e}")
    amps_in.require_normalized()

    u_beta = bogoliubov_unitary(params, cutoff)
    gate2 = tensor_product(gate, identity(cutoff))
    psi_prime = amps_in.as_vector(cutoff)
    vac = np.zeros(cutoff + 1, dtype=complex)
    vac[0] = 1.0
    doubled = np.kron(vac, psi_prime.data)  # |psi', 0_tilde>

    thermalized = u_beta.data @ doubled
    lhs = u_beta.data @ (gate2.data @ (u_beta.data.conj().T @ thermalized))
    rhs = u_beta.data @ (gate2.data @ doubled)
    return float(np.linalg.norm(lhs - rhs))
