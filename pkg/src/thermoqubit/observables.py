"""Temperature diagnostics: fidelity, Mandel Q and the Wigner function.

Each diagnostic exists twice: a first-principles numeric path computed
from the density matrix, and the published closed-form series evaluated
exactly as printed.  The numeric paths are cross-checked against each
other and act as ground truth; the closed forms are *audited*, never
trusted, because several of them carry typos.  `ObservableReport` carries
both values and their discrepancy so the audit is always visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import GridWideningError, MandelUndefinedError
from .fock import FockMatrix
from .thermal import (
    PhysicalAmplitudes,
    ThermalParams,
    resolve_cutoff,
    thermal_state_density_expansion,
)

GRID_TOL_DEFAULT = 1e-6
_MEAN_OCCUPATION_EPS = 1e-12  # below this <N> the Mandel Q is undefined

# Our Wigner normalization is integral(W dq dp) = trace(rho); the printed
# closed-form series carries no 1/(2 pi hbar) prefactor, so our output is
# the printed series times this constant (hbar = 1).
CLOSED_FORM_WIGNER_SCALE = 1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space grid (oscillator units, length scale b = 1)."""

    q_min: float = -8.0
    q_max: float = 8.0
    p_min: float = -8.0
    p_max: float = 8.0
    nq: int = 257
    np: int = 257
    b: float = 1.0  # configurable length scale; q enters as q/b, p as b*p

    def __post_init__(self):
        if self.nq < 2 or self.np < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid bounds must be increasing")

    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.nq)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def cell_area(self) -> float:
        dq = (self.q_max - self.q_min) / (self.nq - 1)
        dp = (self.p_max - self.p_min) / (self.np - 1)
        return dq * dp

    def doubled(self) -> "GridSpec":
        return GridSpec(2 * self.q_min, 2 * self.q_max,
                        2 * self.p_min, 2 * self.p_max,
                        self.nq, self.np, self.b)


@dataclass(frozen=True)
class WignerGrid:
    """Real Wigner values W(q_i, p_j) plus the grid geometry.

    values[i, j] corresponds to (q_axis[i], p_axis[j]).  Normalization
    convention: the Riemann sum values * cell_area approximates trace(rho).
    """

    spec: GridSpec
    values: np.ndarray
    normalization_convention: str = "integral_equals_trace"

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.spec.nq, self.spec.np):
            raise ValueError(f"values shape {vals.shape} does not match grid "
                             f"({self.spec.nq}, {self.spec.np})")

    @property
    def cell_area(self) -> float:
        return self.spec.cell_area

    def integral(self) -> float:
        return float(self.values.sum() * self.cell_area)


@dataclass(frozen=True)
class ObservableReport:
    """Numeric value, closed-form value and their absolute discrepancy.

    `params` echoes the inputs (amplitudes, n_bar, cutoff, tolerances) and
    any extra diagnostics a caller attaches.
    """

    value_numeric: float
    value_closed_form: float | None = None
    abs_discrepancy: float | None = None
    params: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, numeric: float, closed_form: float, params: dict
                ) -> "ObservableReport":
        return cls(
            value_numeric=float(numeric),
            value_closed_form=float(closed_form),
            abs_discrepancy=abs(float(numeric) - float(closed_form)),
            params=params,
        )


def _echo_params(amps: PhysicalAmplitudes, params: ThermalParams,
                 cutoff, **extra) -> dict:
    out = {
        "amps": [repr(a) for a in amps.as_tuple()],
        "n_bar": params.n_bar,
        "cutoff": cutoff,
    }
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# fidelity
# ---------------------------------------------------------------------------

def fidelity_numeric(amps: PhysicalAmplitudes, params: ThermalParams,
                     cutoff=None) -> float:
    """sqrt(<Psi| rho |Psi>) between the pure target and its heated state."""
    amps.require_normalized()
    cutoff = resolve_cutoff(cutoff, params)
    rho = thermal_state_density_expansion(amps, params, cutoff)
    psi = amps.as_vector(cutoff).data
    val = float(np.real(psi.conj() @ rho.data @ psi))
    if val > 1.0 + 1e-10:
        raise ArithmeticError(f"fidelity^2 = {val} exceeds 1 beyond tolerance")
    return math.sqrt(max(val, 0.0))


def _fidelity_series_terms(amps: PhysicalAmplitudes, params: ThermalParams):
    """The 26 printed terms of the closed-form fidelity series, verbatim.

    Each entry is (coefficient, power of k1).  k1^0 is taken as 1 even at
    zero temperature (0^0 = 1).  Several terms are structurally suspect
    (unconjugated products, odd u powers); they are evaluated as printed.
    """
    x, y, z, w = [complex(a) for a in amps.as_tuple()]
    u = params.u
    ax2, ay2 = abs(x) ** 2, abs(y) ** 2
    az2, aw2 = abs(z) ** 2, abs(w) ** 2
    s2, s6, s24 = math.sqrt(2.0), math.sqrt(6.0), math.sqrt(24.0)
    return [
        (ax2 ** 2, 0),
        (ax2 * ay2 / u, 0),
        (ax2 * az2 / (s2 * u**2), 0),
        (ax2 * aw2 / (s24 * u**4), 0),
        (ax2 * ay2 / u, 0),
        (ax2 ** 2 * ay2 / u**2, 1),
        (ay2 ** 2 / u**2, 0),
        (s2 * ay2 * x * z / u, 1),
        (ay2 * az2 / u**3, 0),
        (s24 * ay2 * aw2 / (s24 * u**5), 0),
        (s2 * ax2 * az2 / u**2, 0),
        (s2 * np.conj(x) * np.conj(z) * y**2 / u, 1),
        (ay2 * az2 / u**3, 0),
        (ax2 * az2, 2),
        (2 * ay2 * az2 / u**2, 1),
        (az2 ** 2 / u**4, 2),
        (s6 * x * w * az2 / u**2, 2),
        (s6 * az2 * aw2 / (s24 * u**6), 0),
        (s24 * x * np.conj(w) / (s24 * u**4), 0),
        (s24 * az2 * aw2 / (s24 * u**5), 0),
        (s6 * x**2 * z**2 * np.conj(w) / u**4, 2),
        (2 * s6 * az2 * aw2 / (s24 * u**4), 0),
        (ax2 * aw2, 4),
        (4 * ay2 * aw2 / u**2, 3),
        (az2 * aw2 / (2 * u**4), 2),
        (24 * aw2 ** 2 / (24 * u**8), 0),
    ]


def fidelity_closed_form(amps: PhysicalAmplitudes, params: ThermalParams,
                         cutoff=None) -> ObservableReport:
    """Audit of the published closed-form fidelity against the numeric path.

    The printed series is summed verbatim and square-rooted; the report
    carries its discrepancy against `fidelity_numeric`, which is the
    ground truth.  No tolerance is implied: the series is known to drift
    from the numeric value (it disagrees even at zero temperature, where
    the fidelity is exactly 1).
    """
    amps.require_normalized()
    cutoff = resolve_cutoff(cutoff, params)
    k, k1 = params.k, params.k1
    total = complex(0.0)
    for coef, npow in _fidelity_series_terms(amps, params):
        total += coef * k * (k1 ** npow if npow else 1.0)
    re = total.real
    closed = math.sqrt(re) if re >= 0 else float("nan")
    numeric = fidelity_numeric(amps, params, cutoff)
    return ObservableReport.compare(
        numeric, closed, _echo_params(amps, params, cutoff))


# ---------------------------------------------------------------------------
# Mandel Q
# ---------------------------------------------------------------------------

def mandel_numeric(amps: PhysicalAmplitudes, params: ThermalParams,
                   cutoff=None) -> float:
    """Q = (<N^2> - <N>^2 - <N>) / <N> on the heated state."""
    amps.require_normalized()
    cutoff = resolve_cutoff(cutoff, params)
    rho = thermal_state_density_expansion(amps, params, cutoff)
    n = np.arange(cutoff + 1, dtype=float)
    n_diag = np.diag(np.asarray(rho.data)).real
    mean_n = float(n_diag @ n)
    mean_n2 = float(n_diag @ (n * n))
    if mean_n < _MEAN_OCCUPATION_EPS:
        raise MandelUndefinedError(
            f"<N> = {mean_n:.3e}: Mandel Q undefined on a zero-occupation state")
    return (mean_n2 - mean_n**2 - mean_n) / mean_n


def _mandel_coefficients(amps: PhysicalAmplitudes) -> dict:
    """The printed c1..c8 coefficient table (c9 is announced but never
    defined in the source; it does not appear in the formula)."""
    x, y, z, w = amps.as_tuple()
    ax2, ay2 = abs(x) ** 2, abs(y) ** 2
    az2, aw2 = abs(z) ** 2, abs(w) ** 2
    return {
        "c1": ax2 + ay2 + az2 + aw2,
        "c2": ay2 + 2 * az2 + 4 * aw2,
        "c3": (ax2**2 + 2 * ax2 * ay2 + 2 * ax2 * az2 + 2 * ax2 * aw2
               + ay2**2 + 2 * ay2 * az2 + 2 * ay2 * aw2
               + az2**2 + 2 * az2 * aw2 + aw2**2),
        "c4": (ax2 * ay2 + ay2**2 + 3 * ay2 * az2 + 5 * ay2 * aw2
               + 2 * ax2 * az2 + 2 * az2**2 + 6 * az2 * aw2
               + 4 * ax2 * aw2 + 4 * aw2**2),
        "c5": (ay2**2 + 4 * ay2 * az2 + 8 * ay2 * aw2
               + 4 * az2**2 + 16 * az2 * aw2 + 16 * aw2**2),
        "c6": ax2 + ay2 + 4 * ay2 + 7 * az2 + 8 * aw2,
        "c7": ax2 + ay2 + aw2 + az2,
        "c8": ay2 + 4 * az2 + 16 * aw2,
    }


def mandel_closed_form(amps: PhysicalAmplitudes, params: ThermalParams,
                       cutoff=None) -> ObservableReport:
    """Audit of the published closed-form Mandel Q against the numeric path.

    Evaluates, with the printed c1..c8,

        Q = [(c6-c4) u^2 v^2 + (c7-c3) v^4 + (c8-c5) u^4 - c1 v^2 - c2 u^2]
            / (c1 v^2 + c2 u^2)

    The closed form matches the numeric path at zero temperature and
    drifts for n_bar > 0 (its <N^2> coefficient table is suspect); the
    numeric path arbitrates.
    """
    amps.require_normalized()
    c = _mandel_coefficients(amps)
    u2, v2 = params.u ** 2, params.v ** 2
    den = c["c1"] * v2 + c["c2"] * u2
    if den < _MEAN_OCCUPATION_EPS:
        raise MandelUndefinedError(
            f"denominator c1 v^2 + c2 u^2 = {den:.3e}: Mandel Q undefined")
    num = ((c["c6"] - c["c4"]) * u2 * v2 + (c["c7"] - c["c3"]) * v2**2
           + (c["c8"] - c["c5"]) * u2**2 - c["c1"] * v2 - c["c2"] * u2)
    closed = num / den
    cutoff = resolve_cutoff(cutoff, params)
    numeric = mandel_numeric(amps, params, cutoff)
    return ObservableReport.compare(
        numeric, closed, _echo_params(amps, params, cutoff))


# ---------------------------------------------------------------------------
# associated Laguerre functions
# ---------------------------------------------------------------------------

def laguerre_assoc(n: int, k: int, arg):
    """L_n^k(arg) by the stable three-term recurrence.

    L_m^k = ((2m - 1 + k - arg) L_{m-1}^k - (m - 1 + k) L_{m-2}^k) / m,
    with L_0 = 1 and L_1 = 1 + k - arg.  Accepts scalar or array argument.
    """
    if n < 0 or k < 0:
        raise ValueError("laguerre_assoc requires n >= 0 and k >= 0")
    if n > 600:
        raise ValueError(f"degree {n} beyond the supported range (600)")
    arg = np.asarray(arg, dtype=float)
    prev = np.ones_like(arg)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + k - arg
    for m in range(2, n + 1):
        prev, cur = cur, ((2 * m - 1 + k - arg) * cur - (m - 1 + k) * prev) / m
    return cur if cur.ndim else float(cur)


def _scaled_laguerre_steps(k: int, top: int, arg: np.ndarray,
                           envelope: np.ndarray):
    """Yield (m, L_m^k(arg) * envelope) for m = 0..top.

    The recurrence is run on the envelope-scaled functions; since it is
    linear this is exact, and it keeps intermediates bounded where the
    bare polynomials would overflow (large arg, large m).
    """
    prev = None
    cur = envelope
    yield 0, cur
    if top == 0:
        return
    prev, cur = cur, (1.0 + k - arg) * envelope
    yield 1, cur
    for m in range(2, top + 1):
        prev, cur = cur, ((2 * m - 1 + k - arg) * cur - (m - 1 + k) * prev) / m
        yield m, cur


# ---------------------------------------------------------------------------
# Wigner function, numeric path
# ---------------------------------------------------------------------------

def _wigner_values(rho: np.ndarray, q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """W(q, p) = sum_{m,n} rho[m, n] K[n, m] with the Fock-basis kernel.

    With alpha = (q + ip)/sqrt(2) and m >= n the kernel is
    (1/pi) (-1)^n sqrt(n!/m!) (2 conj(alpha))^(m-n) e^{-2|alpha|^2}
    L_n^{m-n}(4|alpha|^2); the m < n entries follow by conjugation.  The
    sum is organized by diagonal offset with a fixed loop order so results
    are deterministic, and the Gaussian envelope is folded into the
    Laguerre recurrence to avoid overflow.
    """
    dim = rho.shape[0]
    qg, pg = np.meshgrid(q, p, indexing="ij")
    r2 = qg**2 + pg**2
    x_arg = 2.0 * r2                    # = 4 |alpha|^2
    with np.errstate(under="ignore"):
        envelope = np.exp(-r2)          # = exp(-2 |alpha|^2)
    w = np.zeros(qg.shape, dtype=complex)
    for off in range(dim):
        lower = np.diagonal(rho, -off)  # rho[n+off, n]
        upper = np.diagonal(rho, off)   # rho[n, n+off]
        if not (np.any(lower) or np.any(upper)):
            continue
        n_top = dim - 1 - off
        ns = np.arange(n_top + 1, dtype=float)
        weights = ((-1.0) ** np.arange(n_top + 1)
                   * np.exp(0.5 * (gammaln(ns + 1) - gammaln(ns + off + 1))))
        acc_lower = np.zeros(qg.shape, dtype=complex)
        acc_upper = np.zeros(qg.shape, dtype=complex)
        for n, scaled_l in _scaled_laguerre_steps(off, n_top, x_arg, envelope):
            acc_lower += (lower[n] * weights[n]) * scaled_l
            if off:
                acc_upper += (upper[n] * weights[n]) * scaled_l
        factor = (np.sqrt(2.0) * (qg - 1j * pg)) ** off   # (2 conj(alpha))^off
        if off == 0:
            w += acc_lower
        else:
            w += factor * acc_lower + np.conj(factor) * acc_upper
    w /= math.pi
    imag_max = float(np.abs(w.imag).max())
    if imag_max > 1e-10:
        raise ValueError(f"Wigner values not real: max imaginary residue "
                         f"{imag_max:.3e} (input not Hermitian?)")
    return w.real


def wigner_from_density(rho: FockMatrix, grid: GridSpec | None = None, *,
                        grid_tol: float = GRID_TOL_DEFAULT,
                        widen: bool | None = None) -> WignerGrid:
    """Wigner function of a single-mode density matrix on a (q, p) grid.

    When no grid is given, the default [-8, 8]^2 / 257^2 grid is used and
    the bounds are doubled (up to [-32, 32]^2) until the Riemann sum of W
    matches trace(rho) within grid_tol; an explicit grid is used as-is
    unless widen=True.
    """
    if rho.mode_count != 1:
        raise ValueError("wigner_from_density expects a single-mode matrix")
    if widen is None:
        widen = grid is None
    spec = grid if grid is not None else GridSpec()
    target = float(np.trace(rho.data).real)
    attempts = 0
    while True:
        values = _wigner_values(np.asarray(rho.data), spec.q_axis(), spec.p_axis())
        result = WignerGrid(spec, values)
        if not widen or abs(result.integral() - target) <= grid_tol:
            return result
        if spec.q_max >= 32 or attempts >= 3:
            raise GridWideningError(
                f"normalization |integral - trace| = "
                f"{abs(result.integral() - target):.3e} > {grid_tol} on "
                f"[{spec.q_min}, {spec.q_max}]^2; no wider grid allowed")
        spec = spec.doubled()
        attempts += 1


def wigner_negativity(grid: WignerGrid) -> float:
    """Integral of the negative part: sum of max(0, -W) * cell_area."""
    return float(np.maximum(0.0, -grid.values).sum() * grid.cell_area)


# ---------------------------------------------------------------------------
# Wigner function, printed closed-form path
# ---------------------------------------------------------------------------

def _closed_form_families(amps: PhysicalAmplitudes, params: ThermalParams,
                          qg: np.ndarray, pg: np.ndarray):
    """The ten printed Laguerre families: (superscript k, index shift s,
    phase-space prefactor grid, n-dependent weight).

    Family f contributes prefactor * weight(n) * L_{n+s}^k(2 r^2) inside
    the master sum over n.  Transcribed verbatim, including the suspect
    pieces (the y^2 family's single u power, the xw family's quadratic
    polynomial, the yw family's sign).
    """
    x, y, z, w = [complex(a).real for a in amps.as_tuple()]
    u = params.u
    b = 1.0
    qb = qg / b
    pb = b * pg
    one = np.ones_like(qg)
    return [
        (0, 0, 2 * x**2 * one, lambda n: 1.0),
        (0, 1, -(2 * y**2 / u) * one, lambda n: n + 1.0),
        (0, 2, (z**2 / u**4) * one, lambda n: (n + 1.0) * (n + 2.0)),
        (0, 4, (2 * w**2 / (24.0 * u**8)) * one,
         lambda n: (n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0)),
        (1, 0, (4 * math.sqrt(2.0) * x * y / u) * qb, lambda n: 1.0),
        (2, 0, (4 * math.sqrt(2.0) * x * z / u**2) * (qb**2 - pb**2),
         lambda n: 1.0),
        (4, 0, (4 * math.sqrt(6.0) * x * w / (3 * u**4))
         * (qb**2 + pb**2 - 6 * qb**2 * pb**2), lambda n: 1.0),
        (1, 1, -(4 * y * z / u**3) * qb, lambda n: n + 1.0),
        (3, 1, (4 * math.sqrt(3.0) * y * w / (3 * u**5))
         * (qb**3 - 3 * qb * pb**2), lambda n: n + 1.0),
        (2, 2, (2 * math.sqrt(3.0) * w * z / (3 * u**6)) * (qb**2 - pb**2),
         lambda n: (n + 1.0) * (n + 2.0)),
    ]


def wigner_closed_form(amps: PhysicalAmplitudes, params: ThermalParams,
                       grid: GridSpec | None = None, cutoff=None, *,
                       grid_tol: float = GRID_TOL_DEFAULT
                       ) -> tuple[WignerGrid, ObservableReport]:
    """Published closed-form Wigner series, audited against the numeric path.

    Requires real amplitudes (the printed series uses unconjugated
    products).  The series is truncated at the cutoff, weighted by
    (-1)^n k1^n under the Gaussian envelope, and rescaled by
    CLOSED_FORM_WIGNER_SCALE so both paths share the
    integral-equals-trace normalization.  The returned report compares
    integrals and records the pointwise and L1 discrepancies in its
    params (the printed series is known to carry typos; the numeric grid
    is ground truth).
    """
    amps.require_normalized()
    if not amps.is_real():
        raise ValueError("closed-form Wigner series requires real amplitudes")
    cutoff = resolve_cutoff(cutoff, params)
    rho = thermal_state_density_expansion(amps, params, cutoff)
    numeric = wigner_from_density(rho, grid, grid_tol=grid_tol)
    spec = numeric.spec

    qg, pg = np.meshgrid(spec.q_axis(), spec.p_axis(), indexing="ij")
    x_arg = 2.0 * (qg**2 + pg**2)
    with np.errstate(under="ignore"):
        envelope = np.exp(-x_arg / 2.0)
    k, k1 = params.k, params.k1
    n_signed = (-1.0) ** np.arange(cutoff + 1)
    with np.errstate(under="ignore"):
        geom = k1 ** np.arange(cutoff + 1, dtype=float)

    families = _closed_form_families(amps, params, qg, pg)
    by_k: dict[int, list] = {}
    for kk, shift, pref, weight in families:
        by_k.setdefault(kk, []).append((shift, pref, weight))

    total = np.zeros_like(qg)
    for kk in sorted(by_k):
        group = by_k[kk]
        top = cutoff + max(shift for shift, _, _ in group)
        for m, scaled_l in _scaled_laguerre_steps(kk, top, x_arg, envelope):
            for shift, pref, weight in group:
                n = m - shift
                if 0 <= n <= cutoff:
                    total += (geom[n] * n_signed[n] * weight(n)) * pref * scaled_l
    values = k * CLOSED_FORM_WIGNER_SCALE * total
    closed = WignerGrid(spec, values)

    diff = closed.values - numeric.values
    report = ObservableReport.compare(
        numeric.integral(), closed.integral(),
        _echo_params(
            amps, params, cutoff,
            max_abs_discrepancy=float(np.abs(diff).max()),
            l1_discrepancy=float(np.abs(diff).sum() * spec.cell_area),
            closed_form_scale=CLOSED_FORM_WIGNER_SCALE,
            grid=[spec.q_min, spec.q_max, spec.p_min, spec.p_max,
                  spec.nq, spec.np],
        ))
    return closed, report
