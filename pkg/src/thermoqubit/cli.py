"""Command-line front end: temperature sweeps, Wigner grids and the
verification suite, emitting CSV/JSON suitable for plotting and CI.

Subcommands: sweep-fidelity, sweep-mandel, wigner-grid, verify.
Floats are written as %.9e so identical configurations always produce
byte-identical files.  THERMOQUBIT_THREADS caps sweep parallelism
(0 or unset = auto).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import observables, thermal, verify
from .errors import MandelUndefinedError

_FLOAT_FMT = "%.9e"
_REGIME_DEADBAND = 1e-9


def _fmt(value: float) -> str:
    return _FLOAT_FMT % value


@dataclass
class SweepConfig:
    amps: thermal.PhysicalAmplitudes = field(
        default_factory=lambda: thermal.DEFAULT_AMPLITUDES)
    n_bar_start: float = 0.0
    n_bar_end: float = 2.0
    n_bar_steps: int = 50
    n_bar: float | None = None        # single-point commands (wigner-grid)
    cutoff: int | str = "auto"
    tail_tol: float = thermal.TAIL_TOL_DEFAULT
    grid: observables.GridSpec | None = None
    out: str = "-"
    format: str = "csv"

    def __post_init__(self):
        if self.n_bar_start < 0:
            raise ValueError("n_bar range must start at 0 or above")
        if self.n_bar_steps < 2:
            raise ValueError("a sweep needs at least 2 points")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        norm = self.amps.norm()
        if abs(norm - 1.0) > 1e-6:
            warnings.warn(f"amplitudes renormalized (norm was {norm:.8f})")
        if abs(norm - 1.0) > 1e-15:
            self.amps = self.amps.normalized()

    def n_bar_values(self) -> np.ndarray:
        return np.linspace(self.n_bar_start, self.n_bar_end, self.n_bar_steps)

    def resolved_cutoff(self, n_bar: float) -> int:
        params = thermal.ThermalParams.from_mean_occupation(n_bar)
        return thermal.resolve_cutoff(
            None if self.cutoff == "auto" else self.cutoff, params, self.tail_tol)


def _thread_count() -> int:
    raw = os.environ.get("THERMOQUBIT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"THERMOQUBIT_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ValueError("THERMOQUBIT_THREADS must be nonnegative")
    if n == 0:
        return min(8, os.cpu_count() or 1)
    return n


def _map_points(fn, points):
    """Evaluate fn over sweep points, possibly in parallel, order preserved."""
    workers = _thread_count()
    if workers <= 1 or len(points) <= 1:
        return [fn(p) for p in points]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, points))


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _rows_to_output(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        return "\n".join(lines) + "\n"
    records = [dict(zip(header, row)) for row in rows]
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_sweep_fidelity(cfg: SweepConfig) -> str:
    """n_bar sweep of numeric and closed-form fidelity.

    The numeric column must be monotonically nonincreasing (the heated
    state only moves away from the pure target); a violation beyond 1e-10
    aborts the run.
    """
    def point(n_bar):
        params = thermal.ThermalParams.from_mean_occupation(n_bar)
        cutoff = cfg.resolved_cutoff(n_bar)
        report = observables.fidelity_closed_form(cfg.amps, params, cutoff)
        return (n_bar, report.value_numeric, report.value_closed_form,
                report.abs_discrepancy)

    results = _map_points(point, list(cfg.n_bar_values()))
    numeric = [r[1] for r in results]
    for i in range(1, len(numeric)):
        if numeric[i] > numeric[i - 1] + 1e-10:
            raise RuntimeError(
                f"fidelity increased from {numeric[i-1]:.12f} to "
                f"{numeric[i]:.12f} between sweep points {i-1} and {i}")
    rows = [[_fmt(nb), _fmt(fn), _fmt(fc), _fmt(d)]
            for nb, fn, fc, d in results]
    header = ["n_bar", "fidelity_numeric", "fidelity_closed_form", "discrepancy"]
    text = _rows_to_output(header, rows, cfg.format)
    _write_text(cfg.out, text)
    return text


def _regime(q: float) -> str:
    if math.isnan(q):
        return "undefined"
    if abs(q) < _REGIME_DEADBAND:
        return "poisson"
    return "sub" if q < 0 else "super"


def cmd_sweep_mandel(cfg: SweepConfig) -> str:
    """n_bar sweep of numeric and closed-form Mandel Q with regime labels."""
    def point(n_bar):
        params = thermal.ThermalParams.from_mean_occupation(n_bar)
        try:
            cutoff = cfg.resolved_cutoff(n_bar)
            report = observables.mandel_closed_form(cfg.amps, params, cutoff)
            return (n_bar, report.value_numeric, report.value_closed_form,
                    report.abs_discrepancy)
        except MandelUndefinedError:
            nan = float("nan")
            return (n_bar, nan, nan, nan)

    results = _map_points(point, list(cfg.n_bar_values()))
    rows = [[_fmt(nb), _fmt(qn), _fmt(qc), _fmt(d), _regime(qn)]
            for nb, qn, qc, d in results]
    header = ["n_bar", "q_numeric", "q_closed_form", "discrepancy", "regime"]
    text = _rows_to_output(header, rows, cfg.format)
    _write_text(cfg.out, text)
    return text


def cmd_wigner_grid(cfg: SweepConfig) -> str:
    """Wigner function on a phase-space grid for one n_bar, with a JSON
    sidecar of normalization metadata next to the main file."""
    n_bar = cfg.n_bar if cfg.n_bar is not None else 0.1
    params = thermal.ThermalParams.from_mean_occupation(n_bar)
    cutoff = cfg.resolved_cutoff(n_bar)
    closed, report = observables.wigner_closed_form(
        cfg.amps, params, cfg.grid, cutoff)
    numeric = observables.wigner_from_density(
        thermal.thermal_state_density_expansion(cfg.amps, params, cutoff),
        closed.spec, widen=False)

    q_axis = closed.spec.q_axis()
    p_axis = closed.spec.p_axis()
    rows = []
    for i, qv in enumerate(q_axis):
        for j, pv in enumerate(p_axis):
            rows.append([_fmt(qv), _fmt(pv),
                         _fmt(numeric.values[i, j]), _fmt(closed.values[i, j])])
    header = ["q", "p", "w_numeric", "w_closed_form"]
    text = _rows_to_output(header, rows, cfg.format)
    _write_text(cfg.out, text)

    sidecar = {
        "n_bar": n_bar,
        "cutoff": cutoff,
        "grid": {
            "q_min": closed.spec.q_min, "q_max": closed.spec.q_max,
            "p_min": closed.spec.p_min, "p_max": closed.spec.p_max,
            "nq": closed.spec.nq, "np": closed.spec.np,
            "cell_area": closed.spec.cell_area,
        },
        "normalization_constant_vs_printed_series":
            observables.CLOSED_FORM_WIGNER_SCALE,
        "integrated_total_numeric": numeric.integral(),
        "integrated_total_closed_form": closed.integral(),
        "negativity_volume_numeric": observables.wigner_negativity(numeric),
        "negativity_volume_closed_form": observables.wigner_negativity(closed),
        "max_abs_discrepancy": report.params["max_abs_discrepancy"],
        "l1_discrepancy": report.params["l1_discrepancy"],
    }
    sidecar_text = json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
    if cfg.out != "-":
        _write_text(cfg.out + ".meta.json", sidecar_text)
    else:
        sys.stdout.write(sidecar_text)
    return text


def cmd_verify(cfg: SweepConfig | None = None, out: str = "-") -> int:
    """Run the full cross-oracle suite; exit status 0 iff everything passed."""
    amps = cfg.amps if cfg is not None else thermal.DEFAULT_AMPLITUDES
    report = verify.run_verification(amps)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _write_text(out if cfg is None else cfg.out, text)
    if not report["all_passed"]:
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        sys.stderr.write(f"FAILED checks: {', '.join(sorted(set(failed)))}\n")
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_amps(text: str) -> thermal.PhysicalAmplitudes:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 8:
        vals = [float(p) for p in parts]
        comps = [complex(vals[i], vals[i + 1]) for i in range(0, 8, 2)]
        return thermal.PhysicalAmplitudes(*comps)
    if len(parts) == 4:
        return thermal.PhysicalAmplitudes(*(float(p) for p in parts))
    raise ValueError("--amps expects x,y,z,w or re,im pairs (8 values)")


def _parse_nbar_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("--nbar-range expects start:end:steps")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _parse_grid(text: str) -> observables.GridSpec:
    try:
        q_part, p_part = text.split(",")
        q_min, q_max, nq = q_part.split(":")
        p_min, p_max, npts = p_part.split(":")
    except ValueError:
        raise ValueError("--grid expects qmin:qmax:nq,pmin:pmax:np")
    return observables.GridSpec(float(q_min), float(q_max),
                                float(p_min), float(p_max),
                                int(nq), int(npts))


def _parse_cutoff(text: str):
    return "auto" if text == "auto" else int(text)


def _read_config_file(path: str) -> dict:
    """Flat key=value file; blank lines and #-comments ignored."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


_CONFIG_PARSERS = {
    "amps": _parse_amps,
    "nbar_range": _parse_nbar_range,
    "nbar": float,
    "cutoff": _parse_cutoff,
    "tail_tol": float,
    "grid": _parse_grid,
    "out": str,
    "format": str,
}


def _build_config(args) -> SweepConfig:
    # precedence: flags > config file > defaults
    merged = {}
    if getattr(args, "config", None):
        raw = _read_config_file(args.config)
        for key, val in raw.items():
            if key not in _CONFIG_PARSERS:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _CONFIG_PARSERS[key](val)
    for key in _CONFIG_PARSERS:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            merged[key] = flag_val

    kwargs = {}
    if "amps" in merged:
        kwargs["amps"] = merged["amps"]
    if "nbar_range" in merged:
        start, end, steps = merged["nbar_range"]
        kwargs.update(n_bar_start=start, n_bar_end=end, n_bar_steps=steps)
    if "nbar" in merged:
        kwargs["n_bar"] = merged["nbar"]
    for key in ("cutoff", "tail_tol", "grid", "out", "format"):
        if key in merged:
            kwargs[key] = merged[key]
    return SweepConfig(**kwargs)


def _add_shared_flags(sub):
    sub.add_argument("--amps", type=_parse_amps, default=None,
                     help="x,y,z,w (or 8 re,im values) amplitudes")
    sub.add_argument("--nbar-range", dest="nbar_range",
                     type=_parse_nbar_range, default=None,
                     help="sweep range start:end:steps")
    sub.add_argument("--nbar", type=float, default=None,
                     help="single occupation value")
    sub.add_argument("--cutoff", type=_parse_cutoff, default=None,
                     help="Fock cutoff, integer or 'auto'")
    sub.add_argument("--tail-tol", dest="tail_tol", type=float, default=None,
                     help="truncation tail tolerance")
    sub.add_argument("--grid", type=_parse_grid, default=None,
                     help="phase-space grid qmin:qmax:nq,pmin:pmax:np")
    sub.add_argument("--out", type=str, default=None,
                     help="output path ('-' for stdout)")
    sub.add_argument("--format", type=str, default=None,
                     choices=("csv", "json"), help="output format")
    sub.add_argument("--config", type=str, default=None,
                     help="flat key=value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermoqubit",
        description="Temperature diagnostics for a bosonic CNOT qubit encoding")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep-fidelity", "fidelity vs n_bar sweep (CSV/JSON)"),
        ("sweep-mandel", "Mandel Q vs n_bar sweep with regime labels"),
        ("wigner-grid", "Wigner function grid at one n_bar, plus sidecar"),
        ("verify", "run the cross-oracle verification suite"),
    ):
        sub = subs.add_parser(name, help=help_text)
        _add_shared_flags(sub)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _build_config(args)
    if args.command == "sweep-fidelity":
        cmd_sweep_fidelity(cfg)
        return 0
    if args.command == "sweep-mandel":
        cmd_sweep_mandel(cfg)
        return 0
    if args.command == "wigner-grid":
        cmd_wigner_grid(cfg)
        return 0
    if args.command == "verify":
        return cmd_verify(cfg)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
