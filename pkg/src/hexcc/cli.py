"""Command-line interface.

Subcommands: ``verify`` (ordered invariant suite), ``spectrum`` (eigenvalue
clusters of the perturbed model), ``sweep`` (coupling-grid phase diagram via
the decoupled per-color Ising solvers), ``order-params`` (string order
parameters at one coupling point), and ``condense`` (anyon condensation
report).  Exit codes: 0 success, 1 verification failure, 2 configuration
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import __version__
from .anyons import color_code_theory, condense, toric_code_theory
from .lattice import build_hex_torus, link_lattice, validate_lattice
from .models import (
    Couplings,
    color_code_h,
    perturbed_h,
    toric_code_h,
    toric_code_with_holes_h,
)
from .observables import (
    PhasePoint,
    classify_phase,
    corner_string_values,
    phase_point,
)
from .spectra import (
    CLUSTER_TOL_DEFAULT,
    _cluster,
    full_spectrum,
    low_lying,
    sector_eigenvalues,
    xtype_symmetry_masks,
)
from .transform import (
    green_frame,
    ising_decoupling_matches,
    ising_sector_equivalence,
    red_frame,
    verify_group_image,
)

THREADS_ENV = "HEXCC_THREADS"

CONFIG_SCHEMA = {
    "lattice": {
        "type": "string",
        "default": "3x3",
        "description": "Torus dimensions L1xL2; both multiples of 3.",
    },
    "couplings": {
        "type": "array[3] of number in [0,1]",
        "default": [0.0, 0.0, 0.0],
        "description": "Coupling triple (j_r, j_g, j_b) for spectrum/order-params.",
    },
    "grid": {
        "type": "string or null",
        "default": None,
        "description": (
            "Sweep axes, e.g. 'jr=0:1:21,jg=0.3,jb=0:1:5'; each axis is a "
            "'lo:hi:count' range or a single value.  Omitted axes default to 0."
        ),
    },
    "slice": {
        "type": "string or null",
        "default": None,
        "description": (
            "Constraint: 'jg=jb' copies the jg axis onto jb; 'diagonal' sets "
            "jg=jb=jr.  Constrained axes must not appear in the grid."
        ),
    },
    "dense_limit": {
        "type": "integer",
        "default": 16384,
        "description": "Largest Hilbert-space dimension diagonalized densely.",
    },
    "k": {
        "type": "integer",
        "default": 16,
        "description": "Eigenvalue count for iterative (Lanczos) solves.",
    },
    "tol": {
        "type": "number",
        "default": 1e-9,
        "description": "Eigenvalue matching tolerance in verification.",
    },
    "threads": {
        "type": "integer or null",
        "default": None,
        "description": (
            f"Sweep worker threads; falls back to the {THREADS_ENV} "
            "environment variable, then 1."
        ),
    },
    "format": {
        "type": "'csv' or 'json' or null",
        "default": None,
        "description": "Output format; default csv for sweep, json otherwise.",
    },
    "out": {
        "type": "string or null",
        "default": None,
        "description": "Output path; default stdout.",
    },
    "theory": {
        "type": "'cc' or 'tc'",
        "default": "cc",
        "description": "Anyon theory for condense: color code or toric code.",
    },
    "generators": {
        "type": "array of string",
        "default": [],
        "description": "Anyon labels generating the condensation algebra.",
    },
}

DEFAULTS = {name: spec["default"] for name, spec in CONFIG_SCHEMA.items()}


class ConfigError(Exception):
    """Invalid configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    """Merged configuration: defaults, then config file, then flags."""

    mode: str
    lattice: tuple[int, int]
    couplings: Couplings
    grid: str | None
    slice: str | None
    dense_limit: int
    k: int
    tol: float
    threads: int
    format: str
    out: str | None
    theory: str
    generators: list[str]

    def echo(self) -> dict:
        return {
            "mode": self.mode,
            "lattice": f"{self.lattice[0]}x{self.lattice[1]}",
            "couplings": list(self.couplings.as_tuple()),
            "grid": self.grid,
            "slice": self.slice,
            "dense_limit": self.dense_limit,
            "k": self.k,
            "tol": self.tol,
            "threads": self.threads,
            "format": self.format,
            "theory": self.theory,
            "generators": list(self.generators),
        }


def parse_lattice(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"lattice must look like '3x3', got {text!r}")
    try:
        l1, l2 = int(parts[0]), int(parts[1])
    except ValueError as e:
        raise ConfigError(f"lattice must look like '3x3', got {text!r}") from e
    return l1, l2


def parse_couplings(value) -> Couplings:
    if isinstance(value, str):
        parts = value.split(",")
        if len(parts) != 3:
            raise ConfigError(
                f"couplings must be three comma-separated values, got {value!r}"
            )
        value = parts
    try:
        return Couplings.of([float(v) for v in value])
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad couplings {value!r}: {e}") from e


_AXIS_NAMES = {"jr": "jr", "j_r": "jr", "jg": "jg", "j_g": "jg", "jb": "jb", "j_b": "jb"}


def parse_axis(spec: str) -> list[float]:
    parts = spec.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ConfigError(f"axis count must be positive: {spec!r}")
            if count == 1:
                return [lo]
            if hi <= lo:
                raise ConfigError(f"axis range must have hi > lo: {spec!r}")
            return [float(v) for v in np.linspace(lo, hi, count)]
    except ValueError as e:
        raise ConfigError(f"bad axis spec {spec!r}") from e
    raise ConfigError(f"axis spec must be 'value' or 'lo:hi:count': {spec!r}")


def build_points(cfg: RunConfig) -> list[Couplings]:
    """Grid points in deterministic order (jr outermost, jb innermost)."""
    axes: dict[str, list[float]] = {}
    if cfg.grid:
        for item in cfg.grid.split(","):
            if "=" not in item:
                raise ConfigError(f"grid item {item!r} is not 'axis=spec'")
            name, spec = item.split("=", 1)
            key = _AXIS_NAMES.get(name.strip().lower())
            if key is None:
                raise ConfigError(f"unknown grid axis {name!r}")
            if key in axes:
                raise ConfigError(f"grid axis {key} given twice")
            axes[key] = parse_axis(spec.strip())

    constrained: dict[str, str] = {}
    if cfg.slice is not None:
        if cfg.slice == "jg=jb":
            constrained = {"jb": "jg"}
        elif cfg.slice == "diagonal":
            constrained = {"jg": "jr", "jb": "jr"}
        else:
            raise ConfigError(
                f"slice must be 'jg=jb' or 'diagonal', got {cfg.slice!r}"
            )
        for axis in constrained:
            if axis in axes:
                raise ConfigError(
                    f"axis {axis} is fixed by the slice; remove it from the grid"
                )

    if not axes:
        axes["jr"] = parse_axis("0:1:21")
        if cfg.slice is None:
            constrained = {"jg": "jr", "jb": "jr"}

    for axis in ("jr", "jg", "jb"):
        if axis not in axes and axis not in constrained:
            axes[axis] = [0.0]

    free = [a for a in ("jr", "jg", "jb") if a in axes]
    points = []
    for combo in product(*(axes[a] for a in free)):
        value = dict(zip(free, combo))
        for axis, source in constrained.items():
            value[axis] = value[source]
        try:
            points.append(Couplings(value["jr"], value["jg"], value["jb"]))
        except ValueError as e:
            raise ConfigError(str(e)) from e
    return points


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def merge_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = load_config_file(args.config) if args.config else {}

    def pick(name: str):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return DEFAULTS[name]

    threads = pick("threads")
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env is not None:
            try:
                threads = int(env)
            except ValueError as e:
                raise ConfigError(f"{THREADS_ENV} is not an integer: {env!r}") from e
        else:
            threads = 1
    threads = int(threads)
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")

    fmt = pick("format")
    if fmt is None:
        fmt = "csv" if args.mode == "sweep" else "json"
    if fmt not in ("csv", "json", "text"):
        raise ConfigError(f"format must be csv or json, got {fmt!r}")

    generators = pick("generators")
    if isinstance(generators, str):
        generators = [g.strip() for g in generators.split(",") if g.strip()]

    dense_limit = int(pick("dense_limit"))
    if dense_limit < 2:
        raise ConfigError(f"dense_limit must be >= 2, got {dense_limit}")

    return RunConfig(
        mode=args.mode,
        lattice=parse_lattice(pick("lattice")),
        couplings=parse_couplings(pick("couplings")),
        grid=pick("grid"),
        slice=pick("slice"),
        dense_limit=dense_limit,
        k=int(pick("k")),
        tol=float(pick("tol")),
        threads=threads,
        format=fmt,
        out=pick("out"),
        theory=str(pick("theory")).lower(),
        generators=list(generators),
    )


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row[c] is None else _fmt(row[c]) for c in columns])
    return buf.getvalue()


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return value


# --- verify ---------------------------------------------------------------


def run_verify(cfg: RunConfig) -> tuple[int, dict]:
    """Ordered invariant suite; any failing step flips the exit code to 1."""
    steps: list[dict] = []

    def record(name: str, status: str, detail: str) -> None:
        steps.append({"name": name, "status": status, "detail": detail})

    lat = build_hex_torus(cfg.lattice)

    report = validate_lattice(lat)
    if report.passed:
        record("lattice-validation", "pass", f"{len(report.checks)} checks")
    else:
        failing = [c.name for c in report.failures]
        record("lattice-validation", "fail", f"failing: {', '.join(failing)}")

    cc = color_code_h(lat)
    tc_red = toric_code_h(link_lattice(lat, "r"))
    holes = toric_code_with_holes_h(lat)
    pairs = 0
    clash = None
    for model in (cc, tc_red, holes):
        strings = [p for _, p in model.hamiltonian.terms]
        for i, a in enumerate(strings):
            for b in strings[i + 1:]:
                pairs += 1
                if not a.commutes_with(b):
                    clash = (a.to_text(), b.to_text())
    if clash is None:
        record("stabilizer-commutation", "pass", f"{pairs} pairs commute")
    else:
        record("stabilizer-commutation", "fail", f"anticommuting pair: {clash}")

    probe_points = [
        (0.0, 0.0, 0.0),
        (1.0, 1.0, 1.0),
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 1.0),
        (0.25, 0.5, 0.75),
        cfg.couplings.as_tuple(),
    ]
    bad = [
        pt
        for pt in probe_points
        if not ising_decoupling_matches(perturbed_h(lat, pt))
    ]
    if not bad:
        record(
            "ising-decoupling", "pass", f"exact term match at {len(probe_points)} points"
        )
    else:
        record("ising-decoupling", "fail", f"structural mismatch at {bad}")

    red_sources = [p for _, p in perturbed_h(lat, (1.0, 0.0, 0.0)).hamiltonian.terms]
    red_targets = [p for _, p in tc_red.hamiltonian.terms]
    if verify_group_image(red_sources, red_frame(lat), red_targets):
        record("red-frame-image", "pass", "stabilizer spans match")
    else:
        record("red-frame-image", "fail", "image span differs from target span")

    green_sources = [p for _, p in perturbed_h(lat, (0.0, 1.0, 1.0)).hamiltonian.terms]
    green_targets = [p for _, p in holes.hamiltonian.terms]
    if verify_group_image(green_sources, green_frame(lat), green_targets):
        record("green-frame-image", "pass", "stabilizer spans match")
    else:
        record("green-frame-image", "fail", "image span differs from target span")

    m = perturbed_h(lat, (0.25, 0.5, 0.75))
    try:
        eq = ising_sector_equivalence(m, tol=cfg.tol, dense_limit=cfg.dense_limit)
    except ValueError as e:
        if "exceeds dense limit" in str(e):
            record("spectral-equivalence", "skip", f"skipped: dimension ({e})")
        else:
            record("spectral-equivalence", "fail", str(e))
    else:
        if eq.passed:
            record(
                "spectral-equivalence",
                "pass",
                f"method={eq.method} max_deviation={eq.max_deviation:.3g}",
            )
        else:
            record("spectral-equivalence", "fail", json.dumps(eq.to_dict()))

    failed = [s for s in steps if s["status"] == "fail"]
    return (1 if failed else 0), {
        "mode": "verify",
        "lattice": f"{cfg.lattice[0]}x{cfg.lattice[1]}",
        "passed": not failed,
        "steps": steps,
    }


# --- spectrum -------------------------------------------------------------


def run_spectrum(cfg: RunConfig) -> dict:
    lat = build_hex_torus(cfg.lattice)
    h = perturbed_h(lat, cfg.couplings).hamiltonian
    dim = 1 << h.n
    partial = False
    if dim <= cfg.dense_limit:
        result = full_spectrum(h, dense_limit=cfg.dense_limit)
        method = "dense"
        values = result.eigenvalues
    else:
        masks = xtype_symmetry_masks(h)
        if 1 << (h.n - len(masks)) <= cfg.dense_limit:
            values = sector_eigenvalues(h, masks)
            method = "sector"
        else:
            result = low_lying(h, k=cfg.k)
            values = result.eigenvalues
            method = "lanczos"
            partial = True
    clusters = _cluster(np.asarray(values), CLUSTER_TOL_DEFAULT)
    return {
        "mode": "spectrum",
        "lattice": f"{cfg.lattice[0]}x{cfg.lattice[1]}",
        "couplings": list(cfg.couplings.as_tuple()),
        "n_qubits": h.n,
        "method": method,
        "partial": partial,
        "ground_energy": float(values[0]),
        "clusters": [[float(v), int(m)] for v, m in clusters],
    }


def spectrum_rows(report: dict) -> list[dict]:
    rows = []
    index = 0
    for value, mult in report["clusters"]:
        rows.append({"index": index, "eigenvalue": value, "multiplicity": mult})
        index += mult
    return rows


# --- sweep ----------------------------------------------------------------


def evaluate_point(lat, couplings: Couplings, dense_limit: int, cache) -> PhasePoint:
    try:
        return phase_point(lat, couplings, dense_limit=dense_limit, solver_cache=cache)
    except Exception as e:  # per-point failures recorded, sweep continues
        nan = float("nan")
        return PhasePoint(
            couplings=couplings.as_tuple(),
            s_r=nan,
            s_g=nan,
            s_b=nan,
            label=f"error: {e}",
            energy=None,
            gap=None,
        )


def run_sweep(cfg: RunConfig) -> dict:
    lat = build_hex_torus(cfg.lattice)
    points = build_points(cfg)
    started = time.perf_counter()
    cache: dict = {}
    solver_limit = min(cfg.dense_limit, 2 ** 10)
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(
                pool.map(
                    lambda c: evaluate_point(lat, c, solver_limit, cache), points
                )
            )
    else:
        results = [evaluate_point(lat, c, solver_limit, cache) for c in points]
    elapsed = time.perf_counter() - started
    return {
        "mode": "sweep",
        "config": cfg.echo(),
        "provenance": {
            "version": __version__,
            "seed": 7,
            "elapsed_s": round(elapsed, 3),
            "n_points": len(points),
        },
        "points": [p.to_row() for p in results],
    }


SWEEP_COLUMNS = ["j_r", "j_g", "j_b", "s_r", "s_g", "s_b", "energy", "gap", "label"]


# --- order-params ---------------------------------------------------------

CORNER_STATE_QUBIT_LIMIT = 20


def run_order_params(cfg: RunConfig) -> dict:
    lat = build_hex_torus(cfg.lattice)
    j = cfg.couplings
    if j.is_corner and lat.n_qubits <= CORNER_STATE_QUBIT_LIMIT:
        s_r, s_g, s_b = corner_string_values(lat, j)
        method = "corner-exact"
        model = perturbed_h(lat, j)
        energy = -float(len(model.hamiltonian.terms))
        gap = None
        label = classify_phase(s_r, s_g, s_b)
        point = PhasePoint(
            couplings=j.as_tuple(),
            s_r=s_r,
            s_g=s_g,
            s_b=s_b,
            label=label,
            energy=energy,
            gap=gap,
        )
    else:
        point = phase_point(lat, j, dense_limit=min(cfg.dense_limit, 2 ** 10))
        method = "dual-surrogate"
    return {
        "mode": "order-params",
        "lattice": f"{cfg.lattice[0]}x{cfg.lattice[1]}",
        "method": method,
        "point": point.to_row(),
    }


# --- condense -------------------------------------------------------------


def theory_for(name: str):
    if name in ("cc", "color-code", "colorcode"):
        return color_code_theory()
    if name in ("tc", "toric-code", "toriccode"):
        return toric_code_theory()
    raise ConfigError(f"theory must be 'cc' or 'tc', got {name!r}")


def run_condense(cfg: RunConfig) -> dict:
    theory = theory_for(cfg.theory)
    if not cfg.generators:
        raise ConfigError("condense needs at least one generator label")
    try:
        result = condense(theory, cfg.generators)
    except (KeyError, ValueError) as e:
        raise ConfigError(f"condensation rejected: {e}") from e
    quotient = result.quotient
    return {
        "mode": "condense",
        "theory": cfg.theory,
        **result.to_dict(),
        "quotient_anyons": [quotient.label(a) for a in quotient.anyons],
        "quotient_spins": [quotient.theta(a) for a in quotient.anyons],
        "quotient_fusion": quotient.fusion_table(),
        "quotient_braiding": quotient.braiding_table(),
    }


def condense_text(report: dict) -> str:
    lines = [f"theory: {report['theory']}"]
    lines.append(f"algebra: {', '.join(report['algebra'])}")
    confined = report["confined"]
    lines.append(f"confined ({len(confined)}): {', '.join(confined) or '-'}")
    lines.append("deconfined classes:")
    for cls in report["classes"]:
        lines.append(f"  {{{', '.join(cls)}}}")
    labels = report["quotient_anyons"]
    lines.append(f"quotient rank: {report['quotient']['rank']}")
    lines.append("quotient anyons (label: theta):")
    for label, spin in zip(labels, report["quotient_spins"]):
        lines.append(f"  {label}: {spin:+d}")
    width = max(len(s) for s in labels)
    header = " ".join(f"{s:>{width}}" for s in labels)
    lines.append("quotient fusion:")
    lines.append(f"  {'':>{width}} {header}")
    for row_label, row in zip(labels, report["quotient_fusion"]):
        cells = " ".join(f"{v:>{width}}" for v in row)
        lines.append(f"  {row_label:>{width}} {cells}")
    lines.append("quotient braiding:")
    lines.append(f"  {'':>{width}} {header}")
    for row_label, row in zip(labels, report["quotient_braiding"]):
        cells = " ".join(f"{v:>+{width}d}" for v in row)
        lines.append(f"  {row_label:>{width}} {cells}")
    return "\n".join(lines) + "\n"


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hexcc",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--schema",
        action="store_true",
        help="print the JSON config schema with defaults and exit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode")

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--lattice", help="torus dimensions L1xL2 (default 3x3)")
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--dense-limit", dest="dense_limit", type=int)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json", "text"])

    p_verify = sub.add_parser("verify", help="run the ordered invariant suite")
    add_common(p_verify)
    p_verify.add_argument("--couplings", help="probe triple jr,jg,jb")
    p_verify.add_argument("--k", type=int, help="Lanczos eigenvalue count")
    p_verify.add_argument("--tol", type=float, help="eigenvalue match tolerance")

    p_spec = sub.add_parser("spectrum", help="eigenvalue clusters of the model")
    add_common(p_spec)
    p_spec.add_argument("--couplings", help="coupling triple jr,jg,jb")
    p_spec.add_argument("--k", type=int, help="eigenvalue count when iterative")

    p_sweep = sub.add_parser("sweep", help="phase diagram over a coupling grid")
    add_common(p_sweep)
    p_sweep.add_argument("--grid", help="axes, e.g. 'jr=0:1:21,jg=0.3'")
    p_sweep.add_argument(
        "--slice", choices=["jg=jb", "diagonal"], help="axis constraint"
    )
    p_sweep.add_argument("--threads", type=int, help="worker threads")

    p_order = sub.add_parser(
        "order-params", help="string order parameters at one point"
    )
    add_common(p_order)
    p_order.add_argument("--couplings", help="coupling triple jr,jg,jb")

    p_cond = sub.add_parser("condense", help="anyon condensation report")
    add_common(p_cond)
    p_cond.add_argument("--theory", help="cc (color code) or tc (toric code)")
    p_cond.add_argument(
        "--generators", help="comma-separated anyon labels, e.g. r_x or r_x,g_x"
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        print(json.dumps(CONFIG_SCHEMA, indent=2, sort_keys=True))
        return 0
    if args.mode is None:
        parser.print_usage(sys.stderr)
        print("hexcc: error: a subcommand is required", file=sys.stderr)
        return 2

    try:
        cfg = merge_config(args)
        if cfg.mode == "verify":
            code, report = run_verify(cfg)
            if cfg.format == "json":
                emit(json.dumps(report, indent=2, sort_keys=True), cfg.out)
            else:
                lines = [
                    f"[{s['status'].upper():4}] {s['name']}: {s['detail']}"
                    for s in report["steps"]
                ]
                lines.append("result: " + ("PASS" if report["passed"] else "FAIL"))
                emit("\n".join(lines) + "\n", cfg.out)
            return code
        if cfg.mode == "spectrum":
            report = run_spectrum(cfg)
            if cfg.format == "csv":
                emit(
                    rows_to_csv(
                        spectrum_rows(report), ["index", "eigenvalue", "multiplicity"]
                    ),
                    cfg.out,
                )
            else:
                emit(json.dumps(report, indent=2, sort_keys=True), cfg.out)
            return 0
        if cfg.mode == "sweep":
            report = run_sweep(cfg)
            if cfg.format == "json":
                emit(json.dumps(report, indent=2, sort_keys=True), cfg.out)
            else:
                emit(rows_to_csv(report["points"], SWEEP_COLUMNS), cfg.out)
            return 0
        if cfg.mode == "order-params":
            report = run_order_params(cfg)
            if cfg.format == "csv":
                emit(rows_to_csv([report["point"]], SWEEP_COLUMNS), cfg.out)
            else:
                emit(json.dumps(report, indent=2, sort_keys=True), cfg.out)
            return 0
        if cfg.mode == "condense":
            report = run_condense(cfg)
            if cfg.format == "json":
                emit(json.dumps(report, indent=2, sort_keys=True), cfg.out)
            else:
                emit(condense_text(report), cfg.out)
            return 0
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    except ConfigError as e:
        print(f"hexcc: config error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"hexcc: config error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
