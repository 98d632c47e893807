"""Command-line front end: transform, verify, spectrum and classify runs.

Exit codes: 0 success, 1 verification or numeric failure, 2 invalid or
inadmissible input.  Exact rationals serialise as {"num": str, "den": str}
so no precision is lost in JSON; CSV output uses a fixed column order and
17-significant-digit formatting.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

from .oscillator import (
    OscillatorModel,
    golden_cross_check,
    partner_eigenfunction_closed_form,
)
from .polynomial import Poly, RatFun
from .spectral import (
    Grid,
    PoleOnGrid,
    quadrature_simpson,
    sample,
    verify_spectrum,
)
from .susy import anticommutator_check, classify
from .transform import (
    InadmissibleSelection,
    TransformResult,
    build_transform,
    crum_krein_apply,
    factorization_identity_check,
    kernel_functions,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


# -- exact JSON encoding ----------------------------------------------------

def fraction_to_json(f: Fraction) -> dict:
    return {"num": str(f.numerator), "den": str(f.denominator)}


def fraction_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def poly_to_json(p: Poly) -> list:
    return [fraction_to_json(c) for c in p.coeffs]


def poly_from_json(obj: list) -> Poly:
    return Poly(fraction_from_json(c) for c in obj)


def ratfun_to_json(r: RatFun) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfun_from_json(obj: dict) -> RatFun:
    return RatFun(poly_from_json(obj["num"]), poly_from_json(obj["den"]))


def transform_to_json(tr: TransformResult) -> dict:
    return {
        "model": "oscillator",
        "levels": list(tr.selection.levels),
        "alphas": [fraction_to_json(a) for a in tr.selection.alphas],
        "order": tr.order,
        "wronskian_poly": poly_to_json(tr.wronskian.r.num),
        "wronskian_den": poly_to_json(tr.wronskian.r.den),
        "wronskian_weight": fraction_to_json(tr.wronskian.s),
        "potential_shift": ratfun_to_json(tr.shift),
        "base_potential": ratfun_to_json(tr.base_potential),
        "partner_potential": ratfun_to_json(tr.partner_potential),
        "operator_coeffs": [ratfun_to_json(c) for c in tr.operator.coeffs],
    }


# -- configuration -----------------------------------------------------------

@dataclass
class RunConfig:
    levels: tuple[int, ...]
    n_max: int = 8
    x_min: float = -12.0
    x_max: float = 12.0
    n_points: int = 2401
    fmt: str = "json"
    out: str | None = None
    parallel: bool = False
    corrupt_vn: Fraction | None = None

    def grid(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.n_points)


def _parse_levels(raw) -> tuple[int, ...]:
    if isinstance(raw, (list, tuple)):
        values = [int(v) for v in raw]
    else:
        values = [int(part) for part in str(raw).split(",") if part.strip() != ""]
    if not values:
        raise ValueError("at least one level is required")
    if any(v < 0 for v in values):
        raise ValueError("levels must be nonnegative")
    ordered = tuple(sorted(set(values)))
    if len(ordered) != len(values):
        raise ValueError("levels must be distinct")
    return ordered


def _merge_config(args: argparse.Namespace) -> RunConfig:
    """File config first, flags win on conflict."""
    file_cfg: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key, default)

    levels_raw = pick(args.levels, "levels", None)
    if levels_raw is None:
        raise ValueError("no levels given (use --levels or a config file)")
    corrupt = pick(getattr(args, "corrupt_vn", None), "corrupt_vn", None)
    return RunConfig(
        levels=_parse_levels(levels_raw),
        n_max=int(pick(args.nmax, "nmax", 8)),
        x_min=float(pick(args.xmin, "xmin", -12.0)),
        x_max=float(pick(args.xmax, "xmax", 12.0)),
        n_points=int(pick(args.points, "points", 2401)),
        fmt=str(pick(args.format, "format", "json")),
        out=pick(args.out, "out", None),
        parallel=bool(pick(args.parallel or None, "parallel", False)),
        corrupt_vn=Fraction(str(corrupt)) if corrupt is not None else None,
    )


def _fmt17(value: float) -> str:
    return f"{value:.17g}"


def _out_stem(path: str) -> str:
    for suffix in (".json", ".csv"):
        if path.endswith(suffix):
            return path[: -len(suffix)]
    return path


# -- transform ----------------------------------------------------------------

def _psi_levels(cfg: RunConfig) -> list[int]:
    return [n for n in range(cfg.n_max + 1) if n not in cfg.levels]


def _transform_csv_lines(model: OscillatorModel, tr: TransformResult, cfg: RunConfig) -> list[str]:
    grid = cfg.grid()
    xs = grid.points()
    columns = [xs, sample(tr.base_potential, grid), sample(tr.partner_potential, grid)]
    names = ["x", "V0", "VN"]
    sqrt_2pi = math.sqrt(2.0 * math.pi)
    for n in _psi_levels(cfg):
        image = crum_krein_apply(tr, model.eigenfunction(n))
        norm_sq = math.factorial(n) * sqrt_2pi
        for alpha in tr.selection.alphas:
            norm_sq *= float(model.energy(n) - alpha)
        columns.append(sample(image, grid) / math.sqrt(norm_sq))
        names.append(f"psi_{n}")
    lines = [",".join(names)]
    for i in range(len(xs)):
        lines.append(",".join(_fmt17(col[i]) for col in columns))
    return lines


def cmd_transform(cfg: RunConfig) -> int:
    model = OscillatorModel()
    tr = build_transform(model, cfg.levels)
    doc = transform_to_json(tr)
    json_text = json.dumps(doc, indent=2)
    csv_text = "\n".join(_transform_csv_lines(model, tr, cfg)) + "\n"
    if cfg.out:
        stem = _out_stem(cfg.out)
        with open(stem + ".json", "w", encoding="utf-8") as fh:
            fh.write(json_text + "\n")
        with open(stem + ".csv", "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    print(csv_text if cfg.fmt == "csv" else json_text)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _verification_checks(model: OscillatorModel, tr: TransformResult, cfg: RunConfig) -> list[tuple[str, Callable[[], CheckResult]]]:
    levels = tr.selection.levels
    alphas = tr.selection.alphas
    n_max = cfg.n_max
    survivors = [n for n in range(n_max + 1) if n not in levels]

    from functools import lru_cache

    @lru_cache(maxsize=1)
    def factorization_report():
        return factorization_identity_check(tr)

    def check_factorization_base() -> CheckResult:
        report = factorization_report()
        ok = report.base_ok
        return CheckResult(
            "L_dagger_L_factorization",
            ok,
            "exact-zero residual" if ok else f"residual {report.residual_base!r}",
        )

    def check_factorization_partner() -> CheckResult:
        report = factorization_report()
        ok = report.partner_ok
        return CheckResult(
            "L_L_dagger_factorization",
            ok,
            "exact-zero residual" if ok else f"residual {report.residual_partner!r}",
        )

    def check_kernel() -> CheckResult:
        bad = [k for k, u in zip(levels, tr.functions) if not crum_krein_apply(tr, u).is_zero]
        return CheckResult(
            "kernel_annihilation",
            not bad,
            "L u_i = 0 for all selected levels" if not bad else f"nonzero at {bad}",
        )

    def check_adjoint_kernel() -> CheckResult:
        adj = tr.operator.adjoint()
        h_partner = tr.hamiltonian_partner()
        bad = []
        for k, alpha, v in zip(levels, alphas, kernel_functions(tr)):
            if not adj(v).is_zero:
                bad.append(("adjoint", k))
            if not (h_partner(v) - v * alpha).is_zero:
                bad.append(("eigen", k))
        return CheckResult(
            "adjoint_kernel",
            not bad,
            "L+ v_k = 0 and (hN - alpha_k) v_k = 0" if not bad else f"failures: {bad}",
        )

    def check_eigen_residuals() -> CheckResult:
        h_partner = tr.hamiltonian_partner()
        bad = []
        for n in survivors:
            image = crum_krein_apply(tr, model.eigenfunction(n))
            if image.is_zero or not (h_partner(image) - image * model.energy(n)).is_zero:
                bad.append(n)
        return CheckResult(
            "eigen_residuals",
            not bad,
            "(hN - E_n) L phi_n = 0 for all surviving levels" if not bad else f"failed levels {bad}",
        )

    def check_golden() -> CheckResult:
        if len(levels) != 2 or levels[1] != levels[0] + 1:
            return CheckResult("golden_closed_forms", True, "skipped (not a juxtaposed pair)")
        report = golden_cross_check(tr, n_max)
        return CheckResult(
            "golden_closed_forms",
            report.ok,
            "partner potential and wave functions match the closed forms"
            if report.ok
            else "closed-form mismatch",
        )

    def check_normalization() -> CheckResult:
        if len(levels) != 2 or levels[1] != levels[0] + 1:
            return CheckResult("closed_form_normalization", True, "skipped (not a juxtaposed pair)")
        grid = cfg.grid()
        k = levels[0]
        worst = 0.0
        for n in survivors:
            bracket, norm = partner_eigenfunction_closed_form(k, n)
            values = sample(bracket, grid) / math.sqrt(norm.to_float())
            worst = max(worst, abs(quadrature_simpson(values**2, grid) - 1.0))
        ok = worst <= 1e-4
        return CheckResult("closed_form_normalization", ok, f"max |1 - norm| {worst:.3e}")

    def check_norm_transport() -> CheckResult:
        grid = cfg.grid()
        sqrt_2pi = math.sqrt(2.0 * math.pi)
        worst = 0.0
        for n in survivors:
            expected = 1.0
            for alpha in alphas:
                expected *= float(model.energy(n) - alpha)
            image = crum_krein_apply(tr, model.eigenfunction(n))
            num = quadrature_simpson(sample(image, grid) ** 2, grid)
            got = num / (math.factorial(n) * sqrt_2pi)
            worst = max(worst, abs(got - expected) / abs(expected))
        ok = worst <= 1e-6
        return CheckResult("norm_transport", ok, f"max relative error {worst:.3e}")

    def check_anticommutator() -> CheckResult:
        report = anticommutator_check(model, tr, range(n_max + 1))
        return CheckResult(
            "superalgebra_anticommutator",
            report.ok,
            "factor prod(E - alpha_i) on every eigen-doublet" if report.ok else "mismatch",
        )

    return [
        ("L_dagger_L_factorization", check_factorization_base),
        ("L_L_dagger_factorization", check_factorization_partner),
        ("kernel_annihilation", check_kernel),
        ("adjoint_kernel", check_adjoint_kernel),
        ("eigen_residuals", check_eigen_residuals),
        ("golden_closed_forms", check_golden),
        ("superalgebra_anticommutator", check_anticommutator),
        ("closed_form_normalization", check_normalization),
        ("norm_transport", check_norm_transport),
    ]


def cmd_verify(cfg: RunConfig) -> int:
    model = OscillatorModel()
    tr = build_transform(model, cfg.levels)
    if cfg.corrupt_vn is not None:
        # Negative-control hook: an exact perturbation of the partner
        # potential must trip the residual checks.
        tr = replace(tr, partner_potential=tr.partner_potential + cfg.corrupt_vn)

    checks = _verification_checks(model, tr, cfg)
    if cfg.parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda item: item[1](), checks))
    else:
        results = [run() for _, run in checks]

    report = {
        "levels": list(cfg.levels),
        "checks": [
            {"name": r.name, "status": "pass" if r.passed else "fail", "detail": r.detail}
            for r in results
        ],
    }
    text = json.dumps(report, indent=2)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    failures = [r for r in results if not r.passed]
    if failures:
        print(f"verification failed: {failures[0].name}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


# -- spectrum --------------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    model = OscillatorModel()
    tr = build_transform(model, cfg.levels)
    report = verify_spectrum(tr, cfg.n_max, cfg.grid())

    header = f"{'level':>5} {'predicted':>10} {'h0':>22} {'h0_err':>12} {'hN':>22} {'hN_err':>12}"
    lines = [header]
    for row in report.rows:
        hn = "deleted" if row.partner_deleted else _fmt17(row.partner_value)
        hn_err = "" if row.partner_deleted else f"{row.partner_error:.3e}"
        lines.append(
            f"{row.level:>5} {str(row.predicted):>10} {_fmt17(row.base_value):>22}"
            f" {row.base_error:>12.3e} {hn:>22} {hn_err:>12}"
        )
    print("\n".join(lines))

    if cfg.out:
        if cfg.fmt == "csv":
            csv_lines = ["level,predicted,h0,h0_err,hN,hN_err"]
            for row in report.rows:
                hn = "deleted" if row.partner_deleted else _fmt17(row.partner_value)
                hn_err = "" if row.partner_deleted else _fmt17(row.partner_error)
                csv_lines.append(
                    f"{row.level},{row.predicted},{_fmt17(row.base_value)},"
                    f"{_fmt17(row.base_error)},{hn},{hn_err}"
                )
            text = "\n".join(csv_lines) + "\n"
        else:
            text = json.dumps(
                {
                    "levels": list(cfg.levels),
                    "max_error": report.max_error,
                    "rows": [
                        {
                            "level": row.level,
                            "predicted": fraction_to_json(row.predicted),
                            "h0": row.base_value,
                            "h0_err": row.base_error,
                            "hN": "deleted" if row.partner_deleted else row.partner_value,
                            "hN_err": row.partner_error,
                        }
                        for row in report.rows
                    ],
                },
                indent=2,
            ) + "\n"
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


# -- classify --------------------------------------------------------------------

def cmd_classify(cfg: RunConfig) -> int:
    model = OscillatorModel()
    tr = build_transform(model, cfg.levels)
    result = classify(model, tr, cfg.n_max)
    doc = {
        "n0": sorted(result.n0),
        "vacuum_energy": fraction_to_json(result.vacuum_energy),
        "tags": {str(n): tag for n, tag in sorted(result.tags.items())},
        "below_vacuum": sorted(result.below_vacuum),
    }
    text = json.dumps(doc, indent=2)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darboux",
        description="Exact higher-order Darboux partner potentials of the harmonic "
        "oscillator, with verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("transform", "build the transformation and emit exact coefficients plus samples"),
        ("verify", "run the exact and numeric verification suites"),
        ("spectrum", "compare numeric spectra of the base and partner Hamiltonians"),
        ("classify", "emit the supersymmetric level classification"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--levels", help="comma-separated deleted levels, e.g. 1,2")
        p.add_argument("--nmax", type=int, help="highest level to inspect (default 8)")
        p.add_argument("--xmin", type=float, help="grid left end (default -12)")
        p.add_argument("--xmax", type=float, help="grid right end (default 12)")
        p.add_argument("--points", type=int, help="grid point count (default 2401)")
        p.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
        p.add_argument("--out", help="output path")
        p.add_argument("--parallel", action="store_true", help="run independent checks concurrently")
        p.add_argument("--config", help="JSON config file; flags win on conflict")
        if name == "verify":
            p.add_argument(
                "--corrupt-vn",
                dest="corrupt_vn",
                help="negative-control hook: exact rational added to the partner potential",
            )
    return parser


_COMMANDS = {
    "transform": cmd_transform,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
}


def main(argv: Sequence[str] | None = None) -> int:
    os.environ.get("DARBOUX_SEED")  # reserved; deterministic suites ignore it
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors; keep the contract
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    try:
        cfg = _merge_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return _COMMANDS[args.command](cfg)
    except InadmissibleSelection as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BAD_INPUT
    except PoleOnGrid as exc:
        print(f"grid failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
