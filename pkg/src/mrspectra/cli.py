"""Command-line front end: ``mrspectra {table,energy,wavefunction,oracle,calibrate}``.

Exit codes: 0 success, 1 invalid input, 2 no convergence, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .closedform import QuantumNumbers, energy_manning_rosen
from .errors import (BracketError, ConfigError, ConvergenceError, MRSpectraError, ResourceError,
                     SearchError)
from .potentials import CentrifugalScheme, PotentialParams
from .tables import (UNIT_MODES, OutputRow, OutputTable, RunConfig, build_table, calibrate,
                     constants_for, load_registry, render)

EXIT_OK, EXIT_INVALID, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3
FORMATS = ("csv", "markdown", "json")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; that code is reserved for convergence failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--units", choices=UNIT_MODES, default=d(None),
                        help="atomic (hbar = mu = 1), physical or paper-calibrated eV")
    parser.add_argument("--format", choices=FORMATS, default=d("csv"), dest="fmt")
    parser.add_argument("--out", default=d(None), help="output path (default stdout)")
    parser.add_argument("--tol", type=float, default=d(None),
                        help="solver tolerance (AIM stability or shooting bracket width)")
    parser.add_argument("--registry", default=d(None), help="molecule registry file")


def _state_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--state", required=True, help="spectroscopic label such as 2p or 4d")
    parser.add_argument("--inv-b", type=float, required=True, help="screening 1/b")
    parser.add_argument("--alpha", type=float, default=0.75)
    parser.add_argument("--a-over-b", type=float, default=2.0, help="A = (a_over_b) * b")
    parser.add_argument("--molecule", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mrspectra", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", help="regenerate one of the six reference tables")
    _global_options(p, suppress=True)
    p.add_argument("--table", type=int, required=True, choices=range(1, 7))
    p.add_argument("--molecule", default=None, help="required for tables 3-6")
    p.add_argument("--schemes", nargs="+", default=["approx1", "approx2", "approx3"],
                   help="any of approx1 approx2 approx3 exact")

    p = sub.add_parser("energy", help="one bound-state energy")
    _global_options(p, suppress=True)
    _state_options(p)
    p.add_argument("--scheme", default="approx1")
    p.add_argument("--method", choices=("closed", "aim", "oracle"), default="closed")

    p = sub.add_parser("wavefunction", help="normalized radial function on a set of radii")
    _global_options(p, suppress=True)
    _state_options(p)
    p.add_argument("--scheme", default="approx1")
    p.add_argument("--r", type=float, nargs="+", default=None,
                   help="radii (default: 11 points spanning the state)")

    p = sub.add_parser("oracle", help="Numerov shooting eigenvalue")
    _global_options(p, suppress=True)
    _state_options(p)
    p.add_argument("--scheme", default="exact")
    p.add_argument("--points", type=int, default=8000)

    p = sub.add_parser("calibrate", help="fit the amu -> eV constant from the reference tables")
    _global_options(p, suppress=True)
    p.add_argument("--molecule", default="CH")
    return parser


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _setup(args):
    registry = load_registry(args.registry)
    molecule = None
    if args.molecule is not None:
        if args.molecule not in registry:
            raise ConfigError(f"unknown molecule {args.molecule!r}; known: {sorted(registry)}")
        molecule = registry[args.molecule]
    units = args.units or ("atomic" if molecule is None else "paper-calibrated")
    consts = constants_for(units, molecule)
    params = PotentialParams.from_screening(args.inv_b, args.alpha, args.a_over_b)
    return QuantumNumbers.from_label(args.state), params, consts


def _cmd_table(args) -> str:
    cfg = RunConfig.for_table(args.table, args.molecule, args.units, tuple(args.schemes), args.fmt)
    registry = load_registry(args.registry) if args.registry else None
    return render(build_table(cfg, registry), args.fmt)


def _single(qn, inv_b, scheme, value, units) -> OutputTable:
    return OutputTable([OutputRow(qn.label, inv_b, scheme.value, float(value))], units=units)


def _cmd_energy(args) -> str:
    qn, params, consts = _setup(args)
    scheme = CentrifugalScheme.parse(args.scheme)
    if args.method == "closed":
        value = energy_manning_rosen(qn, params, scheme, consts).value
    elif args.method == "aim":
        from .aim import aim_energy
        value = aim_energy(qn.n, params, qn.ell, scheme, consts, tol=args.tol).energy
    else:
        from .oracle import manning_rosen_level
        value = manning_rosen_level(qn, params, scheme, consts, tol=args.tol).energy
    return render(_single(qn, args.inv_b, scheme, value, consts.units), args.fmt)


def _cmd_oracle(args) -> str:
    from .oracle import manning_rosen_level
    qn, params, consts = _setup(args)
    scheme = CentrifugalScheme.parse(args.scheme)
    res = manning_rosen_level(qn, params, scheme, consts, count=args.points, tol=args.tol)
    return render(_single(qn, args.inv_b, scheme, res.energy, consts.units), args.fmt)


def _cmd_wavefunction(args) -> str:
    from .wavefn import normalize, radial_wavefunction
    qn, params, consts = _setup(args)
    wf = normalize(radial_wavefunction(qn, params, args.scheme, consts))
    r = np.asarray(args.r if args.r else np.linspace(0.0, 1.0, 12)[1:] * 4.0 * params.b * (qn.n + qn.ell + 1))
    values = wf(r)
    if args.fmt == "json":
        return json.dumps([{"r": float(a), "R": float(v)} for a, v in zip(r, values)], indent=1) + "\n"
    if args.fmt == "markdown":
        lines = ["| r | R(r) |", "|---|---|"] + [f"| {a:.6g} | {v:.12e} |" for a, v in zip(r, values)]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("r", "R"))
    for a, v in zip(r, values):
        w.writerow((f"{a:.9g}", f"{v:.12e}"))
    return buf.getvalue()


def _cmd_calibrate(args) -> str:
    registry = load_registry(args.registry) if args.registry else None
    report = calibrate(registry=registry, molecule=args.molecule)
    if args.fmt == "json":
        return json.dumps({"k_fit": report.k_fit, "k_paper_calibrated": report.k_shipped,
                           "k_physical": report.k_physical, "ratio": report.ratio,
                           "cells": report.cells}, indent=1) + "\n"
    return "\n".join(report.lines()) + "\n"


COMMANDS = {"table": _cmd_table, "energy": _cmd_energy, "wavefunction": _cmd_wavefunction,
            "oracle": _cmd_oracle, "calibrate": _cmd_calibrate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
        _write(text, args.out)
    except (ConvergenceError, SearchError, BracketError, ResourceError) as exc:
        print(f"mrspectra: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (MRSpectraError, ValueError) as exc:
        print(f"mrspectra: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"mrspectra: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
