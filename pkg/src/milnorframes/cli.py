"""Command line front end: ``milnorframes <command> FILE [--json] [--tol T] [--exact]``.

Exit codes: 0 success, 1 negative mathematical decision, 2 error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import algebra as alg
from . import frames as fr
from . import linalg as la
from .algfile import AlgebraFile, format_algebra_file, parse_file
from .config import NumericConfig
from .errors import PreconditionError
from .geometry import (
    DEFAULT_TOL,
    MetricLieAlgebra,
    is_positive_definite,
    orthonormal_frame,
    ricci_orthonormal,
    ricci_signature,
    sectional_table,
)
from .milnor import (
    GeneralThreeDimensional,
    MilnorData,
    adjacent_product_check,
    block_lambdas,
    cycle_decomposition,
    decompose,
    normalize,
)
from .soliton import h4_blocks_balanced, milnor_soliton_criterion, nilsoliton_solve

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    exact: bool = True
    error: dict[str, str] | None = None
    exit_code: int = EXIT_OK

    @property
    def status(self) -> str:
        return {EXIT_OK: "ok", EXIT_NEGATIVE: "negative", EXIT_ERROR: "error"}[self.exit_code]

    def to_dict(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "input": self.inputs,
            "mode": "exact" if self.exact else "float",
            "status": self.status,
            "exit_code": self.exit_code,
            "results": self.results,
            "warnings": self.warnings,
        }
        if self.error is not None:
            out["error"] = self.error
        return canonical(out)


def _float(x: float) -> float:
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def canonical(value):
    """JSON-ready copy: rationals as ``p/q`` strings, floats rounded to 12 digits."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float) or hasattr(value, "dtype"):
        return _float(float(value))
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _is_exact(value) -> bool:
    if isinstance(value, float):
        return False
    if isinstance(value, (list, tuple)):
        return all(_is_exact(v) for v in value)
    if isinstance(value, dict):
        return all(_is_exact(v) for v in value.values())
    return True


# --- helpers ---------------------------------------------------------------


def _metric(af: AlgebraFile, report: Report) -> MetricLieAlgebra:
    if af.metric is None:
        report.warnings.append("no metric given; using the identity")
    return MetricLieAlgebra(af.algebra(), af.inner_product())


def _frame(m: MetricLieAlgebra, opts, report: Report):
    frame, fc = orthonormal_frame(m, opts.tol, exact=opts.exact)
    if not fc.exact:
        report.exact = False
    return frame, fc


def _signature(sig) -> dict[str, Any]:
    return {"negative": sig.negative, "zero": sig.zero, "positive": sig.positive, "symbol": sig.symbol()}


def _block_diagonal(af: AlgebraFile, blocks) -> bool:
    if af.metric is None:
        return True
    owner = {}
    for b, s in enumerate(blocks):
        for i in s.indices:
            owner[i] = b
    n = af.dim
    return all(
        af.metric[i - 1][j - 1] == 0
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if owner.get(i) != owner.get(j)
    )


def _milnor_violations(d: MilnorData) -> list[int]:
    if d.sigma is None:
        return adjacent_product_check(d) if d.n >= 4 else []
    out = []
    for cyc in cycle_decomposition(d.sigma).cycles:
        if len(cyc) >= 4:
            sub = MilnorData(tuple(d.lambdas[j - 1] for j in cyc))
            out.extend(cyc[i - 1] for i in adjacent_product_check(sub))
    return sorted(out)


# --- commands --------------------------------------------------------------


def cmd_parse(af: AlgebraFile, opts, report: Report) -> int:
    g = af.algebra()
    report.results = {
        "dim": af.dim,
        "source": af.source,
        "milnor": list(af.milnor) if af.milnor is not None else None,
        "sigma": list(af.sigma) if af.sigma is not None else None,
        "structure": [[i, j, k, v] for (i, j, k), v in g.structure.items()],
        "metric": af.metric,
        "positive_definite": None if af.metric is None else is_positive_definite(af.metric),
    }
    return EXIT_OK


def cmd_validate(af: AlgebraFile, opts, report: Report) -> int:
    g = af.algebra()
    defects = alg.jacobi_defect(g)
    res: dict[str, Any] = {
        "jacobi": not defects,
        "jacobi_defects": [[i, j, k, list(v)] for i, j, k, v in defects],
        "unimodular": alg.is_unimodular(g),
    }
    d = af.milnor_data()
    if d is not None:
        viol = _milnor_violations(d)
        res["milnor_condition"] = not viol
        res["milnor_violations"] = viol
    if not defects:
        series = alg.lower_central_series(g)
        res["central_series_dims"] = list(series.dims)
        res["nilpotency_step"] = series.step
    report.results = res
    return EXIT_NEGATIVE if defects else EXIT_OK


def cmd_decompose(af: AlgebraFile, opts, report: Report) -> int:
    d = af.milnor_data()
    if d is None:
        raise PreconditionError("decompose needs a milnor line")
    try:
        dec = decompose(d)
    except GeneralThreeDimensional as exc:
        report.warnings.append(str(exc))
        report.results = {"general_three_dimensional": True, "blocks": None}
        return EXIT_OK
    nd, t = normalize(d)
    step = alg.lower_central_series(af.algebra()).step
    report.results = {
        "blocks": [
            {"kind": s.kind, "indices": list(s.indices), "lambdas": list(block_lambdas(d, s))}
            for s in dec.summands
        ],
        "label": dec.label(),
        "nilpotency_step": step,
        "normalized_lambdas": list(nd.lambdas),
        "scaling": [t[i][i] for i in range(d.n)],
    }
    return EXIT_OK


def cmd_ricci(af: AlgebraFile, opts, report: Report) -> int:
    m = _metric(af, report)
    frame, fc = _frame(m, opts, report)
    r = ricci_orthonormal(fc, tol=opts.tol)
    res: dict[str, Any] = {"frame": frame, "ricci": r}
    if fc.exact:
        res["characteristic_polynomial"] = la.charpoly(r)
    res["signature"] = _signature(ricci_signature(r, opts.tol))
    report.results = res
    return EXIT_OK


def cmd_sectional(af: AlgebraFile, opts, report: Report) -> int:
    m = _metric(af, report)
    frame, fc = _frame(m, opts, report)
    report.results = {"frame": frame, "sectional": sectional_table(fc)}
    return EXIT_OK


def cmd_soliton(af: AlgebraFile, opts, report: Report) -> int:
    m = _metric(af, report)
    if not alg.lower_central_series(m.algebra).nilpotent:
        raise PreconditionError("nilsoliton test needs a nilpotent algebra")
    frame, fc = _frame(m, opts, report)
    r = ricci_orthonormal(fc, tol=opts.tol)
    cert = nilsoliton_solve(r, fc, opts.tol)
    res: dict[str, Any] = {
        "frame": frame,
        "ricci": r,
        "is_soliton": cert.is_soliton,
        "c": cert.c,
        "D": cert.D,
        "residual": cert.residual,
    }
    d = af.milnor_data()
    if d is not None:
        dec = decompose(d)
        if not _block_diagonal(af, dec.summands):
            report.warnings.append("metric is not block-diagonal for the Milnor splitting")
        if af.metric is None or af.metric == la.identity(af.dim):
            res["milnor_criterion"] = milnor_soliton_criterion(d)
            res["h4_blocks_balanced"] = h4_blocks_balanced(d)
        else:
            res["milnor_criterion"] = None
            report.warnings.append("Milnor basis is not orthonormal; constant criterion not applied")
    report.results = res
    if not _is_exact(cert.residual):
        report.exact = False
    return EXIT_OK if cert.is_soliton else EXIT_NEGATIVE


def _shape(af: AlgebraFile, g) -> str:
    """h3h3, h4, h3+abelian, abelian or other (n >= 4)."""
    d = af.milnor_data()
    if d is not None:
        h3, h4, ab = decompose(d).shape
        if h3 == h4 == 0:
            return "abelian"
        if (h3, h4, ab) == (2, 0, 0):
            return "h3h3"
        if (h3, h4, ab) == (0, 1, 0):
            return "h4"
        if (h3, h4) == (1, 0):
            return "h3+abelian"
        return "other"
    if alg.jacobi_defect(g):
        raise PreconditionError("structure constants violate the Jacobi identity")
    if g.is_abelian:
        return "abelian"
    if alg.lower_central_series(g).dims == (4, 2, 1, 0):
        return "h4"
    try:
        fr._h3h3_pairs(g)
        return "h3h3"
    except PreconditionError:
        pass
    derived, centre = alg.derived_subalgebra(g), alg.center(g)
    if len(derived) == 1 and len(centre) == g.dim - 2 and la.is_subspace(derived, centre):
        return "h3+abelian"
    return "other"


def _witness(w, report: Report, opts) -> dict[str, Any]:
    if not w.exact:
        if opts.exact:
            report.warnings.append("--exact: irrational witness frame omitted")
            return {}
        report.exact = False
        w = w.as_floats()
    return {"frame": w.frame, "lambdas": w.lambdas, "residual": w.residual}


def cmd_orthoframe(af: AlgebraFile, opts, report: Report) -> int:
    m = _metric(af, report)
    g = m.algebra
    res: dict[str, Any] = {}
    if g.dim == 3:
        res["shape"] = "dim3"
        unimodular = fr.l_operator(m).self_adjoint
        res["l_self_adjoint"] = unimodular
        if not unimodular:
            res["decision"] = "none"
        else:
            res["decision"] = "exists"
            res.update(_witness(fr.milnor_frame_3d(m, opts.tol), report, opts))
    else:
        shape = _shape(af, g)
        res["shape"] = shape
        if shape == "abelian":
            res["decision"] = "exists"
        elif shape == "h3+abelian":
            res["decision"] = "exists"
            res.update(_witness(fr.h3_abelian_orthonormal_milnor_frame(m, opts.tol), report, opts))
        elif shape == "h4":
            num = fr.h4_b_numerator(m)
            res["b_numerator"] = num
            res["b_is_zero"] = num == 0
            res["decision"] = "exists" if num == 0 else "none"
            if num == 0:
                res.update(_witness(fr.h4_orthonormal_milnor_frame(m, opts.tol), report, opts))
        elif shape == "h3h3":
            obs = fr.h3h3_obstruction(m)
            res["obstruction_value"] = obs.value
            res["obstructed"] = obs.obstructed
            res["decision"] = "none" if obs.obstructed else "inconclusive"
        else:
            res["decision"] = "inconclusive"
            report.warnings.append("no existence test for this splitting")
    report.results = res
    return EXIT_NEGATIVE if res["decision"] == "none" else EXIT_OK


def cmd_counterexample(opts, report: Report) -> int:
    eps = la.parse_rational(opts.epsilon)
    metric = fr.counterexample_metric(opts.kind, eps).gram
    milnor = (0, 0, 1, 0, 0, 1) if opts.kind == "h3h3" else (0, 0, 1, 1)
    text = format_algebra_file(milnor, metric, [f"{opts.kind} counterexample, epsilon {eps}"])
    report.inputs = {"kind": opts.kind, "epsilon": eps}
    report.results = {"metric": metric, "file": text}
    return EXIT_OK


COMMANDS: dict[str, Callable] = {
    "parse": cmd_parse,
    "validate": cmd_validate,
    "decompose": cmd_decompose,
    "ricci": cmd_ricci,
    "sectional": cmd_sectional,
    "soliton": cmd_soliton,
    "orthoframe": cmd_orthoframe,
}


# --- output ----------------------------------------------------------------


def _text_value(v) -> str:
    if isinstance(v, (list, dict)) and any(isinstance(x, dict) for x in (v if isinstance(v, list) else [v])):
        items = v if isinstance(v, list) else [v]
        return "\n" + "\n".join("  " + json.dumps(x) for x in items)
    if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
        return "\n" + "\n".join("  " + " ".join(map(str, r)) for r in v)
    if isinstance(v, list):
        return " ".join(map(str, v))
    return str(v)


def render_text(report: Report) -> str:
    data = report.to_dict()
    if report.command == "counterexample" and report.exit_code == EXIT_OK:
        return report.results["file"]
    out = [f"{report.command}: {data['status']} ({data['mode']})"]
    for key, value in data["results"].items():
        out.append(f"{key}: {_text_value(value)}")
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON report on stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float tolerance (default 1e-9)")
    common.add_argument("--exact", action="store_true", help="fail instead of falling back to floats")

    p = argparse.ArgumentParser(prog="milnorframes", description="Milnor frames on metric Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "parse": "parse a file and echo the structure",
        "validate": "Jacobi identity, unimodularity, Milnor condition",
        "decompose": "h3 / h4 / abelian splitting of Milnor data",
        "ricci": "Ricci matrix and its signature",
        "sectional": "sectional curvature table",
        "soliton": "Ricci nilsoliton certificate",
        "orthoframe": "does an orthonormal Milnor frame exist?",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("file")
    ce = sub.add_parser("counterexample", parents=[common], help="metric with no orthonormal Milnor frame")
    ce.add_argument("--kind", choices=["h4", "h3h3"], required=True)
    ce.add_argument("--epsilon", required=True, help="positive rational p/q")
    return p


def run(argv: list[str] | None = None) -> tuple[Report, argparse.Namespace]:
    opts = build_parser().parse_args(argv)
    report = Report(opts.command)
    try:
        if opts.command == "counterexample":
            report.exit_code = cmd_counterexample(opts, report)
        else:
            cfg = NumericConfig(opts.tol, opts.exact)
            af = parse_file(opts.file)
            report.inputs = {"file": os.path.basename(opts.file), "dim": af.dim, "source": af.source}
            report.warnings.extend(af.warnings)
            report.exit_code = COMMANDS[opts.command](af, cfg, report)
    except (ValueError, ArithmeticError, OSError) as exc:  # ParseError, PreconditionError included
        report.results = {}
        report.error = {"type": type(exc).__name__, "message": str(exc)}
        report.exit_code = EXIT_ERROR
    return report, opts


def main(argv: list[str] | None = None) -> int:
    report, opts = run(argv)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if report.error is not None:
        print(f"error: {report.error['message']}", file=sys.stderr)
    if opts.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
    elif report.error is None:
        sys.stdout.write(render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
