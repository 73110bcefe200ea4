"""Command line interface: batch certification with structured reports.

Subcommands:

* ``analyze FILE``: full report for one matrix (JSON by default).
* ``batch DIR``: reports for every file in a directory.
* ``tetra-scan``: Monte Carlo fractions of physical / cone-preserving
  matrices among diagonal forms diag(1, d1, d2, d3) sampled uniformly from
  the cube [-1, 1]^3.  The physical region is the inscribed tetrahedron
  with one third of the cube's volume.
* ``vanzyl``: canonical-parameter analysis of the published van Zyl radar
  system.

Input files hold 16 whitespace- or comma-separated reals in row-major
order (lines starting with ``#`` ignored), or a JSON object with a
``"mueller"`` key holding a 4x4 array.  Reports are deterministic: the same
input, flags, and seed produce byte-identical output.  Numbers are printed
with 12 significant digits.

Exit codes: 0 success, 1 internal error, 2 parse/input failure.  With
``--verdict-exit``: 0 Mueller, 3 pre-Mueller only, 4 not pre-Mueller.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .canonical import (
    TYPE1_CONSTRAINT_FORMS,
    Family,
    classify,
    h_eigs_diagonal,
    type1_constraints,
    type1_margins,
)
from .choi import jones_ensemble, mueller_jones_test, physicality
from .conetest import certify_cone
from .core import DEFAULT_TOL, as_mueller_matrix
from .witness import expectation, extended_action, witness_certificate, witness_input

#: Published canonical parameters of the van Zyl radar Mueller matrix.
VAN_ZYL_D = (0.9735, 0.9112, 0.4640, -0.3838)

_EXIT_PARSE = 2
_EXIT_MUELLER = 0
_EXIT_PRE_MUELLER_ONLY = 3
_EXIT_NOT_PRE_MUELLER = 4


class ParseError(ValueError):
    """Raised when an input file cannot be read as a 4x4 real matrix."""


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse matrix file content (plain 16-number or JSON object format)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON input: {exc}") from exc
        if not isinstance(obj, dict) or "mueller" not in obj:
            raise ParseError('JSON input must be an object with a "mueller" key')
        try:
            return as_mueller_matrix(np.asarray(obj["mueller"], dtype=float))
        except (TypeError, ValueError) as exc:
            raise ParseError(f'bad "mueller" value: {exc}') from exc
    tokens: list[str] = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        tokens.extend(line.replace(",", " ").split())
    try:
        values = [float(tok) for tok in tokens]
    except ValueError as exc:
        raise ParseError(f"non-numeric token in input: {exc}") from exc
    if len(values) != 16:
        raise ParseError(f"expected 16 numbers, found {len(values)}")
    return np.array(values, dtype=float).reshape(4, 4)


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_matrix_text(text)


def _complex_obj(arr: np.ndarray):
    return {"real": arr.real.tolist(), "imag": arr.imag.tolist()}


def analyze_matrix(m, tol: float = DEFAULT_TOL) -> dict:
    """Run every verdict on one matrix and assemble the report document."""
    mat = as_mueller_matrix(m)
    cone = certify_cone(mat, tol)
    phys = physicality(mat, tol)
    jones = mueller_jones_test(mat, tol)
    canon = classify(mat, tol)
    witness_vec = witness_certificate(mat, tol)

    ensemble = []
    if phys.is_mueller:
        for weight, jmat in jones_ensemble(mat, tol).items:
            ensemble.append({"weight": weight, "jones": _complex_obj(jmat)})

    binding = None
    if canon.d is not None and canon.family is Family.TYPE_I:
        margins = type1_margins(canon.d)
        worst = int(np.argmin(margins))
        if margins[worst] < 0.0:
            binding = TYPE1_CONSTRAINT_FORMS[worst]

    witness_entry = {"present": False, "vector": None, "expectation": None}
    if witness_vec is not None:
        value = expectation(extended_action(mat, witness_input()), witness_vec, tol)
        witness_entry = {
            "present": True,
            "vector": _complex_obj(witness_vec),
            "expectation": value,
        }

    return {
        "input_echo": mat.reshape(16).tolist(),
        "pre_mueller": {
            "verdict": cone.is_pre_mueller,
            "intensity_margin": cone.intensity_margin,
            "lorentz_margin": cone.lorentz_margin,
            "worst_input": cone.worst_input.tolist(),
        },
        "physicality": {
            "eigenvalues": phys.eigenvalues.tolist(),
            "min_eigenvalue": phys.min_eigenvalue,
            "verdict": phys.is_mueller,
            "rank": phys.rank,
        },
        "mueller_jones": {
            "verdict": jones is not None,
            "jones": _complex_obj(jones) if jones is not None else None,
        },
        "ensemble": ensemble,
        "canonical": {
            "family": canon.family.value,
            "d": None if canon.d is None else canon.d.tolist(),
            "binding_constraint": binding,
        },
        "witness": witness_entry,
    }


def tetra_scan(samples: int, seed: int) -> dict:
    """Monte Carlo fractions over diag(1, d1, d2, d3), d uniform in the cube.

    Uses numpy's seeded default generator (PCG64), so fractions are
    reproducible bit for bit per seed.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    d = np.empty((samples, 4))
    d[:, 0] = 1.0
    d[:, 1:] = rng.uniform(-1.0, 1.0, size=(samples, 3))
    mueller = type1_constraints(d)
    in_cube = np.all(np.abs(d[:, 1:]) <= 1.0, axis=1)
    return {
        "samples": int(samples),
        "seed": int(seed),
        "fraction_mueller": float(np.mean(mueller)),
        "fraction_pre_mueller": float(np.mean(in_cube)),
    }


def vanzyl_case() -> dict:
    """Closed-form analysis of the published van Zyl canonical parameters.

    Only the diagonal-form spectrum can be computed from the parameters:
    eigenvalue spectra are not invariant under the double-coset factors, so
    the measured matrix's own spectrum is not recoverable from d alone.
    """
    d = np.array(VAN_ZYL_D)
    margins = type1_margins(d)
    worst = int(np.argmin(margins))
    eigs = h_eigs_diagonal(d)
    return {
        "d": d.tolist(),
        "physical": type1_constraints(d),
        "constraint_margins": margins.tolist(),
        "binding_constraint": TYPE1_CONSTRAINT_FORMS[worst],
        "violation": float(-margins[worst]),
        "diagonal_h_spectrum": eigs.tolist(),
        "negative_count": int(np.count_nonzero(eigs < 0.0)),
        "note": (
            "spectrum shown is for the diagonal canonical form only; the "
            "measured matrix's eigenvalues are not recoverable from d "
            "because spectra are not double-coset invariants"
        ),
    }


def _round12(obj):
    """Round every float to 12 significant digits, recursively."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        val = float(f"{obj:.12g}")
        return 0.0 if val == 0.0 else val
    if isinstance(obj, dict):
        return {key: _round12(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(val) for val in obj]
    return obj


def render_report(report: dict) -> str:
    return json.dumps(_round12(report), indent=2, sort_keys=True) + "\n"


def summarize_report(report: dict) -> str:
    """Short human-readable digest of an analyze report."""
    pre = report["pre_mueller"]
    phys = report["physicality"]
    if phys["verdict"]:
        tier = "Mueller (physical)"
    elif pre["verdict"]:
        tier = "pre-Mueller only (cone-preserving but unphysical)"
    else:
        tier = "not pre-Mueller"
    lines = [
        f"verdict: {tier}",
        f"cone margins: intensity {pre['intensity_margin']:.6g}, "
        f"lorentz {pre['lorentz_margin']:.6g}",
        f"hermitian spectrum: "
        + ", ".join(f"{x:.6g}" for x in phys["eigenvalues"])
        + f" (rank {phys['rank']})",
        f"canonical family: {report['canonical']['family']}",
    ]
    if report["canonical"]["d"] is not None:
        lines.append(
            "canonical d: " + ", ".join(f"{x:.6g}" for x in report["canonical"]["d"])
        )
    if report["canonical"]["binding_constraint"]:
        lines.append(f"violated constraint: {report['canonical']['binding_constraint']}")
    if report["mueller_jones"]["verdict"]:
        lines.append("single Jones system: yes")
    if report["ensemble"]:
        lines.append(f"ensemble size: {len(report['ensemble'])}")
    if report["witness"]["present"]:
        lines.append(
            f"witness expectation: {report['witness']['expectation']:.6g}"
        )
    return "\n".join(lines) + "\n"


def verdict_exit_code(report: dict) -> int:
    if report["physicality"]["verdict"]:
        return _EXIT_MUELLER
    if report["pre_mueller"]["verdict"]:
        return _EXIT_PRE_MUELLER_ONLY
    return _EXIT_NOT_PRE_MUELLER


def _emit(report: dict, fmt: str, out) -> None:
    out.write(render_report(report) if fmt == "report" else summarize_report(report))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol", type=float, default=DEFAULT_TOL, help="relative verdict tolerance"
    )
    common.add_argument(
        "--format",
        choices=("report", "summary"),
        default="report",
        help="structured JSON report or human-readable summary",
    )
    parser = argparse.ArgumentParser(
        prog="muellercert",
        description="Certify and decompose 4x4 polarization transfer matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze", parents=[common], help="analyze one matrix file"
    )
    p_analyze.add_argument("file")
    p_analyze.add_argument(
        "--verdict-exit",
        action="store_true",
        help="exit 0 = Mueller, 3 = pre-Mueller only, 4 = not pre-Mueller",
    )

    p_batch = sub.add_parser(
        "batch", parents=[common], help="analyze every file in a directory"
    )
    p_batch.add_argument("dir")
    p_batch.add_argument(
        "--verdict-exit",
        action="store_true",
        help="exit with the worst verdict tier across files",
    )

    p_scan = sub.add_parser(
        "tetra-scan",
        parents=[common],
        help="Monte Carlo volume fractions for diagonal forms in the unit cube",
    )
    p_scan.add_argument("--samples", type=int, default=100_000)
    p_scan.add_argument("--seed", type=int, default=0)

    sub.add_parser(
        "vanzyl", parents=[common], help="analyze the van Zyl canonical parameters"
    )
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)

    if args.command == "analyze":
        try:
            mat = load_matrix(args.file)
        except ParseError as exc:
            err.write(f"error: {exc}\n")
            return _EXIT_PARSE
        report = analyze_matrix(mat, args.tol)
        _emit(report, args.format, out)
        return verdict_exit_code(report) if args.verdict_exit else 0

    if args.command == "batch":
        directory = Path(args.dir)
        if not directory.is_dir():
            err.write(f"error: not a directory: {directory}\n")
            return _EXIT_PARSE
        results: dict[str, dict] = {}
        failed = False
        worst = 0
        for path in sorted(p for p in directory.iterdir() if p.is_file()):
            try:
                report = analyze_matrix(load_matrix(path), args.tol)
            except ParseError as exc:
                results[path.name] = {"error": str(exc)}
                failed = True
                continue
            results[path.name] = report
            worst = max(worst, verdict_exit_code(report))
        if args.format == "report":
            out.write(json.dumps(_round12(results), indent=2, sort_keys=True) + "\n")
        else:
            for name, report in results.items():
                out.write(f"== {name}\n")
                if "error" in report:
                    out.write(f"error: {report['error']}\n")
                else:
                    out.write(summarize_report(report))
        if failed:
            return _EXIT_PARSE
        return worst if args.verdict_exit else 0

    if args.command == "tetra-scan":
        try:
            result = tetra_scan(args.samples, args.seed)
        except ValueError as exc:
            err.write(f"error: {exc}\n")
            return _EXIT_PARSE
        if args.format == "report":
            out.write(render_report(result))
        else:
            out.write(
                f"samples {result['samples']} seed {result['seed']}: "
                f"mueller fraction {result['fraction_mueller']:.6g}, "
                f"pre-mueller fraction {result['fraction_pre_mueller']:.6g}\n"
            )
        return 0

    result = vanzyl_case()
    if args.format == "report":
        out.write(render_report(result))
    else:
        out.write(
            "van Zyl canonical parameters: "
            + ", ".join(f"{x:.6g}" for x in result["d"])
            + "\n"
            + f"physical: {result['physical']}\n"
            + f"violated constraint: {result['binding_constraint']} "
            + f"(by {result['violation']:.6g})\n"
            + "diagonal-form spectrum: "
            + ", ".join(f"{x:.6g}" for x in result["diagonal_h_spectrum"])
            + "\n"
            + f"note: {result['note']}\n"
        )
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
