"""Command-line front end.

Every command that builds a matrix also computes its eigenvalues and
embeds the verification report in the output. Exit codes: 0 success,
1 I/O or parse error, 2 a construction condition failed, 3 verification
failed.
"""
import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import json
import logging
import os
from pathlib import Path
import sys

import numpy as np

from . import jsonio
from .blockcomp import (
    PAIRINGS, CompositionParams, OddTail, compose_even, compose_odd, extract_even, extract_odd,
    realize_pair_suleimanova,
)
from .circulant import (
    VARIANTS, CirculantRow, GuoParams, circulant_from_spectrum, circulant_spectrum,
    guo_pair_construct, guo_perturb,
)
from .eig import eigenvalues, verification_tol, verify_matrix
from .errors import EigenConvergenceError, GateError
from .permutative import detect_permutative, realize_suleimanova
from .spectra import Spectrum, check_necessary, is_suleimanova

log = logging.getLogger(__name__)

EXIT_OK, EXIT_IO, EXIT_GATE, EXIT_VERIFY = 0, 1, 2, 3

# command -> (number of inputs, required params)
COMMANDS = {
    "check": (1, ()),
    "realize-suleimanova": (1, ()),
    "realize-pair": (2, ()),
    "compose-even": (2, ()),
    "compose-odd": (2, ()),
    "circulant": (1, ()),
    "guo": (1, ("t",)),
    "guo-pair": (2, ("t1", "t2")),
    "verify": (2, ()),
    "extract": (1, ()),
}


class UsageError(ValueError):
    """A job is malformed: wrong inputs, missing or invalid parameters."""


@dataclass
class JobSpec:
    command: str
    inputs: list
    params: dict = field(default_factory=dict)
    output: str = None
    format: str = "json"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        count, required = COMMANDS[self.command]
        if len(self.inputs) != count:
            raise UsageError(f"{self.command} takes {count} input(s), got {len(self.inputs)}")
        missing = [p for p in required if self.params.get(p) is None]
        if missing:
            raise UsageError(f"{self.command} requires --{', --'.join(missing)}")
        if self.format not in jsonio.FORMATS:
            raise UsageError(f"unknown format {self.format!r}")

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "command" not in obj:
            raise UsageError('a job needs a "command"')
        inputs = obj.get("inputs", [])
        if not isinstance(inputs, list):
            raise UsageError('"inputs" must be a list')
        # inputs may be given inline as JSON values rather than strings
        inputs = [i if isinstance(i, str) else json.dumps(i) for i in inputs]
        return cls(obj["command"], inputs, dict(obj.get("params", {})), obj.get("output"),
                   obj.get("format", "json"))


def _sign(value, name="sign"):
    if value in (None, "+", 1, "1", "+1"):
        return 1
    if value in ("-", -1, "-1"):
        return -1
    raise UsageError(f"{name} must be + or -, got {value!r}")


def _floats(value, name):
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return np.array([float(v) for v in value.split(",")])
        except ValueError as exc:
            raise UsageError(f"--{name} must be comma-separated numbers: {exc}") from None
    return np.asarray(value, dtype=float)


def _env_tol():
    raw = os.environ.get("NIEP_TOL")
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"NIEP_TOL must be a number, got {raw!r}") from None


def _tol(params):
    tol = params.get("tol")
    return float(tol) if tol is not None else _env_tol()


def _composition(params):
    gamma = params.get("gamma")
    return CompositionParams(1.0 if gamma is None else float(gamma), _sign(params.get("sign")))


def _spectrum(raw):
    return jsonio.spectrum_from_json(raw)


def _matrix(raw):
    return jsonio.matrix_from_json(raw)


def _verified(doc, M, expected, tol):
    report = verify_matrix(M, expected, tol if tol is not None else verification_tol(M))
    doc["matrix"] = M
    doc["verification"] = report
    return EXIT_OK if report.passed else EXIT_VERIFY


def _union_of_parts(S, C, factor=1.0):
    return eigenvalues(S).union(eigenvalues(C).scaled(factor))


def _cmd_check(raw, params, doc):
    sigma = _spectrum(raw[0])
    K = int(params.get("K") or 4)
    M = int(params.get("M") or 3)
    report = check_necessary(sigma, K, M, _tol(params))
    doc["necessary"] = report.to_json()
    doc["suleimanova"] = is_suleimanova(sigma, _tol(params))
    if not report.passed:
        failures = report.failures()
        detail = "; ".join(failures[1:]) or "necessary condition fails"
        raise GateError(failures[0], detail)
    return EXIT_OK


def _cmd_realize_suleimanova(raw, params, doc):
    sigma = _spectrum(raw[0])
    return _verified(doc, realize_suleimanova(sigma, _tol(params)), sigma, _tol(params))


def _cmd_realize_pair(raw, params, doc):
    sigma_s, sigma_c = _spectrum(raw[0]), _spectrum(raw[1])
    cp = _composition(params)
    pairing = params.get("pairing") or "search"
    if pairing not in PAIRINGS:
        raise UsageError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")
    M = realize_pair_suleimanova(sigma_s, sigma_c, cp, pairing, _tol(params))
    doc["permutative"] = detect_permutative(M) is not None
    return _verified(doc, M, sigma_s.union(sigma_c.scaled(cp.factor)), _tol(params))


def _cmd_compose_even(raw, params, doc):
    S, C = _matrix(raw[0]), _matrix(raw[1])
    cp = _composition(params)
    M = compose_even(S, C, cp)
    return _verified(doc, M, _union_of_parts(S, C, cp.factor), _tol(params))


def _cmd_compose_odd(raw, params, doc):
    S, C = _matrix(raw[0]), _matrix(raw[1])
    cp = _composition(params)
    phi1, phi2 = _floats(params.get("phi1"), "phi1"), _floats(params.get("phi2"), "phi2")
    if (phi1 is None) != (phi2 is None):
        raise UsageError("--phi1 and --phi2 must be given together")
    tail = OddTail(phi1, phi2) if phi1 is not None else None
    M = compose_odd(S, C, cp, tail)
    return _verified(doc, M, _union_of_parts(S, C, cp.factor), _tol(params))


def _cmd_circulant(raw, params, doc):
    obj = raw[0]
    if isinstance(obj, dict) and "row" in obj:
        row = jsonio.row_from_json(obj)
        sigma = circulant_spectrum(row)
    else:
        sigma = _spectrum(obj)
        row = circulant_from_spectrum(sigma)
        if row.is_real():
            row = CirculantRow(row.real())
    doc["row"] = row
    doc["spectrum"] = sigma
    M = row.matrix()
    return _verified(doc, M.real if row.max_imag() == 0 else M, sigma, _tol(params))


def _cmd_guo(raw, params, doc):
    sigma = _spectrum(raw[0])
    gp = GuoParams(float(params["t"]), float(params.get("theta") or 0.0), _sign(params.get("branch"), "branch"),
                   params.get("variant") or "general")
    base = circulant_from_spectrum(sigma)
    tol = 1e-12 * max(1.0, float(np.abs(base.row).max()))
    if not base.is_real() or base.real().min() < -tol:
        raise GateError("nonnegative circulant", "input is not the spectrum of a nonnegative real circulant")
    perturbed = guo_perturb(sigma, gp)
    row = circulant_from_spectrum(perturbed)
    if not row.is_real():
        raise GateError("real circulant", "perturbed spectrum is not conjugate-closed in DFT order")
    if row.real().min() < -tol:
        raise GateError("perturbed row nonnegative", f"min entry {row.real().min()}")
    row = CirculantRow(np.maximum(row.real(), 0.0))
    doc["row"] = row
    doc["spectrum"] = perturbed
    return _verified(doc, row.matrix().real, perturbed, _tol(params))


def _cmd_guo_pair(raw, params, doc):
    sigma1, sigma2 = _spectrum(raw[0]), _spectrum(raw[1])
    result = guo_pair_construct(sigma1, sigma2, float(params["t1"]), float(params["t2"]),
                                _sign(params.get("branch"), "branch"), _composition(params))
    doc["permutative"] = detect_permutative(result.matrix) is not None
    doc["spectrum_s"] = result.sigma_s
    doc["spectrum_c"] = result.sigma_c
    return _verified(doc, result.matrix, result.expected, _tol(params))


def _cmd_verify(raw, params, doc):
    return _verified(doc, _matrix(raw[0]), _spectrum(raw[1]), _tol(params))


def _cmd_extract(raw, params, doc):
    A = _matrix(raw[0])
    tol = _tol(params)
    pattern_tol = tol if tol is not None else 1e-12 * max(1.0, float(np.abs(A).max(initial=0.0)))
    S, C = (extract_odd if A.shape[0] % 2 else extract_even)(A, pattern_tol)
    doc["S"] = S
    doc["C"] = C
    return _verified(doc, A, _union_of_parts(S, C), tol)


HANDLERS = {
    "check": _cmd_check,
    "realize-suleimanova": _cmd_realize_suleimanova,
    "realize-pair": _cmd_realize_pair,
    "compose-even": _cmd_compose_even,
    "compose-odd": _cmd_compose_odd,
    "circulant": _cmd_circulant,
    "guo": _cmd_guo,
    "guo-pair": _cmd_guo_pair,
    "verify": _cmd_verify,
    "extract": _cmd_extract,
}


def run(job):
    """Execute ``job``; returns ``(exit_code, document)`` and never raises."""
    doc = {"command": job.command}
    try:
        job.validate()
        raw = [jsonio.load_json(i) for i in job.inputs]
        code = HANDLERS[job.command](raw, job.params, doc)
    except GateError as exc:
        code = EXIT_GATE
        doc["condition"] = exc.condition
        doc["error"] = str(exc)
    except EigenConvergenceError as exc:
        code = EXIT_VERIFY
        doc["error"] = str(exc)
    except (ValueError, OSError, TypeError, KeyError) as exc:
        code = EXIT_IO
        doc["error"] = f"{type(exc).__name__}: {exc}" if not isinstance(exc, ValueError) else str(exc)
    doc["exit_code"] = code
    return code, doc


def _plain(value):
    if isinstance(value, np.ndarray):
        return jsonio.matrix_to_json(value)
    if isinstance(value, CirculantRow):
        return jsonio.row_to_json(value)
    if isinstance(value, Spectrum):
        return jsonio.spectrum_to_json(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def document_json(doc):
    return {k: _plain(v) for k, v in doc.items()}


def render(doc, fmt):
    """Text for one job result in the requested format."""
    if fmt == "json":
        return json.dumps(document_json(doc)) + "\n"
    parts = []
    for key in ("matrix", "S", "C"):
        if key in doc:
            if key != "matrix":
                parts.append(f"# {key}\n")
            parts.append(jsonio.emit(doc[key], fmt))
    if "row" in doc:
        parts.append("# row: " + jsonio.emit(doc["row"].row[None, :], "csv"))
    if "necessary" in doc:
        parts.append(f"# necessary: {json.dumps(doc['necessary'])}\n")
    report = doc.get("verification")
    if report is not None:
        parts.append(f"# verification: passed={report.passed} max_distance={report.max_distance:.3e} "
                     f"tol={report.tol:.3e}\n")
    if "error" in doc:
        parts.append(f"# error: {doc['error']}\n")
    parts.append(f"# exit_code: {doc['exit_code']}\n")
    return "".join(parts)


def _write(text, path):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run_batch(jobs, workers=1):
    """Run jobs, concurrently if ``workers > 1``; results keep input order."""
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def _batch(args):
    try:
        spec = jsonio.load_json(args.jobs)
        if not isinstance(spec, list):
            raise UsageError("a job file must hold a list of jobs")
        jobs = [JobSpec.from_json(obj) for obj in spec]
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    results = run_batch(jobs, args.workers)
    lines = []
    worst = EXIT_OK
    for index, (job, (code, doc)) in enumerate(zip(jobs, results)):
        if job.output:
            try:
                _write(render(doc, job.format), job.output)
            except OSError as exc:
                code = EXIT_IO
                doc["error"] = str(exc)
                doc["exit_code"] = code
        lines.append(json.dumps({"index": index, **document_json(doc)}) + "\n")
        worst = max(worst, code)
    try:
        _write("".join(lines), args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return worst


def build_parser():
    parser = argparse.ArgumentParser(prog="niep", description="Nonnegative matrices with prescribed spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="verification tolerance (default 1e-9 * max(1, ||A||_F))")
    common.add_argument("--format", choices=jsonio.FORMATS, default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    comp = argparse.ArgumentParser(add_help=False)
    comp.add_argument("--gamma", type=float, default=1.0)
    comp.add_argument("--sign", choices=["+", "-"], default="+")

    helps = {
        "check": (("SPECTRUM",), "run the necessary conditions on a list"),
        "realize-suleimanova": (("SPECTRUM",), "realize a Suleimanova list by a permutative matrix"),
        "realize-pair": (("SPECTRUM_S", "SPECTRUM_C"), "realize two Suleimanova lists as one block matrix"),
        "compose-even": (("S", "C"), "interleave two n x n matrices into a 2n x 2n one"),
        "compose-odd": (("S", "C"), "compose an (n+1) x (n+1) and an n x n matrix"),
        "circulant": (("ROW_OR_SPECTRUM",), "circulant matrix from a first row or a DFT-ordered spectrum"),
        "guo": (("SPECTRUM",), "perturb a circulant spectrum and realize the result"),
        "guo-pair": (("SPECTRUM_1", "SPECTRUM_2"), "perturb two circulant spectra and compose them"),
        "verify": (("MATRIX", "SPECTRUM"), "check that a matrix has a given spectrum"),
        "extract": (("MATRIX",), "recover S and C from a block composition"),
    }
    parents = {"realize-pair": [common, comp], "compose-even": [common, comp],
               "compose-odd": [common, comp], "guo-pair": [common, comp]}
    for name, (metavars, text) in helps.items():
        p = sub.add_parser(name, parents=parents.get(name, [common]), help=text)
        for m in metavars:
            p.add_argument(m.lower(), metavar=m, help="inline JSON or path to a JSON file")
        p.set_defaults(input_names=[m.lower() for m in metavars])
    sub.choices["check"].add_argument("--K", type=int, default=4, help="highest power sum checked")
    sub.choices["check"].add_argument("--M", type=int, default=3, help="highest JLL exponent checked")
    sub.choices["realize-pair"].add_argument("--pairing", choices=PAIRINGS, default="search")
    sub.choices["compose-odd"].add_argument("--phi1", help="comma-separated split of the last row of S")
    sub.choices["compose-odd"].add_argument("--phi2", help="comma-separated split of the last row of S")
    guo = sub.choices["guo"]
    guo.add_argument("--t", type=float, required=True)
    guo.add_argument("--theta", type=float, default=0.0)
    guo.add_argument("--branch", choices=["+", "-"], default="+")
    guo.add_argument("--variant", choices=VARIANTS, default="general")
    pair = sub.choices["guo-pair"]
    pair.add_argument("--t1", type=float, required=True)
    pair.add_argument("--t2", type=float, required=True)
    pair.add_argument("--branch", choices=["+", "-"], default="+")

    batch = sub.add_parser("batch", help="run a JSON list of jobs, one JSON line of results per job")
    batch.add_argument("jobs", metavar="JOBS", help="job file or inline JSON list")
    batch.add_argument("--out", help="JSON-lines report path (default stdout)")
    batch.add_argument("--workers", type=int, default=1)
    return parser


PARAM_KEYS = ("gamma", "sign", "t", "t1", "t2", "theta", "branch", "variant", "phi1", "phi2", "tol",
              "pairing", "K", "M")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "batch":
        return _batch(args)
    inputs = [getattr(args, name) for name in args.input_names]
    params = {k: getattr(args, k) for k in PARAM_KEYS if getattr(args, k, None) is not None}
    job = JobSpec(args.command, inputs, params, args.out, args.format)
    code, doc = run(job)
    if "error" in doc:
        print(f"error: {doc['error']}", file=sys.stderr)
    try:
        _write(render(doc, job.format), job.output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code



if __name__ == "__main__":
    sys.exit(main())
