"""
Command-line front end.

    lefschetz-certify validate FILE
    lefschetz-certify invariants FILE
    lefschetz-certify certify FILE [--assert-not-ruled] [--ruled A B]
    lefschetz-certify construct twist-power H K [--separating G1 G2] [--pencil]
    lefschetz-certify construct fiber-sum FILE [--genus E]
    lefschetz-certify construct pullback FILE DEGREE
    lefschetz-certify clb H K
    lefschetz-certify catalog [NAME]

Global flags: --format json|text, --strict, --verbose. Defaults come from
LEFSCHETZ_FORMAT, LEFSCHETZ_STRICT and LEFSCHETZ_LOG_LEVEL (a .env file is
read on startup).

Exit codes: 0 success, 1 invalid input or usage, 2 certificate refuted.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv
from jsonschema import Draft202012Validator

from .base import (
    LefschetzError,
    SchemaError,
    ValidationError,
    clean_json_string,
    format_fraction,
)
from .certifier import certify_with_invariants, minimal_commutator_genus
from .constructions import (
    CatalogEntry,
    CurveKind,
    catalog,
    catalog_entry,
    fiber_sum_trivial_bundle,
    pullback_cover,
    twist_power,
)
from .invariants import (
    FibrationDescription,
    InvariantReport,
    RuledParameters,
    compute_invariants,
    total_counts,
    validate_fibration,
)
from .surface_config import Curve, FiberConfiguration, Piece
from .verdicts import CertificateReport, InequalityVerdict, Overall

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SCHEMA_PATH = Path(__file__).with_name("schemas") / "fibration.schema.json"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_REFUTED = 2

_TRUTHY = {"1", "true", "yes", "on"}


@lru_cache(maxsize=1)
def load_schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


# --- documents ---

def _reject_float(text: str):
    raise SchemaError(f"Floating point value {text} is not allowed; use integers")


def _path(parts) -> str:
    return "/".join(str(p) for p in parts)


def _check_schema(doc: Any, strict: bool, warnings: List[str]):
    validator = Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    hard = []
    for e in errors:
        path = _path(e.absolute_path)
        if e.validator == "additionalProperties" and not strict:
            warnings.append(f"{path or '(root)'}: {e.message}")
        else:
            hard.append((path, e.message))
    if hard:
        path, message = hard[0]
        more = f" (and {len(hard) - 1} more)" if len(hard) > 1 else ""
        raise SchemaError(f"{message}{more}", path=path or None, errors=hard)


def document_to_fibration(doc: Dict[str, Any]) -> FibrationDescription:
    """Build a validated description from a schema-valid document."""
    try:
        fibers = []
        for i, fiber in enumerate(doc["fibers"]):
            pieces = []
            for j, (genus, boundary) in enumerate(fiber["pieces"]):
                try:
                    pieces.append(Piece(genus, boundary))
                except LefschetzError as err:
                    raise err.located(fiber_index=i, path=f"fibers/{i}/pieces/{j}")
            curves = [Curve(ends=tuple(c["ends"]), homology=c.get("homology")) for c in fiber["curves"]]
            fibers.append(FiberConfiguration(pieces=tuple(pieces), curves=tuple(curves)))

        flags = doc.get("flags", {})
        ruled = flags.get("ruled")
        fd = FibrationDescription(
            fiber_genus=doc["fiber_genus"],
            base_genus=doc["base_genus"],
            fibers=tuple(fibers),
            cycle_order=doc.get("cycle_order"),
            handle_monodromy=doc.get("handle_monodromy"),
            signature=doc.get("signature"),
            asserts_not_rational_or_ruled=flags.get("not_rational_or_ruled", False),
            ruled_params=RuledParameters(*ruled) if ruled is not None else None,
        )
        return validate_fibration(fd)
    except LefschetzError as err:
        raise ValidationError(err) from err


def parse_fibration(text: str, strict: bool = False,
                    warnings: Optional[List[str]] = None) -> FibrationDescription:
    """
    Parse a document into a validated description.

    Non-strict mode tolerates comments and trailing commas, and reports
    unknown fields in warnings instead of rejecting them.

    Raises SchemaError (document shape) or ValidationError (topology,
    homology, counts; kind names the library error).
    """
    warnings = [] if warnings is None else warnings
    if not strict:
        text = clean_json_string(text)
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Not valid JSON: {e.msg} at line {e.lineno} column {e.colno}")
    _check_schema(doc, strict, warnings)
    return document_to_fibration(doc)


def fibration_to_document(fd: FibrationDescription) -> Dict[str, Any]:
    fibers = []
    for fiber in fd.fibers:
        curves = []
        for c in fiber.curves:
            curve = {"ends": list(c.ends)}
            if c.homology is not None:
                curve["homology"] = list(c.homology)
            curves.append(curve)
        fibers.append({
            "pieces": [[p.genus, p.boundary_count] for p in fiber.pieces],
            "curves": curves,
        })

    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "fiber_genus": fd.fiber_genus,
        "base_genus": fd.base_genus,
        "fibers": fibers,
    }
    if fd.cycle_order is not None:
        doc["cycle_order"] = [list(pair) for pair in fd.cycle_order]
    if fd.handle_monodromy is not None:
        doc["handle_monodromy"] = [[list(row) for row in M] for M in fd.handle_monodromy]
    if fd.signature is not None:
        doc["signature"] = fd.signature
    flags = {}
    if fd.asserts_not_rational_or_ruled:
        flags["not_rational_or_ruled"] = True
    if fd.ruled_params is not None:
        flags["ruled"] = [fd.ruled_params.a, fd.ruled_params.b]
    if flags:
        doc["flags"] = flags
    return doc


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def serialize_fibration(fd: FibrationDescription) -> str:
    """Canonical document text; parse_fibration inverts it."""
    return _dumps(fibration_to_document(fd))


# --- reports ---

def report_to_dict(report: InvariantReport) -> Dict[str, Any]:
    return {
        "fiber_genus": report.h,
        "base_genus": report.g,
        "chi": report.chi,
        "k": report.k,
        "n": report.n,
        "s": report.s,
        "D": report.D,
        "N": report.N,
        "b1": {"low": report.b1.low, "high": report.b1.high, "exact": report.b1.exact},
        "b2_minus_lower": report.b2_minus_lower,
        "b2_plus": report.b2_plus,
        "b2_minus": report.b2_minus,
        "k_squared": report.k_squared,
        "k_squared_upper": report.k_squared_upper,
        "torsion": None if report.torsion is None else list(report.torsion),
        "signature": report.signature,
        "all_semistable": report.all_semistable,
        "all_stable": report.all_stable,
        "monodromy": None if report.monodromy is None else report.monodromy.value,
    }


def verdict_to_dict(v: InequalityVerdict) -> Dict[str, Any]:
    return {
        "id": v.id,
        "reference": v.reference,
        "status": v.status.value,
        "slack": format_fraction(v.slack),
        "required": v.required,
        "parameter": format_fraction(v.parameter),
    }


def certificate_to_dict(cert: CertificateReport) -> Dict[str, Any]:
    return {
        "overall": cert.overall.value,
        "verdicts": [verdict_to_dict(v) for v in cert.verdicts],
    }


def _entry_to_dict(entry: CatalogEntry, with_fibration: bool) -> Dict[str, Any]:
    out = {"name": entry.name, "description": entry.description, "provenance": entry.provenance}
    if with_fibration:
        out["fibration"] = fibration_to_document(entry.fibration)
    return out


def _text_invariants(inv: Dict[str, Any]) -> List[str]:
    lines = [
        "h={fiber_genus} g={base_genus} chi={chi} k={k} n={n} s={s} D={D} N={N}".format(**inv)
    ]
    b1 = inv["b1"]
    lines.append(f"b1={b1['low']}" if b1["exact"] else f"b1 in [{b1['low']}, {b1['high']}]")
    lines.append(f"b2- >= {inv['b2_minus_lower']}")
    if inv["b2_plus"] is not None:
        lines.append(f"b2+={inv['b2_plus']} b2-={inv['b2_minus']} K^2={inv['k_squared']}")
    elif inv["k_squared_upper"] is not None:
        lines.append(f"K^2 <= {inv['k_squared_upper']}")
    if inv["torsion"]:
        lines.append("torsion " + " + ".join(f"Z/{d}" for d in inv["torsion"]))
    if inv["monodromy"] is not None:
        lines.append(f"monodromy {inv['monodromy']}")
    return lines


def emit_report(doc: Dict[str, Any], fmt: str = "text") -> str:
    """Render an output document. json mode is byte-deterministic."""
    if fmt == "json":
        if doc.get("command") == "construct" and "fibration" in doc:
            return _dumps(doc["fibration"])
        return _dumps(doc)

    lines: List[str] = []
    if "error" in doc:
        err = doc["error"]
        lines.append(f"error: {err['type']}: {err['message']}")
        for path, message in err.get("errors", [])[1:]:
            lines.append(f"  {path or '(root)'}: {message}")
    if doc.get("command") == "validate" and doc.get("success"):
        lines.append("valid: h={fiber_genus} g={base_genus} D={D} k={k}".format(**doc["summary"]))
    if "invariants" in doc:
        lines.extend(_text_invariants(doc["invariants"]))
    if "certificate" in doc:
        cert = doc["certificate"]
        lines.append(f"overall: {cert['overall']}")
        for v in cert["verdicts"]:
            slack = v["slack"] if v["slack"] is not None else "-"
            lines.append(f"{v['id']} {v['status']} slack={slack} [{v['reference']}]")
    if "fibration" in doc:
        fib = doc["fibration"]
        lines.append(
            f"constructed: h={fib['fiber_genus']} g={fib['base_genus']} "
            f"D={len(fib['fibers'])} k={sum(len(f['curves']) for f in fib['fibers'])}"
        )
    if "minimal_base_genus" in doc:
        lines.append(str(doc["minimal_base_genus"]))
    if "entries" in doc:
        lines.extend(f"{e['name']}: {e['description']}" for e in doc["entries"])
    if "entry" in doc:
        e = doc["entry"]
        lines.append(f"{e['name']}: {e['description']}")
        lines.append(f"provenance: {e['provenance']}")
    lines.extend(f"warning: {w}" for w in doc.get("warnings", []))
    return "\n".join(lines) + "\n"


# --- argument parsing ---

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lefschetz-certify",
        description="Certify (non-)realizability of Lefschetz fibration data",
    )
    parser.add_argument("--format", choices=("json", "text"), default=None)
    parser.add_argument("--strict", action="store_true", default=None,
                        help="reject unknown document fields")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("validate", help="validate a description").add_argument("file")
    sub.add_parser("invariants", help="compute invariants").add_argument("file")

    cert = sub.add_parser("certify", help="run the inequality battery")
    cert.add_argument("file")
    cert.add_argument("--assert-not-ruled", action="store_true",
                      help="assert the total space is neither rational nor ruled")
    cert.add_argument("--ruled", nargs=2, type=int, metavar=("A", "B"),
                      help="total space is a sphere bundle over genus A blown up B times")

    construct = sub.add_parser("construct", help="build a description")
    kinds = construct.add_subparsers(dest="construction", required=True, parser_class=_Parser)
    tp = kinds.add_parser("twist-power")
    tp.add_argument("h", type=int)
    tp.add_argument("k", type=int)
    tp.add_argument("--separating", nargs=2, type=int, metavar=("G1", "G2"))
    tp.add_argument("--pencil", action="store_true", help="close up over the sphere")
    fs = kinds.add_parser("fiber-sum")
    fs.add_argument("file")
    fs.add_argument("--genus", type=int, default=1)
    pb = kinds.add_parser("pullback")
    pb.add_argument("file")
    pb.add_argument("degree", type=int)

    clb = sub.add_parser("clb", help="smallest base genus for a twist power")
    clb.add_argument("h", type=int)
    clb.add_argument("k", type=int)

    sub.add_parser("catalog", help="list or show catalog entries").add_argument("name", nargs="?")
    return parser


def _load(path: str, strict: bool, warnings: List[str]) -> FibrationDescription:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_fibration(text, strict=strict, warnings=warnings)


def _execute(args, strict: bool) -> Tuple[int, Dict[str, Any]]:
    warnings: List[str] = []
    doc: Dict[str, Any] = {"command": args.command, "success": True}

    if args.command == "validate":
        fd = _load(args.file, strict, warnings)
        counts = total_counts(fd)
        doc["summary"] = {"fiber_genus": fd.h, "base_genus": fd.g, "D": counts.D, "k": counts.k}

    elif args.command == "invariants":
        report = compute_invariants(_load(args.file, strict, warnings))
        doc["invariants"] = report_to_dict(report)
        warnings.extend(report.warnings)

    elif args.command == "certify":
        fd = _load(args.file, strict, warnings)
        if args.assert_not_ruled:
            fd = replace(fd, asserts_not_rational_or_ruled=True)
        if args.ruled:
            fd = replace(fd, ruled_params=RuledParameters(*args.ruled))
        report, cert = certify_with_invariants(fd)
        doc["invariants"] = report_to_dict(report)
        doc["certificate"] = certificate_to_dict(cert)
        warnings.extend(report.warnings)
        doc["warnings"] = warnings
        if cert.overall is Overall.REFUTED:
            return EXIT_REFUTED, doc
        return EXIT_OK, doc

    elif args.command == "construct":
        if args.construction == "twist-power":
            kind = CurveKind.separating(*args.separating) if args.separating else CurveKind.nonseparating()
            fd = twist_power(args.h, kind, args.k, pencil=args.pencil)
        elif args.construction == "fiber-sum":
            fd = fiber_sum_trivial_bundle(_load(args.file, strict, warnings), args.genus)
        else:
            fd = pullback_cover(_load(args.file, strict, warnings), args.degree)
        doc["fibration"] = fibration_to_document(fd)

    elif args.command == "clb":
        doc.update(h=args.h, k=args.k, minimal_base_genus=minimal_commutator_genus(args.h, args.k))

    elif args.command == "catalog":
        if args.name:
            doc["entry"] = _entry_to_dict(catalog_entry(args.name), with_fibration=True)
        else:
            doc["entries"] = [_entry_to_dict(e, with_fibration=False) for e in catalog()]

    doc["warnings"] = warnings
    return EXIT_OK, doc


def _error_doc(command: Optional[str], err: Exception) -> Dict[str, Any]:
    error: Dict[str, Any] = {"type": type(err).__name__, "message": str(err)}
    if isinstance(err, ValidationError):
        error["type"] = err.kind
        error["message"] = err.message
    if isinstance(err, LefschetzError):
        error["message"] = err.message
        error["fiber_index"] = err.fiber_index
        error["path"] = err.path
    if isinstance(err, SchemaError):
        error["errors"] = [list(e) for e in err.errors]
    if isinstance(err, KeyError):
        error["message"] = str(err.args[0])
    return {"command": command, "success": False, "error": error}


def run_command(argv: Sequence[str]) -> Tuple[int, Optional[Dict[str, Any]], str]:
    """
    Run one command.

    Returns (exit code, output document, output format). The document is
    None only when argparse itself printed help.
    """
    fmt = os.environ.get("LEFSCHETZ_FORMAT", "text")
    fmt = fmt if fmt in ("json", "text") else "text"
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        return EXIT_INVALID, {"command": None, "success": False,
                              "error": {"type": "UsageError", "message": str(e)}}, fmt
    except SystemExit as e:
        return int(e.code or 0), None, fmt

    fmt = args.format or fmt
    strict = args.strict if args.strict is not None else (
        os.environ.get("LEFSCHETZ_STRICT", "").strip().lower() in _TRUTHY
    )
    try:
        code, doc = _execute(args, strict)
    except (LefschetzError, KeyError, OSError) as err:
        logger.debug("command %s failed: %r", args.command, err)
        return EXIT_INVALID, _error_doc(args.command, err), fmt
    return code, doc, fmt


def _configure_logging(argv: Sequence[str]):
    level = "DEBUG" if "--verbose" in argv else os.environ.get("LEFSCHETZ_LOG_LEVEL", "WARNING")
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    argv = sys.argv[1:] if argv is None else list(argv)
    _configure_logging(argv)

    code, doc, fmt = run_command(argv)
    if doc is None:
        return code
    text = emit_report(doc, fmt)
    if code == EXIT_INVALID:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
