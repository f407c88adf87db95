"""Tests for the document format and the command-line front end."""

import json

import pytest

from lefschetz_certify import certifier, cli
from lefschetz_certify.base import SchemaError, ValidationError
from lefschetz_certify.cli import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_REFUTED,
    emit_report,
    main,
    parse_fibration,
    run_command,
    serialize_fibration,
)
from lefschetz_certify.constructions import catalog


def read(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_doc(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def loop_doc(**extra):
    doc = {
        "schema_version": 1,
        "fiber_genus": 2,
        "base_genus": 0,
        "fibers": [{"pieces": [[1, 2]], "curves": [{"ends": [0, 0]}]} for _ in range(3)],
    }
    doc.update(extra)
    return doc


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["elliptic12.json", "twist_power_h2_nonsep_k5.json"])
    def test_fixture_bytes(self, fixture_path, name):
        text = read(fixture_path(name))
        assert serialize_fibration(parse_fibration(text, strict=True)) == text

    def test_catalog(self):
        for entry in catalog():
            assert parse_fibration(serialize_fibration(entry.fibration)) == entry.fibration


class TestParse:
    def test_euler_failure_names_fiber(self):
        doc = loop_doc()
        doc["fibers"][2] = {"pieces": [[0, 1], [1, 1]], "curves": [{"ends": [0, 1]}]}
        with pytest.raises(ValidationError) as exc:
            parse_fibration(json.dumps(doc))
        assert exc.value.kind == "EulerMismatch"
        assert exc.value.fiber_index == 2

    def test_signature_parity(self):
        with pytest.raises(ValidationError) as exc:
            parse_fibration(json.dumps(loop_doc(signature=0)))
        assert exc.value.kind == "ParityMismatch"
        assert exc.value.path == "signature"

    def test_invalid_piece_path(self):
        doc = loop_doc()
        doc["fibers"][1]["pieces"] = [[1, 0]]
        with pytest.raises(ValidationError) as exc:
            parse_fibration(json.dumps(doc))
        assert exc.value.kind == "InvalidPiece"
        assert exc.value.path == "fibers/1/pieces/0"

    def test_schema_type_error(self):
        with pytest.raises(SchemaError) as exc:
            parse_fibration(json.dumps(loop_doc(fiber_genus="two")))
        assert exc.value.path == "fiber_genus"

    def test_unknown_field_strict(self):
        with pytest.raises(SchemaError):
            parse_fibration(json.dumps(loop_doc(comment="hi")), strict=True)

    def test_unknown_field_lenient(self):
        warnings = []
        fd = parse_fibration(json.dumps(loop_doc(comment="hi")), warnings=warnings)
        assert fd.h == 2
        assert len(warnings) == 1
        assert "comment" in warnings[0]

    def test_floats_rejected(self):
        with pytest.raises(SchemaError):
            parse_fibration(json.dumps(loop_doc(signature=-1.0)))

    def test_lenient_syntax(self):
        text = json.dumps(loop_doc()).replace('"schema_version": 1', '"schema_version": 1, // v1\n')
        assert parse_fibration(text).h == 2
        with pytest.raises(SchemaError):
            parse_fibration(text, strict=True)

    def test_flags(self):
        fd = parse_fibration(json.dumps(loop_doc(flags={"not_rational_or_ruled": True})))
        assert fd.asserts_not_rational_or_ruled


class TestRunCommand:
    def test_certify_consistent(self, fixture_path):
        code, doc, _ = run_command(["--format", "json", "certify", fixture_path("elliptic12.json")])
        assert code == EXIT_OK
        eq18 = next(v for v in doc["certificate"]["verdicts"] if v["id"] == "EQ18")
        assert eq18["slack"] == "54"
        assert doc["certificate"]["overall"] == "realizable-consistent"

    def test_certify_refuted(self, fixture_path):
        code, doc, _ = run_command(["certify", fixture_path("clustered_pencil.json")])
        assert code == EXIT_REFUTED
        eq18 = next(v for v in doc["certificate"]["verdicts"] if v["id"] == "EQ18")
        assert eq18["status"] == "violated"

    def test_certify_computes_invariants_once(self, fixture_path, monkeypatch):
        calls = []
        compute = certifier.compute_invariants

        def counting(fd):
            calls.append(fd)
            return compute(fd)

        monkeypatch.setattr(certifier, "compute_invariants", counting)
        monkeypatch.setattr(cli, "compute_invariants", counting)
        code, doc, _ = run_command(["certify", fixture_path("elliptic12.json")])
        assert code == EXIT_OK
        assert len(calls) == 1
        assert doc["invariants"]["chi"] == 12

    def test_schema_broken(self, fixture_path):
        code, doc, _ = run_command(["certify", fixture_path("schema_broken.json")])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "SchemaError"

    def test_stable_bound_counterexample(self, fixture_path):
        code, doc, _ = run_command(["certify", fixture_path("twist_power_h2_nonsep_k5.json")])
        assert code == EXIT_OK
        statuses = {v["id"]: v["status"] for v in doc["certificate"]["verdicts"]}
        assert statuses["REM7-K"] == "not-applicable"
        assert doc["invariants"]["k"] > 3 * (doc["invariants"]["fiber_genus"] - 1)

    def test_assert_not_ruled(self, tmp_path):
        path = write_doc(tmp_path, loop_doc())
        _, doc, _ = run_command(["certify", path, "--assert-not-ruled"])
        statuses = {v["id"]: v["status"] for v in doc["certificate"]["verdicts"]}
        assert statuses["EQ21"] != "not-applicable"

    def test_conflicting_flags(self, fixture_path):
        code, doc, _ = run_command(["certify", fixture_path("elliptic12.json"), "--assert-not-ruled"])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "InconsistentFlags"

    def test_missing_file(self, tmp_path):
        code, doc, _ = run_command(["validate", str(tmp_path / "absent.json")])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "FileNotFoundError"

    def test_validation_error_reports_fiber(self, tmp_path):
        doc = loop_doc()
        doc["fibers"][1] = {"pieces": [[0, 1], [1, 1]], "curves": [{"ends": [0, 1]}]}
        code, out, _ = run_command(["validate", write_doc(tmp_path, doc)])
        assert code == EXIT_INVALID
        assert out["error"]["type"] == "EulerMismatch"
        assert out["error"]["fiber_index"] == 1

    def test_clb(self):
        code, doc, fmt = run_command(["clb", "2", "30"])
        assert code == EXIT_OK
        assert emit_report(doc, fmt) == "2\n"

    def test_clb_genus_too_small(self):
        code, doc, _ = run_command(["clb", "1", "3"])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "GenusTooSmall"

    def test_usage_error(self):
        code, doc, _ = run_command(["frobnicate"])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "UsageError"

    def test_invariants_without_fibers(self, tmp_path):
        doc = {"schema_version": 1, "fiber_genus": 1, "base_genus": 1, "fibers": [],
               "handle_monodromy": [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]}
        code, out, fmt = run_command(["invariants", write_doc(tmp_path, doc)])
        assert code == EXIT_OK
        text = emit_report(out, fmt)
        assert "k=0 n=0 s=0 D=0 N=0" in text
        assert "overall" not in text

    def test_construct_twist_power(self):
        code, doc, fmt = run_command(["--format", "json", "construct", "twist-power", "2", "5"])
        assert code == EXIT_OK
        fd = parse_fibration(emit_report(doc, fmt), strict=True)
        assert fd.g == 2

    def test_construct_pullback_of_pencil(self, fixture_path):
        code, doc, _ = run_command(["construct", "pullback", fixture_path("elliptic12.json"), "2"])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "BaseSphereNoCover"

    def test_construct_fiber_sum(self, fixture_path):
        code, doc, _ = run_command(["construct", "fiber-sum", fixture_path("elliptic12.json")])
        assert code == EXIT_OK
        assert doc["fibration"]["base_genus"] == 1

    def test_catalog(self):
        _, doc, _ = run_command(["catalog"])
        assert "ELLIPTIC_12" in [e["name"] for e in doc["entries"]]
        _, doc, _ = run_command(["catalog", "ELLIPTIC_12"])
        assert doc["entry"]["fibration"]["signature"] == -8

    def test_catalog_unknown(self):
        code, doc, _ = run_command(["catalog", "NOPE"])
        assert code == EXIT_INVALID
        assert doc["error"]["type"] == "KeyError"

    def test_format_from_environment(self, monkeypatch):
        monkeypatch.setenv("LEFSCHETZ_FORMAT", "json")
        _, _, fmt = run_command(["clb", "2", "31"])
        assert fmt == "json"

    def test_strict_from_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv("LEFSCHETZ_STRICT", "yes")
        code, _, _ = run_command(["validate", write_doc(tmp_path, loop_doc(extra=1))])
        assert code == EXIT_INVALID


class TestEmitReport:
    def test_verdict_line(self):
        doc = {"command": "certify", "certificate": {"overall": "realizable-consistent", "verdicts": [
            {"id": "EQ9", "reference": "Cor. 9, Eq. (9)", "status": "holds", "slack": "70",
             "required": True, "parameter": None},
        ]}}
        assert "EQ9 holds slack=70 [Cor. 9, Eq. (9)]" in emit_report(doc).splitlines()

    def test_parameterized_ids_in_text(self, fixture_path):
        _, doc, fmt = run_command(["certify", fixture_path("elliptic12.json")])
        text = emit_report(doc, fmt)
        assert "EQ26@0 holds slack=55" in text
        assert "EQ26@1 holds slack=54" in text

    def test_json_is_deterministic(self, fixture_path):
        argv = ["--format", "json", "certify", fixture_path("elliptic12.json")]
        first = emit_report(*run_command(argv)[1:])
        second = emit_report(*run_command(argv)[1:])
        assert first == second
        assert "." not in json.dumps([v["slack"] for v in json.loads(first)["certificate"]["verdicts"]])


class TestMain:
    def test_exit_codes(self, fixture_path, capsys):
        assert main(["certify", fixture_path("elliptic12.json")]) == 0
        assert main(["certify", fixture_path("clustered_pencil.json")]) == 2
        assert main(["certify", fixture_path("schema_broken.json")]) == 1
        captured = capsys.readouterr()
        assert "overall: refuted" in captured.out
        assert "error: SchemaError" in captured.err

    def test_usage_goes_to_stderr(self, capsys):
        assert main(["certify"]) == 1
        assert "usage:" in capsys.readouterr().err
