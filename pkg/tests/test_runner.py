"""
Tests for the task runner, JSON reports, DOT export and the command line
"""

import json

import networkx as nx
import pytest

from core.constants import EXIT_OK, EXIT_HARD_FAILURE, EXIT_UNCERTIFIED, EXIT_PARSE_ERROR
from operations import reduction_graph
from parsers import SpecFile, Task
from presentation import Derivation
from presentation.presets import preset_spec, preset_text
from reports import (
    Report, TaskRecord, run, run_task, default_maxlen, export_dot, format_report,
    save_report, strip_volatile,
)
from core.config import Budget
from rewrite_checker import main, write_dot


def _only(spec, *kinds, presentation=None):
    return SpecFile(presentation or spec.presentation,
                    [t for t in spec.tasks if t.kind in kinds])


def _identity(pres, text):
    return Derivation.identity(pres.string(text))


def test_monad_preset_passes():
    report, code = run(preset_spec("monad"), maxlen=4)
    assert code == EXIT_OK
    assert [r.verdict for r in report.records] == ["Certified", "Equal", "Terminal", "Terminal"]


def test_ablated_unit_law_is_uncertified():
    spec = preset_spec("monad")
    ablated = _only(spec, "confluence", "terminal", "laws",
                    presentation=spec.presentation.without_equations("unitL"))
    report, code = run(ablated, maxlen=3)
    assert code == EXIT_UNCERTIFIED
    verdicts = {r.kind: r.verdict for r in report.records}
    assert verdicts["confluence"] == "NotCertified"
    assert verdicts["laws"] == "Unknown"
    assert not any(r.verdict == "Error" for r in report.records)


def test_hard_failure_becomes_error_record(monad):
    bad = Task("equiv", "not parallel", {
        "left": _identity(monad, "T T"),
        "right": _identity(monad, "T"),
    })
    record = run_task(monad, bad, Budget(), {"override": None, "default": 3})
    assert record.verdict == "Error"
    assert record.details == {"error": "TypingError"}
    report = Report("monad", [record])
    assert report.exit_code == EXIT_HARD_FAILURE


def test_equiv_task_records_replayable_trace():
    spec = preset_spec("composite-monad")
    report, code = run(_only(spec, "equiv"))
    record = report.records[0]
    assert code == EXIT_OK
    assert record.verdict == "Equal"
    assert [m["move"] for m in record.trace] == ["exchange"]


def test_cli_maxlen_overrides_task_maxlen():
    spec = preset_spec("monad")
    report, _ = run(_only(spec, "terminal"), maxlen=2)
    assert all(r.details["max_len"] == 2 for r in report.records)
    report, _ = run(_only(spec, "terminal"))
    assert all(r.details["max_len"] == 7 for r in report.records)


def test_default_maxlen_depends_on_generator_count(monad, composite):
    assert default_maxlen(monad) == 7
    assert default_maxlen(composite) == 6
    assert default_maxlen(monad, {"maxlen_single": 3}) == 3


def test_json_report_is_deterministic(tmp_path):
    spec = preset_spec("monad")
    first, _ = run(spec, maxlen=3)
    second, _ = run(spec, maxlen=3)
    assert strip_volatile(first.to_dict()) == strip_volatile(second.to_dict())
    path = tmp_path / "report.json"
    save_report(first, str(path))
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["exit_code"] == 0
    assert set(data["tasks"][0]) == {"task", "kind", "verdict", "witness", "trace", "budget",
                                     "elapsed_ms", "details"}


def test_exit_code_rules():
    ok = TaskRecord("a", "confluence", "Certified")
    unknown = TaskRecord("b", "equiv", "Unknown")
    error = TaskRecord("c", "equiv", "Error")
    assert Report("p", [ok]).exit_code == EXIT_OK
    assert Report("p", [ok, unknown]).exit_code == EXIT_UNCERTIFIED
    assert Report("p", [unknown, error]).exit_code == EXIT_HARD_FAILURE
    assert Report("p", []).exit_code == EXIT_OK


def test_format_report_marks_records():
    report = Report("p", [TaskRecord("a", "confluence", "Certified"),
                          TaskRecord("b", "equiv", "Unknown", witness=["x", "y"])])
    text = format_report(report)
    assert "[OK ] a: Certified" in text
    assert "[?? ] b: Unknown" in text
    assert "      - x" in text
    assert text.endswith("1/2 tasks certified, exit code 2")


def test_intro_diagram_dot(intro_spec):
    diagram = intro_spec.tasks[-1].args["diagram"]
    text = export_dot(diagram, diagram.name)
    assert text.startswith('digraph "intro" {\n  rankdir=LR;\n')
    assert sum(1 for line in text.splitlines() if "->" in line) == 12
    assert sum(1 for line in text.splitlines() if line.startswith("  n") and "->" not in line) == 9
    assert export_dot(diagram, diagram.name) == text


def test_empty_graph_dot_is_header_only():
    assert export_dot(nx.MultiDiGraph(), "empty") == 'digraph "empty" {\n  rankdir=LR;\n}\n'


def test_reduction_graph_dot(monad):
    graph = reduction_graph(monad.string("T T T"), [monad.rule("mu")])
    lines = export_dot(graph, "TTT").splitlines()
    assert lines[2] == '  s0 [label="T"];'
    assert sum(1 for line in lines if "->" in line) == 3


def test_export_rejects_other_objects():
    with pytest.raises(TypeError):
        export_dot(["not", "a", "graph"])


def test_write_dot_collects_diagrams_and_normalize_tasks(tmp_path, intro_spec):
    spec = SpecFile(intro_spec.presentation, intro_spec.tasks + [
        Task("normalize", "normalize T1 T1", {"string": intro_spec.presentation.string("T1 T1")})])
    path = tmp_path / "out.dot"
    write_dot(spec, str(path))
    text = path.read_text(encoding="utf-8")
    assert text.count("digraph") == 2
    assert 'digraph "normalize T1 T1"' in text


def test_main_runs_a_preset(tmp_path, capsys):
    out = tmp_path / "monad.json"
    code = main(["--preset", "monad", "--maxlen", "3", "--json", str(out), "--quiet"])
    assert code == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["presentation"] == "monad"
    assert "4/4 tasks certified" in capsys.readouterr().out


def test_main_reports_parse_errors(tmp_path):
    path = tmp_path / "broken.rw"
    path.write_text("cell A\ngen T : A -> A\nthis is not a directive\n", encoding="utf-8")
    assert main([str(path), "--quiet"]) == EXIT_PARSE_ERROR


def test_main_reports_ill_typed_declarations(tmp_path):
    path = tmp_path / "typed.rw"
    path.write_text("cell C\ncell D\ngen F : C -> D\nrule r : F F => F\n", encoding="utf-8")
    assert main([str(path), "--quiet"]) == EXIT_HARD_FAILURE


def test_main_runs_a_spec_file(tmp_path):
    path = tmp_path / "monad.rw"
    text = preset_text("monad").replace("check laws monad T mu eta\n", "")
    path.write_text(text, encoding="utf-8")
    assert main([str(path), "--maxlen", "3", "--quiet"]) == EXIT_OK


def _without_timestamp(path):
    return b"".join(line for line in path.read_bytes().splitlines(keepends=True)
                    if not line.lstrip().startswith(b'"timestamp"'))


@pytest.mark.parametrize("name", ["monad", "composite-monad"])
def test_consecutive_runs_write_identical_bytes(tmp_path, name):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for out in (first, second):
        main(["--preset", name, "--maxlen", "3", "--json", str(out), "--quiet"])
    assert _without_timestamp(first) == _without_timestamp(second)
    data = json.loads(first.read_text(encoding="utf-8"))
    assert all(t["elapsed_ms"] is None for t in data["tasks"])


def test_timings_flag_keeps_elapsed_ms(tmp_path):
    out = tmp_path / "timed.json"
    main(["--preset", "monad", "--maxlen", "2", "--json", str(out), "--timings", "--quiet"])
    data = json.loads(out.read_text(encoding="utf-8"))
    assert all(isinstance(t["elapsed_ms"], int) for t in data["tasks"])
