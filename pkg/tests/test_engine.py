import importlib
import json
import sys

import jsonschema
import pytest

from lawrence_toric import AnalysisEngine, ModelTemplate
from lawrence_toric.base import ParseError, TermOrder, TutteMethod, UnknownModel
from lawrence_toric.exactlin import RatMatrix
from lawrence_toric.graphs import DiGraph, SignedGraph, complete_bipartite, cycle_graph, incidence
from lawrence_toric.models.hierarchical_model import parse_facets, parse_states


def check(report: dict, schema: dict) -> dict:
    jsonschema.validate(report, schema)
    return report


def test_builtin_models_are_loaded(engine):
    assert engine.get_all_model_names() == ["bipartite", "boundary", "hier", "n3w", "quasi"]
    assert engine.get_model_class_parameters("n3w") == {"m1": 2, "m2": 2, "m3": 2}
    assert issubclass(engine.get_model_class("hier"), ModelTemplate)

    with pytest.raises(UnknownModel):
        engine.get_model_class("missing")


def test_models_from_working_directory(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    models = tmp_path.joinpath("models")
    models.mkdir()
    models.joinpath("__init__.py").write_text("")
    models.joinpath("star_model.py").write_text(
        "from lawrence_toric import AnalysisEngine, ModelTemplate\n"
        "from lawrence_toric.model import complete_bipartite_incidence\n"
        "\n"
        "\n"
        "class StarModel(ModelTemplate):\n"
        "    model_name = 'star'\n"
        "    m = 3\n"
        "    parameters = ['m']\n"
        "    variables = []\n"
        "\n"
        "    def base_matrix(self):\n"
        "        return complete_bipartite_incidence(1, self.m)\n"
    )
    monkeypatch.syspath_prepend(str(tmp_path))
    monkeypatch.delitem(sys.modules, "models", raising=False)
    importlib.invalidate_caches()

    engine = AnalysisEngine()
    engine.init_engine()
    assert "star" in engine.get_all_model_names()

    report = engine.run_model("star", ["4"])
    assert (report["degree"], report["mldeg"]) == (1, 1)
    assert report["variables"] == {"inited": True}


def test_broken_plugin_is_logged(tmp_path, monkeypatch, caplog):
    monkeypatch.chdir(tmp_path)
    models = tmp_path.joinpath("models")
    models.mkdir()
    models.joinpath("__init__.py").write_text("")
    models.joinpath("broken_model.py").write_text("raise RuntimeError('boom')\n")
    monkeypatch.syspath_prepend(str(tmp_path))
    monkeypatch.delitem(sys.modules, "models", raising=False)
    importlib.invalidate_caches()

    engine = AnalysisEngine()
    with caplog.at_level("INFO", logger="lawrence_toric"):
        engine.init_engine()
    assert "broken_model failed to load" in caplog.text
    assert "broken" not in engine.get_all_model_names()


def test_settings_round_trip(engine, tmp_path):
    engine.update_setting({"cap_ground": "12", "seed": None, "unknown": 5})
    assert engine.setting["cap_ground"] == 12
    assert engine.setting["seed"] == 0
    engine.save_setting()

    saved = json.loads(tmp_path.joinpath(AnalysisEngine.setting_filename).read_text())
    assert saved["cap_ground"] == 12

    other = AnalysisEngine()
    other.load_setting()
    assert other.setting["cap_ground"] == 12


def test_analyze_example(engine, example_matrix, report_schema):
    report = check(engine.analyze(example_matrix, oracle=True), report_schema)
    assert (report["rows"], report["cols"], report["rank"]) == (4, 5, 3)
    assert report["totally_unimodular"] is True
    assert report["circuits"] == {"count": 3, "even": 1, "odd": 2, "sizes": [3, 4]}
    assert report["degree"] == 8
    assert report["oracle"] == {"order": "degrevlex", "bijection": 8, "search": 8, "agree": True}
    assert report["mldeg"] is None
    assert report["exit_code"] == 2
    assert report["reason"] == "odd-circuit-present"
    assert len(report["odd_circuit"]) == 5


def test_analyze_bipartite(engine, report_schema):
    report = check(engine.analyze(incidence(complete_bipartite(2, 3)), order=TermOrder.DEGLEX), report_schema)
    assert report["exit_code"] == 0
    assert report["reason"] is None
    assert (report["degree"], report["mldeg"]) == (12, 7)


def test_analyze_not_unimodular(engine, report_schema):
    report = check(engine.analyze(incidence(cycle_graph(5))), report_schema)
    assert report["totally_unimodular"] is False
    assert report["degree"] is None
    assert (report["exit_code"], report["reason"]) == (2, "not-totally-unimodular")


def test_analyze_graph(engine, k23, report_schema):
    report = check(engine.analyze_graph(k23, "lex"), report_schema)
    assert report["kind"] == "undirected"
    assert (report["vertices"], report["edges"]) == (5, 6)
    assert report["bipartite"] is True
    assert len(report["taxonomy"]) == 3
    assert report["taxonomy"][0]["kind"] == "even-cycle"
    assert (report["degree"], report["mldeg"]) == (12, 7)
    assert len(report["zero_activity_forests"]) == 7
    assert all(len(f) == 4 for f in report["zero_activity_forests"])


def test_analyze_graph_keeps_degrees_above_cycle_cap(engine, report_schema, caplog):
    engine.update_setting({"cap_cycles": 2})
    with caplog.at_level("INFO", logger="lawrence_toric"):
        report = check(engine.analyze_graph(complete_bipartite(3, 3)), report_schema)

    assert report["exit_code"] == 0
    assert (report["degree"], report["mldeg"]) == (81, 31)
    assert report["taxonomy"] is None
    assert report["taxonomy_skipped"] == "more than 2 cycles"
    assert "taxonomy skipped" in caplog.text


def test_analyze_graph_refusals(engine, triangle, report_schema):
    report = check(engine.analyze_graph(triangle), report_schema)
    assert (report["degree"], report["mldeg"]) == (1, None)
    assert (report["exit_code"], report["reason"]) == (2, "not-bipartite")

    signed = SignedGraph(triangle, (-1, -1, -1))
    report = check(engine.analyze_graph(signed), report_schema)
    assert report["balanced"] is False
    assert (report["exit_code"], report["reason"]) == (2, "balanced")


def test_analyze_directed_graph(engine, report_schema):
    report = check(engine.analyze_graph(DiGraph(4, ((0, 1), (2, 1), (2, 3), (0, 3)))), report_schema)
    assert report["kind"] == "directed"
    assert "taxonomy" not in report
    assert (report["degree"], report["mldeg"]) == (4, 3)


@pytest.mark.parametrize(
    "name, args, expected",
    [
        ("bipartite", ["2", "3"], (12, 7)),
        ("n3w", ["2", "3", "2"], (12, 7)),
        ("n3w", ["2", "3", "3"], (81, 31)),
        ("hier", ["1,2/2,3", "3,2,2"], (144, 49)),
        ("boundary", ["3"], (8, 7)),
        ("quasi", ["3", "3", "11,22,33"], (6, 5)),
        ("quasi", ["2", "2", "11"], (1, 1)),
    ],
)
def test_run_model(engine, report_schema, name, args, expected):
    report = check(engine.run_model(name, args), report_schema)
    assert report["exit_code"] == 0
    assert report["method"] == "pipeline"
    assert (report["degree"], report["mldeg"]) == expected
    assert report.get("lift_verified", True) is True


def test_run_model_cross_checks(engine):
    assert engine.run_model("bipartite", ["3", "3"])["cross_checked"] is True
    assert engine.run_model("hier", ["1,2/2,3", "3,2,2"])["cross_checked"] is True
    assert engine.run_model("quasi", ["3", "3", "11,22,33"])["cross_checked"] is False

    report = engine.run_model("quasi", ["2", "2", "11"])
    assert report["variables"] == {"inited": True, "mldeg_one": True}


def test_run_model_variables(engine):
    report = engine.run_model("n3w", ["3", "2", "4"])
    assert report["variables"] == {"inited": True, "binary_axis": 2}
    assert report["base_shape"] == [7, 12]
    assert "lift_verified" not in report


def test_run_model_closed_form_only(engine, report_schema):
    report = check(engine.run_model("bipartite", ["5", "5"]), report_schema)
    assert report["method"] == "closed-form"
    assert (report["degree"], report["mldeg"]) == (390625, 25231)
    assert report["cross_checked"] is False


def test_run_model_refusals(engine, report_schema):
    report = check(engine.call_command("model", engine.run_model, "n3w", ["3", "3", "3"]), report_schema)
    assert (report["exit_code"], report["reason"]) == (2, "binary-variable")

    report = check(engine.call_command("model", engine.run_model, "nope", []), report_schema)
    assert (report["exit_code"], report["reason"]) == (1, "unknown-model")

    report = check(engine.call_command("model", engine.run_model, "bipartite", ["2"]), report_schema)
    assert (report["exit_code"], report["reason"]) == (1, "parse-error")

    report = check(engine.call_command("model", engine.run_model, "quasi", ["5", "5", "12"]), report_schema)
    assert (report["exit_code"], report["reason"]) == (2, "pipeline-cap")


def test_unexpected_errors_become_reports(engine, report_schema):
    def fail():
        raise KeyError("x")

    report = check(engine.call_command("tutte", fail), report_schema)
    assert (report["exit_code"], report["reason"]) == (1, "internal-error")


@pytest.mark.parametrize("method", list(TutteMethod))
def test_tutte(engine, report_schema, method):
    report = check(engine.tutte(incidence(cycle_graph(4)), method), report_schema)
    assert report["coeffs"] == [[0, 1, 1], [1, 0, 1], [2, 0, 1], [3, 0, 1]]
    assert (report["bases"], report["mobius"]) == (4, 3)
    assert report["method"] == method.value
    assert report["text"].startswith("TuttePoly(")


def test_tutte_cap(engine, report_schema):
    engine.update_setting({"cap_ground": 5})
    report = check(
        engine.call_command("tutte", engine.tutte, incidence(complete_bipartite(2, 3)), TutteMethod.CENSUS),
        report_schema
    )
    assert (report["exit_code"], report["reason"]) == (3, "ground-set-too-large")


def test_list_circuits(engine, k23, report_schema):
    report = check(engine.list_circuits(incidence(k23), k23.labels), report_schema)
    assert report["count"] == 3
    assert report["circuits"][0]["support"] == ["11", "12", "21", "22"]
    assert report["circuits"][0]["v"] == [1, -1, 0, -1, 1, 0]
    assert {c["parity"] for c in report["circuits"]} == {"even"}

    unlabeled = engine.list_circuits(RatMatrix.from_rows([[1, 1]]))
    assert unlabeled["circuits"] == [{"v": [1, -1], "support": ["1", "2"], "parity": "even"}]


def test_emit(engine, example_matrix):
    text = engine.emit(example_matrix, eliminated=True, seed=5)
    assert "# form: eliminated" in text
    assert "# seed: 5" in text
    assert text == engine.emit(example_matrix, eliminated=True, seed=5)

    given = engine.emit(example_matrix, ["1"] * 5, ["1/2"] * 5)
    assert "# u: 1 1 1 1 1" in given
    assert "# w: 1/2 1/2 1/2 1/2 1/2" in given
    assert "# seed" not in given


def test_hierarchical_arguments():
    assert parse_facets("1,2/2,3") == ((1, 2), (2, 3))
    assert parse_states("3,2,2") == (3, 2, 2)

    with pytest.raises(ParseError):
        parse_facets("1,a/2")
    with pytest.raises(ParseError):
        parse_states("3;2")


def test_write_log(engine, caplog):
    with caplog.at_level("INFO", logger="lawrence_toric"):
        engine.run_model("n3w", ["2", "3", "2"])
    assert "n3w: binary variable 3" in caplog.text


def test_hierarchical_model_from_complex_file(engine, write_file):
    path = write_file("path.complex", "# path 1-2-3\n3\n1 2\n2 3\n")
    report = engine.run_model("hier", [path, "3,2,2"])
    assert (report["degree"], report["mldeg"]) == (144, 49)
    assert report["variables"] == {"inited": True, "facet_count": 2}

    report = engine.call_command("model", engine.run_model, "hier", [path, "3,2"])
    assert (report["exit_code"], report["reason"]) == (1, "parse-error")
