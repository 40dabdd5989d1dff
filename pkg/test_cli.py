import json
import re

from shardlab.api.models import RunConfig
from shardlab.cli import EXIT_OK, EXIT_USAGE, main
from shardlab.services.verify_service import VerifyService

A2_ARRANGEMENT = """# base point, then one normal per line
3 2 1
1 -1 0
0 1 -1
1 0 -1
"""


def _dot_nodes(text):
    return [line for line in text.splitlines() if "[label=" in line and "->" not in line]


def test_build_writes_bundle(tmp_path):
    assert main(["build", "--type", "A3", "--out", str(tmp_path)]) == EXIT_OK
    bundle = json.loads((tmp_path / "bundle_A3.json").read_text())
    assert bundle["group_size"] == 24
    assert bundle["shard_count"] == 11
    assert bundle["rank_polynomial"] == [1, 11, 11, 1]
    assert bundle["mobius"] == -13


def test_build_with_coxeter_element(tmp_path):
    assert main(["build", "--type", "A3", "--coxeter-element", "s1,s3,s2", "--out", str(tmp_path)]) == EXIT_OK
    bundle = json.loads((tmp_path / "bundle_A3.json").read_text())
    assert bundle["cambrian"]["sortables"] == 14
    assert bundle["nc"]["elements"] == 14


def test_bad_type_is_a_usage_error(tmp_path, capsys):
    assert main(["build", "--type", "E9", "--out", str(tmp_path)]) == EXIT_USAGE
    assert "shardlab: error" in capsys.readouterr().err


def test_bad_jobs_is_a_usage_error(tmp_path):
    assert main(["build", "--type", "A2", "--jobs", "0", "--out", str(tmp_path)]) == EXIT_USAGE


def test_missing_type_is_a_usage_error():
    assert main(["build"]) == EXIT_USAGE


def test_non_join_irreducible_contract_is_a_usage_error(tmp_path):
    assert main(["build", "--type", "A3", "--contract", "4321", "--out", str(tmp_path)]) == EXIT_USAGE


def test_verify_passes_and_writes_junit(tmp_path, capsys):
    assert main(["verify", "--type", "A2", "--coxeter-element", "s1,s2", "--out", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "elements=6" in out
    report = (tmp_path / "verify_A2.xml").read_text()
    assert 'failures="0"' in report


def test_export_digraph_dot(capsys):
    assert main(["export", "digraph", "--type", "A3", "--format", "dot"]) == EXIT_OK
    assert len(_dot_nodes(capsys.readouterr().out)) == 11


def test_export_nc_dot(capsys):
    assert main(["export", "nc", "--type", "A2", "--coxeter-element", "s1,s2", "--format", "dot"]) == EXIT_OK
    assert len(_dot_nodes(capsys.readouterr().out)) == 5


def test_export_weak_json(capsys):
    assert main(["export", "weak", "--type", "A1"]) == EXIT_OK
    graph = json.loads(capsys.readouterr().out)
    assert len(graph["nodes"]) == 2
    assert len(graph["edges"]) == 1


def test_export_triangulation_text_to_file(tmp_path):
    assert main(["export", "triangulation", "--type", "A2", "--format", "text", "--out", str(tmp_path)]) == EXIT_OK
    lines = (tmp_path / "triangulation_A2.txt").read_text().splitlines()
    assert lines[0] == "SIMPLICIAL"
    assert lines[1] == "6 4"


def test_unknown_export_target(capsys):
    assert main(["export", "bogus", "--type", "A2"]) == EXIT_USAGE
    assert "unknown export target" in capsys.readouterr().err


def test_every_check_names_its_theorem():
    checks = VerifyService().run(RunConfig(type="A2", coxeter_element="s1,s2", contract=["s1"]))
    assert checks
    unnamed = [c.name for c in checks if not re.match(r'(Prop|Thm|Lemma|Cor)\. "[^"]+": \S', c.theorem)]
    assert unnamed == []


def test_build_from_an_arrangement_file(tmp_path):
    source = tmp_path / "a2.txt"
    source.write_text(A2_ARRANGEMENT)
    assert main(["build", "--arrangement", str(source), "--out", str(tmp_path)]) == EXIT_OK
    bundle = json.loads((tmp_path / "bundle_a2.json").read_text())
    assert bundle["type"] == "a2"
    assert bundle["group_size"] == 6
    assert bundle["shard_count"] == 4
    assert bundle["rank_polynomial"] == [1, 4, 1]
    assert bundle["mobius"] == 3


def test_verify_an_arrangement_file(tmp_path, capsys):
    source = tmp_path / "a2.txt"
    source.write_text(A2_ARRANGEMENT)
    assert main(["verify", "--arrangement", str(source), "--out", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "digraph_acyclic" not in out
    assert (tmp_path / "verify_a2.xml").exists()


def test_malformed_arrangement_file_is_a_usage_error(tmp_path, capsys):
    source = tmp_path / "bad.txt"
    source.write_text("3 2 1\n1 -1 x\n")
    assert main(["build", "--arrangement", str(source), "--out", str(tmp_path)]) == EXIT_USAGE
    assert "entries must be rationals" in capsys.readouterr().err


def test_missing_arrangement_file_is_a_usage_error(tmp_path):
    assert main(["build", "--arrangement", str(tmp_path / "absent.txt"), "--out", str(tmp_path)]) == EXIT_USAGE


def test_type_and_arrangement_together_is_a_usage_error(tmp_path):
    source = tmp_path / "a2.txt"
    source.write_text(A2_ARRANGEMENT)
    assert main(["build", "--type", "A2", "--arrangement", str(source)]) == EXIT_USAGE
