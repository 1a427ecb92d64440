import io
import sys
import json
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent.parent))

from foldsage.api import FoldSageAPI
from foldsage.cli import run_command
from foldsage.graphs import complete_graph, cycle_graph, grotzsch_graph
from foldsage.utils.config import Config


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("K3", "K4", "C4", "C5"):
        graph = {"K3": complete_graph(3), "K4": complete_graph(4),
                 "C4": cycle_graph(4), "C5": cycle_graph(5)}[name]
        (tmp_path / f"{name}.json").write_text(json.dumps(graph.to_json()))
    (tmp_path / "grotzsch.json").write_text(json.dumps(grotzsch_graph().to_json()))
    return tmp_path


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    data = json.loads(captured.out) if captured.out.strip() else None
    return code, data, captured.err


def test_build_and_homology(workdir, capsys):
    code, data, _ = run(capsys, "build", "complete", "4")
    assert code == 0
    assert len(data["vertices"]) == 4 and len(data["edges"]) == 6
    (workdir / "built.json").write_text(json.dumps(data))

    code, data, _ = run(capsys, "homology", "built.json")
    print(f"\nN(K4): {data}", file=sys.stderr)
    assert code == 0
    assert data["describe"] == "H2=Z"
    assert data["groups"] == [{"dim": 2, "rank": 1, "torsion": []}]

    code, data, _ = run(capsys, "homology", "C5.json", "--complex", "homk2")
    assert data["complex"] == "homk2"
    assert data["describe"] == "H1=Z"


def test_build_variants(workdir, capsys):
    code, data, _ = run(capsys, "build", "path", "2", "--loops", "0")
    assert code == 0
    assert data["loops"] == ["0"]

    code, data, _ = run(capsys, "build", "mycielskian", "-r", "2", "C5.json")
    assert len(data["vertices"]) == 11

    code, data, _ = run(capsys, "build", "product", "K3.json", "C4.json")
    assert len(data["vertices"]) == 12

    code, data, _ = run(capsys, "build", "double-mycielskian", "2")
    assert len(data["vertices"]) == 11


def test_cache_hit_miss_and_clear(workdir, capsys):
    run(capsys, "chi", "grotzsch.json")
    code, entries, _ = run(capsys, "cache", "ls")
    assert code == 0
    assert [entry["operation"] for entry in entries] == ["chi"]

    code, data, err = run(capsys, "--log-level", "INFO", "chi", "grotzsch.json")
    assert data["chi"] == 4
    code, entries, _ = run(capsys, "cache", "ls")
    assert len(entries) == 1

    run(capsys, "--seed", "5", "chi", "grotzsch.json")
    code, entries, _ = run(capsys, "cache", "ls")
    assert len(entries) == 2

    code, data, _ = run(capsys, "cache", "clear")
    assert data == {"removed": 2}
    code, entries, _ = run(capsys, "cache", "ls")
    assert entries == []

    run(capsys, "--no-cache", "chi", "K3.json")
    code, entries, _ = run(capsys, "cache", "ls")
    assert entries == []


def test_check_p_and_reduce(workdir, capsys):
    code, data, _ = run(capsys, "check-p", "C5.json")
    assert code == 0
    assert data["holds"] is False
    assert len(data["witness"]) == 4

    code, data, _ = run(capsys, "check-p", "K4.json")
    assert data == {"holds": True, "witness": None}

    code, data, _ = run(capsys, "reduce", "C4.json")
    assert data["removed"] == 2
    assert len(data["core"]["vertices"]) == 2
    assert [step["op"] for step in data["trace"]] == ["fold", "fold"]


def test_graph_from_stdin(workdir, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(complete_graph(3).to_json())))
    code, data, _ = run(capsys, "chi", "-")
    assert code == 0
    assert data["chi"] == 3


def test_verify_exit_codes(workdir, capsys):
    code, data, _ = run(capsys, "--samples", "50", "--edge-samples", "500",
                        "verify", "lovasz", "--G", "K4.json")
    assert code == 0
    assert data["passed"] is True
    report = Path(data["report_path"])
    assert report.exists()
    assert report.parent == Path(".foldsage") / "reports"

    code, data, _ = run(capsys, "verify", "main2", "--T", "C5.json", "--m", "2")
    assert code == 1
    assert data["passed"] is False

    code, data, _ = run(capsys, "verify", "generalmain", "--T", "K3.json", "--m", "2", "--r", "2", "--A", "0")
    assert code == 0

    code, data, err = run(capsys, "verify", "cormain", "--n", "2")
    assert code == 2
    assert "VALIDATION_ERROR" in err


def test_errors_map_to_exit_codes(workdir, capsys):
    code, _, err = run(capsys, "chi", "missing.json")
    assert code == 2
    assert "Cannot read graph file" in err

    (workdir / "broken.json").write_text("{not json")
    code, _, _ = run(capsys, "reduce", "broken.json")
    assert code == 2

    code, _, err = run(capsys, "--vertex-budget", "10", "build", "exponential", "K3.json", "K4.json")
    assert code == 3
    assert "BUDGET_EXCEEDED" in err

    code, _, err = run(capsys, "--vertex-budget", "0", "chi", "K3.json")
    assert code == 2
    assert "CONFIGURATION_ERROR" in err

    assert run_command(["frobnicate"]) == 2
    capsys.readouterr()


def test_homology_cache_ignores_labels(tmp_path):
    api = FoldSageAPI(Config(cache_dir=str(tmp_path / "cache")))
    C5 = cycle_graph(5)
    relabeled = C5.induced_subgraph([0, 2, 4, 1, 3]).relabel(["a", "b", "c", "d", "e"])

    first = api.homology(C5.to_json())
    second = api.homology(relabeled.to_json())
    assert first.metadata["cache"] == "miss"
    assert second.metadata["cache"] == "hit"
    assert second.data == first.data

    # colorings name vertices, so they stay keyed on labels
    assert api.chromatic(C5.to_json()).metadata["cache"] == "miss"
    assert api.chromatic(relabeled.to_json()).metadata["cache"] == "miss"
    assert len(api.cache.entries()) == 3


def test_cache_ls_lists_corrupt_entries(workdir, capsys):
    run(capsys, "chi", "K3.json")
    broken = workdir / ".foldsage" / "cache" / "ff" / "ffbroken.json"
    broken.parent.mkdir(parents=True, exist_ok=True)
    broken.write_text("{not json")

    code, entries, _ = run(capsys, "cache", "ls")
    assert code == 0
    assert len(entries) == 2
    corrupt = [entry for entry in entries if entry.get("corrupt")]
    assert len(corrupt) == 1
    assert corrupt[0]["key"] == "ffbroken" and corrupt[0]["operation"] is None
    assert Path(corrupt[0]["path"]).resolve() == broken.resolve()

    code, data, _ = run(capsys, "cache", "clear")
    assert code == 0
    assert data == {"removed": 2}
    assert not broken.exists()


def test_capabilities():
    capabilities = FoldSageAPI(use_cache=False).get_capabilities()
    assert "check-p" in capabilities["commands"]
    assert "doublenew" in capabilities["theorems"]
    assert capabilities["complexes"] == ["nbhd", "homk2"]
    assert "double-mycielskian" in capabilities["constructions"]


if __name__ == "__main__":
    print("Run with pytest: the CLI tests need the tmp_path and capsys fixtures")
