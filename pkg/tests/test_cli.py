import json
import subprocess
import sys
from pathlib import Path

import pytest

from ptdecomp import formats as fm
from ptdecomp.cli import run
from ptdecomp.points import identity_mono
from ptdecomp.samples import sign_point, write_samples


@pytest.fixture(scope="module")
def data(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    write_samples(d)
    (d / "sign_identity.json").write_text(fm.canonical_dumps(fm.pt_mono_to_dict(identity_mono(sign_point()))))
    return d


def cli(data, *argv, tmp=None):
    """Run the CLI with machine output; return (exit code, parsed report)."""
    out = Path(tmp or data) / "report.json"
    args = [a if a.startswith("-") or not a.endswith(".json") else str(data / a) for a in argv]
    code = run(args + ["--format", "machine", "--output", str(out)])
    return code, json.loads(out.read_text())


def test_check_valid(data):
    code, rep = cli(data, "check", "c2.json")
    assert code == 0 and rep["result"]["kind"] == "structure"
    assert "conventions" in rep


def test_check_malformed(data, tmp_path):
    desc = json.loads((data / "c2.json").read_text())
    (tmp_path / "extra.json").write_text(json.dumps({**desc, "colour": 1}))
    (tmp_path / "broken.json").write_text("{not json")
    (tmp_path / "nonassoc.json").write_text(json.dumps(
        {"variety": "monoid", "elements": ["e", "a", "b"], "op1": [[0, 1, 2], [1, 0, 1], [2, 2, 2]]}))
    for name in ("extra.json", "broken.json", "nonassoc.json"):
        code, rep = cli(tmp_path, "check", name)
        assert code == 2 and rep["status"] == "malformed"
    assert cli(data, "check", "missing.json")[0] == 2


def test_check_kinds(data):
    kinds = {
        "s3.json": "structure", "sign_point.json": "point", "a3_mono.json": "pt-mono",
        "transposition.json": "hom", "a3_cosets.json": "relation", "c2_two_objects.json": "groupoid",
        "c2_loop.json": "wide", "nabla_a3_s3.json": "internal-mono",
    }
    for name, kind in kinds.items():
        code, rep = cli(data, "check", name)
        assert (code, rep["result"]["kind"]) == (0, kind)


def test_machine_round_trip(data, tmp_path):
    for f in sorted(data.glob("*.json")):
        if f.name in ("report.json", "a3_mono_shrunk.json"):
            continue
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert run(["check", str(f), "--format", "machine", "--output", str(first)]) == 0
        assert run(["check", str(first), "--format", "machine", "--output", str(second)]) == 0
        assert first.read_text() == second.read_text(), f.name


def test_decompose(data):
    code, rep = cli(data, "decompose", "--variety", "group", "a3_mono.json")
    assert code == 0 and rep["result"]["ybar"] == [0, 1]
    assert rep["result"]["xbar"] == [0, 1, 2, 3, 4, 5]
    assert cli(data, "decompose", "--variety", "ring", "a3_mono.json")[0] == 2
    code, rep = cli(data, "decompose", "--certify", "a3_mono.json")
    assert code == 0 and rep["certificate"]["status"] == "verified"
    assert (data / "report.json.cert.json").exists()
    code, rep = cli(data, "decompose", "--certify", "--budget", "4", "a3_mono.json")
    assert code == 3 and rep["certificate"]["status"] == "budget_exceeded"


def test_schreier(data):
    code, rep = cli(data, "schreier", "saturating_point.json")
    assert code == 1 and rep["witness"]["fiber"] == "1"
    assert rep["witness"]["reason"] == "mu_y not surjective"
    code, rep = cli(data, "schreier", "semilattice_square.json")
    assert code == 0 and rep["result"]["q"] == [0, 0, 2, 2]


def test_outsider(data):
    assert cli(data, "outsider", "a3_mono.json")[0] == 1
    code, rep = cli(data, "outsider", "sign_identity.json")
    assert code == 0 and rep["result"]["outsider"] is True


def test_normalizer(data):
    code, rep = cli(data, "normalizer", "--certify", "transposition.json")
    assert code == 0 and rep["result"]["X"] == [0, 1]
    assert rep["certificate"]["status"] == "verified"
    code, rep = cli(data, "normalizer", "heisenberg_span_x.json")
    assert code == 0 and len(rep["result"]["X"]) == 4
    code, rep = cli(data, "normalizer", "strict_upper.json")
    assert code == 0 and len(rep["result"]["X"]) == 8


def test_is_normal(data):
    assert cli(data, "is-normal", "a3_inclusion.json", "a3_cosets.json")[0] == 0
    assert cli(data, "is-normal", "transposition.json", "s3_nabla.json")[0] == 1
    # relation on the wrong structure
    assert cli(data, "is-normal", "a3_inclusion.json", "a3_delta.json")[0] == 2


def test_extend_relation(data):
    code, rep = cli(data, "extend-relation", "a3_delta.json", "a3_inclusion.json")
    assert code == 0 and rep["result"]["X"] == [0, 1, 2, 3, 4, 5]
    assert rep["result"]["S"] == [[a, a] for a in range(6)]


def test_groupoid_normalize(data):
    code, rep = cli(data, "groupoid-normalize", "--certify", "c2_loop.json")
    assert code == 0 and len(rep["result"]["arrows"]) == 4
    assert rep["certificate"]["status"] == "verified"
    code, rep = cli(data, "groupoid-normalize", "--certify", "--budget", "4", "c2_loop.json")
    assert code == 3


def test_dif_decompose(data):
    code, rep = cli(data, "dif-decompose", "nabla_a3_s3.json")
    assert code == 0 and len(rep["result"]["xbar"]) == 18 and len(rep["result"]["ybar"]) == 6
    # the points level has |X| = 36, above the default extremality budget
    assert cli(data, "dif-decompose", "--certify", "nabla_a3_s3.json")[0] == 3
    code, rep = cli(data, "dif-decompose", "--certify", "--budget", "36", "nabla_a3_s3.json")
    assert code == 0 and rep["certificate"]["status"] == "verified"


def test_verify(data):
    code, rep = cli(data, "verify", "a3_mono.json")
    assert code == 0 and rep["result"]["certificate"]["alternatives_checked"] == 2
    code, rep = cli(data, "verify", "a3_mono.json", "a3_mono_shrunk.json")
    assert code == 1 and rep["witness"]["certificate"]["status"] == "refuted"


def test_probe_maltsev(data):
    code, rep = cli(data, "probe-maltsev", "semilattice.json")
    assert code == 1 and rep["witness"]["counterexample"] == [[0, 0], [0, 1], [1, 1]]
    assert cli(data, "probe-maltsev", "s3.json")[0] == 0
    assert cli(data, "probe-maltsev", "--budget", "2", "s3.json")[0] == 3


def test_arity(data):
    with pytest.raises(SystemExit) as ei:
        run(["is-normal", str(data / "a3_inclusion.json")])
    assert ei.value.code == 2


def test_human_output(data, capsys):
    assert run(["decompose", str(data / "a3_mono.json")]) == 0
    out = capsys.readouterr().out
    assert "Ybar = {1, -1}" in out


def test_module_entry_point(data):
    p = subprocess.run([sys.executable, "-m", "ptdecomp", "check", str(data / "c2.json")],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.startswith("check: holds")
