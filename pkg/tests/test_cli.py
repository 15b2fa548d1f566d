import json

import pytest

from greenindex import cli


@pytest.fixture()
def files(tmp_path, z6, t03):
    sem_path = tmp_path / "z6.json"
    sem_path.write_text(json.dumps(z6.to_json_dict()))
    sub_path = tmp_path / "t03.json"
    sub_path.write_text(json.dumps(t03.to_json_dict()))
    return str(sem_path), str(sub_path), tmp_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate(files, capsys, tmp_path):
    sem_path, _, _ = files
    code, out = run(capsys, "validate", "--semigroup", sem_path)
    assert code == 0 and "order 6" in out

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 2, "table": [[0, 1], [0, 0]]}))
    code, out = run(capsys, "validate", "--semigroup", str(bad))
    assert code == 1 and "witness" in out

    assert cli.main(["validate", "--semigroup", str(tmp_path / "nope.json")]) == 2
    capsys.readouterr()


def test_green_index_json(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "green-index", "--semigroup", sem_path,
                    "--sub", sub_path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["green_index"] == 3
    assert data["rees_index"] == 4
    assert data["complement_classes"] == [[1, 4], [2, 5]]


def test_eggbox(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "eggbox", "--semigroup", sem_path,
                    "--sub", sub_path, "--relative")
    assert code == 0 and out.startswith("digraph eggbox")
    code, _out = run(capsys, "eggbox", "--semigroup", sem_path)
    assert code == 0


def test_connectors_and_rewrite(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "connectors", "--semigroup", sem_path,
                    "--sub", sub_path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["class_count"] == 3
    code, out = run(capsys, "rewrite", "--semigroup", sem_path,
                    "--sub", sub_path, "--class-index", "1", "--word", "3,3",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["output_class"] == 1
    code, out = run(capsys, "rewrite", "--semigroup", sem_path,
                    "--sub", sub_path, "--class-index", "1", "--word", "3,3",
                    "--direction", "left")
    assert code == 0 and "=" in out


def test_schreier_and_schutz(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "schreier", "--semigroup", sem_path,
                    "--sub", sub_path, "--gens", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["closure_is_subsemigroup"] is True

    code, out = run(capsys, "schutz", "--semigroup", sem_path,
                    "--sub", sub_path, "--class-of", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 2
    assert data["stabilizer"] == [0, 3, 6]


def test_present_pipeline(files, capsys, tmp_path):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "present", "synth", "--semigroup", sem_path,
                    "--sub", sub_path)
    assert code == 0
    synth_path = tmp_path / "synth.json"
    synth_path.write_text(out)

    code, out = run(capsys, "present", "verify", "--presentation",
                    str(synth_path), "--semigroup", sem_path)
    assert code == 0 and json.loads(out)["verified"] is True

    code, out = run(capsys, "present", "enumerate", "--presentation",
                    str(synth_path), "--max-classes", "100", "--max-len", "12")
    assert code == 0 and json.loads(out)["size"] == 6

    broken = json.loads(synth_path.read_text())
    broken["relations"].append(["t0", "t3"])  # 0 = 3 fails in Z6
    bad_path = tmp_path / "broken.json"
    bad_path.write_text(json.dumps(broken))
    code, out = run(capsys, "present", "verify", "--presentation",
                    str(bad_path), "--semigroup", sem_path)
    assert code == 1 and json.loads(out)["verified"] is False
    assert json.loads(out)["violated_relation"] is not None


def test_human_formats(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "connectors", "--semigroup", sem_path,
                    "--sub", sub_path)
    assert code == 0 and "s * h_i" in out
    code, out = run(capsys, "schutz", "--semigroup", sem_path,
                    "--sub", sub_path, "--class-of", "1")
    assert code == 0 and "stabilizer" in out
    code, out = run(capsys, "wp", "--semigroup", sem_path, "--sub", sub_path,
                    "--word1", "d1", "--word2", "d2")
    assert code == 0 and "branch:" in out
    code, out = run(capsys, "growth", "dominate", "--semigroup", sem_path,
                    "--sub", sub_path, "--r", "6,1,2", "--sub-gens", "3",
                    "--max", "4")
    assert code == 0 and "k1 = 3" in out


def test_wp(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "wp", "--semigroup", sem_path, "--sub", sub_path,
                    "--word1", "t3,t3", "--word2", "t0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is True and data["branch"] == "both_in_sub"
    code, out = run(capsys, "wp", "--semigroup", sem_path, "--sub", sub_path,
                    "--word1", "d1", "--word2", "t0", "--format", "json")
    assert json.loads(out)["branch"] == "mixed"


def test_growth_commands(files, capsys):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "growth", "series", "--semigroup", sem_path,
                    "--gens", "1", "--max", "8", "--format", "json")
    assert code == 0
    assert json.loads(out)["series"] == [1, 2, 3, 4, 5, 6, 7, 7, 7]

    code, out = run(capsys, "growth", "series", "--blackbox", "nat-plus",
                    "--max", "5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["series"] == [1, 2, 3, 4, 5, 6]
    assert "disclaimer" in data

    code, out = run(capsys, "growth", "dominate", "--semigroup", sem_path,
                    "--sub", sub_path, "--r", "6,1,2", "--sub-gens", "3",
                    "--max", "8", "--format", "json")
    assert code == 0 and json.loads(out)["holds"] is True


def test_auto_pipeline(files, capsys, tmp_path):
    sem_path, sub_path, _ = files
    code, out = run(capsys, "auto", "build", "--semigroup", sem_path,
                    "--gens", "1")
    assert code == 0
    st_path = tmp_path / "st.json"
    st_path.write_text(out)

    code, out = run(capsys, "auto", "verify", "--structure", str(st_path),
                    "--semigroup", sem_path, "--max-len", "7")
    assert code == 0 and json.loads(out)["verified"] is True

    code, out = run(capsys, "auto", "transfer", "--structure", str(st_path),
                    "--semigroup", sem_path, "--sub", sub_path)
    assert code == 0
    tr_path = tmp_path / "tr.json"
    tr_path.write_text(out)

    code, out = run(capsys, "auto", "verify", "--structure", str(tr_path),
                    "--semigroup", sem_path, "--sub", sub_path,
                    "--max-len", "6")
    assert code == 0 and json.loads(out)["verified"] is True


def test_exit_codes(files, capsys, tmp_path):
    sem_path, sub_path, _ = files
    # malformed file: input error
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    assert cli.main(["green-index", "--semigroup", str(garbled),
                     "--sub", sub_path]) == 2
    # non-generating set: input error
    assert cli.main(["schreier", "--semigroup", sem_path, "--sub", sub_path,
                     "--gens", "2"]) == 2
    capsys.readouterr()
