import json

import pytest

from dbseeds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_seed_sigma_wn(capsys):
    code, out, _ = run(capsys, "seed", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "wN")
    assert code == 0
    payload = json.loads(out)
    seed = payload["seed"]
    assert seed["psi"] == [["0", "-2"], ["2", "0"]]
    assert seed["B"] == [[0], [1]]
    assert seed["ex"] == [1]
    assert payload["double_word"]["p"] == [None, 1]
    assert payload["double_word"]["s"] == [2, None]


def test_seed_bz(capsys):
    code, out, _ = run(capsys, "seed", "--type", "A1", "--w", "1", "--u", "1", "--bz")
    assert code == 0
    seed = json.loads(out)["seed"]
    assert seed["B"] == [[-1], [0], [-1]]
    assert seed["ex"] == [2]
    assert seed["labels"][0] == {"gamma": [1], "delta": [-1]}


def test_seed_family_with_rank_flag(capsys):
    code, out, _ = run(capsys, "seed", "--type", "A", "--rank", "2", "--w", "1,2", "--u", "", "--sigma", "id")
    assert code == 0
    assert json.loads(out)["cartan"] == {"family": "A", "rank": 2}


def test_seed_mbz_reduced(capsys):
    code, out, _ = run(capsys, "seed", "--type", "A1", "--w", "1", "--u", "1", "--mbz", "--reduce")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["seed"]["psi"]) == 2
    assert payload["reduced_from"]["variant"] == "modified"


def test_seed_empty_u(capsys):
    code, out, _ = run(capsys, "seed", "--type", "A2", "--w", "1,2", "--u", "", "--sigma", "id")
    assert code == 0
    seed = json.loads(out)["seed"]
    assert seed["ex"] == []
    assert len(seed["psi"]) == 2


def test_seed_rejects_bad_type(capsys):
    code, _, err = run(capsys, "seed", "--type", "H3", "--w", "1", "--u", "")
    assert code == 2
    assert "error" in json.loads(err)


def test_seed_rejects_nonreduced(capsys):
    code, _, err = run(capsys, "seed", "--type", "A1", "--w", "1,1", "--u", "")
    assert code == 2
    assert "not reduced" in json.loads(err)["error"]


def test_mutate_involution(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "id", "--seq", "1,1")
    assert code == 0
    payload = json.loads(out)
    assert [s["compatible"] for s in payload["steps"]] == [True, True]
    code2, out2, _ = run(capsys, "seed", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "id")
    base = json.loads(out2)["seed"]
    assert payload["seed"]["psi"] == base["psi"]
    assert payload["seed"]["B"] == base["B"]


def test_mutate_single_step_swaps_sides(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "id", "--seq", "1")
    assert code == 0
    mutated = json.loads(out)["seed"]
    code2, out2, _ = run(capsys, "seed", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "2,1")
    other = json.loads(out2)["seed"]
    assert mutated["psi"] == other["psi"]
    assert mutated["B"] == other["B"]
    assert mutated["degrees"] == other["degrees"]


def test_mutate_rejects_frozen_index(capsys):
    code, _, _ = run(capsys, "mutate", "--type", "A1", "--w", "1", "--u", "1", "--sigma", "id", "--seq", "2")
    assert code == 3


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "--w", "1,2,1", "--u", "1,2,1")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert all(c["ok"] for c in payload["checks"])


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A1", "--w", "1", "--u", "1", "--self-test-fault")
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    named = {c["name"]: c["ok"] for c in payload["checks"]}
    assert named["compat-identity"] is False


def test_verify_all_xi_five(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "--w", "1,2,1", "--u", "1,2", "--all-xi")
    assert code == 0
    payload = json.loads(out)
    names = [c["name"] for c in payload["checks"]]
    assert "btau-oracle" in names and "xi-linkage" in names


def test_xi_list(capsys):
    code, out, _ = run(capsys, "xi-list", "--n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 8
    assert payload["permutations"][0] == [1, 2, 3, 4]
    code, out, _ = run(capsys, "xi-list", "--n", "5")
    assert json.loads(out)["count"] == 16


def test_cgl_nf(capsys):
    code, out, _ = run(capsys, "cgl-nf", "--preset", "sl2", "--word", "2,1")
    assert code == 0
    nf = json.loads(out)["normal_form"]
    assert nf["terms"] == [
        {"exp": [0, 0], "coef": [{"exp": "0", "coef": "1"}, {"exp": "4", "coef": "-1"}]},
        {"exp": [1, 1], "coef": [{"exp": "4", "coef": "1"}]},
    ]


def test_cgl_nf_unknown_preset(capsys):
    code, _, err = run(capsys, "cgl-nf", "--preset", "nope", "--word", "1")
    assert code == 2


def test_output_bytes_stable(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code = main(["seed", "--type", "A2", "--w", "1,2", "--u", "2,1", "--sigma", "all-xi", "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
