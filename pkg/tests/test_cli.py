"""End-to-end command tests, run in process through main(argv)."""

from __future__ import annotations

import json
import math

import pytest

from shiftflow.cli import main

GM = '{"alphabet":["0","1"],"forbidden":["11"]}'
FULL2 = '{"alphabet":["a","b"],"forbidden":[]}'


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariant_bf(capsys):
    code, out, err = run(capsys, ["invariant", "bf", "[[2]]"])
    assert code == 0
    assert out == '{"sign":-1,"divisors":[]}\n'
    assert err == ""


def test_fe_decide_sft(capsys):
    code, out, _ = run(capsys, ["fe", "decide-sft", "[[2]]", "[[1,1],[1,1]]"])
    assert code == 0
    assert out == '{"flow_equivalent":true}\n'
    code, out, _ = run(capsys, ["fe", "decide-sft", "[[2]]", "[[3]]"])
    assert code == 0
    assert out == '{"flow_equivalent":false}\n'


def test_fe_decide_rejects_reducible(capsys):
    code, out, err = run(capsys, ["fe", "decide-sft", "[[1,1],[0,1]]", "[[2]]"])
    assert code == 2
    assert out == ""
    assert "irreducible" in err


def test_language_enum(capsys):
    code, out, _ = run(capsys, ["language", "enum", "--n", "4", GM])
    assert code == 0
    assert out == (
        '{"n":4,"count":8,"words":'
        '["0000","0001","0010","0100","0101","1000","1001","1010"]}\n'
    )


def test_language_enum_from_file(capsys, tmp_path):
    path = tmp_path / "gm.json"
    path.write_text(GM, encoding="utf-8")
    code, out, _ = run(capsys, ["language", "enum", "--n", "2", str(path)])
    assert code == 0
    assert json.loads(out) == {"n": 2, "count": 3, "words": ["00", "01", "10"]}


def test_graph_edge_shift(capsys):
    code, out, _ = run(capsys, ["graph", "edge-shift", GM])
    assert code == 0
    assert out == (
        '{"vertices":["0","1"],"edges":['
        '{"from":"0","to":"0","label":"00"},'
        '{"from":"0","to":"1","label":"01"},'
        '{"from":"1","to":"0","label":"10"}]}\n'
    )


def test_presentation_minimize(capsys):
    fat = json.dumps(
        {
            "vertices": ["e", "o", "e2"],
            "edges": [
                {"from": "e", "to": "e2", "label": "1"},
                {"from": "e", "to": "o", "label": "0"},
                {"from": "o", "to": "e", "label": "0"},
                {"from": "e2", "to": "e2", "label": "1"},
                {"from": "e2", "to": "o", "label": "0"},
            ],
        }
    )
    code, out, _ = run(capsys, ["presentation", "minimize", fat])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 2
    assert len(doc["edges"]) == 3


def test_entropy_perron(capsys):
    code, out, _ = run(capsys, ["entropy", GM])
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "perron"
    assert abs(doc["value"] - math.log2((1 + 5**0.5) / 2)) < 1e-9
    assert set(doc) == {"value", "method"}


def test_entropy_wordcount(capsys):
    code, out, _ = run(capsys, ["entropy", "--method", "wordcount", "--n", "24", GM])
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "word_count"
    assert doc["n_used"] == 24
    assert abs(doc["value"] - math.log2((1 + 5**0.5) / 2)) < 0.05


def test_entropy_of_matrix_and_graph(capsys):
    code, out, _ = run(capsys, ["entropy", "[[2]]"])
    assert code == 0
    assert json.loads(out) == {"value": 1.0, "method": "perron"}
    code, out, _ = run(capsys, ["entropy", '{"vertices":["a"],"edges":[{"from":"a","to":"a"}]}'])
    assert code == 0
    assert json.loads(out)["value"] == 0.0


def test_entropy_rejects_gap_sets(capsys):
    code, out, err = run(capsys, ["entropy", '{"kind":"finite","elements":[0]}'])
    assert code == 2
    assert err == "error: entropy does not accept sgap input\n"


def test_construct_scale(capsys):
    code, out, _ = run(capsys, ["construct", "scale", "--n", "2", "[[2]]"])
    assert code == 0
    assert out == (
        '{"vertices":["0","e0.1","e1.1"],"edges":['
        '{"from":"0","to":"e0.1"},{"from":"e0.1","to":"0"},'
        '{"from":"0","to":"e1.1"},{"from":"e1.1","to":"0"}]}\n'
    )
    # halved entropy: check through the entropy command
    code, out, _ = run(capsys, ["entropy", out.strip()])
    assert code == 0
    assert abs(json.loads(out)["value"] - 0.5) < 1e-9


def test_construct_boost(capsys):
    code, out, _ = run(capsys, ["construct", "boost", "--target", "1", FULL2])
    assert code == 0
    doc = json.loads(out)
    assert "◇" in doc["result"]["alphabet"]
    assert [mv["op"] for mv in doc["moves"]] == ["word_contract", "word_contract"]
    code, _, err = run(capsys, ["construct", "boost", "--target", "1", GM])
    assert code == 2
    assert err == "error: not every {'0', '1'}-word of length 6 occurs\n"


def test_construct_boost_symbols_flag(capsys):
    code, out, _ = run(
        capsys, ["construct", "boost", "--target", "1", "--symbols", "b,a", FULL2]
    )
    assert code == 0
    code, _, err = run(
        capsys, ["construct", "boost", "--target", "1", "--symbols", "b", FULL2]
    )
    assert code == 2
    assert "two comma-separated symbols" in err


def test_moves_apply_with_trace(capsys):
    pipe = '{"source":' + GM + ',"moves":[{"op":"word_contract","word":"10"}]}'
    code, out, err = run(capsys, ["moves", "apply", "--trace", pipe, "10101"])
    assert code == 0
    assert out == '{"word":"10101","image":"◇◇","decided":true}\n'
    assert err == (
        "stage 0: alphabet={0,1} forbidden={11}\n"
        "stage 1: alphabet={0,◇} forbidden={}\n"
    )


def test_moves_apply_undecided_word(capsys):
    pipe = '{"source":' + GM + ',"moves":[{"op":"word_contract","word":"10"}]}'
    code, out, _ = run(capsys, ["moves", "apply", pipe, "1"])
    assert code == 0
    assert json.loads(out) == {"word": "1", "image": "", "decided": False}


def test_moves_apply_rejects_foreign_word(capsys):
    pipe = '{"source":' + GM + ',"moves":[{"op":"expand","symbol":"1"}]}'
    code, out, err = run(capsys, ["moves", "apply", pipe, "0110"])
    assert code == 2
    assert "is not in the source language" in err


def test_sgap_classify(capsys):
    code, out, _ = run(capsys, ["sgap", "classify", '{"kind":"finite","elements":[0,2]}'])
    assert code == 0
    assert out == '{"type":"finite_type"}\n'
    evens = json.dumps({"kind": "sampled", "members": list(range(0, 101, 2)), "bound": 100})
    code, out, _ = run(capsys, ["sgap", "classify", evens])
    assert code == 3
    assert out == '{"type":"strictly_sofic","bound":100}\n'


def test_sgap_fe_equal(capsys):
    evens = '{"kind":"eventually_periodic","R":[],"T":[0],"N":2}'
    odds = '{"kind":"eventually_periodic","R":[],"T":[1],"N":2}'
    code, out, _ = run(capsys, ["sgap", "fe-equal", evens, odds])
    assert code == 0
    assert out == '{"outcome":"equivalent","witness":{"n":0,"r":1}}\n'


def test_sgap_fe_equal_reports_window_bound(capsys):
    primes = [p for p in range(90) if p > 1 and all(p % d for d in range(2, p))]
    squares = [k * k for k in range(11)]
    s1 = json.dumps({"kind": "sampled", "members": primes, "bound": 90})
    s2 = json.dumps({"kind": "sampled", "members": squares, "bound": 100})
    code, out, _ = run(capsys, ["sgap", "fe-equal", s1, s2])
    assert code == 3
    doc = json.loads(out)
    assert doc["outcome"] == "not_equivalent_up_to"
    assert doc["bound"] == 90


def test_validate(capsys):
    code, out, _ = run(capsys, ["validate", GM])
    assert code == 0
    assert out == '{"valid":true,"kind":"sft"}\n'
    code, out, _ = run(capsys, ["validate", "[[1,1],[1,0]]"])
    assert code == 0
    assert json.loads(out) == {"valid": True, "kind": "adjacency"}


def test_validate_reports_bad_documents(capsys):
    code, out, err = run(capsys, ["validate", "[[0,-1],[1,0]]"])
    assert code == 2
    assert out == ""
    assert err == "error: [0][1]: negative entry -1\n"
    bad = '{"kind":"sampled","members":[3,2],"bound":10}'
    code, _, err = run(capsys, ["validate", bad])
    assert code == 2
    assert err == "error: members: must be strictly increasing\n"
    code, _, err = run(capsys, ["validate", "{}"])
    assert code == 2
    assert err == "error: document matches no known input format\n"


def test_bad_json_and_missing_files(capsys):
    code, _, err = run(capsys, ["validate", "{not json"])
    assert code == 2
    assert err.startswith("error: malformed JSON in")
    code, _, err = run(capsys, ["validate", "no_such_file.json"])
    assert code == 2
    assert err.startswith("error: cannot read no_such_file.json")


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, ["entropy", GM])
    second = run(capsys, ["entropy", GM])
    assert first == second
