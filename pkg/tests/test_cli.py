"""Command-line surface: wire formats, exit codes, determinism."""

import io
import json
import subprocess
import sys

import pytest

from wresolve.cli import main

GERM = '{"r":5,"beta":2,"support":[[0,2],[1,1]]}'


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_depth_germ_pinned(capsys):
    code, out = run(capsys, ["depth", GERM])
    assert code == 0
    assert out == '{"dep": 9, "exact": true}\n'


def test_depth_class(capsys):
    code, payload = run_json(capsys, ["depth", '{"class":"cD/3"}'])
    assert code == 0
    assert payload == {"lower": None, "upper": 6, "exact": False}


def test_basket_pinned(capsys):
    code, out = run(capsys, ["basket", '{"class":"cAx/4","k":3}'])
    assert code == 0
    assert json.loads(out) == {
        "class": "cAx/4",
        "entries": [[1, 4, 1], [1, 2, 2]],
        "aw": 3,
        "sigma": 3,
        "xi": 8,
    }
    # entry order is part of the wire format
    assert out.index("[1, 4, 1]") < out.index("[1, 2, 2]")


def test_basket_cyclic(capsys):
    code, payload = run_json(
        capsys, ["basket", '{"class":"cyclic","r":5,"weights":[2,3,1]}']
    )
    assert code == 0
    assert payload["entries"] == [[2, 5, 1]]
    assert payload["xi"] == 5


def test_resolve(capsys):
    code, payload = run_json(capsys, ["resolve", GERM])
    assert code == 0
    assert payload["dep"] == 9
    assert payload["tree"]["splits_considered"] == 2
    assert payload["tree"]["split"] in ([2, 8], [7, 3])


def test_resolve_limit_key(capsys):
    code, payload = run_json(capsys, ["resolve", GERM[:-1] + ',"limit":3}'])
    assert code == 2
    assert payload["error"]["type"] == "SearchLimitExceeded"


def test_resolve_limit_env(capsys, monkeypatch):
    monkeypatch.setenv("DEPTH_SEARCH_LIMIT", "3")
    code, payload = run_json(capsys, ["resolve", GERM])
    assert code == 2
    assert payload["error"]["type"] == "SearchLimitExceeded"
    # an explicit limit in the input wins over the environment
    code, payload = run_json(capsys, ["resolve", GERM[:-1] + ',"limit":9}'])
    assert code == 0 and payload["dep"] == 9
    monkeypatch.setenv("DEPTH_SEARCH_LIMIT", "not-a-number")
    code, payload = run_json(capsys, ["resolve", GERM])
    assert code == 1


def test_blowup(capsys):
    code, payload = run_json(
        capsys, ["blowup", GERM[:-1] + ',"r1":2,"r2":8}']
    )
    assert code == 0
    assert payload == {
        "quotients": [
            {"index": 2, "weights": [1, 1, 1], "normal": [1, 2]},
            {"index": 8, "weights": [5, 3, 7], "normal": [3, 8]},
        ],
        "residual": None,
    }


def test_blowup_residual(capsys):
    code, payload = run_json(
        capsys,
        ["blowup", '{"r":2,"beta":1,"support":[[0,2],[1,0]],"r1":1,"r2":1}'],
    )
    assert code == 0
    assert payload["residual"] == {"r": 2, "beta": 1, "support": [[0, 1], [1, 0]]}
    assert payload["quotients"][0] == {"index": 1, "weights": [0, 0, 0]}


def test_blowup_invalid_split(capsys):
    code, payload = run_json(
        capsys, ["blowup", GERM[:-1] + ',"r1":3,"r2":7}']
    )
    assert code == 2
    assert payload["error"]["type"] == "InvalidSplit"


def test_en_points(capsys):
    code, out = run(capsys, ["en", '{"points":[[2,"1/2"],[5,"2/5"]]}'])
    assert code == 0
    assert out == '{"kx_c": "-1/10"}\n'


def test_en_exceptional(capsys):
    code, payload = run_json(capsys, ["en", '{"case":"ExceptionalIAIA","r":5,"a2":3}'])
    assert code == 0
    assert payload == {
        "ky_cy": "0",
        "nonpositive": True,
        "kx_c": "-1/10",
        "cf": "1/2",
        "r1": 2,
        "s": 1,
        "delta": None,
    }


def test_en_semistable(capsys):
    code, payload = run_json(
        capsys,
        ["en", '{"case":"SemistableIAIA","r":5,"a":2,"rprime":3,"aprime":2}'],
    )
    assert code == 0
    assert (payload["delta"], payload["r1"], payload["ky_cy"]) == (1, 3, "0")


def test_en_case_name_normalization(capsys):
    for name in ("IA+IA+III", "iaiaiii", "IA_IA_III"):
        code, payload = run_json(
            capsys, ["en", json.dumps({"case": name, "r": 5, "a2": 3})]
        )
        assert code == 0 and payload["ky_cy"] == "0"


def test_en_errors(capsys):
    code, payload = run_json(capsys, ["en", '{"case":"XX","r":5}'])
    assert code == 1
    code, payload = run_json(capsys, ["en", '{"case":"IC","r":4,"kx":"-1/4"}'])
    assert code == 2
    assert payload["error"]["type"] == "InvalidCaseData"


def test_rr_correction(capsys):
    code, out = run(capsys, ["rr", '{"basket":[[1,2]]}'])
    assert (code, out) == (0, '{"correction": "1/4"}\n')
    code, payload = run_json(capsys, ["rr", '{"basket":[[1,2,7],[2,5]]}'])
    assert payload["correction"] == "47/20"


def test_rr_delta_chi(capsys):
    code, payload = run_json(
        capsys,
        ["rr", '{"a_over_n":2,"e3":"1/9","basket_y":[[5,18]],"basket_x":[[1,2,5]]}'],
    )
    assert code == 0
    assert payload["delta_chi"] == "1"  # the threshold boundary for r' = 9


def test_rr_case_bounds(capsys):
    code, payload = run_json(capsys, ["rr", '{"case":"E1_a4","rprime":9,"aw":8}'])
    assert code == 0
    assert payload == {
        "case": "E1_a4",
        "aw_bound": 5,
        "sufficient_bound": 8,
        "check": {"aw": 8, "dep_y": [17, 17], "dep_x_upper": 16, "ok": True},
    }


def test_rr_e11(capsys):
    code, payload = run_json(capsys, ["rr", '{"case":"E11"}'])
    assert code == 0
    assert payload["check"] == {
        "aw": None,
        "dep_y": [6, 6],
        "dep_x_upper": 7,
        "ok": True,
    }


def test_rr_domain_errors(capsys):
    code, payload = run_json(capsys, ["rr", '{"case":"E2","rprime":3}'])
    assert code == 2
    assert payload["error"]["type"] == "InvalidParameter"


def test_o3_case_a(capsys):
    code, payload = run_json(
        capsys,
        ["o3", '{"case":"A","a":3,"d":1,"alpha":2,"suppA":[[2,0]]}'],
    )
    assert code == 0
    assert payload["r"] == 5
    assert len(payload["stages"]) == 4
    st0 = payload["stages"][0]
    # rational-valued fields always arrive as rational strings
    assert st0["weights"] == ["1/2", "1/2", "1", "3/2"]
    assert st0["sigma_weight"] == "2"
    assert st0["discrepancy"] == "1/2"
    assert st0["witnesses"] == ["y2z", "x4z0"]
    assert payload["identity"] == {
        "dep_q3": 0,
        "dep_x_upper": 9,
        "dep_y": 10,
        "check": True,
    }


def test_o3_case_b(capsys):
    code, payload = run_json(
        capsys, ["o3", '{"case":"B","a":3,"d":1,"depQ3":2,"kMax":1}']
    )
    assert code == 0
    assert payload["r"] == 7
    assert len(payload["stages"]) == 2
    assert payload["stages"][0]["wt_first"] == "3"
    assert payload["stages"][0]["wt_second"] == "3/2"
    assert payload["identity"] == {
        "dep_q3": 2,
        "dep_x_upper": 17,
        "dep_y": 18,
        "check": True,
    }


def test_o3_constraint_violation(capsys):
    code, payload = run_json(
        capsys, ["o3", '{"case":"A","a":3,"d":1,"alpha":2,"suppA":[[1,1]]}']
    )
    assert code == 2
    err = payload["error"]
    assert err["type"] == "ConstraintViolation"
    assert (err["i"], err["j"]) == (1, 1)


def test_o3_schema(capsys):
    code, payload = run_json(capsys, ["o3", '{"case":"C","a":3,"d":1}'])
    assert code == 1


def test_trace_valid(capsys):
    code, payload = run_json(
        capsys,
        [
            "trace",
            json.dumps(
                {
                    "steps": [
                        {"kind": "WExtraction", "before": 3, "after": 2},
                        {"kind": "Flip", "before": 2, "after": 1},
                    ]
                }
            ),
        ],
    )
    assert code == 0
    assert payload["valid"] is True
    assert payload["induction"] is True
    assert payload["steps"][0]["note"] == "minimal-resolution extraction"


def test_trace_violation_pinned(capsys):
    code, payload = run_json(
        capsys,
        ["trace", '{"steps":[{"kind":"Flop","before":3,"after":2}]}'],
    )
    assert code == 2
    err = payload["error"]
    assert err["type"] == "RuleViolation"
    assert err["index"] == 0
    assert err["rule"] == "dep_after = dep_before"


def test_trace_schema_errors(capsys):
    code, payload = run_json(capsys, ["trace", '{"steps":[{"kind":"Nope","before":1,"after":1}]}'])
    assert code == 1
    assert payload["error"]["type"] == "SchemaError"
    code, payload = run_json(capsys, ["trace", '{"steps":"Flop"}'])
    assert code == 1


def test_schema_error_missing_key(capsys):
    code, payload = run_json(capsys, ["depth", '{"r":5,"beta":2}'])
    assert code == 1
    assert payload["error"]["type"] == "SchemaError"
    assert "support" in payload["error"]["message"]


def test_domain_error_bad_germ(capsys):
    code, payload = run_json(
        capsys, ["depth", '{"r":4,"beta":2,"support":[[0,1]]}']
    )
    assert code == 2
    assert payload["error"]["type"] == "InvalidParameter"


def test_malformed_json(capsys):
    code, payload = run_json(capsys, ["depth", "{not json"])
    assert code == 1


def test_file_and_stdin_input(capsys, tmp_path, monkeypatch):
    path = tmp_path / "germ.json"
    path.write_text(GERM)
    code, out_file = run(capsys, ["depth", str(path)])
    assert code == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(GERM))
    code, out_stdin = run(capsys, ["depth", "-"])
    assert code == 0
    assert out_file == out_stdin == '{"dep": 9, "exact": true}\n'


def test_missing_file(capsys):
    code, payload = run_json(capsys, ["depth", "no/such/file.json"])
    assert code == 1


def test_text_output(capsys):
    code, out = run(capsys, ["depth", GERM, "--output", "text"])
    assert code == 0
    assert out == "dep: 9\nexact: True\n"


def test_determinism(capsys):
    first = run(capsys, ["o3", '{"case":"A","a":5,"d":2,"alpha":4,"suppA":[[4,0]]}'])
    second = run(capsys, ["o3", '{"case":"A","a":5,"d":2,"alpha":4,"suppA":[[4,0]]}'])
    assert first == second


def test_big_integers_as_strings(capsys):
    big = '{"r":%d,"beta":1,"support":[[0,%d]]}' % (2**30 + 1, 2**30)
    code, payload = run_json(capsys, ["depth", big])
    assert code == 0
    dep = payload["dep"]
    assert isinstance(dep, str)
    assert int(dep) == 2**30 * (2**30 + 1) - 1


def test_verify_quick(capsys):
    code = main(
        [
            "verify",
            "--cyclic-max", "6",
            "--germ-r-max", "3",
            "--rr-max", "10",
            "--en-r-max", "15",
            "--semi-max", "8",
            "--iib-max", "11",
            "--o3-cases", "5",
            "--trace-count", "200",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    lines = [ln for ln in out.strip().splitlines() if ln]
    assert len(lines) == 10
    assert all(ln.startswith("[PASS]") for ln in lines)


def test_verify_json(capsys):
    code = main(
        [
            "verify", "--output", "json",
            "--cyclic-max", "6",
            "--germ-r-max", "3",
            "--rr-max", "10",
            "--en-r-max", "15",
            "--semi-max", "8",
            "--iib-max", "11",
            "--o3-cases", "5",
            "--trace-count", "200",
        ]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert all(entry["ok"] for entry in payload)


def test_console_script():
    proc = subprocess.run(
        ["wresolve", "depth", GERM], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"dep": 9, "exact": True}
