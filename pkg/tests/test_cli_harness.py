import json

import pytest

from sympheights import cli, harness
from sympheights.errors import DomainError
from sympheights.fields import QQ, GroundField
from sympheights.harness import GenParams, generate_instance, make_rng, run_suite
from sympheights.linalg import det, gram
from sympheights.symplectic import is_regular


def test_rng_is_pcg64_and_seeded():
    assert isinstance(make_rng(0).bit_generator, __import__("numpy").random.PCG64)
    assert make_rng(42).integers(0, 2**63) == make_rng(42).integers(0, 2**63)


def test_generator_examples():
    S = generate_instance(GenParams(QQ, 2, 1, 1, 9))
    c = S.F[0][1]
    assert c and S.F == ((0, c), (-c, 0)) and S.Z.dim == 2
    S6 = generate_instance(GenParams(QQ, 6, 3, 10, 9))
    assert is_regular(S6) and det(gram(S6.F, S6.Z.matrix))
    assert generate_instance(GenParams(QQ, 6, 3, 10, 9)) == S6


def test_generator_params_validation():
    with pytest.raises(DomainError):
        GenParams(QQ, 3, 2, 10, 0)


def test_generator_rejects_bad_bound():
    with pytest.raises(DomainError):
        GenParams(GroundField(2), 2, 1, 0, 0)


def test_suite_reports_are_reproducible():
    a = run_suite("graph-lemma-oracle", 30, seed=5)
    b = run_suite("graph-lemma-oracle", 30, seed=5)
    assert [r.to_json() for r in a.records] == [r.to_json() for r in b.records]
    assert a.ok


def test_parallel_matches_serial():
    a = run_suite("product-formula", 20, seed=1, workers=1)
    b = run_suite("product-formula", 20, seed=1, workers=2)
    assert [r.to_json() for r in a.records] == [r.to_json() for r in b.records]


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nope")


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("SYMPL_THREADS", "junk")
    assert harness.thread_count() == 1
    monkeypatch.setenv("SYMPL_THREADS", "1")
    assert harness.thread_count() == 1


def _lines(path):
    return [json.loads(x) for x in path.read_text().splitlines()]


def test_cli_gen_basis_decompose_flags(tmp_path):
    inst = tmp_path / "inst.jsonl"
    assert cli.main(["gen", "--field", "q", "--n", "5", "--k", "2", "--seed", "3", "--count", "2", "--output", str(inst)]) == 0
    assert len(_lines(inst)) == 2
    out = tmp_path / "basis.jsonl"
    assert cli.main(["basis", str(inst), "--output", str(out)]) == 0
    recs = _lines(out)
    assert all(all(r["report"]["satisfied"].values()) for r in recs)
    assert cli.main(["decompose", str(inst), "--output", str(tmp_path / "d.jsonl")]) == 0
    assert len(_lines(tmp_path / "d.jsonl")[0]["planes"]) == 2
    assert cli.main(["flags", str(inst), "--output", str(tmp_path / "f.jsonl")]) == 0
    assert sorted(_lines(tmp_path / "f.jsonl")[0]["order"]) == [1, 2]


def test_cli_function_field(tmp_path):
    inst = tmp_path / "inst.jsonl"
    assert cli.main(["gen", "--field", "fp(t)", "--p", "3", "--n", "4", "--k", "2", "--bound", "2", "--output", str(inst)]) == 0
    assert cli.main(["basis", str(inst), "--output", str(tmp_path / "b.jsonl")]) == 0


def test_cli_graph_lemma(tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"n": 4, "edges": [[1, 2], [1, 3], [1, 4]]}))
    out = tmp_path / "o.jsonl"
    assert cli.main(["graph-lemma", str(g), "--output", str(out)]) == 0
    assert _lines(out) == [{"k": 2, "M": 1, "pairs": [[2, 3]], "oracle": 1}]


def test_cli_graph_clique_violation(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"n": 2, "edges": [[1, 2]]}))
    assert cli.main(["graph-lemma", str(g)]) == 2
    assert "CliqueViolationError" in capsys.readouterr().err


def test_cli_heights(tmp_path):
    src = tmp_path / "h.jsonl"
    src.write_text("\n".join(json.dumps(o) for o in [
        {"field": {"name": "q"}, "vector": ["1", "2", "2"]},
        {"field": {"name": "q"}, "matrix": [["1", "0"], ["0", "1"], ["1", "1"]], "orientation": "columns"},
        {"field": {"name": "fp(t)", "p": 2}, "vector": ["t", "t+1"]},
        {"field": {"name": "q"}, "form": {"rows": 2, "cols": 2, "entries": ["0", "1", "-1", "0"]}},
    ]))
    out = tmp_path / "o.jsonl"
    assert cli.main(["heights", str(src), "--output", str(out)]) == 0
    hs = [r["height"] for r in _lines(out)]
    assert hs == [
        {"rational": "3", "radicand": "1"},
        {"rational": "1", "radicand": "3"},
        {"logExp": "1"},
        {"rational": "1", "radicand": "2"},
    ]


def test_cli_verify_exit_status(tmp_path):
    out = tmp_path / "v.jsonl"
    assert cli.main(["verify", "--suite", "exponents", "--output", str(out)]) == 0
    assert _lines(out)[0]["passed"] == 8


def test_cli_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        cli.main(["verify", "--suite", "bogus"])
