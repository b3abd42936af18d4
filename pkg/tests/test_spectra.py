import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from bruhatspec import bruhat as br
from bruhatspec import coxeter as cx
from bruhatspec import poset as ps
from bruhatspec import spectra as sp

A3 = cx.builtin_matrix("A", 3)


def mon(*factors):
    return sp.Monomial(tuple(factors))


def test_monomial_unit_invariant():
    with pytest.raises(sp.SpectraError):
        sp.Monomial(("x",), unit=True)


def test_parse_monomial_forms():
    assert sp.parse_monomial(["y1", "x1"]) == mon("y1", "x1")
    assert sp.parse_monomial({"unit": True, "factors": []}) == sp.UNIT


def test_in_ideal_basics():
    assert sp.in_ideal(mon("x2", "x3"), {"x2"})
    assert not sp.in_ideal(sp.UNIT, {"x1", "x2"})
    assert not sp.in_ideal(mon("x2", "x3"), {"x1"})


def test_in_ideal_expansions():
    exp = {"Omega1": (sp.UNIT, mon("y1", "x1"))}
    # the unit summand keeps Omega1 out of every ideal not listing it
    assert not sp.in_ideal(mon("Omega1"), {"y1", "x1"}, exp)
    assert sp.in_ideal(mon("Omega1"), {"Omega1"}, exp)
    horton = {"Omega1": (mon("y1", "x1"),)}
    assert sp.in_ideal(mon("Omega1"), {"y1"}, horton)
    assert sp.in_ideal(mon("Omega1"), {"x1"}, horton)
    assert not sp.in_ideal(mon("Omega1"), {"x2"}, horton)


def test_in_ideal_nested_expansions():
    exp = {"Omega1": (mon("y1", "x1"),),
           "Omega2": (mon("Omega1"), mon("y2", "x2"))}
    assert sp.in_ideal(mon("Omega2"), {"y1", "y2"}, exp)
    assert not sp.in_ideal(mon("Omega2"), {"y1"}, exp)
    assert sp.in_ideal(mon("Omega2"), {"Omega2"}, exp)


def test_in_ideal_cyclic_expansion_terminates():
    exp = {"a": (mon("a"),)}
    assert not sp.in_ideal(mon("a"), {"b"}, exp)


@given(st.sets(st.sampled_from(["x1", "x2", "x3", "y1"])),
       st.sets(st.sampled_from(["x1", "x2", "x3", "y1"])))
@settings(max_examples=50, deadline=None)
def test_in_ideal_monotone(small, extra):
    m = mon("x1", "y1")
    if sp.in_ideal(m, small):
        assert sp.in_ideal(m, small | extra)


def cube_model():
    """Boolean lattice on x1,x2,x3 with its generator sets."""
    subsets = [frozenset(c) for k in range(4)
               for c in itertools.combinations(["x1", "x2", "x3"], k)]
    labels = [sp.label_of(s) for s in subsets]
    rels = [(sp.label_of(s), sp.label_of(t))
            for s in subsets for t in subsets if s < t]
    P = ps.build(labels, rels)
    return P, {sp.label_of(s): s for s in subsets}


def test_classify_qmatrices():
    P, gens = cube_model()
    part = sp.classify(P, gens, {"x1": (mon("x2", "x3"),)})
    assert part.P1 == frozenset(["x1"])
    assert part.P2 == frozenset(["0"])
    assert len(part.P3) == 6
    assert part.partner == {"x1": "0"}


def test_classify_delta_zero():
    P, gens = cube_model()
    part = sp.classify(P, gens, {})
    assert not part.P1 and not part.P2 and len(part.P3) == 8


def test_classify_weyl_unit():
    P = ps.build(["0", "x1"], [("0", "x1")])
    gens = {"0": frozenset(), "x1": frozenset(["x1"])}
    part = sp.classify(P, gens, {"x1": (sp.UNIT,)})
    assert part.P3 == frozenset()
    assert part.P2 == frozenset(["0"])
    assert part.P1 == frozenset(["x1"])


def test_builtin_names_and_errors():
    assert sp.builtin("qaffine(3)").name == "qaffine3"
    with pytest.raises(sp.SpectraError):
        sp.builtin("nonsense")
    with pytest.raises(sp.SpectraError):
        sp.builtin("horton2")     # fork diagram needs >= 4 nodes
    with pytest.raises(sp.SpectraError):
        sp.builtin("qaffine9")


def test_run_pipeline_qaffine2():
    res = sp.run_pipeline(sp.builtin("qaffine2"))
    assert res.word == (1, 2)
    assert sorted(res.final_poset.labels) == ["0", "x1", "x1,x2", "x2"]
    assert res.final_poset.rank_profile() == (1, 2, 1)
    assert res.nabla.is_isomorphism


def test_run_pipeline_weyl2_labels():
    res = sp.run_pipeline(sp.builtin("weyl2"))
    assert len(res.final_poset) == 6
    assert res.nabla("2") == "Omega2"
    assert res.nabla("1") == "Omega1"
    assert "Omega1,y2" in res.final_poset.labels


def test_run_pipeline_qmatrix2_labels():
    res = sp.run_pipeline(sp.builtin("qmatrix2"))
    expect = {"0", "Dq", "x2", "x3", "x1,x2", "x1,x3", "x2,x3", "x1,x2,x3",
              "x2,x4", "x3,x4", "x2,x3,x4", "x1,x2,x4", "x1,x3,x4",
              "x1,x2,x3,x4"}
    assert set(res.final_poset.labels) == expect
    assert sp.height(res.final_poset) == 4


def test_height():
    res = sp.run_pipeline(sp.builtin("qaffine3"))
    assert sp.height(res.final_poset) == 3
    with pytest.raises(sp.SpectraError):
        sp.height(ps.build(["a"], []))   # no rank


def test_step_reports_shape():
    res = sp.run_pipeline(sp.builtin("weyl2"))
    kinds = [r["kind"] for r in res.steps]
    assert kinds == ["right", "none", "left", "right"]
    for r in res.steps:
        assert r["sizes"]["new"] == r["sizes"]["P"] + r["sizes"]["P3"]


def test_pipeline_from_file(tmp_path):
    d = {"coxeter": "A2",
         "steps": [{"var": "x1", "gen": 1}, {"var": "x2", "gen": 2}],
         "expect": {"size": 4}}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(d))
    res = sp.run_pipeline(sp.load_pipeline(json.loads(path.read_text())))
    assert len(res.final_poset) == 4


def test_pipeline_expect_mismatch():
    d = {"coxeter": "A2",
         "steps": [{"var": "x1", "gen": 1}],
         "expect": {"size": 3}}
    with pytest.raises(sp.SpectraError, match="expected 3"):
        sp.run_pipeline(sp.load_pipeline(d))


def test_pipeline_failure_names_step():
    # a unit-valued delta forces P1 nonempty, so a plain right step must fail
    d = {"coxeter": "A2",
         "steps": [{"var": "x1", "gen": 1},
                   {"var": "x2", "gen": 2,
                    "delta": {"x1": [{"unit": True}]}}]}
    with pytest.raises(sp.SpectraError, match="step 2 \\(x2\\)"):
        sp.run_pipeline(sp.load_pipeline(d))


def test_first_step_must_be_polynomial():
    d = {"coxeter": "A2",
         "steps": [{"var": "x1", "gen": 1,
                    "delta": {"x1": [["x1"]]}}]}
    with pytest.raises(sp.SpectraError):
        sp.run_pipeline(sp.load_pipeline(d))


def test_data_dir_override(tmp_path, monkeypatch):
    d = {"coxeter": "A1", "steps": [{"var": "x1", "gen": 1}],
         "expect": {"size": 2}}
    (tmp_path / "qmatrix2.json").write_text(json.dumps(d))
    monkeypatch.setenv("BRUHATSPEC_DATA", str(tmp_path))
    spec = sp.builtin("qmatrix2")
    assert len(spec.steps) == 1   # the override, not the shipped file


def test_data_dir_corrupt_override(tmp_path, monkeypatch):
    bad = {"coxeter": "A3",
           "steps": [{"var": "x1", "gen": 2},
                     {"var": "x2", "gen": 2}]}   # repeats the descent
    (tmp_path / "qmatrix2.json").write_text(json.dumps(bad))
    monkeypatch.setenv("BRUHATSPEC_DATA", str(tmp_path))
    with pytest.raises(sp.SpectraError, match="step 2"):
        sp.run_pipeline(sp.builtin("qmatrix2"))


def test_delta0_schedule_gives_boolean_lattice():
    # independent of the builtin: any all-delta-0 schedule is a cube
    d = {"coxeter": "A3",
         "steps": [{"var": "a", "gen": 2}, {"var": "b", "gen": 1},
                   {"var": "c", "gen": 3}]}
    res = sp.run_pipeline(sp.load_pipeline(d))
    cube = ps.singleton("*")
    for _ in range(3):
        cube = ps.product(cube, ps.two_chain())
    assert ps.find_isomorphism(res.final_poset, cube) is not None


def test_final_poset_matches_interval():
    res = sp.run_pipeline(sp.builtin("m2-ext-A3"))
    iv = br.interval(A3, res.word).to_poset()
    f = ps.find_isomorphism(res.final_poset, iv)
    assert f is not None and f.is_isomorphism
