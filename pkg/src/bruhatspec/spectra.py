"""Declarative combinatorial spectrum models and iterated pipelines.

Primes are sets of normal-generator symbols; a step's skew derivation is
declared as monomial images of symbols.  Named normal elements (Dq, Omega_k)
may carry an expansion: a list of monomials whose joint membership in an
ideal stands in for membership of the named element itself.  run_pipeline
walks a schedule of variable adjunctions, at each step matching the prime
poset against a Bruhat interval and extending the isomorphism.
"""

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources

from . import bruhat as br
from . import coxeter as cx
from . import extension as ext
from . import poset as ps


class SpectraError(ValueError):
    pass


@dataclass(frozen=True)
class Monomial:
    factors: tuple
    unit: bool = False

    def __post_init__(self):
        if self.unit and self.factors:
            raise SpectraError("unit monomial cannot have factors")


UNIT = Monomial((), unit=True)


def parse_monomial(obj):
    if isinstance(obj, dict):
        return Monomial(tuple(obj.get("factors", ())), bool(obj.get("unit")))
    return Monomial(tuple(obj))


def parse_monomials(items):
    return tuple(parse_monomial(x) for x in items)


def label_of(gens):
    return "0" if not gens else ",".join(sorted(gens))


def symbol_in_ideal(sym, gens, expansions, _seen=frozenset()):
    """A symbol lies in <gens> if it is listed, or if its declared expansion
    has every summand monomial in the ideal."""
    if sym in gens:
        return True
    if sym in _seen:
        return False
    exp = expansions.get(sym)
    if exp is None:
        return False
    seen = _seen | {sym}
    return all(in_ideal(m, gens, expansions, seen) for m in exp)


def in_ideal(m, gens, expansions=None, _seen=frozenset()):
    """Monomial membership in the ideal generated by `gens`: the unit is in
    no proper ideal; otherwise some factor must lie in the ideal."""
    if expansions is None:
        expansions = {}
    if m.unit:
        return False
    return any(symbol_in_ideal(s, gens, expansions, _seen) for s in m.factors)


def classify(P, gens_of, delta, expansions=None, partner_override=None):
    """Split the primes of P into P3 (contain every delta image), P2
    (delta-invariant), and P1 (the rest), with partners derived."""
    expansions = expansions or {}
    all_images = [m for ms in delta.values() for m in ms]
    P1, P2, P3 = set(), set(), set()
    for lab in P.labels:
        g = gens_of[lab]
        if all(in_ideal(m, g, expansions) for m in all_images):
            P3.add(lab)
        elif all(in_ideal(m, g, expansions)
                 for s in g for m in delta.get(s, ())):
            P2.add(lab)
        else:
            P1.add(lab)
    partner = ext.derive_partners(P, P1, P2, partner_override)
    sp = ext.SpectrumPartition(P, frozenset(P1), frozenset(P2), frozenset(P3),
                               partner)
    sp.validate()
    return sp


@dataclass
class Step:
    var: str
    gen: int = None            # None: no Bruhat letter for this variable
    side: str = "right"
    delta: dict = field(default_factory=dict)
    rewrite: dict = field(default_factory=dict)
    expansions: dict = field(default_factory=dict)
    partner: dict = field(default_factory=dict)


@dataclass
class PipelineSpec:
    name: str
    cox: cx.CoxeterMatrix
    steps: list
    expect: dict = field(default_factory=dict)


@dataclass
class PipelineResult:
    name: str
    word: tuple
    final_poset: ps.LabeledPoset
    final_interval: "br.BruhatInterval"
    nabla: ps.PosetMap
    gens: dict
    steps: list

    def rank_profile(self):
        return self.final_poset.rank_profile()


def load_pipeline(d, name=None):
    cm = d["coxeter"]
    cox = cx.matrix_by_name(cm) if isinstance(cm, str) \
        else cx.CoxeterMatrix.from_json_dict(cm)
    steps = []
    for sd in d["steps"]:
        steps.append(Step(
            var=sd["var"],
            gen=sd.get("gen"),
            side=sd.get("side", "right"),
            delta={k: parse_monomials(v)
                   for k, v in (sd.get("delta") or {}).items()},
            rewrite=dict(sd.get("rewrite") or {}),
            expansions={k: parse_monomials(v)
                        for k, v in (sd.get("expansions") or {}).items()},
            partner=dict(sd.get("partner") or {}),
        ))
    return PipelineSpec(name=name or d.get("name", "pipeline"),
                        cox=cox, steps=steps,
                        expect=dict(d.get("expect") or {}))


def _wl_length(label):
    return 0 if label == "e" else label.count(".") + 1


def _ranked(Ptilde, assignment):
    rank = {Ptilde.index(t): _wl_length(l) for l, t in assignment.items()}
    return ps.LabeledPoset(Ptilde.labels, Ptilde.up, Ptilde.hasse, rank)


def _rewrite_gens(gens, rw):
    return frozenset(rw.get(s, s) for s in gens)


def run_pipeline(spec):
    """Iterate the schedule; returns a PipelineResult or raises SpectraError
    at the first step whose hypotheses cannot be met."""
    if not spec.steps:
        raise SpectraError("empty schedule")
    if spec.steps[0].delta or spec.steps[0].gen is None:
        raise SpectraError("first step must adjoin a polynomial variable "
                           "(delta = 0, with a Bruhat letter)")
    cox = spec.cox
    word = ()
    P = ps.build(["0"], [], rank={0: 0})
    gens = {"0": frozenset()}
    expans = {}
    iv = br.interval(cox, ())
    nabla = ps.PosetMap(iv.to_poset(), P, {"e": "0"})
    reports = []
    for idx, st in enumerate(spec.steps):
        expans = dict(expans)
        expans.update(st.expansions)
        try:
            if st.gen is None:
                word, iv, P, gens, nabla, rep = _step_none(
                    cox, word, iv, P, gens, expans, st, nabla)
            elif st.side == "left":
                word, iv, P, gens, nabla, rep = _step_left(
                    cox, word, iv, P, gens, expans, st, nabla)
            elif st.side == "right":
                word, iv, P, gens, nabla, rep = _step_right(
                    cox, word, P, gens, expans, st)
            else:
                raise SpectraError("unknown step side %r" % (st.side,))
        except (ext.ExtensionError, br.BruhatError, ps.PosetError,
                cx.CoxeterError, SpectraError) as e:
            raise SpectraError("pipeline %r, step %d (%s): %s"
                               % (spec.name, idx + 1, st.var, e)) from e
        rep = {"step": idx + 1, "var": st.var, **rep}
        reports.append(rep)
    res = PipelineResult(spec.name, word, P, iv, nabla, gens, reports)
    exp = spec.expect
    if exp:
        if "size" in exp and len(P) != exp["size"]:
            raise SpectraError("pipeline %r: expected %d elements, got %d"
                               % (spec.name, exp["size"], len(P)))
        if "rank_profile" in exp and \
                list(P.rank_profile()) != list(exp["rank_profile"]):
            raise SpectraError("pipeline %r: rank profile %r, expected %r"
                               % (spec.name, list(P.rank_profile()),
                                  list(exp["rank_profile"])))
    return res


def _sizes(sp, newsize):
    return {"P": len(sp.P), "P1": len(sp.P1), "P2": len(sp.P2),
            "P3": len(sp.P3), "new": newsize}


def _step_right(cox, word, P, gens, expans, st):
    a = st.gen
    part = br.partition(cox, word, a)
    sp = classify(P, gens, st.delta, expans, st.partner)
    wl = br.word_label
    Wp = part.interval_wbar.to_poset()
    constraints = [
        (sorted(wl(w) for w in part.W1), sorted(sp.P1)),
        (sorted(wl(w) for w in part.W2), sorted(sp.P2)),
        (sorted(wl(w) for w in part.W3), sorted(sp.P3)),
    ]
    nabla = ps.find_isomorphism(Wp, P, constraints)
    if nabla is None:
        raise SpectraError(
            "no block-respecting isomorphism [1,wbar] -> P "
            "(|W1,W2,W3| = %d,%d,%d vs |P1,P2,P3| = %d,%d,%d)"
            % (len(part.W1), len(part.W2), len(part.W3),
               len(sp.P1), len(sp.P2), len(sp.P3)))
    relabel = {p: label_of(_rewrite_gens(gens[p], st.rewrite)) for p in sp.P1}
    newlab = {q: label_of(gens[q] | {st.var}) for q in sp.P3}
    setup, _iota = ext.ore_step(sp, newlab, relabel)
    nablat = ext.extend_iso(nabla, part, setup)
    sq = ext.commuting_square(nabla, nablat, part, setup)
    if not sq["ok"]:
        raise SpectraError("commuting square failed: %r" % (sq,))
    new_gens = {}
    for p in P.labels:
        g = gens[p]
        if p in sp.P1:
            g = _rewrite_gens(g, st.rewrite)
        new_gens[setup.iota[p]] = g
    for q in sp.P3:
        new_gens[newlab[q]] = gens[q] | {st.var}
    new_word = word + (a,)
    newP = _ranked(setup.Ptilde, nablat.assignment)
    rep = {"kind": "right", "gen": a,
           "hypothesis_a": True, "hypothesis_b": True,
           "square_commutes": sq["square_commutes"],
           "at_most_2_1": sq["at_most_2_1"],
           "new_fibers_over_P3": sq["new_fibers_over_P3"],
           "sizes": _sizes(sp, len(setup.Ptilde))}
    return new_word, part.interval_wbara, newP, new_gens, \
        ps.PosetMap(nablat.source, newP, nablat.assignment), rep


def _step_left(cox, word, iv, P, gens, expans, st, nabla):
    a = st.gen
    if a in set(word):
        raise SpectraError("left step generator %d already occurs in wbar" % a)
    if st.delta:
        raise SpectraError("left steps require delta = 0")
    sp = classify(P, gens, {}, expans)
    if sp.P1 or sp.P2:
        raise SpectraError("left step expects every prime in P3")
    newlab = {q: label_of(gens[q] | {st.var}) for q in sp.P3}
    setup, _iota = ext.ore_step(sp, newlab, {})
    new_word = (a,) + word
    if not cx.is_reduced(cox, new_word):
        raise SpectraError("prepending generator %d does not lengthen wbar" % a)
    iva = br.interval(cox, new_word)
    wl = br.word_label
    assign = {}
    phi_elems = {}
    for w in iva.elements:
        if cx.left_descent(w, a):
            wp = w.times_gen(a, side="left")
            assign[wl(w)] = newlab[nabla(wl(wp))]
            phi_elems[wl(w)] = wl(wp)
        else:
            assign[wl(w)] = setup.iota[nabla(wl(w))]
            phi_elems[wl(w)] = wl(w)
    nablat = ps.PosetMap(iva.to_poset(), setup.Ptilde, assign)
    if not nablat.is_isomorphism:
        raise SpectraError("left-step extension is not an isomorphism")
    sq = ext.commuting_square(nabla, nablat, None, setup, phi_elems=phi_elems)
    if not sq["ok"]:
        raise SpectraError("commuting square failed: %r" % (sq,))
    new_gens = {setup.iota[p]: gens[p] for p in P.labels}
    for q in sp.P3:
        new_gens[newlab[q]] = gens[q] | {st.var}
    newP = _ranked(setup.Ptilde, assign)
    rep = {"kind": "left", "gen": a,
           "hypothesis_a": True, "hypothesis_b": True,
           "square_commutes": sq["square_commutes"],
           "at_most_2_1": sq["at_most_2_1"],
           "new_fibers_over_P3": sq["new_fibers_over_P3"],
           "sizes": _sizes(sp, len(setup.Ptilde))}
    return new_word, iva, newP, new_gens, \
        ps.PosetMap(nablat.source, newP, assign), rep


def _step_none(cox, word, iv, P, gens, expans, st, nabla):
    """A variable with no Bruhat letter: the poset passes through unchanged
    except that P1 labels pick up the declared rewrite."""
    sp = classify(P, gens, st.delta, expans, st.partner)
    if sp.P3:
        raise SpectraError("a step without a Bruhat letter requires P3 = {}")
    relabel = {p: label_of(_rewrite_gens(gens[p], st.rewrite)) for p in sp.P1}
    setup, _iota = ext.ore_step(sp, {}, relabel)
    assign = {l: setup.iota[nabla(l)] for l in nabla.source.labels}
    newP = _ranked(setup.Ptilde, assign)
    nablat = ps.PosetMap(nabla.source, newP, assign)
    if not nablat.is_isomorphism:
        raise SpectraError("relabeling step broke the isomorphism")
    new_gens = {}
    for p in P.labels:
        g = gens[p]
        if p in sp.P1:
            g = _rewrite_gens(g, st.rewrite)
        new_gens[setup.iota[p]] = g
    rep = {"kind": "none", "gen": None,
           "hypothesis_a": None, "hypothesis_b": None,
           "square_commutes": None, "at_most_2_1": None,
           "new_fibers_over_P3": None,
           "sizes": _sizes(sp, len(setup.Ptilde))}
    return word, iv, newP, new_gens, nablat, rep


# ---------------------------------------------------------------------------
# shipped pipelines

_UNIT_JSON = {"unit": True, "factors": []}


def _qaffine(n):
    if not 1 <= n <= 5:
        raise SpectraError("qaffine(n) supported for 1 <= n <= 5")
    return {"name": "qaffine%d" % n, "coxeter": "A%d" % n,
            "steps": [{"var": "x%d" % k, "gen": k} for k in range(1, n + 1)],
            "expect": {"size": 2 ** n}}


def _weyl(n):
    if not 1 <= n <= 4:
        raise SpectraError("weyl(n) supported for 1 <= n <= 4")
    steps = [{"var": "x1", "gen": 1},
             {"var": "y1", "gen": None,
              "delta": {"x1": [_UNIT_JSON]},
              "rewrite": {"x1": "Omega1"},
              "expansions": {"Omega1": [_UNIT_JSON, ["y1", "x1"]]}}]
    for k in range(2, n + 1):
        om, om_prev = "Omega%d" % k, "Omega%d" % (k - 1)
        xk, yk = "x%d" % k, "y%d" % k
        steps.append({"var": xk, "gen": k, "side": "left"})
        steps.append({"var": yk, "gen": k,
                      "delta": {xk: [[om_prev]]},
                      "rewrite": {xk: om},
                      "expansions": {om: [[om_prev], [yk, xk]]}})
    expect = {1: {"size": 2}, 2: {"size": 6},
              3: {"size": 20, "rank_profile": [1, 3, 5, 6, 4, 1]}}.get(n, {})
    return {"name": "weyl%d" % n, "coxeter": "A%d" % n,
            "steps": steps, "expect": expect}


def _horton(n):
    # the fork diagram needs >= 4 nodes, so the smallest shipped case is n=3
    if not 3 <= n <= 4:
        raise SpectraError("horton(n) supported for 3 <= n <= 4")
    steps = [{"var": "x1", "gen": 2},
             {"var": "y1", "gen": 1}]
    for k in range(2, n + 1):
        om, om_prev = "Omega%d" % k, "Omega%d" % (k - 1)
        xk, yk = "x%d" % k, "y%d" % k
        exp = {om: [[om_prev], [yk, xk]]}
        if k == 2:
            exp["Omega1"] = [["y1", "x1"]]
        steps.append({"var": xk, "gen": k + 1, "side": "left"})
        steps.append({"var": yk, "gen": k + 1,
                      "delta": {xk: [[om_prev]]},
                      "rewrite": {xk: om},
                      "expansions": exp})
    expect = {3: {"size": 48,
                  "rank_profile": [1, 4, 9, 14, 13, 6, 1]}}.get(n, {})
    return {"name": "horton%d" % n, "coxeter": "D%d" % (n + 1),
            "steps": steps, "expect": expect}


_GENERATED = {"qaffine": _qaffine, "weyl": _weyl, "horton": _horton}
_DATA_FILES = ("qmatrix2", "m2-ext-A3", "m2-ext-affineA2")


def _normalize_name(name):
    return name.strip().replace("(", "").replace(")", "")


def builtin_names():
    return list(_DATA_FILES) + \
        ["qaffine<n>", "weyl<n>", "horton<n>"]


def builtin(name):
    """Shipped pipeline by name: qaffine(n), weyl(n), horton(n), qmatrix2,
    m2-ext-A3, m2-ext-affineA2.  A file <name>.json in $BRUHATSPEC_DATA
    overrides the shipped definition."""
    name = _normalize_name(name)
    data_dir = os.environ.get("BRUHATSPEC_DATA")
    if data_dir:
        path = os.path.join(data_dir, name + ".json")
        if os.path.exists(path):
            with open(path) as f:
                return load_pipeline(json.load(f), name=name)
    if name in _DATA_FILES:
        text = resources.files(__package__).joinpath(
            "data", name + ".json").read_text()
        return load_pipeline(json.loads(text), name=name)
    m = re.fullmatch(r"(qaffine|weyl|horton)(\d+)", name)
    if m:
        return load_pipeline(_GENERATED[m.group(1)](int(m.group(2))),
                             name=name)
    raise SpectraError("unknown builtin pipeline %r" % (name,))


def height(P):
    """Length of the longest chain of a graded poset (= top rank)."""
    if P.rank is None:
        raise SpectraError("height requires a graded poset")
    return len(P.rank_profile()) - 1
