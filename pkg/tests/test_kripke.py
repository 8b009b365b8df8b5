import itertools
import random

import pytest

from s5kit.formula import BOT, Atom, Box, Impl, dia, formulas_up_to, neg
from s5kit.hilbert import Rule, instantiate_axiom
from s5kit.kripke import (
    UNIVERSAL,
    FrameError,
    UnknownWorld,
    forces_ctx,
    forces_form,
    true_in_model,
    universal_model,
    validate_frame,
)
from s5kit.randgen import random_formula

from strategies import corpus

p0, p1 = Atom(0), Atom(1)


def _kinds(e):
    return [kind for kind, _ in e.value.violations]


# -- frame validation ---------------------------------------------------------


def test_singleton_frame():
    M = validate_frame(["w0"], [("w0", "w0")], {0: ["w0"]})
    assert M.successors("w0") == ("w0",)


def test_symmetry_witness():
    with pytest.raises(FrameError) as e:
        validate_frame(["w0", "w1"], [("w0", "w0"), ("w1", "w1"), ("w0", "w1")])
    assert e.value.violations == [("symmetry", ("w0", "w1"))]


def test_transitivity_witness():
    # two 2-cycles sharing w1, not closed
    pairs = [(w, w) for w in "abc"] + [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")]
    with pytest.raises(FrameError) as e:
        validate_frame("abc", pairs)
    assert set(_kinds(e)) == {"transitivity"}
    assert ("transitivity", ("a", "b", "c")) in e.value.violations
    for _, (x, y, z) in e.value.violations:
        assert (x, y) in pairs and (y, z) in pairs and (x, z) not in pairs


def test_reflexivity_and_outside():
    with pytest.raises(FrameError) as e:
        validate_frame([0, 1], [(0, 0), (0, 9)], {0: [5]}, sigma=1)
    assert set(_kinds(e)) == {"outside", "reflexivity", "valuation-outside"}
    assert ("reflexivity", (1, 1)) in e.value.violations


def test_empty_and_duplicates():
    with pytest.raises(FrameError) as e:
        validate_frame([], UNIVERSAL)
    assert _kinds(e) == ["empty"]
    with pytest.raises(FrameError) as e:
        validate_frame([0, 0], UNIVERSAL)
    assert _kinds(e) == ["duplicate-world"]


def test_valuation_atom_range():
    with pytest.raises(FrameError) as e:
        validate_frame([0], UNIVERSAL, {3: [0]}, sigma=2)
    assert _kinds(e) == ["valuation-atom-range"]


def test_relation_brute_force():
    # every relation on 3 worlds: validation succeeds iff it is an equivalence
    ws = (0, 1, 2)
    all_pairs = list(itertools.product(ws, ws))
    for bits in range(1 << 9):
        rel = {pr for i, pr in enumerate(all_pairs) if (bits >> i) & 1}
        equiv = (
            all((w, w) in rel for w in ws)
            and all((b, a) in rel for (a, b) in rel)
            and all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2)
        )
        try:
            validate_frame(ws, rel)
            ok = True
        except FrameError:
            ok = False
        assert ok == equiv


# -- forcing ---------------------------------------------------------------------


def test_forcing_examples():
    M1 = validate_frame(["w0"], [("w0", "w0")], {0: ["w0"]})
    assert forces_form(M1, "w0", Box(p0))

    M2 = validate_frame(["w0", "w1"], UNIVERSAL, {0: ["w0"]})
    assert not forces_form(M2, "w0", Box(p0))
    assert forces_form(M2, "w0", dia(p0))
    assert forces_form(M2, "w1", dia(p0))
    assert not true_in_model(M2, p0)
    assert true_in_model(M2, dia(p0))
    for w in M2.worlds:
        assert not forces_form(M2, w, BOT)
        assert true_in_model(M2, Impl(BOT, p1))


def test_forces_ctx_examples():
    for M in corpus(2, 2):
        for w in M.worlds:
            assert forces_ctx(M, [], w)
            assert forces_ctx(M, [Impl(Box(p0), p0)], w)
            assert not forces_ctx(M, [p0, neg(p0)], w)


def test_unknown_world():
    M = universal_model([{0: True}])
    with pytest.raises(UnknownWorld):
        forces_form(M, 7, p0)


def test_true_everywhere():
    M = universal_model([{0: True}, {0: True, 1: True}])
    assert true_in_model(M, p0)
    assert not true_in_model(M, p1)


# -- validity of the axioms ---------------------------------------------------------


def _instances():
    small = {n: list(formulas_up_to(n, 2)) for n in (2, 3, 4)}
    for a in small[4]:
        for rule in (Rule.T, Rule.S4, Rule.B):
            yield instantiate_axiom(rule, a)
    for a, b in itertools.product(small[3], repeat=2):
        for rule in (Rule.PL1, Rule.PL3, Rule.K):
            yield instantiate_axiom(rule, a, b)
    for a, b, c in itertools.product(small[2], repeat=3):
        yield instantiate_axiom(Rule.PL2, a, b, c)


def test_axioms_forced_on_corpus():
    instances = list(_instances())
    assert len(instances) > 1000
    for M in corpus(2, 3):
        for phi in instances:
            assert true_in_model(M, phi), (phi, M.pairs())


def test_mp_and_nec_preservation():
    rng = random.Random(5)
    models = corpus(2, 3)
    for _ in range(300):
        p = random_formula(rng, 2, rng.randint(1, 6))
        q = random_formula(rng, 2, rng.randint(1, 6))
        M = rng.choice(models)
        if true_in_model(M, p):
            assert true_in_model(M, Box(p))
        for w in M.worlds:
            if forces_form(M, w, p) and forces_form(M, w, Impl(p, q)):
                assert forces_form(M, w, q)


def test_semantic_deduction_clause():
    fs = list(formulas_up_to(3, 2))
    for M in corpus(2, 2):
        for p, q in itertools.product(fs, repeat=2):
            for w in M.worlds:
                assert forces_form(M, w, Impl(p, q)) == (not forces_form(M, w, p) or forces_form(M, w, q))
