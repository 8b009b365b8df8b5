import random

import pytest
from hypothesis import given

from s5kit.decide import (
    BudgetExceeded,
    Outcome,
    audit_soundness,
    frame_model,
    global_consequence,
    is_consistent,
    iter_equiv_frames,
    local_consequence,
    sat_equiv_frames,
    sat_universal,
    set_partitions,
    valid,
)
from s5kit.formula import BOT, Atom, Box, Impl, dia, formulas_up_to, neg
from s5kit.hilbert import t
from s5kit.kripke import forces_ctx, forces_form, true_in_model
from s5kit.lemmas import box_dne_tree, theorem_library
from s5kit.randgen import random_formula

from strategies import contexts, formulas

p0, p1, q0 = Atom(0), Atom(1), Atom(1)


def _check_witness(v, gamma, p=None):
    M, w = v.witness, v.world
    assert w in M.worlds
    assert forces_ctx(M, gamma, w)
    if p is not None:
        assert not forces_form(M, w, p)


# -- satisfiability ---------------------------------------------------------------


def test_sat_examples():
    v = sat_universal([p0])
    assert v.outcome is Outcome.SAT and len(v.witness.worlds) == 1
    _check_witness(v, [p0])

    assert sat_universal([p0, neg(p0)]).outcome is Outcome.UNSAT

    gamma = [dia(p0), dia(neg(p0)), Box(Impl(p0, p0))]
    v = sat_universal(gamma)
    assert v.outcome is Outcome.SAT and len(v.witness.worlds) == 2
    _check_witness(v, gamma)


def test_sat_equiv_examples():
    assert sat_equiv_frames([p0], 1).outcome is Outcome.SAT
    for n in range(1, 5):
        assert sat_equiv_frames([Box(p0), neg(p0)], n).outcome is Outcome.UNSAT
    with pytest.raises(BudgetExceeded):
        sat_equiv_frames([p0], 5)


def test_consistency_examples():
    assert is_consistent([])
    assert not is_consistent([BOT])
    assert is_consistent([p0, neg(Box(p0))])


def test_budget():
    many = [Atom(i) for i in range(5)]
    with pytest.raises(BudgetExceeded):
        sat_universal(many)
    assert sat_universal(many, atom_budget=5).outcome is Outcome.SAT


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(6)] == [1, 1, 2, 5, 15, 52]


# -- validity and consequence -----------------------------------------------------------


def test_valid_examples():
    assert valid(Impl(Box(p0), p0)).outcome is Outcome.VALID
    assert valid(Impl(dia(Box(p0)), p0)).outcome is Outcome.VALID
    v = valid(Impl(p0, Box(p0)))
    assert v.outcome is Outcome.INVALID and len(v.witness.worlds) == 2
    _check_witness(v, [], Impl(p0, Box(p0)))


def test_local_and_global_examples():
    v = local_consequence([p0], Box(p0))
    assert v.outcome is Outcome.NOT_ENTAILED and len(v.witness.worlds) == 2
    _check_witness(v, [p0], Box(p0))
    assert local_consequence([Box(p0)], p0).outcome is Outcome.ENTAILED

    assert global_consequence([p0], Box(p0)).outcome is Outcome.ENTAILED
    v = global_consequence([p0], p1)
    assert v.outcome is Outcome.NOT_ENTAILED
    assert true_in_model(v.witness, p0)
    assert not forces_form(v.witness, v.world, p1)


def test_empty_context_matches_valid():
    rng = random.Random(3)
    for _ in range(50):
        p = random_formula(rng, 2, rng.randint(1, 9))
        a = valid(p).outcome is Outcome.VALID
        assert (local_consequence([], p).outcome is Outcome.ENTAILED) == a
        assert (global_consequence([], p).outcome is Outcome.ENTAILED) == a


@given(contexts(2), formulas(2, 8))
def test_witness_integrity(gamma, p):
    for v, premises in [(sat_universal(gamma), gamma), (sat_equiv_frames(gamma, 3), gamma)]:
        if v.outcome is Outcome.SAT:
            _check_witness(v, premises)
    v = local_consequence(gamma, p)
    if v.outcome is Outcome.NOT_ENTAILED:
        _check_witness(v, gamma, p)


def _triples(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        gamma = [random_formula(rng, 2, rng.randint(1, 5)) for _ in range(rng.randint(0, 3))]
        yield gamma, random_formula(rng, 2, rng.randint(1, 6)), random_formula(rng, 2, rng.randint(1, 6))


def test_local_implies_global():
    for gamma, p, _ in _triples(500, 11):
        if local_consequence(gamma, p).outcome is Outcome.ENTAILED:
            assert global_consequence(gamma, p).outcome is Outcome.ENTAILED


def test_strictness_witness():
    assert global_consequence([p0], Box(p0)).outcome is Outcome.ENTAILED
    assert local_consequence([p0], Box(p0)).outcome is Outcome.NOT_ENTAILED


def test_semantic_deduction():
    for gamma, p, q in _triples(500, 12):
        a = local_consequence(gamma + [p], q).outcome
        b = local_consequence(gamma, Impl(p, q)).outcome
        assert a is b


def _brute_global(gamma, p, max_worlds):
    """Entailed unless some bounded equivalence model makes every premise
    true everywhere and falsifies p somewhere."""
    atoms = sorted({a for f in gamma + [p] for a in _atoms(f)}) or [0]
    for n, rgs, ext in iter_equiv_frames(atoms, max_worlds):
        M = frame_model(n, rgs, ext, max(atoms) + 1)
        if all(true_in_model(M, g) for g in gamma) and not true_in_model(M, p):
            return Outcome.NOT_ENTAILED
    return Outcome.ENTAILED


def _atoms(f):
    from s5kit.formula import atoms

    return atoms(f)


def test_global_reduction_against_brute_force():
    # one atom: four worlds cover every valuation pattern, so the bounded
    # search is complete and the verdicts must coincide
    fs = list(formulas_up_to(4, 1))
    rng = random.Random(4)
    for _ in range(150):
        gamma = rng.sample(fs, rng.randint(0, 2))
        p = rng.choice(fs)
        assert global_consequence(gamma, p).outcome is _brute_global(gamma, p, 4), (gamma, p)


def test_global_refutations_are_real_two_atoms():
    rng = random.Random(6)
    for _ in range(100):
        gamma = [random_formula(rng, 2, rng.randint(1, 4)) for _ in range(rng.randint(0, 2))]
        p = random_formula(rng, 2, rng.randint(1, 5))
        if _brute_global(gamma, p, 2) is Outcome.NOT_ENTAILED:
            assert global_consequence(gamma, p).outcome is Outcome.NOT_ENTAILED


def test_oracles_agree_small():
    for p in formulas_up_to(5, 2):
        assert sat_universal([p]).outcome is sat_equiv_frames([p], 4).outcome


def test_determinism():
    gamma = [dia(p0), dia(p1), neg(Box(Impl(p0, p1)))]
    a, b = sat_universal(gamma), sat_universal(gamma)
    assert a.outcome is b.outcome and a.world == b.world
    assert a.witness.worlds == b.witness.worlds
    assert a.witness.valuation == b.witness.valuation


# -- soundness audit -----------------------------------------------------------


def test_audit_examples():
    assert audit_soundness(box_dne_tree(p0))
    lib = theorem_library()
    for name, d in lib.items():
        assert audit_soundness(d, lib), name
    assert audit_soundness(t(p0, {q0}))
