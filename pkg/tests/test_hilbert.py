import random

import pytest

from s5kit.formula import BOT, Atom, Box, Impl, dia, neg
from s5kit.hilbert import (
    AXIOM_ARITY,
    EMPTY,
    ArityError,
    CheckError,
    Derivation,
    Judgment,
    Mode,
    Rule,
    ax,
    b,
    check,
    context,
    deduction,
    identity,
    instantiate_axiom,
    k,
    match_axiom,
    mp,
    nec,
    pl1,
    pl2,
    t,
    thm,
    weaken,
)
from s5kit.lemmas import EXPECTED_CONCLUSIONS, box_dne_tree, dni, script_library, theorem_library
from s5kit.randgen import random_context, random_derivation, random_formula

p, q, r = Atom(0), Atom(1), Atom(2)
R, U = Mode.RESTRICTED, Mode.UNRESTRICTED


def _kind(d, mode=R, library=None):
    with pytest.raises(CheckError) as e:
        check(d, mode, library)
    return e.value.kind


# -- schemas ----------------------------------------------------------------------


def test_instantiate_examples():
    assert instantiate_axiom(Rule.T, p) == Impl(Box(p), p)
    assert instantiate_axiom("b", p) == Impl(p, Box(dia(p)))
    assert instantiate_axiom(Rule.PL1, BOT, BOT) == Impl(BOT, Impl(BOT, BOT))
    assert instantiate_axiom(Rule.PL3, p, q) == Impl(Impl(neg(p), neg(q)), Impl(Impl(neg(p), q), p))
    assert instantiate_axiom(Rule.K, p, q) == Impl(Box(Impl(p, q)), Impl(Box(p), Box(q)))
    assert instantiate_axiom(Rule.S4, p) == Impl(Box(p), Box(Box(p)))
    with pytest.raises(ArityError):
        instantiate_axiom(Rule.T, p, q)
    with pytest.raises(ArityError):
        instantiate_axiom(Rule.MP, p)


@pytest.mark.parametrize("rule", [Rule.PL1, Rule.PL2, Rule.PL3, Rule.K, Rule.T, Rule.S4, Rule.B])
def test_match_inverts_instantiate(rule):
    rng = random.Random(rule.value)
    for _ in range(50):
        args = tuple(random_formula(rng, 3, rng.randint(1, 5)) for _ in range(AXIOM_ARITY[rule]))
        assert match_axiom(rule, instantiate_axiom(rule, *args)) == args
    assert match_axiom(rule, p) is None


# -- checking --------------------------------------------------------------------


def test_check_box_dne_tree():
    d = mp(k(p, neg(neg(p))), nec(dni(p)))
    j = check(d, R)
    assert j == Judgment(EMPTY, Impl(Box(p), Box(neg(neg(p)))))
    assert str(j) == "· ⊢ box p0 -> box ~~p0"


def test_nec_under_assumption_is_mode_dependent():
    ctx = context(p)
    d = nec(ax(p, ctx), ctx)
    assert _kind(d, R) == "side-condition"
    assert check(d, U) == Judgment(ctx, Box(p))


def test_unrestricted_nec_context_must_match():
    d = nec(ax(p, context(p)), context(p, q))
    assert _kind(d, U) == "context"


def test_ax_membership():
    assert check(ax(p, context(p)), R) == Judgment(context(p), p)
    assert _kind(ax(q, context(p))) == "membership"


def test_bad_instances_and_mp():
    forged = Derivation(Rule.T, EMPTY, Impl(Box(p), q), args=(p,))
    assert _kind(forged) == "schema"
    wrong_minor = mp(t(p), ax(p, context(p)))
    assert _kind(wrong_minor) == "context"
    ctx = context(p)
    mismatched = mp(t(p, ctx), ax(p, ctx))
    assert _kind(mismatched) == "shape"
    assert _kind(Derivation(Rule.PL1, EMPTY, Impl(p, Impl(q, p)), args=(p,))) == "arity"


def test_thm_requires_library_entry():
    lib = {"id": identity(p)}
    assert check(thm("id", Impl(p, p), context(q)), R, lib) == Judgment(context(q), Impl(p, p))
    assert _kind(thm("nope", p), R, lib) == "theorem"
    assert _kind(thm("id", Impl(q, q)), R, lib) == "theorem"
    assert _kind(thm("ctx", p), R, {"ctx": ax(p, context(p))}) == "theorem"


def test_library_entries():
    lib = theorem_library()
    for name, d in lib.items():
        j = check(d, R)
        assert j.context == EMPTY
        assert j.conclusion == EXPECTED_CONCLUSIONS[name](p), name
    assert lib["box_dne_tree"].rule is Rule.MP
    assert lib["box_dne_tree"].premises[1].rule is Rule.NEC


def test_script_library_checks_with_imports():
    lib = {}
    for name, d in script_library():
        lib[name] = check(d, R, lib)
    assert lib["dia_box_to_p"].conclusion == Impl(dia(Box(p)), p)
    assert any(n.rule is Rule.THM for _, d in script_library() for n in d.nodes())


# -- transformers ----------------------------------------------------------------


def test_deduction_ax_of_p_gives_identity():
    d = deduction(ax(p, context(p)), p)
    assert check(d, R) == Judgment(EMPTY, Impl(p, p))
    # MP(MP(PL2(p, p->p, p), PL1(p, p->p)), PL1(p, p))
    outer_major, outer_minor = d.premises
    assert outer_minor.rule is Rule.PL1 and outer_minor.args == (p, p)
    inner_major, inner_minor = outer_major.premises
    assert inner_major.rule is Rule.PL2 and inner_major.args == (p, Impl(p, p), p)
    assert inner_minor.rule is Rule.PL1 and inner_minor.args == (p, Impl(p, p))


def test_deduction_axiom_leaf():
    d = deduction(pl1(q, r, context(p)), p)
    assert check(d, R) == Judgment(EMPTY, Impl(p, Impl(q, Impl(r, q))))
    assert d.rule is Rule.MP and d.premises[0].rule is Rule.PL1


def test_deduction_nec_leaf():
    ctx = context(p)
    d = deduction(nec(identity(q), ctx), p)
    assert check(d, R) == Judgment(EMPTY, Impl(p, Box(Impl(q, q))))
    assert d.premises[1].rule is Rule.NEC


def test_deduction_keeps_other_members():
    ctx = context(p, Impl(p, q))
    d = mp(ax(Impl(p, q), ctx), ax(p, ctx))
    e = deduction(d, p)
    assert check(e, R) == Judgment(context(Impl(p, q)), Impl(p, q))
    e2 = deduction(e, Impl(p, q))
    assert check(e2, R) == Judgment(EMPTY, Impl(Impl(p, q), Impl(p, q)))


def test_deduction_fuzz_small():
    rng = random.Random(9)
    lib = theorem_library()
    for _ in range(200):
        ctx = random_context(rng, 2)
        d = random_derivation(rng, ctx, 4, 2, lib)
        for h in sorted(d.context, key=repr):
            j = check(deduction(d, h, lib), R, lib)
            assert j == Judgment(d.context - {h}, Impl(h, d.conclusion))


def test_weaken_examples():
    assert check(weaken(ax(p, context(p)), context(p, q)), R) == Judgment(context(p, q), p)
    assert check(weaken(t(p), context(q)), R) == Judgment(context(q), Impl(Box(p), p))
    w = weaken(box_dne_tree(p), context(p))
    assert check(w, R) == Judgment(context(p), Impl(Box(p), Box(neg(neg(p)))))
    nec_node = w.premises[1]
    assert nec_node.rule is Rule.NEC and nec_node.context == context(p)
    assert nec_node.premises[0].context == EMPTY
    with pytest.raises(ValueError):
        weaken(ax(p, context(p)), context(q))


def test_contraction_and_exchange_unobservable():
    a = context(p, q, p, q, q)
    c = frozenset([q, p])
    assert a == c
    d1 = mp(ax(Impl(p, q), context(p, Impl(p, q))), ax(p, context(Impl(p, q), p, p)))
    assert check(d1, R) == Judgment(context(Impl(p, q), p), q)


def test_thm_import_equals_weakening():
    lib = theorem_library()
    rng = random.Random(2)
    for _ in range(100):
        ctx = random_context(rng, 2)
        name = rng.choice(sorted(lib))
        imported = thm(name, lib[name].conclusion, ctx)
        inlined = weaken(lib[name], ctx)
        assert check(imported, R, lib) == check(inlined, R)


def test_judgment_rendering():
    assert str(Judgment(EMPTY, Impl(p, p))) == "· ⊢ p0 -> p0"
    assert str(Judgment(context(q, p), Box(p))) == "p0, p1 ⊢ box p0"


def test_b_axiom_leaf_in_context():
    assert check(b(p, context(q)), R).context == context(q)
    assert check(pl2(p, q, r), R).conclusion.lhs == Impl(p, Impl(q, r))
