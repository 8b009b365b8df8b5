"""A small library of checked S5 theorems and the combinators that build them.

Most proofs are written in a context and then discharged with
:func:`~s5kit.hilbert.deduction`, which is how one would do it by hand.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .formula import BOT, Atom, Box, Formula, Impl, dia, neg
from .hilbert import (
    EMPTY,
    Derivation,
    Mode,
    ax,
    b,
    check,
    deduction,
    identity,
    k,
    mp,
    nec,
    pl1,
    pl3,
    s4,
    t,
    thm,
    weaken,
)


def hs(ab: Derivation, bc: Derivation, library=None) -> Derivation:
    """From theorems ``a -> b`` and ``b -> c`` derive ``a -> c``."""
    a = ab.conclusion.lhs
    ctx = frozenset([a])
    body = mp(weaken(bc, ctx), mp(weaken(ab, ctx), ax(a, ctx)))
    return deduction(body, a, library)


def contrapose(ab: Derivation, library=None) -> Derivation:
    """From theorem ``a -> b`` derive ``~b -> ~a``."""
    a, bb = ab.conclusion.lhs, ab.conclusion.rhs
    ctx = frozenset([neg(bb), a])
    bot = mp(ax(neg(bb), ctx), mp(weaken(ab, ctx), ax(a, ctx)))
    return deduction(deduction(bot, a, library), neg(bb), library)


def box_mono(ab: Derivation) -> Derivation:
    """From theorem ``a -> b`` derive ``box a -> box b`` (K after necessitation)."""
    a, bb = ab.conclusion.lhs, ab.conclusion.rhs
    return mp(k(a, bb), nec(ab))


def dni(p: Formula) -> Derivation:
    """``p -> ~~p``"""
    ctx = frozenset([p, neg(p)])
    bot = mp(ax(neg(p), ctx), ax(p, ctx))
    return deduction(deduction(bot, neg(p)), p)


def dne(p: Formula) -> Derivation:
    """``~~p -> p`` via PL3 with ``q = false``."""
    nnp = neg(neg(p))
    ctx = frozenset([nnp])
    not_bot = mp(pl1(neg(BOT), neg(p), ctx), identity(BOT, ctx))  # ~p -> ~false
    body = mp(mp(pl3(p, BOT, ctx), not_bot), ax(nnp, ctx))
    return deduction(body, nnp)


def efq(p: Formula) -> Derivation:
    """``false -> p``"""
    ctx = frozenset([BOT])
    nnp = mp(pl1(BOT, neg(p), ctx), ax(BOT, ctx))
    return deduction(mp(weaken(dne(p), ctx), nnp), BOT)


def box_dne_tree(p: Formula) -> Derivation:
    """``box p -> box ~~p``: K applied to the necessitated ``p -> ~~p``."""
    return mp(k(p, neg(neg(p))), nec(dni(p)))


def box_dne_stmt(p: Formula) -> Derivation:
    """``box ~~p -> box p``"""
    return mp(k(neg(neg(p)), p), nec(dne(p)))


def dia_box_to_p(p: Formula) -> Derivation:
    """``dia box p -> p``.

    B at ``~p`` gives ``~p -> box dia ~p``; ``dia ~p`` implies ``~box p`` by
    contraposing ``box p -> box ~~p``, so boxing that gives
    ``~p -> box ~box p``, whose contrapositive ends in ``~~p``.
    """
    np = neg(p)
    step = box_mono(contrapose(box_dne_tree(p)))  # box dia ~p -> box ~box p
    chain = hs(b(np), step)  # ~p -> box ~box p
    return hs(contrapose(chain), dne(p))


@lru_cache(maxsize=None)
def theorem_library(sigma_atom: int = 0) -> Mapping[str, Derivation]:
    """Named empty-context theorems about the atom ``p<sigma_atom>``.

    Every entry is checked with restricted necessitation before it is
    returned.
    """
    p = Atom(sigma_atom)
    lib = {
        "id": identity(p),
        "dni": dni(p),
        "dne": dne(p),
        "efq": efq(p),
        "box_dne_tree": box_dne_tree(p),
        "box_dne_stmt": box_dne_stmt(p),
        "dia_box_to_p": dia_box_to_p(p),
    }
    for name, d in lib.items():
        j = check(d, Mode.RESTRICTED)
        assert not j.context, name
    return dict(lib)


EXPECTED_CONCLUSIONS = {
    "id": lambda p: Impl(p, p),
    "dni": lambda p: Impl(p, neg(neg(p))),
    "dne": lambda p: Impl(neg(neg(p)), p),
    "efq": lambda p: Impl(BOT, p),
    "box_dne_tree": lambda p: Impl(Box(p), Box(neg(neg(p)))),
    "box_dne_stmt": lambda p: Impl(Box(neg(neg(p))), Box(p)),
    "dia_box_to_p": lambda p: Impl(dia(Box(p)), p),
}


def script_library(p: Formula = Atom(0)) -> list[tuple[str, Derivation]]:
    """Theorem blocks for the shipped proof script.

    Later blocks import earlier ones with ``thm`` instead of inlining them,
    which keeps ``dia_box_to_p`` short enough to read.
    """
    lib: dict = {}
    blocks: list[tuple[str, Derivation]] = []

    def add(name: str, d: Derivation) -> None:
        lib[name] = check(d, Mode.RESTRICTED, lib)
        blocks.append((name, d))

    def ref(name: str, ctx=EMPTY) -> Derivation:
        return thm(name, lib[name].conclusion, ctx)

    np = neg(p)
    add("id", identity(p))
    add("dni", dni(p))
    add("dne", dne(p))
    bot_ctx = frozenset([BOT])
    add("efq", deduction(mp(ref("dne", bot_ctx), mp(pl1(BOT, np, bot_ctx), ax(BOT, bot_ctx))), BOT, lib))
    add("box_dne_tree", box_mono(ref("dni")))
    add("box_dne_stmt", box_mono(ref("dne")))
    add("contra_box_dne", contrapose(ref("box_dne_tree"), lib))
    add("box_contra_box_dne", box_mono(ref("contra_box_dne")))
    add("b_chain", hs(b(np), ref("box_contra_box_dne"), lib))
    add("dia_box_to_p", hs(contrapose(ref("b_chain"), lib), ref("dne"), lib))
    add("t_instance", t(p))
    add("s4_instance", s4(p))
    q = Atom(1)
    ctx = frozenset([p, Impl(p, q)])
    add("mp_in_context", mp(ax(Impl(p, q), ctx), ax(p, ctx)))
    ctx = frozenset([Box(Impl(p, q)), Box(p)])
    add("k_in_context", mp(mp(k(p, q, ctx), ax(Box(Impl(p, q)), ctx)), ax(Box(p), ctx)))
    return blocks
