"""Seeded random formulas and accepted derivations for fuzzing."""

from __future__ import annotations

import random
from typing import Optional

from .formula import BOT, Atom, Box, Formula, Impl, is_neg
from .hilbert import EMPTY, Derivation, ax, b, k, mp, nec, pl1, pl2, pl3, s4, t, thm


def random_formula(rng: random.Random, sigma: int, size: int) -> Formula:
    """Uniform-ish random formula with exactly ``size`` nodes."""
    if size <= 1:
        i = rng.randrange(sigma + 1)
        return BOT if i == sigma else Atom(i)
    if size == 2 or rng.random() < 0.3:
        return Box(random_formula(rng, sigma, size - 1))
    left = rng.randrange(1, size - 1)
    return Impl(random_formula(rng, sigma, left), random_formula(rng, sigma, size - 1 - left))


def random_context(rng: random.Random, sigma: int, max_members: int = 3, max_size: int = 3) -> frozenset:
    n = rng.randrange(max_members + 1)
    return frozenset(random_formula(rng, sigma, rng.randint(1, max_size)) for _ in range(n))


def random_derivation(
    rng: random.Random,
    ctx: frozenset,
    depth: int,
    sigma: int = 2,
    library: Optional[dict] = None,
) -> Derivation:
    """A derivation of depth at most ``depth`` that restricted checking accepts.

    Built bottom-up so every MP and necessitation step is well formed: the
    minor premise comes first and the major premise is chosen among the
    axiom instances, context members and library theorems whose antecedent
    is the minor's conclusion.
    """
    if depth <= 1 or rng.random() < 0.25:
        return _leaf(rng, ctx, sigma, library)
    if rng.random() < 0.2:
        return nec(random_derivation(rng, EMPTY, depth - 1, sigma, library), ctx)
    minor = random_derivation(rng, ctx, depth - 1, sigma, library)
    return mp(_major(rng, minor.conclusion, ctx, sigma, library), minor)


def _small(rng, sigma):
    return random_formula(rng, sigma, rng.randint(1, 3))


def _leaf(rng, ctx, sigma, library) -> Derivation:
    choices = ["pl1", "pl2", "pl3", "k", "t", "s4", "b"]
    if ctx:
        choices += ["ax"] * 3
    if library:
        choices.append("thm")
    c = rng.choice(choices)
    if c == "ax":
        return ax(rng.choice(sorted(ctx, key=repr)), ctx)
    if c == "thm":
        name = rng.choice(sorted(library))
        return thm(name, library[name].conclusion, ctx)
    f = lambda: _small(rng, sigma)  # noqa: E731
    return {
        "pl1": lambda: pl1(f(), f(), ctx),
        "pl2": lambda: pl2(f(), f(), f(), ctx),
        "pl3": lambda: pl3(f(), f(), ctx),
        "k": lambda: k(f(), f(), ctx),
        "t": lambda: t(f(), ctx),
        "s4": lambda: s4(f(), ctx),
        "b": lambda: b(f(), ctx),
    }[c]()


def _major(rng, a: Formula, ctx, sigma, library) -> Derivation:
    """A leaf proving ``a -> c`` for some ``c``."""
    options = [lambda: pl1(a, _small(rng, sigma), ctx), lambda: b(a, ctx)]
    if isinstance(a, Box):
        options += [lambda: t(a.body, ctx), lambda: s4(a.body, ctx)]
        if isinstance(a.body, Impl):
            options.append(lambda: k(a.body.lhs, a.body.rhs, ctx))
    if isinstance(a, Impl) and isinstance(a.rhs, Impl):
        options.append(lambda: pl2(a.lhs, a.rhs.lhs, a.rhs.rhs, ctx))
    if isinstance(a, Impl) and is_neg(a.lhs) and is_neg(a.rhs):
        options.append(lambda: pl3(a.lhs.lhs, a.rhs.lhs, ctx))
    for m in sorted(ctx, key=repr):
        if isinstance(m, Impl) and m.lhs == a:
            options.append(lambda m=m: ax(m, ctx))
    for name in sorted(library or {}):
        concl = library[name].conclusion
        if isinstance(concl, Impl) and concl.lhs == a:
            options.append(lambda name=name, concl=concl: thm(name, concl, ctx))
    return rng.choice(options)()
