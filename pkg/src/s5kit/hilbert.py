"""Hilbert-style derivations for S5 and their checker.

Axiom schemes PL1-PL3, K, T, S4, B; rules MP and necessitation.  Under
``Mode.RESTRICTED`` necessitation only applies to theorems (its premise has the
empty context); ``Mode.UNRESTRICTED`` also allows premises carrying the node's
own context.  The deduction theorem holds for the restricted system and is
implemented as a transformation on derivation trees.

Contexts are frozensets, so exchange and contraction are invisible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .formula import BOT, Box, Formula, Impl, dia, neg

Context = frozenset
EMPTY: Context = frozenset()


def context(*formulas: Formula) -> Context:
    return frozenset(formulas)


class Mode(enum.Enum):
    RESTRICTED = "restricted"
    UNRESTRICTED = "unrestricted"


class Rule(str, enum.Enum):
    AX = "ax"
    PL1 = "pl1"
    PL2 = "pl2"
    PL3 = "pl3"
    K = "k"
    T = "t"
    S4 = "s4"
    B = "b"
    MP = "mp"
    NEC = "nec"
    THM = "thm"


AXIOM_ARITY = {Rule.PL1: 2, Rule.PL2: 3, Rule.PL3: 2, Rule.K: 2, Rule.T: 1, Rule.S4: 1, Rule.B: 1}


@dataclass(frozen=True)
class Judgment:
    context: Context
    conclusion: Formula

    def __str__(self) -> str:
        return f"{format_context(self.context)} ⊢ {self.conclusion}"


def format_context(ctx: Iterable[Formula]) -> str:
    from .formula import encode

    items = sorted(ctx, key=encode)
    return ", ".join(str(p) for p in items) if items else "·"


@dataclass(frozen=True, eq=False)
class Derivation:
    """A proof tree node with its claimed judgment.

    Nothing here is trusted until :func:`check` has accepted it.  ``args``
    holds schema instantiations for axiom nodes and the member formula for
    ``ax``; ``premises`` is ``(major, minor)`` for MP and ``(child,)`` for
    necessitation; ``name`` is the library key of a ``thm`` node.
    """

    rule: Rule
    context: Context
    conclusion: Formula
    args: tuple = ()
    premises: tuple = ()
    name: Optional[str] = None

    @property
    def judgment(self) -> Judgment:
        return Judgment(self.context, self.conclusion)

    def nodes(self):
        seen = set()
        stack = [self]
        while stack:
            d = stack.pop()
            if id(d) in seen:
                continue
            seen.add(id(d))
            yield d
            stack.extend(d.premises)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.premises), default=0)


class CheckError(Exception):
    def __init__(self, kind: str, message: str, node: Optional[Derivation] = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.node = node

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class ArityError(ValueError):
    pass


def instantiate_axiom(rule: Union[Rule, str], *args: Formula) -> Formula:
    rule = Rule(rule)
    if rule not in AXIOM_ARITY:
        raise ArityError(f"{rule.value} is not an axiom scheme")
    if len(args) != AXIOM_ARITY[rule]:
        raise ArityError(f"{rule.value} takes {AXIOM_ARITY[rule]} formulas, got {len(args)}")
    if rule is Rule.PL1:
        p, q = args
        return Impl(p, Impl(q, p))
    if rule is Rule.PL2:
        p, q, r = args
        return Impl(Impl(p, Impl(q, r)), Impl(Impl(p, q), Impl(p, r)))
    if rule is Rule.PL3:
        p, q = args
        return Impl(Impl(neg(p), neg(q)), Impl(Impl(neg(p), q), p))
    if rule is Rule.K:
        p, q = args
        return Impl(Box(Impl(p, q)), Impl(Box(p), Box(q)))
    if rule is Rule.T:
        (p,) = args
        return Impl(Box(p), p)
    if rule is Rule.S4:
        (p,) = args
        return Impl(Box(p), Box(Box(p)))
    (p,) = args
    return Impl(p, Box(dia(p)))


# -- schema matching (used when a proof script omits instantiations) ---------


@dataclass(frozen=True)
class _Meta(Formula):
    slot: int


def match_axiom(rule: Union[Rule, str], formula: Formula) -> Optional[tuple]:
    """One-pass structural match of ``formula`` against a scheme.

    Returns the instantiation arguments, or ``None`` when the shapes differ
    or a metavariable would need two different values.
    """
    rule = Rule(rule)
    template = instantiate_axiom(rule, *(_Meta(i) for i in range(AXIOM_ARITY[rule])))
    binding: dict[int, Formula] = {}
    if not _match(template, formula, binding):
        return None
    return tuple(binding[i] for i in range(AXIOM_ARITY[rule]))


def _match(t: Formula, f: Formula, binding: dict) -> bool:
    if isinstance(t, _Meta):
        bound = binding.get(t.slot)
        if bound is None:
            binding[t.slot] = f
            return True
        return bound == f
    if isinstance(t, Impl):
        return isinstance(f, Impl) and _match(t.lhs, f.lhs, binding) and _match(t.rhs, f.rhs, binding)
    if isinstance(t, Box):
        return isinstance(f, Box) and _match(t.body, f.body, binding)
    return t == f


# -- builders ----------------------------------------------------------------


def ax(p: Formula, ctx: Iterable[Formula]) -> Derivation:
    return Derivation(Rule.AX, frozenset(ctx), p, args=(p,))


def axiom(rule: Union[Rule, str], *args: Formula, ctx: Iterable[Formula] = EMPTY) -> Derivation:
    rule = Rule(rule)
    return Derivation(rule, frozenset(ctx), instantiate_axiom(rule, *args), args=tuple(args))


def pl1(p, q, ctx=EMPTY):
    return axiom(Rule.PL1, p, q, ctx=ctx)


def pl2(p, q, r, ctx=EMPTY):
    return axiom(Rule.PL2, p, q, r, ctx=ctx)


def pl3(p, q, ctx=EMPTY):
    return axiom(Rule.PL3, p, q, ctx=ctx)


def k(p, q, ctx=EMPTY):
    return axiom(Rule.K, p, q, ctx=ctx)


def t(p, ctx=EMPTY):
    return axiom(Rule.T, p, ctx=ctx)


def s4(p, ctx=EMPTY):
    return axiom(Rule.S4, p, ctx=ctx)


def b(p, ctx=EMPTY):
    return axiom(Rule.B, p, ctx=ctx)


def mp(major: Derivation, minor: Derivation) -> Derivation:
    if not isinstance(major.conclusion, Impl):
        raise ValueError(f"major premise is not an implication: {major.conclusion}")
    return Derivation(Rule.MP, major.context, major.conclusion.rhs, premises=(major, minor))


def nec(child: Derivation, ctx: Iterable[Formula] = EMPTY) -> Derivation:
    return Derivation(Rule.NEC, frozenset(ctx), Box(child.conclusion), premises=(child,))


def thm(name: str, conclusion: Formula, ctx: Iterable[Formula] = EMPTY) -> Derivation:
    return Derivation(Rule.THM, frozenset(ctx), conclusion, name=name)


def identity(p: Formula, ctx: Iterable[Formula] = EMPTY) -> Derivation:
    """``p -> p`` from PL1 and PL2 (the SKK combinator)."""
    ctx = frozenset(ctx)
    return mp(mp(pl2(p, Impl(p, p), p, ctx), pl1(p, Impl(p, p), ctx)), pl1(p, p, ctx))


# -- checking ----------------------------------------------------------------

Library = Mapping[str, Union[Derivation, Judgment]]


def check(
    d: Derivation,
    mode: Mode = Mode.RESTRICTED,
    library: Optional[Library] = None,
    done: Optional[dict] = None,
) -> Judgment:
    """Validate every node of ``d`` and return the root judgment.

    ``done`` may be shared between calls to skip subtrees already accepted
    under the same mode and library.
    """
    _check(d, Mode(mode), library or {}, {} if done is None else done)
    return d.judgment


def _check(d: Derivation, mode: Mode, library: Library, done: dict) -> None:
    if id(d) in done:
        return
    rule = d.rule
    if rule is Rule.AX:
        (member,) = d.args or (d.conclusion,)
        if member not in d.context:
            raise CheckError("membership", f"{member} is not in the context", d)
        if d.conclusion != member:
            raise CheckError("shape", f"ax claims {d.conclusion} but cites {member}", d)
    elif rule in AXIOM_ARITY:
        try:
            expected = instantiate_axiom(rule, *d.args)
        except ArityError as e:
            raise CheckError("arity", str(e), d) from None
        if expected != d.conclusion:
            raise CheckError(
                "schema", f"{rule.value} instance is {expected}, not {d.conclusion}", d
            )
    elif rule is Rule.MP:
        if len(d.premises) != 2:
            raise CheckError("shape", "mp needs exactly two premises", d)
        major, minor = d.premises
        _check(major, mode, library, done)
        _check(minor, mode, library, done)
        if major.context != d.context or minor.context != d.context:
            raise CheckError("context", "mp premises must share the conclusion's context", d)
        if major.conclusion != Impl(minor.conclusion, d.conclusion):
            raise CheckError(
                "shape",
                f"mp needs {Impl(minor.conclusion, d.conclusion)}, major proves {major.conclusion}",
                d,
            )
    elif rule is Rule.NEC:
        if len(d.premises) != 1:
            raise CheckError("shape", "nec needs exactly one premise", d)
        (child,) = d.premises
        _check(child, mode, library, done)
        if child.context:
            if mode is Mode.RESTRICTED:
                raise CheckError(
                    "side-condition",
                    "nec applies only to theorems (premise context must be empty)",
                    d,
                )
            if child.context != d.context:
                raise CheckError("context", "nec premise context must match the conclusion's", d)
        if d.conclusion != Box(child.conclusion):
            raise CheckError("shape", f"nec yields {Box(child.conclusion)}, not {d.conclusion}", d)
    elif rule is Rule.THM:
        entry = library.get(d.name)
        if entry is None:
            raise CheckError("theorem", f"unknown theorem {d.name!r}", d)
        if entry.context:
            raise CheckError("theorem", f"theorem {d.name!r} has a nonempty context", d)
        if entry.conclusion != d.conclusion:
            raise CheckError(
                "theorem", f"theorem {d.name!r} proves {entry.conclusion}, not {d.conclusion}", d
            )
    else:
        raise CheckError("shape", f"unknown rule {rule!r}", d)
    done[id(d)] = d.judgment


# -- transformers --------------------------------------------------------------


def weaken(d: Derivation, delta: Iterable[Formula]) -> Derivation:
    delta = frozenset(delta)
    if not d.context <= delta:
        missing = ", ".join(str(p) for p in d.context - delta)
        raise ValueError(f"target context is missing {missing}")
    return _weaken(d, d.context, delta, {})


def _weaken(d: Derivation, old: Context, new: Context, memo: dict) -> Derivation:
    if id(d) in memo:
        return memo[id(d)]
    if d.context != old:
        out = d
    else:
        premises = d.premises
        if d.rule is not Rule.NEC or d.premises[0].context:
            # a theorem under necessitation keeps its empty context
            premises = tuple(_weaken(c, old, new, memo) for c in d.premises)
        out = Derivation(d.rule, new, d.conclusion, d.args, premises, d.name)
    memo[id(d)] = out
    return out


def deduction(d: Derivation, p: Formula, library: Optional[Library] = None) -> Derivation:
    """Turn a proof of ``q`` from ``G + {p}`` into a proof of ``p -> q`` from
    ``G - {p}``."""
    check(d, Mode.RESTRICTED, library)
    gamma = d.context - {p}
    return _discharge(d, p, d.context, gamma, {})


def _discharge(d: Derivation, p: Formula, old: Context, gamma: Context, memo: dict) -> Derivation:
    if id(d) in memo:
        return memo[id(d)]
    q = d.conclusion
    if d.rule is Rule.AX and q == p:
        out = identity(p, gamma)
    elif d.rule is Rule.MP:
        major, minor = d.premises
        a = minor.conclusion
        dm = _discharge(major, p, old, gamma, memo)
        dn = _discharge(minor, p, old, gamma, memo)
        out = mp(mp(pl2(p, a, q, gamma), dm), dn)
    else:
        # ax member of gamma, axiom instance, theorem import, or necessitation
        leaf = Derivation(d.rule, gamma, q, d.args, d.premises, d.name)
        out = mp(pl1(q, p, gamma), leaf)
    memo[id(d)] = out
    return out
