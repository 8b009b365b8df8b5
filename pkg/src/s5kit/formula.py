"""Modal formulas over a finite atom signature.

Four constructors only: ``Atom``, ``Bot``, ``Impl`` and ``Box``.  Negation and
possibility are macros (``neg``/``dia``) that build ordinary trees, so there is
exactly one representation for every formula.

The module also carries the subformula closure used by the canonical model
construction and a Goedel numbering (tag mod 4 plus Cantor pairing) that fixes
the enumeration order of the Lindenbaum extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import pretty

        return pretty(self)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"atom index must be non-negative, got {self.index}")

    def __repr__(self) -> str:
        return f"Atom({self.index})"


@dataclass(frozen=True, eq=True)
class Bot(Formula):
    def __repr__(self) -> str:
        return "Bot"


@dataclass(frozen=True, eq=True)
class Impl(Formula):
    lhs: Formula
    rhs: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("impl", self.lhs, self.rhs)))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Impl({self.lhs!r}, {self.rhs!r})"


@dataclass(frozen=True, eq=True)
class Box(Formula):
    body: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("box", self.body)))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Box({self.body!r})"


BOT = Bot()


def neg(p: Formula) -> Impl:
    return Impl(p, BOT)


def dia(p: Formula) -> Impl:
    return Impl(Box(Impl(p, BOT)), BOT)


def is_neg(p: Formula) -> bool:
    return isinstance(p, Impl) and p.rhs == BOT


def is_dia(p: Formula) -> bool:
    """True for trees of the shape ``~box ~q``."""
    return (
        is_neg(p)
        and isinstance(p.lhs, Box)
        and is_neg(p.lhs.body)
    )


def size(p: Formula) -> int:
    if isinstance(p, Impl):
        return 1 + size(p.lhs) + size(p.rhs)
    if isinstance(p, Box):
        return 1 + size(p.body)
    return 1


def atoms(p: Formula) -> frozenset[int]:
    if isinstance(p, Atom):
        return frozenset((p.index,))
    if isinstance(p, Impl):
        return atoms(p.lhs) | atoms(p.rhs)
    if isinstance(p, Box):
        return atoms(p.body)
    return frozenset()


def atoms_of(formulas: Iterable[Formula]) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for p in formulas:
        out |= atoms(p)
    return out


def required_sigma(formulas: Iterable[Formula]) -> int:
    """Smallest signature size able to host every atom used (at least 1)."""
    used = atoms_of(formulas)
    return max(used) + 1 if used else 1


def subformulas(p: Formula) -> frozenset[Formula]:
    out: set[Formula] = set()
    stack = [p]
    while stack:
        q = stack.pop()
        if q in out:
            continue
        out.add(q)
        if isinstance(q, Impl):
            stack.append(q.lhs)
            stack.append(q.rhs)
        elif isinstance(q, Box):
            stack.append(q.body)
    return frozenset(out)


# -- Goedel numbering -------------------------------------------------------


def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    w = (math.isqrt(8 * n + 1) - 1) // 2
    t = w * (w + 1) // 2
    b = n - t
    return w - b, b


def encode(p: Formula) -> int:
    if isinstance(p, Bot):
        return 0
    if isinstance(p, Atom):
        return 4 * p.index + 1
    if isinstance(p, Impl):
        return 4 * pair(encode(p.lhs), encode(p.rhs)) + 2
    if isinstance(p, Box):
        return 4 * encode(p.body) + 3
    raise TypeError(f"not a formula: {p!r}")


def decode(n: int, sigma: Optional[int] = None) -> Optional[Formula]:
    """Partial inverse of :func:`encode`; ``None`` outside the image.

    With ``sigma`` given, atoms with index ``>= sigma`` are outside the image
    as well (the language over that signature has no such formulas).
    """
    if n < 0:
        return None
    if n == 0:
        return BOT
    tag, rest = n % 4, n // 4
    if tag == 0:
        return None
    if tag == 1:
        if sigma is not None and rest >= sigma:
            return None
        return Atom(rest)
    if tag == 2:
        a, b = unpair(rest)
        lhs = decode(a, sigma)
        if lhs is None:
            return None
        rhs = decode(b, sigma)
        if rhs is None:
            return None
        return Impl(lhs, rhs)
    body = decode(rest, sigma)
    return None if body is None else Box(body)


# -- closure ----------------------------------------------------------------


@dataclass(frozen=True)
class ClosureSet:
    """Subformula-closed ``base`` plus single negations of its members.

    Both tuples are sorted by Goedel code and duplicate-free.
    """

    base: tuple[Formula, ...]
    members: tuple[Formula, ...]
    sigma: int

    def __contains__(self, p: object) -> bool:
        return p in self._member_set

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def _member_set(self) -> frozenset[Formula]:
        cached = self.__dict__.get("_mset")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_mset", cached)
        return cached

    def in_base(self, p: Formula) -> bool:
        cached = self.__dict__.get("_bset")
        if cached is None:
            cached = frozenset(self.base)
            object.__setattr__(self, "_bset", cached)
        return p in cached

    def index(self, p: Formula) -> int:
        cached = self.__dict__.get("_idx")
        if cached is None:
            cached = {q: i for i, q in enumerate(self.members)}
            object.__setattr__(self, "_idx", cached)
        return cached[p]

    def boxed_base(self) -> tuple[Box, ...]:
        return tuple(p for p in self.base if isinstance(p, Box))

    def atoms(self) -> frozenset[int]:
        return atoms_of(self.base)


def closure(gamma: Iterable[Formula], sigma: Optional[int] = None) -> ClosureSet:
    gamma = list(gamma)
    base: set[Formula] = {BOT}
    for p in gamma:
        base |= subformulas(p)
    members = base | {neg(q) for q in base}
    if sigma is None:
        sigma = required_sigma(base)
    return ClosureSet(
        base=tuple(sorted(base, key=encode)),
        members=tuple(sorted(members, key=encode)),
        sigma=sigma,
    )


# -- enumeration ------------------------------------------------------------


def formulas_of_size(n: int, sigma: int) -> Iterator[Formula]:
    """Every formula with exactly ``n`` nodes over atoms ``0..sigma-1``."""
    yield from _by_size(sigma, n)


def formulas_up_to(max_size: int, sigma: int) -> Iterator[Formula]:
    for n in range(1, max_size + 1):
        yield from _by_size(sigma, n)


_SIZE_CACHE: dict[tuple[int, int], tuple[Formula, ...]] = {}


def _by_size(sigma: int, n: int) -> tuple[Formula, ...]:
    key = (sigma, n)
    if key in _SIZE_CACHE:
        return _SIZE_CACHE[key]
    out: list[Formula] = []
    if n == 1:
        out.append(BOT)
        out.extend(Atom(i) for i in range(sigma))
    elif n >= 2:
        out.extend(Box(p) for p in _by_size(sigma, n - 1))
        for k in range(1, n - 1):
            for a in _by_size(sigma, k):
                for b in _by_size(sigma, n - 1 - k):
                    out.append(Impl(a, b))
    result = tuple(out)
    _SIZE_CACHE[key] = result
    return result
