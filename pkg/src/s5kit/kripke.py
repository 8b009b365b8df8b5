"""Finite Kripke models over equivalence frames and the forcing relation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Union

from .formula import Atom, Bot, Box, Formula, Impl, atoms_of

World = Hashable


class _Universal:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNIVERSAL"

    def __reduce__(self):
        return (_Universal, ())


UNIVERSAL = _Universal()

Relation = Union[_Universal, frozenset]


class FrameError(ValueError):
    """Raised by :func:`validate_frame`; ``violations`` lists every failure."""

    def __init__(self, violations: list[tuple]):
        self.violations = violations
        lines = [f"{kind}: {wit}" for kind, wit in violations]
        super().__init__("invalid S5 frame: " + "; ".join(lines))


class UnknownWorld(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """Validated model.  Build through :func:`validate_frame`.

    ``valuation`` maps an atom index to the set of worlds where it is true;
    unmapped pairs are false.
    """

    worlds: tuple
    access: Relation
    valuation: Mapping[int, frozenset]
    sigma: int
    _succ: dict = field(repr=False)

    def successors(self, w: World) -> tuple:
        try:
            return self._succ[w]
        except KeyError:
            raise UnknownWorld(w) from None

    def accessible(self, w: World, v: World) -> bool:
        return v in self._succ_sets[w]

    @property
    def _succ_sets(self) -> dict:
        cached = self.__dict__.get("_sets")
        if cached is None:
            cached = {w: frozenset(vs) for w, vs in self._succ.items()}
            object.__setattr__(self, "_sets", cached)
        return cached

    def true_atoms(self, w: World) -> list[int]:
        return sorted(i for i, ws in self.valuation.items() if w in ws)

    def classes(self) -> list[tuple]:
        """Equivalence classes, each in world order, ordered by first member."""
        seen: set = set()
        out = []
        for w in self.worlds:
            if w in seen:
                continue
            cls = tuple(v for v in self.worlds if v in self._succ_sets[w])
            seen.update(cls)
            out.append(cls)
        return out

    def pairs(self) -> list[tuple]:
        return [(w, v) for w in self.worlds for v in self._succ[w]]


def validate_frame(
    worlds: Iterable[World],
    access: Union[_Universal, Iterable[tuple]],
    valuation: Optional[Mapping[int, Iterable[World]]] = None,
    sigma: Optional[int] = None,
) -> KripkeModel:
    """Check an equivalence frame and return the model, or raise FrameError.

    Every violated condition is reported, each with a witness pair or triple.
    """
    worlds = tuple(worlds)
    violations: list[tuple] = []
    if not worlds:
        violations.append(("empty", ()))
    if len(set(worlds)) != len(worlds):
        violations.append(("duplicate-world", tuple(w for w in worlds if worlds.count(w) > 1)))
    wset = set(worlds)

    if access is UNIVERSAL:
        succ = {w: worlds for w in worlds}
    else:
        pairs = frozenset(tuple(p) for p in access)
        for (a, b) in sorted(pairs, key=repr):
            if a not in wset or b not in wset:
                violations.append(("outside", (a, b)))
        pairs = frozenset((a, b) for (a, b) in pairs if a in wset and b in wset)
        for w in worlds:
            if (w, w) not in pairs:
                violations.append(("reflexivity", (w, w)))
        for (a, b) in sorted(pairs, key=repr):
            if (b, a) not in pairs:
                violations.append(("symmetry", (a, b)))
        for (a, b) in sorted(pairs, key=repr):
            for c in worlds:
                if (b, c) in pairs and (a, c) not in pairs:
                    violations.append(("transitivity", (a, b, c)))
        succ = {w: tuple(v for v in worlds if (w, v) in pairs) for w in worlds}

    val: dict[int, frozenset] = {}
    for atom, ws in (valuation or {}).items():
        ws = frozenset(ws)
        stray = ws - wset
        if stray:
            violations.append(("valuation-outside", (atom, tuple(sorted(stray, key=repr)))))
        if ws & wset:
            val[int(atom)] = ws & wset
    if sigma is None:
        sigma = max(val) + 1 if val else 1
    elif val and max(val) >= sigma:
        violations.append(("valuation-atom-range", (max(val), sigma)))

    if violations:
        raise FrameError(violations)
    rel: Relation = UNIVERSAL if access is UNIVERSAL else frozenset(
        (w, v) for w in worlds for v in succ[w]
    )
    return KripkeModel(worlds=worlds, access=rel, valuation=val, sigma=sigma, _succ=succ)


def forces_form(M: KripkeModel, w: World, p: Formula) -> bool:
    if w not in M._succ:
        raise UnknownWorld(w)
    return _forces(M, w, p)


def _forces(M: KripkeModel, w: World, p: Formula) -> bool:
    if isinstance(p, Atom):
        return w in M.valuation.get(p.index, ())
    if isinstance(p, Bot):
        return False
    if isinstance(p, Impl):
        return (not _forces(M, w, p.lhs)) or _forces(M, w, p.rhs)
    if isinstance(p, Box):
        return all(_forces(M, v, p.body) for v in M._succ[w])
    raise TypeError(f"not a formula: {p!r}")


def forces_ctx(M: KripkeModel, gamma: Iterable[Formula], w: World) -> bool:
    if w not in M._succ:
        raise UnknownWorld(w)
    return all(_forces(M, w, p) for p in gamma)


def true_in_model(M: KripkeModel, p: Formula) -> bool:
    return all(_forces(M, w, p) for w in M.worlds)


def universal_model(valuations: Iterable[Mapping[int, bool]], sigma: Optional[int] = None) -> KripkeModel:
    """Worlds ``0..n-1``, total access, world ``i`` carries ``valuations[i]``."""
    valuations = list(valuations)
    val: dict[int, set] = {}
    for i, v in enumerate(valuations):
        for atom, truth in v.items():
            if truth:
                val.setdefault(atom, set()).add(i)
    return validate_frame(range(len(valuations)), UNIVERSAL, val, sigma)


def model_sigma(M: KripkeModel, formulas: Iterable[Formula] = ()) -> int:
    used = atoms_of(formulas)
    return max([M.sigma] + [i + 1 for i in used])
