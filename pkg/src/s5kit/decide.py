"""Exhaustive S5 decision procedures.

``sat_universal`` is the workhorse.  On a universal frame the truth of a
formula at a world depends only on that world's valuation and on the set of
valuations present, so worlds with equal valuations can be merged and the
search runs over nonempty subsets of the ``2**k`` valuations of the ``k``
occurring atoms.  ``sat_equiv_frames`` searches every equivalence-frame model
up to a small size and serves as its independent cross-check.

Both evaluate formulas as bitmasks over the worlds of one candidate model.
Witnesses are the first hit in a fixed order, so results are reproducible.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .formula import Atom, Bot, Box, Formula, Impl, atoms_of, neg, required_sigma
from .kripke import UNIVERSAL, KripkeModel, validate_frame

DEFAULT_ATOM_BUDGET = 4
MAX_FRAME_WORLDS = 4


class BudgetExceeded(ValueError):
    pass


class Outcome(enum.Enum):
    SAT = "Sat"
    UNSAT = "Unsat"
    VALID = "Valid"
    INVALID = "Invalid"
    ENTAILED = "Entailed"
    NOT_ENTAILED = "NotEntailed"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Outcome of a query plus, for Sat/Invalid/NotEntailed, a witness.

    For Sat the witness satisfies the queried set at ``world``; for the
    refutations it forces the premises and falsifies the conclusion there.
    """

    outcome: Outcome
    witness: Optional[KripkeModel] = None
    world: Optional[int] = None

    def __bool__(self) -> bool:
        return self.outcome in (Outcome.SAT, Outcome.VALID, Outcome.ENTAILED)


def _dedup(formulas: Iterable[Formula]) -> list[Formula]:
    seen: set = set()
    out = []
    for p in formulas:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _check_budget(atoms: list[int], budget: int) -> None:
    if len(atoms) > budget:
        raise BudgetExceeded(
            f"{len(atoms)} distinct atoms exceed the atom budget of {budget}"
        )


def _ext(p: Formula, atom_ext: dict, classes_of: list, full: int, memo: dict) -> int:
    """Extension of ``p`` as a bitmask over worlds.

    ``classes_of[i]`` is the mask of the class containing world ``i``; for a
    universal frame pass ``None`` and boxes collapse to all-or-nothing.
    """
    r = memo.get(p)
    if r is not None:
        return r
    if isinstance(p, Atom):
        r = atom_ext.get(p.index, 0)
    elif isinstance(p, Bot):
        r = 0
    elif isinstance(p, Impl):
        r = (full & ~_ext(p.lhs, atom_ext, classes_of, full, memo)) | _ext(
            p.rhs, atom_ext, classes_of, full, memo
        )
    elif isinstance(p, Box):
        body = _ext(p.body, atom_ext, classes_of, full, memo)
        if classes_of is None:
            r = full if body == full else 0
        else:
            r = 0
            for cls in classes_of:
                if cls & ~body == 0:
                    r |= cls
    else:
        raise TypeError(f"not a formula: {p!r}")
    memo[p] = r
    return r


def _universal_candidates(atoms: list[int]) -> Iterator[tuple[list[int], dict, int]]:
    """Yield ``(valuations, atom_ext, full)`` for each nonempty valuation set.

    Valuation ``v`` is a bitmask over ``atoms`` (bit j for ``atoms[j]``).  Sets
    come in shortlex order: fewer worlds first, then lexicographically by the
    ascending tuple of valuations.  Satisfiable queries therefore stop at a
    smallest witness instead of walking most of the ``2**(2**k)`` subsets.
    """
    nval = 1 << len(atoms)
    for size in range(1, nval + 1):
        for vals in itertools.combinations(range(nval), size):
            yield _candidate(atoms, list(vals))


def _candidate(atoms: list[int], vals: list[int]) -> tuple[list[int], dict, int]:
    atom_ext = {}
    for j, a in enumerate(atoms):
        m = 0
        for i, v in enumerate(vals):
            if (v >> j) & 1:
                m |= 1 << i
        atom_ext[a] = m
    return vals, atom_ext, (1 << len(vals)) - 1


def _universal_witness(atoms: list[int], vals: list[int], sigma: int) -> KripkeModel:
    valuation: dict[int, list[int]] = {}
    for j, a in enumerate(atoms):
        valuation[a] = [i for i, v in enumerate(vals) if (v >> j) & 1]
    return validate_frame(range(len(vals)), UNIVERSAL, valuation, sigma)


def sat_universal(
    gamma: Iterable[Formula],
    atom_budget: int = DEFAULT_ATOM_BUDGET,
    sigma: Optional[int] = None,
) -> Verdict:
    gamma = _dedup(gamma)
    atoms = sorted(atoms_of(gamma))
    _check_budget(atoms, atom_budget)
    sigma = max(sigma or 1, required_sigma(gamma))
    for vals, atom_ext, full in _universal_candidates(atoms):
        memo: dict = {}
        m = full
        for p in gamma:
            m &= _ext(p, atom_ext, None, full, memo)
            if not m:
                break
        if m:
            designated = (m & -m).bit_length() - 1
            return Verdict(Outcome.SAT, _universal_witness(atoms, vals, sigma), designated)
    return Verdict(Outcome.UNSAT)


def realizable_profiles(formulas: list[Formula], atom_budget: int = DEFAULT_ATOM_BUDGET) -> set[int]:
    """Every truth pattern of ``formulas`` realized at some world of some
    universal model, as bitmasks (bit i set when ``formulas[i]`` is true).

    A set of formulas is satisfiable iff some profile covers it, so this is
    the batched form of :func:`sat_universal`.
    """
    atoms = sorted(atoms_of(formulas))
    _check_budget(atoms, atom_budget)
    profiles: set[int] = set()
    for vals, atom_ext, full in _universal_candidates(atoms):
        memo: dict = {}
        exts = [_ext(p, atom_ext, None, full, memo) for p in formulas]
        for w in range(len(vals)):
            bit = 1 << w
            prof = 0
            for i, e in enumerate(exts):
                if e & bit:
                    prof |= 1 << i
            profiles.add(prof)
    return profiles


def set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``n``: ``rgs[i]`` is the block of i."""
    if n == 0:
        yield []
        return

    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    yield from rec([0], 0)


def iter_equiv_frames(atoms: list[int], max_worlds: int) -> Iterator[tuple[int, list[int], dict]]:
    """Every equivalence-frame model with 1..max_worlds worlds.

    Yields ``(n, rgs, atom_ext)`` where ``atom_ext[a]`` is the bitmask of
    worlds making atom ``a`` true.
    """
    for n in range(1, max_worlds + 1):
        for rgs in set_partitions(n):
            for masks in itertools.product(range(1 << n), repeat=len(atoms)):
                yield n, rgs, dict(zip(atoms, masks))


def _class_masks(rgs: list[int]) -> list[int]:
    blocks: dict[int, int] = {}
    for i, b in enumerate(rgs):
        blocks[b] = blocks.get(b, 0) | (1 << i)
    return [blocks[b] for b in sorted(blocks)]


def frame_model(n: int, rgs: list[int], atom_ext: dict, sigma: int) -> KripkeModel:
    pairs = [(i, j) for i in range(n) for j in range(n) if rgs[i] == rgs[j]]
    valuation = {a: [i for i in range(n) if (m >> i) & 1] for a, m in atom_ext.items()}
    return validate_frame(range(n), pairs, valuation, sigma)


def sat_equiv_frames(
    gamma: Iterable[Formula],
    max_worlds: int,
    atom_budget: int = DEFAULT_ATOM_BUDGET,
    sigma: Optional[int] = None,
) -> Verdict:
    if max_worlds > MAX_FRAME_WORLDS:
        raise BudgetExceeded(f"max_worlds={max_worlds} exceeds the oracle bound {MAX_FRAME_WORLDS}")
    gamma = _dedup(gamma)
    atoms = sorted(atoms_of(gamma))
    _check_budget(atoms, atom_budget)
    sigma = max(sigma or 1, required_sigma(gamma))
    class_cache: dict = {}
    for n, rgs, atom_ext in iter_equiv_frames(atoms, max_worlds):
        key = tuple(rgs)
        classes = class_cache.get(key)
        if classes is None:
            classes = class_cache[key] = _class_masks(rgs)
        full = (1 << n) - 1
        memo: dict = {}
        m = full
        for p in gamma:
            m &= _ext(p, atom_ext, classes, full, memo)
            if not m:
                break
        if m:
            designated = (m & -m).bit_length() - 1
            return Verdict(Outcome.SAT, frame_model(n, rgs, atom_ext, sigma), designated)
    return Verdict(Outcome.UNSAT)


def is_consistent(gamma: Iterable[Formula], atom_budget: int = DEFAULT_ATOM_BUDGET) -> bool:
    return sat_universal(gamma, atom_budget).outcome is Outcome.SAT


def valid(p: Formula, atom_budget: int = DEFAULT_ATOM_BUDGET, sigma: Optional[int] = None) -> Verdict:
    v = sat_universal([neg(p)], atom_budget, sigma)
    if v.outcome is Outcome.UNSAT:
        return Verdict(Outcome.VALID)
    return Verdict(Outcome.INVALID, v.witness, v.world)


def local_consequence(
    gamma: Iterable[Formula],
    p: Formula,
    atom_budget: int = DEFAULT_ATOM_BUDGET,
    sigma: Optional[int] = None,
) -> Verdict:
    v = sat_universal(list(gamma) + [neg(p)], atom_budget, sigma)
    if v.outcome is Outcome.UNSAT:
        return Verdict(Outcome.ENTAILED)
    return Verdict(Outcome.NOT_ENTAILED, v.witness, v.world)


def global_consequence(
    gamma: Iterable[Formula],
    p: Formula,
    atom_budget: int = DEFAULT_ATOM_BUDGET,
    sigma: Optional[int] = None,
) -> Verdict:
    # on a universal model "g everywhere" is "box g at any world"
    v = sat_universal([Box(g) for g in gamma] + [neg(p)], atom_budget, sigma)
    if v.outcome is Outcome.UNSAT:
        return Verdict(Outcome.ENTAILED)
    return Verdict(Outcome.NOT_ENTAILED, v.witness, v.world)


def audit_soundness(d, library=None, atom_budget: int = DEFAULT_ATOM_BUDGET) -> bool:
    """Check ``d`` (restricted necessitation) and confirm its judgment is a
    local semantic consequence."""
    from .hilbert import Mode, check

    j = check(d, Mode.RESTRICTED, library)
    return local_consequence(j.context, j.conclusion, atom_budget).outcome is Outcome.ENTAILED
