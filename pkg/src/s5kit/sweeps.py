"""Exhaustive and randomized property sweeps.

Each sweep is a dataclass config with a ``run()`` method returning a
:class:`SweepResult`.  The acceptance tests and the scripts in ``scripts/``
both go through these, so a sweep run from the command line is the same
computation the test suite asserts on.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterator

from . import canonical as C
from .decide import Outcome, audit_soundness, is_consistent, sat_equiv_frames, sat_universal, valid
from .formula import Formula, Impl, closure, decode, encode, formulas_up_to, neg
from .hilbert import Mode, check, deduction
from .lemmas import theorem_library
from .randgen import random_context, random_derivation, random_formula


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures, {self.seconds:.1f}s"


class _Timer:
    def __init__(self, result: SweepResult):
        self.result = result

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.result

    def __exit__(self, *exc):
        self.result.seconds = time.perf_counter() - self.t0
        return False


def population(max_atoms: int, max_size: int) -> Iterator[Formula]:
    """Every formula over atoms p0..p{max_atoms-1} and Bot up to ``max_size`` nodes."""
    return formulas_up_to(max_size, max_atoms)


def random_seeds(n: int, sigma: int, sizes: tuple, seed: int) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, sigma, rng.randint(*sizes)) for _ in range(n)]


@dataclass
class TruthLemmaSweep:
    max_atoms: int = 2
    max_size: int = 7
    random_count: int = 200
    random_sigma: int = 3
    random_sizes: tuple = (8, 14)
    seed: int = 0
    atom_budget: int = 4

    def formulas(self) -> Iterator[Formula]:
        yield from population(self.max_atoms, self.max_size)
        yield from random_seeds(self.random_count, self.random_sigma, self.random_sizes, self.seed)

    def run(self) -> SweepResult:
        res = SweepResult("truth lemma")
        seen = set()
        with _Timer(res):
            for p in self.formulas():
                cl = closure([p])
                if cl.base in seen:
                    continue
                seen.add(cl.base)
                M = C.build_canonical(cl, self.atom_budget)
                report = C.truth_lemma_audit(M)
                res.checked += 1
                if not report.ok:
                    res.failures.append((p, report.violations[:3]))
        return res


@dataclass
class OracleCrossCheck:
    """sat_universal and sat_equiv_frames agree on the outcome of ``{p}``."""

    max_atoms: int = 2
    max_size: int = 7
    max_worlds: int = 4

    def run(self) -> SweepResult:
        res = SweepResult("oracle cross-check")
        with _Timer(res):
            for p in population(self.max_atoms, self.max_size):
                a = sat_universal([p]).outcome
                b = sat_equiv_frames([p], self.max_worlds).outcome
                res.checked += 1
                if a is not b:
                    res.failures.append((p, a, b))
        return res


@dataclass
class CompletenessSweep:
    """valid(p) iff countermodel({}, p) is None iff no canonical world holds ~p."""

    max_atoms: int = 2
    max_size: int = 7

    def run(self) -> SweepResult:
        res = SweepResult("completeness equivalence")
        with _Timer(res):
            for p in population(self.max_atoms, self.max_size):
                is_valid = valid(p).outcome is Outcome.VALID
                entailed = C.countermodel([], p) is None
                M = C.build_canonical(closure([p]))
                no_neg_world = not any(neg(p) in w for w in M.domain)
                res.checked += 1
                if not (is_valid == entailed == no_neg_world):
                    res.failures.append((p, is_valid, entailed, no_neg_world))
        return res


@dataclass
class DerivationFuzz:
    """Random accepted derivations: soundness audit and deduction transformer."""

    count: int = 1000
    sigma: int = 2
    depth: int = 4
    seed: int = 0

    def derivations(self) -> list:
        rng = random.Random(self.seed)
        lib = theorem_library()
        out = []
        for _ in range(self.count):
            ctx = random_context(rng, self.sigma)
            out.append(random_derivation(rng, ctx, self.depth, self.sigma, lib))
        return out

    def run_soundness(self) -> SweepResult:
        res = SweepResult("soundness fuzz")
        lib = theorem_library()
        with _Timer(res):
            for d in self.derivations():
                res.checked += 1
                if d.depth() > self.depth or not audit_soundness(d, lib):
                    res.failures.append(d.judgment)
        return res

    def run_deduction(self) -> SweepResult:
        res = SweepResult("deduction transformer")
        lib = theorem_library()
        rng = random.Random(self.seed + 1)
        with _Timer(res):
            for d in self.derivations():
                if not d.context:
                    continue
                p = rng.choice(sorted(d.context, key=encode))
                res.checked += 1
                try:
                    j = check(deduction(d, p, lib), Mode.RESTRICTED, lib)
                except Exception as e:  # noqa: BLE001 - every failure is reported
                    res.failures.append((d.judgment, p, repr(e)))
                    continue
                if j.context != d.context - {p} or j.conclusion != Impl(p, d.conclusion):
                    res.failures.append((d.judgment, p, j))
        return res


@dataclass
class LindenbaumSweep:
    """Subset, decidedness and consistency of the extension.

    Exhaustive over every consistent seed of every closure with at most
    ``max_members`` members (closures of the population formulas), then
    ``random_count`` random seeds over larger closures.  Consistency of the
    result is judged by :func:`s5kit.decide.is_consistent`, independent of
    the closure oracle driving the extension.
    """

    max_atoms: int = 2
    max_size: int = 6
    max_members: int = 10
    random_count: int = 500
    random_sizes: tuple = (7, 12)
    seed: int = 0

    def closures(self):
        seen = set()
        for p in population(self.max_atoms, self.max_size):
            cl = closure([p])
            if len(cl.members) <= self.max_members and cl.base not in seen:
                seen.add(cl.base)
                yield cl

    def run(self) -> SweepResult:
        res = SweepResult("lindenbaum triple")
        verdicts: dict = {}

        def consistent(s):
            r = verdicts.get(s)
            if r is None:
                r = verdicts[s] = is_consistent(s)
            return r

        with _Timer(res):
            for cl in self.closures():
                oracle = C.closure_oracle(cl)
                members = list(cl.members)
                for r in range(len(members) + 1):
                    for seed in itertools.combinations(members, r):
                        seed = frozenset(seed)
                        if not oracle(seed):
                            continue
                        res.checked += 1
                        self._one(seed, cl, oracle, consistent, res)
            rng = random.Random(self.seed)
            remaining = self.random_count
            while remaining > 0:
                p = random_formula(rng, self.max_atoms, rng.randint(*self.random_sizes))
                cl = closure([p])
                if len(cl.members) <= self.max_members:
                    continue
                oracle = C.closure_oracle(cl)
                members = list(cl.members)
                seed = frozenset(q for q in members if rng.random() < 0.3)
                if not oracle(seed):
                    continue
                res.checked += 1
                self._one(seed, cl, oracle, consistent, res)
                remaining -= 1
        return res

    @staticmethod
    def _one(seed, cl, oracle, consistent, res):
        w = C.lindenbaum_extend(seed, cl, oracle).result.formulas
        if not seed <= w:
            res.failures.append(("subset", seed))
        elif not all((q in w) != (neg(q) in w) for q in cl.base):
            res.failures.append(("decided", seed))
        elif not consistent(w):
            res.failures.append(("consistent", seed))


@dataclass
class CodingSweep:
    max_size: int = 6
    sigma: int = 3

    def run(self) -> SweepResult:
        res = SweepResult("coding roundtrip")
        codes: dict = {}
        with _Timer(res):
            for p in formulas_up_to(self.max_size, self.sigma):
                n = encode(p)
                res.checked += 1
                if decode(n) != p or decode(n, self.sigma) != p:
                    res.failures.append(("roundtrip", p))
                if n in codes:
                    res.failures.append(("collision", p, codes[n]))
                codes[n] = p
        return res
