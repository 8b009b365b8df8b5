"""Finite canonical models over a subformula closure.

Worlds are the maximal consistent subsets of a :class:`ClosureSet`: for each
base formula exactly one of it and its negation is present, and the whole set
is satisfiable.  Two worlds are related when they contain the same boxed base
formulas.  Restricting the usual ``unbox(w) <= v`` relation to a finite closure
breaks symmetry (a world without boxes sees every world but is not seen back),
while agreement on boxed members is an equivalence and still yields the truth
lemma.  :func:`truth_lemma_audit` reports both relations side by side.

Consistency is semantic throughout: a set is consistent when some universal
model satisfies it (see :mod:`s5kit.decide`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .decide import DEFAULT_ATOM_BUDGET, BudgetExceeded, Outcome, is_consistent, local_consequence, realizable_profiles
from .formula import BOT, Atom, Box, ClosureSet, Formula, closure, decode, encode, is_neg, neg
from .kripke import KripkeModel, forces_ctx, forces_form, validate_frame


class InconsistentSeed(ValueError):
    pass


class ClosureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalWorld:
    formulas: frozenset
    closure: ClosureSet = field(repr=False, compare=False, hash=False)

    def __contains__(self, p: object) -> bool:
        return p in self.formulas

    def __iter__(self):
        return iter(sorted(self.formulas, key=encode))

    def __len__(self) -> int:
        return len(self.formulas)

    @property
    def mask(self) -> int:
        """Membership bitmask over the closure's ordered members."""
        m = 0
        for p in self.formulas:
            m |= 1 << self.closure.index(p)
        return m

    def boxed_profile(self) -> frozenset:
        return frozenset(p for p in self.closure.boxed_base() if p in self.formulas)

    def label(self) -> str:
        return "{" + ", ".join(str(p) for p in self) + "}"


def complement(p: Formula, cl: ClosureSet) -> Formula:
    if cl.in_base(p):
        return neg(p)
    if is_neg(p) and cl.in_base(p.lhs):
        return p.lhs
    raise ValueError(f"{p} has no complement inside the closure")


def unbox(w: Iterable[Formula]) -> frozenset:
    return frozenset(p.body for p in w if isinstance(p, Box))


# -- consistency oracle over one closure --------------------------------------

Oracle = Callable[[frozenset], bool]


def closure_oracle(cl: ClosureSet, atom_budget: int = DEFAULT_ATOM_BUDGET) -> Oracle:
    """Fast satisfiability test for subsets of ``cl.members``.

    Precomputes every truth pattern of the members realized in a universal
    model; a subset is satisfiable iff one pattern makes all of it true.
    Agrees with :func:`s5kit.decide.is_consistent` on closure subsets.
    """
    profiles = realizable_profiles(list(cl.members), atom_budget)
    patterns = sorted(profiles)
    cache: dict[frozenset, bool] = {}

    def consistent(s: frozenset) -> bool:
        r = cache.get(s)
        if r is None:
            m = 0
            for p in s:
                m |= 1 << cl.index(p)
            r = any(m & ~prof == 0 for prof in patterns)
            cache[s] = r
        return r

    return consistent


def insert_form(delta: frozenset, p: Formula, cl: ClosureSet, consistent: Oracle = None) -> frozenset:
    consistent = consistent or is_consistent
    if p not in cl:
        raise ValueError(f"{p} is not a member of the closure")
    if not consistent(delta):
        raise InconsistentSeed("insert_form needs a consistent set")
    with_p = delta | {p}
    if consistent(with_p):
        return with_p
    return delta | {complement(p, cl)}


@dataclass(frozen=True)
class TraceStep:
    code: int
    formula: Optional[Formula]
    action: str  # kept-positive, kept-negative, skipped


@dataclass(frozen=True)
class LindenbaumTrace:
    steps: tuple
    result: CanonicalWorld


FULL_TRACE_LIMIT = 4096


def lindenbaum_extend(
    delta0: Iterable[Formula],
    cl: ClosureSet,
    consistent: Optional[Oracle] = None,
    full: bool = False,
) -> LindenbaumTrace:
    """Extend ``delta0`` to a world by walking codes in ascending order.

    Codes that do not decode to a base formula leave the set unchanged.  Only
    base codes are visited unless ``full`` is set, in which case every code up
    to the largest base code is recorded (``skipped`` for non-base codes);
    that is refused above ``FULL_TRACE_LIMIT`` codes.
    """
    consistent = consistent or closure_oracle(cl)
    delta = frozenset(delta0)
    stray = [p for p in delta if p not in cl]
    if stray:
        raise ValueError(f"seed formula {stray[0]} is outside the closure")
    if not consistent(delta):
        raise InconsistentSeed("inconsistent seed")
    base_codes = [encode(p) for p in cl.base]
    if full:
        top = max(base_codes)
        if top > FULL_TRACE_LIMIT:
            raise BudgetExceeded(f"full trace would visit {top + 1} codes")
        codes = range(top + 1)
    else:
        codes = base_codes
    steps = []
    for n in codes:
        p = decode(n, cl.sigma)
        if p is None or not cl.in_base(p):
            steps.append(TraceStep(n, p, "skipped"))
            continue
        if consistent(delta | {p}):
            delta = delta | {p}
            steps.append(TraceStep(n, p, "kept-positive"))
        else:
            delta = delta | {complement(p, cl)}
            steps.append(TraceStep(n, p, "kept-negative"))
    return LindenbaumTrace(tuple(steps), CanonicalWorld(delta, cl))


def is_world(s: frozenset, cl: ClosureSet, consistent: Oracle) -> bool:
    if BOT in s:
        return False
    for q in cl.base:
        if (q in s) == (neg(q) in s):
            return False
    return consistent(s)


def _world_from_positives(positive: Iterable[Formula], cl: ClosureSet) -> Optional[frozenset]:
    """Complete a choice of true base formulas; ``None`` if it clashes."""
    pos = frozenset(positive)
    s = set(pos)
    for q in cl.base:
        if q not in pos:
            s.add(neg(q))
    s = frozenset(s)
    for q in cl.base:
        if (q in s) == (neg(q) in s):
            return None
    return s


def enumerate_worlds(cl: ClosureSet, atom_budget: int = DEFAULT_ATOM_BUDGET) -> tuple:
    """All worlds of the closure, ordered by membership bitmask.

    Every maximal world is fixed by which base formulas it contains and must
    match the truth pattern at some point of a universal model, so the
    realized patterns over the base are exactly the worlds.
    """
    if len(cl.atoms()) > atom_budget:
        raise BudgetExceeded(f"closure uses {len(cl.atoms())} atoms, budget is {atom_budget}")
    base = list(cl.base)
    worlds = set()
    for prof in realizable_profiles(base, atom_budget):
        s = _world_from_positives((q for i, q in enumerate(base) if (prof >> i) & 1), cl)
        if s is not None:
            worlds.add(s)
    out = [CanonicalWorld(s, cl) for s in worlds]
    out.sort(key=lambda w: w.mask)
    return tuple(out)


def access(w: CanonicalWorld, v: CanonicalWorld) -> bool:
    if w.closure != v.closure:
        raise ClosureMismatch("worlds come from different closures")
    return w.boxed_profile() == v.boxed_profile()


def inclusion_access(w: CanonicalWorld, v: CanonicalWorld) -> bool:
    """``unbox(w) <= v``, restricted to what the closure can see."""
    return unbox(w.formulas) <= v.formulas


@dataclass(frozen=True, eq=False)
class CanonicalModel:
    closure: ClosureSet
    domain: tuple
    underlying: KripkeModel

    def world_index(self, w: CanonicalWorld) -> int:
        for i, v in enumerate(self.domain):
            if v.formulas == w.formulas:
                return i
        raise KeyError(w.label())

    def access(self, i: int, j: int) -> bool:
        return self.underlying.accessible(i, j)


def build_canonical(cl: ClosureSet, atom_budget: int = DEFAULT_ATOM_BUDGET) -> CanonicalModel:
    domain = enumerate_worlds(cl, atom_budget)
    n = len(domain)
    pairs = [(i, j) for i in range(n) for j in range(n) if access(domain[i], domain[j])]
    valuation = {}
    for a in sorted(cl.atoms()):
        valuation[a] = [i for i, w in enumerate(domain) if Atom(a) in w]
    M = validate_frame(range(n), pairs, valuation, cl.sigma)
    return CanonicalModel(cl, domain, M)


@dataclass
class AuditReport:
    worlds: int
    checked: int
    violations: list  # (world index, formula, forced, member)
    inclusion_differs: list  # (i, j, inclusion, agreement)
    inclusion_is_equivalence: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def truth_lemma_audit(M: CanonicalModel) -> AuditReport:
    violations = []
    checked = 0
    for i, w in enumerate(M.domain):
        for phi in M.closure.members:
            forced = forces_form(M.underlying, i, phi)
            member = phi in w
            checked += 1
            if forced != member:
                violations.append((i, phi, forced, member))
    diffs = []
    n = len(M.domain)
    incl = [[inclusion_access(M.domain[i], M.domain[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            agree = M.access(i, j)
            if incl[i][j] != agree:
                diffs.append((i, j, incl[i][j], agree))
    equivalence = all(incl[i][i] for i in range(n)) and all(
        incl[j][i] for i in range(n) for j in range(n) if incl[i][j]
    ) and all(
        incl[i][k_] for i in range(n) for j in range(n) for k_ in range(n) if incl[i][j] and incl[j][k_]
    )
    return AuditReport(n, checked, violations, diffs, equivalence)


def unbox_entailment_check(w: CanonicalWorld, atom_budget: int = DEFAULT_ATOM_BUDGET) -> bool:
    premises = unbox(w.formulas)
    for bp in w.closure.boxed_base():
        if bp in w:
            continue
        if local_consequence(premises, bp.body, atom_budget).outcome is Outcome.ENTAILED:
            return False
    return True


@dataclass(frozen=True, eq=False)
class Countermodel:
    model: CanonicalModel
    world: CanonicalWorld
    index: int
    trace: LindenbaumTrace


def countermodel(
    gamma: Iterable[Formula], p: Formula, atom_budget: int = DEFAULT_ATOM_BUDGET
) -> Optional[Countermodel]:
    """Canonical countermodel to ``gamma |= p``, or ``None`` when entailed.

    Extends ``gamma + {~p}`` to a world of the closure of ``gamma + {p}`` and
    returns it with the canonical model over that closure.
    """
    gamma = list(gamma)
    seed = frozenset(gamma) | {neg(p)}
    cl = closure(gamma + [p])
    if len(cl.atoms()) > atom_budget:
        raise BudgetExceeded(f"closure uses {len(cl.atoms())} atoms, budget is {atom_budget}")
    oracle = closure_oracle(cl, atom_budget)
    if not oracle(seed):
        return None
    trace = lindenbaum_extend(seed, cl, oracle)
    M = build_canonical(cl, atom_budget)
    idx = M.world_index(trace.result)
    # guaranteed by the truth lemma; cheap enough to confirm
    assert forces_ctx(M.underlying, gamma, idx) and not forces_form(M.underlying, idx, p)
    return Countermodel(M, trace.result, idx, trace)
