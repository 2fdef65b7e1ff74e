"""Tournament solutions and their composition operators.

A :class:`TournamentSolution` evaluates on a subset ``mask`` of a fixed
tournament without re-indexing, which is what the axiom checks need.  For each
tournament it hands out one memoised :class:`~tournsol.choice.ChoiceFunction`
(``induced``), so hat/root wrappers and recursive rules such as TEQ share
results across calls.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .builders import t4, t7
from .canonical import canonical_certificate
from .choice import (
    ChoiceFunction,
    GammaOnlyChoice,
    HatChoice,
    RootChoice,
)
from .tournament import (
    ResourceGuardError,
    Tournament,
    is_regular,
    local_reverse,
    mask_of,
    members,
    restrict_mask,
    reverse_all,
)
from .zsgame import maximin

MAX_BA_ORDER = 13
MAX_TEQ_ORDER = 24


class UnknownSolutionError(KeyError):
    pass


class InducedChoice(ChoiceFunction):
    def __init__(self, solution: "TournamentSolution", t: Tournament):
        super().__init__([str(i) for i in range(t.order)], solution.name)
        self.solution = solution
        self.tournament = t

    def _choose(self, mask: int) -> int:
        return self.solution._choose(self.tournament, mask)


class TournamentSolution:
    """Named map from (sub)tournaments to nonempty alternative sets."""

    def __init__(self, name: str, fn: Callable[[Tournament, int], int] | None = None, cache: int = 2048):
        self.name = name
        self._fn = fn
        self._cache: OrderedDict[Tournament, ChoiceFunction] = OrderedDict()
        self._cache_size = cache
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"<solution {self.name}>"

    def _choose(self, t: Tournament, mask: int) -> int:
        return self._fn(t, mask)

    def _make_induced(self, t: Tournament) -> ChoiceFunction:
        return InducedChoice(self, t)

    def induced(self, t: Tournament) -> ChoiceFunction:
        """The choice function ``X -> S(T|X)`` of ``t``, memoised per tournament."""
        with self._lock:
            cf = self._cache.get(t)
            if cf is not None:
                self._cache.move_to_end(t)
                return cf
        cf = self._make_induced(t)
        with self._lock:
            self._cache[t] = cf
            if len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        return cf

    def choose(self, t: Tournament, mask: int | None = None) -> int:
        return self.induced(t).choose_mask(t.full if mask is None else mask)

    def __call__(self, t: Tournament) -> frozenset[int]:
        return frozenset(members(self.choose(t)))

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()


class _Wrapped(TournamentSolution):
    def __init__(self, name: str, base: TournamentSolution, wrapper):
        super().__init__(name)
        self.base = base
        self._wrapper = wrapper

    def _make_induced(self, t: Tournament) -> ChoiceFunction:
        return self._wrapper(self.base.induced(t), name=self.name)


class ReversedSolution(TournamentSolution):
    def __init__(self, base: TournamentSolution, name: str | None = None):
        super().__init__(name or f"rev:{base.name}")
        self.base = base

    def _choose(self, t: Tournament, mask: int) -> int:
        return self.base.choose(reverse_all(t), mask)


def lift_hat(s: TournamentSolution, name: str | None = None) -> TournamentSolution:
    return _Wrapped(name or f"hat:{s.name}", s, HatChoice)


def lift_root(s: TournamentSolution, name: str | None = None) -> TournamentSolution:
    return _Wrapped(name or f"root:{s.name}", s, RootChoice)


def gamma_only(s: TournamentSolution, name: str | None = None) -> TournamentSolution:
    return _Wrapped(name or f"gamma:{s.name}", s, GammaOnlyChoice)


def reversed_solution(s: TournamentSolution) -> TournamentSolution:
    return ReversedSolution(s)


# -- the classical solutions ---------------------------------------------------


def _tc(t: Tournament, mask: int) -> int:
    # the best Copeland alternative is in the top cycle; so is everything reaching it
    top = max(members(mask), key=lambda v: (t.rows[v] & mask).bit_count())
    reach = 1 << top
    frontier = reach
    while frontier:
        new = 0
        for u in members(frontier):
            new |= t.cols[u] & mask
        frontier = new & ~reach
        reach |= frontier
    return reach


def _uc(t: Tournament, mask: int) -> int:
    out = 0
    for a in members(mask):
        da = t.rows[a] & mask
        if not any(da & ~t.rows[b] == 0 for b in members(t.cols[a] & mask)):
            out |= 1 << a
    return out


def _copeland(t: Tournament, mask: int) -> int:
    scores = {a: (t.rows[a] & mask).bit_count() for a in members(mask)}
    best = max(scores.values())
    return mask_of(a for a, s in scores.items() if s == best)


def _ba(t: Tournament, mask: int) -> int:
    if mask.bit_count() > MAX_BA_ORDER:
        raise ResourceGuardError(f"Banks set of order {mask.bit_count()} exceeds limit {MAX_BA_ORDER}")
    dead: set[tuple[int, int]] = set()

    def extendable(common_dom: int, cand: int) -> bool:
        # a chain whose alternatives have no common dominator is maximal at the top
        if common_dom == 0:
            return True
        if (common_dom, cand) in dead:
            return False
        for y in members(cand):
            if extendable(common_dom & t.cols[y], cand & t.rows[y]):
                return True
        dead.add((common_dom, cand))
        return False

    out = 0
    for x in members(mask):
        if extendable(t.cols[x] & mask, t.rows[x] & mask):
            out |= 1 << x
    return out


def _bp(t: Tournament, mask: int) -> int:
    sub, idx = restrict_mask(t, mask)
    return mask_of(idx[i] for i in maximin(sub).support)


@dataclass(frozen=True)
class RetentiveSetReport:
    minimal_retentive_sets: tuple[int, ...]
    union: int

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(members(m)) for m in self.minimal_retentive_sets]


def is_retentive(s: TournamentSolution, t: Tournament, x: int, ambient: int | None = None) -> bool:
    """Whether S(dominators of v) lies inside ``x`` for every ``v`` in ``x`` that has dominators."""
    if x == 0:
        raise ValueError("retentive sets are nonempty")
    amb = t.full if ambient is None else ambient
    for v in members(x):
        dom = t.cols[v] & amb
        if dom and s.choose(t, dom) & ~x:
            return False
    return True


def minimal_closed_sets(succ: dict[int, int], mask: int) -> list[int]:
    """Inclusion-minimal nonempty sets closed under ``succ`` (the sink components)."""
    reach = {}
    for v in members(mask):
        seen = 1 << v
        frontier = seen
        while frontier:
            new = 0
            for u in members(frontier):
                new |= succ[u]
            frontier = new & ~seen
            seen |= frontier
        reach[v] = seen
    closures = set(reach.values())
    return sorted(c for c in closures if not any(o != c and o & c == o for o in closures))


def teq_report(t: Tournament, mask: int | None = None) -> RetentiveSetReport:
    mask = t.full if mask is None else mask
    if mask.bit_count() > MAX_TEQ_ORDER:
        raise ResourceGuardError(f"TEQ of order {mask.bit_count()} exceeds limit {MAX_TEQ_ORDER}")
    cf = TEQ.induced(t)
    succ = {}
    for v in members(mask):
        dom = t.cols[v] & mask
        succ[v] = cf.choose_mask(dom) if dom else 0
    sets = minimal_closed_sets(succ, mask)
    union = 0
    for m in sets:
        union |= m
    return RetentiveSetReport(tuple(sets), union)


def _teq(t: Tournament, mask: int) -> int:
    return teq_report(t, mask).union


def _restricted(rule: Callable[[Tournament], int]) -> Callable[[Tournament, int], int]:
    def choose(t: Tournament, mask: int) -> int:
        if mask == t.full:
            return rule(t)
        sub, idx = restrict_mask(t, mask)
        return mask_of(idx[i] for i in members(rule(sub)))

    return choose


def _pos_whole(t: Tournament) -> int:
    n = t.order
    out = 0
    for a, row in enumerate(t.rows):
        d = row.bit_count()
        if n % 2 == 0:
            if 2 * d >= n:
                out |= 1 << a
            continue
        k = (n - 1) // 2
        if d > k:
            out |= 1 << a
        elif d == k and _pos_tiebreak(t, a):
            out |= 1 << a
    return out


def _pos_tiebreak(t: Tournament, a: int) -> bool:
    if is_regular(t):
        return True
    flipped = local_reverse(t, a)
    if is_regular(flipped):
        return False
    mine = canonical_certificate(t, a)
    theirs = canonical_certificate(flipped, a)
    if mine == theirs:
        raise AssertionError("local reversal produced an isomorphic pointed tournament")
    return mine < theirs


@lru_cache(maxsize=None)
def _s7_certificates() -> tuple[frozenset, frozenset]:
    """Plain and g-pointed certificates of T7 and its weakenings at g."""
    base = t7()
    g = 6
    plain, pointed = set(), set()
    for flips in range(4):
        rows = list(base.rows)
        for victim in range(flips):  # flip g>a, g>b, ... in turn
            rows[g] &= ~(1 << victim)
            rows[victim] |= 1 << g
        variant = Tournament(7, tuple(rows))
        plain.add(canonical_certificate(variant))
        pointed.add(canonical_certificate(variant, g))
    return frozenset(plain), frozenset(pointed)


def _s7_whole(t: Tournament) -> int:
    if t.order != 7:
        return t.full
    plain, pointed = _s7_certificates()
    if canonical_certificate(t) not in plain:
        return t.full
    hits = [x for x in range(7) if canonical_certificate(t, x) in pointed]
    if len(hits) != 1:
        raise AssertionError(f"expected one weakened-g alternative, found {hits}")
    return t.full & ~(1 << hits[0])


@lru_cache(maxsize=None)
def _t4_certificates():
    return canonical_certificate(t4()), canonical_certificate(t4(), 3)


def _t4_special_whole(t: Tournament) -> int:
    """Winner of a pair; T4 copies lose their d; everything else is kept whole."""
    if t.order == 2:
        return 1 if t.rows[0] else 2
    if t.order == 4:
        plain, pointed_d = _t4_certificates()
        if canonical_certificate(t) == plain:
            d = next(x for x in range(4) if canonical_certificate(t, x) == pointed_d)
            return t.full & ~(1 << d)
    return t.full


def _even_out(t: Tournament, mask: int) -> int:
    even = mask_of(a for a in members(mask) if (t.rows[a] & mask).bit_count() % 2 == 0)
    return even or mask


TC = TournamentSolution("tc", _tc)
UC = TournamentSolution("uc", _uc)
BA = TournamentSolution("ba", _ba)
COPELAND = TournamentSolution("copeland", _copeland)
TEQ = TournamentSolution("teq", _teq, cache=16384)
BP = TournamentSolution("bp", _bp)
POS = TournamentSolution("pos", _restricted(_pos_whole))
S7 = TournamentSolution("s7", _restricted(_s7_whole))
T4_SPECIAL = TournamentSolution("t4special", _restricted(_t4_special_whole))
TRIVIAL = TournamentSolution("trivial", lambda t, mask: mask)
EVEN_OUT = TournamentSolution("evenout", _even_out)
MC = lift_hat(UC, "mc")
ME = lift_hat(BA, "me")
S7_HAT = lift_hat(S7, "s7hat")

BASE_SOLUTIONS: dict[str, TournamentSolution] = {
    s.name: s
    for s in (TC, UC, BA, COPELAND, TEQ, MC, ME, BP, POS, S7, S7_HAT, T4_SPECIAL, TRIVIAL, EVEN_OUT)
}

_OPERATORS = {
    "hat": lift_hat,
    "root": lift_root,
    "rev": reversed_solution,
    "gamma": gamma_only,
}

_composed: dict[str, TournamentSolution] = {}
_composed_lock = threading.Lock()


def get_solution(name: str) -> TournamentSolution:
    """Resolve a registry name such as ``bp``, ``hat:ba`` or ``root:rev:bp``."""
    name = name.strip().lower()
    if name in BASE_SOLUTIONS:
        return BASE_SOLUTIONS[name]
    with _composed_lock:
        if name in _composed:
            return _composed[name]
    op, sep, rest = name.partition(":")
    if not sep or op not in _OPERATORS or not rest:
        raise UnknownSolutionError(name)
    sol = _OPERATORS[op](get_solution(rest))
    with _composed_lock:
        return _composed.setdefault(name, sol)


def tc(t: Tournament) -> frozenset[int]:
    return TC(t)


def uc(t: Tournament) -> frozenset[int]:
    return UC(t)


def ba(t: Tournament) -> frozenset[int]:
    return BA(t)


def copeland(t: Tournament) -> frozenset[int]:
    return COPELAND(t)


def teq(t: Tournament) -> RetentiveSetReport:
    return teq_report(t)


def mc(t: Tournament) -> frozenset[int]:
    return MC(t)


def me(t: Tournament) -> frozenset[int]:
    return ME(t)


def bp(t: Tournament) -> frozenset[int]:
    return BP(t)


def pos(t: Tournament) -> frozenset[int]:
    return POS(t)


def s7(t: Tournament) -> frozenset[int]:
    return S7(t)


def s7_hat(t: Tournament) -> frozenset[int]:
    return S7_HAT(t)
