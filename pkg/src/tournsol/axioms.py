"""Axiom checks over enumerated or sampled tournaments.

Each check walks a :class:`Scope` in ascending order and stops at the first
violation, so the witness it returns is minimal by (order, traversal order).
Witness predicates are kept separate from the search so that a failing
verdict can be re-checked in isolation with :func:`recheck`.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .builders import duplicate_link, duplicate_link_halves, t7
from .canonical import enumerate_nonisomorphic, labeling_count
from .choice import (
    ChoiceFunction,
    NotWellDefinedError,
    feasible_sets,
    minimal_stable_sets_mask,
)
from .solutions import TournamentSolution, lift_root
from .tournament import (
    Tournament,
    enumerate_labeled,
    find_components,
    from_upper_key,
    is_regular,
    local_reverse,
    mask_of,
    members,
    permute,
    product,
    submasks,
    to_trn,
)

PASS = "pass"
PASS_SAMPLED = "pass (sampled)"
FAIL = "fail"

DEFAULT_EXHAUSTIVE = {
    "stability": 5,
    "gamma": 5,
    "gamma-sub": 5,
    "gamma-sup": 5,
    "well-defined": 5,
    "local-alpha": 5,
    "alpha": 6,
    "alpha-sub": 6,
    "alpha-sup": 6,
    "idempotency": 6,
    "monotonicity": 6,
    "lrs": 6,
    "lrs-in": 6,
    "lrs-out": 6,
    "refinement": 6,
    "regularity": 7,
    "composition": 7,
}


class InvariantViolation(AssertionError):
    """Two routes that a theorem says must agree did not."""


# -- scopes ---------------------------------------------------------------------


@dataclass(frozen=True)
class Scope:
    max_order: int
    exhaustive_up_to: int | None = None
    min_order: int = 1
    samples: int = 0
    seed: int | None = None
    extra: tuple[Tournament, ...] = ()

    def __post_init__(self):
        if self.samples and self.seed is None:
            raise ValueError("sampled scopes need an explicit seed")

    @property
    def exhaustive_bound(self) -> int:
        bound = self.max_order if self.exhaustive_up_to is None else self.exhaustive_up_to
        return min(bound, self.max_order)

    @property
    def sampled(self) -> bool:
        return bool(self.samples) and self.exhaustive_bound < self.max_order

    def tournaments(self) -> Iterator[Tournament]:
        extra = sorted(self.extra, key=lambda t: t.sort_key())
        rng = random.Random(self.seed)
        for n in range(self.min_order, self.max_order + 1):
            if n <= self.exhaustive_bound:
                yield from sorted(enumerate_nonisomorphic(n), key=Tournament.sort_key)
            elif self.samples:
                pairs = n * (n - 1) // 2
                for _ in range(self.samples):
                    yield from_upper_key(n, rng.getrandbits(pairs))
            for t in extra:
                if t.order == n:
                    yield t
        for t in extra:
            if not self.min_order <= t.order <= self.max_order:
                yield t

    def describe(self) -> dict:
        out = {
            "min_order": self.min_order,
            "max_order": self.max_order,
            "exhaustive_up_to": self.exhaustive_bound,
            "mode": "sampled" if self.sampled else "exhaustive",
        }
        if self.samples:
            out["samples_per_order"] = self.samples
            out["seed"] = self.seed
        if self.extra:
            out["extra"] = [to_trn(t) for t in self.extra]
        return out


def default_scope(axiom: str, max_order: int | None = None, **kw) -> Scope:
    bound = DEFAULT_EXHAUSTIVE.get(axiom, 6)
    return Scope(max_order=max_order or bound, exhaustive_up_to=bound, **kw)


# -- verdicts -------------------------------------------------------------------


@dataclass
class Witness:
    tournaments: tuple[Tournament, ...]
    sets: dict[str, tuple[int, ...]] = field(default_factory=dict)
    alternative: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "tournaments": [to_trn(t) for t in self.tournaments],
            "sets": {k: list(v) for k, v in self.sets.items()},
        }
        if self.alternative is not None:
            out["alternative"] = self.alternative
        if self.note:
            out["note"] = self.note
        return out

    def mask(self, key: str) -> int:
        return mask_of(self.sets[key])


@dataclass
class AxiomVerdict:
    axiom: str
    subject: str
    scope: dict
    outcome: str
    witness: Witness | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome != FAIL

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "subject": self.subject,
            "scope": self.scope,
            "outcome": self.outcome,
            "witness": self.witness.to_json() if self.witness else None,
            "details": self.details,
        }

    def to_text(self) -> str:
        lines = [f"{self.axiom} [{self.subject}]: {self.outcome}"]
        sc = self.scope
        lines.append(
            f"  scope: orders {sc.get('min_order', 1)}..{sc.get('max_order')}, "
            f"exhaustive up to {sc.get('exhaustive_up_to')}, {sc.get('mode')}"
            + (f", seed {sc['seed']}" if "seed" in sc else "")
        )
        for k, v in self.details.items():
            lines.append(f"  {k}: {v}")
        if self.witness:
            w = self.witness
            if w.note:
                lines.append(f"  witness: {w.note}")
            for name, s in w.sets.items():
                lines.append(f"  {name} = {{{', '.join(map(str, s))}}}")
            if w.alternative is not None:
                lines.append(f"  alternative = {w.alternative}")
            for t in w.tournaments:
                lines.append("  " + to_trn(t).rstrip("\n").replace("\n", "\n  "))
        return "\n".join(lines)


def _verdict(axiom: str, subject: str, scope: Scope, witness: Witness | None, **details) -> AxiomVerdict:
    if witness is not None:
        outcome = FAIL
    else:
        outcome = PASS_SAMPLED if scope.sampled else PASS
    return AxiomVerdict(axiom, subject, scope.describe(), outcome, witness, dict(details))


def _sets(**kw: int) -> dict[str, tuple[int, ...]]:
    return {k: tuple(members(v)) for k, v in kw.items()}


# -- choice-function level predicates --------------------------------------------


def alpha_violated(cf: ChoiceFunction, b: int, c: int, variant: str = "alpha") -> bool:
    sb = cf.choose_mask(b)
    if not (sb & ~c == 0 and c & ~b == 0):
        return False
    sc = cf.choose_mask(c)
    if variant == "alpha":
        return sc != sb
    if variant == "alpha-sub":
        return sc & ~sb != 0
    if variant == "alpha-sup":
        return sb & ~sc != 0
    raise ValueError(variant)


def gamma_violated(cf: ChoiceFunction, b: int, c: int, variant: str = "gamma") -> bool:
    sb = cf.choose_mask(b)
    if cf.choose_mask(c) != sb:
        return False
    su = cf.choose_mask(b | c)
    if variant == "gamma":
        return su != sb
    if variant == "gamma-sub":
        return sb & ~su != 0
    if variant == "gamma-sup":
        return su & ~sb != 0
    raise ValueError(variant)


def alpha_witness(cf: ChoiceFunction, universe: int, variant: str = "alpha") -> tuple[int, int] | None:
    for b in feasible_sets(universe):
        sb = cf.choose_mask(b)
        free = b & ~sb
        cands = sorted((sb | sub for sub in itertools.chain(submasks(free), [0])), key=lambda m: (m.bit_count(), m))
        for c in cands:
            if alpha_violated(cf, b, c, variant):
                return b, c
    return None


def gamma_witness(cf: ChoiceFunction, universe: int, variant: str = "gamma") -> tuple[int, int] | None:
    groups: dict[int, list[int]] = {}
    for b in feasible_sets(universe):
        groups.setdefault(cf.choose_mask(b), []).append(b)
    for sets in groups.values():
        for i, b in enumerate(sets):
            for c in sets[i + 1:]:
                if gamma_violated(cf, b, c, variant):
                    return b, c
    return None


def idempotency_witness(cf: ChoiceFunction, universe: int) -> int | None:
    for a in feasible_sets(universe):
        sa = cf.choose_mask(a)
        if cf.choose_mask(sa) != sa:
            return a
    return None


def well_defined_witness(cf: ChoiceFunction, universe: int):
    for a in feasible_sets(universe):
        rep = minimal_stable_sets_mask(cf, a)
        if not rep.well_defined:
            return rep
    return None


def hat_fixed_point_witness(cf: ChoiceFunction, universe: int) -> tuple[int, tuple[int, ...]] | None:
    """A feasible set where the minimal stable sets are not exactly [S(A)]."""
    for a in feasible_sets(universe):
        rep = minimal_stable_sets_mask(cf, a)
        if rep.minimal_stable_sets != (cf.choose_mask(a),):
            return a, rep.minimal_stable_sets
    return None


def local_alpha_witness(cf: ChoiceFunction, universe: int) -> tuple[int, int, int] | None:
    for z in feasible_sets(universe):
        for x in minimal_stable_sets_mask(cf, z).minimal_stable_sets:
            for extra in itertools.chain([0], submasks(z & ~x)):
                y = x | extra
                if y == z:
                    continue
                if x not in minimal_stable_sets_mask(cf, y).minimal_stable_sets:
                    return x, y, z
    return None


# -- tournament-solution checks --------------------------------------------------


def _scan(scope: Scope, fn: Callable[[Tournament], Witness | None]) -> tuple[Witness | None, int]:
    count = 0
    for t in scope.tournaments():
        count += 1
        w = fn(t)
        if w is not None:
            return w, count
    return None, count


def check_alpha_variants(s: TournamentSolution, scope: Scope) -> dict[str, AxiomVerdict]:
    out = {}
    for variant in ("alpha", "alpha-sub", "alpha-sup"):
        def per(t, variant=variant):
            hit = alpha_witness(s.induced(t), t.full, variant)
            if hit:
                b, c = hit
                return Witness((t,), _sets(B=b, C=c), note="S(B) within C within B but S(C) != S(B)")
            return None

        w, count = _scan(scope, per)
        out[variant] = _verdict(variant, s.name, scope, w, tournaments_checked=count)
    return out


def check_gamma_variants(s: TournamentSolution, scope: Scope) -> dict[str, AxiomVerdict]:
    out = {}
    for variant in ("gamma", "gamma-sub", "gamma-sup"):
        def per(t, variant=variant):
            hit = gamma_witness(s.induced(t), t.full, variant)
            if hit:
                b, c = hit
                return Witness((t,), _sets(B=b, C=c), note="S(B) = S(C) but S(B u C) differs")
            return None

        w, count = _scan(scope, per)
        out[variant] = _verdict(variant, s.name, scope, w, tournaments_checked=count)
    return out


def check_idempotency(s: TournamentSolution, scope: Scope) -> AxiomVerdict:
    def per(t):
        a = idempotency_witness(s.induced(t), t.full)
        return Witness((t,), _sets(A=a), note="S(S(A)) != S(A)") if a else None

    w, count = _scan(scope, per)
    return _verdict("idempotency", s.name, scope, w, tournaments_checked=count)


def check_stability(s: TournamentSolution, scope: Scope, hat_route_max_order: int = 5) -> AxiomVerdict:
    """Stability as alpha-and-gamma, cross-checked against the hat fixed point."""
    alpha = check_alpha_variants(s, scope)["alpha"]
    gamma = check_gamma_variants(s, scope)["gamma"]
    route_one = alpha.passed and gamma.passed

    hat_witness = None
    checked = 0
    for t in scope.tournaments():
        if t.order > hat_route_max_order:
            continue
        checked += 1
        try:
            hit = hat_fixed_point_witness(s.induced(t), t.full)
        except NotWellDefinedError as exc:
            hit = (exc.report.feasible_set, exc.report.minimal_stable_sets)
        if hit:
            a, minimal = hit
            hat_witness = Witness((t,), {"A": tuple(members(a)), **{f"M{i}": tuple(members(m)) for i, m in enumerate(minimal)}},
                                  note="minimal stable sets of A differ from [S(A)]")
            break
    if route_one and hat_witness is not None:
        raise InvariantViolation(f"{s.name}: alpha and gamma hold but the hat fixed point fails")
    if not route_one and hat_witness is None:
        # the violation might sit above the order where the hat route is run
        orders = [w.tournaments[0].order for w in (alpha.witness, gamma.witness) if w]
        if min(orders) <= hat_route_max_order:
            raise InvariantViolation(f"{s.name}: alpha/gamma fail but the hat fixed point holds")
    witness = alpha.witness or gamma.witness
    failing = "alpha" if alpha.witness else ("gamma" if gamma.witness else None)
    if witness is not None:
        witness = Witness(witness.tournaments, witness.sets, note=f"{failing} violated: {witness.note}")
    return _verdict(
        "stability",
        s.name,
        scope,
        witness,
        alpha=alpha.outcome,
        gamma=gamma.outcome,
        hat_route=("fail" if hat_witness else "pass") + f" ({checked} tournaments up to order {hat_route_max_order})",
    )


def check_local_alpha(s: TournamentSolution, scope: Scope) -> AxiomVerdict:
    def per(t):
        hit = local_alpha_witness(s.induced(t), t.full)
        if hit:
            x, y, z = hit
            return Witness((t,), _sets(X=x, Y=y, Z=z), note="X minimal stable in Z but not in Y")
        return None

    w, count = _scan(scope, per)
    return _verdict("local-alpha", s.name, scope, w, tournaments_checked=count)


def check_well_defined(s: TournamentSolution, scope: Scope) -> AxiomVerdict:
    def per(t):
        rep = well_defined_witness(s.induced(t), t.full)
        if rep is None:
            return None
        kind = "no stable set" if not rep.minimal_stable_sets else "several minimal stable sets"
        sets = {"A": tuple(members(rep.feasible_set))}
        for i, m in enumerate(rep.minimal_stable_sets):
            sets[f"M{i}"] = tuple(members(m))
        return Witness((t,), sets, note=kind)

    w, count = _scan(scope, per)
    return _verdict("well-defined", s.name, scope, w, tournaments_checked=count)


def strengthen(t: Tournament, a: int, b: int) -> Tournament:
    """Reverse the edge b > a so that a beats b."""
    rows = list(t.rows)
    rows[b] &= ~(1 << a)
    rows[a] |= 1 << b
    return Tournament(t.order, tuple(rows))


def monotonicity_violated(s: TournamentSolution, t: Tournament, a: int, b: int) -> bool:
    if not t.beats(b, a) or a not in s(t):
        return False
    return a not in s(strengthen(t, a, b))


def check_monotonicity(s: TournamentSolution, scope: Scope) -> AxiomVerdict:
    def per(t):
        chosen = s.choose(t)
        for a in members(chosen):
            for b in members(t.cols[a]):
                if monotonicity_violated(s, t, a, b):
                    return Witness((t, strengthen(t, a, b)), {"b": (b,)}, a, "a chosen, strengthened against b, dropped")
        return None

    w, count = _scan(scope, per)
    return _verdict("monotonicity", s.name, scope, w, tournaments_checked=count)


def check_regularity(s: TournamentSolution, scope: Scope) -> AxiomVerdict:
    regular = 0

    def per(t):
        nonlocal regular
        if not is_regular(t):
            return None
        regular += 1
        chosen = s.choose(t)
        if chosen != t.full:
            return Witness((t,), _sets(chosen=chosen), note="regular tournament, not everything chosen")
        return None

    w, count = _scan(scope, per)
    return _verdict("regularity", s.name, scope, w, tournaments_checked=count, regular_tournaments=regular)


def composition_violated(s: TournamentSolution, t: Tournament, blocks: Sequence[Sequence[int]], summary: Tournament) -> bool:
    chosen_blocks = s.choose(summary)
    expected = 0
    for i in members(chosen_blocks):
        bm = mask_of(blocks[i])
        expected |= s.choose(t, bm)
    return s.choose(t) != expected


def _products(max_part: int, max_summary: int, max_total: int) -> list[tuple[Tournament, tuple[Tournament, ...]]]:
    parts_pool = [p for n in range(1, max_part + 1) for p in enumerate_nonisomorphic(n)]
    combos = []
    for k in range(2, max_summary + 1):
        for summary in enumerate_nonisomorphic(k):
            for parts in itertools.product(parts_pool, repeat=k):
                total = sum(p.order for p in parts)
                if total <= max_total and any(p.order > 1 for p in parts):
                    combos.append((summary, parts))
    combos.sort(key=lambda sp: (sum(p.order for p in sp[1]), sp[0].sort_key(), tuple(p.sort_key() for p in sp[1])))
    return combos


def check_composition_consistency(
    s: TournamentSolution,
    scope: Scope,
    max_part: int = 4,
    max_summary: int = 4,
    max_product: int = 10,
) -> AxiomVerdict:
    """Constructed products first, then every decomposition found in the scope."""
    built = 0
    witness = None
    for summary, parts in _products(max_part, max_summary, max_product):
        built += 1
        t = product(summary, parts)
        offsets = list(itertools.accumulate((p.order for p in parts), initial=0))
        blocks = [tuple(range(offsets[i], offsets[i + 1])) for i in range(len(parts))]
        if composition_violated(s, t, blocks, summary):
            witness = Witness(
                (t, summary) + tuple(parts),
                {f"B{i}": b for i, b in enumerate(blocks)},
                note="product: S(T) differs from the union of S(T_i) over chosen components",
            )
            break

    count = 0
    if witness is None:
        def per(t):
            for dec in find_components(t):
                if composition_violated(s, t, dec.blocks, dec.summary):
                    return Witness(
                        (t, dec.summary),
                        {f"B{i}": b for i, b in enumerate(dec.blocks)},
                        note="decomposition: S(T) differs from the union over chosen components",
                    )
            return None

        witness, count = _scan(scope, per)
    return _verdict("composition", s.name, scope, witness, products_checked=built, tournaments_checked=count)


def lrs_violated(s: TournamentSolution, t: Tournament, a: int, direction: str) -> bool:
    here = a in s(t)
    there = a in s(local_reverse(t, a))
    if direction == "in":
        return not here and not there
    if direction == "out":
        return here and there
    return here == there


def check_lrs(s: TournamentSolution, scope: Scope, direction: str = "both") -> AxiomVerdict:
    """Local reversal symmetry; order-1 tournaments are skipped (T^a = T there)."""
    name = {"both": "lrs", "in": "lrs-in", "out": "lrs-out"}[direction]

    def per(t):
        if t.order < 2:
            return None
        for a in range(t.order):
            if lrs_violated(s, t, a, direction):
                here = a in s(t)
                return Witness((t, local_reverse(t, a)), {}, a, f"a {'chosen' if here else 'unchosen'} in both T and T^a")
        return None

    w, count = _scan(scope, per)
    return _verdict(name, s.name, scope, w, tournaments_checked=count)


def check_refinement(s: TournamentSolution, coarser: TournamentSolution, scope: Scope) -> AxiomVerdict:
    """Whether ``s`` chooses a subset of what ``coarser`` chooses, everywhere in scope."""

    def per(t):
        a, b = s.choose(t), coarser.choose(t)
        if a & ~b:
            return Witness((t,), _sets(S=a, coarser=b), note=f"{s.name} not within {coarser.name}")
        return None

    w, count = _scan(scope, per)
    return _verdict("refinement", f"{s.name} <= {coarser.name}", scope, w, tournaments_checked=count)


# -- statistics ----------------------------------------------------------------


@dataclass(frozen=True)
class SolutionStats:
    solution: str
    order: int
    total: int
    sum_sizes: int

    @property
    def average(self) -> Fraction:
        return Fraction(self.sum_sizes, self.total)

    def to_json(self) -> dict:
        avg = self.average
        return {
            "solution": self.solution,
            "order": self.order,
            "total": self.total,
            "sum_sizes": self.sum_sizes,
            "average": f"{avg.numerator}/{avg.denominator}",
        }


def _labeled_chunk(args: tuple[str, int, int, int]) -> tuple[int, int]:
    from .solutions import get_solution

    name, n, start, stop = args
    s = get_solution(name)
    acc = 0
    for key in range(start, stop):
        acc += s.choose(from_upper_key(n, key)).bit_count()
    return stop - start, acc


def average_choice_size(s: TournamentSolution, n: int, method: str = "labeled", workers: int = 1) -> SolutionStats:
    """Average |S(T)| over all labeled tournaments of order ``n``.

    ``labeled`` walks every labeled tournament; ``orbits`` weights each
    isomorphism class by its number of labelings (n!/|Aut|).  With
    ``workers > 1`` the labeled walk is split over processes, which needs
    ``s`` to be resolvable by name.
    """
    if method == "labeled" and workers > 1:
        enumerate_labeled(n)  # guard only
        size = 2 ** comb(n, 2)
        step = -(-size // (workers * 4))
        jobs = [(s.name, n, lo, min(lo + step, size)) for lo in range(0, size, step)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_labeled_chunk, jobs))
        total = sum(p[0] for p in parts)
        acc = sum(p[1] for p in parts)
    elif method == "labeled":
        total = 0
        acc = 0
        for t in enumerate_labeled(n):
            total += 1
            acc += s.choose(t).bit_count()
    elif method == "orbits":
        total = 0
        acc = 0
        for t in enumerate_nonisomorphic(n):
            w = labeling_count(t)
            total += w
            acc += w * s.choose(t).bit_count()
    else:
        raise ValueError(method)
    if total != 2 ** comb(n, 2):
        raise InvariantViolation(f"counted {total} labeled tournaments of order {n}")
    return SolutionStats(s.name, n, total, acc)


def compare_discrimination(s: TournamentSolution, other: TournamentSolution, n: int) -> int:
    """-1 if ``s`` is more discriminating than ``other`` at order ``n``, 1 if less, 0 if tied."""
    a = average_choice_size(s, n, "orbits").average
    b = average_choice_size(other, n, "orbits").average
    return (a > b) - (a < b)


# -- lemma and theorem cross-checks ------------------------------------------------


def verify_lemma_inheritance(s: TournamentSolution, coarser: TournamentSolution, scope: Scope) -> AxiomVerdict:
    """LRS-in passes up to coarsenings and LRS-out down to refinements."""
    ref = check_refinement(s, coarser, scope)
    details = {"refinement": ref.outcome}
    if not ref.passed:
        return AxiomVerdict("lemma-inheritance", f"{s.name} <= {coarser.name}", scope.describe(), PASS, None,
                            dict(details, note="hypothesis S <= S' fails; nothing to check"))
    lrs_in_s = check_lrs(s, scope, "in")
    lrs_in_c = check_lrs(coarser, scope, "in")
    lrs_out_s = check_lrs(s, scope, "out")
    lrs_out_c = check_lrs(coarser, scope, "out")
    details.update(
        {
            f"lrs-in[{s.name}]": lrs_in_s.outcome,
            f"lrs-in[{coarser.name}]": lrs_in_c.outcome,
            f"lrs-out[{s.name}]": lrs_out_s.outcome,
            f"lrs-out[{coarser.name}]": lrs_out_c.outcome,
        }
    )
    if lrs_in_s.passed and not lrs_in_c.passed:
        raise InvariantViolation(f"LRS-in of {s.name} did not carry over to {coarser.name}")
    if lrs_out_c.passed and not lrs_out_s.passed:
        raise InvariantViolation(f"LRS-out of {coarser.name} did not carry over to {s.name}")
    return AxiomVerdict("lemma-inheritance", f"{s.name} <= {coarser.name}", scope.describe(), PASS, None, details)


def verify_root_equality(s: TournamentSolution, other: TournamentSolution, scope: Scope) -> AxiomVerdict:
    """root(S) <= root(S') iff S = S', for stable solutions satisfying LRS."""
    root_inc = check_refinement(lift_root(s), lift_root(other), scope)
    eq_fw = check_refinement(s, other, scope)
    eq_bw = check_refinement(other, s, scope)
    equal = eq_fw.passed and eq_bw.passed
    hypotheses = {
        name: check_stability(sol, scope).outcome
        for name, sol in ((f"stability[{s.name}]", s), (f"stability[{other.name}]", other))
    }
    hypotheses.update(
        {
            f"lrs[{s.name}]": check_lrs(s, scope).outcome,
            f"lrs[{other.name}]": check_lrs(other, scope).outcome,
        }
    )
    hold = all(v != FAIL for v in hypotheses.values())
    details = dict(hypotheses, root_inclusion=root_inc.outcome, equal=equal, hypotheses_hold=hold)
    if hold and root_inc.passed != equal:
        raise InvariantViolation(f"root inclusion and equality disagree for {s.name}, {other.name}")
    return AxiomVerdict(
        "root-equality", f"{s.name}, {other.name}", scope.describe(), PASS, root_inc.witness, details
    )


def lift_lrs_failure(s: TournamentSolution, t: Tournament, a: int) -> AxiomVerdict:
    """Turn an LRS-in failure (t, a) into a stability failure on duplicate_link(t, a)."""
    if not lrs_violated(s, t, a, "in"):
        raise ValueError("(t, a) is not an LRS-in failure")
    big = duplicate_link(t, a)
    x, y = duplicate_link_halves(big)
    cf = s.induced(big)
    scope = Scope(max_order=big.order, exhaustive_up_to=0, min_order=big.order, extra=(big,))

    # external stability of both halves, as the construction promises
    for half, other in ((x, y), (y, x)):
        for v in members(other):
            if cf.choose_mask(half | (1 << v)) >> v & 1:
                raise InvariantViolation("an outside alternative was chosen next to a half")

    sx = cf.choose_mask(x)
    for v in members(y):
        b = x | (1 << v)
        if cf.choose_mask(b) != sx:
            # S(B) lies in X, X lies in B, yet S(X) differs
            w = Witness((big,), _sets(B=b, C=x), note="alpha violated on the linked tournament")
            return _verdict("stability", s.name, scope, w, source_order=t.order, alternative=a)
    grown = x
    for v in members(y):
        nxt = grown | (1 << v)
        if cf.choose_mask(nxt) != sx:
            b, c = grown, x | (1 << v)
            w = Witness((big,), _sets(B=b, C=c), note="gamma violated on the linked tournament")
            return _verdict("stability", s.name, scope, w, source_order=t.order, alternative=a)
        grown = nxt
    raise InvariantViolation("the linked tournament produced no stability violation")


def recheck(verdict: AxiomVerdict, s: TournamentSolution, other: TournamentSolution | None = None) -> bool:
    """Re-derive a failing verdict's violation from its witness alone."""
    w = verdict.witness
    if w is None:
        return False
    ax = verdict.axiom
    t = w.tournaments[0]
    if ax.startswith("alpha"):
        return alpha_violated(s.induced(t), w.mask("B"), w.mask("C"), ax)
    if ax.startswith("gamma"):
        return gamma_violated(s.induced(t), w.mask("B"), w.mask("C"), ax)
    if ax == "stability":
        cf = s.induced(t)
        b, c = w.mask("B"), w.mask("C")
        return alpha_violated(cf, b, c) or gamma_violated(cf, b, c)
    if ax == "idempotency":
        cf = s.induced(t)
        sa = cf.choose_mask(w.mask("A"))
        return cf.choose_mask(sa) != sa
    if ax == "monotonicity":
        return monotonicity_violated(s, t, w.alternative, w.sets["b"][0])
    if ax == "regularity":
        return is_regular(t) and s.choose(t) != t.full
    if ax.startswith("lrs"):
        direction = {"lrs": "both", "lrs-in": "in", "lrs-out": "out"}[ax]
        return lrs_violated(s, t, w.alternative, direction)
    if ax == "composition":
        blocks = [w.sets[k] for k in sorted((k for k in w.sets if k.startswith("B")), key=lambda k: int(k[1:]))]
        return composition_violated(s, t, blocks, w.tournaments[1])
    if ax == "well-defined":
        rep = minimal_stable_sets_mask(s.induced(t), w.mask("A"))
        return not rep.well_defined
    if ax == "local-alpha":
        cf = s.induced(t)
        x, y, z = w.mask("X"), w.mask("Y"), w.mask("Z")
        return x in minimal_stable_sets_mask(cf, z).minimal_stable_sets and x not in minimal_stable_sets_mask(cf, y).minimal_stable_sets
    if ax == "refinement":
        if other is None:
            raise ValueError("refinement re-check needs the coarser solution")
        return s.choose(t) & ~other.choose(t) != 0
    raise ValueError(f"no re-check for {ax}")


# -- sampled pair checks ------------------------------------------------------------


def sample_pair_instances(
    s: TournamentSolution, orders: Iterable[int], count: int, seed: int, hat_route: bool = False
) -> dict[str, AxiomVerdict]:
    """Seeded random (T, B, C) triples for alpha and gamma at the given orders.

    With ``hat_route`` each sampled B is also checked against the hat fixed
    point, so the two characterisations of stability are compared on the
    same instances.
    """
    rng = random.Random(seed)
    orders = list(orders)
    alpha_w = gamma_w = None
    premise_gamma = 0
    hat_misses = 0
    for _ in range(count):
        n = rng.choice(orders)
        t = from_upper_key(n, rng.getrandbits(n * (n - 1) // 2))
        cf = s.induced(t)
        full = t.full
        b = 0
        while b == 0:
            b = rng.getrandbits(n) & full
        sb = cf.choose_mask(b)
        c_alpha = sb | (rng.getrandbits(n) & b)
        if alpha_w is None and alpha_violated(cf, b, c_alpha):
            alpha_w = Witness((t,), _sets(B=b, C=c_alpha), note="sampled alpha violation")
        # C built around S(B) so the gamma premise holds often
        c_gamma = sb | (rng.getrandbits(n) & full & ~b) | (rng.getrandbits(n) & b)
        if cf.choose_mask(c_gamma) == sb:
            premise_gamma += 1
            if gamma_w is None and gamma_violated(cf, b, c_gamma):
                gamma_w = Witness((t,), _sets(B=b, C=c_gamma), note="sampled gamma violation")
        if hat_route and minimal_stable_sets_mask(cf, b).minimal_stable_sets != (sb,):
            hat_misses += 1
    if hat_route and alpha_w is None and gamma_w is None and hat_misses:
        raise InvariantViolation(f"{s.name}: no sampled alpha/gamma violation but {hat_misses} hat misses")
    scope = Scope(max_order=max(orders), exhaustive_up_to=min(orders) - 1, min_order=min(orders), samples=count, seed=seed)
    extra = {"hat_route_misses": hat_misses} if hat_route else {}
    return {
        "alpha": _verdict("alpha", s.name, scope, alpha_w, instances=count, premise_held=count, **extra),
        "gamma": _verdict("gamma", s.name, scope, gamma_w, instances=count, premise_held=premise_gamma, **extra),
    }


def t7_extensions(count: int, seed: int) -> list[Tournament]:
    """Random order-8 tournaments containing T7 or one of its g-weakenings."""
    rng = random.Random(seed)
    out = []
    base = t7()
    for _ in range(count):
        rows = list(base.rows)
        for victim in range(rng.randrange(4)):
            rows[6] &= ~(1 << victim)
            rows[victim] |= 1 << 6
        beats = rng.getrandbits(7)
        for v in range(7):
            if beats >> v & 1:
                rows[v] |= 1 << 7
        rows.append(~beats & 0x7F)
        t = Tournament(8, tuple(rows))
        perm = list(range(8))
        rng.shuffle(perm)
        out.append(permute(t, perm))
    return out


AXIOMS = (
    "alpha",
    "alpha-sub",
    "alpha-sup",
    "gamma",
    "gamma-sub",
    "gamma-sup",
    "idempotency",
    "stability",
    "local-alpha",
    "well-defined",
    "monotonicity",
    "regularity",
    "composition",
    "lrs",
    "lrs-in",
    "lrs-out",
    "refinement",
)


def run_axiom(axiom: str, s: TournamentSolution, scope: Scope, other: TournamentSolution | None = None) -> AxiomVerdict:
    if axiom in ("alpha", "alpha-sub", "alpha-sup"):
        return check_alpha_variants(s, scope)[axiom]
    if axiom in ("gamma", "gamma-sub", "gamma-sup"):
        return check_gamma_variants(s, scope)[axiom]
    if axiom == "idempotency":
        return check_idempotency(s, scope)
    if axiom == "stability":
        return check_stability(s, scope)
    if axiom == "local-alpha":
        return check_local_alpha(s, scope)
    if axiom == "well-defined":
        return check_well_defined(s, scope)
    if axiom == "monotonicity":
        return check_monotonicity(s, scope)
    if axiom == "regularity":
        return check_regularity(s, scope)
    if axiom == "composition":
        return check_composition_consistency(s, scope)
    if axiom in ("lrs", "lrs-in", "lrs-out"):
        return check_lrs(s, scope, {"lrs": "both", "lrs-in": "in", "lrs-out": "out"}[axiom])
    if axiom == "refinement":
        if other is None:
            raise ValueError("refinement needs a second solution")
        return check_refinement(s, other, scope)
    raise KeyError(axiom)
