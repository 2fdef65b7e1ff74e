"""Abstract choice functions together with stable sets and the hat/root operators.

Every choice function here works over a finite universe of ``n`` labelled
alternatives and answers ``choose_mask(A)`` for a nonempty bitmask ``A``.
Results are memoised per instance, so wrapping the same base in several
operators shares work only when the same wrapper instance is reused.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, prod
from typing import Iterable, Mapping, Sequence

from .tournament import mask_of, members


class ChoiceError(ValueError):
    pass


@dataclass(frozen=True)
class StableSetReport:
    feasible_set: int
    minimal_stable_sets: tuple[int, ...]
    all_stable_sets: tuple[int, ...] | None = None

    @property
    def well_defined(self) -> bool:
        return len(self.minimal_stable_sets) == 1

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(members(m)) for m in self.minimal_stable_sets]


class NotWellDefinedError(ChoiceError):
    """Hat is undefined at a feasible set; ``report`` carries the witness."""

    def __init__(self, message: str, report: StableSetReport, labels: Sequence[str] | None = None):
        super().__init__(message)
        self.report = report
        self.labels = labels


class NoStableSetError(NotWellDefinedError):
    pass


class MultipleMinimalStableSetsError(NotWellDefinedError):
    pass


class ChoiceFunction:
    """Base class; subclasses implement ``_choose(mask) -> mask``."""

    def __init__(self, labels: Sequence[str], name: str = ""):
        self.labels = tuple(str(x) for x in labels)
        self.n = len(self.labels)
        self.name = name
        self._memo: dict[int, int] = {}

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    def choose_mask(self, mask: int) -> int:
        try:
            return self._memo[mask]
        except KeyError:
            pass
        if mask == 0 or mask & ~self.universe:
            raise ChoiceError(f"{mask:b} is not a feasible set of this universe")
        out = self._choose(mask)
        if out == 0 or out & ~mask:
            raise ChoiceError(f"{self.name or type(self).__name__} chose {out:b} from {mask:b}")
        self._memo[mask] = out
        return out

    def _choose(self, mask: int) -> int:
        raise NotImplementedError

    def index(self, alt) -> int:
        if isinstance(alt, int) and not isinstance(alt, bool):
            if 0 <= alt < self.n:
                return alt
            raise ChoiceError(f"alternative {alt} out of range")
        try:
            return self.labels.index(str(alt))
        except ValueError:
            raise ChoiceError(f"unknown alternative {alt!r}") from None

    def to_mask(self, alts: Iterable) -> int:
        return mask_of(self.index(a) for a in alts)

    def __call__(self, alts: Iterable) -> frozenset[str]:
        out = self.choose_mask(self.to_mask(alts))
        return frozenset(self.labels[i] for i in members(out))

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.labels[i] for i in members(mask)) + "}"


def feasible_sets(universe: int, max_size: int | None = None) -> list[int]:
    """Nonempty submasks in (size, value) order."""
    subs = []
    sub = universe
    while sub:
        if max_size is None or sub.bit_count() <= max_size:
            subs.append(sub)
        sub = (sub - 1) & universe
    subs.sort(key=lambda m: (m.bit_count(), m))
    return subs


class TableChoice(ChoiceFunction):
    """Explicit table over every feasible set; singletons may be left implicit."""

    def __init__(self, labels: Sequence[str], table: Mapping[int, int], name: str = "table"):
        super().__init__(labels, name)
        full = dict(table)
        for m in feasible_sets(self.universe):
            if m.bit_count() == 1:
                full.setdefault(m, m)
            if m not in full:
                raise ChoiceError(f"table has no entry for {self.fmt(m)}")
            v = full[m]
            if v == 0 or v & ~m:
                raise ChoiceError(f"entry for {self.fmt(m)} is not a nonempty subset of it")
        self.table = full

    def _choose(self, mask: int) -> int:
        return self.table[mask]

    @classmethod
    def from_sets(cls, labels: Sequence[str], entries: Mapping[Iterable, Iterable], name: str = "table"):
        tmp = ChoiceFunction(labels)
        table = {tmp.to_mask(k): tmp.to_mask(v) for k, v in entries.items()}
        return cls(labels, table, name)

    def to_text(self) -> str:
        lines = [self.fmt(self.universe)]
        for m in feasible_sets(self.universe):
            lines.append(f"{self.fmt(m)} -> {self.fmt(self.table[m])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "table") -> "TableChoice":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ChoiceError("empty choice table")
        labels = _parse_set(lines[0], 1)
        if len(set(labels)) != len(labels):
            raise ChoiceError("line 1: duplicate alternatives in the universe")
        entries = {}
        for no, line in enumerate(lines[1:], start=2):
            if "->" not in line:
                raise ChoiceError(f"line {no}: expected '{{...}} -> {{...}}'")
            left, right = line.split("->", 1)
            key = frozenset(_parse_set(left, no))
            if key in entries:
                raise ChoiceError(f"line {no}: duplicate entry")
            entries[key] = _parse_set(right, no)
        return cls.from_sets(labels, entries, name)


_SET_RE = re.compile(r"^\{([^{}]*)\}$")


def _parse_set(text: str, line: int) -> list[str]:
    m = _SET_RE.match(text.strip())
    if not m:
        raise ChoiceError(f"line {line}: expected a set like {{a,b}}, got {text.strip()!r}")
    items = [x.strip() for x in m.group(1).split(",") if x.strip()]
    if not items:
        raise ChoiceError(f"line {line}: empty set")
    return items


# -- stable sets --------------------------------------------------------------


def is_stable_mask(s: ChoiceFunction, x: int, a: int) -> bool:
    if x == 0:
        raise ChoiceError("stable sets are nonempty")
    if x & ~a:
        raise ChoiceError("candidate is not a subset of the feasible set")
    if s.choose_mask(x) != x:
        return False
    for y in members(a & ~x):
        if s.choose_mask(x | (1 << y)) >> y & 1:
            return False
    return True


def is_stable_set(s: ChoiceFunction, x: Iterable, a: Iterable) -> bool:
    return is_stable_mask(s, s.to_mask(x), s.to_mask(a))


def minimal_stable_sets_mask(s: ChoiceFunction, a: int, keep_all: bool = False) -> StableSetReport:
    minimal: list[int] = []
    every: list[int] = []
    for x in feasible_sets(a):
        contains_found = any(m & x == m for m in minimal)
        if contains_found and not keep_all:
            continue
        if is_stable_mask(s, x, a):
            every.append(x)
            if not contains_found:
                minimal.append(x)
    return StableSetReport(a, tuple(minimal), tuple(every) if keep_all else None)


def minimal_stable_sets(s: ChoiceFunction, a: Iterable, keep_all: bool = False) -> StableSetReport:
    return minimal_stable_sets_mask(s, s.to_mask(a), keep_all)


class HatChoice(ChoiceFunction):
    """The unique minimal ``base``-stable set, where that is well defined."""

    def __init__(self, base: ChoiceFunction, name: str | None = None):
        super().__init__(base.labels, name or f"hat:{base.name}")
        self.base = base

    def report(self, mask: int) -> StableSetReport:
        return minimal_stable_sets_mask(self.base, mask)

    def _choose(self, mask: int) -> int:
        rep = self.report(mask)
        if not rep.minimal_stable_sets:
            raise NoStableSetError(
                f"{self.base.name}: no stable set in {self.base.fmt(mask)}", rep, self.labels
            )
        if len(rep.minimal_stable_sets) > 1:
            sets = ", ".join(self.base.fmt(m) for m in rep.minimal_stable_sets)
            raise MultipleMinimalStableSetsError(
                f"{self.base.name}: several minimal stable sets in {self.base.fmt(mask)}: {sets}",
                rep,
                self.labels,
            )
        return rep.minimal_stable_sets[0]


class RootChoice(ChoiceFunction):
    """``base`` where it discards exactly one alternative, everything elsewhere."""

    def __init__(self, base: ChoiceFunction, name: str | None = None):
        super().__init__(base.labels, name or f"root:{base.name}")
        self.base = base

    def _choose(self, mask: int) -> int:
        out = self.base.choose_mask(mask)
        return out if out.bit_count() == mask.bit_count() - 1 else mask


class GammaOnlyChoice(ChoiceFunction):
    """``base`` where it discards at least two alternatives, everything elsewhere."""

    def __init__(self, base: ChoiceFunction, name: str | None = None):
        super().__init__(base.labels, name or f"gamma-only:{base.name}")
        self.base = base

    def _choose(self, mask: int) -> int:
        out = self.base.choose_mask(mask)
        return out if (mask & ~out).bit_count() > 1 else mask


class TrivialChoice(ChoiceFunction):
    def __init__(self, labels: Sequence[str]):
        super().__init__(labels, "trivial")

    def _choose(self, mask: int) -> int:
        return mask


def hat(s: ChoiceFunction) -> HatChoice:
    return HatChoice(s)


def root(s: ChoiceFunction) -> RootChoice:
    return RootChoice(s)


def combinator_gamma_only(s: ChoiceFunction) -> GammaOnlyChoice:
    return GammaOnlyChoice(s)


def is_simple(s: ChoiceFunction, up_to: int | None = None) -> bool:
    """Whether ``s`` discards at most one alternative from every set of size <= ``up_to``."""
    return all(
        s.choose_mask(m).bit_count() >= m.bit_count() - 1 for m in feasible_sets(s.universe, up_to)
    )


def count_simple_choice_functions(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return prod((i + 1) ** comb(n, i) for i in range(2, n + 1))


def count_arbitrary_choice_functions(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return prod((2**i - 1) ** comb(n, i) for i in range(2, n + 1))


def worked_example() -> TableChoice:
    """Three alternatives; pairs pick a (or b over c), the full set picks all."""
    return TableChoice.from_sets(
        "abc",
        {"ab": "a", "bc": "b", "ac": "a", "abc": "abc"},
        name="worked-example",
    )


def two_minimal_example() -> TableChoice:
    """Picks b from {a,b,c} and everything from every other set."""
    return TableChoice.from_sets(
        "abc",
        {"ab": "ab", "bc": "bc", "ac": "ac", "abc": "b"},
        name="two-minimal-example",
    )
