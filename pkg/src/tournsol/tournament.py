"""Tournaments as immutable bit-matrices.

Alternatives are dense indices ``0..n-1``.  Row ``i`` is an integer bitmask
whose bit ``j`` is set iff ``i`` dominates ``j``; subsets of alternatives are
likewise passed around as bitmasks internally, and as frozensets at the public
edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class TournamentError(ValueError):
    """Raised for malformed tournaments or out-of-range arguments."""


class TrnParseError(TournamentError):
    pass


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: int) -> Iterator[int]:
    """All nonempty submasks of ``mask`` (descending numeric order)."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Tournament:
    """A complete asymmetric dominance relation on ``order`` alternatives."""

    order: int
    rows: tuple[int, ...]
    cols: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise TournamentError("a tournament needs at least one alternative")
        if len(self.rows) != n:
            raise TournamentError(f"expected {n} rows, got {len(self.rows)}")
        full = (1 << n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise TournamentError(f"row {i} has bits outside 0..{n - 1}")
            if row >> i & 1:
                raise TournamentError(f"diagonal cell ({i},{i}) is set")
        for i in range(n):
            for j in range(i + 1, n):
                ij = self.rows[i] >> j & 1
                ji = self.rows[j] >> i & 1
                if ij == ji:
                    kind = "both set" if ij else "both unset"
                    raise TournamentError(f"pair ({i},{j}) is {kind}")
        cols = [0] * n
        for i, row in enumerate(self.rows):
            for j in members(row):
                cols[j] |= 1 << i
        object.__setattr__(self, "cols", tuple(cols))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool | int]]) -> "Tournament":
        n = len(matrix)
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise TournamentError(f"row {i} has length {len(row)}, expected {n}")
        return cls(n, tuple(mask_of(j for j, v in enumerate(row) if v) for row in matrix))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        rows = [0] * n
        for a, b in edges:
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @classmethod
    def transitive(cls, n: int) -> "Tournament":
        """``0 > 1 > ... > n-1``."""
        return cls(n, tuple(((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)))

    @classmethod
    def cyclic(cls, n: int) -> "Tournament":
        """Rotational regular tournament of odd order: i beats i+1..i+(n-1)/2."""
        if n % 2 == 0:
            raise TournamentError("cyclic tournaments need odd order")
        k = (n - 1) // 2
        return cls(n, tuple(mask_of((i + d) % n for d in range(1, k + 1)) for i in range(n)))

    # -- queries ----------------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    def _check(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise TournamentError(f"alternative {a} out of range for order {self.order}")

    def beats(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def dominion(self, a: int) -> frozenset[int]:
        self._check(a)
        return frozenset(members(self.rows[a]))

    def dominators(self, a: int) -> frozenset[int]:
        self._check(a)
        return frozenset(members(self.cols[a]))

    def out_degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def matrix(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.order)] for i in range(self.order)]

    def upper_key(self) -> int:
        """Upper-triangle bit pattern; the labeled-enumeration index of ``self``."""
        key = 0
        bit = 0
        for i in range(self.order):
            for j in range(i + 1, self.order):
                if self.rows[i] >> j & 1:
                    key |= 1 << bit
                bit += 1
        return key

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """(order, row-major matrix) ordering used for minimal witnesses."""
        return (self.order, tuple(tuple(r) for r in self.matrix()))

    def __str__(self) -> str:
        return to_trn(self).rstrip("\n")


def validate(matrix: Sequence[Sequence[bool | int]]) -> Tournament:
    return Tournament.from_matrix(matrix)


def from_upper_key(n: int, key: int) -> Tournament:
    rows = [0] * n
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            if key >> bit & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
            bit += 1
    return Tournament(n, tuple(rows))


def enumerate_labeled(n: int, limit: int = 7) -> Iterator[Tournament]:
    """Every labeled tournament on ``n`` alternatives, by ascending upper-triangle key."""
    if n < 1:
        raise TournamentError("order must be positive")
    if n > limit:
        raise ResourceGuardError(f"labeled enumeration of order {n} exceeds limit {limit}")
    for key in range(1 << (n * (n - 1) // 2)):
        yield from_upper_key(n, key)


class ResourceGuardError(RuntimeError):
    """A computation was refused because its input exceeds a configured bound."""


# -- derived tournaments ---------------------------------------------------


def restrict_mask(t: Tournament, mask: int) -> tuple[Tournament, list[int]]:
    idx = members(mask)
    if not idx:
        raise TournamentError("cannot restrict to an empty set")
    pos = {v: k for k, v in enumerate(idx)}
    rows = tuple(mask_of(pos[j] for j in members(t.rows[v] & mask)) for v in idx)
    return Tournament(len(idx), rows), idx


def restrict(t: Tournament, alternatives: Iterable[int]) -> tuple[Tournament, list[int]]:
    """Subtournament on ``alternatives``; also returns new-index -> old-index."""
    alts = set(alternatives)
    for a in alts:
        t._check(a)
    return restrict_mask(t, mask_of(alts))


def local_reverse(t: Tournament, a: int) -> Tournament:
    """Flip every edge incident to ``a``."""
    t._check(a)
    bit = 1 << a
    rows = []
    for i, row in enumerate(t.rows):
        if i == a:
            rows.append(t.cols[a])
        else:
            rows.append(row ^ bit)
    return Tournament(t.order, tuple(rows))


def reverse_all(t: Tournament) -> Tournament:
    return Tournament(t.order, t.cols)


def permute(t: Tournament, perm: Sequence[int]) -> Tournament:
    """Relabel so that old alternative ``i`` becomes ``perm[i]``."""
    n = t.order
    rows = [0] * n
    for i in range(n):
        rows[perm[i]] = mask_of(perm[j] for j in members(t.rows[i]))
    return Tournament(n, tuple(rows))


def is_regular(t: Tournament) -> bool:
    return all(2 * d == t.order - 1 for d in t.out_degrees())


def covers(t: Tournament, a: int, b: int) -> bool:
    """True iff D(b) is a subset of D(a)."""
    t._check(a)
    t._check(b)
    if a == b:
        raise TournamentError("covering is defined for distinct alternatives")
    return t.rows[b] & ~t.rows[a] == 0


def condorcet_winner(t: Tournament) -> int | None:
    for a, row in enumerate(t.rows):
        if row.bit_count() == t.order - 1:
            return a
    return None


def condorcet_loser(t: Tournament) -> int | None:
    for a, row in enumerate(t.rows):
        if row == 0:
            return a
    return None


# -- components and products -----------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[tuple[int, ...], ...]
    summary: Tournament

    def reconstruct(self, parts: Sequence[Tournament]) -> Tournament:
        """Product of ``parts`` over the summary, relabeled back onto the blocks."""
        prod = product(self.summary, parts)
        order = [v for block in self.blocks for v in block]
        return permute(prod, order)


def is_component(t: Tournament, mask: int) -> bool:
    if mask == 0:
        return False
    for a in members(t.full & ~mask):
        beaten_by_a = t.rows[a] & mask
        if beaten_by_a and beaten_by_a != mask:
            return False
    return True


def _summary(t: Tournament, blocks: Sequence[tuple[int, ...]]) -> Tournament:
    reps = [b[0] for b in blocks]
    k = len(blocks)
    rows = tuple(mask_of(j for j in range(k) if j != i and t.beats(reps[i], reps[j])) for i in range(k))
    return Tournament(k, rows)


def decomposition(t: Tournament, blocks: Sequence[Iterable[int]]) -> Decomposition:
    bl = tuple(tuple(sorted(b)) for b in blocks)
    seen = 0
    for b in bl:
        m = mask_of(b)
        if not b or m & seen:
            raise TournamentError("blocks must be nonempty and disjoint")
        if not is_component(t, m):
            raise TournamentError(f"{b} is not a component")
        seen |= m
    if seen != t.full:
        raise TournamentError("blocks do not cover all alternatives")
    return Decomposition(bl, _summary(t, bl))


def nontrivial_components(t: Tournament, limit: int = 12) -> list[int]:
    """Masks of all components B with 1 < |B| < n."""
    n = t.order
    full = t.full
    found = []
    if n <= limit:
        for m in range(1, full):
            if m.bit_count() > 1 and is_component(t, m):
                found.append(m)
        return found
    # pair growth: the smallest component containing a pair is its closure
    seen = set()
    for a, b in itertools.combinations(range(n), 2):
        m = (1 << a) | (1 << b)
        while True:
            grow = 0
            for x in members(full & ~m):
                hit = t.rows[x] & m
                if hit and hit != m:
                    grow |= 1 << x
            if not grow:
                break
            m |= grow
        if m != full and m not in seen:
            seen.add(m)
            found.append(m)
    return found


def find_components(t: Tournament) -> list[Decomposition]:
    """Trivial decompositions plus those induced by maximal nontrivial components."""
    n = t.order
    out = [decomposition(t, [(i,) for i in range(n)])]
    if n > 1:
        out.append(decomposition(t, [tuple(range(n))]))
    comps = nontrivial_components(t)
    maximal = [m for m in comps if not any(o != m and o & m == m for o in comps)]
    for m in maximal:
        blocks = [tuple(members(m))] + [(x,) for x in members(t.full & ~m)]
        out.append(decomposition(t, blocks))
    union = 0
    disjoint = True
    for m in maximal:
        if union & m:
            disjoint = False
        union |= m
    if len(maximal) > 1 and disjoint:
        blocks = [tuple(members(m)) for m in maximal] + [(x,) for x in members(t.full & ~union)]
        out.append(decomposition(t, blocks))
    return out


def product(summary: Tournament, parts: Sequence[Tournament]) -> Tournament:
    """Replace summary alternative ``i`` by ``parts[i]``; parts are laid out consecutively."""
    if not parts:
        raise TournamentError("product needs at least one part")
    if len(parts) != summary.order:
        raise TournamentError(f"summary has order {summary.order} but {len(parts)} parts given")
    offsets = list(itertools.accumulate((p.order for p in parts), initial=0))
    n = offsets[-1]
    block_mask = [((1 << p.order) - 1) << off for p, off in zip(parts, offsets)]
    rows = []
    for i, p in enumerate(parts):
        outside = 0
        for j in members(summary.rows[i]):
            outside |= block_mask[j]
        for row in p.rows:
            rows.append((row << offsets[i]) | outside)
    return Tournament(n, tuple(rows))


# -- .trn text format -------------------------------------------------------


def to_trn(t: Tournament) -> str:
    lines = [str(t.order)]
    for i in range(t.order):
        lines.append("".join("1" if t.rows[i] >> j & 1 else "0" for j in range(t.order)))
    return "\n".join(lines) + "\n"


def parse_trn(text: str) -> Tournament:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TrnParseError("empty input")
    head = lines[0]
    if not head.isdigit() or not head.isascii():
        raise TrnParseError(f"line 1: expected a decimal order, got {head!r}")
    n = int(head)
    if n < 1:
        raise TrnParseError("line 1: order must be positive")
    if len(lines) != n + 1:
        raise TrnParseError(f"expected {n} matrix lines, got {len(lines) - 1}")
    matrix = []
    for i, line in enumerate(lines[1:]):
        if len(line) != n:
            raise TrnParseError(f"line {i + 2}: expected {n} characters, got {len(line)}")
        bad = [c for c in line if c not in "01"]
        if bad:
            raise TrnParseError(f"line {i + 2}: invalid character {bad[0]!r}")
        matrix.append([c == "1" for c in line])
    try:
        return Tournament.from_matrix(matrix)
    except TrnParseError:
        raise
    except TournamentError as exc:
        raise TrnParseError(str(exc)) from exc
