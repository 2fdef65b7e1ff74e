"""Canonical certificates and isomorph-free enumeration.

Certificates come from a plain individualization/refinement search.
Alternatives are coloured by out-degree and refined to an equitable
colouring; the search then branches on the first non-singleton cell and keeps
the smallest relabeled upper triangle over all leaves.

No automorphism pruning is done.  At the orders we care about (n <= 12) the
search tree stays small, and counting the leaves that hit the minimum gives
the automorphism group order for free.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator

from .tournament import ResourceGuardError, Tournament, from_upper_key

MAX_CANON_ORDER = 12
MAX_NONISO_ORDER = 8


@dataclass(frozen=True, order=True)
class CanonicalCertificate:
    order: int
    distinguished: bool
    key: int

    def to_bytes(self) -> bytes:
        nbits = self.order * (self.order - 1) // 2
        body = self.key.to_bytes(max(1, (nbits + 7) // 8), "big")
        return bytes([self.order, int(self.distinguished)]) + body

    def hex(self) -> str:
        return self.to_bytes().hex()


def _refine(t: Tournament, colors: list[int]) -> list[int]:
    n = t.order
    ncolors = len(set(colors))
    while True:
        cells: dict[int, int] = {}
        for v, c in enumerate(colors):
            cells[c] = cells.get(c, 0) | (1 << v)
        order = sorted(cells)
        sigs = [
            (colors[v],) + tuple((t.rows[v] & cells[c]).bit_count() for c in order)
            for v in range(n)
        ]
        rank = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def _leaf_key(t: Tournament, colors: list[int]) -> int:
    pos = colors  # discrete: colour == position
    n = t.order
    inv = [0] * n
    for v, p in enumerate(pos):
        inv[p] = v
    key = 0
    bit = 0
    for i in range(n):
        row = t.rows[inv[i]]
        for j in range(i + 1, n):
            if row >> inv[j] & 1:
                key |= 1 << bit
            bit += 1
    return key


def _search(t: Tournament, colors: list[int]) -> tuple[int, int]:
    """(minimal leaf key, number of leaves attaining it)."""
    colors = _refine(t, colors)
    n = t.order
    if len(set(colors)) == n:
        return _leaf_key(t, colors), 1
    counts: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        counts.setdefault(c, []).append(v)
    target = min(c for c, vs in counts.items() if len(vs) > 1)
    best, hits = None, 0
    for v in counts[target]:
        branch = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
        key, k = _search(t, branch)
        if best is None or key < best:
            best, hits = key, k
        elif key == best:
            hits += k
    return best, hits


def _initial(t: Tournament, distinguished: int | None) -> list[int]:
    if distinguished is None:
        return [r.bit_count() + 1 for r in t.rows]
    return [0 if v == distinguished else r.bit_count() + 1 for v, r in enumerate(t.rows)]


_lock = threading.Lock()


@lru_cache(maxsize=200_000)
def _cached(t: Tournament, distinguished: int | None) -> tuple[int, int]:
    return _search(t, _initial(t, distinguished))


def canonical_certificate(t: Tournament, distinguished: int | None = None) -> CanonicalCertificate:
    """Isomorphism-invariant key; with ``distinguished``, invariant under isomorphisms fixing it."""
    if t.order > MAX_CANON_ORDER:
        raise ResourceGuardError(f"canonical form of order {t.order} exceeds limit {MAX_CANON_ORDER}")
    if distinguished is not None:
        t._check(distinguished)
    key, _ = _cached(t, distinguished)
    return CanonicalCertificate(t.order, distinguished is not None, key)


def automorphism_count(t: Tournament) -> int:
    if t.order > MAX_CANON_ORDER:
        raise ResourceGuardError(f"order {t.order} exceeds limit {MAX_CANON_ORDER}")
    return _cached(t, None)[1]


def labeling_count(t: Tournament) -> int:
    """Number of labeled tournaments isomorphic to ``t``."""
    return factorial(t.order) // automorphism_count(t)


def canonical_form(t: Tournament) -> Tournament:
    return from_upper_key(t.order, canonical_certificate(t).key)


def is_isomorphic(t: Tournament, u: Tournament) -> bool:
    return t.order == u.order and canonical_certificate(t) == canonical_certificate(u)


@lru_cache(maxsize=None)
def _noniso(n: int) -> tuple[Tournament, ...]:
    if n == 1:
        return (Tournament(1, (0,)),)
    seen: dict[int, Tournament] = {}
    for base in _noniso(n - 1):
        for pattern in range(1 << (n - 1)):
            # new alternative n-1 beats the members of ``pattern``
            rows = [row | ((0 if pattern >> i & 1 else 1) << (n - 1)) for i, row in enumerate(base.rows)]
            rows.append(pattern)
            cand = Tournament(n, tuple(rows))
            cert = canonical_certificate(cand)
            if cert.key not in seen:
                seen[cert.key] = canonical_form(cand)
    return tuple(seen[k] for k in sorted(seen))


def enumerate_nonisomorphic(n: int, limit: int = MAX_NONISO_ORDER) -> Iterator[Tournament]:
    """One canonical representative per isomorphism class, sorted by certificate."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > limit:
        raise ResourceGuardError(f"non-isomorphic enumeration of order {n} exceeds limit {limit}")
    with _lock:
        reps = _noniso(n)
    yield from reps
