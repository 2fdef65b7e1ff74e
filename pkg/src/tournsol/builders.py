"""Named tournaments and the two-copy linking construction."""

from __future__ import annotations

from functools import lru_cache

from .tournament import Tournament, TournamentError, mask_of

T4_LABELS = "abcd"
T7_LABELS = "abcdefg"

# dominators of x1..x13 (1-based)
T13_DOMINATORS = {
    1: {4, 5, 6, 8, 9, 12},
    2: {1, 6, 7, 10, 12},
    3: {1, 2, 6, 7, 9, 10},
    4: {2, 3, 7, 8, 11},
    5: {2, 3, 4, 8, 10, 11},
    6: {4, 5, 9, 11, 12},
    7: {1, 5, 6, 11, 12, 13},
    8: {2, 3, 6, 7, 12, 13},
    9: {2, 4, 5, 7, 8, 13},
    10: {1, 4, 6, 7, 8, 9, 13},
    11: {1, 2, 3, 8, 9, 10, 13},
    12: {3, 4, 5, 9, 10, 11, 13},
    13: {1, 2, 3, 4, 5, 6},
}


def _edges(labels: str, pairs: str) -> list[tuple[int, int]]:
    return [(labels.index(p[0]), labels.index(p[1])) for p in pairs.split()]


@lru_cache(maxsize=None)
def t4() -> Tournament:
    """a>b, a>c, b>c, b>d, c>d, d>a."""
    return Tournament.from_edges(4, _edges(T4_LABELS, "ab ac bc bd cd da"))


@lru_cache(maxsize=None)
def t7() -> Tournament:
    """Two 3-cycles abc and def, with d>a, e>b, f>c, {d,e,f}>g>{a,b,c}.

    The remaining cross edges run from {a,b,c} down to {d,e,f}.
    """
    pairs = "ab bc ca de ef fd da eb fc ae af bd bf cd ce dg eg fg ga gb gc"
    return Tournament.from_edges(7, _edges(T7_LABELS, pairs))


@lru_cache(maxsize=None)
def t13() -> Tournament:
    """The order-13 tournament on x1..x13 (indices 0..12) given by its dominator sets."""
    edges = [(d - 1, x - 1) for x, doms in T13_DOMINATORS.items() for d in doms]
    return Tournament.from_edges(13, edges)


def duplicate_link(t: Tournament, a: int) -> Tournament:
    """Two copies X, Y of ``t`` minus ``a``, cross-linked around the role of ``a``.

    Layout: X occupies indices ``0..n-2`` and Y ``n-1..2n-3``, each copy listing
    the alternatives of ``t`` other than ``a`` in ascending order.  With X1/Y1
    the copies of the dominators of ``a`` and X2/Y2 the copies of its dominion,
    the cross edges are X1 > Y2, Y2 > X2, X2 > Y1 and Y1 > X1.
    """
    t._check(a)
    if t.order < 2:
        raise TournamentError("duplicate_link needs order >= 2")
    rest = [v for v in range(t.order) if v != a]
    m = len(rest)
    dominators_a = t.cols[a]
    first = [bool(dominators_a >> v & 1) for v in rest]  # in X1 / Y1
    rows = [0] * (2 * m)
    for i, v in enumerate(rest):
        inner = mask_of(k for k, u in enumerate(rest) if t.beats(v, u))
        rows[i] |= inner
        rows[m + i] |= inner << m
    for i in range(m):
        for j in range(m):
            # x = X[i], y = Y[j]
            if first[i] and not first[j]:
                x_beats_y = True  # X1 > Y2
            elif not first[i] and first[j]:
                x_beats_y = True  # X2 > Y1
            elif first[i] and first[j]:
                x_beats_y = False  # Y1 > X1
            else:
                x_beats_y = False  # Y2 > X2
            if x_beats_y:
                rows[i] |= 1 << (m + j)
            else:
                rows[m + j] |= 1 << i
    return Tournament(2 * m, tuple(rows))


def duplicate_link_halves(t: Tournament) -> tuple[int, int]:
    """Masks of the X and Y halves of a :func:`duplicate_link` result."""
    m = t.order // 2
    x = (1 << m) - 1
    return x, x << m


def t24() -> Tournament:
    return duplicate_link(t13(), 12)
