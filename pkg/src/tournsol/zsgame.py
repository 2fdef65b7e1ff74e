"""The symmetric zero-sum game of a tournament, solved over the rationals.

The maximin strategy of a tournament game is unique, so any point of
``{p >= 0, sum(p) = 1, p^T G >= 0}`` is the answer.  :func:`maximin` finds one
with a phase-one simplex (Bland's rule); :func:`maximin_by_supports` is an
independent oracle that scans odd supports smallest first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .tournament import Tournament, TournamentError, restrict_mask


class CertificationError(AssertionError):
    """An equilibrium failed one of its structural certificates."""


@dataclass(frozen=True)
class Equilibrium:
    probabilities: tuple[Fraction, ...]
    support: frozenset[int]
    scaled_weights: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "probabilities": [f"{p.numerator}/{p.denominator}" for p in self.probabilities],
            "support": sorted(self.support),
            "scaled_weights": list(self.scaled_weights),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Equilibrium":
        probs = tuple(Fraction(s) for s in data["probabilities"])
        return cls(probs, frozenset(data["support"]), tuple(data["scaled_weights"]))


def skew_adjacency(t: Tournament) -> list[list[int]]:
    n = t.order
    return [[0 if i == j else (1 if t.rows[i] >> j & 1 else -1) for j in range(n)] for i in range(n)]


def column_payoffs(t: Tournament, p) -> list[Fraction]:
    """(p^T G)_j for every column j."""
    g = skew_adjacency(t)
    n = t.order
    return [sum((p[i] * g[i][j] for i in range(n)), Fraction(0)) for j in range(n)]


def _scaled(probs) -> tuple[int, ...]:
    lcm = 1
    for q in probs:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in probs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints)


def certify(t: Tournament, probs) -> Equilibrium:
    """Check feasibility, odd support, odd weights and strict off-support slack."""
    probs = tuple(Fraction(q) for q in probs)
    if len(probs) != t.order:
        raise CertificationError("probability vector has the wrong length")
    if any(q < 0 for q in probs):
        raise CertificationError(f"negative probability in {probs}")
    if sum(probs) != 1:
        raise CertificationError(f"probabilities sum to {sum(probs)}")
    cols = column_payoffs(t, probs)
    support = frozenset(i for i, q in enumerate(probs) if q > 0)
    for j, v in enumerate(cols):
        if v < 0:
            raise CertificationError(f"column {j} has negative payoff {v}")
        if j not in support and v == 0:
            raise CertificationError(f"column {j} outside the support has zero slack")
    if len(support) % 2 == 0:
        raise CertificationError(f"support {sorted(support)} has even size")
    weights = _scaled(probs)
    if any(weights[i] % 2 == 0 for i in support):
        raise CertificationError(f"scaled weights {weights} are not all odd on the support")
    return Equilibrium(probs, support, weights)


def _normalize(row: list[int], den: int) -> tuple[list[int], int]:
    if den < 0:
        row, den = [-v for v in row], -den
    g = den
    for v in row:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return row, den
    return [v // g for v in row], den // g


def _phase_one(t: Tournament) -> list[Fraction]:
    # Fraction-free tableau: row r stands for rows[r] / dens[r]; the last
    # entry of each row is its right-hand side.
    n = t.order
    nvars = 3 * n + 1
    rows: list[list[int]] = []
    for j in range(n):
        # sum_i g_ij p_i - s_j + r_j = 0
        row = [0] * (nvars + 1)
        cj = t.cols[j]
        for i in range(n):
            if i != j:
                row[i] = 1 if cj >> i & 1 else -1
        row[n + j] = -1
        row[2 * n + j] = 1
        rows.append(row)
    row = [0] * (nvars + 1)
    for i in range(n):
        row[i] = 1
    row[3 * n] = 1
    row[nvars] = 1
    rows.append(row)
    dens = [1] * len(rows)
    basis = [2 * n + k for k in range(n + 1)]
    # reduced costs of the phase-one objective (sum of artificials)
    obj = [0] * (nvars + 1)
    for k in range(nvars + 1):
        obj[k] = -sum(r[k] for r in rows)
    for k in range(2 * n, nvars):
        obj[k] = 0
    obj_den = 1

    while True:
        entering = next((k for k in range(nvars) if obj[k] < 0), None)
        if entering is None:
            break
        leave = None
        for r, row in enumerate(rows):
            coef = row[entering]
            if coef > 0:
                if leave is None:
                    leave = r
                    continue
                lhs = row[nvars] * rows[leave][entering]
                rhs = rows[leave][nvars] * coef
                if lhs < rhs or (lhs == rhs and basis[r] < basis[leave]):
                    leave = r
        if leave is None:
            raise CertificationError("phase-one simplex is unbounded, which cannot happen")
        prow = rows[leave]
        piv = prow[entering]
        rows[leave], dens[leave] = _normalize(prow[:], piv)
        for r in range(len(rows)):
            if r == leave:
                continue
            f = rows[r][entering]
            if f:
                new = [a * piv - f * b for a, b in zip(rows[r], prow)]
                rows[r], dens[r] = _normalize(new, dens[r] * piv)
        f = obj[entering]
        if f:
            new = [a * piv - f * b for a, b in zip(obj, prow)]
            obj, obj_den = _normalize(new, obj_den * piv)
        basis[leave] = entering

    if any(rows[r][nvars] for r, b in enumerate(basis) if b >= 2 * n):
        raise CertificationError("phase-one simplex found the tournament game infeasible")
    p = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            p[b] = Fraction(rows[r][nvars], dens[r])
    return p


@lru_cache(maxsize=100_000)
def maximin(t: Tournament) -> Equilibrium:
    """The unique maximin distribution of the tournament game, certified."""
    return certify(t, _phase_one(t))


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of an overdetermined-or-square system, else None."""
    m, k = len(a), len(a[0])
    aug = [row[:] + [rhs] for row, rhs in zip(a, b)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, m)):
        return None
    return [aug[i][k] for i in range(k)]


def maximin_by_supports(t: Tournament) -> Equilibrium:
    """Oracle: try odd supports in increasing size, solving p^T G = 0 on each."""
    n = t.order
    g = skew_adjacency(t)
    for size in range(1, n + 1, 2):
        for support in itertools.combinations(range(n), size):
            a = [[Fraction(g[i][j]) for i in support] for j in support]
            a.append([Fraction(1)] * size)
            b = [Fraction(0)] * size + [Fraction(1)]
            sol = _solve_exact(a, b)
            if sol is None or any(v <= 0 for v in sol):
                continue
            p = [Fraction(0)] * n
            for i, v in zip(support, sol):
                p[i] = v
            if all(sum((p[i] * g[i][j] for i in support), Fraction(0)) >= 0 for j in range(n)):
                return certify(t, p)
    raise CertificationError("no odd support yields an equilibrium")


def membership_test(t: Tournament, a: int) -> bool:
    """a is in the bipartisan set iff the game without a puts more mass on D(a) than on its dominators."""
    t._check(a)
    if t.order < 2:
        raise TournamentError("membership test needs at least two alternatives")
    sub, idx = restrict_mask(t, t.full & ~(1 << a))
    eq = maximin(sub)
    mass_dominion = sum((eq.probabilities[k] for k, v in enumerate(idx) if t.rows[a] >> v & 1), Fraction(0))
    mass_dominators = sum((eq.probabilities[k] for k, v in enumerate(idx) if t.cols[a] >> v & 1), Fraction(0))
    return mass_dominion > mass_dominators


def support_mask(t: Tournament) -> int:
    eq = maximin(t)
    m = 0
    for i in eq.support:
        m |= 1 << i
    return m

