"""End-to-end verifications for the named tournaments and cross-solution facts.

Each verification returns a :class:`Report`: a flat list of labelled
assertions.  Nothing here raises on a mismatch; callers decide whether a
failing report is fatal (the CLI exits with status 10).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import average_choice_size
from .builders import T4_LABELS, duplicate_link, t4, t13
from .canonical import enumerate_nonisomorphic
from .solutions import BA, BP, MC, TC, TEQ, UC, is_retentive, teq_report
from .tournament import local_reverse, mask_of, members

# TEQ of the dominators of x1..x12 in T13 (1-based labels)
T13_TEQ_OF_DOMINATORS = {
    1: {4, 8, 12},
    2: {6, 10, 12},
    3: {6, 7, 9},
    4: {2, 7, 11},
    5: {2, 8, 10},
    6: {4, 9, 11},
    7: {1, 5, 11},
    8: {3, 6, 12},
    9: {2, 5, 7},
    10: {4, 6, 7},
    11: {1, 2, 8},
    12: {3, 4, 9},
}


@dataclass
class Assertion:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    name: str
    assertions: list[Assertion] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def check(self, label: str, passed: bool, detail: str = "") -> bool:
        self.assertions.append(Assertion(label, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_text(self) -> str:
        lines = [f"verify {self.name}"]
        for a in self.assertions:
            line = f"  [{'pass' if a.passed else 'FAIL'}] {a.label}"
            if a.detail:
                line += f"  ({a.detail})"
            lines.append(line)
        done = sum(a.passed for a in self.assertions)
        lines.append(f"  {done}/{len(self.assertions)} assertions hold")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "verification": self.name,
            "passed": self.passed,
            "assertions": [{"label": a.label, "passed": a.passed, "detail": a.detail} for a in self.assertions],
            "extra": self.extra,
        }


def _xs(mask: int) -> str:
    return "{" + ",".join(f"x{i + 1}" for i in members(mask)) + "}"


def verify_t13() -> Report:
    rep = Report("t13")
    t = t13()
    for i, expected in T13_TEQ_OF_DOMINATORS.items():
        got = TEQ.choose(t, t.cols[i - 1])
        want = mask_of(x - 1 for x in expected)
        rep.check(f"TEQ(dominators(x{i})) = {_xs(want)}", got == want, f"got {_xs(got)}" if got != want else "")
    first_twelve = (1 << 12) - 1
    whole = TEQ.choose(t)
    rep.check("TEQ(T13) = {x1,...,x12}", whole == first_twelve, _xs(whole))
    rev = TEQ.choose(local_reverse(t, 12))
    rep.check("TEQ(T13 reversed at x13) = {x1,...,x12}", rev == first_twelve, _xs(rev))
    return rep


def verify_t24() -> Report:
    """Two disjoint minimal retentive sets in the linked order-24 tournament, and a gamma violation."""
    rep = Report("t24")
    t = duplicate_link(t13(), 12)
    m = t.order // 2
    x_half = (1 << m) - 1
    y_half = x_half << m
    rep.check("order is 24", t.order == 24, str(t.order))
    rep.check("X is TEQ-retentive", is_retentive(TEQ, t, x_half))
    rep.check("Y is TEQ-retentive", is_retentive(TEQ, t, y_half))
    report = teq_report(t)
    found = set(report.minimal_retentive_sets)
    rep.check(
        "minimal TEQ-retentive sets are exactly X and Y",
        found == {x_half, y_half},
        f"{len(found)} minimal sets",
    )
    rep.check("TEQ(T24) is everything", report.union == t.full)

    # S(X + y) stays inside X for every y in Y, and symmetrically
    tx, ty = TEQ.choose(t, x_half), TEQ.choose(t, y_half)
    inside = all(TEQ.choose(t, x_half | 1 << v) & ~x_half == 0 for v in members(y_half))
    inside &= all(TEQ.choose(t, y_half | 1 << v) & ~y_half == 0 for v in members(x_half))
    rep.check("TEQ(X + y) within X and TEQ(Y + x) within Y", inside)

    # walk from Y towards X one alternative at a time; the first change is the violation
    pair = None
    grown = y_half
    for v in reversed(list(members(x_half))):
        nxt = grown | 1 << v
        if TEQ.choose(t, nxt) != ty:
            b, c = grown, y_half | 1 << v
            pair = (b, c)
            break
        grown = nxt
    ok = False
    if pair is not None:
        b, c = pair
        sb, sc, su = TEQ.choose(t, b), TEQ.choose(t, c), TEQ.choose(t, b | c)
        ok = sb == sc and su != sb
        rep.extra["gamma_witness"] = {"B": list(members(b)), "C": list(members(c)), "S(B)": list(members(sb)), "S(B u C)": list(members(su))}
    elif TEQ.choose(t, x_half | y_half) not in (tx, ty):
        ok = True
    rep.check("TEQ violates gamma on T24", ok)
    return rep


def verify_fig2() -> Report:
    rep = Report("fig2")
    t = t4()
    tr = local_reverse(t, 0)
    abd = mask_of(T4_LABELS.index(c) for c in "abd")
    b_only = 1 << 1
    for name, sol in (("BP", BP), ("TEQ", TEQ)):
        got = sol.choose(t)
        rep.check(f"{name}(T4) = {{a,b,d}}", got == abd, _labels(got))
        got = sol.choose(tr)
        rep.check(f"{name}(T4 reversed at a) = {{b}}", got == b_only, _labels(got))
    return rep


def _labels(mask: int) -> str:
    return "{" + ",".join(T4_LABELS[i] for i in members(mask)) + "}"


def verify_inclusions(max_order: int = 7) -> Report:
    rep = Report("inclusions")
    chains = (("TEQ", TEQ, "BA", BA), ("BA", BA, "UC", UC), ("UC", UC, "TC", TC), ("BP", BP, "MC", MC), ("MC", MC, "UC", UC))
    bad = {f"{a} <= {b}": None for a, _, b, _ in chains}
    total = 0
    for n in range(1, max_order + 1):
        for t in enumerate_nonisomorphic(n):
            total += 1
            for a, sa, b, sb in chains:
                key = f"{a} <= {b}"
                if bad[key] is None and sa.choose(t) & ~sb.choose(t):
                    bad[key] = t
    for key, witness in bad.items():
        rep.check(f"{key} on orders 1..{max_order}", witness is None, f"{total} tournaments" if witness is None else str(witness))
    return rep


def verify_bp_eq_teq(max_order: int = 5) -> Report:
    rep = Report("bp-eq-teq-5")
    total = 0
    bad = None
    for n in range(1, max_order + 1):
        for t in enumerate_nonisomorphic(n):
            total += 1
            if bad is None and BP.choose(t) != TEQ.choose(t):
                bad = t
    rep.check(f"BP = TEQ on all tournaments of orders 1..{max_order}", bad is None, f"{total} tournaments")
    return rep


def verify_averages(max_order: int = 5) -> Report:
    rep = Report("averages")
    for n in range(2, max_order + 1):
        avg = average_choice_size(BP, n).average
        rep.check(f"average |BP| at order {n} = {n}/2", avg == Fraction(n, 2), str(avg))
    tc5 = average_choice_size(TC, 5).average
    rep.check("average |TC| at order 5 exceeds 5/2", tc5 > Fraction(5, 2), str(tc5))
    return rep


VERIFICATIONS = {
    "t13": verify_t13,
    "t24": verify_t24,
    "fig2": verify_fig2,
    "inclusions": verify_inclusions,
    "bp-eq-teq-5": verify_bp_eq_teq,
    "averages": verify_averages,
}
