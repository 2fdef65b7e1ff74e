import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournsol.builders import t4
from tournsol.choice import (
    ChoiceError,
    ChoiceFunction,
    HatChoice,
    MultipleMinimalStableSetsError,
    NoStableSetError,
    RootChoice,
    TableChoice,
    TrivialChoice,
    combinator_gamma_only,
    count_arbitrary_choice_functions,
    count_simple_choice_functions,
    feasible_sets,
    hat,
    is_simple,
    is_stable_mask,
    is_stable_set,
    minimal_stable_sets,
    minimal_stable_sets_mask,
    two_minimal_example,
    root,
    worked_example,
)
from tournsol.solutions import T4_SPECIAL, TC, lift_hat
from tournsol.tournament import Tournament, members, submasks

from conftest import tournaments


def brute_minimal_stable(s: ChoiceFunction, a: int) -> set[int]:
    stable = [x for x in range(1, a + 1) if x & ~a == 0 and is_stable_mask(s, x, a)]
    return {x for x in stable if not any(y != x and y & x == y for y in stable)}


@st.composite
def tables(draw, max_n=4):
    n = draw(st.integers(2, max_n))
    labels = "abcdefg"[:n]
    universe = (1 << n) - 1
    table = {}
    for m in feasible_sets(universe):
        subs = [s for s in submasks(m)]
        table[m] = draw(st.sampled_from(sorted(subs)))
    return TableChoice(labels, table)


def test_worked_example_stable_sets():
    s = worked_example()
    rep = minimal_stable_sets(s, "abc", keep_all=True)
    assert rep.as_sets() == [frozenset({0})]
    assert {frozenset(members(m)) for m in rep.all_stable_sets} == {frozenset({0}), frozenset({0, 1, 2})}
    assert is_stable_set(s, "a", "abc")
    assert hat(s)("abc") == {"a"}


def test_whole_set_stable_when_chosen():
    s = worked_example()
    assert is_stable_set(s, "abc", "abc")


def test_stable_set_errors():
    s = worked_example()
    with pytest.raises(ChoiceError):
        is_stable_set(s, "ab", "bc")
    with pytest.raises(ChoiceError):
        is_stable_set(s, "", "abc")


def test_two_minimal_example_not_well_defined():
    s = two_minimal_example()
    rep = minimal_stable_sets(s, "abc")
    assert rep.as_sets() == [frozenset({0, 1}), frozenset({1, 2})]
    assert not rep.well_defined
    with pytest.raises(MultipleMinimalStableSetsError) as err:
        hat(s)("abc")
    assert err.value.report.minimal_stable_sets == rep.minimal_stable_sets


def test_t4_special_second_level_has_no_stable_set():
    first = lift_hat(T4_SPECIAL)
    assert first(t4()) == {0, 1, 2}
    second = lift_hat(first)
    with pytest.raises(NoStableSetError) as err:
        second(t4())
    assert err.value.report.minimal_stable_sets == ()


def test_t4_special_candidate_sets_on_t4():
    # brute force over all 15 subsets: under hat(S) only... nothing is stable
    cf = lift_hat(T4_SPECIAL).induced(t4())
    assert [x for x in range(1, 16) if is_stable_mask(cf, x, 15)] == []
    assert is_simple(T4_SPECIAL.induced(t4()))


def test_root_examples(tr3):
    triv = TrivialChoice("abc")
    r = root(triv)
    assert all(r.choose_mask(m) == m for m in feasible_sets(7))
    loser = Tournament(4, (0b1010, 0b1100, 0b1001, 0))  # 3-cycle 0>1>2>0, 3 loses to all
    rt = RootChoice(TC.induced(loser))
    assert rt.choose_mask(15) == 0b0111
    assert RootChoice(TC.induced(tr3)).choose_mask(7) == 7


def test_simple():
    assert is_simple(RootChoice(TC.induced(Tournament.transitive(5))))
    assert not is_simple(TC.induced(Tournament.transitive(3)))


@pytest.mark.parametrize("n, simple, arbitrary", [(2, 3, 3), (3, 108, 189), (4, 933120, None)])
def test_counts(n, simple, arbitrary):
    assert count_simple_choice_functions(n) == simple
    if arbitrary is not None:
        assert count_arbitrary_choice_functions(n) == arbitrary


def test_count_brute_force_n3():
    # enumerate every table on three alternatives and count the simple ones
    sets = feasible_sets(7)
    big = [m for m in sets if m.bit_count() > 1]
    options = [[s for s in submasks(m)] for m in big]
    total = simple = 0
    import itertools

    for combo in itertools.product(*options):
        total += 1
        simple += all(c.bit_count() >= m.bit_count() - 1 for m, c in zip(big, combo))
    assert (simple, total) == (count_simple_choice_functions(3), count_arbitrary_choice_functions(3))


def test_count_ordering():
    for n in range(2, 7):
        s, a = count_simple_choice_functions(n), count_arbitrary_choice_functions(n)
        assert s <= a and (s == a) == (n == 2)
    with pytest.raises(ValueError):
        count_simple_choice_functions(1)


def test_gamma_only_alpha_violation(tr3):
    g = combinator_gamma_only(TC.induced(tr3))
    assert g.choose_mask(0b111) == 0b001
    assert g.choose_mask(0b011) == 0b011


def test_gamma_only_agrees_when_two_dropped():
    t = Tournament.transitive(5)
    base = TC.induced(t)
    g = combinator_gamma_only(base)
    for m in feasible_sets(t.full):
        if (m & ~base.choose_mask(m)).bit_count() >= 2:
            assert g.choose_mask(m) == base.choose_mask(m)


def test_table_text_round_trip():
    s = worked_example()
    text = s.to_text()
    assert text.splitlines()[0] == "{a,b,c}"
    back = TableChoice.from_text(text)
    assert back.table == s.table
    with pytest.raises(ChoiceError, match="line 2"):
        TableChoice.from_text("{a,b}\n{a,b} => {a}\n")
    with pytest.raises(ChoiceError):
        TableChoice.from_sets("ab", {"ab": "c"})


def test_missing_entry_is_an_error():
    with pytest.raises(ChoiceError, match="no entry"):
        TableChoice("abc", {0b011: 0b001})


def test_invalid_choice_rejected():
    with pytest.raises(ChoiceError):
        TableChoice("ab", {0b11: 0b100})


@given(tables(5))
@settings(max_examples=80, deadline=None)
def test_minimal_stable_sets_against_brute_force(s):
    for a in feasible_sets(s.universe):
        rep = minimal_stable_sets_mask(s, a)
        assert set(rep.minimal_stable_sets) == brute_minimal_stable(s, a)
        for x in rep.minimal_stable_sets:
            assert is_stable_mask(s, x, a)


@pytest.mark.parametrize("name", ["tc", "uc", "ba", "copeland", "bp", "teq", "pos", "t4special"])
def test_hat_within_root_for_tournament_solutions(name):
    from tournsol.canonical import enumerate_nonisomorphic
    from tournsol.solutions import get_solution

    sol = get_solution(name)
    for n in range(1, 7):
        for t in enumerate_nonisomorphic(n):
            cf = sol.induced(t)
            h, r = HatChoice(cf), RootChoice(cf)
            for a in feasible_sets(t.full):
                rep = h.report(a)
                if rep.well_defined and r.choose_mask(a) != a:
                    assert rep.minimal_stable_sets[0] & ~r.choose_mask(a) == 0


def test_hat_within_root_fails_for_arbitrary_tables():
    # S drops only b from {b,c,d}, yet {b} is the unique minimal stable set
    s = TableChoice.from_sets(
        "bcd",
        {"bc": "b", "bd": "b", "cd": "c", "bcd": "cd"},
    )
    assert RootChoice(s)("bcd") == {"c", "d"}
    assert HatChoice(s)("bcd") == {"b"}


@given(tournaments(2, 5), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_generated_by_anything_between_s_and_root(t, rnd):
    base = TC.induced(t)
    rt = RootChoice(base)
    table = {}
    for a in feasible_sets(t.full):
        lo, hi = base.choose_mask(a), rt.choose_mask(a)
        table[a] = lo | (rnd.getrandbits(t.order) & hi)
    between = TableChoice([str(i) for i in range(t.order)], table)
    h = HatChoice(between)
    for a in feasible_sets(t.full):
        assert h.choose_mask(a) == base.choose_mask(a)
