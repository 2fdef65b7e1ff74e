import pytest
from hypothesis import given, settings

from tournsol.builders import T4_LABELS, t4, t7, t13
from tournsol.canonical import enumerate_nonisomorphic, is_isomorphic
from tournsol.tournament import (
    ResourceGuardError,
    Tournament,
    TournamentError,
    TrnParseError,
    condorcet_loser,
    condorcet_winner,
    covers,
    decomposition,
    enumerate_labeled,
    find_components,
    from_upper_key,
    is_component,
    is_regular,
    local_reverse,
    mask_of,
    members,
    parse_trn,
    permute,
    product,
    restrict,
    reverse_all,
    to_trn,
)

from conftest import tournament_with_alt, tournaments

A, B, C, D = range(4)


def test_order_one_from_zero_matrix():
    t = Tournament.from_matrix([[0]])
    assert t.order == 1
    assert t.dominion(0) == t.dominators(0) == frozenset()


def test_t4_matrix_valid():
    m = [[0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1], [1, 0, 0, 0]]
    assert Tournament.from_matrix(m) == t4()


@pytest.mark.parametrize(
    "matrix, where",
    [
        ([[0, 1], [1, 0]], "(0,1)"),
        ([[0, 0], [0, 0]], "(0,1)"),
        ([[1, 0], [1, 0]], "(0,0)"),
    ],
)
def test_invalid_matrix_reports_cell(matrix, where):
    with pytest.raises(TournamentError, match=r"\(0,[01]\)"):
        Tournament.from_matrix(matrix)


def test_dominators_and_dominion():
    assert t13().dominators(0) == {3, 4, 5, 7, 8, 11}
    assert t4().dominion(A) == {B, C}
    assert t4().dominators(A) == {D}
    with pytest.raises(TournamentError):
        t4().dominion(4)


@given(tournaments())
def test_degrees_partition(t):
    for a in range(t.order):
        assert len(t.dominators(a)) + len(t.dominion(a)) == t.order - 1
        assert not (t.dominators(a) & t.dominion(a))


def test_restrict_examples():
    t = t4()
    same, idx = restrict(t, range(4))
    assert same == t and idx == [0, 1, 2, 3]
    ab, idx = restrict(t, [A, B])
    assert ab.beats(0, 1) and idx == [A, B]
    sub, idx = restrict(t13(), t13().dominators(0))
    assert sub.order == 6 and idx == [3, 4, 5, 7, 8, 11]
    with pytest.raises(TournamentError):
        restrict(t, [])


def test_local_reverse_t4():
    r = local_reverse(t4(), A)
    assert r.beats(B, A) and r.beats(C, A) and r.beats(A, D)
    assert r.beats(B, C) and r.beats(B, D) and r.beats(C, D)


def test_reverse_at_loser_makes_winner(tr3):
    r = local_reverse(tr3, 2)
    assert condorcet_winner(r) == 2


def test_order_one_reverse_is_identity():
    t = Tournament.transitive(1)
    assert local_reverse(t, 0) == t


@given(tournament_with_alt(2, 7))
def test_reverse_involution_and_commutes(ta):
    t, a = ta
    assert local_reverse(local_reverse(t, a), a) == t
    b = (a + 1) % t.order
    assert local_reverse(local_reverse(t, a), b) == local_reverse(local_reverse(t, b), a)


@given(tournaments(2, 7))
def test_reverse_all_involution(t):
    assert reverse_all(reverse_all(t)) == t


def test_regularity(c3):
    assert is_regular(c3)
    assert is_regular(t7())
    assert not is_regular(t4())


@given(tournaments(2, 7))
def test_regular_implies_odd(t):
    if is_regular(t):
        assert t.order % 2 == 1


def test_covering_and_condorcet(c3, tr3):
    assert covers(t4(), B, C)
    assert condorcet_winner(tr3) == 0 and condorcet_loser(tr3) == 2
    assert condorcet_winner(c3) is None
    with pytest.raises(TournamentError):
        covers(t4(), A, A)


@given(tournaments(2, 6))
def test_covering_implies_dominance(t):
    for a in range(t.order):
        for b in range(t.order):
            if a != b and covers(t, a, b):
                assert t.beats(a, b)


def test_labeled_enumeration_count_and_order():
    for n in range(1, 6):
        keys = [t.upper_key() for t in enumerate_labeled(n)]
        assert keys == list(range(2 ** (n * (n - 1) // 2)))
    with pytest.raises(ResourceGuardError):
        next(enumerate_labeled(8))


def test_product_identity_and_components(c3):
    assert product(Tournament.transitive(1), [t4()]) == t4()
    nine = product(c3, [c3, c3, c3])
    assert nine.order == 9
    for k in range(3):
        assert is_component(nine, 0b111 << (3 * k))
    with pytest.raises(TournamentError):
        product(c3, [])


@given(tournaments(1, 3), tournaments(1, 3), tournaments(1, 3))
def test_product_reconstructs(p0, p1, p2):
    summary = Tournament.cyclic(3)
    t = product(summary, [p0, p1, p2])
    offsets = [0, p0.order, p0.order + p1.order, t.order]
    blocks = [range(offsets[i], offsets[i + 1]) for i in range(3)]
    dec = decomposition(t, blocks)
    assert dec.summary == summary
    assert dec.reconstruct([p0, p1, p2]) == t


@given(tournaments(1, 7))
@settings(max_examples=60)
def test_find_components_blocks_are_components(t):
    decs = find_components(t)
    sizes = {len(d.blocks) for d in decs}
    assert t.order in sizes and 1 in sizes
    for d in decs:
        for b in d.blocks:
            assert is_component(t, mask_of(b))


def test_t7_has_only_trivial_decompositions():
    brute = [m for m in range(1, 1 << 7) if 1 < m.bit_count() < 7 and is_component(t7(), m)]
    assert brute == []
    assert {len(d.blocks) for d in find_components(t7())} == {1, 7}


def test_t7_structure():
    t = t7()
    a, b, c, d, e, f, g = range(7)
    assert t.beats(a, b) and t.beats(b, c) and t.beats(c, a)
    assert t.beats(d, e) and t.beats(e, f) and t.beats(f, d)
    assert t.beats(d, a) and t.beats(e, b) and t.beats(f, c)
    for x in (d, e, f):
        assert t.beats(x, g)
    for x in (a, b, c):
        assert t.beats(g, x)


def test_t13_dominators_of_x13():
    assert t13().dominators(12) == set(range(6))


def test_trn_round_trip_and_errors():
    text = to_trn(t4())
    assert text == "4\n0110\n0011\n0001\n1000\n"
    assert parse_trn(text) == t4()
    for bad in ["", "x\n", "2\n01\n", "2\n01\n11\n", "2\n0a\n00\n", "2\n010\n00\n"]:
        with pytest.raises(TrnParseError):
            parse_trn(bad)


@given(tournaments(1, 8))
def test_trn_round_trip(t):
    assert parse_trn(to_trn(t)) == t


@given(tournaments(1, 6))
def test_permute_preserves_isomorphism(t):
    perm = list(reversed(range(t.order)))
    assert is_isomorphic(permute(t, perm), t)


def test_noniso_counts_match_labeled_dedup():
    from tournsol.canonical import canonical_certificate

    for n in range(1, 7):
        classes = {canonical_certificate(t) for t in enumerate_labeled(n)}
        assert len(classes) == len(list(enumerate_nonisomorphic(n)))


def test_from_upper_key_inverse():
    for key in range(64):
        assert from_upper_key(4, key).upper_key() == key
    assert members(0b1011) == [0, 1, 3]
    assert T4_LABELS == "abcd"
