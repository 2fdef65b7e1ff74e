import json
from fractions import Fraction

import pytest

from tournsol.axioms import (
    AXIOMS,
    FAIL,
    PASS,
    PASS_SAMPLED,
    Scope,
    alpha_violated,
    average_choice_size,
    check_alpha_variants,
    check_composition_consistency,
    check_gamma_variants,
    check_idempotency,
    check_local_alpha,
    check_lrs,
    check_monotonicity,
    check_refinement,
    check_regularity,
    check_stability,
    check_well_defined,
    compare_discrimination,
    lift_lrs_failure,
    recheck,
    run_axiom,
    sample_pair_instances,
    verify_lemma_inheritance,
    verify_root_equality,
    well_defined_witness,
)
from tournsol.builders import t4, t7, t13
from tournsol.canonical import is_isomorphic
from tournsol.choice import two_minimal_example
from tournsol.solutions import (
    T4_SPECIAL,
    BA,
    BP,
    COPELAND,
    EVEN_OUT,
    MC,
    POS,
    S7_HAT,
    TC,
    TEQ,
    TRIVIAL,
    UC,
    gamma_only,
    lift_hat,
    lift_root,
)
from tournsol.tournament import Tournament, mask_of, parse_trn

UP_TO_5 = Scope(max_order=5)
UP_TO_6 = Scope(max_order=6)


def smaller_orders_clean(verdict, check):
    """No tournament of smaller order than the witness violates the same axiom."""
    order = verdict.witness.tournaments[0].order
    if order == 1:
        return True
    return check(Scope(max_order=order - 1)).passed


def test_uc_alpha_variants():
    r = check_alpha_variants(UC, UP_TO_5)
    assert r["alpha-sub"].outcome == PASS
    assert r["alpha"].outcome == FAIL
    assert recheck(r["alpha"], UC)
    assert smaller_orders_clean(r["alpha"], lambda s: check_alpha_variants(UC, s)["alpha"])


def test_pos_alpha_t4_witness():
    r = check_alpha_variants(POS, Scope(max_order=4))["alpha"]
    assert r.outcome == FAIL and recheck(r, POS)
    t = t4()
    assert alpha_violated(POS.induced(t), t.full, mask_of([0, 1]))


def test_trivial_passes_everything():
    for v in check_alpha_variants(TRIVIAL, UP_TO_5).values():
        assert v.outcome == PASS
    for v in check_gamma_variants(TRIVIAL, UP_TO_5).values():
        assert v.outcome == PASS


def test_root_tc_gamma_fails():
    v = check_gamma_variants(lift_root(TC), UP_TO_5)["gamma"]
    assert v.outcome == FAIL and recheck(v, lift_root(TC))


def test_gamma_only_tc():
    g = gamma_only(TC)
    assert check_gamma_variants(g, UP_TO_5)["gamma"].outcome == PASS
    v = check_alpha_variants(g, UP_TO_5)["alpha"]
    assert v.outcome == FAIL
    w = v.witness
    assert is_isomorphic(w.tournaments[0], Tournament.transitive(3))
    assert recheck(v, g)


def test_tc_gamma_passes():
    assert check_gamma_variants(TC, UP_TO_5)["gamma"].outcome == PASS


@pytest.mark.parametrize("sol", [TC, MC, BP])
def test_stable_solutions(sol):
    v = check_stability(sol, UP_TO_5)
    assert v.outcome == PASS
    assert v.details["alpha"] == v.details["gamma"] == PASS


def test_pos_stability_fails():
    v = check_stability(POS, Scope(max_order=4))
    assert v.outcome == FAIL
    assert recheck(v, POS)


def test_teq_stability_fails_on_linked_t13():
    v = lift_lrs_failure(TEQ, t13(), 12)
    assert v.outcome == FAIL
    assert v.witness.tournaments[0].order == 24
    assert recheck(v, TEQ)


def test_local_alpha_and_well_defined():
    assert check_local_alpha(BA, UP_TO_6).outcome == PASS
    assert check_well_defined(T4_SPECIAL, UP_TO_6).outcome == PASS
    v = check_well_defined(lift_hat(T4_SPECIAL), Scope(max_order=4))
    assert v.outcome == FAIL and v.witness.note == "no stable set"
    assert is_isomorphic(v.witness.tournaments[0], t4())
    rep = well_defined_witness(two_minimal_example(), 0b111)
    assert rep.minimal_stable_sets == (0b011, 0b110)


@pytest.mark.parametrize("sol", [TC, UC, BA])
def test_monotonic_solutions(sol):
    assert check_monotonicity(sol, UP_TO_5).outcome == PASS


def test_even_out_not_monotonic():
    v = check_monotonicity(EVEN_OUT, UP_TO_5)
    assert v.outcome == FAIL and recheck(v, EVEN_OUT)
    assert v.witness.tournaments[0].order == 2


def test_regularity():
    scope = Scope(max_order=7)
    for sol in (TC, UC, POS):
        assert check_regularity(sol, scope).outcome == PASS
    v = check_regularity(S7_HAT, scope)
    assert v.outcome == FAIL
    assert is_isomorphic(v.witness.tournaments[0], t7())


@pytest.mark.parametrize("sol", [UC, BA, BP])
def test_composition_consistent(sol):
    assert check_composition_consistency(sol, UP_TO_5, max_product=8).outcome == PASS


def test_composition_failures():
    for sol in (TC, POS):
        v = check_composition_consistency(sol, UP_TO_5, max_product=6)
        assert v.outcome == FAIL and recheck(v, sol)


def test_pos_composition_on_t4():
    # {b,c} is a component; the summary over {a}, {b,c}, {d} is a 3-cycle
    from tournsol.axioms import composition_violated
    from tournsol.tournament import decomposition

    dec = decomposition(t4(), [[0], [1, 2], [3]])
    assert composition_violated(POS, t4(), dec.blocks, dec.summary)


def test_lrs():
    assert check_lrs(BP, UP_TO_6).outcome == PASS
    scope = Scope(max_order=6, extra=(t13(),))
    v = check_lrs(TEQ, scope, "in")
    assert v.outcome == FAIL
    assert v.witness.tournaments[0] == t13() and v.witness.alternative == 12
    assert check_lrs(COPELAND, UP_TO_6, "in").outcome == FAIL
    assert check_lrs(COPELAND, UP_TO_6, "out").outcome == PASS


def test_order_one_skipped_by_lrs():
    assert check_lrs(TRIVIAL, Scope(max_order=1), "out").outcome == PASS


def test_refinement_and_averages():
    assert check_refinement(BP, UC, UP_TO_6).outcome == PASS
    assert check_refinement(UC, BP, UP_TO_6).outcome == FAIL
    assert average_choice_size(BP, 4).average == 2
    assert average_choice_size(TC, 5).average > Fraction(5, 2)
    assert compare_discrimination(BP, TC, 5) == -1
    assert compare_discrimination(BP, BP, 4) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_orbit_average_matches_labeled(n):
    for sol in (BP, TC, UC):
        assert average_choice_size(sol, n, "orbits") == average_choice_size(sol, n, "labeled")


def test_parallel_average_matches():
    assert average_choice_size(BP, 5, workers=2) == average_choice_size(BP, 5)


def test_lemmas():
    v = verify_lemma_inheritance(BP, MC, UP_TO_6)
    assert v.details["lrs-in[bp]"] == v.details["lrs-in[mc]"] == PASS
    v = verify_root_equality(BP, BP, UP_TO_6)
    assert v.details["root_inclusion"] == PASS and v.details["equal"]
    v = verify_root_equality(TC, BP, UP_TO_6)
    assert v.details["root_inclusion"] == FAIL
    assert v.witness.tournaments[0].order <= 6


@pytest.mark.parametrize("sol", [TC, MC, BP])
def test_monotonicity_matches_root(sol):
    assert check_monotonicity(sol, UP_TO_6).outcome == check_monotonicity(lift_root(sol), UP_TO_6).outcome


@pytest.mark.parametrize("n", range(2, 6))
def test_lrs_half_average(n):
    scope = Scope(max_order=n, min_order=n)
    for sol in (BP, TC, UC, COPELAND, POS):
        both = check_lrs(sol, scope).passed
        lrs_in = check_lrs(sol, scope, "in").passed
        avg = average_choice_size(sol, n, "orbits").average
        if both:
            assert avg == Fraction(n, 2)
        elif lrs_in:
            assert avg >= Fraction(n, 2)


def test_sampled_scopes_are_labelled():
    scope = Scope(max_order=7, exhaustive_up_to=5, samples=5, seed=3)
    v = check_idempotency(TC, scope)
    assert v.outcome == PASS_SAMPLED and v.scope["seed"] == 3
    with pytest.raises(ValueError):
        Scope(max_order=7, samples=5)
    r = sample_pair_instances(TC, [6], 50, seed=1)
    assert r["alpha"].outcome == PASS_SAMPLED


def test_sampling_is_deterministic():
    a = list(Scope(max_order=8, exhaustive_up_to=3, samples=4, seed=9).tournaments())
    b = list(Scope(max_order=8, exhaustive_up_to=3, samples=4, seed=9).tournaments())
    assert a == b


def test_verdict_json_has_trn_payloads():
    v = check_alpha_variants(POS, Scope(max_order=4))["alpha"]
    data = json.loads(json.dumps(v.to_json()))
    t = parse_trn(data["witness"]["tournaments"][0])
    assert t.order == 4
    assert data["scope"]["mode"] == "exhaustive"
    assert "alpha [pos]: fail" in v.to_text()


def test_run_axiom_registry():
    for ax in AXIOMS:
        if ax == "refinement":
            with pytest.raises(ValueError):
                run_axiom(ax, TC, Scope(max_order=3))
            assert run_axiom(ax, TC, Scope(max_order=4), UC).outcome == FAIL
        else:
            assert run_axiom(ax, TRIVIAL, Scope(max_order=3)).axiom == ax
    with pytest.raises(KeyError):
        run_axiom("nope", TC, Scope(max_order=3))
