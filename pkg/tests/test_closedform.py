"""Closed-form fitting, verification, and the minimal-recurrence fallback."""
from fractions import Fraction

import pytest

from rabot import (
    DepthError,
    ExponentialForm,
    NoFitError,
    PolyTermForm,
    build_table,
    candidate_bases,
    closed_form,
    fit_closed_form,
    fit_recurrence_form,
    minimal_recurrence,
    moment_value,
    state_dimension_bound,
    verify,
)

F = Fraction


def test_state_dimension_bound():
    assert state_dimension_bound(2, 1) == 6
    assert state_dimension_bound(2, 2) == 9
    assert state_dimension_bound(10, 3) == 44


def test_candidate_bases():
    assert candidate_bases(2, 1) == [1, 2, 3]
    assert candidate_bases(2, 2) == [1, 2, 3, 5]
    assert candidate_bases(3, 1) == [2, 3, 5]
    assert candidate_bases(3, 2) == [2, 3, 5, 8, 11]


def test_candidate_bases_validation():
    with pytest.raises(ValueError):
        candidate_bases(2, 0)


def test_fit_binary_first_moment():
    form = fit_closed_form([1, 4, 14], [1, 2, 3], base=2, power=1)
    assert form.terms == ((F(-1, 2), 2), (F(2, 3), 3))


def test_fit_binary_second_moment():
    t = build_table(2, 2, 9)
    values = [moment_value(t, 2, k) for k in range(1, 10)]
    form = fit_closed_form(values, candidate_bases(2, 2), base=2, power=2)
    assert form.terms == ((F(-1, 6), 2), (F(-2, 3), 3), (F(2, 3), 5))


def test_fit_zero_sequence():
    form = fit_closed_form([0, 0, 0, 0], [1, 2, 3], base=2, power=1)
    assert form.terms == ()


def test_fit_residual_mismatch():
    with pytest.raises(NoFitError) as err:
        fit_closed_form([1, 4, 14, 47], [1, 2, 3], base=2, power=1)
    assert err.value.failing_k == 4


def test_fit_needs_enough_values():
    with pytest.raises(ValueError):
        fit_closed_form([1, 4], [1, 2, 3], base=2, power=1)


def test_form_invariants_enforced():
    with pytest.raises(ValueError):
        ExponentialForm(2, 1, ((F(0), 2),))
    with pytest.raises(ValueError):
        ExponentialForm(2, 1, ((F(1), 3), (F(1), 2)))
    with pytest.raises(ValueError):
        ExponentialForm(2, 1, ((F(1), 0),))


def test_form_evaluates_to_integers():
    form, _ = closed_form(2, 2)
    for k in range(1, 31):
        value = form.eval_at(k)
        assert value.denominator == 1


def test_verify_proven_and_refuted():
    t = build_table(2, 2, 12)
    good = ExponentialForm(2, 2, ((F(-1, 6), 2), (F(-2, 3), 3), (F(2, 3), 5)))
    assert verify(good, t).status == "proven"
    bad = ExponentialForm(2, 2, ((F(-1, 6) + 1, 2), (F(-2, 3), 3), (F(2, 3), 5)))
    verdict = verify(bad, t)
    assert verdict.status == "refuted"
    assert verdict.witness is not None
    k, expected, actual = verdict.witness
    assert k <= 4
    assert actual != expected


def test_verify_depth_semantics():
    t = build_table(2, 1, 12)
    form = ExponentialForm(2, 1, ((F(-1, 2), 2), (F(2, 3), 3)))
    assert verify(form, t).checked_depth == 6
    assert verify(form, t, depth=3).status == "consistent"
    assert verify(form, t, depth=12).status == "proven"
    with pytest.raises(DepthError):
        verify(form, t, depth=13)
    with pytest.raises(DepthError):
        verify(form, build_table(2, 1, 5))
    with pytest.raises(ValueError):
        verify(form, build_table(3, 1, 12))


def test_pipeline_proves_and_reproduces():
    for b in range(2, 7):
        for p in range(1, 4):
            form, verdict = closed_form(b, p)
            assert verdict.status == "proven", (b, p)
            t = build_table(b, p, 30)
            for k in range(1, 31):
                assert form.eval_at(k) == moment_value(t, p, k), (b, p, k)


def test_pipeline_first_moment_matches_direct_formula():
    for b in range(2, 11):
        form, verdict = closed_form(b, 1)
        assert verdict.status == "proven"
        expected = (
            (F(-(b - 1), 2), b),
            (F(b * (b - 1), 2 * b - 1), 2 * b - 1),
        )
        assert form.terms == expected


def test_refutation_sensitivity():
    t = build_table(2, 2, 12)
    good, _ = closed_form(2, 2, table=t)
    for i in range(len(good.terms)):
        coeff_bumped = list(good.terms)
        c, lam = coeff_bumped[i]
        coeff_bumped[i] = (c + 1, lam)
        assert verify(ExponentialForm(2, 2, tuple(coeff_bumped)), t).status == "refuted"
        base_bumped = list(good.terms)
        base_bumped[i] = (c, lam + 100)
        base_bumped.sort(key=lambda term: term[1])
        assert verify(ExponentialForm(2, 2, tuple(base_bumped)), t).status == "refuted"


def test_minimal_recurrence_known_orders():
    # 2*3^(k-1) - 2^(k-1) satisfies a(k) = 5 a(k-1) - 6 a(k-2)
    assert minimal_recurrence([1, 4, 14, 46, 146, 454, 1394, 4246]) == [F(5), F(-6)]
    assert minimal_recurrence([3, 9, 27, 81, 243, 729]) == [F(3)]
    assert minimal_recurrence([1, 1, 2, 3, 5, 8, 13, 21]) == [F(1), F(1)]


def test_minimal_recurrence_rejects_noise():
    assert minimal_recurrence([1, 0, 0, 1, 7, 3, 1, 9, 4, 2]) is None


def test_fallback_repeated_root():
    values = [(1 + 2 * k) * 2**k for k in range(1, 13)]
    form = fit_recurrence_form(values, base=2, power=1)
    assert isinstance(form, PolyTermForm)
    assert form.terms == (((F(1), F(2)), 2),)
    for k, v in enumerate(values, start=1):
        assert form.eval_at(k) == v


def test_binary_third_moment_needs_k_multiplier():
    """At b = 2 the candidate eigenvalues 2b-1 and b^2-1 collide at 3, and
    the third moment genuinely picks up a k*3^k term there; the pipeline
    must route through the fallback and still prove the result."""
    form, verdict = closed_form(2, 3)
    assert verdict.status == "proven"
    assert isinstance(form, PolyTermForm)
    assert form.terms == (
        ((F(1, 2),), 2),
        ((F(-1, 9), F(-4, 9)), 3),
        ((F(-1),), 5),
        ((F(20, 27),), 9),
    )
    t = build_table(2, 3, 25)
    for k in range(1, 26):
        assert form.eval_at(k) == moment_value(t, 3, k)


def test_fallback_simple_roots_gives_plain_form():
    values = [7 * 3**k - 2 * 4**k for k in range(1, 12)]
    form = fit_recurrence_form(values, base=2, power=1)
    assert isinstance(form, ExponentialForm)
    assert form.terms == ((F(7), 3), (F(-2), 4))


def test_fallback_zero_sequence():
    form = fit_recurrence_form([0] * 8, base=2, power=1)
    assert isinstance(form, ExponentialForm)
    assert form.terms == ()


def test_fallback_rejects_irrational_roots():
    # Fibonacci: characteristic x^2 - x - 1 has no integer roots
    with pytest.raises(NoFitError):
        fit_recurrence_form([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], base=2, power=1)


def test_pipeline_depth_request():
    form, verdict = closed_form(2, 1, depth=15)
    assert verdict.status == "proven"
    assert verdict.checked_depth == 15
    # a depth below the proof bound is raised, never lowered
    _, verdict = closed_form(2, 1, depth=2)
    assert verdict.checked_depth == 6


def test_pipeline_falls_back_to_recurrence_guess(monkeypatch):
    import rabot.closedform as cf

    def refuse(*args, **kwargs):
        raise NoFitError("forced")

    monkeypatch.setattr(cf, "fit_closed_form", refuse)
    form, verdict = cf.closed_form(2, 1)
    assert verdict.status == "proven"
    assert form.terms == ((F(-1, 2), 2), (F(2, 3), 3))


def test_pipeline_accepts_existing_table():
    t = build_table(3, 2, 4)
    form, verdict = closed_form(3, 2, table=t)
    assert verdict.status == "proven"
    assert t.max_k == 4  # caller's table untouched
    with pytest.raises(ValueError):
        closed_form(2, 2, table=t)


def test_render_is_canonical():
    form, _ = closed_form(2, 2)
    assert form.render() == "(-1/6)*2^k + (-2/3)*3^k + (2/3)*5^k"
    assert ExponentialForm(2, 1, ()).render() == "0"
