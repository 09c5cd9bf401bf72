"""Greedy pairing: the gap-versus-tail condition and the sign construction."""

import random

import pytest

from soupdiv import (
    Condition1Error,
    DomainError,
    INV_SQRT2,
    InputError,
    PairedSeries,
    check_condition1,
    geometric_fair_division,
    greedy_balance,
    prefix_diagnostics,
)


def geometric_series(q, n_pairs):
    return PairedSeries.geometric(q, n_pairs)


def closed_form_tail(q, k):
    return q ** (2 * k + 1) / (1.0 + q)


def test_condition1_geometric_holds_above_threshold():
    holds, violation = check_condition1(geometric_series(0.75, 100))
    assert holds and violation is None


def test_condition1_equality_at_threshold():
    series = geometric_series(INV_SQRT2, 100)
    holds, _ = check_condition1(series)
    assert holds
    # (1-q)(1+q) = q^2 exactly when q^2 = 1/2, so gap and tail coincide
    for bk, tk in zip(series.b, series.tail):
        assert bk == pytest.approx(tk, rel=1e-12)


def test_condition1_reports_smallest_violation():
    series = PairedSeries(b=(3.0, 2.0, 1.0), tail=(3.0, 1.0, 0.0))
    assert check_condition1(series) == (False, 2)


def test_paired_series_validation():
    with pytest.raises(InputError):
        PairedSeries(b=(1.0, 2.0), tail=(1.0,))
    with pytest.raises(InputError):
        PairedSeries(b=(-1.0,), tail=(0.0,))
    with pytest.raises(InputError):
        PairedSeries(b=(), tail=())
    with pytest.raises(InputError):
        # tail chain broken: tail[0] != tail[1] + b[1]
        PairedSeries(b=(1.0, 1.0), tail=(5.0, 0.0))


def test_from_gaps_builds_suffix_tails():
    series = PairedSeries.from_gaps([3.0, 2.0, 1.0])
    assert series.tail == (3.0, 1.0, 0.0)


def test_greedy_symmetric_cancellation():
    series = PairedSeries(b=(1.0, 1.0), tail=(1.0, 0.0))
    assert greedy_balance(series) == [1, -1]


def test_greedy_hand_executed():
    series = PairedSeries(b=(1.0, 0.6, 0.5), tail=(1.1, 0.5, 0.0))
    signs = greedy_balance(series)
    assert signs == [1, -1, -1]
    partials = []
    total = 0.0
    for s, bk in zip(signs, series.b):
        total += s * bk
        partials.append(total)
    assert partials == pytest.approx([1.0, 0.4, -0.1], abs=1e-15)


def test_greedy_enforcement_names_index():
    series = PairedSeries(b=(3.0, 2.0, 1.0), tail=(3.0, 1.0, 0.0))
    with pytest.raises(Condition1Error) as excinfo:
        greedy_balance(series, require_condition1=True)
    assert excinfo.value.index == 2


def test_greedy_bound_geometric():
    q = 0.75
    series = geometric_series(q, 100)
    signs = greedy_balance(series, require_condition1=True)
    partial = 0.0
    for k, (sign, bk) in enumerate(zip(signs, series.b), start=1):
        partial += sign * bk
        assert abs(partial) <= closed_form_tail(q, k) + 1e-10


def test_greedy_bound_random_geometric_families():
    # c * r^k with r >= 1/2 satisfies the pairing condition at every k
    rng = random.Random(2024)
    for _ in range(20):
        r = rng.uniform(0.55, 0.95)
        c = rng.uniform(0.1, 10.0)
        n = rng.randint(3, 60)
        b = tuple(c * r**k for k in range(1, n + 1))
        tail = tuple(c * r ** (k + 1) / (1.0 - r) for k in range(1, n + 1))
        series = PairedSeries(b, tail)
        signs = greedy_balance(series, require_condition1=True)
        partial = 0.0
        for k, (sign, bk) in enumerate(zip(signs, series.b)):
            partial += sign * bk
            assert abs(partial) <= series.tail[k] + 1e-10


def test_greedy_is_online():
    rng = random.Random(5)
    r = 0.7
    b = tuple(r**k for k in range(1, 31))
    tail = tuple(r ** (k + 1) / (1.0 - r) for k in range(1, 31))
    full = greedy_balance(PairedSeries(b, tail))
    for cut in (1, 5, 17, 29):
        prefix = greedy_balance(PairedSeries(b[:cut], tail[:cut]))
        assert prefix == full[:cut]


def test_geometric_division_starts_plus_minus():
    seq = geometric_fair_division(0.75, 10)
    assert seq.to_text().startswith("+-")


def test_geometric_division_pair_structure():
    seq = geometric_fair_division(0.8, 200)
    sums, _ = prefix_diagnostics(seq, 0.8)
    assert all(s in (-1, 0, 1) for s in sums)
    assert all(sums[k] == 0 for k in range(1, 200, 2))


def test_geometric_division_residual_bound():
    q = 0.7071068
    seq = geometric_fair_division(q, 2000)
    _, residuals = prefix_diagnostics(seq, q)
    for k in range(1, 1001):
        assert abs(residuals[2 * k - 1]) <= closed_form_tail(q, k) + 1e-10


def test_geometric_division_threshold():
    with pytest.raises(DomainError) as excinfo:
        geometric_fair_division(0.6, 10)
    assert "construct" in str(excinfo.value)
    # exact threshold and barely-below-threshold decimals are accepted
    geometric_fair_division(INV_SQRT2, 4)
    geometric_fair_division(INV_SQRT2 - 5e-13, 4)
    with pytest.raises(DomainError):
        geometric_fair_division(0.70710, 4)


def test_geometric_division_scoop_validation():
    with pytest.raises(InputError):
        geometric_fair_division(0.75, 7)
    with pytest.raises(InputError):
        geometric_fair_division(0.75, 0)
