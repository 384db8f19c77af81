from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addbasis import INFINITE, ConfigError, SparsityBound, TargetFunction, sparsity_threshold
from addbasis.targets import parse_config, render_phi_lines, render_target_lines

from cases import F_EVEN, F_INF, F_ODD, F_ONE, PHI_LOG


counts_st = st.one_of(st.integers(0, 3), st.just(INFINITE))
defaults_st = st.one_of(st.integers(1, 3), st.just(INFINITE))


@st.composite
def targets_st(draw):
    if draw(st.booleans()):
        return TargetFunction(default=draw(defaults_st))
    lo = draw(st.integers(-6, 3))
    hi = lo + draw(st.integers(0, 6))
    values = {n: draw(counts_st) for n in range(lo, hi + 1)}
    return TargetFunction(lo, hi, values, draw(defaults_st))


@st.composite
def budgets_st(draw):
    family = draw(st.sampled_from(["affine", "power", "log", "table"]))
    pos = st.fractions(min_value=Fraction(1, 4), max_value=8, max_denominator=8)
    nonneg = st.fractions(min_value=0, max_value=8, max_denominator=8)
    if family == "affine":
        return SparsityBound("affine", (draw(pos), draw(nonneg)))
    if family == "power":
        expo = st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=4)
        return SparsityBound("power", (draw(pos), draw(expo)))
    if family == "log":
        return SparsityBound("log", (draw(pos), draw(nonneg)))
    cuts = [0] + sorted(draw(st.lists(st.integers(1, 40), unique=True, max_size=3)))
    values = sorted(draw(st.lists(nonneg, min_size=len(cuts), max_size=len(cuts))))
    params = [p for pair in zip(cuts, values) for p in pair]
    return SparsityBound("table", tuple(params))


def test_eval_window_and_default():
    f = TargetFunction(0, 0, {0: 0}, 1)
    assert f.eval(0) == 0
    assert f.eval(7) == 1
    assert F_ODD.eval(1) == 0
    assert F_ODD.eval(2) == 1
    assert F_INF.eval(0) == INFINITE
    assert F_INF.eval(3) == 1


def test_missing_window_entries_fall_back_to_default():
    f = TargetFunction(-1, 1, {0: 2}, 3)
    assert [f.eval(n) for n in (-1, 0, 1, 2)] == [3, 2, 3, 3]


def test_zero_count():
    assert F_ONE.zero_count() == 0
    assert F_ODD.zero_count() == 3
    assert F_EVEN.zero_count() == 4


def test_zero_free_radius():
    assert F_ONE.zero_free_radius() == 0
    assert F_ODD.zero_free_radius() == 2
    assert F_EVEN.zero_free_radius() == 3


@given(targets_st())
def test_zero_free_radius_is_minimal(f):
    r = f.zero_free_radius()
    span = f.window_hi - f.window_lo + 1 if f.window_lo <= f.window_hi else 1
    for n in range(r, r + span + 1):
        assert f.eval(n) >= 1
        assert f.eval(-n) >= 1
    if r > 0:
        assert f.eval(r - 1) == 0 or f.eval(-(r - 1)) == 0


def test_validation_rejects_bad_targets():
    with pytest.raises(ConfigError):
        TargetFunction(default=0)
    with pytest.raises(ConfigError):
        TargetFunction(0, 0, {0: -1}, 1)
    with pytest.raises(ConfigError):
        TargetFunction(0, 0, {5: 1}, 1)  # value outside window
    with pytest.raises(ConfigError):
        TargetFunction(3, 1, {2: 1}, 1)  # values without a window


def test_sparsity_threshold_examples():
    assert sparsity_threshold(SparsityBound("affine", (1, 0)), 3) == 6
    assert sparsity_threshold(PHI_LOG, 2) == 3
    assert sparsity_threshold(SparsityBound("table", (0, 10, 100, 10)), 5) == 0


def test_budget_comparisons_are_exact():
    # 2*log2(1+x): crosses 4 exactly at x = 3
    assert PHI_LOG.at_least(3, 4)
    assert not PHI_LOG.at_least(2, 4)
    half_power = SparsityBound("power", (1, Fraction(1, 2)))
    assert half_power.at_least(9, 3)
    assert not half_power.at_least(8, 3)


def test_budget_validation():
    with pytest.raises(ConfigError):
        SparsityBound("affine", (0,))
    with pytest.raises(ConfigError):
        SparsityBound("power", (1, 0))
    with pytest.raises(ConfigError):
        SparsityBound("table", (0, 5, 10, 3))  # decreasing values
    with pytest.raises(ConfigError):
        SparsityBound("table", (1, 5))  # must start at 0
    with pytest.raises(ConfigError):
        SparsityBound("spline", (1,))


@given(budgets_st(), st.integers(1, 25))
def test_threshold_is_minimal(phi, k):
    w = sparsity_threshold(phi, k)
    assert phi.at_least(w, 2 * k)
    assert w == 0 or not phi.at_least(w - 1, 2 * k)


@given(budgets_st(), st.integers(0, 200))
def test_budget_monotone(phi, x):
    if not phi.at_least(x, 1):
        assert not phi.at_least(max(x - 1, 0), 1) or x == 0 or phi.at_least(x - 1, 1) is False


def test_parse_config_happy_path():
    doc = parse_config(
        "# a comment\n"
        "window_lo = -1\n"
        "window_hi = 1\n"
        "value = -1 0\n"
        "value = 0 0\n"
        "value = 1 0\n"
        "default = 1\n"
        "phi_family = log\n"
        "phi_params = 2\n"
        "h = 2\n")
    assert doc.target == F_ODD
    assert doc.sparsity == PHI_LOG
    assert doc.extra == {"h": "2"}


def test_parse_config_inf_default():
    doc = parse_config("window_lo = 0\nwindow_hi = 0\nvalue = 0 inf\ndefault = 1\n")
    assert doc.target.eval(0) == INFINITE
    assert doc.sparsity is None


@pytest.mark.parametrize("text", [
    "window_lo = -1\n",                        # lone bound
    "value = 0 1\n",                           # value without window
    "window_lo = 1\nwindow_hi = 0\n",          # inverted window
    "window_lo = 0\nwindow_hi = 0\nvalue = 0 1\nvalue = 0 2\n",  # duplicate
    "mystery = 4\n",                           # unknown key
    "default = -3\n",                          # negative count
    "default two\n",                           # no separator
    "phi_family = affine\n",                   # family without params
    "phi_params = 1,x\nphi_family = affine\n",
])
def test_parse_config_rejects(text):
    with pytest.raises(ConfigError):
        parse_config(text)


@settings(max_examples=60)
@given(targets_st(), budgets_st())
def test_config_round_trip(target, phi):
    lines = render_target_lines(target) + render_phi_lines(phi)
    doc = parse_config("\n".join(lines))
    assert doc.target == target
    assert doc.sparsity == phi
    for n in range(-12, 13):
        assert doc.target.eval(n) == target.eval(n)
