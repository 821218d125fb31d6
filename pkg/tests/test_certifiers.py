import random
from fractions import Fraction as F

import pytest

from conftest import brute_force_weak, random_rational_tensor
from polymoment import (
    DiscretePolymeasure,
    MomentTensor,
    MultiIndex,
    SignAssignment,
    bernstein_coefficients,
    bounded_constant,
    box_range,
    certify_weakly_bounded,
    moments,
    random_polymeasure,
    semivariation,
    variation,
    weak_bound_estimate,
    weak_bound_exact,
    weak_profile,
)
from polymoment import _signopt
from polymoment.errors import BoundsError, BudgetExceededError


def geometric(bound, ratio=F(2)):
    return MomentTensor.from_function((bound,), lambda k: ratio ** k[0])


def dirac_half_product(bound):
    return MomentTensor.from_function(
        (bound, bound), lambda k: F(1, 2 ** (k[0] + k[1])))


def antisymmetric_pair():
    """delta_(1/3, 2/3) minus delta_(2/3, 1/3): variation 2, moments with
    sign structure that separates the weak constant from the l1 mass."""
    atoms = ((F(1, 3), F(2, 3)), (F(1, 3), F(2, 3)))
    return DiscretePolymeasure(atoms, (F(0), F(1), F(-1), F(0)), "rational")


# ----------------------------------------------------------- bounded constant

def test_bounded_probability_measure_is_one():
    rep = bounded_constant(dirac_half_product(4), (4, 4))
    assert rep.constant == 1
    assert rep.verdict == "holds-up-to-order"
    assert rep.method == "exact"
    assert rep.extension_norm_bound == 4
    assert tuple(rep.witness_order) == (0, 0)


def test_bounded_geometric_growth():
    mu = geometric(10)
    for k in range(11):
        rep = bounded_constant(mu, (k,))
        assert rep.constant == F(3) ** k
        assert tuple(rep.witness_order) == (k,)


def test_bounded_claimed_constant_violated():
    rep = bounded_constant(geometric(10), (10,), claimed_c=F(10))
    assert rep.verdict == "violated(10)"
    assert tuple(rep.witness_order) == (3,)
    assert rep.constant == 27
    assert rep.extension_norm_bound == 54


def test_bounded_claimed_constant_holds():
    rep = bounded_constant(geometric(10), (10,), claimed_c=F(59049))
    assert rep.verdict == "holds-up-to-order"
    assert rep.constant == 59049


def test_bounded_zero_tensor():
    mu = MomentTensor.from_function((3, 3), lambda k: F(0))
    rep = bounded_constant(mu, (3, 3))
    assert rep.constant == 0
    assert rep.extension_norm_bound == 0


def test_bounded_order_beyond_bounds():
    with pytest.raises(BoundsError):
        bounded_constant(geometric(4), (5,))


# ------------------------------------------------------- exact weak constant

def test_weak_univariate_equals_l1_mass():
    # one sign per coefficient, so the vertex maximum is the l1 mass
    rng = random.Random(23)
    mu = random_rational_tensor(rng, (12,))
    for k in range(13):
        val, signs = weak_bound_exact(mu, (k,))
        assert val == bernstein_coefficients(mu, MultiIndex((k,))).abs_sum()
        assert signs.order == MultiIndex((k,))


def test_weak_matches_brute_force_bivariate():
    rng = random.Random(101)
    for _ in range(6):
        mu = random_rational_tensor(rng, (3, 3))
        for k in box_range(MultiIndex((3, 3))):
            bt = bernstein_coefficients(mu, k)
            val, _ = weak_bound_exact(mu, k)
            assert val == brute_force_weak(list(bt.values),
                                           tuple(e + 1 for e in k))


def test_weak_matches_brute_force_trivariate():
    rng = random.Random(202)
    for _ in range(3):
        mu = random_rational_tensor(rng, (2, 2, 2))
        for k in box_range(MultiIndex((2, 2, 2))):
            bt = bernstein_coefficients(mu, k)
            val, _ = weak_bound_exact(mu, k)
            assert val == brute_force_weak(list(bt.values),
                                           tuple(e + 1 for e in k))


def test_weak_witness_attains_the_constant():
    rng = random.Random(57)
    for _ in range(4):
        mu = random_rational_tensor(rng, (3, 3))
        for k in [(1, 2), (3, 3), (2, 0)]:
            val, signs = weak_bound_exact(mu, k)
            bt = bernstein_coefficients(mu, MultiIndex(k))
            assert signs.evaluate(bt) == val


def test_weak_antisymmetric_pinned_values():
    gamma = antisymmetric_pair()
    mu = moments(gamma, (4, 4))
    assert semivariation(gamma) == 2
    expected = {(1, 1): F(2, 3), (2, 2): F(2, 3), (3, 3): F(26, 27)}
    for k, want in expected.items():
        val, _ = weak_bound_exact(mu, k)
        assert val == want
        assert val <= 2  # dominated by the semivariation
        # the l1 mass strictly exceeds the weak constant from order (2, 2) on
        if k != (1, 1):
            assert bernstein_coefficients(mu, MultiIndex(k)).abs_sum() > val


def test_weak_strictly_below_bounded_for_mixed_signs():
    # entrywise-positive moments do not force the two constants to agree
    mu = MomentTensor(MultiIndex((1, 1)), (F(2), F(2), F(1, 2), F(1)),
                      "rational")
    wval, _ = weak_bound_exact(mu, (1, 1))
    assert wval == 2
    assert bounded_constant(mu, (1, 1)).constant == 3


def test_weak_equals_bounded_for_nonnegative_polymeasure():
    # nonnegative coefficients give completely monotone moments, where the
    # all-plus vertex is optimal and both constants are the plain sum
    for seed in range(5):
        gamma = random_polymeasure(2, 3, coeff_range=(0, 2), seed=seed)
        assert variation(gamma) == semivariation(gamma)
        mu = moments(gamma, (4, 4))
        for k in box_range(MultiIndex((4, 4))):
            bt = bernstein_coefficients(mu, k)
            val, _ = weak_bound_exact(mu, k)
            assert val == bt.abs_sum()
        weak = certify_weakly_bounded(mu, (4, 4))
        bold = bounded_constant(mu, (4, 4))
        assert weak.constant == bold.constant
        assert weak.verdict == bold.verdict == "holds-up-to-order"


def test_weak_budget_exceeded():
    mu = MomentTensor.from_function((21, 0), lambda k: F(1, k[0] + 1))
    with pytest.raises(BudgetExceededError) as ei:
        weak_bound_exact(mu, (21, 0))
    assert "coordinate-ascent" in str(ei.value)


def test_weak_float_agrees_with_rational():
    rng = random.Random(88)
    mu = random_rational_tensor(rng, (3, 3))
    mf = MomentTensor(mu.bounds, tuple(float(v) for v in mu.values), "float")
    for k in box_range(MultiIndex((3, 3))):
        exact, _ = weak_bound_exact(mu, k)
        approx, _ = weak_bound_exact(mf, k)
        assert abs(approx - float(exact)) <= 1e-9 * max(1.0, float(exact))


# --------------------------------------------------------- ascent estimation

def test_estimate_zero_tensor():
    mu = MomentTensor.from_function((3, 3), lambda k: F(0))
    val, _ = weak_bound_estimate(mu, (3, 3))
    assert val == 0


def test_estimate_never_exceeds_exact():
    rng = random.Random(31)
    for _ in range(5):
        mu = random_rational_tensor(rng, (3, 3))
        for k in [(2, 2), (3, 3)]:
            exact, _ = weak_bound_exact(mu, k)
            est, signs = weak_bound_estimate(mu, k, seed=1)
            assert est <= exact
            assert signs.evaluate(bernstein_coefficients(mu, MultiIndex(k))) == est


def test_estimate_exact_on_nonnegative_coefficients():
    # the all-plus restart is already optimal when every coefficient is >= 0
    gamma = random_polymeasure(2, 3, coeff_range=(0, 2), seed=11)
    mu = moments(gamma, (5, 5))
    exact, _ = weak_bound_exact(mu, (5, 5))
    est, _ = weak_bound_estimate(mu, (5, 5))
    assert est == exact


def test_estimate_is_deterministic():
    rng = random.Random(92)
    mu = random_rational_tensor(rng, (4, 4))
    a = weak_bound_estimate(mu, (4, 4), seed=6)
    b = weak_bound_estimate(mu, (4, 4), seed=6)
    assert a[0] == b[0]
    assert a[1].axes == b[1].axes


# ----------------------------------------------------------- certifier scans

def test_certify_claimed_violation_short_circuits():
    rep = certify_weakly_bounded(geometric(10), (10,), claimed_c=F(1000))
    assert rep.verdict == "violated(1000)"
    assert tuple(rep.witness_order) == (7,)
    assert rep.constant == F(3) ** 7
    assert rep.method == "exact"
    assert rep.witness_signs is not None
    assert rep.extension_norm_bound == 2 * F(3) ** 7


def test_certify_reports_witness_that_evaluates():
    rng = random.Random(64)
    mu = random_rational_tensor(rng, (3, 3))
    rep = certify_weakly_bounded(mu, (3, 3))
    assert rep.verdict == "holds-up-to-order"
    assert rep.method == "exact"
    bt = bernstein_coefficients(mu, rep.witness_order)
    assert rep.witness_signs.evaluate(bt) == rep.constant
    assert rep.extension_norm_bound == 4 * rep.constant


def test_certify_budget_fallback_is_inconclusive(monkeypatch):
    monkeypatch.setattr(_signopt, "ENUM_BUDGET_BITS", 3)
    gamma = random_polymeasure(2, 2, coeff_range=(0, 2), seed=3)
    mu = moments(gamma, (4, 4))
    rep = certify_weakly_bounded(mu, (4, 4))
    assert rep.verdict == "inconclusive"
    assert rep.method == "heuristic"
    # ascent from the all-plus start is exact on nonnegative coefficients
    assert rep.constant == bounded_constant(mu, (4, 4)).constant


def test_certify_float_trusted_signs_stay_exact():
    mu = MomentTensor.from_function((4, 4),
                                    lambda k: 1.0 / (k[0] + k[1] + 1),
                                    mode="float")
    rep = certify_weakly_bounded(mu, (4, 4))
    assert rep.method == "exact"
    assert rep.verdict == "holds-up-to-order"


def test_certify_float_borderline_signs_demote_method():
    mu = MomentTensor.from_function((4,), lambda k: 1.0 + k[0] * 1e-14,
                                    mode="float")
    rep = certify_weakly_bounded(mu, (4,))
    assert rep.method == "heuristic"


def test_profile_matches_per_order_exact_values():
    rng = random.Random(13)
    mu = random_rational_tensor(rng, (2, 2))
    prof = weak_profile(mu, (2, 2))
    assert set(prof) == set(box_range(MultiIndex((2, 2))))
    for k, val in prof.items():
        assert val == weak_bound_exact(mu, k)[0]


def test_profile_monotone_for_nonnegative_polymeasure():
    gamma = random_polymeasure(2, 3, coeff_range=(0, 2), seed=29)
    mu = moments(gamma, (4, 4))
    prof = weak_profile(mu, (4, 4))
    # completely monotone sequences keep the constant at the total mass
    for val in prof.values():
        assert val == mu[(0, 0)]


# ------------------------------------------------------------ sign plumbing

def test_sign_assignment_rejects_out_of_range_weights():
    with pytest.raises(BoundsError):
        SignAssignment(((1, -1), (1, F(3, 2))))


def test_sign_assignment_fractional_weights_interpolate():
    rng = random.Random(41)
    mu = random_rational_tensor(rng, (2, 2))
    k = MultiIndex((2, 2))
    bt = bernstein_coefficients(mu, k)
    val, signs = weak_bound_exact(mu, k)
    # shrink one axis toward zero: the objective scales linearly
    scaled = SignAssignment((tuple(F(1, 2) * s for s in signs.axes[0]),
                             signs.axes[1]))
    assert scaled.evaluate(bt) == F(1, 2) * val
