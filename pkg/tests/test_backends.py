"""Parity between the float sign-enumeration backends.

The jitted kernels, the plain-numpy kernels, and the exact engine all
walk vertices in the same Gray order with ties resolved to the first
maximum, so on integer-valued inputs (exact in float64) they must agree
on the value and on the winning sign assignment verbatim.
"""

import importlib.util
import random

import numpy as np
import pytest
from fractions import Fraction as F

from polymoment import _backend, _signopt
from polymoment.certifiers import certify_weakly_bounded, weak_bound_exact
from polymoment.errors import InputError
from polymoment.indexing import MultiIndex
from polymoment.moment_core import MomentTensor, bernstein_coefficients
from polymoment.certifiers import SignAssignment
from polymoment import _kernels_numpy

HAS_NUMBA = importlib.util.find_spec("numba") is not None

if HAS_NUMBA:
    from polymoment import _kernels_numba

    MODULES = [_kernels_numpy, _kernels_numba]
else:
    MODULES = [_kernels_numpy]

IDS = [m.BACKEND for m in MODULES]


def signed_sum(arr, axes):
    """Contract arr with one sign vector per axis."""
    out = np.asarray(arr, dtype=np.float64)
    for signs in axes:
        out = np.tensordot(np.asarray(signs, dtype=np.float64), out, axes=(0, 0))
    return float(out)


# ---------------------------------------------------------------------------
# golden values, both backends


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_golden_1d(mod):
    val, axes = mod.weak_enum(np.array([1.5, -2.0, 0.0]))
    assert val == 3.5
    assert axes == ((1, -1, 1),)


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_golden_2d(mod):
    val, axes = mod.weak_enum(np.array([[2.0, -3.0], [-1.0, 4.0]]))
    assert val == 10.0
    assert axes == ((1, -1), (1, -1))


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_golden_3d(mod):
    lam = np.array([[[1.0, -2.0], [3.0, -4.0]], [[5.0, -6.0], [7.0, 8.0]]])
    val, axes = mod.weak_enum(lam)
    assert val == 20.0
    assert axes == ((1, 1), (1, 1), (1, -1))
    assert signed_sum(lam, axes) == val


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_zero_entries_take_plus_sign(mod):
    val, axes = mod.weak_enum(np.array([0.0, -1.0]))
    assert val == 1.0
    assert axes == ((1, -1),)


# ---------------------------------------------------------------------------
# tie cases: first vertex in Gray order must win on every backend


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_tie_diagonal_matrix(mod):
    # (+,+) and (+,-) both reach 2; Gray order starts at all-plus.
    val, axes = mod.weak_enum(np.eye(2))
    assert val == 2.0
    assert axes == ((1, 1), (1, 1))


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_tie_antidiagonal_matrix(mod):
    val, axes = mod.weak_enum(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert val == 2.0
    assert axes == ((1, 1), (1, 1))


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_tie_3d_two_corners(mod):
    lam = np.zeros((2, 2, 2))
    lam[0, 0, 0] = 1.0
    lam[1, 1, 1] = 1.0
    val, axes = mod.weak_enum(lam)
    assert val == 2.0
    assert axes == ((1, 1), (1, 1), (1, 1))


def test_exact_engine_breaks_same_ties():
    for flat, dims in [
        ([1, 0, 0, 1], (2, 2)),
        ([0, 1, 1, 0], (2, 2)),
        ([1, 0, 0, 0, 0, 0, 0, 1], (2, 2, 2)),
    ]:
        val, axes = _signopt.maximize_signs(flat, dims)
        assert val == 2
        assert all(s == tuple([1] * d) for s, d in zip(axes, dims))


# ---------------------------------------------------------------------------
# random parity: numpy kernel vs jitted kernel vs exact engine


def random_shapes(rng):
    yield (rng.randint(1, 12),)
    yield (rng.randint(1, 7), rng.randint(1, 5))
    yield (rng.randint(1, 5), rng.randint(1, 4), rng.randint(1, 3))


def test_integer_inputs_agree_verbatim_across_engines():
    rng = random.Random(20)
    for trial in range(40):
        for dims in random_shapes(rng):
            flat = [rng.randint(-9, 9) for _ in range(int(np.prod(dims)))]
            exact_val, exact_axes = _signopt.maximize_signs(flat, dims)
            arr = np.array(flat, dtype=np.float64).reshape(dims)
            for mod in MODULES:
                val, axes = mod.weak_enum(arr)
                # integers are exact in float64: equality, not closeness
                assert val == float(exact_val)
                assert axes == exact_axes


def test_float_inputs_agree_and_witnesses_attain():
    rng = random.Random(21)
    for trial in range(40):
        for dims in random_shapes(rng):
            arr = np.array(
                [rng.uniform(-3.0, 3.0) for _ in range(int(np.prod(dims)))]
            ).reshape(dims)
            results = [mod.weak_enum(arr) for mod in MODULES]
            base_val = results[0][0]
            for val, axes in results:
                assert val == pytest.approx(base_val, rel=1e-12, abs=1e-12)
                assert abs(signed_sum(arr, axes)) == pytest.approx(
                    val, rel=1e-12, abs=1e-12
                )
                assert all(
                    len(signs) == d and set(signs) <= {1, -1}
                    for signs, d in zip(axes, dims)
                )


@pytest.mark.parametrize("mod", MODULES, ids=IDS)
def test_four_axes_rejected(mod):
    with pytest.raises(ValueError):
        mod.weak_enum(np.zeros((2, 2, 2, 2)))


# ---------------------------------------------------------------------------
# backend selection


def test_env_selects_numpy(monkeypatch):
    monkeypatch.setenv("POLYMOMENT_BACKEND", "numpy")
    assert _backend.backend_name() == "numpy"
    assert _backend.kernels().BACKEND == "numpy"


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
def test_env_selects_numba(monkeypatch):
    monkeypatch.setenv("POLYMOMENT_BACKEND", "numba")
    assert _backend.backend_name() == "numba"
    assert _backend.kernels().BACKEND == "numba"


def test_env_value_is_case_and_space_insensitive(monkeypatch):
    monkeypatch.setenv("POLYMOMENT_BACKEND", "  NumPy ")
    assert _backend.backend_name() == "numpy"


def test_env_unset_prefers_numba_when_importable(monkeypatch):
    monkeypatch.delenv("POLYMOMENT_BACKEND", raising=False)
    expected = "numba" if HAS_NUMBA else "numpy"
    assert _backend.backend_name() == expected


def test_unknown_backend_rejected(monkeypatch):
    monkeypatch.setenv("POLYMOMENT_BACKEND", "cuda")
    with pytest.raises(InputError, match="numba.*numpy|numpy.*numba"):
        _backend.backend_name()
    with pytest.raises(InputError):
        _backend.kernels()


# ---------------------------------------------------------------------------
# parity through the public certificate API


def dyadic_tensor(bounds, mode):
    """Sign-alternating dyadic values: exact in both lanes."""

    def fn(k):
        q = F((-1) ** sum(k) * (1 + k[0] + 2 * sum(k[1:])), 8)
        return float(q) if mode == "float" else q

    return MomentTensor.from_function(MultiIndex(bounds), fn, mode=mode)


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
def test_certify_report_identical_between_backends(monkeypatch):
    mu = dyadic_tensor((4, 4), "float")
    monkeypatch.setenv("POLYMOMENT_BACKEND", "numpy")
    a = certify_weakly_bounded(mu, (4, 4))
    monkeypatch.setenv("POLYMOMENT_BACKEND", "numba")
    b = certify_weakly_bounded(mu, (4, 4))
    assert a.constant == b.constant
    assert a.witness_order == b.witness_order
    assert a.witness_signs.axes == b.witness_signs.axes
    assert a.verdict == b.verdict == "holds-up-to-order"


def test_float_lane_matches_exact_lane_on_dyadic_input():
    # dyadic rationals are exact in float64, so the float kernels land on
    # the same values and the same Gray-order winners as the exact engine
    rng = random.Random(22)
    for trial in range(10):
        bounds = (rng.randint(1, 4), rng.randint(1, 4))
        vals = {}

        def fn(k):
            q = F(rng.randint(-16, 16), 16)
            vals[tuple(k)] = q
            return q

        mu_rat = MomentTensor.from_function(MultiIndex(bounds), fn, mode="rational")
        mu_flt = MomentTensor.from_function(
            MultiIndex(bounds),
            lambda k: float(vals[tuple(k)]),
            mode="float",
        )
        for k0 in range(bounds[0] + 1):
            for k1 in range(bounds[1] + 1):
                k = MultiIndex((k0, k1))
                ev, ew = weak_bound_exact(mu_rat, k)
                fv, fw = weak_bound_exact(mu_flt, k)
                assert fv == pytest.approx(float(ev), rel=1e-12, abs=1e-12)
                # the float witness is itself an exact maximizer
                bt = bernstein_coefficients(mu_rat, k)
                assert abs(SignAssignment(fw.axes).evaluate(bt)) == ev


def test_float_vs_exact_generic_values_close():
    rng = random.Random(23)
    for trial in range(10):
        bounds = (rng.randint(1, 3), rng.randint(1, 3))
        vals = {}

        def fn(k):
            x = rng.uniform(-2.0, 2.0)
            vals[tuple(k)] = x
            return F(x)

        mu_rat = MomentTensor.from_function(MultiIndex(bounds), fn, mode="rational")
        mu_flt = MomentTensor.from_function(
            MultiIndex(bounds),
            lambda k: vals[tuple(k)],
            mode="float",
        )
        k = MultiIndex(bounds)
        ev, _ = weak_bound_exact(mu_rat, k)
        fv, _ = weak_bound_exact(mu_flt, k)
        assert fv == pytest.approx(float(ev), rel=1e-9)
