import json
import math
import random
from fractions import Fraction as F

import pytest

from conftest import random_rational_tensor
from polymoment import (
    DiscreteMeasure,
    KernelSamples,
    MomentTensor,
    MultiIndex,
    certify_weakly_bounded,
    check_completely_monotone,
    check_hankel,
    covariance_check,
    jsonio,
    moments,
    random_polymeasure,
    solve_strong,
)
from polymoment.errors import SchemaError
from polymoment.scalars import ComplexRational


# ------------------------------------------------------------ raw rendering

def test_render_json_golden():
    doc = {"a": 1, "b": [1.5, "x"], "c": None, "d": True, "e": False}
    assert jsonio.render_json(doc) == \
        '{"a": 1, "b": [1.5, "x"], "c": null, "d": true, "e": false}'


def test_render_json_preserves_key_order():
    assert jsonio.render_json({"z": 1, "a": 2}) == '{"z": 1, "a": 2}'


def test_render_json_escapes_strings():
    assert jsonio.render_json('a"b\\c\nd\x01') == '"a\\"b\\\\c\\nd\\u0001"'


def test_render_json_rejects_non_string_keys():
    with pytest.raises(SchemaError):
        jsonio.render_json({1: "x"})
    with pytest.raises(SchemaError):
        jsonio.render_json({"x": object()})


def test_render_json_is_deterministic():
    doc = {"vals": [0.1, 2.0 / 3.0, 1e-300], "tag": "r"}
    assert jsonio.render_json(doc) == jsonio.render_json(doc)


def test_format_float_round_trips():
    rng = random.Random(3)
    for _ in range(200):
        x = rng.uniform(-1e6, 1e6) * 10.0 ** rng.randint(-12, 12)
        assert float(jsonio.format_float(x)) == x
    assert jsonio.format_float(0.1) == "0.10000000000000001"
    assert jsonio.format_float(1.0) == "1"


def test_format_float_rejects_non_finite_and_non_float():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(SchemaError):
            jsonio.format_float(bad)
    with pytest.raises(SchemaError):
        jsonio.format_float(True)
    with pytest.raises(SchemaError):
        jsonio.format_float(3)


# ------------------------------------------------------------- moment tensor

def roundtrip_tensor(mu):
    text = jsonio.render_json(jsonio.render_moment_tensor(mu))
    return jsonio.parse_moment_tensor(json.loads(text))


def test_tensor_roundtrip_rational():
    rng = random.Random(5)
    mu = random_rational_tensor(rng, (3, 2))
    back = roundtrip_tensor(mu)
    assert back.values == mu.values
    assert back.bounds == mu.bounds
    assert back.mode == "rational"


def test_tensor_roundtrip_float():
    mu = MomentTensor.from_function((2, 2), lambda k: 0.1 * (sum(k) + 1),
                                    mode="float")
    back = roundtrip_tensor(mu)
    assert back.values == mu.values
    assert back.mode == "float"


def test_tensor_roundtrip_complex_rational():
    vals = tuple(ComplexRational(F(p, 3), F(-p, 7)) for p in range(6))
    mu = MomentTensor(MultiIndex((5,)), vals, "rational")
    back = roundtrip_tensor(mu)
    assert back.values == mu.values


def test_tensor_parse_missing_n():
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_moment_tensor({"bounds": [1], "values": []})
    assert ei.value.field == "tensor.n"


def test_tensor_parse_duplicate_index():
    doc = {"n": 1, "bounds": [1], "values": [
        {"k": [0], "v": "1"}, {"k": [0], "v": "2"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_moment_tensor(doc)
    assert "duplicate" in str(ei.value)
    assert ei.value.field == "tensor.values[1].k"


def test_tensor_parse_out_of_bounds_index():
    doc = {"n": 1, "bounds": [1], "values": [{"k": [2], "v": "1"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_moment_tensor(doc)
    assert ei.value.field == "tensor.values[0].k"


def test_tensor_parse_incomplete_box():
    doc = {"n": 1, "bounds": [2], "values": [
        {"k": [0], "v": "1"}, {"k": [2], "v": "1/4"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_moment_tensor(doc)
    assert "misses k = [1]" in str(ei.value)
    assert ei.value.field == "tensor.values"


def test_tensor_parse_bad_scalar_names_entry():
    doc = {"n": 1, "bounds": [0], "values": [{"k": [0], "v": "1/0"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_moment_tensor(doc)
    assert ei.value.field == "tensor.values[0].v"


def test_tensor_parse_tolerates_unknown_keys():
    doc = {"n": 1, "bounds": [0], "mode": "rational", "comment": "extra",
           "values": [{"k": [0], "v": "3/2", "note": "kept"}]}
    mu = jsonio.parse_moment_tensor(doc)
    assert mu[(0,)] == F(3, 2)


def test_tensor_parse_mode_override():
    doc = {"n": 1, "bounds": [0], "values": [{"k": [0], "v": "1/2"}]}
    assert jsonio.parse_moment_tensor(doc, mode="rational")[(0,)] == F(1, 2)


# --------------------------------------------------------------- polymeasure

def test_polymeasure_roundtrip():
    g = random_polymeasure(2, 3, seed=13)
    text = jsonio.render_json(jsonio.render_polymeasure(g))
    back = jsonio.parse_polymeasure(json.loads(text))
    assert back.atoms == g.atoms
    assert back.coeffs == g.coeffs
    assert back.mode == "rational"


def test_polymeasure_sparse_coefficients_fill_with_zero():
    doc = {"n": 2, "atoms": [["1/4", "3/4"], ["1/2"]],
           "coeffs": [{"index": [1, 0], "v": "2/3"}]}
    g = jsonio.parse_polymeasure(doc)
    assert g.coeff((0, 0)) == 0
    assert g.coeff((1, 0)) == F(2, 3)


def test_polymeasure_duplicate_index_rejected():
    doc = {"n": 1, "atoms": [["1/2"]],
           "coeffs": [{"index": [0], "v": "1"}, {"index": [0], "v": "1"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_polymeasure(doc)
    assert "duplicate" in str(ei.value)


def test_polymeasure_index_out_of_range_names_axis():
    doc = {"n": 2, "atoms": [["1/2"], ["1/4", "3/4"]],
           "coeffs": [{"index": [0, 2], "v": "1"}]}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_polymeasure(doc)
    assert "index[1] = 2 exceeds atom count 2" in str(ei.value)


def test_polymeasure_complex_float_coefficients():
    doc = {"n": 2, "atoms": [["0", "1"], ["0", "1"]],
           "coeffs": [{"index": [0, 1], "v": {"re": 0.5, "im": -0.25}}]}
    g = jsonio.parse_polymeasure(doc)
    assert g.mode == "float"
    assert g.coeff((0, 1)) == 0.5 - 0.25j


def test_polymeasure_bad_atom_named():
    doc = {"n": 1, "atoms": [["x/y"]], "coeffs": []}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_polymeasure(doc)
    assert ei.value.field == "polymeasure.atoms[0]"


# ------------------------------------------------------------------ measures

def test_measure_roundtrip():
    m = DiscreteMeasure((F(0), F(1, 3), F(1)), (F(1, 2), F(-2), F(7, 5)))
    back = jsonio.parse_measure(json.loads(
        jsonio.render_json(jsonio.render_measure(m))))
    assert back.atoms == m.atoms
    assert back.weights == m.weights


def test_measure_length_mismatch():
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_measure({"atoms": ["0", "1"], "weights": ["1"]})
    assert ei.value.field == "measure.weights"


# ------------------------------------------------------------------- reports

def test_certificate_roundtrip():
    rng = random.Random(21)
    mu = random_rational_tensor(rng, (3, 3))
    rep = certify_weakly_bounded(mu, (3, 3))
    back = jsonio.parse_certificate(json.loads(
        jsonio.render_json(jsonio.render_certificate(rep))))
    assert back.kind == rep.kind
    assert back.constant == rep.constant
    assert back.verdict == rep.verdict
    assert tuple(back.scanned_order) == tuple(rep.scanned_order)
    assert back.witness_signs.axes == rep.witness_signs.axes
    assert back.extension_norm_bound == rep.extension_norm_bound
    assert back.mode == rep.mode


def test_monotonicity_render_carries_witness():
    mu = MomentTensor.from_function((3,), lambda k: F(2) ** k[0])
    rep = check_completely_monotone(mu, (3,))
    doc = jsonio.render_monotonicity(rep)
    assert doc["verdict"] == "violated"
    assert doc["witness"] == {"r": [1], "s": [0]}
    assert doc["value"] == "-1"
    jsonio.render_json(doc)


def test_hankel_render_carries_witness():
    mu = MomentTensor.from_function(
        (3, 3), lambda k: F(1, (k[0] + 1) * (k[1] + 1)))
    doc = jsonio.render_hankel(check_hankel(mu))
    assert doc["verdict"] == "violated"
    assert doc["witness"]["k"] == [0, 1]
    assert doc["witness"]["axis"] == 0
    assert doc["witness"] == {"k": [0, 1], "axis": 0,
                              "left": "1/4", "right": "1/3"}
    jsonio.render_json(doc)


def test_strong_solution_roundtrip_and_extras():
    mu = MomentTensor.from_function(
        (8, 8), lambda k: F(1, 2 ** (k[0] + k[1])))
    sol = solve_strong(mu, J=3, N=16)
    doc = jsonio.render_strong_solution(sol)
    parsed = jsonio.parse_strong_solution(json.loads(jsonio.render_json(doc)))
    assert parsed["N"] == 16
    assert parsed["weights"] == list(sol.measure.weights)
    assert parsed["nodes"] == list(sol.measure.atoms)
    assert dict(parsed["residuals"])[MultiIndex((1, 1))] == 1.0 / 64.0
    doc["extra"] = "tolerated"
    jsonio.parse_strong_solution(doc)


def test_strong_solution_node_count_guard():
    doc = {"N": 2, "nodes": ["0", "1"], "weights": ["1", "0", "0"],
           "residuals": []}
    with pytest.raises(SchemaError) as ei:
        jsonio.parse_strong_solution(doc)
    assert ei.value.field == "solution.nodes"


def test_harmonizable_render_is_serializable():
    mu = moments(random_polymeasure(2, 2, coeff_range=(0, 2), seed=2),
                 (30, 30))
    rep = covariance_check(mu)
    doc = jsonio.render_harmonizable(rep)
    text = jsonio.render_json(doc)
    parsed = json.loads(text)
    assert parsed["classification"] == rep.classification
    assert parsed["stationarity"] == rep.stationarity
    assert parsed["effective_truncation"] == 30
    assert parsed["weak_bound"]["verdict"] == rep.weak_bound.verdict


# ----------------------------------------------------------------- CSV lane

def test_kernel_csv_golden():
    samples = KernelSamples(
        (0.0, 1.0),
        ((1.0 + 0.0j, 0.5 + 0.25j), (0.5 - 0.25j, 1.0 + 0.0j)))
    assert jsonio.render_kernel_csv(samples) == (
        "t,t_prime,re,im\n"
        "0,0,1,0\n"
        "0,1,0.5,0.25\n"
        "1,0,0.5,-0.25\n"
        "1,1,1,0\n"
    )
