"""Wire formats: deterministic JSON rendering and validating parsers.

Rendering is byte-deterministic: keys keep insertion order, floats go
through '%.17g' (round-trip exact), rationals become "p/q" strings in
lowest terms.  Parsers name the offending field in SchemaError so the
CLI can exit 2 with a useful message.  Unknown keys are tolerated on
input, which keeps reports with informational extras round-trippable
under their core schema.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import scalars
from .certifiers import CertificateReport, SignAssignment
from .errors import SchemaError
from .harmonizable import HarmonizableReport, KernelSamples, PSDReport
from .indexing import MultiIndex, box_range, box_size
from .moment_core import MomentTensor, MonotonicityReport
from .polymeasure import DiscreteMeasure, DiscretePolymeasure
from .scalars import FLOAT, RATIONAL, ComplexRational
from .strong import HankelReport, HankelWitness, StrongSolution


def format_float(x: float) -> str:
    if isinstance(x, bool) or not isinstance(x, float):
        raise SchemaError("internal: format_float expects a float")
    if math.isnan(x) or math.isinf(x):
        raise SchemaError("non-finite float cannot be serialized")
    return format(x, ".17g")


def render_json(obj) -> str:
    """Recursive renderer with pinned float formatting and key order."""
    parts: List[str] = []
    _render(obj, parts)
    return "".join(parts)


def _render(obj, parts: List[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(_render_str(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            if not isinstance(k, str):
                raise SchemaError("JSON object keys must be strings")
            parts.append(_render_str(k))
            parts.append(": ")
            _render(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(", ")
            _render(v, parts)
        parts.append("]")
    else:
        raise SchemaError("cannot serialize %r" % (type(obj).__name__,))


def _render_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


# ---------------------------------------------------------------- helpers

def _need(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise SchemaError("%s must be an object" % where, where)
    if key not in doc:
        raise SchemaError("%s is missing required key '%s'" % (where, key),
                          "%s.%s" % (where, key))
    return doc[key]


def _int_field(doc, key, where, minimum=None) -> int:
    v = _need(doc, key, where)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError("%s.%s must be an integer" % (where, key),
                          "%s.%s" % (where, key))
    if minimum is not None and v < minimum:
        raise SchemaError("%s.%s must be >= %d" % (where, key, minimum),
                          "%s.%s" % (where, key))
    return v


def _index_list(v, arity, where) -> MultiIndex:
    if not isinstance(v, list) or len(v) != arity or any(
            isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in v):
        raise SchemaError("%s must be a list of %d non-negative ints"
                          % (where, arity), where)
    return MultiIndex(v)


# ------------------------------------------------------------ moment tensor

def render_moment_tensor(mu: MomentTensor) -> dict:
    values = []
    for k in box_range(mu.bounds):
        values.append({"k": list(k), "v": scalars.render_scalar(mu[k])})
    return {
        "n": mu.n,
        "bounds": list(mu.bounds),
        "mode": mu.mode,
        "values": values,
    }


def parse_moment_tensor(doc: dict, mode: Optional[str] = None) -> MomentTensor:
    n = _int_field(doc, "n", "tensor", minimum=1)
    bounds_raw = _need(doc, "bounds", "tensor")
    bounds = _index_list(bounds_raw, n, "tensor.bounds")
    doc_mode = doc.get("mode")
    if doc_mode is not None and doc_mode not in (RATIONAL, FLOAT):
        raise SchemaError("tensor.mode must be 'rational' or 'float'",
                          "tensor.mode")
    use_mode = mode or doc_mode or RATIONAL
    entries = _need(doc, "values", "tensor")
    if not isinstance(entries, list) or not entries:
        raise SchemaError("tensor.values must be a non-empty list",
                          "tensor.values")
    seen: Dict[MultiIndex, object] = {}
    for i, ent in enumerate(entries):
        where = "tensor.values[%d]" % i
        k = _index_list(_need(ent, "k", where), n, where + ".k")
        if not k.leq(bounds):
            raise SchemaError("%s.k = %s leaves the bounds %s"
                              % (where, list(k), list(bounds)), where + ".k")
        if k in seen:
            raise SchemaError("duplicate entry for k = %s" % (list(k),),
                              where + ".k")
        try:
            seen[k] = scalars.parse_scalar(_need(ent, "v", where), use_mode)
        except SchemaError as exc:
            raise SchemaError("%s.v: %s" % (where, exc), where + ".v") from exc
    missing = [k for k in box_range(bounds) if k not in seen]
    if missing:
        raise SchemaError("tensor.values misses k = %s (%d entries short)"
                          % (list(missing[0]), len(missing)), "tensor.values")
    vals = tuple(seen[k] for k in box_range(bounds))
    return MomentTensor(bounds, vals, use_mode)


# ------------------------------------------------------------- polymeasure

def render_polymeasure(gamma: DiscretePolymeasure) -> dict:
    coeffs = []
    idx_bounds = tuple(d - 1 for d in gamma.dims)
    for idx in box_range(idx_bounds):
        coeffs.append({"index": list(idx),
                       "v": scalars.render_scalar(gamma.coeff(idx))})
    return {
        "n": gamma.n,
        "atoms": [[str(a) for a in ax] for ax in gamma.atoms],
        "coeffs": coeffs,
    }


def parse_polymeasure(doc: dict, mode: Optional[str] = None) -> DiscretePolymeasure:
    n = _int_field(doc, "n", "polymeasure", minimum=1)
    atoms_raw = _need(doc, "atoms", "polymeasure")
    if not isinstance(atoms_raw, list) or len(atoms_raw) != n:
        raise SchemaError("polymeasure.atoms must be a list of %d axis lists" % n,
                          "polymeasure.atoms")
    atoms = []
    for axis, ax in enumerate(atoms_raw):
        where = "polymeasure.atoms[%d]" % axis
        if not isinstance(ax, list) or not ax:
            raise SchemaError("%s must be a non-empty list" % where, where)
        try:
            atoms.append(tuple(scalars.parse_rational(a) for a in ax))
        except SchemaError as exc:
            raise SchemaError("%s: %s" % (where, exc), where) from exc
    dims = tuple(len(ax) for ax in atoms)
    entries = _need(doc, "coeffs", "polymeasure")
    if not isinstance(entries, list):
        raise SchemaError("polymeasure.coeffs must be a list", "polymeasure.coeffs")
    idx_bounds = tuple(d - 1 for d in dims)
    inferred = mode
    parsed: Dict[MultiIndex, object] = {}
    for i, ent in enumerate(entries):
        where = "polymeasure.coeffs[%d]" % i
        idx = _index_list(_need(ent, "index", where), n, where + ".index")
        for axis, (a, d) in enumerate(zip(idx, dims)):
            if a >= d:
                raise SchemaError("%s.index[%d] = %d exceeds atom count %d"
                                  % (where, axis, a, d), where + ".index")
        if idx in parsed:
            raise SchemaError("duplicate coefficient for index %s" % (list(idx),),
                              where + ".index")
        raw = _need(ent, "v", where)
        if inferred is None:
            inferred = _infer_mode(raw)
        try:
            parsed[idx] = scalars.parse_scalar(raw, inferred)
        except SchemaError as exc:
            raise SchemaError("%s.v: %s" % (where, exc), where + ".v") from exc
    use_mode = inferred or RATIONAL
    zero = Fraction(0) if use_mode == RATIONAL else 0.0
    coeffs = tuple(parsed.get(idx, zero) for idx in box_range(idx_bounds))
    return DiscretePolymeasure(tuple(atoms), coeffs, use_mode)


def _infer_mode(raw) -> str:
    if isinstance(raw, str):
        return RATIONAL
    if isinstance(raw, dict):
        sub = raw.get("re")
        if isinstance(sub, str):
            return RATIONAL
        return FLOAT
    return FLOAT


# ------------------------------------------------------- measures, reports

def render_measure(m: DiscreteMeasure) -> dict:
    return {
        "atoms": [str(a) for a in m.atoms],
        "weights": [scalars.render_scalar(w) for w in m.weights],
    }


def parse_measure(doc: dict, mode: Optional[str] = None) -> DiscreteMeasure:
    atoms_raw = _need(doc, "atoms", "measure")
    weights_raw = _need(doc, "weights", "measure")
    if not isinstance(atoms_raw, list) or not atoms_raw:
        raise SchemaError("measure.atoms must be a non-empty list", "measure.atoms")
    if not isinstance(weights_raw, list) or len(weights_raw) != len(atoms_raw):
        raise SchemaError("measure.weights must match measure.atoms in length",
                          "measure.weights")
    atoms = tuple(scalars.parse_rational(a) for a in atoms_raw)
    use_mode = mode or (RATIONAL if all(isinstance(w, str) for w in weights_raw)
                        else FLOAT)
    weights = tuple(scalars.parse_scalar(w, use_mode) for w in weights_raw)
    return DiscreteMeasure(atoms, weights)


def _render_signs(signs: Optional[SignAssignment]):
    if signs is None:
        return None
    out = []
    for ax in signs.axes:
        row = []
        for v in ax:
            row.append(int(v) if isinstance(v, int) or
                       (isinstance(v, Fraction) and v.denominator == 1)
                       else scalars.render_scalar(v))
        out.append(row)
    return out


def render_certificate(rep: CertificateReport) -> dict:
    return {
        "kind": rep.kind,
        "scanned_order": list(rep.scanned_order),
        "constant": scalars.render_scalar(rep.constant),
        "witness_order": None if rep.witness_order is None else list(rep.witness_order),
        "witness_signs": _render_signs(rep.witness_signs),
        "method": rep.method,
        "verdict": rep.verdict,
        "extension_norm_bound": scalars.render_scalar(rep.extension_norm_bound),
        "mode": rep.mode,
    }


def parse_certificate(doc: dict) -> CertificateReport:
    kind = _need(doc, "kind", "certificate")
    scanned = MultiIndex(_need(doc, "scanned_order", "certificate"))
    mode = doc.get("mode") or (RATIONAL if isinstance(doc.get("constant"), str)
                               else FLOAT)
    constant = scalars.parse_scalar(_need(doc, "constant", "certificate"), mode)
    wo = doc.get("witness_order")
    ws = doc.get("witness_signs")
    signs = None
    if ws is not None:
        signs = SignAssignment(tuple(
            tuple(v if isinstance(v, int) else scalars.parse_scalar(v, mode)
                  for v in ax) for ax in ws))
    ext = scalars.parse_scalar(_need(doc, "extension_norm_bound", "certificate"),
                               mode)
    return CertificateReport(
        kind, scanned, constant,
        None if wo is None else MultiIndex(wo), signs,
        _need(doc, "method", "certificate"),
        _need(doc, "verdict", "certificate"), ext, mode)


def render_monotonicity(rep: MonotonicityReport) -> dict:
    witness = None
    if rep.witness is not None:
        witness = {"r": list(rep.witness[0]), "s": list(rep.witness[1])}
    return {
        "verdict": rep.verdict,
        "scanned_order": list(rep.scanned_order),
        "witness": witness,
        "value": None if rep.value is None else scalars.render_scalar(rep.value),
        "mode": rep.mode,
    }


def render_hankel(rep: HankelReport) -> dict:
    witness = None
    if rep.witness is not None:
        witness = {
            "k": list(rep.witness.k),
            "axis": rep.witness.axis,
            "left": scalars.render_scalar(rep.witness.left),
            "right": scalars.render_scalar(rep.witness.right),
        }
    return {
        "verdict": rep.verdict,
        "scanned_order": list(rep.scanned_order),
        "witness": witness,
        "mode": rep.mode,
    }


def render_strong_solution(sol: StrongSolution) -> dict:
    residuals = []
    for k, r in sol.residuals.items():
        residuals.append({"k": list(k), "r": float(r)})
    return {
        "N": sol.N,
        "nodes": [str(a) for a in sol.measure.atoms],
        "weights": [scalars.render_scalar(w) for w in sol.measure.weights],
        "residuals": residuals,
        "bounded_constant": scalars.render_scalar(sol.bounded.constant),
        "completely_monotone": sol.monotone.verdict,
    }


def parse_strong_solution(doc: dict) -> dict:
    """Validate the core strong-solution schema; returns plain pieces."""
    n_val = _int_field(doc, "N", "solution", minimum=1)
    nodes_raw = _need(doc, "nodes", "solution")
    weights_raw = _need(doc, "weights", "solution")
    if not isinstance(nodes_raw, list) or len(nodes_raw) != n_val + 1:
        raise SchemaError("solution.nodes must list N + 1 nodes", "solution.nodes")
    if not isinstance(weights_raw, list) or len(weights_raw) != n_val + 1:
        raise SchemaError("solution.weights must list N + 1 weights",
                          "solution.weights")
    nodes = [scalars.parse_rational(a) if isinstance(a, str) else float(a)
             for a in nodes_raw]
    mode = RATIONAL if all(isinstance(w, str) for w in weights_raw) else FLOAT
    weights = [scalars.parse_scalar(w, mode) for w in weights_raw]
    res_raw = _need(doc, "residuals", "solution")
    if not isinstance(res_raw, list):
        raise SchemaError("solution.residuals must be a list", "solution.residuals")
    residuals = []
    for i, ent in enumerate(res_raw):
        where = "solution.residuals[%d]" % i
        k = _need(ent, "k", where)
        r = _need(ent, "r", where)
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise SchemaError("%s.r must be a number" % where, where + ".r")
        residuals.append((MultiIndex(k), float(r)))
    return {"N": n_val, "nodes": nodes, "weights": weights,
            "residuals": residuals}


def render_psd(rep: PSDReport) -> dict:
    return {
        "verdict": rep.verdict,
        "min_eigenvalue": rep.min_eigenvalue,
        "asymmetry": rep.asymmetry,
        "detail": rep.detail,
    }


def render_harmonizable(rep: HarmonizableReport) -> dict:
    return {
        "classification": rep.classification,
        "stationarity": rep.stationarity,
        "weak_bound": render_certificate(rep.weak_bound),
        "psd": render_psd(rep.psd),
        "hankel": render_hankel(rep.hankel),
        "effective_truncation": rep.effective_truncation,
        "grid": [float(t) for t in rep.grid],
    }


def render_kernel_csv(samples: KernelSamples) -> str:
    lines = ["t,t_prime,re,im"]
    for i, t in enumerate(samples.grid):
        for j, tp in enumerate(samples.grid):
            v = samples.values[i][j]
            lines.append("%s,%s,%s,%s" % (format_float(float(t)),
                                          format_float(float(tp)),
                                          format_float(v.real),
                                          format_float(v.imag)))
    return "\n".join(lines) + "\n"
