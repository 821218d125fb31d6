"""Command-line front end.

Every subcommand reads JSON, writes a deterministic JSON report (CSV
for kernel-sample) and exits 0 on a positive verdict, 1 on a negative
verdict or refusal (the report carries the witness), 2 on input or
usage errors.  POLYMOMENT_MODE overrides --mode when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import jsonio, scalars
from .certifiers import bounded_constant, certify_weakly_bounded
from .errors import (
    BoundViolationError,
    BudgetExceededError,
    HankelViolationError,
    PolymomentError,
    SchemaError,
)
from .harmonizable import covariance_check, sample_kernel
from .indexing import MultiIndex
from .moment_core import check_completely_monotone
from .polymeasure import DiscreteMeasure, random_polymeasure, semivariation, variation
from .polymeasure import moments as polymeasure_moments
from .scalars import FLOAT, RATIONAL
from .strong import (
    check_hankel,
    reconstruct_multivariate,
    reconstruct_univariate,
    solve_strong,
    verify_strong_identity,
)
from .moment_core import Polynomial


@dataclass
class RunConfig:
    command: str
    inputs: List[str]
    max_order: Optional[str]
    n_recon: Optional[str]
    trunc: int
    grid: str
    seed: int
    mode: str
    claimed_c: Optional[str]
    threads: int
    output: Optional[str]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="polymoment",
        description="certificates and reconstructions for truncated "
                    "Hausdorff moment problems",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, inputs=1, order=False, n_recon=False, trunc=False,
               grid=False, claimed=False):
        if inputs:
            p.add_argument("--input", nargs=inputs if inputs > 1 else None,
                           required=True, help="input JSON path%s"
                           % ("s" if inputs > 1 else ""))
        if order:
            p.add_argument("--order", default="8",
                           help="scan order: one int for every axis or a "
                                "comma list (clamped to the stored bounds)")
        if n_recon:
            p.add_argument("--n-recon", default="256",
                           help="reconstruction degree N")
        if trunc:
            p.add_argument("--trunc", type=int, default=30,
                           help="kernel series truncation T")
        if grid:
            p.add_argument("--grid", default="0:2:8",
                           help="sample grid start:stop:count or comma floats")
        if claimed:
            p.add_argument("--claimed-c", default=None,
                           help="claimed constant to test against")
        p.add_argument("--mode", choices=[RATIONAL, FLOAT], default=None,
                       help="arithmetic mode (default: input file's, else "
                            "rational); POLYMOMENT_MODE overrides")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1,
                       help="reserved; results never depend on it")
        p.add_argument("--output", default=None, help="write the report here "
                                                      "instead of stdout")

    common(sub.add_parser("check-bounded", help="bounded constant scan"),
           order=True, claimed=True)
    common(sub.add_parser("check-weak", help="weak boundedness certificate"),
           order=True, claimed=True)
    common(sub.add_parser("check-monotone", help="complete monotonicity scan"),
           order=True)
    common(sub.add_parser("check-hankel", help="Hankel structure scan"),
           order=True)
    common(sub.add_parser("moments", help="moment tensor of a polymeasure"),
           order=True)
    common(sub.add_parser("semivariation", help="semivariation and variation "
                                                "of a polymeasure"))
    rec = sub.add_parser("reconstruct", help="measures from moment data")
    rec.add_argument("target", choices=["univariate", "multivariate", "strong"])
    common(rec, order=True, n_recon=True, claimed=True)
    common(sub.add_parser("verify-strong", help="check the reconstruction "
                                                "against the functional"),
           inputs=2)
    sub.choices["verify-strong"].add_argument(
        "--poly", action="append", default=None,
        help="polynomial as comma coefficients, ascending; repeat per axis")
    common(sub.add_parser("harmonizable-check", help="classify covariance data"),
           order=True, trunc=True, grid=True, claimed=True)
    common(sub.add_parser("kernel-sample", help="kernel heatmap CSV"),
           trunc=True, grid=True)
    gen = sub.add_parser("gen-oracle", help="seeded random polymeasure")
    gen.add_argument("--arity", type=int, default=2)
    gen.add_argument("--atoms-per-axis", default="4")
    gen.add_argument("--coeff-range", default="-2,2")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--mode", choices=[RATIONAL, FLOAT], default=None)
    gen.add_argument("--threads", type=int, default=1)
    gen.add_argument("--output", default=None)
    return top


def _resolve_mode(flag: Optional[str]) -> Optional[str]:
    env = os.environ.get("POLYMOMENT_MODE", "").strip().lower()
    if env:
        if env not in (RATIONAL, FLOAT):
            raise SchemaError("POLYMOMENT_MODE must be 'rational' or 'float', "
                              "got %r" % env, "POLYMOMENT_MODE")
        return env
    return flag


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError("cannot read %s: %s" % (path, exc), path) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError("%s: malformed JSON at line %d column %d: %s"
                          % (path, exc.lineno, exc.colno, exc.msg), path) from exc


def _parse_order(text: str, n: int, bounds=None) -> MultiIndex:
    parts = [p.strip() for p in text.split(",")]
    try:
        ints = [int(p) for p in parts]
    except ValueError as exc:
        raise SchemaError("--order must be an int or comma ints, got %r"
                          % text, "--order") from exc
    if len(ints) == 1:
        ints = ints * n
    if len(ints) != n:
        raise SchemaError("--order names %d axes, input has %d"
                          % (len(ints), n), "--order")
    if any(i < 0 for i in ints):
        raise SchemaError("--order entries must be >= 0", "--order")
    if bounds is not None:
        ints = [min(i, b) for i, b in zip(ints, bounds)]
    return MultiIndex(ints)


def _parse_grid(text: str) -> List[float]:
    text = text.strip()
    try:
        if ":" in text:
            start_s, stop_s, count_s = text.split(":")
            start, stop, count = float(start_s), float(stop_s), int(count_s)
            if count < 1:
                raise ValueError("grid needs at least one point")
            if count == 1:
                return [start]
            step = (stop - start) / (count - 1)
            return [start + i * step for i in range(count)]
        return [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise SchemaError("bad --grid %r: %s" % (text, exc), "--grid") from exc


def _parse_claimed(text: Optional[str], mode: str):
    if text is None:
        return None
    try:
        if mode == RATIONAL:
            return Fraction(text)
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError("bad --claimed-c %r: %s" % (text, exc),
                          "--claimed-c") from exc


def _parse_poly(text: str, mode: str) -> Polynomial:
    try:
        coeffs = [scalars.parse_rational(p.strip()) for p in text.split(",")]
    except SchemaError as exc:
        raise SchemaError("bad --poly %r: %s" % (text, exc), "--poly") from exc
    if mode == FLOAT:
        coeffs = [float(c) for c in coeffs]
    return Polynomial(tuple(coeffs))


def _emit(output: Optional[str], text: str) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(output: Optional[str], doc: dict) -> None:
    _emit(output, jsonio.render_json(doc) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except SchemaError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except PolymomentError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    cmd = args.command
    mode_flag = _resolve_mode(getattr(args, "mode", None))

    if cmd == "gen-oracle":
        lo_s, _, hi_s = args.coeff_range.partition(",")
        try:
            lo, hi = Fraction(lo_s), Fraction(hi_s or lo_s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError("bad --coeff-range %r" % args.coeff_range,
                              "--coeff-range") from exc
        atoms = args.atoms_per_axis
        counts = int(atoms) if "," not in atoms else [int(p) for p in atoms.split(",")]
        gamma = random_polymeasure(args.arity, counts, (lo, hi), seed=args.seed)
        _emit_json(args.output, jsonio.render_polymeasure(gamma))
        return 0

    if cmd in ("check-bounded", "check-weak", "check-monotone", "check-hankel"):
        mu = jsonio.parse_moment_tensor(_load_json(args.input), mode_flag)
        order = _parse_order(args.order, mu.n, mu.bounds)
        if cmd == "check-bounded":
            claimed = _parse_claimed(args.claimed_c, mu.mode)
            rep = bounded_constant(mu, order, claimed_c=claimed)
            _emit_json(args.output, jsonio.render_certificate(rep))
            return 0 if rep.verdict == "holds-up-to-order" else 1
        if cmd == "check-weak":
            claimed = _parse_claimed(args.claimed_c, mu.mode)
            rep = certify_weakly_bounded(mu, order, claimed_c=claimed,
                                         seed=args.seed)
            _emit_json(args.output, jsonio.render_certificate(rep))
            return 0 if rep.verdict == "holds-up-to-order" else 1
        if cmd == "check-monotone":
            rep = check_completely_monotone(mu, order)
            _emit_json(args.output, jsonio.render_monotonicity(rep))
            return 0 if rep.verdict == "completely-monotone" else 1
        rep = check_hankel(mu, order)
        _emit_json(args.output, jsonio.render_hankel(rep))
        return 0 if rep.verdict == "hankel" else 1

    if cmd == "moments":
        gamma = jsonio.parse_polymeasure(_load_json(args.input), mode_flag)
        order = _parse_order(args.order, gamma.n)
        mu = polymeasure_moments(gamma, order)
        _emit_json(args.output, jsonio.render_moment_tensor(mu))
        return 0

    if cmd == "semivariation":
        gamma = jsonio.parse_polymeasure(_load_json(args.input), mode_flag)
        sv = semivariation(gamma)
        tv = variation(gamma)
        _emit_json(args.output, {
            "semivariation": scalars.render_scalar(sv),
            "variation": scalars.render_scalar(tv),
        })
        return 0

    if cmd == "reconstruct":
        mu = jsonio.parse_moment_tensor(_load_json(args.input), mode_flag)
        if args.target == "univariate":
            if mu.n != 1:
                raise SchemaError("univariate reconstruction needs a one-axis "
                                  "tensor, got %d axes" % mu.n, "tensor.n")
            n_rec = _parse_single_int(args.n_recon, "--n-recon")
            measure = reconstruct_univariate(list(mu.values), n_rec)
            _emit_json(args.output, jsonio.render_measure(measure))
            return 0
        if args.target == "multivariate":
            order = _parse_order(args.n_recon, mu.n, mu.bounds)
            gamma = reconstruct_multivariate(mu, order)
            _emit_json(args.output, jsonio.render_polymeasure(gamma))
            return 0
        n_rec = _parse_single_int(args.n_recon, "--n-recon")
        j_ord = _parse_single_int(args.order, "--order")
        j_ord = min(j_ord, min(mu.bounds))
        claimed = _parse_claimed(args.claimed_c, mu.mode)
        try:
            sol = solve_strong(mu, J=j_ord, N=n_rec, claimed_c=claimed)
        except HankelViolationError as exc:
            _emit_json(args.output, {
                "refused": "not-hankel",
                "hankel": jsonio.render_hankel(exc.report),
            })
            return 1
        except BoundViolationError as exc:
            _emit_json(args.output, {
                "refused": "bound-violated",
                "certificate": jsonio.render_certificate(exc.report),
            })
            return 1
        _emit_json(args.output, jsonio.render_strong_solution(sol))
        return 0

    if cmd == "verify-strong":
        measure_doc, tensor_doc = args.input
        mdoc = _load_json(measure_doc)
        if isinstance(mdoc, dict) and "nodes" in mdoc and "atoms" not in mdoc:
            # output of `reconstruct strong`, consumed directly
            sol = jsonio.parse_strong_solution(mdoc)
            measure = DiscreteMeasure(tuple(sol["nodes"]),
                                      tuple(sol["weights"]))
        else:
            measure = jsonio.parse_measure(mdoc, mode_flag)
        mu = jsonio.parse_moment_tensor(_load_json(tensor_doc), mode_flag)
        polys_raw = args.poly or ["1"] * mu.n
        if len(polys_raw) != mu.n:
            raise SchemaError("need %d --poly flags, got %d"
                              % (mu.n, len(polys_raw)), "--poly")
        polys = [_parse_poly(p, mu.mode) for p in polys_raw]
        disc = verify_strong_identity(measure, mu, polys)
        if mu.mode == RATIONAL:
            ok = disc == 0
        else:
            ok = float(disc) <= 1e-9
        _emit_json(args.output, {
            "discrepancy": scalars.render_scalar(disc),
            "ok": ok,
        })
        return 0 if ok else 1

    if cmd == "harmonizable-check":
        mu = jsonio.parse_moment_tensor(_load_json(args.input), mode_flag)
        order = _parse_order(args.order, mu.n, mu.bounds)
        grid = _parse_grid(args.grid)
        claimed = _parse_claimed(args.claimed_c,
                                 RATIONAL if mu.mode == RATIONAL else FLOAT)
        rep = covariance_check(mu, grid, order, T=args.trunc, claimed_c=claimed)
        _emit_json(args.output, jsonio.render_harmonizable(rep))
        return 0 if rep.classification == "harmonizable-Hausdorff" else 1

    if cmd == "kernel-sample":
        mu = jsonio.parse_moment_tensor(_load_json(args.input), mode_flag)
        grid = _parse_grid(args.grid)
        t_eff = min(args.trunc, min(mu.bounds))
        samples = sample_kernel(mu, grid, t_eff)
        _emit(args.output, jsonio.render_kernel_csv(samples))
        return 0

    raise SchemaError("unknown command %r" % cmd, "command")


def _parse_single_int(text: str, flag: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise SchemaError("%s must be a single integer, got %r" % (flag, text),
                          flag) from exc


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
