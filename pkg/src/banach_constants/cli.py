"""Command-line front end: ``banach compute|sweep|verify|witness``.

Exit codes: 0 success (or a satisfied / certified / UNS verdict), 1 a
violated / NOT_CERTIFIED / NOT_UNS verdict, 2 bad input (unknown space,
constant, theorem or parameters), 3 search failure, 4 unwritable output,
5 an UNDECIDED verdict.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .constants import ConstantId, estimate, recheck
from .errors import BanachError, InfeasibleError, ObjectiveError
from .records import RunCache, dumps, new_record, rows_to_csv
from .search import Estimate, SearchConfig
from .spaces import ParamPair, parse_space
from .theorems import THEOREM_IDS, ClassificationReport, TheoremReport, run_check

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_SEARCH, EXIT_IO, EXIT_UNDECIDED = 0, 1, 2, 3, 4, 5

log = logging.getLogger("banach_constants")


class UsageError(Exception):
    pass


def _config(args) -> SearchConfig:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
    for key, value in (("coarse_grid", args.grid), ("target_tol", args.tol), ("seed", args.seed)):
        if value is not None:
            data[key] = value
    try:
        return SearchConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad search config: {exc}") from exc


def _param_pair(kappa, tau, required: bool) -> ParamPair | None:
    if kappa is None and tau is None and not required:
        return None
    if kappa is None or tau is None:
        raise UsageError("--kappa and --tau must both be given")
    try:
        return ParamPair(float(kappa), float(tau))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _params_dict(pp: ParamPair | None, eps: float | None) -> dict:
    out = {}
    if pp is not None:
        out.update(kappa=pp.kappa, tau=pp.tau)
    if eps is not None:
        out["eps"] = eps
    return out


def _constant(text: str) -> ConstantId:
    try:
        return ConstantId.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _space(text: str):
    try:
        return parse_space(text)
    except BanachError as exc:
        raise UsageError(str(exc)) from exc


def _cache(args) -> RunCache | None:
    return None if args.no_cache else RunCache()


def _cached(cache, space, kind, name, params, cfg, compute):
    """Return ``(result_dict, hit)``, running ``compute`` only on a cache miss."""
    rec = new_record(space, kind, name, params, {}, cfg)
    if cache is not None:
        try:
            hit = cache.lookup(rec.key())
        except OSError as exc:
            log.warning("cache unreadable (%s); recomputing", exc)
            hit = None
        if hit is not None:
            return hit.result, True
    rec.result = compute()
    if cache is not None:
        try:
            cache.append(rec)
        except OSError as exc:
            log.warning("cannot write cache (%s)", exc)
    return rec.result, False


def _compute_estimate(space, cid, pp, eps, cfg, cache) -> Estimate:
    params = _params_dict(pp if cid.needs_params else None, eps if cid.needs_eps else None)
    result, _ = _cached(cache, space, "constant", cid.value, params, cfg,
                        lambda: estimate(space, cid, pp, eps, cfg).to_dict())
    return Estimate.from_dict(result)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc}") from exc


class OutputError(Exception):
    pass


def _row(pp, eps, est: Estimate) -> dict:
    (wx1, wy1), (wx2, wy2) = est.witness[0][:2], est.witness[1][:2]
    return {"kappa": pp.kappa if pp else None, "tau": pp.tau if pp else None, "eps": eps,
            "value": est.value, "error_bound": est.error_bound,
            "wx1": wx1, "wy1": wy1, "wx2": wx2, "wy2": wy2}


def _describe(cid, pp, eps) -> str:
    bits = []
    if pp is not None:
        bits.append(f"kappa={pp.kappa:g}, tau={pp.tau:g}")
    if eps is not None:
        bits.append(f"eps={eps:g}")
    return f"{cid.value}({', '.join(bits)})" if bits else cid.value


def _needs(cid: ConstantId, pp, eps):
    if cid.needs_params and pp is None:
        raise UsageError(f"{cid.value} needs --kappa and --tau")
    if cid.needs_eps and eps is None:
        raise UsageError("delta needs --eps")


def cmd_compute(args) -> int:
    space = _space(args.space)
    cid = _constant(args.constant)
    pp = _param_pair(args.kappa, args.tau, cid.needs_params)
    _needs(cid, pp, args.eps)
    cfg = _config(args)
    est = _compute_estimate(space, cid, pp, args.eps, cfg, _cache(args))
    if args.format == "json":
        payload = {"space": space.id, "constant": cid.value, "params": _params_dict(pp, args.eps),
                   "estimate": est.to_dict()}
        _emit(dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        _emit(rows_to_csv([_row(pp, args.eps, est)]), args.out)
    else:
        err = "inf (lower bound)" if not est.certified else f"{est.error_bound:.1e}"
        lines = [
            f"{_describe(cid, pp, args.eps)} on {space.id}",
            f"  value        {est.value:.5f} ± {err}",
            f"  full         {est.value!r}",
            f"  witness x    {np.array2string(est.witness[0], precision=10)}",
            f"  witness y    {np.array2string(est.witness[1], precision=10)}",
            f"  evaluations  {est.evaluations}",
        ]
        if "radius" in est.extra:
            lines.append(f"  radius of y  {est.extra['radius']:.10g}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _axis(text: str | None, step: float | None, name: str) -> list:
    """Parse ``a`` or ``a:b`` into grid values; ``a:b`` needs ``--step``."""
    if text is None:
        return [None]
    try:
        if ":" not in text:
            return [float(text)]
        a, b = (float(s) for s in text.split(":", 1))
    except ValueError as exc:
        raise UsageError(f"--{name}: expected a number or a range a:b, got {text!r}") from exc
    if step is None or not step > 0:
        raise UsageError(f"--{name} range needs --step > 0")
    if b < a:
        raise UsageError(f"--{name}: empty range {text!r}")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return [round(a + i * step, 12) for i in range(n)]


def cmd_sweep(args) -> int:
    space = _space(args.space)
    cid = _constant(args.constant)
    cfg = _config(args)
    kappas = _axis(args.kappa, args.step, "kappa")
    taus = _axis(args.tau, args.step, "tau")
    epss = _axis(args.eps, args.step, "eps")
    cache = _cache(args)
    rows = []
    for k in kappas:
        for t in taus:
            pp = _param_pair(k, t, cid.needs_params)
            for e in epss:
                _needs(cid, pp, e)
                est = _compute_estimate(space, cid, pp, e, cfg, cache)
                rows.append(_row(pp, e, est))
    if args.format == "json":
        payload = {"space": space.id, "constant": cid.value, "rows": rows}
        _emit(dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        _emit(rows_to_csv(rows), args.out)
    else:
        lines = [f"{'kappa':>8} {'tau':>8} {'eps':>8} {'value':>14} {'error_bound':>12}"]
        for r in rows:
            cells = ["-" if r[c] is None else f"{r[c]:g}" for c in ("kappa", "tau", "eps")]
            lines.append(f"{cells[0]:>8} {cells[1]:>8} {cells[2]:>8} {r['value']:>14.8f} {r['error_bound']:>12.2e}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


_VERDICT_EXIT = {
    "satisfied": EXIT_OK, "CERTIFIED": EXIT_OK, "UNS": EXIT_OK,
    "violated": EXIT_VIOLATED, "NOT_CERTIFIED": EXIT_VIOLATED, "NOT_UNS": EXIT_VIOLATED,
    "UNDECIDED": EXIT_UNDECIDED,
}


def cmd_verify(args) -> int:
    space = _space(args.space)
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"unknown theorem {args.theorem!r}; expected one of {list(THEOREM_IDS)}")
    pp = _param_pair(args.kappa, args.tau, args.theorem != "uns")
    if args.theorem == "t2-delta" and args.eps is None:
        raise UsageError("t2-delta needs --eps")
    eps = args.eps if args.theorem == "t2-delta" else None
    cfg = _config(args)

    result, _ = _cached(_cache(args), space, "theorem", args.theorem, _params_dict(pp, eps), cfg,
                        lambda: run_check(args.theorem, space, pp, eps, cfg).to_dict())
    report = (ClassificationReport if args.theorem == "uns" else TheoremReport).from_dict(result)
    if args.format == "table":
        lines = [f"{args.theorem} on {space.id}: {report.verdict}"]
        for name in ("lhs", "mid", "rhs", "margin", "tol", "t_value", "t2_value", "t2_verdict", "agree"):
            if hasattr(report, name) and getattr(report, name) is not None:
                lines.append(f"  {name:<8} {getattr(report, name)}")
        for note in getattr(report, "flags", []):
            lines.append(f"  FLAG: {note}")
        for note in getattr(report, "caveats", []):
            lines.append(f"  note: {note}")
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "csv":
        raise UsageError("verify reports are emitted as json or table")
    else:
        _emit(dumps(report.to_dict()) + "\n", args.out)
    return _VERDICT_EXIT[report.verdict]


def cmd_witness(args) -> int:
    space = _space(args.space)
    cid = _constant(args.constant)
    pp = _param_pair(args.kappa, args.tau, cid.needs_params)
    _needs(cid, pp, args.eps)
    cfg = _config(args)
    est = _compute_estimate(space, cid, pp, args.eps, cfg, _cache(args))
    again = recheck(space, cid, est, pp)
    x, y = est.witness
    nx, ny = float(space.norm(x)), float(space.norm(y))
    if args.format == "json":
        payload = {"space": space.id, "constant": cid.value, "params": _params_dict(pp, args.eps),
                   "x": x, "y": y, "norm_x": nx, "norm_y": ny, "value": est.value, "recheck": again}
        if "radius" in est.extra:
            payload["radius"] = est.extra["radius"]
        _emit(dumps(payload) + "\n", args.out)
    elif args.format == "csv":
        _emit(rows_to_csv([_row(pp, args.eps, est)]), args.out)
    else:
        lines = [
            f"{_describe(cid, pp, args.eps)} on {space.id}",
            f"  x       {np.array2string(x, precision=12)}   ||x|| = {nx:.15g}",
            f"  y       {np.array2string(y, precision=12)}   ||y|| = {ny:.15g}",
        ]
        if "radius" in est.extra:
            lines.append(f"  radius  {est.extra['radius']:.12g}  (pair is x, radius * y)")
        lines += [f"  value   {est.value!r}", f"  recheck {again!r}"]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _common(p: argparse.ArgumentParser, constant: bool, theorem: bool, ranges: bool) -> None:
    p.add_argument("--space", required=True, help="lp:<p>:<dim>, euclid:<dim>, dayjames or poly:<file>")
    if constant:
        p.add_argument("--constant", required=True, help="T, T1, T2, J, CNJ, CNJp, A2, Akt or delta")
    if theorem:
        p.add_argument("--theorem", required=True, help=", ".join(THEOREM_IDS))
    kind = str if ranges else float
    extra = " (a number or a range a:b)" if ranges else ""
    p.add_argument("--kappa", type=kind, help="first weight" + extra)
    p.add_argument("--tau", type=kind, help="second weight" + extra)
    p.add_argument("--eps", type=kind, help="modulus of convexity argument in [0, 2]" + extra)
    if ranges:
        p.add_argument("--step", type=float, help="grid step for a:b ranges")
    p.add_argument("--grid", type=int, help="coarse grid points per angle (default 2048)")
    p.add_argument("--tol", type=float, help="target tolerance; a larger error bound logs a warning")
    p.add_argument("--seed", type=int, help="seed for every pseudo-random choice")
    p.add_argument("--config", help="JSON file with SearchConfig fields")
    p.add_argument("--format", choices=("table", "csv", "json"), default="json" if theorem else "table")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--no-cache", action="store_true", help="ignore and do not update the run cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="banach", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("compute", help="estimate one constant")
    _common(p, constant=True, theorem=False, ranges=False)
    p.set_defaults(func=cmd_compute)
    p = sub.add_parser("sweep", help="estimate a constant over a parameter grid")
    _common(p, constant=True, theorem=False, ranges=True)
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("verify", help="check an inequality and report the verdict")
    _common(p, constant=False, theorem=True, ranges=False)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("witness", help="print the optimal pair and re-evaluate it")
    _common(p, constant=True, theorem=False, ranges=False)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ObjectiveError, InfeasibleError) as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except BanachError as exc:
        # remaining package errors are precondition failures (domain, dimension, space)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
