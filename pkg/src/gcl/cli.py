"""Command line front end.

Subcommands: validate | dilate | classify | sweep | compose.  Channel
and state files use the JSON format of the io module; "-" reads from
stdin.  $GCL_CONFIG may name a JSON file with RunConfig defaults;
--tol, --seed and --out override it.  Exit status is 0 when every
requested validation passed, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io, plots
from .channel import GaussianChannel, channel_class, compose, rank_invariants, validate_cp
from .config import RunConfig
from .degradability import classify, weak_complement
from .dilation import (
    UnitaryDilation,
    dilate_case_i,
    dilate_pure,
    dilate_reduced_mixed,
    dilate_reduced_pure,
    dilation_residual,
)
from .sampling import random_covariance, random_two_mode_class
from .states import is_pure, validate_state
from .twomode import (
    TwoModeClass,
    compose_class,
    decoupling_search,
    n1_threshold,
    n2_threshold,
    thermal_classify,
    zero_capacity_bound,
)

_FLAVORS = {
    "case_i": dilate_case_i,
    "pure": dilate_pure,
    "reduced_pure": dilate_reduced_pure,
    "reduced_mixed": dilate_reduced_mixed,
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _parse_floats(text: str, flag: str):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"{flag} expects a comma-separated list of numbers")
    if not values:
        raise ValueError(f"{flag} produced an empty grid")
    return values


def cmd_validate(args, cfg: RunConfig) -> int:
    failures = 0
    for path in args.files:
        report: dict = {"file": path}
        try:
            text = _read_text(path)
            if args.state:
                st = io.state_from_json(text)
                ok, lo = validate_state(st.gamma, tol=cfg.tol_psd)
                report.update(ok=bool(ok), min_eig=lo,
                              pure=bool(is_pure(st.gamma)))
            else:
                ch = io.channel_from_json(text)
                ok, lo = validate_cp(ch, tol=cfg.tol_psd)
                inv = rank_invariants(ch, tol_rank=cfg.tol_rank)
                report.update(ok=bool(ok), min_eig=lo, k=inv.k, r=inv.r,
                              r_prime=inv.r_prime)
                try:
                    report["channel_class"] = channel_class(ch)[0]
                except ValueError:
                    report["channel_class"] = None
        except (OSError, ValueError) as exc:
            report.update(ok=False, error=str(exc))
        if not report["ok"]:
            failures += 1
        _emit(report)
    return 1 if failures else 0


def cmd_dilate(args, cfg: RunConfig) -> int:
    try:
        ch = io.channel_from_json(_read_text(args.file))
        d = _FLAVORS[args.flavor](ch)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    rng = np.random.default_rng(cfg.seed)
    gammas = [random_covariance(d.n, rng) for _ in range(5)]
    summary = {"ell": d.ell, "pure": d.pure,
               "residual": dilation_residual(d, ch, gammas)}
    out = args.out if args.out is not None else cfg.output_path
    if out is not None:
        _write_text(out, io.dilation_to_json(d))
        _emit(summary)
    else:
        sys.stderr.write(json.dumps(summary) + "\n")
        sys.stdout.write(io.dilation_to_json(d))
    return 0


def _two_mode_threshold(cls: TwoModeClass):
    try:
        if cls.kind == "B":
            return n1_threshold(cls.a)
        if cls.kind == "C":
            return n2_threshold(cls.a, cls.b)
    except ValueError:
        return None
    return None


def cmd_classify(args, cfg: RunConfig) -> int:
    try:
        if args.two_mode is not None:
            if args.a is None:
                raise ValueError("--two-mode needs --a")
            b = args.b if args.b is not None else args.a
            cls = TwoModeClass(args.two_mode, args.a, b)
            verdict = thermal_classify(cls, args.N, tol=cfg.tol_psd)
            _emit({"kind": verdict.kind, "w_min_eig": verdict.w_min_eig,
                   "w_max_eig": verdict.w_max_eig,
                   "threshold": _two_mode_threshold(cls)})
            return 0
        if args.file is None:
            raise ValueError("give a channel file or --two-mode")
        ch = io.channel_from_json(_read_text(args.file))
        d = dilate_reduced_mixed(ch)
        verdict = classify(ch, weak_complement(d), tol=cfg.tol_psd)
        _emit({"kind": verdict.kind, "w_min_eig": verdict.w_min_eig,
               "w_max_eig": verdict.w_max_eig, "ell": d.ell})
        return 0
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def _sweep_rows(args, cfg: RunConfig):
    if args.kind == "fig1":
        header = ("curve", "x", "value")
        rows = [("N1", a, n1_threshold(a))
                for a in np.arange(1.05, 5.0 + 1e-9, 0.05)]
        rows += [("N2", b, n2_threshold(0.0, b))
                 for b in np.arange(0.1, 3.0 + 1e-9, 0.1)]
        return header, rows, plots.render_thresholds
    if args.kind == "fig2":
        header = ("b", "n2", "bound", "bound1")
        rows = [(b, n2_threshold(1.0, b),
                 zero_capacity_bound(1.0, b, "first"),
                 zero_capacity_bound(1.0, b, "second"))
                for b in np.arange(0.05, 3.0 + 1e-9, 0.05)]
        return header, rows, plots.render_bounds
    if args.kind == "fig3":
        xs = _parse_floats(args.xs, "--xs")
        zs = _parse_floats(args.zs, "--zs")
        header = ("x", "z_plus", "r")
        rows = []
        for x in xs:
            for z in zs:
                r = decoupling_search(x, z, args.a)
                rows.append((x, z, r if math.isfinite(r) else math.nan))
        return header, rows, plots.render_decoupling
    # composition-table conformance
    if args.draws < 1:
        raise ValueError("--draws must be positive")
    rng = np.random.default_rng(cfg.seed)
    header = ("first", "second", "draws", "in_set", "ok")
    rows = []
    kinds = ("A1", "A2", "B", "C")
    for k1 in kinds:
        for k2 in kinds:
            hits = 0
            for _ in range(args.draws):
                allowed, concrete = compose_class(
                    random_two_mode_class(k1, rng),
                    random_two_mode_class(k2, rng))
                hits += concrete.kind in allowed
            rows.append((k1, k2, args.draws, hits, hits == args.draws))
    return header, rows, plots.render_table


def cmd_sweep(args, cfg: RunConfig) -> int:
    try:
        header, rows, renderer = _sweep_rows(args, cfg)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    out = args.out if args.out is not None else cfg.output_path
    if out is None:
        io.write_csv(sys.stdout, header, rows)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            io.write_csv(fh, header, rows)
        if not args.no_plot:
            renderer(rows, str(Path(out).with_suffix(".png")))
    if args.kind == "table":
        return 0 if all(r[4] for r in rows) else 1
    return 0


def _parse_class(text: str, flag: str) -> TwoModeClass:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise ValueError(f"{flag} expects KIND,a[,b]")
    kind = parts[0].strip()
    a = float(parts[1])
    b = float(parts[2]) if len(parts) == 3 else a
    return TwoModeClass(kind, a, b)


def cmd_compose(args, cfg: RunConfig) -> int:
    try:
        if args.first is not None or args.second is not None:
            if args.first is None or args.second is None:
                raise ValueError("give both --first and --second")
            allowed, concrete = compose_class(
                _parse_class(args.first, "--first"),
                _parse_class(args.second, "--second"))
            _emit({"allowed": sorted(allowed),
                   "concrete": {"kind": concrete.kind,
                                "a": concrete.a, "b": concrete.b}})
            return 0
        if len(args.files) != 2:
            raise ValueError("compose needs two channel files or --first/--second")
        first = io.channel_from_json(_read_text(args.files[0]))
        second = io.channel_from_json(_read_text(args.files[1]))
        ch = compose(first, second)
        out = args.out if args.out is not None else cfg.output_path
        _write_text(out, io.channel_to_json(ch))
        return 0
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcl",
        description="Gaussian channel toolbox: validation, unitary "
                    "dilations, degradability classification, sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None,
                       help="positive-semidefiniteness tolerance")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized checks")
        p.add_argument("--out", default=None, help="output path")

    p = sub.add_parser("validate", help="validate channel or state files")
    p.add_argument("files", nargs="+", help="JSON files ('-' for stdin)")
    p.add_argument("--state", action="store_true",
                   help="treat inputs as states instead of channels")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dilate", help="build a unitary dilation")
    p.add_argument("file", help="channel JSON ('-' for stdin)")
    p.add_argument("--flavor", required=True, choices=sorted(_FLAVORS),
                   help="dilation construction")
    common(p)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("classify", help="weak-degradability verdict")
    p.add_argument("file", nargs="?", default=None,
                   help="channel JSON ('-' for stdin)")
    p.add_argument("--two-mode", dest="two_mode", default=None,
                   choices=("A1", "A2", "B", "C"),
                   help="classify a two-mode normal form instead")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--N", type=float, default=0.0,
                   help="thermal environment occupation")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="parameter sweeps as CSV (+PNG)")
    p.add_argument("kind", choices=("fig1", "fig2", "fig3", "table"))
    p.add_argument("--a", type=float, default=1.25,
                   help="defective-class parameter for fig3")
    p.add_argument("--xs", default="1.1,1.2,1.3",
                   help="fig3 noise levels (comma separated)")
    p.add_argument("--zs", default="0,0.05,0.1",
                   help="fig3 correlations (comma separated)")
    p.add_argument("--draws", type=int, default=1000,
                   help="samples per composition-table cell")
    p.add_argument("--no-plot", action="store_true",
                   help="skip PNG rendering next to the CSV")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compose", help="compose channels or classes")
    p.add_argument("files", nargs="*", help="two channel JSON files")
    p.add_argument("--first", default=None, help="two-mode class KIND,a[,b]")
    p.add_argument("--second", default=None, help="two-mode class KIND,a[,b]")
    common(p)
    p.set_defaults(func=cmd_compose)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_env()
    except (OSError, ValueError, TypeError) as exc:
        sys.stderr.write(f"error: bad GCL_CONFIG: {exc}\n")
        return 1
    if args.tol is not None:
        if args.tol <= 0:
            sys.stderr.write("error: --tol must be positive\n")
            return 1
        cfg.tol_psd = args.tol
    if args.seed is not None:
        cfg.seed = args.seed
    return args.func(args, cfg)


if __name__ == "__main__":
    raise SystemExit(main())
