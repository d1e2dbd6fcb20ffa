"""Command-line front end.

Commands: ``analyze`` (Bloch form, correlation matrix, verdicts for a state
file), ``detect`` (three-probe protocol, exact or finite-shot; the exit code
carries the verdict), ``sweep-werner`` (covariance and PPT verdict across the
mixing parameter), ``gen`` (write fixture/random state files), and ``verify``
(run the library's property suites).

Exit codes for ``detect``: 0 separable, 1 entangled, 2 indeterminate.  Every
command exits 3 on usage or input errors, keeping 0..2 unambiguous.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from bicorr import states as statesmod
from bicorr.correlation import ObservablePair, correlation_matrix
from bicorr.detect import (
    DEFAULT_XS,
    DEFAULT_Y,
    ENTANGLED,
    INDETERMINATE,
    PPT_ORACLE,
    SEPARABLE,
    DependentProbes,
    RankContradiction,
    binary_protocol,
    classify_pure_by_rank,
    ppt_is_separable,
    werner_report,
)
from bicorr.linalg import NotHermitian, ZeroVector, det3
from bicorr.qstate import BlochOutOfBall, InvalidState, bloch_decompose
from bicorr.shotsim import NonUnitBloch, ShotConfig, statistical_binary_protocol
from bicorr.states import ParseError, StateSpec, XiOutOfRange
from bicorr.verify import run_all

USAGE_ERROR = 3

_VERDICT_EXIT = {SEPARABLE: 0, ENTANGLED: 1, INDETERMINATE: 2}

_CLI_ERRORS = (
    ParseError,
    InvalidState,
    BlochOutOfBall,
    NonUnitBloch,
    XiOutOfRange,
    DependentProbes,
    RankContradiction,
    NotHermitian,
    ZeroVector,
    OSError,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 3 (0..2 are verdicts)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _parse_vector(text: str, flag: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"{flag} needs 3 comma-separated numbers, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise ParseError(f"{flag} has a non-numeric component in {text!r}") from exc


def _parse_probe_set(text: str) -> np.ndarray:
    parts = text.split(";")
    if len(parts) != 3:
        raise ParseError(f"--xs needs 3 semicolon-separated vectors, got {text!r}")
    return np.stack([_parse_vector(p, "--xs") for p in parts])


def _parse_pair(text: str) -> ObservablePair:
    parts = text.split("|")
    if len(parts) != 2:
        raise ParseError(f"--pair needs 'x1,x2,x3|y1,y2,y3', got {text!r}")
    return ObservablePair(x=_parse_vector(parts[0], "--pair"), y=_parse_vector(parts[1], "--pair"))


def _fmt(value: float) -> str:
    return f"{value: .12g}"


def _fmt_vec(vec) -> str:
    return "[" + ", ".join(_fmt(v) for v in np.asarray(vec, dtype=float)) + "]"


def _fmt_mat(mat, indent: str = "  ") -> str:
    return "\n".join(indent + _fmt_vec(row) for row in np.asarray(mat, dtype=float))


def _state_doc(spec: StateSpec) -> dict:
    return json.loads(statesmod.dumps_state(spec))


def _trace_doc(trace) -> dict:
    return {
        "y": trace.y.tolist(),
        "probes": [
            {"x": p.x.tolist(), "covariance": p.covariance, "is_zero": p.is_zero}
            for p in trace.probes
        ],
        "measurements_used": trace.measurements_used,
    }


def _verdict_doc(verdict) -> dict:
    return {"label": verdict.label, "basis": verdict.basis, "detail": verdict.detail}


def build_analysis_report(spec: StateSpec) -> dict:
    """Full analysis of a state: Bloch form, correlation matrix, verdicts."""
    rho = statesmod.density_of(spec)
    bf = bloch_decompose(rho)
    cm = correlation_matrix(rho)
    protocol_verdict, trace = binary_protocol(rho)
    report = {
        "label": spec.label,
        "kind": spec.kind,
        "state": _state_doc(spec),
        "bloch": {"a": bf.a.tolist(), "b": bf.b.tolist(), "f": bf.f.tolist()},
        "correlation": {
            "c": cm.c.tolist(),
            "singular_values": cm.singular_values.tolist(),
            "rank": cm.rank,
            "det": det3(cm.c),
        },
        "verdicts": {
            "rank_dichotomy": (
                _verdict_doc(classify_pure_by_rank(spec.amplitudes))
                if spec.kind == "pure"
                else None
            ),
            "ppt": {
                "separable": ppt_is_separable(rho),
                "basis": PPT_ORACLE,
            },
            "protocol": _verdict_doc(protocol_verdict),
        },
        "protocol_trace": _trace_doc(trace),
    }
    return report


def _print_analysis(report: dict) -> None:
    label = report["label"] or "(unlabeled)"
    print(f"state: {label}  kind={report['kind']}")
    print(f"bloch a: {_fmt_vec(report['bloch']['a'])}")
    print(f"bloch b: {_fmt_vec(report['bloch']['b'])}")
    print("f:")
    print(_fmt_mat(report["bloch"]["f"]))
    print("c:")
    print(_fmt_mat(report["correlation"]["c"]))
    corr = report["correlation"]
    print(f"singular values: {_fmt_vec(corr['singular_values'])}")
    print(f"rank: {corr['rank']}   det(c): {_fmt(corr['det'])}")
    print("verdicts:")
    rank_verdict = report["verdicts"]["rank_dichotomy"]
    if rank_verdict is not None:
        print(f"  rank dichotomy: {rank_verdict['label']}")
    ppt = report["verdicts"]["ppt"]
    print(f"  ppt oracle:     {'Separable' if ppt['separable'] else 'Entangled'}")
    proto = report["verdicts"]["protocol"]
    print(f"  protocol:       {proto['label']} ({proto['detail']})")


def cmd_analyze(args) -> int:
    spec = statesmod.load_state_file(args.file)
    report = build_analysis_report(spec)
    if args.json:
        print(json.dumps(report))
    else:
        _print_analysis(report)
    return 0


def cmd_detect(args) -> int:
    spec = statesmod.load_state_file(args.file)
    rho = statesmod.density_of(spec)
    y = _parse_vector(args.y, "--y") if args.y else DEFAULT_Y
    xs = _parse_probe_set(args.xs) if args.xs else DEFAULT_XS
    if args.shots is not None:
        cfg = ShotConfig(shots=args.shots, seed=args.seed, z_threshold=args.z)
        verdict, trace = statistical_binary_protocol(
            rho, y=y, xs=xs, cfg=cfg, assume_pure=args.assume_pure
        )
        shots_doc = {"shots": args.shots, "seed": args.seed, "z_threshold": args.z}
    else:
        verdict, trace = binary_protocol(rho, y=y, xs=xs, assume_pure=args.assume_pure)
        shots_doc = None
    if args.json:
        print(
            json.dumps(
                {
                    "label": spec.label,
                    "verdict": _verdict_doc(verdict),
                    "protocol_trace": _trace_doc(trace),
                    "shots": shots_doc,
                }
            )
        )
    else:
        print(f"verdict: {verdict.label} ({verdict.detail})")
        for i, probe in enumerate(trace.probes, start=1):
            flag = "zero" if probe.is_zero else "non-zero"
            print(f"  probe {i}: x={_fmt_vec(probe.x)}  c={_fmt(probe.covariance)}  [{flag}]")
        print(f"  measurements used: {trace.measurements_used}")
    return _VERDICT_EXIT[verdict.label]


def cmd_sweep_werner(args) -> int:
    if args.steps < 1:
        raise ParseError("--steps must be at least 1")
    pair = _parse_pair(args.pair) if args.pair else ObservablePair(x=DEFAULT_Y, y=DEFAULT_Y)
    xy = float(pair.x @ pair.y)
    grid = np.linspace(args.xi_from, args.xi_to, args.steps)
    rows = []
    for xi in grid:
        report = werner_report(float(xi), pair)
        rows.append(
            {
                "xi": float(xi),
                "covariance": report.covariance,
                "reference": -float(xi) / 4 * xy,
                "ppt_separable": report.ppt_separable,
            }
        )
    if args.json:
        print(json.dumps({"pair": {"x": pair.x.tolist(), "y": pair.y.tolist()}, "rows": rows}))
    else:
        print(f"pair: x={_fmt_vec(pair.x)}  y={_fmt_vec(pair.y)}")
        print(f"{'xi':>10}  {'covariance':>18}  {'-xi/4 x.y':>18}  ppt")
        for row in rows:
            tag = "separable" if row["ppt_separable"] else "entangled"
            print(
                f"{row['xi']:>10.6f}  {row['covariance']:>18.12f}  "
                f"{row['reference']:>18.12f}  {tag}"
            )
    return 0


_GEN_BELL = {
    "bell-psim": "psi-",
    "bell-psip": "psi+",
    "bell-phim": "phi-",
    "bell-phip": "phi+",
}


def cmd_gen(args, parser: _Parser) -> int:
    kind = args.kind
    if kind in _GEN_BELL:
        spec = statesmod.pure_spec(statesmod.bell_state(_GEN_BELL[kind]), label=kind)
    elif kind == "chen":
        spec = statesmod.pure_spec(statesmod.chen_state(), label="chen")
    elif kind == "werner":
        if args.xi is None:
            parser.error("gen --kind werner requires --xi")
        spec = statesmod.mixed_spec(statesmod.werner(args.xi), label=f"werner(xi={args.xi:g})")
    elif kind == "haar":
        spec = statesmod.pure_spec(
            statesmod.haar_random_pure(args.seed), label=f"haar(seed={args.seed})"
        )
    elif kind == "product":
        spec = statesmod.pure_spec(
            statesmod.random_product_pure(args.seed), label=f"product(seed={args.seed})"
        )
    else:  # sep-mixed
        spec = statesmod.mixed_spec(
            statesmod.random_separable_mixed(args.seed, args.k),
            label=f"sep-mixed(seed={args.seed},k={args.k})",
        )
    statesmod.save_state_file(args.out, spec)
    print(f"wrote {spec.kind} state {spec.label!r} to {args.out}")
    return 0


def cmd_verify(args, parser: _Parser) -> int:
    if args.trials < 100:
        parser.error("--trials below 100 is rejected")
    ok = run_all(trials=args.trials, seed=args.seed)
    print("verification: " + ("all suites passed" if ok else "FAILURES detected"))
    return 0 if ok else 1


def make_parser() -> _Parser:
    parser = _Parser(prog="bicorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="Bloch form, correlation matrix, verdicts")
    p_analyze.add_argument("file", help="state file (JSON)")
    p_analyze.add_argument("--json", action="store_true", help="machine-readable output")

    p_detect = sub.add_parser("detect", help="three-probe entanglement detection")
    p_detect.add_argument("file", help="state file (JSON)")
    mode = p_detect.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact correlations (default)")
    mode.add_argument("--shots", type=int, help="finite-shot decisions with this budget")
    p_detect.add_argument("--seed", type=int, default=0, help="RNG seed for --shots")
    p_detect.add_argument("--z", type=float, default=5.0, help="non-zero decision threshold")
    p_detect.add_argument("--y", help="fixed probe direction, 'y1,y2,y3'")
    p_detect.add_argument("--xs", help="three probe vectors, 'v;v;v'")
    p_detect.add_argument(
        "--assume-pure",
        action="store_true",
        help="apply pure-state semantics to mixed input",
    )
    p_detect.add_argument("--json", action="store_true")

    p_sweep = sub.add_parser("sweep-werner", help="Werner-family covariance/PPT table")
    p_sweep.add_argument("--from", dest="xi_from", type=float, required=True)
    p_sweep.add_argument("--to", dest="xi_to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--pair", help="observable pair 'x1,x2,x3|y1,y2,y3'")
    p_sweep.add_argument("--json", action="store_true")

    p_gen = sub.add_parser("gen", help="write a state file")
    p_gen.add_argument(
        "--kind",
        required=True,
        choices=sorted(_GEN_BELL) + ["chen", "werner", "haar", "product", "sep-mixed"],
    )
    p_gen.add_argument("--xi", type=float, help="Werner mixing parameter")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--k", type=int, default=4, help="mixture components for sep-mixed")
    p_gen.add_argument("--out", required=True)

    p_verify = sub.add_parser("verify", help="run the library property suites")
    p_verify.add_argument("--trials", type=int, default=2000)
    p_verify.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "detect":
            return cmd_detect(args)
        if args.command == "sweep-werner":
            return cmd_sweep_werner(args)
        if args.command == "gen":
            return cmd_gen(args, parser)
        return cmd_verify(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except _CLI_ERRORS as exc:
        print(f"bicorr: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
