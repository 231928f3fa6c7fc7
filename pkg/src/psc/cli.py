"""Command-line front end.

Exit codes: 0 when the analysis ran and found the input classical (or no
verdict applies), 1 when a nonclassicality witness was found, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .analysis import (
    NegativityObstruction,
    PreconditionError,
    build_8state_model,
    build_wigner_model,
    check_channel_covariance,
    check_positivity_preservation,
    check_transformation_noncontextuality,
    classicality_report,
)
from .catalog import (
    FRAME_LABELS,
    SUBTHEORY_LABELS,
    SpecError,
    channel_from_spec,
    frame_spec,
    state_from_spec,
    subtheory_spec,
)
from .frames import negativity, wigner_of_channel, wigner_of_effect, wigner_of_state
from .linalg import DEFAULT_TOL

DEFAULT_SUBTHEORY = {"gross": "qutrit-stab", "wg-multi": "2qubit-stab"}


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:+.6f}".replace("-0.000000", "+0.000000")


def _pt(point) -> str:
    return "(" + ",".join(str(c) for c in point) + ")"


def _default_subtheory(frame_label: str) -> str:
    return DEFAULT_SUBTHEORY.get(frame_label.split(":")[0], "qubit-stab")


# Commands return (payload dict, text lines, exit code).

def cmd_frames(args):
    rows = []
    for label in FRAME_LABELS:
        f = frame_spec(label)
        rows.append({"label": label, "d": f.d, "n": f.n, "points": f.space.size,
                     "gamma": f.gamma.label})
    lines = [f"{r['label']:<12} d={r['d']} n={r['n']} points={r['points']:<3} gamma={r['gamma']}"
             for r in rows]
    lines.append("custom:<gamma.json>  explicit gamma table")
    return {"command": "frames", "frames": rows}, lines, 0


def cmd_subtheories(args):
    rows = []
    for label in SUBTHEORY_LABELS:
        s = subtheory_spec(label)
        rows.append({"label": label, "d": s.d, "n": s.n, "states": len(s.states),
                     "transformations": len(s.transformations), "povms": len(s.effects)})
    lines = [f"{r['label']:<12} d={r['d']} n={r['n']} states={r['states']} "
             f"transformations={r['transformations']} povms={r['povms']}" for r in rows]
    lines.append("custom:<dir>  states/*.json, channels/*.json, povms/*.json")
    return {"command": "subtheories", "subtheories": rows}, lines, 0


def cmd_wigner(args):
    frame = frame_spec(args.frame)
    chosen = [x for x in (args.state, args.channel, args.effect) if x]
    if len(chosen) != 1:
        raise UsageError("wigner needs exactly one of --state, --channel, --effect")
    if args.state:
        rho = state_from_spec(args.state, frame.d, frame.n)
        try:
            W = wigner_of_state(frame, rho, args.tol)
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        values = {_pt(p): float(v) for p, v in zip(frame.points, W.values)}
        target = {"state": args.state}
    elif args.effect:
        E = state_from_spec(args.effect, frame.d, frame.n)
        W = wigner_of_effect(frame, E)
        values = {_pt(p): float(v) for p, v in zip(frame.points, W.values)}
        target = {"effect": args.effect}
    else:
        ch = channel_from_spec(args.channel, frame.dim)
        W = wigner_of_channel(frame, ch, args.tol)
        values = {f"{_pt(o)}|{_pt(i)}": float(W.values[a, b])
                  for a, o in enumerate(frame.points) for b, i in enumerate(frame.points)}
        target = {"channel": args.channel}
    neg = negativity(W)
    negative = W.min < -args.tol
    payload = {"command": "wigner", "frame": frame.label, **target, "values": values,
               "min": W.min, "negativity": neg, "classical": not negative}
    lines = [f"{k}: {_fmt(v)}" for k, v in values.items()]
    lines.append(f"negativity: {neg:.6g}")
    if negative:
        worst = min(values, key=values.get)
        lines.append(f"witness: negative value {_fmt(values[worst])} at {worst}")
    return payload, lines, 1 if negative else 0


def cmd_covariance(args):
    frame = frame_spec(args.frame)
    ch = channel_from_spec(args.channel, frame.dim)
    cert = check_channel_covariance(frame, ch, args.tol, seed=args.seed)
    payload = {"command": "covariance", "frame": frame.label, "channel": args.channel,
               **cert.to_json(), "classical": cert.covariant}
    lines = [f"covariance of {args.channel} under {frame.label}: {cert.status}"]
    if cert.covariant:
        for k, _, a in cert.per_kraus:
            if a is not None:
                lines.append(f"  kraus {k}: S={[list(r) for r in a.S]} a={list(a.a)}")
    else:
        lines.append(f"witness: point {_pt(cert.witness) if cert.witness else '-'}")
        lines.append(f"  {cert.reason}")
    return payload, lines, 0 if cert.covariant else 1


def _subtheory_with_channels(args, frame):
    sub = subtheory_spec(args.subtheory or _default_subtheory(frame.label))
    if sub.dim != frame.dim:
        raise SpecError(f"subtheory '{sub.label}' has dimension {sub.dim}, frame '{frame.label}' {frame.dim}")
    extra = {spec: channel_from_spec(spec, frame.dim) for spec in args.channel or []}
    return sub.with_transformations(extra) if extra else sub


def cmd_positivity(args):
    frame = frame_spec(args.frame)
    sub = _subtheory_with_channels(args, frame)
    try:
        v = check_positivity_preservation(frame, sub, args.tol)
    except PreconditionError as exc:
        raise SpecError(str(exc)) from None
    payload = {"command": "positivity", "frame": frame.label, "subtheory": sub.label,
               **v.to_json(), "classical": v.preserving}
    lines = [f"positivity preservation of {sub.label} under {frame.label}: "
             f"{'preserving' if v.preserving else 'violated'}",
             f"checked {v.checked} (transformation, state) pairs; min Wigner value {_fmt(v.min_value)}"]
    if not v.preserving:
        t, s, p, val = v.worst
        lines.append(f"witness: {t} applied to {s} has W{_pt(p)} = {_fmt(val)}")
    return payload, lines, 0 if v.preserving else 1


def _split_pair(text: str, dim: int):
    """Split ``A,B`` at the comma where both halves are channel specifiers.

    Specifiers such as ``pauli-mix:w0,w1,...`` contain commas themselves.
    """
    parts = text.split(",")
    found, last_error = [], None
    for k in range(1, len(parts)):
        a, b = ",".join(parts[:k]), ",".join(parts[k:])
        try:
            found.append((a, b, channel_from_spec(a, dim), channel_from_spec(b, dim)))
        except SpecError as exc:
            last_error = exc
    if len(found) == 1:
        return found[0]
    if not found:
        raise last_error
    raise UsageError(f"ambiguous --pair '{text}'")


def cmd_tnc(args):
    if not args.pair or "," not in args.pair:
        raise UsageError("tnc needs --pair A,B")
    if args.model == "8state":
        frame_label = "wg-plus"
        sub = subtheory_spec(args.subtheory or "qubit-stab")
        dim = 2
    else:
        if not args.frame:
            raise UsageError("--model wigner needs --frame")
        frame = frame_spec(args.frame)
        frame_label, dim = frame.label, frame.dim
        sub = subtheory_spec(args.subtheory or _default_subtheory(frame.label))
    a, b, ca, cb = _split_pair(args.pair, dim)
    sub = sub.with_transformations({a: ca, b: cb})
    try:
        if args.model == "8state":
            model = build_8state_model(sub, args.tol)
        else:
            model = build_wigner_model(frame, sub, args.tol)
        verdict = check_transformation_noncontextuality(model, [(a, b)], args.tol)
    except NegativityObstruction as exc:
        worst = min(exc.obstructions, key=lambda o: o.min_value)
        payload = {"command": "tnc", "model": args.model, "frame": frame_label, "pair": [a, b],
                   "model_exists": False, "obstruction": worst.to_json(), "classical": False}
        lines = [f"no non-negative Wigner model of {sub.label} under {frame_label}",
                 f"witness: {worst.kind} '{worst.label}' has value {_fmt(worst.min_value)} "
                 f"at {' '.join(_pt(x) for x in worst.location)}"]
        return payload, lines, 1
    except (PreconditionError, ValueError) as exc:
        raise SpecError(str(exc)) from None
    payload = {"command": "tnc", "model": args.model, "frame": frame_label, "pair": [a, b],
               "model_exists": True, **verdict.to_json(), "classical": verdict.noncontextual}
    lines = [f"{model.name} model, pair ({a}, {b}): "
             f"{'noncontextual' if verdict.noncontextual else 'contextual'}",
             f"max discrepancy: {verdict.max_discrepancy:.6g}"]
    if not verdict.noncontextual:
        lines.append(f"witness: operationally equivalent {a} and {b} have transition matrices "
                     f"differing by {verdict.max_discrepancy:.6g}")
    return payload, lines, 0 if verdict.noncontextual else 1


def cmd_theorems(args):
    frame = frame_spec(args.frame)
    sub = _subtheory_with_channels(args, frame)
    report = classicality_report(frame, sub, args.tol, seed=args.seed)
    th = report["theorems"]
    t1, t2, t3 = th["covariance_vs_wigner_tnc"], th["covariance_implies_positivity"], th["tnc_implies_positivity"]
    n_cov = sum(c["status"] == "covariant" for c in report["covariance"])
    lines = [
        f"subtheory {sub.label} under frame {frame.label}",
        f"covariant transformations: {n_cov}/{len(report['covariance'])}",
        f"covariance vs noncontextual Wigner model: covariant={t1['covariant']} "
        f"wigner-model-noncontextual={t1['wigner_model_noncontextual']} agree={t1['agree']}",
        f"covariance => positivity: covariant={t2['premise']} "
        f"positivity-preserving={t2['positivity_preserving']} implication-holds={t2['implication_holds']} "
        f"converse-counterexample={t2['converse_counterexample']}",
        f"noncontextuality => positivity: noncontextual={t3['premise']} "
        f"positivity-preserving={t3['positivity_preserving']} implication-holds={t3['implication_holds']} "
        f"converse-counterexample={t3['converse_counterexample']}",
    ]
    if "eight_state" in t3 and "max_discrepancy" in t3["eight_state"]:
        lines.append(f"8-state model on (depol-eps1, depol-eps2): max discrepancy "
                     f"{t3['eight_state']['max_discrepancy']:.6g}")
    if not th["classical"]:
        bad = next((c for c in report["covariance"] if c["status"] != "covariant"), None)
        if bad:
            lines.append(f"witness: {bad['transformation']}: {bad['reason']}")
    lines.append(f"verdict: {'classical' if th['classical'] else 'nonclassical'}")
    return report, lines, 0 if th["classical"] else 1


COMMANDS = {
    "frames": cmd_frames,
    "subtheories": cmd_subtheories,
    "wigner": cmd_wigner,
    "covariance": cmd_covariance,
    "positivity": cmd_positivity,
    "tnc": cmd_tnc,
    "theorems": cmd_theorems,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psc", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("--frame")
    parser.add_argument("--subtheory")
    parser.add_argument("--channel", action="append",
                        help="channel specifier; repeatable for positivity/theorems")
    parser.add_argument("--state")
    parser.add_argument("--effect")
    parser.add_argument("--pair")
    parser.add_argument("--model", choices=["8state", "wigner"], default="8state")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--output", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def _needs(args, *flags):
    for flag in flags:
        if getattr(args, flag) is None:
            raise UsageError(f"{args.verb} needs --{flag}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verb in ("wigner", "covariance", "positivity", "theorems"):
            _needs(args, "frame")
        if args.verb == "covariance":
            _needs(args, "channel")
            if len(args.channel) != 1:
                raise UsageError("covariance takes a single --channel")
            args.channel = args.channel[0]
        if args.verb == "wigner" and args.channel:
            args.channel = args.channel[0]
        payload, lines, code = COMMANDS[args.verb](args)
    except (UsageError, SpecError) as exc:
        print(f"psc: error: {exc}", file=stderr)
        return 2
    if args.output == "json":
        stdout.write(json.dumps(payload, indent=2, default=_json_default) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main():
    sys.exit(run())
