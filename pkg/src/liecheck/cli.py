"""Command line front end: ``atlas``, ``verify``, ``model run`` and ``kam``.

Exit codes: 0 pass, 1 fail, 2 flagged findings only, 64 usage or input
errors.  Output is deterministic for a fixed seed; wall-clock timings only
appear with ``--timings``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .constructions import abelian_basis, base_sl2, uv_sets
from .lie_core import LieError, algebra, format_coords
from .model_rep import ModelError, run_scenario
from .tame_kam import (
    LEDGER_PROOFS,
    KamError,
    TorusField,
    audit_schedule,
    constant_chain,
    ledger_replay,
    simulate_iteration,
    smoothing_sweep,
)
from .verifier import CHECK_NAMES, full_report

EXIT_OK, EXIT_FAIL, EXIT_FLAGGED, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def read_config(path: str) -> dict[str, str]:
    """Parse ``key=value`` lines; ``#`` starts a comment, dashes in keys become underscores."""
    out: dict[str, str] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


# ----------------------------------------------------------------- atlas


def _atlas(lie_type: str, rank: int) -> dict:
    alg = algebra(lie_type, rank)
    rs = alg.root_system
    data: dict[str, Any] = {
        "type": alg.tag,
        "dim": alg.dim,
        "rank": alg.rank,
        "ambient_dim": rs.ambient_dim,
        "n_roots": alg.n_roots,
        "positive_roots": [format_coords(r.coords) for r in alg.positive],
        "simple_roots": [format_coords(r.coords) for r in rs.simple_roots],
    }
    try:
        d = abelian_basis(alg)
        data["abelian_basis"] = d.to_json()
    except LieError as exc:
        data["abelian_basis"] = {"unavailable": str(exc)}
    try:
        base = base_sl2(alg, require_e0=False)
        data["sl2"] = {
            "base_root": format_coords(base.phi),
            "X": str(base.X),
            "U": str(base.U),
            "V": str(base.V),
            "g1_perp_dim": base.g1_perp.dim,
            "e0": [str(e) for e in base.e0],
        }
        data["uv_families"] = uv_sets(alg).to_json()
    except LieError as exc:
        data["sl2"] = {"unavailable": str(exc)}
    return data


def _atlas_text(data: dict) -> str:
    lines = [f"{data['type']}: dim {data['dim']}, rank {data['rank']}, {data['n_roots']} roots"]
    lines.append("simple roots: " + ", ".join(data["simple_roots"]))
    lines.append(f"positive roots ({len(data['positive_roots'])}): " + ", ".join(data["positive_roots"]))
    d = data["abelian_basis"]
    if "unavailable" in d:
        lines.append(f"D: {d['unavailable']}")
    else:
        lines.append(f"D (|D| = {len(d['roots'])}, formula {d['formula']}): " + ", ".join(d["roots"]))
    s = data["sl2"]
    if "unavailable" in s:
        lines.append(f"sl2: {s['unavailable']}")
    else:
        lines.append(f"sl2 at {s['base_root']}: X = {s['X']}, U = {s['U']}, V = {s['V']}; dim g1_perp = {s['g1_perp_dim']}")
        if s["e0"]:
            lines.append("E0: " + ", ".join(s["e0"]))
        fam = data["uv_families"]
        for letter in ("U", "V"):
            for eps, roots in sorted(fam[letter].items(), key=lambda kv: int(kv[0])):
                if roots:
                    lines.append(f"{letter}^{eps}: " + ", ".join(roots))
    return "\n".join(lines) + "\n"


def cmd_atlas(args: argparse.Namespace) -> int:
    data = _atlas(args.type, args.rank)
    _emit(args, _dump_json(data) if args.format == "json" else _atlas_text(data))
    return EXIT_OK


# ---------------------------------------------------------------- verify


def cmd_verify(args: argparse.Namespace) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
    report = full_report(args.type, args.rank, seed=args.seed, checks=checks, jacobi_samples=args.jacobi_samples)
    if args.format == "json":
        _emit(args, _dump_json(report.to_json(timings=args.timings)))
    else:
        text = report.to_text()
        if args.timings:
            text += "\n" + "\n".join(f"  {r.check_id}: {r.elapsed_ms:.1f} ms" for r in report.results)
        _emit(args, text + "\n")
    return report.exit_code


# ----------------------------------------------------------------- model


def cmd_model(args: argparse.Namespace) -> int:
    try:
        spec = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load scenario {args.file}: {exc}") from exc
    try:
        res = run_scenario(spec)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (ModelError, LieError)):
            raise
        raise UsageError(f"malformed scenario {args.file}: {exc!r}") from exc
    if args.format == "json":
        _emit(args, _dump_json(res.to_json()))
    else:
        lines = [f"scenario {args.file}: {'ok' if res.ok else 'FAILED'}"]
        for st in res.steps:
            extra = ""
            if "residual" in st:
                extra += f" residual={st['residual']:.3e}"
            if "lhs" in st:
                extra += f" lhs={st['lhs']:.6g} rhs={st['rhs']:.6g}"
            if "ok" in st:
                extra += f" ok={st['ok']}"
            if isinstance(st.get("result"), bool):
                extra += f" result={st['result']}"
            lines.append(f"  [{st['index']}] {st['op']}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if res.ok else EXIT_FAIL


# ------------------------------------------------------------------- kam


def _chain_from_args(args: argparse.Namespace):
    return constant_chain(args.dim_g, args.beta, args.lam, args.lam1)


def _varrho_from_args(args: argparse.Namespace) -> Fraction:
    if getattr(args, "varrho", None) is not None:
        return Fraction(args.varrho)
    return _chain_from_args(args).varrho


def cmd_kam(args: argparse.Namespace) -> int:
    sub = args.kam_command
    if sub == "chain":
        c = _chain_from_args(args)
        _emit(args, _dump_json(c.to_json()) if args.format == "json" else "\n".join(f"{k} = {v}" for k, v in c.to_json().items()) + "\n")
        return EXIT_OK
    if sub == "ledger":
        c = _chain_from_args(args)
        proofs = [args.proof] if args.proof else list(LEDGER_PROOFS)
        reps = [ledger_replay(p, c) for p in proofs]
        if args.format == "json":
            _emit(args, _dump_json({"chain": c.to_json(), "ledgers": [r.to_json() for r in reps]}))
        else:
            lines = []
            for r in reps:
                lines.append(f"{r.proof}: final loss {r.final_loss}, budget {r.budget}, slack {r.slack}, overdraft {r.overdraft}")
                lines.extend(f"  note: {n}" for n in r.notes)
            _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK if all(r.ok for r in reps) else EXIT_FAIL
    if sub == "audit":
        if args.l0 is None:
            raise UsageError("kam audit needs --l0")
        rho = _varrho_from_args(args)
        rep = audit_schedule(rho, args.l0)
        if args.format == "json":
            _emit(args, _dump_json(rep.to_json()))
        else:
            lines = [f"varrho = {rep.varrho}, l0 = {rep.l0}, a = {rep.a}, b = {rep.b}"]
            for i in rep.inequalities:
                lines.append(f"  [{'PASS' if i.holds else 'FAIL'}] {i.name}: margin {i.margin}")
            lines.append(f"stated threshold l0 > {rep.stated_threshold}; repaired threshold l0 > {rep.repaired_threshold}")
            _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK if rep.ok else EXIT_FAIL
    if sub == "simulate":
        rho = _varrho_from_args(args)
        tr = simulate_iteration(rho, args.l0, args.eps0, args.const, args.steps)
        if args.csv:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n", "log_eps", "log_t", "log_c0", "log_cl", "c0_ok", "cl_ok"])
            for s in tr.states:
                w.writerow([s.n, repr(s.log_eps), repr(s.log_t), repr(s.log_c0), repr(s.log_cl), s.c0_ok, s.cl_ok])
            Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
        if args.format == "json":
            _emit(args, _dump_json(tr.to_json()))
        else:
            status = "all invariants hold" if tr.ok else f"first violation at step {tr.first_violation}"
            _emit(args, f"varrho = {tr.varrho}, l0 = {tr.l0}, C = {tr.constant}, {len(tr.states) - 1} steps: {status}\n")
        return EXIT_OK if tr.ok else EXIT_FAIL
    if sub == "smoothing":
        rng = random.Random(args.seed)
        fields = [TorusField.random(rng, args.d, args.K, decay=1.0) for _ in range(args.fields)]
        sw = smoothing_sweep(fields)
        if args.format == "json":
            _emit(args, _dump_json(sw.to_json()))
        else:
            _emit(args, f"{len(sw.bounds)} grid points; global constant {sw.global_constant:.6g} (allowed {sw.allowed:g}): {'ok' if sw.ok else 'FAILED'}\n")
        return EXIT_OK if sw.ok else EXIT_FAIL
    raise UsageError("missing kam subcommand")


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write the report to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="key=value file; explicit flags take precedence")


def _add_chain_args(p: argparse.ArgumentParser, defaults: bool = True) -> None:
    p.add_argument("--dim-g", dest="dim_g", type=Fraction, default=Fraction(2))
    p.add_argument("--beta", type=Fraction, default=Fraction(1))
    p.add_argument("--lambda", dest="lam", type=Fraction, default=Fraction(2))
    p.add_argument("--lambda1", dest="lam1", type=Fraction, default=Fraction(3))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="liecheck", description="Exact checks of root-system constructions and tame-estimate bookkeeping.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("atlas", help="list roots, D, U/V families and sl2 data")
    p.add_argument("type")
    p.add_argument("rank", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="run the verification checks for one algebra")
    p.add_argument("type")
    p.add_argument("rank", type=int)
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECK_NAMES)}, or all")
    p.add_argument("--timings", action="store_true", help="include elapsed times (not deterministic)")
    p.add_argument("--jacobi-samples", dest="jacobi_samples", type=int, default=2000)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("model", help="replay a model scenario")
    msub = p.add_subparsers(dest="model_command", required=True, parser_class=_Parser)
    q = msub.add_parser("run")
    q.add_argument("file")
    _add_common(q)
    q.set_defaults(func=cmd_model)

    p = sub.add_parser("kam", help="constant chain, ledgers, schedule audit, simulation, smoothing")
    ksub = p.add_subparsers(dest="kam_command", required=True, parser_class=_Parser)
    for name in ("chain", "ledger", "audit", "simulate", "smoothing"):
        q = ksub.add_parser(name)
        _add_common(q)
        q.set_defaults(func=cmd_kam)
        if name in ("chain", "ledger", "audit", "simulate"):
            _add_chain_args(q)
        if name == "ledger":
            q.add_argument("--proof", choices=LEDGER_PROOFS)
        if name in ("audit", "simulate"):
            q.add_argument("--varrho", type=Fraction, help="use this varrho instead of the constant chain")
            q.add_argument("--l0", type=int, default=None if name == "audit" else 24240)
        if name == "simulate":
            q.add_argument("--eps0", type=float, default=1e-4)
            q.add_argument("--steps", type=int, default=50)
            q.add_argument("--const", type=float, default=1.0)
            q.add_argument("--csv", help="also write the trajectory as CSV")
        if name == "smoothing":
            q.add_argument("--d", type=int, default=2)
            q.add_argument("--K", type=int, default=20)
            q.add_argument("--fields", type=int, default=3)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    cfg = read_config(args.config)
    # Re-parse with config values as defaults so explicit flags win.
    sub_parser = _find_subparser(parser, args)
    known = {a.dest: a for a in sub_parser._actions}
    for a in sub_parser._actions:
        for opt in a.option_strings:
            known.setdefault(opt.lstrip("-").replace("-", "_"), a)
    defaults = {}
    for k, v in cfg.items():
        if k not in known or k in ("help", "config"):
            raise UsageError(f"unknown config key {k!r}")
        act = known[k]
        k = act.dest
        if act.option_strings == []:
            raise UsageError(f"config key {k!r} is positional; pass it on the command line")
        if isinstance(act, argparse._StoreTrueAction):
            defaults[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            conv = act.type or str
            try:
                defaults[k] = conv(v)
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for config key {k!r}: {v!r}") from exc
            if act.choices is not None and defaults[k] not in act.choices:
                raise UsageError(f"config key {k!r} must be one of {list(act.choices)}, got {v!r}")
    sub_parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _find_subparser(parser: argparse.ArgumentParser, args: argparse.Namespace) -> argparse.ArgumentParser:
    cur = parser
    for attr in ("command", "model_command", "kam_command"):
        name = getattr(args, attr, None)
        if name is None:
            continue
        for act in cur._actions:
            if isinstance(act, argparse._SubParsersAction) and name in act.choices:
                cur = act.choices[name]
                break
    return cur


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except (UsageError, LieError, ModelError, KamError) as exc:
        sys.stderr.write(f"liecheck: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
