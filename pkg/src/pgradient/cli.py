"""Command-line entry point ``pg``.

Results go to stdout (JSON by default, plain text with ``--human``); every
diagnostic goes to stderr.  Exit codes: 0 ok, 1 bad input, 2 a resource limit
stopped a command that needs an exact answer, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import corpus
from .chaser import chase
from .cosets import DEFAULT_MAX_COSETS, todd_coxeter
from .errors import (EnumerationError, IntegrityError, NonInvariantFunctionalError, NotSaturatedError,
                     PresentationSyntaxError)
from .fp_linalg import check_prime
from .gradient import estimate_from_lattice, finite_p_gradient, finite_rank_gradient, format_rational, parse_rational
from .lattice import DEFAULT_MAX_INDEX, MAX_DEPTH, default_node_budget, enumerate_lattice
from .quotient_ops import certify_free, check_quotient_bound, quotient_by_power
from .schreier import dp, schreier_data, subgroup_presentation_full
from .verify import SUITES, run_suites
from .words import parse_word, print_presentation

COMMANDS = ("dp", "enum", "gradient", "finite", "rank-gradient", "quotient", "schreier", "verify", "chase")
EXIT_OK, EXIT_INPUT, EXIT_TRUNCATED, EXIT_INTEGRITY = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    p: int = 2
    depth: int | None = None
    max_cosets: int | None = None
    node_budget: int | None = None
    alpha: Fraction | None = None
    steps: int = 8
    seed: int = 0
    dump_lattice: str | None = None
    human: bool = False
    threads: int = 1
    word: str | None = None
    exponent: int | None = None
    subgroup: list = field(default_factory=list)
    suites: list = field(default_factory=lambda: ["all"])

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        check_prime(self.p)
        if self.depth is not None and self.depth < 0:
            raise ValueError("depth must be >= 0")
        for name in ("max_cosets", "node_budget", "threads", "steps"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name.replace('_', '-')} must be positive")
        if self.command not in ("verify", "chase") and not self.input:
            raise ValueError(f"{self.command} needs an input presentation")


class _Out:
    def __init__(self, stream, human):
        self.stream = stream
        self.human = human

    def emit(self, record: dict, text: str):
        if self.human:
            self.stream.write(text.rstrip("\n") + "\n")
        else:
            self.stream.write(json.dumps(record, separators=(",", ":")) + "\n")


def _lattice(cfg, P, depth):
    budget = cfg.node_budget or default_node_budget()
    return enumerate_lattice(P, cfg.p, depth, budget, cfg.threads, cfg.max_cosets or DEFAULT_MAX_INDEX)


def _dump(cfg, L):
    if cfg.dump_lattice:
        with open(cfg.dump_lattice, "w") as fh:
            fh.write(L.dump())


def _cmd_dp(cfg, P, out):
    d = dp(P, cfg.p)
    out.emit({"p": cfg.p, "dp": d}, f"d_{cfg.p} = {d}")
    return EXIT_OK


def _cmd_enum(cfg, P, out):
    depth = 3 if cfg.depth is None else cfg.depth
    L = _lattice(cfg, P, depth)
    _dump(cfg, L)
    rec = {"p": cfg.p, "depth": depth, "levels": L.sizes(), "saturated": L.saturated, "truncated": L.truncated}
    lines = [f"level {k}: {n} normal subgroups of index {cfg.p}^{k}" for k, n in enumerate(L.sizes())]
    lines.append(f"saturated: {L.saturated}  truncated: {L.truncated}")
    out.emit(rec, "\n".join(lines))
    return EXIT_OK


def _cmd_gradient(cfg, P, out):
    depth = 3 if cfg.depth is None else cfg.depth
    L = _lattice(cfg, P, depth)
    _dump(cfg, L)
    est = estimate_from_lattice(L)
    rec = est.to_json()
    text = (f"estimate {format_rational(est.value)} at depth {depth}, witness index {rec['witness_index']}"
            f" ({rec['witness_key_hash']}), exact={est.exact}, truncated={est.truncated}")
    out.emit(rec, text)
    return EXIT_OK


def _cmd_finite(cfg, P, out):
    value = finite_p_gradient(P, cfg.p, cfg.node_budget, MAX_DEPTH if cfg.depth is None else cfg.depth,
                              cfg.threads, cfg.max_cosets or DEFAULT_MAX_INDEX)
    out.emit({"value": format_rational(value), "exact": True},
             f"p-gradient {format_rational(value)} (exact, lattice saturated)")
    return EXIT_OK


def _cmd_rank_gradient(cfg, P, out):
    order = todd_coxeter(P, max_cosets=cfg.max_cosets or DEFAULT_MAX_COSETS).n_cosets
    value = finite_rank_gradient(P)
    out.emit({"value": format_rational(value), "order": order},
             f"rank gradient {format_rational(value)} for a group of order {order}")
    return EXIT_OK


def _cmd_quotient(cfg, P, out):
    if cfg.word is None:
        raise ValueError("quotient needs --word")
    x = parse_word(cfg.word, P.generators)
    e = cfg.exponent if cfg.exponent is not None else cfg.p
    Q = quotient_by_power(P, x, e)
    depth = 3 if cfg.depth is None else cfg.depth
    est = estimate_from_lattice(_lattice(cfg, Q, depth))
    rec = {"presentation": print_presentation(Q), "estimate": est.to_json()}
    text = [print_presentation(Q).rstrip("\n"), f"estimate {format_rational(est.value)} at depth {depth}"]
    k = _p_log(e, cfg.p)
    if not P.relators and k is not None:
        rep = check_quotient_bound(P, x, cfg.p, k, depth, certify_free(P), witness_depth=max(depth, k),
                                   instance=f"x={cfg.word},e={e}", threads=cfg.threads)
        rec["check"] = rep.line()
        text.append(rep.line())
        if rep.status == "FAIL":
            out.emit(rec, "\n".join(text))
            return EXIT_INTEGRITY
    out.emit(rec, "\n".join(text))
    return EXIT_OK


def _p_log(e, p):
    k = 0
    while e % p == 0:
        e //= p
        k += 1
    return k if e == 1 else None


def _cmd_schreier(cfg, P, out):
    gens = [parse_word(w, P.generators) for w in cfg.subgroup]
    t = todd_coxeter(P, gens, max_cosets=cfg.max_cosets or DEFAULT_MAX_COSETS)
    sd = schreier_data(t)
    sub = subgroup_presentation_full(sd)
    H = sub.presentation
    rec = {"index": t.n_cosets, "schreier_generators": sd.n_sgens, "presentation": print_presentation(H),
           "dp": dp(H, cfg.p), "p": cfg.p}
    text = (f"index {t.n_cosets}, {sd.n_sgens} Schreier generators, d_{cfg.p}(H) = {rec['dp']}\n"
            + print_presentation(H))
    out.emit(rec, text)
    return EXIT_OK


def _cmd_verify(cfg, out):
    failed = False
    for rep in run_suites(cfg.suites, cfg.threads):
        out.stream.write(rep.line() + "\n")
        failed |= rep.status == "FAIL"
    return EXIT_INTEGRITY if failed else EXIT_OK


def _cmd_chase(cfg, out):
    if cfg.alpha is None:
        raise ValueError("chase needs --alpha")
    depth = 2 if cfg.depth is None else cfg.depth
    traj = chase(cfg.alpha, cfg.p, depth, max_steps=cfg.steps, selection_seed=cfg.seed,
                 node_budget=cfg.node_budget, threads=cfg.threads)
    rec = traj.to_json()
    lines = [f"# {rec['header']}", f"seed F_{rec['rank']}: estimate {rec['seed_estimate']}, certified {rec['initial']}"]
    for i, s in enumerate(rec["steps"], 1):
        lines.append(f"step {i}: x={s['x']} k={s['k']} spent={s['spent']} "
                     f"certified_lower={s['certified_lower']} estimate={s['estimate']}")
    lines.append(f"stop: {rec['stop_reason']}; final {rec['final_presentation']}")
    out.emit(rec, "\n".join(lines))
    return EXIT_OK


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = _Out(stdout, cfg.human)
    try:
        cfg.validate()
        if cfg.command == "verify":
            return _cmd_verify(cfg, out)
        if cfg.command == "chase":
            return _cmd_chase(cfg, out)
        P = corpus.load(cfg.input)
        handler = {"dp": _cmd_dp, "enum": _cmd_enum, "gradient": _cmd_gradient, "finite": _cmd_finite,
                   "rank-gradient": _cmd_rank_gradient, "quotient": _cmd_quotient,
                   "schreier": _cmd_schreier}[cfg.command]
        return handler(cfg, P, out)
    except IntegrityError as exc:
        stderr.write(f"pg: internal invariant violated: {exc}\n")
        return EXIT_INTEGRITY
    except (NotSaturatedError, EnumerationError) as exc:
        stderr.write(f"pg: {exc}\n")
        return EXIT_TRUNCATED
    except PresentationSyntaxError as exc:
        stderr.write(f"pg: {cfg.input}: {exc}\n")
        return EXIT_INPUT
    except (OSError, ValueError, NonInvariantFunctionalError) as exc:
        stderr.write(f"pg: {exc}\n")
        return EXIT_INPUT


def _positive_rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); argparse would use 2, which means truncation here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, default=2, help="prime (default 2)")
    common.add_argument("-k", "--depth", type=int, help="lattice depth: index up to p^k")
    common.add_argument("--max-cosets", type=int,
                        help=f"coset limit for enumeration and lattice index cap "
                             f"(defaults {DEFAULT_MAX_COSETS} and {DEFAULT_MAX_INDEX})")
    common.add_argument("--node-budget", type=int, help="lattice node limit (default $PG_NODE_BUDGET or 50000)")
    common.add_argument("--dump-lattice", metavar="PATH", help="write 'level index key-hash dp' per node")
    common.add_argument("--human", action="store_true", help="plain text instead of JSON")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")

    ap = _Parser(prog="pg", description="p-gradients of finitely presented groups")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("dp", "d_p of the group"), ("enum", "normal subgroups of p-power index"),
                        ("gradient", "truncated p-gradient estimate"),
                        ("finite", "exact p-gradient of a group with finite p-quotient tower"),
                        ("rank-gradient", "rank gradient of a small finite group")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="presentation file or bundled name (e.g. f2, z4)")
    sp = sub.add_parser("quotient", parents=[common], help="G/<<x^e>> and its estimate")
    sp.add_argument("input")
    sp.add_argument("--word", required=True, help="the word x, e.g. 'a b^-1'")
    sp.add_argument("-e", "--exponent", type=int, help="exponent e (default p)")
    sp = sub.add_parser("schreier", parents=[common], help="presentation of a finite-index subgroup")
    sp.add_argument("input")
    sp.add_argument("--subgroup", action="append", default=[], metavar="WORD",
                    help="subgroup generator (repeatable); none means the trivial subgroup")
    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", action="append", choices=["all", *SUITES], help="suite (repeatable, default all)")
    sp = sub.add_parser("chase", parents=[common], help="drive the p-gradient toward alpha")
    sp.add_argument("--alpha", type=_positive_rational, required=True, help="target, e.g. 3/4")
    sp.add_argument("--steps", type=int, default=8, help="maximum number of steps")
    sp.add_argument("--seed", type=int, default=0, help="word selection seed")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command, input=getattr(ns, "input", None), p=ns.p, depth=ns.depth,
        max_cosets=ns.max_cosets, node_budget=ns.node_budget, alpha=getattr(ns, "alpha", None),
        steps=getattr(ns, "steps", 8), seed=getattr(ns, "seed", 0), dump_lattice=ns.dump_lattice,
        human=ns.human, threads=ns.threads, word=getattr(ns, "word", None),
        exponent=getattr(ns, "exponent", None), subgroup=getattr(ns, "subgroup", []),
        suites=getattr(ns, "suite", None) or ["all"],
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
