"""Command line front end.

Exit codes: 0 success or verified, 1 a verification failed, 2 usage error,
3 an internal size bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Optional

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
DCB_MAX_HEIGHT = 8
FORM_MAX_HEIGHT = 4


class UsageError(Exception):
    pass


class BoundExceeded(Exception):
    pass


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _context(args):
    from .roota import Context
    try:
        return Context(args.n, args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(out, args, payload, text: str, dot: Optional[str] = None) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.format == "dot":
        if dot is None:
            raise UsageError("dot output is only available for graphs and seeds")
        out.write(dot)
    else:
        out.write(text.rstrip("\n") + "\n")


# verification suites; each returns [(name, passed)]

def suite_straightening(ctx) -> list:
    from .pbw import verify_straightening_oracle
    return [(f"{kind} {tag}", ok) for kind, tag, ok in verify_straightening_oracle(ctx)]


def suite_form(ctx) -> list:
    from .freeword import generator_norms, pbw_duality
    out = [(f"norm E(beta_{k})", got == want) for k, got, want in generator_norms(ctx)]
    height = min(FORM_MAX_HEIGHT, ctx.n)
    out += [(f"duality {a} {b}", ok) for a, b, ok in pbw_duality(ctx, height)]
    return out


def suite_dcb(ctx) -> list:
    from .dcb import (DISPLAY_MIN_RANK, delta_recursive, delta_solver, display_erratum,
                      displayed_examples, p_element, p_formula)
    n = ctx.n
    out = [(f"p_{i} closed form", p_element(ctx, i) == p_formula(ctx, i)) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.append((f"Delta({i},{j}) solver = recursion",
                        delta_solver(ctx, i, j) == delta_recursive(ctx, i, j)))
    if ctx.variant == "full" and n >= DISPLAY_MIN_RANK:
        for name, i, j, form in displayed_examples(ctx):
            diff = delta_solver(ctx, i, j) - form
            fix = display_erratum(ctx, name, i)
            if fix is None:
                out.append((name, diff.is_zero()))
            else:
                out.append((f"{name} (misprint v^2 -> v^-2)", diff == fix))
    return out


def suite_recursion(ctx) -> list:
    from .dcb import verify_main_theorem
    out = []
    n = ctx.n
    if ctx.variant != "full":
        # the recursion is stated for the odd-rank word only
        return out
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            for part, _, ok in verify_main_theorem(ctx, i, j):
                out.append((f"({part}) i={i} j={j}", ok))
    return out


def suite_specialization(ctx) -> list:
    from .cluster import delta_classical, delta_determinant_check
    from .dcb import delta_v
    from .pbw import specialize_v1
    out = []
    n = ctx.n
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.append((f"v=1 Delta({i},{j})",
                        specialize_v1(ctx, delta_v(ctx, i, j)) == delta_classical(n, i, j)))
            for name, ok in sorted(delta_determinant_check(n, i, j).items()):
                out.append((f"{name} Delta({i},{j})", ok))
    return out


def suite_mutation(ctx) -> list:
    from .cluster import (base_exchange_matrix, base_seed, check_compatible, delta_classical,
                          lambda_matrix, mutate, to_base, verify_quantum_chain)
    n = ctx.n
    out = []
    s0 = base_seed(n)
    for k in range(1, n + 1):
        out.append((f"involution mu{k}", mutate(mutate(s0, k), k) == s0))
    for i in range(1, n + 1):
        s = s0
        for j in range(i, n + 1):
            s = mutate(s, j)
            out.append((f"chain {i}..{j} = Delta({i},{j})",
                        s.values[j - 1] == to_base(n, delta_classical(n, i, j))))
    out.append(("compatible pair", check_compatible(base_exchange_matrix(n), lambda_matrix(ctx)) is not None))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            ok = all(p for _, p in verify_quantum_chain(ctx, i, j))
            out.append((f"quantum chain {i}..{j}", ok))
    return out


SUITES: dict = {
    "straightening": suite_straightening,
    "form": suite_form,
    "dcb": suite_dcb,
    "recursion": suite_recursion,
    "specialization": suite_specialization,
    "mutation": suite_mutation,
}


def run_suites(ctx, names) -> list:
    rows = []
    for name in names:
        fn: Callable = SUITES[name]
        rows += [(name, check, bool(ok)) for check, ok in fn(ctx)]
    return rows


# subcommands

def cmd_shuffle_expand(args, out) -> int:
    from .shuffle import dual_generator_shuffle
    ctx = _context(args)
    if args.k is None:
        raise UsageError("--k is required")
    try:
        x = dual_generator_shuffle(ctx, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = "\n".join("".join(f"[{a}]" for a in w) for w in x.words())
    _emit(out, args, {"k": args.k, "label": ctx.label(args.k), "terms": x.to_json(),
                      "count": len(x)}, text)
    return EXIT_OK


def cmd_straighten(args, out) -> int:
    from .pbw import parse_word, straighten
    ctx = _context(args)
    if not args.word:
        raise UsageError("--word is required")
    try:
        word = parse_word(ctx, args.word)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    x = straighten(ctx, word)
    _emit(out, args, x.to_json(), repr(x))
    return EXIT_OK


def cmd_dcb(args, out) -> int:
    from .dcb import dcb_element, enumerate_degree
    from .roota import height
    ctx = _context(args)
    if args.exponent:
        a = _ints(args.exponent)
        if len(a) != ctx.size:
            raise UsageError(f"--exponent needs {ctx.size} entries")
        support = [a]
    elif args.degree:
        gamma = _ints(args.degree)
        if len(gamma) != ctx.n or min(gamma) < 0:
            raise UsageError(f"--degree needs {ctx.n} nonnegative root coordinates")
        if height(gamma) > DCB_MAX_HEIGHT:
            raise BoundExceeded(f"height {height(gamma)} above {DCB_MAX_HEIGHT}")
        support = enumerate_degree(ctx, gamma, args.tie)
    else:
        raise UsageError("--degree or --exponent is required")
    elems = [(a, dcb_element(ctx, a, args.tie)) for a in support]
    text = "\n".join(f"B{list(a)}* = {x!r}" for a, x in elems) or "no PBW monomials in this degree"
    payload = [{"a": list(a), "element": x.to_json()} for a, x in elems]
    _emit(out, args, payload, text)
    return EXIT_OK


def cmd_delta(args, out) -> int:
    from .cluster import delta_classical
    from .dcb import delta_v
    ctx = _context(args)
    if args.i is None or args.j is None:
        raise UsageError("--i and --j are required")
    if not 1 <= args.i <= args.j <= ctx.n:
        raise UsageError(f"need 1 <= i <= j <= {ctx.n}")
    if args.classical:
        f = delta_classical(ctx.n, args.i, args.j)
        _emit(out, args, f.to_json(), str(f))
    else:
        x = delta_v(ctx, args.i, args.j)
        _emit(out, args, x.to_json(), repr(x))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ctx = _context(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = run_suites(ctx, names)
    failed = sum(1 for *_, ok in rows if not ok)
    text = "\n".join(f"{'PASS' if ok else 'FAIL'} {suite}: {check}" for suite, check, ok in rows)
    text += f"\n{len(rows) - failed}/{len(rows)} passed\n"
    payload = {"n": ctx.n, "variant": ctx.variant, "results":
               [{"suite": s, "check": c, "passed": ok} for s, c, ok in rows],
               "failed": failed}
    _emit(out, args, payload, text)
    return EXIT_FAIL if failed else EXIT_OK


def _seed_dot(seed) -> str:
    lines = [f"digraph seed_n{seed.n} {{"]
    for r, lab in enumerate(seed.labels):
        shape = "ellipse" if r < seed.n else "box"
        lines.append(f'  v{r} [label="{lab}", shape={shape}];')
    for s, row in enumerate(seed.B):
        for t, b in enumerate(row):
            if b > 0:
                for _ in range(b):
                    lines.append(f"  v{s} -> v{t};")
            # arrows into frozen rows only appear with negative entries
            if b < 0 and s >= seed.n:
                for _ in range(-b):
                    lines.append(f"  v{t} -> v{s};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_mutate(args, out) -> int:
    from .cluster import base_seed, mutate
    ctx = _context(args)
    seq = _ints(args.at or "")
    seed = base_seed(ctx.n)
    for k in seq:
        try:
            seed = mutate(seed, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    text = "\n".join(f"{lab} = {val}" for lab, val in zip(seed.labels, seed.values))
    _emit(out, args, seed.to_json(), text, _seed_dot(seed))
    return EXIT_OK


def cmd_exchange_graph(args, out) -> int:
    from .cluster import MAX_GRAPH_RANK, exchange_graph
    ctx = _context(args)
    if ctx.n > MAX_GRAPH_RANK:
        raise BoundExceeded(f"exchange graph enumeration capped at rank {MAX_GRAPH_RANK}")
    g = exchange_graph(ctx.n)
    text = "\n".join(" ".join(c) for c in g.clusters)
    text += f"\n{len(g.clusters)} clusters, {len(g.variables)} mutable variables\n"
    _emit(out, args, g.to_json(), text, g.to_dot())
    return EXIT_OK


def cmd_check_compatible(args, out) -> int:
    from .cluster import base_exchange_matrix, check_compatible, lambda_matrix, listed_lambda
    ctx = _context(args)
    B = base_exchange_matrix(ctx.n)
    lam = listed_lambda(ctx) if args.listed else lambda_matrix(ctx)
    diag = check_compatible(B, lam)
    text = "\n".join(" ".join(f"{x:3d}" for x in row) for row in lam)
    text += "\n" + (f"compatible, diagonal {diag}" if diag else "not compatible") + "\n"
    _emit(out, args, {"B": [list(r) for r in B], "Lambda": [list(r) for r in lam],
                      "diagonal": diag}, text)
    return EXIT_OK if diag else EXIT_FAIL


COMMANDS = {
    "shuffle-expand": cmd_shuffle_expand,
    "straighten": cmd_straighten,
    "dcb": cmd_dcb,
    "delta": cmd_delta,
    "verify": cmd_verify,
    "mutate": cmd_mutate,
    "exchange-graph": cmd_exchange_graph,
    "check-compatible": cmd_check_compatible,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--variant", choices=("full", "qprime"), default="full")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--cache-dir", default=None)
    p = _Parser(prog="qca", description="Dual canonical bases and quantum cluster structure of U_v^+(w).")
    p.add_argument("--version", action="version", version=f"qca {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    s = sub.add_parser("shuffle-expand", parents=[common])
    s.add_argument("--k", type=int)
    s = sub.add_parser("straighten", parents=[common])
    s.add_argument("--word")
    s = sub.add_parser("dcb", parents=[common])
    s.add_argument("--degree")
    s.add_argument("--exponent")
    s.add_argument("--tie", choices=("revlex", "lex"), default="revlex")
    s = sub.add_parser("delta", parents=[common])
    s.add_argument("--i", type=int)
    s.add_argument("--j", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--quantum", action="store_true")
    g.add_argument("--classical", action="store_true")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    s = sub.add_parser("mutate", parents=[common])
    s.add_argument("--at", default="")
    sub.add_parser("exchange-graph", parents=[common])
    s = sub.add_parser("check-compatible", parents=[common])
    s.add_argument("--listed", action="store_true",
                   help="use the listed commutation relations instead of computed ones")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    from .pbw import OracleBoundError, StraighteningError
    from .shuffle import ShuffleBoundError
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        cache = os.environ.get("QCA_CACHE_DIR") or args.cache_dir
        if cache:
            os.makedirs(cache, exist_ok=True)
            os.environ["QCA_CACHE_DIR"] = cache
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"qca: error: {exc}\n")
        return EXIT_USAGE
    except (BoundExceeded, OracleBoundError, ShuffleBoundError, StraighteningError, RecursionError) as exc:
        err.write(f"qca: bound exceeded: {exc}\n")
        return EXIT_BOUND


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
