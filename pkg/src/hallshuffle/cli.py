"""``hallshuffle`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from . import affine as af
from .cache import Cache
from .errors import InvariantViolation, NotInSpan, ParseError
from .parsing import parse_symfunc
from .shuffle import (
    ShuffleElement,
    gen_H,
    gen_Hprime,
    gen_Pbar,
    gen_R,
    gen_ribbon,
    gen_Sbar,
    mat_substack_class,
    shuffle_mul,
)
from .symfunc import phi_slope

__all__ = ["main", "build_parser", "generate", "generate_payload", "GEN_SPOT_CHECKS"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3

GEN_KINDS = ("H", "Hprime", "Sbar", "SbarB", "Pbar", "R", "ribbon", "matclass")
GEN_SPOT_CHECKS = [
    ("H", ["0", "1"]),
    ("H", ["1", "2"]),
    ("Hprime", ["1", "2"]),
    ("Sbar", ["0", "2", "1"]),
    ("Sbar", ["1", "1", "2"]),
    ("Pbar", ["1", "1", "2"]),
    ("R", ["0", "1"]),
    ("ribbon", ["0", "1", "+"]),
    ("matclass", ["2"]),
]


class UsageError(ValueError):
    pass


def _ints(args, count, kind):
    if count is not None and len(args) != count:
        raise UsageError(f"gen {kind} takes {count} integer arguments, got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise UsageError(f"gen {kind}: arguments must be integers, got {args}") from None


def _slope_params(args, kind):
    m, n, d = _ints(args, 3, kind)
    if n < 1 or d < 1:
        raise UsageError(f"gen {kind}: n and d must be positive")
    # (M, N, d) with g = gcd(M, N) > 1 names the generator (M/g, N/g, g*d)
    g = gcd(m, n)
    return m // g, n // g, d * g


def generate(kind: str, args) -> ShuffleElement:
    args = list(args)
    if kind == "H":
        m, n = _ints(args, 2, kind)
        return gen_H(m, n)
    if kind == "Hprime":
        m, n = _ints(args, 2, kind)
        return gen_Hprime(m, n)
    if kind in ("Sbar", "SbarB"):
        return gen_Sbar(_slope_params(args, kind), "A" if kind == "Sbar" else "B")
    if kind == "Pbar":
        return gen_Pbar(_slope_params(args, kind))
    if kind == "R":
        if not args:
            raise UsageError("gen R needs at least one exponent")
        return gen_R(tuple(_ints(args, None, kind)))
    if kind == "ribbon":
        if len(args) not in (2, 3):
            raise UsageError("gen ribbon takes m n [signs]")
        m, n = _ints(args[:2], 2, kind)
        signs = args[2] if len(args) == 3 else ""
        if any(c not in "+-" for c in signs):
            raise UsageError(f"gen ribbon: signs must be '+' or '-', got {signs!r}")
        return gen_ribbon(m, n, signs)
    if kind == "matclass":
        (n,) = _ints(args, 1, kind)
        return mat_substack_class(n)
    raise UsageError(f"unknown generator kind {kind!r}; choose from {', '.join(GEN_KINDS)}")


def generate_payload(kind, args):
    return generate(kind, args).to_json()


# ---------------------------------------------------------------------------
# output


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit_element(payload, fmt):
    """Format from the serialized form so cached and fresh runs match byte for byte."""
    if fmt == "json":
        return _dump(payload)
    el = ShuffleElement.from_json(payload)
    return el.latex() if fmt == "latex" else str(el)


def _cached(ctx, op, params, compute):
    return ctx.cache.get_or_compute(op, params, compute)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(ctx, ns):
    params = [ns.kind, list(ns.params)]
    payload = _cached(ctx, "gen", params, lambda: generate_payload(ns.kind, ns.params))
    return EXIT_OK, _emit_element(payload, ns.format)


def _load_element(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg} (line {exc.lineno}, column {exc.colno})", exc.pos) from None
    try:
        return ShuffleElement.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: not a shuffle element ({exc})") from None


def cmd_mul(ctx, ns):
    a, b = _load_element(ns.lhs), _load_element(ns.rhs)
    params = [a.to_json(), b.to_json()]
    payload = _cached(ctx, "mul", params, lambda: shuffle_mul(a, b).to_json())
    return EXIT_OK, _emit_element(payload, ns.format)


def cmd_phi(ctx, ns):
    f = parse_symfunc(ns.expr)

    def compute():
        return phi_slope(ns.m, ns.n, f).to_json()

    payload = _cached(ctx, "phi", [str(ns.m), str(ns.n), f.to_json()], compute)
    return EXIT_OK, _emit_element(payload, ns.format)


def _perm_text(v):
    return "[" + ", ".join(str(x) for x in v.window) + "]"


def cmd_affine(ctx, ns):
    sub, n = ns.sub, ns.n
    words = ns.words
    if sub == "centralizer":
        if len(words) not in (3, 4):
            raise UsageError("affine centralizer takes m n d [word]")
        try:
            m, nn, d = (int(x) for x in words[:3])
        except ValueError:
            raise UsageError("affine centralizer: m n d must be integers") from None
        gens, pred = af.centralizer_data(m, nn, d)
        out = {"rank": str(nn * d), "generators": [[str(x) for x in g.window] for g in gens]}
        if len(words) == 4:
            v = af.parse_word(words[3], nn * d)
            out["element"] = [str(x) for x in v.window]
            out["in_centralizer"] = pred(v)
        if ns.format == "json":
            return EXIT_OK, _dump(out)
        lines = [f"rank {out['rank']}"]
        lines += ["generator " + _perm_text(g) for g in gens]
        if "element" in out:
            lines.append(f"in centralizer: {str(out['in_centralizer']).lower()}")
        return EXIT_OK, "\n".join(lines)

    need = 2 if sub in ("compose", "bruhat") else 1
    if len(words) != need:
        raise UsageError(f"affine {sub} takes {need} word(s)")
    elems = [af.parse_word(w, n) for w in words]
    if sub == "compose":
        v = elems[0] * elems[1]
        out, text = {"n": str(n), "window": [str(x) for x in v.window]}, _perm_text(v)
    elif sub == "length":
        ell = af.length(elems[0])
        out, text = {"length": str(ell)}, str(ell)
    elif sub == "degree":
        deg = elems[0].degree
        out, text = {"degree": str(deg)}, str(deg)
    elif sub == "cycles":
        data = af.cycle_data(elems[0])
        out = {"cycles": [{"length": str(a), "degree": str(b)} for a, b in data]}
        text = " ".join(f"({a}, {b})" for a, b in data)
    elif sub == "convexpath":
        path = af.convex_path(elems[0])
        out = {"path": [[str(a), str(b)] for a, b in path]}
        text = "[" + ", ".join(f"({a},{b})" for a, b in path) + "]"
    elif sub == "bruhat":
        res = af.bruhat_leq(elems[0], elems[1])
        out, text = {"leq": res}, str(res).lower()
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown affine subcommand {sub!r}")
    return EXIT_OK, _dump(out) if ns.format == "json" else text


def cmd_verify(ctx, ns):
    from .verify import run_suite

    progress = None
    if ns.format != "json":
        def progress(res):
            print(f"{res.status.upper():7} {res.id} ({res.seconds:.2f}s)", file=sys.stderr, flush=True)

    report = run_suite(ns.suite, long=ns.long, cache=Cache(ns.cache_dir, True), progress=progress)
    text = _dump(report.to_json()) if ns.format == "json" else report.text()
    return (EXIT_OK if report.ok else EXIT_FAIL), text


def cmd_pbw(ctx, ns):
    from .pbw import expansion_to_json, express, ordered_expansion

    target = _load_element(ns.target)
    coeffs = express(target, (ns.lo, ns.hi), assert_integral=ns.integral)
    report = expansion_to_json(target, (ns.lo, ns.hi), coeffs)
    if ns.format == "json":
        return EXIT_OK, _dump(report)
    latex = ns.format == "latex"
    lines = []
    for idx, c in ordered_expansion(coeffs):
        name = " * ".join(f"Sbar[{m},{n}]" for m, n in idx)
        lines.append(f"{c.latex() if latex else c} : {name}")
    return EXIT_OK, "\n".join(lines) or "0"


# ---------------------------------------------------------------------------
# parser


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "latex", "text"), default="text")
    common.add_argument("--cache-dir", default=None, help="cache directory (else $HALLSHUFFLE_CACHE, else the user cache dir)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--long", action="store_true", help="include the slow checks")

    parser = _ArgumentParser(prog="hallshuffle", description="Shuffle algebra calculator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("gen", parents=[common], help="generator elements")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("params", nargs="*", help="integers (and a sign string for ribbon)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mul", parents=[common], help="star product of two JSON elements")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("phi", parents=[common], help="slope embedding of a symmetric function")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("expr")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("affine", parents=[common], help="extended affine symmetric group")
    p.add_argument("sub", choices=("compose", "length", "degree", "cycles", "convexpath", "centralizer", "bruhat"))
    p.add_argument("words", nargs="+", help="words such as 'w w s1' (or m n d [word] for centralizer)")
    p.add_argument("--n", type=int, default=2, help="rank (default 2)")
    p.set_defaults(func=cmd_affine)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("arith", "shuffle", "symfunc", "affine", "solomon", "pbw", "all"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pbw", parents=[common], help="expand a JSON element in slope-ordered products")
    p.add_argument("target")
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), required=True)
    p.add_argument("--integral", action="store_true", help="assert integral coefficients")
    p.set_defaults(func=cmd_pbw)
    return parser


class _Context:
    def __init__(self, ns):
        self.cache = Cache(ns.cache_dir, enabled=not ns.no_cache)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "pbw":
        ns.lo, ns.hi = ns.window
    try:
        code, text = ns.func(_Context(ns), ns)
    except InvariantViolation as exc:
        print(f"hallshuffle: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except NotInSpan as exc:
        print(f"hallshuffle: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, ArithmeticError) as exc:
        print(f"hallshuffle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
