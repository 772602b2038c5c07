"""Command-line frontend.

Every subcommand prints one JSON record ``{status, command, payload, provenance}``
(or TSV for tabular payloads) and exits 0 (ok), 1 (a checked property was
violated) or 2 (usage or input error).
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from typing import Optional, Sequence

from .automorphisms import (
    DetPower,
    TrivialCentral,
    check_automorphism,
    format_word,
    normalize,
    parse_word,
)
from .errors import TwistConjError
from .matrices import Matrix, congruence_antitrace, antitrace, determinant, random_invertible
from .rings import PolynomialRing, default_stream, degree, distinct_image_sampler, integer_stream, make_ring
from .twisted import burnside_reidemeister, enumerate_group, solve_twisted, twisted_classes
from .witnesses import (
    AntitraceSquare,
    OrbitTracePower,
    TracePower,
    WitnessFamily,
    certify_separation,
    gen_theorem1,
    gen_theorem2,
    invariant_eval,
    obstruction_exhaustive,
    oracle_implication,
    psi_poly,
)

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# subcommands; each returns (status, payload) or (status, payload, tsv_rows)

def _gamma(text: str):
    if text in ("", "trivial"):
        return TrivialCentral()
    if text.startswith("det^"):
        return DetPower(int(text[4:]))
    raise UsageError(f"bad central map {text!r}; expected 'trivial' or 'det^<e>'")


def cmd_lemma2(args):
    ring = make_ring(args.ring)
    rng = random.Random(args.seed)
    failures, counterexample = 0, None

    def check(x, a):
        nonlocal failures, counterexample
        if congruence_antitrace(x, a) != antitrace(a) * determinant(x):
            failures += 1
            counterexample = counterexample or [x.to_literal(), a.to_literal()]

    kwargs = {"max_degree": args.max_degree} if isinstance(ring, PolynomialRing) else {}
    for _ in range(args.trials):
        x = Matrix(ring, [[ring.random_raw(rng, args.bound, **kwargs) for _ in range(2)] for _ in range(2)])
        a = Matrix(ring, [[ring.random_raw(rng, args.bound, **kwargs) for _ in range(2)] for _ in range(2)])
        check(x, a)
    exhaustive = 0
    if args.exhaustive:
        if not ring.is_finite:
            raise UsageError("--exhaustive needs a finite ring")
        mats = [Matrix(ring, [e[:2], e[2:]]) for e in itertools.product(list(ring.elements_raw()), repeat=4)]
        for x in mats:
            for a in mats:
                check(x, a)
                exhaustive += 1
    payload = {"ring": ring.spec, "trials": args.trials, "exhaustive_pairs": exhaustive, "failures": failures}
    if counterexample:
        payload["counterexample"] = counterexample
    return ("ok" if failures == 0 else "violated"), payload


def cmd_lemma1(args):
    ring = make_ring(args.ring)
    pr = PolynomialRing(ring)
    f = pr(args.poly)
    if args.start is None:
        source = default_stream(ring)
    else:
        source = integer_stream(ring, args.start)
    deg = degree(f)
    bound = max(args.count - 1, 0) * deg + 1
    budget = args.budget if args.budget is not None else bound
    res = distinct_image_sampler(f, source, args.count, budget)
    payload = {
        "ring": ring.spec, "poly": str(f), "degree": deg, "count": args.count,
        "elements": [str(a) for a in res.elements], "images": [str(v) for v in res.images],
        "scanned": res.scanned, "bound": bound,
    }
    return ("ok" if res.scanned <= bound else "violated"), payload


def cmd_psideg(args):
    expected = (lambda m: m) if args.parity == "even" else (lambda m: 2 * m)
    table, bad = [], []
    for m in range(1, args.max_m + 1):
        deg = degree(psi_poly(m, args.parity))
        table.append([m, deg])
        if deg != expected(m):
            bad.append(m)
    payload = {"parity": args.parity, "table": table, "mismatches": bad}
    if args.show:
        payload["polynomials"] = {str(m): str(psi_poly(m, args.parity)) for m in range(1, min(args.show, args.max_m) + 1)}
    rows = [["m", "degree", "expected"]] + [[m, d, expected(m)] for m, d in table]
    return ("ok" if not bad else "violated"), payload, rows


def cmd_witness(args):
    ring = make_ring(args.ring)
    if args.theorem == 1:
        fam = gen_theorem1(args.case, args.n, ring(args.d), args.count, ring=ring)
    else:
        delta = ring.automorphism(args.delta)
        m = args.m if args.m is not None else (delta.claimed_order or 1)
        fam = gen_theorem2(args.case, args.n, ring(args.d), delta, m, args.count)
    return "ok", fam.to_record()


def _read_family(args) -> WitnessFamily:
    stream = sys.stdin if args.input in (None, "-") else open(args.input)
    try:
        rec = json.load(stream)
    except json.JSONDecodeError as exc:
        raise UsageError(f"certify expects a witness family record: {exc}") from None
    finally:
        if stream is not sys.stdin:
            stream.close()
    if "payload" in rec:
        rec = rec["payload"]
    if rec.get("kind") != "witness-family":
        raise UsageError("input is not a witness family record")
    return WitnessFamily.from_record(rec)


def cmd_certify(args):
    fam = _read_family(args)
    inv = args.invariant
    if inv == "auto":
        spec = fam.default_invariant()
    elif inv == "trpow":
        spec = TracePower(fam.n)
    elif inv == "atr2":
        spec = AntitraceSquare()
    else:
        if fam.delta is None:
            raise UsageError("orbit invariant needs a theorem-2 family")
        spec = OrbitTracePower(fam.n, fam.delta, fam.m, fam.parity, fam.d)
    cert = certify_separation(fam, spec)
    return ("ok" if cert.separated else "violated"), cert.to_record()


def _group(args):
    return enumerate_group(make_ring(args.ring), args.n, args.kind)


def cmd_reidemeister(args):
    G = _group(args)
    phi = parse_word(args.auto, G.ring, G.n)
    verdict = check_automorphism(phi, G)
    if not verdict.ok:
        return "error", {"group": G.name, "automorphism": args.auto, "reason": f"not an automorphism: {verdict.reason}"}
    part = twisted_classes(G, phi, check=False)
    burn = burnside_reidemeister(G, phi, check=False)
    payload = {
        "group": G.name, "order": len(G), "automorphism": format_word(phi),
        "partition": part.count, "burnside": burn, "classes": part.records(),
    }
    rows = [["size", "representative"]] + [[r["size"], r["representative"]] for r in part.records()]
    return ("ok" if part.count == burn else "violated"), payload, rows


def cmd_normalform(args):
    ring = make_ring(args.ring)
    word = parse_word(args.word, ring, args.n)
    nf = normalize(word)
    rng = random.Random(args.seed)
    if ring.is_finite:
        G = enumerate_group(ring, word.n, "GL")
        samples = [G.random_element(rng) for _ in range(args.samples)]
    else:
        samples = [random_invertible(ring, word.n, rng, bound=3) for _ in range(args.samples)]
    bad = [a.to_literal() for a in samples if word.apply(a) != nf.apply(a)]
    payload = {
        "word": format_word(word), "normal_form": nf.describe(), "normal_word": format_word(nf.to_word()),
        "checked": len(samples), "disagreements": len(bad),
    }
    if bad:
        payload["first_disagreement"] = bad[0]
    return ("ok" if not bad else "violated"), payload


def cmd_oracle(args):
    G = _group(args)
    gamma = _gamma(args.gamma)
    if args.mode == "implication":
        if not args.D:
            raise UsageError("--D is required for implication mode")
        d = Matrix.parse(G.ring, args.D)
        report = oracle_implication(G, d, gamma, args.shape)
        return ("ok" if report.ok else "violated"), report.to_record()
    if not (args.bi and args.bj):
        raise UsageError("--bi and --bj are required for obstruction mode")
    bi, bj = Matrix.parse(G.ring, args.bi), Matrix.parse(G.ring, args.bj)
    res = obstruction_exhaustive(bi, bj, G, gamma)
    differ = invariant_eval(AntitraceSquare(), bi) != invariant_eval(AntitraceSquare(), bj)
    payload = {"group": G.name, "atr2_differ": differ, **res.to_record()}
    violated = differ and res.conjugator is not None
    return ("violated" if violated else "ok"), payload


def cmd_solve(args):
    G = _group(args)
    phi = parse_word(args.auto, G.ring, G.n)
    x, y = Matrix.parse(G.ring, args.x), Matrix.parse(G.ring, args.y)
    z = solve_twisted(x, y, phi, G)
    return "ok", {"group": G.name, "automorphism": format_word(phi),
                  "conjugator": None if z is None else z.to_literal()}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistconj", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
        p.set_defaults(func=fn)
        return p

    p = add("lemma2", cmd_lemma2, "check atr(X A X^T) = atr(A) det(X)")
    p.add_argument("--ring", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--bound", type=int, default=1000)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--exhaustive", action="store_true")

    p = add("lemma1", cmd_lemma1, "distinct-image sampler")
    p.add_argument("--ring", default="Z")
    p.add_argument("--poly", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--start", type=int)

    p = add("psideg", cmd_psideg, "degree sweep of the psi_m trace polynomials")
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--show", type=int, default=0, help="include the first SHOW polynomials")

    p = add("witness", cmd_witness, "generate a witness family")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--case", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", default="1")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--ring", default="Z")
    p.add_argument("--delta", default="id")
    p.add_argument("--m", type=int)

    p = add("certify", cmd_certify, "separation certificate for a witness family")
    p.add_argument("--invariant", choices=("auto", "trpow", "atr2", "orbit"), default="auto")
    p.add_argument("--input", help="family record file (default: stdin)")

    def group_args(p):
        p.add_argument("--ring", required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--kind", choices=("GL", "SL"), default="GL")

    p = add("reidemeister", cmd_reidemeister, "Reidemeister number of a finite matrix group")
    group_args(p)
    p.add_argument("--auto", default="")

    p = add("normalform", cmd_normalform, "reduce an automorphism word to normal form")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", default="")
    p.add_argument("--samples", type=int, default=50)

    p = add("oracle", cmd_oracle, "exhaustive implication and obstruction checks")
    group_args(p)
    p.add_argument("--mode", choices=("implication", "obstruction"), default="implication")
    p.add_argument("--D")
    p.add_argument("--gamma", default="trivial")
    p.add_argument("--shape", choices=("even", "odd"), default="even")
    p.add_argument("--bi")
    p.add_argument("--bj")

    p = add("solve", cmd_solve, "find a twisted conjugator")
    group_args(p)
    p.add_argument("--auto", default="")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    return parser


def _emit(record: dict, rows, fmt: str, out):
    if fmt == "tsv" and rows is not None:
        for row in rows:
            out.write("\t".join(str(c) for c in row) + "\n")
    else:
        out.write(json.dumps(record, sort_keys=True) + "\n")


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _emit({"status": "error", "command": None, "payload": {"error": str(exc)}, "provenance": {"argv": argv}}, None, "json", out)
        print(f"twistconj: {exc}", file=sys.stderr)
        return EXIT_ERROR
    provenance = {k: v for k, v in vars(args).items() if k != "func"}
    try:
        result = args.func(args)
    except (UsageError, TwistConjError, ValueError, OSError) as exc:
        record = {"status": "error", "command": args.command,
                  "payload": {"error": f"{type(exc).__name__}: {exc}"}, "provenance": provenance}
        _emit(record, None, "json", out)
        return EXIT_ERROR
    status, payload, *rest = result
    rows = rest[0] if rest else None
    record = {"status": status, "command": args.command, "payload": payload, "provenance": provenance}
    _emit(record, rows, args.format, out)
    return {"ok": EXIT_OK, "violated": EXIT_VIOLATED}.get(status, EXIT_ERROR)


if __name__ == "__main__":
    sys.exit(main())
