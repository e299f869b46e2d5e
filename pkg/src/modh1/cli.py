"""Command line front end.

Subcommands: h1 (cohomology of a named group), verify (formula and
oracle sweeps), witness (certificate construction and self-check),
classify (element and maximal amenable type), pell (equation solving),
and verify-certificate (re-check a stored certificate file).  Reports
are printed as text, JSON, or CSV; exit status is 0 when every check
passes, 1 on a failed mathematical check, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from math import isqrt

from . import __version__
from .amenable import classify, max_amenable_type, qform
from .cohomology import (
    Certificate,
    Overgroup,
    certify_nonextendable,
    certify_noncoboundary,
    cokernel_rank,
    h1,
    make_ba,
    make_beps,
    rank_gl2,
    rank_psl2,
    restriction_cokernel,
    w_invariant_h1_rank,
)
from .congruence import (
    certify_membership_sample,
    find_torsion,
    lift_to_sl2,
    schreier_free_basis,
    torsion_criterion,
)
from .pell import (
    automorph_step,
    brute_solve,
    cf_sqrt,
    pell4,
    pell_minus,
    pell_plus,
    solve_norm_equation,
)
from .polyrep import GEN_T, Mat2, alt_diagonal_sum, eta, rep_trace
from .presentations import Embedding, builtin


class Report:
    """Accumulates results and named checks for one command run."""

    def __init__(self, command, params):
        self.command = command
        self.params = dict(params)
        self.results = {}
        self.checks = []
        self.started = time.time()

    def record(self, name, value):
        self.results[name] = value

    def check(self, name, expected, actual):
        ok = expected == actual
        self.checks.append({"name": name, "expected": expected,
                            "actual": actual, "pass": ok})
        return ok

    def merge(self, check_dicts):
        for c in check_dicts:
            self.checks.append(dict(c))

    def ok(self):
        return all(c["pass"] for c in self.checks)

    def to_payload(self):
        return _plain({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "checks": self.checks,
            "version": __version__,
            "elapsed": round(time.time() - self.started, 3),
        })


def _plain(value):
    """Recursively turn tuples and sets into JSON-friendly lists."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [_plain(v) for v in sorted(value)]
    return value


def _invariants_payload(inv):
    return {"free_rank": inv.free_rank, "torsion": list(inv.torsion)}


class UsageError(Exception):
    pass


def _emit(report, args):
    fmt = getattr(args, "format", "text")
    out = getattr(args, "out", None)
    payload = report.to_payload()
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        lines = ["name,expected,actual,pass"]
        for c in payload["checks"]:
            lines.append("%s,%s,%s,%s" % (
                _csv_cell(c["name"]), _csv_cell(c["expected"]),
                _csv_cell(c["actual"]), "pass" if c["pass"] else "FAIL"))
        text = "\n".join(lines) + "\n"
    else:
        lines = ["%s (modh1 %s)" % (payload["command"], payload["version"])]
        for key in sorted(payload["params"]):
            lines.append("  param %s = %s" % (key, payload["params"][key]))
        for key in sorted(payload["results"]):
            lines.append("  %s: %s" % (key, payload["results"][key]))
        for c in payload["checks"]:
            lines.append("  [%s] %s (expected %s, got %s)" % (
                "pass" if c["pass"] else "FAIL", c["name"],
                c["expected"], c["actual"]))
        lines.append("  %s" % ("all checks pass" if report.ok()
                               else "CHECKS FAILED"))
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value):
    text = str(value)
    if "," in text or '"' in text:
        return '"%s"' % text.replace('"', '""')
    return text


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError("range must look like 2..40, got %r" % text)
    return int(lo), int(hi)


def _job_count(args):
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    env = os.environ.get("MODH1_JOBS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("MODH1_JOBS must be an integer, got %r" % env)
    return 1


def _pmap(fn, items, jobs):
    """Map preserving item order; fans out to processes when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _primes_up_to(limit):
    out = []
    for p in range(2, limit + 1):
        if all(p % q for q in range(2, isqrt(p) + 1)):
            out.append(p)
    return out


def _nonsquares_up_to(limit):
    return [D for D in range(2, limit + 1) if isqrt(D) ** 2 != D]


def hyperbolic_corpus(count, seed=20):
    """Deterministic corpus of hyperbolic matrices with |trace| <= 20."""
    rng = random.Random(seed)
    mats = []
    while len(mats) < count:
        a = rng.randint(-10, 10)
        d = rng.randint(-10, 10)
        if not 2 < abs(a + d) <= 20:
            continue
        prod = a * d - 1
        if prod == 0:
            continue
        divisors = [k for k in range(1, abs(prod) + 1) if prod % k == 0]
        b = rng.choice(divisors) * rng.choice((1, -1))
        mats.append(Mat2(a, b, prod // b, d))
    return mats


# ---------------------------------------------------------------- h1 --


def cmd_h1(args):
    report = Report("h1", {"group": args.group, "n": args.n})
    if args.n < 1:
        raise UsageError("n must be at least 1")
    group = args.group.strip()
    if group.startswith("gamma0bar:"):
        p = int(group.split(":", 1)[1])
        basis = schreier_free_basis(p)
        lift = lift_to_sl2(basis)
        res = h1(lift.presentation, lift.assignment.rep(args.n))
        k = len(basis.words)
        report.record("cosets", p + 1)
        report.record("basis_rank", k)
        report.record("invariants", _invariants_payload(res.invariants))
        report.check("free rank is (k - 1)(n + 1)",
                     (k - 1) * (args.n + 1), res.invariants.free_rank)
        return report
    pres, assignment = builtin(group)
    res = h1(pres, assignment.rep(args.n))
    inv = res.invariants
    report.record("invariants", _invariants_payload(inv))
    report.record("trivial", inv.is_trivial())
    if args.n % 2 == 0 and group in ("psl2", "gl2"):
        formula = rank_psl2(args.n) if group == "psl2" else rank_gl2(args.n)
        matches = report.check("matches rank formula", formula, inv.free_rank)
        report.record("matches_formula", matches)
    return report


# ------------------------------------------------------------ verify --


def _formulas_case(n):
    checks = []
    pres, assignment = builtin("psl2")
    res_psl = h1(pres, assignment.rep(n))
    checks.append(("psl2 rank formula n=%d" % n,
                   rank_psl2(n), res_psl.invariants.free_rank))
    pres, assignment = builtin("sl2")
    res_sl = h1(pres, assignment.rep(n))
    checks.append(("sl2 invariants match psl2 n=%d" % n,
                   _invariants_payload(res_psl.invariants),
                   _invariants_payload(res_sl.invariants)))
    pres, assignment = builtin("gl2")
    res_gl = h1(pres, assignment.rep(n))
    checks.append(("gl2 rank formula n=%d" % n,
                   rank_gl2(n), res_gl.invariants.free_rank))
    checks.append(("gl2 swap-invariant route n=%d" % n,
                   rank_gl2(n), w_invariant_h1_rank(n)))
    return checks


def _identity_case(n):
    return [
        ("order 6 generator trace n=%d" % n, eta(n), rep_trace(GEN_T, n)),
        ("alternating diagonal sum n=%d" % n, eta(n), alt_diagonal_sum(n)),
    ]


def _congruence_case(p):
    checks = [("torsion criterion p=%d" % p,
               p % 12 == 11, torsion_criterion(p))]
    if torsion_criterion(p):
        basis = schreier_free_basis(p)
        checks.append(("free basis rank p=%d" % p,
                       1 + (p + 1) // 6, len(basis.words)))
    else:
        witness = find_torsion(p)
        valid = (witness is not None and witness.det() == 1
                 and witness.c % p == 0
                 and ((witness * witness).proj_eq(Mat2.identity())
                      or (witness * witness * witness).proj_eq(
                          Mat2.identity())))
        checks.append(("torsion witness p=%d" % p, True, valid))
    return checks


def _pell_case(D):
    checks = []
    expansion = cf_sqrt(D)
    plus = pell_plus(D)
    small = [s for s in brute_solve(D, 1, plus.x + 1) if s[0] > 0 and s[1] > 0]
    checks.append(("fundamental minimal D=%d" % D,
                   (plus.x, plus.y), min(small)))
    minus = pell_minus(D)
    checks.append(("negative solvability D=%d" % D,
                   len(expansion.period) % 2 == 1, minus is not None))
    if minus is not None:
        small = [s for s in brute_solve(D, -1, plus.x + 1)
                 if s[0] > 0 and s[1] > 0]
        checks.append(("negative minimal D=%d" % D,
                       (minus.x, minus.y), min(small)))
    four = pell4(D)
    shrunk = any(isqrt(4 + D * s * s) ** 2 == 4 + D * s * s
                 for s in range(1, four.y))
    checks.append(("four-normalized fundamental minimal D=%d" % D,
                   (True, False),
                   (four.x ** 2 - D * four.y ** 2 == 4, shrunk)))
    cover = 400
    for N in (1, -1, 4, -4):
        reps, aut = solve_norm_equation(D, N, cover=cover)
        repset = set(reps)
        complete = True
        for sol in brute_solve(D, N, cover):
            if sol in repset:
                continue
            found = False
            for inverse in (False, True):
                cur = sol
                for _ in range(5):
                    cur = automorph_step(D, aut, cur, inverse=inverse)
                    if cur in repset:
                        found = True
                        break
                if found:
                    break
            if not found:
                complete = False
                break
        checks.append(("orbit completeness D=%d N=%d" % (D, N),
                       True, complete))
    return checks


def _amenable_case(entries):
    g = Mat2(*entries)
    witness = None
    try:
        witness = max_amenable_type(g).witness
    except ValueError:
        return {"entries": entries, "error": "not hyperbolic"}
    brute = _brute_witness(g)
    out = {"entries": entries,
           "decided": witness is not None,
           "brute": brute is not None,
           "valid": True,
           "small": witness is not None
                    and max(abs(t) for t in witness.entries()) <= 50}
    if witness is not None:
        out["valid"] = (witness.trace() == 0 and witness.det() == 1
                        and witness * g == g.inv() * witness)
    return out


def _brute_witness(g, bound=50):
    a, b, c, d = g.entries()
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            num = (d - a) * x - c * y
            if num % b != 0:
                continue
            z = num // b
            if x * x + y * z == -1:
                return Mat2(x, y, z, -x)
    return None


def _amenable_trio_checks(report):
    cyclic = max_amenable_type(Mat2(3, 1, 2, 1))
    report.check("hyperbolic cyclic example type",
                 "Z x C2", cyclic.sl2_type)
    dihedral = max_amenable_type(Mat2(2, 1, 1, 1))
    report.check("hyperbolic dihedral example type",
                 "Z x| C4", dihedral.sl2_type)
    w = dihedral.witness
    report.check("dihedral witness valid", True,
                 w is not None and w.trace() == 0 and w.det() == 1
                 and w * Mat2(2, 1, 1, 1) == Mat2(2, 1, 1, 1).inv() * w)
    parabolic = max_amenable_type(Mat2(1, 3, 0, 1))
    report.check("parabolic example generator",
                 "1,1;0,1", parabolic.generator.format())


def cmd_verify(args):
    jobs = _job_count(args)
    report = Report("verify", {"suite": args.suite, "jobs": jobs})
    if args.suite == "formulas":
        lo, hi = _parse_range(args.n_even)
        report.params["n_even"] = args.n_even
        values = [n for n in range(lo, hi + 1) if n % 2 == 0]
        for chunk in _pmap(_formulas_case, values, jobs):
            for name, expected, actual in chunk:
                report.check(name, expected, actual)
    elif args.suite == "identity":
        report.params["n_max"] = args.n_max
        values = [n for n in range(2, args.n_max + 1) if n % 2 == 0]
        for chunk in _pmap(_identity_case, values, jobs):
            for name, expected, actual in chunk:
                report.check(name, expected, actual)
    elif args.suite == "congruence":
        report.params["p_max"] = args.p_max
        values = [p for p in _primes_up_to(args.p_max) if p > 3]
        for chunk in _pmap(_congruence_case, values, jobs):
            for name, expected, actual in chunk:
                report.check(name, expected, actual)
    elif args.suite == "pell":
        report.params["d_max"] = args.d_max
        values = _nonsquares_up_to(args.d_max)
        for chunk in _pmap(_pell_case, values, jobs):
            for name, expected, actual in chunk:
                report.check(name, expected, actual)
    elif args.suite == "amenable":
        report.params["count"] = args.count
        _amenable_trio_checks(report)
        corpus = [g.entries() for g in hyperbolic_corpus(args.count)]
        rows = _pmap(_amenable_case, corpus, jobs)
        bad_valid = [r["entries"] for r in rows if not r.get("valid", False)]
        missed = [r["entries"] for r in rows
                  if r.get("brute") and not r.get("decided")]
        invisible = [r["entries"] for r in rows
                     if r.get("small") and not r.get("brute")]
        report.record("corpus_size", len(rows))
        report.check("all returned witnesses valid", [], bad_valid)
        report.check("brute-confirmed witnesses all found", [], missed)
        report.check("small witnesses visible to brute force", [], invisible)
    else:
        raise UsageError("unknown suite %r" % args.suite)
    report.record("checks_run", len(report.checks))
    return report


# ----------------------------------------------------------- witness --


def _gl2_overgroup():
    pres, assignment = builtin("gl2")
    emb = Embedding(pres, [pres.parse_word("s"), pres.parse_word("t")])
    return Overgroup("gl2", pres, assignment, emb)


def _witness_free_lift(args, p, report):
    if args.n is None or args.n < 1 or args.n % 2 == 0:
        raise UsageError("free-lift needs an odd --n")
    basis = schreier_free_basis(p)
    lift = lift_to_sl2(basis)
    res = h1(lift.presentation, lift.assignment.rep(args.n))
    report.record("basis_rank", len(basis.words))
    report.record("h1_free_rank", res.invariants.free_rank)
    for cocycle in res.free_basis:
        try:
            cert = certify_nonextendable(lift.presentation, lift.assignment,
                                         args.n, cocycle, lift.overgroups)
        except ValueError:
            continue
        refuted = sorted(e["name"] for e in cert.payload["overgroups"])
        report.record("overgroups", refuted)
        report.check("refuted overgroups", ["K x <eps>", "sl2"], refuted)
        return cert
    report.check("some basis class is nonextendable", True, False)
    return None


def _witness_ba(args, rest, report):
    n_text, _, a_text = rest.partition(",")
    n, a = int(n_text), int(a_text)
    cocycle = make_ba(n, a)
    sub_pres, sub_assign = builtin("sl2")
    over = _gl2_overgroup()
    cert = certify_nonextendable(sub_pres, sub_assign, n, cocycle, [over])
    cok = restriction_cokernel(over.presentation, over.assignment.rep(n),
                               sub_pres, sub_assign.rep(n), over.embedding)
    report.record("cokernel", _invariants_payload(cok))
    report.check("cokernel free rank formula",
                 cokernel_rank(n), cok.free_rank)
    return cert


def _witness_beps(args, rest, report):
    n_text, _, bits = rest.partition(",")
    n = int(n_text)
    if not bits or any(ch not in "01" for ch in bits):
        raise UsageError("beps bits must be a nonempty 0/1 string")
    eps = [int(ch) for ch in bits]
    if not any(eps):
        raise UsageError("the zero vector gives a coboundary")
    cocycle = make_beps(n, eps)
    pres, assignment = builtin("gl2")
    cert = certify_noncoboundary(pres, assignment, n, cocycle)
    report.record("epsilon", eps)
    return cert


def cmd_witness(args):
    report = Report("witness", {"kind": args.kind, "n": args.n})
    base, sep, rest = args.kind.partition(":")
    if not sep:
        raise UsageError("kind must look like free-lift:p, ba:n,a, "
                         "beps:n,bits, or gammaN:N")
    if base == "free-lift":
        cert = _witness_free_lift(args, int(rest), report)
    elif base == "ba":
        cert = _witness_ba(args, rest, report)
    elif base == "beps":
        cert = _witness_beps(args, rest, report)
    elif base == "gammaN":
        try:
            cert = certify_membership_sample(
                int(rest), seed=args.seed, count=args.count,
                max_length=args.max_length)
        except ValueError as e:
            report.check("membership sample clean", "no mismatches", str(e))
            return report, None
        report.record("sampled_words", cert.payload["count"])
        report.check("membership mismatches", 0, cert.payload["mismatches"])
    else:
        raise UsageError("unknown witness kind %r" % base)
    if cert is None:
        return report, None
    path = args.cert
    if not path:
        path = "modh1-%s.cert.json" % args.kind.replace(":", "-").replace(
            ",", "-")
        if args.n is not None:
            path = path.replace(".cert.json", "-n%d.cert.json" % args.n)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(cert.to_json() + "\n")
    with open(path, "r", encoding="utf-8") as fh:
        stored = Certificate.from_json(fh.read())
    report.record("certificate", path)
    report.record("kind", stored.payload["kind"])
    report.merge(stored.verify())
    return report, path


# ---------------------------------------------------------- classify --


def cmd_classify(args):
    try:
        g = Mat2.parse(args.matrix)
    except (ValueError, IndexError):
        raise UsageError("matrix must look like a,b;c,d")
    if g.det() != 1:
        raise UsageError("determinant must be 1, got %d" % g.det())
    report = Report("classify", {"matrix": g.format()})
    cls = classify(g)
    report.record("class", cls.tag)
    report.record("trace", g.trace())
    if cls.order is not None:
        report.record("order", cls.order)
        report.check("order is the matrix order", True,
                     g ** cls.order == Mat2.identity()
                     and all(g ** k != Mat2.identity()
                             for k in range(1, cls.order)))
    if cls.tag == "central":
        report.record("note", "central; contained in every maximal "
                              "amenable subgroup")
        return report
    amen = max_amenable_type(g)
    report.record("psl_type", amen.psl_type)
    report.record("sl2_type", amen.sl2_type)
    if cls.tag == "hyperbolic":
        form = qform(g)
        report.record("qform", form.coefficients())
        report.record("discriminant", form.discriminant)
    if amen.witness is not None:
        w = amen.witness
        report.record("witness", w.format())
        report.check("witness conjugates to the inverse", True,
                     w.trace() == 0 and w.det() == 1
                     and w * g == g.inv() * w)
    if amen.generator is not None:
        gen = amen.generator
        report.record("generator", gen.format())
        report.check("generator commutes with input", True,
                     gen * g == g * gen)
    return report


# -------------------------------------------------------------- pell --


def cmd_pell(args):
    if args.d < 2 or isqrt(args.d) ** 2 == args.d:
        raise UsageError("--d must be a nonsquare integer above 1")
    report = Report("pell", {"d": args.d})
    expansion = cf_sqrt(args.d)
    report.record("cf_integer_part", expansion.a0)
    report.record("cf_period", expansion.period)
    plus = pell_plus(args.d)
    report.record("fundamental", plus.pair())
    report.check("fundamental solves norm 1", 1,
                 plus.x ** 2 - args.d * plus.y ** 2)
    if args.neg:
        minus = pell_minus(args.d)
        report.record("negative", None if minus is None else minus.pair())
        if minus is not None:
            report.check("negative solves norm -1", -1,
                         minus.x ** 2 - args.d * minus.y ** 2)
    if args.four:
        four = pell4(args.d)
        report.record("four_normalized", four.pair())
        report.check("four-normalized solves norm 4", 4,
                     four.x ** 2 - args.d * four.y ** 2)
    if args.solve is not None:
        if args.solve == 0:
            raise UsageError("--solve must be nonzero")
        reps, aut = solve_norm_equation(args.d, args.solve)
        report.record("representatives", reps)
        report.record("automorph", aut.pair())
        report.check("representatives solve the equation", [],
                     [r for r in reps
                      if r[0] ** 2 - args.d * r[1] ** 2 != args.solve])
    return report


# ------------------------------------------------- verify-certificate --


def cmd_verify_certificate(args):
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            cert = Certificate.from_json(fh.read())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError("cannot read certificate: %s" % e)
    report = Report("verify-certificate", {"file": args.file})
    try:
        checks = cert.verify()
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError("malformed certificate payload: %s" % e)
    report.record("kind", cert.payload.get("kind"))
    report.merge(checks)
    return report


# -------------------------------------------------------------- main --


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="modh1",
        description="Exact first cohomology of modular groups acting on "
                    "integral binary forms.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
        p.add_argument("--out", help="write the report to this file")

    p = sub.add_parser("h1", help="invariants of H^1 for a named group")
    p.add_argument("--group", required=True,
                   help="psl2, sl2, pgl2, gl2, free:k, or gamma0bar:p")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("verify", help="run a formula or oracle sweep")
    p.add_argument("--suite", required=True,
                   choices=("formulas", "identity", "congruence", "pell",
                            "amenable"))
    p.add_argument("--n-even", default="2..40",
                   help="even degree range for the formulas suite")
    p.add_argument("--n-max", type=int, default=200,
                   help="degree bound for the identity suite")
    p.add_argument("--p-max", type=int, default=200,
                   help="prime bound for the congruence suite")
    p.add_argument("--d-max", type=int, default=50,
                   help="discriminant bound for the pell suite")
    p.add_argument("--count", type=int, default=200,
                   help="corpus size for the amenable suite")
    p.add_argument("--jobs", type=int,
                   help="worker processes (default MODH1_JOBS or 1)")
    common(p)

    p = sub.add_parser("witness", help="build and self-verify a certificate")
    p.add_argument("--kind", required=True,
                   help="free-lift:p, ba:n,a, beps:n,bits, or gammaN:N")
    p.add_argument("--n", type=int, help="degree (free-lift only)")
    p.add_argument("--cert", help="certificate output path")
    p.add_argument("--seed", type=int, default=0,
                   help="sample seed (gammaN only)")
    p.add_argument("--count", type=int, default=10000,
                   help="sample size (gammaN only)")
    p.add_argument("--max-length", type=int, default=20,
                   help="sample word length bound (gammaN only)")
    common(p)

    p = sub.add_parser("classify", help="element and maximal amenable type")
    p.add_argument("--matrix", required=True,
                   help="entries as a,b;c,d (use --matrix=-1,0;0,-1 "
                        "when the first entry is negative)")
    p.add_argument("--json", action="store_true",
                   help="shorthand for --format json")
    common(p)

    p = sub.add_parser("pell", help="Pell equation data for one D")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--neg", action="store_true",
                   help="include the norm -1 equation")
    p.add_argument("--four", action="store_true",
                   help="include the norm 4 equation")
    p.add_argument("--solve", type=int,
                   help="solve u^2 - D y^2 = N for this N")
    common(p)

    p = sub.add_parser("verify-certificate",
                       help="re-check a stored certificate")
    p.add_argument("file")
    common(p)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "json", False):
        args.format = "json"
    if args.command == "pell" and "--format" not in (argv or sys.argv):
        args.format = "json"
    try:
        if args.command == "h1":
            report = cmd_h1(args)
        elif args.command == "verify":
            report = cmd_verify(args)
        elif args.command == "witness":
            report, _ = cmd_witness(args)
        elif args.command == "classify":
            report = cmd_classify(args)
        elif args.command == "pell":
            report = cmd_pell(args)
        else:
            report = cmd_verify_certificate(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    _emit(report, args)
    return 0 if report.ok() else 1


if __name__ == "__main__":
    sys.exit(main())
