"""Command-line interface: ``python -m minimalcodes <command> ...``.

Exit codes: 0 success or feasible, 1 usage or precondition error,
2 internal verification failure, 3 infeasible bounds verdict.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bounds as B
from .code import DEFAULT_MAX_ENUM, EnumerationLimitError, LinearCode, is_minimal_code, is_nondegenerate, \
    is_projective, pless_second_moment_check, weight_profile
from .constructions import PreconditionError, VerificationError, build
from .formats import MatrixFile, MatrixFileError, dumps_report, make_report, mtable_csv
from .gf import FieldError
from .supportpoly import alon_furedi_bound, canonical_form, nonzero_set, support_cover_witnesses, \
    support_poly_of_codeword

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_INFEASIBLE = 0, 1, 2, 3

CONSTRUCTION_NOTES = {
    "line": "a line of PG(1,q) is the whole space: the [q+1,2] code",
    "tetrahedron": "union of the lines through k points in general position",
    "rnt": "tangent lines to the rational normal curve at 2k-3 points",
    "even-lines": "field reduction of a tetrahedron in PG(1,q^(k/2)) into lines",
    "baer": "field reduction into PG(2,q), replacing each plane by a Baer subplane pair",
    "lift": "cone over the inner set from a new point, along k spanning points",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="minimalcodes", description="Minimal codes and cutting blocking sets.")
    ap.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM,
                    help="refuse to enumerate more codeword classes than this")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build and verify a cutting blocking set")
    c.add_argument("name", help="tetrahedron, rnt, even-lines, baer, line, best or lift:<inner>")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out", help="write the generator matrix file here")
    c.add_argument("--points", help="write the point set file here")
    c.add_argument("--report", help="write the JSON report here")
    c.add_argument("--json", action="store_true", help="print the JSON report")
    c.add_argument("--no-verify", action="store_true", help="skip the cutting and distance checks")

    a = sub.add_parser("analyze", help="analyze a generator matrix file")
    a.add_argument("file")
    a.add_argument("--support-poly", action="store_true", help="reduce the support polynomial of a codeword")
    a.add_argument("--cover-witnesses", action="store_true",
                   help="find covering witnesses for each support position of a codeword")
    a.add_argument("--codeword", default=None,
                   help="comma-separated message u for the codeword uG (default: first row)")
    a.add_argument("--json", action="store_true")

    b = sub.add_parser("bounds", help="evaluate every bound for minimal [n,k]_q codes")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--n", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--w", type=int)
    b.add_argument("--s", type=int)
    b.add_argument("--json", action="store_true")

    m = sub.add_parser("mtable", help="lower and upper bounds on m(k,q)")
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--kmax", type=int, required=True)
    m.add_argument("--csv", action="store_true")
    m.add_argument("--json", action="store_true")
    return ap


def _out(text: str):
    sys.stdout.write(text)


# -- construct -----------------------------------------------------------------


def cmd_construct(args) -> int:
    r = build(args.name, args.q, args.k, verify=not args.no_verify,
              max_enum=args.max_enum, threads=args.threads)
    mf = MatrixFile.from_matrix(r.code.G)
    if args.out:
        mf.write(args.out)
    if args.points:
        with open(args.points, "w") as fh:
            fh.write(r.pointset.to_text())
    base = r.name.split(":")[0]
    report = make_report(
        "construction",
        {"name": args.name, "q": args.q, "k": args.k},
        {
            "construction": r.name,
            "n": r.n,
            "k": r.k,
            "expected_n": r.expected_n,
            "expected_d": r.expected_d,
            "d_is_exact": r.d_is_exact,
            "verified_minimal": r.verified_minimal,
            "verified_d": r.verified_d,
            "distinct_points": r.pointset.distinct,
            "blocks": len(r.blocks),
        },
        [CONSTRUCTION_NOTES.get(base, base)],
    )
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps_report(report))
    if args.json:
        _out(dumps_report(report))
    else:
        d = r.verified_d if r.verified_d is not None else "?"
        status = "verified minimal" if r.verified_minimal else "not verified"
        _out(f"{r.name}: [{r.n},{r.k},{d}]_{r.q} {status}\n")
        if not args.out:
            _out(mf.emit())
    return EXIT_OK


# -- analyze -------------------------------------------------------------------


def _message(arg: str | None, k: int) -> np.ndarray:
    if arg is None:
        u = np.zeros(k, dtype=np.int64)
        u[0] = 1
        return u
    u = np.array([int(x) for x in arg.split(",")], dtype=np.int64)
    if u.shape[0] != k:
        raise PreconditionError(f"--codeword needs {k} entries")
    return u


def cmd_analyze(args) -> int:
    mf = MatrixFile.read(args.file)
    code = LinearCode(mf.matrix())
    prof = weight_profile(code, max_enum=args.max_enum, threads=args.threads)
    mini = is_minimal_code(code, max_enum=args.max_enum, threads=args.threads)
    pless = pless_second_moment_check(code, max_enum=args.max_enum)
    res = {
        "n": code.n, "k": code.k, "q": code.q,
        "d": prof.d, "w_max": prof.w_max, "s": prof.s,
        "mean": prof.mean, "variance": prof.variance,
        "distribution": prof.distribution,
        "nondegenerate": is_nondegenerate(code),
        "projective": is_projective(code),
        "minimal": mini.minimal,
        "witness": None if mini.minimal else {
            "smaller_message": mini.witness_messages[0], "smaller_codeword": mini.witness[0],
            "message": mini.witness_messages[1], "codeword": mini.witness[1],
        },
        "pless": {"lhs": pless.lhs, "rhs": pless.rhs, "holds": pless.holds,
                  "dual_weight1": pless.W1_dual, "dual_weight2": pless.W2_dual,
                  "projective_bound": pless.projective_bound},
    }
    cites = ["minimal iff the columns outside each codeword support have rank k-1",
             "second Pless power moment with dual weights 1 and 2 counted from the columns"]
    failed = not pless.holds
    u = _message(args.codeword, code.k)
    if args.support_poly:
        p = support_poly_of_codeword(code, u)
        cf = canonical_form(code, u)
        U = nonzero_set(p, max_enum=args.max_enum) if not p.is_zero() else np.zeros((0, code.k))
        res["support_poly"] = {
            "message": u, "reduced": str(p), "degree": None if p.is_zero() else p.degree,
            "nonzeros": len(U),
            "alon_furedi": None if p.is_zero() else alon_furedi_bound(p, [code.q] * code.k),
            "canonical_agrees": cf.agrees,
        }
        cites.append("support polynomial reduced modulo x_i^q - x_i; Alon-Furedi bound on its nonzeros")
        if mini.minimal and not cf.agrees:
            failed = True
    if args.cover_witnesses:
        rep = support_cover_witnesses(code, u, max_enum=args.max_enum)
        res["cover_witnesses"] = {
            "message": u,
            "witnesses": [{"j": j + 1, "message": w.message, "codeword": w.codeword,
                           "weight": int(np.count_nonzero(w.codeword)),
                           "subset": [i + 1 for i in w.subset]} for j, w in sorted(rep.witnesses.items())],
            "violations": [j + 1 for j in rep.violations],
        }
        cites.append("each support position of a maximal codeword is covered by another codeword "
                     "on (q-1)(k-1) further support positions")
        if mini.minimal and not rep.ok:
            failed = True
    report = make_report("analysis", {"file": os.path.basename(args.file), "codeword": u}, res, cites)
    if args.json:
        _out(dumps_report(report))
    else:
        _out(f"[{code.n},{code.k},{prof.d}]_{code.q}  w_max={prof.w_max}  s={prof.s}\n")
        _out(f"mean={prof.mean}  variance={prof.variance}\n")
        _out(f"nondegenerate={res['nondegenerate']}  projective={res['projective']}\n")
        _out(f"minimal={mini.minimal}\n")
        if not mini.minimal:
            sm, big = mini.witness
            _out(f"  witness: supp({sm.tolist()}) is strictly inside supp({big.tolist()})\n")
        _out(f"pless: lhs={pless.lhs} rhs={pless.rhs} holds={pless.holds}\n")
        if args.support_poly:
            sp = res["support_poly"]
            _out(f"support polynomial: {sp['reduced']}\n")
            _out(f"  nonzeros={sp['nonzeros']}  alon_furedi={sp['alon_furedi']}  "
                 f"canonical_agrees={sp['canonical_agrees']}\n")
        if args.cover_witnesses:
            for w in res["cover_witnesses"]["witnesses"]:
                _out(f"  j={w['j']}: weight {w['weight']} codeword {w['codeword'].tolist()}\n")
            if res["cover_witnesses"]["violations"]:
                _out(f"  uncovered positions: {res['cover_witnesses']['violations']}\n")
    return EXIT_VERIFY if failed else EXIT_OK


# -- bounds and m-table ----------------------------------------------------------


def cmd_bounds(args) -> int:
    rep = B.feasibility(args.q, args.k, n=args.n, d=args.d, w=args.w, s=args.s)
    witnesses = [f"{v.name}: {v.note}" if v.note else f"{v.name}: value {v.value}" for v in rep.failed]
    lo, hi = rep.n_window()
    dlo, dhi = rep.d_range()
    results = {
        "overall": rep.overall,
        "feasible": rep.feasible,
        "n_window": [lo, hi],
        "d_range": [dlo, dhi],
        "witnesses": witnesses,
        "verdicts": [{"name": v.name, "kind": v.kind, "value": v.value, "satisfied": v.satisfied,
                      "note": v.note} for v in rep.verdicts],
    }
    params = {k: v for k, v in rep.params.items()}
    report = make_report("feasibility", params, results, {v.name: v.citation for v in rep.verdicts})
    if args.json:
        _out(dumps_report(report))
    else:
        for v in rep.verdicts:
            mark = {True: "ok", False: "FAIL", None: "--"}[v.satisfied]
            note = f"  ({v.note})" if v.note else ""
            _out(f"{mark:4} {v.name:26} {v.kind:10} {v.value}{note}\n")
        _out(f"n-window [{lo},{hi}]\n")
        if dlo is not None or dhi is not None:
            _out(f"d-range [{dlo},{dhi}]\n")
        _out(f"verdict: {rep.overall}\n")
        for w in witnesses:
            _out(f"witness: {w}\n")
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def cmd_mtable(args) -> int:
    rows = B.m_table(args.q, args.kmax)
    if args.csv:
        _out(mtable_csv(rows))
        return EXIT_OK
    if args.json:
        report = make_report(
            "mtable", {"q": args.q, "kmax": args.kmax},
            {"rows": [{"k": e.k, "lower": e.lower, "lower_source": e.lower_source, "upper": e.upper,
                       "upper_source": e.upper_source, "exact": e.exact, "literature": e.literature,
                       "nonconstructive": round(e.nonconstructive, 6)} for e in rows]},
            ["lower bounds: length bounds and the statistical scan",
             "upper bounds: explicit constructions combined by field reduction and lifting"],
        )
        _out(dumps_report(report))
        return EXIT_OK
    for e in rows:
        ex = f"  exact {e.exact}" if e.exact is not None else ""
        _out(f"k={e.k}: {e.lower} ({e.lower_source}) <= m <= {e.upper} ({e.upper_source}){ex}\n")
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "analyze": cmd_analyze, "bounds": cmd_bounds, "mtable": cmd_mtable}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (PreconditionError, EnumerationLimitError, MatrixFileError, FieldError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
