"""Command-line interface; every invocation writes one JSON (or CSV) document."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction as Q
from typing import List, Optional, Sequence

from . import cohomology as co
from .invariant import PreconditionError, classical_rho_table, rho, rho_sos
from .rootsys import RootSystem, build, coroot, dot, parse_type, positive_roots
from .sos import RankGuardError, as_sos, enumerate_msos, msos_orbit_representatives
from .suites import SUITES
from .weyl import WeylElement, conjugate_to_simple, from_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- formatting ----------------------------------------------------------

def fmt_q(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def _vec_json(v) -> list:
    return [int(x) if Q(x).denominator == 1 else fmt_q(x) for x in v]


def _weyl_json(w: WeylElement) -> list:
    return [[fmt_q(x) for x in row] for row in w.matrix]


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


# --- parsing -------------------------------------------------------------

def parse_ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_roots(text: str) -> List[tuple]:
    """Roots separated by ``;``, coordinates by ``,`` (``""`` is the empty set)."""
    text = text.strip()
    return [parse_ints(part) for part in text.split(";") if part.strip()] if text else []


def parse_rationals(text: str) -> tuple:
    try:
        return tuple(Q(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _system(label: str) -> RootSystem:
    t, n = parse_type(label)
    return build(t, n)


# --- subcommands ---------------------------------------------------------------

def cmd_rootsys_info(args) -> dict:
    R = _system(args.system)
    simple = R.simple_roots
    cartan = [[int(dot(coroot(R, a), b)) for b in simple] for a in simple]
    return {"system": R.name, "type": R.type_label, "rank": R.rank, "ambient_dim": R.ambient_dim,
            "num_roots": len(R.roots), "num_positive": len(positive_roots(R)),
            "roots": [list(a) for a in R.roots], "base": [list(a) for a in R.positivity.base],
            "simple_roots": [list(a) for a in simple],
            "simple_coroots": [_vec_json(c) for c in R.simple_coroots],
            "cartan_matrix": cartan, "positivity_functional": _vec_json(R.positivity.functional)}


def _census(R: RootSystem, cache: Optional[str], max_rank: Optional[int]) -> List[dict]:
    path = os.path.join(cache, f"msos-{R.name}.json") if cache else None
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    orbits = [o.to_json() for o in enumerate_msos(R, max_rank)]
    if path:
        os.makedirs(cache, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(orbits))
    return orbits


def cmd_msos_list(args) -> dict:
    R = _system(args.system)
    reps = msos_orbit_representatives(R.type_label, R.rank)
    out = {"system": R.name,
           "representatives": [{"roots": [list(a) for a in A], "size": len(A)} for A in reps]}
    if args.enumerate:
        orbits = _census(R, args.cache, args.max_rank)
        out["orbits"] = orbits
        out["orbit_count"] = len(orbits)
    return out


def _mu(R, pos, alpha, spec: str) -> WeylElement:
    if spec == "auto":
        return conjugate_to_simple(R, pos, alpha)
    return from_word(R, parse_ints(spec), pos.base)


def cmd_rho(args) -> dict:
    R = _system(args.system)
    A = as_sos(R, parse_roots(args.sos)) if args.sos is not None else None
    if args.alpha is None and A is None:
        raise UsageError("rho needs --alpha or --sos")
    pos = co.compatible_positivity(R, A, args.positivity) if A else R.positivity
    if args.alpha is not None:
        alpha = R.check_root(parse_ints(args.alpha))
        mu = _mu(R, pos, alpha, args.mu)
        out = rho(R, pos, mu, alpha).to_json()
        out["mu"] = _weyl_json(mu)
    else:
        mus = {a: conjugate_to_simple(R, pos, a) for a in A}
        out = rho_sos(R, pos, mus, A).to_json()
        out["mu"] = {",".join(map(str, a)): _weyl_json(m) for a, m in mus.items()}
    out["system"] = R.name
    out["positivity_functional"] = _vec_json(pos.functional)
    return out


def cmd_table(args):
    R = _system(args.system)
    rows = []
    for e in classical_rho_table(R.type_label, R.rank):
        general = rho(R, None, e.mu, e.alpha).value
        literal = e.literal_text if e.literal_text is not None else e.closed_form
        rows.append({"alpha": list(e.alpha), "mu": e.mu_label, "closed_form": list(e.closed_form.w),
                     "general": list(general.w), "match": general == e.closed_form,
                     "literal_text": list(literal.w), "literal_text_match": general == literal})
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        keys = ["alpha", "mu", "closed_form", "general", "match", "literal_text", "literal_text_match"]
        writer.writerow(keys)
        for r in rows:
            writer.writerow([" ".join(map(str, r[k])) if isinstance(r[k], list) else r[k] for k in keys])
        return buf.getvalue(), all(r["match"] for r in rows)
    ok = all(r["match"] for r in rows)
    return {"system": R.name, "basis": "simple-coroots", "entries": rows, "all_match": ok,
            "literal_discrepancies": sum(not r["literal_text_match"] for r in rows)}, ok


def cmd_verify(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    report = SUITES[args.suite]()
    return report.to_json(), report.status == "pass"


def cmd_cohomology(args) -> dict:
    R = _system(args.system)
    A = as_sos(R, parse_roots(args.sos))
    group = co.tn_quotient(R, A) if args.kind == "tn" else co.cocycle_group(R, A)
    out = group.to_json()
    out.update({"system": R.name, "sos": [list(a) for a in A], "kind": args.kind,
                "order": group.order, "basis": "simple-coroots"})
    return out


def cmd_compare(args) -> dict:
    R = _system(args.system)
    sub, A = as_sos(R, parse_roots(args.sos_sub)), as_sos(R, parse_roots(args.sos))
    s = co.EndoChar(parse_rationals(args.char))
    if len(s.s_hat) != R.rank:
        raise UsageError(f"--char needs {R.rank} entries")
    pos = co.compatible_positivity(R, A, args.positivity)
    report = co.compare_invariants(R, s, sub, A, pos=pos)
    cmp = co.comparison_quotients(R, sub, A)
    out = report.to_json()
    out.update({"system": R.name, "sos_sub": [list(a) for a in sub], "sos": [list(a) for a in A],
                "char": [fmt_q(x) for x in s.s_hat], "domain": cmp.domain.to_json(),
                "codomain": cmp.codomain.to_json(), "injective": cmp.injective,
                "positivity_functional": _vec_json(pos.functional)})
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitfact", description="Splitting invariants of split simply connected real groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rs = sub.add_parser("rootsys").add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = rs.add_parser("info")
    info.add_argument("system")
    info.set_defaults(func=cmd_rootsys_info)

    ms = sub.add_parser("msos").add_subparsers(dest="action", required=True, parser_class=_Parser)
    ls = ms.add_parser("list")
    ls.add_argument("system")
    ls.add_argument("--enumerate", action="store_true")
    ls.add_argument("--cache")
    ls.add_argument("--max-rank", type=int)
    ls.set_defaults(func=cmd_msos_list)

    r = sub.add_parser("rho")
    r.add_argument("system")
    r.add_argument("--alpha")
    r.add_argument("--mu", default="auto", help="'auto' or a comma-separated word in simple reflections")
    r.add_argument("--sos", help="roots separated by ';'")
    r.add_argument("--positivity", default="auto", choices=["auto", "standard", "adapted"])
    r.set_defaults(func=cmd_rho)

    t = sub.add_parser("table")
    t.add_argument("system")
    t.add_argument("--format", default="json", choices=["json", "csv"])
    t.set_defaults(func=cmd_table, returns_status=True)

    v = sub.add_parser("verify")
    v.add_argument("suite")
    v.set_defaults(func=cmd_verify, returns_status=True)

    ch = sub.add_parser("cohomology").add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = ch.add_parser("quotient")
    q.add_argument("system")
    q.add_argument("--sos", required=True)
    q.add_argument("--kind", default="tn", choices=["tn", "cocycle"])
    q.set_defaults(func=cmd_cohomology)

    c = sub.add_parser("compare")
    c.add_argument("system")
    c.add_argument("--sos-sub", required=True)
    c.add_argument("--sos", required=True)
    c.add_argument("--char", required=True)
    c.add_argument("--positivity", default="auto", choices=["auto", "standard", "adapted"])
    c.set_defaults(func=cmd_compare)
    return p


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        result = args.func(args)
        ok = True
        if getattr(args, "returns_status", False):
            result, ok = result
        out.write(result if isinstance(result, str) else dumps(result) + "\n")
        return EXIT_OK if ok else EXIT_FAIL
    except (AssertionError, co.InternalInvariantError) as exc:
        err.write(dumps({"error": "internal invariant breach", "detail": str(exc)}) + "\n")
        return EXIT_INTERNAL
    except (UsageError, ValueError, RankGuardError, PreconditionError) as exc:
        err.write(dumps({"error": type(exc).__name__, "detail": str(exc)}) + "\n")
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
