"""Command-line front end: ``plane3jack verify | jack | tables``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 a computation left the W-algebra's generator range.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .walgebra import OutOfAlgebra

SCHEMA_VERSION = 1
MAX_LEVEL = 6

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OUT_OF_ALGEBRA = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def content_hash(config: dict) -> str:
    """git-style blob hash of the canonical config plus the package version."""
    body = json.dumps({"config": config, "version": __version__}, sort_keys=True).encode()
    return hashlib.sha1(b"blob %d\0" % len(body) + body).hexdigest()


def _envelope(config: dict, results) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "input_hash": content_hash(config),
        "results": results,
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, name: str, text: str):
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return cfg


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .yangian_rep import boson_modes, build_gauge_rep, verify_relations

    if not 0 <= args.level <= MAX_LEVEL:
        raise UsageError(f"--level must lie in 0..{MAX_LEVEL}")
    if args.level == 0:
        relations = []
    else:
        rep = build_gauge_rep(args.level, j_max=args.jmax)
        relations = verify_relations(rep, args.jmax)
    ok = all(r["status"] != "fail" for r in relations)
    results = {"relations": relations}
    if args.gamma_fit:
        from .walgebra import gamma_fit

        rep = build_gauge_rep(max(args.level, 5), j_max=2)
        bm = boson_modes(rep)
        scale = Fraction(args.c0_scale)
        fits = [gamma_fit(bm, j, k, c0_scale=scale) for j, k in ((1, 1), (1, 2), (2, 2))]
        results["gamma_fit"] = fits
        ok = ok and all(f["constant"] for f in fits)
    results["passed"] = ok
    if args.format == "json":
        _emit(args, "verify.json", _dumps(_envelope(_config(args), results)))
    else:
        lines = [f"{r['relation_id']}{tuple(r['params'])}: {r['status']}" for r in relations]
        for f in results.get("gamma_fit", []):
            lines.append(f"gamma({f['j']},{f['k']}) = {f['gamma']} constant={f['constant']}")
        lines.append("PASS" if ok else "FAIL")
        _emit(args, "verify.txt", "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# jack
# --------------------------------------------------------------------------


def _latex_document(table, shapes) -> str:
    from .fockpoly import rf_latex

    out = [
        r"\documentclass{article}",
        r"\usepackage{amsmath}",
        r"\usepackage[margin=1.5cm]{geometry}",
        r"\begin{document}",
    ]
    for pp in shapes:
        label = str(pp).replace("/", r"\,/\,")
        out.append(r"\paragraph{$\pi = " + label + "$}")
        out.append(r"\begin{align*}")
        P = table.entries[pp]
        terms = [rf"\left({rf_latex(P.terms[m])}\right) {m.to_latex()}" for m in sorted(P.terms)]
        out.append("\\tilde J &= " + " \\\\\n&\\quad + ".join(terms))
        out.append(r"\end{align*}")
    out.append(r"\end{document}")
    return "\n".join(out) + "\n"


def cmd_jack(args) -> int:
    from .jack_solver import Underdetermined, build_table, is_eigen, s3_equivariance_failures, verify_against_printed

    cap = 5 if args.stretch_level_5 else 4
    if not 0 <= args.level <= cap:
        raise UsageError(f"--level must lie in 0..{cap} (level 5 needs --stretch-level-5)")
    try:
        table = build_table(args.level)
    except Underdetermined as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    shapes = sorted((pp for pp in table.entries if len(pp) > 0), key=lambda p: (len(p), p.sort_key()))
    checks = [{"name": n, "passed": ok, "detail": d} for n, ok, d in verify_against_printed(table)]
    eigen = {str(pp): is_eigen(table, pp) for pp in shapes}
    s3 = s3_equivariance_failures(table)
    ok = all(c["passed"] for c in checks) and all(eigen.values()) and not s3
    if args.format == "json":
        results = table.to_json()
        results["checks"] = checks
        results["eigen"] = eigen
        results["s3_equivariant"] = not s3
        results["passed"] = ok
        _emit(args, "jack.json", _dumps(_envelope(_config(args), results)))
    elif args.format == "latex":
        _emit(args, "jack.tex", _latex_document(table, shapes))
    else:
        lines = [f"J[{pp}] ({table.provenance[pp]}) = {table.entries[pp]}" for pp in shapes]
        lines += [f"{c['name']}: {'ok' if c['passed'] else 'FAIL'}" for c in checks]
        lines.append("PASS" if ok else "FAIL")
        _emit(args, "jack.txt", "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# tables
# --------------------------------------------------------------------------


def _norm_table() -> dict:
    from .fockpoly import P_inner, column_norm, form_norm, gen
    from .walgebra import central_c

    c2 = central_c(2)
    out = {
        "<P_{2,2},P_{2,2}>": P_inner(gen(2, 2), gen(2, 2)),
        "<P_{3,2},P_{3,2}>": P_inner(gen(3, 2), gen(3, 2)),
        "c_2": c2,
    }
    for n in (1, 2, 3):
        out[f"<P_{{2,2}}^{n},P_{{2,2}}^{n}>"] = P_inner(gen(2, 2) ** n, gen(2, 2) ** n)
    for n in range(1, 5):
        out[f"column_norm({n})"] = column_norm(n)
    for j in (1, 2, 3):
        out[f"<p_{{{j},{j}}},p_{{{j},{j}}}>"] = form_norm(j, j)
    return out


def _central_table() -> dict:
    from .walgebra import central_c, central_c_kappa

    out = {}
    for j in (2, 3, 4):
        out[f"c_{j}"] = central_c(j)
        out[f"c_{j} == kappa form"] = central_c(j) == central_c_kappa(j)
    return out


def _q_table(depth: int) -> dict:
    from .fockpoly import Q

    out = {}
    for n in range(1, depth + 1):
        out[f"Q_{n}"] = Q(n)
    for n in range(1, depth):
        out[f"Q_{n},1"] = Q(n, 1)
    return out


def _oracle_table(weight: int) -> dict:
    from .jack_solver import classical_jack_oracle, partitions, schur_oracle

    out = {}
    for n in range(1, weight + 1):
        for lam in partitions(n):
            out[f"J_{lam}"] = classical_jack_oracle(lam)
            out[f"s_{lam}"] = schur_oracle(lam)
    return out


def _bracket_table(spec: str) -> dict:
    from .walgebra import WMode, commutator

    try:
        m, j, n, k = (int(v) for v in spec.split(","))
    except ValueError:
        raise UsageError("--bracket takes m,j,n,k") from None
    out = {}
    for mode, c in sorted(commutator(WMode(m, j), WMode(n, k)).items(), key=lambda t: (t[0] is not None, t[0] or ())):
        out["central" if mode is None else repr(mode)] = c
    return {f"[a({m},{j}),a({n},{k})]": out}


def _render(value):
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    if isinstance(value, bool):
        return value
    return value.to_json() if hasattr(value, "to_json") else str(value)


def _text(value, latex: bool) -> str:
    from .exactfield import RationalFunction
    from .fockpoly import rf_latex

    if isinstance(value, dict):
        return ", ".join(f"{k}: {_text(v, latex)}" for k, v in value.items())
    if latex and isinstance(value, RationalFunction):
        return rf_latex(value)
    if latex and hasattr(value, "to_latex"):
        return value.to_latex()
    return str(value)


def cmd_tables(args) -> int:
    if not (args.norms or args.central or args.q or args.oracle_weight or args.bracket):
        raise UsageError("choose at least one of --norms, --central, --q, --oracle-weight, --bracket")
    if args.q and not 1 <= args.depth <= 4:
        raise UsageError("--depth must lie in 1..4")
    if args.oracle_weight and not 1 <= args.oracle_weight <= 5:
        raise UsageError("--oracle-weight must lie in 1..5")
    sections = {}
    if args.norms:
        sections["norms"] = _norm_table()
    if args.central:
        sections["central"] = _central_table()
    if args.q:
        sections["q"] = _q_table(args.depth)
    if args.oracle_weight:
        sections["oracle"] = _oracle_table(args.oracle_weight)
    if args.bracket:
        sections["bracket"] = _bracket_table(args.bracket)
    if args.format == "json":
        results = {s: {k: _render(v) for k, v in t.items()} for s, t in sections.items()}
        _emit(args, "tables.json", _dumps(_envelope(_config(args), results)))
    else:
        lines = []
        for s, t in sections.items():
            lines.append(f"[{s}]")
            for k, v in t.items():
                lines.append(f"{k} = {_text(v, args.format == 'latex')}")
        _emit(args, "tables.txt", "\n".join(lines) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plane3jack", description="Affine Yangian of gl(1) and 3-Jack polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "text")):
        sp.add_argument("--format", choices=fmt, default="text")
        sp.add_argument("--out", help="directory for output files (default: stdout)")

    v = sub.add_parser("verify", help="check the Yangian relations on the truncated module")
    v.add_argument("--level", type=int, default=3)
    v.add_argument("--jmax", type=int, default=3)
    v.add_argument("--gamma-fit", action="store_true", help="fit printed W brackets against matrices")
    v.add_argument("--c0-scale", default="1", help="factor on the printed central term (a fraction)")
    common(v)
    v.set_defaults(func=cmd_verify)

    j = sub.add_parser("jack", help="build the table of 3-Jack polynomials")
    j.add_argument("--level", type=int, default=4)
    j.add_argument("--stretch-level-5", action="store_true")
    common(j, ("json", "latex", "text"))
    j.set_defaults(func=cmd_jack)

    t = sub.add_parser("tables", help="dump norms, central charges, Q-coefficients, oracles")
    t.add_argument("--norms", action="store_true")
    t.add_argument("--central", action="store_true")
    t.add_argument("--q", action="store_true")
    t.add_argument("--depth", type=int, default=3)
    t.add_argument("--oracle-weight", type=int, default=0)
    t.add_argument("--bracket", help="printed commutator [a_{m,j}, a_{n,k}] for m,j,n,k")
    common(t, ("json", "latex", "text"))
    t.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "c0_scale", None) is not None:
            Fraction(args.c0_scale)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, OutOfAlgebra):
            sys.stderr.write(f"out of algebra: {exc}\n")
            return EXIT_OUT_OF_ALGEBRA
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
