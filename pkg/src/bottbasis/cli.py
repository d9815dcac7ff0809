"""Command-line interface.

Exit codes: 0 ok, 2 invalid input, 3 conjecture violated (or a requested
check failed; the output is still written), 4 internal error.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import report as rep
from .acceptance import run_all
from .bott_samelson import tableau_weight
from .errors import UsageError
from .filtration import (build_context, canonical_basis, check_prevaluation, filtration_dims,
                         l_vector, resolve_m)
from .lie_data import default_word, weight_multiplicities
from .polytopes import AffineLatticeMap, convex_hull, string_compare

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INTERNAL = 0, 2, 3, 4
CHECKS = ("character", "string-compare", "prevaluation")


@dataclass(frozen=True)
class RunConfig:
    n: int
    word: Tuple[int, ...]
    lam: Optional[Tuple[int, ...]]
    mu: Optional[Tuple[int, ...]]
    format: str = "json"
    out: Optional[str] = None
    checks: Tuple[str, ...] = ()
    cache_dir: Optional[str] = None
    padding: int = 0

    def resolved(self):
        """``(word, m, lam_weight)`` after validation."""
        return resolve_m(self.n, self.word, self.lam, self.mu)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text: str) -> Tuple[Tuple[int, ...], ...]:
    return tuple(_int_list(row) for row in text.split(";"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bottbasis", description="Leaf decompositions of Bott-Samelson section spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, lam_only=False):
        sp.add_argument("--n", type=int, required=True, help="rank of SL(n)")
        sp.add_argument("--word", type=_int_list, help="word letters, e.g. 1,2,1 (default 1,2,1,3,2,1,...)")
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--lambda", dest="lam", type=_int_list,
                       help="fundamental-weight coefficients of the highest weight")
        if not lam_only:
            g.add_argument("--mu", type=_int_list, help="explicit m-vector, one entry per letter")
        sp.add_argument("--format", choices=("json", "md", "csv"), default="json")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--cache-dir", help=f"report cache directory (or ${rep.CACHE_ENV})")
        sp.add_argument("--grid-padding", dest="padding", type=int, default=0,
                        help="extra values added around each grid axis")

    b = sub.add_parser("basis", help="canonical basis and leaf decomposition")
    common(b)
    b.add_argument("--check", action="append", choices=CHECKS, default=[],
                   help="extra verification to include (repeatable)")
    common(sub.add_parser("lvectors", help="l-vector of every tableau section"))
    common(sub.add_parser("leaves", help="filtration dimensions per grid point"))
    common(sub.add_parser("character-check", help="leaf weights against Freudenthal"), lam_only=True)
    common(sub.add_parser("polytope", help="hull and lattice points of the l-vectors"))
    sc = sub.add_parser("string-compare", help="string polytope against the l-vector hull")
    common(sc, lam_only=True)
    sc.add_argument("--A", dest="matrix", type=_matrix, help="matrix rows separated by ';'")
    sc.add_argument("--b", dest="offset", type=_int_list, help="offset vector")
    sc.add_argument("--bound", type=int, default=1, help="off-diagonal search bound")
    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--format", choices=("json", "md", "csv"), default="md")
    st.add_argument("--out")
    return p


def _config(args) -> RunConfig:
    word = args.word if args.word is not None else default_word(args.n)
    return RunConfig(n=args.n, word=tuple(word), lam=args.lam, mu=getattr(args, "mu", None),
                     format=args.format, out=args.out, checks=tuple(getattr(args, "check", ())),
                     cache_dir=args.cache_dir, padding=args.padding)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(data: Dict, header: Sequence[str], rows: List[Sequence], fmt: str, foot: str = "") -> str:
    if fmt == "json":
        return rep.to_json(data)
    if fmt == "csv":
        return rep.csv_table(header, rows)
    return rep.markdown_table(header, rows) + (f"\n{foot}\n" if foot else "")


def _config_echo(cfg: RunConfig, word, m) -> Dict:
    return {"n": cfg.n, "word": list(word), "lambda": None if cfg.lam is None else list(cfg.lam),
            "mu": list(m), "version": __version__}


# ------------------------------------------------------------------ commands

def _character(cb) -> Dict:
    if cb.lam is None:
        raise UsageError("character check needs --lambda")
    got = Counter()
    for leaf in cb.leaves:
        got[leaf.weight] += leaf.dim
    want = Counter(weight_multiplicities(cb.n, cb.lam))
    return {"match": got == want,
            "leaf_weights": sorted([list(w.coords), k] for w, k in got.items()),
            "expected_weights": sorted([list(w.coords), k] for w, k in want.items())}


def _prevaluation(cb, ctx) -> Dict:
    reps = [dict(leaf.representative) for leaf in cb.leaves if leaf.representative]
    fails = []
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            total = Counter()
            for t, c in list(reps[i].items()) + list(reps[j].items()):
                total[t] += c
            if not any(total.values()):
                continue
            if not check_prevaluation(reps[i], reps[j], ctx):
                fails.append([i, j])
    return {"pairs_checked": len(reps) * (len(reps) - 1) // 2, "failures": fails, "ok": not fails}


def cmd_basis(cfg: RunConfig):
    """Compute (or load from cache) the basis report; return ``(report, exit code)``."""
    word, m, lam = cfg.resolved()
    cache = rep.ReportCache.from_options(cfg.cache_dir)
    key = rep.cache_key(cfg.n, word, m, {"padding": cfg.padding, "checks": sorted(cfg.checks),
                                               "lambda": None if cfg.lam is None else list(cfg.lam)})
    t0 = time.perf_counter()
    report = cache.load(key) if cache else None
    if report is None:
        ctx = build_context(cfg.n, word, m)
        cb = canonical_basis(cfg.n, word, lam=lam, m=None if lam is not None else m,
                             grid_padding=cfg.padding, context=ctx)
        checks = {}
        if "character" in cfg.checks:
            checks["character"] = _character(cb)
        if "prevaluation" in cfg.checks:
            checks["prevaluation"] = _prevaluation(cb, ctx)
        if "string-compare" in cfg.checks:
            if lam is None:
                raise UsageError("string comparison needs --lambda")
            sc = string_compare(cfg.n, lam, word, [e.coords for e in cb.l_vectors()])
            checks["string_compare"] = {k: sc[k] for k in ("status", "witness", "lattice_points_match")}
        report = rep.basis_report(cb, checks)
        if cache:
            cache.store(key, report)
    report = dict(report, timing={"seconds": round(time.perf_counter() - t0, 6)})
    failed = report["diagnostics"]["conjecture_status"] == "violated"
    c = report.get("checks", {})
    failed |= c.get("character", {}).get("match") is False
    failed |= c.get("prevaluation", {}).get("ok") is False
    failed |= c.get("string_compare", {}).get("status") == "NOT-FOUND"
    return report, EXIT_VIOLATED if failed else EXIT_OK


def cmd_lvectors(cfg: RunConfig):
    word, m, _ = cfg.resolved()
    ctx = build_context(cfg.n, word, m)
    basis = set(ctx.basis)
    rows = []
    for t in ctx.tableaux:
        sw = ctx.swept[t]
        ell = None if sw.is_zero() else list(l_vector(sw).coords)
        rows.append({"tableau": t.to_json(), "label": t.label(), "in_basis": t in basis,
                     "weight": list(tableau_weight(t, cfg.n).coords), "l_vector": ell})
    data = {"config": _config_echo(cfg, word, m), "tableaux": rows}
    table = [[r["label"], "yes" if r["in_basis"] else "no", rep.vec_label(r["weight"]),
              "undefined" if r["l_vector"] is None else rep.vec_label(r["l_vector"])] for r in rows]
    return data, table, ("tableau", "in basis", "weight", "ℓ-vector"), EXIT_OK


def cmd_leaves(cfg: RunConfig):
    word, m, _ = cfg.resolved()
    ctx = build_context(cfg.n, word, m)
    rows = [{"l_vector": list(e.coords), "dim_f": f, "dim_f_greater": g, "leaf_dim": f - g}
            for e, f, g in filtration_dims(ctx, cfg.padding)]
    data = {"config": _config_echo(cfg, word, m), "grid": rows}
    table = [[rep.vec_label(r["l_vector"]), r["dim_f"], r["dim_f_greater"], r["leaf_dim"]] for r in rows]
    return data, table, ("ℓ-vector", "dim F", "dim F_>", "leaf dim"), EXIT_OK


def cmd_character_check(cfg: RunConfig):
    word, m, lam = cfg.resolved()
    cb = canonical_basis(cfg.n, word, lam=lam, grid_padding=cfg.padding)
    res = _character(cb)
    data = {"config": _config_echo(cfg, word, m), **res}
    leaf = {tuple(w): k for w, k in res["leaf_weights"]}
    want = {tuple(w): k for w, k in res["expected_weights"]}
    table = [[rep.vec_label(w), leaf.get(w, 0), want.get(w, 0)] for w in sorted(set(leaf) | set(want))]
    return data, table, ("weight", "leaf multiplicity", "expected"), \
        EXIT_OK if res["match"] else EXIT_VIOLATED


def cmd_polytope(cfg: RunConfig):
    word, m, lam = cfg.resolved()
    cb = canonical_basis(cfg.n, word, lam=lam, m=None if lam is not None else m,
                         grid_padding=cfg.padding)
    ells = sorted(set(e.coords for e in cb.l_vectors()))
    hull = convex_hull(ells)
    pts = set(hull.lattice_points())
    verts = set(hull.vertices)
    rows = [{"point": list(p), "is_vertex": p in verts, "is_l_vector": p in set(ells)}
            for p in sorted(pts)]
    data = {"config": _config_echo(cfg, word, m), "vertices": [list(v) for v in hull.vertices],
            "lattice_points": rows, "lattice_point_count": len(pts), "l_vector_count": len(ells)}
    table = [[rep.vec_label(r["point"]), "yes" if r["is_vertex"] else "no",
              "yes" if r["is_l_vector"] else "no"] for r in rows]
    return data, table, ("point", "vertex", "ℓ-vector"), EXIT_OK


def cmd_string_compare(cfg: RunConfig, matrix=None, offset=None, bound: int = 1):
    word, m, lam = cfg.resolved()
    if lam is None:
        raise UsageError("string comparison needs --lambda")
    fmap = None
    if matrix is not None or offset is not None:
        if matrix is None or offset is None:
            raise UsageError("give both --A and --b")
        fmap = AffineLatticeMap(matrix, offset)
    cb = canonical_basis(cfg.n, word, lam=lam, grid_padding=cfg.padding)
    res = string_compare(cfg.n, lam, word, [e.coords for e in cb.l_vectors()], fmap, bound)
    data = {"config": _config_echo(cfg, word, m), **res}
    w = res["witness"]
    table = [[res["status"], "" if w is None else w["A"], "" if w is None else w["b"],
              res["lattice_points_match"], res["candidates_tried"]]]
    return data, table, ("status", "A", "b", "lattice points match", "candidates"), \
        EXIT_OK if res["status"] == "EQUIVALENT" else EXIT_VIOLATED


def cmd_selftest(fmt: str = "md", out: Optional[str] = None) -> int:
    results = run_all()
    for r in results:
        print(r.line(), file=sys.stderr if out is None and fmt == "json" else sys.stdout)
    data = {"results": [{"criterion": r.number, "name": r.name, "passed": r.passed,
                         "detail": r.detail} for r in results],
            "all_passed": all(r.passed for r in results)}
    if out or fmt == "json":
        table = [[r.number, r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results]
        _emit(_render(data, ("criterion", "name", "status", "detail"), table, fmt), out)
    return EXIT_OK if data["all_passed"] else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "selftest":
            return cmd_selftest(args.format, args.out)
        cfg = _config(args)
        if args.command == "basis":
            report, code = cmd_basis(cfg)
            _emit(rep.render_basis(report, cfg.format), cfg.out)
            return code
        handlers = {"lvectors": cmd_lvectors, "leaves": cmd_leaves,
                    "character-check": cmd_character_check, "polytope": cmd_polytope}
        if args.command == "string-compare":
            data, table, header, code = cmd_string_compare(cfg, args.matrix, args.offset, args.bound)
        else:
            data, table, header, code = handlers[args.command](cfg)
        _emit(_render(data, header, table, cfg.format), cfg.out)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
