"""Serialization of canonical-basis results: JSON, markdown, CSV, and a disk cache.

Exact rationals are written as ``"p/q"`` strings, l-vectors and weights as
integer arrays, tableaux as position -> columns -> rows arrays.  JSON is
emitted with sorted keys so equal reports are byte-identical once the
``timing`` field is dropped.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .bott_samelson import Tableau
from .filtration import CanonicalBasis, LVector
from .lie_data import Weight

CACHE_ENV = "BOTTBASIS_CACHE_DIR"


def fraction_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


def combination_to_json(combo) -> List[Dict]:
    return [{"tableau": t.to_json(), "coefficient": fraction_to_str(c)} for t, c in combo]


def combination_from_json(data) -> tuple:
    return tuple((Tableau.from_json(item["tableau"]), fraction_from_str(item["coefficient"]))
                 for item in data)


def combination_label(combo) -> str:
    """Human form like ``s(231) - s(132)`` or ``1/2 s(121)``."""
    parts = []
    for k, (t, c) in enumerate(combo):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag} "
        term = f"{coef}s{t.label()}"
        if k == 0:
            parts.append(term if sign == "+" else "-" + term)
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


def vec_label(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def basis_report(cb: CanonicalBasis, extra: Optional[Dict] = None, seconds: float = None) -> Dict:
    leaves = []
    for leaf in cb.leaves:
        leaves.append({
            "l_vector": list(leaf.ell.coords),
            "weight": list(leaf.weight.coords),
            "dim": leaf.dim,
            "representatives": [combination_to_json(r) for r in leaf.representatives],
            "initial_form_zero": [f.is_zero() for f in leaf.initial_forms],
        })
    d = cb.diagnostics
    report = {
        "config": {
            "n": cb.n,
            "word": list(cb.word),
            "lambda": None if cb.lam is None else list(cb.lam.to_fundamental()),
            "mu": list(cb.m),
            "version": __version__,
        },
        "leaves": leaves,
        "diagnostics": {
            "dim_v_found": d.dim_v,
            "dim_v_expected": d.expected_dim,
            "leaf_dim_total": d.total_dim,
            "max_leaf_dim": d.max_leaf_dim,
            "conjecture_status": d.conjecture_status,
            "zero_initial_forms": [list(e.coords) for e in d.zero_initial_forms],
        },
        "checks": dict(extra or {}),
    }
    if seconds is not None:
        report["timing"] = {"seconds": round(seconds, 6)}
    return report


def decode_leaves(report: Dict):
    """Typed view of a report's leaves: ``(LVector, Weight, dim, [combination])``."""
    out = []
    for leaf in report["leaves"]:
        reps = [combination_from_json(r) for r in leaf["representatives"]]
        out.append((LVector(tuple(leaf["l_vector"])), Weight(tuple(leaf["weight"])), leaf["dim"], reps))
    return out


def without_timing(report: Dict) -> Dict:
    return {k: v for k, v in report.items() if k != "timing"}


def to_json(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def basis_rows(report: Dict) -> List[List[str]]:
    """Rows ``tableau | combination | weight | l-vector``, one per representative."""
    rows = []
    for leaf in report["leaves"]:
        for rep in leaf["representatives"]:
            combo = combination_from_json(rep)
            lead = combo[0][0].label() if combo else ""
            rows.append([lead, combination_label(combo), vec_label(leaf["weight"]),
                         vec_label(leaf["l_vector"])])
    return rows


def markdown_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def csv_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


BASIS_HEADER = ("tableau", "combination", "weight", "ℓ-vector")


def render_basis(report: Dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    rows = basis_rows(report)
    if fmt == "csv":
        return csv_table(BASIS_HEADER, rows)
    d = report["diagnostics"]
    foot = (f"\ndim V: {d['dim_v_found']} (expected {d['dim_v_expected']}), "
            f"leaf total {d['leaf_dim_total']}, max leaf dim {d['max_leaf_dim']}, "
            f"conjecture status: {d['conjecture_status']}\n")
    return markdown_table(BASIS_HEADER, rows) + foot


def cache_key(n: int, word: Sequence[int], mu: Sequence[int], extra: Dict = None) -> str:
    payload = {"n": n, "word": list(word), "mu": list(mu), "version": __version__}
    if extra:
        payload["extra"] = extra
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class ReportCache:
    """Content-addressed JSON store; never consulted for anything but speed."""

    def __init__(self, directory):
        self.directory = Path(directory)

    @classmethod
    def from_options(cls, flag: Optional[str]) -> Optional["ReportCache"]:
        directory = flag or os.environ.get(CACHE_ENV)
        return cls(directory) if directory else None

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def load(self, key: str) -> Optional[Dict]:
        p = self._path(key)
        if not p.is_file():
            return None
        try:
            return json.loads(p.read_text())
        except (OSError, ValueError):
            return None

    def store(self, key: str, report: Dict) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(to_json(without_timing(report)))
        tmp.replace(self._path(key))
