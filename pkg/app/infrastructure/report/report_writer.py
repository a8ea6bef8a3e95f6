"""
Report serialization.

* to_jsonable()   - models and exact values -> plain JSON types
* build_report()  - RunReport with a sha256 digest of the canonical inputs
* render_json()   - stable, sorted JSON text
* render_text()   - human-readable text with Greek parameter names
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, List, Optional, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from ... import __version__
from ...core.exactcas.poly import format_rational
from ...models import (
    AffineSubspace,
    CheckReport,
    InvariantReport,
    LinForm,
    NormEvaluation,
    ParamSymMatrix,
    RunReport,
    Verdict,
)

_GREEK = "αβγδεζηθικλμνξοπρστυφχψω"


def param_names(m: int) -> List[str]:
    if m <= len(_GREEK):
        return list(_GREEK[:m])
    return [f"α{q + 1}" for q in range(m)]


def _is_rational(v: Any) -> bool:
    return QQ.of_type(v) and not isinstance(v, bool)


def _coeff_text(c, name: str) -> str:
    if c == 1:
        return name
    if c == -1:
        return f"-{name}"
    return f"{format_rational(c)}{name}"


def _join(terms: List[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def linform_text(form: LinForm, names: Sequence[str]) -> str:
    terms = [_coeff_text(c, n) for c, n in zip(form.coeffs, names) if c]
    if form.constant:
        terms.append(format_rational(form.constant))
    return _join(terms)


def poly_text(p: PolyElement, names: Sequence[str]) -> str:
    terms = []
    for monom, c in p.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            terms.append(format_rational(c))
        else:
            terms.append(_coeff_text(c, "*".join(factors)))
    return _join(terms)


def _matrix(M) -> List[List[str]]:
    return [[format_rational(QQ.convert(v)) for v in row] for row in M]


def param_matrix_json(u: ParamSymMatrix) -> Dict[str, Any]:
    names = param_names(u.param_count)
    return {
        "n": u.n,
        "m": u.param_count,
        "parameters": names,
        "entries": [[linform_text(f, names) for f in row] for row in u.entries],
        "generators": [_matrix(g) for g in u.generators()],
    }


def invariant_report_json(r: InvariantReport) -> Dict[str, Any]:
    names = param_names(r.m)
    return {
        "n": r.n,
        "m": r.m,
        "max_rank": r.max_rank,
        "max_rank_method": r.max_rank_method,
        "min_nonzero_rank": r.min_nonzero_rank,
        "min_rank_certainty": r.min_rank_certainty,
        "det_poly": poly_text(r.det_poly, names),
        "sensitive_param_count": r.sensitive_param_count,
        "variety": {
            "dim": r.variety.dim,
            "component_count": r.variety.component_count,
            "convention": r.variety.convention,
            "shape": r.variety.shape,
            "raw": r.variety.raw,
        },
        "sextuple": list(r.sextuple),
        "tau_raw": None if r.tau_raw is None else list(r.tau_raw),
        "tau_reduced": None if r.tau_reduced is None else list(r.tau_reduced),
        "tau_undecided": r.tau_undecided,
        "warnings": list(r.warnings),
    }


def to_jsonable(value: Any) -> Any:
    if isinstance(value, ParamSymMatrix):
        return param_matrix_json(value)
    if isinstance(value, InvariantReport):
        return invariant_report_json(value)
    if isinstance(value, AffineSubspace):
        return {
            "consistent": value.consistent,
            "particular": None if value.particular is None else _matrix(value.particular),
            "directions": None if value.directions is None else param_matrix_json(value.directions),
        }
    if isinstance(value, NormEvaluation):
        out = asdict(value)
        out["path"] = [list(p) for p in value.path]
        if value.metric_coordinates is not None:
            out["metric_coordinates"] = [format_rational(c) for c in value.metric_coordinates]
        return out
    if isinstance(value, (CheckReport, Verdict)) or is_dataclass(value):
        return to_jsonable(asdict(value))
    if isinstance(value, PolyElement):
        return poly_text(value, [f"x{i + 1}" for i in range(value.ring.ngens)])
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if _is_rational(value):
        return format_rational(value)
    # numpy scalars
    if hasattr(value, "item"):
        return value.item()
    return str(value)


# ------ run reports ------ #


def inputs_digest(algebra_json: Optional[Dict[str, Any]], options: Dict[str, Any]) -> str:
    canonical = json.dumps(
        {"algebra": algebra_json, "options": to_jsonable(options)},
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_report(
    verb: str,
    algebra: Optional[str],
    algebra_json: Optional[Dict[str, Any]],
    options: Dict[str, Any],
    results: Dict[str, Any],
    warnings: Sequence[str] = (),
    timing: Optional[float] = None,
) -> RunReport:
    return RunReport(
        verb=verb,
        algebra=algebra,
        inputs_digest=inputs_digest(algebra_json, options),
        results={k: to_jsonable(v) for k, v in results.items()},
        warnings=list(dict.fromkeys(warnings)),
        timing=timing,
        tool_version=__version__,
    )


def report_dict(report: RunReport) -> Dict[str, Any]:
    out = {
        "verb": report.verb,
        "algebra": report.algebra,
        "inputs_digest": report.inputs_digest,
        "tool_version": report.tool_version,
        "results": report.results,
        "warnings": report.warnings,
    }
    if report.timing is not None:
        out["timing"] = round(report.timing, 3)
    return out


def render_json(report: RunReport) -> str:
    return json.dumps(report_dict(report), indent=2, sort_keys=True, ensure_ascii=False)


# ------ human output ------ #


def _grid(rows: List[List[str]], indent: str = "  ") -> List[str]:
    if not rows:
        return [indent + "[]"]
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return [indent + "[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in rows]


def _is_matrix(value: Any) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(r, list) and r and all(not isinstance(c, (list, dict)) for c in r) for r in value)
    )


def _render_value(key: str, value: Any, indent: str = "") -> List[str]:
    if isinstance(value, dict) and "entries" in value and "parameters" in value:
        lines = [f"{indent}{key} (m = {value['m']}):"]
        return lines + _grid(value["entries"], indent + "  ")
    if _is_matrix(value):
        return [f"{indent}{key}:"] + _grid([[str(c) for c in r] for r in value], indent + "  ")
    if isinstance(value, dict):
        lines = [f"{indent}{key}:"]
        for k, v in value.items():
            lines.extend(_render_value(k, v, indent + "  "))
        return lines
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        lines = [f"{indent}{key}:"]
        for i, v in enumerate(value):
            lines.extend(_render_value(f"[{i}]", v, indent + "  "))
        return lines
    if isinstance(value, list):
        value = "(" + ", ".join(str(v) for v in value) + ")"
    return [f"{indent}{key}: {value}"]


def render_text(report: RunReport) -> str:
    head = report.verb if report.algebra is None else f"{report.verb} {report.algebra}"
    lines = [head]
    for key, value in report.results.items():
        lines.extend(_render_value(key, value, "  "))
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if report.timing is not None:
        lines.append(f"time: {report.timing:.3f}s")
    return "\n".join(lines)
