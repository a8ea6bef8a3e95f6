"""
Algebra files: JSON objects

    {"name": str, "dim": int, "structure": n x n x n, "unit": optional [n]}

with rationals written as "p/q" strings so a save/load round trip is exact.
``registry:<name>[:<n>]`` is accepted wherever a path is.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from ...core.algebra.registry import registry
from ...core.algebra.structure import make_algebra
from ...core.errors import UsageError
from ...core.exactcas.poly import format_rational
from ...models import Algebra

logger = logging.getLogger(__name__)

REGISTRY_PREFIX = "registry:"


def algebra_to_json(alg: Algebra) -> Dict[str, Any]:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "structure": [
            [[format_rational(c) for c in row] for row in plane] for plane in alg.structure
        ],
        "unit": None if alg.unit is None else [format_rational(u) for u in alg.unit],
    }


def algebra_from_json(data: Any, fallback_name: str = "algebra") -> Algebra:
    if not isinstance(data, dict):
        raise UsageError("algebra file must hold a JSON object")
    if "structure" not in data:
        raise UsageError("algebra file has no 'structure' array")
    structure = data["structure"]
    if not isinstance(structure, list):
        raise UsageError("'structure' must be an n x n x n array")
    dim = data.get("dim", len(structure))
    if dim != len(structure):
        raise UsageError(f"'dim' is {dim} but 'structure' has {len(structure)} slices")
    unit = data.get("unit")
    if unit is not None and len(unit) != dim:
        raise UsageError(f"'unit' has {len(unit)} entries, expected {dim}")
    return make_algebra(str(data.get("name") or fallback_name), structure, unit)


def load_algebra(ref: Union[str, Path]) -> Algebra:
    ref = str(ref)
    if ref.startswith(REGISTRY_PREFIX):
        return registry(ref[len(REGISTRY_PREFIX):])
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read algebra file {ref}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    alg = algebra_from_json(data, fallback_name=path.stem)
    logger.info("[io] loaded %s (dim %d) from %s", alg.name, alg.dim, ref)
    return alg


def dump_algebra(alg: Algebra) -> str:
    return json.dumps(algebra_to_json(alg), indent=2, ensure_ascii=False)


def save_algebra(alg: Algebra, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_algebra(alg) + "\n", encoding="utf-8")
