"""
Reference anti-rotors and invariants for the built-in algebras.

Generators are listed in the canonical parameter order; each row of the
3-dimensional table carries the expected sextuple and reduced triple.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

from app.core.algebra.registry import hankel_metric


def _sym(n: int, entries: Dict[Tuple[int, int], int]) -> List[List[int]]:
    M = [[0] * n for _ in range(n)]
    for (i, j), v in entries.items():
        M[i][j] = v
        M[j][i] = v
    return M


def hankel_generators(n: int) -> List[List[List[object]]]:
    return [hankel_metric(n, [1 if i == k else 0 for i in range(n)]) for k in range(n)]


TWO_DIM: Dict[str, dict] = {
    "complex": {
        "generators": [_sym(2, {(0, 0): 1, (1, 1): -1}), _sym(2, {(0, 1): 1})],
        "reduced": (0, 0, 1),
    },
    "split-complex": {
        "generators": [_sym(2, {(0, 0): 1, (1, 1): 1}), _sym(2, {(0, 1): 1})],
        "reduced": (0, 1, 0),
    },
    "real-pair": {
        "generators": [_sym(2, {(0, 0): 1}), _sym(2, {(1, 1): 1})],
        "reduced": (0, 1, 0),
    },
    "dual": {
        "generators": [_sym(2, {(0, 0): 1}), _sym(2, {(0, 1): 1})],
        "reduced": (1, 0, 0),
    },
}

THREE_DIM: Dict[str, dict] = {
    "real-triple": {
        "generators": [_sym(3, {(0, 0): 1}), _sym(3, {(1, 1): 1}), _sym(3, {(2, 2): 1})],
        "sextuple": (3, 3, 1, 3, 2, 3),
        "reduced": (0, 2, 0),
    },
    "real-complex": {
        "generators": [
            _sym(3, {(0, 0): 1}),
            _sym(3, {(1, 1): 1, (2, 2): -1}),
            _sym(3, {(1, 2): 1}),
        ],
        "sextuple": (3, 3, 1, 3, 2, 2),
        "reduced": (0, 1, 1),
    },
    "real-dual": {
        "generators": [_sym(3, {(0, 0): 1}), _sym(3, {(1, 1): 1}), _sym(3, {(1, 2): 1})],
        "sextuple": (3, 3, 1, 2, 1, 2),
        "reduced": (1, 1, 0),
    },
    "toeplitz:3": {
        "generators": hankel_generators(3),
        "sextuple": (3, 3, 1, 1, 0, 1),
        "reduced": (2, 0, 0),
    },
    "square-zero-3": {
        "generators": [_sym(3, {(0, 0): 1}), _sym(3, {(0, 1): 1}), _sym(3, {(0, 2): 1})],
        "sextuple": (3, 2, 1, 0, 3, 0),
        "reduced": (2, 0, 0),
    },
    "semidirect-3": {
        "generators": [_sym(3, {(0, 0): 1, (1, 1): 1}), _sym(3, {(0, 1): 1})],
        "sextuple": (2, 2, 1, 0, 2, 0),
        "reduced": (0, 1, 0),
    },
}

# registry algebras of dimension <= 3 with a unit
SMALL_UNITAL = list(TWO_DIM) + list(THREE_DIM) + ["triangular-3"]

# split-C -> R x R
SPLIT_TO_PAIR = [[1, -1], [1, 1]]
