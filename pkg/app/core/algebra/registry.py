"""
Built-in algebras and their metadata.

Structure constants are generated from each algebra's product rule applied to
basis vectors, so every entry below reads like the multiplication table it is.
Metadata (titles, aliases, special-norm representation, involution) comes from
``registry.yml``; it falls back to hard-coded defaults if the YAML is missing
or malformed.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import yaml
from sympy.polys.domains import QQ

from app.config import Settings
from app.core.algebra.structure import make_algebra
from app.core.errors import UsageError
from app.models import Algebra

logger = logging.getLogger(__name__)

Product = Callable[[Sequence, Sequence], Sequence]

_DEFAULTS: Dict[str, dict] = {
    "complex": {"aliases": ["C"], "special": {"omega": "left_regular"}},
    "split-complex": {"aliases": ["split-C", "hyperbolic"], "special": {"omega": "left_regular"}},
    "real-pair": {"aliases": ["RxR"], "special": {"omega": "left_regular"}},
    "dual": {"aliases": ["D"], "special": {"omega": "left_regular"}},
    "real-triple": {"aliases": ["RxRxR"], "special": {"omega": "left_regular"}},
    "real-complex": {
        "aliases": ["RxC"],
        "special": {
            "omega": "left_regular",
            "metric": [["2/3", 0, 0], [0, "4/3", 0], [0, 0, "-4/3"]],
        },
    },
    "real-dual": {
        "aliases": ["RxD"],
        "special": {
            "omega": "left_regular",
            "metric": [["2/3", 0, 0], [0, "4/3", 0], [0, 0, 0]],
        },
    },
    "square-zero-3": {"special": {"omega": "left_regular"}},
    "semidirect-3": {
        "special": {
            "omega": "left_regular",
            "metric": [[1, "-1/3", 0], ["-1/3", 1, 0], [0, 0, 0]],
        },
    },
    "toeplitz": {"aliases": ["T"], "special": {"omega": "left_regular"}},
    "matrix": {"aliases": ["M"], "special": {"omega": "matrix_columns"}},
    "quaternion": {"aliases": ["H"], "star": "conjugate", "special": {"omega": "left_regular"}},
    "reals": {"aliases": ["prodR"], "special": {"omega": "left_regular"}},
    "triangular-3": {"aliases": ["upper-2x2"], "special": {"omega": "diagonal", "indices": [0, 1]}},
    "heisenberg-4": {"special": {"omega": "left_regular"}},
    "triangular-5": {"special": {"omega": "diagonal", "indices": [0, 1]}},
    "spin": {"star": "conjugate", "special": {"omega": "star"}},
    "cayley-dickson": {"aliases": ["CD"], "star": "conjugate", "special": {"omega": "star"}},
    "nilpotent-3": {"aliases": ["nilpotent"]},
}

# families taking an integer parameter, with its default and accepted range
_FAMILIES: Dict[str, Tuple[int, int, int]] = {
    "toeplitz": (3, 1, 12),
    "matrix": (2, 1, 4),
    "reals": (3, 1, 12),
    "spin": (2, 1, 8),
    "cayley-dickson": (2, 1, 4),
}


def _load_metadata(path: str) -> Dict[str, dict]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
        if not isinstance(data, dict):
            raise ValueError("top level is not a mapping")
    except (OSError, yaml.YAMLError, ValueError) as exc:
        logger.warning("[registry] metadata unavailable (%s); using defaults", exc)
        return dict(_DEFAULTS)
    merged = dict(_DEFAULTS)
    for key, entry in data.items():
        if isinstance(entry, dict):
            merged[str(key)] = {**_DEFAULTS.get(str(key), {}), **entry}
    return merged


_METADATA = _load_metadata(Settings().REGISTRY_YAML)


# ------ product rules ------ #


def _complex(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _split_complex(a, b):
    return (a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _dual(a, b):
    return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])


def _componentwise(a, b):
    return tuple(x * y for x, y in zip(a, b))


def _real_complex(a, b):
    return (a[0] * b[0],) + _complex(a[1:], b[1:])


def _real_dual(a, b):
    return (a[0] * b[0],) + _dual(a[1:], b[1:])


def _toeplitz(a, b):
    n = len(a)
    return tuple(sum((a[i] * b[k - i] for i in range(k + 1)), a[0] * 0) for k in range(n))


def _square_zero_3(a, b):
    return (a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[2] * b[0])


def _semidirect_3(a, b):
    return (
        a[0] * b[0] + a[1] * b[1],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[2] * b[0] + a[2] * b[1] - a[1] * b[2],
    )


def _matrix(n: int) -> Product:
    # element index q*n + p holds entry (p, q)
    def product(a, b):
        out = [a[0] * 0] * (n * n)
        for p in range(n):
            for q in range(n):
                out[q * n + p] = sum(
                    (a[r * n + p] * b[q * n + r] for r in range(n)), a[0] * 0
                )
        return tuple(out)

    return product


def _quaternion(a, b):
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def _triangular_3(a, b):
    # [[x, z], [0, y]]
    return (a[0] * b[0], a[1] * b[1], a[0] * b[2] + a[2] * b[1])


def _heisenberg_4(a, b):
    # [[x, y, w], [0, x, z], [0, 0, x]]
    x, y, z, w = a
    x2, y2, z2, w2 = b
    return (x * x2, x * y2 + y * x2, x * z2 + z * x2, x * w2 + y * z2 + w * x2)


def _triangular_5(a, b):
    # [[x, z, w], [0, x, v], [0, 0, y]]
    x, y, z, v, w = a
    x2, y2, z2, v2, w2 = b
    return (x * x2, y * y2, x * z2 + z * x2, x * v2 + v * y2, x * w2 + z * v2 + w * y2)


def _spin(a, b):
    head = a[0] * b[0] + sum((x * y for x, y in zip(a[1:], b[1:])), a[0] * 0)
    return (head,) + tuple(a[0] * y + x * b[0] for x, y in zip(a[1:], b[1:]))


def _cd_conj(a):
    return (a[0],) + tuple(-x for x in a[1:])


def _cayley_dickson(a, b):
    n = len(a)
    if n == 1:
        return (a[0] * b[0],)
    h = n // 2
    p, q, r, s = a[:h], a[h:], b[:h], b[h:]
    # (p, q)(r, s) = (p r - s* q, s p + q r*)
    left = tuple(u - v for u, v in zip(_cayley_dickson(p, r), _cayley_dickson(_cd_conj(s), q)))
    right = tuple(u + v for u, v in zip(_cayley_dickson(s, p), _cayley_dickson(q, _cd_conj(r))))
    return left + right


def _nilpotent_3(a, b):
    zero = a[0] * 0
    return (zero, a[0] * b[0], a[0] * b[1] + a[1] * b[0])


def from_product(name: str, n: int, product: Product, unit: Optional[Sequence] = None) -> Algebra:
    basis = [tuple(QQ.one if i == j else QQ.zero for i in range(n)) for j in range(n)]
    structure = [[list(product(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    return make_algebra(name, structure, unit)


# ------ lookup ------ #


def _fixed(name: str) -> Optional[Tuple[int, Product]]:
    table = {
        "complex": (2, _complex),
        "split-complex": (2, _split_complex),
        "real-pair": (2, _componentwise),
        "dual": (2, _dual),
        "real-triple": (3, _componentwise),
        "real-complex": (3, _real_complex),
        "real-dual": (3, _real_dual),
        "square-zero-3": (3, _square_zero_3),
        "semidirect-3": (3, _semidirect_3),
        "quaternion": (4, _quaternion),
        "triangular-3": (3, _triangular_3),
        "heisenberg-4": (4, _heisenberg_4),
        "triangular-5": (5, _triangular_5),
        "nilpotent-3": (3, _nilpotent_3),
    }
    return table.get(name)


def _family(family: str, k: int) -> Tuple[int, Product]:
    if family == "toeplitz":
        return k, _toeplitz
    if family == "matrix":
        return k * k, _matrix(k)
    if family == "reals":
        return k, _componentwise
    if family == "spin":
        return k + 1, _spin
    return 2 ** k, _cayley_dickson


def _resolve_alias(base: str) -> str:
    if base in _METADATA:
        return base
    for key, meta in _METADATA.items():
        if base in [str(a) for a in meta.get("aliases", [])]:
            return key
    return base


def split_name(name: str) -> Tuple[str, Optional[int]]:
    base, _, param = name.strip().partition(":")
    base = _resolve_alias(base)
    if base in _FAMILIES:
        default, lo, hi = _FAMILIES[base]
        try:
            k = int(param) if param else default
        except ValueError as exc:
            raise UsageError(f"registry parameter must be an integer: {name!r}") from exc
        if not lo <= k <= hi:
            raise UsageError(f"{base} parameter must be in [{lo}, {hi}], got {k}")
        return base, k
    if param:
        raise UsageError(f"{base} takes no parameter")
    return base, None


@lru_cache(maxsize=None)
def registry(name: str) -> Algebra:
    base, k = split_name(name)
    if k is not None:
        n, product = _family(base, k)
        return from_product(f"{base}:{k}", n, product)
    fixed = _fixed(base)
    if fixed is None:
        raise UsageError(f"unknown registry algebra {name!r}; known: {', '.join(registry_names())}")
    n, product = fixed
    return from_product(base, n, product)


def registry_names() -> List[str]:
    names = []
    for key in _DEFAULTS:
        names.append(f"{key}:<n>" if key in _FAMILIES else key)
    return names


def metadata(name: str) -> dict:
    base, _ = split_name(name.split("~", 1)[0])
    return dict(_METADATA.get(base, {}))


def star_signs(alg: Algebra) -> Optional[List[int]]:
    star = metadata(alg.name).get("star")
    if star is None:
        return None
    if star == "conjugate":
        return [1] + [-1] * (alg.dim - 1)
    return [int(s) for s in star]


# ------ distinguished matrices ------ #


def transpose_operator(n: int) -> List[List[object]]:
    """n^2 x n^2 permutation sending vec(A) to vec(A^T), columns stacked."""
    N = n * n
    T = [[QQ.zero] * N for _ in range(N)]
    for p in range(n):
        for q in range(n):
            T[p * n + q][q * n + p] = QQ.one
    return T


def hankel_metric(n: int, gammas: Sequence) -> List[List[object]]:
    """H[i][j] = gamma_{i+j} for i + j < n, else 0 (the Toeplitz anti-rotor)."""
    if len(gammas) != n:
        raise UsageError(f"hankel_metric needs {n} gammas")
    return [
        [QQ.convert(gammas[i + j]) if i + j < n else QQ.zero for j in range(n)]
        for i in range(n)
    ]
