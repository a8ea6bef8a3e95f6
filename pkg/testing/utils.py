import numpy as np


# Closed-form unital norms (as logarithms) for the built-in algebras.
# Each takes the metric coordinates in the reference generator order and a point.


def log_norm_complex(c, p):
    a, b = c
    x, y = p
    return a / 2 * np.log(x * x + y * y) + b * np.arctan2(y, x)


def log_norm_split_complex(c, p):
    a, b = c
    x, y = p
    return a / 2 * np.log(x * x - y * y) + b / 2 * np.log((x + y) / (x - y))


def log_norm_real_pair(c, p):
    a, b = c
    x, y = p
    return (a * np.log(x) + b * np.log(y)) / 2


def log_norm_dual(c, p):
    a, b = c
    x, y = p
    return a * np.log(x) + b * y / x


def log_norm_real_triple(c, p):
    return float(np.dot(c, np.log(p))) / 3


def log_norm_real_complex(c, p):
    a, b, g = c
    x, y, z = p
    return (a * np.log(x) + b / 2 * np.log(y * y + z * z) + g * np.arctan2(z, y)) / 2


def log_norm_real_dual(c, p):
    a, b, g = c
    x, y, z = p
    return (a * np.log(x) + b * np.log(y) + g * z / y) / 2


def log_norm_square_zero_3(c, p):
    a, b, g = c
    x, y, z = p
    return a * np.log(x) + b * y / x + g * z / x


def log_norm_semidirect_3(c, p):
    x, y, _ = p
    return log_norm_split_complex(c, (x, y))


def toeplitz_log(p):
    """Algebra logarithm of an upper triangular Toeplitz element, as a coefficient vector."""
    p = np.asarray(p, dtype=float)
    n = len(p)
    u = p / p[0]
    u[0] = 0.0
    out = np.zeros(n)
    out[0] = np.log(p[0])
    power = np.zeros(n)
    power[0] = 1.0
    for m in range(1, n):
        power = np.convolve(power, u)[:n]
        out += (-1) ** (m + 1) * power / m
    return out


def log_norm_toeplitz(c, p):
    """Hankel metric with gammas c: log l = sum_k gamma_k [log s]_k."""
    return float(np.dot(c, toeplitz_log(p)))


CLOSED_FORMS = {
    "complex": log_norm_complex,
    "split-complex": log_norm_split_complex,
    "real-pair": log_norm_real_pair,
    "dual": log_norm_dual,
    "real-triple": log_norm_real_triple,
    "real-complex": log_norm_real_complex,
    "real-dual": log_norm_real_dual,
    "toeplitz:3": log_norm_toeplitz,
    "square-zero-3": log_norm_square_zero_3,
    "semidirect-3": log_norm_semidirect_3,
}


def combine(coords, generators):
    n = len(generators[0])
    return [[sum(c * g[i][j] for c, g in zip(coords, generators)) for j in range(n)] for i in range(n)]


def near_unit(unit, rng, spread=0.2):
    return np.asarray(unit, dtype=float) + rng.uniform(-spread, spread, size=len(unit))
