import numpy as np

from exfield.algebra import Multiform, Multivector


def max_diff(a, b) -> float:
    """Largest absolute coefficient difference between two graded values."""
    return max(abs(x - y) for x, y in zip(a.coeffs, b.coeffs))


def random_multivector(rng: np.random.Generator, n: int) -> Multivector:
    return Multivector(n, tuple(rng.uniform(-1, 1, 1 << n)))


def random_multiform(rng: np.random.Generator, n: int) -> Multiform:
    return Multiform(n, tuple(rng.uniform(-1, 1, 1 << n)))
