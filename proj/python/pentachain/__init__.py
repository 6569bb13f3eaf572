"""Random pentagonal chains: topological indices, closed-form moments and
their verification against exact enumeration.

Exact quantities come back from the extension as "p/q" strings; the wrappers
here turn them into fractions.Fraction.
"""

from fractions import Fraction

from . import _core

__all__ = [
    "sample_blueprint",
    "edges",
    "incremental_indices",
    "matrix_indices",
    "expected_index",
    "variance_index",
    "verified_expectation",
    "verified_variance",
    "exact_moments",
    "exact_distribution",
    "monte_carlo",
    "normality_test",
    "discrepancies",
]


def _fraction(text):
    return Fraction(text)


def _p(p1):
    if isinstance(p1, Fraction):
        return f"{p1.numerator}/{p1.denominator}"
    return str(p1)


def sample_blueprint(n, p1, seed):
    return _core.sample_blueprint(n, _p(p1), seed)


def edges(n, choices=()):
    return _core.edges(n, list(choices))


def _bundle(doc):
    return {k: (v if k == "n" else _fraction(v)) for k, v in doc.items()}


def incremental_indices(n, choices=()):
    return _bundle(_core.incremental_indices(n, list(choices)))


def matrix_indices(n, choices=()):
    return _bundle(_core.matrix_indices(n, list(choices)))


def expected_index(index, n, p1):
    return _fraction(_core.expected_index(index, n, _p(p1)))


def variance_index(index, n, p1):
    return _fraction(_core.variance_index(index, n, _p(p1)))


def verified_expectation(index, n, p1):
    return _fraction(_core.verified_expectation(index, n, _p(p1)))


def verified_variance(index, n, p1):
    return _fraction(_core.verified_variance(index, n, _p(p1)))


def exact_moments(n, p1):
    return {k: (_fraction(m), _fraction(v)) for k, (m, v) in _core.exact_moments(n, _p(p1)).items()}


def exact_distribution(index, n, p1):
    law = _core.exact_distribution(index, n, _p(p1))
    return {
        "support": [(_fraction(v), _fraction(p)) for v, p in law["support"]],
        "mean": _fraction(law["mean"]),
        "variance": _fraction(law["variance"]),
    }


def monte_carlo(indices, n, p1, samples, seed, workers=1):
    return _core.monte_carlo(list(indices), n, _p(p1), samples, seed, workers)


def normality_test(index, n, p1, samples, seed, standardization="verified", alpha=0.01, workers=1):
    return _core.normality_test(index, n, _p(p1), samples, seed, standardization, alpha, workers)


def discrepancies():
    return _core.discrepancies()
