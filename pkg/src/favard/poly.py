"""Sparse multivariate polynomials over exact or floating scalars.

Terms are stored in a dict mapping exponent multi-indices to nonzero
coefficients.  Coefficients may be ints, Fractions or floats; arithmetic
never converts between scalar families, so exact inputs stay exact.

>>> x = monomial(2, (1, 0))
>>> y = monomial(2, (0, 1))
>>> p = x * x - 2 * x * y
>>> sorted(p.terms.items())
[((1, 1), -2), ((2, 0), 1)]
"""

from .mindex import MultiIndex

__all__ = [
    "Polynomial",
    "monomial",
    "coordinate_multiply",
    "graded_component",
    "evaluate",
]


class Polynomial:
    """Polynomial in d commuting coordinates, keyed by exponent tuples."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"dimension must be a positive integer, got {d!r}")
        self.d = d
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != d or any(k < 0 or not isinstance(k, int) for k in m):
                raise ValueError(f"bad exponent {m!r} for dimension {d}")
            if c != 0:
                clean[tuple(m)] = c
        self.terms = clean

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def coefficient(self, m):
        return self.terms.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same_space(self, other):
        if self.d != other.d:
            raise ValueError(f"mixed dimensions {self.d} and {other.d}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_space(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.d, terms)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_space(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) - c
        return Polynomial(self.d, terms)

    def __neg__(self):
        return Polynomial(self.d, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._require_same_space(other)
            terms = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    key = tuple(a + b for a, b in zip(ma, mb))
                    terms[key] = terms.get(key, 0) + ca * cb
            return Polynomial(self.d, terms)
        return Polynomial(self.d, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, scalar):
        return Polynomial(self.d, {m: scalar * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Polynomial({self.d}, 0)"
        bits = [f"{c}*X^{m}" for m, c in sorted(self.terms.items(), reverse=True)]
        return "Polynomial(" + " + ".join(bits) + ")"


def monomial(d: int, m: MultiIndex, coeff=1) -> Polynomial:
    """coeff * X^m in d coordinates."""
    return Polynomial(d, {tuple(m): coeff})


def one(d: int) -> Polynomial:
    return monomial(d, (0,) * d)


def coordinate_multiply(p: Polynomial, j: int) -> Polynomial:
    """Multiply by the j-th coordinate, 1 <= j <= d; shifts every exponent."""
    if not 1 <= j <= p.d:
        raise ValueError(f"coordinate j must satisfy 1 <= j <= {p.d}, got {j}")
    shifted = {}
    for m, c in p.terms.items():
        key = m[: j - 1] + (m[j - 1] + 1,) + m[j:]
        shifted[key] = c
    return Polynomial(p.d, shifted)


def graded_component(p: Polynomial, n: int) -> Polynomial:
    """The part of p with total degree exactly n."""
    return Polynomial(p.d, {m: c for m, c in p.terms.items() if sum(m) == n})


def evaluate(p: Polynomial, point) -> object:
    """Value of p at a point of length d."""
    if len(point) != p.d:
        raise ValueError(f"point has length {len(point)}, expected {p.d}")
    total = 0
    for m, c in p.terms.items():
        val = c
        for x, k in zip(point, m):
            if k:
                val = val * x**k
        total = total + val
    return total
