"""Symmetric interacting Fock space built from a Jacobi sequence.

The space is the graded sum of symmetric tensor powers of R^d carrying the
level metrics Gomega_n; the vacuum spans level 0.  Field operators per
coordinate j:

    creation      Aplus[j][n]  : the combinatorial index shift m -> m + e_j
    preservation  alpha[j][n]  : copied from the Jacobi data
    annihilation  Aminus[j][n] : the Gomega-weighted adjoint of creation,
        solved from  Gomega_{n-1} Aminus[j][n] = Aplus[j][n-1]^T Gomega_n,
        minimum-norm column by column, with Aminus[j][0] = 0 on the vacuum.

The adjoint system is consistent exactly when kernel vectors of Gomega_n
lift into kernels one level up (the compatibility Favard condition); a
violating sequence is rejected with AdjointInconsistencyError because the
creator then has no adjoint.

The coordinate field operator X_j = Aplus_j + alpha_j + Aminus_j applied to
the vacuum reproduces the source moments: vacuum expectations of words in
the field operators equal the moments of the corresponding monomials.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    AdjointInconsistencyError,
    FavardConditionError,
    InconsistentSystemError,
    WordLengthError,
)
from .jacobi import JacobiSequence, verify_favard_conditions
from .mindex import creation_shift, level_dimension
from .reports import Report

__all__ = ["FockSpace", "FieldOperators", "build_fock", "moment_of_word", "roundtrip_report"]


@dataclass
class FockSpace:
    """Graded pre-Hilbert space: levels 0..N with metrics Gomega_n."""

    d: int
    N: int
    backend: str
    gomega: list
    tol: float

    def vacuum(self):
        one = Fraction(1) if self.backend == "exact" else 1.0
        return {0: [one]}

    def dim(self, n):
        return level_dimension(self.d, n)


@dataclass
class FieldOperators:
    """Creation, preservation and annihilation blocks per coordinate."""

    d: int
    N: int
    aplus: dict
    alpha: dict
    aminus: dict
    alpha_levels: int


def build_fock(js: JacobiSequence, tol=None):
    """(FockSpace, FieldOperators) for an admissible Jacobi sequence.

    Refuses inadmissible data: non-PSD or asymmetric metrics and asymmetric
    alphas raise FavardConditionError; a compatibility violation surfaces
    as AdjointInconsistencyError from the annihilator solve.
    """
    tol = js.tol if tol is None else tol
    exact = js.backend == "exact"
    checks = verify_favard_conditions(js, tol)
    for c in checks.checks:
        if c.ok or c.label.startswith("kernel lift"):
            continue
        raise FavardConditionError(f"inadmissible Jacobi data: {c.label}")
    one = 1 if exact else 1.0
    aplus = {}
    aminus = {}
    alpha = {j: list(mats) for j, mats in js.alpha.items()}
    for j in range(1, js.d + 1):
        shifts = []
        for n in range(js.N):
            s = creation_shift(js.d, n, j)
            shifts.append([[x * one for x in row] for row in s])
        aplus[j] = shifts
        downs = [[]]  # nothing below the vacuum
        for n in range(1, js.N + 1):
            rhs = linalg.mat_mul(linalg.transpose(aplus[j][n - 1]), js.gomega[n])
            rhs_cols = linalg.transpose(rhs)
            try:
                sols = linalg.solve_min_norm(
                    js.gomega[n - 1], rhs_cols, js.backend, tol, check_consistency=True
                )
            except InconsistentSystemError as exc:
                raise AdjointInconsistencyError(
                    f"creation operator for coordinate {j} has no adjoint at level {n}: "
                    f"a kernel vector of Gomega_{n - 1} does not lift into ker Gomega_{n} "
                    f"({exc})"
                ) from exc
            downs.append(linalg.transpose(sols))
        aminus[j] = downs
    fock = FockSpace(d=js.d, N=js.N, backend=js.backend, gomega=js.gomega, tol=tol)
    ops = FieldOperators(
        d=js.d,
        N=js.N,
        aplus=aplus,
        alpha=alpha,
        aminus=aminus,
        alpha_levels=js.alpha_levels,
    )
    return fock, ops


def moment_of_word(fock: FockSpace, ops: FieldOperators, word) -> object:
    """Vacuum expectation of the product of field operators along the word.

    word lists 1-based coordinates; the rightmost letter acts first.  Words
    up to length 2N are supported, plus 2N+1 when the top-level alpha is
    present.  Paths are pruned to levels reachable and returnable within
    the word length, which never exceeds floor(len/2).
    """
    word = list(word)
    k = len(word)
    for j in word:
        if not 1 <= j <= fock.d:
            raise ValueError(f"coordinate {j} out of range 1..{fock.d}")
    limit = 2 * fock.N + (1 if ops.alpha_levels >= fock.N else 0)
    if k > limit:
        raise WordLengthError(
            f"word of length {k} exceeds the supported maximum {limit} for N={fock.N}"
        )
    zero = Fraction(0) if fock.backend == "exact" else 0.0
    cap_level = min(fock.N, k // 2)
    state = fock.vacuum()
    for step, j in enumerate(reversed(word), start=1):
        remaining = k - (step - 1)
        new = {}

        def _add(level, vec):
            if level in new:
                new[level] = [a + b for a, b in zip(new[level], vec)]
            else:
                new[level] = list(vec)

        for lvl, vec in state.items():
            if lvl > remaining:
                continue  # cannot descend back to the vacuum in time
            if lvl < cap_level:
                _add(lvl + 1, linalg.mat_vec(ops.aplus[j][lvl], vec))
            if lvl <= ops.alpha_levels:
                _add(lvl, linalg.mat_vec(ops.alpha[j][lvl], vec))
            if lvl >= 1:
                _add(lvl - 1, linalg.mat_vec(ops.aminus[j][lvl], vec))
        state = new
    bottom = state.get(0)
    if bottom is None:
        return zero
    return fock.gomega[0][0][0] * bottom[0]


def roundtrip_report(phi, N, tol=linalg.DEFAULT_TOL, _prebuilt=None) -> Report:
    """Decompose phi to Jacobi data, rebuild the Fock space, compare moments.

    Every monomial moment of degree <= min(2N or 2N+1, budget) must be
    reproduced by the corresponding vacuum word: exactly on the exact
    backend, within tol on the float backend.
    """
    from .cap import extract_cap
    from .gradation import build_gradation
    from .jacobi import extract_jacobi
    from .mindex import enumerate_level

    if _prebuilt is None:
        gb = build_gradation(phi, N, tol)
        cap = extract_cap(gb)
        js = extract_jacobi(gb, cap)
    else:
        gb, cap, js = _prebuilt
    fock, ops = build_fock(js, tol)
    exact = phi.backend == "exact"
    top = min(js.max_word_length(), phi.max_degree)
    report = Report(name=f"moment roundtrip to degree {top}")
    for degree in range(top + 1):
        worst = 0
        for m in enumerate_level(phi.d, degree):
            word = []
            for j, count in enumerate(m, start=1):
                word.extend([j] * count)
            rebuilt = moment_of_word(fock, ops, word)
            dev = abs(rebuilt - phi.values[m])
            if dev > worst:
                worst = dev
        report.add(
            f"moments of degree {degree}",
            worst == 0 if exact else worst <= tol,
            deviation=worst,
        )
    return report
