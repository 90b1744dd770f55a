"""Jacobi sequences: the Favard data (Gomega_n, alpha_{j|n}) of a moment functional.

The n-th symmetric tensor power of R^d is identified with gradation level n
through the map U_n sending the occupation basis vector of m to the image
of the vacuum under the corresponding word of creation operators.  Pulling
the polynomial pre-scalar product back through U_n gives the level metric

    Gomega_n[m, m'] = <U_n e_m, U_n e_m'>_phi,

and conjugating the preservation block gives alpha_{j,n}.  The pair
(Gomega, alpha) is the complete reconstruction datum: together with the
combinatorial index-shift creators it rebuilds every moment (module fock).

The operator form Omega_n = T_n^{-1} Gomega_n (T_n the diagonal tensor
metric m!/n!) is derived on demand; the serialized object is always the
basis-honest Gram matrix Gomega_n.

Admissibility (the Favard conditions) of a Jacobi sequence:

  (i)   Gomega_n symmetric positive semidefinite,
  (ii)  kernel compatibility: lifting a kernel vector of Gomega_n by any
        coordinate shift lands in the kernel of Gomega_{n+1},
  (iii) alpha symmetry: Gomega_n alpha_{j,n} = alpha_{j,n}^T Gomega_n,
  (iv)  when the sequence was extracted from a gradation, U-unitarity:
        Gomega_n = Umat_n^T G_n Umat_n.

Every functional-derived sequence passes all four; a hand-built sequence
may fail (ii), in which case no Fock reconstruction exists.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from ._util import atomic_write_text, format_matrix, parse_matrix
from .cap import CapOperators
from .errors import FileFormatError
from .gradation import GradedBasis
from .mindex import creation_shift, enumerate_level, level_dimension, tensor_metric
from .reports import Report

__all__ = [
    "JacobiSequence",
    "MeasureAnalysis",
    "build_U",
    "extract_jacobi",
    "verify_favard_conditions",
    "omega_matrix",
    "jacobi_file_text",
    "save_jacobi_file",
    "load_jacobi_file",
]


@dataclass
class JacobiSequence:
    """Levels 0..N of Favard data.

    gomega[n] is the d_n x d_n metric of the n-th symmetric tensor power;
    alpha[j][n] the preservation matrix of coordinate j at level n.  The
    alpha lists may stop one level short of N when the source moment budget
    ended at degree 2N (the level-N preservation block needs degree 2N+1).
    umat and grams are carried only by sequences extracted in-process; they
    do not survive serialization.
    """

    d: int
    N: int
    backend: str
    gomega: list
    alpha: dict
    umat: list = None
    grams: list = None
    tol: float = linalg.DEFAULT_TOL

    @property
    def alpha_levels(self) -> int:
        lengths = {len(v) for v in self.alpha.values()}
        if len(lengths) != 1:
            raise ValueError("ragged alpha lists")
        return lengths.pop() - 1

    def max_word_length(self) -> int:
        """Longest vacuum word whose expectation the data determines."""
        return 2 * self.N + 1 if self.alpha_levels >= self.N else 2 * self.N


def omega_matrix(js: JacobiSequence, n: int):
    """Omega_n = T_n^{-1} Gomega_n under the tensor metric m!/n!."""
    diag = tensor_metric(js.d, n).metric_diag
    if js.backend == "float":
        diag = [float(x) for x in diag]
    return [[row[c] / diag[r] for c in range(len(row))] for r, row in enumerate(js.gomega[n])]


def build_U(cap: CapOperators, n: int):
    """Matrix of U_n: column for e_m is the creation word of m applied to 1.

    Any word with occupation m gives the same column because creators
    commute; the canonical ascending word is used and checked against the
    reversed word.
    """
    if n > cap.N:
        raise ValueError(f"U_{n} needs creation data to level {n}, have {cap.N}")
    one = Fraction(1) if cap.backend == "exact" else 1.0
    if n == 0:
        return [[one]]
    cols = []
    for m in enumerate_level(cap.d, n):
        word = []
        for j, k in enumerate(m, start=1):
            word.extend([j] * k)
        vec = _apply_word(cap, word)
        check = _apply_word(cap, list(reversed(word)))
        dev = max((abs(x - y) for x, y in zip(vec, check)), default=0)
        ok = dev == 0 if cap.backend == "exact" else dev <= cap.tol
        if not ok:
            raise AssertionError(
                f"creation word order changed U_{n} column for {m} by {dev}"
            )
        cols.append(vec)
    return linalg.transpose(cols)


def _apply_word(cap, word):
    one = Fraction(1) if cap.backend == "exact" else 1.0
    vec = [one]
    for step, j in enumerate(word):
        vec = linalg.mat_vec(cap.aplus[j][step], vec)
    return vec


def extract_jacobi(gb: GradedBasis, cap: CapOperators) -> JacobiSequence:
    """Transport Gram matrices and preservation blocks through U_n.

    Gomega_n = Umat_n^T G_n Umat_n.  alpha_{j,n} solves
    Umat_n X = Azero[j][n] Umat_n in the minimum-norm sense; when Umat_n is
    singular (degenerate level) this extends alpha by zero on ker Gomega_n.
    """
    if gb.N != cap.N or gb.d != cap.d:
        raise ValueError("gradation and cap operators disagree on d or N")
    umats = [build_U(cap, n) for n in range(cap.N + 1)]
    gomega = []
    for n, u in enumerate(umats):
        g = gb.level(n).gram
        gomega.append(linalg.mat_mul(linalg.mat_mul(linalg.transpose(u), g), u))
    alpha = {}
    for j in range(1, cap.d + 1):
        mats = []
        for n in range(cap.alpha_levels + 1):
            u = umats[n]
            rhs = linalg.mat_mul(cap.azero[j][n], u)
            rhs_cols = linalg.transpose(rhs) if rhs else []
            sols = linalg.solve_min_norm(u, rhs_cols, cap.backend, cap.tol)
            mats.append(linalg.transpose(sols) if sols else [])
        alpha[j] = mats
    return JacobiSequence(
        d=cap.d,
        N=cap.N,
        backend=cap.backend,
        gomega=gomega,
        alpha=alpha,
        umat=umats,
        grams=[lvl.gram for lvl in gb.levels],
        tol=cap.tol,
    )


def verify_favard_conditions(js: JacobiSequence, tol=None) -> Report:
    """Pass/fail per Favard condition per level.

    The structural U-unitarity check runs only for sequences extracted
    in-process (file-loaded sequences carry no Umat or polynomial Grams).
    """
    tol = js.tol if tol is None else tol
    exact = js.backend == "exact"
    report = Report(name="favard conditions")
    for n, g in enumerate(js.gomega):
        dev = _sym_dev(g)
        report.add(
            f"Gomega symmetric level {n}",
            dev == 0 if exact else dev <= tol,
            deviation=dev,
        )
        ok, floor = linalg.psd_floor(g, js.backend, tol)
        report.add(
            f"Gomega PSD level {n}",
            ok,
            deviation=None if exact else floor,
            detail="" if ok else "negative direction found",
        )
        # the operator form: T_n Omega_n must reproduce Gomega_n exactly
        omega = omega_matrix(js, n)
        diag = tensor_metric(js.d, n).metric_diag
        if js.backend == "float":
            diag = [float(x) for x in diag]
        back = [[diag[r] * omega[r][c] for c in range(len(g))] for r in range(len(g))]
        dev = _max_diff_mat(back, g)
        report.add(
            f"tensor-metric symmetry of Omega level {n}",
            dev == 0 if exact else dev <= tol,
            deviation=dev,
        )
    for n in range(js.N):
        kern = linalg.nullspace(js.gomega[n], js.backend, tol)
        worst = 0
        for v in kern:
            for j in range(1, js.d + 1):
                shift = creation_shift(js.d, n, j)
                lifted = linalg.mat_vec(shift, v)
                image = linalg.mat_vec(js.gomega[n + 1], lifted)
                dev = max((abs(x) for x in image), default=0)
                if dev > worst:
                    worst = dev
        report.add(
            f"kernel lift compatibility level {n} -> {n + 1}",
            worst == 0 if exact else worst <= tol,
            deviation=worst,
        )
    for j, mats in sorted(js.alpha.items()):
        for n, a in enumerate(mats):
            lhs = linalg.mat_mul(js.gomega[n], a)
            rhs = linalg.mat_mul(linalg.transpose(a), js.gomega[n])
            dev = _max_diff_mat(lhs, rhs)
            report.add(
                f"alpha symmetry j={j} level {n}",
                dev == 0 if exact else dev <= tol,
                deviation=dev,
            )
    if js.umat is not None and js.grams is not None:
        for n in range(js.N + 1):
            u = js.umat[n]
            back = linalg.mat_mul(linalg.mat_mul(linalg.transpose(u), js.grams[n]), u)
            dev = _max_diff_mat(back, js.gomega[n])
            report.add(
                f"U-unitarity level {n}",
                dev == 0 if exact else dev <= tol,
                deviation=dev,
            )
    return report


def _sym_dev(g):
    worst = 0
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            d = abs(g[i][j] - g[j][i])
            if d > worst:
                worst = d
    return worst


def _max_diff_mat(a, b):
    worst = 0
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            d = abs(x - y)
            if d > worst:
                worst = d
    return worst


# --------------------------------------------------------------- file format

_TOP_KEYS = {"d", "N", "order", "metric", "levels"}
_LEVEL_KEYS = {"n", "Gomega", "alpha"}
ORDER_TAG = "graded-lex"
METRIC_TAG = "m!/n!"


def jacobi_file_text(js: JacobiSequence) -> str:
    """Canonical serialization; bit-exact round trips on the exact backend."""
    levels = []
    for n in range(js.N + 1):
        entry = {"n": n, "Gomega": format_matrix(js.gomega[n], js.backend)}
        if n <= js.alpha_levels:
            entry["alpha"] = {
                str(j): format_matrix(js.alpha[j][n], js.backend)
                for j in range(1, js.d + 1)
            }
        levels.append(entry)
    doc = {
        "d": js.d,
        "N": js.N,
        "order": ORDER_TAG,
        "metric": METRIC_TAG,
        "levels": levels,
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save_jacobi_file(js: JacobiSequence, path: str) -> None:
    atomic_write_text(path, jacobi_file_text(js))


def load_jacobi_file(path_or_text, is_text=False) -> JacobiSequence:
    """Parse and validate the Jacobi JSON format.

    Strict: exactly the documented keys, the documented order and metric
    tags, one level entry per n in 0..N in ascending order, square matrices
    of the right dimension.  Scalars must be 'p/q' strings (exact) or
    numbers (float), consistently; the first Gomega scalar picks the
    backend.  alpha may be omitted at the top level only (moment budget
    2N), never below.
    """
    if is_text:
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"Jacobi file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != _TOP_KEYS:
        raise FileFormatError(f"Jacobi file keys must be exactly {sorted(_TOP_KEYS)}")
    d, n_top = doc["d"], doc["N"]
    if not isinstance(d, int) or d < 1:
        raise FileFormatError(f"bad dimension {d!r}")
    if not isinstance(n_top, int) or n_top < 0:
        raise FileFormatError(f"bad level count {n_top!r}")
    if doc["order"] != ORDER_TAG:
        raise FileFormatError(f"unsupported basis order {doc['order']!r}")
    if doc["metric"] != METRIC_TAG:
        raise FileFormatError(f"unsupported tensor metric {doc['metric']!r}")
    levels = doc["levels"]
    if not isinstance(levels, list) or len(levels) != n_top + 1:
        raise FileFormatError(f"expected {n_top + 1} level entries")
    backend = None
    gomega = []
    alpha = {j: [] for j in range(1, d + 1)}
    alpha_stopped = False
    for n, entry in enumerate(levels):
        if not isinstance(entry, dict) or not set(entry) <= _LEVEL_KEYS:
            raise FileFormatError(f"level {n}: keys must be within {sorted(_LEVEL_KEYS)}")
        if entry.get("n") != n:
            raise FileFormatError(f"level entries must be ascending; expected n={n}")
        if "Gomega" not in entry:
            raise FileFormatError(f"level {n}: missing Gomega")
        dim = level_dimension(d, n)
        if backend is None:
            probe = entry["Gomega"]
            if not (isinstance(probe, list) and probe and isinstance(probe[0], list) and probe[0]):
                raise FileFormatError("level 0: Gomega must be a nonempty matrix")
            backend = "exact" if isinstance(probe[0][0], str) else "float"
        gomega.append(parse_matrix(entry["Gomega"], backend, dim, dim, f"Gomega level {n}"))
        if "alpha" in entry:
            if alpha_stopped:
                raise FileFormatError(f"level {n}: alpha present after a level without it")
            amap = entry["alpha"]
            if not isinstance(amap, dict) or set(amap) != {str(j) for j in range(1, d + 1)}:
                raise FileFormatError(
                    f"level {n}: alpha must map every coordinate '1'..'{d}'"
                )
            for j in range(1, d + 1):
                alpha[j].append(
                    parse_matrix(amap[str(j)], backend, dim, dim, f"alpha[{j}] level {n}")
                )
        else:
            if n < n_top:
                raise FileFormatError(f"level {n}: alpha may be omitted only at the top level")
            alpha_stopped = True
    return JacobiSequence(
        d=d, N=n_top, backend=backend, gomega=gomega, alpha=alpha
    )


# ----------------------------------------------------------------- analysis


@dataclass
class MeasureAnalysis:
    """Everything one run of the pipeline learned about a moment functional."""

    source: str
    backend: str
    d: int
    N: int
    tol: float
    level_dims: list
    ranks: list
    termination: object
    jacobi: JacobiSequence
    reports: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports.values())

    def to_dict(self):
        return {
            "source": self.source,
            "backend": self.backend,
            "d": self.d,
            "N": self.N,
            "tol": self.tol,
            "level_dims": self.level_dims,
            "ranks": self.ranks,
            "termination_level": self.termination,
            "ok": self.ok,
            "reports": {k: r.to_dict() for k, r in sorted(self.reports.items())},
        }


def analyze(phi, N, tol=linalg.DEFAULT_TOL, with_roundtrip=True) -> MeasureAnalysis:
    """Run the full pipeline on phi and verify every identity on the way."""
    from .cap import extract_cap, verify_adjointness, verify_commutators, verify_jacobi_relation
    from .fock import roundtrip_report
    from .gradation import build_gradation, termination_level
    from .moments import check_state_positivity

    gb = build_gradation(phi, N, tol)
    cap = extract_cap(gb)
    js = extract_jacobi(gb, cap)
    reports = {
        "positivity": check_state_positivity(phi, N, tol),
        "jacobi_relation": verify_jacobi_relation(cap, gb, phi, tol),
        "adjointness": verify_adjointness(cap, gb, tol),
        "commutators": verify_commutators(cap, tol),
        "favard_conditions": verify_favard_conditions(js, tol),
    }
    if with_roundtrip:
        reports["roundtrip"] = roundtrip_report(phi, N, tol, _prebuilt=(gb, cap, js))
    return MeasureAnalysis(
        source=phi.source,
        backend=phi.backend,
        d=phi.d,
        N=N,
        tol=tol,
        level_dims=[len(lvl.indices) for lvl in gb.levels],
        ranks=[lvl.rank for lvl in gb.levels],
        termination=termination_level(gb),
        jacobi=js,
        reports=reports,
    )
