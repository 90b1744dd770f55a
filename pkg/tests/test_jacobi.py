import itertools
import json
from fractions import Fraction
from math import factorial

import pytest

from favard.cap import extract_cap
from favard.errors import FileFormatError
from favard.gradation import build_gradation
from favard.jacobi import (
    JacobiSequence,
    METRIC_TAG,
    ORDER_TAG,
    analyze,
    build_U,
    extract_jacobi,
    jacobi_file_text,
    load_jacobi_file,
    omega_matrix,
    save_jacobi_file,
    verify_favard_conditions,
)
from favard.linalg import identity, mat_vec
from favard.mindex import enumerate_level, tensor_metric
from favard.moments import from_catalog

from oracles import brute_gram_schmidt_1d


def _sequence(name, d, N, **kw):
    phi = from_catalog(name, d, 2 * N + 1, **kw)
    gb = build_gradation(phi, N)
    cap = extract_cap(gb)
    return phi, gb, cap, extract_jacobi(gb, cap)


# --------------------------------------------------------- change of basis

def test_build_U_base_cases():
    phi, gb, cap, js = _sequence("exponential_product", 1, 3)
    assert build_U(cap, 0) == [[Fraction(1)]]
    assert build_U(cap, 1) == [[Fraction(1)]]


def test_gaussian_2d_U_is_identity():
    phi, gb, cap, js = _sequence("gaussian_product", 2, 3)
    for n in range(4):
        dim = len(enumerate_level(2, n))
        assert build_U(cap, n) == identity(dim, Fraction(1))


def test_rademacher_U_vanishes_on_dead_levels():
    phi, gb, cap, js = _sequence("rademacher_product", 1, 3)
    assert build_U(cap, 2) == [[Fraction(0)]]
    assert build_U(cap, 3) == [[Fraction(0)]]


def test_creation_words_are_order_independent():
    # every ordering of a creation word yields the same vector, exactly
    phi, gb, cap, js = _sequence("exponential_product", 3, 3)
    for m in enumerate_level(3, 3):
        word = []
        for j, mult in enumerate(m, start=1):
            word.extend([j] * mult)
        results = set()
        for perm in set(itertools.permutations(word)):
            vec = [Fraction(1)]
            for pos, j in enumerate(perm):
                vec = mat_vec(cap.aplus[j][pos], vec)
            results.add(tuple(vec))
        assert len(results) == 1


# ----------------------------------------------------------- extraction

def test_gaussian_1d_sequence():
    phi, gb, cap, js = _sequence("gaussian_product", 1, 4)
    for n in range(5):
        assert js.gomega[n] == [[Fraction(factorial(n))]]
        assert js.alpha[1][n] == [[Fraction(0)]]


def test_gaussian_2d_sequence_matches_scaled_metric():
    phi, gb, cap, js = _sequence("gaussian_product", 2, 4)
    for n in range(5):
        t = tensor_metric(2, n).metric_matrix()
        expect = [[factorial(n) * x for x in row] for row in t]
        assert js.gomega[n] == expect
    om = omega_matrix(js, 2)
    assert om == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]


def test_1d_collapse_to_classical_recurrence():
    for name, N in [("uniform_box", 5), ("exponential_product", 4)]:
        phi, gb, cap, js = _sequence(name, 1, N)
        moments = [phi.moment((k,)) for k in range(2 * N + 2)]
        _, norms, alphas, omegas = brute_gram_schmidt_1d(moments, N)
        for n in range(N + 1):
            assert js.gomega[n] == [[norms[n]]]
            assert js.alpha[1][n] == [[alphas[n]]]
        for n in range(1, N + 1):
            # level matrix accumulates the product; classical omega_n is the ratio
            assert omega_matrix(js, n) == [[norms[n]]]
            assert norms[n] / norms[n - 1] == omegas[n - 1]


def test_rademacher_sequence_values():
    phi, gb, cap, js = _sequence("rademacher_product", 1, 3)
    assert [js.gomega[n] for n in range(4)] == [[[1]], [[1]], [[0]], [[0]]]
    assert js.alpha[1][2] == [[Fraction(0)]]  # zero on the dead level


def test_tensor_metric_symmetry_of_omega():
    phi, gb, cap, js = _sequence("circle_uniform", 2, 4)
    for n in range(5):
        t = tensor_metric(2, n).metric_matrix()
        om = omega_matrix(js, n)
        lhs = [[sum(t[i][k] * om[k][j] for k in range(len(om))) for j in range(len(om))]
               for i in range(len(om))]
        assert lhs == js.gomega[n]


# ------------------------------------------------------------ conditions

def test_favard_conditions_pass_on_catalogs():
    cases = [("gaussian_product", 2, 4), ("uniform_box", 3, 2),
             ("exponential_product", 2, 3), ("circle_uniform", 2, 4),
             ("rademacher_product", 2, 3)]
    for name, d, N in cases:
        phi, gb, cap, js = _sequence(name, d, N)
        rep = verify_favard_conditions(js)
        assert rep.ok, "{}: {}".format(name, rep.summary())


def test_kernel_lift_violation_detected():
    # rank revives after dying: the lifted kernel vector escapes the kernel
    js = JacobiSequence(
        d=1, N=2, backend="exact",
        gomega=[[[Fraction(1)]], [[Fraction(0)]], [[Fraction(1)]]],
        alpha={1: [[[Fraction(0)]], [[Fraction(0)]], [[Fraction(0)]]]},
    )
    rep = verify_favard_conditions(js)
    assert not rep.ok
    assert "kernel lift" in rep.first_failure().label


def test_alpha_asymmetry_detected():
    js = JacobiSequence(
        d=2, N=1, backend="exact",
        gomega=[[[Fraction(1)]], identity(2, Fraction(1))],
        alpha={1: [[[Fraction(0)]], [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]]],
               2: [[[Fraction(0)]], identity(2, Fraction(0))]},
    )
    rep = verify_favard_conditions(js)
    assert not rep.ok
    assert "symmet" in rep.first_failure().label


def test_indefinite_gomega_detected():
    js = JacobiSequence(
        d=1, N=1, backend="exact",
        gomega=[[[Fraction(1)]], [[Fraction(-1)]]],
        alpha={1: [[[Fraction(0)]], [[Fraction(0)]]]},
    )
    rep = verify_favard_conditions(js)
    assert not rep.ok


def test_max_word_length_tracks_alpha_levels():
    phi, gb, cap, js = _sequence("gaussian_product", 1, 3)
    assert js.alpha_levels == 3
    assert js.max_word_length() == 7
    trimmed = JacobiSequence(d=1, N=3, backend="exact",
                             gomega=js.gomega,
                             alpha={1: js.alpha[1][:3]})
    assert trimmed.alpha_levels == 2
    assert trimmed.max_word_length() == 6


# ---------------------------------------------------------------- file I/O

def test_jacobi_file_roundtrip_is_byte_exact(tmp_path):
    for name, d, N in [("exponential_product", 1, 3), ("circle_uniform", 2, 3)]:
        phi, gb, cap, js = _sequence(name, d, N)
        text = jacobi_file_text(js)
        again = jacobi_file_text(load_jacobi_file(text, is_text=True))
        assert text == again
        path = tmp_path / "{}.json".format(name)
        save_jacobi_file(js, str(path))
        loaded = load_jacobi_file(str(path))
        assert loaded.gomega == js.gomega
        assert loaded.alpha == js.alpha
        assert loaded.backend == "exact"


def test_jacobi_file_carries_conventions():
    phi, gb, cap, js = _sequence("gaussian_product", 1, 2)
    data = json.loads(jacobi_file_text(js))
    assert data["order"] == ORDER_TAG == "graded-lex"
    assert data["metric"] == METRIC_TAG == "m!/n!"
    assert [lv["n"] for lv in data["levels"]] == [0, 1, 2]


def _payload(name="gaussian_product", d=1, N=2):
    phi = from_catalog(name, d, 2 * N + 1)
    gb = build_gradation(phi, N)
    js = extract_jacobi(gb, extract_cap(gb))
    return json.loads(jacobi_file_text(js))


def _reject(data):
    with pytest.raises(FileFormatError):
        load_jacobi_file(json.dumps(data), is_text=True)


def test_jacobi_file_schema_rejections():
    base = _payload()
    load_jacobi_file(json.dumps(base), is_text=True)  # sanity

    bad = _payload(); bad["order"] = "lex"
    _reject(bad)
    bad = _payload(); bad["metric"] = "1"
    _reject(bad)
    bad = _payload(); del bad["levels"]
    _reject(bad)
    bad = _payload(); bad["junk"] = True
    _reject(bad)
    bad = _payload(); bad["levels"][1]["n"] = 5
    _reject(bad)  # levels must be 0..N in order
    bad = _payload(); bad["levels"].pop()
    _reject(bad)  # N+1 levels required
    bad = _payload(); bad["levels"][1]["Gomega"] = [[ "1", "0" ]]
    _reject(bad)  # wrong dimensions
    bad = _payload(); del bad["levels"][0]["alpha"]
    _reject(bad)  # alpha may be omitted only at the top level
    bad = _payload(); bad["levels"][0]["alpha"] = {"1": [["1/2"]], "2": [["0"]]}
    _reject(bad)  # alpha keys must match d
    bad = _payload(); bad["levels"][0]["Gomega"] = [[1.0]]
    _reject(bad)  # float value mixed into a rational file
    _reject({"d": 1, "N": 0, "order": ORDER_TAG, "metric": METRIC_TAG,
             "levels": "not-a-list"})


def test_jacobi_file_top_alpha_omission_allowed():
    data = _payload("exponential_product", 1, 2)
    del data["levels"][2]["alpha"]
    js = load_jacobi_file(json.dumps(data), is_text=True)
    assert js.alpha_levels == 1
    assert js.max_word_length() == 4


def test_float_jacobi_file():
    data = _payload("uniform_box", 1, 2)
    for lv in data["levels"]:
        lv["Gomega"] = [[float(Fraction(x)) for x in row] for row in lv["Gomega"]]
        lv["alpha"] = {k: [[float(Fraction(x)) for x in row] for row in m]
                       for k, m in lv["alpha"].items()}
    js = load_jacobi_file(json.dumps(data), is_text=True)
    assert js.backend == "float"
    rep = verify_favard_conditions(js)
    assert rep.ok, rep.summary()


# ---------------------------------------------------------------- analyze

def test_analyze_bundles_everything():
    phi = from_catalog("circle_uniform", 2, 9)
    ma = analyze(phi, 4)
    assert ma.ok
    assert ma.termination is None
    assert ma.ranks == [1, 2, 2, 2, 2]
    assert {"positivity", "jacobi_relation", "adjointness", "commutators",
            "favard_conditions", "roundtrip"} <= set(ma.reports)
    d = ma.to_dict()
    assert d["ok"] is True
    json.dumps(d)  # serializable


def test_analyze_terminating_measure():
    phi = from_catalog("rademacher_product", 1, 9)
    ma = analyze(phi, 4)
    assert ma.ok
    assert ma.termination == 2
