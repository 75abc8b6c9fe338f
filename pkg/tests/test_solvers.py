import warnings

import pytest

from tensorlie import constructors as C
from tensorlie import solvers as S
from tensorlie.algebra_core import LinearMap
from tensorlie.errors import DimCapExceeded, FlavorMismatch, SideConditionViolated
from tensorlie.exactfield import GF, QQ


@pytest.fixture(scope="module")
def sl2():
    return C.sl_n(2, QQ)


@pytest.fixture(scope="module")
def sl3():
    return C.sl_n(3, QQ)


def test_sl2_values(sl2):
    assert S.centroid(sl2).dim == 1
    assert S.homlie_space(sl2).dim == 6
    assert S.third_power_assoc_space(sl2).dim == 3
    r = S.poisson_space(sl2)
    assert r.dim == 1 and r.quotient_dim == 0 and r.verified


def test_sl3_values(sl3):
    r = S.poisson_space(sl3)
    assert (r.dim, r.quotient_dim) == (2, 1)
    assert S.homlie_space(sl3).dim == 1
    assert S.invariant_forms(sl3).dim == 1
    assert S.skew_poisson_spaces(sl3, "left").dim == 0
    assert S.skew_poisson_spaces(sl3, "right").dim == 0
    assert S.derivations(sl3).dim == 8


def test_trivial_inside_poisson(sl3):
    P = S.poisson_space(sl3).space
    T = S.trivial_poisson_space(sl3).space
    assert T.dim == 1
    assert P.intersect(T).dim == T.dim


def test_jordan_structure_is_poisson(sl3):
    phi = S.jordan_structure(3, sl3)
    assert S.is_poisson(sl3, phi)
    assert S.poisson_space(sl3).space.contains_vector(phi.sparse_vector())


def test_centroid_of_current_is_algebra():
    A = C.dual_numbers(QQ)
    L = C.current_algebra(C.sl_n(2, QQ), A)
    assert S.centroid(L).dim == A.dim


def test_caps(sl3):
    big = C.sl_n_A(C.upper_triangular(2, GF(5)), 3)
    with pytest.raises(DimCapExceeded, match="--force"):
        S.poisson_space(big)
    assert S.centroid(sl3).dim == 1


def test_characteristic_warning():
    L = C.sl_n(2, GF(3))
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r = S.poisson_space(L)
    assert any(issubclass(x.category, S.CharacteristicWarning) for x in w)
    assert r.warnings


def test_report_json_shape(sl2):
    d = S.SOLVERS["poisson"](sl2).to_json()
    assert d["kind"] == "Poisson" and d["dim"] == 1 and d["ambient_dim"] == 27
    assert "basis" in d and d["verified"] is True
    assert "basis" not in S.poisson_space(sl2).to_json(include_basis=False)


def test_solver_requires_lie():
    with pytest.raises(FlavorMismatch):
        S.poisson_space(C.dual_numbers(QQ))


def test_sln_side_conditions():
    A = C.base_field(QQ)
    F = QQ
    with pytest.raises(SideConditionViolated, match="n >= 3"):
        S.sln_basic_poisson(A, 2, "i", {"u": {0: 1}})
    with pytest.raises(SideConditionViolated, match=r"a u / n \+ gamma\(a\) in \[A,A\]"):
        S.sln_basic_poisson(A, 3, "i", {"u": {0: 1}})
    zero = LinearMap(F, 1, 1, [[F.zero]])
    phi = S.sln_basic_poisson(A, 3, "i", {"u": {}, "gamma": zero})
    assert not phi.t


def test_sln_kind_iv_zero_delta_is_poisson():
    A = C.dual_numbers(GF(7))
    L = C.sl_n_A(A, 3)
    phi = S.sln_basic_poisson(A, 3, "iv", {"delta": {}}, alg=L)
    assert S.is_poisson(L, phi)


def test_seven_matrix_probe_reference():
    r = S.seven_matrix_probe(S.REFERENCE_X, S.REFERENCE_Y, S.REFERENCE_Z)
    assert r.rank == 6 and r.trace_difference == 0 and not r.independent
    with pytest.raises(ValueError):
        S.seven_matrix_probe([[1, 0, 0], [0, 0, 0], [0, 0, 0]], S.REFERENCE_Y, S.REFERENCE_Z)


def test_seven_matrix_sampling_deterministic():
    a = S.seven_matrix_sampling(50, seed=3)
    b = S.seven_matrix_sampling(50, seed=3)
    assert a == b and 0 <= a["dependent"] <= 50


def test_extended_current_v_is_poisson():
    K = C.kac_moody_analog()
    assert S.is_poisson(K, S.extended_current_structure(K, "v"))
    with pytest.raises(ValueError):
        S.extended_current_structure(K, "vi")


def test_extended_current_corrected_versions():
    K = C.kac_moody_analog()
    for kind in ("iii", "iv"):
        assert S.is_poisson(K, S.extended_current_structure(K, kind, corrected=True))
