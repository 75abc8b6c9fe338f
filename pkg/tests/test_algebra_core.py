import json

import pytest

from tensorlie import constructors as C
from tensorlie.algebra_core import (
    Algebra,
    BilinearMap,
    Flavor,
    Identity,
    center,
    check_identity,
    derived_series,
    derived_subalgebra,
    find_unit,
    ideal_closure,
    is_perfect,
    skew_symmetrize,
)
from tensorlie.errors import FlavorCertificationError, ParseError
from tensorlie.exactfield import GF, QQ
from tensorlie.linalg import SubspaceBasis


def test_sl2_table():
    L = C.sl_n(2, QQ)
    # basis E12, E21, H1
    assert L.product(0, 1) == {2: 1}
    assert L.product(2, 0) == {0: 2}
    assert L.product(2, 1) == {1: -2}


def test_declared_flavor_is_certified():
    t = {(0, 1): {0: QQ(1)}}
    with pytest.raises(FlavorCertificationError) as exc:
        Algebra(QQ, 2, t, Flavor.LIE)
    assert exc.value.counterexample == (0, 1)


def test_first_counterexample_is_lexicographic():
    alg = C.novikov_vii_zy(QQ)
    res = check_identity(alg, Identity.LEFT_NOVIKOV)
    assert not res.holds
    assert res.counterexample == (0, 1, 2)


def test_lie_admissible_two_dim_table():
    # xx = x, xy = x, yy = y
    one = QQ(1)
    alg = Algebra(QQ, 2, {(0, 0): {0: one}, (0, 1): {0: one}, (1, 1): {1: one}})
    assert check_identity(alg, Identity.LIE_ADMISSIBLE).holds
    assert check_identity(alg, Identity.RIGHT_NOVIKOV).counterexample == (0, 0, 1)
    assert check_identity(alg, Identity.LEFT_FERMIONIC_NOVIKOV).counterexample == (0, 0, 0)


def test_skew_symmetrization_of_matrices_is_lie():
    M = skew_symmetrize(C.matrix_algebra(2, QQ))
    assert M.flavor is Flavor.LIE
    assert center(M).dim == 1


def test_derived_and_center():
    L = C.sl_n(3, QQ)
    assert is_perfect(L)
    assert center(L).dim == 0
    H = C.heisenberg3(QQ)
    assert derived_subalgebra(H).dim == 1
    assert center(H).dim == 1
    assert derived_series(C.nonabelian2(QQ)) == [2, 1, 0]


def test_ideal_closure_in_sl2():
    L = C.sl_n(2, QQ)
    seed = SubspaceBasis.span(QQ, 3, [{0: QQ(1)}])
    assert ideal_closure(L, seed).dim == 3


def test_json_roundtrip():
    L = C.sl_n(3, GF(7))
    d = json.loads(L.dumps())
    back = Algebra.from_json(d)
    assert back.same_table(L) and back.field is GF(7)
    assert d["products"][0][3] in {"1", "6", "2", "5"}


def test_from_json_errors():
    with pytest.raises(ParseError):
        Algebra.from_json({"field": "Q"})
    with pytest.raises(ParseError):
        Algebra.from_json({"field": "Q", "dim": 1, "products": [[0, 0, 3, "1"]]})


def test_field_override_in_json():
    d = C.sl_n(2, QQ).to_json()
    L5 = Algebra.from_json(d, field=GF(5))
    assert L5.product(2, 1) == {1: GF(5)(3)}


def test_unit_detection():
    assert find_unit(C.truncated_poly(3, QQ)) == 0
    assert find_unit(C.nonabelian2(QQ)) is None


def test_bilinear_map_coordinates():
    L = C.sl_n(2, QQ)
    phi = BilinearMap.from_function(L, lambda i, j: L.product(i, j))
    back = BilinearMap.from_vector(L, phi.to_vector())
    assert back(L.basis_vector(0), L.basis_vector(1)) == {2: 1}
    assert phi.symmetric_part_zero()
