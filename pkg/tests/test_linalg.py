from fractions import Fraction

import pytest

from tensorlie.errors import AmbientMismatch, RowWidthMismatch
from tensorlie.exactfield import GF, QQ
from tensorlie.linalg import (
    Echelon,
    Matrix,
    SubspaceBasis,
    nullspace,
    rank_of_rows,
    rref,
    streaming_nullspace,
    subspace_ops,
)


def test_rref_is_canonical():
    m = Matrix(QQ, [[2, 4, 6], [1, 2, 4], [3, 6, 10]])
    r, rank = rref(m)
    assert rank == 2
    assert r.tolist()[0] == [1, 2, 0]
    assert r.tolist()[1] == [0, 0, 1]


def test_nullspace_kills_rows():
    m = Matrix(QQ, [[1, 1, 0, 0], [0, 1, 1, 0]])
    ns = nullspace(m)
    assert ns.dim == 2
    for v in ns.vectors:
        assert m.apply(list(v)) == [0, 0]


def test_rank_over_fp():
    F = GF(3)
    m = Matrix(F, [[1, 2], [2, 1]])
    assert m.rank() == 1
    assert Matrix(QQ, [[1, 2], [2, 1]]).rank() == 2


def test_streaming_nullspace_infers_field():
    ns = streaming_nullspace([{0: GF(5)(1), 1: GF(5)(1)}], 2)
    assert ns.field is GF(5) and ns.dim == 1
    with pytest.raises(RowWidthMismatch):
        streaming_nullspace([[0, 0, 0]], 2)


def test_subspace_ops_sum_intersect():
    a = SubspaceBasis.span(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    b = SubspaceBasis.span(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert (a + b).dim == 3
    assert (a & b).dim == 1
    assert [0, 5, 0] in (a & b)
    assert a.quotient_dim(b) == 1
    assert subspace_ops(a, b, "contains") is False


def test_ambient_mismatch():
    a = SubspaceBasis.full(QQ, 2)
    b = SubspaceBasis.full(QQ, 3)
    with pytest.raises(AmbientMismatch):
        a.sum(b)
    with pytest.raises(AmbientMismatch):
        Matrix(QQ, [[1, 2]]) @ Matrix(QQ, [[1, 2]])


def test_reduce_modulo_gives_complement():
    P = SubspaceBasis.span(QQ, 3, [[1, 1, 0], [0, 1, 1]])
    T = SubspaceBasis.span(QQ, 3, [[1, 1, 0]])
    reps = P.reduce_modulo(T)
    assert reps.dim == 1
    assert (reps + T) == P


def test_subspace_json_roundtrip():
    s = SubspaceBasis.span(GF(7), 3, [[1, 2, 3]])
    back = SubspaceBasis.from_json(GF(7), 3, s.to_json())
    assert back == s
    assert s.to_json() == [["1", "2", "3"]]


def test_echelon_rank_and_contains():
    e = Echelon(QQ, 3)
    assert e.add({0: Fraction(2), 2: Fraction(4)})
    assert not e.add({0: Fraction(1), 2: Fraction(2)})
    assert e.contains({0: Fraction(3), 2: Fraction(6)})
    assert rank_of_rows(GF(2), 2, [{0: 1, 1: 1}, {0: 1}]) == 2
