"""Property tests for the invariants each module promises."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tensorlie import constructors as C
from tensorlie import repcoh as R
from tensorlie import solvers as S
from tensorlie.algebra_core import (
    Algebra,
    Flavor,
    Identity,
    check_identity,
    center,
    derived_subalgebra,
    ideal_closure,
    is_ideal,
    skew_symmetrize,
)
from tensorlie.cli import main
from tensorlie.exactfield import GF, QQ
from tensorlie.linalg import Matrix, SubspaceBasis, nullspace, rref, streaming_nullspace

PRIMES = [2, 3, 5, 7, 101, 2147483647]

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10 ** 6)


@st.composite
def field_triples(draw):
    if draw(st.booleans()):
        F = QQ
        xs = [F(draw(rationals)) for _ in range(3)]
    else:
        F = GF(draw(st.sampled_from(PRIMES)))
        xs = [F(draw(st.integers(-10 ** 12, 10 ** 12))) for _ in range(3)]
    return F, xs


@given(field_triples())
def test_field_axioms(ft):
    F, (a, b, c) = ft
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    if a:
        assert a * (F.one / a) == F.one


@given(field_triples())
def test_canonical_form(ft):
    F, (a, b, _) = ft
    assert (a == b) == (F.format(a) == F.format(b))
    assert F.parse(F.format(a)) == a


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    F = draw(st.sampled_from([QQ, GF(5), GF(101)]))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = st.integers(-3, 3)
    rows = [[draw(entries) if draw(st.integers(0, 2)) == 0 else 0 for _ in range(c)] for _ in range(r)]
    return Matrix(F, rows, c)


@given(matrices())
def test_rref_idempotent_and_canonical(m):
    r1, k = rref(m)
    r2, k2 = rref(r1)
    assert r1 == r2 and k == k2
    pivots = []
    for i in range(k):
        row = r1.data[i]
        p = next(j for j, v in enumerate(row) if v)
        assert row[p] == m.field.one
        assert all(not r1.data[q][p] for q in range(r1.nrows) if q != i)
        pivots.append(p)
    assert pivots == sorted(pivots) and len(set(pivots)) == k


@given(matrices())
def test_nullspace_vectors_annihilate(m):
    N = nullspace(m)
    for v in N.vectors:
        assert all(not x for x in m.apply(list(v)))
    assert N.dim + m.rank() == m.ncols


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([QQ, GF(7)]), st.integers(0, 2 ** 32))
def test_streaming_agrees_with_dense(F, seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 50), rng.randint(1, 50)
    rows = [[rng.randint(-2, 2) if rng.random() < 0.15 else 0 for _ in range(c)] for _ in range(r)]
    dense = nullspace(Matrix(F, rows, c))
    sparse_rows = [{j: F(v) for j, v in enumerate(row) if v} for row in rows]
    assert streaming_nullspace(iter(sparse_rows), c, F) == dense


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_row_permutation(m, rnd):
    rows = [list(r) for r in m.data]
    rnd.shuffle(rows)
    assert Matrix(m.field, rows, m.ncols).rank() == m.rank()


# ---------------------------------------------------------------- algebras

STORED = [
    C.sl_n(2, QQ), C.sl_n(3, QQ), C.nonabelian2(QQ), C.heisenberg3(QQ),
    C.dual_numbers(QQ), C.local3(QQ), C.upper_triangular(2, QQ), C.matrix_algebra(2, QQ),
    C.novikov_vi(QQ), C.novikov_vii(QQ), C.novikov_vii_zy(QQ), C.witt(5),
]


@pytest.mark.parametrize("alg", STORED, ids=lambda a: a.name)
def test_skew_symmetrize_vs_lie_admissible(alg):
    assert check_identity(skew_symmetrize(alg), Identity.JACOBI).holds == \
        check_identity(alg, Identity.LIE_ADMISSIBLE).holds


@pytest.mark.parametrize("alg", [C.novikov_vi(QQ), C.novikov_vii(QQ)], ids=lambda a: a.name)
def test_left_novikov_lie_admissible(alg):
    assert alg.flavor is Flavor.LEFT_NOVIKOV
    assert check_identity(alg, Identity.LIE_ADMISSIBLE).holds


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([C.sl_n(2, QQ), C.nonabelian2(QQ), C.heisenberg3(QQ), C.upper_triangular(2, QQ)]),
       st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=2))
def test_ideal_closure_monotone_idempotent(alg, seeds):
    n = alg.dim
    vecs = [{i: alg.field(v) for i, v in enumerate(s[:n]) if v} for s in seeds]
    seed = SubspaceBasis.span(alg.field, n, vecs)
    I = ideal_closure(alg, seed)
    assert I.contains(seed) and is_ideal(alg, I)
    assert ideal_closure(alg, I) == I
    assert ideal_closure(alg, I.sum(seed)).contains(I)


def _permuted(alg, perm):
    inv = {p: i for i, p in enumerate(perm)}
    table = {}
    for (i, j), row in alg.table.items():
        table[(inv[i], inv[j])] = {inv[k]: c for k, c in row.items()}
    return Algebra(alg.field, alg.dim, table, alg.flavor, certify=False)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([C.nonabelian2(QQ), C.heisenberg3(QQ), C.upper_triangular(2, QQ), C.local3(QQ)]),
       st.randoms(use_true_random=False))
def test_center_derived_basis_permutation(alg, rnd):
    perm = list(range(alg.dim))
    rnd.shuffle(perm)
    P = _permuted(alg, perm)

    def back(sub):
        return SubspaceBasis.span(alg.field, alg.dim,
                                  [{perm[i]: c for i, c in v.items()} for v in sub.sparse_vectors()])

    assert back(center(P)) == center(alg)
    assert back(derived_subalgebra(P)) == derived_subalgebra(alg)


@pytest.mark.parametrize("name", sorted(C.CATALOG))
def test_catalog_lie_outputs_satisfy_jacobi(name):
    alg = C.catalog(name)
    if alg.flavor is Flavor.LIE:
        assert check_identity(alg, Identity.JACOBI).holds


@pytest.mark.parametrize("A", [C.dual_numbers(QQ), C.truncated_poly(3, QQ), C.base_field(QQ)], ids=lambda a: a.name)
def test_current_equals_dual_operad_and_sl_n_A(A):
    L = C.sl_n(3, QQ)
    cur = C.current_algebra(L, A)
    assert C.dual_operad_bracket(L, A).table == cur.table
    assert C.sl_n_A(A, 3).table == cur.table


@pytest.mark.parametrize("N", [C.novikov_vi(QQ), C.novikov_vii(QQ)], ids=lambda a: a.name)
def test_trivial_group_gives_skew_symmetrization(N):
    chi = C.quasicharacter_certify(C.trivial_group(), [1], QQ)
    assert C.n_chi_g(N, chi).table == skew_symmetrize(N).table


def _jacobi_iff_quasicharacter(N, G, F):
    bad = []
    for values in itertools.product(range(F.p), repeat=G.order):
        jac = check_identity(C.n_chi_bracket(N, G, [F(v) for v in values]), Identity.JACOBI).holds
        qc = C.quasicharacter_witness(G, [F(v) for v in values]) is None
        if jac != qc:
            bad.append(values)
    return bad


@pytest.mark.parametrize("N", [C.novikov_vi(GF(5)), C.novikov_vii(GF(5))], ids=lambda a: a.name)
@pytest.mark.parametrize("G", [C.trivial_group(), C.cyclic_group(2), C.cyclic_group(3)], ids=lambda g: g.name)
def test_jacobi_biconditional(N, G):
    assert _jacobi_iff_quasicharacter(N, G, GF(5)) == []


# ---------------------------------------------------------------- solvers

SOLVER_ALGS = [C.sl_n(2, QQ), C.nonabelian2(QQ), C.heisenberg3(QQ), C.sl_n(2, GF(5)),
               C.current_algebra(C.nonabelian2(QQ), C.dual_numbers(QQ))]


@pytest.mark.parametrize("alg", SOLVER_ALGS, ids=lambda a: a.name)
def test_solver_outputs_verified(alg):
    for name, solve in S.SOLVERS.items():
        r = solve(alg)
        assert r.verified, name


@pytest.mark.parametrize("alg", SOLVER_ALGS, ids=lambda a: a.name)
def test_solver_containments(alg):
    P = S.poisson_space(alg).space
    assert P.contains(S.trivial_poisson_space(alg).space)
    assert P.contains(S.skew_poisson_spaces(alg, "left").space)
    assert P.contains(S.skew_poisson_spaces(alg, "right").space)
    n = alg.dim
    ident = {i * n + i: alg.field.one for i in range(n)}
    assert S.homlie_space(alg).space.contains_vector(ident)
    assert S.centroid(alg).space.contains_vector(ident)


@pytest.mark.parametrize("alg", SOLVER_ALGS, ids=lambda a: a.name)
def test_trivial_structures_anticommutative(alg):
    n = alg.dim
    for v in S.trivial_poisson_space(alg).space.sparse_vectors():
        for i, j, k in itertools.product(range(n), repeat=3):
            assert v.get((i * n + j) * n + k, 0) + v.get((j * n + i) * n + k, 0) == 0


@pytest.mark.parametrize("A", [C.base_field(GF(101)), C.dual_numbers(GF(101))], ids=lambda a: a.name)
def test_poisson_quotient_of_current(A):
    L = C.sl_n(3, GF(101))
    q_L = S.poisson_space(L).quotient_dim
    assert S.poisson_space(C.current_algebra(L, A)).quotient_dim == q_L * A.dim


# ---------------------------------------------------------------- cohomology

@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["sl2", "aff2"]), st.integers(0, 2), st.integers(0, 2 ** 32))
def test_d_squared_zero(name, n, seed):
    L = C.sl_n(2, GF(7)) if name == "sl2" else C.nonabelian2(GF(7))
    for M in (R.adjoint_module(L), R.trivial_module(L, 2)):
        phi = R.random_cochain(L, M, n, random.Random(seed))
        assert R.apply_coboundary(R.apply_coboundary(phi)).coords() == {}


@pytest.mark.parametrize("L", [C.sl_n(2, GF(7)), C.nonabelian2(GF(7))], ids=lambda a: a.name)
@pytest.mark.parametrize("A", [C.dual_numbers(GF(7)), C.truncated_poly(3, GF(7))], ids=lambda a: a.name)
def test_chain_map_matrix(L, A):
    rng = random.Random(11)
    M = R.adjoint_module(L)
    V = R.regular_module(A)
    LA = C.current_algebra(L, A)
    MV = R.tensor_module(M, V, LA)
    for n in (1, 2):
        for _ in range(3):
            phi = R.random_cochain(L, M, n, rng)
            v = {j: GF(7)(rng.randint(0, 6)) for j in range(V.dim)}
            assert R.chain_map_residual(phi, {k: c for k, c in v.items() if c}, V, LA, MV) == {}


# ---------------------------------------------------------------- cli determinism

@pytest.mark.parametrize("argv", [
    ["solve", "poisson", "catalog:sl_n,n=3"],
    ["solve", "homlie", "catalog:nonabelian2"],
    ["probe7", "--samples", "30", "--seed", "4"],
])
def test_cli_byte_identical(argv, capsys):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
