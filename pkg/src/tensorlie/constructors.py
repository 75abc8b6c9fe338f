"""Constructions of Lie algebras from tensor products, plus a small catalog.

Tensor bases are row-major: ``e_i (x) f_k`` sits at index ``i * dim(A) + k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from tensorlie.algebra_core import (
    Algebra,
    Flavor,
    Identity,
    LinearMap,
    check_identity,
    derived_subalgebra,
    find_unit,
    skew_symmetrize,
    vadd,
)
from tensorlie.errors import (
    BadParams,
    CharDividesN,
    FlavorMismatch,
    FormNotInvariant,
    JacobiViolation,
    NotASemigroup,
    NotCyclicCocycle,
    NotDerivation,
    NotDualPair,
    NotQuasiCharacter,
    XiNotDInvariant,
)
from tensorlie.exactfield import QQ, Field, GF
from tensorlie.linalg import SubspaceBasis, solve_rows

LIE = Flavor.LIE
ACU = Flavor.ASSOC_COMM_UNITAL


def _require(alg: Algebra, *flavors: Flavor, what: str = "input"):
    if alg.flavor not in flavors:
        names = "/".join(f.value for f in flavors)
        raise FlavorMismatch(f"{what} {alg.name or ''} is {alg.flavor.value}, expected {names}")


def _same_field(*algs):
    f = algs[0].field
    for a in algs[1:]:
        if a.field is not f:
            raise FlavorMismatch(f"algebras over {f!r} and {a.field!r} combined")
    return f


def _certify_lie(alg: Algebra) -> Algebra:
    for ident in (Identity.ANTICOMMUTATIVE, Identity.JACOBI):
        res = check_identity(alg, ident)
        if not res:
            raise JacobiViolation(f"{alg.name}: {ident.value} fails at {res.counterexample}", res.counterexample)
    alg.flavor = LIE
    return alg


# ---------------------------------------------------------------- tensor constructions

def current_algebra(L: Algebra, A: Algebra, name: str | None = None) -> Algebra:
    """``L (x) A`` with ``[x (x) a, y (x) b] = [x, y] (x) ab``."""
    _require(L, LIE, what="L")
    _require(A, ACU, what="A")
    F = _same_field(L, A)
    m = A.dim
    table: dict = {}
    for (i, j), lrow in L.table.items():
        for (a, b), arow in A.table.items():
            row = {}
            for k, c in lrow.items():
                for t, d in arow.items():
                    row[k * m + t] = c * d
            table[(i * m + a, j * m + b)] = row
    names = [f"{x}*{y}" for x in L.basis_names for y in A.basis_names]
    out = Algebra(F, L.dim * m, table, Flavor.GENERIC, names, name=name or f"{L.name}(x){A.name}", certify=False)
    out.metadata = {"construction": "current", "L": L.name, "A": A.name, "dimA": m}
    return _certify_lie(out)


DUAL_PAIRS = {
    (Flavor.LIE, ACU),
    (ACU, Flavor.LIE),
    (Flavor.ASSOCIATIVE, Flavor.ASSOCIATIVE),
    (Flavor.LEFT_NOVIKOV, Flavor.RIGHT_NOVIKOV),
    (Flavor.LEFT_FERMIONIC_NOVIKOV, Flavor.RIGHT_FERMIONIC_NOVIKOV),
}


def _operad_flavor(alg: Algebra) -> Flavor:
    # commutative associative unital algebras are also associative ones
    return alg.flavor


def is_dual_pair(A: Algebra, B: Algebra) -> bool:
    fa, fb = A.flavor, B.flavor
    if (fa, fb) in DUAL_PAIRS:
        return True
    assoc = (Flavor.ASSOCIATIVE, ACU)
    return fa in assoc and fb in assoc


def dual_operad_bracket(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    """Skew bracket on ``A (x) B`` for algebras over dual operads.

    For associative and Novikov-type pairs the bracket is
    ``aa' (x) bb' - a'a (x) b'b``.  When one factor is a Lie algebra its
    product already is the bracket, and the induced structure is
    ``[a, a'] (x) bb'`` (the formula above would count it twice).
    """
    if not is_dual_pair(A, B):
        raise NotDualPair(f"{A.flavor.value} and {B.flavor.value} are not dual")
    F = _same_field(A, B)
    if A.flavor is LIE or B.flavor is LIE:
        if A.flavor is LIE:
            return current_algebra(A, B, name)
        # B Lie, A commutative: reorder into L (x) A coordinates then swap back
        out = current_algebra(B, A)
        m, n = A.dim, B.dim
        perm = lambda idx: (idx % m) * n + idx // m  # (i*m + a) -> a*n + i
        table = {
            (perm(p), perm(q)): {perm(k): c for k, c in row.items()} for (p, q), row in out.table.items()
        }
        names = [f"{x}*{y}" for x in A.basis_names for y in B.basis_names]
        res = Algebra(F, m * n, table, Flavor.GENERIC, names, name=name or f"{A.name}(x){B.name}", certify=False)
        return _certify_lie(res)
    n = B.dim
    table: dict = {}
    for (a, a2), arow in A.table.items():
        for (b, b2), brow in B.table.items():
            # aa' (x) bb' contributes to [(a,b), (a2,b2)]
            key = (a * n + b, a2 * n + b2)
            row = table.setdefault(key, {})
            for k, c in arow.items():
                for t, d in brow.items():
                    idx = k * n + t
                    row[idx] = row.get(idx, F.zero) + c * d
            # - a'a (x) b'b contributes to [(a2,b2), (a,b)]
            key = (a2 * n + b2, a * n + b)
            row = table.setdefault(key, {})
            for k, c in arow.items():
                for t, d in brow.items():
                    idx = k * n + t
                    row[idx] = row.get(idx, F.zero) - c * d
    names = [f"{x}*{y}" for x in A.basis_names for y in B.basis_names]
    out = Algebra(F, A.dim * n, table, Flavor.GENERIC, names, name=name or f"({A.name}(x){B.name})^(-)", certify=False)
    out.metadata = {"construction": "dual_operad", "A": A.name, "B": B.name}
    return _certify_lie(out)


# ---------------------------------------------------------------- matrices

def matrix_units(n: int) -> list[tuple[int, int]]:
    return [(r, c) for r in range(n) for c in range(n)]


def sl_basis(n: int) -> list[dict]:
    """Traceless basis: off-diagonal units row-major, then ``H_i = E_ii - E_{i+1,i+1}``."""
    out = [{(r, c): 1} for r in range(n) for c in range(n) if r != c]
    out += [{(i, i): 1, (i + 1, i + 1): -1} for i in range(n - 1)]
    return out


def sl_basis_names(n: int) -> list[str]:
    names = [f"E{r + 1}{c + 1}" for r in range(n) for c in range(n) if r != c]
    return names + [f"H{i + 1}" for i in range(n - 1)]


def matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    """Full matrix algebra ``M_n(K)`` on matrix units ``E_rc`` (index ``r*n + c``)."""
    one = field.one
    table = {}
    for r, c in matrix_units(n):
        for c2 in range(n):
            table[(r * n + c, c * n + c2)] = {r * n + c2: one}
    names = [f"E{r + 1}{c + 1}" for r, c in matrix_units(n)]
    return Algebra(field, n * n, table, Flavor.ASSOCIATIVE, names, name=f"M{n}", certify=True)


def upper_triangular(n: int, field: Field = QQ) -> Algebra:
    """Upper-triangular ``n x n`` matrices on units ``E_rc``, ``r <= c``."""
    units = [(r, c) for r in range(n) for c in range(r, n)]
    pos = {u: i for i, u in enumerate(units)}
    table = {}
    for (r, c) in units:
        for c2 in range(c, n):
            table[(pos[(r, c)], pos[(c, c2)])] = {pos[(r, c2)]: field.one}
    names = [f"E{r + 1}{c + 1}" for r, c in units]
    return Algebra(field, len(units), table, Flavor.ASSOCIATIVE, names, name=f"UT{n}", certify=True)


def gl_n(n: int, field: Field = QQ) -> Algebra:
    alg = skew_symmetrize(matrix_algebra(n, field))
    out = Algebra(field, alg.dim, alg.table, Flavor.LIE, alg.basis_names, name=f"gl{n}")
    return out


def unit_vector(alg: Algebra) -> dict | None:
    """A two-sided unit as a sparse vector (it need not be a basis element)."""
    n = alg.dim
    raw = alg.field.raw
    one = raw(alg.field.one)
    p = alg.field.p
    # unknowns u_0..u_{n-1}, homogenising column n carries the constant
    rows = []
    for j in range(n):
        for k in range(n):
            left, right = {}, {}
            for i in range(n):
                cl = alg.constant(i, j, k)
                if cl:
                    left[i] = raw(cl)
                cr = alg.constant(j, i, k)
                if cr:
                    right[i] = raw(cr)
            target = one if j == k else 0
            for row in (left, right):
                if target:
                    row[n] = (-target) % p if p else -target
                if row:
                    rows.append(row)
    sol = solve_rows(alg.field, n + 1, rows)
    for v in sol.raw_rows:
        if n in v:
            # scale so the homogenising coordinate is 1
            c = v[n]
            inv = pow(c, -1, p) if p else 1 / c
            return {k: alg.field.wrap(x * inv) for k, x in v.items() if k != n}
    return None


def center_assoc(A: Algebra) -> SubspaceBasis:
    n = A.dim
    raw = A.field.raw
    rows = []
    for j in range(n):
        for k in range(n):
            row = {}
            for i in range(n):
                c = A.constant(i, j, k) - A.constant(j, i, k)
                if c:
                    row[i] = raw(c)
            if row:
                rows.append(row)
    return solve_rows(A.field, n, rows)


@dataclass
class SlnA:
    """Bookkeeping for the split basis of ``sl_n(A)``."""

    n: int
    A: Algebra
    comm: SubspaceBasis  # [A, A] inside A
    n_sl: int

    def sl_index(self, p: int, k: int) -> int:
        return p * self.A.dim + k

    def e_index(self, q: int) -> int:
        return self.n_sl * self.A.dim + q

    def comm_coords(self, v: dict) -> dict | None:
        """Coordinates of an A-vector in the RREF basis of ``[A, A]``."""
        coords = {}
        for q, row in enumerate(self.comm.sparse_vectors()):
            c = v.get(min(row))
            if c:
                coords[q] = c
        back: dict = {}
        for q, c in coords.items():
            back = vadd(back, self.comm.sparse_vectors()[q], c)
        return coords if back == {k: x for k, x in v.items() if x} else None


def sl_n_A(A: Algebra, n: int, name: str | None = None, with_info: bool = False):
    """``sl_n(A) = (sl_n(K) (x) A) + (E (x) [A, A])`` with the matrix commutator."""
    if n < 2:
        raise BadParams("n must be at least 2")
    _require(A, Flavor.ASSOCIATIVE, ACU, what="A")
    F = A.field
    if F.characteristic and n % F.characteristic == 0:
        raise CharDividesN(f"characteristic {F.characteristic} divides n = {n}")
    if A.unit_index is None and unit_vector(A) is None:
        raise FlavorMismatch(f"{A.name} has no unit")
    comm = derived_subalgebra(A)
    info = SlnA(n, A, comm, n * n - 1)
    m = A.dim
    sl = sl_basis(n)
    inv_n = F.one / F(n)
    comm_vecs = comm.sparse_vectors()

    # every basis element as a gl_n(A) element {(r, c): A-vector}
    elems = []
    for X in sl:
        for k in range(m):
            elems.append({rc: {k: F(c)} for rc, c in X.items()})
    for v in comm_vecs:
        elems.append({(r, r): dict(v) for r in range(n)})

    def gl_mul(M, N):
        out: dict = {}
        for (r, s), a in M.items():
            for (s2, c), b in N.items():
                if s != s2:
                    continue
                prod = A.mul(a, b)
                if prod:
                    out[(r, c)] = vadd(out.get((r, c), {}), prod)
        return out

    def decompose(M) -> dict:
        res: dict = {}
        for (r, c), a in M.items():
            if r != c:
                p = sl.index({(r, c): 1})
                for k, x in a.items():
                    res[p * m + k] = res.get(p * m + k, F.zero) + x
        diag = [M.get((r, r), {}) for r in range(n)]
        t: dict = {}
        for d in diag:
            t = vadd(t, d)
        tn = {k: x * inv_n for k, x in t.items()}
        run: dict = {}
        for i in range(n - 1):
            run = vadd(run, vadd(diag[i], tn, -1))
            p = n * (n - 1) + i
            for k, x in run.items():
                res[p * m + k] = res.get(p * m + k, F.zero) + x
        if tn:
            coords = info.comm_coords(tn)
            if coords is None:
                raise BadParams("trace outside [A, A]; bracket not closed")
            for q, x in coords.items():
                res[info.e_index(q)] = res.get(info.e_index(q), F.zero) + x
        return {k: x for k, x in res.items() if x}

    table = {}
    for i, Mi in enumerate(elems):
        for j, Mj in enumerate(elems):
            if j < i:
                continue
            br = decompose(_gl_sub(gl_mul(Mi, Mj), gl_mul(Mj, Mi)))
            if br:
                table[(i, j)] = br
                table[(j, i)] = {k: -x for k, x in br.items()}
    names = [f"{x}*{a}" for x in sl_basis_names(n) for a in A.basis_names]
    names += [f"E*c{q}" for q in range(comm.dim)]
    out = Algebra(F, len(elems), table, Flavor.GENERIC, names, name=name or f"sl{n}({A.name})", certify=False)
    out.metadata = {"construction": "sl_n_A", "n": n, "A": A.name, "dimA": m, "comm_dim": comm.dim}
    _certify_lie(out)
    return (out, info) if with_info else out


def _gl_sub(P, Q):
    out = dict(P)
    for rc, v in Q.items():
        w = vadd(out.get(rc, {}), v, -1)
        if w:
            out[rc] = w
        else:
            out.pop(rc, None)
    return out


def sl_n(n: int, field: Field = QQ) -> Algebra:
    alg = sl_n_A(base_field(field), n, name=f"sl{n}")
    alg.basis_names = sl_basis_names(n)
    return alg


def sl_matrix(n: int, i: int) -> dict:
    """The matrix of basis element ``i`` of ``sl_n`` as ``{(r, c): int}``."""
    return sl_basis(n)[i]


# ---------------------------------------------------------------- forms and cocycles

@dataclass
class InvariantForm:
    algebra: Algebra
    b: list

    def __post_init__(self):
        L = self.algebra
        F = L.field
        n = L.dim
        self.b = [[F(x) for x in row] for row in self.b]
        for i in range(n):
            for j in range(n):
                if self.b[i][j] != self.b[j][i]:
                    raise FormNotInvariant(f"form not symmetric at ({i}, {j})")
        for x, y, z in itertools.product(range(n), repeat=3):
            s = self.value(L.product(x, y), {z: F.one}) + self.value({y: F.one}, L.product(x, z))
            if s:
                raise FormNotInvariant(f"invariance fails at {(x, y, z)}")

    def value(self, u: dict, v: dict):
        F = self.algebra.field
        s = F.zero
        for i, a in u.items():
            for j, c in v.items():
                if self.b[i][j]:
                    s = s + a * c * self.b[i][j]
        return s


@dataclass
class CyclicCocycle:
    algebra: Algebra
    xi: list

    def __post_init__(self):
        A = self.algebra
        F = A.field
        n = A.dim
        self.xi = [[F(x) for x in row] for row in self.xi]
        for i in range(n):
            for j in range(n):
                if self.xi[i][j] != -self.xi[j][i]:
                    raise NotCyclicCocycle(f"xi not skew at ({i}, {j})")
        for a, b, c in itertools.product(range(n), repeat=3):
            one = F.one
            s = (
                self.value(A.product(a, b), {c: one})
                + self.value(A.product(c, a), {b: one})
                + self.value(A.product(b, c), {a: one})
            )
            if s:
                raise NotCyclicCocycle(f"cyclic condition fails at {(a, b, c)}")

    def value(self, u: dict, v: dict):
        F = self.algebra.field
        s = F.zero
        for i, a in u.items():
            for j, c in v.items():
                if self.xi[i][j]:
                    s = s + a * c * self.xi[i][j]
        return s

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.xi)


def trace_form(n: int, field: Field = QQ, L: Algebra | None = None) -> InvariantForm:
    """``<X, Y> = Tr(XY)`` on ``sl_n`` in the standard basis."""
    L = L or sl_n(n, field)
    mats = sl_basis(n)
    b = []
    for X in mats:
        row = []
        for Y in mats:
            t = 0
            for (r, s), x in X.items():
                for (s2, c), y in Y.items():
                    if s == s2 and r == c:
                        t += x * y
            row.append(field(t))
        b.append(row)
    return InvariantForm(L, b)


def is_derivation(A: Algebra, d: LinearMap) -> tuple | None:
    """First basis pair where the Leibniz rule fails, or None."""
    one = A.field.one
    for i, j in itertools.product(range(A.dim), repeat=2):
        lhs = d.apply(A.product(i, j))
        rhs = vadd(A.mul(d.image(i), {j: one}), A.mul({i: one}, d.image(j)))
        if vadd(lhs, rhs, -1):
            return (i, j)
    return None


def _compose(d1: LinearMap, d2: LinearMap) -> LinearMap:
    F = d1.field
    n = d1.domain_dim
    m = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        v = d1.apply(d2.image(i))
        for k, c in v.items():
            m[k][i] = c
    return LinearMap(F, n, n, m)


def extended_current(
    L: Algebra,
    A: Algebra,
    D: Sequence[LinearMap],
    form: InvariantForm,
    xi: CyclicCocycle,
    name: str | None = None,
) -> Algebra:
    """``(L (x) A) + Kz + D`` with central term ``<x, y> xi(a, b) z``.

    Basis: the current part row-major, then ``z``, then the derivations in
    the given order.  ``[x (x) a, d] = x (x) d(a)``.
    """
    _require(L, LIE, what="L")
    _require(A, ACU, what="A")
    F = _same_field(L, A)
    for q, d in enumerate(D):
        bad = is_derivation(A, d)
        if bad is not None:
            raise NotDerivation(f"D[{q}] violates the Leibniz rule at {bad}")
    for q, d in enumerate(D):
        for a, b in itertools.product(range(A.dim), repeat=2):
            if xi.value(d.image(a), {b: F.one}) + xi.value({a: F.one}, d.image(b)):
                raise XiNotDInvariant(f"xi not invariant under D[{q}] at {(a, b)}")
    if form.algebra.dim != L.dim:
        raise FormNotInvariant("form lives on a different algebra")
    if xi.algebra.dim != A.dim:
        raise NotCyclicCocycle("cocycle lives on a different algebra")
    m = A.dim
    nc = L.dim * m
    zi = nc
    dbase = nc + 1
    # brackets of derivations expressed in D
    dvec = [d.to_vector() for d in D]
    dspan = SubspaceBasis.span(F, m * m, dvec) if D else SubspaceBasis.zero(F, m * m)
    if dspan.dim != len(D):
        raise BadParams("derivations are linearly dependent")
    table: dict = {}
    for (i, j), lrow in L.table.items():
        for a in range(m):
            for b in range(m):
                ab = A.product(a, b)
                row = {}
                for k, c in lrow.items():
                    for t, e in ab.items():
                        row[k * m + t] = c * e
                if row:
                    table[(i * m + a, j * m + b)] = row
    for i in range(L.dim):
        for j in range(L.dim):
            fv = form.b[i][j]
            if not fv:
                continue
            for a in range(m):
                for b in range(m):
                    xv = xi.xi[a][b]
                    if xv:
                        key = (i * m + a, j * m + b)
                        row = table.setdefault(key, {})
                        row[zi] = row.get(zi, F.zero) + fv * xv
    for q, d in enumerate(D):
        for i in range(L.dim):
            for a in range(m):
                img = d.image(a)
                row = {i * m + t: c for t, c in img.items()}
                if row:
                    table[(i * m + a, dbase + q)] = row
                    table[(dbase + q, i * m + a)] = {k: -c for k, c in row.items()}
    for q, r in itertools.combinations(range(len(D)), 2):
        comm = _compose(D[q], D[r])
        comm2 = _compose(D[r], D[q])
        vec = [x - y for x, y in zip(comm.to_vector(), comm2.to_vector())]
        if not any(vec):
            continue
        coords = _solve_in_span(F, dvec, vec)
        if coords is None:
            raise BadParams("D is not closed under the commutator")
        row = {dbase + s: c for s, c in coords.items() if c}
        table[(dbase + q, dbase + r)] = row
        table[(dbase + r, dbase + q)] = {k: -c for k, c in row.items()}
    table = {k: {t: c for t, c in v.items() if c} for k, v in table.items()}
    names = [f"{x}*{y}" for x in L.basis_names for y in A.basis_names] + ["z"] + [f"d{q}" for q in range(len(D))]
    out = Algebra(F, nc + 1 + len(D), table, Flavor.GENERIC, names, name=name or f"ext({L.name},{A.name})", certify=False)
    out.metadata = {"construction": "extended_current", "L": L.name, "A": A.name, "dimA": m,
                    "z_index": zi, "d_indices": [dbase + q for q in range(len(D))]}
    return _certify_lie(out)


def _solve_in_span(F: Field, vectors: list, target: list) -> dict | None:
    """Coefficients expressing ``target`` in ``vectors`` (assumed independent)."""
    k = len(vectors)
    raw = F.raw
    p = F.p
    rows = []
    for pos in range(len(target)):
        row = {}
        for s, v in enumerate(vectors):
            if v[pos]:
                row[s] = raw(v[pos])
        if target[pos]:
            t = raw(target[pos])
            row[k] = (-t) % p if p else -t
        if row:
            rows.append(row)
    sol = solve_rows(F, k + 1, rows)
    for v in sol.raw_rows:
        if k in v:
            c = v[k]
            inv = pow(c, -1, p) if p else 1 / c
            return {s: F.wrap(x * inv) for s, x in v.items() if s != k}
    return None


# ---------------------------------------------------------------- semigroups

@dataclass
class Semigroup:
    """Finite semigroup given by its operation table ``table[a][b]``."""

    order: int
    table: list
    labels: list | None = None
    name: str = ""

    def __post_init__(self):
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotASemigroup("table is not order x order")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise NotASemigroup("table entry outside the semigroup")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise NotASemigroup(f"not associative at {(a, b, c)}")
        self.commutative = all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))
        if self.labels is None:
            self.labels = [str(a) for a in range(n)]

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def unit(self) -> int | None:
        for e in range(self.order):
            if all(self.table[e][a] == a == self.table[a][e] for a in range(self.order)):
                return e
        return None

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table, "name": self.name}

    @classmethod
    def from_json(cls, d: dict) -> "Semigroup":
        return cls(int(d["order"]), [list(map(int, r)) for r in d["table"]], d.get("labels"), d.get("name", ""))


def cyclic_group(n: int) -> Semigroup:
    """``(Z/n, +)``."""
    return Semigroup(n, [[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z/{n}")


def shifted_cyclic(n: int) -> Semigroup:
    """``(Z/n, a*b = a + b - 1)``, unit 1: the mod-n shadow of monomial degrees under ``t^a t^b = t^(a+b-1)``."""
    return Semigroup(n, [[(a + b - 1) % n for b in range(n)] for a in range(n)], name=f"(Z/{n},*)")


def trivial_group() -> Semigroup:
    return Semigroup(1, [[0]], name="1")


def semigroup_algebra(G: Semigroup, field: Field = QQ) -> Algebra:
    one = field.one
    table = {(a, b): {G.op(a, b): one} for a in range(G.order) for b in range(G.order)}
    u = G.unit()
    if G.commutative and u is not None:
        flavor = ACU
    else:
        flavor = Flavor.ASSOCIATIVE
    names = [f"g{l}" for l in G.labels]
    return Algebra(field, G.order, table, flavor, names, unit_index=u, name=f"K[{G.name}]")


@dataclass
class QuasiCharacter:
    group: Semigroup
    values: list

    def __call__(self, a: int):
        return self.values[a]

    def to_json(self, field: Field) -> dict:
        out = self.group.to_json()
        out["chi"] = [field.format(v) for v in self.values]
        return out


def quasicharacter_witness(G: Semigroup, values: Sequence) -> tuple | None:
    """First ``(a, b, c)`` with ``c < b`` violating ``chi(ab) - chi(ac) = chi(b) - chi(c)``.

    The identity is antisymmetric in ``(b, c)`` and trivial for ``b == c``,
    so only ``c < b`` needs checking.
    """
    n = G.order
    for a in range(n):
        for b in range(n):
            for c in range(b):
                if values[G.op(a, b)] - values[G.op(a, c)] != values[b] - values[c]:
                    return (a, b, c)
    return None


def quasicharacter_certify(G: Semigroup, chi: Sequence | dict, field: Field = QQ) -> QuasiCharacter:
    if isinstance(chi, dict):
        chi = [chi[a] for a in range(G.order)]
    values = [field(v) for v in chi]
    if len(values) != G.order:
        raise BadParams("chi must have one value per semigroup element")
    w = quasicharacter_witness(G, values)
    if w is not None:
        raise NotQuasiCharacter(w)
    return QuasiCharacter(G, values)


def n_chi_bracket(N: Algebra, G: Semigroup, values: Sequence, name: str = "") -> Algebra:
    """The bracket ``[x (x) a, y (x) b] = (chi(a) xy - chi(b) yx) (x) ab`` for any map chi (uncertified)."""
    F = N.field
    g = G.order
    vals = [F(v) for v in values]
    table: dict = {}
    for x in range(N.dim):
        for y in range(N.dim):
            xy, yx = N.product(x, y), N.product(y, x)
            for a in range(g):
                for b in range(g):
                    ab = G.op(a, b)
                    row: dict = {}
                    for k, c in xy.items():
                        row[k * g + ab] = row.get(k * g + ab, F.zero) + vals[a] * c
                    for k, c in yx.items():
                        row[k * g + ab] = row.get(k * g + ab, F.zero) - vals[b] * c
                    row = {k: c for k, c in row.items() if c}
                    if row:
                        table[(x * g + a, y * g + b)] = row
    names = [f"{x}*{l}" for x in N.basis_names for l in G.labels]
    return Algebra(F, N.dim * g, table, Flavor.GENERIC, names, name=name, certify=False)


def n_chi_g(N: Algebra, chi: QuasiCharacter, name: str | None = None) -> Algebra:
    """The Lie algebra ``N_chi[G]`` of a left Novikov algebra and a quasi-character."""
    _require(N, Flavor.LEFT_NOVIKOV, ACU, what="N")
    if not chi.group.commutative:
        raise BadParams("G must be commutative")
    out = n_chi_bracket(N, chi.group, chi.values, name or f"{N.name}_chi[{chi.group.name}]")
    out.metadata = {"construction": "n_chi_g", "N": N.name, "G": chi.group.name,
                    "chi": [N.field.format(v) for v in chi.values]}
    return _certify_lie(out)


def chi_semigroup_algebra(chi: QuasiCharacter, field: Field) -> Algebra:
    """``(K[G], a . b = chi(a) ab)``, a right Novikov algebra."""
    G = chi.group
    table = {}
    for a in range(G.order):
        for b in range(G.order):
            c = field(chi(a))
            if c:
                table[(a, b)] = {G.op(a, b): c}
    names = [f"g{l}" for l in G.labels]
    return Algebra(field, G.order, table, Flavor.RIGHT_NOVIKOV, names, name=f"K[{G.name}]_chi")


def affinization(N: Algebra, p: int, name: str | None = None) -> Algebra:
    """Mod-p analog of the affinization: ``G = (Z/p, a*b = a+b-1)``, ``chi(a) = a``.

    Basis ``x (x) t^a`` at index ``x * p + a``; bracket
    ``[x t^m, y t^n] = (m xy - n yx) t^(m+n-1)`` with exponents mod p.
    """
    F = N.field
    if F.characteristic != p:
        raise BadParams(f"affinization mod {p} needs a field of characteristic {p}")
    G = shifted_cyclic(p)
    chi = quasicharacter_certify(G, list(range(p)), F)
    out = n_chi_g(N, chi, name or f"aff_{p}({N.name})")
    out.metadata["analog"] = f"mod-{p} analog; exponents in Z/{p}"
    out.basis_names = [f"{x}t^{a}" for x in N.basis_names for a in range(p)]
    return out


# ---------------------------------------------------------------- catalog

def base_field(field: Field = QQ) -> Algebra:
    return Algebra(field, 1, {(0, 0): {0: field.one}}, ACU, ["1"], unit_index=0, name="K")


def truncated_poly(k: int, field: Field = QQ) -> Algebra:
    """``K[t]/(t^k)`` on ``1, t, ..., t^(k-1)``."""
    table = {(a, b): {a + b: field.one} for a in range(k) for b in range(k) if a + b < k}
    names = ["1"] + [f"t^{a}" if a > 1 else "t" for a in range(1, k)]
    return Algebra(field, k, table, ACU, names, unit_index=0, name=f"K[t]/(t^{k})")


def dual_numbers(field: Field = QQ) -> Algebra:
    alg = truncated_poly(2, field)
    alg.name = "K[eps]"
    alg.basis_names = ["1", "eps"]
    return alg


def local3(field: Field = QQ) -> Algebra:
    """Basis ``1, x, y`` with ``x^2 = xy = yx = y^2 = 0``."""
    one = field.one
    table = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (0, 2): {2: one}, (2, 0): {2: one}}
    return Algebra(field, 3, table, ACU, ["1", "x", "y"], unit_index=0, name="local3")


def cyclic_group_algebra(n: int, field: Field = QQ) -> Algebra:
    """``K[Z/n] = K[t]/(t^n - 1)`` on ``t^0, ..., t^(n-1)``."""
    alg = semigroup_algebra(cyclic_group(n), field)
    alg.name = f"K[t]/(t^{n}-1)"
    alg.basis_names = [f"t^{a}" for a in range(n)]
    return alg


def abelian(n: int, field: Field = QQ) -> Algebra:
    return Algebra(field, n, {}, LIE, name=f"ab{n}")


def heisenberg3(field: Field = QQ) -> Algebra:
    one = field.one
    table = {(0, 1): {2: one}, (1, 0): {2: -one}}
    return Algebra(field, 3, table, LIE, ["p", "q", "c"], name="heis3")


def nonabelian2(field: Field = QQ) -> Algebra:
    """``[x, y] = y``."""
    one = field.one
    return Algebra(field, 2, {(0, 1): {1: one}, (1, 0): {1: -one}}, LIE, ["x", "y"], name="aff2")


def witt(p: int, field: Field | None = None) -> Algebra:
    """``p``-dimensional Witt algebra ``[e_m, e_n] = (m - n) e_{m+n}``, indices mod p, as ``K_chi[Z/p]``."""
    F = field or GF(p)
    chi = quasicharacter_certify(cyclic_group(p), list(range(p)), F)
    out = n_chi_g(base_field(F), chi, name=f"W{p}")
    out.basis_names = [f"e{a}" for a in range(p)]
    return out


def novikov_vi(field: Field = QQ) -> Algebra:
    """Basis ``x, y``: ``xx = x``, ``yx = y``, other products zero."""
    one = field.one
    table = {(0, 0): {0: one}, (1, 0): {1: one}}
    return Algebra(field, 2, table, Flavor.LEFT_NOVIKOV, ["x", "y"], name="novikov_vi")


def novikov_vii(field: Field = QQ) -> Algebra:
    """Basis ``x, y, z``: ``xx = x``, ``xz = z/2``, ``yx = y``, ``zx = z``, ``zz = y``.

    This is the left Novikov table whose affinization gives the brackets
    ``[e_m, f_r] = (m/2 - r) f``, ``[f_r, f_s] = (r - s) h``, ``[h, f] = 0``.
    See :func:`novikov_vii_zy` for the variant with ``zy = y, zz = 0``.
    """
    if field.characteristic == 2:
        raise BadParams("the table has a coefficient 1/2; characteristic 2 excluded")
    one = field.one
    half = one / field(2)
    table = {(0, 0): {0: one}, (0, 2): {2: half}, (1, 0): {1: one}, (2, 0): {2: one}, (2, 2): {1: one}}
    return Algebra(field, 3, table, Flavor.LEFT_NOVIKOV, ["x", "y", "z"], name="novikov_vii")


def novikov_vii_zy(field: Field = QQ) -> Algebra:
    """Variant with ``zy = y`` and ``zz = 0``; it is not left Novikov, so its flavor is Generic."""
    if field.characteristic == 2:
        raise BadParams("the table has a coefficient 1/2; characteristic 2 excluded")
    one = field.one
    half = one / field(2)
    table = {(0, 0): {0: one}, (0, 2): {2: half}, (1, 0): {1: one}, (2, 0): {2: one}, (2, 1): {1: one}}
    return Algebra(field, 3, table, Flavor.GENERIC, ["x", "y", "z"], name="novikov_vii_zy")


def bi_zassenhaus(g: int, h: int, field: Field | None = None) -> Algebra:
    """Char-2 family on ``e_(i, alpha)``, ``i in Z/2``, ``alpha in Z/2^(g+h)``; index ``i * 2^(g+h) + alpha``.

    The exponent ``alpha^(2^g - 1)`` is taken in ``Z/2^(g+h)`` and then
    reduced to a coefficient in F_2.
    """
    F = field or GF(2)
    if F.characteristic != 2:
        raise BadParams("bi-Zassenhaus algebras are defined in characteristic 2")
    if g < 2 or h < 1:
        raise BadParams("need g >= 2 and h >= 1")
    N = 2 ** (g + h)
    e = 2 ** g - 1
    table: dict = {}

    def put(i, j, k, c):
        c = F(c % 2)
        if c:
            table[(i, j)] = {k: c}

    for a in range(N):
        for b in range(N):
            s = (a + b) % N
            put(a, b, s, a + b)
            put(a, N + b, N + s, a + b)
            put(N + b, a, N + s, a + b)
            put(N + a, N + b, s, pow(a, e, N) + pow(b, e, N))
    names = [f"e(0,{a})" for a in range(N)] + [f"e(1,{a})" for a in range(N)]
    out = Algebra(F, 2 * N, table, Flavor.GENERIC, names, name=f"bZ({g},{h})", certify=False)
    out.metadata = {"g": g, "h": h}
    return _certify_lie(out)


def t_derivation(A: Algebra, n: int) -> LinearMap:
    """``t d/dt`` on ``K[t]/(t^n - 1)``: ``t^a -> a t^a``."""
    F = A.field
    return LinearMap.from_vector(F, n, n, {a * n + a: F(a) for a in range(n)})


def residue_cocycle(A: Algebra, n: int) -> CyclicCocycle:
    """``xi(t^a, t^b) = a`` if ``a + b = 0 mod n`` else 0."""
    F = A.field
    xi = [[F(a) if (a + b) % n == 0 else F.zero for b in range(n)] for a in range(n)]
    return CyclicCocycle(A, xi)


def kac_moody_analog(p: int = 7, n: int = 2) -> Algebra:
    """Mod-p extended current algebra ``sl_n (x) F_p[t]/(t^p - 1) + Kz + K t d/dt``."""
    F = GF(p)
    L = sl_n(n, F)
    A = cyclic_group_algebra(p, F)
    form = trace_form(n, F, L)
    alg = extended_current(L, A, [t_derivation(A, p)], form, residue_cocycle(A, p), name=f"KM_{p}(sl{n})")
    alg.metadata["analog"] = f"mod-{p} analog of the affine algebra"
    return alg


CATALOG: dict[str, Callable] = {
    "base_field": lambda field=QQ: base_field(field),
    "sl_n": lambda n=2, field=QQ: sl_n(n, field),
    "gl_n": lambda n=2, field=QQ: gl_n(n, field),
    "matrix_algebra": lambda n=2, field=QQ: matrix_algebra(n, field),
    "upper_triangular": lambda n=2, field=QQ: upper_triangular(n, field),
    "truncated_poly": lambda k=3, field=QQ: truncated_poly(k, field),
    "dual_numbers": lambda field=QQ: dual_numbers(field),
    "local3": lambda field=QQ: local3(field),
    "cyclic_group_algebra": lambda n=7, field=QQ: cyclic_group_algebra(n, field),
    "abelian": lambda n=2, field=QQ: abelian(n, field),
    "heisenberg3": lambda field=QQ: heisenberg3(field),
    "nonabelian2": lambda field=QQ: nonabelian2(field),
    "witt": lambda p=7, field=None: witt(p, field),
    "heisenberg_virasoro_novikov": lambda field=QQ: novikov_vi(field),
    "schrodinger_virasoro_novikov": lambda field=QQ: novikov_vii(field),
    "schrodinger_virasoro_zy": lambda field=QQ: novikov_vii_zy(field),
    "bi_zassenhaus": lambda g=2, h=1, field=None: bi_zassenhaus(g, h, field),
    "kac_moody_analog": lambda p=7, n=2: kac_moody_analog(p, n),
    "affinization_vi": lambda p=5: affinization(novikov_vi(GF(p)), p),
}


def catalog(name: str, **params) -> Algebra:
    try:
        maker = CATALOG[name]
    except KeyError:
        raise BadParams(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    try:
        return maker(**params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {name}: {exc}") from exc
