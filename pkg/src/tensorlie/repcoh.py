"""Modules, intertwiners and Chevalley-Eilenberg cohomology.

Action matrices use the column convention of :meth:`Algebra.left_matrix`:
``rho(x)[r][c]`` is the coefficient of ``m_r`` in ``x . m_c``.  A linear map
``T: M1 -> M2`` is stored as a ``dim M2 x dim M1`` matrix, vectorised row
major (``T[r][c]`` at ``r * dim M1 + c``).  Tensor bases are row major,
``m (x) v`` at ``m * dim V + v``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import comb

from tensorlie.algebra_core import Algebra, Flavor, vadd
from tensorlie.constructors import current_algebra, unit_vector
from tensorlie.errors import (
    DegreeCapExceeded,
    FlavorMismatch,
    NotARepresentation,
    ParseError,
)
from tensorlie.exactfield import Field
from tensorlie.linalg import Matrix, SubspaceBasis

DEGREE_CAP = 3


def _clean(field: Field, row: dict) -> dict:
    p = field.p
    if p is None:
        return {k: v for k, v in row.items() if v}
    out = {}
    for k, v in row.items():
        v %= p
        if v:
            out[k] = v
    return out


def _nullspace(field: Field, ncols: int, rows) -> SubspaceBasis:
    from tensorlie.linalg import Echelon

    e = Echelon(field, ncols)
    for r in rows:
        r = _clean(field, r)
        if r:
            e.add(r)
    return SubspaceBasis(field, ncols, e.null_vectors())


def _rank(field: Field, ncols: int, rows) -> int:
    from tensorlie.linalg import Echelon

    e = Echelon(field, ncols)
    for r in rows:
        r = _clean(field, r)
        if r:
            e.add(r)
    return e.rank


def _matmul(field: Field, a: list, b: list) -> list:
    z = field.zero
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), z) for col in cols] for row in a]


def _matadd(a: list, b: list, c=1) -> list:
    return [[x + c * y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _zero(field: Field, r: int, c: int) -> list:
    return [[field.zero] * c for _ in range(r)]


def _ident(field: Field, n: int) -> list:
    m = _zero(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def _lincomb(field: Field, mats: list, coeffs: dict, r: int, c: int) -> list:
    out = _zero(field, r, c)
    for i, a in coeffs.items():
        if a:
            for x in range(r):
                row, src = out[x], mats[i][x]
                for y in range(c):
                    if src[y]:
                        row[y] = row[y] + a * src[y]
    return out


def det(field: Field, m: list):
    """Determinant by Gaussian elimination over the field."""
    a = [list(r) for r in m]
    n = len(a)
    d = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        inv = field.one / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


# ---------------------------------------------------------------- modules

@dataclass
class _Module:
    algebra: Algebra
    dim: int
    rho: list  # one dim x dim matrix per basis element
    name: str = ""
    metadata: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def act(self, i: int, vec: dict) -> dict:
        m = self.rho[i]
        out: dict = {}
        for c, x in vec.items():
            for r in range(self.dim):
                if m[r][c]:
                    out[r] = out.get(r, self.field.zero) + m[r][c] * x
        return {k: v for k, v in out.items() if v}

    def act_vec(self, a: dict, vec: dict) -> dict:
        out: dict = {}
        for i, c in a.items():
            out = vadd(out, self.act(i, vec), c)
        return out

    def matrix_of(self, a: dict) -> list:
        return _lincomb(self.field, self.rho, a, self.dim, self.dim)

    def to_json(self) -> dict:
        F = self.field
        return {
            "kind": "lie" if isinstance(self, LieModule) else "assoc",
            "name": self.name,
            "algebra": self.algebra.to_json(),
            "dim": self.dim,
            "action": [[[F.format(x) for x in row] for row in m] for m in self.rho],
        }


class LieModule(_Module):
    def certify(self) -> "LieModule":
        L, F = self.algebra, self.field
        if L.flavor is not Flavor.LIE:
            raise FlavorMismatch(f"Lie module over a {L.flavor.value} algebra")
        for i, j in itertools.product(range(L.dim), repeat=2):
            lhs = self.matrix_of(L.product(i, j))
            a, b = self.rho[i], self.rho[j]
            rhs = _matadd(_matmul(F, a, b), _matmul(F, b, a), -1)
            if lhs != rhs:
                raise NotARepresentation((i, j), "rho([x,y]) != [rho(x), rho(y)]")
        return self


class AssocModule(_Module):
    unital: bool = True

    def certify(self) -> "AssocModule":
        A, F = self.algebra, self.field
        if A.flavor not in (Flavor.ASSOCIATIVE, Flavor.ASSOC_COMM_UNITAL):
            raise FlavorMismatch(f"associative module over a {A.flavor.value} algebra")
        for i, j in itertools.product(range(A.dim), repeat=2):
            if self.matrix_of(A.product(i, j)) != _matmul(F, self.rho[i], self.rho[j]):
                raise NotARepresentation((i, j), "rho(ab) != rho(a) rho(b)")
        if self.unital:
            u = unit_vector(A) if A.unit_index is None else {A.unit_index: F.one}
            if u is None or self.matrix_of(u) != _ident(F, self.dim):
                raise NotARepresentation(("unit",), "rho(1) != identity")
        return self


def certify_module(kind: str, algebra: Algebra, rho, name: str = "", unital: bool = True):
    """Build and certify a module from per-basis action matrices."""
    F = algebra.field
    if len(rho) != algebra.dim:
        raise NotARepresentation((len(rho),), f"need {algebra.dim} action matrices, got {len(rho)}")
    mats = [[[F(x) for x in row] for row in m] for m in rho]
    dim = len(mats[0]) if mats else 0
    for m in mats:
        if len(m) != dim or any(len(row) != dim for row in m):
            raise NotARepresentation((dim,), "action matrices must be square of one size")
    if kind == "lie":
        return LieModule(algebra, dim, mats, name).certify()
    if kind == "assoc":
        mod = AssocModule(algebra, dim, mats, name)
        mod.unital = unital
        return mod.certify()
    raise ValueError(f"unknown module kind {kind!r}")


def module_from_json(d: dict, field: Field | None = None):
    from tensorlie.constructors import catalog

    try:
        alg = d["algebra"]
        if isinstance(alg, str):
            alg = catalog(alg, **({"field": field} if field else {}))
        else:
            alg = Algebra.from_json(alg, field=field)
        F = alg.field
        rho = [[[F.parse(x) if isinstance(x, str) else F(x) for x in row] for row in m] for m in d["action"]]
        kind = d.get("kind") or ("lie" if alg.flavor is Flavor.LIE else "assoc")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad module JSON: {exc}") from exc
    mod = certify_module(kind, alg, rho, d.get("name", ""), d.get("unital", True))
    if "dim" in d and int(d["dim"]) != mod.dim:
        raise ParseError(f"declared dim {d['dim']} but action matrices are {mod.dim}x{mod.dim}")
    return mod


def adjoint_module(L: Algebra) -> LieModule:
    return LieModule(L, L.dim, [L.left_matrix(i) for i in range(L.dim)], f"ad({L.name})").certify()


def trivial_module(L: Algebra, dim: int = 1) -> LieModule:
    F = L.field
    return LieModule(L, dim, [_zero(F, dim, dim) for _ in range(L.dim)], f"K^{dim}").certify()


def character_module(L: Algebra, values) -> LieModule:
    """One-dimensional module ``x_i . m = values[i] m``; needs ``values`` to vanish on ``[L, L]``."""
    F = L.field
    return LieModule(L, 1, [[[F(v)]] for v in values], "K_chi").certify()


def regular_module(A: Algebra) -> AssocModule:
    mod = AssocModule(A, A.dim, [A.left_matrix(i) for i in range(A.dim)], f"{A.name} (regular)")
    mod.unital = unit_vector(A) is not None or A.unit_index is not None
    return mod.certify()


def v_t_module(A: Algebra, t) -> AssocModule:
    """``V_t`` over ``local3``: ``x.u = v``, ``y.u = t v``, ``x.v = y.v = 0``, basis ``(u, v)``."""
    F = A.field
    if A.dim != 3:
        raise FlavorMismatch("V_t is defined over the 3-dim local algebra (1, x, y)")
    t = F(t)
    z, o = F.zero, F.one
    rho = [[[o, z], [z, o]], [[z, z], [o, z]], [[z, z], [t, z]]]
    mod = AssocModule(A, 2, rho, f"V_{F.format(t)}")
    return mod.certify()


def residue_module(A: Algebra) -> AssocModule:
    """``A / rad A`` for a local algebra whose radical is spanned by the non-unit basis vectors."""
    F = A.field
    if A.unit_index is None:
        raise FlavorMismatch("residue_module needs a basis unit")
    rho = [[[F.one if i == A.unit_index else F.zero]] for i in range(A.dim)]
    return AssocModule(A, 1, rho, f"{A.name}/rad").certify()


def tensor_module(M: LieModule, V: AssocModule, algebra: Algebra | None = None) -> LieModule:
    """``M (x) V`` over ``L (x) A`` with ``(x (x) a).(m (x) v) = (x.m) (x) (a.v)``."""
    L, A = M.algebra, V.algebra
    if L.field is not A.field:
        raise FlavorMismatch("modules over different fields")
    if A.flavor is not Flavor.ASSOC_COMM_UNITAL:
        raise FlavorMismatch("tensor_module needs a commutative unital A")
    LA = algebra or current_algebra(L, A)
    F = L.field
    dM, dV = M.dim, V.dim
    rho = []
    for x in range(L.dim):
        for a in range(A.dim):
            mx, va = M.rho[x], V.rho[a]
            m = _zero(F, dM * dV, dM * dV)
            for r, c in itertools.product(range(dM), repeat=2):
                if mx[r][c]:
                    for s, d in itertools.product(range(dV), repeat=2):
                        if va[s][d]:
                            m[r * dV + s][c * dV + d] = mx[r][c] * va[s][d]
            rho.append(m)
    return LieModule(LA, dM * dV, rho, f"{M.name} (x) {V.name}").certify()


# ---------------------------------------------------------------- homs

def module_hom_space(M1: _Module, M2: _Module) -> SubspaceBasis:
    """Intertwiners ``T`` with ``T rho1(x) = rho2(x) T`` for every basis ``x``."""
    if not M1.algebra.same_table(M2.algebra) or M1.field is not M2.field:
        raise FlavorMismatch("modules over different algebras")
    F = M1.field
    raw = F.raw
    d1, d2 = M1.dim, M2.dim

    def rows():
        for x in range(M1.algebra.dim):
            a, b = M1.rho[x], M2.rho[x]
            for r in range(d2):
                for c in range(d1):
                    row: dict = {}
                    for k in range(d1):
                        if a[k][c]:
                            row[r * d1 + k] = row.get(r * d1 + k, 0) + raw(a[k][c])
                    for k in range(d2):
                        if b[r][k]:
                            row[k * d1 + c] = row.get(k * d1 + c, 0) - raw(b[r][k])
                    yield row

    return _nullspace(F, d1 * d2, rows())


def _unvec(field: Field, v: dict, r: int, c: int) -> list:
    m = _zero(field, r, c)
    for idx, x in v.items():
        i, j = divmod(idx, c)
        m[i][j] = x
    return m


def hom_matrices(M1: _Module, M2: _Module, space: SubspaceBasis | None = None) -> list:
    space = space if space is not None else module_hom_space(M1, M2)
    return [_unvec(M1.field, v, M2.dim, M1.dim) for v in space.sparse_vectors()]


@dataclass
class IsoResult:
    isomorphic: bool
    hom_dim: int
    method: str
    witness: dict | None = None

    def __bool__(self):
        return self.isomorphic


def modules_isomorphic(M1: _Module, M2: _Module, detail: bool = False):
    """Exact test for an invertible intertwiner.

    ``det(sum l_i T_i)`` has degree at most ``d = dim`` in each ``l_i``.  Over
    Q, or over F_p with ``p > d``, a nonzero such polynomial is nonzero on the
    grid ``{0..d}^k``.  Over F_p with ``p <= d`` the grid is all of ``F_p^k``,
    which is exactly the question asked (an invertible map with F_p entries).
    Hom spaces of dim at most 3 over Q are settled by symbolic expansion.
    """
    if M1.dim != M2.dim:
        res = IsoResult(False, 0, "dimension")
        return res if detail else res.isomorphic
    F = M1.field
    mats = hom_matrices(M1, M2)
    k, d = len(mats), M1.dim
    if k == 0:
        res = IsoResult(False, 0, "empty hom space")
    elif F.p is None and k <= 3:
        res = _iso_symbolic(mats, d)
    else:
        m = d if F.p is None else min(F.p - 1, d)
        res = IsoResult(False, k, "grid")
        for pt in itertools.product(range(m + 1), repeat=k):
            coeffs = {i: F(c) for i, c in enumerate(pt) if c}
            if coeffs and det(F, _lincomb(F, mats, coeffs, d, d)):
                res = IsoResult(True, k, "grid", {i: F.format(c) for i, c in coeffs.items()})
                break
    return res if detail else res.isomorphic


def _iso_symbolic(mats: list, d: int) -> IsoResult:
    import sympy

    lam = sympy.symbols(f"l0:{len(mats)}")
    M = sympy.zeros(d, d)
    for s, m in zip(lam, mats):
        M += s * sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])
    poly = sympy.expand(M.det(method="berkowitz"))
    return IsoResult(poly != 0, len(mats), "symbolic", None)


def end_l(M: _Module) -> SubspaceBasis:
    return module_hom_space(M, M)


def annihilating_endomorphisms(M: LieModule) -> SubspaceBasis:
    """``{phi in End(M) : phi(LM) = 0, L phi(M) = 0}``."""
    F, d = M.field, M.dim
    raw = F.raw

    def rows():
        for x in range(M.algebra.dim):
            a = M.rho[x]
            for r in range(d):
                for c in range(d):
                    r1: dict = {}
                    r2: dict = {}
                    for k in range(d):
                        if a[k][c]:
                            r1[r * d + k] = raw(a[k][c])  # (phi a)[r][c]
                        if a[r][k]:
                            r2[k * d + c] = raw(a[r][k])  # (a phi)[r][c]
                    yield r1
                    yield r2

    return _nullspace(F, d * d, rows())


def _kron_vec(a: dict, ra: int, ca: int, b: dict, rb: int, cb: int) -> dict:
    """Vectorised Kronecker product of vectorised matrices ``a`` (ra x ca) and ``b`` (rb x cb)."""
    out = {}
    ncols = ca * cb
    for ia, x in a.items():
        i, j = divmod(ia, ca)
        for ib, y in b.items():
            k, l = divmod(ib, cb)
            out[(i * rb + k) * ncols + j * cb + l] = x * y
    return out


def lemma_hom_rhs(M: LieModule, V1: AssocModule, V2: AssocModule, detail: bool = False):
    """Dimension of ``W (x) Hom_K(V1, V2) + End_L(M) (x) Hom_A(V1, V2)``.

    ``W`` is :func:`annihilating_endomorphisms`.  Both summands are embedded
    in ``Hom_K(M (x) V1, M (x) V2)`` and their sum is taken there, so any
    overlap is accounted for.
    """
    F = M.field
    d, e1, e2 = M.dim, V1.dim, V2.dim
    W = annihilating_endomorphisms(M)
    EL = end_l(M)
    HA = module_hom_space(V1, V2)
    HK = [{i: F.one} for i in range(e1 * e2)]
    amb = (d * e2) * (d * e1)
    gens = [_kron_vec(w, d, d, h, e2, e1) for w in W.sparse_vectors() for h in HK]
    gens += [_kron_vec(g, d, d, h, e2, e1) for g in EL.sparse_vectors() for h in HA.sparse_vectors()]
    total = SubspaceBasis.span(F, amb, gens)
    if detail:
        return {
            "W": W.dim, "End_L": EL.dim, "Hom_K": e1 * e2, "Hom_A": HA.dim,
            "naive": W.dim * e1 * e2 + EL.dim * HA.dim, "rhs": total.dim, "space": total,
        }
    return total.dim


# ---------------------------------------------------------------- cohomology

def _tuples(n: int, k: int) -> list:
    return list(itertools.combinations(range(n), k))


def _sort_sign(seq) -> tuple | None:
    """Sorted tuple and permutation sign, or ``None`` when an index repeats."""
    if len(set(seq)) != len(seq):
        return None
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return tuple(s), sign


@dataclass
class Cochain:
    """Alternating ``n``-cochain ``L^n -> M`` keyed by strictly increasing tuples."""

    degree: int
    algebra: Algebra
    module: _Module
    values: dict  # tuple -> sparse M-vector

    def coords(self) -> dict:
        idx = {t: i for i, t in enumerate(_tuples(self.algebra.dim, self.degree))}
        d = self.module.dim
        out = {}
        for t, v in self.values.items():
            for m, c in v.items():
                if c:
                    out[idx[t] * d + m] = c
        return out

    @classmethod
    def from_coords(cls, L, M, degree, coords) -> "Cochain":
        tup = _tuples(L.dim, degree)
        d = M.dim
        vals: dict = {}
        items = coords.items() if isinstance(coords, dict) else enumerate(coords)
        for i, c in items:
            if c:
                t, m = divmod(i, d)
                vals.setdefault(tup[t], {})[m] = c
        return cls(degree, L, M, vals)

    def __call__(self, *args) -> dict:
        r = _sort_sign(args)
        if r is None:
            return {}
        t, s = r
        v = self.values.get(t, {})
        return {k: c * s for k, c in v.items()} if s == -1 else dict(v)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.coords() == other.coords()


def cochain_dim(L: Algebra, M: _Module, n: int) -> int:
    return comb(L.dim, n) * M.dim


def _check_degree(n: int, cap: int = DEGREE_CAP):
    if n < 0 or n > cap:
        raise DegreeCapExceeded(f"degree {n} outside 0..{cap}")


def ce_coboundary_rows(L: Algebra, M: _Module, n: int) -> list:
    """Sparse rows (raw values) of ``d: C^n -> C^{n+1}``, one per ``(tuple, m)``."""
    _check_degree(n)
    F = M.field
    raw = F.raw
    dM = M.dim
    src = {t: i for i, t in enumerate(_tuples(L.dim, n))}
    rows = []
    for T in _tuples(L.dim, n + 1):
        acc = [dict() for _ in range(dM)]
        for i, xi in enumerate(T):
            S = T[:i] + T[i + 1:]
            col0 = src[S] * dM
            sgn = 1 if i % 2 == 0 else -1
            rho = M.rho[xi]
            for r in range(dM):
                for c in range(dM):
                    if rho[r][c]:
                        acc[r][col0 + c] = acc[r].get(col0 + c, 0) + sgn * raw(rho[r][c])
        for i, j in itertools.combinations(range(n + 1), 2):
            rest = T[:i] + T[i + 1:j] + T[j + 1:]
            sgn = 1 if (i + j) % 2 == 0 else -1
            for k, c in L.product(T[i], T[j]).items():
                r = _sort_sign((k,) + rest)
                if r is None:
                    continue
                S, s = r
                col0 = src[S] * dM
                v = sgn * s * raw(c)
                for m in range(dM):
                    acc[m][col0 + m] = acc[m].get(col0 + m, 0) + v
        rows.extend(_clean(F, a) for a in acc)
    return rows


def ce_coboundary(L: Algebra, M: _Module, n: int) -> Matrix:
    """Matrix of ``d: C^n(L, M) -> C^{n+1}(L, M)`` on the ordered-tuple bases."""
    rows = ce_coboundary_rows(L, M, n)
    return Matrix.from_sparse_rows(M.field, ({k: M.field.wrap(v) for k, v in r.items()} for r in rows),
                                   cochain_dim(L, M, n))


def apply_coboundary(phi: Cochain) -> Cochain:
    L, M, n = phi.algebra, phi.module, phi.degree
    F = M.field
    rows = ce_coboundary_rows(L, M, n)
    x = {k: F.raw(c) for k, c in phi.coords().items()}
    out = {}
    for i, r in enumerate(rows):
        s = sum(v * x[k] for k, v in r.items() if k in x)
        if s:
            out[i] = F.wrap(s)
    return Cochain.from_coords(L, M, n + 1, out)


def coboundary_rank(L: Algebra, M: _Module, n: int) -> int:
    if n < 0:
        return 0
    return _rank(M.field, cochain_dim(L, M, n), ce_coboundary_rows(L, M, n))


def cocycles(L: Algebra, M: _Module, n: int) -> SubspaceBasis:
    return _nullspace(M.field, cochain_dim(L, M, n), ce_coboundary_rows(L, M, n))


def coboundaries(L: Algebra, M: _Module, n: int) -> SubspaceBasis:
    """Image of ``d_{n-1}`` inside ``C^n``."""
    F = M.field
    amb = cochain_dim(L, M, n)
    if n == 0:
        return SubspaceBasis.zero(F, amb)
    rows = ce_coboundary_rows(L, M, n - 1)
    ncols = cochain_dim(L, M, n - 1)
    cols: list = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for k, v in r.items():
            cols[k][i] = F.wrap(v)
    return SubspaceBasis.span(F, amb, [c for c in cols if c])


def cohomology_dim(L: Algebra, M: _Module, n: int) -> int:
    _check_degree(n)
    return cochain_dim(L, M, n) - coboundary_rank(L, M, n) - coboundary_rank(L, M, n - 1)


def cohomology_representatives(L: Algebra, M: _Module, n: int) -> tuple[SubspaceBasis, SubspaceBasis]:
    """Cocycle representatives of a basis of ``H^n`` and the coboundary space."""
    Z = cocycles(L, M, n)
    B = coboundaries(L, M, n)
    return Z.reduce_modulo(B), B


# ---------------------------------------------------------------- current-algebra chain map

def xi_map(phi: Cochain, v: dict, V: AssocModule, LA: Algebra | None = None,
           MV: LieModule | None = None) -> Cochain:
    """``xi(phi (x) v)(x1 (x) a1, ...) = phi(x1, ...) (x) (a1 ... an) . v``."""
    L, M = phi.algebra, phi.module
    A = V.algebra
    LA = LA or current_algebra(L, A)
    MV = MV or tensor_module(M, V, LA)
    F = L.field
    n = phi.degree
    dA, dV = A.dim, V.dim
    unit = unit_vector(A) if A.unit_index is None else {A.unit_index: F.one}
    vals = {}
    for T in _tuples(LA.dim, n):
        xs = [t // dA for t in T]
        m = phi(*xs)
        if not m:
            continue
        prod = dict(unit)
        for t in T:
            prod = A.mul(prod, {t % dA: F.one})
        w = V.act_vec(prod, v)
        if not w:
            continue
        out = {}
        for i, a in m.items():
            for j, b in w.items():
                out[i * dV + j] = a * b
        vals[T] = out
    return Cochain(n, LA, MV, vals)


def chain_map_residual(phi: Cochain, v: dict, V: AssocModule, LA=None, MV=None) -> dict:
    """Coordinates of ``d(xi(phi (x) v)) - xi(d phi (x) v)``; empty means the law holds."""
    LA = LA or current_algebra(phi.algebra, V.algebra)
    MV = MV or tensor_module(phi.module, V, LA)
    lhs = apply_coboundary(xi_map(phi, v, V, LA, MV)).coords()
    rhs = xi_map(apply_coboundary(phi), v, V, LA, MV).coords()
    return vadd(lhs, rhs, -1)


def random_cochain(L: Algebra, M: _Module, n: int, rng: random.Random, bound: int = 5) -> Cochain:
    F = M.field
    coords = {}
    for i in range(cochain_dim(L, M, n)):
        c = F(rng.randint(-bound, bound))
        if c:
            coords[i] = c
    return Cochain.from_coords(L, M, n, coords)


def induced_map_rank(L: Algebra, M: LieModule, V: AssocModule, n: int) -> dict:
    """Rank of ``H^n(L, M) (x) V -> H^n(L (x) A, M (x) V)`` on representatives."""
    F = M.field
    LA = current_algebra(L, V.algebra)
    MV = tensor_module(M, V, LA)
    reps, _ = cohomology_representatives(L, M, n)
    B = coboundaries(LA, MV, n)
    images = []
    for r in reps.sparse_vectors():
        phi = Cochain.from_coords(L, M, n, r)
        for j in range(V.dim):
            images.append(xi_map(phi, {j: F.one}, V, LA, MV).coords())
    amb = cochain_dim(LA, MV, n)
    spanned = SubspaceBasis.span(F, amb, images).sum(B)
    rank = spanned.dim - B.dim
    return {"source_dim": reps.dim * V.dim, "rank": rank, "injective": rank == reps.dim * V.dim}


# ---------------------------------------------------------------- cyclic cocycles

def hc1_space(A: Algebra, D: list | None = None) -> SubspaceBasis:
    """Skew forms ``xi`` with ``xi(ab,c) + xi(ca,b) + xi(bc,a) = 0`` (and D-invariance)."""
    F = A.field
    raw = F.raw
    n = A.dim
    one = raw(F.one)

    def rows():
        for i in range(n):
            yield {i * n + i: one}
            for j in range(i + 1, n):
                yield {i * n + j: one, j * n + i: one}
        for a, b, c in itertools.product(range(n), repeat=3):
            r: dict = {}
            for (x, y), z in (((a, b), c), ((c, a), b), ((b, c), a)):
                for k, v in A.product(x, y).items():
                    r[k * n + z] = r.get(k * n + z, 0) + raw(v)
            yield r
        for d in D or ():
            for a, b in itertools.product(range(n), repeat=2):
                r = {}
                for k, v in d.image(a).items():
                    r[k * n + b] = r.get(k * n + b, 0) + raw(v)
                for k, v in d.image(b).items():
                    r[a * n + k] = r.get(a * n + k, 0) + raw(v)
                yield r

    return _nullspace(F, n * n, rows())
