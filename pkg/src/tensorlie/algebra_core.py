"""Structure-constant algebras and exact identity checking.

An :class:`Algebra` stores its multiplication sparsely: ``table[(i, j)]`` is
the dict ``{k: c_ijk}`` with ``e_i * e_j = sum_k c_ijk e_k``.  Vectors are
sparse dicts ``{index: scalar}`` throughout; dense sequences are accepted by
the public helpers and converted.

Identities are checked on every basis tuple, which is a complete test because
all identities involved are multilinear.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable, Iterable, Sequence

from tensorlie.errors import FlavorCertificationError, ParseError
from tensorlie.exactfield import QQ, Field
from tensorlie.linalg import SubspaceBasis, solve_rows


class Flavor(str, Enum):
    LIE = "Lie"
    ASSOC_COMM_UNITAL = "AssocCommutativeUnital"
    ASSOCIATIVE = "Associative"
    LEFT_NOVIKOV = "LeftNovikov"
    RIGHT_NOVIKOV = "RightNovikov"
    LEFT_FERMIONIC_NOVIKOV = "LeftFermionicNovikov"
    RIGHT_FERMIONIC_NOVIKOV = "RightFermionicNovikov"
    GENERIC = "Generic"


class Identity(str, Enum):
    ANTICOMMUTATIVE = "anticommutative"
    JACOBI = "jacobi"
    ASSOCIATIVE = "associative"
    COMMUTATIVE = "commutative"
    LEFT_NOVIKOV = "left_novikov"
    RIGHT_NOVIKOV = "right_novikov"
    LEFT_FERMIONIC_NOVIKOV = "left_fermionic_novikov"
    RIGHT_FERMIONIC_NOVIKOV = "right_fermionic_novikov"
    LIE_ADMISSIBLE = "lie_admissible"


# identities a declared flavor must satisfy
FLAVOR_IDENTITIES = {
    Flavor.LIE: (Identity.ANTICOMMUTATIVE, Identity.JACOBI),
    Flavor.ASSOC_COMM_UNITAL: (Identity.ASSOCIATIVE, Identity.COMMUTATIVE),
    Flavor.ASSOCIATIVE: (Identity.ASSOCIATIVE,),
    Flavor.LEFT_NOVIKOV: (Identity.LEFT_NOVIKOV,),
    Flavor.RIGHT_NOVIKOV: (Identity.RIGHT_NOVIKOV,),
    Flavor.LEFT_FERMIONIC_NOVIKOV: (Identity.LEFT_FERMIONIC_NOVIKOV,),
    Flavor.RIGHT_FERMIONIC_NOVIKOV: (Identity.RIGHT_FERMIONIC_NOVIKOV,),
    Flavor.GENERIC: (),
}


# ---------------------------------------------------------------- vectors

def vadd(u: dict, v: dict, c=1) -> dict:
    """``u + c v`` as a new sparse vector."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        s = x * c if y is None else y + x * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(u: dict, c) -> dict:
    if not c:
        return {}
    return {k: x * c for k, x in u.items() if x * c}


def vsum(vectors: Iterable[dict]) -> dict:
    out: dict = {}
    for v in vectors:
        for k, x in v.items():
            s = out.get(k)
            s = x if s is None else s + x
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def dense(v: dict, n: int, field: Field) -> list:
    z = field.zero
    out = [z] * n
    for k, x in v.items():
        out[k] = x
    return out


def sparse(v, field: Field | None = None) -> dict:
    if isinstance(v, dict):
        return {k: x for k, x in v.items() if x}
    if field is None:
        return {k: x for k, x in enumerate(v) if x}
    return {k: field(x) for k, x in enumerate(v) if x}


# ---------------------------------------------------------------- algebra

@dataclass(frozen=True)
class IdentityResult:
    """Outcome of :func:`check_identity`; truthy iff the identity holds."""

    identity: str
    holds: bool
    counterexample: tuple | None = None
    residual: list | None = None

    def __bool__(self):
        return self.holds

    def to_json(self, field: Field) -> dict:
        d = {"identity": self.identity, "holds": self.holds}
        if not self.holds:
            d["counterexample"] = list(self.counterexample)
            d["residual"] = [field.format(x) for x in self.residual]
        return d


class Algebra:
    """Finite-dimensional algebra given by structure constants."""

    def __init__(
        self,
        field: Field,
        dim: int,
        table: dict,
        flavor: Flavor | str = Flavor.GENERIC,
        basis_names: Sequence[str] | None = None,
        unit_index: int | None = None,
        name: str = "",
        certify: bool = True,
        metadata: dict | None = None,
    ):
        self.field = field
        self.dim = dim
        clean = {}
        for (i, j), row in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i}, {j}) outside dimension {dim}")
            r = {}
            for k, c in row.items():
                if not 0 <= k < dim:
                    raise ValueError(f"product target {k} outside dimension {dim}")
                c = field(c)
                if c:
                    r[k] = c
            if r:
                clean[(i, j)] = r
        self.table = clean
        self.flavor = Flavor(flavor)
        self.basis_names = list(basis_names) if basis_names is not None else [f"e{i}" for i in range(dim)]
        if len(self.basis_names) != dim:
            raise ValueError("basis_names length differs from dim")
        self.unit_index = unit_index
        self.name = name
        self.metadata = dict(metadata or {})
        self._skew = None
        if certify:
            self.certify()

    # -- products
    def product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def constant(self, i: int, j: int, k: int):
        return self.table.get((i, j), {}).get(k, self.field.zero)

    def mul(self, u: dict, v: dict) -> dict:
        """Product of two sparse vectors."""
        out: dict = {}
        table = self.table
        for i, a in u.items():
            for j, b in v.items():
                row = table.get((i, j))
                if not row:
                    continue
                ab = a * b
                for k, c in row.items():
                    s = out.get(k)
                    s = ab * c if s is None else s + ab * c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return out

    def mul_basis_vec(self, i: int, v: dict) -> dict:
        return self.mul({i: self.field.one}, v)

    def mul_vec_basis(self, u: dict, j: int) -> dict:
        return self.mul(u, {j: self.field.one})

    def mul_dense(self, u: Sequence, v: Sequence) -> list:
        return dense(self.mul(sparse(u), sparse(v)), self.dim, self.field)

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def left_matrix(self, i: int) -> list[list]:
        """Matrix of ``x -> e_i x`` acting on column vectors."""
        m = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.product(i, j).items():
                m[k][j] = c
        return m

    def right_matrix(self, j: int) -> list[list]:
        m = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for k, c in self.product(i, j).items():
                m[k][i] = c
        return m

    # -- certification
    def certify(self) -> "Algebra":
        for ident in FLAVOR_IDENTITIES[self.flavor]:
            res = check_identity(self, ident)
            if not res:
                raise FlavorCertificationError(
                    f"{self.name or 'algebra'} declared {self.flavor.value} fails {ident.value} "
                    f"at {res.counterexample}",
                    res.counterexample,
                )
        if self.flavor is Flavor.ASSOC_COMM_UNITAL and self.unit_index is None:
            raise FlavorCertificationError(f"{self.name or 'algebra'} declared unital without a unit")
        if self.unit_index is not None and not is_unit(self, self.unit_index):
            raise FlavorCertificationError(f"e{self.unit_index} is not a two-sided unit")
        return self

    # -- misc
    def is_lie(self) -> bool:
        return self.flavor is Flavor.LIE

    def is_commutative_table(self) -> bool:
        return bool(check_identity(self, Identity.COMMUTATIVE))

    def same_table(self, other: "Algebra") -> bool:
        return self.dim == other.dim and self.field is other.field and self.table == other.table

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.flavor.value}, {self.field!r})"

    def products_list(self) -> list[tuple]:
        return sorted((i, j, k, c) for (i, j), row in self.table.items() for k, c in row.items())

    def to_json(self) -> dict:
        d = {
            "name": self.name,
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": self.basis_names,
            "products": [[i, j, k, self.field.format(c)] for i, j, k, c in self.products_list()],
            "flavor": self.flavor.value,
        }
        if self.unit_index is not None:
            d["unit"] = self.unit_index
        if self.metadata:
            d["metadata"] = self.metadata
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, d: dict, field: Field | None = None, certify: bool = True) -> "Algebra":
        try:
            F = field or Field.from_json(d.get("field", {"kind": "Q"}))
            dim = int(d["dim"])
            table: dict = {}
            for entry in d.get("products", []):
                i, j, k, c = entry
                if not all(0 <= int(x) < dim for x in (i, j, k)):
                    raise ParseError(f"product entry {entry} has an index outside 0..{dim - 1}")
                c = F.parse(str(c))
                row = table.setdefault((int(i), int(j)), {})
                row[int(k)] = row.get(int(k), F.zero) + c
            return cls(
                F,
                dim,
                table,
                flavor=d.get("flavor", "Generic"),
                basis_names=d.get("basis"),
                unit_index=d.get("unit"),
                name=d.get("name", ""),
                certify=certify,
                metadata=d.get("metadata"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FlavorCertificationError):
                raise
            raise ParseError(f"bad algebra JSON: {exc}") from exc


def is_unit(alg: Algebra, u: int) -> bool:
    one = alg.field.one
    for x in range(alg.dim):
        target = {x: one}
        if alg.product(u, x) != target or alg.product(x, u) != target:
            return False
    return True


def find_unit(alg: Algebra) -> int | None:
    for u in range(alg.dim):
        if is_unit(alg, u):
            return u
    return None


def with_flavor(alg: Algebra, flavor: Flavor | str, certify: bool = True, **kw) -> Algebra:
    return Algebra(
        alg.field,
        alg.dim,
        alg.table,
        flavor=flavor,
        basis_names=kw.get("basis_names", alg.basis_names),
        unit_index=kw.get("unit_index", alg.unit_index),
        name=kw.get("name", alg.name),
        certify=certify,
        metadata=alg.metadata,
    )


# ---------------------------------------------------------------- identities

def _triples(n):
    return itertools.product(range(n), repeat=3)


def _pairs(n):
    return itertools.product(range(n), repeat=2)


def _identity_residuals(alg: Algebra, identity: Identity) -> tuple[Callable, Callable]:
    m = alg.mul
    one = alg.field.one

    def e(i):
        return {i: one}

    def assoc(x, y, z):  # (xy)z - x(yz)
        return vadd(m(m(e(x), e(y)), e(z)), m(e(x), m(e(y), e(z))), -1)

    if identity is Identity.ANTICOMMUTATIVE:
        return _pairs, lambda i, j: vadd(m(e(i), e(j)), m(e(j), e(i))) if i != j else m(e(i), e(i))
    if identity is Identity.COMMUTATIVE:
        return _pairs, lambda i, j: vadd(m(e(i), e(j)), m(e(j), e(i)), -1)
    if identity is Identity.ASSOCIATIVE:
        return _triples, assoc
    if identity is Identity.JACOBI:
        def jac(x, y, z):
            return vsum([m(m(e(x), e(y)), e(z)), m(m(e(y), e(z)), e(x)), m(m(e(z), e(x)), e(y))])
        return _triples, jac
    if identity is Identity.LIE_ADMISSIBLE:
        s = skew_symmetrize(alg)
        return _identity_residuals(s, Identity.JACOBI)

    def left_sym(x, y, z):  # (xy)z - x(yz) - (yx)z + y(xz)
        return vadd(assoc(x, y, z), assoc(y, x, z), -1)

    def right_sym(x, y, z):  # (xy)z - x(yz) - (xz)y + x(zy)
        return vadd(assoc(x, y, z), assoc(x, z, y), -1)

    def right_comm(x, y, z, sign):  # (xy)z -/+ (xz)y
        return vadd(m(m(e(x), e(y)), e(z)), m(m(e(x), e(z)), e(y)), -sign)

    def left_comm(x, y, z, sign):  # x(yz) -/+ y(xz)
        return vadd(m(e(x), m(e(y), e(z))), m(e(y), m(e(x), e(z))), -sign)

    def pair(f, g):
        # both identities at once: residual vector in dimension 2n
        n = alg.dim

        def h(x, y, z):
            r = dict(f(x, y, z))
            for k, v in g(x, y, z).items():
                r[k + n] = v
            return r
        return h

    if identity is Identity.LEFT_NOVIKOV:
        return _triples, pair(left_sym, lambda x, y, z: right_comm(x, y, z, 1))
    if identity is Identity.RIGHT_NOVIKOV:
        return _triples, pair(right_sym, lambda x, y, z: left_comm(x, y, z, 1))
    if identity is Identity.LEFT_FERMIONIC_NOVIKOV:
        return _triples, pair(left_sym, lambda x, y, z: right_comm(x, y, z, -1))
    if identity is Identity.RIGHT_FERMIONIC_NOVIKOV:
        return _triples, pair(right_sym, lambda x, y, z: left_comm(x, y, z, -1))
    raise ValueError(f"unknown identity {identity!r}")


def check_identity(alg: Algebra, identity: Identity | str) -> IdentityResult:
    """Check an identity on all basis tuples in lexicographic order.

    On failure the result carries the first violating index tuple and the
    residual vector there.  For the Novikov-type identities (two identities
    each) the residual has length ``2 * dim``: the first block is the
    symmetry identity, the second the (anti)commutativity one.
    """
    identity = Identity(identity)
    tuples, residual = _identity_residuals(alg, identity)
    width = 2 * alg.dim if "novikov" in identity.value else alg.dim
    for t in tuples(alg.dim):
        r = residual(*t)
        if r:
            return IdentityResult(identity.value, False, t, dense(r, width, alg.field))
    return IdentityResult(identity.value, True)


# ---------------------------------------------------------------- structure

def skew_symmetrize(alg: Algebra) -> Algebra:
    """The algebra on the same space with product ``ab - ba``."""
    if alg._skew is not None:
        return alg._skew
    table: dict = {}
    for (i, j), row in alg.table.items():
        for k, c in row.items():
            table.setdefault((i, j), {})
            table[(i, j)][k] = table[(i, j)].get(k, alg.field.zero) + c
            table.setdefault((j, i), {})
            table[(j, i)][k] = table[(j, i)].get(k, alg.field.zero) - c
    s = Algebra(alg.field, alg.dim, table, Flavor.GENERIC, alg.basis_names,
                name=f"({alg.name})^(-)" if alg.name else "", certify=False)
    if check_identity(s, Identity.JACOBI):
        s.flavor = Flavor.LIE
    alg._skew = s
    return s


def _span(alg: Algebra, vectors: Iterable[dict]) -> SubspaceBasis:
    return SubspaceBasis.span(alg.field, alg.dim, vectors)


def derived_subalgebra(alg: Algebra) -> SubspaceBasis:
    """``[L, L]`` for Lie input; the commutator span ``[A, A]`` otherwise."""
    one = alg.field.one
    if alg.flavor is Flavor.LIE:
        vecs = (alg.product(i, j) for i in range(alg.dim) for j in range(i + 1, alg.dim))
    else:
        vecs = (
            vadd(alg.product(i, j), alg.product(j, i), -1)
            for i in range(alg.dim)
            for j in range(i + 1, alg.dim)
        )
    return _span(alg, vecs)


def center(alg: Algebra) -> SubspaceBasis:
    """Elements commuting with everything (annihilating everything, for Lie)."""
    n = alg.dim
    raw = alg.field.raw
    rows = []
    for j in range(n):
        for k in range(n):
            row = {}
            for i in range(n):
                if alg.flavor is Flavor.LIE:
                    c = alg.constant(i, j, k)
                else:
                    c = alg.constant(i, j, k) - alg.constant(j, i, k)
                if c:
                    row[i] = raw(c)
            if row:
                rows.append(row)
    return solve_rows(alg.field, n, rows)


def bracket_span(alg: Algebra, a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Span of all products ``x y`` with ``x`` in ``a`` and ``y`` in ``b``."""
    av, bv = a.sparse_vectors(), b.sparse_vectors()
    return _span(alg, (alg.mul(x, y) for x in av for y in bv))


def is_ideal(alg: Algebra, sub: SubspaceBasis) -> bool:
    one = alg.field.one
    for v in sub.sparse_vectors():
        for k in range(alg.dim):
            e = {k: one}
            if not sub.contains_vector(alg.mul(e, v)) or not sub.contains_vector(alg.mul(v, e)):
                return False
    return True


def ideal_closure(alg: Algebra, seed: SubspaceBasis) -> SubspaceBasis:
    """Smallest two-sided ideal containing ``seed`` (fixed-point iteration)."""
    one = alg.field.one
    current = seed
    frontier = seed.sparse_vectors()
    while frontier:
        new = []
        for v in frontier:
            for k in range(alg.dim):
                e = {k: one}
                for w in (alg.mul(e, v), alg.mul(v, e)):
                    if w and not current.contains_vector(w):
                        current = current.sum(_span(alg, [w]))
                        new.append(w)
        frontier = new
    return current


def is_perfect(alg: Algebra) -> bool:
    return derived_subalgebra(alg).dim == alg.dim


def derived_series(alg: Algebra, max_steps: int = 64) -> list[int]:
    """Dimensions of ``L, [L,L], [[L,L],[L,L]], ...`` until the series stabilises."""
    cur = SubspaceBasis.full(alg.field, alg.dim)
    dims = [cur.dim]
    for _ in range(max_steps):
        nxt = bracket_span(alg, cur, cur)
        if nxt.dim == cur.dim:
            break
        dims.append(nxt.dim)
        cur = nxt
        if cur.dim == 0:
            break
    return dims


# ---------------------------------------------------------------- maps

@dataclass
class LinearMap:
    """Linear map given by its matrix acting on column vectors.

    ``m[k][i]`` is the coefficient of ``e_k`` in the image of ``e_i``.  As a
    coordinate vector (the form used by solvers) the entry sits at index
    ``i * codomain_dim + k``.
    """

    field: Field
    domain_dim: int
    codomain_dim: int
    m: list

    @classmethod
    def from_vector(cls, field, domain_dim, codomain_dim, vec) -> "LinearMap":
        z = field.zero
        m = [[z] * domain_dim for _ in range(codomain_dim)]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for idx, c in items:
            if c:
                i, k = divmod(idx, codomain_dim)
                m[k][i] = c
        return cls(field, domain_dim, codomain_dim, m)

    @classmethod
    def identity(cls, field, n) -> "LinearMap":
        return cls.from_vector(field, n, n, {i * n + i: field.one for i in range(n)})

    def to_vector(self) -> list:
        z = self.field.zero
        v = [z] * (self.domain_dim * self.codomain_dim)
        for k in range(self.codomain_dim):
            for i in range(self.domain_dim):
                v[i * self.codomain_dim + k] = self.m[k][i]
        return v

    def image(self, i: int) -> dict:
        return {k: self.m[k][i] for k in range(self.codomain_dim) if self.m[k][i]}

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for k in range(self.codomain_dim):
                c = self.m[k][i]
                if c:
                    out[k] = out.get(k, self.field.zero) + a * c
        return {k: x for k, x in out.items() if x}


@dataclass
class BilinearMap:
    """Bilinear map ``Phi(e_i, e_j) = sum_k t[(i, j)][k] e_k`` on an algebra's space.

    Coordinate-vector index of ``t[(i, j)][k]`` is ``(i * n + j) * n + k``.
    """

    domain: Algebra
    t: dict = dc_field(default_factory=dict)

    @classmethod
    def from_vector(cls, alg: Algebra, vec) -> "BilinearMap":
        n = alg.dim
        t: dict = {}
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for idx, c in items:
            if c:
                ij, k = divmod(idx, n)
                i, j = divmod(ij, n)
                t.setdefault((i, j), {})[k] = alg.field(c)
        return cls(alg, t)

    @classmethod
    def from_function(cls, alg: Algebra, f: Callable[[int, int], dict]) -> "BilinearMap":
        t = {}
        for i in range(alg.dim):
            for j in range(alg.dim):
                v = {k: c for k, c in f(i, j).items() if c}
                if v:
                    t[(i, j)] = v
        return cls(alg, t)

    def to_vector(self) -> list:
        n = self.domain.dim
        v = [self.domain.field.zero] * n ** 3
        for (i, j), row in self.t.items():
            for k, c in row.items():
                v[(i * n + j) * n + k] = c
        return v

    def sparse_vector(self) -> dict:
        n = self.domain.dim
        return {(i * n + j) * n + k: c for (i, j), row in self.t.items() for k, c in row.items() if c}

    def basis_value(self, i: int, j: int) -> dict:
        return self.t.get((i, j), {})

    def __call__(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                row = self.t.get((i, j))
                if not row:
                    continue
                ab = a * b
                for k, c in row.items():
                    s = out.get(k)
                    s = ab * c if s is None else s + ab * c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return out

    def is_zero(self) -> bool:
        return not any(self.t.values())

    def symmetric_part_zero(self) -> bool:
        n = self.domain.dim
        for i in range(n):
            for j in range(i, n):
                if vadd(self.basis_value(i, j), self.basis_value(j, i)):
                    return False
        return True


def bracket_map(alg: Algebra) -> BilinearMap:
    """The algebra's own multiplication as a bilinear map."""
    return BilinearMap(alg, {k: dict(v) for k, v in alg.table.items()})
