"""Structure spaces as nullspaces of identity systems.

Each solver writes its defining identity on basis tuples as sparse linear
rows in the coordinates of the unknown map, streams them through
:class:`~tensorlie.linalg.Echelon`, and re-verifies every returned basis
vector against an independent evaluation of the identity.

Coordinate conventions (shared with :mod:`tensorlie.algebra_core`):

* linear map ``phi(e_i) = sum_k w[i, k] e_k`` at index ``i * n + k``;
* bilinear map ``Phi(e_i, e_j) = sum_k t[i, j, k] e_k`` at ``(i * n + j) * n + k``;
* bilinear form ``b(e_i, e_j)`` at ``i * n + j``;
* symmetric bilinear map (third-power-associative solver) at
  ``pair_index(i, j) * n + k`` for ``i <= j``.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from tensorlie.algebra_core import Algebra, BilinearMap, Flavor, LinearMap, derived_subalgebra, vadd, vsum
from tensorlie.constructors import SlnA, center_assoc, sl_basis, sl_n_A
from tensorlie.errors import DimCapExceeded, FlavorMismatch, SideConditionViolated
from tensorlie.exactfield import QQ, Field, char_guard
from tensorlie.linalg import Echelon, Matrix, SubspaceBasis

BILINEAR_CAP = 16
LINEAR_CAP = 40


class CharacteristicWarning(UserWarning):
    pass


class Kind(str, Enum):
    CENTROID = "Centroid"
    POISSON = "Poisson"
    TRIVIAL_POISSON = "TrivialPoisson"
    POISSON_QUOTIENT = "PoissonQuotient"
    LEFT_SKEW = "LeftSkewPoisson"
    RIGHT_SKEW = "RightSkewPoisson"
    HOMLIE = "HomLie"
    INVARIANT_FORM = "InvariantForm"
    DERIVATIONS = "Derivations"
    THIRD_POWER_ASSOC = "ThirdPowerAssoc"


@dataclass
class StructureSpaceReport:
    kind: Kind
    space: SubspaceBasis
    quotient_dim: int | None = None
    provenance: dict = dc_field(default_factory=dict)
    verified: bool = False
    warnings: list = dc_field(default_factory=list)
    representatives: SubspaceBasis | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_json(self, include_basis: bool = True) -> dict:
        d = {"kind": self.kind.value, "dim": self.dim}
        if self.quotient_dim is not None:
            d["quotient_dim"] = self.quotient_dim
        d["ambient_dim"] = self.space.ambient_dim
        if include_basis:
            d["basis"] = self.space.to_json()
            if self.representatives is not None:
                d["representatives"] = self.representatives.to_json()
        d["verified"] = self.verified
        if self.warnings:
            d["warnings"] = list(self.warnings)
        if self.provenance:
            d["provenance"] = self.provenance
        return d


# ---------------------------------------------------------------- plumbing

def _cap(alg: Algebra, cap: int, force: bool, what: str):
    if alg.dim > cap and not force:
        raise DimCapExceeded(f"{what}: algebra dim {alg.dim} exceeds cap {cap}; override with force=True (CLI: --force)")


def _char_warn(alg: Algebra, what: str) -> list:
    if char_guard(alg.field, (2, 3)):
        return []
    msg = f"{what} over characteristic {alg.field.characteristic}: outside the hypotheses of the structure theorems"
    warnings.warn(msg, CharacteristicWarning, stacklevel=3)
    return [msg]


def _require_lie(alg: Algebra, what: str):
    if alg.flavor is not Flavor.LIE:
        raise FlavorMismatch(f"{what} needs a Lie algebra, got {alg.flavor.value}")


class _Rows:
    """Accumulates one sparse row in raw field values and normalises it."""

    __slots__ = ("p",)

    def __init__(self, field: Field):
        self.p = field.p

    def clean(self, row: dict) -> dict:
        p = self.p
        if p is None:
            return {k: v for k, v in row.items() if v}
        out = {}
        for k, v in row.items():
            v %= p
            if v:
                out[k] = v
        return out


def _raw_table(alg: Algebra) -> dict:
    raw = alg.field.raw
    return {key: {k: raw(c) for k, c in row.items()} for key, row in alg.table.items()}


def _solve(field: Field, ncols: int, rows: Iterable[dict]) -> SubspaceBasis:
    e = Echelon(field, ncols)
    clean = _Rows(field).clean
    for r in rows:
        r = clean(r)
        if r:
            e.add(r)
    return SubspaceBasis(field, ncols, e.null_vectors())


def _add(row: dict, k, v):
    row[k] = row.get(k, 0) + v


# ---------------------------------------------------------------- residuals

def poisson_residual(alg: Algebra, phi: BilinearMap) -> tuple | None:
    """First basis triple ``(z, x, y)`` where ``[z, x*y] != [z,x]*y + x*[z,y]``."""
    one = alg.field.one
    n = alg.dim
    for z, x, y in itertools.product(range(n), repeat=3):
        ez, ex, ey = {z: one}, {x: one}, {y: one}
        lhs = alg.mul(ez, phi.basis_value(x, y))
        rhs = vadd(phi(alg.product(z, x), ey), phi(ex, alg.product(z, y)))
        if vadd(lhs, rhs, -1):
            return (z, x, y)
    return None


def is_poisson(alg: Algebra, phi: BilinearMap) -> bool:
    return poisson_residual(alg, phi) is None


def _left_skew_residual(alg, phi):
    one = alg.field.one
    for x, y, z in itertools.product(range(alg.dim), repeat=3):
        if vadd(phi(alg.product(x, y), {z: one}), phi(alg.product(y, z), {x: one}), -1):
            return (x, y, z)
    return None


def _right_skew_residual(alg, phi):
    one = alg.field.one
    for x, y, z in itertools.product(range(alg.dim), repeat=3):
        if vadd(phi({x: one}, alg.product(y, z)), phi({y: one}, alg.product(z, x)), -1):
            return (x, y, z)
    return None


def _linear(alg: Algebra, vec) -> LinearMap:
    return LinearMap.from_vector(alg.field, alg.dim, alg.dim, vec)


def centroid_residual(alg: Algebra, phi: LinearMap) -> tuple | None:
    one = alg.field.one
    for x, y in itertools.product(range(alg.dim), repeat=2):
        lhs = phi.apply(alg.product(x, y))
        if vadd(lhs, alg.mul(phi.image(x), {y: one}), -1) or vadd(lhs, alg.mul({x: one}, phi.image(y)), -1):
            return (x, y)
    return None


def derivation_residual(alg: Algebra, d: LinearMap) -> tuple | None:
    one = alg.field.one
    for x, y in itertools.product(range(alg.dim), repeat=2):
        lhs = d.apply(alg.product(x, y))
        rhs = vadd(alg.mul(d.image(x), {y: one}), alg.mul({x: one}, d.image(y)))
        if vadd(lhs, rhs, -1):
            return (x, y)
    return None


def homlie_residual(alg: Algebra, phi: LinearMap) -> tuple | None:
    m = alg.mul
    for x, y, z in itertools.product(range(alg.dim), repeat=3):
        r = vsum([
            m(alg.product(x, y), phi.image(z)),
            m(alg.product(z, x), phi.image(y)),
            m(alg.product(y, z), phi.image(x)),
        ])
        if r:
            return (x, y, z)
    return None


def form_residual(alg: Algebra, b: list, cyclic: bool = False) -> tuple | None:
    n = alg.dim
    F = alg.field

    def val(u, v):
        s = F.zero
        for i, a in u.items():
            for j, c in v.items():
                s = s + a * c * b[i][j]
        return s

    one = F.one
    for x, y, z in itertools.product(range(n), repeat=3):
        if cyclic:
            r = val(alg.product(x, y), {z: one}) - val(alg.product(z, x), {y: one})
        else:
            r = val(alg.product(x, y), {z: one}) + val({y: one}, alg.product(x, z))
        if r:
            return (x, y, z)
    return None


def _form_matrix(alg: Algebra, vec) -> list:
    n = alg.dim
    F = alg.field
    b = [[F.zero] * n for _ in range(n)]
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    for idx, c in items:
        if c:
            i, j = divmod(idx, n)
            b[i][j] = c
    return b


# ---------------------------------------------------------------- row generators

def _poisson_rows(alg: Algebra) -> Iterator[dict]:
    """Rows of ``[z, x*y] - [z,x]*y - x*[z,y] = 0``, grouped by ``(z, x)``."""
    n = alg.dim
    ct = _raw_table(alg)
    n2 = n * n
    for z in range(n):
        adz = [ct.get((z, m), {}) for m in range(n)]
        for x in range(n):
            zx = ct.get((z, x), {})
            for y in range(n):
                zy = ct.get((z, y), {})
                rows: dict = {}
                base = (x * n + y) * n
                for mm in range(n):
                    for k, c in adz[mm].items():
                        r = rows.setdefault(k, {})
                        _add(r, base + mm, c)
                if zx or zy:
                    for k in range(n):
                        r = rows.setdefault(k, {})
                        for a, c in zx.items():
                            _add(r, a * n2 + y * n + k, -c)
                        for b, c in zy.items():
                            _add(r, x * n2 + b * n + k, -c)
                yield from rows.values()


def _left_skew_rows(alg: Algebra) -> Iterator[dict]:
    # [x,y]*z - [y,z]*x = 0
    n = alg.dim
    ct = _raw_table(alg)
    n2 = n * n
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, yz = ct.get((x, y), {}), ct.get((y, z), {})
        if not xy and not yz:
            continue
        for k in range(n):
            r: dict = {}
            for a, c in xy.items():
                _add(r, a * n2 + z * n + k, c)
            for b, c in yz.items():
                _add(r, b * n2 + x * n + k, -c)
            yield r


def _right_skew_rows(alg: Algebra) -> Iterator[dict]:
    # x*[y,z] - y*[z,x] = 0
    n = alg.dim
    ct = _raw_table(alg)
    n2 = n * n
    for x, y, z in itertools.product(range(n), repeat=3):
        yz, zx = ct.get((y, z), {}), ct.get((z, x), {})
        if not yz and not zx:
            continue
        for k in range(n):
            r: dict = {}
            for a, c in yz.items():
                _add(r, x * n2 + a * n + k, c)
            for b, c in zx.items():
                _add(r, y * n2 + b * n + k, -c)
            yield r


# ---------------------------------------------------------------- solvers

def _verify_all(space: SubspaceBasis, check: Callable) -> bool:
    for v in space.sparse_vectors():
        bad = check(v)
        if bad is not None:
            raise AssertionError(f"post-solve verification failed at {bad}")
    return True


def centroid(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    _cap(alg, LINEAR_CAP, force, "centroid")
    n = alg.dim
    ct = _raw_table(alg)

    def rows():
        for x, y in itertools.product(range(n), repeat=2):
            xy = ct.get((x, y), {})
            for k in range(n):
                r1: dict = {}
                r2: dict = {}
                for a, c in xy.items():
                    _add(r1, a * n + k, c)
                    _add(r2, a * n + k, c)
                for mm in range(n):
                    c = ct.get((mm, y), {}).get(k)
                    if c:
                        _add(r1, x * n + mm, -c)
                    c = ct.get((x, mm), {}).get(k)
                    if c:
                        _add(r2, y * n + mm, -c)
                yield r1
                yield r2

    space = _solve(alg.field, n * n, rows())
    ok = _verify_all(space, lambda v: centroid_residual(alg, _linear(alg, v)))
    return StructureSpaceReport(Kind.CENTROID, space, provenance=_prov(alg), verified=ok)


def derivations(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    _cap(alg, LINEAR_CAP, force, "derivations")
    n = alg.dim
    ct = _raw_table(alg)

    def rows():
        for x, y in itertools.product(range(n), repeat=2):
            xy = ct.get((x, y), {})
            for k in range(n):
                r: dict = {}
                for a, c in xy.items():
                    _add(r, a * n + k, c)
                for mm in range(n):
                    c = ct.get((mm, y), {}).get(k)
                    if c:
                        _add(r, x * n + mm, -c)
                    c = ct.get((x, mm), {}).get(k)
                    if c:
                        _add(r, y * n + mm, -c)
                yield r

    space = _solve(alg.field, n * n, rows())
    ok = _verify_all(space, lambda v: derivation_residual(alg, _linear(alg, v)))
    return StructureSpaceReport(Kind.DERIVATIONS, space, provenance=_prov(alg), verified=ok)


def _poisson_raw(alg: Algebra, extra: Iterable[Iterable[dict]] = ()) -> SubspaceBasis:
    gens = [_poisson_rows(alg)] + list(extra)
    return _solve(alg.field, alg.dim ** 3, itertools.chain(*gens))


def poisson_space(alg: Algebra, force: bool = False, with_quotient: bool = True) -> StructureSpaceReport:
    """All bilinear ``*`` with ``[z, x*y] = [z,x]*y + x*[z,y]``."""
    _require_lie(alg, "poisson_space")
    _cap(alg, BILINEAR_CAP, force, "poisson_space")
    warn = _char_warn(alg, "Poisson solve")
    space = _poisson_raw(alg)
    ok = _verify_all(space, lambda v: poisson_residual(alg, BilinearMap.from_vector(alg, v)))
    rep = StructureSpaceReport(Kind.POISSON, space, provenance=_prov(alg), verified=ok, warnings=warn)
    if with_quotient:
        triv = trivial_poisson_space(alg, force=True).space
        rep.quotient_dim = space.quotient_dim(triv)
        rep.representatives = space.reduce_modulo(triv)
    return rep


def _omega_space(alg: Algebra) -> SubspaceBasis:
    """Linear ``omega`` with ``[z, omega(u)] = omega([z, u])`` for ``u`` in ``[L, L]``."""
    n = alg.dim
    raw = alg.field.raw
    der = derived_subalgebra(alg).sparse_vectors()
    F = alg.field

    def rows():
        for u in der:
            ur = {i: raw(c) for i, c in u.items()}
            for z in range(n):
                v = alg.mul({z: F.one}, u)
                vr = {i: raw(c) for i, c in v.items()}
                for k in range(n):
                    r: dict = {}
                    # sum_i u_i sum_m w[i, m] c[z, m, k]
                    for mm in range(n):
                        c = alg.constant(z, mm, k)
                        if c:
                            c = raw(c)
                            for i, ui in ur.items():
                                _add(r, i * n + mm, ui * c)
                    for i, vi in vr.items():
                        _add(r, i * n + k, -vi)
                    yield r

    return _solve(F, n * n, rows())


def trivial_poisson_space(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    """Image of ``omega -> ((x, y) -> omega([x, y]))`` over solutions ``omega``."""
    _require_lie(alg, "trivial_poisson_space")
    _cap(alg, LINEAR_CAP, force, "trivial_poisson_space")
    n = alg.dim
    omegas = _omega_space(alg)
    images = []
    for w in omegas.sparse_vectors():
        t: dict = {}
        for (x, y), row in alg.table.items():
            for i, c in row.items():
                for k in range(n):
                    wv = w.get(i * n + k)
                    if wv:
                        idx = (x * n + y) * n + k
                        t[idx] = t.get(idx, alg.field.zero) + c * wv
        images.append({k: v for k, v in t.items() if v})
    space = SubspaceBasis.span(alg.field, n ** 3, images)

    def check(v):
        phi = BilinearMap.from_vector(alg, v)
        if not phi.symmetric_part_zero():
            return "symmetric part"
        return poisson_residual(alg, phi)

    ok = _verify_all(space, check)
    prov = _prov(alg)
    prov["omega_dim"] = omegas.dim
    return StructureSpaceReport(Kind.TRIVIAL_POISSON, space, provenance=prov, verified=ok)


def poisson_quotient(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    full = poisson_space(alg, force=force, with_quotient=False)
    triv = trivial_poisson_space(alg, force=True).space
    reps = full.space.reduce_modulo(triv)
    q = full.space.quotient_dim(triv)
    rep = StructureSpaceReport(Kind.POISSON_QUOTIENT, reps, quotient_dim=q, provenance=full.provenance,
                               verified=full.verified, warnings=full.warnings, representatives=reps)
    rep.provenance = dict(full.provenance, poisson_dim=full.dim, trivial_dim=triv.dim)
    return rep


def skew_poisson_spaces(alg: Algebra, side: str, force: bool = False) -> StructureSpaceReport:
    """Poisson structures that are left skew (``[x,y]*z = [y,z]*x``) or right skew (``x*[y,z] = y*[z,x]``)."""
    _require_lie(alg, "skew_poisson_spaces")
    _cap(alg, BILINEAR_CAP, force, "skew_poisson_spaces")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    gen = _left_skew_rows(alg) if side == "left" else _right_skew_rows(alg)
    res = _left_skew_residual if side == "left" else _right_skew_residual
    space = _poisson_raw(alg, [gen])

    def check(v):
        phi = BilinearMap.from_vector(alg, v)
        return poisson_residual(alg, phi) or res(alg, phi)

    ok = _verify_all(space, check)
    kind = Kind.LEFT_SKEW if side == "left" else Kind.RIGHT_SKEW
    return StructureSpaceReport(kind, space, provenance=_prov(alg), verified=ok)


def homlie_space(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    """Linear ``phi`` with ``[[x,y],phi(z)] + [[z,x],phi(y)] + [[y,z],phi(x)] = 0``.

    The expression is alternating in ``(x, y, z)``, so triples ``x < y < z``
    generate the whole system.
    """
    _require_lie(alg, "homlie_space")
    _cap(alg, LINEAR_CAP, force, "homlie_space")
    warn = _char_warn(alg, "Hom-Lie solve")
    n = alg.dim
    raw = alg.field.raw
    # brmat[u_pair][m] = [[x,y], e_m] as raw dict
    cache: dict = {}

    def br_with(pair):
        if pair not in cache:
            x, y = pair
            u = alg.product(x, y)
            cache[pair] = [{k: raw(c) for k, c in alg.mul(u, {mm: alg.field.one}).items()} for mm in range(n)]
        return cache[pair]

    def rows():
        for x, y, z in itertools.combinations(range(n), 3):
            acc: dict = {}
            for pair, w in (((x, y), z), ((z, x), y), ((y, z), x)):
                cols = br_with(pair)
                for mm in range(n):
                    for k, c in cols[mm].items():
                        _add(acc.setdefault(k, {}), w * n + mm, c)
            yield from acc.values()

    space = _solve(alg.field, n * n, rows())
    ok = _verify_all(space, lambda v: homlie_residual(alg, _linear(alg, v)))
    return StructureSpaceReport(Kind.HOMLIE, space, provenance=_prov(alg), verified=ok, warnings=warn)


def invariant_forms(alg: Algebra, symmetric_only: bool = False, cyclic: bool = False,
                    force: bool = False) -> StructureSpaceReport:
    """Bilinear forms with ``<[x,y],z> + <y,[x,z]> = 0``.

    With ``cyclic=True`` the condition is ``b([x,y],z) = b([z,x],y)``
    instead (the form used for tensor-factor components).
    """
    _cap(alg, LINEAR_CAP, force, "invariant_forms")
    n = alg.dim
    ct = _raw_table(alg)
    one = alg.field.raw(alg.field.one)

    def rows():
        for x, y, z in itertools.product(range(n), repeat=3):
            r: dict = {}
            for a, c in ct.get((x, y), {}).items():
                _add(r, a * n + z, c)
            if cyclic:
                for a, c in ct.get((z, x), {}).items():
                    _add(r, a * n + y, -c)
            else:
                for b, c in ct.get((x, z), {}).items():
                    _add(r, y * n + b, c)
            yield r
        if symmetric_only:
            for i in range(n):
                for j in range(i + 1, n):
                    yield {i * n + j: one, j * n + i: -one}

    space = _solve(alg.field, n * n, rows())

    def check(v):
        b = _form_matrix(alg, v)
        if symmetric_only and any(b[i][j] != b[j][i] for i in range(n) for j in range(n)):
            return "not symmetric"
        return form_residual(alg, b, cyclic)

    ok = _verify_all(space, check)
    prov = _prov(alg)
    prov.update(symmetric_only=symmetric_only, condition="cyclic" if cyclic else "invariance")
    return StructureSpaceReport(Kind.INVARIANT_FORM, space, provenance=prov, verified=ok)


def pair_index(i: int, j: int, n: int) -> int:
    """Position of ``{i, j}`` (``i <= j``) in the row-major upper triangle."""
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)


def symmetric_to_bilinear(alg: Algebra, vec) -> BilinearMap:
    n = alg.dim
    t: dict = {}
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for idx, c in items:
        if not c:
            continue
        p, k = divmod(idx, n)
        i, j = pairs[p]
        t.setdefault((i, j), {})[k] = c
        if i != j:
            t.setdefault((j, i), {})[k] = c
    return BilinearMap(alg, t)


def third_power_residual(alg: Algebra, phi: BilinearMap) -> tuple | None:
    one = alg.field.one
    for x, y, z in itertools.product(range(alg.dim), repeat=3):
        r = vsum([
            alg.mul(phi.basis_value(x, y), {z: one}),
            alg.mul(phi.basis_value(z, x), {y: one}),
            alg.mul(phi.basis_value(y, z), {x: one}),
        ])
        if r:
            return (x, y, z)
    return None


def third_power_assoc_space(alg: Algebra, force: bool = False) -> StructureSpaceReport:
    """Symmetric ``Phi`` with ``[Phi(x,y),z] + [Phi(z,x),y] + [Phi(y,z),x] = 0``.

    The condition is symmetric in ``(x, y, z)`` for symmetric ``Phi``, so
    multisets ``x <= y <= z`` suffice.  The ambient is the symmetric
    coordinate space of dimension ``n^2 (n + 1) / 2``.
    """
    _require_lie(alg, "third_power_assoc_space")
    _cap(alg, BILINEAR_CAP, force, "third_power_assoc_space")
    n = alg.dim
    ct = _raw_table(alg)
    ambient = n * n * (n + 1) // 2

    def rows():
        for x, y, z in itertools.combinations_with_replacement(range(n), 3):
            acc: dict = {}
            for (a, b), c in (((x, y), z), ((z, x), y), ((y, z), x)):
                base = pair_index(a, b, n) * n
                for mm in range(n):
                    for k, v in ct.get((mm, c), {}).items():
                        _add(acc.setdefault(k, {}), base + mm, v)
            yield from acc.values()

    space = _solve(alg.field, ambient, rows())
    ok = _verify_all(space, lambda v: third_power_residual(alg, symmetric_to_bilinear(alg, v)))
    return StructureSpaceReport(Kind.THIRD_POWER_ASSOC, space, provenance=_prov(alg), verified=ok)


def _prov(alg: Algebra) -> dict:
    d = {"algebra": alg.name, "dim": alg.dim, "field": alg.field.to_json()}
    if alg.metadata.get("analog"):
        d["analog"] = alg.metadata["analog"]
    return d


SOLVERS = {
    "centroid": centroid,
    "poisson": poisson_space,
    "trivial_poisson": trivial_poisson_space,
    "poisson_quotient": poisson_quotient,
    "left_skew": lambda alg, force=False: skew_poisson_spaces(alg, "left", force),
    "right_skew": lambda alg, force=False: skew_poisson_spaces(alg, "right", force),
    "homlie": homlie_space,
    "invariant_forms": lambda alg, force=False: invariant_forms(alg, False, False, force),
    "symmetric_invariant_forms": lambda alg, force=False: invariant_forms(alg, True, False, force),
    "cyclic_forms": lambda alg, force=False: invariant_forms(alg, False, True, force),
    "derivations": derivations,
    "third_power_assoc": third_power_assoc_space,
}


# ---------------------------------------------------------------- explicit structures

def bilinear_from_function(alg: Algebra, f: Callable[[int, int], dict]) -> BilinearMap:
    return BilinearMap.from_function(alg, f)


def jordan_structure(n: int, L: Algebra) -> BilinearMap:
    """``X * Y = (XY + YX)/2 - Tr(XY) E / n`` on ``sl_n`` in the standard basis."""
    from tensorlie.constructors import base_field

    A = base_field(L.field)
    F = L.field
    params = {"u": {0: F.one}, "gamma": LinearMap(F, 1, 1, [[-F.one / F(n)]])}
    sl, _ = sl_n_A(A, n, with_info=True)
    phi = sln_basic_poisson(A, n, "i", params, alg=sl)
    return BilinearMap(L, phi.t)


def _span_of(A: Algebra, vectors) -> SubspaceBasis:
    return SubspaceBasis.span(A.field, A.dim, [v for v in vectors if v])


def _commutator(A: Algebra, u: dict, v: dict) -> dict:
    return vadd(A.mul(u, v), A.mul(v, u), -1)


def _as_sparse(F: Field, v) -> dict:
    if isinstance(v, dict):
        return {k: F(c) for k, c in v.items() if c}
    return {k: F(c) for k, c in enumerate(v) if c}


def sln_basic_poisson(A: Algebra, n: int, kind: str, params: dict, alg: Algebra | None = None) -> BilinearMap:
    """Explicit basic Poisson structure of type ``i``-``iv`` on ``sl_n(A)``.

    ``params``: ``u`` (A-vector) and ``gamma`` (LinearMap A -> A) for (i);
    ``alpha`` / ``beta`` (LinearMap A -> A, used on ``[A, A]``) for (ii) / (iii);
    ``delta`` (callable or dict on pairs of ``[A, A]`` basis indices) for (iv).
    Every side condition is checked first and reported by name.
    """
    if n < 3:
        raise SideConditionViolated("n >= 3")
    F = A.field
    if alg is None:
        alg, info = sl_n_A(A, n, with_info=True)
    else:
        info = SlnA(n, A, derived_subalgebra(A), n * n - 1)
    m = A.dim
    Z = center_assoc(A)
    C = info.comm
    Cv = C.sparse_vectors()
    basisA = [{k: F.one} for k in range(m)]
    E = {(r, r): 1 for r in range(n)}
    sl = sl_basis(n)

    # basis elements as lists of (matrix, A-vector) terms
    terms = []
    for X in sl:
        for k in range(m):
            terms.append((X, {k: F.one}, False))
    for v in Cv:
        terms.append((E, v, True))

    def mat_mul(X, Y):
        out: dict = {}
        for (r, s), a in X.items():
            for (s2, c), b in Y.items():
                if s == s2:
                    out[(r, c)] = out.get((r, c), 0) + a * b
        return {k: v for k, v in out.items() if v}

    def tr(X):
        return sum(v for (r, c), v in X.items() if r == c)

    def gl_term(X, a: dict, scale=1) -> dict:
        return {rc: {k: F(x) * F(scale) * c for k, c in a.items()} for rc, x in X.items() if a}

    def gl_add(P, Q):
        out = dict(P)
        for rc, v in Q.items():
            w = vadd(out.get(rc, {}), v)
            if w:
                out[rc] = w
            else:
                out.pop(rc, None)
        return out

    kind = kind.lower()
    if kind == "i":
        u = _as_sparse(F, params.get("u", {}))
        gamma: LinearMap = params.get("gamma") or LinearMap(F, m, m, [[F.zero] * m for _ in range(m)])
        if not Z.contains_vector(u):
            raise SideConditionViolated("u in Z(A)")
        for k in range(m):
            if not Z.contains_vector(gamma.image(k)):
                raise SideConditionViolated("gamma(A) in Z(A)")
        for v in Cv:
            if gamma.apply(v):
                raise SideConditionViolated("gamma([A,A]) = 0")
        s1 = _span_of(A, (_commutator(A, c, a) for c in Cv for a in basisA))
        s2 = _span_of(A, (A.mul(s, b) for s in s1.sparse_vectors() for b in basisA))
        for v in s2.sparse_vectors():
            if gamma.apply(v):
                raise SideConditionViolated("gamma([[A,A],A]A) = 0")
        inv_n = F.one / F(n)
        for k in range(m):
            w = vadd({kk: c * inv_n for kk, c in A.mul(basisA[k], u).items()}, gamma.image(k))
            if not C.contains_vector(w):
                raise SideConditionViolated("a u / n + gamma(a) in [A,A]")
        if F.characteristic == 2:
            raise SideConditionViolated("characteristic != 2")
        half = F.one / F(2)

        def f(i, j):
            X, a, _ = terms[i]
            Y, b, _ = terms[j]
            ab, ba = A.mul(a, b), A.mul(b, a)
            out = gl_term(mat_mul(X, Y), A.mul(ab, u), half)
            out = gl_add(out, gl_term(mat_mul(Y, X), A.mul(ba, u), half))
            t = tr(mat_mul(X, Y))
            if t:
                out = gl_add(out, gl_term(E, gamma.apply(ab), t))
            return out

    elif kind in ("ii", "iii"):
        key = "alpha" if kind == "ii" else "beta"
        amap: LinearMap = params[key]
        for v in Cv:
            if not Z.contains_vector(amap.apply(v)):
                raise SideConditionViolated(f"{key}([A,A]) in Z(A)")
        cc = _span_of(A, (_commutator(A, a, b) for a in Cv for b in Cv))
        for v in cc.sparse_vectors():
            if amap.apply(v):
                raise SideConditionViolated(f"{key}([[A,A],[A,A]]) = 0")

        def f(i, j):
            X, a, ea = terms[i]
            Y, b, eb = terms[j]
            if kind == "ii":
                if not ea:
                    return {}
                return gl_term(Y, A.mul(amap.apply(a), b))
            if not eb:
                return {}
            return gl_term(X, A.mul(amap.apply(b), a))

    elif kind == "iv":
        delta = params.get("delta", {})
        dfun = delta if callable(delta) else (lambda q1, q2: _as_sparse(F, delta.get((q1, q2), {})))
        ZC = Z.intersect(C)
        q = C.dim
        dvals = {(q1, q2): _as_sparse(F, dfun(q1, q2)) for q1 in range(q) for q2 in range(q)}
        for v in dvals.values():
            if not ZC.contains_vector(v):
                raise SideConditionViolated("delta values in Z(A) & [A,A]")

        def dlin(a: dict, b: dict) -> dict:
            ca, cb = info.comm_coords(a), info.comm_coords(b)
            if ca is None or cb is None:
                raise SideConditionViolated("delta arguments in [A,A]")
            out: dict = {}
            for q1, x in ca.items():
                for q2, y in cb.items():
                    out = vadd(out, dvals[(q1, q2)], x * y)
            return out

        for a, b, c in itertools.product(Cv, repeat=3):
            if vadd(dlin(_commutator(A, c, a), b), dlin(a, _commutator(A, c, b))):
                raise SideConditionViolated("delta([c,a],b) + delta(a,[c,b]) = 0")

        def f(i, j):
            X, a, ea = terms[i]
            Y, b, eb = terms[j]
            if not (ea and eb):
                return {}
            return gl_term(E, dlin(a, b))

    else:
        raise ValueError(f"unknown kind {kind!r}")

    decompose = _decomposer(alg, info)
    t = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = decompose(f(i, j))
            if v:
                t[(i, j)] = v
    return BilinearMap(alg, t)


def _decomposer(alg: Algebra, info: SlnA):
    """Map a ``gl_n(A)`` element ``{(r, c): A-vector}`` to split-basis coordinates of ``sl_n(A)``."""
    n, A = info.n, info.A
    F = A.field
    m = A.dim
    sl = sl_basis(n)
    inv_n = F.one / F(n)

    def dec(M: dict) -> dict:
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
                raise SideConditionViolated("value outside sl_n(A)", "trace not in [A,A]")
            for q, x in coords.items():
                res[info.e_index(q)] = res.get(info.e_index(q), F.zero) + x
        return {k: x for k, x in res.items() if x}

    return dec


# ---------------------------------------------------------------- seven matrices

@dataclass
class ProbeResult:
    rank: int
    rank_products: int
    trace_difference: Fraction
    independent: bool

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rank_products": self.rank_products,
            "trace_difference": QQ.format(self.trace_difference),
            "independent": self.independent,
        }


REFERENCE_X = [[0, 1, 1], [0, 0, 0], [0, 0, 0]]
REFERENCE_Y = [[0, 0, 0], [1, 0, 1], [0, 0, 0]]
REFERENCE_Z = [[0, 0, 0], [0, 0, 0], [1, 1, 0]]


def _mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def seven_matrix_probe(X, Y, Z) -> ProbeResult:
    """Rank of ``XYZ, XZY, YXZ, YZX, ZXY, ZYX, (Tr XYZ - Tr XZY) E`` in ``M_3(Q)``."""
    X, Y, Z = ([[Fraction(v) for v in row] for row in M] for M in (X, Y, Z))
    for M in (X, Y, Z):
        if sum(M[i][i] for i in range(3)) != 0:
            raise ValueError("inputs must be traceless")
    prods = [_mm(_mm(a, b), c) for a, b, c in itertools.permutations((X, Y, Z))]
    # permutations order: XYZ, XZY, YXZ, YZX, ZXY, ZYX
    d = sum(prods[0][i][i] for i in range(3)) - sum(prods[1][i][i] for i in range(3))
    E = [[d if i == j else Fraction(0) for j in range(3)] for i in range(3)]
    vecs = [[v for row in M for v in row] for M in prods]
    r6 = Matrix(QQ, vecs).rank()
    r7 = Matrix(QQ, vecs + [[v for row in E for v in row]]).rank()
    return ProbeResult(r7, r6, d, r7 == 7)


def random_traceless(rng: random.Random, lo: int = -3, hi: int = 3):
    M = [[rng.randint(lo, hi) for _ in range(3)] for _ in range(3)]
    M[2][2] = -(M[0][0] + M[1][1])
    return M


def seven_matrix_sampling(samples: int = 1000, seed: int = 0, lo: int = -3, hi: int = 3) -> dict:
    """Fraction of seeded random traceless integer triples whose 7 matrices are dependent."""
    rng = random.Random(seed)
    dependent = 0
    for _ in range(samples):
        X, Y, Z = (random_traceless(rng, lo, hi) for _ in range(3))
        if not seven_matrix_probe(X, Y, Z).independent:
            dependent += 1
    return {"samples": samples, "seed": seed, "dependent": dependent,
            "dependent_fraction": dependent / samples if samples else 0.0}


# ---------------------------------------------------------------- extended current structures

def extended_current_structure(alg: Algebra, kind: str, corrected: bool = False) -> BilinearMap:
    """Structures (iii), (iv), (v) on an extended current algebra with one derivation.

    ``alg`` must carry ``z_index`` and ``d_indices`` metadata, as produced by
    :func:`~tensorlie.constructors.extended_current`.  (iii): ``d * w = w``
    on the current part and ``d * d = d``; (iv): the mirror ``w * d = w``;
    (v): ``d * d = z``.  ``corrected=True`` adds ``d * z = z`` to (iii) and
    ``z * d = z`` to (iv), which cancels the central residual of the
    bare versions.
    """
    md = alg.metadata
    if "z_index" not in md or len(md.get("d_indices", ())) != 1:
        raise FlavorMismatch("need an extended current algebra with one derivation")
    z, d = md["z_index"], md["d_indices"][0]
    one = alg.field.one
    current = range(z)
    t: dict = {}
    kind = kind.lower()
    if kind == "iii":
        for w in current:
            t[(d, w)] = {w: one}
        t[(d, d)] = {d: one}
        if corrected:
            t[(d, z)] = {z: one}
    elif kind == "iv":
        for w in current:
            t[(w, d)] = {w: one}
        t[(d, d)] = {d: one}
        if corrected:
            t[(z, d)] = {z: one}
    elif kind == "v":
        t[(d, d)] = {z: one}
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return BilinearMap(alg, t)
