"""Exact scalar arithmetic over the rationals and prime fields.

Rationals are plain :class:`fractions.Fraction` values.  Prime field elements
are :class:`Fp` instances carrying a reference to their :class:`PrimeField`;
combining elements of different fields raises :class:`MixedFieldsError`.

    >>> F = GF(7)
    >>> F(1) / F(3)
    Fp(5, p=7)
    >>> QQ("1/2") + QQ("1/3")
    Fraction(5, 6)
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from tensorlie.errors import DivisionByZero, MixedFieldsError, ParseError

P_MAX = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of :data:`QQ` and :func:`GF` fields."""

    kind: str
    p: int | None
    characteristic: int

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def random_element(self, rng: random.Random, bound: int = 50):
        raise NotImplementedError

    # raw representations used by the elimination kernels
    def raw(self, x):
        raise NotImplementedError

    def wrap(self, r):
        raise NotImplementedError

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.p}

    @staticmethod
    def from_json(d) -> "Field":
        if isinstance(d, str):
            return parse_field(d)
        kind = d.get("kind")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return GF(int(d["p"]))
        raise ParseError(f"unknown field kind {kind!r}")

    def vector(self, values: Iterable) -> list:
        return [self(v) for v in values]


class Rationals(Field):
    kind = "Q"
    p = None
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fp):
            raise MixedFieldsError(f"cannot coerce {x!r} into Q")
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        return Fraction(x)

    def parse(self, s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {s!r}") from exc

    def format(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def random_element(self, rng, bound=50):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def raw(self, x):
        return x

    def wrap(self, r):
        return r

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self._elements = None

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.field is not self:
                raise MixedFieldsError(f"cannot coerce {x!r} into F_{self.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            # integer constants such as those produced by Fraction(3) are fine
            if x.denominator == 1:
                return Fp(x.numerator % self.p, self)
            raise MixedFieldsError(f"rational {x} is not an element of F_{self.p}")
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {type(x).__name__} into F_{self.p}")
        return Fp(x % self.p, self)

    def parse(self, s: str):
        s = s.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                return self(int(num)) / self(int(den))
            return self(int(s))
        except (ValueError, DivisionByZero) as exc:
            raise ParseError(f"bad F_{self.p} element {s!r}") from exc

    def format(self, x) -> str:
        return str(self(x).v)

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.field is self

    def random_element(self, rng, bound=50):
        return Fp(rng.randrange(self.p), self)

    def elements(self) -> list["Fp"]:
        if self._elements is None:
            self._elements = [Fp(v, self) for v in range(self.p)]
        return self._elements

    def raw(self, x):
        return x.v

    def wrap(self, r):
        return Fp(r % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field with ``p`` elements (one shared instance per ``p``)."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= P_MAX:
        raise ValueError(f"prime modulus must be below 2^31, got {p}")
    return PrimeField(p)


def parse_field(s: str) -> Field:
    """Parse ``Q`` or ``Fp:<p>`` (also accepts ``F7``, ``GF(7)``)."""
    s = s.strip()
    if s in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "GF(", "F_", "F"):
        if s.startswith(prefix):
            try:
                return GF(int(s[len(prefix):].rstrip(")")))
            except ValueError as exc:
                raise ParseError(f"bad field {s!r}") from exc
    raise ParseError(f"bad field {s!r}")


class Fp:
    """Element of a prime field, stored as a residue in ``[0, p)``."""

    __slots__ = ("v", "field")

    def __init__(self, v: int, field: PrimeField):
        self.v = v
        self.field = field

    def _other(self, other) -> int:
        if type(other) is Fp:
            if other.field is not self.field:
                raise MixedFieldsError(f"F_{self.field.p} and F_{other.field.p} mixed")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        if isinstance(other, Fraction):
            raise MixedFieldsError(f"rational {other} mixed with F_{self.field.p}")
        raise MixedFieldsError(f"cannot combine F_{self.field.p} with {type(other).__name__}")

    def __add__(self, other):
        return Fp((self.v + self._other(other)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp((self.v - self._other(other)) % self.field.p, self.field)

    def __rsub__(self, other):
        return Fp((self._other(other) - self.v) % self.field.p, self.field)

    def __mul__(self, other):
        return Fp((self.v * self._other(other)) % self.field.p, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o == 0:
            raise DivisionByZero(f"division by zero in F_{self.field.p}")
        return Fp((self.v * pow(o, -1, self.field.p)) % self.field.p, self.field)

    def __rtruediv__(self, other):
        if self.v == 0:
            raise DivisionByZero(f"division by zero in F_{self.field.p}")
        return Fp((self._other(other) * pow(self.v, -1, self.field.p)) % self.field.p, self.field)

    def __neg__(self):
        return Fp((-self.v) % self.field.p, self.field)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return (self.field.one / self) ** (-n)
        return Fp(pow(self.v, n, self.field.p), self.field)

    def __eq__(self, other):
        if type(other) is Fp:
            return self.field is other.field and self.v == other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, p={self.field.p})"

    def __str__(self):
        return str(self.v)


def field_of(x) -> Field:
    if isinstance(x, Fp):
        return x.field
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise TypeError(f"{x!r} is not a field scalar")


def field_arith(a, b, op: str):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two scalars of one field."""
    fa, fb = field_of(a), field_of(b)
    if fa is not fb:
        raise MixedFieldsError(f"{fa!r} and {fb!r} mixed")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return fa(a) / fa(b)
    raise ValueError(f"unknown operation {op!r}")


def char_guard(field: Field, excluded: Iterable[int] = (2, 3)) -> bool:
    """True iff the characteristic is 0 or not in ``excluded``."""
    c = field.characteristic
    return c == 0 or c not in set(excluded)
