"""Exact scalar arithmetic over prime fields GF(p) and the rationals.

Every value is kept in canonical form at all times: a GF(p) element is the
residue in [0, p), a rational is fully reduced with positive denominator.
Equal elements therefore compare equal with ``==`` and format to identical
text, which the matrix layer relies on for exact comparisons.  There is no
epsilon anywhere; zero tests are exact.

Internally matrices store raw values (machine ints for GF(p), ``mpq`` for
rationals) and call the vectorized helpers on the field object.  The
:class:`Scalar` wrapper is the element type seen at the public API.
"""

from __future__ import annotations

import re
from operator import mul as _mul

from .errors import FieldMismatchError, ParseError

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is normally available
    from fractions import Fraction as _rational

_WORD_MAX = 1 << 64

# Witnesses making Miller-Rabin deterministic for every n < 3.3 * 10**24,
# which covers the whole word-sized range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_GFP_TOKEN = re.compile(r"^[0-9]+$")
_RAT_TOKEN = re.compile(r"^-?[0-9]+(?:/[0-9]+)?$")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for word-sized integers."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """A field an element can belong to.  Subclasses implement the raw ops.

    Raw values are plain Python objects (int residues, ``mpq``); the methods
    here never allocate wrappers, so the matrix kernels stay fast.
    """

    kind = ""

    def __call__(self, value) -> "Scalar":
        return Scalar(self, value)

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.zero_raw)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.one_raw)

    # subclasses: zero_raw, one_raw, canon, add, sub, neg, mul, inv,
    #             vadd, vsub, vneg, dot, vcanon, parse, fmt


class PrimeField(FieldSpec):
    """GF(p) for a word-sized prime p.  Raw values are ints in [0, p)."""

    kind = "gfp"
    __slots__ = ("modulus",)

    zero_raw = 0
    one_raw = 1

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or isinstance(modulus, bool):
            raise TypeError("modulus must be an int")
        if modulus < 2 or modulus >= _WORD_MAX:
            raise ValueError("modulus must be a prime fitting in a machine word")
        if not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("gfp", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})"

    def canon(self, v):
        if isinstance(v, int) and not isinstance(v, bool):
            return v % self.modulus
        raise TypeError(f"GF({self.modulus}) values must be ints, got {type(v).__name__}")

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def neg(self, x):
        return -x % self.modulus

    def mul(self, x, y):
        return x * y % self.modulus

    def inv(self, x):
        if x % self.modulus == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.modulus)

    def vadd(self, xs, ys):
        p = self.modulus
        return [(x + y) % p for x, y in zip(xs, ys)]

    def vsub(self, xs, ys):
        p = self.modulus
        return [(x - y) % p for x, y in zip(xs, ys)]

    def vneg(self, xs):
        p = self.modulus
        return [-x % p for x in xs]

    def dot(self, xs, ys):
        return sum(map(_mul, xs, ys)) % self.modulus

    def vcanon(self, xs):
        p = self.modulus
        return [x % p for x in xs]

    def parse(self, token: str):
        if not _GFP_TOKEN.match(token):
            raise ParseError(f"invalid GF({self.modulus}) scalar {token!r}")
        v = int(token)
        if v >= self.modulus:
            raise ParseError(f"residue {v} out of range for GF({self.modulus})")
        return v

    def fmt(self, v) -> str:
        return str(v)


class RationalField(FieldSpec):
    """Arbitrary-precision rationals.  Raw values are reduced fractions."""

    kind = "rational"
    __slots__ = ()

    zero_raw = _rational(0)
    one_raw = _rational(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"

    def canon(self, v):
        if isinstance(v, bool):
            raise TypeError("rational values must be numbers, got bool")
        try:
            return _rational(v)
        except TypeError:
            raise TypeError(f"cannot interpret {type(v).__name__} as a rational") from None

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("0 has no inverse")
        return self.one_raw / x

    def vadd(self, xs, ys):
        return [x + y for x, y in zip(xs, ys)]

    def vsub(self, xs, ys):
        return [x - y for x, y in zip(xs, ys)]

    def vneg(self, xs):
        return [-x for x in xs]

    def dot(self, xs, ys):
        return sum(map(_mul, xs, ys), self.zero_raw)

    def vcanon(self, xs):
        return list(xs)

    def parse(self, token: str):
        if not _RAT_TOKEN.match(token):
            raise ParseError(f"invalid rational scalar {token!r}")
        try:
            return _rational(token)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {token!r}") from None

    def fmt(self, v) -> str:
        return str(v)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    """The prime field with p elements."""
    return PrimeField(p)


class Scalar:
    """An exact field element in canonical form.

    Arithmetic between scalars of different fields raises
    :class:`FieldMismatchError`; inversion of zero raises
    ``ZeroDivisionError``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        self.field = field
        self.value = value.value if isinstance(value, Scalar) else field.canon(value)

    def _coerce(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            raise FieldMismatchError(f"cannot combine Scalar with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"mixed fields {self.field!r} and {other.field!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(other.value)))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        return (
            isinstance(other, Scalar)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.fmt(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"
