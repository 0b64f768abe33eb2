"""Exact scalars: rationals and truncated power series in one formal parameter ``t``.

Rationals are plain :class:`fractions.Fraction` (or ``int``).  A :class:`Series`
is a polynomial in ``t`` with rational coefficients, computed modulo
``t**(order + 1)``.  The order is a per-context setting::

    with truncation(6):
        eps = 3 * t()
        (1 - eps).inverse()
"""

from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

DEFAULT_ORDER = 8

_order: contextvars.ContextVar[int] = contextvars.ContextVar("truncation_order", default=DEFAULT_ORDER)


def current_order() -> int:
    return _order.get()


@contextlib.contextmanager
def truncation(order: int) -> Iterator[int]:
    """Set the truncation order for series created inside the block."""
    if order < 0:
        raise ValueError("truncation order must be non-negative")
    token = _order.set(order)
    try:
        yield order
    finally:
        _order.reset(token)


class Series:
    """Element of Q[t] / (t^(order+1))."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        if order is None:
            order = current_order()
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def constant(cls, c, order: int | None = None) -> "Series":
        return cls((c,), order)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            if other.order != self.order:
                raise ValueError(
                    f"mixed truncation orders {self.order} and {other.order} in one computation")
            return other
        if isinstance(other, (int, Rational)):
            return Series((other,), self.order)
        return None

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Series._raw(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(tuple(-a for a in self.coeffs), self.order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Series._raw(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.order)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return Series._raw((Fraction(0),) * (self.order + 1), self.order)
            return Series._raw(tuple(a * other for a in self.coeffs), self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, n = self.coeffs, o.coeffs, self.order + 1
        out = [Fraction(0)] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return Series._raw(tuple(out), self.order)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        """Multiplicative inverse; defined only for units (nonzero constant term)."""
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        n = self.order + 1
        inv = [Fraction(0)] * n
        inv[0] = 1 / a[0]
        for k in range(1, n):
            s = sum((a[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s * inv[0]
        return Series._raw(tuple(inv), self.order)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Series._raw(tuple(a / other for a in self.coeffs), self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Series((1,), self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Series):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.coeffs, self.order))

    def __bool__(self):
        return any(self.coeffs)

    # -- inspection -----------------------------------------------------
    def valuation(self) -> int | None:
        """Lowest power of t with nonzero coefficient (None for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __repr__(self):
        return f"Series({format_scalar(self)!r}, order={self.order})"

    @staticmethod
    def _raw(coeffs: tuple, order: int) -> "Series":
        s = object.__new__(Series)
        s.coeffs = coeffs
        s.order = order
        return s


Scalar = Union[int, Fraction, Series]


def t(order: int | None = None) -> Series:
    """The formal parameter."""
    return Series((0, 1), order)


def is_unit(x: Scalar) -> bool:
    if isinstance(x, Series):
        return bool(x.coeffs[0])
    return x != 0


def valuation(x: Scalar) -> int | None:
    if isinstance(x, Series):
        return x.valuation()
    return None if x == 0 else 0


def constant_term(x: Scalar) -> Fraction:
    if isinstance(x, Series):
        return x.coeffs[0]
    return Fraction(x)


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` (or an integer) into an exact Fraction; floats are rejected."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"rationals must be given as strings, got {type(text).__name__}")
    s = text.strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def parse_scalar(value) -> Scalar:
    """A rational string, or a list of rational strings read as coefficients of t^0, t^1, ..."""
    if isinstance(value, list):
        return Series([parse_rational(v) for v in value])
    return parse_rational(value)


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x: Scalar) -> str:
    """Exact textual form; never rounded."""
    if isinstance(x, Series):
        terms = []
        for k, c in enumerate(x.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(_fmt_frac(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_fmt_frac(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return _fmt_frac(Fraction(x))
