"""Exact complex-rational scalars and small exact linear algebra.

All structure constants and symbolic oscillator-algebra coefficients in this
package are elements of Q(i).  Floating point enters only when a symbolic
object is evaluated on a concrete Hilbert space or at a concrete point of the
sphere.  gmpy2 rationals are used when available (the symbolic bracket sweeps
are ~7x faster); plain fractions.Fraction is a drop-in fallback.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction

_Q0 = Q(0)


def _frac(x):
    if isinstance(x, (int, Fraction)) or type(x) is type(_Q0):
        return Q(x)
    if isinstance(x, str):
        return Q(Fraction(x))
    if isinstance(x, float):
        if x != int(x):
            raise TypeError(f"refusing inexact float {x!r} as an exact rational")
        return Q(int(x))
    raise TypeError(f"cannot build an exact rational from {x!r}")


class CRat:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _raw(re, im):
        out = CRat.__new__(CRat)
        out.re = re
        out.im = im
        return out

    def __add__(self, other):
        if type(other) is not CRat:
            other = crat(other)
        return CRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not CRat:
            other = crat(other)
        return CRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return crat(other) - self

    def __mul__(self, other):
        if type(other) is CRat:
            a, b, c, d = self.re, self.im, other.re, other.im
            if b:
                if d:
                    return CRat._raw(a * c - b * d, a * d + b * c)
                return CRat._raw(a * c, b * c)
            if d:
                return CRat._raw(a * c, a * d)
            return CRat._raw(a * c, _Q0)
        if isinstance(other, int):
            return CRat._raw(self.re * other, self.im * other)
        return self * crat(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = crat(other)
        d = other.re * other.re + other.im * other.im
        if not d:
            raise ZeroDivisionError("division by zero complex rational")
        return CRat._raw(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __neg__(self):
        return CRat._raw(-self.re, -self.im)

    def conj(self):
        return CRat._raw(self.re, -self.im)

    def __eq__(self, other):
        try:
            other = crat(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self):
        # rational upper bound, good enough for "is it zero / how big" checks
        return Fraction(abs(self.re) + abs(self.im))

    def to_complex(self):
        return float(self.re) + 1j * float(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


def crat(x):
    """Coerce ints, Fractions, 2-tuples and CRats to CRat."""
    if type(x) is CRat:
        return x
    if isinstance(x, tuple):
        return CRat(*x)
    return CRat(x)


ZERO = CRat(0)
ONE = CRat(1)
I = CRat(0, 1)


def frac_mat_inverse(rows):
    """Invert a square matrix of Fractions by Gauss-Jordan elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
