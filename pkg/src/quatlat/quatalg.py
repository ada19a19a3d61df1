"""Symbol algebras (a, b) over a real cyclotomic field.

The basis is fixed as 1, i, j, k with i*i = a, j*j = b, i*j = k = -j*i.
Quaternions carry four field elements; all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

from . import errors, realfield


def build_symbol_algebra(field, a, b):
    """Algebra (a, b) over the field; definiteness certified via embeddings."""
    a = field.elem(a)
    b = field.elem(b)
    if not a or not b:
        raise errors.ZeroParameter("algebra parameters must be nonzero")
    return SymbolAlgebra(field, a, b)


class SymbolAlgebra:

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b
        self.definite = (field.is_totally_negative(a)
                         and field.is_totally_negative(b))
        self._ab = a * b
        z, o = field.zero, field.one
        self.one = Quaternion(self, (o, z, z, z))
        self.i = Quaternion(self, (z, o, z, z))
        self.j = Quaternion(self, (z, z, o, z))
        self.k = Quaternion(self, (z, z, z, o))
        self.zero_quat = Quaternion(self, (z, z, z, z))

    def is_minus_one_minus_one(self):
        m1 = -self.field.one
        return self.a == m1 and self.b == m1

    def quat(self, coords):
        return Quaternion(self, tuple(self.field.elem(c) for c in coords))

    def scalar(self, value):
        z = self.field.zero
        return Quaternion(self, (self.field.elem(value), z, z, z))

    def __eq__(self, other):
        if not isinstance(other, SymbolAlgebra):
            return NotImplemented
        return (self.field is other.field and self.a == other.a
                and self.b == other.b)

    def __hash__(self):
        return hash((self.field.n, self.a, self.b))

    def __repr__(self):
        return "SymbolAlgebra(n=%d, a=%r, b=%r)" % (
            self.field.n, list(self.a.as_fractions()), list(self.b.as_fractions()))


class Quaternion:

    __slots__ = ("algebra", "u")

    def __init__(self, algebra, u):
        self.algebra = algebra
        self.u = u  # (u0, u1, u2, u3), field elements

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            if other.algebra != self.algebra:
                raise errors.AlgebraMismatch("quaternions of different algebras")
            return other
        if isinstance(other, (int, Fraction, realfield.FieldElem)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.algebra,
                          tuple(x + y for x, y in zip(self.u, o.u)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(self.algebra, tuple(-x for x in self.u))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        alg = self.algebra
        a, b, ab = alg.a, alg.b, alg._ab
        x0, x1, x2, x3 = self.u
        y0, y1, y2, y3 = o.u
        return Quaternion(alg, (
            x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - ab * (x3 * y3),
            x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2),
            x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1),
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        u0, u1, u2, u3 = self.u
        return Quaternion(self.algebra, (u0, -u1, -u2, -u3))

    def trd(self):
        return self.u[0] + self.u[0]

    def nrd(self):
        alg = self.algebra
        u0, u1, u2, u3 = self.u
        return (u0 * u0 - alg.a * (u1 * u1) - alg.b * (u2 * u2)
                + alg._ab * (u3 * u3))

    def inverse(self):
        n = self.nrd()
        if not n:
            raise errors.ZeroDivisor("quaternion has reduced norm zero")
        ninv = n.inverse()
        u0, u1, u2, u3 = self.u
        return Quaternion(self.algebra,
                          (u0 * ninv, -u1 * ninv, -u2 * ninv, -u3 * ninv))

    def is_integral(self):
        return self.trd().den == 1 and self.nrd().den == 1

    def is_zero(self):
        return not any(self.u)

    def coords(self):
        """Flat 4d tuple of Fractions in the 1,i,j,k (x) power-basis frame."""
        out = []
        for comp in self.u:
            out.extend(comp.as_fractions())
        return tuple(out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, realfield.FieldElem)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra == other.algebra and self.u == other.u

    def __hash__(self):
        return hash((self.algebra.field.n, self.u))

    def __repr__(self):
        return "Quaternion(%s)" % (list(self.coords()),)


def quat_mul(x, y):
    return x * y


def conj_trd_nrd(x):
    return x.conj(), x.trd(), x.nrd()


def quat_inverse(x):
    if x.is_zero():
        raise errors.ZeroDivisor("inverse of zero")
    return x.inverse()


def is_integral_quat(x):
    """Integrality via the degree-2 characteristic polynomial: trd, nrd in R."""
    return x.is_integral()
