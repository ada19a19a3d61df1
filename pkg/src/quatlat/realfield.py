"""Exact arithmetic in K = Q(zeta_n + zeta_n^{-1}) and its integers Z[c].

Elements are coordinate vectors in the power basis 1, c, ..., c^(d-1) of the
primitive element c = zeta_n + zeta_n^{-1}, stored as integer numerators over
one shared positive denominator.  Z[c] is the full ring of integers of these
fields, so integrality is simply denominator 1 and primes of R factor as the
minimal polynomial does modulo p.

Conventions:
  * n <= 2 collapses to the rationals with minimal polynomial x - 2 for c.
  * real embeddings are ordered by their representative k ascending, where
    embedding k sends c to 2*cos(2*pi*k/n), over k coprime to n, k <= n/2.
"""

from __future__ import annotations

import math
from fractions import Fraction

from sympy import GF, Poly, Symbol

from . import errors
from ._backend import poly_mulmod
from .linalg import int_det_bareiss, solve_exact

_X = Symbol("x")
_FIELDS = {}


def build_field(n):
    """Field of n-th real cyclotomic integers; instances are cached per n."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    field = _FIELDS.get(n)
    if field is None:
        field = RealCycloField(n)
        _FIELDS[n] = field
    return field


# -- integer polynomial helpers (dense, lowest degree first) ---------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_monic(a, f):
    """Divide by a monic integer polynomial, returning (quotient, remainder)."""
    a = list(a)
    df = len(f) - 1
    q = [0] * max(0, len(a) - df)
    for i in range(len(a) - 1, df - 1, -1):
        coef = a[i]
        if coef:
            q[i - df] = coef
            for j in range(df + 1):
                a[i - df + j] -= coef * f[j]
    return q, _poly_trim(a[:df] if len(a) > df else a)


def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    f = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            f, rem = _poly_divmod_monic(f, cyclotomic_poly_cached(d))
            assert not rem
    return f


_CYCLO = {}


def cyclotomic_poly_cached(n):
    g = _CYCLO.get(n)
    if g is None:
        g = cyclotomic_poly(n)
        _CYCLO[n] = g
    return g


def _sylvester_resultant(f, g):
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for j, cf in enumerate(reversed(f)):
            row[i + j] = cf
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, cg in enumerate(reversed(g)):
            row[i + j] = cg
        rows.append(row)
    return int_det_bareiss(rows)


def poly_discriminant(f):
    """Discriminant of a monic integer polynomial."""
    d = len(f) - 1
    if d <= 1:
        return 1
    fp = _poly_trim([i * f[i] for i in range(1, d + 1)])
    res = _sylvester_resultant(f, fp)
    return (-1) ** (d * (d - 1) // 2) * res


class RealCycloField:
    """K = Q(zeta_n + zeta_n^{-1}) together with precomputed reduction data."""

    def __init__(self, n):
        self.n = n
        if n <= 2:
            self.degree = 1
            self.minpoly = (-2, 1)  # c = 2 by convention, K = Q
        else:
            self.minpoly = tuple(self._compute_minpoly(n))
            self.degree = len(self.minpoly) - 1
        d = self.degree
        phi_half = 1 if n in (1, 2, 3, 4, 6) else _euler_phi(n) // 2
        assert d == phi_half
        self.disc_K = poly_discriminant(list(self.minpoly))
        # c^(d+t) reduced modulo minpoly, t = 0..d-2, used by poly_mulmod.
        self._red = self._reduction_rows()
        self._trace_vec = self._power_traces()
        self.zero = FieldElem(self, (0,) * d, 1)
        self.one = FieldElem(self, (1,) + (0,) * (d - 1), 1)
        if d == 1:
            self.gen = FieldElem(self, (-self.minpoly[0],), 1)
        else:
            self.gen = FieldElem(self, (0, 1) + (0,) * (d - 2), 1)
        self._cheby_cache = {0: self.elem(2), 1: self.gen}

    @staticmethod
    def _compute_minpoly(n):
        phi_n = cyclotomic_poly_cached(n)
        phi = len(phi_n) - 1
        d = phi // 2 if n not in (3, 4, 6) else 1
        # c = x + x^(n-1) in Z[x]/(Phi_n)
        inv = [0] * (n - 1) + [1]
        _, inv = _poly_divmod_monic(inv, phi_n)
        c = [0, 1]
        c = [a + b for a, b in
             zip(c + [0] * (phi - len(c)), inv + [0] * (phi - len(inv)))]
        powers = [[1] + [0] * (phi - 1)]
        for _ in range(d):
            nxt = _poly_mul(powers[-1], c)
            _, nxt = _poly_divmod_monic(nxt, phi_n)
            nxt = nxt + [0] * (phi - len(nxt))
            powers.append(nxt)
        sol = solve_exact(powers[:d], powers[d])
        assert sol is not None, "power basis unexpectedly dependent"
        coeffs = []
        for a in sol:
            assert a.denominator == 1
            coeffs.append(-int(a))
        return coeffs + [1]

    def _reduction_rows(self):
        d = self.degree
        rows = []
        cur = [-c for c in self.minpoly[:d]]  # c^d
        rows.append(list(cur))
        for _ in range(d - 2):
            cur = self._shift_reduce_raw(cur)
            rows.append(list(cur))
        return tuple(tuple(r) for r in rows)

    def _shift_reduce_raw(self, vec):
        d = self.degree
        top = vec[d - 1]
        out = [0] + list(vec[:d - 1])
        if top:
            red0 = [-c for c in self.minpoly[:d]]
            for u in range(d):
                out[u] += top * red0[u]
        return out

    def _power_traces(self):
        # Newton's identities: s_k = -k*a_{d-k} - sum_{i<k} a_{d-i} s_{k-i}
        d = self.degree
        a = self.minpoly
        s = [d]
        for k in range(1, d):
            acc = -k * a[d - k]
            for i in range(1, k):
                acc -= a[d - i] * s[k - i]
            s.append(acc)
        return tuple(s)

    # -- element constructors ----------------------------------------------

    def elem(self, value):
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise errors.FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value,) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return FieldElem(self, (value.numerator,) + (0,) * (self.degree - 1),
                             value.denominator)
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        raise TypeError("cannot coerce %r into field element" % (value,))

    def from_coeffs(self, coeffs):
        d = self.degree
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != d:
            raise ValueError("expected %d coordinates, got %d" % (d, len(fr)))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = tuple(int(c * den) for c in fr)
        return FieldElem(self, num, den)

    def cheby(self, k):
        """zeta_n^k + zeta_n^{-k} in the power basis (e_0=2, e_1=c recurrence)."""
        if k < 0:
            raise ValueError("cheby index must be nonnegative")
        cache = self._cheby_cache
        if k in cache:
            return cache[k]
        top = max(cache)
        e0, e1 = cache[top - 1] if top >= 1 else cache[0], cache[top]
        c = self.gen
        for i in range(top + 1, k + 1):
            e0, e1 = e1, c * e1 - e0
            cache[i] = e1
        return cache[k]

    def sqrt_small(self, m):
        """An integral square root of m in {2, 5}; positive at embedding 1."""
        if m == 2:
            if self.n % 8:
                raise errors.NotPresent("sqrt(2) requires 8 | n (n=%d)" % self.n)
            s = self.cheby(self.n // 8)
        elif m == 5:
            if self.n % 5:
                raise errors.NotPresent("sqrt(5) requires 5 | n (n=%d)" % self.n)
            s = self.elem(2) * self.cheby(self.n // 5) + self.elem(1)
        else:
            raise ValueError("sqrt_small supports m in {2, 5}")
        assert s * s == self.elem(m)
        return s

    def factor_prime(self, p):
        """Splitting data of p in Z[c]: one (e, f) pair per prime above p."""
        f = Poly(list(reversed(self.minpoly)), _X, modulus=p)
        _, factors = f.factor_list()
        out = sorted((int(e), g.degree()) for g, e in factors)
        assert sum(e * f_ for e, f_ in out) == self.degree
        return out

    # -- embeddings ----------------------------------------------------------

    def embedding_reps(self):
        if self.n <= 2:
            return [1]
        n = self.n
        return [k for k in range(1, n // 2 + 1) if math.gcd(k, n) == 1]

    def real_embeddings(self, x, precision=53):
        """Values of x under c -> 2*cos(2*pi*k/n), error below 2**-precision.

        Returns Fractions (exact dyadic readings of certified intervals).
        Raises PrecisionExhausted when a nonzero value cannot be separated
        from zero within the requested precision.
        """
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        x = self.elem(x)
        ivs = self._embedding_intervals(x, precision)
        out = []
        is_zero = all(c == 0 for c in x.num)
        for lo, hi in ivs:
            if not is_zero and lo <= 0 <= hi:
                raise errors.PrecisionExhausted(
                    "cannot certify sign at %d bits" % precision)
            out.append((lo + hi) / 2)
        return out

    def _embedding_intervals(self, x, precision):
        from mpmath import iv
        from mpmath.libmp import to_rational

        reps = self.embedding_reps()
        coeffs = list(reversed(x.num))
        tol = Fraction(1, 2 ** precision)
        workprec = precision + 16
        while True:
            old = iv.prec
            iv.prec = workprec
            try:
                intervals = []
                ok = True
                for k in reps:
                    if self.n <= 2:
                        root = iv.mpf(2)
                    else:
                        root = 2 * iv.cos(2 * iv.pi * k / self.n)
                    acc = iv.mpf(0)
                    for cf in coeffs:
                        acc = acc * root + cf
                    acc = acc / x.den
                    a, b = acc._mpi_
                    lo = Fraction(*to_rational(a))
                    hi = Fraction(*to_rational(b))
                    if hi - lo > tol:
                        ok = False
                        break
                    intervals.append((lo, hi))
                if ok:
                    return intervals
            finally:
                iv.prec = old
            workprec *= 2
            if workprec > 1 << 20:
                raise errors.PrecisionExhausted("interval refinement stalled")

    def embedding_signs(self, x, max_bits=4096):
        """Certified sign of x at every real embedding (+1/-1, or 0 for 0)."""
        x = self.elem(x)
        if all(c == 0 for c in x.num):
            return [0] * self.degree
        bits = 64
        while True:
            try:
                vals = self.real_embeddings(x, max(53, bits))
            except errors.PrecisionExhausted:
                vals = None
            if vals is not None:
                return [1 if v > 0 else -1 for v in vals]
            bits *= 2
            if bits > max_bits:
                raise errors.PrecisionExhausted(
                    "sign not certified within %d bits" % max_bits)

    def is_totally_positive(self, x):
        return all(s > 0 for s in self.embedding_signs(x))

    def is_totally_negative(self, x):
        return all(s < 0 for s in self.embedding_signs(x))

    def __repr__(self):
        return "RealCycloField(n=%d, degree=%d)" % (self.n, self.degree)


def _euler_phi(n):
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class FieldElem:
    """Field element as integer coordinates over one shared denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1):
        if den == 0:
            raise errors.DivisionByZero("zero denominator")
        if den < 0:
            num = tuple(-v for v in num)
            den = -den
        g = den
        for v in num:
            g = math.gcd(g, v)
            if g == 1:
                break
        if g > 1:
            num = tuple(v // g for v in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise errors.FieldMismatch("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = _lcm(self.den, o.den)
        fa, fb = den // self.den, den // o.den
        return FieldElem(self.field,
                         tuple(x * fa + y * fb for x, y in zip(self.num, o.num)),
                         den)

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
        return FieldElem(self.field, tuple(-v for v in self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = poly_mulmod(list(self.num), list(o.num), self.field._red)
        return FieldElem(self.field, tuple(num), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Inverse modulo the minimal polynomial via extended Euclid."""
        if not any(self.num):
            raise errors.DivisionByZero("inverse of zero")
        f = [Fraction(c) for c in self.field.minpoly]
        g = [Fraction(v, self.den) for v in self.num]
        while g and g[-1] == 0:
            g.pop()
        r0, r1 = f, g
        t0, t1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _fpoly_sub(t0, _fpoly_mul(q, t1))
        lead = r1[0]
        inv = [t / lead for t in t1]
        d = self.field.degree
        inv = inv + [Fraction(0)] * (d - len(inv))
        return self.field.from_coeffs(inv[:d])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.elem(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return (self.field is other.field and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.field.n, self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def as_fractions(self):
        return tuple(Fraction(v, self.den) for v in self.num)

    def is_rational(self):
        return all(v == 0 for v in self.num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        return "FieldElem(n=%d, %s)" % (self.field.n, list(self.as_fractions()))


def _fpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _fpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, bi in enumerate(b):
        a[i] -= bi
    return _fpoly_trim(a)


def _fpoly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i]:
            coef = a[i] / lead
            q[i - db] = coef
            for j in range(db + 1):
                a[i - db + j] -= coef * b[j]
    return q, _fpoly_trim(a[:db])


# -- module-level operation surface ----------------------------------------

def field_arith(x, y, op):
    """Dispatch {add, sub, mul, div, eq} with exact reduction mod minpoly."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "eq":
        return x == y
    raise ValueError("unknown op %r" % (op,))


def cheby(field, k):
    return field.cheby(k)


def sqrt_small(field, m):
    return field.sqrt_small(m)


def is_integral_elem(x):
    """True iff every power-basis coordinate is an integer."""
    return x.den == 1


def trace_norm_Q(x):
    """(Tr_{K/Q}(x), N_{K/Q}(x)) from the multiplication-by-x matrix."""
    fld = x.field
    d = fld.degree
    tr = Fraction(sum(v * t for v, t in zip(x.num, fld._trace_vec)), x.den)
    col = list(x.num)
    cols = [list(col)]
    for _ in range(d - 1):
        col = fld._shift_reduce_raw(col)
        cols.append(list(col))
    mat = [[cols[t][s] for t in range(d)] for s in range(d)]
    nrm = Fraction(int_det_bareiss(mat), x.den ** d)
    return tr, nrm


def factor_prime(field, p):
    return field.factor_prime(p)


def real_embeddings(x, precision=53):
    return x.field.real_embeddings(x, precision)


def two_cos(field, num, den):
    """2*cos(2*pi*num/den) as an element of the field.

    Computed in the real cyclotomic field of conductor lcm(n, den) and
    descended by exact linear algebra; raises NotEmbeddable when the value
    does not lie in this field.
    """
    if den < 1:
        raise ValueError("denominator must be positive")
    num %= den
    if num == 0:
        return field.elem(2)
    g = math.gcd(num, den)
    num //= g
    den //= g
    if 2 * num > den:
        num = den - num
    if den == 1:
        return field.elem(2)
    if den == 2:
        return field.elem(-2)
    if field.n > 2 and field.n % den == 0:
        return field.cheby((field.n // den) * num)
    N = _lcm(max(field.n, 1), den)
    big = build_field(N)
    target = big.cheby((N // den) * num)
    d = field.degree
    gamma = big.cheby(N // field.n) if field.n > 2 else big.elem(2)
    pw = big.one
    cols = [pw.as_fractions()]
    for _ in range(d - 1):
        pw = pw * gamma
        cols.append(pw.as_fractions())
    sol = solve_exact(cols, target.as_fractions())
    if sol is None:
        raise errors.NotEmbeddable(
            "2*cos(2*pi*%d/%d) does not lie in K_%d" % (num, den, field.n))
    return field.from_coeffs(sol)


def root_of_unity_trace(field, m):
    """Trace zeta_m + zeta_m^{-1} of a primitive m-th root, in this field."""
    return two_cos(field, 1, m)


_GEN_IMAGES = {}


def _embed_generator(src, dst):
    key = (src.n, dst.n)
    img = _GEN_IMAGES.get(key)
    if img is not None:
        return img
    if src.degree == 1:
        img = dst.elem(-src.minpoly[0])
    elif dst.n % src.n == 0:
        img = dst.cheby(dst.n // src.n)
    else:
        try:
            img = two_cos(dst, 1, src.n)
        except errors.NotEmbeddable as exc:
            raise errors.NoEmbedding(str(exc)) from None
    acc = dst.zero
    for coef in reversed(src.minpoly):
        acc = acc * img + dst.elem(coef)
    if acc != dst.zero:
        raise errors.NoEmbedding(
            "generator image does not satisfy the minimal polynomial")
    _GEN_IMAGES[key] = img
    return img


def subfield_lift(x, n_big):
    """Image of x in the real cyclotomic field of conductor n_big."""
    dst = build_field(n_big)
    src = x.field
    if src is dst:
        return x
    img = _embed_generator(src, dst)
    acc = dst.zero
    for coef in reversed(x.num):
        acc = acc * img + dst.elem(coef)
    return acc / dst.elem(x.den)
