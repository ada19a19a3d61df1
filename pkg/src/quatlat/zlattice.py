"""Exact integer-lattice substrate: HNF, LLL, Fincke-Pohst enumeration.

Lattices live in Q^ambient and are stored as integer basis rows over one
positive denominator.  Equality and hashing go through the canonical Hermite
normal form (row style, pivots positive, entries above pivots reduced into
[0, pivot)).  Enumeration prunes with floats but accepts only after an exact
integer re-check, so rounding can never produce a wrong vector; ranges are
widened so it cannot lose one either.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import errors
from ._backend import enum_candidates, hnf_insert


class EchelonAccumulator:
    """Mutable integer row-echelon form with a shared denominator."""

    def __init__(self, ambient):
        self.ambient = ambient
        self.den = 1
        self.rows = []
        self.pivcols = []

    def insert(self, fracvec):
        """Add a vector of Fractions; True when the lattice grew."""
        den = 1
        for f in fracvec:
            den = den * f.denominator // math.gcd(den, f.denominator)
        if self.den % den:
            factor = den // math.gcd(self.den, den)
            for row in self.rows:
                for t in range(self.ambient):
                    row[t] *= factor
            self.den *= factor
        scale = self.den
        vec = [int(f * scale) for f in fracvec]
        return hnf_insert(self.rows, self.pivcols, vec)

    def insert_scaled(self, intvec):
        """Add an integer vector already on this accumulator's denominator."""
        return hnf_insert(self.rows, self.pivcols, list(intvec))

    @property
    def rank(self):
        return len(self.rows)

    def to_lattice(self):
        rows = [row[:] for row in self.rows]
        _canonicalize(rows, self.pivcols)
        return RatLattice(self.ambient, rows, self.den, _canonical=True)


def _canonicalize(rows, pivcols):
    n = len(rows)
    for idx in range(n):
        if rows[idx][pivcols[idx]] < 0:
            rows[idx] = [-v for v in rows[idx]]
    width = len(rows[0]) if rows else 0
    for idx in range(n):
        pc = pivcols[idx]
        piv = rows[idx][pc]
        ri = rows[idx]
        for e in range(idx):
            q = rows[e][pc] // piv
            if q:
                re = rows[e]
                for t in range(pc, width):
                    re[t] -= q * ri[t]
    return rows


class RatLattice:
    """Full or partial rank lattice in Q^ambient with exact basis rows."""

    __slots__ = ("ambient", "den", "rows", "_canonical", "_ech", "_hnf")

    def __init__(self, ambient, rows, den=1, _canonical=False):
        g = den
        for row in rows:
            for v in row:
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g == 1:
                break
        if g > 1:
            rows = [[v // g for v in row] for row in rows]
            den //= g
        self.ambient = ambient
        self.den = den
        self.rows = [list(r) for r in rows]
        self._canonical = _canonical
        self._ech = None
        self._hnf = None

    @classmethod
    def from_rows(cls, rows, ambient=None):
        rows = [[Fraction(v) for v in row] for row in rows]
        if ambient is None:
            ambient = len(rows[0]) if rows else 0
        acc = EchelonAccumulator(ambient)
        for row in rows:
            acc.insert(row)
        return acc.to_lattice()

    @property
    def rank(self):
        return len(self.rows)

    def rows_fractions(self):
        return [[Fraction(v, self.den) for v in row] for row in self.rows]

    def hnf(self):
        if self._canonical:
            return self
        if self._hnf is None:
            self._hnf = RatLattice.from_rows(self.rows_fractions(), self.ambient)
        return self._hnf

    def key(self):
        h = self.hnf()
        return (h.ambient, h.den, tuple(tuple(r) for r in h.rows))

    def __eq__(self, other):
        if not isinstance(other, RatLattice):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def _echelon(self):
        if self._ech is None:
            rows = [row[:] for row in self.rows]
            piv = []
            erows = []
            for row in rows:
                hnf_insert(erows, piv, row)
            self._ech = (erows, piv)
        return self._ech

    def scale_to_den(self, fracvec):
        """Integer coordinates of fracvec on this lattice's denominator."""
        out = []
        for f in fracvec:
            v = f * self.den
            if v.denominator != 1:
                return None
            out.append(int(v))
        return out

    def contains_vec(self, fracvec):
        vec = self.scale_to_den(fracvec)
        if vec is None:
            return False
        erows, piv = self._echelon()
        return _reduce_against(erows, piv, list(vec)) is not None

    def contains_lattice(self, other):
        return all(self.contains_vec(r) for r in other.rows_fractions())

    def coords_of(self, fracvec):
        """Integer coordinates w.r.t. this basis (canonical bases only)."""
        vec = self.scale_to_den(fracvec)
        if vec is None:
            return None
        if not self._canonical:
            raise ValueError("coords_of requires a canonical (HNF) basis")
        coords = [0] * self.rank
        pivcols = [next(t for t, v in enumerate(row) if v) for row in self.rows]
        vec = list(vec)
        for idx, pc in enumerate(pivcols):
            v = vec[pc]
            if v:
                piv = self.rows[idx][pc]
                if v % piv:
                    return None
                q = v // piv
                coords[idx] = q
                row = self.rows[idx]
                for t in range(pc, self.ambient):
                    vec[t] -= q * row[t]
        if any(vec):
            return None
        return coords

    def basis_det(self):
        """Determinant of the square basis matrix (rank must equal ambient)."""
        from .linalg import int_det_bareiss
        if self.rank != self.ambient:
            raise errors.RankDeficient("lattice is not full rank")
        return Fraction(int_det_bareiss(self.rows), self.den ** self.ambient)

    def __repr__(self):
        return "RatLattice(ambient=%d, rank=%d, den=%d)" % (
            self.ambient, self.rank, self.den)


def _reduce_against(erows, pivcols, vec):
    """Reduce vec by echelon rows; residual coords or None if not a member."""
    n = len(vec)
    j = 0
    from bisect import bisect_left
    while True:
        while j < n and not vec[j]:
            j += 1
        if j == n:
            return vec
        p = bisect_left(pivcols, j)
        if p == len(pivcols) or pivcols[p] != j:
            return None
        row = erows[p]
        if vec[j] % row[j]:
            return None
        q = vec[j] // row[j]
        for t in range(j, n):
            vec[t] -= q * row[t]


def hnf(rows):
    """Canonical HNF lattice generated by the given rational rows."""
    return RatLattice.from_rows(rows)


class GramForm:
    """Symmetric exact bilinear form; definiteness via exact LDL pivots."""

    def __init__(self, matrix):
        mat = [[Fraction(v) for v in row] for row in matrix]
        n = len(mat)
        for row in mat:
            if len(row) != n:
                raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if mat[i][j] != mat[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.matrix = mat
        self._ldl = None

    @property
    def rank(self):
        return len(self.matrix)

    def ldl(self):
        """Exact unit-lower-triangular LDL^T; raises NotPositiveDefinite."""
        if self._ldl is None:
            G = self.matrix
            n = len(G)
            D = []
            L = [[Fraction(0)] * n for _ in range(n)]
            for j in range(n):
                L[j][j] = Fraction(1)
                dj = G[j][j]
                for t in range(j):
                    dj -= D[t] * L[j][t] * L[j][t]
                if dj <= 0:
                    raise errors.NotPositiveDefinite(
                        "pivot %d is %s" % (j, dj))
                D.append(dj)
                for i in range(j + 1, n):
                    acc = G[i][j]
                    for t in range(j):
                        acc -= D[t] * L[i][t] * L[j][t]
                    L[i][j] = acc / dj
            self._ldl = (D, L)
        return self._ldl

    def is_positive_definite(self):
        try:
            self.ldl()
            return True
        except errors.NotPositiveDefinite:
            return False

    def value(self, vec):
        G = self.matrix
        n = len(G)
        acc = Fraction(0)
        for i in range(n):
            vi = vec[i]
            if vi:
                row = G[i]
                acc += vi * sum(row[j] * vec[j] for j in range(n))
        return acc


# -- integral LLL on a Gram matrix ------------------------------------------

def lll_gram(G, delta=(99, 100)):
    """All-integer LLL on a positive definite integer Gram matrix.

    Returns (U, G2) with U unimodular and G2 = U G U^T LLL-reduced
    (eta = 1/2, delta as given).
    """
    dn, dd = delta
    n = len(G)
    G = [list(row) for row in G]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    lam = [[0] * n for _ in range(n)]
    d = [1] * (n + 1)
    for i in range(n):
        for j in range(i + 1):
            u = G[i][j]
            for t in range(j):
                u = (d[t + 1] * u - lam[i][t] * lam[j][t]) // d[t]
            if j < i:
                lam[i][j] = u
            else:
                if u <= 0:
                    raise errors.NotPositiveDefinite("gram matrix not definite")
                d[i + 1] = u

    def red(k, l):
        lkl = lam[k][l]
        dl = d[l + 1]
        if 2 * abs(lkl) > dl:
            q = (2 * lkl + dl) // (2 * dl)
            Uk, Ul = U[k], U[l]
            for t in range(n):
                Uk[t] -= q * Ul[t]
            gkk = G[k][k] - 2 * q * G[k][l] + q * q * G[l][l]
            for t in range(n):
                G[k][t] -= q * G[l][t]
            for t in range(n):
                G[t][k] = G[k][t]
            G[k][k] = gkk
            lam[k][l] -= q * dl
            for t in range(l):
                lam[k][t] -= q * lam[l][t]

    k = 1
    while k < n:
        red(k, k - 1)
        lkk = lam[k][k - 1]
        if dd * (d[k + 1] * d[k - 1] + lkk * lkk) < dn * d[k] * d[k]:
            # swap b_k and b_{k-1}
            U[k], U[k - 1] = U[k - 1], U[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            for t in range(k - 1):
                lam[k][t], lam[k - 1][t] = lam[k - 1][t], lam[k][t]
            B = (d[k - 1] * d[k + 1] + lkk * lkk) // d[k]
            for i in range(k + 1, n):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lkk * t) // d[k]
                lam[i][k - 1] = (B * t + lkk * lam[i][k]) // d[k + 1]
            d[k] = B
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return U, G


def lll_reduce(gram, basis, delta=(99, 100)):
    """LLL-reduced basis of the same lattice w.r.t. the given ambient form."""
    B = basis.rows_fractions()
    G = gram.matrix
    n = basis.rank
    BG = [[sum(B[i][t] * G[t][s] for t in range(basis.ambient))
           for s in range(basis.ambient)] for i in range(n)]
    Gb = [[sum(BG[i][t] * B[j][t] for t in range(basis.ambient))
           for j in range(n)] for i in range(n)]
    den = 1
    for row in Gb:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    Gi = [[int(v * den) for v in row] for row in Gb]
    U, _ = lll_gram(Gi, delta)
    rows = [[sum(U[i][t] * basis.rows[t][s] for t in range(n))
             for s in range(basis.ambient)] for i in range(n)]
    return RatLattice(basis.ambient, rows, basis.den)


# -- enumeration -------------------------------------------------------------

_FLOAT_SAFE_BOUND = float(1 << 44)


def enumerate_exact(gram, target, filt=None):
    """All integer vectors v with v^T gram v == target, exactly.

    Candidates come from a Fincke-Pohst scan over an LLL-reduced basis with
    widened float bounds; each one is re-verified with integer arithmetic.
    Output is lexicographically sorted and closed under negation.
    """
    if not isinstance(gram, GramForm):
        gram = GramForm(gram)
    gram.ldl()  # raises NotPositiveDefinite early
    target = Fraction(target)
    if target < 0:
        raise ValueError("target must be nonnegative")
    n = gram.rank
    den = 1
    for row in gram.matrix:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    t_hat = target * den
    if t_hat.denominator != 1:
        return []
    t_hat = int(t_hat)
    Gi = [[int(v * den) for v in row] for row in gram.matrix]
    if t_hat == 0:
        zero = tuple([0] * n)
        return [zero] if (filt is None or filt(zero)) else []

    U, G2 = lll_gram(Gi)
    D, L = GramForm(G2).ldl()
    qd = [float(x) for x in D]
    mu = [[0.0] * n for _ in range(n)]
    big = max(max(qd), float(t_hat))
    for i in range(n):
        for j in range(i + 1, n):
            mu[i][j] = float(L[j][i])
            big = max(big, abs(mu[i][j]))
    if big > _FLOAT_SAFE_BOUND:
        cands = _enum_exact_dfs(D, L, t_hat)
    else:
        cands = enum_candidates(qd, mu, t_hat + 0.5)

    out = []
    for z in cands:
        v = tuple(sum(z[t] * U[t][s] for t in range(n) if z[t])
                  for s in range(n))
        acc = 0
        for i in range(n):
            vi = v[i]
            if vi:
                row = Gi[i]
                acc += vi * sum(row[j] * v[j] for j in range(n) if v[j])
        if acc != t_hat:
            continue
        if filt is None or filt(v):
            out.append(v)
        neg = tuple(-x for x in v)
        if any(v) and (filt is None or filt(neg)):
            out.append(neg)
    out.sort()
    return out


def _enum_exact_dfs(D, L, t_hat):
    """Fraction-arithmetic Fincke-Pohst scan (fallback for huge entries)."""
    n = len(D)
    target = Fraction(t_hat)
    out = []
    z = [0] * n

    def rec(i, part, allzero):
        rem = target - part
        if rem < 0:
            return
        c = Fraction(0)
        for j in range(i + 1, n):
            if z[j]:
                c += L[j][i] * z[j]
        bound = rem / D[i]
        lo = _frac_floor(-c - _frac_sqrt_upper(bound)) - 1
        hi = _frac_floor(-c + _frac_sqrt_upper(bound)) + 1
        if allzero and lo < 0:
            lo = 0
        for zi in range(lo, hi + 1):
            term = D[i] * (zi + c) ** 2
            tot = part + term
            if tot > target:
                continue
            z[i] = zi
            if i == 0:
                out.append(tuple(z))
            else:
                rec(i - 1, tot, allzero and zi == 0)
            z[i] = 0

    rec(n - 1, Fraction(0), True)
    return out


def _frac_floor(x):
    return x.numerator // x.denominator


def _frac_sqrt_upper(x):
    """A rational upper bound for sqrt(x), x >= 0."""
    if x <= 0:
        return Fraction(0)
    num = math.isqrt(x.numerator) + 1
    den = max(math.isqrt(x.denominator), 1)
    return Fraction(num, den)


def intersect_lattices(L1, L2):
    """Intersection of two lattices in the same ambient space.

    Kernel method: row-reduce [[B1],[−B2]] with an identity tail; echelon
    rows whose basis block vanished record exact coincidences u*B1 == w*B2.
    """
    n = L1.ambient
    if L2.ambient != n:
        raise ValueError("ambient dimensions differ")
    D = L1.den * L2.den // math.gcd(L1.den, L2.den)
    B1 = [[v * (D // L1.den) for v in row] for row in L1.rows]
    B2 = [[v * (D // L2.den) for v in row] for row in L2.rows]
    r1, r2 = len(B1), len(B2)
    aug = []
    for i, row in enumerate(B1):
        aug.append(row + [1 if t == i else 0 for t in range(r1 + r2)])
    for i, row in enumerate(B2):
        aug.append([-v for v in row]
                   + [1 if t == r1 + i else 0 for t in range(r1 + r2)])
    rows, piv = [], []
    for row in aug:
        hnf_insert(rows, piv, row)
    out_rows = []
    for row, pc in zip(rows, piv):
        if pc >= n:
            u = row[n:n + r1]
            vec = [sum(u[i] * B1[i][t] for i in range(r1) if u[i])
                   for t in range(n)]
            out_rows.append([Fraction(v, D) for v in vec])
    return hnf(out_rows)


def lattice_det(lattice, gram=None):
    """Exact determinant of the basis Gram (standard inner product default)."""
    from .linalg import frac_det
    if gram is None:
        if lattice.rank != lattice.ambient:
            raise errors.RankDeficient("need a full-rank basis without a form")
        d = lattice.basis_det()
        return d * d
    if not isinstance(gram, GramForm):
        gram = GramForm(gram)
    B = lattice.rows_fractions()
    G = gram.matrix
    n = lattice.rank
    BG = [[sum(B[i][t] * G[t][s] for t in range(lattice.ambient))
           for s in range(lattice.ambient)] for i in range(n)]
    M = [[sum(BG[i][t] * B[j][t] for t in range(lattice.ambient))
          for j in range(n)] for i in range(n)]
    return frac_det(M)
