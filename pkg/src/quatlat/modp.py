"""Linear algebra over F_p and small factoring utilities for order work."""

from __future__ import annotations

import math

from sympy import Poly, Symbol, isprime
from sympy import factorint as _sympy_factorint

from . import errors

_X = Symbol("x")


def rref_mod_p(rows, p):
    """Reduced row echelon form mod p; returns (rows, pivot_columns).

    Input rows are untouched; zero rows are dropped; pivots are 1 and the
    only nonzero entry of their column.
    """
    from bisect import bisect_left

    out = []
    pivots = []
    for row in rows:
        row = [v % p for v in row]
        for orow, pc in zip(out, pivots):
            if row[pc]:
                f = row[pc]
                row = [(a - f * b) % p for a, b in zip(row, orow)]
        lead = next((t for t, v in enumerate(row) if v), None)
        if lead is None:
            continue
        inv = pow(row[lead], -1, p)
        row = [(v * inv) % p for v in row]
        pos = bisect_left(pivots, lead)
        out.insert(pos, row)
        pivots.insert(pos, lead)
    for i in range(len(out) - 1, -1, -1):
        pc = pivots[i]
        for e in range(i):
            if out[e][pc]:
                f = out[e][pc]
                out[e] = [(a - f * b) % p for a, b in zip(out[e], out[i])]
    return out, pivots


def reduce_mod_p(vec, rows, pivots, p):
    """Residue of vec modulo the span of RREF rows (all mod p)."""
    vec = [v % p for v in vec]
    for row, pc in zip(rows, pivots):
        if vec[pc]:
            f = vec[pc]
            vec = [(a - f * b) % p for a, b in zip(vec, row)]
    return vec


def span_coords(vec, rows, pivots, p):
    """Coordinates of vec over RREF rows, or None when not in the span."""
    vec = [v % p for v in vec]
    coords = []
    for row, pc in zip(rows, pivots):
        f = vec[pc]
        coords.append(f)
        if f:
            vec = [(a - f * b) % p for a, b in zip(vec, row)]
    if any(vec):
        return None
    return coords


def left_nullspace_mod_p(M, p):
    """Basis of {x : x M == 0 mod p} for a rows x cols matrix M."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    aug = [[v % p for v in M[i]] + [1 if t == i else 0 for t in range(rows)]
           for i in range(rows)]
    ech, pivots = rref_mod_p(aug, p)
    out = []
    for row, pc in zip(ech, pivots):
        if pc >= cols:
            out.append(row[cols:])
    return out


def nullspace_mod_p(M, p):
    """Basis of {x : M x == 0 mod p} (column vectors, returned as rows)."""
    if not M:
        return []
    cols = len(M[0])
    Mt = [[M[i][j] for i in range(len(M))] for j in range(cols)]
    return left_nullspace_mod_p(Mt, p)


def poly_roots_mod_p(coeffs_low_first, p):
    """Roots with multiplicity of a polynomial over F_p via sympy factoring.

    Raises ValueError when a nonlinear irreducible factor appears, since
    callers here expect split polynomials.
    """
    poly = Poly(list(reversed([c % p for c in coeffs_low_first])), _X, modulus=p)
    _, factors = poly.factor_list()
    roots = []
    for g, e in factors:
        if g.degree() != 1:
            raise ValueError("polynomial does not split into linear factors")
        mono = g.all_coeffs()  # [a, b] for a*x + b
        a, b = int(mono[0]), int(mono[1]) if len(mono) == 2 else 0
        root = (-b * pow(a, -1, p)) % p
        roots.extend([root] * e)
    return roots


# -- integer factoring with an honest give-up path --------------------------

_TRIAL_BOUND = 10 ** 6
_HARD_LIMIT = 10 ** 70


def factor_integer(n, trial_bound=_TRIAL_BOUND, hard_limit=_HARD_LIMIT):
    """Prime factorization of |n| as {p: e}.

    Trial division first; the remaining cofactor goes to a general-purpose
    pass unless it exceeds `hard_limit`, in which case FactoringIncomplete
    reports the cofactor instead of guessing.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    idx = 0
    while f * f <= n and f <= trial_bound:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += wheel[idx]
        idx = (idx + 1) % 8
    if n == 1:
        return out
    if n <= trial_bound * trial_bound or isprime(n):
        out[n] = out.get(n, 0) + 1
        return out
    if n > hard_limit:
        raise errors.FactoringIncomplete(
            "cofactor %d exceeds the factoring budget" % n, cofactor=n)
    for p, e in _sympy_factorint(n).items():
        out[int(p)] = out.get(int(p), 0) + e
    return out


def perfect_square_root(n):
    """Integer square root when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
