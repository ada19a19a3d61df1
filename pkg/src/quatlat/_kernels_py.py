"""Pure-Python reference kernels for the hot inner loops.

The compiled extension (`quatlat._kernels`) implements the same four
functions with identical semantics; `quatlat._backend` picks whichever is
available.  Entries are arbitrary-precision Python ints throughout, so the
compiled variant only strips interpreter overhead, never precision.
"""

from bisect import bisect_left
from math import floor, sqrt

BACKEND = "python"


def poly_mulmod(a, b, red):
    """Product of two coefficient vectors modulo a monic integer polynomial.

    `a`, `b` are length-d int sequences (coordinates in the power basis),
    `red[t]` is the length-d coefficient vector of x**(d+t) reduced modulo
    the minimal polynomial.  Returns a new list of d ints.
    """
    d = len(a)
    if d == 1:
        return [a[0] * b[0]]
    prod = [0] * (2 * d - 1)
    for s in range(d):
        av = a[s]
        if av:
            for t in range(d):
                prod[s + t] += av * b[t]
    out = prod[:d]
    for t in range(d - 1):
        pv = prod[d + t]
        if pv:
            row = red[t]
            for u in range(d):
                out[u] += pv * row[u]
    return out


def hnf_insert(rows, pivcols, vec):
    """Insert `vec` into a row-echelon integer basis, mutating all arguments.

    `rows` is a list of int lists whose leading (pivot) columns are strictly
    increasing and recorded in `pivcols`.  Returns True when the spanned
    lattice changed, False when `vec` was already a member.
    """
    n = len(vec)
    changed = False
    j = 0
    while True:
        while j < n and not vec[j]:
            j += 1
        if j == n:
            return changed
        p = bisect_left(pivcols, j)
        if p == len(pivcols) or pivcols[p] != j:
            rows.insert(p, vec)
            pivcols.insert(p, j)
            return True
        row = rows[p]
        a = row[j]
        b = vec[j]
        if b % a == 0:
            q = b // a
            for t in range(j, n):
                vec[t] -= q * row[t]
        elif a % b == 0:
            rows[p] = vec
            row, vec = vec, row
            changed = True
            q = vec[j] // row[j]
            for t in range(j, n):
                vec[t] -= q * row[t]
        else:
            x, y, g = xgcd(a, b)
            ag = a // g
            bg = b // g
            for t in range(j, n):
                rt = row[t]
                vt = vec[t]
                row[t] = x * rt + y * vt
                vec[t] = ag * vt - bg * rt
            changed = True


def xgcd(a, b):
    """Extended gcd: returns (x, y, g) with x*a + y*b == g, g > 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def enum_candidates(qdiag, mu, bound):
    """Fincke-Pohst candidate scan below a float bound.

    Quadratic form in completed-square shape: Q(z) = sum_i qdiag[i] *
    (z[i] + sum_{j>i} mu[i][j]*z[j])**2.  Scans integer z with float partial
    sums, keeping only canonical representatives (last nonzero coordinate
    positive, plus the zero vector).  Exact acceptance is the caller's job;
    ranges are widened by one step per level so rounding can only add
    candidates, never lose them.
    """
    r = len(qdiag)
    out = []
    z = [0] * r
    zhi = [0] * r
    cen = [0.0] * r
    part = [0.0] * (r + 1)
    allzero = [True] * (r + 1)

    def open_level(i):
        c = 0.0
        zi = z
        mi = mu[i]
        for j in range(i + 1, r):
            c += mi[j] * zi[j]
        cen[i] = c
        rem = bound - part[i + 1]
        if rem < 0.0:
            rem = 0.0
        rho = sqrt(rem / qdiag[i])
        lo = int(floor(-c - rho)) - 1
        hi = int(floor(-c + rho)) + 1
        if allzero[i + 1] and lo < 0:
            lo = 0
        z[i] = lo - 1
        zhi[i] = hi

    i = r - 1
    open_level(i)
    while True:
        z[i] += 1
        if z[i] > zhi[i]:
            i += 1
            if i == r:
                return out
            continue
        t = z[i] + cen[i]
        t = part[i + 1] + qdiag[i] * t * t
        if t <= bound:
            if i == 0:
                out.append(tuple(z))
            else:
                part[i] = t
                allzero[i] = allzero[i + 1] and z[i] == 0
                i -= 1
                open_level(i)


def matmul_mod(A, B, m):
    """Product of square int matrices with entries reduced modulo m."""
    n = len(A)
    cols = list(zip(*B))
    out = []
    for i in range(n):
        Ai = A[i]
        out.append([sum(x * y for x, y in zip(Ai, col)) % m for col in cols])
    return out
