"""Small exact linear-algebra helpers shared across modules."""

from fractions import Fraction


def int_det_bareiss(M):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    M = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (pk * Mi[j] - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def solve_exact(cols, rhs):
    """Solve sum_t x[t]*cols[t] == rhs over the rationals.

    `cols` are linearly independent vectors of equal length (>= len(cols)).
    Returns a list of Fractions, or None when the system is inconsistent.
    """
    k = len(cols)
    m = len(rhs)
    aug = [[Fraction(cols[t][r]) for t in range(k)] + [Fraction(rhs[r])]
           for r in range(m)]
    piv_rows = []
    row = 0
    for col in range(k):
        p = next((i for i in range(row, m) if aug[i][col]), None)
        if p is None:
            return None  # dependent columns: callers pass independent sets
        aug[row], aug[p] = aug[p], aug[row]
        pv = aug[row][col]
        aug[row] = [e / pv for e in aug[row]]
        for i in range(m):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        piv_rows.append(row)
        row += 1
    for i in range(row, m):
        if aug[i][k]:
            return None
    return [aug[r][k] for r in piv_rows]


def frac_det(M):
    """Determinant of a square matrix of Fractions via integer scaling."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    dens = [1] * n
    for i, row in enumerate(M):
        d = 1
        for e in row:
            q = Fraction(e)
            d = d * q.denominator // _gcd(d, q.denominator)
        dens[i] = d
    Mi = [[int(Fraction(e) * dens[i]) for e in row] for i, row in enumerate(M)]
    det = int_det_bareiss(Mi)
    denom = 1
    for d in dens:
        denom *= d
    return Fraction(det, denom)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
