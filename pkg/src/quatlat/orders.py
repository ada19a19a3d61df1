"""Orders of a symbol algebra as multiplication-closed integer lattices.

An order is a rank-4d lattice over Z (d the field degree) inside the
4d-dimensional Q-space spanned by 1, i, j, k over the power basis of c.  The
R-module condition is enforced by keeping c-multiples of every generator, so
Hermite normal form over Z stays canonical even when R is not a PID.

Maximization is intrinsic round-2: grow through the idealizer of the radical
preimage until stable, then branch over the maximal two-sided ideals of the
semisimple quotient; a stable order under both steps is p-maximal.  The
radical over F_p (p possibly <= dimension) comes from the divided-trace
filtration, whose level-k form only needs traces of p^k-th powers modulo
p^(k+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import errors, modp, realfield
from ._backend import matmul_mod
from .linalg import int_det_bareiss
from .quatalg import Quaternion, SymbolAlgebra
from .zlattice import EchelonAccumulator, GramForm, RatLattice, hnf


def vec_to_quat(algebra, fracvec):
    d = algebra.field.degree
    comps = []
    for t in range(4):
        comps.append(algebra.field.from_coeffs(fracvec[t * d:(t + 1) * d]))
    return Quaternion(algebra, tuple(comps))


class QuatOrder:
    """Multiplication-closed full lattice with cached pairing data."""

    def __init__(self, algebra, lattice, _validate=True):
        self.algebra = algebra
        self.lattice = lattice.hnf()
        d = algebra.field.degree
        if lattice.ambient != 4 * d:
            raise ValueError("lattice ambient dimension mismatch")
        self.rank = self.lattice.rank
        self.basis = [vec_to_quat(algebra, row)
                      for row in self.lattice.rows_fractions()]
        self._struct = None
        self._gram_trd = None
        self._gram_nrd = None
        self._disc_z = None
        if _validate:
            self._validate()

    def _validate(self):
        if self.rank != 4 * self.algebra.field.degree:
            raise errors.NotFullRank(
                "order lattice has rank %d, need %d" % (self.rank, 4 * self.algebra.field.degree))
        one = self.algebra.one
        if not self.contains(one):
            raise ValueError("order does not contain 1")
        c = self.algebra.field.gen
        for b in self.basis:
            if not b.is_integral():
                raise ValueError("order basis element is not integral")
            if not self.contains(b * c):
                raise ValueError("order lattice is not an R-module")
            if not self.contains(b.conj()):
                raise ValueError("order lattice is not involution-closed")

    def contains(self, quat):
        return self.lattice.contains_vec(quat.coords())

    def coords_of(self, quat):
        return self.lattice.coords_of(quat.coords())

    def quat_from_coords(self, coords):
        rows = self.lattice.rows_fractions()
        d = self.algebra.field.degree
        acc = [Fraction(0)] * (4 * d)
        for c, row in zip(coords, rows):
            if c:
                for t in range(4 * d):
                    acc[t] += c * row[t]
        return vec_to_quat(self.algebra, acc)

    # -- cached pairing data -------------------------------------------------

    def _products(self):
        """All pairwise basis products, as quaternions (row-major)."""
        basis = self.basis
        return [[x * y for y in basis] for x in basis]

    def structure_constants(self):
        """S[s][t]: integer coordinates of basis[s]*basis[t] in this basis."""
        if self._struct is None:
            prods = self._products()
            S = []
            for s, row in enumerate(prods):
                Srow = []
                for t, q in enumerate(row):
                    coords = self.coords_of(q)
                    if coords is None:
                        raise errors.NoClosure(
                            "basis product (%d,%d) escapes the lattice" % (s, t))
                    Srow.append(coords)
                S.append(Srow)
            self._struct = S
            self._fill_grams_from_products(prods)
        return self._struct

    def _fill_grams_from_products(self, prods):
        fld = self.algebra.field
        tv = fld._trace_vec
        n = self.rank

        def tr(elem):
            val = Fraction(sum(a * b for a, b in zip(elem.num, tv)), elem.den)
            assert val.denominator == 1
            return int(val)

        gt = [[0] * n for _ in range(n)]
        for s in range(n):
            for t in range(n):
                gt[s][t] = tr(prods[s][t].trd())
        self._gram_trd = gt

    def gram_trd(self):
        """Integer matrix of (x, y) -> Tr_{K/Q}(trd(x*y)) on the basis."""
        if self._gram_trd is None:
            self.structure_constants()
        return self._gram_trd

    def gram_nrd(self):
        """Positive pairing (x, y) -> Tr_{K/Q}(trd(x*conj(y))) on the basis."""
        if self._gram_nrd is None:
            fld = self.algebra.field
            tv = fld._trace_vec
            a, b, ab = self.algebra.a, self.algebra.b, self.algebra._ab
            n = self.rank
            basis = self.basis
            gm = [[0] * n for _ in range(n)]
            for s in range(n):
                x0, x1, x2, x3 = basis[s].u
                for t in range(s, n):
                    y0, y1, y2, y3 = basis[t].u
                    scal = (x0 * y0 - a * (x1 * y1) - b * (x2 * y2)
                            + ab * (x3 * y3))
                    val = Fraction(
                        2 * sum(u * v for u, v in zip(scal.num, tv)), scal.den)
                    assert val.denominator == 1
                    gm[s][t] = gm[t][s] = int(val)
            self._gram_nrd = gm
        return self._gram_nrd

    @property
    def disc_z(self):
        """Determinant of the trd(x*y) trace pairing (signed integer)."""
        if self._disc_z is None:
            self._disc_z = int_det_bareiss(self.gram_trd())
        return self._disc_z

    def index_in(self, other):
        """[other : self] for nested full lattices, as a positive integer."""
        ratio = self.lattice.basis_det() / other.lattice.basis_det()
        val = abs(ratio)
        assert val.denominator == 1
        return int(val)

    def __eq__(self, other):
        if not isinstance(other, QuatOrder):
            return NotImplemented
        return self.algebra == other.algebra and self.lattice == other.lattice

    def __hash__(self):
        return hash((self.algebra, self.lattice.key()))

    def __repr__(self):
        return "QuatOrder(n=%d, rank=%d, disc_z=%s)" % (
            self.algebra.field.n, self.rank,
            self._disc_z if self._disc_z is not None else "?")


# -- construction ------------------------------------------------------------

_CLOSURE_EXTRA_ROUNDS = 8


def order_closure(algebra, gens, *, require_full_rank=True):
    """Smallest multiplication-closed R-lattice containing 1 and the gens."""
    field = algebra.field
    d = field.degree
    ambient = 4 * d
    gens = list(gens)
    for g in gens:
        if not g.is_integral():
            raise errors.NotIntegralGenerator(
                "generator %r has non-integral trd or nrd" % (g,))
    acc = EchelonAccumulator(ambient)
    c = field.gen
    seed = [algebra.one] + gens
    for g in seed:
        cur = g
        for _ in range(d):
            acc.insert(cur.coords())
            cur = cur * c
    max_rounds = 4 * d + _CLOSURE_EXTRA_ROUNDS
    for _ in range(max_rounds):
        lat = acc.to_lattice()
        basis = [vec_to_quat(algebra, row) for row in lat.rows_fractions()]
        changed = False
        for x in basis:
            for y in basis:
                if acc.insert((x * y).coords()):
                    changed = True
        if not changed:
            break
    else:
        raise errors.NoClosure(
            "closure did not stabilize within %d rounds" % max_rounds)
    lat = acc.to_lattice()
    if lat.rank != ambient:
        if require_full_rank:
            raise errors.NotFullRank(
                "generators span rank %d < %d" % (lat.rank, ambient))
        return lat
    return QuatOrder(algebra, lat)


def integrality_certificate(order, x):
    """x integral and T(x * conj(s)) in R for every basis element s."""
    if not x.is_integral():
        return False
    for s in order.basis:
        if (x * s.conj()).trd().den != 1:
            return False
    return True


def adjoin(order, x):
    """Order generated by this order and one more compatible element."""
    if not integrality_certificate(order, x):
        raise errors.NotCompatible(
            "element fails the trace-pairing integrality test against the basis")
    return order_closure(order.algebra, order.basis + [x])


def span_of_group(algebra, elements):
    """R[G]: the R-span of a finite multiplicative set, as an order."""
    return order_closure(algebra, list(elements))


# -- ramification of (-1,-1) -------------------------------------------------

@dataclass
class RamificationData:
    primes: list          # (e, f, local_degree) for every prime above 2
    ramified: list        # the sublist with odd local degree
    norm_disc: int        # product of 2**f over ramified primes
    disc_target: int      # |disc_K|**4 * norm_disc**2


def ramification(algebra):
    """Finite ramification of (-1,-1): odd local degree at 2 ramifies."""
    if not algebra.is_minus_one_minus_one():
        raise errors.UnsupportedAlgebra(
            "ramification rule implemented for (-1,-1) only")
    field = algebra.field
    primes = [(e, f, e * f) for e, f in field.factor_prime(2)]
    ramified = [t for t in primes if t[2] % 2 == 1]
    norm_disc = 1
    for _, f, _ in ramified:
        norm_disc *= 2 ** f
    disc_target = abs(field.disc_K) ** 4 * norm_disc ** 2
    return RamificationData(primes, ramified, norm_disc, disc_target)


# -- radical of O/pO ----------------------------------------------------------

def radical_mod_p(order, p):
    """Basis (mod-p coordinate vectors) of the Jacobson radical of O/pO.

    Divided-trace filtration: level k keeps x with
    Tr((x*y)**(p**k))/p**k == 0 mod p for all y in the previous level, which
    only requires integer matrix arithmetic modulo p**(k+1).  The result is
    verified nilpotent before being returned.
    """
    n = order.rank
    S = order.structure_constants()
    level = [[1 if t == s else 0 for t in range(n)] for s in range(n)]
    k = 0
    q = 1
    levels = [0]
    while q < n:
        k += 1
        q *= p
        levels.append(k)
    for k in levels:
        if not level:
            break
        level = _radical_level(order, S, level, p, k)
    _verify_nilpotent_ideal(S, level, p)
    return level


def _leftmult_matrix(vec, S, n, mod):
    """Matrix of left multiplication by sum(vec[s]*e_s) modulo mod."""
    M = [[0] * n for _ in range(n)]
    for s in range(n):
        vs = vec[s]
        if vs:
            Ss = S[s]
            for t in range(n):
                col = Ss[t]
                Mrow = M
                for u in range(n):
                    M[u][t] = (M[u][t] + vs * col[u]) % mod
    return M


def _radical_level(order, S, level, p, k):
    n = order.rank
    mod = p ** (k + 1)
    pk = p ** k
    ech, pivots = modp.rref_mod_p(level, p)
    m = len(ech)
    if m == 0:
        return []
    # divided trace phi on the level basis
    phis = []
    for y in ech:
        if k == 0:
            tr = _trace_of_leftmult(y, S, n) % mod
        else:
            M = _leftmult_matrix(y, S, n, mod)
            P = _matpow_mod(M, pk, mod)
            tr = sum(P[t][t] for t in range(n)) % mod
        if tr % pk:
            raise RuntimeError("divided trace not divisible at level %d" % k)
        phis.append((tr // pk) % p)
    # bilinear matrix B[i][j] = phi(x_i * y_j) over the level basis
    B = [[0] * m for _ in range(m)]
    for i in range(m):
        Mx = _leftmult_matrix(ech[i], S, n, p)
        prods = matmul_mod(Mx, _cols_matrix(ech, n), p)
        for j in range(m):
            col = [prods[u][j] for u in range(n)]
            coords = modp.span_coords(col, ech, pivots, p)
            if coords is None:
                raise RuntimeError("level product escaped the filtration span")
            B[i][j] = sum(c * f for c, f in zip(coords, phis)) % p
    null = modp.left_nullspace_mod_p(B, p)
    out = []
    for beta in null:
        vec = [0] * n
        for b, row in zip(beta, ech):
            if b:
                for t in range(n):
                    vec[t] = (vec[t] + b * row[t]) % p
        out.append(vec)
    out, _ = modp.rref_mod_p(out, p)
    return out


def _cols_matrix(rows, n):
    """Matrix whose column j is rows[j] (rows are length-n vectors)."""
    m = len(rows)
    return [[rows[j][u] for j in range(m)] for u in range(n)]


def _trace_of_leftmult(vec, S, n):
    tr = 0
    for s in range(n):
        vs = vec[s]
        if vs:
            Ss = S[s]
            for t in range(n):
                tr += vs * Ss[t][t]
    return tr


def _matpow_mod(M, e, mod):
    n = len(M)
    R = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            R = matmul_mod(R, M, mod)
        M = matmul_mod(M, M, mod)
        e >>= 1
    return R


def _mult_vec_mod(x, y, S, n, p):
    """Coordinates of (sum x_s e_s)(sum y_t e_t) modulo p."""
    out = [0] * n
    for s in range(n):
        xs = x[s]
        if xs:
            Ss = S[s]
            for t in range(n):
                yt = y[t]
                if yt:
                    f = xs * yt
                    col = Ss[t]
                    for u in range(n):
                        out[u] += f * col[u]
    return [v % p for v in out]


def _verify_nilpotent_ideal(S, rad, p):
    """Hard check that the filtration output is a nilpotent two-sided ideal."""
    if not rad:
        return
    n = len(rad[0])
    ech, pivots = modp.rref_mod_p(rad, p)
    unit = [0] * n
    for y in ech:
        for s in range(n):
            unit[s] = 1
            left = _mult_vec_mod(unit, y, S, n, p)
            right = _mult_vec_mod(y, unit, S, n, p)
            unit[s] = 0
            if modp.span_coords(left, ech, pivots, p) is None:
                raise RuntimeError("radical candidate is not a left ideal")
            if modp.span_coords(right, ech, pivots, p) is None:
                raise RuntimeError("radical candidate is not a right ideal")
    cur = ech
    while cur:
        nxt = []
        for x in cur:
            for y in cur:
                nxt.append(_mult_vec_mod(x, y, S, n, p))
        nxt, _ = modp.rref_mod_p(nxt, p)
        if len(nxt) >= len(cur):
            raise RuntimeError("radical candidate is not nilpotent")
        cur = nxt


# -- idealizers ----------------------------------------------------------------

def _coords_matrix(order, lattice):
    """Rows of `lattice` in order-basis coordinates (exact integers).

    Both lattices are canonical full-rank HNF, so the order basis matrix is
    upper triangular and a back-substitution per row suffices.
    """
    n = order.rank
    orows = order.lattice.rows
    oden = order.lattice.den
    out = []
    for row in lattice.hnf().rows:
        target = [Fraction(v * oden, lattice.hnf().den) for v in row]
        coords = [Fraction(0)] * n
        for t in range(n - 1, -1, -1):
            val = target[t]
            for s in range(t + 1, n):
                val -= coords[s] * orows[s][t]
            coords[t] = val / orows[t][t]
        if any(c.denominator != 1 for c in coords):
            return None
        out.append([int(c) for c in coords])
    return out


def _right_module_gens(W, S, p_det, n):
    """Greedy right-O-module generators of the ideal with O-coords rows W.

    Returns (gens, ok): ok is False when the rows do not right-generate the
    lattice they span (the ideal is not right-stable).
    """
    from ._backend import hnf_insert

    target = abs(p_det)
    rows = []
    piv = []
    gens = []
    for r in range(n):
        g = W[r]
        probe = list(g)
        if not hnf_insert([row[:] for row in rows], list(piv), probe):
            continue
        gens.append(list(g))
        for t in range(n):
            vec = [0] * n
            for s in range(n):
                gs = g[s]
                if gs:
                    col = S[s][t]
                    for u in range(n):
                        vec[u] += gs * col[u]
            hnf_insert(rows, piv, vec)
        if len(rows) == n:
            det = 1
            for row, pc in zip(rows, piv):
                det *= row[pc]
            if abs(det) == target:
                return gens, True
    if len(rows) == n:
        det = 1
        for row, pc in zip(rows, piv):
            det *= row[pc]
        if abs(det) == target:
            return gens, True
    return gens, False


def _idealizer_modp(order, W, p):
    """Left idealizer {x : x I <= I} for an ideal with pO <= I, O-coords W.

    W rows must be a full-rank integer basis in order coordinates containing
    p times every unit vector.  Raises NotIdeal when the input is not a
    two-sided O-ideal.
    """
    n = order.rank
    S = order.structure_constants()
    Wl = RatLattice(n, [row[:] for row in W]).hnf()
    Wrows = Wl.rows
    assert Wl.den == 1 and Wl.rank == n
    det = 1
    for t in range(n):
        det *= Wrows[t][t]
    gens, ok = _right_module_gens(Wrows, S, det, n)
    if not ok:
        raise errors.NotIdeal("lattice is not right-stable under the order")
    cond_rows = [[] for _ in range(n)]  # row s: all I-coords of e_s * g
    for g in gens:
        for s in range(n):
            vec = [0] * n
            Ss = S[s]
            for t in range(n):
                gt = g[t]
                if gt:
                    col = Ss[t]
                    for u in range(n):
                        vec[u] += gt * col[u]
            alpha = _tri_solve_int(Wrows, vec)
            if alpha is None:
                raise errors.NotIdeal("lattice is not left-stable under the order")
            cond_rows[s].extend(alpha)
    ys = modp.left_nullspace_mod_p(cond_rows, p)
    acc = EchelonAccumulator(order.lattice.ambient)
    for row in order.lattice.rows_fractions():
        acc.insert(row)
    orows = order.lattice.rows_fractions()
    for y in ys:
        vec = [Fraction(0)] * order.lattice.ambient
        for s, c in enumerate(y):
            if c:
                row = orows[s]
                for t in range(order.lattice.ambient):
                    vec[t] += c * row[t]
        acc.insert([v / p for v in vec])
    return QuatOrder(order.algebra, acc.to_lattice())


def _tri_solve_int(Wrows, vec):
    """Integer alpha with alpha * W == vec for upper-triangular W, else None."""
    n = len(vec)
    alpha = [0] * n
    vec = list(vec)
    for t in range(n):
        val = vec[t]
        piv = Wrows[t][t]
        if val % piv:
            return None
        a = val // piv
        alpha[t] = a
        if a:
            row = Wrows[t]
            for u in range(t, n):
                vec[u] -= a * row[u]
    if any(vec):
        return None
    return alpha


# -- maximal two-sided ideals of O/pO ----------------------------------------

def _fp_scale(vec, c, p):
    return [(v * c) % p for v in vec]


def _fp_sub(a, b, p):
    return [(x - y) % p for x, y in zip(a, b)]


def _maximal_ideal_subspaces(order, p, rad):
    """Mod-p bases of the maximal two-sided ideals of O/pO containing rad.

    One ideal per simple component of the semisimple quotient S = (O/pO)/rad;
    components come from the primitive idempotents of the Frobenius-fixed
    part of the center of S (deterministic, no random splitting).
    """
    n = order.rank
    S = order.structure_constants()
    radE, radP = modp.rref_mod_p(rad, p) if rad else ([], [])

    def sbar(vec):
        return modp.reduce_mod_p(vec, radE, radP, p)

    def smul(x, y):
        return sbar(_mult_vec_mod(x, y, S, n, p))

    comp_cols = [t for t in range(n) if t not in radP]
    sb_basis = []
    for t in comp_cols:
        e = [0] * n
        e[t] = 1
        sb_basis.append(e)
    m = len(sb_basis)
    one = order.coords_of(order.algebra.one)
    one_bar = sbar(one)

    # center of S: z with z*b == b*z for every basis element b
    cond = [[] for _ in range(m)]
    for i, zi in enumerate(sb_basis):
        row = []
        for b in sb_basis:
            diff = _fp_sub(smul(zi, b), smul(b, zi), p)
            row.extend(diff)
        cond[i] = row
    zcoeffs = modp.left_nullspace_mod_p(cond, p)
    zbasis = []
    for co in zcoeffs:
        vec = [0] * n
        for c, b in zip(co, sb_basis):
            if c:
                for t in range(n):
                    vec[t] = (vec[t] + c * b[t]) % p
        zbasis.append(sbar(vec))
    zE, zP = modp.rref_mod_p(zbasis, p)

    # Frobenius-fixed part of the center: spanned by the component identities
    fix_cond = [[] for _ in range(len(zE))]
    for i, z in enumerate(zE):
        zp = _fp_pow(z, p, smul, one_bar)
        diff = _fp_sub(zp, z, p)
        co = modp.span_coords(diff, zE, zP, p)
        if co is None:
            raise RuntimeError("Frobenius left the center span")
        fix_cond[i] = co
    fixed = modp.left_nullspace_mod_p(fix_cond, p)
    pbasis = []
    for co in fixed:
        vec = [0] * n
        for c, z in zip(co, zE):
            if c:
                for t in range(n):
                    vec[t] = (vec[t] + c * z[t]) % p
        pbasis.append(vec)

    # split 1 into primitive idempotents by every basis element of the
    # Frobenius-fixed part (an etale F_p-algebra, so minpolys split)
    idems = [one_bar]
    for b in pbasis:
        new = []
        for f in idems:
            z = smul(b, f)
            mp = _element_minpoly(z, f, smul, p)
            roots = sorted(set(modp.poly_roots_mod_p(mp, p)))
            if len(roots) <= 1:
                new.append(f)
                continue
            for lam in roots:
                e = f
                for mu in roots:
                    if mu == lam:
                        continue
                    factor = _fp_sub(z, _fp_scale(f, mu, p), p)
                    e = smul(e, factor)
                    e = _fp_scale(e, pow((lam - mu) % p, -1, p), p)
                if any(e):
                    new.append(e)
        idems = new
    # sanity: orthogonal idempotent decomposition of 1
    total = [0] * n
    for e in idems:
        if smul(e, e) != e:
            raise RuntimeError("component splitting produced a non-idempotent")
        for t in range(n):
            total[t] = (total[t] + e[t]) % p
    if sbar(total) != one_bar:
        raise RuntimeError("idempotents do not sum to 1")

    out = []
    for e in idems:
        # M_e = {x : x*e in rad}
        cols = [[] for _ in range(n)]
        for s in range(n):
            es = [0] * n
            es[s] = 1
            prod = sbar(_mult_vec_mod(es, e, S, n, p))
            cols[s] = prod
        basis = modp.left_nullspace_mod_p(cols, p)
        out.append(basis)
    return out


def _fp_pow(z, e, smul, one):
    out = one
    base = z
    while e:
        if e & 1:
            out = smul(out, base)
        base = smul(base, base)
        e >>= 1
    return out


def _element_minpoly(z, f, smul, p):
    """Minimal polynomial of z in the unital algebra with identity f."""
    powers = [f]
    ech, piv = modp.rref_mod_p([f], p)
    cur = f
    while True:
        cur = smul(cur, z)
        if modp.span_coords(cur, ech, piv, p) is not None:
            coeffs = _fp_solve_powers(powers, cur, p)
            return [(-c) % p for c in coeffs] + [1]
        powers.append(cur)
        ech, piv = modp.rref_mod_p(ech + [cur], p)


def _fp_solve_powers(cols, rhs, p):
    """Solve sum c_i cols[i] == rhs over F_p (unique solution expected)."""
    m = len(cols)
    n = len(rhs)
    aug = [[cols[i][t] % p for i in range(m)] + [rhs[t] % p] for t in range(n)]
    ech, piv = modp.rref_mod_p(aug, p)
    sol = [0] * m
    for row, pc in zip(ech, piv):
        if pc == m:
            raise RuntimeError("inconsistent power relation")
        if pc < m:
            sol[pc] = row[m] % p
    return sol


# -- p-maximization ------------------------------------------------------------

def _modp_ideal_rows(order, p, subspace):
    """O-coords HNF rows of pO + lifts of a mod-p subspace."""
    n = order.rank
    rows = [[p if t == s else 0 for t in range(n)] for s in range(n)]
    rows += [[v % p for v in vec] for vec in subspace]
    return RatLattice(n, rows).hnf().rows


def p_maximize(order, p):
    """A p-maximal order containing the input; index is a power of p."""
    current = order
    start_disc = abs(current.disc_z)
    while True:
        grown = _p_enlarge_once(current, p)
        if grown is None:
            break
        # each step must shrink the discriminant by an even power of p
        idx = current.index_in(grown)
        if idx == 1 or idx % p:
            raise RuntimeError("idealizer growth index %d is not a p-power" % idx)
        current = grown
    total = order.index_in(current)
    while total > 1:
        if total % p:
            raise RuntimeError("maximization index escaped the prime %d" % p)
        total //= p
    return current


def _p_enlarge_once(order, p):
    """One round-2 step at p: radical idealizer, then ideal branching."""
    rad = radical_mod_p(order, p)
    W = _modp_ideal_rows(order, p, rad)
    bigger = _idealizer_modp(order, W, p)
    if bigger.lattice != order.lattice:
        return bigger
    candidates = _maximal_ideal_subspaces(order, p, rad)
    keyed = []
    for sub in candidates:
        rows = _modp_ideal_rows(order, p, sub)
        keyed.append((tuple(tuple(r) for r in rows), rows))
    keyed.sort()
    for _, rows in keyed:
        bigger = _idealizer_modp(order, rows, p)
        if bigger.lattice != order.lattice:
            if not bigger.lattice.contains_lattice(order.lattice):
                raise RuntimeError("idealizer did not grow upward")
            return bigger
    return None


def candidate_primes(order):
    """Primes where the order might be non-maximal (or the algebra ramifies).

    Read off the square part of disc_z / disc_K**4, which is N(reduced
    discriminant)**2 for any order.
    """
    field = order.algebra.field
    dk4 = abs(field.disc_K) ** 4
    disc = abs(order.disc_z)
    if disc % dk4:
        raise RuntimeError("disc_z is not a multiple of disc_K^4")
    ratio = disc // dk4
    root = modp.perfect_square_root(ratio)
    if root is None:
        raise RuntimeError("disc_z/disc_K^4 = %d is not a perfect square" % ratio)
    return sorted(modp.factor_integer(root))


def is_maximal(order):
    """True iff no candidate prime admits a strict round-2 enlargement.

    For (-1,-1) the answer is cross-checked against the ramification
    discriminant target.
    """
    result = True
    for p in candidate_primes(order):
        if _p_enlarge_once(order, p) is not None:
            result = False
            break
    if order.algebra.is_minus_one_minus_one():
        expected = ramification(order.algebra).disc_target
        matches = abs(order.disc_z) == expected
        if matches != result:
            raise RuntimeError(
                "maximality test disagrees with the discriminant target "
                "(disc_z=%d, target=%d, round2=%s)" % (
                    order.disc_z, expected, result))
    return result


def maximize(order):
    """Grow to a maximal order (p_maximize at every candidate prime)."""
    current = order
    for p in candidate_primes(order):
        current = p_maximize(current, p)
    if order.algebra.is_minus_one_minus_one():
        expected = ramification(order.algebra).disc_target
        if abs(current.disc_z) != expected:
            raise RuntimeError(
                "maximized order misses the discriminant target "
                "(disc_z=%d, target=%d)" % (current.disc_z, expected))
    return current


def is_azumaya(order):
    """Maximal and the algebra has no finite ramification."""
    if not order.algebra.is_minus_one_minus_one():
        raise errors.UnsupportedAlgebra(
            "Azumaya test implemented for (-1,-1) only")
    return not ramification(order.algebra).ramified and is_maximal(order)


def idealizer(order, ideal):
    """Left idealizer {x in A : x*I <= I} of a full two-sided O-ideal."""
    n = order.rank
    if ideal.rank != n:
        raise errors.NotIdeal("ideal lattice must have full rank")
    if not order.lattice.contains_lattice(ideal):
        raise errors.NotIdeal("ideal must sit inside the order")
    W = _coords_matrix(order, ideal)
    if W is None:
        raise errors.NotIdeal("ideal coordinates are not integral")
    Wl = RatLattice(n, W).hnf()
    index = 1
    for t in range(n):
        index *= Wl.rows[t][t]
    index = abs(index)
    for p in sorted(modp.factor_integer(index)):
        scaled = [[p if t == s else 0 for t in range(n)] for s in range(n)]
        if all(_tri_solve_int(Wl.rows, row) is not None for row in scaled):
            return _idealizer_modp(order, Wl.rows, p)
    return _idealizer_general(order, ideal)


def _idealizer_general(order, ideal):
    """Intersection form of the idealizer for composite-exponent ideals."""
    from .zlattice import intersect_lattices

    n = order.rank
    S = order.structure_constants()
    W = _coords_matrix(order, ideal)
    Wl = RatLattice(n, W).hnf()
    det = 1
    for t in range(n):
        det *= Wl.rows[t][t]
    gens, ok = _right_module_gens(Wl.rows, S, det, n)
    if not ok:
        raise errors.NotIdeal("lattice is not right-stable under the order")
    result = None
    for g in gens:
        gq = order.quat_from_coords(g)
        ginv = gq.inverse()
        rows = []
        for h in ideal.rows_fractions():
            hq = vec_to_quat(order.algebra, h)
            rows.append((hq * ginv).coords())
        lat = hnf(rows)
        result = lat if result is None else intersect_lattices(result, lat)
    out = QuatOrder(order.algebra, result)
    if not out.lattice.contains_lattice(order.lattice):
        raise errors.NotIdeal("idealizer lost the order; input was not an ideal")
    return out


# -- scalar extension and 2-power comparison ----------------------------------

def extend_scalars(order, n_big):
    """Order generated over the larger real cyclotomic ring by the lifted basis."""
    src_alg = order.algebra
    field_big = realfield.build_field(n_big)
    a_big = realfield.subfield_lift(src_alg.a, n_big)
    b_big = realfield.subfield_lift(src_alg.b, n_big)
    alg_big = SymbolAlgebra(field_big, a_big, b_big)
    gens = []
    for q in order.basis:
        comps = tuple(realfield.subfield_lift(c, n_big) for c in q.u)
        gens.append(Quaternion(alg_big, comps))
    return order_closure(alg_big, gens)


def equal_up_to_2_power(order1, order2):
    """True iff 2^s O1 <= O2 and 2^t O2 <= O1 for some s, t >= 0."""
    if order1.algebra != order2.algebra:
        raise errors.AlgebraMismatch("orders live in different algebras")

    def two_power_bounded(src, dst):
        rows = dst.lattice.rows
        den_dst = dst.lattice.den
        for vec in src.lattice.rows_fractions():
            target = [v * den_dst for v in vec]
            coords = [Fraction(0)] * len(target)
            for t in range(len(target) - 1, -1, -1):
                val = target[t]
                for s in range(t + 1, len(target)):
                    val -= coords[s] * rows[s][t]
                coords[t] = val / rows[t][t]
            for c in coords:
                d = c.denominator
                if d & (d - 1):  # not a power of two
                    return False
        return True

    return two_power_bounded(order1, order2) and two_power_bounded(order2, order1)
