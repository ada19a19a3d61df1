"""Constructive embeddings of roots of unity and the (-1,-u) variant search.

A root of unity of order m embeds as d = t/2 + u with trd(d) = t the trace
of a primitive m-th root and nrd(d) = 1.  First preference is d = t/2 + s*i
with s = sin(2*pi/m) expressed in the field; when that sine does not lie in
the field, a pure quaternion u with nrd(u) = 1 - t^2/4 is found by exact
lattice enumeration over half-integral coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import errors, realfield
from .orders import maximize, order_closure
from .quatalg import Quaternion, SymbolAlgebra, build_symbol_algebra
from .zlattice import GramForm, enumerate_exact


@dataclass
class RootEmbedding:
    algebra: SymbolAlgebra
    m: int
    d_elem: Quaternion


def embed_root(algebra, m):
    """A quaternion of multiplicative order exactly m with nrd 1.

    Requires the real subfield of the m-th cyclotomic field to lie in the
    algebra's center (NotEmbeddable otherwise).  The result is normalized:
    positive i-coordinate under the first embedding, ties broken by
    lexicographically smallest coordinates.
    """
    field = algebra.field
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return RootEmbedding(algebra, 1, algebra.one)
    if m == 2:
        return RootEmbedding(algebra, 2, -algebra.one)
    try:
        t = realfield.root_of_unity_trace(field, m)
    except errors.NotEmbeddable:
        raise errors.NotEmbeddable(
            "the real subfield for m=%d does not embed in K_%d" % (m, field.n))
    d = _try_sine_route(algebra, m, t)
    if d is None:
        d = _pure_part_search(algebra, m, t)
    _verify_root_order(algebra, d, m)
    return RootEmbedding(algebra, m, d)


def _try_sine_route(algebra, m, t):
    """d = cos + sin*i when 2*sin(2*pi/m) lies in the field (needs i^2 = -1)."""
    field = algebra.field
    if algebra.a != -field.one:
        return None
    try:
        two_sin = realfield.two_cos(field, m - 4, 4 * m)
    except errors.NotEmbeddable:
        return None
    half = Fraction(1, 2)
    d = (algebra.scalar(t) + algebra.i * two_sin) * half
    if d.nrd() != field.one:
        return None
    return d


def _pure_part_search(algebra, m, t):
    """Solve nrd(u) = 1 - t^2/4 for pure u over the half-integral lattice."""
    field = algebra.field
    d = field.degree
    four = field.elem(4)
    S = four - t * t  # (2 sin(2 pi/m))^2, totally positive for m > 2
    if S.den != 1:
        raise errors.SearchExhausted(
            "trace target is not half-integral; no lattice to search")
    # quadratic form of x*i + y*j + z*k over the coordinates of x, y, z
    a, b = algebra.a, algebra.b
    weights = [-a, -b, a * b]
    tv = field._trace_vec
    n3 = 3 * d
    gram = [[0] * n3 for _ in range(n3)]
    powers = [field.gen ** k for k in range(2 * d)]
    for blk, w in enumerate(weights):
        for s in range(d):
            for r in range(d):
                val = w * powers[s + r]
                tr = Fraction(sum(u * v for u, v in zip(val.num, tv)), val.den)
                gram[blk * d + s][blk * d + r] = tr
    tr_target, _ = realfield.trace_norm_Q(S)
    sols = enumerate_exact(GramForm(gram), tr_target)
    half = Fraction(1, 2)
    candidates = []
    for v in sols:
        x = field.from_coeffs([Fraction(c) for c in v[0:d]])
        y = field.from_coeffs([Fraction(c) for c in v[d:2 * d]])
        z = field.from_coeffs([Fraction(c) for c in v[2 * d:3 * d]])
        val = -a * x * x - b * y * y + a * b * z * z
        if val != S:
            continue
        u = Quaternion(algebra, (field.zero, x, y, z)) * half
        dq = algebra.scalar(t * half) + u
        assert dq.nrd() == field.one
        candidates.append(dq)
    if not candidates:
        raise errors.SearchExhausted(
            "no pure-part solution over the half-integral lattice for m=%d" % m)

    def sort_key(q):
        icoord = q.u[1]
        if icoord:
            sign = field.embedding_signs(icoord)[0]
        else:
            sign = 0
        return (-sign, q.coords())

    candidates.sort(key=sort_key)
    return candidates[0]


def _verify_root_order(algebra, d, m):
    cur = d
    for k in range(1, m):
        if cur == algebra.one:
            raise RuntimeError("embedded root has order %d < %d" % (k, m))
        if m % 2 == 0 and k == m // 2 and cur != -algebra.one:
            raise RuntimeError("embedded root misses d^(m/2) = -1")
        cur = cur * d
    if cur != algebra.one:
        raise RuntimeError("embedded root does not have order %d" % m)


def crossed_order(emb, power=1):
    """The order generated by d**power and j."""
    dq = emb.d_elem ** power
    return order_closure(emb.algebra, [dq, emb.algebra.j])


@dataclass
class VariantSearchResult:
    hits: list      # (n', m', maximal order, unit group)
    errors: list    # (n', m', exception)


def variant_search(field, pairs, predicate):
    """Scan algebras (-1, -(c^(2n') + c^(2m'))) for norm-one groups.

    For each exponent pair, builds the algebra, maximizes the standard order
    R<i,j>, enumerates the norm-one group of the result and keeps the pair
    when `predicate(group)` holds.  Per-pair failures are collected, not
    raised.
    """
    from .normone import norm_one_group

    hits = []
    errs = []
    c = field.gen
    for np_, mp_ in pairs:
        try:
            if np_ <= 0 or mp_ <= 0:
                raise ValueError("exponents must be positive")
            u = c ** (2 * np_) + c ** (2 * mp_)
            if not field.is_totally_positive(u):
                raise errors.NotDefinite("variant parameter is not totally positive")
            alg = build_symbol_algebra(field, -field.one, -u)
            if not alg.definite:
                raise errors.NotDefinite("variant algebra is not definite")
            base = order_closure(alg, [alg.i, alg.j])
            mx = maximize(base)
            grp = norm_one_group(mx)
            if predicate(grp):
                hits.append((np_, mp_, mx, grp))
        except Exception as exc:  # per-pair isolation is the contract
            errs.append((np_, mp_, exc))
    return VariantSearchResult(hits, errs)
