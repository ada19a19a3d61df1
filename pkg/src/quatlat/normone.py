"""Norm-one unit groups of definite orders and their recognition.

Enumeration: an integral x has Tr_{K/Q}(trd(x*conj(x))) == 2*[K:Q] exactly
when nrd(x) is a totally positive algebraic integer of trace [K:Q], which by
AM-GM forces nrd(x) == 1.  The code still checks nrd == 1 for every vector
it finds and fails hard otherwise; group closure of the multiplication table
then certifies that the enumeration missed nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import errors
from .orders import order_closure, is_maximal
from .zlattice import GramForm, enumerate_exact


@dataclass
class GroupInvariants:
    order_spectrum: dict        # element order -> count
    derived_size: int
    derived_index: int
    derived_abelian: bool
    derived_cyclic: bool
    center_size: int
    abelian: bool
    cyclic: bool
    perfect: bool


class UnitGroup:
    """Finite group of norm-one elements with its multiplication table."""

    def __init__(self, order, elements):
        self.order_ref = order
        one = order.algebra.one
        rest = sorted((e for e in elements if e != one),
                      key=lambda q: q.coords())
        self.elements = [one] + rest
        self.size = len(self.elements)
        index = {q.coords(): i for i, q in enumerate(self.elements)}
        table = []
        for x in self.elements:
            row = []
            for y in self.elements:
                idx = index.get((x * y).coords())
                if idx is None:
                    raise RuntimeError(
                        "norm-one set is not closed under multiplication")
                row.append(idx)
            table.append(row)
        self.mult_table = table
        self._inverse = [row.index(0) for row in table]
        self._invariants = None
        self.tag = identify(self)

    # -- table-level group theory -------------------------------------------

    def element_order(self, i):
        k = 1
        cur = i
        while cur != 0:
            cur = self.mult_table[cur][i]
            k += 1
        return k

    def subgroup_closure(self, gens):
        seen = set(gens) | {0}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in seen | set(gens):
                    for c in (self.mult_table[a][b], self.mult_table[b][a]):
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
            frontier = nxt
        return seen

    def derived_subgroup(self):
        t = self.mult_table
        inv = self._inverse
        comms = set()
        for a in range(self.size):
            for b in range(self.size):
                comms.add(t[t[a][b]][t[inv[a]][inv[b]]])
        return self.subgroup_closure(comms)

    def center(self):
        t = self.mult_table
        return [a for a in range(self.size)
                if all(t[a][b] == t[b][a] for b in range(self.size))]

    def is_abelian_set(self, idxs):
        t = self.mult_table
        idxs = list(idxs)
        return all(t[a][b] == t[b][a] for a in idxs for b in idxs)

    def is_cyclic_set(self, idxs):
        idxs = set(idxs)
        for g in idxs:
            k = 1
            cur = g
            while cur != 0:
                cur = self.mult_table[cur][g]
                k += 1
            if k == len(idxs):
                return True
        return len(idxs) == 1

    def invariants(self):
        if self._invariants is None:
            spectrum = {}
            for i in range(self.size):
                o = self.element_order(i)
                spectrum[o] = spectrum.get(o, 0) + 1
            derived = self.derived_subgroup()
            abelian = self.is_abelian_set(range(self.size))
            self._invariants = GroupInvariants(
                order_spectrum=spectrum,
                derived_size=len(derived),
                derived_index=self.size // len(derived),
                derived_abelian=self.is_abelian_set(derived),
                derived_cyclic=self.is_cyclic_set(derived),
                center_size=len(self.center()),
                abelian=abelian,
                cyclic=any(o == self.size for o in spectrum),
                perfect=len(derived) == self.size,
            )
        return self._invariants

    def __repr__(self):
        return "UnitGroup(size=%d, tag=%s)" % (self.size, self.tag)


def norm_one_group(order):
    """Enumerate {x in O : nrd(x) == 1} and assemble its group structure."""
    if not order.algebra.definite:
        raise errors.NotDefinite("norm-one enumeration needs a definite algebra")
    d = order.algebra.field.degree
    gram = GramForm(order.gram_nrd())
    vecs = enumerate_exact(gram, 2 * d)
    one_field = order.algebra.field.one
    elems = []
    for v in vecs:
        q = order.quat_from_coords(v)
        if q.nrd() != one_field:
            raise RuntimeError(
                "enumerated vector has nrd != 1; AM-GM filter violated")
        elems.append(q)
    return UnitGroup(order, elems)


def group_invariants(group):
    return group.invariants()


# -- recognition -------------------------------------------------------------

class GroupTag:
    """Recognition result; value is one of the candidate isomorphism types."""

    def __init__(self, kind, param=None):
        self.kind = kind
        self.param = param

    def __eq__(self, other):
        if isinstance(other, str):
            return str(self) == other
        if not isinstance(other, GroupTag):
            return NotImplemented
        return self.kind == other.kind and self.param == other.param

    def __hash__(self):
        return hash((self.kind, self.param))

    def __str__(self):
        if self.param is not None:
            return "%s(%d)" % (self.kind, self.param)
        return self.kind

    __repr__ = __str__


def Cyclic(m):
    return GroupTag("Cyclic", m)


def GeneralizedQuaternion(m):
    return GroupTag("GeneralizedQuaternion", m)


SL23 = GroupTag("SL23")
BinaryOctahedral = GroupTag("BinaryOctahedral")
SL25 = GroupTag("SL25")
Unknown = GroupTag("Unknown")


def identify(group):
    """Tag among the candidate finite subgroups of definite quaternions."""
    size = group.size
    inv = group.invariants()
    if inv.cyclic:
        return Cyclic(size)
    if size % 4 == 0 and _is_generalized_quaternion(group):
        return GeneralizedQuaternion(size)
    if size == 24 and inv.derived_size == 8:
        return SL23
    if size == 48 and inv.derived_index == 2 and not inv.derived_abelian:
        return BinaryOctahedral
    if size == 120 and inv.perfect:
        return SL25
    return Unknown


def _is_generalized_quaternion(group):
    """Presentation check: x of order n, y of order 4, yxy^-1 = x^-1, y^2 = x^(n/2)."""
    size = group.size
    half = size // 2
    if half % 2:
        return False
    t = group.mult_table
    inv = group._inverse
    xs = [i for i in range(size) if group.element_order(i) == half]
    if not xs:
        return False
    ys = [i for i in range(size) if group.element_order(i) == 4]
    for x in xs:
        xq = x
        for _ in range(half // 2 - 1):
            xq = t[xq][x]
        for y in ys:
            if t[t[y][x]][inv[y]] == inv[x] and t[y][y] == xq:
                return True
    return False


def is_full(group):
    """Whether R[G] is a maximal order; abelian groups span rank-2 lattices."""
    if group.invariants().abelian:
        return False
    span = order_closure(group.order_ref.algebra,
                         list(group.elements))
    return is_maximal(span)


def span_order(group):
    """R[G] as an order (the group must be nonabelian)."""
    return order_closure(group.order_ref.algebra, list(group.elements))
