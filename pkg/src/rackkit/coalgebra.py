"""Finite-dimensional coalgebras given by structure constants.

A FinCoalgebra stores the coefficients mu^{ij}_k of e_i (x) e_j in
Delta(e_k), an optional counit vector and an optional distinguished
group-like unit.  Reduction strips the unit (new coproduct
Delta(c) - 1(x)c - c(x)1 on ker eps); counitisation adjoins one.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import StructureError
from .linalg import Span, guard_ambient
from .scalars import ZERO
from .tensors import Vec, unit_vec, viadd, vec_to_sparse

ONE = Fraction(1)


class FinCoalgebra:
    """Coalgebra by structure constants; immutable after construction."""

    def __init__(self, labels, comul, counit=None, unit_index=None):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise StructureError("duplicate basis labels")
        table = []
        for k in range(self.dim):
            entry = {}
            for (i, j), c in dict(comul[k]).items():
                if not (0 <= i < self.dim and 0 <= j < self.dim):
                    raise StructureError(f"coproduct index out of range at {self.labels[k]}")
                if c:
                    entry[(i, j)] = c
            table.append(entry)
        self.comul = tuple(table)
        if counit is not None:
            counit = tuple(counit)
            if len(counit) != self.dim:
                raise StructureError("counit length mismatch")
            if not any(counit):
                counit = None  # an all-zero functional is no counit
        self.counit = counit
        if unit_index is not None:
            if not 0 <= unit_index < self.dim:
                raise StructureError("unit index out of range")
            if self.counit is None:
                raise StructureError("a distinguished unit needs a counit")
        self.unit_index = unit_index
        self._cache: dict = {}

    # -- basic evaluation ------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown label {label!r}") from None

    def delta_basis(self, k: int) -> Vec:
        return self.comul[k]

    def delta(self, v: Vec) -> Vec:
        """Coproduct of an element (keys of v are 1-tuples)."""
        out: Vec = {}
        for (k,), c in v.items():
            viadd(out, self.comul[k], c)
        return out

    def eps(self, v: Vec):
        if self.counit is None:
            raise StructureError("coalgebra has no counit")
        s = ZERO
        for (k,), c in v.items():
            s = s + c * self.counit[k]
        return s

    def unit_vector(self) -> Vec:
        if self.unit_index is None:
            raise StructureError("coalgebra has no distinguished unit")
        return unit_vec(self.unit_index)

    def sweedler(self, k: int, n: int) -> Vec:
        """Iterated coproduct of e_k as a dict over n-tuples (n >= 1)."""
        if n == 1:
            return {(k,): ONE}
        key = ("sw", k, n)
        if key not in self._cache:
            prev = self.sweedler(k, n - 1)
            out: Vec = {}
            for tup, c in prev.items():
                for (i, j), d in self.comul[tup[0]].items():
                    viadd(out, {(i, j) + tup[1:]: c * d})
            self._cache[key] = out
        return self._cache[key]

    def delta_tensor(self, tup: tuple[int, ...]) -> dict:
        """Coproduct of e_tup in the tensor-power coalgebra C^(x n).

        Sweedler legs interleave: the first output block collects the
        first legs of every factor, the second block the second legs.
        """
        key = ("dt", tup)
        if key not in self._cache:
            terms = [((), (), ONE)]
            for k in tup:
                nxt = []
                for left, right, c in terms:
                    for (i, j), d in self.comul[k].items():
                        nxt.append((left + (i,), right + (j,), c * d))
                terms = nxt
            out: dict = {}
            for left, right, c in terms:
                w = out.get((left, right), 0) + c
                if w:
                    out[(left, right)] = w
                else:
                    out.pop((left, right), None)
            self._cache[key] = out
        return self._cache[key]


# -- axiom checks --------------------------------------------------------


def check_coassociative(c: FinCoalgebra):
    """(Delta (x) id)Delta = (id (x) Delta)Delta; returns (ok, bad index)."""
    for k in range(c.dim):
        left: Vec = {}
        right: Vec = {}
        for (i, j), v in c.comul[k].items():
            for (p, q), w in c.comul[i].items():
                viadd(left, {(p, q, j): v * w})
            for (p, q), w in c.comul[j].items():
                viadd(right, {(i, p, q): v * w})
        if left != right:
            return False, k
    return True, None


def check_counit(c: FinCoalgebra):
    """(eps (x) id)Delta = id = (id (x) eps)Delta; returns (ok, bad index)."""
    if c.counit is None:
        return False, None
    for k in range(c.dim):
        left: Vec = {}
        right: Vec = {}
        for (i, j), v in c.comul[k].items():
            viadd(left, {(j,): c.counit[i] * v})
            viadd(right, {(i,): c.counit[j] * v})
        if left != {(k,): ONE} or right != {(k,): ONE}:
            return False, k
    return True, None


def check_unit_grouplike(c: FinCoalgebra):
    if c.unit_index is None:
        return False
    u = c.unit_index
    return c.comul[u] == {(u, u): ONE} and c.counit[u] == ONE


def check_cocommutative(c: FinCoalgebra) -> bool:
    for k in range(c.dim):
        flipped = {(j, i): v for (i, j), v in c.comul[k].items()}
        if flipped != c.comul[k]:
            return False
    return True


def validate_coalgebra(c: FinCoalgebra) -> None:
    """Raise unless coassociativity (and counit/unit laws, if present) hold."""
    ok, k = check_coassociative(c)
    if not ok:
        raise StructureError(f"not coassociative at basis {c.labels[k]!r}")
    if c.counit is not None:
        ok, k = check_counit(c)
        if not ok:
            raise StructureError(f"counit law fails at basis {c.labels[k]!r}")
    if c.unit_index is not None and not check_unit_grouplike(c):
        raise StructureError("distinguished unit is not group-like with eps=1")


# -- reduction and counitisation ------------------------------------------


def reduce(c: FinCoalgebra) -> FinCoalgebra:
    """Strip the unit: basis {e_i - eps(e_i) 1}, coproduct
    Delta(c) - 1(x)c - c(x)1.  Labels carry over; no counit on the result."""
    if c.unit_index is None:
        raise StructureError("reduce needs a distinguished unit")
    ok, k = check_counit(c)
    if not ok:
        raise StructureError("reduce needs valid counit axioms")
    if not check_unit_grouplike(c):
        raise StructureError("distinguished unit is not group-like")
    u = c.unit_index
    keep = [i for i in range(c.dim) if i != u]
    pos = {old: new for new, old in enumerate(keep)}
    comul = []
    for old in keep:
        # Delta(f_k) - 1(x)f_k - f_k(x)1 = Delta(e_k) - u(x)e_k - e_k(x)u
        #   + eps_k u(x)u, then read off the coefficients away from u.
        ent: Vec = dict(c.comul[old])
        viadd(ent, {(u, old): ONE}, -ONE)
        viadd(ent, {(old, u): ONE}, -ONE)
        viadd(ent, {(u, u): c.counit[old]})
        new_ent = {}
        for (i, j), v in ent.items():
            if i != u and j != u:
                new_ent[(pos[i], pos[j])] = v
        comul.append(new_ent)
    return FinCoalgebra([c.labels[i] for i in keep], comul)


def counitise(c: FinCoalgebra, unit_label: str = "1") -> FinCoalgebra:
    """Adjoin a group-like unit: Delta(x) + 1(x)x + x(x)1 on old basis."""
    while unit_label in c.labels:
        unit_label += "'"
    labels = (unit_label,) + c.labels
    comul = [{(0, 0): ONE}]
    for k in range(c.dim):
        ent = {(i + 1, j + 1): v for (i, j), v in c.comul[k].items()}
        ent[(0, k + 1)] = ent.get((0, k + 1), ZERO) + ONE
        ent[(k + 1, 0)] = ent.get((k + 1, 0), ZERO) + ONE
        comul.append(ent)
    counit = (ONE,) + (ZERO,) * c.dim
    return FinCoalgebra(labels, comul, counit, unit_index=0)


# -- derived maps ----------------------------------------------------------


def iterated_coproduct(c: FinCoalgebra, n: int):
    """Matrix of Delta^(n): C -> C^(x n), expanding the first leg each step."""
    if n < 1:
        raise StructureError("iterated coproduct needs n >= 1")
    guard_ambient(c.dim**n, "iterated coproduct")
    from .tensors import columns_to_mat

    return columns_to_mat([c.sweedler(k, n) for k in range(c.dim)], c.dim, n)


def tensor_coproduct(c: FinCoalgebra, n: int):
    """Matrix of the coproduct of C^(x n) into C^(x n) (x) C^(x n)."""
    from itertools import product

    from .tensors import columns_to_mat

    guard_ambient(c.dim ** (2 * n), "tensor-power coproduct")
    cols = []
    for tup in product(range(c.dim), repeat=n):
        v: Vec = {}
        for (left, right), coeff in c.delta_tensor(tup).items():
            viadd(v, {left + right: coeff})
        cols.append(v)
    return columns_to_mat(cols, c.dim, 2 * n)


def primitives(c: FinCoalgebra) -> Span:
    """Kernel of x -> Delta(x) - 1(x)x - x(x)1 (needs the unit)."""
    if c.unit_index is None:
        raise StructureError("primitives need a distinguished unit")
    u = c.unit_index
    from .linalg import SparseMat, kernel_basis

    cols = []
    for k in range(c.dim):
        v: Vec = dict(c.comul[k])
        viadd(v, {(u, k): ONE}, -ONE)
        viadd(v, {(k, u): ONE}, -ONE)
        cols.append(vec_to_sparse(v, c.dim, 2))
    mat = SparseMat.from_columns(c.dim**2, cols)
    return Span(c.dim, kernel_basis(mat))


def group_like_basis_check(c: FinCoalgebra) -> list[int]:
    """Basis indices i with Delta(e_i) = e_i (x) e_i and eps(e_i) = 1."""
    if c.counit is None:
        return []
    out = []
    for i in range(c.dim):
        if c.comul[i] == {(i, i): ONE} and c.counit[i] == ONE:
            out.append(i)
    return out
