"""Bialgebras and Hopf algebras as degree-truncated structure-constant objects.

A FilteredBialgebra has a basis with filtration degrees and a product
table defined for pairs whose degrees fit inside the truncation.  A
product that would overflow either raises TruncationOverflow (mode
"error", the default) or returns the truncated value (mode "zero", for
quotient-style polynomial carriers; such pairs are remembered as lossy so
identity checks can skip them instead of trusting corrupted values).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .coalgebra import FinCoalgebra
from .errors import StructureError, TruncationOverflow
from .rack import CheckResult, RackBialgebra
from .scalars import ZERO
from .tensors import Vec, unit_vec, viadd, vscale

ONE = Fraction(1)


class FilteredBialgebra:
    """Truncated bialgebra; comul/antipode are optional."""

    def __init__(
        self,
        labels,
        degrees,
        trunc,
        prod,
        comul=None,
        counit=None,
        unit_index=0,
        antipode=None,
        overflow="error",
        lossy=(),
        generators=None,
    ):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.degrees = tuple(degrees)
        self.trunc = trunc
        if len(self.degrees) != self.dim:
            raise StructureError("degree list length mismatch")
        if overflow not in ("error", "zero"):
            raise StructureError("overflow mode must be 'error' or 'zero'")
        self.overflow = overflow
        self.prod: dict[tuple[int, int], Vec] = {}
        for (i, j), vec in dict(prod).items():
            clean = {k: c for k, c in vec.items() if c}
            self.prod[(i, j)] = clean
        self.comul = None
        if comul is not None:
            self.comul = tuple(dict(e) for e in comul)
        self.counit = tuple(counit) if counit is not None else None
        self.unit_index = unit_index
        self.antipode = tuple(antipode) if antipode is not None else None
        self.lossy = frozenset(lossy)
        # element vectors generating the algebra; None means all basis vectors
        self.generators = generators
        self._coalgebra = None

    # -- views -------------------------------------------------------------

    def coalgebra(self) -> FinCoalgebra:
        if self.comul is None:
            raise StructureError("carrier has no coproduct")
        if self._coalgebra is None:
            self._coalgebra = FinCoalgebra(
                self.labels, self.comul, self.counit, self.unit_index
            )
        return self._coalgebra

    def unit_vector(self) -> Vec:
        return unit_vec(self.unit_index)

    def degree_of(self, v: Vec) -> int:
        return max((self.degrees[k] for (k,) in v), default=0)

    def algebra_generators(self):
        if self.generators is not None:
            return self.generators
        return [unit_vec(i) for i in range(self.dim)]

    # -- arithmetic ----------------------------------------------------------

    def mul_basis(self, i: int, j: int, strict=False) -> Vec:
        pair = (i, j)
        if pair not in self.prod:
            raise TruncationOverflow(
                f"product {self.labels[i]} * {self.labels[j]} exceeds degree {self.trunc}"
            )
        if strict and pair in self.lossy:
            raise TruncationOverflow(
                f"product {self.labels[i]} * {self.labels[j]} is truncated"
            )
        return self.prod[pair]

    def mul(self, a: Vec, b: Vec, strict=False) -> Vec:
        out: Vec = {}
        for (i,), x in a.items():
            for (j,), y in b.items():
                c = x * y
                if c:
                    viadd(out, self.mul_basis(i, j, strict), c)
        return out

    def mul_many(self, factors, strict=False) -> Vec:
        acc = self.unit_vector()
        for f in factors:
            acc = self.mul(acc, f, strict)
        return acc

    def delta(self, v: Vec) -> Vec:
        return self.coalgebra().delta(v)

    def eps(self, v: Vec):
        if self.counit is None:
            raise StructureError("carrier has no counit")
        s = ZERO
        for (k,), c in v.items():
            s = s + c * self.counit[k]
        return s

    def apply_antipode(self, v: Vec) -> Vec:
        if self.antipode is None:
            raise StructureError("carrier has no antipode")
        out: Vec = {}
        for (k,), c in v.items():
            viadd(out, self.antipode[k], c)
        return out

    def is_cocommutative(self) -> bool:
        if self.comul is None:
            return False
        for ent in self.comul:
            if {(j, i): v for (i, j), v in ent.items()} != dict(ent):
                return False
        return True


# -- structural checks ---------------------------------------------------


def check_filtered_bialgebra(h: FilteredBialgebra) -> dict[str, CheckResult]:
    """Associativity, unit, filtration, Delta/eps multiplicativity and the
    antipode identities, each within the truncation (overflowing instances
    are skipped and counted)."""
    assoc = CheckResult()
    for i, j, k in product(range(h.dim), repeat=3):
        try:
            lhs = h.mul(h.mul_basis(i, j, True), unit_vec(k), True)
            rhs = h.mul(unit_vec(i), h.mul_basis(j, k, True), True)
        except TruncationOverflow:
            assoc.skipped += 1
            continue
        assoc.checked += 1
        if lhs != rhs:
            assoc.ok = False
            assoc.witness = (h.labels[i], h.labels[j], h.labels[k])
            break

    unit_law = CheckResult()
    u = h.unit_vector()
    for i in range(h.dim):
        unit_law.checked += 1
        if h.mul(u, unit_vec(i)) != unit_vec(i) or h.mul(unit_vec(i), u) != unit_vec(i):
            unit_law.ok = False
            unit_law.witness = (h.labels[i],)
            break

    filtration = CheckResult()
    for (i, j), vec in h.prod.items():
        filtration.checked += 1
        if h.degree_of(vec) > h.degrees[i] + h.degrees[j]:
            filtration.ok = False
            filtration.witness = (h.labels[i], h.labels[j])
            break

    report = {"assoc": assoc, "unit": unit_law, "filtration": filtration}

    if h.comul is not None:
        c = h.coalgebra()
        delta_mult = CheckResult()
        for i, j in product(range(h.dim), repeat=2):
            try:
                lhs = c.delta(h.mul_basis(i, j, True))
                rhs: Vec = {}
                for (p, q), w in c.comul[i].items():
                    for (s, t), v in c.comul[j].items():
                        left = h.mul_basis(p, s, True)
                        right = h.mul_basis(q, t, True)
                        for (a,), x in left.items():
                            for (b,), y in right.items():
                                viadd(rhs, {(a, b): x * y}, w * v)
            except TruncationOverflow:
                delta_mult.skipped += 1
                continue
            delta_mult.checked += 1
            if lhs != rhs:
                delta_mult.ok = False
                delta_mult.witness = (h.labels[i], h.labels[j])
                break
        eps_mult = CheckResult()
        for i, j in product(range(h.dim), repeat=2):
            try:
                lhs = h.eps(h.mul_basis(i, j, True))
            except TruncationOverflow:
                eps_mult.skipped += 1
                continue
            eps_mult.checked += 1
            if lhs != h.counit[i] * h.counit[j]:
                eps_mult.ok = False
                eps_mult.witness = (h.labels[i], h.labels[j])
                break
        report["delta_mult"] = delta_mult
        report["eps_mult"] = eps_mult

    if h.antipode is not None and h.comul is not None:
        antipode = CheckResult()
        u = h.unit_vector()
        for k in range(h.dim):
            try:
                left: Vec = {}
                right: Vec = {}
                for (p, q), w in h.comul[k].items():
                    viadd(left, h.mul(h.apply_antipode(unit_vec(p)), unit_vec(q), True), w)
                    viadd(right, h.mul(unit_vec(p), h.apply_antipode(unit_vec(q)), True), w)
            except TruncationOverflow:
                antipode.skipped += 1
                continue
            antipode.checked += 1
            expected = vscale(u, h.counit[k])
            if left != expected or right != expected:
                antipode.ok = False
                antipode.witness = (h.labels[k],)
                break
        report["antipode"] = antipode
    return report


# -- group algebras ---------------------------------------------------------


def group_algebra(labels, table) -> FilteredBialgebra:
    """Group algebra with every element group-like, S(g) = g^{-1}.

    `table` maps index pairs to indices.  Associativity, the two-sided
    unit and inverses are checked; the witness names the failing tuple.
    """
    labels = tuple(labels)
    n = len(labels)
    tbl = {}
    for (i, j), k in dict(table).items():
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise StructureError("group table index out of range")
        tbl[(i, j)] = k
    if len(tbl) != n * n:
        raise StructureError("group table is not total")
    for i, j, k in product(range(n), repeat=3):
        if tbl[(tbl[(i, j)], k)] != tbl[(i, tbl[(j, k)])]:
            raise StructureError(
                f"table not associative at ({labels[i]}, {labels[j]}, {labels[k]})"
            )
    unit = None
    for e in range(n):
        if all(tbl[(e, i)] == i and tbl[(i, e)] == i for i in range(n)):
            unit = e
            break
    if unit is None:
        raise StructureError("table has no two-sided unit")
    inv = {}
    for i in range(n):
        for j in range(n):
            if tbl[(i, j)] == unit and tbl[(j, i)] == unit:
                inv[i] = j
                break
        else:
            raise StructureError(f"element {labels[i]} has no inverse")
    prod = {(i, j): {(tbl[(i, j)],): ONE} for i, j in product(range(n), repeat=2)}
    comul = [{(i, i): ONE} for i in range(n)]
    counit = (ONE,) * n
    antipode = tuple(unit_vec(inv[i]) for i in range(n))
    return FilteredBialgebra(
        labels, (0,) * n, 0, prod, comul, counit, unit, antipode
    )


def cyclic_group_algebra(n: int) -> FilteredBialgebra:
    labels = ["e"] + [f"g{'' if k == 1 else k}" for k in range(1, n)]
    table = {(i, j): (i + j) % n for i, j in product(range(n), repeat=2)}
    return group_algebra(labels, table)


def symmetric_group_algebra(n: int) -> FilteredBialgebra:
    perms = sorted(permutations(range(n)))

    def compose(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(n))

    def cycle_label(p):
        seen, parts = set(), []
        for s in range(n):
            if s in seen or p[s] == s:
                seen.add(s)
                continue
            cyc, cur = [s], p[s]
            while cur != s:
                seen.add(cur)
                cyc.append(cur)
                cur = p[cur]
            seen.add(s)
            parts.append("(" + "".join(str(c) for c in cyc) + ")")
        return "".join(parts) or "e"

    pos = {p: i for i, p in enumerate(perms)}
    table = {
        (pos[p], pos[q]): pos[compose(p, q)] for p in perms for q in perms
    }
    return group_algebra([cycle_label(p) for p in perms], table)


# -- polynomial Hopf carriers -------------------------------------------------


def _monomial_label(exps, names) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def polynomial_hopf(
    names, trunc: int, extra_comul=None, overflow: str = "error"
) -> FilteredBialgebra:
    """Truncated polynomial bialgebra on primitive generators.

    extra_comul adds tail terms to a generator's coproduct, e.g.
    {0: [(1, 2, c)]} adds c * x1 (x) x2 to Delta(x0).  The antipode is
    solved degree by degree from S(h_(1)) h_(2) = eps(h) 1 inside the
    degree-truncated quotient.
    """
    names = tuple(names)
    nvars = len(names)
    if trunc < 1:
        raise StructureError("truncation degree must be >= 1")
    monomials = []
    for total in range(trunc + 1):
        level = sorted(
            exps
            for exps in product(range(total + 1), repeat=nvars)
            if sum(exps) == total
        )
        monomials.extend(level)
    pos = {m: i for i, m in enumerate(monomials)}
    labels = [_monomial_label(m, names) for m in monomials]
    degrees = [sum(m) for m in monomials]
    dim = len(monomials)

    prod: dict[tuple[int, int], Vec] = {}
    lossy = set()
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            total = sum(a) + sum(b)
            if total <= trunc:
                c = tuple(x + y for x, y in zip(a, b))
                prod[(i, j)] = {(pos[c],): ONE}
            elif overflow == "zero":
                prod[(i, j)] = {}
                lossy.add((i, j))

    # generator coproducts as polynomial tensors {(expsL, expsR): coeff}
    zero = (0,) * nvars

    def gen_exps(v):
        return tuple(1 if t == v else 0 for t in range(nvars))

    gen_delta = []
    for v in range(nvars):
        g = gen_exps(v)
        ent = {(zero, g): ONE, (g, zero): ONE}
        for (l, rgt, coeff) in (extra_comul or {}).get(v, ()):  # tail terms
            key = (gen_exps(l), gen_exps(rgt))
            ent[key] = ent.get(key, ZERO) + coeff
        gen_delta.append(ent)

    def tensor_mul(s, t):
        out = {}
        for (al, ar), x in s.items():
            for (bl, br), y in t.items():
                kl = tuple(p + q for p, q in zip(al, bl))
                kr = tuple(p + q for p, q in zip(ar, br))
                w = out.get((kl, kr), ZERO) + x * y
                if w:
                    out[(kl, kr)] = w
                else:
                    out.pop((kl, kr), None)
        return out

    comul = []
    for m in monomials:
        acc = {(zero, zero): ONE}
        for v, e in enumerate(m):
            for _ in range(e):
                acc = tensor_mul(acc, gen_delta[v])
        ent = {}
        for (l, rgt), coeff in acc.items():
            # legs never exceed the degree of the monomial itself
            ent[(pos[l], pos[rgt])] = coeff
        comul.append(ent)
    counit = tuple(ONE if sum(m) == 0 else ZERO for m in monomials)

    # antipode by degree recursion, products taken in the truncated quotient
    def mul_trunc(a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for (i,), x in a.items():
            for (j,), y in b.items():
                if degrees[i] + degrees[j] <= trunc:
                    key = tuple(p + q for p, q in zip(monomials[i], monomials[j]))
                    viadd(out, {(pos[key],): ONE}, x * y)
        return out

    antipode: list[Vec] = [None] * dim
    for k, m in sorted(enumerate(monomials), key=lambda km: sum(km[1])):
        if sum(m) == 0:
            antipode[k] = unit_vec(k)
            continue
        acc: Vec = {}
        for (p, q), w in comul[k].items():
            if p == k:  # the h (x) 1 term contributes S(h) itself
                continue
            viadd(acc, mul_trunc(antipode[p], unit_vec(q)), w)
        antipode[k] = vscale(acc, -ONE)

    gens = [unit_vec(pos[gen_exps(v)]) for v in range(nvars)]
    out = FilteredBialgebra(
        labels,
        degrees,
        trunc,
        prod,
        comul,
        counit,
        unit_index=pos[zero],
        antipode=tuple(antipode),
        overflow=overflow,
        lossy=lossy,
        generators=gens,
    )
    out.monomials = tuple(monomials)
    out.varnames = names
    return out


def polynomial_hopf_k3(trunc: int, overflow: str = "error") -> FilteredBialgebra:
    """k[X,Y,Z] truncated, with Delta(X) = 1(x)X + X(x)1 + Y(x)Z."""
    return polynomial_hopf(
        ("X", "Y", "Z"), trunc, extra_comul={0: [(1, 2, ONE)]}, overflow=overflow
    )


# -- adjoint action and the rack construction ---------------------------------


def adjoint_action(h: FilteredBialgebra):
    """Right adjoint action a <| b = S(b_(1)) a b_(2), as a callable on
    element vectors.  Raises TruncationOverflow when products leave the
    truncation."""
    if h.antipode is None:
        raise StructureError("adjoint action needs an antipode")
    c = h.coalgebra()

    def act(a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for (j,), y in b.items():
            for (p, q), w in c.comul[j].items():
                term = h.mul(h.mul(h.antipode[p], a), unit_vec(q))
                viadd(out, term, y * w)
        return out

    return act


def closure_under_adjoint(h: FilteredBialgebra, seed) -> list[Vec]:
    """Smallest adjoint-stable subspace containing the seed vectors.

    Acting by the algebra generators suffices because the adjoint action
    is a module action; this also keeps the intermediate products inside
    the truncation.  Span growth terminates at the ambient dimension.
    Returns reduced basis vectors ordered with the unit coordinate last,
    so pivot labels never collide with the unit.
    """
    from .linalg import Span, SparseVec

    act = adjoint_action(h)
    u = h.unit_index
    order = [i for i in range(h.dim) if i != u] + [u]
    colpos = {k: i for i, k in enumerate(order)}

    def to_coords(v: Vec) -> SparseVec:
        return SparseVec(h.dim, {colpos[k]: x for (k,), x in v.items()})

    def from_coords(vec: SparseVec) -> Vec:
        return {(order[i],): x for i, x in vec.entries.items()}

    span = Span(h.dim)
    frontier = list(seed)
    for v in frontier:
        if h.eps(v):
            raise StructureError("seed vectors must lie in ker eps")
        span.insert(to_coords(v))
    gens = h.algebra_generators()
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                try:
                    w = act(v, g)
                except TruncationOverflow:
                    raise TruncationOverflow(
                        "adjoint closure escapes the truncation degree"
                    ) from None
                if w and span.insert(to_coords(w)):
                    new.append(w)
        frontier = new
    return [from_coords(b) for b in span.basis()]


def rack_from_hopf(h: FilteredBialgebra, seed) -> RackBialgebra:
    """k1 + (adjoint closure of the seed) with the adjoint action as rack
    product; the coproduct must restrict, which is checked, and the result
    is re-verified against all rack bialgebra axioms."""
    from .linalg import solve_coordinates
    from .rack import validate_rack_bialgebra
    from .tensors import vec_to_sparse, vtensor

    if not h.is_cocommutative():
        raise StructureError("rack_from_hopf needs a cocommutative carrier")
    basis = closure_under_adjoint(h, seed)
    ambient = [h.unit_vector()] + basis
    # label closure vectors by a non-unit basis element of H they involve
    labels = ["1"]
    used = {"1"}
    for idx, v in enumerate(basis):
        nonunit = [k for (k,) in v if k != h.unit_index]
        pick = h.labels[min(nonunit)] if nonunit else f"c{idx}"
        while pick in used:
            pick += "'"
        used.add(pick)
        labels.append(pick)

    cols = [vec_to_sparse(v, h.dim, 1) for v in ambient]
    pair_cols = [
        vec_to_sparse(vtensor(a, b), h.dim, 2) for a in ambient for b in ambient
    ]
    c = h.coalgebra()
    dim = len(ambient)
    comul = []
    for v in ambient:
        coords = solve_coordinates(pair_cols, vec_to_sparse(c.delta(v), h.dim, 2))
        if coords is None:
            raise StructureError("closure is not stable under the coproduct")
        ent = {}
        for pos, val in enumerate(coords):
            if val:
                ent[(pos // dim, pos % dim)] = val
        comul.append(ent)
    counit = tuple(h.eps(v) for v in ambient)
    coalg = FinCoalgebra(labels, comul, counit, unit_index=0)

    act = adjoint_action(h)
    rack = {}
    for i, a in enumerate(ambient):
        for j, b in enumerate(ambient):
            w = act(a, b)
            coords = solve_coordinates(cols, vec_to_sparse(w, h.dim, 1))
            if coords is None:
                raise StructureError("closure is not stable under the adjoint action")
            vec = {(p,): val for p, val in enumerate(coords) if val}
            if vec:
                rack[(i, j)] = vec
    out = RackBialgebra(coalg, rack)
    validate_rack_bialgebra(out)
    return out
