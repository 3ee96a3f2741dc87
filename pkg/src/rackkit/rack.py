"""Rack bialgebras by structure constants, with the standard constructors.

The product table holds lambda^k_{ij}, the coefficient of e_k in
e_i <| e_j.  Axioms are verified on basis tuples and extend by
linearity; every check reports its first counterexample.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .coalgebra import FinCoalgebra, validate_coalgebra
from .errors import StructureError
from .linalg import SparseMat
from .scalars import ZERO
from .tensors import Vec, flatten, unit_vec, viadd, vscale

ONE = Fraction(1)


class CheckResult:
    """Outcome of one axiom: ok flag, instance counts, first witness."""

    __slots__ = ("ok", "checked", "skipped", "witness")

    def __init__(self, ok=True, checked=0, skipped=0, witness=None):
        self.ok = ok
        self.checked = checked
        self.skipped = skipped
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        extra = f", witness={self.witness}" if self.witness else ""
        skip = f", skipped={self.skipped}" if self.skipped else ""
        return f"CheckResult(ok={self.ok}, checked={self.checked}{skip}{extra})"


def report_ok(report: dict) -> bool:
    return all(r.ok for r in report.values())


class RackBialgebra:
    """Counital coaugmented coalgebra with a self-distributive product."""

    def __init__(self, coalgebra: FinCoalgebra, rack):
        if coalgebra.unit_index is None or coalgebra.counit is None:
            raise StructureError("a rack bialgebra needs a counit and a unit")
        self.coalgebra = coalgebra
        table: dict[tuple[int, int], Vec] = {}
        for (i, j), vec in dict(rack).items():
            if not (0 <= i < coalgebra.dim and 0 <= j < coalgebra.dim):
                raise StructureError("rack index out of range")
            clean = {k: c for k, c in vec.items() if c}
            if clean:
                table[(i, j)] = clean
        self.rack = table
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    @property
    def labels(self):
        return self.coalgebra.labels

    def shelf_basis(self, i: int, j: int) -> Vec:
        return self.rack.get((i, j), {})

    def shelf(self, a: Vec, b: Vec) -> Vec:
        """Bilinear extension of the basis product a <| b."""
        out: Vec = {}
        for (i,), x in a.items():
            for (j,), y in b.items():
                c = x * y
                if c:
                    viadd(out, self.rack.get((i, j), {}), c)
        return out


# -- axiom report ----------------------------------------------------------


def check_rack_bialgebra(r: RackBialgebra) -> dict[str, CheckResult]:
    """Verify the five defining axioms on all basis tuples."""
    c = r.coalgebra
    labels = c.labels
    unit = c.unit_vector()

    selfdist = CheckResult()
    for i, j, k in product(range(c.dim), repeat=3):
        lhs = r.shelf(r.shelf(unit_vec(i), unit_vec(j)), unit_vec(k))
        rhs: Vec = {}
        for (p, q), w in c.comul[k].items():
            inner = r.shelf(r.shelf(unit_vec(i), unit_vec(p)), r.shelf(unit_vec(j), unit_vec(q)))
            viadd(rhs, inner, w)
        selfdist.checked += 1
        if lhs != rhs:
            selfdist.ok = False
            selfdist.witness = (labels[i], labels[j], labels[k])
            break

    morphism = CheckResult()
    for i, j in product(range(c.dim), repeat=2):
        lhs = c.delta(r.shelf(unit_vec(i), unit_vec(j)))
        rhs: Vec = {}
        for (p, q), w in c.comul[i].items():
            for (s, t), v in c.comul[j].items():
                left = r.shelf_basis(p, s)
                right = r.shelf_basis(q, t)
                for (a,), x in left.items():
                    for (b,), y in right.items():
                        viadd(rhs, {(a, b): x * y}, w * v)
        morphism.checked += 1
        if lhs != rhs:
            morphism.ok = False
            morphism.witness = (labels[i], labels[j])
            break

    counit_mult = CheckResult()
    for i, j in product(range(c.dim), repeat=2):
        lhs = c.eps(r.shelf(unit_vec(i), unit_vec(j)))
        rhs = c.counit[i] * c.counit[j]
        counit_mult.checked += 1
        if lhs != rhs:
            counit_mult.ok = False
            counit_mult.witness = (labels[i], labels[j])
            break

    unit_right = CheckResult()
    for i in range(c.dim):
        unit_right.checked += 1
        if r.shelf(unit_vec(i), unit) != unit_vec(i):
            unit_right.ok = False
            unit_right.witness = (labels[i],)
            break

    unit_left = CheckResult()
    for i in range(c.dim):
        expected = vscale(unit, c.counit[i])
        unit_left.checked += 1
        if r.shelf(unit, unit_vec(i)) != expected:
            unit_left.ok = False
            unit_left.witness = (labels[i],)
            break

    return {
        "selfdist": selfdist,
        "morphism": morphism,
        "counit_mult": counit_mult,
        "unit_right": unit_right,
        "unit_left": unit_left,
    }


def validate_rack_bialgebra(r: RackBialgebra) -> None:
    validate_coalgebra(r.coalgebra)
    report = check_rack_bialgebra(r)
    for name, res in report.items():
        if not res.ok:
            raise StructureError(f"rack axiom {name} fails at {res.witness}")


# -- braiding ---------------------------------------------------------------


def braiding(r: RackBialgebra) -> SparseMat:
    """tau: x (x) y -> y_(1) (x) (x <| y_(2)) as a dim^2 x dim^2 matrix."""
    c = r.coalgebra
    n = c.dim
    rows: dict[int, dict[int, Fraction]] = {}
    for i, j in product(range(n), repeat=2):
        col = flatten((i, j), n)
        for (p, q), w in c.comul[j].items():
            for (a,), x in r.shelf_basis(i, q).items():
                row = flatten((p, a), n)
                tgt = rows.setdefault(row, {})
                tgt[col] = tgt.get(col, ZERO) + w * x
    return SparseMat(n * n, n * n, rows)


def braid_relation_holds(r: RackBialgebra) -> bool:
    """(tau(x)id)(id(x)tau)(tau(x)id) = (id(x)tau)(tau(x)id)(id(x)tau), exactly."""
    tau = braiding(r)
    eye = SparseMat.identity(r.dim)
    t12 = tau.kron(eye)
    t23 = eye.kron(tau)
    return t12.mul(t23).mul(t12) == t23.mul(t12).mul(t23)


# -- constructors ------------------------------------------------------------


def trivial_rack(c: FinCoalgebra) -> RackBialgebra:
    """a <| b := eps(b) a on any counital coaugmented coalgebra."""
    if c.unit_index is None or c.counit is None:
        raise StructureError("trivial rack needs a counit and a unit")
    table = {}
    for i, j in product(range(c.dim), repeat=2):
        if c.counit[j]:
            table[(i, j)] = {(i,): c.counit[j]}
    return RackBialgebra(c, table)


def from_pointed_rack(elements, table) -> RackBialgebra:
    """Linearise a set-level rack: basis {1} + group-likes g_x with
    g_x <| g_y = g_{x <| y}.

    `table` maps element pairs to elements (dict keyed by (x, y) or a
    callable).  Set-level self-distributivity is checked first.
    """
    elements = list(elements)
    if callable(table):
        op = table
    else:
        tbl = dict(table)
        op = lambda x, y: tbl[(x, y)]  # noqa: E731
    try:
        for x, y, z in product(elements, repeat=3):
            if op(op(x, y), z) != op(op(x, z), op(y, z)):
                raise StructureError(
                    f"set-level self-distributivity fails at ({x!r}, {y!r}, {z!r})"
                )
    except KeyError as exc:
        raise StructureError(f"rack table is missing entry {exc}") from None
    labels = ["1"] + [str(x) for x in elements]
    comul = [{(k, k): ONE} for k in range(len(labels))]
    counit = (ONE,) * len(labels)
    coalg = FinCoalgebra(labels, comul, counit, unit_index=0)
    pos = {x: i + 1 for i, x in enumerate(elements)}
    rack: dict[tuple[int, int], Vec] = {}
    for x, y in product(elements, repeat=2):
        rack[(pos[x], pos[y])] = {(pos[op(x, y)],): ONE}
    for x in elements:
        rack[(pos[x], 0)] = {(pos[x],): ONE}
        rack[(0, pos[x])] = {(0,): ONE}
    rack[(0, 0)] = {(0,): ONE}
    return RackBialgebra(coalg, rack)


class LeibnizAlgebra:
    """Right Leibniz algebra: bracket constants c^k_{ij} for [e_i, e_j]."""

    def __init__(self, labels, bracket):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        table: dict[tuple[int, int], Vec] = {}
        for (i, j), vec in dict(bracket).items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise StructureError("bracket index out of range")
            clean = {k: c for k, c in vec.items() if c}
            if clean:
                table[(i, j)] = clean
        self.bracket = table

    def br_basis(self, i: int, j: int) -> Vec:
        return self.bracket.get((i, j), {})

    def br(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for (i,), x in a.items():
            for (j,), y in b.items():
                viadd(out, self.bracket.get((i, j), {}), x * y)
        return out


def check_leibniz(l: LeibnizAlgebra):
    """Right Leibniz identity [[x,y],z] = [[x,z],y] + [x,[y,z]]."""
    for i, j, k in product(range(l.dim), repeat=3):
        lhs = l.br(l.br_basis(i, j), unit_vec(k))
        rhs = l.br(l.br_basis(i, k), unit_vec(j))
        viadd(rhs, l.br(unit_vec(i), l.br_basis(j, k)))
        if lhs != rhs:
            return False, (l.labels[i], l.labels[j], l.labels[k])
    return True, None


def from_leibniz(l: LeibnizAlgebra) -> RackBialgebra:
    """k1 + h with h primitive and x <| y = [x, y]."""
    ok, witness = check_leibniz(l)
    if not ok:
        raise StructureError(f"right Leibniz identity fails at {witness}")
    labels = ("1",) + l.labels
    comul = [{(0, 0): ONE}]
    for k in range(l.dim):
        comul.append({(0, k + 1): ONE, (k + 1, 0): ONE})
    counit = (ONE,) + (ZERO,) * l.dim
    coalg = FinCoalgebra(labels, comul, counit, unit_index=0)
    rack: dict[tuple[int, int], Vec] = {(0, 0): {(0,): ONE}}
    for i in range(l.dim):
        rack[(i + 1, 0)] = {(i + 1,): ONE}
        for j in range(l.dim):
            vec = {(k + 1,): c for (k,), c in l.br_basis(i, j).items()}
            if vec:
                rack[(i + 1, j + 1)] = vec
    return RackBialgebra(coalg, rack)


def builtin_nc5() -> RackBialgebra:
    """The five-dimensional non-cocommutative example: basis (1,x,y,z,t),
    t,y,z primitive, Delta(x) = 1(x)x + x(x)1 + y(x)z, x<|y = x<|z = t,
    and <|x, <|t vanish."""
    labels = ("1", "x", "y", "z", "t")
    I, X, Y, Z, T = range(5)
    comul = [
        {(I, I): ONE},
        {(I, X): ONE, (X, I): ONE, (Y, Z): ONE},
        {(I, Y): ONE, (Y, I): ONE},
        {(I, Z): ONE, (Z, I): ONE},
        {(I, T): ONE, (T, I): ONE},
    ]
    counit = (ONE, ZERO, ZERO, ZERO, ZERO)
    coalg = FinCoalgebra(labels, comul, counit, unit_index=I)
    rack: dict[tuple[int, int], Vec] = {}
    for a in range(5):
        rack[(a, I)] = {(a,): ONE}
    rack[(X, Y)] = {(T,): ONE}
    rack[(X, Z)] = {(T,): ONE}
    return RackBialgebra(coalg, rack)


def nc5_cocommutative_degeneration() -> RackBialgebra:
    """Same product table as builtin_nc5 but with x primitive."""
    nc5 = builtin_nc5()
    comul = [dict(e) for e in nc5.coalgebra.comul]
    I, X = 0, 1
    comul[X] = {(I, X): ONE, (X, I): ONE}
    coalg = FinCoalgebra(nc5.labels, comul, nc5.coalgebra.counit, unit_index=I)
    return RackBialgebra(coalg, nc5.rack)


def _abelian_leibniz(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra([f"x{i}" for i in range(n)] if n > 1 else ["x"], {})


def builtin_example(name: str) -> RackBialgebra:
    if name not in BUILTIN_NAMES:
        raise StructureError(f"unknown example {name!r}; choose from {BUILTIN_NAMES}")
    if name == "nc5":
        return builtin_nc5()
    if name == "trivial1":
        return from_pointed_rack(["a"], {("a", "a"): "a"})
    if name == "conjZ2":
        # conjugation in an abelian group is trivial: x <| y = x
        return from_pointed_rack(["e", "a"], lambda x, y: x)
    if name == "leibniz2":
        return from_leibniz(LeibnizAlgebra(["x", "y"], {(0, 0): {(1,): ONE}}))
    if name == "abelian1":
        return from_leibniz(_abelian_leibniz(1))
    if name == "lie2":
        return from_leibniz(
            LeibnizAlgebra(
                ["x", "y"], {(0, 1): {(0,): ONE}, (1, 0): {(0,): -ONE}}
            )
        )
    raise AssertionError(name)


BUILTIN_NAMES = ("nc5", "trivial1", "conjZ2", "leibniz2", "abelian1", "lie2")
