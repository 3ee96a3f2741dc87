"""Deformation complex of cocommutative rack bialgebras.

Cochains in degree n are coderivations along the iterated product mu^n:
linear maps w: C^(x n) -> C with

    Delta o w = (w (x) mu^n + mu^n (x) w) o Delta_{C^(x n)}.

The differential is a signed sum of three families of maps; the Sweedler
legs are distributed left-to-right, iterated coproducts expand the first
leg, the empty (0-fold) coproduct is the counit, and the closing term
(first slot into the iterated product, second into the cochain) carries a
plus sign in every degree.  These conventions are pinned by requiring
d o d = 0 exactly on the coderivation spaces; the alternating-sign
reading of the closing term agrees in odd degrees but breaks the square
one level up, and the test suite guards the working combination.

The module also carries the bracket-level complex of a right Leibniz
algebra with adjoint coefficients, the extension-by-zero embedding into
the deformation complex, and a first-order deformation checker over the
dual numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .coalgebra import (
    FinCoalgebra,
    check_coassociative,
    check_cocommutative,
    check_counit,
    check_unit_grouplike,
)
from .errors import RackkitError, StructureError
from .linalg import SparseMat, guard_ambient, kernel_basis, rref, solve_coordinates
from .rack import CheckResult, LeibnizAlgebra, RackBialgebra, check_rack_bialgebra
from .scalars import DualScalar, lift_dual
from .tensors import Vec, flatten, unit_vec, vec_to_sparse, viadd

ONE = Fraction(1)


class Cochain:
    """Linear map C^(x n) -> C stored per input basis tuple."""

    __slots__ = ("arity", "dim", "entries")

    def __init__(self, arity: int, dim: int, entries=None):
        self.arity = arity
        self.dim = dim
        self.entries: dict[tuple[int, ...], Vec] = {}
        if entries:
            for tup, vec in dict(entries).items():
                clean = {k: c for k, c in vec.items() if c}
                if clean:
                    self.entries[tup] = clean

    def apply(self, tup: tuple[int, ...]) -> Vec:
        return self.entries.get(tup, {})

    def apply_multi(self, slots) -> Vec:
        """Multilinear evaluation on a tuple of element vectors."""
        terms = [((), ONE)]
        for slot in slots:
            nxt = []
            for tup, c in terms:
                for (k,), x in slot.items():
                    nxt.append((tup + (k,), c * x))
            terms = nxt
        out: Vec = {}
        for tup, c in terms:
            viadd(out, self.entries.get(tup, {}), c)
        return out

    def to_matrix(self) -> SparseMat:
        cols = []
        for tup in product(range(self.dim), repeat=self.arity):
            cols.append(vec_to_sparse(self.entries.get(tup, {}), self.dim, 1))
        return SparseMat.from_columns(self.dim, cols)

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "Cochain":
        return Cochain(
            self.arity,
            self.dim,
            {tup: {k: c * x for k, x in vec.items()} for tup, vec in self.entries.items()},
        )

    def add(self, other: "Cochain") -> "Cochain":
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise ValueError("cochain shape mismatch")
        out = {tup: dict(vec) for tup, vec in self.entries.items()}
        for tup, vec in other.entries.items():
            viadd(out.setdefault(tup, {}), vec)
        return Cochain(self.arity, self.dim, out)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and (self.arity, self.dim) == (other.arity, other.dim)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Cochain(arity={self.arity}, dim={self.dim}, support={len(self.entries)})"


def _require_cocommutative(r: RackBialgebra) -> None:
    if not check_cocommutative(r.coalgebra):
        raise StructureError("the deformation complex needs a cocommutative coalgebra")


def mu_tuple(r: RackBialgebra, tup: tuple[int, ...]) -> Vec:
    """mu^n(e_tup): left-nested fold of the shelf product."""
    key = ("mu", tup)
    if key not in r._cache:
        v = unit_vec(tup[0])
        for k in tup[1:]:
            v = r.shelf(v, unit_vec(k))
        r._cache[key] = v
    return r._cache[key]


def mu_n(r: RackBialgebra, n: int) -> SparseMat:
    """Matrix of mu^n: C^(x n) -> C (mu^1 = id)."""
    if n < 1:
        raise StructureError("mu^n needs n >= 1")
    guard_ambient(r.dim**n, "iterated shelf product")
    cols = [
        vec_to_sparse(mu_tuple(r, tup), r.dim, 1)
        for tup in product(range(r.dim), repeat=n)
    ]
    return SparseMat.from_columns(r.dim, cols)


def coderivation_defect(r: RackBialgebra, omega: Cochain) -> dict:
    """Delta o w - (w (x) mu^n + mu^n (x) w) o Delta_{C^(x n)} per basis tuple.

    Empty dict means w is a coderivation along mu^n.
    """
    c = r.coalgebra
    n = omega.arity
    defect: dict = {}
    for tup in product(range(c.dim), repeat=n):
        acc: Vec = dict(c.delta(omega.apply(tup)))
        for (left, right), cc in c.delta_tensor(tup).items():
            wl = omega.apply(left)
            mr = mu_tuple(r, right)
            for (a,), x in wl.items():
                for (m,), y in mr.items():
                    viadd(acc, {(a, m): x * y}, -cc)
            ml = mu_tuple(r, left)
            wr = omega.apply(right)
            for (m,), y in ml.items():
                for (a,), x in wr.items():
                    viadd(acc, {(m, a): y * x}, -cc)
        if acc:
            defect[tup] = acc
    return defect


def is_coderivation(r: RackBialgebra, omega: Cochain) -> bool:
    return not coderivation_defect(r, omega)


def coderivation_space(r: RackBialgebra, n: int) -> list[Cochain]:
    """Basis of Coder(C^(x n), C, mu^n), solved exactly."""
    _require_cocommutative(r)
    if n < 1:
        raise StructureError("coderivation space needs n >= 1")
    dim = r.dim
    guard_ambient(dim ** (n + 1), "coderivation space")
    c = r.coalgebra
    tuples = list(product(range(dim), repeat=n))
    tpos = {tup: i for i, tup in enumerate(tuples)}
    ncols = dim ** n * dim

    def col(a: int, beta: tuple[int, ...]) -> int:
        return tpos[beta] * dim + a

    rows: dict[int, dict[int, Fraction]] = {}

    def put(gamma, p, q, column, value):
        row = (tpos[gamma] * dim + p) * dim + q
        tgt = rows.setdefault(row, {})
        w = tgt.get(column, 0) + value
        if w:
            tgt[column] = w
        else:
            tgt.pop(column, None)

    for gamma in tuples:
        for a in range(dim):
            for (p, q), w in c.comul[a].items():
                put(gamma, p, q, col(a, gamma), w)
        for (left, right), cc in c.delta_tensor(gamma).items():
            for (m,), y in mu_tuple(r, right).items():
                for a in range(dim):
                    put(gamma, a, m, col(a, left), -cc * y)
            for (m,), y in mu_tuple(r, left).items():
                for a in range(dim):
                    put(gamma, m, a, col(a, right), -cc * y)

    mat = SparseMat(dim ** n * dim * dim, ncols, rows)
    basis = []
    for vec in kernel_basis(mat):
        entries: dict[tuple[int, ...], Vec] = {}
        for idx, v in vec.entries.items():
            beta = tuples[idx // dim]
            a = idx % dim
            entries.setdefault(beta, {})[(a,)] = v
        basis.append(Cochain(n, dim, entries))
    return basis


# -- differential ------------------------------------------------------------


def _expand_legs(c: FinCoalgebra, indices) -> list[tuple[tuple, tuple, object]]:
    """All joint two-leg Sweedler splittings of the given basis indices."""
    terms = [((), (), ONE)]
    for k in indices:
        nxt = []
        for first, second, coeff in terms:
            for (p, q), w in c.comul[k].items():
                nxt.append((first + (p,), second + (q,), coeff * w))
        terms = nxt
    return terms


def apply_differential(r: RackBialgebra, omega: Cochain) -> Cochain:
    """Evaluate the degree-n differential on a coderivation-style cochain."""
    c = r.coalgebra
    n = omega.arity
    dim = r.dim
    guard_ambient(dim ** (n + 1), "deformation differential")
    out: dict[tuple[int, ...], Vec] = {}
    for tup in product(range(dim), repeat=n + 1):
        acc: Vec = {}
        for i in range(1, n + 1):
            sign = ONE if i % 2 == 1 else -ONE
            # d_{i,1}: remove r_i into the shelf argument
            for first, second, coeff in _expand_legs(c, tup[i:]):
                wval = omega.apply(tup[: i - 1] + first)
                if not wval:
                    continue
                mval = mu_tuple(r, (tup[i - 1],) + second)
                if not mval:
                    continue
                viadd(acc, r.shelf(wval, mval), sign * coeff)
            # d_{i,0}: distribute r_i over the preceding arguments
            j = i
            if j == 1:
                if c.counit[tup[0]]:
                    viadd(acc, omega.apply(tup[1:]), -sign * c.counit[tup[0]])
            else:
                for legs, coeff in c.sweedler(tup[j - 1], j - 1).items():
                    slots = [
                        r.shelf_basis(tup[t], legs[t]) for t in range(j - 1)
                    ]
                    tail = tup[j:]
                    val = omega.apply_multi(
                        slots + [unit_vec(k) for k in tail]
                    )
                    viadd(acc, val, -sign * coeff)
        # closing term: r_1 feeds mu^n, r_2 feeds the cochain; the plus
        # sign in every degree is forced by d o d = 0 on coderivations
        for first, second, coeff in _expand_legs(c, tup[2:]):
            mval = mu_tuple(r, (tup[0],) + first)
            if not mval:
                continue
            wval = omega.apply((tup[1],) + second)
            if not wval:
                continue
            viadd(acc, r.shelf(mval, wval), coeff)
        if acc:
            out[tup] = acc
    return Cochain(n + 1, dim, out)


def differential(r: RackBialgebra, n: int, basis_n=None, basis_np1=None):
    """Matrix of d^n in the coderivation bases; images re-verified to be
    coderivations (a failure is a hard error, not a report)."""
    _require_cocommutative(r)
    if basis_n is None:
        basis_n = coderivation_space(r, n)
    if basis_np1 is None:
        basis_np1 = coderivation_space(r, n + 1)
    images = [apply_differential(r, w) for w in basis_n]
    for w, dw in zip(basis_n, images):
        if coderivation_defect(r, dw):
            raise RackkitError(
                f"differential image escapes the coderivation space in degree {n}"
            )
    dim = r.dim
    cols = [
        vec_to_sparse(
            {tup + k: v for tup, vec in b.entries.items() for k, v in vec.items()},
            dim,
            n + 2,
        )
        for b in basis_np1
    ]
    rows: dict[int, dict[int, Fraction]] = {}
    for jcol, dw in enumerate(images):
        target = vec_to_sparse(
            {tup + k: v for tup, vec in dw.entries.items() for k, v in vec.items()},
            dim,
            n + 2,
        )
        coords = solve_coordinates(cols, target)
        if coords is None:
            raise RackkitError("differential image not in the coderivation span")
        for irow, v in enumerate(coords):
            if v:
                rows.setdefault(irow, {})[jcol] = v
    return SparseMat(len(basis_np1), len(basis_n), rows), images


def d_squared_zero(r: RackBialgebra, n: int) -> bool:
    """d^n o d^(n-1) = 0 as an exact matrix product (n >= 2)."""
    if n < 2:
        raise StructureError("d squared needs n >= 2")
    b1 = coderivation_space(r, n - 1)
    b2 = coderivation_space(r, n)
    b3 = coderivation_space(r, n + 1)
    d_low, _ = differential(r, n - 1, b1, b2)
    d_high, _ = differential(r, n, b2, b3)
    return d_high.mul(d_low).is_zero()


def betti(r: RackBialgebra, n: int) -> int:
    """dim ker d^n minus rank d^(n-1) on the coderivation spaces."""
    b_n = coderivation_space(r, n)
    b_np1 = coderivation_space(r, n + 1)
    d_n, _ = differential(r, n, b_n, b_np1)
    _, _, rank_n = rref(d_n)
    ker_dim = len(b_n) - rank_n
    if n == 1:
        return ker_dim
    b_prev = coderivation_space(r, n - 1)
    d_prev, _ = differential(r, n - 1, b_prev, b_n)
    _, _, rank_prev = rref(d_prev)
    return ker_dim - rank_prev


@dataclass
class ComplexReport:
    """Coderivation dimensions, differentials and cohomology in low degrees."""

    max_n: int
    dims: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    d_squared: dict = field(default_factory=dict)
    betti: dict | None = None


def deformation_complex_report(r, max_n: int, with_betti=False) -> ComplexReport:
    _require_cocommutative(r)
    rep = ComplexReport(max_n)
    bases = {n: coderivation_space(r, n) for n in range(1, max_n + 2)}
    rep.dims = {n: len(b) for n, b in bases.items()}
    for n in range(1, max_n + 1):
        d, _ = differential(r, n, bases[n], bases[n + 1])
        rep.differentials[n] = d
        rep.ranks[n] = rref(d)[2]
    for n in range(2, max_n + 1):
        rep.d_squared[n] = rep.differentials[n].mul(rep.differentials[n - 1]).is_zero()
    if with_betti:
        rep.betti = {}
        for n in range(1, max_n + 1):
            ker = rep.dims[n] - rep.ranks[n]
            rep.betti[n] = ker if n == 1 else ker - rep.ranks[n - 1]
    return rep


def special_cocycle_report(r: RackBialgebra, omega: Cochain) -> dict:
    """A cochain with dw = 0 that is also a coderivation is a special cocycle."""
    coder = is_coderivation(r, omega)
    closed = apply_differential(r, omega).is_zero()
    return {"coderivation": coder, "closed": closed, "special_cocycle": coder and closed}


# -- Loday complex of a right Leibniz algebra --------------------------------


def apply_loday(l: LeibnizAlgebra, f: Cochain) -> Cochain:
    """Differential of the bracket complex with adjoint coefficients.

    The three families mirror the deformation differential restricted to
    extension-by-zero cochains: [f(..,r_i removed,..), r_i], bracket
    insertion into the first j-1 slots, and [r_1, f(r_2,..)].
    """
    n = f.arity
    dim = l.dim
    out: dict[tuple[int, ...], Vec] = {}
    for tup in product(range(dim), repeat=n + 1):
        acc: Vec = {}
        for i in range(1, n + 1):
            sign = ONE if i % 2 == 1 else -ONE
            args = tup[: i - 1] + tup[i:]
            viadd(acc, l.br(f.apply(args), unit_vec(tup[i - 1])), sign)
            for t in range(i - 1):
                slots = [unit_vec(k) for k in tup[: i - 1]] + [
                    unit_vec(k) for k in tup[i:]
                ]
                slots[t] = l.br_basis(tup[t], tup[i - 1])
                viadd(acc, f.apply_multi(slots), -sign)
        # closing term with the same fixed plus sign as the full complex
        viadd(acc, l.br(unit_vec(tup[0]), f.apply(tup[1:])), ONE)
        if acc:
            out[tup] = acc
    return Cochain(n + 1, dim, out)


def hom_basis(dim: int, arity: int) -> list[Cochain]:
    """Elementary cochains of Hom(h^(x n), h)."""
    out = []
    for tup in product(range(dim), repeat=arity):
        for a in range(dim):
            out.append(Cochain(arity, dim, {tup: {(a,): ONE}}))
    return out


def loday_complex(l: LeibnizAlgebra, n: int) -> SparseMat:
    """Matrix of the bracket differential on the full Hom spaces."""
    dim = l.dim
    basis = hom_basis(dim, n)
    rows: dict[int, dict[int, Fraction]] = {}
    for jcol, f in enumerate(basis):
        df = apply_loday(l, f)
        for tup, vec in df.entries.items():
            for (a,), v in vec.items():
                row = flatten(tup, dim) * dim + a
                rows.setdefault(row, {})[jcol] = v
    return SparseMat(dim ** (n + 1) * dim, len(basis), rows)


def embed_leibniz(l: LeibnizAlgebra, f: Cochain) -> Cochain:
    """Extension by zero of a bracket cochain to C = k1 + h.

    Any slot holding the unit sends the value to zero; h-slots shift by
    one index to account for the adjoined unit.
    """
    entries: dict[tuple[int, ...], Vec] = {}
    for tup, vec in f.entries.items():
        ctup = tuple(k + 1 for k in tup)
        entries[ctup] = {(a + 1,): v for (a,), v in vec.items()}
    return Cochain(f.arity, l.dim + 1, entries)


def check_embedding_chain_map(l: LeibnizAlgebra, n: int) -> bool:
    """d_C(embed f) = embed(d_bracket f) on a basis of Hom(h^(x n), h)."""
    from .rack import from_leibniz

    r = from_leibniz(l)
    for f in hom_basis(l.dim, n):
        lhs = apply_differential(r, embed_leibniz(l, f))
        rhs = embed_leibniz(l, apply_loday(l, f))
        if lhs != rhs:
            return False
    return True


# -- first-order deformations over the dual numbers ---------------------------


@dataclass
class DeformationReport:
    report: dict
    deformed: RackBialgebra

    @property
    def passed(self) -> bool:
        return all(res.ok for res in self.report.values())


def first_order_deformation_check(
    r0: RackBialgebra, dcomul=None, drack=None
) -> DeformationReport:
    """Check Delta + eps*dComul, <| + eps*dRack against all axioms with
    eps^2 = 0.

    dcomul maps a basis index to coproduct corrections {(i, j): c};
    drack maps a basis pair to product corrections {(k,): c}.
    """
    c0 = r0.coalgebra
    dcomul = dcomul or {}
    drack = drack or {}
    comul = []
    for k in range(c0.dim):
        ent = {key: lift_dual(v) for key, v in c0.comul[k].items()}
        for key, v in dcomul.get(k, {}).items():
            w = ent.get(key, DualScalar(0)) + DualScalar(0, v)
            if w:
                ent[key] = w
            else:
                ent.pop(key, None)
        comul.append(ent)
    counit = tuple(lift_dual(v) for v in c0.counit)
    coalg = FinCoalgebra(c0.labels, comul, counit, unit_index=c0.unit_index)
    rack = {}
    for key, vec in r0.rack.items():
        rack[key] = {k: lift_dual(v) for k, v in vec.items()}
    for key, vec in drack.items():
        tgt = rack.setdefault(key, {})
        for k, v in vec.items():
            w = tgt.get(k, DualScalar(0)) + DualScalar(0, v)
            if w:
                tgt[k] = w
            else:
                tgt.pop(k, None)
    deformed = RackBialgebra(coalg, rack)

    ok, bad = check_coassociative(coalg)
    coassoc = CheckResult(ok, coalg.dim, witness=None if ok else (coalg.labels[bad],))
    ok, bad = check_counit(coalg)
    counit_law = CheckResult(ok, coalg.dim, witness=None if ok else (coalg.labels[bad],))
    unit_gl = CheckResult(check_unit_grouplike(coalg), 1)
    report = {
        "coassoc": coassoc,
        "counit_law": counit_law,
        "unit_grouplike": unit_gl,
    }
    report.update(check_rack_bialgebra(deformed))
    return DeformationReport(report, deformed)
