"""Degree-truncated universal enveloping algebra of a rack bialgebra.

U(C) is the tensor algebra on ker eps modulo the ideal J generated by

    i(y_(1)).i(x <| y_(2)) - i(x).i(y),    x, y in C.

The truncation J /\ F_d is obtained by saturation: span every a.g.b whose
top word degree fits inside d + slack, echelonise with columns ordered by
degree descending, and read off the rows supported in F_d.  Saturation is
self-auditing: the build also inserts the a.g.b products of the next
slack level and flags whether any dimension moved.  Leading-term
cancellations (the usual Poincare-Birkhoff-Witt subtlety) therefore show
up as a cleared stabilization flag rather than silently wrong dimensions.

Normal forms are the non-pivot words; the quotient coproduct exists when
reducing both tensor legs kills the coproduct of every ideal element,
which is checked rather than assumed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .coalgebra import reduce as reduce_coalgebra
from .errors import StructureError, TruncationOverflow
from .hopf import FilteredBialgebra
from .linalg import SparseMat, SparseVec, guard_ambient, rref
from .rack import CheckResult, RackBialgebra
from .scalars import ZERO
from .tensors import Vec, unit_vec, viadd

ONE = Fraction(1)


def _word_key(w: tuple[int, ...]):
    # degree descending, then lexicographic: row pivots are top words and
    # row tails stay inside the pivot's filtration level
    return (-len(w), w)


class _Reduced:
    """The source rack restricted to ker eps, in letter coordinates."""

    def __init__(self, r: RackBialgebra):
        c = r.coalgebra
        u = c.unit_index
        self.rack = r
        self.unit = u
        self.letters = tuple(i for i in range(c.dim) if i != u)
        self.pos = {ci: li for li, ci in enumerate(self.letters)}
        self.m = len(self.letters)
        self.comul = reduce_coalgebra(c).comul  # letter-indexed
        self.labels = tuple(c.labels[i] for i in self.letters)
        self._shelf: dict[tuple[int, int], Vec] = {}
        eps = c.counit
        for a in range(self.m):
            fa = {(self.letters[a],): ONE}
            ea = eps[self.letters[a]]
            if ea:
                viadd(fa, {(u,): ONE}, -ea)
            for b in range(self.m):
                fb = {(self.letters[b],): ONE}
                eb = eps[self.letters[b]]
                if eb:
                    viadd(fb, {(u,): ONE}, -eb)
                w = r.shelf(fa, fb)
                if c.eps(w):
                    raise StructureError("shelf product does not respect ker eps")
                out = {
                    (self.pos[k],): v for (k,), v in w.items() if k != u
                }
                if out:
                    self._shelf[(a, b)] = out

    def shelf(self, a: int, b: int) -> Vec:
        return self._shelf.get((a, b), {})


def generator_instances(r: RackBialgebra) -> dict[tuple[int, int], dict]:
    """Ideal generators per ordered letter pair, as tensor-algebra elements.

    The Sweedler sum runs over all of C; the unit legs contribute the
    single-letter term i(x <| y) and the word y.x.  Instances that expand
    to zero are dropped.
    """
    red = _Reduced(r)
    out = {}
    for a in range(red.m):
        for b in range(red.m):
            g: dict = {}
            for (s,), v in red.shelf(a, b).items():
                viadd(g, {(s,): v})
            viadd(g, {(b, a): ONE})
            for (p, q), w in red.comul[b].items():
                for (s,), v in red.shelf(a, q).items():
                    viadd(g, {(p, s): w * v})
            viadd(g, {(a, b): ONE}, -ONE)
            if g:
                out[(a, b)] = g
    return out


class _Echelon:
    """Forward echelon over word coordinates, pivots by _word_key."""

    def __init__(self):
        self.rows: dict[tuple, dict] = {}

    def insert(self, vec: dict) -> bool:
        vec = dict(vec)
        while vec:
            lead = min(vec, key=_word_key)
            row = self.rows.get(lead)
            if row is None:
                inv = 1 / vec[lead]
                self.rows[lead] = {w: inv * v for w, v in vec.items()}
                return True
            c = vec[lead]
            for w, v in row.items():
                nv = vec.get(w, ZERO) - c * v
                if nv:
                    vec[w] = nv
                else:
                    vec.pop(w, None)
        return False

    def pivot_lengths(self):
        return sorted(len(p) for p in self.rows)


def _back_reduce(rows: dict[tuple, dict]) -> dict[tuple, dict]:
    """Full reduction: clear every pivot from every other row's tail."""
    pivots = sorted(rows, key=_word_key)
    reduced: dict[tuple, dict] = {}
    for p in reversed(pivots):
        row = dict(rows[p])
        changed = True
        while changed:
            changed = False
            for w in [w for w in row if w != p and w in reduced]:
                c = row[w]
                for t, v in reduced[w].items():
                    nv = row.get(t, ZERO) - c * v
                    if nv:
                        row[t] = nv
                    else:
                        row.pop(t, None)
                changed = True
        reduced[p] = row
    return reduced


class TruncatedEnveloping:
    """U(C) truncated at a word degree, with its quotient structure."""

    def __init__(self, source, degree, slack, reduced, jrows, dims, dims_next):
        self.source = source
        self.degree = degree
        self.slack = slack
        self.reduced = reduced
        self.jrows = jrows  # pivot word -> fully reduced row, pivots in F_d
        self.dims = dims
        self.dims_next = dims_next
        self.stabilized = dims == dims_next

        m = reduced.m
        words = []
        for l in range(degree + 1):
            words.extend(product(range(m), repeat=l))
        self.words = tuple(words)
        self.nf_words = tuple(
            w for w in self.words if w not in jrows
        )
        self.nf_index = {w: i for i, w in enumerate(self.nf_words)}
        self._build_quotient()

    # -- reduction ----------------------------------------------------------

    def reduce_telt(self, telt: dict) -> Vec:
        """Normal form of a tensor-algebra element inside F_d."""
        work = dict(telt)
        for w in work:
            if len(w) > self.degree:
                raise TruncationOverflow(
                    f"word of length {len(w)} exceeds degree {self.degree}"
                )
        while True:
            hits = [w for w in work if w in self.jrows]
            if not hits:
                break
            w = min(hits, key=_word_key)
            c = work.pop(w)
            for t, v in self.jrows[w].items():
                if t == w:
                    continue
                nv = work.get(t, ZERO) - c * v
                if nv:
                    work[t] = nv
                else:
                    work.pop(t, None)
        return {(self.nf_index[w],): v for w, v in work.items()}

    def _delta_letter(self, a: int) -> dict:
        ent = {((), (a,)): ONE, ((a,), ()): ONE}
        for (p, q), w in self.reduced.comul[a].items():
            key = ((p,), (q,))
            ent[key] = ent.get(key, ZERO) + w
        return ent

    def delta_T(self, telt: dict) -> dict:
        """Coproduct in the tensor bialgebra, as {(word, word): coeff}."""
        out: dict = {}
        for word, c in telt.items():
            terms = {((), ()): c}
            for a in word:
                nxt: dict = {}
                dl = self._delta_letter(a)
                for (l1, r1), x in terms.items():
                    for (l2, r2), y in dl.items():
                        key = (l1 + l2, r1 + r2)
                        w = nxt.get(key, ZERO) + x * y
                        if w:
                            nxt[key] = w
                        else:
                            nxt.pop(key, None)
                terms = nxt
            for key, x in terms.items():
                w = out.get(key, ZERO) + x
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return out

    def reduce_tensor(self, t2: dict) -> dict:
        """Apply normal forms on both legs of {(word, word): coeff}."""
        out: dict = {}
        for (w1, w2), c in t2.items():
            n1 = self.reduce_telt({w1: ONE})
            n2 = self.reduce_telt({w2: ONE})
            for (i,), x in n1.items():
                for (j,), y in n2.items():
                    key = (i, j)
                    w = out.get(key, ZERO) + c * x * y
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return out

    # -- quotient structure ---------------------------------------------------

    def _build_quotient(self):
        red = self.reduced
        src_labels = red.labels
        labels = [
            ".".join(src_labels[a] for a in w) if w else "1" for w in self.nf_words
        ]
        degrees = [len(w) for w in self.nf_words]

        prod: dict[tuple[int, int], Vec] = {}
        for i, w1 in enumerate(self.nf_words):
            for j, w2 in enumerate(self.nf_words):
                if len(w1) + len(w2) <= self.degree:
                    prod[(i, j)] = self.reduce_telt({w1 + w2: ONE})

        # relation instances must die in the quotient
        self.instances = generator_instances(self.source)
        for (a, b), g in self.instances.items():
            if max(len(w) for w in g) <= self.degree:
                if self.reduce_telt(g):
                    raise StructureError(
                        "ideal generator instance survives its own quotient "
                        f"at letters ({src_labels[a]}, {src_labels[b]})"
                    )

        # the coproduct descends iff both-leg reduction kills Delta_T of the
        # ideal: the generator instances and every truncated-ideal row
        coideal_ok = True
        for g in self.instances.values():
            if max(len(w) for w in g) <= self.degree:
                if self.reduce_tensor(self.delta_T(g)):
                    coideal_ok = False
                    break
        if coideal_ok:
            for p, row in self.jrows.items():
                if self.reduce_tensor(self.delta_T(row)):
                    coideal_ok = False
                    break
        self.coideal_ok = coideal_ok

        comul = None
        if coideal_ok:
            comul = []
            for w in self.nf_words:
                comul.append(self.reduce_tensor(self.delta_T({w: ONE})))
        counit = tuple(ONE if not w else ZERO for w in self.nf_words)
        for row in self.jrows.values():
            if () in row:
                raise StructureError("ideal meets the scalars; counit undefined")

        gens = [self.reduce_telt({(a,): ONE}) for a in range(red.m)]
        self.bialgebra = FilteredBialgebra(
            labels,
            degrees,
            self.degree,
            prod,
            comul,
            counit,
            unit_index=self.nf_index[()],
            generators=gens,
        )

        c = self.source.coalgebra
        eps = c.counit
        qm = []
        for k in range(c.dim):
            if k == c.unit_index:
                qm.append(self.reduce_telt({(): ONE}))
            else:
                telt = {(red.pos[k],): ONE}
                if eps[k]:
                    telt[()] = eps[k]
                qm.append(self.reduce_telt(telt))
        self.qmatrix = qm

    def q(self, v: Vec) -> Vec:
        out: Vec = {}
        for (k,), c in v.items():
            viadd(out, self.qmatrix[k], c)
        return out


def build_enveloping(r: RackBialgebra, degree: int, slack: int) -> TruncatedEnveloping:
    """Compute U(C) through filtration level `degree` at the given slack.

    The echelon is filled through slack+1 in one pass; the dimension
    snapshot taken at the slack mark gives the returned object, while
    the final dimensions feed the stabilization flag.
    """
    if degree < 0 or slack < 0:
        raise StructureError("degree and slack must be nonnegative")
    red = _Reduced(r)
    m = red.m
    guard_ambient(sum(m**l for l in range(degree + slack + 2)), "enveloping build")
    instances = generator_instances(r)

    words_by_len = {l: list(product(range(m), repeat=l)) for l in range(degree + slack + 2)}

    batches: dict[int, list[dict]] = {}
    for g in instances.values():
        top = max(len(w) for w in g)
        for la in range(degree + slack + 2 - top):
            for lb in range(degree + slack + 2 - top - la):
                total = la + top + lb
                if total > degree + slack + 1:
                    continue
                for wa in words_by_len[la]:
                    for wb in words_by_len[lb]:
                        batches.setdefault(total, []).append(
                            {wa + w + wb: c for w, c in g.items()}
                        )

    ech = _Echelon()
    dims = None
    for total in sorted(batches):
        if total > degree + slack and dims is None:
            dims = _udims(ech, m, degree)
            snapshot = dict(ech.rows)
        for vec in batches[total]:
            ech.insert(vec)
    if dims is None:
        dims = _udims(ech, m, degree)
        snapshot = dict(ech.rows)
    dims_next = _udims(ech, m, degree)

    jrows = _back_reduce(
        {p: row for p, row in snapshot.items() if len(p) <= degree}
    )
    return TruncatedEnveloping(r, degree, slack, red, jrows, dims, dims_next)


def _udims(ech: _Echelon, m: int, degree: int) -> list[int]:
    counts = [0] * (degree + 1)
    for p in ech.rows:
        if len(p) <= degree:
            counts[len(p)] += 1
    out = []
    total_words = 0
    total_pivots = 0
    for l in range(degree + 1):
        total_words += m**l
        total_pivots += counts[l]
        out.append(total_words - total_pivots)
    return out


def check_coideal(u: TruncatedEnveloping) -> bool:
    """Whether Delta_T of the truncated ideal reduces to zero on both legs."""
    return u.coideal_ok


def hilbert_series(u: TruncatedEnveloping) -> list[int]:
    """[dim F_0 U, ..., dim F_degree U]; provisional unless stabilized."""
    return list(u.dims)


# -- the action of U(C) on C ---------------------------------------------------


def act_word(r: RackBialgebra, k: int, word, letters) -> Vec:
    """Right action of a letter word on e_k by iterated shelf products."""
    c = r.coalgebra
    u = c.unit_index
    v: Vec = unit_vec(k)
    for a in word:
        ca = letters[a]
        fa: Vec = {(ca,): ONE}
        ea = c.counit[ca]
        if ea:
            viadd(fa, {(u,): ONE}, -ea)
        v = r.shelf(v, fa)
        if not v:
            break
    return v


def act_telt(r: RackBialgebra, k: int, telt: dict, letters) -> Vec:
    out: Vec = {}
    for word, coeff in telt.items():
        viadd(out, act_word(r, k, word, letters), coeff)
    return out


class UAction:
    """The induced right action of the quotient on C, as matrices per
    normal-form basis word."""

    def __init__(self, u: TruncatedEnveloping):
        r = u.source
        letters = u.reduced.letters
        # every ideal generator instance must annihilate C
        for (a, b), g in u.instances.items():
            for k in range(r.dim):
                if act_telt(r, k, g, letters):
                    raise StructureError(
                        "ideal generator acts nonzero on "
                        f"{r.labels[k]} at letters "
                        f"({u.reduced.labels[a]}, {u.reduced.labels[b]})"
                    )
        for row in u.jrows.values():
            for k in range(r.dim):
                if act_telt(r, k, row, letters):
                    raise StructureError("truncated ideal row acts nonzero on C")
        self.enveloping = u
        self.matrices = [
            [act_word(r, k, w, letters) for k in range(r.dim)] for w in u.nf_words
        ]

    def act(self, cvec: Vec, uvec: Vec) -> Vec:
        out: Vec = {}
        for (j,), y in uvec.items():
            for (k,), x in cvec.items():
                viadd(out, self.matrices[j][k], x * y)
        return out


def action_on_C(u: TruncatedEnveloping) -> UAction:
    return UAction(u)


# -- universal morphism ---------------------------------------------------------


class UniversalMorphismReport:
    def __init__(self, values, report, kernel_dims):
        self.values = values  # H-vector per normal-form basis word
        self.report = report
        self.kernel_dims = kernel_dims

    @property
    def ok(self) -> bool:
        return all(res.ok for res in self.report.values())


def universal_morphism(u: TruncatedEnveloping, target) -> UniversalMorphismReport:
    """Bialgebra morphism U(C) -> H sending a word to the product of the
    q_H-images of its letters.

    `target` is a Yetter-Drinfel'd rack structure on the same rack
    bialgebra; it is re-verified first.  Identity checks use strict
    products (skipping and counting instances the truncation cannot
    represent); the kernel dimensions are those of the map followed by
    the per-level truncation of H.
    """
    from .ydrack import check_yd_rack

    r = u.source
    if target.rack is not r and target.rack.rack != r.rack:
        raise StructureError("target structure lives on a different rack bialgebra")
    pre = check_yd_rack(target)
    if not all(res.ok for res in pre.values()):
        bad = [k for k, res in pre.items() if not res.ok]
        raise StructureError(f"target fails the Yetter-Drinfel'd axioms: {bad}")

    h = target.carrier
    letters = u.reduced.letters
    c = r.coalgebra
    qh_letter = []
    for ci in letters:
        vec = dict(target.qmap[ci])
        eps = c.counit[ci]
        if eps:
            viadd(vec, target.qmap[c.unit_index], -eps)
        qh_letter.append(vec)

    def u_word(word, strict=False) -> Vec:
        return h.mul_many((qh_letter[a] for a in word), strict=strict)

    values = [u_word(w) for w in u.nf_words]
    strict_values = []
    for w in u.nf_words:
        try:
            strict_values.append(u_word(w, strict=True))
        except TruncationOverflow:
            strict_values.append(None)

    def u_telt(telt: dict) -> Vec:
        out: Vec = {}
        for word, coeff in telt.items():
            viadd(out, u_word(word), coeff)
        return out

    vanishes = CheckResult()
    for g in u.instances.values():
        if max(len(w) for w in g) > u.degree:
            vanishes.skipped += 1
            continue
        vanishes.checked += 1
        if u_telt(g):
            vanishes.ok = False
            break
    if vanishes.ok:
        for row in u.jrows.values():
            vanishes.checked += 1
            if u_telt(row):
                vanishes.ok = False
                break

    section = CheckResult()
    for k in range(c.dim):
        got: Vec = {}
        for (i,), x in u.qmatrix[k].items():
            viadd(got, values[i], x)
        section.checked += 1
        if got != dict(target.qmap[k]):
            section.ok = False
            section.witness = (c.labels[k],)
            break

    mult = CheckResult()
    for (i, j), vec in u.bialgebra.prod.items():
        if strict_values[i] is None or strict_values[j] is None:
            mult.skipped += 1
            continue
        try:
            lhs = h.mul(strict_values[i], strict_values[j], strict=True)
        except TruncationOverflow:
            mult.skipped += 1
            continue
        rhs: Vec = {}
        for (k,), x in vec.items():
            viadd(rhs, values[k], x)
        mult.checked += 1
        if lhs != rhs:
            mult.ok = False
            mult.witness = (u.bialgebra.labels[i], u.bialgebra.labels[j])
            break

    report = {"vanishes_on_ideal": vanishes, "section": section, "multiplicative": mult}

    if u.coideal_ok:
        comult = CheckResult()
        hc = h.coalgebra()
        for i, w in enumerate(u.nf_words):
            if strict_values[i] is None:
                comult.skipped += 1
                continue
            lhs = hc.delta(strict_values[i])
            rhs: Vec = {}
            skip = False
            for (p, q), x in u.bialgebra.comul[i].items():
                if strict_values[p] is None or strict_values[q] is None:
                    skip = True
                    break
                for (a,), y in strict_values[p].items():
                    for (b,), z in strict_values[q].items():
                        viadd(rhs, {(a, b): y * z}, x)
            if skip:
                comult.skipped += 1
                continue
            comult.checked += 1
            if lhs != rhs:
                comult.ok = False
                comult.witness = (u.bialgebra.labels[i],)
                break
        report["comultiplicative"] = comult

    action = action_on_C(u)
    equivariance = CheckResult()
    for k in range(c.dim):
        for i in range(len(u.nf_words)):
            lhs = action.matrices[i][k]
            rhs: Vec = {}
            for (hidx,), x in values[i].items():
                viadd(rhs, target.action[hidx].get(k, {}), x)
            equivariance.checked += 1
            if lhs != rhs:
                equivariance.ok = False
                equivariance.witness = (c.labels[k], u.bialgebra.labels[i])
                break
        if not equivariance.ok:
            break
    report["equivariance"] = equivariance

    kernel_dims = []
    for level in range(u.degree + 1):
        cols = []
        for i, w in enumerate(u.nf_words):
            if len(w) <= level:
                entries = {
                    k: x for (k,), x in values[i].items() if h.degrees[k] <= level
                }
                cols.append(SparseVec(h.dim, entries))
        mat = SparseMat.from_columns(h.dim, cols)
        _, _, rank = rref(mat)
        kernel_dims.append(len(cols) - rank)

    return UniversalMorphismReport(values, report, kernel_dims)
