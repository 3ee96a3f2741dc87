"""Dictionary-backed tensors keyed by index tuples.

An element of C^(tensor n) is a dict mapping n-tuples of basis indices to
nonzero scalars.  The arithmetic is ring-agnostic: values may be Fraction
or DualScalar, so the same axiom checkers run over the rationals and over
first-order deformations.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import SparseMat, SparseVec

Vec = dict  # dict[tuple[int, ...], scalar]

ONE = Fraction(1)


def unit_vec(i: int) -> Vec:
    return {(i,): ONE}


def vscale(v: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def viadd(acc: Vec, v: Vec, c=ONE) -> Vec:
    """acc += c * v, in place, dropping cancellations."""
    for k, x in v.items():
        w = acc.get(k, 0) + c * x
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)
    return acc


def vadd(a: Vec, b: Vec) -> Vec:
    return viadd(dict(a), b)


def vsub(a: Vec, b: Vec) -> Vec:
    return viadd(dict(a), b, -ONE)


def vtensor(a: Vec, b: Vec) -> Vec:
    out: Vec = {}
    for ka, xa in a.items():
        for kb, xb in b.items():
            c = xa * xb
            if c:
                out[ka + kb] = c
    return out


def veq(a: Vec, b: Vec) -> bool:
    if len(a) != len(b):
        return False
    for k, x in a.items():
        if k not in b or b[k] != x:
            return False
    return True


def vflip(v: Vec) -> Vec:
    """Swap the two halves of each (even-length) key."""
    out: Vec = {}
    for k, x in v.items():
        h = len(k) // 2
        out[k[h:] + k[:h]] = x
    return out


def flatten(key: tuple[int, ...], dim: int) -> int:
    idx = 0
    for i in key:
        idx = idx * dim + i
    return idx


def unflatten(idx: int, dim: int, arity: int) -> tuple[int, ...]:
    out = []
    for _ in range(arity):
        out.append(idx % dim)
        idx //= dim
    return tuple(reversed(out))


def vec_to_sparse(v: Vec, dim: int, arity: int) -> SparseVec:
    return SparseVec(dim**arity, {flatten(k, dim): x for k, x in v.items()})


def columns_to_mat(columns: list[Vec], dim: int, arity: int) -> SparseMat:
    """Matrix whose j-th column is columns[j] flattened in C^(tensor arity)."""
    return SparseMat.from_columns(
        dim**arity, [vec_to_sparse(c, dim, arity) for c in columns]
    )
