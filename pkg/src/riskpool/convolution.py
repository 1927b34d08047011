"""Convolution of set functions under the coupled coin-toss measure.

For functions f, g on the power set of H and a coin vector p,

    (f * g)(S) = sum over pairs (S1, S2) of f(S1) g(S2) mu_S(S1, S2),

where mu_S shares one coin per element of S between the two coordinates and
tosses two independent coins per element outside S.  The two extreme values
recover the classical objects: at S = H the expectation of the product, at
S = {} the product of expectations.

Two routes are provided on purpose.  `convolve` computes the whole table by
eliminating one ground-set element at a time with the exact two-point rule;
`convolve_bruteforce` evaluates the defining double sum for a single S and
exists to cross-check the fast route, never to be replaced by it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .lattice import (
    CoinVector,
    GroundSet,
    SetFunction,
    _subset_weights,
    expectation,
    submasks,
)
from .numerics import Value

MAX_CONVOLVE = 16
MAX_BRUTEFORCE = 10


def _common_ground(f: SetFunction, g: SetFunction, p: CoinVector) -> GroundSet:
    if f.ground != g.ground or f.ground != p.ground:
        raise ValueError("operands live on different ground sets")
    return f.ground


def _contract(fv: list[Value], gv: list[Value], ps: tuple[Value, ...]) -> list[Value]:
    # Eliminate the first remaining element. Writing a for f(T), a1 for
    # f(T + h) and likewise b, b1, the element contributes
    #   h outside S:  ((1-p) a + p a1) * ((1-p) b + p b1)   (two coins)
    #   h inside S:   (1-p) a b + p a1 b1                   (one shared coin)
    # and the recursion applies the rule pointwise over the rest.
    if not ps:
        return [fv[0] * gv[0]]
    ph = ps[0]
    q = 1 - ph
    if len(ps) == 1:
        a, a1 = fv
        b, b1 = gv
        return [(q * a + ph * a1) * (q * b + ph * b1), q * (a * b) + ph * (a1 * b1)]
    f0, f1 = fv[0::2], fv[1::2]
    g0, g1 = gv[0::2], gv[1::2]
    rest = ps[1:]
    favg = [q * x + ph * y for x, y in zip(f0, f1)]
    gavg = [q * x + ph * y for x, y in zip(g0, g1)]
    lower = _contract(favg, gavg, rest)
    c00 = _contract(f0, g0, rest)
    c11 = _contract(f1, g1, rest)
    out: list[Value] = [0] * (2 * len(lower))
    out[0::2] = lower
    out[1::2] = [q * x + ph * y for x, y in zip(c00, c11)]
    return out


def convolve(f: SetFunction, g: SetFunction, p: CoinVector) -> SetFunction:
    """Full table of f * g via element-by-element contraction.

    Exact when all inputs are exact.  Cost grows as 3**n, so the ground set
    is capped at 16 elements.
    """
    ground = _common_ground(f, g, p)
    if ground.n > MAX_CONVOLVE:
        raise ValueError(f"convolve is limited to {MAX_CONVOLVE} elements")
    return SetFunction(ground, _contract(list(f.values), list(g.values), p.p))


def _bruteforce_float(f: SetFunction, g: SetFunction, p: CoinVector, coupled: int) -> float:
    n = f.ground.n
    comp = f.ground.full ^ coupled
    # Dense per-mask weights: ws[m] covers the coupled coins of m (factor 1
    # outside `coupled`), wc[m] the free coins of m.
    ws = np.ones(1)
    wc = np.ones(1)
    for i, ph in enumerate(p.p):
        phf = float(ph)
        if coupled >> i & 1:
            ws = np.concatenate([ws * (1.0 - phf), ws * phf])
            wc = np.concatenate([wc, wc])
        else:
            ws = np.concatenate([ws, ws])
            wc = np.concatenate([wc * (1.0 - phf), wc * phf])
    fa = np.array([float(v) for v in f.values])
    ga = np.array([float(v) for v in g.values])
    s1 = np.arange(1 << n)
    free = np.array(list(submasks(comp)), dtype=np.int64)
    s2 = (s1 & coupled)[:, None] | free[None, :]
    inner = ga[s2] @ wc[free]
    return float(np.dot(fa * ws * wc, inner))


def convolve_bruteforce(f: SetFunction, g: SetFunction, p: CoinVector, coupled: int) -> Value:
    """(f * g)(coupled) by the defining double sum over subset pairs.

    Reference implementation: enumerates every pair in the support of the
    coupled measure and adds f(S1) g(S2) times its probability.  Capped at
    10 elements.
    """
    ground = _common_ground(f, g, p)
    ground.check_mask(coupled)
    if ground.n > MAX_BRUTEFORCE:
        raise ValueError(f"convolve_bruteforce is limited to {MAX_BRUTEFORCE} elements")
    if not (f.exact and g.exact and p.exact):
        return _bruteforce_float(f, g, p, coupled)
    comp = ground.full ^ coupled
    shared = _subset_weights(p, coupled)
    free = _subset_weights(p, comp)
    acc: Value = 0
    for s1 in ground.subsets():
        w1 = shared.get(s1 & coupled)
        if w1 is None:
            continue
        w2 = free.get(s1 & comp)
        if w2 is None:
            continue
        fw = f.values[s1] * w1 * w2
        if fw == 0:
            continue
        base = s1 & coupled
        for r2, wr in free.items():
            acc = acc + fw * g.values[base | r2] * wr
    return acc


def harris_gap(f: SetFunction, g: SetFunction, p: CoinVector) -> Value:
    """E[fg] - E[f] E[g] under the product measure.

    Nonnegative whenever f and g are both increasing.
    """
    _common_ground(f, g, p)
    return expectation(f * g, p) - expectation(f, p) * expectation(g, p)


@dataclass(frozen=True)
class IndexPartition:
    """Partition of the index set {0, ..., m-1} into disjoint blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[:1]))
        object.__setattr__(self, "blocks", canon)
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            for i in block:
                if not isinstance(i, int) or i < 0:
                    raise ValueError(f"invalid index {i!r}")
                if i in seen:
                    raise ValueError(f"index {i} appears in two blocks")
                seen.add(i)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    @classmethod
    def singletons(cls, count: int) -> "IndexPartition":
        return cls([i] for i in range(count))

    @classmethod
    def single_block(cls, count: int) -> "IndexPartition":
        if count == 0:
            return cls(())
        return cls([range(count)])


def refines(fine: IndexPartition, coarse: IndexPartition) -> bool:
    """True when every block of `fine` sits inside one block of `coarse`."""
    if fine.indices != coarse.indices:
        raise ValueError("partitions cover different index sets")
    coarse_sets = [set(b) for b in coarse.blocks]
    return all(any(set(fb) <= cb for cb in coarse_sets) for fb in fine.blocks)


def partition_expectation(
    functions: Sequence[SetFunction], partition: IndexPartition, p: CoinVector
) -> Value:
    """Product over blocks B of E[prod of functions[i] for i in B].

    For nonnegative increasing families this quantity grows as the
    partition gets coarser, with the single block at the top and the
    all-singleton partition at the bottom.
    """
    if partition.indices != frozenset(range(len(functions))):
        raise ValueError("partition does not cover the function indices")
    for f in functions:
        if f.ground != p.ground:
            raise ValueError("operands live on different ground sets")
    out: Value = 1
    for block in partition.blocks:
        prod = functions[block[0]]
        for i in block[1:]:
            prod = prod * functions[i]
        out = out * expectation(prod, p)
    return out
