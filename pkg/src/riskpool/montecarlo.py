"""Seeded sampling estimates cross-validating the exact computations.

The repository-wide generator is numpy's PCG64, always constructed through
numpy.random.SeedSequence, so a 64-bit seed determines every draw.  Worker
substreams come from SeedSequence.spawn, which keeps parallel splits
replayable: the same seed and sample count give bit-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import CoinVector, SetFunction
from .partition_game import (
    GameSpec,
    StrategyProfile,
    SuccessTuple,
    _block_commodity_indices,
    _validate_profile,
)


@dataclass(frozen=True)
class EstimateReport:
    mean: float
    stderr: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("at least two samples required")


def generator(seed: int) -> np.random.Generator:
    """The package's deterministic PRNG: PCG64 keyed by a SeedSequence."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def substreams(seed: int, count: int) -> list[np.random.Generator]:
    """Independent child generators for parallel workers, replayable."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def sample_success(
    spec: GameSpec, profile: StrategyProfile, rng: np.random.Generator
) -> SuccessTuple:
    """One draw of the success tuple: a Bernoulli(p_h) coin per shipment.

    Coins are consumed supplier by supplier in spec order, one uniform per
    block, so replays with an equally-seeded generator coincide.
    """
    _validate_profile(spec, profile)
    block_idx = _block_commodity_indices(spec, profile)
    masks = [0] * len(spec.commodities)
    for hi, strat in enumerate(profile.strategies):
        ph = float(spec.p.p[hi])
        hbit = 1 << hi
        for bi in range(len(strat.blocks)):
            if rng.random() < ph:
                for ki in block_idx[hi][bi]:
                    masks[ki] |= hbit
    return SuccessTuple(spec.commodities, tuple(masks))


def _sample_products(
    spec: GameSpec, profile: StrategyProfile, hi: int, samples: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized draws of prod_k F_k^h(S_k); one uniform matrix per supplier."""
    block_idx = _block_commodity_indices(spec, profile)
    nk = len(spec.commodities)
    masks = [np.zeros(samples, dtype=np.int64) for _ in range(nk)]
    for gi, strat in enumerate(profile.strategies):
        nb = len(strat.blocks)
        if nb == 0:
            continue
        ph = float(spec.p.p[gi])
        arrived = rng.random((samples, nb)) < ph
        gbit = np.int64(1 << gi)
        for bi in range(nb):
            col = arrived[:, bi]
            for ki in block_idx[gi][bi]:
                masks[ki] |= np.where(col, gbit, 0)
    vals = np.ones(samples)
    for ki in range(nk):
        table = np.array([float(v) for v in spec.payoffs[ki][hi].values])
        vals *= table[masks[ki]]
    return vals


def _report(vals: np.ndarray, samples: int, seed: int) -> EstimateReport:
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / np.sqrt(samples))
    return EstimateReport(mean=mean, stderr=stderr, samples=samples, seed=seed)


def estimate_payoff(
    spec: GameSpec, profile: StrategyProfile, h: str, samples: int, seed: int
) -> EstimateReport:
    """Empirical mean and standard error of player h's product payoff."""
    if samples < 2:
        raise ValueError("at least two samples required")
    hi = spec.h_index(h)
    _validate_profile(spec, profile)
    vals = _sample_products(spec, profile, hi, samples, generator(seed))
    return _report(vals, samples, seed)


def estimate_convolution(
    f: SetFunction, g: SetFunction, p: CoinVector, coupled: int, samples: int, seed: int
) -> EstimateReport:
    """Empirical mean of f(S1) g(S2) under the coupled-pair sampling.

    This is the sampling route to (f * g)(coupled); it validates the exact
    table at sizes where the brute-force double sum is out of reach.
    """
    if f.ground != g.ground or f.ground != p.ground:
        raise ValueError("operands live on different ground sets")
    f.ground.check_mask(coupled)
    if samples < 2:
        raise ValueError("at least two samples required")
    rng = generator(seed)
    n = f.ground.n
    probs = np.array([float(v) for v in p.p])
    # Two full coin matrices are always drawn, so the draw count does not
    # depend on the coupled set; the shared coin just reuses matrix one.
    coins1 = rng.random((samples, n)) < probs
    coins2 = rng.random((samples, n)) < probs
    shared = np.array([bool(coupled >> i & 1) for i in range(n)])
    coins2 = np.where(shared, coins1, coins2)
    bits = np.int64(1) << np.arange(n, dtype=np.int64)
    s1 = coins1.astype(np.int64) @ bits
    s2 = coins2.astype(np.int64) @ bits
    fa = np.array([float(v) for v in f.values])
    ga = np.array([float(v) for v in g.values])
    vals = fa[s1] * ga[s2]
    return _report(vals, samples, seed)
