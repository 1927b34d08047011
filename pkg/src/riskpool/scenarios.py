"""Worked decision problems driven by the convolution table.

Each scenario asks the same question: a decision maker picks the subset S
of resources whose random availability is pooled (one coin shared by both
sides) while the rest stay independent, and wants the S maximizing an
objective of the form (f * g)(S).  Because the objectives here are built
from increasing functions, the full pool S = H is always among the optima.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .convolution import convolve
from .lattice import (
    CoinVector,
    GroundSet,
    MonotoneFamily,
    SetFunction,
    is_increasing,
)
from .numerics import Value, argmax_ties, geq, power, stable_sum


@dataclass(frozen=True)
class TwoInputProduction:
    """Two plants with Cobb-Douglas-style output from delivered inputs.

    Supplier h ships x[h] of the first input and y[h] of the second when
    its delivery succeeds.  Plant outputs are (sum x)**alpha and
    (sum y)**beta over the suppliers that delivered, with 0**a := 0.
    """

    ground: GroundSet
    x: tuple[Value, ...]
    y: tuple[Value, ...]
    alpha: Value
    beta: Value
    p: CoinVector

    def __init__(self, ground, x, y, alpha, beta, p):
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "x", tuple(x))
        object.__setattr__(self, "y", tuple(y))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "p", p)
        if len(self.x) != ground.n or len(self.y) != ground.n:
            raise ValueError("one x and one y quantity per supplier required")
        if any(not geq(v, 0) for v in self.x + self.y):
            raise ValueError("input quantities must be nonnegative")
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError("exponents must be positive")
        if p.ground != ground:
            raise ValueError("coin vector lives on a different ground set")


def _additive_table(ground: GroundSet, amounts: tuple[Value, ...]) -> list[Value]:
    totals: list[Value] = [0] * (1 << ground.n)
    for mask in range(1, 1 << ground.n):
        low = mask & -mask
        totals[mask] = totals[mask ^ low] + amounts[low.bit_length() - 1]
    return totals


def production_factors(sc: TwoInputProduction) -> tuple[SetFunction, SetFunction]:
    """The two plant-output functions F1(T) = (sum x)**alpha and F2."""
    xs = _additive_table(sc.ground, sc.x)
    ys = _additive_table(sc.ground, sc.y)
    f1 = SetFunction(sc.ground, (power(v, sc.alpha) for v in xs))
    f2 = SetFunction(sc.ground, (power(v, sc.beta) for v in ys))
    return f1, f2


def production_table(sc: TwoInputProduction) -> SetFunction:
    """Expected product of the two plant outputs for every pooling set S."""
    f1, f2 = production_factors(sc)
    return convolve(f1, f2, sc.p)


def production_payoff(sc: TwoInputProduction, pool: int) -> Value:
    return production_table(sc)(pool)


@dataclass(frozen=True)
class MilitaryScenario:
    """Two strike plans succeed when the surviving sites hit a critical family.

    c_red and c_blue are up-closed families of site subsets; a plan succeeds
    exactly when the set of available sites (for the coordinate assigned to
    it) lies in its family.  Pooling sites in S makes their availability
    common to both plans.
    """

    ground: GroundSet
    c_red: MonotoneFamily
    c_blue: MonotoneFamily
    p: CoinVector

    def __post_init__(self):
        if self.c_red.ground != self.ground or self.c_blue.ground != self.ground:
            raise ValueError("critical families live on a different ground set")
        if self.p.ground != self.ground:
            raise ValueError("coin vector lives on a different ground set")


def military_tables(sc: MilitaryScenario) -> tuple[SetFunction, SetFunction, SetFunction]:
    """Tables of P[both plans succeed], P[neither], P[exactly one].

    Both-success is f * g for the family indicators; neither-success is
    (1-f) * (1-g), which equals (f-1) * (g-1) and is therefore increasing
    in S as well; exactly-one is the complement and decreases in S.
    """
    f = sc.c_red.indicator()
    g = sc.c_blue.indicator()
    both = convolve(f, g, sc.p)
    neither = convolve(1 - f, 1 - g, sc.p)
    one = 1 - both - neither
    return both, neither, one


def military_outcomes(sc: MilitaryScenario, pool: int) -> tuple[Value, Value, Value]:
    both, neither, one = military_tables(sc)
    return both(pool), neither(pool), one(pool)


@dataclass(frozen=True)
class MergerScenario:
    """Two boards vote on a merger; approval needs a yes from both.

    f_a and f_b are 0/1 increasing voting rules with f({}) = 0 and
    f(H) = 1 over the shareholders present.  Pooling shareholders in S
    means those attend both meetings or neither.
    """

    ground: GroundSet
    f_a: SetFunction
    f_b: SetFunction
    p: CoinVector

    def __post_init__(self):
        for f in (self.f_a, self.f_b):
            if f.ground != self.ground:
                raise ValueError("voting rule lives on a different ground set")
            _check_voting_rule(f)
        if self.p.ground != self.ground:
            raise ValueError("coin vector lives on a different ground set")


def _check_voting_rule(f: SetFunction) -> None:
    if any(v != 0 and v != 1 for v in f.values):
        raise ValueError("voting rule must be 0/1 valued")
    if f.values[0] != 0 or f.values[-1] != 1:
        raise ValueError("voting rule must reject {} and accept the full set")
    if not is_increasing(f):
        raise ValueError("voting rule must be increasing")


def merger_table(sc: MergerScenario) -> SetFunction:
    """Probability that both boards approve, for every pooled block S."""
    return convolve(sc.f_a, sc.f_b, sc.p)


def merger_probability(sc: MergerScenario, pool: int) -> Value:
    return merger_table(sc)(pool)


@dataclass(frozen=True)
class WeightedVotingSpec:
    """Threshold voting rule: yes iff the present weight reaches the quota."""

    ground: GroundSet
    weights: tuple[Value, ...]
    quota: Value

    def __init__(self, ground, weights, quota):
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "weights", tuple(weights))
        object.__setattr__(self, "quota", quota)
        if len(self.weights) != ground.n:
            raise ValueError("one weight per voter required")
        if any(not geq(w, 0) for w in self.weights):
            raise ValueError("voter weights must be nonnegative")
        total = stable_sum(self.weights)
        if not 0 < self.quota <= total:
            raise ValueError("quota must lie in (0, total weight]")


def weighted_voting(spec: WeightedVotingSpec) -> SetFunction:
    """The 0/1 rule of the weighted-voting spec."""
    totals = _additive_table(spec.ground, spec.weights)
    return SetFunction(spec.ground, (int(geq(t, spec.quota)) for t in totals))


def optimal_strategies(table: SetFunction) -> list[int]:
    """Masks maximizing the table; ties resolved by the numeric mode."""
    return sorted(argmax_ties(table.values))
