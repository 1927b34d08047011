"""Seeded random instances for property sweeps.

Everything here is driven by a caller-supplied random.Random (or an int
seed), so sweeps replay exactly.  The CLI's verify subcommand and the test
suite share these builders; they produce arbitrary valid instances, with
deliberate coverage of edge cases such as degenerate coins, empty supply
sets, and commodities no one supplies.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .lattice import (
    CoinVector,
    GroundSet,
    MonotoneFamily,
    SetFunction,
    random_increasing,
    up_closure,
)
from .numerics import Value
from .partition_game import GameSpec, PartitionStrategy, StrategyProfile, enumerate_partitions
from .scenarios import (
    MergerScenario,
    MilitaryScenario,
    TwoInputProduction,
    WeightedVotingSpec,
    weighted_voting,
)


def _rng(seed: random.Random | int) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_coin_vector(
    rng: random.Random | int,
    ground: GroundSet,
    *,
    exact: bool = False,
    choices: Sequence[Value] | None = None,
    degenerate: bool = False,
) -> CoinVector:
    """Random per-element probabilities; `choices` restricts to a grid."""
    rng = _rng(rng)

    def draw() -> Value:
        if choices is not None:
            return rng.choice(list(choices))
        if degenerate and rng.random() < 0.1:
            return (0, 1)[rng.randrange(2)] if exact else float(rng.randrange(2))
        if exact:
            return Fraction(rng.randint(0, 16), 16)
        return rng.random()

    return CoinVector(ground, (draw() for _ in range(ground.n)))


def random_setfunction(
    rng: random.Random | int, ground: GroundSet, *, exact: bool = False, span: float = 4.0
) -> SetFunction:
    """Arbitrary (not necessarily monotone) values, for algebra checks."""
    rng = _rng(rng)
    if exact:
        return SetFunction(
            ground,
            (Fraction(rng.randint(-24, 24), rng.randint(1, 8)) for _ in ground.subsets()),
        )
    return SetFunction(ground, (rng.uniform(-span, span) for _ in ground.subsets()))


def random_monotone_family(rng: random.Random | int, ground: GroundSet) -> MonotoneFamily:
    """Up-closure of a random seed list; covers empty and full families."""
    rng = _rng(rng)
    count = rng.randint(0, ground.n + 1)
    seeds = [rng.randrange(1 << ground.n) for _ in range(count)]
    return up_closure(ground, seeds)


def random_production(
    rng: random.Random | int, ground: GroundSet, *, degenerate: bool = True
) -> TwoInputProduction:
    rng = _rng(rng)

    def amount() -> float:
        return 0.0 if rng.random() < 0.15 else rng.uniform(0.0, 5.0)

    return TwoInputProduction(
        ground,
        x=tuple(amount() for _ in range(ground.n)),
        y=tuple(amount() for _ in range(ground.n)),
        alpha=rng.uniform(0.1, 2.5),
        beta=rng.uniform(0.1, 2.5),
        p=random_coin_vector(rng, ground, degenerate=degenerate),
    )


def random_military(
    rng: random.Random | int, ground: GroundSet, *, exact: bool = False
) -> MilitaryScenario:
    rng = _rng(rng)
    return MilitaryScenario(
        ground,
        c_red=random_monotone_family(rng, ground),
        c_blue=random_monotone_family(rng, ground),
        p=random_coin_vector(rng, ground, exact=exact, degenerate=True),
    )


def random_voting_rule(rng: random.Random | int, ground: GroundSet) -> SetFunction:
    """Random 0/1 increasing rule rejecting {} and accepting the full set."""
    rng = _rng(rng)
    if rng.random() < 0.5:
        weights = tuple(rng.randint(0, 5) for _ in range(ground.n))
        total = sum(weights)
        if total == 0:
            weights = (1,) * ground.n
            total = ground.n
        spec = WeightedVotingSpec(ground, weights, quota=rng.randint(1, total))
        return weighted_voting(spec)
    count = rng.randint(1, ground.n + 1)
    seeds = [rng.randrange(1, 1 << ground.n) for _ in range(count)] if ground.n else []
    family = up_closure(ground, seeds or [ground.full])
    return family.indicator()


def random_merger(rng: random.Random | int, ground: GroundSet) -> MergerScenario:
    rng = _rng(rng)
    return MergerScenario(
        ground,
        f_a=random_voting_rule(rng, ground),
        f_b=random_voting_rule(rng, ground),
        p=random_coin_vector(rng, ground, degenerate=True),
    )


def _labels(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def random_game_spec(
    rng: random.Random | int,
    *,
    max_commodities: int = 4,
    max_suppliers: int = 3,
    p_choices: Sequence[Value] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
    strict: bool = False,
    symmetric: bool = False,
) -> GameSpec:
    """Random spec at the exhaustive-analysis scale.

    Supply sets are arbitrary subsets of the commodities, so empty supply
    and unsupplied commodities both occur.  With `strict`, payoff families
    are strictly increasing and strictly positive, the regime in which the
    all-coarse profile is the unique equilibrium.
    """
    rng = _rng(rng)
    commodities = _labels("k", rng.randint(1, max_commodities))
    suppliers = _labels("s", rng.randint(1, max_suppliers))
    hground = GroundSet(suppliers)
    supply: dict[str, tuple[str, ...]] = {}
    for h in suppliers:
        owned = tuple(k for k in commodities if rng.random() < 0.6)
        if strict and not owned:
            owned = (rng.choice(commodities),)
        supply[h] = owned

    def family() -> SetFunction:
        f = random_increasing(rng, hground, rng.randint(0, 6), exact=True, strict=strict)
        if strict:
            f = f + Fraction(rng.randint(1, 4), rng.randint(1, 4))
        return f

    payoffs: dict[str, SetFunction | dict[str, SetFunction]] = {}
    for k in commodities:
        if symmetric:
            payoffs[k] = family()
        else:
            payoffs[k] = {h: family() for h in suppliers}
    return GameSpec.build(
        commodities,
        suppliers,
        supply,
        random_coin_vector(rng, hground, choices=p_choices),
        payoffs,
    )


def random_profile(rng: random.Random | int, spec: GameSpec) -> StrategyProfile:
    """Uniformly random partition choice per supplier."""
    rng = _rng(rng)
    picks: list[PartitionStrategy] = []
    for h, owned in zip(spec.suppliers, spec.supply):
        options = enumerate_partitions(owned, owner=h)
        picks.append(rng.choice(options))
    return StrategyProfile(picks)
