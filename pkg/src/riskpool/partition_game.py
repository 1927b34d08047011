"""Multi-supplier shipment game with partition strategies.

Each supplier h owes a set of commodities and chooses how to split it into
shipments; every shipment arrives independently with probability p_h.  The
success tuple records, per commodity, which suppliers' shipment containing
it arrived.  Player payoffs are expectations of products of nonnegative
increasing functions of the success tuple, which is what makes the single
all-in shipment (the coarse partition) a dominant strategy for everyone.

All analysis here is exact enumeration over outcome atoms; anything beyond
the stated caps is an error rather than a silent approximation.  Sampling
belongs to the montecarlo module.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .lattice import CoinVector, GroundSet, SetFunction, is_increasing
from .numerics import Value, argmax_ties, geq, stable_sum

MAX_COMMODITIES = 8
MAX_SUPPLIERS = 6
MAX_PARTITION_SET = 8
MAX_TOTAL_BLOCKS = 22
MAX_PROFILES = 10 ** 6

# Bell numbers B(0)..B(8): how many partitions a commodity set can have.
BELL = (1, 1, 2, 5, 15, 52, 203, 877, 4140)


@dataclass(frozen=True)
class PartitionStrategy:
    """One supplier's split of its commodity set into disjoint shipments."""

    owner: str
    blocks: tuple[tuple[str, ...], ...]

    def __init__(self, owner: str, blocks: Iterable[Iterable[str]]):
        object.__setattr__(self, "owner", owner)
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in blocks))
        seen: set[str] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty shipment block")
            for k in block:
                if k in seen:
                    raise ValueError(f"commodity {k!r} appears in two blocks")
                seen.add(k)

    @property
    def commodity_set(self) -> frozenset[str]:
        return frozenset(k for b in self.blocks for k in b)

    def block_of(self, commodity: str) -> int:
        for idx, block in enumerate(self.blocks):
            if commodity in block:
                return idx
        raise KeyError(f"{commodity!r} not covered by this strategy")


def _canonical_blocks(
    blocks: Iterable[Iterable[str]], order: Sequence[str]
) -> tuple[tuple[str, ...], ...]:
    pos = {k: i for i, k in enumerate(order)}
    try:
        sorted_blocks = [tuple(sorted(b, key=pos.__getitem__)) for b in blocks]
    except KeyError as exc:
        raise ValueError(f"unknown commodity {exc.args[0]!r}") from None
    sorted_blocks.sort(key=lambda b: pos[b[0]] if b else -1)
    return tuple(sorted_blocks)


def _set_partitions(items: Sequence[str]) -> Iterator[tuple[tuple[str, ...], ...]]:
    # Restricted growth strings: code[i] names the block of item i and may
    # exceed the running maximum by at most one, so each partition shows up
    # exactly once and blocks come out ordered by first occurrence.
    n = len(items)
    if n == 0:
        yield ()
        return
    code = [0] * n

    def rec(idx: int, top: int) -> Iterator[tuple[tuple[str, ...], ...]]:
        if idx == n:
            blocks: list[list[str]] = [[] for _ in range(top + 1)]
            for pos, b in enumerate(code):
                blocks[b].append(items[pos])
            yield tuple(tuple(b) for b in blocks)
            return
        for v in range(top + 2):
            code[idx] = v
            yield from rec(idx + 1, max(top, v))

    yield from rec(1, 0)


def enumerate_partitions(commodities: Sequence[str], owner: str = "") -> list[PartitionStrategy]:
    """All partitions of the commodity sequence, in canonical block order."""
    items = tuple(commodities)
    if len(set(items)) != len(items):
        raise ValueError("commodities must be distinct")
    if len(items) > MAX_PARTITION_SET:
        raise ValueError(f"partition enumeration is limited to {MAX_PARTITION_SET} commodities")
    return [PartitionStrategy(owner, blocks) for blocks in _set_partitions(items)]


def coarse_strategy(owner: str, commodities: Sequence[str]) -> PartitionStrategy:
    """The single-shipment strategy (empty commodity set: no shipment at all)."""
    items = tuple(commodities)
    return PartitionStrategy(owner, (items,) if items else ())


def finest_strategy(owner: str, commodities: Sequence[str]) -> PartitionStrategy:
    """One shipment per commodity."""
    return PartitionStrategy(owner, ((k,) for k in commodities))


def coarser(p_strat: PartitionStrategy, q_strat: PartitionStrategy) -> bool:
    """True iff every block of q_strat lies inside some block of p_strat."""
    if p_strat.owner != q_strat.owner:
        raise ValueError("strategies belong to different owners")
    if p_strat.commodity_set != q_strat.commodity_set:
        raise ValueError("strategies cover different commodity sets")
    coarse_sets = [set(b) for b in p_strat.blocks]
    return all(any(set(qb) <= pb for pb in coarse_sets) for qb in q_strat.blocks)


@dataclass(frozen=True)
class StrategyProfile:
    """One strategy per supplier, aligned with the game's supplier order."""

    strategies: tuple[PartitionStrategy, ...]

    def __init__(self, strategies: Iterable[PartitionStrategy]):
        object.__setattr__(self, "strategies", tuple(strategies))

    def replace(self, index: int, strategy: PartitionStrategy) -> "StrategyProfile":
        new = list(self.strategies)
        new[index] = strategy
        return StrategyProfile(new)


@dataclass(frozen=True)
class SuccessTuple:
    """Per commodity, the mask of suppliers whose shipment of it arrived."""

    commodities: tuple[str, ...]
    masks: tuple[int, ...]

    def mask_of(self, commodity: str) -> int:
        return self.masks[self.commodities.index(commodity)]


@dataclass(frozen=True)
class OutcomeAtom:
    """One joint realization of every shipment's arrival bit."""

    arrivals: tuple[tuple[bool, ...], ...]
    probability: Value


@dataclass(frozen=True)
class GameSpec:
    """Commodities, suppliers, supply sets, coins, and payoff families.

    payoffs[k][h] is the nonnegative increasing function F applied to the
    supplier set that delivered commodity k, entering player h's product
    payoff.  The symmetric flag records that payoffs do not depend on h,
    and is validated, not trusted.
    """

    commodities: tuple[str, ...]
    suppliers: tuple[str, ...]
    supply: tuple[tuple[str, ...], ...]
    p: CoinVector
    payoffs: tuple[tuple[SetFunction, ...], ...]
    symmetric: bool

    def __post_init__(self):
        if len(set(self.commodities)) != len(self.commodities):
            raise ValueError("commodities must be distinct")
        if len(set(self.suppliers)) != len(self.suppliers):
            raise ValueError("suppliers must be distinct")
        if not self.suppliers:
            raise ValueError("at least one supplier required")
        if len(self.commodities) > MAX_COMMODITIES:
            raise ValueError(f"exact analysis is limited to {MAX_COMMODITIES} commodities")
        if len(self.suppliers) > MAX_SUPPLIERS:
            raise ValueError(f"exact analysis is limited to {MAX_SUPPLIERS} suppliers")
        if self.p.ground.labels != self.suppliers:
            raise ValueError("coin vector must be indexed by the suppliers")
        if len(self.supply) != len(self.suppliers):
            raise ValueError("one supply set per supplier required")
        kset = set(self.commodities)
        for h, owned in zip(self.suppliers, self.supply):
            if len(set(owned)) != len(owned) or not set(owned) <= kset:
                raise ValueError(f"invalid supply set for {h!r}")
        if len(self.payoffs) != len(self.commodities):
            raise ValueError("one payoff family per commodity required")
        for k, row in zip(self.commodities, self.payoffs):
            if len(row) != len(self.suppliers):
                raise ValueError(f"payoffs for {k!r} must cover every supplier")
            for f in row:
                if f.ground != self.p.ground:
                    raise ValueError(f"payoff for {k!r} lives on the wrong ground set")
                if any(not geq(v, 0) for v in f.values):
                    raise ValueError(f"payoff for {k!r} takes negative values")
                if not is_increasing(f):
                    raise ValueError(f"payoff for {k!r} is not increasing")
        actually_symmetric = all(row.count(row[0]) == len(row) for row in self.payoffs)
        if self.symmetric != actually_symmetric:
            raise ValueError("symmetric flag does not match the payoff families")

    @classmethod
    def build(
        cls,
        commodities: Sequence[str],
        suppliers: Sequence[str],
        supply: Mapping[str, Sequence[str]],
        p: CoinVector,
        payoffs: Mapping[str, SetFunction | Mapping[str, SetFunction]],
        ) -> "GameSpec":
        """Assemble a spec from mappings; the symmetric flag is inferred.

        Payoffs accept either one function per commodity (shared by every
        supplier) or a full per-supplier mapping.
        """
        commodities = tuple(commodities)
        suppliers = tuple(suppliers)
        if not suppliers:
            raise ValueError("at least one supplier required")
        if set(supply) != set(suppliers):
            raise ValueError("supply must be keyed by exactly the suppliers")
        korder = {k: i for i, k in enumerate(commodities)}
        supply_rows = tuple(
            tuple(sorted(supply[h], key=korder.__getitem__)) for h in suppliers
        )
        if set(payoffs) != set(commodities):
            raise ValueError("payoffs must be keyed by exactly the commodities")
        rows = []
        for k in commodities:
            entry = payoffs[k]
            if isinstance(entry, SetFunction):
                rows.append(tuple(entry for _ in suppliers))
            else:
                if set(entry) != set(suppliers):
                    raise ValueError(f"payoffs for {k!r} must be keyed by the suppliers")
                rows.append(tuple(entry[h] for h in suppliers))
        payoff_rows = tuple(rows)
        symmetric = all(row.count(row[0]) == len(row) for row in payoff_rows)
        return cls(commodities, suppliers, supply_rows, p, payoff_rows, symmetric)

    def h_index(self, h: str) -> int:
        try:
            return self.suppliers.index(h)
        except ValueError:
            raise KeyError(f"unknown supplier {h!r}") from None

    def k_index(self, k: str) -> int:
        try:
            return self.commodities.index(k)
        except ValueError:
            raise KeyError(f"unknown commodity {k!r}") from None

    def supply_of(self, h: str) -> tuple[str, ...]:
        return self.supply[self.h_index(h)]

    def payoff_fn(self, k: str, h: str) -> SetFunction:
        return self.payoffs[self.k_index(k)][self.h_index(h)]

    def strategies(self, h: str) -> list[PartitionStrategy]:
        return enumerate_partitions(self.supply_of(h), owner=h)

    def strategy(self, h: str, blocks: Iterable[Iterable[str]]) -> PartitionStrategy:
        strat = PartitionStrategy(h, _canonical_blocks(blocks, self.commodities))
        if strat.commodity_set != set(self.supply_of(h)):
            raise ValueError(f"blocks do not partition the supply set of {h!r}")
        return strat

    def profile(self, blocks_by_supplier: Mapping[str, Iterable[Iterable[str]]]) -> StrategyProfile:
        if set(blocks_by_supplier) != set(self.suppliers):
            raise ValueError("profile must name exactly the suppliers")
        return StrategyProfile(
            self.strategy(h, blocks_by_supplier[h]) for h in self.suppliers
        )

    def coarse_profile(self) -> StrategyProfile:
        return StrategyProfile(
            coarse_strategy(h, owned) for h, owned in zip(self.suppliers, self.supply)
        )

    def finest_profile(self) -> StrategyProfile:
        return StrategyProfile(
            finest_strategy(h, owned) for h, owned in zip(self.suppliers, self.supply)
        )


def _validate_profile(spec: GameSpec, profile: StrategyProfile) -> None:
    if len(profile.strategies) != len(spec.suppliers):
        raise ValueError("profile must contain one strategy per supplier")
    for h, owned, strat in zip(spec.suppliers, spec.supply, profile.strategies):
        if strat.owner != h:
            raise ValueError(f"strategy at the position of {h!r} is owned by {strat.owner!r}")
        if strat.commodity_set != set(owned):
            raise ValueError(f"strategy of {h!r} does not partition its supply set")


def _check_block_cap(profile: StrategyProfile) -> None:
    total = sum(len(s.blocks) for s in profile.strategies)
    if total > MAX_TOTAL_BLOCKS:
        raise ValueError(f"exact enumeration is limited to {MAX_TOTAL_BLOCKS} shipment blocks")


def _local_outcomes(ph: Value, nblocks: int) -> list[tuple[tuple[bool, ...], Value]]:
    """Per-supplier arrival patterns with nonzero probability."""
    out: list[tuple[tuple[bool, ...], Value]] = [((), 1)]
    for _ in range(nblocks):
        nxt = []
        for bits, w in out:
            lose = w * (1 - ph)
            if lose != 0:
                nxt.append((bits + (False,), lose))
            win = w * ph
            if win != 0:
                nxt.append((bits + (True,), win))
        out = nxt
    return out


def outcome_atoms(spec: GameSpec, profile: StrategyProfile) -> list[OutcomeAtom]:
    """All joint arrival realizations of positive probability."""
    _validate_profile(spec, profile)
    _check_block_cap(profile)
    locals_: list[list[tuple[tuple[bool, ...], Value]]] = [
        _local_outcomes(spec.p.p[hi], len(strat.blocks))
        for hi, strat in enumerate(profile.strategies)
    ]
    atoms = []
    for combo in itertools.product(*locals_):
        prob: Value = 1
        for _, w in combo:
            prob = prob * w
        atoms.append(OutcomeAtom(tuple(bits for bits, _ in combo), prob))
    return atoms


def _block_commodity_indices(spec: GameSpec, profile: StrategyProfile) -> list[list[list[int]]]:
    return [
        [[spec.k_index(k) for k in block] for block in strat.blocks]
        for strat in profile.strategies
    ]


def _success_masks(
    block_idx: list[list[list[int]]], arrivals: tuple[tuple[bool, ...], ...], nk: int
) -> list[int]:
    masks = [0] * nk
    for hi, bits in enumerate(arrivals):
        hbit = 1 << hi
        for bi, arrived in enumerate(bits):
            if arrived:
                for ki in block_idx[hi][bi]:
                    masks[ki] |= hbit
    return masks


def success_distribution(
    spec: GameSpec, profile: StrategyProfile
) -> list[tuple[SuccessTuple, Value]]:
    """Exact law of the success tuple induced by the profile."""
    block_idx = _block_commodity_indices(spec, profile)
    nk = len(spec.commodities)
    out = []
    for atom in outcome_atoms(spec, profile):
        masks = _success_masks(block_idx, atom.arrivals, nk)
        out.append((SuccessTuple(spec.commodities, tuple(masks)), atom.probability))
    return out


def _payoff_tables(spec: GameSpec, hi: int) -> list[tuple[Value, ...]]:
    return [row[hi].values for row in spec.payoffs]


def _spec_exact(spec: GameSpec) -> bool:
    return spec.p.exact and all(f.exact for row in spec.payoffs for f in row)


def _int_table(values: Sequence[Value]) -> tuple[list[int], int]:
    # Clear denominators so the atom sweep runs on machine integers.
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values], den


def _payoffs_for(
    spec: GameSpec, profile: StrategyProfile, players: Sequence[int]
) -> list[Value]:
    """Expected payoffs of the given player indices under the profile."""
    _validate_profile(spec, profile)
    _check_block_cap(profile)
    block_idx = _block_commodity_indices(spec, profile)
    nk = len(spec.commodities)
    if _spec_exact(spec):
        return _payoffs_exact(spec, profile, players, block_idx, nk)
    tables = [_payoff_tables(spec, hi) for hi in players]
    terms: list[list[Value]] = [[] for _ in players]
    for atom in outcome_atoms(spec, profile):
        masks = _success_masks(block_idx, atom.arrivals, nk)
        if spec.symmetric and players:
            val: Value = atom.probability
            for ki in range(nk):
                val = val * tables[0][ki][masks[ki]]
            for slot in range(len(players)):
                terms[slot].append(val)
        else:
            for slot in range(len(players)):
                val = atom.probability
                for ki in range(nk):
                    val = val * tables[slot][ki][masks[ki]]
                terms[slot].append(val)
    return [stable_sum(ts) for ts in terms]


def _payoffs_exact(
    spec: GameSpec,
    profile: StrategyProfile,
    players: Sequence[int],
    block_idx: list[list[list[int]]],
    nk: int,
) -> list[Value]:
    # Integer core of the atom sweep: probabilities are cleared to a common
    # power-of-denominator scale per supplier, payoff tables to one scale per
    # commodity, and everything sums in exact machine arithmetic.
    locals_: list[list[tuple[tuple[int, ...], int]]] = []
    denom_p = 1
    for hi, strat in enumerate(profile.strategies):
        ph = spec.p.p[hi]
        num = ph.numerator if isinstance(ph, Fraction) else ph
        den = ph.denominator if isinstance(ph, Fraction) else 1
        nb = len(strat.blocks)
        denom_p *= den ** nb
        hbit = 1 << hi
        patterns: list[tuple[tuple[int, ...], int]] = []
        for bits in itertools.product((0, 1), repeat=nb):
            w = 1
            for b in bits:
                w *= num if b else den - num
            if w == 0:
                continue
            contrib = [0] * nk
            for bi, b in enumerate(bits):
                if b:
                    for ki in block_idx[hi][bi]:
                        contrib[ki] |= hbit
            patterns.append((tuple(contrib), w))
        locals_.append(patterns)

    int_tables: list[list[list[int]]] = []
    denom_f: list[int] = []
    for slot, hi in enumerate(players):
        if spec.symmetric and slot > 0:
            int_tables.append(int_tables[0])
            denom_f.append(denom_f[0])
            continue
        tabs = []
        dd = 1
        for row in spec.payoffs:
            tab, den = _int_table(row[hi].values)
            tabs.append(tab)
            dd *= den
        int_tables.append(tabs)
        denom_f.append(dd)

    acc = [0] * len(players)
    krange = range(nk)
    for combo in itertools.product(*locals_):
        w = 1
        for _, pw in combo:
            w *= pw
        masks = [0] * nk
        for contrib, _ in combo:
            for ki in krange:
                masks[ki] |= contrib[ki]
        if spec.symmetric and players:
            val = w
            tabs = int_tables[0]
            for ki in krange:
                val *= tabs[ki][masks[ki]]
            for slot in range(len(players)):
                acc[slot] += val
        else:
            for slot in range(len(players)):
                val = w
                tabs = int_tables[slot]
                for ki in krange:
                    val *= tabs[ki][masks[ki]]
                acc[slot] += val
    return [
        Fraction(acc[slot], denom_p * denom_f[slot]) for slot in range(len(players))
    ]


def _profile_payoffs(spec: GameSpec, profile: StrategyProfile) -> tuple[Value, ...]:
    """Expected payoff of every supplier in one pass over the atoms."""
    return tuple(_payoffs_for(spec, profile, range(len(spec.suppliers))))


def expected_payoff(spec: GameSpec, profile: StrategyProfile, h: str) -> Value:
    """E[prod over k of F_k^h(S_k)] under the profile's shipment coins."""
    return _payoffs_for(spec, profile, [spec.h_index(h)])[0]


def expected_output(spec: GameSpec, profile: StrategyProfile) -> Value:
    """The principal's objective in the symmetric game.

    With payoffs independent of the observer, maximizing total expected
    output and maximizing any single player's expected payoff are the same
    problem, so this simply evaluates the common payoff.
    """
    if not spec.symmetric:
        raise ValueError("expected_output requires the symmetric flag")
    return expected_payoff(spec, profile, spec.suppliers[0])


def conditional_block_factors(
    spec: GameSpec,
    profile: StrategyProfile,
    h: str,
    i: int,
    j: int,
    conditioning: Mapping[str, Sequence[bool | None]],
) -> tuple[Value, Value, Value, Value, Value]:
    """Block products (a0, a1, b0, b1, c) of the two-shipment comparison.

    Conditioning fixes the arrival bit of every block other than blocks i
    and j of player h's strategy.  a0/a1 are the products of h's payoff
    factors over block i's commodities without/with h delivering, b0/b1
    the same for block j, and c the product over all other commodities at
    the conditioned outcome.
    """
    hi = spec.h_index(h)
    _validate_profile(spec, profile)
    strat = profile.strategies[hi]
    nb = len(strat.blocks)
    if nb < 2:
        raise ValueError("conditional comparison needs at least two blocks")
    if i == j or not (0 <= i < nb and 0 <= j < nb):
        raise ValueError("block indices must be distinct and in range")
    if not set(conditioning) <= set(spec.suppliers):
        raise ValueError("conditioning names an unknown supplier")

    bits_by_supplier: list[tuple[bool | None, ...]] = []
    for gi, (g, gstrat) in enumerate(zip(spec.suppliers, profile.strategies)):
        want = len(gstrat.blocks)
        given = conditioning.get(g)
        if given is None:
            if want == 0:
                bits_by_supplier.append(())
                continue
            raise ValueError(f"incomplete conditioning: no bits for supplier {g!r}")
        bits = tuple(given)
        if len(bits) != want:
            raise ValueError(f"conditioning for {g!r} must give one bit per block")
        for bi, bit in enumerate(bits):
            if gi == hi and bi in (i, j):
                if bit is not None:
                    raise ValueError("blocks under comparison must be left unconditioned")
            elif not isinstance(bit, bool):
                raise ValueError(f"missing arrival bit for block {bi} of {g!r}")
        bits_by_supplier.append(bits)

    nk = len(spec.commodities)
    base = [0] * nk
    for gi, bits in enumerate(bits_by_supplier):
        gbit = 1 << gi
        for bi, bit in enumerate(bits):
            if bit:
                for k in profile.strategies[gi].blocks[bi]:
                    base[spec.k_index(k)] |= gbit
    tables = _payoff_tables(spec, hi)
    hbit = 1 << hi
    block_i = [spec.k_index(k) for k in strat.blocks[i]]
    block_j = [spec.k_index(k) for k in strat.blocks[j]]
    rest = [ki for ki in range(nk) if ki not in block_i and ki not in block_j]

    def prod(indices: list[int], with_h: bool) -> Value:
        out: Value = 1
        for ki in indices:
            out = out * tables[ki][base[ki] | hbit if with_h else base[ki]]
        return out

    a0, a1 = prod(block_i, False), prod(block_i, True)
    b0, b1 = prod(block_j, False), prod(block_j, True)
    c = prod(rest, False)
    return a0, a1, b0, b1, c


def conditional_payoffs(
    spec: GameSpec,
    profile: StrategyProfile,
    h: str,
    i: int,
    j: int,
    conditioning: Mapping[str, Sequence[bool | None]],
) -> tuple[Value, Value]:
    """Conditional expected payoff of h with blocks i, j shipped separately
    (first value) versus merged into one shipment (second value).

    The difference is p(1-p)(a1-a0)(b1-b0)c, hence never negative: merging
    is ex-post optimal, whatever the rest of the realization did.
    """
    a0, a1, b0, b1, c = conditional_block_factors(spec, profile, h, i, j, conditioning)
    ph = spec.p.p[spec.h_index(h)]
    q = 1 - ph
    separate = (q * a0 + ph * a1) * (q * b0 + ph * b1) * c
    merged = (q * (a0 * b0) + ph * (a1 * b1)) * c
    return separate, merged


def best_replies(spec: GameSpec, profile: StrategyProfile, h: str) -> list[PartitionStrategy]:
    """All payoff-maximizing strategies of h against the fixed opponents.

    Ties are returned in full; the coarse strategy is always among them.
    """
    hi = spec.h_index(h)
    _validate_profile(spec, profile)
    candidates = spec.strategies(h)
    values = [
        expected_payoff(spec, profile.replace(hi, cand), h) for cand in candidates
    ]
    return [candidates[idx] for idx in argmax_ties(values)]


@dataclass(frozen=True)
class DominanceViolation:
    """Witness that a coarser strategy paid strictly less somewhere."""

    opponents: tuple[PartitionStrategy, ...]
    better: PartitionStrategy
    worse: PartitionStrategy
    payoff_better: Value
    payoff_worse: Value


@dataclass(frozen=True)
class DominanceCertificate:
    player: str
    holds: bool
    violation: DominanceViolation | None


def _strategy_lists(spec: GameSpec) -> list[list[PartitionStrategy]]:
    lists = [spec.strategies(h) for h in spec.suppliers]
    total = 1
    for lst in lists:
        total *= len(lst)
    if total > MAX_PROFILES:
        raise ValueError(f"profile space exceeds the {MAX_PROFILES} cap")
    return lists


def check_dominance(spec: GameSpec, h: str) -> DominanceCertificate:
    """Verify that coarsening h's strategy never lowers h's payoff,
    whatever the opponents play.  Returns the first counterexample found,
    if any, as a certificate."""
    hi = spec.h_index(h)
    lists = _strategy_lists(spec)
    own = lists[hi]
    crs = [
        [a is not b and coarser(a, b) for b in own]
        for a in own
    ]
    other_lists = [lst for gi, lst in enumerate(lists) if gi != hi]
    for others in itertools.product(*other_lists):
        strategies = list(others)
        strategies.insert(hi, own[0])
        profile = StrategyProfile(strategies)
        pays = [
            expected_payoff(spec, profile.replace(hi, cand), h) for cand in own
        ]
        for a, row in enumerate(crs):
            for b, is_coarser in enumerate(row):
                if is_coarser and not geq(pays[a], pays[b]):
                    return DominanceCertificate(
                        player=h,
                        holds=False,
                        violation=DominanceViolation(
                            opponents=tuple(others),
                            better=own[a],
                            worse=own[b],
                            payoff_better=pays[a],
                            payoff_worse=pays[b],
                        ),
                    )
    return DominanceCertificate(player=h, holds=True, violation=None)


def find_nash(spec: GameSpec) -> list[StrategyProfile]:
    """All pure-strategy profiles in which every strategy is a best reply."""
    lists = _strategy_lists(spec)
    ranges = [range(len(lst)) for lst in lists]
    payoff_at: dict[tuple[int, ...], tuple[Value, ...]] = {}
    for combo in itertools.product(*ranges):
        profile = StrategyProfile(lists[gi][ci] for gi, ci in enumerate(combo))
        payoff_at[combo] = _profile_payoffs(spec, profile)
    best: list[dict[tuple[int, ...], Value]] = [{} for _ in lists]
    for combo, pays in payoff_at.items():
        for gi, val in enumerate(pays):
            key = combo[:gi] + combo[gi + 1 :]
            cur = best[gi].get(key)
            if cur is None or val > cur:
                best[gi][key] = val
    out = []
    for combo, pays in payoff_at.items():
        if all(
            geq(val, best[gi][combo[:gi] + combo[gi + 1 :]])
            for gi, val in enumerate(pays)
        ):
            out.append(StrategyProfile(lists[gi][ci] for gi, ci in enumerate(combo)))
    return out


def scaled_spec(spec: GameSpec, kappa: Mapping[str, Value]) -> GameSpec:
    """Rescale each player's payoff by its own positive factor.

    The factor multiplies one designated payoff family per player (the
    first commodity's), so every product payoff of player h scales by
    exactly kappa[h] and argmax sets are untouched.
    """
    if set(kappa) != set(spec.suppliers):
        raise ValueError("kappa must be keyed by exactly the suppliers")
    for h, k in kappa.items():
        if not k > 0:
            raise ValueError(f"scale factor for {h!r} must be positive")
    if all(kappa[h] == 1 for h in spec.suppliers):
        return spec
    if not spec.commodities:
        raise ValueError("cannot scale a game with no commodities")
    first_row = tuple(
        f * kappa[h] for h, f in zip(spec.suppliers, spec.payoffs[0])
    )
    payoff_rows = (first_row,) + spec.payoffs[1:]
    symmetric = all(row.count(row[0]) == len(row) for row in payoff_rows)
    return GameSpec(
        spec.commodities, spec.suppliers, spec.supply, spec.p, payoff_rows, symmetric
    )
