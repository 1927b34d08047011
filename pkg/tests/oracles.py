"""Independent reference implementations used to cross-check the library.

Everything here works on plain dicts keyed by frozensets of element names
and enumerates coin outcomes literally, one coin at a time.  No bitmasks,
no recursion tricks, no code shared with the package under test: when a
library value and an oracle value agree, they agree for two different
reasons.
"""

from itertools import chain, combinations, product


def powerset(labels):
    """All subsets of `labels` as frozensets, smallest first."""
    items = sorted(labels)
    return [
        frozenset(c)
        for c in chain.from_iterable(
            combinations(items, r) for r in range(len(items) + 1)
        )
    ]


def table_of(fn):
    """SetFunction -> {frozenset: value} for oracle-side arithmetic."""
    return {
        frozenset(fn.ground.labels_of(m)): fn.values[m] for m in fn.ground.subsets()
    }


def probs_of(p):
    """CoinVector -> {label: probability}."""
    return {h: p.of(h) for h in p.ground.labels}


def subset_probability(probs, subset):
    """Chance the independently tossed coins land exactly on `subset`."""
    out = 1
    for h, ph in probs.items():
        out = out * (ph if h in subset else 1 - ph)
    return out


def mean(table, probs):
    """Expectation of a subset table under independent coins."""
    total = 0
    for s in powerset(probs):
        total += subset_probability(probs, s) * table[s]
    return total


def coupled_mean(ftab, gtab, probs, shared):
    """E[f(S1) g(S2)] by tossing the coins one at a time.

    Elements of `shared` get a single coin deciding membership in both S1
    and S2; every other element gets two independent coins.  This is the
    definition of the coupled product, spelled out with three nested
    subset loops.
    """
    labels = set(probs)
    shared = frozenset(shared)
    free = labels - shared
    total = 0
    for both in powerset(shared):
        w_both = 1
        for h in shared:
            w_both = w_both * (probs[h] if h in both else 1 - probs[h])
        for only1 in powerset(free):
            w1 = 1
            for h in free:
                w1 = w1 * (probs[h] if h in only1 else 1 - probs[h])
            for only2 in powerset(free):
                w2 = 1
                for h in free:
                    w2 = w2 * (probs[h] if h in only2 else 1 - probs[h])
                total += w_both * w1 * w2 * ftab[both | only1] * gtab[both | only2]
    return total


def pair_weights(probs, shared):
    """Joint law of (S1, S2) under the coupled tosses, zero entries dropped."""
    labels = set(probs)
    shared = frozenset(shared)
    free = labels - shared
    out = {}
    for both in powerset(shared):
        w_both = 1
        for h in shared:
            w_both = w_both * (probs[h] if h in both else 1 - probs[h])
        for only1 in powerset(free):
            w1 = 1
            for h in free:
                w1 = w1 * (probs[h] if h in only1 else 1 - probs[h])
            for only2 in powerset(free):
                w2 = 1
                for h in free:
                    w2 = w2 * (probs[h] if h in only2 else 1 - probs[h])
                w = w_both * w1 * w2
                if w == 0:
                    continue
                key = (both | only1, both | only2)
                out[key] = out.get(key, 0) + w
    return out


# -- decision scenarios ------------------------------------------------------


def production_value(x, y, alpha, beta, probs, pool):
    """Expected output of the two-input firm with inputs pooled on `pool`.

    x, y map supplier name to input amount; the pooled suppliers ship both
    inputs on one boat (one coin), the rest ship the two inputs separately.
    """
    ftab = {}
    gtab = {}
    for s in powerset(probs):
        sx = sum(x[h] for h in s)
        sy = sum(y[h] for h in s)
        # zero input means zero output whatever the exponent
        ftab[s] = 0 if sx == 0 else sx ** alpha
        gtab[s] = 0 if sy == 0 else sy ** beta
    return coupled_mean(ftab, gtab, probs, pool)


def military_probs(red_members, blue_members, probs, pool):
    """(both targets disabled, neither disabled, exactly one) for the strike.

    red_members / blue_members are the collections of ordnance subsets
    sufficient for the respective target.  Sites in `pool` host a single
    interceptor coin shared by both waves.
    """
    labels = set(probs)
    red = {s: 1 if s in red_members else 0 for s in powerset(labels)}
    blue = {s: 1 if s in blue_members else 0 for s in powerset(labels)}
    red_c = {s: 1 - red[s] for s in red}
    blue_c = {s: 1 - blue[s] for s in blue}
    both = coupled_mean(red, blue, probs, pool)
    neither = coupled_mean(red_c, blue_c, probs, pool)
    return both, neither, 1 - both - neither


def merger_prob(rule_a, rule_b, probs, pool):
    """Chance both boards approve when `pool` shareholders vote identically."""
    return coupled_mean(rule_a, rule_b, probs, pool)


def voting_table(weights, quota):
    """Weighted-majority rule as a subset table of 0/1."""
    return {
        s: 1 if sum(weights[h] for h in s) >= quota else 0
        for s in powerset(weights)
    }


# -- partition game ----------------------------------------------------------


def game_payoff(blocks, p_of, payoff, player):
    """Expected product payoff by enumerating every block arrival pattern.

    blocks: list of (owner, frozenset of commodities), one entry per
    shipment in the profile.  p_of: owner -> arrival probability.
    payoff: (commodity, frozenset of suppliers) -> factor value for
    `player`.  Commodities are recovered from the payoff keys.
    """
    commodities = sorted({k for k, _ in payoff})
    total = 0
    for bits in product((0, 1), repeat=len(blocks)):
        w = 1
        for (owner, _), b in zip(blocks, bits):
            w = w * (p_of[owner] if b else 1 - p_of[owner])
        if w == 0:
            continue
        arrived = {k: set() for k in commodities}
        for (owner, kset), b in zip(blocks, bits):
            if b:
                for k in kset:
                    arrived[k].add(owner)
        val = w
        for k in commodities:
            val = val * payoff[(k, frozenset(arrived[k]))]
        total += val
    return total


def conditional_game_payoffs(blocks, p_of, payoff, player, i, j, fixed_bits):
    """(separate, merged) conditional payoffs of `player` for blocks i, j.

    fixed_bits pins the arrival of every block except i and j; the
    conditional law then tosses either two coins (separate) or one coin
    (merged) for the remaining pair.  Pure Fraction arithmetic.
    """
    ph = p_of[blocks[i][0]]
    assert blocks[i][0] == blocks[j][0] == player

    def value(bit_i, bit_j):
        arrived = {}
        for idx, (owner, kset) in enumerate(blocks):
            if idx == i:
                b = bit_i
            elif idx == j:
                b = bit_j
            else:
                b = fixed_bits[idx]
            if b:
                for k in kset:
                    arrived.setdefault(k, set()).add(owner)
        out = 1
        commodities = sorted({k for k, _ in payoff})
        for k in commodities:
            out = out * payoff[(k, frozenset(arrived.get(k, ())))]
        return out

    q = 1 - ph
    separate = (
        q * q * value(0, 0)
        + q * ph * value(0, 1)
        + ph * q * value(1, 0)
        + ph * ph * value(1, 1)
    )
    merged = q * value(0, 0) + ph * value(1, 1)
    return separate, merged
