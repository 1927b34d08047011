"""Batch command-line front-end.

Subcommands: `convolve`, `scenario`, `game analyze`, `game simulate`, and
`verify`.  Configs and reports are JSON; subset tables are keyed by
comma-joined sorted element names ("" for the empty set) so reports do not
depend on label order.  Exact mode serializes rationals as "num/den"
strings and rejects float literals in configs.

Exit codes: 0 all verdicts pass, 1 a property violation was found (the
report carries a counterexample certificate), 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from . import generators
from .convolution import convolve, convolve_bruteforce, harris_gap
from .lattice import (
    CoinVector,
    GroundSet,
    MonotoneFamily,
    SetFunction,
    expectation,
    is_decreasing,
    is_increasing,
    random_increasing,
    up_closure,
)
from .montecarlo import estimate_convolution, estimate_payoff
from .numerics import Value, close, format_value, geq, parse_value
from .partition_game import (
    GameSpec,
    StrategyProfile,
    best_replies,
    check_dominance,
    conditional_block_factors,
    conditional_payoffs,
    expected_payoff,
    find_nash,
    scaled_spec,
)
from .scenarios import (
    MergerScenario,
    MilitaryScenario,
    TwoInputProduction,
    WeightedVotingSpec,
    merger_table,
    military_tables,
    optimal_strategies,
    production_table,
    weighted_voting,
)

GAME_TABLE_CAP = 512
EXPOST_BLOCK_CAP = 16


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------- parsing


def _mask_key(ground: GroundSet, mask: int) -> str:
    return ",".join(sorted(ground.labels_of(mask)))


def _table_json(fn: SetFunction) -> dict[str, object]:
    return {
        _mask_key(fn.ground, m): format_value(fn.values[m]) for m in fn.ground.subsets()
    }


def _parse_key(ground: GroundSet, key: str, path: str) -> int:
    labels = [] if key == "" else key.split(",")
    try:
        return ground.mask_of(labels)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"{path}: bad subset key {key!r}: {exc}") from None


def _value(raw: object, mode: str, path: str) -> Value:
    try:
        v = parse_value(raw)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if mode == "exact":
        if isinstance(v, float):
            raise ConfigError(
                f"{path}: float literal {raw!r} is not allowed in exact mode; "
                'use an integer or a rational string like "3/4"'
            )
        return v
    return float(v)


def _ground(cfg: Mapping, field: str) -> GroundSet:
    labels = cfg.get(field)
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ConfigError(f"{field}: expected a list of element names")
    try:
        return GroundSet(labels)
    except ValueError as exc:
        raise ConfigError(f"{field}: {exc}") from None


def _coins(cfg: Mapping, ground: GroundSet, mode: str, path: str = "p") -> CoinVector:
    obj = cfg.get("p")
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object mapping element to probability")
    if set(obj) != set(ground.labels):
        raise ConfigError(f"{path}: must give exactly one probability per element")
    try:
        return CoinVector(ground, (_value(obj[h], mode, f"{path}.{h}") for h in ground.labels))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _setfunction(obj: object, ground: GroundSet, mode: str, path: str) -> SetFunction:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    forms = [k for k in ("table", "weights", "constant") if k in obj]
    if len(forms) != 1:
        raise ConfigError(f"{path}: give exactly one of 'table', 'weights', 'constant'")
    form = forms[0]
    if form == "constant":
        return SetFunction.constant(ground, _value(obj["constant"], mode, f"{path}.constant"))
    body = obj[form]
    if not isinstance(body, dict):
        raise ConfigError(f"{path}.{form}: expected an object keyed by subsets")
    entries = {
        _parse_key(ground, key, f"{path}.{form}"): _value(v, mode, f"{path}.{form}.{key!r}")
        for key, v in body.items()
    }
    if form == "weights":
        try:
            f = SetFunction(
                ground,
                _zeta(ground, entries),
            )
        except ValueError as exc:
            raise ConfigError(f"{path}.weights: {exc}") from None
        return f
    missing = [m for m in ground.subsets() if m not in entries]
    if missing:
        raise ConfigError(
            f"{path}.table: missing entry for subset {_mask_key(ground, missing[0])!r}"
        )
    return SetFunction(ground, (entries[m] for m in ground.subsets()))


def _zeta(ground: GroundSet, weights: Mapping[int, Value]) -> list[Value]:
    tab: list[Value] = [0] * (1 << ground.n)
    for m, w in weights.items():
        tab[m] = tab[m] + w
    for i in range(ground.n):
        bit = 1 << i
        for mask in range(1 << ground.n):
            if mask & bit:
                tab[mask] = tab[mask] + tab[mask ^ bit]
    return tab


def _subset_list(obj: object, ground: GroundSet, path: str) -> list[int]:
    if not isinstance(obj, list):
        raise ConfigError(f"{path}: expected a list of subsets")
    out = []
    for idx, entry in enumerate(obj):
        if not isinstance(entry, list) or not all(isinstance(x, str) for x in entry):
            raise ConfigError(f"{path}[{idx}]: expected a list of element names")
        try:
            out.append(ground.mask_of(entry))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"{path}[{idx}]: {exc}") from None
    return out


def _family(obj: object, ground: GroundSet, path: str) -> MonotoneFamily:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    if ("seeds" in obj) == ("members" in obj):
        raise ConfigError(f"{path}: give exactly one of 'seeds' or 'members'")
    if "seeds" in obj:
        return up_closure(ground, _subset_list(obj["seeds"], ground, f"{path}.seeds"))
    members = _subset_list(obj["members"], ground, f"{path}.members")
    table = [False] * (1 << ground.n)
    for m in members:
        table[m] = True
    try:
        return MonotoneFamily(ground, table)
    except ValueError as exc:
        raise ConfigError(f"{path}.members: {exc}") from None


def _voting_rule(obj: object, ground: GroundSet, mode: str, path: str) -> SetFunction:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")
    if ("weights" in obj) == ("table" in obj):
        raise ConfigError(f"{path}: give exactly one of 'weights' (with 'quota') or 'table'")
    if "table" in obj:
        return _setfunction({"table": obj["table"]}, ground, mode, path)
    wobj = obj["weights"]
    if not isinstance(wobj, dict) or set(wobj) != set(ground.labels):
        raise ConfigError(f"{path}.weights: must give exactly one weight per element")
    if "quota" not in obj:
        raise ConfigError(f"{path}: voting weights need a 'quota'")
    try:
        spec = WeightedVotingSpec(
            ground,
            tuple(_value(wobj[h], mode, f"{path}.weights.{h}") for h in ground.labels),
            _value(obj["quota"], mode, f"{path}.quota"),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return weighted_voting(spec)


def _load_config(path: str, mode_flag: str | None, expected_kinds: Sequence[str]) -> tuple[dict, str]:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be an object")
    kind = cfg.get("kind")
    if kind not in expected_kinds:
        raise ConfigError(
            f"{path}: kind must be one of {list(expected_kinds)}, got {kind!r}"
        )
    mode = mode_flag or cfg.get("mode", "float")
    if mode not in ("exact", "float"):
        raise ConfigError(f"{path}: mode must be 'exact' or 'float', got {mode!r}")
    return cfg, mode


def _check_max_ground(ground: GroundSet, limit: int | None) -> None:
    if limit is not None and ground.n > limit:
        raise ConfigError(
            f"ground set has {ground.n} elements, above the --max-ground limit {limit}"
        )


# ---------------------------------------------------------------- reports


def _emit(report: dict, out: str | None, tables: Mapping[str, Mapping[str, object]], want_csv: bool) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if out is None:
        return
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(text + "\n")
    if want_csv:
        for name, table in tables.items():
            with open(out_dir / f"{name}.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["subset", "value"])
                for key in sorted(table):
                    writer.writerow([key, table[key]])


def _exit_code(report: dict) -> int:
    return 0 if report.get("verdict") == "pass" else 1


# ---------------------------------------------------------------- convolve


def _cmd_convolve(args) -> int:
    cfg, mode = _load_config(args.config, args.mode, ("convolution",))
    ground = _ground(cfg, "ground")
    _check_max_ground(ground, args.max_ground)
    p = _coins(cfg, ground, mode)
    f = _setfunction(cfg.get("f"), ground, mode, "f")
    g = _setfunction(cfg.get("g"), ground, mode, "g")
    table = convolve(f, g, p)
    f_inc = is_increasing(f)
    g_inc = is_increasing(g)
    result_inc = is_increasing(table)
    gap = harris_gap(f, g, p)
    end_empty = table.values[0]
    end_full = table.values[-1]
    exp_product = expectation(f, p) * expectation(g, p)
    product_exp = expectation(f * g, p)
    violations = []
    if f_inc and g_inc and not result_inc:
        violations.append("inputs increasing but the convolution is not")
    if f_inc and g_inc and not geq(gap, 0):
        violations.append("negative correlation gap for increasing inputs")
    if not close(end_empty, exp_product):
        violations.append("empty-set value differs from the product of expectations")
    if not close(end_full, product_exp):
        violations.append("full-set value differs from the expectation of the product")
    report = {
        "kind": "convolution",
        "mode": mode,
        "ground": list(ground.labels),
        "table": _table_json(table),
        "f_increasing": f_inc,
        "g_increasing": g_inc,
        "result_increasing": result_inc,
        "harris_gap": format_value(gap),
        "endpoints": {
            "empty": format_value(end_empty),
            "full": format_value(end_full),
            "product_of_expectations": format_value(exp_product),
            "expectation_of_product": format_value(product_exp),
        },
        "violations": violations,
        "verdict": "pass" if not violations else "fail",
    }
    _emit(report, args.out, {"convolution": report["table"]}, args.csv)
    return _exit_code(report)


# ---------------------------------------------------------------- scenario


def _scenario_production(cfg: Mapping, mode: str, limit: int | None) -> tuple[dict, dict]:
    ground = _ground(cfg, "suppliers")
    _check_max_ground(ground, limit)
    p = _coins(cfg, ground, mode)

    def amounts(field: str) -> tuple[Value, ...]:
        obj = cfg.get(field)
        if not isinstance(obj, dict) or set(obj) != set(ground.labels):
            raise ConfigError(f"{field}: must give one amount per supplier")
        return tuple(_value(obj[h], mode, f"{field}.{h}") for h in ground.labels)

    try:
        sc = TwoInputProduction(
            ground,
            amounts("x"),
            amounts("y"),
            _value(cfg.get("alpha"), mode, "alpha"),
            _value(cfg.get("beta"), mode, "beta"),
            p,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    table = production_table(sc)
    best = optimal_strategies(table)
    checks = {
        "payoff_increasing": is_increasing(table),
        "optimal_contains_full": ground.full in best,
    }
    report = {
        "payoffs": _table_json(table),
        "optimal": sorted(_mask_key(ground, m) for m in best),
        "checks": checks,
    }
    return report, {"payoffs": report["payoffs"]}


def _scenario_military(cfg: Mapping, mode: str, limit: int | None) -> tuple[dict, dict]:
    ground = _ground(cfg, "sites")
    _check_max_ground(ground, limit)
    p = _coins(cfg, ground, mode)
    sc = MilitaryScenario(
        ground,
        c_red=_family(cfg.get("red"), ground, "red"),
        c_blue=_family(cfg.get("blue"), ground, "blue"),
        p=p,
    )
    both, neither, one = military_tables(sc)
    best = optimal_strategies(both)
    total = both + neither + one
    checks = {
        "both_disabled_increasing": is_increasing(both),
        "neither_disabled_increasing": is_increasing(neither),
        "exactly_one_decreasing": is_decreasing(one),
        "outcomes_sum_to_one": all(close(v, 1) for v in total.values),
        "optimal_contains_full": ground.full in best,
    }
    report = {
        "both_disabled": _table_json(both),
        "neither_disabled": _table_json(neither),
        "exactly_one": _table_json(one),
        "optimal": sorted(_mask_key(ground, m) for m in best),
        "checks": checks,
    }
    tables = {
        "both_disabled": report["both_disabled"],
        "neither_disabled": report["neither_disabled"],
        "exactly_one": report["exactly_one"],
    }
    return report, tables


def _scenario_merger(cfg: Mapping, mode: str, limit: int | None) -> tuple[dict, dict]:
    ground = _ground(cfg, "shareholders")
    _check_max_ground(ground, limit)
    p = _coins(cfg, ground, mode)
    try:
        sc = MergerScenario(
            ground,
            f_a=_voting_rule(cfg.get("a"), ground, mode, "a"),
            f_b=_voting_rule(cfg.get("b"), ground, mode, "b"),
            p=p,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    table = merger_table(sc)
    best = optimal_strategies(table)
    checks = {
        "probability_increasing": is_increasing(table),
        "optimal_contains_full": ground.full in best,
    }
    report = {
        "approval_probability": _table_json(table),
        "optimal": sorted(_mask_key(ground, m) for m in best),
        "checks": checks,
    }
    return report, {"approval_probability": report["approval_probability"]}


def _cmd_scenario(args) -> int:
    cfg, mode = _load_config(args.config, args.mode, ("production", "military", "merger"))
    kind = cfg["kind"]
    body, tables = {
        "production": _scenario_production,
        "military": _scenario_military,
        "merger": _scenario_merger,
    }[kind](cfg, mode, args.max_ground)
    ok = all(body["checks"].values())
    report = {"kind": kind, "mode": mode, **body, "verdict": "pass" if ok else "fail"}
    _emit(report, args.out, tables, args.csv)
    return _exit_code(report)


# ---------------------------------------------------------------- game


def _game_spec(cfg: Mapping, mode: str) -> GameSpec:
    commodities = cfg.get("commodities")
    suppliers = cfg.get("suppliers")
    if not isinstance(commodities, list) or not isinstance(suppliers, list):
        raise ConfigError("commodities and suppliers must be lists of names")
    try:
        hground = GroundSet(suppliers)
    except ValueError as exc:
        raise ConfigError(f"suppliers: {exc}") from None
    p = _coins(cfg, hground, mode)
    supply = cfg.get("supply")
    if not isinstance(supply, dict):
        raise ConfigError("supply: expected an object mapping supplier to commodities")
    payoffs_obj = cfg.get("payoffs")
    if not isinstance(payoffs_obj, dict):
        raise ConfigError("payoffs: expected an object keyed by commodity")
    payoffs: dict[str, object] = {}
    for k, entry in payoffs_obj.items():
        if not isinstance(entry, dict):
            raise ConfigError(f"payoffs.{k}: expected an object")
        if any(key in entry for key in ("table", "weights", "constant")):
            payoffs[k] = _setfunction(entry, hground, mode, f"payoffs.{k}")
        else:
            payoffs[k] = {
                h: _setfunction(sub, hground, mode, f"payoffs.{k}.{h}")
                for h, sub in entry.items()
            }
    try:
        return GameSpec.build(commodities, suppliers, supply, p, payoffs)
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None


def _game_profile(cfg: Mapping, spec: GameSpec, field: str = "profile") -> StrategyProfile | None:
    obj = cfg.get(field)
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise ConfigError(f"{field}: expected an object mapping supplier to block lists")
    try:
        return spec.profile(obj)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"{field}: {exc}") from None


def _profile_json(profile: StrategyProfile) -> dict[str, list[list[str]]]:
    return {s.owner: [list(b) for b in s.blocks] for s in profile.strategies}


def _profile_key(profile: StrategyProfile) -> str:
    return ";".join(
        s.owner + ":" + "|".join(",".join(b) for b in s.blocks) for s in profile.strategies
    )


def _iter_profiles(spec: GameSpec):
    lists = [spec.strategies(h) for h in spec.suppliers]
    for combo in itertools.product(*lists):
        yield StrategyProfile(combo)


def _expost_sweep(spec: GameSpec, profile: StrategyProfile, mode: str) -> dict:
    total_blocks = sum(len(s.blocks) for s in profile.strategies)
    if total_blocks > EXPOST_BLOCK_CAP:
        raise ConfigError(f"ex-post sweep is limited to {EXPOST_BLOCK_CAP} blocks")
    checked = 0
    for hi, h in enumerate(spec.suppliers):
        strat = profile.strategies[hi]
        nb = len(strat.blocks)
        if nb < 2:
            continue
        others = [
            (gi, bi)
            for gi, s in enumerate(profile.strategies)
            for bi in range(len(s.blocks))
        ]
        for i in range(nb):
            for j in range(i + 1, nb):
                free = [(gi, bi) for gi, bi in others if not (gi == hi and bi in (i, j))]
                for bits in itertools.product((False, True), repeat=len(free)):
                    conditioning: dict[str, list[bool | None]] = {
                        g: [None if (gi == hi and bi in (i, j)) else False for bi in range(len(s.blocks))]
                        for gi, (g, s) in enumerate(zip(spec.suppliers, profile.strategies))
                    }
                    for (gi, bi), bit in zip(free, bits):
                        conditioning[spec.suppliers[gi]][bi] = bit
                    sep, merged = conditional_payoffs(spec, profile, h, i, j, conditioning)
                    a0, a1, b0, b1, c = conditional_block_factors(
                        spec, profile, h, i, j, conditioning
                    )
                    ph = spec.p.p[hi]
                    identity = ph * (1 - ph) * (a1 - a0) * (b1 - b0) * c
                    checked += 1
                    if not geq(merged, sep) or not close(merged - sep, identity):
                        return {
                            "checked": checked,
                            "holds": False,
                            "violation": {
                                "player": h,
                                "blocks": [i, j],
                                "conditioning": {
                                    g: [b for b in bits_]
                                    for g, bits_ in conditioning.items()
                                },
                                "separate": format_value(sep),
                                "merged": format_value(merged),
                            },
                        }
    return {"checked": checked, "holds": True, "violation": None}


def _cmd_game_analyze(args) -> int:
    cfg, mode = _load_config(args.config, args.mode, ("game",))
    spec = _game_spec(cfg, mode)
    _check_max_ground(spec.p.ground, args.max_ground)
    profile = _game_profile(cfg, spec)
    lists = [spec.strategies(h) for h in spec.suppliers]
    profile_count = 1
    for lst in lists:
        profile_count *= len(lst)

    payoff_tables: dict[str, dict[str, object]] | None = None
    if profile_count <= GAME_TABLE_CAP:
        payoff_tables = {h: {} for h in spec.suppliers}
        for prof in _iter_profiles(spec):
            key = _profile_key(prof)
            for h in spec.suppliers:
                payoff_tables[h][key] = format_value(expected_payoff(spec, prof, h))

    dominance = {}
    all_hold = True
    for h in spec.suppliers:
        cert = check_dominance(spec, h)
        all_hold = all_hold and cert.holds
        entry: dict[str, object] = {"holds": cert.holds}
        if cert.violation is not None:
            entry["violation"] = {
                "opponents": [
                    {s.owner: [list(b) for b in s.blocks]} for s in cert.violation.opponents
                ],
                "better": [list(b) for b in cert.violation.better.blocks],
                "worse": [list(b) for b in cert.violation.worse.blocks],
                "payoff_better": format_value(cert.violation.payoff_better),
                "payoff_worse": format_value(cert.violation.payoff_worse),
            }
        dominance[h] = entry

    nash = find_nash(spec)
    coarse = spec.coarse_profile()
    nash_has_coarse = coarse in nash

    expost_profile = profile if profile is not None else spec.finest_profile()
    expost = _expost_sweep(spec, expost_profile, mode)

    report: dict[str, object] = {
        "kind": "game",
        "mode": mode,
        "suppliers": list(spec.suppliers),
        "commodities": list(spec.commodities),
        "profile_count": profile_count,
        "dominance": dominance,
        "nash": [_profile_json(prof) for prof in nash],
        "nash_contains_all_coarse": nash_has_coarse,
        "expost": expost,
        "verdict": "pass" if (all_hold and nash_has_coarse and expost["holds"]) else "fail",
    }
    if payoff_tables is not None:
        report["payoff_tables"] = payoff_tables
    if profile is not None:
        report["profile"] = _profile_json(profile)
        report["profile_payoffs"] = {
            h: format_value(expected_payoff(spec, profile, h)) for h in spec.suppliers
        }
    _emit(report, args.out, {}, False)
    return _exit_code(report)


def _cmd_game_simulate(args) -> int:
    cfg, mode = _load_config(args.config, args.mode, ("game",))
    spec = _game_spec(cfg, mode)
    _check_max_ground(spec.p.ground, args.max_ground)
    profile = _game_profile(cfg, spec)
    if profile is None:
        profile = spec.coarse_profile()
    per_player = {}
    ok = True
    for idx, h in enumerate(spec.suppliers):
        est = estimate_payoff(spec, profile, h, args.samples, args.seed + idx)
        exact = float(expected_payoff(spec, profile, h))
        err = abs(est.mean - exact)
        within = err <= 4 * est.stderr or close(est.mean, exact)
        ok = ok and within
        per_player[h] = {
            "estimate": {
                "mean": est.mean,
                "stderr": est.stderr,
                "samples": est.samples,
                "seed": est.seed,
            },
            "exact": exact,
            "within_4_stderr": within,
        }
    report = {
        "kind": "game_simulation",
        "mode": mode,
        "profile": _profile_json(profile),
        "per_player": per_player,
        "verdict": "pass" if ok else "fail",
    }
    _emit(report, args.out, {}, False)
    return _exit_code(report)


# ---------------------------------------------------------------- verify


def _verify_monotone_exhaustive(seed: int, max_ground: int) -> dict:
    from .lattice import all_monotone_indicators

    grid = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    instances = 0
    for n in range(1, min(3, max_ground) + 1):
        ground = GroundSet([f"h{i}" for i in range(n)])
        fns = all_monotone_indicators(ground)
        for ps in itertools.product(grid, repeat=n):
            p = CoinVector(ground, ps)
            for f in fns:
                for g in fns:
                    table = convolve(f, g, p)
                    instances += 1
                    if not is_increasing(table):
                        return _check("monotone_exhaustive", instances, {
                            "n": n,
                            "p": [format_value(v) for v in ps],
                            "f": [int(v) for v in f.values],
                            "g": [int(v) for v in g.values],
                        })
    return _check("monotone_exhaustive", instances)


def _verify_monotone_random(seed: int, max_ground: int, count: int = 800) -> dict:
    rng = random.Random(seed)
    instances = 0
    for _ in range(count):
        n = rng.randint(1, min(6, max_ground))
        ground = GroundSet([f"h{i}" for i in range(n)])
        f = random_increasing(rng, ground, rng.randint(0, 2 * n + 2))
        g = random_increasing(rng, ground, rng.randint(0, 2 * n + 2))
        p = generators.random_coin_vector(rng, ground, degenerate=True)
        table = convolve(f, g, p)
        instances += 1
        if not is_increasing(table):
            return _check("monotone_random", instances, {"n": n})
        if not geq(harris_gap(f, g, p), 0):
            return _check("monotone_random", instances, {"n": n, "property": "harris"})
    return _check("monotone_random", instances)


def _verify_oracle(seed: int, max_ground: int, count: int = 120) -> dict:
    rng = random.Random(seed)
    instances = 0
    for _ in range(count):
        n = rng.randint(1, min(6, max_ground))
        exact = n <= 4 and rng.random() < 0.5
        ground = GroundSet([f"h{i}" for i in range(n)])
        f = generators.random_setfunction(rng, ground, exact=exact)
        g = generators.random_setfunction(rng, ground, exact=exact)
        p = generators.random_coin_vector(rng, ground, exact=exact, degenerate=True)
        table = convolve(f, g, p)
        instances += 1
        for mask in ground.subsets():
            direct = convolve_bruteforce(f, g, p, mask)
            if not close(table.values[mask], direct):
                return _check("oracle_equivalence", instances, {
                    "n": n,
                    "subset": _mask_key(ground, mask),
                    "fast": format_value(table.values[mask]),
                    "direct": format_value(direct),
                })
    return _check("oracle_equivalence", instances)


def _verify_single_element_identity(seed: int, count: int = 400) -> dict:
    rng = random.Random(seed)
    ground = GroundSet(["h0"])
    instances = 0
    for _ in range(count):
        a, a1, b, b1 = (Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(4))
        ph = Fraction(rng.randint(0, 12), 12)
        table = convolve(
            SetFunction(ground, (a, a1)), SetFunction(ground, (b, b1)), CoinVector(ground, (ph,))
        )
        instances += 1
        if table.values[1] - table.values[0] != ph * (1 - ph) * (a1 - a) * (b1 - b):
            return _check("single_element_identity", instances, {
                "f": [format_value(a), format_value(a1)],
                "g": [format_value(b), format_value(b1)],
                "p": format_value(ph),
            })
    return _check("single_element_identity", instances)


def _verify_scenarios(seed: int, max_ground: int, count: int = 80) -> dict:
    rng = random.Random(seed)
    instances = 0
    cap = min(5, max_ground)
    for _ in range(count):
        n = rng.randint(1, cap)
        ground = GroundSet([f"h{i}" for i in range(n)])
        sc_p = generators.random_production(rng, ground)
        t1 = production_table(sc_p)
        ok = is_increasing(t1) and ground.full in optimal_strategies(t1)
        sc_m = generators.random_military(rng, ground)
        both, neither, one = military_tables(sc_m)
        ok = ok and is_increasing(both) and is_increasing(neither) and is_decreasing(one)
        ok = ok and all(close(v, 1) for v in (both + neither + one).values)
        ok = ok and ground.full in optimal_strategies(both)
        sc_g = generators.random_merger(rng, ground)
        t3 = merger_table(sc_g)
        ok = ok and is_increasing(t3) and ground.full in optimal_strategies(t3)
        instances += 1
        if not ok:
            return _check("scenario_properties", instances, {"n": n, "seed": seed})
    return _check("scenario_properties", instances)


def _verify_games(seed: int, count: int = 12) -> dict:
    rng = random.Random(seed)
    instances = 0
    for idx in range(count):
        strict = idx % 3 == 0
        spec = generators.random_game_spec(rng, strict=strict)
        for h in spec.suppliers:
            cert = check_dominance(spec, h)
            if not cert.holds:
                return _check("game_dominance_nash", instances, {"player": h})
        nash = find_nash(spec)
        coarse = spec.coarse_profile()
        instances += 1
        if coarse not in nash:
            return _check("game_dominance_nash", instances, {"missing": "all-coarse profile"})
        if strict and len(nash) != 1:
            return _check("game_dominance_nash", instances, {
                "expected": "unique equilibrium under strict payoffs",
                "found": len(nash),
            })
    return _check("game_dominance_nash", instances)


def _verify_expost(seed: int, count: int = 30) -> dict:
    rng = random.Random(seed)
    instances = 0
    for _ in range(count):
        spec = generators.random_game_spec(rng)
        profile = generators.random_profile(rng, spec)
        result = _expost_sweep(spec, profile, "exact")
        instances += result["checked"]
        if not result["holds"]:
            return _check("expost_identity", instances, result["violation"])
    return _check("expost_identity", instances)


def _verify_scaling(seed: int, count: int = 15) -> dict:
    rng = random.Random(seed)
    instances = 0
    for _ in range(count):
        spec = generators.random_game_spec(rng)
        kappa = {h: Fraction(rng.randint(1, 40), 4) for h in spec.suppliers}
        scaled = scaled_spec(spec, kappa)
        profile = generators.random_profile(rng, spec)
        instances += 1
        for h in spec.suppliers:
            if best_replies(spec, profile, h) != best_replies(scaled, profile, h):
                return _check("scaling_invariance", instances, {"player": h})
        if find_nash(spec) != find_nash(scaled):
            return _check("scaling_invariance", instances, {"difference": "nash set"})
    return _check("scaling_invariance", instances)


def _verify_montecarlo(seed: int, samples: int, count: int = 10) -> dict:
    rng = random.Random(seed)
    instances = 0
    for idx in range(count):
        if idx % 2 == 0:
            spec = generators.random_game_spec(rng)
            profile = generators.random_profile(rng, spec)
            h = rng.choice(spec.suppliers)
            exact = float(expected_payoff(spec, profile, h))
            est = estimate_payoff(spec, profile, h, samples, seed + 1000 + idx)
        else:
            n = rng.randint(1, 5)
            ground = GroundSet([f"h{i}" for i in range(n)])
            f = random_increasing(rng, ground, rng.randint(1, 2 * n + 2))
            g = random_increasing(rng, ground, rng.randint(1, 2 * n + 2))
            p = generators.random_coin_vector(rng, ground)
            mask = rng.randrange(1 << n)
            exact = float(convolve(f, g, p).values[mask])
            est = estimate_convolution(f, g, p, mask, samples, seed + 1000 + idx)
        instances += 1
        if abs(est.mean - exact) > 4 * est.stderr and not close(est.mean, exact):
            return _check("montecarlo_consistency", instances, {
                "exact": exact,
                "mean": est.mean,
                "stderr": est.stderr,
            })
    return _check("montecarlo_consistency", instances)


def _check(name: str, instances: int, certificate: dict | None = None) -> dict:
    return {
        "name": name,
        "instances": instances,
        "ok": certificate is None,
        "certificate": certificate,
    }


def _cmd_verify(args) -> int:
    checks = [
        _verify_monotone_exhaustive(args.seed, args.max_ground),
        _verify_monotone_random(args.seed + 1, args.max_ground),
        _verify_oracle(args.seed + 2, args.max_ground),
        _verify_single_element_identity(args.seed + 3),
        _verify_scenarios(args.seed + 4, args.max_ground),
        _verify_games(args.seed + 5),
        _verify_expost(args.seed + 6),
        _verify_scaling(args.seed + 7),
        _verify_montecarlo(args.seed + 8, args.samples),
    ]
    ok = all(c["ok"] for c in checks)
    report = {
        "kind": "verify",
        "max_ground": args.max_ground,
        "seed": args.seed,
        "samples": args.samples,
        "checks": checks,
        "verdict": "pass" if ok else "fail",
    }
    _emit(report, args.out, {}, False)
    for c in checks:
        status = "ok" if c["ok"] else "FAIL"
        print(f"{c['name']}: {status} ({c['instances']} instances)", file=sys.stderr)
    return _exit_code(report)


# ---------------------------------------------------------------- wiring


def _add_common(sub: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        sub.add_argument("--config", required=True, help="path to the JSON config")
        sub.add_argument("--mode", choices=("exact", "float"), help="override the config's numeric mode")
    sub.add_argument("--out", help="directory for report.json (and CSV tables with --csv)")
    sub.add_argument("--max-ground", type=int, default=None, help="reject ground sets larger than N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskpool",
        description="Exact risk-pooling analysis: convolution tables, decision scenarios, partition games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_conv = sub.add_parser("convolve", help="full convolution table with property verdicts")
    _add_common(p_conv)
    p_conv.add_argument("--csv", action="store_true", help="also export tables as CSV")
    p_conv.set_defaults(func=_cmd_convolve)

    p_sc = sub.add_parser("scenario", help="payoff table, optimal strategies, monotonicity verdicts")
    _add_common(p_sc)
    p_sc.add_argument("--csv", action="store_true", help="also export tables as CSV")
    p_sc.set_defaults(func=_cmd_scenario)

    p_game = sub.add_parser("game", help="partition-game analysis")
    game_sub = p_game.add_subparsers(dest="game_command", required=True)

    p_an = game_sub.add_parser("analyze", help="payoff tables, dominance, Nash, ex-post sweep")
    _add_common(p_an)
    p_an.set_defaults(func=_cmd_game_analyze)

    p_sim = game_sub.add_parser("simulate", help="Monte Carlo estimates against exact payoffs")
    _add_common(p_sim)
    p_sim.add_argument("--samples", type=int, default=100000, help="sample count per player")
    p_sim.add_argument("--seed", type=int, default=0, help="base seed")
    p_sim.set_defaults(func=_cmd_game_simulate)

    p_ver = sub.add_parser("verify", help="run the property suite at configured sizes")
    p_ver.add_argument("--out", help="directory for report.json")
    p_ver.add_argument("--max-ground", type=int, default=5, help="largest ground set in sweeps")
    p_ver.add_argument("--seed", type=int, default=0, help="base seed for the sweeps")
    p_ver.add_argument("--samples", type=int, default=20000, help="Monte Carlo samples per check")
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
