"""Seeded batch verification and the lattice counterexample search.

Instance ``k`` of a batch is generated from its own seed
``derive_seed(master_seed, k)``: the first 8 bytes (big-endian) of
``blake2b(f"{master_seed}:{k}")``. Nothing depends on generation order,
so reports are byte-identical for identical configs.
"""
from __future__ import annotations

import hashlib
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import format_rational, parse_rational
from .errors import ConfigurationError
from .functional import FunctionalInstance, e_n
from .instances import (
    instance_from_json,
    instance_to_json,
    series_from_json,
    series_to_json,
)
from .series import FunctionSeries, check_nonnegativity, corollary_direct, corollary_via_en
from .spaces import (
    MAX_CHAIN_N,
    MAX_GROUND_SIZE,
    ChainSpace,
    MonotoneFn,
    SubsetLattice,
    fkg_check,
    point_mass_chain,
    product_measure,
    random_chain_space,
    random_fkg_measure,
    random_monotone_fn,
)

HEURISTIC_NOTE = (
    "generator emphasis (zero masses, near-product couplings, restricted "
    "supports, step functions) is a search heuristic with no guarantee of "
    "where extremes lie")


def derive_seed(master_seed: int, index: int) -> int:
    h = hashlib.blake2b(f"{master_seed}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _pick(rng: random.Random, mix: dict[str, float]) -> str:
    x = rng.random()
    acc = 0.0
    keys = sorted(mix)
    for k in keys:
        acc += mix[k]
        if x < acc:
            return k
    return keys[-1]


@dataclass
class SearchConfig:
    master_seed: int = 0
    instance_count: int = 100
    n_range: tuple[int, int] = (2, 5)
    N_range: tuple[int, int] = (1, 5)
    ground_size_range: tuple[int, int] = (2, 3)
    max_denominator: int = 64
    generator_mix: dict = field(default_factory=lambda: {"mobius": 0.5, "repair": 0.2, "step": 0.3})
    measure_mix: dict = field(default_factory=lambda: {"random": 0.9, "point_mass": 0.1})
    fkg_mix: dict = field(default_factory=lambda: {"generic": 0.4, "near_product": 0.3, "sparse": 0.3})
    time_budget_seconds: int = 0
    T: int = 6
    lattice_count: int = 0
    include_n2: bool = True
    reduction_checks: int = 20
    top_k: int = 5

    def validate(self, *, chain: bool = False, lattice: bool = False) -> None:
        for name in ("generator_mix", "measure_mix", "fkg_mix"):
            mix = getattr(self, name)
            if any(v < 0 for v in mix.values()) or abs(sum(mix.values()) - 1) > 1e-9:
                raise ConfigurationError(f"{name} proportions must be >= 0 and sum to 1")
        lo, hi = self.n_range
        if not 1 <= lo <= hi <= 7:
            raise ConfigurationError(f"n_range {self.n_range} outside 1..7")
        if chain:
            lo, hi = self.N_range
            if not 1 <= lo <= hi <= MAX_CHAIN_N:
                raise ConfigurationError(f"N_range {self.N_range} outside 1..{MAX_CHAIN_N}")
        if lattice:
            lo, hi = self.ground_size_range
            if not 1 <= lo <= hi <= MAX_GROUND_SIZE:
                raise ConfigurationError(
                    f"ground_size_range {self.ground_size_range} outside 1..{MAX_GROUND_SIZE}")
        if self.max_denominator < 1 or self.instance_count < 0:
            raise ConfigurationError("max_denominator must be >= 1 and instance_count >= 0")

    def to_json(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        d["N_range"] = list(self.N_range)
        d["ground_size_range"] = list(self.ground_size_range)
        return d


@dataclass
class Certificate:
    """Self-contained record of one exactly evaluated quantity."""

    instance: dict
    quantity: str
    value: Fraction
    provenance: dict
    fkg: dict | None = None

    def to_json(self) -> dict:
        d = {"instance": self.instance, "quantity": self.quantity,
             "value": format_rational(self.value), "provenance": self.provenance}
        if self.fkg is not None:
            d["fkg"] = self.fkg
        return d

    @classmethod
    def from_json(cls, d: dict) -> Certificate:
        return cls(d["instance"], d["quantity"], parse_rational(d["value"]),
                   d["provenance"], d.get("fkg"))

    def reevaluate(self) -> Fraction:
        if self.quantity == "E_n":
            return e_n(instance_from_json(self.instance))
        if self.quantity.startswith("series_t^"):
            k = int(self.quantity.split("^", 1)[1])
            p = series_from_json(self.instance)
            return corollary_direct(p)[k]
        raise ValueError(f"unknown quantity {self.quantity!r}")

    def recheck(self) -> bool:
        return self.reevaluate() == self.value


def _functions(space, rng: random.Random, n: int, cfg: SearchConfig) -> list[MonotoneFn]:
    return [random_monotone_fn(space, rng.getrandbits(64), cfg.max_denominator,
                               _pick(rng, cfg.generator_mix)) for _ in range(n)]


def chain_instance(cfg: SearchConfig, index: int) -> FunctionalInstance:
    rng = random.Random(derive_seed(cfg.master_seed, index))
    n = rng.randint(*cfg.n_range)
    N = rng.randint(*cfg.N_range)
    if _pick(rng, cfg.measure_mix) == "point_mass":
        space = point_mass_chain(N, rng.randint(1, N))
    else:
        space = random_chain_space(N, rng.getrandbits(64), cfg.max_denominator)
    return FunctionalInstance(space, tuple(_functions(space, rng, n, cfg)))


def lattice_instance(cfg: SearchConfig, index: int) -> FunctionalInstance:
    rng = random.Random(derive_seed(cfg.master_seed, index))
    n = rng.randint(*cfg.n_range)
    g = rng.randint(*cfg.ground_size_range)
    space = random_fkg_measure(g, rng.getrandbits(64), cfg.max_denominator,
                               mode=_pick(rng, cfg.fkg_mix))
    return FunctionalInstance(space, tuple(_functions(space, rng, n, cfg)))


def _provenance(cfg: SearchConfig, index: int) -> dict:
    return {"master_seed": cfg.master_seed, "index": index,
            "seed": derive_seed(cfg.master_seed, index)}


def _certificate(inst: FunctionalInstance, value: Fraction, cfg: SearchConfig,
                 index: int, quantity: str = "E_n") -> Certificate:
    fkg = fkg_check(inst.space).transcript() if isinstance(inst.space, SubsetLattice) else None
    return Certificate(instance_to_json(inst), quantity, value, _provenance(cfg, index), fkg)


class _Budget:
    def __init__(self, seconds: int):
        self.deadline = time.monotonic() + seconds if seconds else None

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


def _run(cfg: SearchConfig, make: Callable[[SearchConfig, int], FunctionalInstance],
         visit: Callable[[int, FunctionalInstance], None]) -> tuple[int, bool]:
    budget = _Budget(cfg.time_budget_seconds)
    done = 0
    for index in range(cfg.instance_count):
        if budget.expired():
            return done, True
        visit(index, make(cfg, index))
        done += 1
    return done, False


def verify_lemma_batch(cfg: SearchConfig) -> dict:
    """Evaluate E_n on seeded random chain instances; every value must be >= 0."""
    cfg.validate(chain=True)
    best: list[tuple[Fraction, int, FunctionalInstance]] = []
    violations = []
    by_n: dict[int, dict] = {}
    zero_mass = 0

    def visit(index: int, inst: FunctionalInstance) -> None:
        nonlocal zero_mass
        v = e_n(inst)
        stats = by_n.setdefault(inst.n, {"count": 0, "min": None})
        stats["count"] += 1
        stats["min"] = v if stats["min"] is None else min(stats["min"], v)
        if inst.space.zero_mass_points():
            zero_mass += 1
        if v < 0:
            violations.append(_certificate(inst, v, cfg, index).to_json())
        if not best or (v, index) < (best[0][0], best[0][1]):
            best[:] = [(v, index, inst)]

    done, truncated = _run(cfg, chain_instance, visit)
    report = {
        "kind": "verify-lemma",
        "config": cfg.to_json(),
        "instances": done,
        "truncated_by_time_budget": truncated,
        "zero_mass_instances": zero_mass,
        "by_n": {str(n): {"count": s["count"], "min": format_rational(s["min"])}
                 for n, s in sorted(by_n.items())},
        "violations": violations,
        "minimum": _certificate(best[0][2], best[0][0], cfg, best[0][1]).to_json() if best else None,
        "status": "violation" if violations else "ok",
    }
    return report


def product_reduction_check(seed: int, ground_size: int, n: int,
                            max_denominator: int = 64) -> tuple[Fraction, Fraction]:
    """E_n on a product measure for functions of one coordinate, and the
    same E_n on the two-point chain that coordinate induces."""
    rng = random.Random(seed)
    p = [Fraction(rng.randint(0, max_denominator), max_denominator) for _ in range(ground_size)]
    coord = rng.randrange(ground_size)
    lattice = product_measure(p)
    chain = ChainSpace((1 - p[coord], p[coord]))
    hs = [random_monotone_fn(chain, rng.getrandbits(64), max_denominator) for _ in range(n)]
    lifted = [MonotoneFn(tuple(h.values[a >> coord & 1] for a in range(lattice.size))) for h in hs]
    return (e_n(FunctionalInstance(lattice, tuple(lifted))),
            e_n(FunctionalInstance(chain, tuple(hs))))


def search_fkg(cfg: SearchConfig) -> dict:
    """Look for FKG measures and monotone functions with E_n < 0.

    A negative value is a finding, reported with a certificate; the
    search asserts nothing about whether such instances exist.
    """
    cfg.validate(lattice=True)
    values: list[tuple[Fraction, int]] = []
    insts: dict[int, FunctionalInstance] = {}
    negatives = []
    n2_min = None
    n2_negative = []
    zeros = 0
    k = cfg.top_k

    def visit(index: int, inst: FunctionalInstance) -> None:
        nonlocal n2_min, zeros
        v = e_n(inst)
        zeros += v == 0
        if v < 0:
            negatives.append(_certificate(inst, v, cfg, index).to_json())
        values.append((v, index))
        values.sort()
        if len(values) > k:
            values.pop()
        insts[index] = inst
        for stale in [i for i in insts if i not in {j for _, j in values}]:
            del insts[stale]
        if cfg.include_n2 and inst.n >= 2:
            pair = FunctionalInstance(inst.space, inst.functions[:2])
            w = e_n(pair)
            n2_min = w if n2_min is None else min(n2_min, w)
            if w < 0:
                n2_negative.append(_certificate(pair, w, cfg, index).to_json())

    done, truncated = _run(cfg, lattice_instance, visit)

    reduction_mismatches = []
    for r in range(cfg.reduction_checks):
        seed = derive_seed(cfg.master_seed, -1 - r)
        rng = random.Random(seed)
        g = rng.randint(*cfg.ground_size_range)
        n = rng.randint(*cfg.n_range)
        lat, ch = product_reduction_check(rng.getrandbits(64), g, n, cfg.max_denominator)
        if lat != ch:
            reduction_mismatches.append({"seed": seed, "lattice": format_rational(lat),
                                         "chain": format_rational(ch)})

    smallest = [_certificate(insts[i], v, cfg, i).to_json() for v, i in values]
    report = {
        "kind": "search-fkg",
        "config": cfg.to_json(),
        "instances": done,
        "truncated_by_time_budget": truncated,
        "minimum": format_rational(values[0][0]) if values else None,
        "smallest": smallest,
        "exact_zeros": zeros,
        "violations": negatives,
        "status": "violation found" if negatives else "no violation found",
        "n2_sanity": {"minimum": format_rational(n2_min) if n2_min is not None else None,
                      "negatives": n2_negative},
        "reduction_checks": {"count": cfg.reduction_checks, "mismatches": reduction_mismatches},
        "note": HEURISTIC_NOTE,
    }
    return report


def random_function_series(space, rng: random.Random, cfg: SearchConfig) -> FunctionSeries:
    fns = []
    for _ in range(cfg.T):
        if rng.random() < 0.25:
            fns.append(MonotoneFn((Fraction(0),) * space.size))
        else:
            fns.append(random_monotone_fn(space, rng.getrandbits(64), cfg.max_denominator,
                                          _pick(rng, cfg.generator_mix)))
    return FunctionSeries(space, tuple(fns))


def series_instance(cfg: SearchConfig, index: int, lattice: bool) -> FunctionSeries:
    rng = random.Random(derive_seed(cfg.master_seed, index))
    if lattice:
        g = rng.randint(*cfg.ground_size_range)
        space = random_fkg_measure(g, rng.getrandbits(64), cfg.max_denominator,
                                   mode=_pick(rng, cfg.fkg_mix))
    else:
        N = rng.randint(*cfg.N_range)
        space = random_chain_space(N, rng.getrandbits(64), cfg.max_denominator)
    return random_function_series(space, rng, cfg)


def corollary_batch(cfg: SearchConfig) -> dict:
    """Both series routes on chain and FKG-lattice instances.

    Chain instances are indexed 0..instance_count-1 and lattice instances
    follow them, so the two populations never share a seed.
    """
    cfg.validate(chain=True, lattice=cfg.lattice_count > 0)
    mismatches, chain_negatives = [], []
    lattice_negative = []
    checked = {"chain": 0, "lattice": 0}
    budget = _Budget(cfg.time_budget_seconds)
    truncated = False
    jobs = [(i, False) for i in range(cfg.instance_count)]
    jobs += [(cfg.instance_count + i, True) for i in range(cfg.lattice_count)]
    for index, is_lattice in jobs:
        if budget.expired():
            truncated = True
            break
        p = series_instance(cfg, index, is_lattice)
        direct = corollary_direct(p)
        via = corollary_via_en(p)
        label = "lattice" if is_lattice else "chain"
        checked[label] += 1
        if direct != via:
            mismatches.append({"index": index, "space": label,
                               "instance": series_to_json(p),
                               "direct": direct.to_json(), "via_en": via.to_json()})
        verdict = check_nonnegativity(direct)
        if not verdict.ok:
            cert = Certificate(series_to_json(p), f"series_t^{verdict.first_negative}",
                               verdict.value, _provenance(cfg, index)).to_json()
            (lattice_negative if is_lattice else chain_negatives).append(cert)
    return {
        "kind": "corollary",
        "config": cfg.to_json(),
        "checked": checked,
        "truncated_by_time_budget": truncated,
        "route_mismatches": mismatches,
        "chain_negatives": chain_negatives,
        "lattice": {"nonnegative": checked["lattice"] - len(lattice_negative),
                    "negative": lattice_negative,
                    "note": "reported only; no assertion is made for lattices"},
        "status": "inconsistent" if mismatches or chain_negatives else "ok",
    }
