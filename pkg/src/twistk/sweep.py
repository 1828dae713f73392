"""Exhaustive verification sweeps.

Work is chunked per group order so that a process pool can fan out; chunk
results are merged and sorted by instance, so the outcome does not depend on
the number of workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .ktheory import (
    AbelianPointInput,
    PointPair,
    classify_pairs,
    compute_kgroups_abelian,
    compute_kgroups_closed,
    compute_kgroups_mv,
)
from .report import VerificationReport
from .repring import Character, FiniteAbelianGroup, characters, kernel_with_generators
from .restriction import RestrictionContext, verify_restriction_agreement
from .tduality import (
    constants_check,
    verify_admissibility_diagrams,
    verify_constants,
    verify_ek0_claims,
    verify_group_isomorphism,
)

SUITES = ("kgroups", "restriction", "duality", "constants", "abelian")


def verify_kgroup_routes(pair) -> VerificationReport:
    report = VerificationReport("kgroups", pair.to_dict())
    with report.timed():
        mv = compute_kgroups_mv(pair)
        cf = compute_kgroups_closed(pair)
        report.add("routes_agree_k0", mv.k0.invariant_factors == cf.k0.invariant_factors, {"mv": mv.k0, "closed": cf.k0})
        report.add("routes_agree_k1", mv.k1.invariant_factors == cf.k1.invariant_factors, {"mv": mv.k1, "closed": cf.k1})
        report.add("torsion_free", mv.k0.is_torsion_free and mv.k1.is_torsion_free)
        rank = gcd(pair.d, pair.twist_exponent)
        report.add("rank_gcd", mv.k0.rank == mv.k1.rank == rank, {"expected": rank})
    return report


def verify_abelian(inp: AbelianPointInput) -> VerificationReport:
    report = VerificationReport("abelian", inp.to_dict())
    with report.timed():
        kg = compute_kgroups_abelian(inp)
        orbits = inp.orbit_count()
        report.add("abelian_torsion_free", kg.k0.is_torsion_free and kg.k1.is_torsion_free, {"k0": kg.k0, "k1": kg.k1})
        report.add("abelian_orbit_rank", kg.k0.rank == kg.k1.rank == orbits, {"orbits": orbits})
    return report


# ---------------------------------------------------------------------------
# abelian instances
# ---------------------------------------------------------------------------


def invariant_factor_groups(max_order: int) -> list[tuple[int, ...]]:
    """All finite abelian groups of order <= max_order as divisibility chains."""
    out: list[tuple[int, ...]] = [()]

    def extend(prefix: tuple[int, ...], order: int):
        last = prefix[-1] if prefix else 1
        m = last if prefix else 2
        while order * m <= max_order:
            if m % last == 0:
                chain = prefix + (m,)
                out.append(chain)
                extend(chain, order * m)
            m += last if prefix else 1

    extend((), 1)
    return sorted(out, key=lambda c: (_prod(c), c))


def _prod(c) -> int:
    out = 1
    for x in c:
        out *= x
    return out


def _homs(factors: tuple[int, ...]) -> list[tuple[int, tuple[int, ...]]]:
    """A small deterministic family of homomorphisms G -> Z_n, n = exponent of G."""
    if not factors:
        return [(1, ())]
    n = factors[-1]
    trivial = tuple(0 for _ in factors)
    last = trivial[:-1] + (1,)
    every = tuple(n // m for m in factors)
    out = []
    for phi in (trivial, last, every):
        if (n, phi) not in out:
            out.append((n, phi))
    return out


def abelian_instances(max_order: int) -> list[AbelianPointInput]:
    out = []
    for factors in invariant_factor_groups(max_order):
        g = FiniteAbelianGroup(factors)
        for n, phi in _homs(factors):
            k = kernel_with_generators(g, phi, n).group
            for chi in characters(k):
                out.append(AbelianPointInput(g, phi, n, chi))
    return out


def random_abelian_inputs(count: int, seed: int = 0, max_order: int = 64) -> list[AbelianPointInput]:
    """Seeded random inputs with |G| <= max_order."""
    rng = random.Random(seed)
    groups = invariant_factor_groups(max_order)
    out = []
    while len(out) < count:
        factors = rng.choice(groups)
        g = FiniteAbelianGroup(factors)
        n = rng.randint(1, 12)
        # G -> Z_n is well defined iff each image is a multiple of n / gcd(n, m_i)
        phi = tuple(rng.randrange(0, n, n // gcd(n, m)) for m in factors)
        k = kernel_with_generators(g, phi, n).group
        chi = Character(k, tuple(rng.randrange(m) for m in k.cyclic_factors))
        out.append(AbelianPointInput(g, phi, n, chi))
    return out


# ---------------------------------------------------------------------------
# chunked execution
# ---------------------------------------------------------------------------


@dataclass
class ChunkResult:
    suite: str
    key: int
    total: int = 0
    passed: int = 0
    reports: list = field(default_factory=list)

    def record(self, report: VerificationReport, full: bool):
        self.total += 1
        if report.passed:
            self.passed += 1
        if full or not report.passed:
            self.reports.append((report.sort_key(), report.to_dict()))


def _constants_chunk(n: int, full: bool) -> ChunkResult:
    res = ChunkResult("constants", n)
    for k in range(n):
        step = n // (gcd(n, k) if k else n)
        for ell in range(0, n, step):
            if full:
                res.record(verify_constants(PointPair(n, k, ell)), True)
                continue
            ok, _ = constants_check(n, k, ell)
            res.total += 1
            if ok:
                res.passed += 1
            else:
                report = verify_constants(PointPair(n, k, ell))
                res.reports.append((report.sort_key(), report.to_dict()))
    return res


def run_chunk(suite: str, key: int, full: bool) -> ChunkResult:
    if suite == "constants":
        return _constants_chunk(key, full)
    res = ChunkResult(suite, key)
    if suite == "kgroups":
        for p in classify_pairs(key):
            res.record(verify_kgroup_routes(p), full)
    elif suite == "restriction":
        for m in range(1, key + 1):
            if key % m:
                continue
            for p in classify_pairs(key):
                res.record(verify_restriction_agreement(RestrictionContext(key, m, p.k, p.ell)), full)
    elif suite == "duality":
        for p in classify_pairs(key):
            res.record(verify_group_isomorphism(p), full)
            res.record(verify_admissibility_diagrams(p), full)
            if p.ell == 0:
                res.record(verify_ek0_claims(p.n, p.k), full)
    elif suite == "abelian":
        for factors in invariant_factor_groups(key):
            if _prod(factors) != key:
                continue
            g = FiniteAbelianGroup(factors)
            for n, phi in _homs(factors):
                k = kernel_with_generators(g, phi, n).group
                for chi in characters(k):
                    res.record(verify_abelian(AbelianPointInput(g, phi, n, chi)), full)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return res


def _run_star(args) -> ChunkResult:
    return run_chunk(*args)


@dataclass
class SweepResult:
    total: int
    passed: int
    reports: list[dict]

    @property
    def failed(self) -> int:
        return self.total - self.passed


def run_sweep(suites: list[str], max_n: int, jobs: int = 1, full: bool = False) -> SweepResult:
    """Run ``suites`` over every instance up to ``max_n``.

    With ``full`` every report is returned, otherwise only failing ones.
    """
    tasks = [(s, n, full) for s in suites for n in range(1, max_n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_star, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        chunks = [run_chunk(*t) for t in tasks]
    total = sum(c.total for c in chunks)
    passed = sum(c.passed for c in chunks)
    keyed = [r for c in chunks for r in c.reports]
    keyed.sort(key=lambda kr: kr[0])
    return SweepResult(total, passed, [r for _, r in keyed])


def iter_suites(name: str) -> Iterator[str]:
    if name == "all":
        yield from SUITES
    elif name in SUITES:
        yield name
    else:
        raise ValueError(f"unknown suite {name!r}")
