"""Shared fixtures: paper fixtures, cached oracle results, seeded corpora."""

from __future__ import annotations

import functools
from fractions import Fraction

import pytest

import choreshare as cs


@pytest.fixture(scope="session")
def table1() -> cs.Instance:
    return cs.paper_table(1)


@pytest.fixture(scope="session")
def table2() -> cs.Instance:
    return cs.paper_table(2)


@functools.lru_cache(maxsize=None)
def oracle_wmms(inst: cs.Instance) -> cs.OracleResult:
    """Session-cached exact maxmin shares (instances are hashable)."""
    return cs.exact_wmms(inst)


@functools.lru_cache(maxsize=None)
def oracle_alpha(inst: cs.Instance) -> cs.OwmmsResult:
    return cs.exact_owmms(inst, oracle_wmms(inst).wmms)


def suite_instances() -> list[tuple[str, cs.Instance]]:
    """The guarantee-suite corpus: 200 seeded instances, n in {2,3}, m in 4..8."""
    out = []
    for style in ("normalized", "binary"):
        for n in (2, 3):
            for m in range(4, 9):
                for seed in range(10):
                    out.append(
                        (
                            f"{style}-n{n}-m{m}-s{seed}",
                            cs.random_instance(n, m, seed, style),
                        )
                    )
    return out


def quick_instances(style: str = "normalized", seeds: int = 3) -> list[cs.Instance]:
    """A light corpus for per-module property tests."""
    return [
        cs.random_instance(n, m, seed, style)
        for n in (2, 3)
        for m in (4, 5)
        for seed in range(seeds)
    ]


def general_greedy(inst: cs.Instance) -> cs.Allocation:
    """Naive generalization of the balance greedy to heterogeneous rows.

    Chores in index order; each goes to the agent maximizing her own
    per-share bundle value after taking it (ties: larger share, then lower
    index).  Kept test-local as a negative control; it has no guarantee.
    """
    totals = [Fraction(0)] * inst.n
    owner = []
    for j in range(inst.m):
        best = max(
            range(inst.n),
            key=lambda i: (
                (totals[i] + inst.values[i][j]) / inst.shares[i],
                inst.shares[i],
                -i,
            ),
        )
        totals[best] += inst.values[best][j]
        owner.append(best)
    return cs.Allocation(inst.n, tuple(owner))


def agent_values(inst: cs.Instance, alloc: cs.Allocation) -> list[Fraction]:
    return [cs.bundle_value(inst, i, b) for i, b in enumerate(alloc.bundles())]
