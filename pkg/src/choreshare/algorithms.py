"""Polynomial-time allocation algorithms.

The constructive algorithms are ``naive`` (everything to the largest share),
``egal_greedy`` (balance greedy for one shared valuation row, a factor-2
method), ``divide_and_choose`` (two agents, factor 3/2) and ``binary_wmms``
(exact when every value is 0 or -1).  ``round_robin``,
``multiplicative_greedy`` and ``additive_greedy`` are kept as negative
controls: natural-looking picking rules that can be arbitrarily unfair once
shares are asymmetric.

Every function is deterministic: each tie-breaking rule is stated in its
docstring, and identical inputs yield identical traces and allocations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NotBinary, SubsetBudgetExceeded
from .model import (
    ZERO,
    Allocation,
    Instance,
    bundle_value,
    normalize_instance,
    unfairness_degree,
)

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_BUDGET = 24


@dataclass(frozen=True)
class TraceEvent:
    """One allocation decision: at ``step``, ``chore`` went to ``agent``.

    ``quantity`` is the exact value of whatever expression decided the step
    (a per-share bundle value, a picking score, or a chore value, depending
    on the algorithm).
    """

    step: int
    chore: int
    agent: int
    quantity: Fraction


def replay_trace(n: int, m: int, trace: Sequence[TraceEvent]) -> Allocation:
    """Rebuild the allocation an algorithm produced from its trace."""
    owner = [-1] * m
    for event in trace:
        owner[event.chore] = event.agent
    if any(o < 0 for o in owner):
        raise ValueError("trace does not cover every chore")
    return Allocation(n, tuple(owner))


def naive(inst: Instance, trace: list[TraceEvent] | None = None) -> Allocation:
    """Give every chore to the agent with the largest share (ties: lowest index)."""
    i_star = max(range(inst.n), key=lambda i: (inst.shares[i], -i))
    if trace is not None:
        for j in range(inst.m):
            trace.append(TraceEvent(j, j, i_star, inst.shares[i_star]))
    return Allocation(inst.n, (i_star,) * inst.m)


def egal_greedy(
    shares: Sequence[Fraction],
    values: Sequence[Fraction],
    trace: list[TraceEvent] | None = None,
) -> Allocation:
    """Balance greedy for agents sharing a single valuation row.

    Chores are processed from most to least burdensome (ties by chore index).
    Each chore goes to the agent whose per-share bundle value would remain
    largest after taking it; ties prefer the larger share, then the lower
    index.  Decisions are invariant under scaling the row by any positive
    rational, since every compared quantity scales uniformly.
    """
    shares = tuple(Fraction(s) for s in shares)
    values = tuple(Fraction(v) for v in values)
    n, m = len(shares), len(values)
    totals = [ZERO] * n
    owner = [0] * m
    order = sorted(range(m), key=lambda j: (values[j], j))
    for step, j in enumerate(order):
        best = 0
        best_cand = (totals[0] + values[j]) / shares[0]
        for i in range(1, n):
            cand = (totals[i] + values[j]) / shares[i]
            if (cand, shares[i], -i) > (best_cand, shares[best], -best):
                best, best_cand = i, cand
        totals[best] += values[j]
        owner[j] = best
        if trace is not None:
            trace.append(TraceEvent(step, j, best, best_cand))
    return Allocation(n, tuple(owner))


def wmms_prime(inst: Instance) -> tuple[Fraction, ...]:
    """Greedy per-agent surrogate for the exact weighted maxmin share.

    For each agent i, run ``egal_greedy`` as if everyone shared her row and
    score the realized egalitarian objective s_i * min_k V_i(X_k)/s_k.  The
    surrogate is sandwiched in [2*WMMS_i, WMMS_i]: at most a factor 2 more
    pessimistic than the true share, never more optimistic.  The alternative
    surrogate V_i(X_i) (the agent's own greedy bundle) lacks the upper half of
    that sandwich; both are computed and divergences logged at DEBUG level.
    """
    out = []
    for i in range(inst.n):
        alloc = egal_greedy(inst.shares, inst.values[i])
        realized = inst.shares[i] * unfairness_degree(inst, i, alloc)
        own = bundle_value(inst, i, alloc.bundles()[i])
        if own != realized:
            logger.debug(
                "agent %d: own-bundle surrogate %s > egalitarian surrogate %s",
                i,
                own,
                realized,
            )
        out.append(realized)
    return tuple(out)


def divide_and_choose(
    inst: Instance,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    trace: list[TraceEvent] | None = None,
) -> Allocation:
    """Two-agent protocol guaranteeing each agent 3/2 of her maxmin benchmark.

    With the agents ordered so the divider has the larger share: when the
    chooser's share is at most 1/3 the divider simply takes everything.
    Otherwise the divider splits the chores into the pair maximizing her own
    worst per-share bundle value (exact subset enumeration, first maximizer in
    bitmask order), with the first bundle positionally earmarked for the
    chooser; the chooser then keeps her preferred side (ties: the earmarked
    one).

    Requires n == 2 and a normalizable instance; chore counts above
    ``subset_budget`` are refused rather than silently losing the guarantee.
    """
    if inst.n != 2:
        raise ValueError(f"div-cho requires exactly 2 agents, got {inst.n}")
    m = inst.m
    if m == 0:
        return Allocation(2, ())
    chooser = 0 if inst.shares[0] <= inst.shares[1] else 1
    divider = 1 - chooser
    norm = normalize_instance(inst)

    if norm.shares[chooser] <= Fraction(1, 3):
        owner = (divider,) * m
        if trace is not None:
            for j in range(m):
                trace.append(TraceEvent(j, j, divider, norm.shares[divider]))
        return Allocation(2, owner)

    if m > subset_budget:
        raise SubsetBudgetExceeded(
            f"2^{m} subset enumeration exceeds guard m <= {subset_budget}"
        )

    row = norm.values[divider]
    denom = lcm(*(v.denominator for v in row))
    ints = [int(v * denom) for v in row]
    total = sum(ints)
    prefix = [0] * m  # prefix[t] = ints[0] + ... + ints[t-1]
    for t in range(1, m):
        prefix[t] = prefix[t - 1] + ints[t - 1]
    s_c, s_d = norm.shares[chooser], norm.shares[divider]
    # Both per-share quotients share the positive denominator
    # denom * s_c.num * s_d.num once scaled by these integer factors:
    c_chooser = s_c.denominator * s_d.numerator
    c_divider = s_d.denominator * s_c.numerator

    best_mask, best_obj = 0, min(0, total * c_divider)
    current = 0
    for mask in range(1, 1 << m):
        t = (mask & -mask).bit_length() - 1
        current += ints[t] - prefix[t]
        obj = min(current * c_chooser, (total - current) * c_divider)
        if obj > best_obj:
            best_mask, best_obj = mask, obj

    earmarked = [j for j in range(m) if best_mask >> j & 1]
    rest = [j for j in range(m) if not best_mask >> j & 1]
    val_earmarked = bundle_value(norm, chooser, earmarked)
    val_rest = bundle_value(norm, chooser, rest)
    chooser_takes_earmarked = val_earmarked >= val_rest

    owner = [0] * m
    for j in range(m):
        in_earmarked = bool(best_mask >> j & 1)
        owner[j] = chooser if in_earmarked == chooser_takes_earmarked else divider
    if trace is not None:
        chosen_val = val_earmarked if chooser_takes_earmarked else val_rest
        for j in range(m):
            trace.append(TraceEvent(j, j, owner[j], chosen_val))
    return Allocation(2, tuple(owner))


def binary_wmms(inst: Instance, trace: list[TraceEvent] | None = None) -> Allocation:
    """Exact maxmin-share allocation when every value is 0 or -1.

    Each chore that some agent values at zero goes to such an agent (lowest
    index), costing its owner nothing.  The remaining chores are worth -1 to
    everyone, and on such uniform values the balance greedy is exact.
    """
    for i, row in enumerate(inst.values):
        for j, v in enumerate(row):
            if v != 0 and v != -1:
                raise NotBinary(f"value {v} at agent {i}, chore {j} is not in {{0, -1}}")
    owner = [-1] * inst.m
    for j in range(inst.m):
        for i in range(inst.n):
            if inst.values[i][j] == 0:
                owner[j] = i
                break
    rest = [j for j in range(inst.m) if owner[j] < 0]
    step = 0
    if trace is not None:
        for j in range(inst.m):
            if owner[j] >= 0:
                trace.append(TraceEvent(step, j, owner[j], ZERO))
                step += 1
    if rest:
        sub_trace: list[TraceEvent] | None = [] if trace is not None else None
        sub = egal_greedy(inst.shares, [Fraction(-1)] * len(rest), trace=sub_trace)
        for pos, j in enumerate(rest):
            owner[j] = sub.owner[pos]
        if trace is not None and sub_trace is not None:
            for event in sub_trace:
                trace.append(
                    TraceEvent(step, rest[event.chore], event.agent, event.quantity)
                )
                step += 1
    return Allocation(inst.n, tuple(owner))


def round_robin(
    inst: Instance,
    order: Sequence[int] | None = None,
    trace: list[TraceEvent] | None = None,
) -> Allocation:
    """Agents take turns (in ``order``) picking their best remaining chore.

    Each picker takes her highest-value (least burdensome) unallocated chore,
    ties by chore index.  Share-oblivious; kept as a negative control.
    """
    picking = tuple(order) if order is not None else tuple(range(inst.n))
    if sorted(picking) != list(range(inst.n)):
        raise ValueError(f"order {picking} is not a permutation of the {inst.n} agents")
    remaining = set(range(inst.m))
    owner = [0] * inst.m
    step = 0
    while remaining:
        for i in picking:
            if not remaining:
                break
            j = max(remaining, key=lambda jj: (inst.values[i][jj], -jj))
            owner[j] = i
            remaining.remove(j)
            if trace is not None:
                trace.append(TraceEvent(step, j, i, inst.values[i][j]))
            step += 1
    return Allocation(inst.n, tuple(owner))


def multiplicative_greedy(
    inst: Instance,
    tie_rule: str = "largest-share",
    trace: list[TraceEvent] | None = None,
) -> Allocation:
    """The agent carrying the lightest per-share load picks next.

    Agent i's load is -V_i(X_i)/s_i; each round the agent with minimal load
    (equivalently, maximal V_i(X_i)/s_i) picks her highest-value remaining
    chore (ties by chore index).  Load ties go to the larger or smaller share
    per ``tie_rule``, then to the lower index.  Negative control.
    """
    if tie_rule not in ("largest-share", "smallest-share"):
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    totals = [ZERO] * inst.n
    remaining = set(range(inst.m))
    owner = [0] * inst.m
    for step in range(inst.m):
        def pick_key(i: int):
            share_pref = inst.shares[i] if tie_rule == "largest-share" else -inst.shares[i]
            return (totals[i] / inst.shares[i], share_pref, -i)

        i = max(range(inst.n), key=pick_key)
        j = max(remaining, key=lambda jj: (inst.values[i][jj], -jj))
        if trace is not None:
            trace.append(TraceEvent(step, j, i, totals[i] / inst.shares[i]))
        totals[i] += inst.values[i][j]
        owner[j] = i
        remaining.remove(j)
    return Allocation(inst.n, tuple(owner))


def additive_greedy(
    inst: Instance, trace: list[TraceEvent] | None = None
) -> Allocation:
    """The agent maximizing share + own-bundle value picks next.

    Ties prefer the larger share, then the lower index; the picker takes her
    highest-value remaining chore (ties by chore index).  Negative control.
    """
    totals = [ZERO] * inst.n
    remaining = set(range(inst.m))
    owner = [0] * inst.m
    for step in range(inst.m):
        i = max(
            range(inst.n),
            key=lambda ii: (inst.shares[ii] + totals[ii], inst.shares[ii], -ii),
        )
        j = max(remaining, key=lambda jj: (inst.values[i][jj], -jj))
        if trace is not None:
            trace.append(TraceEvent(step, j, i, inst.shares[i] + totals[i]))
        totals[i] += inst.values[i][j]
        owner[j] = i
        remaining.remove(j)
    return Allocation(inst.n, tuple(owner))
