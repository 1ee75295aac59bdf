"""Exhaustive ground-truth computations.

Everything here enumerates all n^m owner vectors in lexicographic order, which
is exponential by design: these routines exist to certify the polynomial-time
algorithms, not to compete with them.  A budget guard (exact integer n^m
comparison) refuses enumerations that would not terminate at desk scale.

The inner loops work on integer-rescaled values (one common denominator per
valuation row, one for the shares) and compare quotients by cross
multiplication, so no Fraction objects are built until a result is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .errors import BudgetExceeded, NoFeasibleAllocation
from .model import Allocation, Instance, bundle_value

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class OracleResult:
    """Exact weighted maxmin shares with attaining witness partitions.

    ``w[i]`` is the best achievable egalitarian objective for agent i (the
    max over partitions of the min bundle-value-per-share), ``wmms[i]`` is
    ``shares[i] * w[i]``, and ``witness_partitions[i]`` attains ``w[i]``.
    """

    wmms: tuple[Fraction, ...]
    w: tuple[Fraction, ...]
    witness_partitions: tuple[Allocation, ...]


@dataclass(frozen=True)
class OwmmsResult:
    """The smallest ratio at which every agent can be satisfied simultaneously."""

    alpha_star: Fraction
    witness: Allocation


def check_budget(n: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """Return n^m, raising BudgetExceeded when it exceeds the budget."""
    total = n**m
    if total > budget:
        raise BudgetExceeded(
            f"{n}^{m} = {total} owner vectors exceeds enumeration budget {budget}"
        )
    return total


def _scaled_row(row: tuple[Fraction, ...]) -> tuple[list[int], int]:
    """Rescale a rational row to integers over a single common denominator."""
    denom = lcm(*(v.denominator for v in row)) if row else 1
    return [int(v * denom) for v in row], denom


def _scaled_shares(inst: Instance) -> tuple[list[int], int]:
    denom = lcm(*(s.denominator for s in inst.shares))
    return [int(s * denom) for s in inst.shares], denom


def exact_wmms(inst: Instance, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Exact per-agent weighted maxmin shares by owner-vector enumeration.

    Agents with identical valuation rows share one enumeration pass, since the
    result depends only on the row.  Ties in the inner minimum and the outer
    maximum are broken by first occurrence, so witnesses are deterministic.
    """
    n, m = inst.n, inst.m
    check_budget(n, m, budget)
    sh, _ = _scaled_shares(inst)

    by_row: dict[tuple[Fraction, ...], Allocation] = {}
    for row in inst.values:
        if row in by_row:
            continue
        ints, _ = _scaled_row(row)
        best_num = best_den = 0  # numerator/denominator of the best min so far
        best_owners: tuple[int, ...] | None = None
        for owners in product(range(n), repeat=m):
            sums = [0] * n
            for j, o in enumerate(owners):
                sums[o] += ints[j]
            # k* = argmin_k sums[k] / sh[k]; shares positive so the quotient
            # order survives cross multiplication.
            k_star = 0
            for k in range(1, n):
                if sums[k] * sh[k_star] < sums[k_star] * sh[k]:
                    k_star = k
            num, den = sums[k_star], sh[k_star]
            if best_owners is None or num * best_den > best_num * den:
                best_num, best_den, best_owners = num, den, owners
        by_row[row] = Allocation(n, best_owners)

    # The hot loop only ranks integer quotients; the exact rational values are
    # reconstructed here from the witnesses, which also re-checks that each
    # witness attains its reported optimum.
    w_vals = []
    wmms_vals = []
    witnesses = []
    for i, row in enumerate(inst.values):
        witness = by_row[row]
        w_i = min(
            bundle_value(inst, i, bundle) / inst.shares[k]
            for k, bundle in enumerate(witness.bundles())
        )
        w_vals.append(w_i)
        wmms_vals.append(inst.shares[i] * w_i)
        witnesses.append(witness)
    return OracleResult(tuple(wmms_vals), tuple(w_vals), tuple(witnesses))


def exact_owmms(
    inst: Instance, wmms: tuple[Fraction, ...], budget: int = DEFAULT_BUDGET
) -> OwmmsResult:
    """Smallest alpha >= 1 admitting an allocation with V_i(X_i) >= alpha * wmms[i].

    Agents with wmms[i] == 0 admit no finite ratio; an allocation qualifies
    only if it gives each of them value exactly 0, and they are skipped in the
    ratio maximum.  Enumeration is lexicographic and the first allocation
    attaining the minimum is returned, so the witness is deterministic.
    """
    n, m = inst.n, inst.m
    check_budget(n, m, budget)
    if any(ref > 0 for ref in wmms):
        raise ValueError("wmms references must be nonpositive")

    int_rows = []
    ratio_scale = []  # per negative-reference agent: ratio = -own * A / B with B > 0
    for i in range(n):
        ints, denom = _scaled_row(inst.values[i])
        int_rows.append(ints)
        ref = wmms[i]
        if ref < 0:
            ratio_scale.append((i, ref.denominator, -denom * ref.numerator))
        else:
            ratio_scale.append((i, 0, 0))
    negative = [i for i in range(n) if wmms[i] < 0]
    zero = [i for i in range(n) if wmms[i] == 0]

    best: tuple[int, int] | None = None  # ratio numerator/denominator, den > 0
    best_owners: tuple[int, ...] | None = None
    for owners in product(range(n), repeat=m):
        own = [0] * n
        for j, o in enumerate(owners):
            own[o] += int_rows[o][j]
        if any(own[z] != 0 for z in zero):
            continue
        num, den = 0, 1
        for i in negative:
            _, a_i, b_i = ratio_scale[i]
            cand_num, cand_den = -own[i] * a_i, b_i
            if cand_num * den > num * cand_den:
                num, den = cand_num, cand_den
        if best is None or num * best[1] < best[0] * den:
            best = (num, den)
            best_owners = owners
    if best is None or best_owners is None:
        raise NoFeasibleAllocation(
            "no allocation gives every zero-reference agent value 0"
        )
    alpha = max(Fraction(1), Fraction(best[0], best[1]))
    return OwmmsResult(alpha, Allocation(n, best_owners))


def exact_makespan_f(inst: Instance, i: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Minimum over partitions of the largest per-share disutility of a bundle.

    This is the scheduling (makespan) form of the maxmin computation with
    disutility D = -V; it equals the negation of ``exact_wmms(...).w[i]`` and
    is enumerated independently as a cross-check.
    """
    n, m = inst.n, inst.m
    check_budget(n, m, budget)
    sh, sh_denom = _scaled_shares(inst)
    ints, denom = _scaled_row(inst.values[i])
    loads = [-v for v in ints]  # disutilities, nonnegative

    best_num = best_den = 0
    first = True
    for owners in product(range(n), repeat=m):
        sums = [0] * n
        for j, o in enumerate(owners):
            sums[o] += loads[j]
        k_star = 0
        for k in range(1, n):
            if sums[k] * sh[k_star] > sums[k_star] * sh[k]:
                k_star = k
        num, den = sums[k_star], sh[k_star]
        if first or num * best_den < best_num * den:
            best_num, best_den, first = num, den, False
    return Fraction(sh_denom * best_num, denom * best_den)


def verify_alpha(
    inst: Instance,
    alloc: Allocation,
    wmms: tuple[Fraction, ...],
    alpha: Fraction,
) -> bool:
    """True iff every agent's own-bundle value is at least alpha times her reference."""
    return all(
        bundle_value(inst, i, bundle) >= alpha * wmms[i]
        for i, bundle in enumerate(alloc.bundles())
    )
