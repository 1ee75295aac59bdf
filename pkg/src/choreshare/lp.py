"""Feasibility-program pipeline: build, solve, round, and binary-search.

The program for a threshold c and reference vector r has a variable x_ij for
every pair with V_ij >= c*r_i, one covering constraint per chore and one floor
constraint per agent (bundle value at least c*r_i).  A basic feasible point of
it touches at most n+m variables, its positive-support bipartite graph is a
pseudoforest, and rounding along that graph costs each agent at most one extra
eligible chore, i.e. the integral allocation clears the doubled floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import simplex
from .algorithms import wmms_prime
from .errors import (
    NoFeasibleAllocation,
    RoundingInvariantViolation,
    UpperBoundInfeasible,
)
from .model import ZERO, Allocation, Instance
from .simplex import StandardForm


@dataclass(frozen=True)
class LPProgram:
    """The chore-covering feasibility program at one threshold setting."""

    inst: Instance
    thresholds: tuple[Fraction, ...]  # per-agent eligibility cutoff t_i
    floors: tuple[Fraction, ...]  # per-agent bundle floor w_i
    eligible_chores: tuple[tuple[int, ...], ...]  # per agent: {j : V_ij >= t_i}
    eligible_agents: tuple[tuple[int, ...], ...]  # per chore: agents eligible for it
    variables: tuple[tuple[int, int], ...]  # (i, j) pairs, lexicographic
    trivially_infeasible: bool  # some chore has no eligible agent


@dataclass(frozen=True)
class LPPoint:
    """A feasible point, keyed by (agent, chore); zeros are omitted."""

    values: dict[tuple[int, int], Fraction]
    basic: bool

    def nonzeros(self) -> int:
        return sum(1 for v in self.values.values() if v != 0)


@dataclass(frozen=True)
class AssignmentGraph:
    """Positive-support bipartite graph of a point, with its components.

    Each component is (agent nodes, chore nodes, edge count); in a
    pseudoforest every component has at most one more edge than a tree.
    """

    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]

    def is_pseudoforest(self) -> bool:
        return all(
            edges <= len(agents) + len(chores)
            for agents, chores, edges in self.components
        )


@dataclass(frozen=True)
class LinProResult:
    allocation: Allocation
    c_final: Fraction
    lower: Fraction
    iterations: int
    references: tuple[Fraction, ...]
    program: LPProgram
    point: LPPoint


def build_program(
    inst: Instance, c: Fraction, refs: Sequence[Fraction]
) -> LPProgram:
    """Instantiate the program with t_i = w_i = c * refs[i] (refs nonpositive)."""
    c = Fraction(c)
    refs = tuple(Fraction(r) for r in refs)
    if len(refs) != inst.n:
        raise ValueError(f"expected {inst.n} references, got {len(refs)}")
    if any(r > 0 for r in refs):
        raise ValueError("references must be nonpositive")
    cutoffs = tuple(c * r for r in refs)
    eligible_chores = tuple(
        tuple(j for j in range(inst.m) if inst.values[i][j] >= cutoffs[i])
        for i in range(inst.n)
    )
    eligible_agents = tuple(
        tuple(i for i in range(inst.n) if inst.values[i][j] >= cutoffs[i])
        for j in range(inst.m)
    )
    variables = tuple(
        (i, j) for i in range(inst.n) for j in eligible_chores[i]
    )
    return LPProgram(
        inst=inst,
        thresholds=cutoffs,
        floors=cutoffs,
        eligible_chores=eligible_chores,
        eligible_agents=eligible_agents,
        variables=variables,
        trivially_infeasible=any(not agents for agents in eligible_agents),
    )


def _standard_form(prog: LPProgram) -> StandardForm:
    index = {var: k for k, var in enumerate(prog.variables)}
    sf = StandardForm(num_vars=len(prog.variables))
    for i in range(prog.inst.n):
        coeffs = [ZERO] * sf.num_vars
        for j in prog.eligible_chores[i]:
            coeffs[index[(i, j)]] = prog.inst.values[i][j]
        sf.add(coeffs, prog.floors[i], "ge")
    for j in range(prog.inst.m):
        coeffs = [ZERO] * sf.num_vars
        for i in prog.eligible_agents[j]:
            coeffs[index[(i, j)]] = Fraction(1)
        sf.add(coeffs, Fraction(1), "eq")
    return sf


def check_feasible(prog: LPProgram) -> LPPoint | None:
    """A basic feasible point of the program, or None when it has none."""
    if prog.trivially_infeasible:
        return None
    x = simplex.feasible_basic_point(_standard_form(prog))
    if x is None:
        return None
    values = {
        var: x[k] for k, var in enumerate(prog.variables) if x[k] != 0
    }
    return LPPoint(values=values, basic=True)


def build_assignment_graph(point: LPPoint) -> AssignmentGraph:
    edges = tuple(sorted(point.values.keys()))
    parent: dict[tuple[str, int], tuple[str, int]] = {}

    def find(node):
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:
            parent[node], node = root, parent[node]
        return root

    for i, j in edges:
        for node in (("a", i), ("c", j)):
            parent.setdefault(node, node)
        ra, rc = find(("a", i)), find(("c", j))
        if ra != rc:
            parent[ra] = rc
    groups: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for node in parent:
        groups.setdefault(find(node), []).append(node)
    edge_count: dict[tuple[str, int], int] = {}
    for i, j in edges:
        edge_count[find(("a", i))] = edge_count.get(find(("a", i)), 0) + 1
    components = []
    for root in sorted(groups):
        members = groups[root]
        agents = tuple(sorted(k for kind, k in members if kind == "a"))
        chores = tuple(sorted(k for kind, k in members if kind == "c"))
        components.append((agents, chores, edge_count.get(root, 0)))
    return AssignmentGraph(edges=edges, components=tuple(components))


def round_extreme_point(prog: LPProgram, point: LPPoint) -> Allocation:
    """Round a basic feasible point to an integral chore assignment.

    Degree-1 chores carry their whole unit of mass and are peeled off first
    (iterated to a fixed point); the chores left all have degree >= 2 inside
    pseudotree components, which therefore admit a matching covering them.
    The result assigns every chore once and each agent's bundle clears the
    doubled floor w_i + t_i.  Any failed step indicates the point was not a
    basic feasible point of this program and raises
    RoundingInvariantViolation.
    """
    inst = prog.inst
    graph = build_assignment_graph(point)
    if not graph.is_pseudoforest():
        raise RoundingInvariantViolation("support graph is not a pseudoforest")

    chore_adj: dict[int, list[int]] = {j: [] for j in range(inst.m)}
    agent_adj: dict[int, set[int]] = {i: set() for i in range(inst.n)}
    for (i, j), v in sorted(point.values.items()):
        if v < 0 or v > 1:
            raise RoundingInvariantViolation(f"x[{i},{j}] = {v} outside [0, 1]")
        chore_adj[j].append(i)
        agent_adj[i].add(j)
    if any(not chore_adj[j] for j in range(inst.m)):
        raise RoundingInvariantViolation("some chore has no positive mass")

    owner = [-1] * inst.m
    # Peel chores supported by a single edge; that edge must carry weight 1.
    changed = True
    while changed:
        changed = False
        for j in range(inst.m):
            if owner[j] < 0 and len(chore_adj[j]) == 1:
                i = chore_adj[j][0]
                if point.values[(i, j)] != 1:
                    raise RoundingInvariantViolation(
                        f"degree-1 chore {j} carries mass {point.values[(i, j)]} != 1"
                    )
                owner[j] = i
                agent_adj[i].discard(j)
                chore_adj[j] = []
                changed = True

    # Chore-saturating matching on what remains (Kuhn's augmenting paths;
    # chores ascending, candidate agents ascending, so ties resolve to the
    # lowest agent index).
    matched_chore_of: dict[int, int] = {}

    def try_assign(j: int, visited: set[int]) -> bool:
        for i in sorted(chore_adj[j]):
            if i in visited:
                continue
            visited.add(i)
            if i not in matched_chore_of or try_assign(matched_chore_of[i], visited):
                matched_chore_of[i] = j
                return True
        return False

    for j in range(inst.m):
        if owner[j] < 0:
            if len(chore_adj[j]) < 2:
                raise RoundingInvariantViolation(
                    f"unpeeled chore {j} has degree {len(chore_adj[j])}"
                )
            if not try_assign(j, set()):
                raise RoundingInvariantViolation(
                    f"no chore-saturating matching covers chore {j}"
                )
    for i, j in matched_chore_of.items():
        owner[j] = i

    alloc = Allocation(inst.n, tuple(owner))
    for i, bundle in enumerate(alloc.bundles()):
        got = sum((inst.values[i][j] for j in bundle), ZERO)
        if got < prog.floors[i] + prog.thresholds[i]:
            raise RoundingInvariantViolation(
                f"agent {i} at {got} misses the doubled floor "
                f"{prog.floors[i] + prog.thresholds[i]}"
            )
    return alloc


def linpro(inst: Instance, eps: Fraction) -> LinProResult:
    """Binary-search the smallest feasible threshold and round its vertex.

    References come from ``wmms_prime``.  The search keeps an invariant of
    "upper end feasible" over [1, n] (n is feasible: the largest-share agent
    can absorb everything) and stops once the bracket is within eps/4; the
    final program is solved at the upper end and rounded.  The returned
    allocation gives every agent at least 2*c_final times her reference.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if inst.n < 1:
        raise ValueError("need at least one agent")
    refs = wmms_prime(inst)
    upper = Fraction(inst.n)
    lower = Fraction(1)
    iterations = 0
    while upper - lower > eps / 4:
        mid = (upper + lower) / 2
        if check_feasible(build_program(inst, mid, refs)) is not None:
            upper = mid
        else:
            lower = mid
        iterations += 1
    prog = build_program(inst, upper, refs)
    point = check_feasible(prog)
    if point is None:
        raise UpperBoundInfeasible(
            f"threshold {upper} infeasible, yet {inst.n} is provably feasible"
        )
    allocation = round_extreme_point(prog, point)
    return LinProResult(
        allocation=allocation,
        c_final=upper,
        lower=lower,
        iterations=iterations,
        references=refs,
        program=prog,
        point=point,
    )


def min_feasible_c(inst: Instance, refs: Sequence[Fraction]) -> Fraction:
    """Exact smallest c >= 0 making the program with references feasible.

    Eligibility only changes at the finitely many breakpoints V_ij / refs[i];
    between consecutive breakpoints the minimum feasible c solves a small
    linear program with c as an extra variable.  Scanning breakpoints in
    ascending order and keeping the best optimum is exact because a program
    built from a breakpoint's eligibility pattern only underestimates
    eligibility for larger c, never overestimates it.
    """
    refs = tuple(Fraction(r) for r in refs)
    if len(refs) != inst.n:
        raise ValueError(f"expected {inst.n} references, got {len(refs)}")
    if any(r > 0 for r in refs):
        raise ValueError("references must be nonpositive")

    breakpoints = {ZERO}
    for i in range(inst.n):
        if refs[i] < 0:
            for j in range(inst.m):
                breakpoints.add(inst.values[i][j] / refs[i])

    best: Fraction | None = None
    seen: set[tuple[tuple[int, ...], ...]] = set()
    one = Fraction(1)
    for b in sorted(breakpoints):
        if best is not None and b >= best:
            break
        eligible = tuple(
            tuple(
                j
                for j in range(inst.m)
                if inst.values[i][j] >= b * refs[i]
            )
            for i in range(inst.n)
        )
        if eligible in seen:
            continue
        seen.add(eligible)
        covered = [False] * inst.m
        for i in range(inst.n):
            for j in eligible[i]:
                covered[j] = True
        if not all(covered):
            continue
        variables = [(i, j) for i in range(inst.n) for j in eligible[i]]
        index = {var: k for k, var in enumerate(variables)}
        c_var = len(variables)
        sf = StandardForm(num_vars=c_var + 1)
        for i in range(inst.n):
            coeffs = [ZERO] * sf.num_vars
            for j in eligible[i]:
                coeffs[index[(i, j)]] = inst.values[i][j]
            coeffs[c_var] = -refs[i]
            sf.add(coeffs, ZERO, "ge")
        for j in range(inst.m):
            coeffs = [ZERO] * sf.num_vars
            for i in range(inst.n):
                if (i, j) in index:
                    coeffs[index[(i, j)]] = one
            sf.add(coeffs, one, "eq")
        floor_row = [ZERO] * sf.num_vars
        floor_row[c_var] = one
        sf.add(floor_row, b, "ge")
        objective = [ZERO] * sf.num_vars
        objective[c_var] = one
        result = simplex.minimize(sf, objective)
        if result is not None:
            value = result[0]
            if best is None or value < best:
                best = value
    if best is None:
        raise NoFeasibleAllocation("program infeasible at every threshold")
    return best
