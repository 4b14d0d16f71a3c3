"""Shared helpers for the test suite.

The checkers here are written independently of the package internals (plain
itertools enumeration, textbook augmenting paths) so package results are
always compared against a second derivation, not against themselves.
"""

from __future__ import annotations

import itertools
import math

from nsw2v import Instance


def example1() -> Instance:
    # 2 agents, 5 goods, values (2, 3); both agents are big on goods 0 and 1.
    return Instance(2, 5, 2, 3, (frozenset({0, 1}), frozenset({0, 1})))


def raw_values(inst: Instance, owners) -> list[int]:
    values = [0] * inst.n
    for g, a in enumerate(owners):
        values[a] += inst.q if g in inst.big_sets[a] else inst.p
    return values


def brute_best(inst: Instance) -> tuple[int, tuple[int, ...]]:
    """Max product and its lexicographically least owner vector, by plain iteration."""
    best = -1
    best_owners: tuple[int, ...] = ()
    for owners in itertools.product(range(inst.n), repeat=inst.m):
        product = math.prod(raw_values(inst, owners))
        if product > best:
            best = product
            best_owners = owners
    return best, best_owners


def all_optima(inst: Instance) -> list[tuple[int, ...]]:
    """Owner vectors of every product-maximal allocation, in lexicographic order."""
    best, _ = brute_best(inst)
    return [
        owners
        for owners in itertools.product(range(inst.n), repeat=inst.m)
        if math.prod(raw_values(inst, owners)) == best
    ]


def overlap_with(owners, reference_bundles) -> int:
    return sum(1 for g, a in enumerate(owners) if g in reference_bundles[a])


def best_sorted_loads(inst: Instance) -> tuple[int, ...]:
    """Lexicographically least sorted-descending load vector over non-wasteful allocations."""
    goods = sorted(inst.big_goods)
    eligible = [[i for i in range(inst.n) if g in inst.big_sets[i]] for g in goods]
    best: tuple[int, ...] | None = None
    for combo in itertools.product(*eligible):
        loads = [0] * inst.n
        for a in combo:
            loads[a] += 1
        key = tuple(sorted(loads, reverse=True))
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def max_matching_size(inst: Instance) -> int:
    """Augmenting-path matching between agents and the goods they value big."""
    owner_of_good: dict[int, int] = {}

    def augment(agent: int, visited: set[int]) -> bool:
        for g in sorted(inst.big_sets[agent]):
            if g in visited:
                continue
            visited.add(g)
            if g not in owner_of_good or augment(owner_of_good[g], visited):
                owner_of_good[g] = agent
                return True
        return False

    return sum(1 for i in range(inst.n) if augment(i, set()))


def bb_reachable_agent_pairs(graph) -> set[tuple[int, int]]:
    """Agent pairs joined by a big-to-big balancing path, re-derived from the edge list."""
    edges = graph.edges
    succ: list[list[int]] = [[] for _ in edges]
    for x, e in enumerate(edges):
        for y, f in enumerate(edges):
            if x != y and e.dst == f.src and e.dst_big == f.src_big:
                succ[x].append(y)
    pairs: set[tuple[int, int]] = set()
    for x, e in enumerate(edges):
        if not e.src_big:
            continue
        reached = {x}
        stack = [x]
        while stack:
            u = stack.pop()
            for y in succ[u]:
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        for y in reached:
            f = edges[y]
            if f.dst_big:
                pairs.add((e.src, f.dst))
    return pairs


def exchange_path_exists(inst: Instance, bundles, src: int, dst: int) -> bool:
    """Reachability in the exchange graph: (u, w) linked iff u holds a good big for w."""
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for w in range(inst.n):
            if w not in seen and any(g in inst.big_sets[w] for g in bundles[u]):
                seen.add(w)
                stack.append(w)
    return dst in seen
