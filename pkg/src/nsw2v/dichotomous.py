"""Balanced assignment of big goods.

Only the goods that are big for somebody are placed here, each with an agent
that values it big ("non-wasteful"). Trading along exchange-graph paths makes
the sorted load vector lexicographically minimal, which simultaneously covers
as many agents as possible and maximizes the welfare product of the covered
agents.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Allocation, Instance, validate_allocation


@dataclass(frozen=True)
class BigAllocation:
    """Bundles containing only goods big for their holder."""

    bundles: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))

    @property
    def loads(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bundles)

    def as_allocation(self) -> Allocation:
        return Allocation(self.bundles)


def initial_nonwasteful(inst: Instance) -> BigAllocation:
    """Greedy seed: each big good, in index order, goes to a least-loaded eligible agent."""
    bundles: list[set[int]] = [set() for _ in range(inst.n)]
    loads = [0] * inst.n
    for g in sorted(inst.big_goods):
        eligible = (i for i in range(inst.n) if g in inst.big_sets[i])
        owner = min(eligible, key=lambda i: (loads[i], i))
        bundles[owner].add(g)
        loads[owner] += 1
    return BigAllocation(tuple(frozenset(b) for b in bundles))


def _unloading_path(inst: Instance, bundles: list[set[int]], loads: list[int]) -> list[int] | None:
    """Find agents src -> ... -> dst with loads[src] >= loads[dst] + 2 linked by trades.

    The exchange graph has an edge (u, w) whenever u holds a good that is big
    for w. Sources are tried from the highest load down (ties: lowest index);
    from each source a BFS picks the lowest-load reachable destination (ties:
    lowest index), which keeps the whole procedure deterministic.
    """
    n = inst.n
    for src in sorted(range(n), key=lambda i: (-loads[i], i)):
        if loads[src] < 2:
            return None
        parent: dict[int, int | None] = {src: None}
        queue = deque([src])
        best: tuple[int, int] | None = None
        while queue:
            u = queue.popleft()
            for w in range(n):
                if w in parent:
                    continue
                if any(g in inst.big_sets[w] for g in bundles[u]):
                    parent[w] = u
                    queue.append(w)
                    if loads[w] <= loads[src] - 2 and (best is None or (loads[w], w) < best):
                        best = (loads[w], w)
        if best is not None:
            path = [best[1]]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            return path
    return None


def balance_loads(inst: Instance, big_alloc: BigAllocation) -> BigAllocation:
    """Trade big goods along paths until no agent sits two goods above a reachable one.

    Each trade moves one good per path edge (the lowest-index good the next
    agent values big), shifting a unit of load from the source to the sink and
    keeping every intermediate load unchanged. The sum of squared loads drops
    with every trade, so the loop terminates.
    """
    report = validate_allocation(inst, big_alloc.as_allocation())
    if not (report.disjoint and report.nonwasteful):
        raise ValueError("balance_loads requires a disjoint non-wasteful allocation")
    bundles = [set(b) for b in big_alloc.bundles]
    loads = [len(b) for b in bundles]
    while True:
        path = _unloading_path(inst, bundles, loads)
        if path is None:
            break
        # pick all goods against the pre-trade bundles, then apply
        moves = []
        for u, w in zip(path, path[1:]):
            moves.append((u, w, min(bundles[u] & inst.big_sets[w])))
        for u, w, g in moves:
            bundles[u].remove(g)
            bundles[w].add(g)
        loads[path[0]] -= 1
        loads[path[-1]] += 1
    return BigAllocation(tuple(frozenset(b) for b in bundles))


def solve_dichotomous(inst: Instance) -> BigAllocation:
    """Place all big goods so that the sorted load vector is lexicographically minimal."""
    return balance_loads(inst, initial_nonwasteful(inst))
