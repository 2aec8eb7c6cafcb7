"""Exact rainbow connection number for small graphs.

Colourings are enumerated as restricted-growth strings over the edge list
(edge ``i`` may take any colour up to one more than the largest colour on
edges ``0..i-1``), which lists each colouring once up to renaming colours.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .colouring import EdgeColouring, is_rainbow_colouring
from .exceptions import BudgetExhausted
from .graph import UNBOUNDED, Graph, diameter, is_connected

DEFAULT_BUDGET = 10**8

# beyond this many simple paths in total the leaf test falls back to the BFS oracle
_PATH_TABLE_LIMIT = 200_000

PruneHook = Callable[[list, int, int], bool]


@dataclass
class RcResult:
    value: int | float
    witness: Optional[EdgeColouring] = None
    nodes_explored: int = 0
    # True when every k below ``value`` was searched to exhaustion
    exhausted_below: bool = True
    leaves_per_k: dict = field(default_factory=dict)


def rc_upper_bound_trivial(g: Graph) -> int | float:
    """Edge count when connected (all-distinct colours are rainbow), else ``UNBOUNDED``."""
    return g.m if is_connected(g) else UNBOUNDED


def _pair_path_table(g: Graph):
    """Simple paths between every pair as edge-id tuples, or None if too many."""
    table = {}
    total = 0
    for s in range(g.n):
        found: dict[int, list] = {}
        stack = [(s, (s,), ())]
        while stack:
            x, verts, eids = stack.pop()
            for y in g.adjacency[x]:
                if y in verts:
                    continue
                e = eids + (g.edge_id(x, y),)
                if y > s:
                    found.setdefault(y, []).append(e)
                    total += 1
                    if total > _PATH_TABLE_LIMIT:
                        return None
                stack.append((y, verts + (y,), e))
        for t, paths in found.items():
            table[(s, t)] = sorted(paths, key=len)
    return sorted(table.values(), key=len)


def iter_restricted_growth(m: int, k: int, prune: PruneHook | None = None):
    """Yield every restricted-growth string of length ``m`` with values below ``k``.

    The yielded list is reused between iterations; copy it to keep it.
    """
    cols = [0] * m
    if m == 0:
        yield cols
        return

    def rec(i, top):
        if i == m:
            yield cols
            return
        if prune is not None and prune(cols[:i], i, k):
            return
        for c in range(min(k - 1, top + 1) + 1):
            cols[i] = c
            yield from rec(i + 1, max(top, c))

    yield from rec(1, 0)


def _leaf_is_rainbow(g, k, cols, usable) -> bool:
    if usable is None:
        return is_rainbow_colouring(EdgeColouring(g, k, cols))
    for ps in usable:
        for p in ps:
            if len({cols[e] for e in p}) == len(p):
                break
        else:
            return False
    return True


def rc_exact(g: Graph, budget: int = DEFAULT_BUDGET, prune: PruneHook | None = None) -> RcResult:
    """Minimum number of colours in a rainbow colouring of ``g``.

    Tries ``k = diameter(g), ..., m`` in turn and returns the first ``k``
    for which some restricted-growth colouring is rainbow, with that
    colouring as witness. Raises ``BudgetExhausted`` once more than
    ``budget`` leaves have been tested.

    ``prune(partial_colours, depth, k)`` may return True to cut a subtree;
    it is an optional hook and none is installed by default.
    """
    if not is_connected(g):
        return RcResult(UNBOUNDED)
    if g.n <= 1:
        return RcResult(0, EdgeColouring(g, 1, []))
    paths = _pair_path_table(g)
    explored = 0
    leaves_per_k = {}
    for k in range(max(1, int(diameter(g))), g.m + 1):
        # a rainbow path has at most k edges
        usable = None if paths is None else [[p for p in ps if len(p) <= k] for ps in paths]
        leaves = 0
        for cols in iter_restricted_growth(g.m, k, prune):
            if explored >= budget:
                raise BudgetExhausted(explored)
            explored += 1
            leaves += 1
            if _leaf_is_rainbow(g, k, cols, usable):
                leaves_per_k[k] = leaves
                witness = EdgeColouring(g, k, cols)
                assert is_rainbow_colouring(witness)
                return RcResult(k, witness, explored, prune is None, leaves_per_k)
        leaves_per_k[k] = leaves
    raise AssertionError("all-distinct colouring of a connected graph is rainbow")
