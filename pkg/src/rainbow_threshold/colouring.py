"""Edge colourings, rainbow-path oracles and independent rainbow path packing."""
from __future__ import annotations

from collections import deque
from pathlib import Path as FilePath
from typing import Iterator, Sequence

import numpy as np

from .exceptions import CapExceeded, GraphFormatError
from .graph import Graph, Path, is_connected
from .rng import STREAM_COLOUR, make_rng

#: Largest colour count handled by the (vertex, colour-mask) breadth-first search.
STATE_SPACE_CAP = 20

# dense all-pairs reachability is used while 2**k * n * n stays below this
_DENSE_CELLS = 1 << 26


class EdgeColouring:
    """Total map from the edges of ``graph`` to colours ``0..k-1``.

    ``colours[i]`` is the colour of ``graph.edges[i]``. Instances are
    treated as immutable; recolouring returns a new object.
    """

    __slots__ = ("graph", "k", "colours")

    def __init__(self, graph: Graph, k: int, colours: Sequence[int]):
        arr = np.array(colours, dtype=np.int64).reshape(-1)
        if k < 1:
            raise ValueError(f"colour count must be positive, got {k}")
        if len(arr) != graph.m:
            raise ValueError(f"expected {graph.m} colours, got {len(arr)}")
        if len(arr) and (arr.min() < 0 or arr.max() >= k):
            raise ValueError(f"colours must lie in [0, {k})")
        arr.flags.writeable = False
        self.graph = graph
        self.k = int(k)
        self.colours = arr

    def colour(self, u: int, v: int) -> int:
        return int(self.colours[self.graph.edge_id(u, v)])

    def path_colours(self, path: Sequence[int]) -> list[int]:
        return [int(self.colours[e]) for e in self.graph.path_edge_ids(path)]

    def with_colours(self, updates: dict[int, int]) -> "EdgeColouring":
        arr = self.colours.copy()
        for e, c in updates.items():
            arr[e] = c
        return EdgeColouring(self.graph, self.k, arr)

    def n_colours_used(self) -> int:
        return len(np.unique(self.colours))

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColouring):
            return NotImplemented
        return (
            self.k == other.k
            and self.graph == other.graph
            and np.array_equal(self.colours, other.colours)
        )

    def __repr__(self) -> str:
        return f"EdgeColouring(k={self.k}, m={self.graph.m})"


def random_colouring(g: Graph, k: int, seed: int) -> EdgeColouring:
    """Colour every edge uniformly from ``0..k-1``, one draw per edge in edge order."""
    if k < 1:
        raise ValueError(f"colour count must be positive, got {k}")
    rng = make_rng(seed, STREAM_COLOUR)
    return EdgeColouring(g, k, rng.integers(0, k, size=g.m))


def is_rainbow_path(c: EdgeColouring, path: Sequence[int]) -> bool:
    cols = c.path_colours(path)
    return len(set(cols)) == len(cols)


def _bfs_rainbow(c: EdgeColouring, u: int, v: int) -> bool:
    g = c.graph
    cols = c.colours.tolist()
    adj = g.adjacency
    eid = g.edge_id
    seen = {(u, 0)}
    queue = deque(seen)
    while queue:
        x, mask = queue.popleft()
        for y in adj[x]:
            bit = 1 << cols[eid(x, y)]
            if mask & bit:
                continue
            if y == v:
                return True
            state = (y, mask | bit)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return False


def _dfs_rainbow(c: EdgeColouring, u: int, v: int) -> bool:
    # Memoised over (vertex, used colours); exponential in the worst case.
    g = c.graph
    cols = c.colours.tolist()
    seen = {(u, 0)}
    stack = [(u, 0)]
    while stack:
        x, mask = stack.pop()
        for y in reversed(g.adjacency[x]):
            bit = 1 << cols[g.edge_id(x, y)]
            if mask & bit:
                continue
            if y == v:
                return True
            state = (y, mask | bit)
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return False


def rainbow_path_exists(c: EdgeColouring, u: int, v: int, method: str = "auto") -> bool:
    """Whether some rainbow path joins ``u`` and ``v``.

    ``method="bfs"`` searches the (vertex, colour-mask) state space
    breadth-first and raises ``CapExceeded`` when ``c.k > STATE_SPACE_CAP``.
    ``method="dfs"`` is a memoised depth-first search with no cap, used by
    ``"auto"`` above the cap.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if method == "auto":
        method = "bfs" if c.k <= STATE_SPACE_CAP else "dfs"
    if method == "bfs":
        if c.k > STATE_SPACE_CAP:
            raise CapExceeded(c.k, STATE_SPACE_CAP)
        return _bfs_rainbow(c, u, v)
    if method == "dfs":
        return _dfs_rainbow(c, u, v)
    raise ValueError(f"unknown method {method!r}")


def rainbow_reachability(c: EdgeColouring) -> np.ndarray:
    """Boolean ``n x n`` matrix: entry ``[u, v]`` is True iff a rainbow u-v path exists.

    Runs the colour-mask search for all sources at once: ``reach[S]`` holds
    the pairs joined by a rainbow walk whose colour set is exactly ``S``, and
    ``reach[S | {c}]`` gains ``reach[S] @ A_c`` for each colour ``c`` not in ``S``.
    Walks with distinct edge colours contain rainbow paths, so the union over
    ``S`` is exact. The diagonal is left False.
    """
    g, k = c.graph, c.k
    n = g.n
    if k > STATE_SPACE_CAP:
        raise CapExceeded(k, STATE_SPACE_CAP)
    if (n * n) << k > _DENSE_CELLS:
        out = np.zeros((n, n), dtype=bool)
        for u in range(n):
            for v in range(u + 1, n):
                out[u, v] = out[v, u] = _bfs_rainbow(c, u, v)
        return out
    per_colour = [np.zeros((n, n), dtype=np.float32) for _ in range(k)]
    for (a, b), col in zip(g.edges, c.colours.tolist()):
        per_colour[col][a, b] = per_colour[col][b, a] = 1.0
    used = [col for col in range(k) if per_colour[col].any()]
    reach: dict[int, np.ndarray] = {0: np.eye(n, dtype=np.float32)}
    total = np.zeros((n, n), dtype=bool)
    for mask in range(1 << k):
        cur = reach.pop(mask, None)
        if cur is None:
            continue
        if mask:
            total |= cur > 0
        for col in used:
            bit = 1 << col
            if mask & bit:
                continue
            nxt = (cur @ per_colour[col]) > 0
            if not nxt.any():
                continue
            key = mask | bit
            prev = reach.get(key)
            reach[key] = nxt.astype(np.float32) if prev is None else np.maximum(prev, nxt)
    np.fill_diagonal(total, False)
    return total


def is_rainbow_colouring(c: EdgeColouring) -> bool:
    """Whether every pair of distinct vertices is joined by a rainbow path."""
    g = c.graph
    if g.n <= 1:
        return True
    if not is_connected(g):
        return False
    if c.k > STATE_SPACE_CAP:
        return all(
            _dfs_rainbow(c, u, v) for u in range(g.n) for v in range(u + 1, g.n)
        )
    reach = rainbow_reachability(c)
    return bool(reach[np.triu_indices(g.n, 1)].all())


def broken_pairs(c: EdgeColouring) -> list[tuple[int, int]]:
    """Pairs ``u < v`` not joined by any rainbow path, lexicographically."""
    reach = rainbow_reachability(c)
    n = c.graph.n
    return [(u, v) for u in range(n) for v in range(u + 1, n) if not reach[u, v]]


def iter_rainbow_r_paths(c: EdgeColouring, u: int, v: int, r: int) -> Iterator[Path]:
    """Yield the rainbow u-v paths with exactly ``r`` edges, lexicographically."""
    g = c.graph
    cols = c.colours.tolist()
    eid = g.edge_id
    if r == 1:
        if g.has_edge(u, v):
            yield (u, v)
        return
    path = [u]
    masks = [0]
    on_path = {u}
    stack = [iter(g.adjacency[u])]
    while stack:
        x = path[-1]
        mask = masks[-1]
        depth = len(path) - 1
        for w in stack[-1]:
            if w in on_path or w == v:
                continue
            bit = 1 << cols[eid(x, w)]
            if mask & bit:
                continue
            if depth + 2 == r:
                if g.has_edge(w, v) and not (mask | bit) & (1 << cols[eid(w, v)]):
                    yield (*path, w, v)
                continue
            path.append(w)
            masks.append(mask | bit)
            on_path.add(w)
            stack.append(iter(g.adjacency[w]))
            break
        else:
            stack.pop()
            masks.pop()
            on_path.discard(path.pop())


def enumerate_rainbow_r_paths(
    c: EdgeColouring, u: int, v: int, r: int, limit: int | None = None
) -> list[Path]:
    """Rainbow u-v paths of length exactly ``r``, lexicographic, at most ``limit``."""
    if u == v:
        raise ValueError("endpoints must differ")
    if r < 1:
        raise ValueError(f"r must be at least 1, got {r}")
    out = []
    for path in iter_rainbow_r_paths(c, u, v, r):
        out.append(path)
        if limit is not None and len(out) >= limit:
            break
    return out


def greedy_disjoint(paths, cap: int) -> list[Path]:
    """Accept paths in order while their inner vertices stay pairwise disjoint."""
    taken: set[int] = set()
    out: list[Path] = []
    if cap < 1:
        return out
    for path in paths:
        inner = path[1:-1]
        if taken.isdisjoint(inner):
            out.append(path)
            taken.update(inner)
            if len(out) >= cap:
                break
    return out


def independent_rainbow_packing(
    c: EdgeColouring, u: int, v: int, r: int, cap: int, limit: int | None = -1
) -> list[Path]:
    """Greedy packing of internally disjoint rainbow r-paths joining ``u`` and ``v``.

    Scans ``enumerate_rainbow_r_paths(c, u, v, r, limit)`` in order and keeps
    a path iff its inner vertices avoid those already kept, stopping at
    ``cap`` paths. ``limit`` defaults to ``10 * cap``; pass ``None`` to scan
    every rainbow r-path. The size is a lower bound on the maximum packing.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if cap < 1:
        raise ValueError(f"cap must be at least 1, got {cap}")
    if limit == -1:
        limit = 10 * cap
    return greedy_disjoint(enumerate_rainbow_r_paths(c, u, v, r, limit), cap)


def write_colouring(c: EdgeColouring, dest) -> None:
    """Write ``k m`` then one ``u v colour`` line per edge in the graph's edge order."""
    lines = [f"{c.k} {c.graph.m}"]
    lines += [f"{a} {b} {col}" for (a, b), col in zip(c.graph.edges, c.colours.tolist())]
    FilePath(dest).write_text("\n".join(lines) + "\n")


def read_colouring(src, graph: Graph | None = None) -> EdgeColouring:
    """Parse a colouring file; the graph is rebuilt from its edges unless given."""
    rows = [ln.split() for ln in FilePath(src).read_text().splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError(f"{src}: expected header 'k m'")
    try:
        k, m = int(rows[0][0]), int(rows[0][1])
        triples = [(int(a), int(b), int(col)) for a, b, col in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"{src}: {exc}") from None
    if len(triples) != m:
        raise GraphFormatError(f"{src}: header declares {m} edges, found {len(triples)}")
    edges = [(a, b) for a, b, _ in triples]
    if graph is None:
        n = 1 + max((b for _, b in edges), default=-1)
        graph = Graph(n, edges)
    elif list(graph.edges) != edges:
        raise GraphFormatError(f"{src}: edges do not match the graph's edge order")
    return EdgeColouring(graph, k, [col for _, _, col in triples])
