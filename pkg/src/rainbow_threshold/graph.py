"""Simple undirected graphs, G(n, p) sampling, distances and k-path enumeration."""
from __future__ import annotations

import math
from collections import deque
from pathlib import Path as FilePath
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exceptions import GraphFormatError
from .rng import STREAM_GRAPH, make_rng

#: Diameter / distance of a disconnected graph or unreachable pair.
UNBOUNDED = math.inf

Edge = tuple[int, int]
Path = tuple[int, ...]

# pairs sampled per numpy call in gnp_generate
_GNP_BLOCK = 1 << 20


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored once each in canonical form ``(u, v)`` with ``u < v``.
    Their order is the order in which they were supplied; ``gnp_generate``
    and ``read_graph`` produce lexicographically sorted edge lists.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Unordered vertex pairs. Self-loops and duplicates are rejected.
    """

    __slots__ = ("n", "edges", "adjacency", "edge_index", "_adjsets", "_csr")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        canon: list[Edge] = []
        index: dict[Edge, int] = {}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for n={n}")
            e = (a, b) if a < b else (b, a)
            if e in index:
                raise ValueError(f"duplicate edge {e}")
            index[e] = len(canon)
            canon.append(e)
            nbrs[a].append(b)
            nbrs[b].append(a)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(canon)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in nbrs)
        self.edge_index: dict[Edge, int] = index
        self._adjsets = tuple(frozenset(x) for x in self.adjacency)
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def edge_id(self, u: int, v: int) -> int:
        """Position of edge ``{u, v}`` in ``edges``; ``KeyError`` if absent."""
        return self.edge_index[(u, v) if u < v else (v, u)]

    def path_edge_ids(self, path: Sequence[int]) -> list[int]:
        return [self.edge_id(a, b) for a, b in zip(path, path[1:])]

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, edge_ids)`` arrays; neighbours sorted per row."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
            indices = np.fromiter(
                (w for a in self.adjacency for w in a), dtype=np.int64, count=2 * self.m
            )
            eids = np.fromiter(
                (self.edge_id(u, w) for u, a in enumerate(self.adjacency) for w in a),
                dtype=np.int64,
                count=2 * self.m,
            )
            self._csr = (indptr, indices, eids)
        return self._csr

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def gnp_generate(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p).

    One uniform double is drawn per unordered pair, in canonical order
    ``(0,1), (0,2), ..., (n-2,n-1)``; the pair is an edge iff the draw is
    below ``p``. Identical ``(n, p, seed)`` give identical graphs.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = make_rng(seed, STREAM_GRAPH)
    rows = np.arange(n, dtype=np.int64)
    offsets = rows * (n - 1) - rows * (rows - 1) // 2  # flat index of pair (u, u+1)
    total = n * (n - 1) // 2
    us, vs = [], []
    for lo in range(0, total, _GNP_BLOCK):
        flat = lo + np.flatnonzero(rng.random(min(_GNP_BLOCK, total - lo)) < p)
        u = np.searchsorted(offsets, flat, side="right") - 1
        us.append(u)
        vs.append(u + 1 + flat - offsets[u])
    edges = zip(np.concatenate(us).tolist(), np.concatenate(vs).tolist()) if us else ()
    return Graph(n, edges)


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [UNBOUNDED] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in g.adjacency[x]:
            if dist[y] == UNBOUNDED:
                dist[y] = dx
                queue.append(y)
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances as floats, ``inf`` for unreachable pairs."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    indptr, indices, _ = g.csr()
    mat = csr_matrix((np.ones(len(indices)), indices, indptr), shape=(g.n, g.n))
    return shortest_path(mat, method="D", unweighted=True, directed=False)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return UNBOUNDED not in bfs_distances(g, 0)


def diameter(g: Graph) -> float | int:
    """Largest shortest-path distance; ``UNBOUNDED`` if disconnected."""
    if g.n <= 1:
        return 0
    if not is_connected(g):
        return UNBOUNDED
    return int(distance_matrix(g).max())


def iter_k_paths(g: Graph, u: int, v: int, k: int) -> Iterator[Path]:
    """Yield the simple u-v paths with exactly ``k`` edges, lexicographically."""
    if k == 1:
        if g.has_edge(u, v):
            yield (u, v)
        return
    path = [u]
    on_path = {u}
    # stack of neighbour iterators, one per vertex on the current path
    stack = [iter(g.adjacency[u])]
    while stack:
        depth = len(path) - 1
        for w in stack[-1]:
            if w in on_path or w == v:
                continue
            if depth + 2 == k:
                if g.has_edge(w, v):
                    yield (*path, w, v)
                continue
            path.append(w)
            on_path.add(w)
            stack.append(iter(g.adjacency[w]))
            break
        else:
            stack.pop()
            on_path.discard(path.pop())


def enumerate_k_paths(g: Graph, u: int, v: int, k: int, limit: int | None = None) -> list[Path]:
    """Simple u-v paths of length exactly ``k`` in lexicographic order.

    At most ``limit`` paths are returned; ``None`` means no truncation.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    out = []
    for path in iter_k_paths(g, u, v, k):
        out.append(path)
        if limit is not None and len(out) >= limit:
            break
    return out


def is_path(g: Graph, path: Sequence[int]) -> bool:
    return (
        len(path) >= 1
        and len(set(path)) == len(path)
        and all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
    )


def write_graph(g: Graph, dest) -> None:
    """Write ``n m`` then one ``u v`` line per edge, sorted."""
    lines = [f"{g.n} {g.m}"] + [f"{a} {b}" for a, b in sorted(g.edges)]
    FilePath(dest).write_text("\n".join(lines) + "\n")


def read_graph(src) -> Graph:
    text = FilePath(src).read_text()
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphFormatError(f"{src}: expected header 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"{src}: {exc}") from None
    if len(edges) != m:
        raise GraphFormatError(f"{src}: header declares {m} edges, found {len(edges)}")
    if any(a >= b for a, b in edges) or edges != sorted(edges):
        raise GraphFormatError(f"{src}: edges must be 'u v' with u < v, sorted")
    return Graph(n, edges)


# small named graphs used throughout the tests and docs

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]))


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
