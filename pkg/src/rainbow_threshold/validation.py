"""Input coercion for the estimator front end."""
from __future__ import annotations

import numpy as np

from .graph import Graph


def check_graph(X, n: int | None = None) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, a networkx graph (nodes relabelled to ``0..n-1`` in
    sorted order), a square symmetric 0/1 adjacency array, or an ``(m, 2)``
    array-like of ``(u, v)`` pairs with ``n`` defaulting to the largest
    index plus one.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "nodes") and hasattr(X, "edges"):
        if X.is_directed() or X.is_multigraph():
            raise ValueError("only simple undirected graphs are supported")
        order = {node: i for i, node in enumerate(sorted(X.nodes))}
        return Graph(len(order), sorted(tuple(sorted((order[a], order[b]))) for a, b in X.edges))
    arr = np.asarray(X)
    # a (2, 2) array is read as an edge list
    if n is None and arr.ndim == 2 and arr.shape[0] == arr.shape[1] != 2:
        if not np.array_equal(arr, arr.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(arr)):
            raise ValueError("adjacency matrix has self-loops")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("adjacency matrix must be 0/1")
        us, vs = np.nonzero(np.triu(arr, 1))
        return Graph(arr.shape[0], zip(us.tolist(), vs.tolist()))
    if arr.size == 0:
        return Graph(n or 0)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"cannot interpret input of shape {arr.shape} as a graph")
    if n is None:
        n = int(arr.max()) + 1
    return Graph(n, sorted(tuple(sorted(e)) for e in arr.astype(int).tolist()))


def check_pairs(pairs, n: int) -> np.ndarray:
    """Validate an ``(m, 2)`` array of distinct in-range vertex pairs."""
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 2:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"pairs must have shape (m, 2), got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"vertex index out of range for n={n}")
    if np.any(arr[:, 0] == arr[:, 1]):
        raise ValueError("pair endpoints must differ")
    return arr
