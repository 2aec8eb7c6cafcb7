"""Random colouring followed by flag-and-repair recolouring.

A uniformly random ``r``-colouring leaves some vertex pairs joined by few
independent rainbow r-paths ("dangerous" pairs). Each dangerous pair in
turn gets one r-path with no flagged edge; that path is recoloured to be
rainbow and its edges are flagged so later repairs never touch them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .colouring import (
    EdgeColouring,
    broken_pairs,
    independent_rainbow_packing,
    random_colouring,
)
from .exceptions import DomainError, PathTooLong
from .graph import Graph, Path, bfs_distances, distance_matrix, iter_k_paths

SUCCESS = "Success"
NO_UNFLAGGED_PATH = "NoUnflaggedPath"
NOT_VERIFIED = "NotVerified"

MAX_DEFAULT_POOL = 50


@dataclass(frozen=True)
class ProofConstants:
    r: int
    epsilon: float
    L: int
    K: int
    S: int


def proof_constants(r: int, epsilon: float) -> ProofConstants:
    """``L = ceil(17 r / (eps (r - 1)))``, ``K = r L``, ``S = 2 L r^2 + 2``.

    ``epsilon`` is read through its decimal representation, so 0.1 means
    exactly one tenth.
    """
    if r < 3:
        raise DomainError(f"r must be at least 3, got {r}")
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    eps = epsilon if isinstance(epsilon, Fraction) else Fraction(repr(float(epsilon)))
    L = math.ceil(Fraction(17 * r) / (eps * (r - 1)))
    return ProofConstants(r=r, epsilon=epsilon, L=L, K=r * L, S=2 * L * r * r + 2)


def default_pool_size(r: int) -> int:
    """``min(r L, 50)`` with ``L`` taken at ``epsilon = 1``."""
    L = math.ceil(Fraction(17 * r, r - 1))
    return min(r * L, MAX_DEFAULT_POOL)


@dataclass
class DangerReport:
    k_threshold: int
    pairs: list[tuple[int, int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.pairs)


def detect_dangerous_pairs(
    c: EdgeColouring,
    r: int,
    k_threshold: int,
    limit: int | None = -1,
    method: str = "kernel",
) -> DangerReport:
    """Pairs joined by at most ``k_threshold`` independent rainbow r-paths.

    Each pair is packed greedily with ``cap = k_threshold + 1``, so the
    recorded size is exact up to the cap. ``method="python"`` uses the
    per-pair reference packer; ``"kernel"`` the compiled all-pairs scan.
    """
    if c.k != r:
        raise ValueError(f"colouring has {c.k} colours, expected r={r}")
    cap = k_threshold + 1
    if limit == -1:
        limit = 10 * cap
    n = c.graph.n
    report = DangerReport(k_threshold)
    if method == "kernel":
        from ._kernels import all_pairs_packing

        sizes = all_pairs_packing(c, r, cap, limit)
        for u in range(n):
            row = sizes[u]
            for v in range(u + 1, n):
                if row[v] <= k_threshold:
                    report.pairs.append((u, v, int(row[v])))
    elif method == "python":
        for u in range(n):
            for v in range(u + 1, n):
                size = len(independent_rainbow_packing(c, u, v, r, cap, limit))
                if size <= k_threshold:
                    report.pairs.append((u, v, size))
    else:
        raise ValueError(f"unknown method {method!r}")
    return report


def iter_independent_paths(g: Graph, u: int, v: int, r: int, pool_size: int) -> Iterator[Path]:
    """Greedy internally disjoint u-v r-paths in lexicographic order, at most ``pool_size``."""
    taken: set[int] = set()
    count = 0
    if pool_size < 1:
        return
    for path in iter_k_paths(g, u, v, r):
        inner = path[1:-1]
        if taken.isdisjoint(inner):
            taken.update(inner)
            yield path
            count += 1
            if count >= pool_size:
                return


@dataclass
class NoUnflaggedPath:
    """Every path in the pool of a pair already carries a flagged edge."""

    pair: tuple[int, int]
    pool_size: int
    distance: float

    @property
    def diameter_obstruction(self) -> bool:
        # no r-path at all because the pair is too far apart
        return self.pool_size == 0


def select_unflagged_path(
    c: EdgeColouring,
    u: int,
    v: int,
    r: int,
    flags: set[int],
    pool_size: int,
    distances=None,
) -> Path | NoUnflaggedPath:
    """First path of the pair's independent r-path pool with no flagged edge.

    ``distances`` is an optional precomputed all-pairs distance matrix, used
    only to annotate failures.
    """
    if pool_size < 1:
        raise ValueError(f"pool_size must be at least 1, got {pool_size}")
    g = c.graph
    size = 0
    for path in iter_independent_paths(g, u, v, r, pool_size):
        size += 1
        if flags.isdisjoint(g.path_edge_ids(path)):
            return path
    if size:
        dist = r
    elif distances is not None:
        dist = float(distances[u, v])
    else:
        dist = bfs_distances(g, u)[v]
    return NoUnflaggedPath((min(u, v), max(u, v)), size, dist)


def recolour_to_rainbow(c: EdgeColouring, path: Path) -> EdgeColouring:
    """Give the edges of ``path`` colours ``0, 1, 2, ...`` from its lower-indexed end."""
    ids = c.graph.path_edge_ids(path)
    if len(ids) > c.k:
        raise PathTooLong(f"path has {len(ids)} edges but only {c.k} colours exist")
    if path[0] > path[-1]:
        ids.reverse()
    return c.with_colours({e: i for i, e in enumerate(ids)})


@dataclass
class RepairOutcome:
    colouring: EdgeColouring
    initial: EdgeColouring
    report: DangerReport
    repaired_paths: list[tuple[tuple[int, int], Path]]
    flags: set[int]
    status: str
    failures: list[NoUnflaggedPath] = field(default_factory=list)
    # pairs with no rainbow path in the final colouring
    broken: list[tuple[int, int]] = field(default_factory=list)
    # rounds of the optional re-repair extension that actually ran
    extension_rounds: int = 0
    # dangerous pairs closer than r with no r-path at all
    skipped: list[tuple[int, int]] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.status == SUCCESS

    @property
    def verified(self) -> bool:
        """Final colouring machine-checked as a rainbow colouring."""
        return not self.broken

    @property
    def failure(self) -> NoUnflaggedPath | None:
        return self.failures[0] if self.failures else None

    def status_line(self) -> str:
        line = (
            f"status={self.status} dangerous={len(self.report)} "
            f"recoloured={len(self.repaired_paths)}"
        )
        if self.failure is not None:
            u, v = self.failure.pair
            kind = "diameter" if self.failure.diameter_obstruction else "flagged"
            line += f" failed_pair={u},{v} pool={self.failure.pool_size} obstruction={kind}"
        if self.failures:
            line += f" failed_pairs={len(self.failures)}"
        if not self.success:
            line += f" verified={str(self.verified).lower()}"
        if self.broken:
            line += f" broken={len(self.broken)}"
        if self.extension_rounds:
            line += f" iterate_extension_rounds={self.extension_rounds}"
        return line


def _repair_pairs(c, pairs, r, flags, pool_size, repaired, failures, skipped):
    distances = None
    for u, v in pairs:
        found = select_unflagged_path(c, u, v, r, flags, pool_size, distances)
        if isinstance(found, NoUnflaggedPath):
            if distances is None:
                distances = distance_matrix(c.graph)
            if found.pool_size == 0 and found.distance < r:
                # closer than r with no r-path: left to the final verification
                skipped.append(found.pair)
            else:
                failures.append(found)
            continue
        c = recolour_to_rainbow(c, found)
        flags.update(c.graph.path_edge_ids(found))
        repaired.append(((u, v), found))
    return c


def repair_colouring(
    g: Graph,
    seed: int,
    r: int,
    k_threshold: int = 1,
    pool_size: int | None = None,
    iterate: int = 0,
    method: str = "kernel",
    limit: int | None = -1,
) -> RepairOutcome:
    """Random ``r``-colouring of ``g`` from ``seed``, repaired by :func:`repair_from`."""
    if r < 2:
        raise DomainError(f"r must be at least 2, got {r}")
    return repair_from(random_colouring(g, r, seed), k_threshold, pool_size, iterate, method, limit)


def repair_from(
    initial: EdgeColouring,
    k_threshold: int = 1,
    pool_size: int | None = None,
    iterate: int = 0,
    method: str = "kernel",
    limit: int | None = -1,
) -> RepairOutcome:
    """Repair ``initial`` (an ``r``-colouring, ``r = initial.k``) along its dangerous pairs.

    Dangerous pairs are handled in lexicographic order. A pair whose pool is
    exhausted, or which is farther apart than ``r``, is recorded as a
    failure and passed over; the status is then ``NoUnflaggedPath`` (the
    first such pair is ``outcome.failure``). A pair closer than ``r`` with
    no r-path at all is only listed in ``outcome.skipped``. The
    final colouring is always checked for rainbow connectivity
    (``outcome.verified``); with no skipped pair the status is ``Success``
    or ``NotVerified`` accordingly.

    ``limit`` bounds the rainbow r-paths scanned per pair during detection
    (default ``10 * (k_threshold + 1)``, ``None`` for all).

    ``iterate > 0`` enables an extension: while verification fails, the
    broken pairs are repaired the same way, for at most ``iterate`` rounds.
    """
    r = initial.k
    if pool_size is None:
        pool_size = default_pool_size(r)
    report = detect_dangerous_pairs(initial, r, k_threshold, limit, method)
    flags: set[int] = set()
    repaired: list = []
    failures: list[NoUnflaggedPath] = []
    skipped: list[tuple[int, int]] = []
    pairs = [(u, v) for u, v, _ in report.pairs]
    c = _repair_pairs(initial, pairs, r, flags, pool_size, repaired, failures, skipped)
    broken = broken_pairs(c)
    rounds = 0
    while broken and rounds < iterate:
        rounds += 1
        c = _repair_pairs(c, broken, r, flags, pool_size, repaired, failures, skipped)
        broken = broken_pairs(c)
    if failures:
        status = NO_UNFLAGGED_PATH
    else:
        status = NOT_VERIFIED if broken else SUCCESS
    return RepairOutcome(c, initial, report, repaired, flags, status, failures, broken, rounds, skipped)
