"""scikit-learn style estimators wrapping the repair and exact solvers."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .colouring import rainbow_reachability
from .exact import DEFAULT_BUDGET, rc_exact
from .repair import repair_colouring
from .validation import check_graph, check_pairs


class RainbowRepairColourer(BaseEstimator):
    """Random ``r``-colouring repaired along dangerous pairs.

    Parameters
    ----------
    r : int, default 3
        Number of colours, also the length of the paths that are repaired.
    k_threshold : int, default 1
        Pairs joined by at most this many independent rainbow r-paths are
        repaired.
    pool_size : int or None
        Independent r-paths considered per dangerous pair; ``None`` picks
        the default for ``r``.
    iterate : int, default 0
        Extra repair rounds on pairs still broken after verification.
    random_state : int, default 0
        Seed of the initial colouring.

    Attributes
    ----------
    outcome_ : RepairOutcome
    colouring_ : EdgeColouring
    status_ : str
    verified_ : bool
    dangerous_pairs_ : ndarray of shape (d, 3)
        ``(u, v, packing_size)`` rows.
    """

    def __init__(self, r=3, k_threshold=1, pool_size=None, iterate=0, random_state=0):
        self.r = r
        self.k_threshold = k_threshold
        self.pool_size = pool_size
        self.iterate = iterate
        self.random_state = random_state

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.r < 2:
            raise ValueError(f"r must be at least 2, got {self.r}")
        self.outcome_ = repair_colouring(
            g,
            int(self.random_state),
            self.r,
            self.k_threshold,
            self.pool_size,
            self.iterate,
        )
        self.graph_ = g
        self.colouring_ = self.outcome_.colouring
        self.status_ = self.outcome_.status
        self.verified_ = self.outcome_.verified
        self.dangerous_pairs_ = np.array(self.outcome_.report.pairs, dtype=np.int64).reshape(-1, 3)
        self._reach = None
        return self

    def transform(self, X=None):
        """Edge colours of the repaired colouring, in the fitted graph's edge order."""
        check_is_fitted(self, "colouring_")
        if X is not None and check_graph(X) != self.graph_:
            raise ValueError("transform expects the graph the estimator was fitted on")
        return np.asarray(self.colouring_.colours).copy()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def _reachability(self):
        if self._reach is None:
            self._reach = rainbow_reachability(self.colouring_)
        return self._reach

    def predict(self, pairs):
        """Whether each ``(u, v)`` pair is joined by a rainbow path after repair."""
        check_is_fitted(self, "colouring_")
        arr = check_pairs(pairs, self.graph_.n)
        return self._reachability()[arr[:, 0], arr[:, 1]]

    def score(self, X=None, y=None):
        """Fraction of vertex pairs joined by a rainbow path."""
        check_is_fitted(self, "colouring_")
        n = self.graph_.n
        if n < 2:
            return 1.0
        return float(self._reachability()[np.triu_indices(n, 1)].mean())


class ExactRainbowConnection(BaseEstimator):
    """Exact rainbow connection number by exhaustive canonical colourings.

    Attributes
    ----------
    rc_ : int or float
        ``inf`` for disconnected graphs.
    witness_ : EdgeColouring or None
    nodes_explored_ : int
    """

    def __init__(self, budget=DEFAULT_BUDGET):
        self.budget = budget

    def fit(self, X, y=None):
        g = check_graph(X)
        res = rc_exact(g, self.budget)
        self.graph_ = g
        self.result_ = res
        self.rc_ = res.value
        self.witness_ = res.witness
        self.nodes_explored_ = res.nodes_explored
        return self

    def transform(self, X=None):
        check_is_fitted(self, "rc_")
        if self.witness_ is None:
            raise ValueError("disconnected graph has no rainbow colouring")
        return np.asarray(self.witness_.colours).copy()

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
