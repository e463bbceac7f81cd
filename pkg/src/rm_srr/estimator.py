"""scikit-learn style wrapper around the membership oracle.

``ServiceRateRegion(r, m)`` is a one-class classifier: rows of ``X`` are
demand vectors, ``predict`` says whether each lies in the service rate
region, and ``decision_function`` returns the largest factor by which the
demand can be scaled and still be served (>= 1 exactly when inside).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import ValidationError
from .hypergraph import POLICIES, build_hypergraph
from .rm import RmParams
from .srr import default_policy, lambda_max, max_scale, membership
from .validation import check_int, parse_rates


class ServiceRateRegion(ClassifierMixin, BaseEstimator):
    """Membership classifier for the service rate region of RM(r, m).

    Parameters
    ----------
    r, m : int
        Code order and number of variables.
    policy : {"oracle", "geometric"} or None
        Edge policy for the recovery hypergraph.  ``None`` picks the exact
        oracle policy when it is affordable and the geometric one otherwise.
    """

    def __init__(self, r: int = 1, m: int = 2, policy: str | None = None):
        self.r = r
        self.m = m
        self.policy = policy

    def fit(self, X=None, y=None):
        """Build the recovery hypergraph.  ``X`` is only checked for width."""
        p = RmParams(check_int("r", self.r, 0), check_int("m", self.m, 1))
        p.require_dual()
        if self.policy is not None and self.policy not in POLICIES:
            raise ValidationError(f"unknown edge policy {self.policy!r}")
        self.params_ = p
        self.policy_ = self.policy or default_policy(p)
        self.graph_ = build_hypergraph(p, self.policy_)
        self.lambda_max_ = tuple(lambda_max(p, j) for j in range(1, p.k + 1))
        self.n_features_in_ = p.k
        self.classes_ = np.array([False, True])
        if X is not None:
            self._rows(X)
        return self

    def _rows(self, X) -> list[tuple[Fraction, ...]]:
        rows = X.tolist() if isinstance(X, np.ndarray) else list(X)
        for row in rows:
            if isinstance(row, (str, bytes)) or not hasattr(row, "__iter__"):
                raise ValidationError("X must be two-dimensional: one demand vector per row")
        return [parse_rates(row, self.n_features_in_) for row in rows]

    def membership(self, x):
        check_is_fitted(self, "graph_")
        return membership(self.params_, x, self.policy_, graph=self.graph_)

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "graph_")
        return np.array([self.membership(row).inside for row in self._rows(X)], dtype=bool)

    def decision_scores(self, X) -> list[Fraction | None]:
        """Exact maximal scaling factors; ``None`` marks the zero demand."""
        check_is_fitted(self, "graph_")
        return [max_scale(self.graph_, row)[0] if any(row) else None for row in self._rows(X)]

    def decision_function(self, X) -> np.ndarray:
        return np.array(
            [np.inf if t is None else float(t) for t in self.decision_scores(X)], dtype=float
        )
