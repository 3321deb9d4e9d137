"""scikit-learn style wrappers.

``fit`` takes the pursuer positions (one row per pursuer). ``predict`` and
``decision_function`` take evader positions (one row per query). Both
estimators orient the decision value the same way: positive means the
pursuers win.
"""
import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points
from .coalition import BAND, EVADER_WIN, ON_BARRIER, PURSUER_WIN, build_model
from .evasion import EPS_MARGIN, escape_margin_supremum
from .geometry import EPS_GEO, TargetPlaneSpec, canonical_frame, from_canonical, to_canonical

CLASSES = np.array([EVADER_WIN, ON_BARRIER, PURSUER_WIN])


def _tags(values, band):
    out = np.full(len(values), ON_BARRIER, dtype=object)
    out[values > band] = PURSUER_WIN
    out[values < -band] = EVADER_WIN
    return out


class BarrierClassifier(ClassifierMixin, BaseEstimator):
    """Closed-form winner of the reach-avoid game for fixed pursuers."""

    def __init__(self, band=BAND, eps=EPS_GEO):
        self.band = band
        self.eps = eps

    def fit(self, X, y=None):
        X = check_points(X, "pursuers")
        self.model_ = build_model(X, self.eps)
        self.active_ = self.model_.coalitions.active
        self.coalitions_ = self.model_.coalitions
        self.pieces_ = self.model_.pieces
        self.classes_ = CLASSES
        self.n_features_in_ = 3
        return self

    def decision_function(self, X):
        check_is_fitted(self, "model_")
        X = check_points(X, "evaders")
        return np.array([self.model_.margin(q) for q in X])

    def predict(self, X):
        return _tags(self.decision_function(X), self.band)

    def verdicts(self, X):
        check_is_fitted(self, "model_")
        return [self.model_.verdict(q, self.band) for q in check_points(X, "evaders")]


class EscapeMarginOracle(ClassifierMixin, BaseEstimator):
    """Grid-search estimate of the escape-margin supremum.

    ``decision_function`` returns ``-supremum`` so its sign matches
    :class:`BarrierClassifier`.
    """

    def __init__(self, grid=201, extent=None, levels=8, band=EPS_MARGIN):
        self.grid = grid
        self.extent = extent
        self.levels = levels
        self.band = band

    def fit(self, X, y=None):
        self.pursuers_ = check_points(X, "pursuers")
        self.classes_ = CLASSES
        self.n_features_in_ = 3
        return self

    def reports(self, X):
        check_is_fitted(self, "pursuers_")
        return [escape_margin_supremum(q, self.pursuers_, grid=self.grid, extent=self.extent,
                                       levels=self.levels)
                for q in check_points(X, "evaders")]

    def decision_function(self, X):
        return np.array([-r.supremum for r in self.reports(X)])

    def predict(self, X):
        return _tags(self.decision_function(X), self.band)


class CanonicalFrameTransformer(TransformerMixin, BaseEstimator):
    """Maps raw coordinates to the frame where the target plane is ``z = 0``."""

    def __init__(self, K=(0.0, 0.0, 1.0), b=0.0):
        self.K = K
        self.b = b

    def fit(self, X=None, y=None):
        self.frame_ = canonical_frame(TargetPlaneSpec(self.K, self.b))
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "frame_")
        return to_canonical(self.frame_, check_points(X, "X"))

    def inverse_transform(self, X):
        check_is_fitted(self, "frame_")
        return from_canonical(self.frame_, check_points(X, "X"))
