import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from reachavoid.estimators import BarrierClassifier, CanonicalFrameTransformer, EscapeMarginOracle

SQUARE = np.array([[0, 0, 1], [4, 0, 1], [0, 4, 1], [5, 5, 1]], float)
QUERIES = np.array([[2, 2, 4], [2, 2, 1], [9, 9, 1], [1, 1, 5]], float)


def test_classifier_api():
    clf = BarrierClassifier().fit(SQUARE)
    assert clf.active_ == (0, 1, 2, 3)
    assert list(clf.predict(QUERIES)) == ["PursuerWin", "EvaderWin", "EvaderWin", "PursuerWin"]
    assert clf.get_params() == {"band": 1e-9, "eps": 1e-9}
    assert clone(clf).get_params() == clf.get_params()


def test_oracle_estimator_agrees_off_barrier():
    clf = BarrierClassifier().fit(SQUARE)
    orc = EscapeMarginOracle(band=1e-3).fit(SQUARE)
    np.testing.assert_array_equal(np.sign(clf.decision_function(QUERIES)),
                                  np.sign(orc.decision_function(QUERIES)))


def test_unfitted_estimators_raise():
    with pytest.raises(NotFittedError):
        BarrierClassifier().predict(QUERIES)
    with pytest.raises(NotFittedError):
        CanonicalFrameTransformer().transform(QUERIES)


def test_transformer_round_trip():
    tr = CanonicalFrameTransformer(K=(1, 1, 0), b=2).fit()
    Z = tr.transform(QUERIES)
    np.testing.assert_allclose(Z[:, 2], (QUERIES[:, 0] + QUERIES[:, 1] - 2) / np.sqrt(2))
    np.testing.assert_allclose(tr.inverse_transform(Z), QUERIES, atol=1e-12)


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        BarrierClassifier().fit(np.zeros((3, 2)))
