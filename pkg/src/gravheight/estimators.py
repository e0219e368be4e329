"""scikit-learn style wrappers around the pipeline.

``GravityScale`` learns the metres-per-pixel factor from a free-falling
track and maps pixel lengths to metres; ``HeightEstimator`` does the same
from a pose sequence and predicts heights from nose-to-ankle spans;
``ParabolaRegressor`` exposes the (robust) parabola fit on its own.
"""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .com import Trajectory2D
from .config import RunConfig
from .estimate import estimate_from_segments, estimate_height, flight_segments
from .fit import RANSAC_ITERATIONS, RANSAC_TOLERANCE, fit_parabola_lsq, fit_parabola_ransac
from .physics import G_DEFAULT, NOSE_ANKLE_FACTOR, HeightKind, HeightMeasurement


class ParabolaRegressor(RegressorMixin, BaseEstimator):
    """Quadratic regression of a coordinate on time.

    Parameters
    ----------
    ransac : bool, default=False
        Fit by consensus over minimal 3-sample models instead of plain
        least squares.
    ransac_iterations : int, default=500
    ransac_tol : float, default=3.0
        Inlier residual bound, in the units of ``y``.
    random_state : int, default=0

    Attributes
    ----------
    coef_ : ndarray of shape (3,)
        ``(c2, c1, c0)``.
    acceleration_ : float
        ``2 * c2``.
    inlier_mask_ : ndarray of bool
    """

    def __init__(self, ransac=False, ransac_iterations=RANSAC_ITERATIONS, ransac_tol=RANSAC_TOLERANCE, random_state=0):
        self.ransac = ransac
        self.ransac_iterations = ransac_iterations
        self.ransac_tol = ransac_tol
        self.random_state = random_state

    def fit(self, X, y):
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("X must hold a single time column")
        y = check_array(np.asarray(y, dtype=float).reshape(-1, 1)).ravel()
        samples = np.column_stack([X[:, 0], y])
        if self.ransac:
            fit = fit_parabola_ransac(samples, self.ransac_iterations, self.ransac_tol, self.random_state)
        else:
            fit = fit_parabola_lsq(samples)
        self.fit_ = fit
        self.coef_ = np.array(fit.coeffs)
        self.acceleration_ = fit.acceleration
        self.inlier_mask_ = fit.inlier_mask
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return self.fit_(X[:, 0])


def _config_from(est):
    return RunConfig(
        method=est.method,
        segment_mode=est.segment_mode,
        ransac=est.ransac,
        g=est.g,
        seed=est.random_state,
    )


class GravityScale(TransformerMixin, BaseEstimator):
    """Metres-per-pixel factor learned from a ballistic track.

    ``fit`` takes an ``(n, 3)`` array of ``t, x, y`` rows with ``y``
    up-positive in pixels (NaN rows are gaps), finds the flight phases and
    sets ``q_ = g / a_px`` (median over flights). ``transform`` multiplies
    pixel lengths by ``q_``.
    """

    def __init__(self, method="curve", segment_mode="on_spot", ransac=False, g=G_DEFAULT, random_state=0):
        self.method = method
        self.segment_mode = segment_mode
        self.ransac = ransac
        self.g = g
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, ensure_all_finite="allow-nan")
        if X.shape[1] != 3:
            raise ValueError("X must have columns t, x, y")
        traj = Trajectory2D(X[:, 0], X[:, 1:], np.all(np.isfinite(X), axis=1))
        config = _config_from(self)
        traj, angle, segments, notes = flight_segments(traj, config)
        # unit span: the per-segment "heights" are then the q values themselves
        est = estimate_from_segments(traj, segments, HeightMeasurement(1.0, HeightKind.TOTAL), config, angle, notes)
        self.estimate_ = est
        self.q_ = est.aggregate_q
        self.segments_ = est.per_segment
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "q_")
        return check_array(X, ensure_all_finite="allow-nan") * self.q_


class HeightEstimator(BaseEstimator):
    """Person height from a :class:`~gravheight.com.PoseSequence`.

    ``fit(seq)`` runs the full pipeline and stores ``height_`` and ``q_``;
    ``predict`` maps nose-to-ankle pixel spans of shape ``(n, 1)`` to
    metres with the same ``q_`` and correction factor ``c``.
    """

    def __init__(self, method="curve", segment_mode="on_spot", ransac=False, c=NOSE_ANKLE_FACTOR, g=G_DEFAULT, random_state=0):
        self.method = method
        self.segment_mode = segment_mode
        self.ransac = ransac
        self.c = c
        self.g = g
        self.random_state = random_state

    def fit(self, X, y=None):
        config = _config_from(self).updated(c=self.c)
        est = estimate_height(X, config=config)
        self.estimate_ = est
        self.height_ = est.aggregate_h
        self.q_ = est.aggregate_q
        return self

    def predict(self, X):
        check_is_fitted(self, "q_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("X must hold a single column of pixel spans")
        return X[:, 0] * self.q_ * self.c
