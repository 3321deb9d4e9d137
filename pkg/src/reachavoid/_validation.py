import numpy as np
from sklearn.utils import check_array


def check_point(p, name="point"):
    """Return ``p`` as a finite float array of shape (3,)."""
    arr = np.asarray(p, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have shape (3,), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite coordinates: {arr}")
    return arr


def check_points(X, name="points", min_samples=1):
    """Return ``X`` as a finite float array of shape (n, 3)."""
    X = check_array(X, dtype=float, ensure_min_samples=min_samples,
                    input_name=name)
    if X.shape[1] != 3:
        raise ValueError(f"{name} must have 3 columns, got {X.shape[1]}")
    return X
