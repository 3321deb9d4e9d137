"""Strict JSON configuration loading into the canonical frame."""
import json
import math

import numpy as np

from .coalition import GameConfig
from .exceptions import EvaderNotInPlay, ParseError, ZeroNormal
from .geometry import TargetPlaneSpec, canonical_frame, to_canonical

_FIELDS = {"K", "b", "pursuers", "evader"}


def _real(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {type(value).__name__}", path)
    if not math.isfinite(value):
        raise ParseError("value must be finite", path)
    return float(value)


def _vec3(value, path):
    if not isinstance(value, list) or len(value) != 3:
        raise ParseError("expected a list of 3 numbers", path)
    return np.array([_real(v, f"{path}[{k}]") for k, v in enumerate(value)])


def parse_config(data):
    """Validate a decoded config mapping; returns ``(GameConfig, CanonicalFrame)``."""
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", "")
    unknown = sorted(set(data) - _FIELDS)
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", unknown[0])
    for key in ("K", "b"):
        if key not in data:
            raise ParseError(f"missing required field {key!r}", key)
    K = _vec3(data["K"], "K")
    b = _real(data["b"], "b")
    if np.linalg.norm(K) <= 1e-12:
        raise ZeroNormal("K must be a nonzero vector")
    e = None
    if data.get("evader") is not None:
        e = _vec3(data["evader"], "evader")
        if not K @ e > b:
            raise EvaderNotInPlay(f"evader: K.e = {K @ e!r} is not greater than b = {b!r}")
    if "pursuers" not in data:
        raise ParseError("missing required field 'pursuers'", "pursuers")
    pursuers = data["pursuers"]
    if not isinstance(pursuers, list) or not pursuers:
        raise ParseError("expected a non-empty list", "pursuers")
    P = np.array([_vec3(p, f"pursuers[{k}]") for k, p in enumerate(pursuers)])

    spec = TargetPlaneSpec(K, b)
    frame = canonical_frame(spec)
    e_c = None if e is None else to_canonical(frame, e)
    if e_c is not None and e_c[2] <= 0:
        # K.e > b held in the raw frame; keep the verdict consistent with it
        e_c[2] = np.nextafter(0.0, 1.0)
    return GameConfig(to_canonical(frame, P), e_c), frame


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path} ({exc.msg} at line {exc.lineno})") from exc
    return parse_config(data)
