import json

import numpy as np
import pytest

from reachavoid.configio import load_config, parse_config
from reachavoid.exceptions import DuplicatePlayers, EvaderNotInPlay, ParseError, ZeroNormal
from reachavoid.geometry import from_canonical


def write(tmp_path, data):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


def test_canonical_input_is_unchanged(tmp_path):
    cfg, frame = load_config(write(tmp_path, {"K": [0, 0, 1], "b": 0, "pursuers": [[0, 0, -1]],
                                              "evader": [0, 0, 1]}))
    np.testing.assert_allclose(cfg.pursuers, [[0, 0, -1]])
    np.testing.assert_allclose(cfg.evader, [0, 0, 1])
    np.testing.assert_allclose(frame.rotation, np.eye(3))


def test_tilted_plane_maps_heights():
    cfg, frame = parse_config({"K": [1, 0, 0], "b": 1, "pursuers": [[3, 5, 7]], "evader": [2, 0, 0]})
    assert cfg.pursuers[0, 2] == pytest.approx(2)
    assert cfg.evader[2] == pytest.approx(1)
    np.testing.assert_allclose(from_canonical(frame, cfg.pursuers), [[3, 5, 7]], atol=1e-12)


def test_evader_on_wrong_side():
    with pytest.raises(EvaderNotInPlay):
        parse_config({"K": [1, 0, 0], "b": 1, "evader": [0, 0, 0]})


def test_zero_normal():
    with pytest.raises(ZeroNormal):
        parse_config({"K": [0, 0, 0], "b": 0, "pursuers": [[0, 0, 1]]})


@pytest.mark.parametrize("data,path", [
    ({"K": [0, 0, 1], "b": 0, "pursuers": [[0, 0, 1]], "extra": 1}, "extra"),
    ({"K": [0, 0], "b": 0, "pursuers": [[0, 0, 1]]}, "K"),
    ({"K": [0, 0, 1], "b": "0", "pursuers": [[0, 0, 1]]}, "b"),
    ({"K": [0, 0, 1], "b": 0, "pursuers": [[0, 0, 1], [0, True, 1]]}, "pursuers[1][1]"),
    ({"K": [0, 0, 1], "b": 0}, "pursuers"),
    ({"K": [0, 0, 1], "b": 0, "pursuers": []}, "pursuers"),
])
def test_parse_errors_name_the_field(data, path):
    with pytest.raises(ParseError) as info:
        parse_config(data)
    assert info.value.path == path


def test_invalid_json(tmp_path):
    with pytest.raises(ParseError):
        load_config(write(tmp_path, "{not json"))


def test_duplicate_players():
    with pytest.raises(DuplicatePlayers):
        parse_config({"K": [0, 0, 1], "b": 0, "pursuers": [[0, 0, 1], [0, 0, 1]]})
