import numpy as np
import pytest

from sicforge import dim3, jsonio


def test_sic_round_trip(tmp_path):
    c = dim3.family_sic(0.3)
    path = tmp_path / "c.json"
    jsonio.save_sic(c, path)
    back = jsonio.sic_from_json(jsonio.load(path))
    assert np.array_equal(back.vectors, c.vectors)


def test_declared_dim_is_checked():
    with pytest.raises(ValueError):
        jsonio.sic_from_json({"dim": 2, "vectors": [[[1, 0], [0, 0], [0, 0]]]})
    with pytest.raises(ValueError):
        jsonio.sic_from_json({"dim": 3})
    with pytest.raises(ValueError):
        jsonio.vector_from_file_json({"vectors": []})
