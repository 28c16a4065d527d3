import sys
from pathlib import Path

import numpy as np
import pytest

# make tests/helpers.py importable without packaging the test tree
sys.path.insert(0, str(Path(__file__).parent))


def _tiny_book():
    """A small deterministic model book for CLI/server tests: one straight
    gray model, one gently curved hue model, one elastic twin."""
    from rampforge.modelbook import ModelBook, RampModel

    gray_shape = np.column_stack([np.linspace(10, 90, 9), np.zeros(9), np.zeros(9)])
    gray = RampModel(id="kmeans-0", method="kmeans", shape=gray_shape,
                     l_profile=np.linspace(10, 90, 9), cluster_size=3,
                     member_ids=("g0", "g1", "g2"))

    t = np.linspace(0, 1, 9)
    ab = np.column_stack([14 * np.sin(np.pi * t), 12 * np.cos(np.pi * t)])
    ab -= ab.mean(axis=0)
    curved_shape = np.column_stack([np.linspace(20, 85, 9), ab])
    curved = RampModel(id="kmeans-1", method="kmeans", shape=curved_shape,
                       l_profile=np.linspace(20, 85, 9), cluster_size=2,
                       member_ids=("c0", "c1"))

    elastic = RampModel(id="elastic-0", method="elastic", shape=curved_shape * 0.9,
                        l_profile=np.linspace(20, 85, 9) * 0.9, cluster_size=2,
                        member_ids=("e0", "e1"))
    return ModelBook(version=1, corpus_fingerprint="f" * 64,
                     models=(gray, curved, elastic),
                     diverging_angle_degrees=115.0,
                     diverging_rotation_limit_degrees=60.0)


@pytest.fixture(scope="session")
def tiny_book():
    return _tiny_book()


@pytest.fixture(scope="session")
def tiny_book_path(tmp_path_factory, tiny_book):
    from rampforge.modelbook import save_modelbook

    path = tmp_path_factory.mktemp("book") / "models.json"
    save_modelbook(tiny_book, path)
    return path
