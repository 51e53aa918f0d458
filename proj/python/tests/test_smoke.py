import math

import pytest

import hypercover as hc


def two_clusters():
    coords, labels = [], []
    for i in range(5):
        for j in range(5):
            coords.append([0.05 * i, 0.05 * j])
            labels.append(0)
            coords.append([0.7 + 0.05 * i, 0.7 + 0.05 * j])
            labels.append(1)
    return coords, labels


@pytest.fixture(scope="module")
def cover():
    coords, labels = two_clusters()
    cfg = hc.CoverConfig()
    cfg.min_length = hc.min_interclass_distance(coords, labels) / 2.0
    cfg.rng_seed = 3
    return hc.build_cover(coords, labels, cfg)


def test_cover_recalls_training_points(cover):
    coords, labels = two_clusters()
    assert cover.n_dims == 2
    assert cover.n_classes == 2
    assert [cover.classify(c) for c in coords] == labels
    assert cover.count(hc.CubeStatus.Violating) == 0
    assert cover.classify([50.0, 50.0]) is None


def test_network_matches_cover(cover):
    net = hc.compile(cover)
    assert len(net.layer_shapes) == 4
    box = hc.BoxEvaluator(cover)
    coords, labels = two_clusters()
    for c, want in zip(coords, labels):
        scores, pred = net.forward(c)
        assert pred == want
        assert math.isclose(sum(scores), 1.0, abs_tol=1e-12)
        assert box.forward(c)[1] == pred


def test_json_round_trip(cover):
    text = cover.to_json()
    again = hc.import_cover(text)
    assert again.to_json() == text
    net_text = hc.compile(cover).to_json()
    assert hc.import_network(net_text).to_json() == net_text


def test_helpers():
    assert hc.pair_homogeneity(4, 0) == 1.0
    assert hc.pair_homogeneity(3, 3) == 0.0
    rows = [[float(i), 2.0 * i, 5.0] for i in range(10)]
    proj = hc.pca(rows, 1)
    assert len(proj) == 10
    assert all(len(r) == 1 for r in proj)
