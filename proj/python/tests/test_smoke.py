import math
import os
from pathlib import Path

import numpy as np
import pytest

import richclub as rc

DATA = Path(os.environ.get("RICHCLUB_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def karate():
    return rc.Graph.load(str(DATA / "karate.edgelist"))


def triangle():
    return rc.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def test_graph_basics(karate):
    assert karate.node_count == 34
    assert karate.edge_count == 78
    r = rc.rank_nodes(karate)
    assert [karate.labels[i] for i in r.order[:2]] == ["33", "0"]
    assert rc.kplus(triangle(), rc.rank_nodes(triangle())) == [0, 1, 2]


def test_triangle_model():
    m = rc.maxent_model(triangle())
    p = m.probability_matrix()
    assert np.allclose(p + np.eye(3) / 3, 1 / 3)
    assert math.isclose(m.entropy(), 2 * math.log(3), abs_tol=1e-12)
    assert rc.compute_weights([2, 2, 2], [0, 1, 2]) == pytest.approx([1.0, 2.0])


def test_karate_models(karate):
    me1 = rc.maxent_model(karate)
    res = me1.residuals()
    assert max(res["degree"], res["kplus"]) < 1e-9
    me3 = rc.maxent_model(karate, "ME3", seed=2)
    assert me3.entropy() >= me1.entropy()
    assert sum(me3.kplus) == 78
    search = rc.greedy_search(me1.degrees, "ME3", seed=2)
    assert search["kplus"] == me3.kplus
    assert all(b >= a for a, b in zip(search["trace"], search["trace"][1:]))


def test_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n0 x\n")
    with pytest.raises(rc.ParseError):
        rc.Graph.load(str(bad))
    star = rc.Graph.from_edges(11, [(0, i) for i in range(1, 11)])
    with pytest.raises(rc.InfeasibleNG):
        rc.ng_expected_links(star)
    with pytest.raises(rc.InfeasibleConstraints):
        rc.greedy_search([2, 1, 1, 1], "ME3")


def test_diagnostics(karate):
    m = rc.maxent_model(triangle())
    assert rc.knn_ensemble(m)["points"] == pytest.approx([(2.0, 2.0)])
    assert rc.uncorrelated_knn(karate) == pytest.approx(sum(d * d for d in karate.degrees) / 156)
    points = [(k, 10.0 if k < 40 else 5.0) for k in range(1, 81)]
    assert rc.detect_cutoff(points) == 40
    assert rc.detect_cutoff([(k, 3.0) for k in range(1, 30)]) is None


def test_null_baselines(karate):
    rr = rc.rr_randomize(karate, "RR1", seed=4)
    assert len(rr["edges"]) == 78
    deg = [0] * 34
    for u, v in rr["edges"]:
        deg[u] += 1
        deg[v] += 1
    assert deg == karate.degrees
    two = rc.Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    # e_ii = 0, so the total is ((2L)^2 - sum k^2) / (2L)
    assert rc.ng_expected_links(two).sum() == pytest.approx((12**2 - 6 * 4) / 12)


def test_communities_and_consensus(karate):
    part = rc.communities(karate)
    assert part["community_count"] >= 2
    assert len(part["assignment"]) == 34
    a = rc.consensus(karate, runs=10, seed=12345, threads=2)
    b = rc.consensus(karate, runs=10, seed=12345, threads=1)
    assert not a["failures"]
    assert np.array_equal(a["cooccurrence"], b["cooccurrence"])
    assert a["cooccurrence"].max() == 10
    for core in a["cores"]:
        sub = a["cooccurrence"][np.ix_(core, core)]
        assert (sub[~np.eye(len(core), dtype=bool)] == 10).all()
