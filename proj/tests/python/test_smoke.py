import math
import os
import subprocess

import networkx as nx
import numpy as np
import pytest

import fepr


def fan(triangles, length=1.0):
    edges = [(0, k, length) for k in range(1, triangles + 2)]
    edges += [(k, k + 1, length) for k in range(1, triangles + 1)]
    return fepr.Instance(triangles + 2, edges)


def test_instance_round_trip():
    g = fan(3)
    assert g.n == 5
    assert len(g.edges) == 2 * g.n - 3
    again = fepr.Instance.from_text(g.to_text())
    assert again.raw_edges() == g.raw_edges()
    # Every 2-tree is series-parallel, so networkx sees a planar graph.
    assert nx.check_planarity(nx.Graph([(u, v) for u, v in g.edges]))[0]


def test_invalid_instances():
    with pytest.raises(ValueError):
        fepr.Instance(4, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    with pytest.raises(ValueError):
        fepr.Instance(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)])
    with pytest.raises(fepr.ParseError):
        fepr.Instance.from_text("fepr 1\nn 3\ne 0 1\n")


def test_uniform_fan():
    assert fepr.realize_uniform(fan(4)) is not None
    assert fepr.realize_uniform(fan(7)) is None
    assert fepr.brute_force(fan(7)) is None


def test_realize_and_check():
    g = fan(4)
    out = fepr.realize(g)
    assert out["status"] == "realizable"
    r = out["drawing"]
    assert r.shape == (g.n, 2)
    assert fepr.check_planar(g, r)
    for (u, v), length in zip(g.edges, g.lengths):
        assert math.isclose(np.linalg.norm(r[u] - r[v]), length, rel_tol=1e-9)
    emb = fepr.embedding_from_drawing(g, r)
    assert fepr.check_embedding(g, emb, r)
    mirrored = r * np.array([-1.0, 1.0])
    res = fepr.check_embedding(g, emb, mirrored)
    assert not res and res.reason
    fixed = fepr.realize_fixed_embedding(g, emb)
    assert fepr.check_embedding(g, emb, fixed)
    assert fepr.render_svg(g, r).startswith("<svg")


def test_solvers_agree_on_a_strip():
    edges = [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]
    for v in range(3, 8):
        edges += [(v - 2, v, 1.0), (v - 1, v, 1.0)]
    g = fepr.Instance(8, edges)
    verdicts = [
        fepr.realize_outerpath(g),
        fepr.realize_outerpillar(g),
        fepr.realize_spq(g),
        fepr.realize_two_lengths(g),
        fepr.brute_force(g),
    ]
    assert all(v is not None for v in verdicts)
    assert all(fepr.check_planar(g, v) for v in verdicts)


def test_bad_mode():
    with pytest.raises(ValueError):
        fepr.realize(fan(2), mode="nope")


def test_reduction():
    angles = fepr.reduction_angles()
    assert abs(angles["bcd"] - 71.91) < 0.02
    assert abs(angles["lambda"] - 11.48) < 0.02
    f = fepr.Formula(3, [[1, 2, 3], [-1, -2]])
    sol = f.satisfying_assignment()
    assert sol is not None
    h = fepr.reduce(f)
    g = h.instance
    assert sorted(set(round(x, 6) for x in g.lengths)) == [0.2, 0.9, 1.0, 1.61]
    drawing = h.witness(sol)
    assert fepr.check_planar(g, drawing)
    assert "provenance" in h.provenance()
    with pytest.raises(ValueError):
        fepr.Formula.from_dimacs("1 2 0\n")


@pytest.mark.skipif("FEPR_CLI" not in os.environ, reason="command-line binary not provided")
def test_cli_check(tmp_path):
    g = fan(3)
    r = fepr.realize_uniform(g)
    inst = tmp_path / "fan.txt"
    inst.write_text(g.to_text())
    real = tmp_path / "fan.real"
    real.write_text("".join(f"v {i} {float(x)!r} {float(y)!r}\n" for i, (x, y) in enumerate(r)))
    done = subprocess.run([os.environ["FEPR_CLI"], "check", str(inst), str(real)], capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
