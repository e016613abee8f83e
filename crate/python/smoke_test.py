"""Quick end-to-end check of the Python bindings.

Build and install first:
    pip install --no-build-isolation ./crates/python
"""

import netcloak


def main():
    g = netcloak.generate("scale-free", 60, seed=7, m=3)
    assert g.node_count == 60
    assert g.edge_count == 3 + 57 * 3

    star = netcloak.Graph(6, [(0, i) for i in range(1, 6)])
    h, added, removed = netcloak.roam_step(star, 0, 2)
    assert removed == [(0, 1)] and added == [(1, 2)]
    assert h.degree(0) == 4

    v = netcloak.select_source_node(g, seed=7)
    rows = netcloak.roam_run(g, v, 3, 5)
    assert len(rows) == 6 and rows[0][0] == 0

    path = netcloak.Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert abs(netcloak.centrality(path, "closeness")[0] - 2 / 5) < 1e-15
    exact = netcloak.exact_influence(path, 0, "ic", 0.5)
    total, per_node = netcloak.estimate_influence(path, 0, "ic", 0.5, 50_000, seed=1)
    assert abs(total - exact) < 0.03 and per_node[0] == 0.0

    assert netcloak.mu([0, 1, 2, 3], [[0, 1, 4], [2, 3, 5], [6, 7]], 8) == 0.375

    target, trajectory = netcloak.dice_run(g, 4, 2, seed=3)
    assert trajectory[0][2] == 0.0 and trajectory[-1][1] == 100.0

    # One shortcut around the middle of a path takes it off every shortest path.
    value, additions, removals, feasible = netcloak.optimal_disguise(path, 2, 1, "betweenness")
    assert feasible and (additions, removals, value) == ([(1, 3)], [], 0.0)

    _, f, holds, gaps = netcloak.lieutenant(120, 4, 2)
    assert holds and min(gaps) > 0

    try:
        netcloak.Graph(3, [(0, 0)])
    except ValueError as e:
        assert "self-loop" in str(e)
    else:
        raise AssertionError("self-loop accepted")

    for name, passed, detail in netcloak.run_verify(0):
        assert passed, f"{name}: {detail}"

    print("python smoke test passed")


if __name__ == "__main__":
    main()
