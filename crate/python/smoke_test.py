"""Smoke test for the steinerpow_py extension.

Install first:  pip install --no-build-isolation -e crates/steinerpow-py
"""

import sys

import steinerpow_py as sp


def main() -> int:
    # triangle accepted, C4 and the 3-sun rejected with the right reason
    assert sp.recognize_4_steiner(sp.Graph.complete(3)).accepted
    assert sp.recognize_4_steiner(sp.Graph.cycle(4)).reason == "not-chordal"
    sun = sp.Graph(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])
    assert sp.recognize_4_steiner(sun).reason == "not-strongly-chordal"

    for seed in range(20):
        g, planted = sp.random_yes_instance(4, 12, 6, seed)
        assert planted.verify(g, 4)
        r = sp.recognize_4_steiner(g)
        assert r, (seed, r)
        assert r.tree.verify(g, 4)
        assert sp.witness_invariants(r.tree, g) is None
        text = r.tree.to_text()
        assert sp.SteinerTree.parse(text).to_text() == text

    g, _ = sp.random_leaf_instance(6, 10, 4, 7)
    r = sp.recognize_6_leaf(g)
    assert r.tree.verify(g, 6, leaf=True)

    status, tree = sp.oracle(sp.Graph.path(3), 4)
    assert status == "found" and tree.verify(sp.Graph.path(3), 4)

    try:
        sp.Graph.parse("3 1\n0 9\n")
    except ValueError as e:
        assert "line 2" in str(e), e
    else:
        raise AssertionError("parse error not raised")

    rows = sp.sweep(small=True, only=[2, 4, 7])
    for cid, name, ok, detail in rows:
        print(f"[{'PASS' if ok else 'FAIL'}] {cid} {name}: {detail}")
    if not all(ok for _, _, ok, _ in rows):
        return 1
    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
