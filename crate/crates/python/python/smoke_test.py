"""Build the extension with cargo, import it, and exercise the main calls.

Usage: python3 crates/python/python/smoke_test.py [--no-build]
"""

import os
import shutil
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.abspath(os.path.join(HERE, "..", "..", ".."))


def load():
    if "--no-build" not in sys.argv:
        subprocess.run(
            ["cargo", "build", "--release", "-p", "regext-py"], cwd=ROOT, check=True
        )
    built = os.path.join(ROOT, "target", "release", "libregext.so")
    dest = tempfile.mkdtemp(prefix="regext-smoke-")
    shutil.copy(built, os.path.join(dest, "regext.so"))
    sys.path.insert(0, dest)
    import regext

    return regext


def main():
    rx = load()

    c6 = rx.Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert c6.regularity() == 2
    assert rx.Graph.from_graph6(c6.to_graph6()) == c6

    bigger, matching = rx.extend_once(c6, "dirac")
    assert bigger.regularity() == 3 and len(matching) == 3

    k33 = rx.Graph.from_graph6("EFz_")
    rules = {v["rule"]: v for v in rx.classify(k33)}
    assert rules["T4"]["applies"] and rules["T4"]["conclusion"] == "not-extendable"
    try:
        rx.extend_once(k33)
        raise AssertionError("K_3,3 must not extend")
    except ValueError as e:
        assert "2 odd components" in str(e)

    pm = rx.perfect_matching(rx.Graph.from_graph6("IheA@GUAo"))
    assert len(pm["matching"]) == 5
    star = rx.perfect_matching(rx.Graph(4, [(0, 1), (0, 2), (0, 3)]))
    assert star["violator"] == {"s": [0], "odd_count": 3}

    final, steps = rx.extend_to(rx.Graph.from_graph6("G~`HW{"), 7)
    assert len(steps) == 3 and final.regularity() == 7

    assert rx.balloons(rx.Graph.from_graph6("Ir]?GGB?w"))["b"] == 2
    assert len(rx.enumerate_regular(6, 3)) == 2
    g = rx.random_regular(20, 3, seed=5)
    assert g.regularity() == 3 and g == rx.random_regular(20, 3, seed=5)
    h = rx.random_regular(10, 3, seed=5)
    assert rx.canonical_form(h) == rx.canonical_form(rx.Graph.from_graph6(h.to_graph6()))

    report = rx.verify("L", (18, 30), r_range=(17, 17), samples=5)
    assert report["confirmed"] == 35 and report["counterexamples"] == []
    print("smoke test passed")


if __name__ == "__main__":
    main()
