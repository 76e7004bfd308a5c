"""Smoke test for the irregularity_lab extension module.

Build first with `pip install --no-build-isolation -e crates/py`.
"""

import irregularity_lab as il


def main():
    p5 = il.Graph.from_graph6("DhC")
    assert (p5.n, p5.m) == (5, 4)
    assert il.general_albertson_pow(p5, 2) == 2
    assert abs(il.general_albertson(p5, 2) - 2 ** 0.5) < 1e-12
    assert il.sigma(p5) == il.forgotten(p5) - 2 * il.zagreb_second(p5)

    star = il.Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert il.albertson(star) == 6
    assert star.join_apex().n == 5

    assert il.general_albertson_pow(il.Graph.family("bethe:k=3,d=2"), 1) == 10
    assert il.bethe_closed_form([2, 3], 1) == 10
    assert il.kragujevac_closed_form([2, 2], 1) == 10

    assert [len(il.free_trees(n)) for n in range(4, 9)] == [2, 3, 6, 11, 23]
    assert len(il.connected_graphs(5)) == 21

    report = il.check("thm-3.7", star, p=2)
    assert report["status"] == "holds-equality", report
    printed = il.check("cor-3.3-printed", il.Graph.from_graph6("Bg"))
    assert printed["status"] == "violated", printed
    assert il.check("cor-5.1", "bethe:k=3,d=2", p=1)["status"] == "holds-equality"

    scan = il.extremal_scan(10, 1.0)
    assert scan["max_value"] == 72 and scan["min_only_path"] and scan["max_only_star"]
    assert any(c == "thm-4.2" for c, _ in il.claims())
    assert il.findings()

    try:
        il.Graph(2, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self-loop accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
