"""Smoke test for the vcgap_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/py
then run:
    python3 crates/py/python/smoke_test.py
"""

import json
from fractions import Fraction

import vcgap_py as vg


def main():
    c5 = vg.Graph.family("cycle 5")
    assert (c5.n, c5.m) == (5, 5)
    assert vg.chi_f(c5) == Fraction(5, 2)
    assert vg.integrality_gap(c5) == Fraction(6, 5)

    coloring = vg.fractional_coloring(c5)
    assert coloring["value"] == Fraction(5, 2)
    assert coloring["z"] == [Fraction(1, 2)] * 5
    assert sum(w for _, w in coloring["classes"]) == Fraction(5, 2)

    lp = vg.solve_vc_lp(c5)
    assert lp["objective"] == Fraction(5, 2)
    assert lp["v_half"] == [0, 1, 2, 3, 4]
    cover, cost = vg.min_vc_exact(c5)
    assert cost == 3 and c5.is_vertex_cover(cover)

    heavy = [3, 1, 1, 1, 1]
    assert vg.empirical_ratio(c5, heavy) == 1
    assert vg.solve_vc_lp(c5, [Fraction(1, 2), "1/3", 1, 1, 1])["objective"] > 0
    try:
        vg.solve_vc_lp(c5, [0.5, 1, 1, 1, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("float costs must be rejected")

    grotzsch = vg.Graph.family("mycielski cycle 5")
    assert grotzsch.n == 11 and grotzsch.m == 20
    assert vg.chi_f(grotzsch) == Fraction(29, 10)

    text = vg.worst_case_certificate(vg.Graph.family("complete 4"), seed=1)
    doc = json.loads(text)
    assert doc["rho"] == "3/2"
    passed, checks = vg.verify_certificate(text, oracle=True)
    assert passed, [c for c in checks if not c[1]]

    doc["ip_value"] = "1"
    passed, checks = vg.verify_certificate(json.dumps(doc))
    assert not passed
    print("failing checks on tampered certificate:", [c[0] for c in checks if not c[1]])

    dimacs = c5.mycielskian().to_dimacs()
    assert vg.Graph.from_dimacs(dimacs) == grotzsch
    try:
        vg.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self-loops must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
