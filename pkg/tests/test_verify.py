import random

import numpy as np
import pytest

from qmax.enumeration import canonicalize, random_triangulation
from qmax.families import Family, FamilySpec, d1, d2, fan, family_members, near_fan, star
from qmax.graph import CycleGraph, GraphError, neighbor_degree_sum
from qmax.spectral import qindex
from qmax import verify as V


def test_degree_sum_bound_examples():
    assert neighbor_degree_sum(fan(6), 0) == 13 <= 6 + 3 * 5 - 4
    assert V.check_degree_sum_bound(fan(6)).ok
    g = near_fan(8, 4)
    assert neighbor_degree_sum(g, 4) <= 26
    assert V.check_degree_sum_bound(g).ok
    with pytest.raises(GraphError):
        V.check_degree_sum_bound(CycleGraph(6))


def test_merris_bound_examples():
    assert V.merris_bound(fan(6)) == pytest.approx(7.6)
    assert V.check_merris_bound(fan(6)).ok
    assert V.merris_bound(CycleGraph(7)) == pytest.approx(4.0)
    with pytest.raises(GraphError):
        V.merris_bound(CycleGraph(1))


def test_star_lower_bound():
    r = V.check_star_lower_bound(star(7))
    assert r.ok and "star" in r.notes[0]
    assert qindex(fan(9)).q == pytest.approx(9.6007, abs=1e-3)
    assert V.check_star_lower_bound(fan(9)).ok


def test_small_delta_bound():
    assert V.small_delta_f(6, 2) == V.small_delta_f(6, 2) == 6
    for n in (6, 8, 10):
        r = V.check_small_delta_bound(n)
        assert r.ok, r.witnesses
    assert V.check_small_delta_bound(8).scope["classes"] >= 1


def test_lemma_sweep_n10():
    r = V.check_lemmas(10)
    assert r.ok and not r.witnesses


def test_failure_is_reported():
    r = V.VerificationReport("x", {})
    r.add(fan(5), V.ANOMALY, a=1)
    assert r.verdict == V.ANOMALY
    r.add(fan(5), V.FAIL, a=2)
    assert r.verdict == V.FAIL and len(r.witnesses) == 2
    m1 = V.merge_reports("m", [r, V.VerificationReport("y", {})])
    m2 = V.merge_reports("m", [V.VerificationReport("y", {}), r])
    assert m1.verdict == m2.verdict == V.FAIL
    assert m1.witnesses == m2.witnesses


def test_rotation_ones_vector():
    g = near_fan(9, 4)
    spec = V.RotationSpec((1, 8), (4, 0))
    assert V.rayleigh_delta(g, spec, np.ones(9)) == 0.0
    assert V.rotate(g, spec).m == g.m


def test_rotation_positive_for_near_fan10():
    for k in range(2, 9):
        g = near_fan(10, k)
        x = qindex(g).x
        assert V.rayleigh_delta(g, V.RotationSpec((1, 9), (k, 0)), x) > 0


def test_near_fan6_rotates_to_fan():
    f = V.rotate(near_fan(6, 3), V.RotationSpec((1, 5), (3, 0)))
    assert canonicalize(f) == canonicalize(fan(6))


def test_rotation_errors():
    with pytest.raises(GraphError):
        V.rotate(fan(6), V.RotationSpec((1, 3), (2, 4)))
    with pytest.raises(GraphError):
        V.rotate(fan(6), V.RotationSpec((0, 3), (0, 2)))


def test_rayleigh_delta_routes_agree():
    rng = random.Random(9)
    nrng = np.random.default_rng(9)
    for _ in range(200):
        n = rng.randint(4, 14)
        g = random_triangulation(n, rng)
        rem = rng.choice(sorted(g.edges))
        non = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in g.edges]
        spec = V.RotationSpec(rem, rng.choice(non))
        V.rayleigh_delta(g, spec, nrng.normal(size=n))  # raises on mismatch
        assert V.rotate(g, spec).m == g.m


@pytest.mark.parametrize("spec", [
    FamilySpec(Family.NEARFAN, 12, 5),
    FamilySpec(Family.D1, 13, 6),
    FamilySpec(Family.D2, 14, 7),
    FamilySpec(Family.D3, 11, 7, 2),
])
def test_perron_inequality_examples(spec):
    r = V.check_perron_inequalities(spec)
    assert r.ok, r.witnesses
    assert r.scope["rayleigh_delta"] > 0
    if spec.family is Family.D3:
        assert any("analogy" in s for s in r.notes)


def test_perron_unsupported_family():
    with pytest.raises(GraphError):
        V.check_perron_inequalities(FamilySpec(Family.FAN, 8))


def test_perron_d3_sweep():
    r = V.check_perron_family(Family.D3, 24)
    assert r.ok


def test_theorem_small():
    r5 = V.check_theorem(5)
    assert r5.ok and r5.scope["classes"] == 1
    r6 = V.check_theorem(6)
    assert r6.ok
    assert r6.scope["winner_q"] == pytest.approx(6.9576, abs=1e-3)
    assert r6.scope["runner_up_q"] == pytest.approx(6.8284, abs=1e-3)
    r12 = V.check_theorem(12)
    assert r12.scope["winner_is_fan"]
    assert r12.scope["winner_q"] == pytest.approx(12.4233, abs=1e-3)


def test_family_coverage():
    r = V.check_family_coverage(12)
    assert r.ok, r.witnesses


def test_match_values_is_one_to_one():
    pairs = V.match_values([9.7983, 9.7989, 9.7977], [9.79775, 9.79835, 9.79885])
    assert len(pairs) == 3
    assert len({j for _, j in pairs}) == 3
    assert V.match_values([1.0], [1.01]) == []


def test_table_rows():
    rows = V.table_rows()
    by_label = {r.label: r for r in rows if r.label}
    assert by_label["G1"].matched and by_label["G26"].matched
    n11 = sorted(r.q_paper for r in rows if r.table == 2 and r.n == 11 and r.matched)
    assert n11 == sorted([9.7596, 9.7933, 9.7983, 9.7989, 9.7977, 9.7887, 9.7274])
    assert not by_label["G39"].matched and "lower bound" in by_label["G39"].note
    t1n8 = [r for r in rows if r.table == 1 and r.n == 8]
    assert all(r.matched for r in t1n8) and len(t1n8) == 3


def test_reproduce_tables_report():
    r = V.reproduce_tables()
    assert r.verdict == V.ANOMALY
    assert not any(w["kind"] == V.FAIL for w in r.witnesses)
    labels = {w["values"].get("label") for w in r.witnesses}
    assert "G39" in labels
    # the second Delta = 4 class at n = 6 is reported, and stays below the fan
    extra6 = [w for w in r.witnesses if w["values"]["n"] == 6]
    assert len(extra6) == 1 and extra6[0]["values"]["q_computed"] < 6.9576
