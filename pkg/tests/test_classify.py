import copy
import json

import numpy as np
import pytest

from cayley_census import classify as cl
from cayley_census.autiso import automorphism_group
from cayley_census.graphs import cayley_graph, complete_graph
from cayley_census.group import PermutationGroup
from cayley_census.perm import Permutation
from cayley_census.subgroups import find_subgroup_classes

from conftest import alternating, symmetric


# --- feasible elements: restricted search vs full scan --------------------------

def _small_cases():
    S5, S6, A6 = symmetric(5), symmetric(6), alternating(6)
    yield "S5/S4", S5, S5.point_stabilizer(4)
    yield "A5/A4", alternating(5), alternating(5).point_stabilizer(4)
    for name, G in (("S6", S6), ("A6", A6)):
        for kind in ("S4", "A4"):
            classes, _ = find_subgroup_classes(G, kind)
            for i, c in enumerate(classes):
                yield f"{name}/{kind}#{i}", G, c.group


SMALL = list(_small_cases())


@pytest.mark.parametrize("name,A,K", SMALL, ids=[s[0] for s in SMALL])
def test_feasible_matches_bruteforce_small(name, A, K):
    fast = cl.feasible_elements(A, K)
    slow = cl.feasible_elements_bruteforce(A, K)
    assert np.array_equal(fast.elements, slow)


def test_s5_feasible_count():
    S5 = symmetric(5)
    assert len(cl.feasible_elements(S5, S5.point_stabilizer(4))) == 16


@pytest.mark.parametrize("kind", ["S4", "A4"])
def test_feasible_matches_bruteforce_m11(kind):
    M11 = cl.resolve_group("M11.deg11")
    classes, _ = find_subgroup_classes(M11, kind)
    assert classes
    for c in classes:
        assert np.array_equal(cl.feasible_elements(M11, c.group).elements,
                              cl.feasible_elements_bruteforce(M11, c.group))


def test_feasible_requires_k_of_order_12_or_24():
    S5 = symmetric(5)
    with pytest.raises(ValueError):
        cl.feasible_elements(S5, PermutationGroup([Permutation.from_cycles(5, (1, 2, 3))]))


# --- complements and orbits ---------------------------------------------------------

def test_main_complement_class(main_case):
    comp = main_case.report["complements"]
    assert len(comp) == 1
    assert comp[0]["normalizer_order"] == 24
    assert comp[0]["feasible"]["count"] == 16
    K = main_case.K
    A = cl.resolve_group("M12.2.deg24")
    G = cl.resolve_group("M11.deg24")
    assert cl.regular_on_cosets(A, G, K)
    inside = [k for k in K.elements() if G.contains(k)]
    assert len(inside) == 1


def test_delta_orbits_partition(main_case):
    sizes = [len(o) for o in main_case.orbits]
    assert sizes == [12, 4]
    rows = np.concatenate([o.elements for o in main_case.orbits])
    assert len({r.tobytes() for r in rows}) == 16
    K = main_case.K
    for o in main_case.orbits:
        g = o.elements[0]
        conj = {cl._conjugate_rows(g[None, :], k.array.astype(np.int64))[0].tobytes() for k in K.elements()}
        assert conj == {r.tobytes() for r in o.elements}


def test_delta_orbits_reject_unclosed_set(main_case):
    rows = main_case.orbits[0].elements[:3]
    with pytest.raises(cl.ClassificationError):
        cl.delta_orbits(main_case.K, rows)


# --- Cayley structure on small graphs ---------------------------------------------

def _right_regular(cay):
    """Right multiplication by each generator of the group, as vertex permutations."""
    E = cay.elements
    lookup = {r.tobytes(): i for i, r in enumerate(E)}
    def act(h):
        return np.array([lookup[r[h.array].tobytes()] for r in E])
    return act


def test_connection_set_and_normality_on_k4():
    c = Permutation.from_cycles(4, (1, 2, 3, 4))
    Z4 = PermutationGroup([c])
    S = [c, c * c, c.inverse()]
    cay = cayley_graph(Z4, S)
    assert cay.graph == complete_graph(4)
    act = _right_regular(cay)
    R = PermutationGroup([Permutation(act(c))], degree=4)
    conn = cl.extract_connection_set(cay.graph, R)
    assert len(conn) == 3 and {s.inverse().key() for s in conn} == {s.key() for s in conn}
    aut = automorphism_group(cay.graph).group
    res = cl.normality_check(aut, R)
    assert not res.normal
    a, r = res.witness
    assert not R.contains(r ** a)


def test_cycle_is_normal_cayley_graph():
    c = Permutation.from_cycles(7, (1, 2, 3, 4, 5, 6, 7))
    cay = cayley_graph(PermutationGroup([c]), [c, c.inverse()])
    R = PermutationGroup([Permutation(_right_regular(cay)(c))], degree=7)
    assert cl.normality_check(automorphism_group(cay.graph).group, R).normal


def test_regular_check_rejects_non_regular():
    S3 = symmetric(3)
    with pytest.raises(ValueError):
        cl.extract_connection_set(complete_graph(3), S3)


# --- cases ---------------------------------------------------------------------------

def test_case_list_is_valid():
    assert len(cl.CASE_IDS) == len(set(cl.CASE_IDS)) == 9
    for c in cl.CASES:
        c.validate()
    with pytest.raises(KeyError):
        cl.get_case("M13/M12/S4")


def test_obstruction_on_m11_degree_12():
    obs = cl.regular_complement_obstruction(cl.resolve_group("M11.deg12"))
    assert obs["class_count"] == 1 and not obs["regular_exists"]
    assert [c["orbits"] for c in obs["classes"]] == [4]
    assert obs["classes"][0]["burnside"] == 4


def test_double_coset_and_centralizer_witness(main_case):
    delta = np.concatenate([o.elements for o in main_case.orbits])
    assert cl.double_coset_count(main_case.K, delta) == 1
    w = cl.centralizer_witness(main_case.K, main_case.orbits[0].representative)
    assert w is not None and w["commutes_with_action"] and w["outside_action_image"]


# --- the full report -----------------------------------------------------------------

def test_report_is_deterministic(report):
    again = cl.run_all(threads=2)
    assert cl.dumps_report(again) == cl.dumps_report(report)


def test_report_schema(report):
    assert report["schema"] == 1
    assert list(report) == ["schema", "catalog", "cases", "cross_checks", "claims", "summary"]
    text = cl.dumps_report(report)
    assert json.loads(text) == json.loads(json.dumps(report))
    for claim in report["claims"]:
        assert set(claim) >= {"id", "label", "expected", "observed", "reproduced"}


def test_check_report_accepts_real_report(report):
    assert cl.check_report(report) == []


def _tampered(report, edit):
    r = copy.deepcopy(report)
    edit(r)
    return cl.check_report(r)


def _main(r):
    return next(c for c in r["cases"] if c["case"]["id"] == "M12:2/M11/S4")


def test_check_report_catches_bad_feasible_element(report):
    def edit(r):
        el = _main(r)["complements"][0]["feasible"]["elements"]
        el[0] = list(range(1, 25))
    assert any("infeasible element" in p for p in _tampered(report, edit))


def test_check_report_catches_bad_aut_order(report):
    def edit(r):
        _main(r)["complements"][0]["graphs"][0]["aut_order"] = 190080
    assert any("automorphism group order" in p for p in _tampered(report, edit))


def test_check_report_catches_bad_edge_hash(report):
    def edit(r):
        _main(r)["complements"][0]["graphs"][1]["edge_list_sha256"] = "0" * 64
    assert any("edge list hash" in p for p in _tampered(report, edit))


def test_check_report_catches_claim_edit(report):
    def edit(r):
        c = next(c for c in r["claims"] if c["id"] == "delta-size")
        c["observed"] = 17
    assert "claim table does not follow from the report" in _tampered(report, edit)


def test_check_report_catches_bad_obstruction(report):
    def edit(r):
        case = next(c for c in r["cases"] if c["case"]["mode"] == "regular-obstruction")
        case["obstruction"]["classes"][0]["orbits"] = 1
    assert any("obstruction orbit count" in p for p in _tampered(report, edit))
