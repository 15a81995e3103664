"""The eleven acceptance criteria, one test each, plus regression locks.

Every criterion test records a PASS/FAIL line (printed in the terminal
summary) before asserting.  Criteria 5 and 7 are not reproduced by the
computation; their exact assertions are kept and marked strict xfail, and
separate tests pin down what the computation actually shows.
"""

import time

import numpy as np
import pytest

from cayley_census import autiso, classify as cl, groupdata
from cayley_census.arctrans import arc_orbit_count, arc_orbit_count_bruteforce
from cayley_census.graphs import GroupAction, coset_graph, coset_graph_bruteforce
from cayley_census.group import PermutationGroup

from conftest import ACCEPTANCE, random_graph, relabel
from test_graphs import _coset_instances
from test_permgroup import _random_small_groups

CATALOG_ORDERS = {"M11.deg11": 7920, "M12.deg12": 95040, "M12.2.deg24": 190080,
                  "M24.deg24": 244823040, "A12.deg12": 239500800, "S12.deg12": 479001600}


def record(n: int, title: str, checks: dict[str, bool], detail: str = "") -> None:
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    line = f"[{n:2d}] {'PASS' if ok else 'FAIL'}  {title}"
    if failed:
        line += f"  (failed: {', '.join(failed)})"
    if detail:
        line += f"  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def _case(report, cid):
    return next(c for c in report["cases"] if c["case"]["id"] == cid)


def _graphs(report):
    return _case(report, "M12:2/M11/S4")["complements"][0]["graphs"]


# --- 1 -----------------------------------------------------------------------------

def test_criterion_01_catalog():
    groupdata.clear_cache()
    t = time.perf_counter()
    orders = groupdata.validate_catalog()
    dt = time.perf_counter() - t
    checks = {f"{k} = {v}": orders[k] == v for k, v in CATALOG_ORDERS.items()}
    checks["under 5 s"] = dt < 5
    record(1, "catalog orders", checks, f"{dt:.2f} s")


# --- 2, 3, 4 ---------------------------------------------------------------------------

def test_criterion_02_unique_complement_class():
    A = cl.resolve_group("M12.2.deg24")
    G = cl.resolve_group("M11.deg24")
    t = time.perf_counter()
    comp = cl.complement_classes(A, G, "S4")
    dt = time.perf_counter() - t
    record(2, "one S4 class in M12:2 meeting M11 trivially",
           {"one class": len(comp.complements) == 1, "under 2 min": dt < 120},
           f"{len(comp.all_classes)} S4 classes, {len(comp.complements)} regular on M11 cosets, {dt:.1f} s")


def test_criterion_03_delta_size(report):
    comp = _case(report, "M12:2/M11/S4")["complements"][0]
    record(3, "|Delta| = 16", {"16 elements": comp["feasible"]["count"] == 16})


def test_criterion_04_self_normalizing_and_orbits(report):
    comp = _case(report, "M12:2/M11/S4")["complements"][0]
    sizes = [o["size"] for o in comp["delta_orbits"]]
    record(4, "N_A(K) = K and orbits 12 + 4",
           {"|N_A(K)| = 24": comp["normalizer_order"] == 24, "orbit sizes [12, 4]": sizes == [12, 4]},
           f"orbits {sizes}")


# --- 5 ------------------------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason=(
    "the full automorphism group has order 570240 = 3 * 190080 with vertex stabilizer of order 72 "
    "and is 3-arc-transitive; an explicit extra automorphism commuting with M12 is exhibited"))
def test_criterion_05_graph_certificates(report, report_seconds):
    checks = {}
    for gr in _graphs(report):
        lab = gr["label"]
        checks[f"{lab} 7920 vertices"] = gr["vertices"] == 7920
        checks[f"{lab} valency 4"] = gr["valency"] == 4
        checks[f"{lab} connected"] = gr["connected"]
        checks[f"{lab} (M12:2,2)-arc-transitive"] = gr["ambient_s_transitivity"] == 2
        checks[f"{lab} M12:2 has >1 orbit on 3-arcs"] = gr["ambient_arc_orbits"][3] > 1
        checks[f"{lab} |Aut| = 190080"] = gr["aut_order"] == 190080
        checks[f"{lab} Aut contains M12:2"] = gr["aut_contains_ambient_action"]
        checks[f"{lab} stabilizer order 24"] = gr["aut_vertex_stabilizer_order"] == 24
        checks[f"{lab} local action S4"] = (gr["aut_local_action_order"] == 24
                                            and gr["aut_local_action_two_transitive"])
    checks["under 10 min"] = report_seconds < 600
    detail = ", ".join(f"{g['label']}: |Aut| {g['aut_order']}, stabilizer {g['aut_vertex_stabilizer_order']}, "
                       f"Aut arc orbits {g['aut_arc_orbits']}" for g in _graphs(report))
    record(5, "graph certificates", checks, detail)


def test_graph_certificate_parts_that_hold(report):
    for gr in _graphs(report):
        assert (gr["vertices"], gr["edges"], gr["valency"], gr["connected"]) == (7920, 15840, 4, True)
        assert gr["ambient_faithful"]
        assert gr["ambient_s_transitivity"] == 2 and gr["ambient_arc_orbits"][3] > 1
        assert gr["ambient_vertex_stabilizer_order"] == 24 and gr["ambient_local_action_order"] == 24
        assert gr["aut_contains_ambient_action"]
        assert gr["aut_local_action_order"] == 24 and gr["aut_local_action_two_transitive"]


def test_computed_automorphism_group(report):
    """What the computation shows instead of |Aut| = 190080."""
    for gr in _graphs(report):
        assert gr["aut_order"] == 570240 == 3 * 190080
        assert gr["aut_vertex_stabilizer_order"] == 72
        assert gr["aut_arc_orbits"] == [1, 1, 1, 1] and gr["aut_s_transitivity"] == 3
    cw = report["cross_checks"]["centralizer_automorphism"]
    assert cw["order"] == 3 and cw["commutes_with_action"] and cw["outside_action_image"]


def test_extra_automorphism_directly(main_case):
    """Independent of the search: a stored generator outside the M12:2 image is an automorphism."""
    for b in main_case.graphs:
        amb = b.coset.action.as_group()
        outside = [p for p in b.aut.generators if not amb.contains(p)]
        assert outside
        assert all(autiso.is_automorphism(b.coset.graph, p.array) for p in outside)
        assert PermutationGroup(list(amb.generators) + outside[:1], degree=7920).order() == 570240


# --- 6 --------------------------------------------------------------------------------------

def test_criterion_06_cayley_and_non_normal(report):
    checks = {}
    for gr in _graphs(report):
        lab = gr["label"]
        checks[f"{lab} regular M11"] = gr["regular_subgroup_regular"] and gr["regular_subgroup_order"] == 7920
        checks[f"{lab} |S| = 4"] = gr["connection_set_size"] == 4
        checks[f"{lab} S = S^-1"] = gr["connection_set_inverse_closed"]
        checks[f"{lab} <S> = M11"] = gr["connection_set_generated_order"] == 7920
        checks[f"{lab} Cay(M11, S) isomorphic"] = gr["cayley_isomorphism_verified"]
        checks[f"{lab} non-normal with witness"] = gr["normal"] is False and gr["normality_witness"] is not None
    record(6, "Cayley structure and non-normality", checks)


# --- 7 ---------------------------------------------------------------------------------------

@pytest.mark.xfail(strict=True, reason=(
    "all sixteen feasible elements lie in a single K-double coset, so both orbits give the same "
    "edge set; canonical forms and vertex-0 neighborhoods coincide"))
def test_criterion_07_non_isomorphism(report):
    gc = report["cross_checks"]["graph_comparison"]
    record(7, "Gamma(Delta1) and Gamma(Delta2) non-isomorphic",
           {"canonical forms differ": gc["canonical_forms_differ"],
            "vertex-0 neighborhoods differ": gc["neighborhoods_differ"]},
           f"double cosets met by Delta: {gc['double_cosets_met_by_delta']}")


def test_both_orbits_give_the_same_graph(main_case, report):
    """What the computation shows instead of non-isomorphism."""
    g1, g2 = (b.coset.graph for b in main_case.graphs)
    assert g1 == g2
    gc = report["cross_checks"]["graph_comparison"]
    assert gc["identical_edge_sets"] and gc["double_cosets_met_by_delta"] == 1
    h = gc["canonical_hashes"]
    assert h[0] == h[1]
    # a brute-force membership check of the double coset, independent of the pipeline
    K = main_case.K
    Kel = [k for k in K.elements()]
    g = main_case.orbits[0].representative
    dc = {(a * g * b).key() for a in Kel for b in Kel}
    assert all(r.astype(np.intp).tobytes() in dc for o in main_case.orbits for r in o.elements)


# --- 8 ----------------------------------------------------------------------------------------

def test_criterion_08_a4_case(report, report_seconds):
    case = _case(report, "M12/M11/A4")
    comp = case["complements"]
    emb = report["cross_checks"]["delta_embedding"]
    sig = report["cross_checks"]["sigma"]
    record(8, "M12 with A4 and the sigma isomorphism", {
        "one A4 class": len(comp) == 1,
        "|Delta| = 12": comp[0]["feasible"]["count"] == 12,
        "single orbit": [o["size"] for o in comp[0]["delta_orbits"]] == [12],
        "equal to Delta1": emb["equal_to_delta1"] and emb["inside_delta1"] == 12,
        "sigma on 15840 edges": sig["verified"] and sig["edges_checked"] == 15840 and sig["vertices"] == 7920,
        "under 5 min": report_seconds < 300,
    })


# --- 9 ----------------------------------------------------------------------------------------

def test_criterion_09_empty_cases(report, report_seconds):
    checks = {}
    for cid in ("M24/M23/S4", "A12/A11/A4", "S12/A11/S4"):
        c = _case(report, cid)
        checks[f"{cid} empty"] = (c["verdict"] == "empty"
                                  and all(x["feasible"]["count"] == 0 for x in c["complements"]))
    for cid, count in (("quotient/M11/S4", 1), ("quotient/M12/S4", 4), ("quotient/A12/S4", 24)):
        c = _case(report, cid)
        checks[f"{cid} {count} classes"] = c["k_classes"]["count"] == count
        checks[f"{cid} empty"] = (c["verdict"] == "empty"
                                  and all(x["feasible"]["count"] == 0 for x in c["searches"]))
    checks["under 30 min"] = report_seconds < 1800
    record(9, "empty cases", checks, f"full run {report_seconds:.0f} s")


# --- 10 ---------------------------------------------------------------------------------------

def test_criterion_10_psl_obstruction(report):
    obs = _case(report, "M11/PSL2(11)/A4")["obstruction"]
    checks = {"A4 classes found": obs["class_count"] >= 1}
    for i, c in enumerate(obs["classes"]):
        checks[f"class {i} has 4 orbits"] = c["orbits"] == 4
        checks[f"class {i} Burnside = orbits"] = c["burnside"] == c["orbits"]
        checks[f"class {i} fixed points 4 and 3"] = c["fixed_points"]["2"] == [4] and c["fixed_points"]["3"] == [3]
    record(10, "no regular A4 in M11 on 12 points", checks)


# --- 11 ---------------------------------------------------------------------------------------

def test_criterion_11_property_suites(acceptance_graphs):
    checks = {}
    groups = _random_small_groups(200)
    checks["BSGS vs closure, 200 groups"] = all(
        PermutationGroup(gens).order() == len(closure) and max(len(closure), 1) <= 5000
        for gens, closure in groups)

    inst = _coset_instances(50)
    checks["coset_graph vs oracle, 50 instances"] = all(
        G.order() <= 2000 and coset_graph(G, K, g).graph == coset_graph_bruteforce(G, K, g) for G, K, g in inst)

    arc_ok = True
    rng = np.random.default_rng(17)
    for seed in range(10):
        G, K, g = _coset_instances(1, seed=300 + seed, max_vertices=200)[0]
        cg = coset_graph(G, K, g)
        els = [p.array for p in cg.action.as_group().elements()]
        arc_ok &= all(arc_orbit_count(cg.graph, cg.action, s) == arc_orbit_count_bruteforce(cg.graph, els, s)
                      for s in range(4))
        h = random_graph(rng, 10, 0.3)
        gens = [p.array for p in autiso.automorphism_group(h).generators] or [np.arange(10)]
        act = GroupAction(None, gens)
        els = [p.array for p in act.as_group().elements()]
        arc_ok &= all(arc_orbit_count(h, act, s) == arc_orbit_count_bruteforce(h, els, s) for s in range(4))
    checks["arc orbits vs brute force"] = arc_ok

    rng = np.random.default_rng(2025)
    aut_ok = True
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, float(rng.choice([0.2, 0.35, 0.5, 0.7])))
        aut_ok &= autiso.automorphism_group(g).order == autiso.automorphism_count_bruteforce(g)
    checks["Aut vs brute force, 1000 graphs"] = aut_ok

    rng = np.random.default_rng(7)
    inv_ok = True
    for g in acceptance_graphs:
        base = autiso.canonical_form(g).certificate_hash
        for _ in range(200):
            inv_ok &= autiso.canonical_form(relabel(g, rng.permutation(g.n))).certificate_hash == base
    checks["canonical form, 200 relabelings per graph"] = inv_ok
    record(11, "property suites", checks)
