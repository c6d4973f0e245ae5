"""Acceptance gate: one PASS/FAIL line per criterion, collected in the terminal summary."""
import random
import time

from hck.cech import (cech_of_cover, cech_of_map, check_hypercover, dimension, extra_degeneracy,
                      fd_induction_data, is_isomorphism, matching_is_iso, omega_of_cover,
                      to_coskeleton_map)
from hck.finite_space import find_local_section, order_complex
from hck.harness import Scenario, run_scenario
from hck.harness.fixtures import (COVERS, CORE_SPACES, NAMED_COVERS, load_cover,
                                  load_hypercover, load_space)
from hck.harness.randomgen import random_bounded_hypercover, random_complete_cover, random_cover
from hck.harness.scenarios import _fold
from hck.hocolim import (augmented_contraction_check, cofinality_check, diagonal_cell_count,
                         diagonal_homology, diagram_cover_category, hocolim_complex,
                         hocolim_homology, simplicial_replacement, truncation_stable)
from hck.homology import simplicial_chain_complex
from hck.simplicial import coskeleton, matching_sset, matching_via_maps, nerve_of_space

from oracles import as_pairs, order_complex_homology

RESULTS: dict[str, str] = {}

FIXTURE_COVERS = [(s, c) for s in CORE_SPACES for c in COVERS.get(s, {})]
RANDOM_SPACES = ("S1min", "S2min", "wedge")


def record(cid, ok, detail):
    RESULTS[cid] = f"{cid} {'PASS' if ok else 'FAIL'}: {detail}"
    print(RESULTS[cid])
    assert ok, RESULTS[cid]


def base_homology(X, K=2):
    return simplicial_chain_complex(order_complex(X), top=K + 1).homology_range(K)


def test_c01_cech():
    t0 = time.perf_counter()
    failed = []
    runs = 0
    covers = [(f"{s}:{c}", load_cover(s, c)) for s, c in NAMED_COVERS]
    covers += [(f"{s}:random:{seed}", random_cover(load_space(s), random.Random(seed)))
               for s in RANDOM_SPACES for seed in range(25)]
    h2 = None
    for name, cov in covers:
        res = hocolim_homology(cech_of_cover(cov), 2)
        runs += 1
        if not (res.passed and as_pairs(res.homology) == order_complex_homology(cov.base, 2)):
            failed.append(name)
        if name == "S2min:hemispheres":
            h2 = as_pairs(res.homology)[2]
    dt = time.perf_counter() - t0
    record("C1", not failed and h2 == (1, ()) and dt < 60,
           f"{runs - len(failed)}/{runs} covers certified K=2, S2min H2={h2}, {dt:.1f}s (<60s)")


def test_c02_hypercover():
    h = load_hypercover("S1min-refinement")
    h.cap = max(h.cap, 4)
    ws = check_hypercover(h, 4)
    validated = len(ws) == 5 and all(w.ok for w in ws)
    res = hocolim_homology(h, 2)
    X = h.base
    plain = hocolim_homology(cech_of_cover(load_cover("S1min", "UV")), 2, certificate=False)
    same = res.homology == plain.homology
    record("C2", validated and res.passed and same,
           f"validates through L=4: {validated}, certificate: {res.passed}, "
           f"homology {as_pairs(res.homology)} equals Cech: {same}, base {order_complex_homology(X, 2)}")


def test_c03_omega():
    bad = []
    n = 0
    for s in RANDOM_SPACES + ("disc",):
        X = load_space(s)
        for seed in range(10):
            cov = random_complete_cover(X, random.Random(seed))
            h = omega_of_cover(cov, cap=4)
            ws = check_hypercover(h, 4)
            a = len(ws) == 5 and all(w.ok for w in ws)
            res = hocolim_homology(h, 2)
            rep = simplicial_replacement(diagram_cover_category(cov), cap=4)
            b = hocolim_homology(rep, 2, certificate=False).homology == res.homology
            n += 1
            if not (a and b and res.passed):
                bad.append(f"{s}:{seed}(a={a},b={b},c={res.passed})")
    record("C3", not bad, f"{n - len(bad)}/{n} complete covers: validate L=4, certificate K=2, "
                          f"cover-category match" + (f"; failures {bad}" if bad else ""))


def test_c04_ordered_vs_full():
    bad = []
    for s, c in FIXTURE_COVERS:
        r = run_scenario(Scenario("ordered-vs-full", space=s, cover=c, K=2, L=4))
        if r.exit_code != 0:
            bad.append(f"{s}:{c}")
    n = len(FIXTURE_COVERS)
    record("C4", not bad, f"{n - len(bad)}/{n} fixture covers: inclusion certified K=2, "
                          f"retraction identity through level 3" + (f"; failures {bad}" if bad else ""))


def test_c05_diagram_forms():
    bad = []
    checked = 0
    for s, c in FIXTURE_COVERS:
        cov = load_cover(s, c)
        if len(cov.labels) > 3:
            continue
        checked += 1
        for which in ("pa-diagram", "pu-diagram"):
            r = run_scenario(Scenario(which, space=s, cover=c, K=2, L=4))
            if r.exit_code != 0:
                bad.append(f"{s}:{c}:{which}")
    record("C5", not bad, f"{checked} covers with |A|<=3: Cech, PA and PU homology agree in degrees <=2"
                          + (f"; failures {bad}" if bad else ""))


def test_c06_cofinality():
    total = core = 0
    bad = []
    for s, c in FIXTURE_COVERS:
        cov = load_cover(s, c)
        if len(cov.labels) > 4:
            continue
        for rep in cofinality_check(cov):
            total += 1
            core += rep.method == "core"
            if not rep.contractible:
                bad.append(f"{s}:{c}:{sorted(rep.object)}")
    frac = core / total
    record("C6", not bad and frac >= 0.9,
           f"{total} undercategories contractible, {core} via core ({frac:.1%}, need >=90%), "
           f"{total - core} homology-only")


def test_c07_matching_coskeleton():
    notes = []
    spaces = [nerve_of_space(load_space(s)) for s in ("chain2", "S1min")]
    spaces.append(cech_of_cover(load_cover("S1min", "UV")).labels)
    paths = all(set(matching_sset(u, n)) == set(matching_via_maps(u, n))
                for u in spaces for n in range(4))
    notes.append(f"two matching paths agree n<=3: {paths}")
    u = spaces[0]
    idem = True
    for n in (0, 1):
        once = coskeleton(u, n)
        twice = coskeleton(once, n)
        idem &= all(len(once.simplices(k)) == len(twice.simplices(k)) for k in range(4))
    notes.append(f"cosk idempotent: {idem}")
    iso = all(matching_is_iso(cech_of_cover(load_cover(s, c), cap=4), n)
              for s, c in FIXTURE_COVERS for n in range(1, 5))
    notes.append(f"Cech matching isos through level 4: {iso}")
    bounded = [load_hypercover("S1min-refinement")]
    bounded += [random_bounded_hypercover(load_space("S1min"), random.Random(seed)) for seed in (1, 3)]
    cosk = True
    for h in bounded:
        h.cap = max(h.cap, 4)
        cosk &= is_isomorphism(to_coskeleton_map(h, dimension(h, 4)), 4)
    notes.append(f"bounded U = cosk_N U: {cosk}")
    record("C7", paths and idem and iso and cosk, ", ".join(notes))


# seeds whose random bounded hypercover has dimension 1
BOUNDED_SEEDS = (("S1min", 1), ("S1min", 3), ("S1min", 4), ("S2min", 0), ("wedge", 4))


def test_c08_retract():
    got = []
    h = load_hypercover("S1min-refinement")
    h.cap = max(h.cap, 5)
    got.append(("refinement", dimension(h, 4), fd_induction_data(h, 1, up_to=3).retract_ok))
    for s, seed in BOUNDED_SEEDS:
        h = random_bounded_hypercover(load_space(s), random.Random(seed))
        h.cap = max(h.cap, 5)
        dim = dimension(h, 4)
        got.append((f"{s}:{seed}", dim, fd_induction_data(h, dim, up_to=3).retract_ok))
    ok = all(d == 1 and r for _, d, r in got)
    record("C8", ok, "retract identity through level 3 on " +
           ", ".join(f"{n} (dim {d}): {r}" for n, d, r in got))


def test_c09_extra_degeneracy():
    bad = []
    covers = [(s, c) for s, c in FIXTURE_COVERS
              if frozenset(load_space(s).points) in {e.carrier for _, e in load_cover(s, c).entries}]
    for s, c in covers:
        cov = load_cover(s, c)
        ed = extra_degeneracy(cov, 3)
        contraction = augmented_contraction_check(ed, 2)
        same = hocolim_homology(cech_of_cover(cov), 2, certificate=False).homology == base_homology(cov.base)
        if not (ed.identities_ok and contraction and same):
            bad.append(f"{s}:{c}")
    record("C9", not bad, f"{len(covers) - len(bad)}/{len(covers)} covers containing X: identities "
                          f"through 3, contraction, reduced homology equal" + (f"; failures {bad}" if bad else ""))


def test_c10_generalized_covers():
    t0 = time.perf_counter()
    p = _fold(load_space("S1min"))
    split = all(find_local_section(p, b) is not None for b in p.target.points)
    cert = hocolim_homology(cech_of_map(p), 2).passed
    eg = {}
    for g in ("Z2", "Z3"):
        r = run_scenario(Scenario("eg", group=g, K=3, L=5))
        eg[g] = r.exit_code == 0 and [row["betti"] for row in r.data["homology"]["EG"]] == [1, 0, 0, 0] \
            and all(not row["torsion"] for row in r.data["homology"]["EG"])
    dt = time.perf_counter() - t0
    record("C10", split and cert and all(eg.values()) and dt < 120,
           f"fold locally split: {split}, Cech-of-map certificate K=2: {cert}, "
           f"EG reduced homology zero through 3: {eg}, {dt:.1f}s (<120s)")


def test_c11_mccord():
    good = run_scenario(Scenario("mccord"))
    bad = run_scenario(Scenario("mccord", map="point-to-S1min"))
    cert = bad.data["certificates"]["global"]
    witness = sorted(int(k) for k in cert["witnesses"])
    ok = good.exit_code == 0 and bad.exit_code == 3 and 1 in witness
    record("C11", ok, f"circle6 -> S1min exit {good.exit_code}; point -> S1min exit {bad.exit_code}, "
                      f"witness degrees {witness}")


def test_c12_infrastructure():
    stable = all(truncation_stable(cech_of_cover(load_cover(s, c)), 2) for s, c in FIXTURE_COVERS)
    snf = True
    for s, c in FIXTURE_COVERS:
        _, tot = hocolim_complex(cech_of_cover(load_cover(s, c)), 2)
        tot.homology_range(2, certificate=True)
        snf &= tot.verify_certificates()
    ez = []
    for s, c in FIXTURE_COVERS:
        h = cech_of_cover(load_cover(s, c))
        if diagonal_cell_count(h, 3) > 5000:
            continue
        ez.append(diagonal_homology(h, 2) == hocolim_homology(h, 2, certificate=False).homology)
    record("C12", stable and snf and ez and all(ez),
           f"truncation stable K+2 vs K+4: {stable}, SNF certificates verify: {snf}, "
           f"Eilenberg-Zilber agrees on {sum(ez)}/{len(ez)} covers under 5000 diagonal cells")

