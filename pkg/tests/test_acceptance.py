"""Acceptance battery: one test per advertised guarantee.

Every test re-checks a headline claim at its full advertised size and
asserts a wall-clock ceiling, then prints a one-line verdict.  The
Hasse diagrams frozen below were written out by hand, independently of
the implementation; build_d must reproduce them exactly, covers and all.
"""

import time

from nervecheck.battery import functor_battery, lifting_battery
from nervecheck.bits import digits
from nervecheck.horn import admissible_and_superior, superior_closed_form
from nervecheck.nerves import relative_nerve_2
from nervecheck.oriental import build_d, d_via_under_category, standard_interval
from nervecheck.report import INCONCLUSIVE
from nervecheck.simplicial import horn_fill_check
from nervecheck.suites import run_suite

# Hand-drawn Hasse diagrams for D^0 .. D^4 as (lower, upper) cover pairs.
FIGURE_COVERS = {
    0: set(),
    1: {("0", "01")},
    2: {("0", "01"), ("01", "012"), ("012", "02")},
    3: {("0", "01"), ("01", "012"), ("012", "0123"), ("012", "02"),
        ("0123", "013"), ("0123", "023"), ("013", "03"),
        ("02", "023"), ("023", "03")},
    4: {("0", "01"), ("01", "012"), ("012", "0123"), ("012", "02"),
        ("0123", "01234"), ("0123", "013"), ("0123", "023"),
        ("01234", "0124"), ("01234", "0134"), ("01234", "0234"),
        ("0124", "014"), ("0124", "024"),
        ("013", "0134"), ("013", "03"),
        ("0134", "014"), ("0134", "034"), ("014", "04"),
        ("02", "023"), ("023", "0234"), ("023", "03"),
        ("0234", "024"), ("0234", "034"), ("024", "04"),
        ("03", "034"), ("034", "04")},
}

FIGURE_ELEMENTS = {
    0: {"0"},
    1: {"0", "01"},
    2: {"0", "01", "012", "02"},
    3: {"0", "01", "012", "0123", "013", "02", "023", "03"},
    4: {"0", "01", "012", "0123", "01234", "0124", "013", "0134", "014",
        "02", "023", "0234", "024", "03", "034", "04"},
}


def _verdict(label: str, elapsed: float, budget: float) -> None:
    print(f"PASS  {label}  ({elapsed:.2f}s, budget {budget:.0f}s)")


def _run_green(suite: str, budget: float, label: str, params=None):
    t0 = time.perf_counter()
    rep = run_suite(suite, params)
    elapsed = time.perf_counter() - t0
    bad = [c.id for c in rep.checks if c.verdict != "PASS"]
    assert rep.exit_code() == 0, f"{suite}: non-passing checks {bad}"
    assert elapsed < budget
    _verdict(label, elapsed, budget)
    return rep


def test_criterion_01_d_poset_matches_figure():
    budget = 1.0
    t0 = time.perf_counter()
    for n in range(5):
        p = build_d(standard_interval(n)).poset
        elems = {digits(e) for e in p.elements}
        covers = {(digits(p.elements[a]), digits(p.elements[b]))
                  for a, b in p.covers}
        assert elems == FIGURE_ELEMENTS[n]
        assert covers == FIGURE_COVERS[n]
    for n in range(7):
        assert len(build_d(standard_interval(n)).poset) == 2 ** n
    elapsed = time.perf_counter() - t0
    assert elapsed < budget
    _verdict("D-posets match the hand-drawn Hasse diagrams, size 2^n up to n=6",
             elapsed, budget)


def test_criterion_02_under_category_oracle():
    budget = 30.0
    t0 = time.perf_counter()
    for n in range(6):
        ground = standard_interval(n)
        direct = build_d(ground).poset
        oracle = d_via_under_category(ground)
        assert set(oracle.elements) == set(direct.elements)
        for a in direct.elements:
            for b in direct.elements:
                assert oracle.less_eq(a, b) == direct.less_eq(a, b)
    elapsed = time.perf_counter() - t0
    assert elapsed < budget
    _verdict("under-category construction agrees with build_d up to n=5",
             elapsed, budget)


def test_criterion_03_superior_closed_form():
    budget = 1.0
    t0 = time.perf_counter()
    for n in range(2, 8):
        for i in range(1, n):
            fam = admissible_and_superior(n, i)
            assert sorted(fam.superior) == sorted(superior_closed_form(n, i))
    elapsed = time.perf_counter() - t0
    assert elapsed < budget
    _verdict("enumerated superior faces equal the closed form up to n=7",
             elapsed, budget)


def test_criterion_04_theorem_grid_contractible():
    rep = _run_green("theorem-contractible", 300.0,
                     "every mapping-space interval in the inner-horn grid "
                     "is contractible, n=2..4")
    assert rep.counts()[INCONCLUSIVE] == 0
    seen = {c.id.split("/")[0] for c in rep.checks}
    assert seen == {"n2", "n3", "n4"}


def test_criterion_05_lemma_suites():
    budget = 300.0
    t0 = time.perf_counter()
    for suite in ("lemma-distant", "lemma-close", "lemma-admissible"):
        rep = run_suite(suite)
        assert rep.exit_code() == 0, suite
    colim = run_suite("lemma-colimit")
    assert colim.exit_code() == 0
    assert len(colim.checks) == 25
    elapsed = time.perf_counter() - t0
    assert elapsed < budget
    _verdict("distant/close/admissible interval lemmas plus 25 seeded "
             "colimit diagrams", elapsed, budget)


def test_criterion_06_flag_vs_necklace():
    rep = _run_green("oracle-flag-necklace", 120.0,
                     "flag model agrees with the necklace oracle on D^2, D^3 "
                     "and 20 seeded subcomplexes")
    seeded = [c for c in rep.checks if "seeded" in c.id]
    assert len(seeded) == 20


def test_criterion_07_adjoint_lambda():
    rep = _run_green("adjoint-lambda", 30.0,
                     "object part of the adjoint collapses to full nerve "
                     "or horn as predicted, n=2..4")
    assert any(c.id.endswith("j0") or "/j0" in c.id for c in rep.checks)


def test_criterion_08_nerve_comparisons():
    rep = _run_green("nerve-comparison", 120.0,
                     "total-category counts, comparison-map flags and "
                     "point-base check across the functor battery")
    names = {c.id.split("/")[0] for c in rep.checks}
    assert len(names) == 10


def test_criterion_09_straightening_fragment():
    _run_green("straightening-fragment", 60.0,
               "square chain posets surject onto their windows with "
               "contractible nerves, n=1..4")


def test_criterion_10_reduced_lifting():
    rep = _run_green("reduced-lifting", 180.0,
                     "reduced lifting problems biject with the originals "
                     "across the battery")
    assert len(rep.checks) == 5
    assert {n for _, _, n in lifting_battery()} == {2, 3}


def test_criterion_11_inner_horns_fill():
    budget = 180.0
    t0 = time.perf_counter()
    for name, spec in functor_battery():
        table = relative_nerve_2(spec, 3)
        for n, i in ((2, 1), (3, 1), (3, 2)):
            rep = horn_fill_check(table, n, i)
            assert rep["all_filled"], (name, n, i, rep["unfilled_examples"])
    elapsed = time.perf_counter() - t0
    assert elapsed < budget
    _verdict("all inner horns of the battery nerves admit fillers",
             elapsed, budget)
