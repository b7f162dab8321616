"""Acceptance gate.

One test per shipped guarantee.  Each test runs the matching verification
suite(s) at the guaranteed sample sizes, prints a single verdict line with
the elapsed time, and fails if any check fails or a runtime budget is
exceeded.  Run with -s (or read the captured output) to see the lines.
"""

import time

from braidedthompson.verification import SuiteOptions, run_suite


def check(label, suites, budget=None, **options):
    opts = SuiteOptions(**options)
    start = time.perf_counter()
    rows = []
    for name in suites:
        rows.extend(run_suite(name, opts))
    elapsed = time.perf_counter() - start
    failed = [row for row in rows if not row.passed]
    on_time = budget is None or elapsed <= budget
    verdict = "PASS" if not failed and on_time else "FAIL"
    limit = "" if budget is None else f" (budget {budget:g}s)"
    print(f"[{verdict}] {label}: {len(rows)} checks, {elapsed:.2f}s{limit}")
    for row in failed:
        print(f"         {row.line()}")
    assert not failed, f"{label}: {len(failed)} of {len(rows)} checks failed"
    assert on_time, f"{label}: {elapsed:.2f}s over the {budget:g}s budget"


def test_01_word_problem_engines_agree():
    check("1 engine agreement on 1000 random words", ["engine-agreement"], budget=60, seed=1)


def test_02_full_twist_winding_table():
    check("2 full-twist winding table n=2..7", ["winding-table"], budget=5)


def test_03_diagram_reduction_confluence():
    check("3 reduction confluence, 200 elements x 3 orders", ["reduction-confluence"], budget=60, seed=3)


def test_04_tree_generator_relations():
    check("4 generator relation battery 0<=i<j<=4", ["f-relations"], budget=10)


def test_05_abelianization_well_defined():
    check("5 abelian image invariance and additivity", ["character-welldef"], budget=30, seed=5)


def test_06_sigma_decision_table():
    check("6 sigma membership table", ["sigma-table"], seed=6)


def test_07_finiteness_classifier():
    check("7 finiteness classifier verdicts", ["finiteness"])


def test_08_conjugation_and_rewriting():
    check("8 shift conjugation and rewriting, 50 per corner", ["lemma-conj"], budget=120, seed=8)


def test_09_strand_quotient_map():
    check("9 quotient map well-defined and multiplicative", ["psi-quotient"], seed=9)


def test_10_center_pairing_formula():
    check("10 center pairing values n=2..6", ["center-pairing"], seed=10)


def test_11_matching_complex_topology():
    check("11 matching complex homology and connectivity", ["matching-topology"], budget=120)


def test_12_matching_distance_two():
    check("12 distance two for edge pairs sharing a vertex", ["distance-two"], budget=30)


def test_13_cube_complex_local_structure():
    check(
        "13 ascending links, descending slices, cube spans, patch certificates",
        ["alk-simplex", "desc-slice", "cube-span", "flag-links"],
        budget=600,
        seed=13,
    )
