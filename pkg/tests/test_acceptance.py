"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the
``acceptance criteria`` section at the end of the pytest run.
"""
import os
import time

import pytest

from c4mackey.bc4sigma2 import (
    E1_ANCHORS,
    bockstein_epsilons,
    check_anchor,
    cohomology_at,
    d1_apply,
    e1_page,
    guard_band,
    nonflat_ingredients,
    presentation,
    verify_window,
)
from c4mackey.checks import green_suite, mackey_suite, point_golden, trres_table
from c4mackey.degree import RODegree, parse_degree, window

POINT_WINDOW = list(window(6, 3, 3))
BC4_WINDOW = list(window(4, 2, 2))


@pytest.fixture(scope="module")
def bc4_report():
    jobs = min(4, os.cpu_count() or 1)
    start = time.perf_counter()
    report = verify_window(BC4_WINDOW, jobs=jobs)
    report["seconds"] = time.perf_counter() - start
    return report


def test_point_golden(criterion):
    start = time.perf_counter()
    rows = point_golden(POINT_WINDOW)
    seconds = time.perf_counter() - start
    bad = [r["degree"] for r in rows if not r["match"]]
    criterion(
        1,
        "point golden test",
        len(rows) == 637 and not bad and seconds < 60,
        f"{len(rows) - len(bad)}/{len(rows)} degrees match in {seconds:.1f}s; mismatches {bad[:5]}",
    )


def test_mackey_axioms(criterion):
    failures = mackey_suite(seed=0, trials=1000)
    criterion(2, "Mackey axiom suite", not failures, f"{len(failures)} failures {failures[:3]}")


def test_green_ring(criterion):
    start = time.perf_counter()
    results = green_suite(bound=4, degree_window=(6, 3, 3))
    seconds = time.perf_counter() - start
    bad = {k: v[:3] for k, v in results.items() if v}
    criterion(
        3,
        "Green ring suite",
        not bad and seconds < 120,
        f"{len(results)} identities in {seconds:.1f}s; failing {bad}",
    )


def test_transfer_restriction_table(criterion):
    rows = trres_table()
    names = {r.name.split(" =")[0].split("(")[0] for r in rows}
    bad = [f"{r.name}: got {r.got}" for r in rows if not r.ok]
    criterion(
        4,
        "transfer and restriction formulas",
        not bad and {"Tr", "Res"} <= names,
        f"{len(rows) - len(bad)}/{len(rows)} formulas reproduced; {bad}",
    )


def test_bc4_window(criterion, bc4_report):
    rep = bc4_report
    spots = []
    M, stable = cohomology_at(parse_degree("2sigma"))
    spots.append(("top at 2sigma", stable and M.top_dim == 1))
    M, stable = cohomology_at(parse_degree("sigma"))
    spots.append(("middle at sigma", stable and M.mid_dim == 0))
    for n in range(0, 9):
        M, stable = cohomology_at(RODegree(n, 0, 0))
        spots.append((f"bottom at {n}", stable and M.bot_dim == 1))
    bad_spots = [name for name, ok in spots if not ok]
    criterion(
        5,
        "B_{C4}Sigma_2 verification window",
        rep["ok"] and not bad_spots and rep["stable"] > 0 and rep["seconds"] < 300,
        f"{rep['stable']}/{rep['degrees']} stable, mismatches {rep['mismatches'][:5]}, "
        f"spot failures {bad_spots}, {rep['seconds']:.1f}s",
    )


def test_spectral_sequence(criterion, bc4_report):
    anchors = [(a, *check_anchor(a)) for a in E1_ANCHORS]
    failed_anchors = [f"{a.figure}({a.x},{a.y}) {a.level}: {label}" for a, ok, label in anchors if not ok]
    required = {("integer", 5, 5, "top"), ("integer", 2, 2, "top"), ("integer", 2, 2, "mid"), ("integer", 2, 2, "bot")}
    present = {(a.figure, a.x, a.y, a.level) for a, ok, _ in anchors if ok}

    # E2 from d1_apply on the E1 page, summed below each degree's guard band
    top = max(guard_band(d) for d in BC4_WINDOW) - 1
    e2 = d1_apply(e1_page(BC4_WINDOW, top))
    totals = {}
    for (star, s), dims in e2.items():
        if s < guard_band(star):
            acc = totals.setdefault(star, [0, 0, 0])
            for i in range(3):
                acc[i] += dims[i]

    bad = []
    for row in bc4_report["rows"]:
        if not row["stable"]:
            continue
        star = RODegree(*row["abc"])
        t, m, b = totals.get(star, [0, 0, 0])
        engine = row["engine"]
        if (m, b) != (engine[1], engine[2]) or t - engine[0] != row["d2"]:
            bad.append(row["degree"])
    spot = totals.get(parse_degree("2sigma"), [0, 0, 0])[0]
    criterion(
        6,
        "spectral sequence tabulation",
        len(anchors) - len(failed_anchors) >= 10 and required <= present and not bad and spot == 2,
        f"{len(anchors) - len(failed_anchors)}/{len(anchors)} printed entries, "
        f"E2 mismatches {bad[:5]}, E2 top at 2sigma {spot}",
    )


def test_presentation(criterion):
    P = presentation()
    report = P.report(bound=4)
    ok = (
        not report["inhomogeneous"]
        and not report["localization_failures"]
        and bockstein_epsilons() == [(1, 1)]
        and report["ok"]
    )
    criterion(
        7,
        "presentation consistency",
        ok,
        f"{report['relations']} relations, inhomogeneous {len(report['inhomogeneous'])}, "
        f"localization failures {len(report['localization_failures'])}, epsilons {report['bockstein_epsilons']}",
    )


def test_nonflat(criterion):
    ings = nonflat_ingredients()
    criterion(
        8,
        "non-flatness ingredients",
        len(ings) == 3 and all(i.ok for i in ings),
        "; ".join(f"{i.name}: {'ok' if i.ok else 'FAILED'}" for i in ings),
    )
