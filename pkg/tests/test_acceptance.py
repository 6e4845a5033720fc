"""The ten acceptance criteria, each checked exactly and reported as PASS or FAIL."""
from fractions import Fraction as Q

import pytest

from conftest import record
from splitfact import cohomology as co, suites
from splitfact.invariant import classical_rho_table
from splitfact.rootsys import build
from splitfact.sos import check_statement, enumerate_msos


def report(number, title, ok):
    record(number, title, ok)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
    return ok


def status(rep):
    return rep.cases_run > 0 and rep.status == "pass"


def test_01_table_reproduction():
    rep = suites.boxed(8)
    c3 = next(e for e in classical_rho_table("C", 3) if e.alpha == (2, 0, 0))
    flagged = any(n["case_id"].startswith("C3:") for n in rep.notes)
    ok = status(rep) and flagged and c3.literal_text != c3.closed_form
    assert report(1, "closed-form table equals the general formula, ranks 2..8", ok), rep.failures[:3]


def test_02_reduction_theorem():
    rep = suites.decomposition(5)
    assert report(2, "rho of a SOS is the sum of single-root cocycles", status(rep)), rep.failures[:3]


def test_03_sharp_equivalence():
    rep = suites.sharp_equiv(4)
    assert report(3, "# and ## agree, rank <= 4, standard and adapted positivity", status(rep)), rep.failures[:3]


@pytest.mark.xfail(strict=True, reason="false as stated: C3 has an adapted A' failing # under every positive system")
def test_04_adapted_positivity():
    rep = suites.adapted(6)
    assert report(4, "constructed positivity satisfies # for every adapted A'", status(rep)), \
        f"{len(rep.failures)} of {rep.cases_run} cases fail, e.g. {rep.failures[0]}"


def test_05_d3_counterexample():
    res = check_statement(build("D", 3), None, ((1, 0, -1), (1, 0, 1)), "#")
    ok = not res and tuple(res.witness[2]) == (1, -1, 0) and status(suites.d3_counterexample())
    assert report(5, "D3 data fails # with witness e1-e2", ok)


def test_06_two_coroot_lattice_lemma():
    rep = suites.strongco(6)
    assert report(6, "a^v + b^v in 2Q^v only for the G2 orthogonal pair", status(rep)), rep.failures[:3]


def test_07_cocycle_invariants():
    reps = [suites.boxed(8), suites.decomposition(5), suites.change_of_mu(4)]
    ok = all(status(r) for r in reps)
    assert report(7, "cocycle and fixedness invariants, change-of-mu shift", ok)


def test_08_tn_model():
    rep = suites.tn_model(4, 6)
    assert report(8, "TN quotients are 2-elementary and match the cocycle model", status(rep)), rep.failures[:3]


def test_09_comparison():
    rep = suites.embedding(5)
    out = co.compare_invariants(build("B", 2), co.EndoChar((Q(1, 2), Q(0))), [(1, -1)], [(1, -1), (1, 1)])
    ok = status(rep) and out.value_sub == Q(1, 2) == out.value and out.embedding_consistent
    assert report(9, "comparison maps are injective; B2 values 1/2, 1/2", ok), rep.failures[:3]


CENSUS = {"A": lambda n: 1, "B": lambda n: 1 if n % 2 else 2, "C": lambda n: n // 2 + 1, "D": lambda n: 1}


def test_10_census():
    found = {}
    for t, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        for n in range(lo, 7):
            found[(t, n)] = (len(enumerate_msos(build(t, n))), CENSUS[t](n))
    found[("G", 2)] = (len(enumerate_msos(build("G", 2))), 1)
    ok = all(a == b for a, b in found.values()) and status(suites.census(6))
    assert report(10, "brute-force MSOS orbit counts, rank <= 6", ok), found
