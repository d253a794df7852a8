"""Acceptance criteria, one test (and one pass/fail line) per criterion.

Every criterion delegates to the shared verification suites in
polarcalc.suites, so `pytest tests/test_acceptance.py -v` and
`polarcalc verify --suite <name>` exercise identical code paths.
All checks are exact: rational arithmetic, zero tolerance.
"""

import time

import pytest

from polarcalc import suites

SEED = 0


def _run(name, label, max_seconds=None):
    start = time.time()
    result = suites.get_suite(name)(seed=SEED)
    elapsed = time.time() - start
    verdict = "PASS" if result.passed else "FAIL"
    print("criterion %s: %s (%.1fs) -- %s" % (label, verdict, elapsed,
                                              result.summary))
    if not result.passed:
        pytest.fail("criterion %s failed: %s" % (label, result.details))
    if max_seconds is not None and elapsed > max_seconds:
        pytest.fail("criterion %s exceeded its %ss budget (%.1fs)"
                    % (label, max_seconds, elapsed))
    return result


def test_criterion_1_boundary_squared_vanishes():
    """200 randomized admissible chains on P1, P1xP1, P2; under 2 minutes."""
    _run("dsq-random", "1 (boundary squared vanishes)", max_seconds=120)


def test_criterion_2_residue_anticommutativity():
    """Iterated residues flip sign on 50 randomized NC pairs."""
    _run("residue-anticommute", "2 (residue anticommutativity)")


def test_criterion_3_cylinder_residue_table():
    """Graph, section, and vertical residue rows on the 5-example corpus,
    including one case that needs the shifted-basepoint repair."""
    result = _run("homotopy-table", "3 (cylinder residue table)")
    assert any(c["repaired"] for c in result.details["cases"])


def test_criterion_4_homotopy_identity():
    """dh + hd = id - s*pi* with exactly zero residual on the corpus."""
    _run("homotopy-identity", "4 (homotopy identity)")


def test_criterion_5_boundary_witness():
    """100 random zero-sum 0-cycles get boundary witnesses; nonzero totals
    are refused."""
    _run("witness-p1", "5 (boundary witness on the line)")


def test_criterion_6_global_residue_theorem():
    """Total residue of 100 random admissible 1-forms on P1 is zero."""
    _run("global-residue-p1", "6 (global residue theorem)")


def test_criterion_7_adjunction_residue():
    """Residue along y^2 = x^3 + ax + b equals -dx/(2y), cross-checked
    against the independent decomposition oracle, 10 random curves."""
    _run("adjunction", "7 (adjunction residue)")


def test_criterion_8_relations():
    """R2 squaring pair collapses, R3 prunes constants, and boundary
    commutes with normalization on 20 randomized chains."""
    _run("relations", "8 (relations R2/R3)")


def test_criterion_9_cli():
    """Renderer round-trips, byte-deterministic replay, documented exit
    codes observed."""
    _run("cli", "9 (command line interface)")
