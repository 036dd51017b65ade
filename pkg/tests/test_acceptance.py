"""Acceptance gate: twelve exact criteria, one printed verdict line each.

Every assertion is exact (integer/rational arithmetic, string equality);
randomized batches use the fixed seeds documented in conftest.  Criteria
over scenario checks assert on the shared session reports, so a red line
here always corresponds to a failing check record or a broken fixture.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import SEEDS, record_by_id, records_by_prefix
from helpers import (
    check_bernstein_inequality,
    check_fourier_involution,
    check_groebner_spairs,
    check_module_axioms,
    check_ring_axioms,
    check_word_products,
)
from weylkit import LeftIdeal, graded_ideal, krull_dimension, parse_expression

GOLDEN_DIR = Path(__file__).parent / "golden"


class criterion:
    """Prints one PASS/FAIL line per acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.label = f"criterion {number:2d} ({title})"

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"[{verdict}] {self.label}")
        return False


def assert_all_pass(records):
    for record in records:
        assert record["verdict"] == "pass", (record["id"], record.get("witness"))


def test_criterion_01_arithmetic_oracle():
    with criterion(1, "500 word products match the rewriting oracle"):
        assert check_word_products(SEEDS["words"], pairs=500, ambient=3, max_len=6) == 500


def test_criterion_02_delta_annihilator_certificates(n2_report):
    with criterion(2, "n=2 annihilator ideals: kill, certify, exact"):
        annihilate = records_by_prefix(n2_report, "lemma4-annihilates[")
        assert len(annihilate) == 4
        assert_all_pass(annihilate)
        simplicity = records_by_prefix(n2_report, "lemma4-simplicity[")
        assert len(simplicity) == 4
        assert_all_pass(simplicity)
        for record in simplicity:
            assert record["witness"]["summary"] == (
                "dim 4, mult 1, holonomic, simple: yes, "
                "variety: z2 = z4 = zeta1 = zeta3 = 0"
            )
        exact = records_by_prefix(n2_report, "lemma4-exact-annihilator[")
        assert len(exact) == 4
        assert_all_pass(exact)


def test_criterion_03_fourier_transport(n2_report):
    with criterion(3, "n=2 Fourier transport of both ideals"):
        transported = records_by_prefix(n2_report, "fourier-transport-Tl[")
        assert len(transported) == 4
        assert_all_pass(transported)
        assert_all_pass([record_by_id(n2_report, "fourier-transport-delta")])


def test_criterion_04_short_ideal_memberships(n2_report):
    with criterion(4, "listed operators reduce to zero in the short ideal"):
        ids = [
            "member-eq3-z4d1",
            "member-eq3-z2d3",
            "member-eq3-euler12",
            "member-eq3-euler34",
            "negative-unit-not-in-I3",
        ]
        assert_all_pass([record_by_id(n2_report, i) for i in ids])


def test_criterion_05_containment_diagram(n2_report):
    with criterion(5, "n=2 twisted containments and kernel element"):
        assert_all_pass(records_by_prefix(n2_report, "diagram-h3-twisted-in-I3"))
        assert_all_pass(records_by_prefix(n2_report, "diagram-I3-in-I1l["))
        assert_all_pass(records_by_prefix(n2_report, "diagram-h1-twisted-in-I1l["))
        assert_all_pass(records_by_prefix(n2_report, "diagram-eq3-in-I3"))
        assert_all_pass([record_by_id(n2_report, "kernel-element-vanishes")])


def test_criterion_06_interpolation_lift(n2_report):
    with criterion(6, "single operator matching three targets by level"):
        record = record_by_id(n2_report, "interpolation-lift-L2")
        assert record["verdict"] == "pass"
        assert record["inputs"]["lmax"] == 2


def test_criterion_07_excess_dimension(n2_report):
    with criterion(7, "short ideal dimension 5 exceeds ambient 4"):
        record = record_by_id(n2_report, "I3-charvar")
        assert record["verdict"] == "pass"
        assert record["witness"]["dimension"] == 5
        # Independent recomputation, not through the scenario layer.
        short = LeftIdeal(
            [parse_expression(t, ambient=4) for t in ("z1*d1 + z2*d2 + 1", "d3", "z4")]
        )
        assert krull_dimension(graded_ideal(short)) == 5 > 4


def test_criterion_08_three_variable_family(n3_report):
    with criterion(8, "n=3 sections, ladder containments, simplicity"):
        agree = records_by_prefix(n3_report, "lemma8-sections-agree[")
        assert len(agree) == 3
        assert_all_pass(agree)
        for form in ("A", "B", "C"):
            assert_all_pass(records_by_prefix(n3_report, f"lemma8-annihilates-{form}["))
        assert_all_pass(records_by_prefix(n3_report, "ladder-"))
        assert_all_pass([record_by_id(n3_report, "Iprime-unit-at-0")])
        simple = records_by_prefix(n3_report, "Iprime-simple[")
        assert len(simple) == 3
        assert_all_pass(simple)
        exact = records_by_prefix(n3_report, "lemma8-exact-annihilator[")
        assert len(exact) == 3
        assert_all_pass(exact)


def test_criterion_09_three_variable_lie_layer(n3_report):
    with criterion(9, "n=3 subalgebras, twisted generation, containments"):
        assert_all_pass(
            [
                record_by_id(n3_report, "h1-subalgebra"),
                record_by_id(n3_report, "h3-subalgebra"),
            ]
        )
        assert_all_pass(records_by_prefix(n3_report, "h1-twisted-in-I1l["))
        assert_all_pass(records_by_prefix(n3_report, "h3-twisted-generates-I3"))
        assert_all_pass(records_by_prefix(n3_report, "I3-in-I1l["))
        assert_all_pass(records_by_prefix(n3_report, "corrected-euler456-in-I1l["))
        assert_all_pass(
            records_by_prefix(n3_report, "printed-euler456-variant-not-in-I1l[")
        )


def test_criterion_10_orbit_infinitesimal_checks(n2_report):
    with criterion(10, "orbit stability and tangent ranks"):
        assert_all_pass([record_by_id(n2_report, "orbit-O11-closure-h2-stable")])
        stable = records_by_prefix(n2_report, "orbit-O12c-h3-stable[")
        unstable = records_by_prefix(n2_report, "orbit-O12c-h2-unstable[")
        assert len(stable) == len(unstable) == 3
        assert_all_pass(stable)
        assert_all_pass(unstable)
        assert_all_pass([record_by_id(n2_report, "rank-origin")])
        assert_all_pass([record_by_id(n2_report, "rank-open-stratum")])
        assert_all_pass(records_by_prefix(n2_report, "rank-O12c-sample["))


def test_criterion_11_property_suites():
    with criterion(11, "randomized property batches, fixed seeds"):
        assert check_ring_axioms(SEEDS["ring"]) == 40
        assert check_module_axioms(SEEDS["module"]) == 30
        spair_fixtures = [
            ["z1*d1 + z2*d2 + 1", "d3", "z4"],
            ["z1*d1 - 2", "d1^3", "z2*d2 + 3", "z2^3", "d3", "z4"],
        ]
        for texts in spair_fixtures:
            gens = [parse_expression(t, ambient=4) for t in texts]
            assert check_groebner_spairs(gens) >= 1
        assert check_bernstein_inequality(SEEDS["bernstein"]) >= 1
        assert check_fourier_involution(SEEDS["fourier"]) == 40


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "weylkit.cli", *argv],
        capture_output=True,
        text=True,
        timeout=300,
    )


def test_criterion_12_golden_reports(tmp_path):
    with criterion(12, "golden reports and corrupted-generator control"):
        for name in ("paper-n2", "paper-n3"):
            verify = run_cli("verify", name, "--quiet")
            assert verify.returncode == 0, verify.stderr
            rendered = run_cli("report", name, "--strip-timing")
            assert rendered.returncode == 0, rendered.stderr
            golden = (GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8")
            assert rendered.stdout == golden

        # Corrupt one generator of the level-indexed family and keep only the
        # direct annihilation checks: the run must fail naming that generator.
        from importlib import resources

        raw = json.loads(
            resources.files("weylkit")
            .joinpath("data", "paper-n2.json")
            .read_text(encoding="utf-8")
        )
        generators = raw["ideals"]["I1l"]["generators"]
        index = generators.index("z2*d2 + {l} + 1")
        generators[index] = "z2*d2"
        raw["checks"] = [c for c in raw["checks"] if c["id"] == "lemma4-annihilates"]
        corrupted = tmp_path / "corrupted.json"
        corrupted.write_text(json.dumps(raw), encoding="utf-8")

        verify = run_cli("verify", str(corrupted))
        assert verify.returncode != 0
        assert "[FAIL]" in verify.stdout
        assert "z2*d2" in verify.stdout
