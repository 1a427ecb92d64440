import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent.parent))

from foldsage.errors import BudgetExceededError, ConstructionError, ValidationError
from foldsage.graphs import PathSpec, complete_graph, cycle_graph, double_mycielskian, grotzsch_graph, path_with_loops
from foldsage.reductions import folded_exponential_double
from foldsage.utils.config import Config
from foldsage.verify import SKIPPED, Verdict, VerdictBuilder, Verifier
from foldsage.verify.hedetniemi import default_pool
from foldsage.verify.lovasz import TIGHT
from foldsage.verify.verdict import EXHAUSTIVE, sampled


@pytest.fixture
def config():
    return Config(seed=7, certificate_samples=50, edge_samples=500)


@pytest.fixture
def verifier(config):
    return Verifier(config)


def assert_passed(verdict: Verdict, *names: str) -> None:
    print(f"\n{verdict.theorem_id} {verdict.instance}: {[(c.name, c.passed, c.strength) for c in verdict.checks]}")
    assert verdict.passed, verdict.failed_checks()
    for name in names:
        check = verdict.check(name)
        assert check is not None, name
        assert check.passed, name


def test_main2_on_complete_graphs(verifier):
    verdict = verifier.verify_main2(complete_graph(3), 2)
    assert_passed(verdict, "preconditions", "fold_trace_replays", "fold_core_is_complete",
                  "chromatic_number", "sphere_profile", "lovasz_bound_tight", "evaluation_homomorphism")
    assert verdict.report["exponential_vertices"] == 8

    verdict = verifier.verify_main2(complete_graph(4), 3)
    assert_passed(verdict, "fold_core_is_complete", "sphere_profile")
    assert verdict.check("chromatic_number").observed == 3


def test_main2_preconditions(verifier):
    verdict = verifier.verify_main2(cycle_graph(5), 2)
    assert not verdict.passed
    assert verdict.failed_checks() == ["preconditions"]
    assert "witness" in verdict.report["precondition_details"]

    verdict = verifier.verify_main2(complete_graph(3), 3)
    assert verdict.check("preconditions").observed is False
    assert verdict.check("chromatic_number") is None


def test_generalmain(verifier):
    verdict = verifier.verify_generalmain(complete_graph(3), 2, 2, [0])
    assert_passed(verdict, "pruned_isomorphic_to_path_exponential", "homology_equal",
                  "hom_block_vertices_isolated", "direct_homology_equal")

    verdict = verifier.verify_generalmain(complete_graph(2), 2, 2, [0, 1])
    assert_passed(verdict, "homology_equal", "direct_homology_equal")
    assert verdict.instance["A"] == [0, 1]

    verdict = verifier.verify_generalmain(complete_graph(3), 3, 2, [0])
    assert_passed(verdict, "pruned_isomorphic_to_path_exponential", "homology_equal", "hom_block_vertices_isolated")
    assert verdict.report["pruned_vertices"] == 27


def test_generalmain_preconditions(verifier):
    verdict = verifier.verify_generalmain(complete_graph(3), 2, 2, [2])
    assert verdict.failed_checks() == ["preconditions"]


def test_cormain(verifier):
    verdict = verifier.verify_cormain(2, 2, 2, 0)
    assert_passed(verdict, "sphere_profile", "chromatic_number", "sphere_dimension_consistent",
                  "direct_chromatic_number", "direct_sphere_profile")

    verdict = verifier.verify_cormain(3, 2, 2, 1)
    assert_passed(verdict, "sphere_profile", "chromatic_number", "direct_chromatic_number")


def test_cormain_skips_direct_checks_over_budget(config):
    verifier = Verifier(config.with_overrides(full_check_vertices=100))
    verdict = verifier.verify_cormain(3, 3, 2, 0)
    assert_passed(verdict, "sphere_profile", "chromatic_number", "sphere_dimension_consistent")
    assert verdict.check("direct_chromatic_number").strength == SKIPPED
    assert verdict.check("direct_sphere_profile").strength == SKIPPED


def test_cormain_preconditions(verifier):
    for n, m, r, i in ((1, 2, 2, 0), (3, 2, 2, 2), (3, 4, 2, 0)):
        verdict = verifier.verify_cormain(n, m, r, i)
        assert verdict.failed_checks() == ["preconditions"]


def test_doubesharp(verifier):
    verdict = verifier.verify_doubesharp(2, 2)
    assert_passed(verdict, "removed_sets_isolated", "hom_block_vertices_isolated",
                  "pruned_isomorphic_to_pattern_exponential", "sphere_profile", "chromatic_number",
                  "sphere_dimension_consistent", "direct_sphere_profile")

    assert verifier.verify_doubesharp(2, 3).failed_checks() == ["preconditions"]
    assert verifier.verify_doubesharp(1, 2).failed_checks() == ["preconditions"]


def test_doublenew(verifier):
    verdict = verifier.verify_doublenew(2, 2)
    assert_passed(verdict, "chromatic_number", "removed_sets_isolated", "folddouble_certificates",
                  "generalfold_certificates", "direct_chromatic_number")
    assert verdict.check("folddouble_certificates").strength.startswith("sampled(seed=7")

    verdict = verifier.verify_doublenew(2, 2, host=grotzsch_graph())
    assert_passed(verdict, "host_contains_double_mycielskian", "host_chromatic_number",
                  "restriction_homomorphism")

    verdict = verifier.verify_doublenew(2, 2, host=cycle_graph(11))
    assert not verdict.passed
    assert verdict.check("host_chromatic_number").strength == SKIPPED

    assert verifier.verify_doublenew(2, 4).failed_checks() == ["preconditions"]


def test_doublenew_sampled_counts_match_draws(verifier):
    verdict = verifier.verify_doublenew(2, 3)
    print(f"\ndoublenew n=2 m=3: {[(c.name, c.passed, c.strength) for c in verdict.checks]}")
    assert verdict.check("preconditions").passed
    assert verdict.check("chromatic_number").observed == 3

    folddouble = verdict.check("folddouble_certificates")
    assert folddouble.passed
    assert folddouble.expected == folddouble.observed == 50
    assert folddouble.strength == sampled(7, 50)

    for check in verdict.checks:
        if check.strength.startswith("sampled") and check.name != "chromatic_number":
            assert check.strength == sampled(7, check.observed), check
            assert check.passed == (check.observed == check.expected)


def test_folddouble_shortfall_fails(verifier, config, monkeypatch):
    monkeypatch.setattr("foldsage.verify.double.ATTEMPTS_PER_SAMPLE", 0)
    builder = VerdictBuilder("doublenew", {}, config)
    verifier.doublenew.folddouble_check(builder, 3, double_mycielskian(2), 2)
    check = builder.verdict.check("folddouble_certificates")
    assert not check.passed
    assert check.observed == 0
    assert check.strength == sampled(7, 0)
    assert "sample floor not reached" in check.note


def test_sample_floor(config):
    builder = VerdictBuilder("doublenew", {}, config)
    full = builder.sample_floor("full", 50, 50, note="50 maps drawn")
    short = builder.sample_floor("short", 12, 50, note="1000 maps drawn")
    assert full.passed and full.strength == sampled(7, 50)
    assert full.note == "50 maps drawn"
    assert not short.passed and short.strength == sampled(7, 12)
    assert short.note == "sample floor not reached: 12 of 50; 1000 maps drawn"


def test_isolation_check_requires_requested_samples(verifier, config):
    G2 = folded_exponential_double(2, 2, "G2")
    builder = VerdictBuilder("doubesharp", {}, config)
    check = verifier.doublenew.isolation_check(builder, "isolated", G2, iter(()), requested=5)
    assert not check.passed
    assert check.strength == sampled(7, 0)

    check = verifier.doublenew.isolation_check(builder, "listed", G2, iter(()))
    assert check.passed
    assert check.strength == EXHAUSTIVE


def test_doublenew_skips_generalfold_below_n(verifier):
    verdict = verifier.verify_doublenew(3, 2)
    assert verdict.check("generalfold_certificates").strength == SKIPPED


def test_hedetniemi_spot_check(verifier):
    verdict = verifier.hedetniemi_spot_check(grotzsch_graph())
    names = [name for name, _ in default_pool()]
    assert verdict.instance["H"] == names
    assert verdict.report["n"] == 2
    assert_passed(verdict, "chromatic_number_G", "K3_implication", "C5_product_bound",
                  "C7_induced_homomorphisms", "grotzsch-minus-vertex_implication")
    assert verdict.report["K4"]["chi_product"] <= 4

    verdict = verifier.hedetniemi_spot_check(cycle_graph(5), [("K3", complete_graph(3))])
    assert verdict.failed_checks() == ["preconditions"]


def test_lovasz_report(verifier):
    verdict = verifier.lovasz_report(complete_graph(4))
    assert_passed(verdict, "fold_preserves_chromatic_number", "lovasz_bound_holds")
    assert verdict.report["bound"]["tightness"] == TIGHT
    assert verdict.report["bound"]["sphere_dimension"] == 2

    verdict = verifier.lovasz_report(cycle_graph(5))
    assert verdict.report["bound"]["lower_bound"] == 3

    verdict = verifier.lovasz_report(cycle_graph(6))
    assert verdict.passed
    assert verdict.check("lovasz_bound_holds").strength == SKIPPED

    verdict = verifier.lovasz_report(path_with_loops(PathSpec(2, {0})))
    assert verdict.failed_checks() == ["preconditions"]


def test_verdicts_are_reproducible(config):
    first = Verifier(config).verify_doublenew(2, 2)
    second = Verifier(config).verify_doublenew(2, 2)
    assert first.canonical_json() == second.canonical_json()
    assert "runtime_ms" not in first.to_json(include_runtime=False)
    assert first.config_fingerprint == config.fingerprint()

    other = Verifier(config.with_overrides(seed=8)).verify_doublenew(2, 2)
    assert other.canonical_json() != first.canonical_json()


def test_budget_overflow_becomes_skip(config):
    verifier = Verifier(config.with_overrides(vertex_budget=10))
    verdict = verifier.verify_main2(complete_graph(4), 3)
    assert verdict.passed
    assert verdict.check("fold_core_is_complete").strength == SKIPPED
    assert verdict.check("evaluation_homomorphism").strength == SKIPPED


def test_verdict_builder_guarded(config):
    builder = VerdictBuilder("unit", {}, config)
    with builder.guarded("a", "b"):
        builder.add("a", 1, 1)
        raise BudgetExceededError("too big", required=5, budget=1)
    with builder.guarded("c"):
        raise ConstructionError("broken invariant")
    verdict = builder.finish()
    assert verdict.check("a").passed
    assert verdict.check("b").strength == SKIPPED
    assert not verdict.check("c").passed
    assert verdict.failed_checks() == ["c"]
    assert [c.name for c in verdict.checks] == ["a", "b", "c"]


def test_run_dispatch(verifier):
    verdict = verifier.run("lovasz", {"G": complete_graph(3)})
    assert verdict.theorem_id == "lovasz"
    with pytest.raises(ValidationError):
        verifier.run("unknown", {})
    with pytest.raises(ValidationError):
        verifier.run("cormain", {"n": 2, "m": 2})
    with pytest.raises(ValidationError):
        verifier.run("lovasz", {"G": complete_graph(3), "extra": 1})


if __name__ == "__main__":
    verifier = Verifier(Config(seed=7, certificate_samples=50, edge_samples=500))
    test_main2_on_complete_graphs(verifier)
    test_cormain(verifier)
    test_lovasz_report(verifier)
    print("\nAll verification tests passed!")
