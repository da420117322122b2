"""
Tests for terminality reports, law checks and the hom-class oracle
"""

from itertools import combinations

import pytest

from core.constants import PRESET_NAMES
from core.errors import TypingError, UniverseError
from operations import (
    CERTIFIED, UNKNOWN, NotFound, check_terminal, check_terminal_subcategory,
    verify_monad_laws, verify_adjunction_laws, count_hom_classes, enumerate_strings,
    equivalent, good_derivations,
)
from presentation.presets import preset_spec


def test_monad_unit_is_terminal_in_free_words(monad):
    report = check_terminal(monad, monad.string("T"), monad.universe("Tstar"), 5)
    assert report.terminal
    assert report.verdict == "Terminal"
    assert len(report.results) == 6
    assert report.gaps == []


def test_empty_word_reaches_candidate_by_unit(monad):
    report = check_terminal(monad, monad.string("T"), monad.universe("Tstar"), 2)
    empty = report.results[0]
    assert empty.string.gens == ()
    assert [s.rule.name for s in empty.existence.steps] == ["eta"]
    assert empty.uniqueness == CERTIFIED


def test_multiplication_alone_suffices_on_nonempty_words(monad):
    report = check_terminal(monad, monad.string("T"), monad.universe("Tplus"), 5,
                            rules=[monad.rule("mu")])
    assert report.terminal
    assert all(len(r.existence.steps) == len(r.string) - 1 for r in report.results)


def test_candidate_outside_universe_is_rejected(adjunction):
    with pytest.raises(UniverseError):
        check_terminal(adjunction, adjunction.string("G"), adjunction.universe("Fwords"), 3)


def test_unclosed_universe_is_rejected(composite):
    with pytest.raises(UniverseError):
        check_terminal(composite, composite.string("P T"), composite.universe("PTpow"), 2)


def test_composite_terminal_in_free_words(composite):
    report = check_terminal(composite, composite.string("P T"), composite.universe("PTstar"), 4)
    assert report.terminal, [str(g.string) + " " + g.note for g in report.gaps]


def test_adjunction_witnesses_only_use_counit(adjunction):
    for candidate, universe in (("F", "Fwords"), ("G", "Gwords")):
        report = check_terminal(adjunction, adjunction.string(candidate),
                                adjunction.universe(universe), 5)
        assert report.terminal
        for result in report.results:
            assert {s.rule.name for s in result.existence.steps} <= {"eps"}


@pytest.mark.parametrize("ablated", ["unitL", "unitR"])
def test_missing_unit_law_is_not_certified(monad, ablated):
    pres = monad.without_equations(ablated)
    report = check_terminal(pres, pres.string("T"), pres.universe("Tstar"), 3)
    assert not report.terminal
    assert report.verdict == "NotCertified"
    assert all(r.found for r in report.results)
    assert any(r.uniqueness == UNKNOWN for r in report.results)


def test_missing_associativity_is_not_certified(monad):
    pres = monad.without_equations("assoc")
    report = check_terminal(pres, pres.string("T"), pres.universe("Tstar"), 3)
    assert not report.terminal
    gap = next(r for r in report.gaps if r.string.gens == ("T", "T", "T"))
    assert "uncertified peak" in gap.note


def test_subcategory_existence_uses_derived_steps(composite):
    report = check_terminal_subcategory(composite, composite.string("P T"),
                                        composite.universe("PTpow"), ["muPT", "etaPT"], 6)
    assert report.terminal
    by_length = {len(r.string): r for r in report.results}
    assert [s.rule.name for s in by_length[0].existence.steps] == ["etaPT"]
    assert [s.rule.name for s in by_length[6].existence.steps] == ["muPT", "muPT"]
    assert report.basis["active_rules"] == ["muPT", "etaPT"]


def test_subcategory_without_unit_misses_empty_word(composite):
    report = check_terminal_subcategory(composite, composite.string("P T"),
                                        composite.universe("PTpow"), ["muPT"], 2)
    empty = report.results[0]
    assert isinstance(empty.existence, NotFound)
    assert not report.terminal


def test_monad_laws_hold(monad):
    report = verify_monad_laws(monad, monad.string("T"), "mu", "eta")
    assert report.holds
    assert list(report.laws) == ["associativity", "left unit", "right unit"]


def test_composite_monad_laws_hold(composite):
    report = verify_monad_laws(composite, composite.string("P T"), "muPT", "etaPT")
    assert report.holds, str(report)
    for verdict in report.laws.values():
        assert verdict.trace.moves


def test_composite_associativity_needs_theta_mu_t(composite):
    pres = composite.without_equations("theta_muT")
    report = verify_monad_laws(pres, pres.string("P T"), "muPT", "etaPT")
    assert not report.laws["associativity"].is_equal
    assert report.laws["left unit"].is_equal
    assert report.laws["right unit"].is_equal


def test_monad_laws_reject_mistyped_rules(monad):
    with pytest.raises(TypingError):
        verify_monad_laws(monad, monad.string("T T"), "mu", "eta")
    with pytest.raises(TypingError):
        verify_monad_laws(monad, monad.string("T"), "eta", "mu")


def test_triangle_identities_hold(adjunction):
    report = verify_adjunction_laws(adjunction, "F", "G", "eta", "eps")
    assert report.holds
    assert set(report.laws) == {"triangle F", "triangle G"}


def test_swapped_adjoints_are_a_typing_error(adjunction):
    with pytest.raises(TypingError):
        verify_adjunction_laws(adjunction, "G", "F", "eta", "eps")


def test_triangle_without_equation_is_unknown(adjunction):
    pres = adjunction.without_equations("triangleF")
    report = verify_adjunction_laws(pres, "F", "G", "eta", "eps")
    assert not report.holds
    assert report.laws["triangle G"].is_equal


def test_oracle_single_class_for_cube(monad):
    result = count_hom_classes(monad, monad.string("T T T"), monad.string("T"), 4)
    assert result.count == 1
    assert not result.partial
    assert result.derivations > 2


def test_oracle_splits_without_associativity(monad):
    pres = monad.without_equations("assoc")
    result = count_hom_classes(pres, pres.string("T T T"), pres.string("T"), 4, good_only=True)
    assert result.count == 2
    assert result.derivations == 2


def test_oracle_unit_to_composite(composite):
    result = count_hom_classes(composite, composite.string("1_A"), composite.string("P T"), 3)
    assert result.derivations == 4
    assert result.count == 1


def test_oracle_node_limit_is_partial(monad):
    result = count_hom_classes(monad, monad.string("T T T"), monad.string("T"), 4, node_limit=1)
    assert result.partial
    assert result.count is None
    assert result.verdict == "Partial"


def test_oracle_counts_bracketings_without_associativity(monad):
    pres = monad.without_equations("assoc")
    result = count_hom_classes(pres, pres.string("T T T T"), pres.string("T"), 3, good_only=True)
    assert result.derivations == 6
    assert result.count == 5
    assert sorted({result.class_of(r) for r in result.representatives}) == [0, 1, 2, 3, 4]


def test_oracle_class_of_rejects_foreign_derivations(monad):
    result = count_hom_classes(monad, monad.string("T T T"), monad.string("T"), 2)
    with pytest.raises(ValueError):
        result.class_of(good_derivations(monad.string("T T T T"), monad)[0])


def test_equal_verdicts_share_an_oracle_class(monad):
    pres = monad.without_equations("assoc")
    x = pres.string("T T T T")
    result = count_hom_classes(pres, x, pres.string("T"), 3)
    routes = good_derivations(x, pres)
    assert len({result.class_of(d) for d in routes}) == 5
    for d1, d2 in combinations(routes, 2):
        if equivalent(d1, d2, pres).is_equal:
            assert result.class_of(d1) == result.class_of(d2)


def test_certified_routes_fall_in_one_class(composite):
    x = composite.string("P T P T")
    result = count_hom_classes(composite, x, composite.string("P T"), 8, max_len=6)
    assert result.count == 1
    assert {result.class_of(d) for d in good_derivations(x, composite)} == {0}


def test_uncertified_string_has_several_classes(monad):
    pres = monad.without_equations("assoc")
    report = check_terminal(pres, pres.string("T"), pres.universe("Tstar"), 3)
    gap = next(r for r in report.gaps if r.string.gens == ("T", "T", "T"))
    assert gap.uniqueness == UNKNOWN
    result = count_hom_classes(pres, gap.string, pres.string("T"), 4, max_len=5)
    assert not result.partial
    assert result.count >= 2


def _terminal_tasks():
    for name in PRESET_NAMES:
        for task in preset_spec(name).tasks:
            if task.kind == "terminal":
                yield pytest.param(name, task, id=f"{name}: {task.name}")


@pytest.mark.slow
@pytest.mark.parametrize("name, task", list(_terminal_tasks()))
def test_preset_terminal_strings_have_one_class(name, task):
    pres = preset_spec(name).presentation
    args = task.args
    universe = pres.universe(args["universe"])
    if args["rules"]:
        report = check_terminal_subcategory(pres, args["candidate"], universe, args["rules"], 4)
    else:
        report = check_terminal(pres, args["candidate"], universe, 4)
    assert report.terminal
    for x in enumerate_strings(pres, universe, 4):
        result = count_hom_classes(pres, x, args["candidate"], 8, max_len=6)
        assert not result.partial, x
        assert result.count == 1, (x, result.count)
