"""
Tests for redexes, termination, normalization and derivation search
"""

import itertools

import networkx as nx
import pytest

from core.errors import TypingError
from operations import (
    NotFound, find_redexes, check_termination, normalize_good, good_derivations,
    find_derivation, enumerate_strings, reduction_graph, whisker,
)
from presentation import Rule, Step


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield letters


def test_unit_rule_matches_at_every_boundary(monad):
    found = find_redexes(monad.string("T"), [monad.rule("eta")])
    assert [step.position for step in found] == [0, 1]


def test_mu_matches_twice_in_t_cubed(monad):
    found = find_redexes(monad.string("T T T"), [monad.rule("mu")])
    assert [step.position for step in found] == [0, 1]


def test_unit_rule_respects_cells(adjunction):
    # eta needs cell C; F G F has C only at its two ends
    found = find_redexes(adjunction.string("F G F"), [adjunction.rule("eta")])
    assert [step.position for step in found] == [1, 3]


def test_whiskered_step(monad):
    t = monad.string("T")
    step = Step(monad.identity("A"), monad.rule("mu"), t)
    assert step.source.gens == ("T", "T", "T")
    assert step.target.gens == ("T", "T")
    assert str(step) == "() mu (T)"


def test_whiskering_respects_typing(adjunction, derive):
    d = derive(adjunction, "F G", (0, "eps"))
    widened = whisker(d, adjunction.string("G"), adjunction.identity("D"))
    assert widened.source.gens == ("G", "F", "G")
    with pytest.raises(TypingError):
        whisker(d, adjunction.string("F"), adjunction.identity("D"))


def test_presets_terminate(monad, composite, adjunction):
    for pres in (monad, composite, adjunction):
        assert check_termination(pres).terminating


def test_swap_rule_breaks_termination(composite):
    swap = Rule("swap", composite.string("P T"), composite.string("T P"))
    verdict = check_termination(composite.with_rules(swap))
    assert not verdict.terminating
    assert verdict.offending.name == "swap"


def test_good_steps_decrease_measure(composite):
    for letters in words("PT", 6):
        s = composite.validate_string(letters, "A")
        for step in find_redexes(s, composite.good_rules):
            assert composite.measure(step.target) < composite.measure(step.source)


def test_normalize_composite_strings(composite):
    for letters in words("PT", 7):
        if "P" in letters and "T" in letters:
            s = composite.validate_string(letters)
            normal, d = normalize_good(s, composite)
            assert normal.gens == ("P", "T")
            assert d.target == normal


def test_normalization_is_strategy_independent(composite):
    for letters in words("PT", 7):
        s = composite.validate_string(letters, "A")
        left, _ = normalize_good(s, composite, strategy="leftmost")
        right, _ = normalize_good(s, composite, strategy="rightmost")
        assert left == right


def test_good_derivation_length_bound(composite):
    for letters in words("PT", 6):
        if not letters:
            continue
        inversions = sum(1 for i, j in itertools.combinations(range(len(letters)), 2)
                         if letters[i] == "T" and letters[j] == "P")
        s = composite.validate_string(letters)
        graph = nx.DiGraph(reduction_graph(s, composite.good_rules))
        assert nx.dag_longest_path_length(graph) <= inversions + len(letters) - 1


def test_good_derivations_are_maximal(composite):
    s = composite.string("T P T")
    found = good_derivations(s, composite)
    assert found
    assert all(d.target.gens == ("P", "T") for d in found)
    assert max(len(d) for d in found) <= 1 + 3 - 1


def test_find_derivation_inserts_units(composite):
    d = find_derivation(composite.identity("A"), composite.string("P T"), composite)
    assert [step.rule.name for step in d.steps] == ["etaT", "etaP"]
    assert d.target.gens == ("P", "T")


def test_find_derivation_by_normalizing(monad):
    d = find_derivation(monad.string("T T T T"), monad.string("T"), monad)
    assert d.rule_counts() == {"mu": 3}


def test_adjunction_witnesses_use_no_unit(adjunction):
    universe = adjunction.universe("Fwords")
    for s in enumerate_strings(adjunction, universe, 7):
        d = find_derivation(s, adjunction.string("F"), adjunction)
        assert "eta" not in d.rule_counts()


def test_find_derivation_reports_not_found(monad):
    result = find_derivation(monad.identity("A"), monad.string("T"), monad,
                             rules=[monad.rule("mu")])
    assert isinstance(result, NotFound)
    assert "exhausted" in result.reason


def test_find_derivation_rejects_other_homs(adjunction):
    with pytest.raises(TypingError):
        find_derivation(adjunction.string("F"), adjunction.string("G"), adjunction)


def test_enumerate_monad_universe(monad):
    assert len(enumerate_strings(monad, monad.universe("Tstar"), 7)) == 8
    assert len(enumerate_strings(monad, monad.universe("Tplus"), 7)) == 7


def test_reduction_graph_of_t_cubed(monad):
    graph = reduction_graph(monad.string("T T T"), [monad.rule("mu")])
    assert graph.number_of_nodes() == 3
    assert graph.number_of_edges() == 3
