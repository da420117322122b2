"""
End-to-end runs of the built-in presets, with oracle cross-checks
"""

import itertools

import pytest

from core.constants import EXIT_OK, EXIT_UNCERTIFIED, PRESET_NAMES
from core.errors import TypingError
from operations import Diagram, check_diagram, count_hom_classes, expand_derived, normalize_good
from parsers import SpecFile
from presentation import Derivation
from presentation.presets import preset_spec
from reports import run, strip_volatile


def test_intro_diagram_commutes(intro_spec):
    diagram = intro_spec.tasks[-1].args["diagram"]
    verdict = check_diagram(diagram, intro_spec.presentation)
    assert verdict.commutes, str(verdict)
    assert len(verdict.comparisons) == 5
    reference = diagram.paths()[0][1]
    for (path, d), (_, result) in zip(diagram.paths()[1:], verdict.comparisons):
        assert result.trace.replays(reference, d, intro_spec.presentation)


def test_wrong_diagram_is_rejected(composite):
    d = Derivation.identity(composite.string("P T"))
    diagram = Diagram("wrong", {"a": composite.string("P T"), "b": composite.string("T P")},
                      [("a", "b", d)], "a", "b")
    with pytest.raises(TypingError):
        check_diagram(diagram, composite)


def test_adjunction_rejects_ff(adjunction):
    with pytest.raises(TypingError):
        adjunction.validate_string(["F", "F"])


@pytest.mark.parametrize("ablated", ["assoc", "unitL", "unitR"])
def test_each_monad_equation_is_necessary(ablated):
    spec = preset_spec("monad")
    pres = spec.presentation.without_equations(ablated)
    report, code = run(SpecFile(pres, [t for t in spec.tasks if t.kind == "terminal"]), maxlen=3)
    assert code == EXIT_UNCERTIFIED
    assert any(r.verdict == "NotCertified" for r in report.records)


def test_mixed_strings_normalize_to_composite(composite):
    target = composite.string("P T")
    for n in range(2, 8):
        for word in itertools.product("PT", repeat=n):
            if set(word) != {"P", "T"}:
                continue
            normal, _ = normalize_good(composite.validate_string(word), composite)
            assert normal == target, word


@pytest.mark.slow
@pytest.mark.parametrize("name", ["monad", "composite-monad", "adjunction"])
def test_preset_runs_certify(name):
    report, code = run(preset_spec(name))
    assert code == EXIT_OK, [(r.task, r.verdict) for r in report.records]


@pytest.mark.slow
def test_intro_preset_paths_share_an_oracle_class(intro_spec):
    report, code = run(intro_spec)
    assert code == EXIT_OK
    diagram = intro_spec.tasks[-1].args["diagram"]
    pres = intro_spec.presentation
    routes = [expand_derived(d) for _, d in diagram.paths()]
    depth = max(len(d) for d in routes) + 2
    widest = max(len(s) for d in routes for s in d.strings())
    source, sink = routes[0].source, routes[0].target
    result = count_hom_classes(pres, source, sink, depth, max_len=widest)
    assert not result.partial
    assert {result.class_of(d) for d in routes} == {result.class_of(routes[0])}


@pytest.mark.slow
def test_oracle_single_class_at_depth_six(monad):
    result = count_hom_classes(monad, monad.string("T T T"), monad.string("T"), 6, max_len=4)
    assert result.count == 1


@pytest.mark.slow
@pytest.mark.parametrize("name", PRESET_NAMES)
def test_reports_are_deterministic(name):
    spec = preset_spec(name)
    first, _ = run(spec, maxlen=4)
    second, _ = run(spec, maxlen=4)
    assert strip_volatile(first.to_dict()) == strip_volatile(second.to_dict())
