"""
Presentations of rewrite categories: typed strings, rules, derivations,
equations and regular universes
"""

from .strings import Cell, Gen, TypedString
from .rules import (
    Rule, DerivedRule, RuleClass, Step, Derivation, Equation,
    classify, intervals_overlap,
)
from .universe import Universe, compile_universe
from .sig import (
    Presentation, StepSpec, DerivationSpec, ClosureVerdict,
    build_presentation, validate_string, resolve_derivation, concat,
    check_universe_closed,
)

__all__ = [
    'Cell',
    'Gen',
    'TypedString',
    'Rule',
    'DerivedRule',
    'RuleClass',
    'Step',
    'Derivation',
    'Equation',
    'classify',
    'intervals_overlap',
    'Universe',
    'compile_universe',
    'Presentation',
    'StepSpec',
    'DerivationSpec',
    'ClosureVerdict',
    'build_presentation',
    'validate_string',
    'resolve_derivation',
    'concat',
    'check_universe_closed',
]
