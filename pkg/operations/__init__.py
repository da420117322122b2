"""
Rewriting, confluence, equivalence and terminality engines
"""

from .rewrite import (
    TerminationVerdict, NotFound, find_redexes, apply_step, check_termination,
    normalize_good, good_reachable, good_derivations, find_derivation,
    enumerate_strings, reduction_graph,
)
from .moves import (
    Exchange, EquationInstance, ExpandDerived, FoldDerived, ProofTrace,
    exchange_adjacent, match_whiskered,
)
from .equivalence import (
    Equal, Unknown, whisker, canonical_exchange_form, expand_derived,
    push_bad_after_good, has_bad_before_good, equivalent, congruence_neighbors,
    Diagram, DiagramVerdict, check_diagram,
)
from .confluence import (
    PairKind, CriticalPair, JoinCertificate, JoinedUnverified, Failed,
    ConfluenceReport, critical_pairs, certify_pair,
    check_good_confluence, check_bad_elimination,
)
from .terminality import (
    CERTIFIED, UNKNOWN, StringResult, TerminalityReport, check_terminal,
    check_terminal_subcategory, LawReport, verify_monad_laws, verify_adjunction_laws,
    HomClassCount, HomClassTable, count_hom_classes,
)

__all__ = [
    'TerminationVerdict', 'NotFound', 'find_redexes', 'apply_step', 'check_termination',
    'normalize_good', 'good_reachable', 'good_derivations', 'find_derivation',
    'enumerate_strings', 'reduction_graph',
    'Exchange', 'EquationInstance', 'ExpandDerived', 'FoldDerived', 'ProofTrace',
    'exchange_adjacent', 'match_whiskered',
    'Equal', 'Unknown', 'whisker', 'canonical_exchange_form', 'expand_derived',
    'push_bad_after_good', 'has_bad_before_good', 'equivalent', 'congruence_neighbors',
    'Diagram', 'DiagramVerdict', 'check_diagram',
    'PairKind', 'CriticalPair', 'JoinCertificate', 'JoinedUnverified', 'Failed',
    'ConfluenceReport', 'critical_pairs', 'certify_pair',
    'check_good_confluence', 'check_bad_elimination',
    'CERTIFIED', 'UNKNOWN', 'StringResult', 'TerminalityReport', 'check_terminal',
    'check_terminal_subcategory', 'LawReport', 'verify_monad_laws', 'verify_adjunction_laws',
    'HomClassCount', 'HomClassTable', 'count_hom_classes',
]
