"""
Presentations of rewrite categories

build_presentation turns raw declarations (as produced by the spec-file
parser or the presets) into an immutable, fully typed Presentation,
collecting every declaration error before failing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from core.errors import TypingError, PresentationError, UniverseError, RewriteCheckerError
from core.logging_setup import logger
from .strings import Cell, Gen, TypedString
from .rules import Rule, DerivedRule, Step, Derivation, Equation
from .universe import compile_universe


@dataclass(frozen=True)
class StepSpec:
    """Unresolved step `(left) rule (right)`; contexts are generator-name tuples"""
    left: tuple
    rule: str
    right: tuple


@dataclass(frozen=True)
class DerivationSpec:
    """Unresolved derivation: `id(identity)` when identity is set, else steps"""
    steps: tuple = ()
    identity: tuple = None


@dataclass(frozen=True)
class ClosureVerdict:
    closed: bool
    witness: TypedString = None
    step: Step = None

    def __str__(self):
        if self.closed:
            return "Closed"
        return f"NotClosed: {self.witness} => {self.step.target} via {self.step}"


@dataclass(frozen=True, eq=False)
class Presentation:
    cells: dict
    gens: dict
    rules: dict
    derived_rules: dict = field(default_factory=dict)
    equations: dict = field(default_factory=dict)
    universes: dict = field(default_factory=dict)
    precedence: tuple = ()
    name: str = "presentation"

    # strings

    def validate_string(self, gen_names, base_cell=None):
        """Typed string for a sequence of generator names, checked left to right"""
        names = tuple(gen_names)
        if len(names) == 1 and names[0].startswith("1_"):
            base_cell, names = names[0][2:], ()
        for i, name in enumerate(names):
            if name not in self.gens:
                raise TypingError(f"unknown generator {name!r} at position {i}", position=i)
        if not names:
            if base_cell is None:
                raise TypingError("empty string needs a base cell")
            if base_cell not in self.cells:
                raise TypingError(f"unknown cell {base_cell!r}")
            return TypedString.identity(base_cell)
        for i in range(len(names) - 1):
            outer, inner = self.gens[names[i]], self.gens[names[i + 1]]
            if outer.dom != inner.cod:
                raise TypingError(
                    f"dom {outer.name} ≠ cod {inner.name} at position {i}"
                    f" ({outer.dom} vs {inner.cod})", position=i)
        boundaries = tuple(self.gens[n].cod for n in names) + (self.gens[names[-1]].dom,)
        return TypedString(names, boundaries)

    def string(self, text, base_cell=None):
        """Parse a whitespace-separated string such as 'P T' or '1_C'"""
        return self.validate_string(text.split(), base_cell)

    def identity(self, cell):
        return TypedString.identity(cell)

    @property
    def single_cell(self):
        return next(iter(self.cells)) if len(self.cells) == 1 else None

    # rules

    def rule(self, name):
        if name in self.rules:
            return self.rules[name]
        if name in self.derived_rules:
            return self.derived_rules[name]
        raise RewriteCheckerError(f"unknown rule {name!r}")

    @property
    def base_rules(self):
        return list(self.rules.values())

    @property
    def good_rules(self):
        return [r for r in self.rules.values() if not r.is_bad]

    @property
    def bad_rules(self):
        return [r for r in self.rules.values() if r.is_bad]

    def rule_rank(self, name):
        order = list(self.rules) + list(self.derived_rules)
        return order.index(name) if name in order else len(order)

    def measure(self, s):
        """(length, word under precedence) termination key"""
        rank = {g: i for i, g in enumerate(self.precedence)}
        return (len(s), tuple(rank[g] for g in s.gens))

    def universe(self, name):
        if name not in self.universes:
            raise UniverseError(f"unknown universe {name!r}")
        return self.universes[name]

    def equation(self, name):
        return self.equations[name]

    # variants

    def without_equations(self, *names):
        """Ablated copy without the named equations"""
        missing = [n for n in names if n not in self.equations]
        if missing:
            raise RewriteCheckerError(f"unknown equations {missing}")
        kept = {k: v for k, v in self.equations.items() if k not in names}
        logger.debug(f"{self.name}: ablating equations {list(names)}")
        return replace(self, equations=kept, name=f"{self.name}-without-{'-'.join(names)}")

    def with_rules(self, *rules):
        """Copy with extra base rules (each checked for endpoint typing)"""
        extra = dict(self.rules)
        for rule in rules:
            if rule.lhs.dom != rule.rhs.dom or rule.lhs.cod != rule.rhs.cod:
                raise TypingError(f"rule {rule.name}: endpoint mismatch")
            extra[rule.name] = rule
        return replace(self, rules=extra, name=f"{self.name}-extended")

    def summary(self):
        return (f"{self.name}: {len(self.cells)} cells, {len(self.gens)} gens, "
                f"{len(self.rules)} rules, {len(self.equations)} equations, "
                f"{len(self.derived_rules)} derived rules")


def validate_string(presentation, gen_names, base_cell=None):
    return presentation.validate_string(gen_names, base_cell)


def resolve_derivation(presentation, spec, rules=None):
    """Resolve a DerivationSpec against the presentation (or an explicit rule table)"""
    table = rules if rules is not None else {**presentation.rules, **presentation.derived_rules}
    if spec.identity is not None:
        return Derivation.identity(presentation.validate_string(spec.identity))
    if not spec.steps:
        raise TypingError("derivation has neither steps nor an identity string")
    steps = []
    for i, step_spec in enumerate(spec.steps):
        if step_spec.rule not in table:
            raise TypingError(f"unknown rule {step_spec.rule!r} in step {i}", position=i)
        rule = table[step_spec.rule]
        left = presentation.validate_string(step_spec.left, rule.lhs.cod)
        right = presentation.validate_string(step_spec.right, rule.lhs.dom)
        steps.append(Step(left, rule, right))
    return Derivation(steps[0].source, tuple(steps))


def build_presentation(cells, gens, rules, derived_rules=(), equations=(), universes=(),
                       precedence=None, name="presentation"):
    """
    Validate raw declarations and build a Presentation.

    cells: names; gens: (name, dom, cod); rules: (name, lhs, rhs) with lhs/rhs
    as generator-name tuples (or ('1_C',)); derived_rules: (name, lhs, rhs,
    DerivationSpec); equations: (name, DerivationSpec, DerivationSpec);
    universes: (name, pattern); precedence: generator names, lowest first.
    """
    errors = []
    cell_table = {}
    for cell in cells:
        if cell in cell_table:
            errors.append(f"cell {cell}: duplicate name")
        cell_table[cell] = Cell(cell)

    gen_table = {}
    for gen_name, dom, cod in gens:
        if gen_name in gen_table:
            errors.append(f"gen {gen_name}: duplicate name")
        for end in (dom, cod):
            if end not in cell_table:
                errors.append(f"gen {gen_name}: unknown cell {end!r}")
        gen_table[gen_name] = Gen(gen_name, dom, cod)

    order = tuple(precedence) if precedence else tuple(gen_table)
    if sorted(order) != sorted(gen_table):
        errors.append(f"precedence {' < '.join(order)}: must list every generator exactly once")
        order = tuple(gen_table)

    pres = Presentation(cell_table, gen_table, {}, precedence=order, name=name)
    if errors:
        # strings cannot be checked against a broken signature
        raise PresentationError(errors)

    def typed(label, names, side):
        try:
            return pres.validate_string(names)
        except TypingError as e:
            errors.append(f"{label}: ill-typed {side}: {e}")
            return None

    rule_table = {}
    for rule_name, lhs_names, rhs_names in rules:
        if rule_name in rule_table:
            errors.append(f"rule {rule_name}: duplicate name")
            continue
        lhs = typed(f"rule {rule_name}", lhs_names, "lhs")
        rhs = typed(f"rule {rule_name}", rhs_names, "rhs")
        if lhs is None or rhs is None:
            continue
        if lhs.dom != rhs.dom or lhs.cod != rhs.cod:
            errors.append(f"rule {rule_name}: endpoint mismatch: {lhs} is {lhs.dom}->{lhs.cod},"
                          f" {rhs} is {rhs.dom}->{rhs.cod}")
            continue
        rule_table[rule_name] = Rule(rule_name, lhs, rhs)

    derived_table = {}
    later = {d[0] for d in derived_rules}
    for rule_name, lhs_names, rhs_names, body_spec in derived_rules:
        label = f"defrule {rule_name}"
        if rule_name in rule_table or rule_name in derived_table:
            errors.append(f"{label}: duplicate name")
            continue
        referenced = {s.rule for s in body_spec.steps}
        cyclic = (referenced & later) - set(derived_table)
        if cyclic:
            errors.append(f"{label}: cyclic derived rule (refers to {sorted(cyclic)})")
            continue
        lhs = typed(label, lhs_names, "lhs")
        rhs = typed(label, rhs_names, "rhs")
        if lhs is None or rhs is None:
            continue
        try:
            body = resolve_derivation(pres, body_spec, {**rule_table, **derived_table})
        except TypingError as e:
            errors.append(f"{label}: body: {e}")
            continue
        if not body.steps:
            errors.append(f"{label}: body must contain at least one step")
        elif body.source != lhs or body.target != rhs:
            errors.append(f"{label}: body runs {body.source} => {body.target}, declared {lhs} => {rhs}")
        else:
            derived_table[rule_name] = DerivedRule(rule_name, lhs, rhs, body)

    pres = replace(pres, rules=rule_table, derived_rules=derived_table)

    equation_table = {}
    for eq_name, left_spec, right_spec in equations:
        label = f"eq {eq_name}"
        if eq_name in equation_table:
            errors.append(f"{label}: duplicate name")
            continue
        try:
            left = resolve_derivation(pres, left_spec)
            right = resolve_derivation(pres, right_spec)
        except TypingError as e:
            errors.append(f"{label}: {e}")
            continue
        if left.source != right.source or left.target != right.target:
            errors.append(f"{label}: equation not parallel: {left.source} => {left.target}"
                          f" vs {right.source} => {right.target}")
            continue
        equation_table[eq_name] = Equation(eq_name, left, right)

    universe_table = {}
    for uni_name, pattern in universes:
        label = f"universe {uni_name}"
        try:
            universe = compile_universe(uni_name, pattern, order, pres.single_cell)
        except UniverseError as e:
            errors.append(f"{label}: {e}")
            continue
        bad_word = universe.ill_typed_word(gen_table)
        if bad_word is not None:
            errors.append(f"{label}: matches ill-typed word {' '.join(bad_word)}")
            continue
        if universe.accepts_empty and universe.base is None:
            errors.append(f"{label}: accepts the empty word but no base cell is determined")
            continue
        universe_table[uni_name] = universe

    if errors:
        for error in errors:
            logger.error(f"{name}: {error}")
        raise PresentationError(errors)

    pres = replace(pres, equations=equation_table, universes=universe_table)
    logger.debug(f"Built {pres.summary()}")
    return pres


def concat(s1, s2):
    return s1.concat(s2)


def check_universe_closed(presentation, universe, active_rules):
    """Closed, or NotClosed with a string in the universe and a step leaving it"""
    violation = universe.closure_violation(list(active_rules), presentation.gens)
    if violation is None:
        return ClosureVerdict(True)
    u, rule, v = violation
    words = u + rule.lhs.gens + v
    witness = presentation.validate_string(words, rule.lhs.cod if not words else None)
    step = Step.at(witness, len(u), rule)
    return ClosureVerdict(False, witness, step)
