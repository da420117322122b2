"""
Regular universes of strings

A universe is a regular expression over generator names (juxtaposition,
`|`, `*`, `+`, parentheses, and `1` or `()` for the empty word). Each
generator name is one symbol of a greenery fsm. The pattern is assembled
from single-symbol machines with greenery's concatenation, alternation and
star; typing and closure questions are answered with its intersection,
complement and emptiness operations.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from greenery.fsm import fsm, epsilon, null

from core.errors import UniverseError
from core.logging_setup import logger

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|([()|*+])|(1))")


def _tokenize(pattern):
    tokens = []
    pos = 0
    pattern = pattern.rstrip()
    while pos < len(pattern):
        match = _TOKEN.match(pattern, pos)
        if not match or match.end() == pos:
            raise UniverseError(f"bad character in universe pattern {pattern!r} at {pos}")
        name, op, one = match.groups()
        if name:
            tokens.append(("sym", name))
        elif op:
            tokens.append((op, op))
        elif one:
            tokens.append(("eps", "1"))
        pos = match.end()
    return tokens


def _symbol(name, alphabet):
    """fsm accepting the one-letter word `name`"""
    return fsm(
        alphabet=alphabet,
        states={0, 1, 2},
        initial=0,
        finals={1},
        map={
            0: {s: 1 if s == name else 2 for s in alphabet},
            1: {s: 2 for s in alphabet},
            2: {s: 2 for s in alphabet},
        },
    )


def _leading(alphabet, symbols, allow_empty):
    """fsm accepting words that start with one of `symbols` (and the empty word if allowed)"""
    return fsm(
        alphabet=alphabet,
        states={0, 1, 2},
        initial=0,
        finals={0, 1} if allow_empty else {1},
        map={
            0: {s: 1 if s in symbols else 2 for s in alphabet},
            1: {s: 1 for s in alphabet},
            2: {s: 2 for s in alphabet},
        },
    )


def _typing_machine(order, gens):
    """fsm accepting exactly the words whose adjacent generators compose"""
    alphabet = set(order)
    cells = {gens[s].dom for s in order} | {gens[s].cod for s in order}
    start, dead = ("start",), ("dead",)
    transitions = {
        start: {s: gens[s].dom for s in order},
        dead: {s: dead for s in order},
    }
    for cell in cells:
        transitions[cell] = {s: gens[s].dom if gens[s].cod == cell else dead for s in order}
    states = {start, dead} | cells
    return fsm(alphabet=alphabet, states=states, initial=start, finals=states - {dead},
               map=transitions)


class _PatternParser:
    """alt := cat ('|' cat)* ; cat := post* ; post := atom ('*'|'+')* ; atom := NAME | 1 | (alt)"""

    def __init__(self, pattern, alphabet):
        self.pattern = pattern
        self.alphabet = set(alphabet)
        self.tokens = _tokenize(pattern)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self):
        machine = self.alt()
        if self.pos != len(self.tokens):
            raise UniverseError(f"unexpected {self.tokens[self.pos][1]!r} in pattern {self.pattern!r}")
        return machine

    def alt(self):
        machine = self.cat()
        while self.peek() == "|":
            self.take()
            machine = machine | self.cat()
        return machine

    def cat(self):
        machine = None
        while self.peek() in ("sym", "eps", "("):
            part = self.post()
            machine = part if machine is None else machine + part
        return epsilon(self.alphabet) if machine is None else machine

    def post(self):
        machine = self.atom()
        while self.peek() in ("*", "+"):
            looped = machine.star()
            machine = looped if self.take()[0] == "*" else machine + looped
        return machine

    def atom(self):
        kind, value = self.take()
        if kind == "sym":
            if value not in self.alphabet:
                raise UniverseError(f"pattern {self.pattern!r} uses undeclared generator {value!r}")
            return _symbol(value, self.alphabet)
        if kind == "eps":
            return epsilon(self.alphabet)
        if kind == "(":
            inner = self.alt() if self.peek() != ")" else epsilon(self.alphabet)
            if self.peek() != ")":
                raise UniverseError(f"missing ')' in pattern {self.pattern!r}")
            self.take()
            return inner
        raise UniverseError(f"unexpected {value!r} in pattern {self.pattern!r}")


@dataclass(frozen=True)
class Universe:
    """
    Compiled universe. `order` lists the generator names in precedence
    order; walks over the machine follow it so enumeration is deterministic.
    States from which no accepted word is reachable are treated as absent.
    """
    name: str
    pattern: str
    machine: fsm = field(compare=False, repr=False, hash=False)
    order: tuple = ()
    base: str = None
    live: frozenset = field(default=frozenset(), compare=False, repr=False, hash=False)

    def accepts(self, gens):
        return self.machine.accepts(tuple(gens))

    @property
    def accepts_empty(self):
        return self.machine.initial in self.machine.finals

    def step(self, state, symbol):
        """State after `symbol`, or None when no accepted word continues this way"""
        nxt = self.machine.map.get(state, {}).get(symbol)
        return nxt if nxt in self.live else None

    def run(self, state, word):
        for symbol in word:
            if state is None:
                return None
            state = self.step(state, symbol)
        return state

    def _from(self, state):
        """The words accepted when starting in `state`"""
        if state is None:
            return null(self.machine.alphabet)
        m = self.machine
        return fsm(alphabet=m.alphabet, states=m.states, initial=state, finals=m.finals, map=m.map)

    def typed_prefixes(self, gens):
        """
        BFS over (state, boundary cell) pairs reachable by well-typed prefixes.
        Yields (state, cell, word) with the shortest word first; cell is None
        for the empty prefix.
        """
        start = (self.machine.initial, None)
        seen = {start}
        queue = deque([(start, ())])
        while queue:
            (state, cell), word = queue.popleft()
            yield state, cell, word
            for symbol in self.order:
                gen = gens[symbol]
                if cell is not None and gen.cod != cell:
                    continue
                nxt = (self.step(state, symbol), gen.dom)
                if nxt[0] is not None and nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, word + (symbol,)))

    def ill_typed_word(self, gens):
        """A matched word that violates adjacency, or None"""
        bad = self.machine & _typing_machine(self.order, gens).everythingbut()
        if bad.empty():
            return None
        return tuple(next(iter(bad.strings())))

    def closure_violation(self, rules, gens):
        """
        First (u, rule, v) with u.lhs.v in the universe and u.rhs.v outside,
        or None when the universe is closed under `rules`.
        Derived rules act on whole blocks: u and v must themselves lie in
        the universe.
        """
        alphabet = self.machine.alphabet
        for state, cell, u in self.typed_prefixes(gens):
            for rule in rules:
                if rule.is_derived and state not in self.machine.finals:
                    continue
                lhs, rhs = rule.lhs.gens, rule.rhs.gens
                after_lhs = self.run(state, lhs)
                if after_lhs is None:
                    continue
                leading = None
                if not lhs:
                    need = rule.lhs.cod
                    if cell is not None and cell != need:
                        continue
                    if cell is None:
                        symbols = {g for g in self.order if gens[g].cod == need}
                        leading = _leading(alphabet, symbols, self.base == need)
                elif cell is not None and gens[lhs[0]].cod != cell:
                    continue
                escapes = self._from(after_lhs) & self._from(self.run(state, rhs)).everythingbut()
                if rule.is_derived:
                    escapes = escapes & self.machine
                if leading is not None:
                    escapes = escapes & leading
                if not escapes.empty():
                    v = tuple(next(iter(escapes.strings())))
                    logger.debug(f"universe {self.name} not closed: {u} {rule.name} {v}")
                    return u, rule, v
        return None

    def words(self, max_len, gens):
        """Accepted well-typed words up to max_len, ordered by (length, precedence)"""
        layer = [((), self.machine.initial, None)]
        found = []
        for _ in range(max_len + 1):
            next_layer = []
            for word, state, cell in layer:
                if state in self.machine.finals:
                    found.append(word)
                for symbol in self.order:
                    gen = gens[symbol]
                    if cell is not None and gen.cod != cell:
                        continue
                    nxt = self.step(state, symbol)
                    if nxt is not None:
                        next_layer.append((word + (symbol,), nxt, gen.dom))
            layer = next_layer
        return found


def compile_universe(name, pattern, alphabet, base=None):
    """Compile a pattern over `alphabet` (generator names in precedence order)"""
    order = tuple(alphabet)
    machine = _PatternParser(pattern, order).parse()
    live = frozenset(state for state in machine.states if machine.islive(state))
    logger.debug(f"universe {name}: {len(machine.states)} states, {len(live)} live")
    return Universe(name, pattern, machine, order, base, live)
