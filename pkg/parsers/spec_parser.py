"""
Spec-file parser for the Rewrite Checker
Line-oriented declarations (cell, gen, rule, defrule, eq, universe,
precedence) followed by task lines (check ..., normalize ...)
"""

import re
from dataclasses import dataclass, field

from core.errors import SpecParseError, PresentationError, TypingError
from core.logging_setup import logger
from presentation import (
    StepSpec, DerivationSpec, build_presentation, resolve_derivation,
)
from operations.equivalence import Diagram


NAME = r"[A-Za-z_][A-Za-z0-9_']*"
STEP_RE = re.compile(r"\(([^()]*)\)\s*(" + NAME + r")\s*\(([^()]*)\)")
TERMINAL_RE = re.compile(
    r"(?P<string>.+?)\s+in\s+(?P<universe>" + NAME + r")"
    r"(?:\s+rules\s+(?P<rules>\S+))?(?:\s+maxlen\s+(?P<maxlen>\d+))?")


@dataclass
class Task:
    """One task line; `args` holds resolved strings, derivations or diagrams"""
    kind: str
    name: str
    args: dict
    line: int = None


@dataclass
class SpecFile:
    presentation: object
    tasks: list = field(default_factory=list)


@dataclass
class _Raw:
    """Declarations collected before the presentation can be built"""
    cells: list = field(default_factory=list)
    gens: list = field(default_factory=list)
    rules: list = field(default_factory=list)
    derived: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    universes: list = field(default_factory=list)
    precedence: list = None
    lines: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)


def _fail(message, line, text=None, token=None, offset=0):
    column = None
    if text is not None and token:
        index = text.find(token)
        column = offset + index + 1 if index >= 0 else None
    logger.error(f"spec parse error at line {line}: {message}")
    raise SpecParseError(message, line, column)


def _brace_depth(text):
    return text.count("{") - text.count("}")


def _logical_lines(text):
    """(line number, text) pairs; comments stripped, diagram blocks joined until their braces balance"""
    pending = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if pending is not None:
            start, parts, depth = pending
            parts.append(body)
            depth += _brace_depth(body)
            if depth <= 0:
                pending = None
                yield start, "\n".join(parts)
            else:
                pending = (start, parts, depth)
            continue
        if not body:
            continue
        if body.startswith("check diagram") and _brace_depth(body) > 0:
            pending = (number, [body], _brace_depth(body))
            continue
        yield number, body
    if pending is not None:
        _fail("diagram block is not closed with '}'", pending[0])


def _split_top(text, separator):
    """Split once at the first `separator` outside brackets"""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif depth == 0 and text.startswith(separator, i):
            return text[:i].strip(), text[i + len(separator):].strip()
    return None


def _words(text):
    """Generator names of a STR; `1_C` stays a single token"""
    words = tuple(text.split())
    if not words:
        raise ValueError("empty string (write 1_CELL for an identity)")
    return words


def parse_derivation(text, line=None, source=None):
    """
    DerivationSpec for `id(STR)` or `{ STEP ; ... }`.
    `source` is the whole line the fragment came from; error columns count from it.
    """
    body = text.strip()
    offset = max(source.find(body), 0) if source else 0
    if body.startswith("id(") and body.endswith(")"):
        try:
            return DerivationSpec(identity=_words(body[3:-1]))
        except ValueError as e:
            _fail(str(e), line, body, body, offset)
    if not (body.startswith("{") and body.endswith("}")):
        _fail(f"expected id(...) or {{ ... }}, got {body!r}", line, body, body, offset)
    steps = []
    for part in body[1:-1].split(";"):
        match = STEP_RE.fullmatch(part.strip())
        if match is None:
            _fail(f"malformed step {part.strip()!r}", line, body, part.strip(), offset)
        left, rule, right = match.groups()
        steps.append(StepSpec(tuple(left.split()), rule, tuple(right.split())))
    return DerivationSpec(steps=tuple(steps))


def _declaration(raw, number, line):
    keyword, _, rest = line.partition(" ")
    rest = rest.strip()
    if keyword == "cell":
        if not re.fullmatch(NAME, rest):
            _fail(f"bad cell name {rest!r}", number, line, rest)
        raw.cells.append(rest)
        raw.lines[f"cell {rest}"] = number
    elif keyword == "gen":
        match = re.fullmatch(rf"({NAME})\s*:\s*({NAME})\s*->\s*({NAME})", rest)
        if match is None:
            _fail("expected 'gen NAME : CELL -> CELL'", number, line, rest)
        raw.gens.append(match.groups())
        raw.lines[f"gen {match.group(1)}"] = number
    elif keyword in ("rule", "defrule"):
        match = re.fullmatch(rf"({NAME})\s*:\s*(.+)", rest)
        sides = _split_top(match.group(2), "=>") if match else None
        if sides is None:
            _fail(f"expected '{keyword} NAME : STR => STR'", number, line, rest)
        name, (lhs, rhs) = match.group(1), sides
        try:
            if keyword == "rule":
                raw.rules.append((name, _words(lhs), _words(rhs)))
            else:
                split = _split_top(rhs, "=")
                if split is None:
                    _fail("defrule needs '= DERIV' after its rhs", number, line, rhs)
                rhs, body = split
                raw.derived.append((name, _words(lhs), _words(rhs),
                                    parse_derivation(body, number, line)))
        except ValueError as e:
            _fail(f"{keyword} {name}: {e}", number, line, name)
        raw.lines[f"{keyword} {name}"] = number
    elif keyword == "eq":
        match = re.fullmatch(rf"({NAME})\s*:\s*(.+)", rest)
        sides = _split_top(match.group(2), "=") if match else None
        if sides is None:
            _fail("expected 'eq NAME : DERIV = DERIV'", number, line, rest)
        raw.equations.append((match.group(1), parse_derivation(sides[0], number, line),
                              parse_derivation(sides[1], number, line)))
        raw.lines[f"eq {match.group(1)}"] = number
    elif keyword == "universe":
        match = re.fullmatch(rf"({NAME})\s*=\s*(.+)", rest)
        if match is None:
            _fail("expected 'universe NAME = PATTERN'", number, line, rest)
        raw.universes.append(match.groups())
        raw.lines[f"universe {match.group(1)}"] = number
    elif keyword == "precedence":
        names = [n.strip() for n in rest.split("<")]
        if raw.precedence is not None or not all(re.fullmatch(NAME, n) for n in names):
            _fail("expected a single 'precedence a < b < ...'", number, line, rest)
        raw.precedence = names
    else:
        return False
    return True


def _build(raw, name):
    try:
        return build_presentation(raw.cells, raw.gens, raw.rules, raw.derived, raw.equations,
                                  raw.universes, raw.precedence, name)
    except PresentationError as e:
        located = []
        for error in e.errors:
            label = error.split(":", 1)[0]
            number = raw.lines.get(label)
            located.append(f"line {number}: {error}" if number else error)
        raise PresentationError(located) from None


def _string(presentation, text, number):
    try:
        return presentation.validate_string(_words(text), presentation.single_cell)
    except (TypingError, ValueError) as e:
        raise TypingError(f"line {number}: {e}") from None


def _resolve(presentation, spec, number):
    try:
        return resolve_derivation(presentation, spec)
    except TypingError as e:
        raise TypingError(f"line {number}: {e}", e.position) from None


def _diagram(presentation, name, body, number):
    """Diagram from a block body; entry i of the body sits on line `number + i`"""
    nodes, edges, ends = {}, [], {}
    for index, entry in enumerate(body.splitlines()):
        entry = entry.strip()
        if not entry:
            continue
        at = number + index
        keyword, _, rest = entry.partition(" ")
        if keyword == "node":
            match = re.fullmatch(rf"({NAME})\s*=\s*(.+)", rest.strip())
            if match is None:
                _fail("expected 'node NAME = STR'", at, entry, rest)
            nodes[match.group(1)] = _string(presentation, match.group(2), at)
        elif keyword == "edge":
            match = re.fullmatch(rf"({NAME})\s*->\s*({NAME})\s*:\s*(.+)", rest.strip())
            if match is None:
                _fail("expected 'edge N1 -> N2 : DERIV'", at, entry, rest)
            d = _resolve(presentation, parse_derivation(match.group(3), at, entry), at)
            edges.append((match.group(1), match.group(2), d))
        elif keyword in ("source", "sink"):
            ends[keyword] = rest.strip()
        else:
            _fail(f"unknown diagram entry {keyword!r}", at, entry, keyword)
    if set(ends) != {"source", "sink"}:
        _fail(f"diagram {name} needs both 'source' and 'sink'", number)
    return Diagram(name, nodes, edges, ends["source"], ends["sink"])


def _task(presentation, number, line):
    if line.startswith("normalize "):
        s = _string(presentation, line[len("normalize "):], number)
        return Task("normalize", f"normalize {s}", {"string": s}, number)
    if not line.startswith("check "):
        _fail(f"unknown directive {line.split()[0]!r}", number, line, line.split()[0])
    kind, _, rest = line[len("check "):].partition(" ")
    rest = rest.strip()
    if kind == "confluence":
        if rest:
            _fail("'check confluence' takes no arguments", number, line, rest)
        return Task("confluence", "confluence", {}, number)
    if kind == "terminal":
        match = TERMINAL_RE.fullmatch(rest)
        if match is None:
            _fail("expected 'check terminal STR in UNIVERSE [rules R1,R2] [maxlen N]'",
                  number, line, rest)
        s = _string(presentation, match.group("string"), number)
        if match.group("universe") not in presentation.universes:
            _fail(f"unknown universe {match.group('universe')!r}", number, line,
                  match.group("universe"))
        rules = match.group("rules")
        args = {
            "candidate": s,
            "universe": match.group("universe"),
            "rules": tuple(rules.split(",")) if rules else None,
            "maxlen": int(match.group("maxlen")) if match.group("maxlen") else None,
        }
        return Task("terminal", f"terminal {s} in {args['universe']}", args, number)
    if kind == "equiv":
        sides = _split_top(rest, "=")
        if sides is None:
            _fail("expected 'check equiv DERIV = DERIV'", number, line, rest)
        left = _resolve(presentation, parse_derivation(sides[0], number, line), number)
        right = _resolve(presentation, parse_derivation(sides[1], number, line), number)
        return Task("equiv", f"equiv line {number}", {"left": left, "right": right}, number)
    if kind == "laws":
        words = rest.split()
        if len(words) >= 4 and words[0] == "monad":
            s = _string(presentation, " ".join(words[1:-2]), number)
            args = {"structure": "monad", "t": s, "mu": words[-2], "eta": words[-1]}
            return Task("laws", f"laws monad {s}", args, number)
        if len(words) == 5 and words[0] == "adjunction":
            args = dict(zip(("structure", "f", "g", "eta", "eps"), words))
            return Task("laws", f"laws adjunction {words[1]} {words[2]}", args, number)
        _fail("expected 'check laws monad STR MU ETA' or 'check laws adjunction F G ETA EPS'",
              number, line, rest)
    if kind == "diagram":
        match = re.fullmatch(rf"({NAME})\s*\{{(.*)\}}", rest, re.DOTALL)
        if match is None:
            _fail("expected 'check diagram NAME { ... }'", number, line, rest)
        diagram = _diagram(presentation, match.group(1), match.group(2), number)
        return Task("diagram", f"diagram {diagram.name}", {"diagram": diagram}, number)
    _fail(f"unknown check {kind!r}", number, line, kind)


def parse_spec(text, name="spec"):
    """
    Parse a spec file into a SpecFile.
    Syntax problems raise SpecParseError; declaration typing problems raise
    PresentationError and task typing problems TypingError, each naming the line.
    """
    raw = _Raw()
    for number, line in _logical_lines(text):
        if line.startswith(("check ", "normalize ")):
            raw.tasks.append((number, line))
        elif raw.tasks:
            _fail("declarations must come before tasks", number, line, line.split()[0])
        elif not _declaration(raw, number, line):
            _fail(f"unknown directive {line.split()[0]!r}", number, line, line.split()[0])
    if not raw.cells:
        _fail("no cell declared", 1)
    presentation = _build(raw, name)
    tasks = [_task(presentation, number, line) for number, line in raw.tasks]
    logger.info(f"Parsed spec {name}: {presentation.summary()}, {len(tasks)} tasks")
    return SpecFile(presentation, tasks)


def parse_spec_file(path):
    """Read and parse a spec file from disk"""
    logger.info(f"Reading spec file: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Failed to read spec file {path}: {e}")
        raise SpecParseError(f"cannot read {path}: {e}") from None
    return parse_spec(text, name=path)
