"""Textual proof scripts.

A script is a sequence of theorem blocks::

    theorem mp_demo
    context: p, p -> q
    1: p           ax
    2: p -> q      ax
    3: q           mp 2 1

Line syntax is ``<idx>: <formula>  <rule> [<args>]``.  Rules:

* ``ax`` - the formula is a context member
* ``pl1 pl2 pl3 k t s4 b`` - axiom instances; instantiation formulas may be
  given comma-separated after the rule, otherwise they are read off the line
  formula by structural matching
* ``mp i j`` - line ``i`` proves ``A -> B`` and line ``j`` proves ``A``
* ``nec i`` - necessitation of line ``i``
* ``thm name`` - import the conclusion of an earlier empty-context block

All lines of a block share the block's context.  A missing or empty
``context:`` line means the empty context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .formula import Formula, encode
from .hilbert import (
    AXIOM_ARITY,
    CheckError,
    Derivation,
    Judgment,
    Mode,
    Rule,
    check,
    format_context,
    match_axiom,
)
from .syntax import SyntaxError_, parse, parse_list, pretty


class ScriptSyntaxError(Exception):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


@dataclass
class Line:
    lineno: int
    idx: int
    formula: Formula
    rule: Rule
    args: tuple = ()  # formulas for axiom rules
    refs: tuple = ()  # line indices for mp/nec
    name: Optional[str] = None  # thm target


@dataclass
class Block:
    name: str
    lineno: int
    context: frozenset = frozenset()
    lines: list = field(default_factory=list)


@dataclass
class BlockResult:
    name: str
    judgment: Optional[Judgment] = None
    error: Optional[str] = None
    lineno: Optional[int] = None
    derivation: Optional[Derivation] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def report(self) -> str:
        if self.ok:
            return f"theorem {self.name}: {self.judgment}"
        return f"theorem {self.name}: FAILED at line {self.lineno}: {self.error}"


_RULE_WORDS = {r.value: r for r in Rule}
_LINE_RE = re.compile(r"\s*(\d+)\s*:(.*)$")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


def parse_script(text: str, sigma: Optional[int] = None) -> list[Block]:
    blocks: list[Block] = []
    current: Optional[Block] = None
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.strip()
        if head.startswith("theorem ") or head == "theorem":
            name = head[len("theorem"):].strip()
            if not _NAME_RE.match(name):
                raise ScriptSyntaxError(lineno, f"bad theorem name {name!r}")
            if name in names:
                raise ScriptSyntaxError(lineno, f"duplicate theorem name {name!r}")
            current = Block(name, lineno)
            blocks.append(current)
            names.add(name)
            continue
        if current is None:
            raise ScriptSyntaxError(lineno, "expected 'theorem <name>' before proof lines")
        if head.startswith("context:"):
            if current.lines:
                raise ScriptSyntaxError(lineno, "context must come before the proof lines")
            try:
                current.context = frozenset(parse_list(head[len("context:"):], sigma))
            except SyntaxError_ as e:
                raise ScriptSyntaxError(lineno, f"context: {e}") from None
            continue
        current.lines.append(_parse_line(lineno, line, current, names, sigma))
        if current.lines[-1].idx <= (current.lines[-2].idx if len(current.lines) > 1 else 0):
            raise ScriptSyntaxError(lineno, "line indices must be positive and strictly increasing")
    return blocks


def _parse_line(lineno: int, line: str, block: Block, known: set, sigma) -> Line:
    m = _LINE_RE.match(line)
    if not m:
        raise ScriptSyntaxError(lineno, "expected '<idx>: <formula> <rule> [<args>]'")
    idx = int(m.group(1))
    rest = m.group(2)
    # the rule is the first whitespace-separated word that names a rule;
    # rule names never lex as formula tokens
    rule_at = None
    for wm in re.finditer(r"\S+", rest):
        if wm.group() in _RULE_WORDS:
            rule_at = wm
            break
    if rule_at is None:
        raise ScriptSyntaxError(lineno, "missing rule (ax, pl1, pl2, pl3, k, t, s4, b, mp, nec, thm)")
    ftext, rule, argtext = rest[: rule_at.start()], _RULE_WORDS[rule_at.group()], rest[rule_at.end():].strip()
    try:
        formula = parse(ftext, sigma)
    except SyntaxError_ as e:
        raise ScriptSyntaxError(lineno, f"formula: {e}") from None
    earlier = {ln.idx for ln in block.lines}

    def ref(tok: str) -> int:
        if not tok.isdigit():
            raise ScriptSyntaxError(lineno, f"expected a line index, got {tok!r}")
        i = int(tok)
        if i not in earlier:
            raise ScriptSyntaxError(lineno, f"line {i} is not an earlier line of this block")
        return i

    if rule is Rule.AX:
        if argtext:
            raise ScriptSyntaxError(lineno, "ax takes no arguments")
        return Line(lineno, idx, formula, rule)
    if rule in AXIOM_ARITY:
        args: tuple = ()
        if argtext:
            try:
                args = tuple(parse_list(argtext, sigma))
            except SyntaxError_ as e:
                raise ScriptSyntaxError(lineno, f"arguments: {e}") from None
            if len(args) != AXIOM_ARITY[rule]:
                raise ScriptSyntaxError(
                    lineno, f"{rule.value} takes {AXIOM_ARITY[rule]} arguments, got {len(args)}"
                )
        return Line(lineno, idx, formula, rule, args=args)
    toks = argtext.split()
    if rule is Rule.MP:
        if len(toks) != 2:
            raise ScriptSyntaxError(lineno, "mp takes two line indices")
        return Line(lineno, idx, formula, rule, refs=(ref(toks[0]), ref(toks[1])))
    if rule is Rule.NEC:
        if len(toks) != 1:
            raise ScriptSyntaxError(lineno, "nec takes one line index")
        return Line(lineno, idx, formula, rule, refs=(ref(toks[0]),))
    if len(toks) != 1 or not _NAME_RE.match(toks[0]):
        raise ScriptSyntaxError(lineno, "thm takes one theorem name")
    if toks[0] not in known or toks[0] == block.name:
        raise ScriptSyntaxError(lineno, f"thm {toks[0]} does not name an earlier theorem block")
    return Line(lineno, idx, formula, rule, name=toks[0])


def lower_and_check(
    blocks: Iterable[Block],
    mode: Mode = Mode.RESTRICTED,
    library: Optional[dict] = None,
) -> list[BlockResult]:
    """Check blocks in order; successful ones become importable by ``thm``."""
    library = dict(library or {})
    results = []
    for block in blocks:
        res = _check_block(block, mode, library)
        if res.ok:
            library[block.name] = res.judgment
        results.append(res)
    return results


def _check_block(block: Block, mode: Mode, library: dict) -> BlockResult:
    if not block.lines:
        return BlockResult(block.name, error="empty proof", lineno=block.lineno)
    ctx = block.context
    nodes: dict[int, Derivation] = {}
    done: dict = {}
    for ln in block.lines:
        try:
            node = _lower_line(ln, ctx, nodes)
            check(node, mode, library, done)
        except CheckError as e:
            return BlockResult(block.name, error=str(e), lineno=ln.lineno)
        nodes[ln.idx] = node
    last = nodes[block.lines[-1].idx]
    return BlockResult(block.name, judgment=last.judgment, derivation=last)


def _lower_line(ln: Line, ctx: frozenset, nodes: dict) -> Derivation:
    f = ln.formula
    if ln.rule is Rule.AX:
        return Derivation(Rule.AX, ctx, f, args=(f,))
    if ln.rule in AXIOM_ARITY:
        args = ln.args
        if not args:
            args = match_axiom(ln.rule, f)
            if args is None:
                raise CheckError("schema", f"{f} is not an instance of {ln.rule.value}")
        return Derivation(ln.rule, ctx, f, args=tuple(args))
    if ln.rule is Rule.MP:
        return Derivation(Rule.MP, ctx, f, premises=(nodes[ln.refs[0]], nodes[ln.refs[1]]))
    if ln.rule is Rule.NEC:
        return Derivation(Rule.NEC, ctx, f, premises=(nodes[ln.refs[0]],))
    return Derivation(Rule.THM, ctx, f, name=ln.name)


def check_script(text: str, mode: Mode = Mode.RESTRICTED, sigma: Optional[int] = None) -> list[BlockResult]:
    return lower_and_check(parse_script(text, sigma), mode)


# -- serialization ---------------------------------------------------------------


def to_script(name: str, d: Derivation) -> str:
    """Render a derivation as a block.

    Nodes proving the same judgment share one line.  Every node must carry
    the root's context, except necessitation premises with the empty
    context when the root context is empty too.
    """
    ctx = d.context
    lines: list[str] = []
    index: dict[Judgment, int] = {}

    def emit(node: Derivation) -> int:
        key = node.judgment
        if key in index:
            return index[key]
        if node.context != ctx:
            raise ValueError(
                f"node context {format_context(node.context)} differs from block context"
            )
        refs = [emit(c) for c in node.premises]
        n = len(lines) + 1
        text = pretty(node.conclusion)
        if node.rule is Rule.MP:
            tail = f"mp {refs[0]} {refs[1]}"
        elif node.rule is Rule.NEC:
            tail = f"nec {refs[0]}"
        elif node.rule is Rule.THM:
            tail = f"thm {node.name}"
        else:
            tail = node.rule.value
        lines.append(f"{n}: {text}  {tail}")
        index[key] = n
        return n

    emit(d)
    header = [f"theorem {name}"]
    if ctx:
        header.append("context: " + ", ".join(pretty(p) for p in sorted(ctx, key=encode)))
    return "\n".join(header + lines) + "\n"
