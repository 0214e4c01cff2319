"""The ``dagfile v1`` text format.

    dagfile v1
    # comment
    var Traffic levels=Normal,Medium,Heavy ref=Normal
    edge SocialImpact -> Traffic
    cpt Traffic | No : 0.5,0.3,0.2

``var`` and ``edge`` lines define a graph (the ``var`` block alone doubles as
a standalone schema file). ``cpt`` lines extend the format to a full
structural model; they are collected here verbatim-parsed and interpreted by
``causeway.scm``. Parent combinations are comma-joined levels in lexicographic
parent-name order; root variables omit the ``| combo`` part.

All parse errors carry line numbers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from causeway.errors import ParseError
from causeway.graph import CausalDag, Variable

HEADER = "dagfile v1"

_NAME = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.-]*$")


@dataclass
class CptLine:
    """One raw ``cpt`` line: child, parent-level combo, probabilities."""

    child: str
    combo: tuple[str, ...]
    probs: tuple[float, ...]
    line: int


@dataclass
class ParsedDagfile:
    variables: list[Variable] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    cpt_lines: list[CptLine] = field(default_factory=list)

    def graph(self) -> CausalDag:
        return CausalDag(self.variables, self.edges)


def _check_name(token: str, lineno: int) -> str:
    if not _NAME.match(token):
        raise ParseError(f"invalid name {token!r}", lineno)
    return token


def parse(text: str) -> ParsedDagfile:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"missing header {HEADER!r}", 1)
    out = ParsedDagfile()
    seen_vars: set[str] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "var":
            out.variables.append(_parse_var(tokens, lineno, seen_vars))
        elif kind == "edge":
            if len(tokens) != 4 or tokens[2] != "->":
                raise ParseError("expected: edge <src> -> <dst>", lineno)
            out.edges.append((_check_name(tokens[1], lineno), _check_name(tokens[3], lineno)))
        elif kind == "cpt":
            out.cpt_lines.append(_parse_cpt(line, lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    return out


def _parse_var(tokens: list[str], lineno: int, seen: set[str]) -> Variable:
    if len(tokens) < 3:
        raise ParseError("expected: var <name> levels=<l1,l2,...> [ref=<level>]", lineno)
    name = _check_name(tokens[1], lineno)
    if name in seen:
        raise ParseError(f"variable {name!r} declared twice", lineno)
    seen.add(name)
    levels: tuple[str, ...] | None = None
    ref = None
    for tok in tokens[2:]:
        if tok.startswith("levels="):
            levels = tuple(t for t in tok[len("levels="):].split(",") if t)
        elif tok.startswith("ref="):
            ref = tok[len("ref="):]
        else:
            raise ParseError(f"unexpected token {tok!r} on var line", lineno)
    if not levels or len(levels) < 2:
        raise ParseError(f"variable {name!r} needs levels=<l1,l2,...> with >= 2 levels", lineno)
    if ref is not None and ref not in levels:
        raise ParseError(f"ref={ref!r} is not a declared level of {name!r}", lineno)
    try:
        return Variable(name, levels, ref or levels[0])
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _parse_cpt(line: str, lineno: int) -> CptLine:
    body = line[len("cpt"):].strip()
    if ":" not in body:
        raise ParseError("expected: cpt <child> [| <combo>] : <p1,p2,...>", lineno)
    head, _, probs_part = body.rpartition(":")
    head = head.strip()
    if "|" in head:
        child_part, _, combo_part = head.partition("|")
        combo = tuple(t.strip() for t in combo_part.split(",") if t.strip())
        if not combo:
            raise ParseError("empty parent combination after '|'", lineno)
    else:
        child_part, combo = head, ()
    child = _check_name(child_part.strip(), lineno)
    try:
        probs = tuple(float(t) for t in probs_part.split(",") if t.strip())
    except ValueError:
        raise ParseError(f"bad probability list {probs_part.strip()!r}", lineno) from None
    if not probs:
        raise ParseError("empty probability list", lineno)
    return CptLine(child, combo, probs, lineno)


def format_graph(g: CausalDag, comment: str | None = None) -> str:
    lines = [HEADER]
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    for v in g.variables:
        lines.append(f"var {v.name} levels={','.join(v.levels)} ref={v.reference_level}")
    for src, dst in sorted(g.edges):
        lines.append(f"edge {src} -> {dst}")
    return "\n".join(lines) + "\n"


def fingerprint(g: CausalDag) -> str:
    """Stable identity of a graph: hash of its canonical dagfile text."""
    import hashlib

    return hashlib.sha256(format_graph(g).encode("utf-8")).hexdigest()[:16]


def load_graph(path) -> CausalDag:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read()).graph()
