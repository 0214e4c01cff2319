"""Causal DAG representation and exact graph algorithms.

Covers DAG validation, simple-trail enumeration, d-separation (via the
reachability kernel in ``causeway._core``), back-door trails and criterion,
minimal adjustment sets, and graph-implied independence claims.

Graphs are immutable after construction; every operation is a pure function,
and all orderings are canonical (lexicographic on variable names) so reports
diff cleanly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from causeway import _core
from causeway.errors import (
    CycleDetected,
    DuplicateEdge,
    OverlappingRoles,
    SelfLoop,
    UnknownEndpoint,
    UnknownVariable,
)

FORWARD = "forward"   # step traverses an edge source -> target
BACKWARD = "backward"  # step traverses an edge against its direction


@dataclass(frozen=True)
class Variable:
    """A named categorical variable with an ordered level set."""

    name: str
    levels: tuple[str, ...]
    reference_level: str = ""

    def __post_init__(self):
        if len(self.levels) < 2:
            raise ValueError(f"variable {self.name!r} needs >= 2 levels")
        if len(set(self.levels)) != len(self.levels):
            raise ValueError(f"variable {self.name!r} has duplicate levels")
        if not self.reference_level:
            object.__setattr__(self, "reference_level", self.levels[0])
        if self.reference_level not in self.levels:
            raise ValueError(
                f"reference level {self.reference_level!r} not among levels of {self.name!r}"
            )


@dataclass(frozen=True)
class SeparationQuery:
    """A conditional-independence claim: x independent of y given z."""

    x: str
    y: str
    z: frozenset[str]

    def __str__(self):
        given = ", ".join(sorted(self.z)) if self.z else "{}"
        return f"{self.x} _||_ {self.y} | {given}"


@dataclass(frozen=True)
class TrailPath:
    """An undirected simple path with per-step edge orientations."""

    nodes: tuple[str, ...]
    directions: tuple[str, ...]

    def __post_init__(self):
        if len(self.nodes) < 2 or len(self.directions) != len(self.nodes) - 1:
            raise ValueError("malformed trail")

    def colliders(self) -> list[str]:
        """Internal nodes with both adjacent arrows pointing in."""
        out = []
        for i in range(1, len(self.nodes) - 1):
            if self.directions[i - 1] == FORWARD and self.directions[i] == BACKWARD:
                out.append(self.nodes[i])
        return out

    def __str__(self):
        parts = [self.nodes[0]]
        for step, node in zip(self.directions, self.nodes[1:]):
            parts.append(" -> " if step == FORWARD else " <- ")
            parts.append(node)
        return "".join(parts)


@dataclass(frozen=True)
class AdjustmentSet:
    """A variable set certified by the back-door criterion for (treatment, outcome)."""

    treatment: str
    outcome: str
    variables: tuple[str, ...]

    def __str__(self):
        return "{" + ", ".join(self.variables) + "}" if self.variables else "{}"


class CausalDag:
    """Immutable causal DAG over named categorical variables.

    Construct through :func:`validate_dag` (or the constructor, which runs the
    same checks). Variable order is canonicalized to lexicographic.
    """

    def __init__(self, variables: Iterable[Variable], edges: Iterable[tuple[str, str]]):
        variables = sorted(variables, key=lambda v: v.name)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {dupes}")
        self._variables: tuple[Variable, ...] = tuple(variables)
        self._index = {name: i for i, name in enumerate(names)}

        seen = set()
        for src, dst in edges:
            if src not in self._index:
                raise UnknownEndpoint(src)
            if dst not in self._index:
                raise UnknownEndpoint(dst)
            if src == dst:
                raise SelfLoop(src)
            if (src, dst) in seen:
                raise DuplicateEdge(src, dst)
            seen.add((src, dst))
        self._edges: frozenset[tuple[str, str]] = frozenset(seen)

        n = len(names)
        self._parents = [[] for _ in range(n)]
        self._children = [[] for _ in range(n)]
        for src, dst in sorted(self._edges):
            self._parents[self._index[dst]].append(self._index[src])
            self._children[self._index[src]].append(self._index[dst])
        for adj in (*self._parents, *self._children):
            adj.sort()

        self._topo_order = self._toposort()
        self._desc_masks = None

    # --- structure ---

    @property
    def variables(self) -> tuple[Variable, ...]:
        return self._variables

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self._variables)

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return self._edges

    def variable(self, name: str) -> Variable:
        return self._variables[self._require(name)]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other):
        return (
            isinstance(other, CausalDag)
            and self._variables == other._variables
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self._variables, self._edges))

    def _require(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def _toposort(self) -> list[int]:
        n = len(self._variables)
        indeg = [len(p) for p in self._parents]
        ready = sorted(i for i in range(n) if indeg[i] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if len(order) < n:
            raise CycleDetected(self._find_cycle({i for i in range(n) if i not in set(order)}))
        return order

    def _find_cycle(self, stuck: set[int]) -> list[str]:
        # walk parent pointers inside the stuck set until a node repeats
        start = min(stuck)
        path, seen = [start], {start}
        v = start
        while True:
            v = next(p for p in self._parents[v] if p in stuck)
            if v in seen:
                loop = path[path.index(v):]
                # parent-walk found the cycle in reverse edge direction
                names = [self._variables[u].name for u in reversed(loop)]
                return names + [names[0]]
            seen.add(v)
            path.append(v)

    def topological_order(self) -> tuple[str, ...]:
        return tuple(self._variables[i].name for i in self._topo_order)

    def parents(self, name: str) -> tuple[str, ...]:
        return tuple(self._variables[i].name for i in self._parents[self._require(name)])

    def children(self, name: str) -> tuple[str, ...]:
        return tuple(self._variables[i].name for i in self._children[self._require(name)])

    def _descendant_masks(self) -> list[int]:
        # bitmask per node: strict descendants, computed once in reverse topo order
        if self._desc_masks is None:
            n = len(self._variables)
            masks = [0] * n
            for v in reversed(self._topo_order):
                m = 0
                for c in self._children[v]:
                    m |= masks[c] | (1 << c)
                masks[v] = m
            self._desc_masks = masks
        return self._desc_masks

    def descendants(self, name: str) -> frozenset[str]:
        """Strict descendants of a variable."""
        mask = self._descendant_masks()[self._require(name)]
        return frozenset(
            self._variables[i].name for i in range(len(self._variables)) if mask >> i & 1
        )

    def ancestors(self, name: str) -> frozenset[str]:
        i = self._require(name)
        masks = self._descendant_masks()
        return frozenset(
            self._variables[j].name for j in range(len(self._variables)) if masks[j] >> i & 1
        )

    def is_descendant(self, name: str, of: str) -> bool:
        return bool(self._descendant_masks()[self._require(of)] >> self._require(name) & 1)

    # --- edits (return new graphs; self is never mutated) ---

    def with_edge(self, src: str, dst: str) -> "CausalDag":
        self._require(src)
        self._require(dst)
        return CausalDag(self._variables, self._edges | {(src, dst)})

    def without_edge(self, src: str, dst: str) -> "CausalDag":
        if (src, dst) not in self._edges:
            raise UnknownEndpoint(f"{src} -> {dst}")
        return CausalDag(self._variables, self._edges - {(src, dst)})

    # --- serialization ---

    def to_dict(self) -> dict:
        return {
            "variables": [
                {"name": v.name, "levels": list(v.levels), "reference_level": v.reference_level}
                for v in self._variables
            ],
            "edges": [list(e) for e in sorted(self._edges)],
        }

    @staticmethod
    def from_dict(doc: dict) -> "CausalDag":
        variables = [
            Variable(v["name"], tuple(v["levels"]), v.get("reference_level", v["levels"][0]))
            for v in doc["variables"]
        ]
        return CausalDag(variables, [tuple(e) for e in doc["edges"]])


def validate_dag(
    candidate_nodes: Iterable[Variable | str],
    candidate_edges: Iterable[tuple[str, str]],
) -> CausalDag:
    """Construct a validated DAG or raise a structured error.

    Plain-string nodes get a default binary level set, which is all the graph
    algorithms need; real analyses declare full :class:`Variable` objects.
    """
    variables = [
        v if isinstance(v, Variable) else Variable(v, ("0", "1")) for v in candidate_nodes
    ]
    return CausalDag(variables, list(candidate_edges))


# --- trails ---

def all_simple_trails(g: CausalDag, x: str, y: str) -> list[TrailPath]:
    """All undirected simple paths between x and y, lexicographic by node sequence."""
    xi, yi = g._require(x), g._require(y)
    if xi == yi:
        raise ValueError("trail endpoints must differ")
    n = len(g.variables)
    # undirected adjacency with orientation per neighbor
    nbrs: list[list[tuple[int, str]]] = [[] for _ in range(n)]
    for src, dst in g.edges:
        s, d = g._index[src], g._index[dst]
        nbrs[s].append((d, FORWARD))
        nbrs[d].append((s, BACKWARD))
    names = g.variable_names
    for row in nbrs:
        row.sort(key=lambda t: names[t[0]])

    out: list[TrailPath] = []
    on_path = [False] * n
    path: list[int] = [xi]
    steps: list[str] = []
    on_path[xi] = True

    def dfs(v: int):
        for w, direction in nbrs[v]:
            if on_path[w]:
                continue
            path.append(w)
            steps.append(direction)
            if w == yi:
                out.append(
                    TrailPath(tuple(names[i] for i in path), tuple(steps))
                )
            else:
                on_path[w] = True
                dfs(w)
                on_path[w] = False
            path.pop()
            steps.pop()

    dfs(xi)
    return out


def is_trail_blocked(g: CausalDag, trail: TrailPath, z: Iterable[str]) -> bool:
    """Trail-blocking rule: a non-collider blocks iff it is in z; a collider
    blocks iff neither it nor any descendant is in z."""
    zset = set(z)
    for i in range(1, len(trail.nodes) - 1):
        m = trail.nodes[i]
        is_collider = trail.directions[i - 1] == FORWARD and trail.directions[i] == BACKWARD
        if is_collider:
            if m not in zset and not (g.descendants(m) & zset):
                return True
        elif m in zset:
            return True
    return False


# --- d-separation ---

def d_separated(g: CausalDag, q: SeparationQuery) -> bool:
    """True iff every trail between q.x and q.y is blocked given q.z.

    Runs the linear-time ancestor-marking reachability kernel; trail
    enumeration plus :func:`is_trail_blocked` serves as the independent oracle
    in the test suite.
    """
    xi, yi = g._require(q.x), g._require(q.y)
    if xi == yi:
        raise ValueError("query endpoints must differ")
    z_mask = [False] * len(g.variables)
    for name in q.z:
        i = g._require(name)
        if i in (xi, yi):
            raise OverlappingRoles([name])
        z_mask[i] = True
    return _core.dsep_reachable(g._parents, g._children, xi, yi, z_mask)


# --- back-door machinery ---

def backdoor_trails(g: CausalDag, treatment: str, outcome: str) -> list[TrailPath]:
    """Trails from treatment to outcome whose first step enters the treatment."""
    return [
        t for t in all_simple_trails(g, treatment, outcome) if t.directions[0] == BACKWARD
    ]


def open_backdoor_trails(
    g: CausalDag, treatment: str, outcome: str, z: Iterable[str]
) -> list[TrailPath]:
    zset = set(z)
    return [
        t for t in backdoor_trails(g, treatment, outcome) if not is_trail_blocked(g, t, zset)
    ]


def satisfies_backdoor(
    g: CausalDag, treatment: str, outcome: str, z: Iterable[str]
) -> bool:
    """Back-door criterion: z holds no descendant of the treatment and blocks
    every back-door trail."""
    zset = {name for name in z}
    for name in zset:
        g._require(name)
    if treatment in zset or outcome in zset:
        raise OverlappingRoles(zset & {treatment, outcome})
    forbidden = g.descendants(treatment)
    if zset & forbidden:
        return False
    return not open_backdoor_trails(g, treatment, outcome, zset)


def backdoor_rejection_reason(
    g: CausalDag, treatment: str, outcome: str, z: Iterable[str]
) -> str | None:
    """Human-readable reason why z fails the back-door criterion, or None."""
    zset = set(z)
    bad = sorted(zset & g.descendants(treatment))
    if bad:
        kind = "mediator" if any(outcome in g.descendants(b) | {b} for b in bad) else "descendant"
        return f"{', '.join(bad)}: {kind} of treatment {treatment!r} (descendant of treatment)"
    open_trails = open_backdoor_trails(g, treatment, outcome, zset)
    if open_trails:
        t = open_trails[0]
        opened = sorted(set(t.colliders()) & {c for c in t.colliders() if c in zset or (g.descendants(c) & zset)})
        note = f" (conditioning opens collider {opened[0]!r})" if opened else ""
        return f"open back-door trail: {t}{note}"
    return None


def minimal_adjustment_sets(
    g: CausalDag, treatment: str, outcome: str
) -> list[AdjustmentSet]:
    """All inclusion-minimal back-door adjustment sets, size then lexicographic."""
    g._require(treatment)
    g._require(outcome)
    if treatment == outcome:
        raise ValueError("treatment and outcome must differ")
    forbidden = g.descendants(treatment) | {treatment, outcome}
    candidates = sorted(set(g.variable_names) - forbidden)
    found: list[tuple[str, ...]] = []
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            zset = set(combo)
            if any(set(f) <= zset for f in found):
                continue
            if satisfies_backdoor(g, treatment, outcome, zset):
                found.append(combo)
    return [AdjustmentSet(treatment, outcome, combo) for combo in found]


# --- implied independence claims ---

def implied_independencies(
    g: CausalDag, basis: str = "local-markov"
) -> list[SeparationQuery]:
    """Testable independence claims implied by the graph.

    ``local-markov`` (default): for every variable v and every non-descendant
    u that is not a parent of v, the claim v _||_ u | parents(v). Each claim
    is re-verified with d_separated before emission. ``all-pairs`` enumerates
    every separating subset for every non-adjacent pair (small graphs only).
    """
    names = g.variable_names
    out: list[SeparationQuery] = []
    if basis == "local-markov":
        seen = set()
        for v in names:
            pa = frozenset(g.parents(v))
            non_desc = set(names) - g.descendants(v) - {v} - pa
            for u in sorted(non_desc):
                # endpoints are interchangeable; store them lexicographically
                a, b = sorted((v, u))
                if (a, b, pa) in seen:
                    continue
                q = SeparationQuery(a, b, pa)
                if d_separated(g, q):
                    seen.add((a, b, pa))
                    out.append(q)
        out.sort(key=lambda q: (q.x, q.y, tuple(sorted(q.z))))
        return out
    if basis == "all-pairs":
        if len(names) > 12:
            raise ValueError("all-pairs basis is exponential; limited to 12 variables")
        adjacent = {frozenset(e) for e in g.edges}
        for x, y in itertools.combinations(names, 2):
            if frozenset((x, y)) in adjacent:
                continue
            rest = sorted(set(names) - {x, y})
            for size in range(len(rest) + 1):
                for combo in itertools.combinations(rest, size):
                    q = SeparationQuery(x, y, frozenset(combo))
                    if d_separated(g, q):
                        out.append(q)
        out.sort(key=lambda q: (q.x, q.y, len(q.z), tuple(sorted(q.z))))
        return out
    raise ValueError(f"unknown basis {basis!r}")
