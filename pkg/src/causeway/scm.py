"""Structural causal models over categorical variables.

A model is a DAG plus one conditional probability table per variable. It
supports joint-probability evaluation (Markov factorization), ancestral
sampling with the counter-based generator, point interventions via truncated
factorization, and exact interventional-effect oracles by enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from causeway import dagfile
from causeway.data import DataTable, Schema
from causeway.errors import (
    DegenerateTable,
    IncompleteAssignment,
    MissingCell,
    SchemaMismatch,
    ParseError,
    UnknownLevel,
    UnknownVariable,
    ZeroDenominator,
)
from causeway.graph import CausalDag
from causeway.rng import counter_uniform

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Cpt:
    """Distribution of one variable for every combination of its parents.

    ``parents`` is lexicographically ordered; ``table`` maps a parent-level
    combo (in that order, empty tuple for roots) to a distribution over the
    child's levels (in declared level order).
    """

    child: str
    parents: tuple[str, ...]
    table: dict[tuple[str, ...], tuple[float, ...]]


class ScmSpec:
    """A validated structural model: graph plus complete CPT coverage."""

    def __init__(self, graph: CausalDag, cpts: dict[str, Cpt]):
        self.graph = graph
        self.cpts = dict(cpts)
        for v in graph.variables:
            cpt = self.cpts.get(v.name)
            if cpt is None:
                raise MissingCell(f"no CPT for variable {v.name!r}")
            expected_parents = tuple(sorted(graph.parents(v.name)))
            if cpt.parents != expected_parents:
                raise SchemaMismatch(
                    f"CPT parents {cpt.parents} for {v.name!r} do not match graph parents "
                    f"{expected_parents}"
                )
            parent_levels = [graph.variable(p).levels for p in cpt.parents]
            expected_combos = set(itertools.product(*parent_levels))
            got = set(cpt.table)
            if got != expected_combos:
                missing = sorted(expected_combos - got)
                extra = sorted(got - expected_combos)
                raise MissingCell(
                    f"CPT for {v.name!r}: missing combos {missing[:3]}, unknown combos {extra[:3]}"
                )
            for combo, probs in cpt.table.items():
                if len(probs) != len(v.levels):
                    raise SchemaMismatch(
                        f"CPT row for {v.name!r} | {combo} has {len(probs)} entries, "
                        f"expected {len(v.levels)}"
                    )
                if any(p < 0 for p in probs):
                    raise DegenerateTable(
                        f"negative probability in CPT for {v.name!r} | {combo}"
                    )
                if abs(sum(probs) - 1.0) > ROW_SUM_TOL:
                    raise DegenerateTable(
                        f"CPT row for {v.name!r} | {combo} sums to {sum(probs)!r}, not 1"
                    )

    def schema(self) -> Schema:
        return Schema(self.graph.variables)

    def __eq__(self, other):
        return (
            isinstance(other, ScmSpec)
            and self.graph == other.graph
            and self.cpts == other.cpts
        )


def joint_probability(m: ScmSpec, assignment: dict[str, str]) -> float:
    """Markov factorization: product of per-variable conditional probabilities."""
    names = set(m.graph.variable_names)
    missing = names - set(assignment)
    if missing:
        raise IncompleteAssignment(missing)
    for name, level in assignment.items():
        if name not in names:
            raise UnknownVariable(name)
        if level not in m.graph.variable(name).levels:
            raise UnknownLevel(name, level)
    prob = 1.0
    for name in m.graph.topological_order():
        cpt = m.cpts[name]
        combo = tuple(assignment[p] for p in cpt.parents)
        levels = m.graph.variable(name).levels
        prob *= cpt.table[combo][levels.index(assignment[name])]
    return prob


def sample(m: ScmSpec, n: int, seed: int) -> DataTable:
    """Draw n rows ancestrally; the draw for (row, variable) consumes counter
    ``row * n_vars + lexicographic_index(variable)``, so the output is
    independent of any partitioning of rows across workers."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = m.graph
    names = g.variable_names  # lexicographic
    nv = len(names)
    lex_index = {name: i for i, name in enumerate(names)}
    codes = np.zeros((n, nv), dtype=np.int32)
    for name in g.topological_order():
        j = lex_index[name]
        cpt = m.cpts[name]
        levels = g.variable(name).levels
        parent_levels = [g.variable(p).levels for p in cpt.parents]
        combos = list(itertools.product(*parent_levels))
        combo_index = {combo: k for k, combo in enumerate(combos)}
        cum = np.cumsum(
            np.array([cpt.table[combo] for combo in combos], dtype=np.float64), axis=1
        )
        if cpt.parents:
            parent_cols = np.stack([codes[:, lex_index[p]] for p in cpt.parents], axis=1)
            radix = np.array([len(pl) for pl in parent_levels], dtype=np.int64)
            # combo index in itertools.product order: row-major over parent codes
            keys = np.zeros(n, dtype=np.int64)
            for col in range(len(cpt.parents)):
                keys = keys * radix[col] + parent_cols[:, col]
        else:
            keys = np.zeros(n, dtype=np.int64)
        u = counter_uniform(seed, np.arange(n, dtype=np.uint64) * np.uint64(nv) + np.uint64(j))
        row_cum = cum[keys]
        codes[:, j] = np.minimum(
            (u[:, None] >= row_cum).sum(axis=1), len(levels) - 1
        )
        del combo_index
    return DataTable(Schema(g.variables), codes)


def intervene(m: ScmSpec, variable: str, level: str) -> ScmSpec:
    """Truncated factorization: point mass at level, incoming edges removed."""
    v = m.graph.variable(variable)
    if level not in v.levels:
        raise UnknownLevel(variable, level)
    new_edges = {e for e in m.graph.edges if e[1] != variable}
    new_graph = CausalDag(m.graph.variables, new_edges)
    point = tuple(1.0 if lv == level else 0.0 for lv in v.levels)
    new_cpts = dict(m.cpts)
    new_cpts[variable] = Cpt(variable, (), {(): point})
    return ScmSpec(new_graph, new_cpts)


def marginal_distribution(m: ScmSpec, target: str) -> dict[str, float]:
    """Exact Pr(target) by enumeration over the target's ancestral closure."""
    return _enumerate_target(m, target)


def interventional_distribution(
    m: ScmSpec, variable: str, level: str, target: str
) -> dict[str, float]:
    """Exact Pr(target | do(variable=level)) by enumeration over the target's
    ancestral closure in the intervened model."""
    return _enumerate_target(intervene(m, variable, level), target)


def _enumerate_target(post: ScmSpec, target: str) -> dict[str, float]:
    g = post.graph
    relevant = set(g.ancestors(target)) | {target}
    order = [name for name in g.topological_order() if name in relevant]
    target_levels = g.variable(target).levels
    result = {lv: 0.0 for lv in target_levels}

    def recurse(i: int, assignment: dict[str, str], prob: float):
        if prob == 0.0:
            return
        if i == len(order):
            result[assignment[target]] += prob
            return
        name = order[i]
        cpt = post.cpts[name]
        combo = tuple(assignment[p] for p in cpt.parents)
        probs = cpt.table[combo]
        for lv, p in zip(g.variable(name).levels, probs):
            assignment[name] = lv
            recurse(i + 1, assignment, prob * p)
        del assignment[name]

    recurse(0, {}, 1.0)
    return result


def oracle_effect(
    m: ScmSpec,
    treatment: str,
    outcome: str,
    outcome_level,
    contrast: tuple[str, str],
) -> tuple[float, float]:
    """Exact (risk_ratio, odds_ratio) for Pr(outcome in outcome_level) under
    do(treatment=level) vs do(treatment=reference)."""
    level, reference = contrast
    success = {outcome_level} if isinstance(outcome_level, str) else set(outcome_level)
    declared = set(m.graph.variable(outcome).levels)
    unknown = success - declared
    if unknown:
        raise UnknownLevel(outcome, sorted(unknown)[0])
    probs = []
    for arm in (level, reference):
        dist = interventional_distribution(m, treatment, arm, outcome)
        probs.append(sum(dist[lv] for lv in success))
    p1, p0 = probs
    if p0 == 0.0:
        raise ZeroDenominator(f"reference arm do({treatment}={reference}) has probability 0")
    risk_ratio = p1 / p0
    if p1 >= 1.0 or p0 >= 1.0:
        raise ZeroDenominator("an arm has outcome probability 1; odds undefined")
    odds_ratio = (p1 / (1 - p1)) / (p0 / (1 - p0))
    return risk_ratio, odds_ratio


# --- serialization (dagfile v1 with cpt lines) ---

def from_parsed(parsed: dagfile.ParsedDagfile) -> ScmSpec:
    graph = parsed.graph()
    builders: dict[str, dict[tuple[str, ...], tuple[float, ...]]] = {}
    for line in parsed.cpt_lines:
        if line.child not in graph:
            raise ParseError(f"cpt for undeclared variable {line.child!r}", line.line)
        parents = tuple(sorted(graph.parents(line.child)))
        if len(line.combo) != len(parents):
            raise ParseError(
                f"cpt for {line.child!r}: combo {line.combo} does not match parents {parents}",
                line.line,
            )
        for p, lv in zip(parents, line.combo):
            if lv not in graph.variable(p).levels:
                raise ParseError(
                    f"cpt for {line.child!r}: {lv!r} is not a level of parent {p!r}", line.line
                )
        rows = builders.setdefault(line.child, {})
        if line.combo in rows:
            raise ParseError(
                f"duplicate cpt row for {line.child!r} | {line.combo}", line.line
            )
        rows[line.combo] = line.probs
    cpts = {
        child: Cpt(child, tuple(sorted(graph.parents(child))), rows)
        for child, rows in builders.items()
    }
    try:
        return ScmSpec(graph, cpts)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_scm(m: ScmSpec, comment: str | None = None) -> str:
    text = dagfile.format_graph(m.graph, comment=comment)
    lines = [text.rstrip("\n")]
    for name in m.graph.variable_names:
        cpt = m.cpts[name]
        for combo in sorted(cpt.table):
            probs = ",".join(repr(p) for p in cpt.table[combo])
            if combo:
                lines.append(f"cpt {name} | {','.join(combo)} : {probs}")
            else:
                lines.append(f"cpt {name} : {probs}")
    return "\n".join(lines) + "\n"


def load_scm(path) -> ScmSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return from_parsed(dagfile.parse(fh.read()))
