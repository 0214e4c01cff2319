"""Independent reference implementations used only to cross-check the package.

Everything here is deliberately naive and self-contained: no imports from
causeway internals beyond plain data access, so a bug in the package cannot
hide in its own oracle.
"""
from __future__ import annotations

import itertools

import numpy as np


def enumerate_trails(edges, x, y):
    """All simple undirected paths from x to y, as lists of (node, arrow) steps.

    Each path is a list of nodes plus a parallel list of booleans where
    True means the step follows edge direction (a -> b) and False means it
    goes against it (a <- b).
    """
    neighbors = {}
    for a, b in edges:
        neighbors.setdefault(a, set()).add(b)
        neighbors.setdefault(b, set()).add(a)
    edge_set = set(edges)
    paths = []

    def walk(node, path, arrows):
        if node == y:
            paths.append((list(path), list(arrows)))
            return
        for nxt in sorted(neighbors.get(node, ())):
            if nxt in path:
                continue
            path.append(nxt)
            arrows.append((node, nxt) in edge_set)
            walk(nxt, path, arrows)
            path.pop()
            arrows.pop()

    walk(x, [x], [])
    return paths


def descendants_of(edges, node):
    kids = {}
    for a, b in edges:
        kids.setdefault(a, set()).add(b)
    seen = set()
    stack = [node]
    while stack:
        cur = stack.pop()
        for c in kids.get(cur, ()):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


def trail_is_open(edges, path, arrows, z):
    """Blocking rules applied to one enumerated trail."""
    z = set(z)
    for i in range(1, len(path) - 1):
        into_mid = arrows[i - 1]
        out_of_mid = arrows[i]
        collider = into_mid and not out_of_mid
        if collider:
            closure = {path[i]} | descendants_of(edges, path[i])
            if not closure & z:
                return False
        else:
            if path[i] in z:
                return False
    return True


def dsep_by_trails(nodes, edges, x, y, z):
    """d-separation decided by enumerating every trail and applying the
    blocking rules; exponential but exact."""
    if x == y:
        return False
    for path, arrows in enumerate_trails(edges, x, y):
        if trail_is_open(edges, path, arrows, z):
            return False
    return True


def valid_backdoor_sets(nodes, edges, treatment, outcome):
    """Exhaustive search: every subset of the other nodes that contains no
    descendant of treatment and d-separates treatment from outcome in the
    graph with treatment's outgoing edges removed."""
    desc = descendants_of(edges, treatment)
    candidates = [n for n in nodes if n not in (treatment, outcome)]
    stripped = [(a, b) for a, b in edges if a != treatment]
    valid = []
    for r in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, r):
            if set(combo) & desc:
                continue
            if dsep_by_trails(nodes, stripped, treatment, outcome, set(combo)):
                valid.append(frozenset(combo))
    return valid


def minimal_sets(sets):
    out = []
    for s in sets:
        if not any(other < s for other in sets):
            out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def gsq_statistic(x_codes, y_codes, z_columns, kx, ky, kz_sizes):
    """Plain G-squared over strata of z, with the same degrees-of-freedom
    convention: drop all-zero rows and columns inside each stratum."""
    n = len(x_codes)
    if z_columns:
        mult = 1
        stratum = np.zeros(n, dtype=np.int64)
        for col, k in zip(z_columns, kz_sizes):
            stratum += col * mult
            mult *= k
        labels = np.unique(stratum)
    else:
        stratum = np.zeros(n, dtype=np.int64)
        labels = np.array([0])
    stat = 0.0
    dof = 0
    for lab in labels:
        mask = stratum == lab
        table = np.zeros((kx, ky))
        for xc, yc in zip(x_codes[mask], y_codes[mask]):
            table[xc, yc] += 1
        rows = table.sum(axis=1) > 0
        cols = table.sum(axis=0) > 0
        sub = table[np.ix_(rows, cols)]
        if sub.shape[0] < 2 or sub.shape[1] < 2:
            continue
        total = sub.sum()
        expected = np.outer(sub.sum(axis=1), sub.sum(axis=0)) / total
        nz = sub > 0
        stat += 2.0 * np.sum(sub[nz] * np.log(sub[nz] / expected[nz]))
        dof += (sub.shape[0] - 1) * (sub.shape[1] - 1)
    return stat, dof


def logistic_gd(x, y, lr=0.5, steps=200000, tol=1e-10):
    """Binary logistic regression by plain gradient descent on the mean
    log-loss; slow but independent of the Newton solver."""
    n, p = x.shape
    beta = np.zeros(p)
    for _ in range(steps):
        eta = np.clip(x @ beta, -700, 700)
        mu = 1.0 / (1.0 + np.exp(-eta))
        grad = x.T @ (mu - y) / n
        beta -= lr * grad
        if np.linalg.norm(grad) < tol:
            break
    return beta


def random_dag(rng, n_nodes, edge_prob=0.4):
    """Random DAG over nodes N0..N{k-1}; edges only from lower to higher
    index under a shuffled order, so acyclicity holds by construction."""
    names = [f"N{i}" for i in range(n_nodes)]
    order = list(names)
    rng.shuffle(order)
    edges = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < edge_prob:
                edges.append((order[i], order[j]))
    return names, edges
