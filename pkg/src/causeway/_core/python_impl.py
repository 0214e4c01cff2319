"""Pure-Python d-separation reachability kernel.

Fallback implementation used when the compiled extension is unavailable
(or when CAUSEWAY_PURE_PYTHON=1). Same contract as the compiled version:
ancestor-marking reachability over (node, direction) states.
"""

IMPL_NAME = "python"


def dsep_reachable(parents, children, x, y, z_mask):
    """Return True iff x and y are d-separated given the z_mask set.

    parents/children: adjacency lists (list of list of int), z_mask: list of
    bool, len n each. Assumes x != y and z_mask[x] == z_mask[y] == False.
    """
    n = len(parents)

    # ancestors of z, z included
    anc = list(z_mask)
    stack = [i for i in range(n) if z_mask[i]]
    while stack:
        v = stack.pop()
        for p in parents[v]:
            if not anc[p]:
                anc[p] = True
                stack.append(p)

    visited_up = [False] * n
    visited_dn = [False] * n
    # direction "up" means the node was entered from a child
    stack = [(x, True)]
    while stack:
        v, up = stack.pop()
        if up:
            if visited_up[v]:
                continue
            visited_up[v] = True
        else:
            if visited_dn[v]:
                continue
            visited_dn[v] = True
        if v == y:
            return False
        if up:
            if not z_mask[v]:
                for p in parents[v]:
                    stack.append((p, True))
                for c in children[v]:
                    stack.append((c, False))
        else:
            if not z_mask[v]:
                for c in children[v]:
                    stack.append((c, False))
            if anc[v]:
                for p in parents[v]:
                    stack.append((p, True))
    return True
