# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled d-separation reachability kernel.

Mirrors _core.python_impl.dsep_reachable exactly; selected at import when
the extension built.
"""
from libc.stdlib cimport malloc, free

IMPL_NAME = "compiled"


def dsep_reachable(list parents, list children, int x, int y, list z_mask):
    cdef int n = len(parents)
    cdef int v, p, c, top, up
    cdef char *anc = <char *> malloc(n)
    cdef char *inz = <char *> malloc(n)
    cdef char *vis_up = <char *> malloc(n)
    cdef char *vis_dn = <char *> malloc(n)
    # stack of (node, direction) encoded as 2*node + direction
    cdef int *stack = <int *> malloc(2 * n * n * sizeof(int) + 2 * sizeof(int))
    cdef int sp = 0
    cdef bint result = True
    cdef list row
    if anc == NULL or inz == NULL or vis_up == NULL or vis_dn == NULL or stack == NULL:
        raise MemoryError()
    try:
        for v in range(n):
            inz[v] = 1 if z_mask[v] else 0
            anc[v] = inz[v]
            vis_up[v] = 0
            vis_dn[v] = 0
        # ancestors of z (z included); plain node stack
        for v in range(n):
            if inz[v]:
                stack[sp] = v
                sp += 1
        while sp > 0:
            sp -= 1
            v = stack[sp]
            row = <list> parents[v]
            for p in row:
                if not anc[p]:
                    anc[p] = 1
                    stack[sp] = p
                    sp += 1
        # reachability over (node, direction) states
        sp = 0
        stack[sp] = 2 * x + 1
        sp += 1
        while sp > 0:
            sp -= 1
            top = stack[sp]
            v = top >> 1
            up = top & 1
            if up:
                if vis_up[v]:
                    continue
                vis_up[v] = 1
            else:
                if vis_dn[v]:
                    continue
                vis_dn[v] = 1
            if v == y:
                result = False
                break
            if up:
                if not inz[v]:
                    row = <list> parents[v]
                    for p in row:
                        if not vis_up[p]:
                            stack[sp] = 2 * p + 1
                            sp += 1
                    row = <list> children[v]
                    for c in row:
                        if not vis_dn[c]:
                            stack[sp] = 2 * c
                            sp += 1
            else:
                if not inz[v]:
                    row = <list> children[v]
                    for c in row:
                        if not vis_dn[c]:
                            stack[sp] = 2 * c
                            sp += 1
                if anc[v]:
                    row = <list> parents[v]
                    for p in row:
                        if not vis_up[p]:
                            stack[sp] = 2 * p + 1
                            sp += 1
        return result
    finally:
        free(anc)
        free(inz)
        free(vis_up)
        free(vis_dn)
        free(stack)
