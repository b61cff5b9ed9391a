"""Exact maximum clique for small graphs.

Branch and bound in the style of Tomita: candidates are greedily colored,
color counts bound the achievable clique size, and subtrees that cannot
beat the incumbent are cut.  Expansion follows a fixed ascending-id order,
so the reported witness is reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import SimpleGraph


@dataclass(frozen=True)
class CliqueResult:
    """Maximum clique size together with one witness (sorted vertex ids)."""

    size: int
    witness: tuple[int, ...]


def clique_number(gr: SimpleGraph) -> CliqueResult:
    """Exact maximum clique of a non-empty graph.

    Exponential in the worst case, but the coloring bound keeps the power
    graphs this library cares about (a few hundred vertices) sub-second.
    """
    n = gr.n
    if n < 1:
        raise ValueError("clique_number needs at least one vertex")
    adj = gr.adj
    best_size = 0
    best_mask = 0

    def color_order(p_mask: int) -> list[tuple[int, int]]:
        # Greedy coloring by ascending id; one color class per bitmask.
        classes: list[int] = []
        m = p_mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            for ci in range(len(classes)):
                if not classes[ci] & adj[v]:
                    classes[ci] |= 1 << v
                    break
            else:
                classes.append(1 << v)
        # Emit (vertex, color) grouped by ascending color, descending id
        # within a class, so the reversed scan expands low ids first.
        pairs: list[tuple[int, int]] = []
        for ci, cmask in enumerate(classes):
            members = []
            while cmask:
                members.append((cmask & -cmask).bit_length() - 1)
                cmask &= cmask - 1
            pairs.extend((v, ci + 1) for v in reversed(members))
        return pairs

    def expand(r_mask: int, r_size: int, p_mask: int) -> None:
        nonlocal best_size, best_mask
        if not p_mask:
            if r_size > best_size:
                best_size, best_mask = r_size, r_mask
            return
        pairs = color_order(p_mask)
        for v, color in reversed(pairs):
            if r_size + color <= best_size:
                return  # every remaining candidate has color <= this one
            expand(r_mask | 1 << v, r_size + 1, p_mask & adj[v])
            p_mask &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    witness = []
    m = best_mask
    while m:
        witness.append((m & -m).bit_length() - 1)
        m &= m - 1
    return CliqueResult(best_size, tuple(witness))
