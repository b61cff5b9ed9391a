"""Embedding search and the power-index machinery built on it.

The generic oracle maps pattern vertices (descending degree, ties by
identifier) into a power graph by backtracking over bitset candidate rows.
Interchangeable pattern vertices (twins) get increasing images, which cuts
the search space without losing completeness, so an exhausted search is a
proof that no embedding exists.  On top of the oracle sit the closed-form
index for complete graphs, the bipartite criticality criterion with its
constructive embedding, optimal-group classification, and catalog-relative
index search for arbitrary patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .graphs import SimpleGraph, complete_bipartite, power_graph
from .groups import (
    Group,
    catalog_for_order,
    construct_group,
    is_cyclic,
    is_generalized_quaternion,
)
from .numtheory import chi, classify_order, is_prime_power, rho, totient


@dataclass(frozen=True)
class EmbeddingWitness:
    """Injective vertex map carrying every pattern edge to a host edge."""

    mapping: tuple[tuple[int, int], ...]
    pattern_ref: str
    group_ref: str

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def to_json(self) -> dict[str, int]:
        return {str(v): x for v, x in self.mapping}


@dataclass(frozen=True)
class ThetaResult:
    value: int
    witness: EmbeddingWitness
    exact: bool
    searched_orders: tuple[int, ...]


@dataclass(frozen=True)
class CriticalityResult:
    critical: bool
    exact: bool
    witness: EmbeddingWitness | None


@dataclass(frozen=True)
class KstOptimalResult:
    groups: tuple[Group, ...]
    catalog_complete: bool


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    holds: bool


def check_embedding(pattern: SimpleGraph, host: SimpleGraph,
                    mapping: dict[int, int]) -> bool:
    """Validate injectivity and edge preservation of a candidate map."""
    if sorted(mapping) != list(range(pattern.n)):
        return False
    if len(set(mapping.values())) != pattern.n:
        return False
    if any(not 0 <= x < host.n for x in mapping.values()):
        return False
    return all(host.has_edge(mapping[u], mapping[v]) for u, v in pattern.edges())


def _twin_classes(pattern: SimpleGraph) -> tuple[list[int], list[int]]:
    """Group vertices into twin classes; return (predecessor, class root).

    Two vertices are twins when they share the same open neighbourhood
    (non-adjacent case) or the same closed neighbourhood (adjacent case);
    either swap is a pattern automorphism, so forcing increasing images
    within a class discards only redundant branches.  predecessor[v] is
    the previous class member by id, or -1.
    """
    n = pattern.n
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    seen: dict[tuple[str, int], int] = {}
    for v in range(n):
        for key in (("o", pattern.adj[v]), ("c", pattern.adj[v] | 1 << v)):
            if key in seen:
                ra, rb = find(seen[key]), find(v)
                if ra != rb:
                    parent[rb] = ra
            else:
                seen[key] = v
    last: dict[int, int] = {}
    pred = [-1] * n
    for v in range(n):
        root = find(v)
        pred[v] = last.get(root, -1)
        last[root] = v
    return pred, [find(v) for v in range(n)]


def embeds(pattern: SimpleGraph, g: Group,
           pattern_ref: str = "") -> EmbeddingWitness | None:
    """Search for an embedding of the pattern into the group's power graph.

    Exhaustive backtracking; None is a proof that no embedding exists.
    """
    host = power_graph(g).graph
    np_, nh = pattern.n, host.n
    if np_ > nh:
        return None
    if np_ == 0:
        return EmbeddingWitness((), pattern_ref or _describe(pattern), g.label)
    padj, hadj = pattern.adj, host.adj
    pdeg, hdeg = pattern.degrees(), host.degrees()
    order = sorted(range(np_), key=lambda v: (-pdeg[v], v))
    pred, root = _twin_classes(pattern)
    degree_pool = {d: sum(1 << w for w in range(nh) if hdeg[w] >= d)
                   for d in set(pdeg)}
    # how many members of v's twin class (v included) are still unplaced
    # when the static order reaches v; they all draw images from v's pool
    order_pos = [0] * np_
    for i, v in enumerate(order):
        order_pos[v] = i
    rem = [0] * np_
    by_class: dict[int, list[int]] = {}
    for v in range(np_):
        by_class.setdefault(root[v], []).append(v)
    for members in by_class.values():
        members.sort(key=lambda v: order_pos[v])
        for i, v in enumerate(members):
            rem[v] = len(members) - i
    image = [-1] * np_
    mapped_mask = 0
    used_mask = 0

    def place(idx: int) -> bool:
        nonlocal mapped_mask, used_mask
        if idx == np_:
            return True
        v = order[idx]
        cand = degree_pool[pdeg[v]] & ~used_mask
        rest = padj[v] & mapped_mask
        while rest and cand:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cand &= hadj[image[u]]
        if cand.bit_count() < rem[v]:
            return False
        p = pred[v]
        if p != -1 and image[p] != -1:
            cand &= -1 << (image[p] + 1)
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            image[v] = w
            mapped_mask |= 1 << v
            used_mask |= 1 << w
            if place(idx + 1):
                return True
            image[v] = -1
            mapped_mask &= ~(1 << v)
            used_mask &= ~(1 << w)
        return False

    if not place(0):
        return None
    mapping = tuple((v, image[v]) for v in range(np_))
    return EmbeddingWitness(mapping, pattern_ref or _describe(pattern), g.label)


def _describe(pattern: SimpleGraph) -> str:
    return f"graph(n={pattern.n},m={pattern.n_edges})"


# ── complete graphs ──────────────────────────────────────────────────────────

def theta_complete(n: int) -> int:
    """Power index of the complete graph on n vertices: the least k whose
    cyclic power graph holds a k-clique of size n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = n
    while chi(k) < n:
        k += 1
    return k


def theta_kn_equals_nplus1(n: int) -> bool:
    """Whether the complete graph on n vertices has power index n + 1.

    Defined for n that is not a prime power; holds exactly when n + 1 is a
    prime power or twice an odd prime.  The closed form is cross-asserted
    against the scanning definition on every call.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if is_prime_power(n):
        raise ValueError(f"{n} is a prime power; the criterion excludes it")
    oc = classify_order(n + 1)
    answer = oc.is_prime_power or oc.is_twice_odd_prime
    assert answer == (theta_complete(n) == n + 1), n
    return answer


# ── complete bipartite graphs ────────────────────────────────────────────────

def is_kst_power_critical(s: int, t: int) -> bool:
    """Totient criterion for the complete bipartite graph on s + t vertices."""
    if not 2 <= s <= t:
        raise ValueError("requires 2 <= s <= t (stars are always critical)")
    return totient(s + t) >= s - 1


def embed_kst_cyclic(s: int, t: int) -> EmbeddingWitness:
    """Constructive embedding of a critical K_{s,t} into the cyclic group
    of order s + t: the small side goes to generators and the identity."""
    if not is_kst_power_critical(s, t):
        raise ValueError(f"K_{{{s},{t}}} fails the criterion: "
                         f"phi({s + t}) = {totient(s + t)} < {s - 1}")
    n = s + t
    g = construct_group(f"Z{n}")
    universal = [0] + [x for x in range(1, n) if gcd(x, n) == 1]
    side_u = sorted(universal[:s])
    side_w = [x for x in range(n) if x not in set(side_u)]
    mapping = tuple(enumerate(side_u + side_w))
    witness = EmbeddingWitness(mapping, f"K_{{{s},{t}}}", g.label)
    if not check_embedding(complete_bipartite(s, t), power_graph(g).graph,
                           witness.as_dict()):  # pragma: no cover
        raise AssertionError("constructed bipartite embedding is invalid")
    return witness


def kst_optimal_groups(s: int, t: int) -> KstOptimalResult:
    """All order-(s+t) catalog groups whose power graph hosts K_{s,t}.

    Only meaningful when K_{s,t} is power-critical; the result records
    whether the catalog provably exhausts that order.
    """
    if not is_kst_power_critical(s, t):
        raise ValueError(f"K_{{{s},{t}}} is not power-critical")
    pattern = complete_bipartite(s, t)
    cat = catalog_for_order(s + t)
    hits = tuple(g for g in cat.groups
                 if embeds(pattern, g, f"K_{{{s},{t}}}") is not None)
    return KstOptimalResult(hits, cat.complete)


# ── general patterns ─────────────────────────────────────────────────────────

def theta_search(pattern: SimpleGraph, max_order: int | None = None) -> ThetaResult:
    """Least group order whose power graph hosts the pattern, by scanning
    catalogs order by order.

    The default bound (least prime power at or above the vertex count)
    always suffices, since the corresponding cyclic power graph is
    complete.  exact is True when every order below the answer had a
    provably complete catalog.
    """
    n = max(1, pattern.n)
    if max_order is None:
        max_order = rho(n)
    if max_order < n:
        raise ValueError("max_order must be at least the vertex count")
    ref = _describe(pattern)
    searched: list[int] = []
    exact = True
    for m in range(n, max_order + 1):
        cat = catalog_for_order(m)
        searched.append(m)
        for g in cat.groups:
            witness = embeds(pattern, g, ref)
            if witness is not None:
                return ThetaResult(m, witness, exact, tuple(searched))
        exact = exact and cat.complete
    raise ValueError(f"no embedding found up to order {max_order}")


def is_power_critical(pattern: SimpleGraph) -> CriticalityResult:
    """Whether the pattern's power index equals its vertex count.

    Prime-power vertex counts are always critical (the cyclic power graph
    of that order is complete); otherwise the order's catalog decides, and
    a negative answer is exact only when that catalog is complete.
    """
    n = pattern.n
    if n < 1:
        raise ValueError("pattern needs at least one vertex")
    if is_prime_power(n):
        witness = embeds(pattern, construct_group(f"Z{n}"))
        if witness is None:  # pragma: no cover - complete host graph
            raise AssertionError("embedding into complete power graph failed")
        return CriticalityResult(True, True, witness)
    cat = catalog_for_order(n)
    for g in cat.groups:
        witness = embeds(pattern, g)
        if witness is not None:
            return CriticalityResult(True, True, witness)
    return CriticalityResult(False, cat.complete, None)


def max_nonidentity_degree(g: Group) -> DegreeReport:
    """Largest power-graph degree among non-identity elements, and whether
    it reaches |G| - 1 (a universal non-identity vertex)."""
    if g.n == 1:
        raise ValueError("needs a non-trivial group")
    degrees = power_graph(g).graph.degrees()
    top = max(degrees[1:])
    return DegreeReport(top, top >= g.n - 1)


def has_universal_nonidentity(g: Group) -> bool:
    """Closed-form side of the degree characterization: cyclic groups and
    generalized quaternion 2-groups, nothing else."""
    return is_cyclic(g) or is_generalized_quaternion(g)
