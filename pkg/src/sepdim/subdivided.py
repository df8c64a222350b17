"""Pairwise-suitable families for fully subdivided graphs.

Given a vertex order, the edges of the base graph form an interval
order; a realizer of that order yields a family of |realizer| + 2
permutations of the subdivided graph: one per extension (subdivided
vertices first, originals inserted at their leftmost valid position)
plus the two permutations that pin each subdivided vertex right after
its left neighbour or right before its right neighbour.  Ordering the
vertices by color classes keeps the interval order's height below the
number of classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import Permutation, PermutationFamily, verify_pairwise_suitable
from .graphs import (
    Graph,
    SubdivisionMap,
    color_classes,
    degeneracy_order,
    greedy_coloring,
    make_edge,
    subdivide,
)
from .posets import (
    DimensionBudgetExceeded,
    Realizer,
    height,
    interval_order_from,
    is_realizer,
    realizer_heuristic,
    exact_poset_dimension,
)

EXACT_REALIZER_MAX = 9


def subdivision_family(g: Graph, sigma: Permutation, realizer: Realizer) -> PermutationFamily:
    """Family of |realizer| + 2 permutations of V(g^{1/2}).

    `realizer` must realize the interval order of g under sigma; its
    extensions order the subdivided vertices, originals are inserted at
    the leftmost position after their predecessor and all their incoming
    mid vertices, and two more permutations place each mid vertex
    immediately after its left neighbour / before its right neighbour.
    """
    order = interval_order_from(g, sigma)
    if not is_realizer(realizer, order.poset):
        raise ValueError("supplied realizer does not realize the interval order")
    gsub, smap = subdivide(g)
    by_rank = sorted(g.vertices, key=sigma.rank)

    def original(rank: int) -> int:
        return by_rank[rank - 1]

    def mid(interval: tuple[int, int]) -> int:
        e = make_edge(original(interval[0]), original(interval[1]))
        return smap.mid_of[e]

    intervals_by_right: dict[int, list[tuple[int, int]]] = {}
    intervals_by_left: dict[int, list[tuple[int, int]]] = {}
    for iv in order.intervals:
        intervals_by_left.setdefault(iv[0], []).append(iv)
        intervals_by_right.setdefault(iv[1], []).append(iv)

    members: list[Permutation] = []
    n = len(by_rank)
    for ext in realizer.extensions:
        seq: list[int] = [mid(iv) for iv in ext]
        for j in range(1, n + 1):
            at = -1
            if j > 1:
                at = seq.index(original(j - 1))
            for iv in intervals_by_right.get(j, ()):
                at = max(at, seq.index(mid(iv)))
            seq.insert(at + 1, original(j))
            # the proof guarantees v_j lands before every u_{jk}
            for iv in intervals_by_left.get(j, ()):
                if seq.index(mid(iv)) < at + 1:
                    raise AssertionError("original vertex landed after an outgoing mid")
        members.append(Permutation(seq))

    after_left: list[int] = []
    for j in range(1, n + 1):
        after_left.append(original(j))
        after_left.extend(mid(iv) for iv in sorted(intervals_by_left.get(j, ())))
    members.append(Permutation(after_left))

    before_right: list[int] = []
    for j in range(1, n + 1):
        before_right.extend(mid(iv) for iv in sorted(intervals_by_right.get(j, ())))
        before_right.append(original(j))
    members.append(Permutation(before_right))

    return PermutationFamily.build(gsub.vertices, members)


@dataclass(frozen=True)
class SubdividedBoundResult:
    family: PermutationFamily
    subdivided: Graph
    subdivision: SubdivisionMap
    sigma: Permutation
    num_classes: int
    interval_height: int
    realizer: Realizer
    used_exact_realizer: bool
    seed: int

    @property
    def realizer_size(self) -> int:
        return len(self.realizer)


def colored_subdivision_family(
    g: Graph, seed: int = 0, check: bool = True
) -> SubdividedBoundResult:
    """Suitable family for g^{1/2} built from a color-class vertex order.

    The order lists greedy color classes consecutively, which caps the
    interval order's height at (#classes - 1).  The realizer comes from
    the exact search on small interval orders, else from the heuristic.
    """
    d = degeneracy_order(g)
    coloring = greedy_coloring(g, d)
    classes = color_classes(coloring)
    sigma = Permutation([v for cls in classes for v in cls])
    gsub, smap = subdivide(g)
    if not g.edges:
        family = PermutationFamily.build(gsub.vertices, ())
        return SubdividedBoundResult(
            family, gsub, smap, sigma, len(classes), 0, Realizer(()), False, seed
        )

    order = interval_order_from(g, sigma)
    h = height(order.poset)
    if classes and h > len(classes) - 1:
        raise AssertionError("interval order height exceeds the coloring bound")

    used_exact = False
    realizer = None
    if len(order) <= EXACT_REALIZER_MAX:
        try:
            res = exact_poset_dimension(order.poset, limit=4, budget=400_000)
            if res.dimension is not None:
                realizer = res.realizer
                used_exact = True
        except DimensionBudgetExceeded:
            realizer = None
    if realizer is None:
        realizer = realizer_heuristic(order)

    family = subdivision_family(g, sigma, realizer)
    if check:
        witness = verify_pairwise_suitable(family, gsub)
        if not witness.ok:
            raise AssertionError(f"subdivision family failed verification: {witness}")
    return SubdividedBoundResult(
        family, gsub, smap, sigma, len(classes), h, realizer, used_exact, seed
    )
