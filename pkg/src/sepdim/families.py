"""Permutations, permutation families, and pairwise-suitability verification.

A permutation ranks a finite vertex set 1..n.  A family is pairwise
suitable for a graph when every pair of disjoint edges is placed as two
blocks (one entirely before the other) by at least one member.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .graphs import Edge, Graph


class Permutation:
    """Bijection from a vertex set onto ranks 1..n, stored in rank order."""

    __slots__ = ("order", "_ranks")

    def __init__(self, order):
        order = tuple(order)
        if len(set(order)) != len(order):
            raise ValueError("permutation contains repeated vertices")
        self.order = order
        self._ranks: dict[int, int] | None = None

    @property
    def ranks(self) -> dict[int, int]:
        if self._ranks is None:
            self._ranks = {v: i + 1 for i, v in enumerate(self.order)}
        return self._ranks

    def rank(self, v: int) -> int:
        try:
            return self.ranks[v]
        except KeyError:
            raise ValueError(f"vertex {v} is outside the permutation domain") from None

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.order)

    def reverse(self) -> "Permutation":
        return Permutation(self.order[::-1])

    def __len__(self) -> int:
        return len(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __lt__(self, other: "Permutation") -> bool:
        return self.order < other.order

    def __repr__(self) -> str:
        return f"Permutation({list(self.order)})"


@dataclass(frozen=True)
class PermutationFamily:
    """Ordered list of permutations sharing one ground set."""

    ground_set: tuple[int, ...]
    members: tuple[Permutation, ...]

    @staticmethod
    def build(ground_set, members) -> "PermutationFamily":
        ground = tuple(sorted(set(ground_set)))
        members = tuple(m if isinstance(m, Permutation) else Permutation(m) for m in members)
        for m in members:
            if m.domain != frozenset(ground):
                raise ValueError("family member does not cover the ground set")
        return PermutationFamily(ground, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def rank_matrix(self) -> np.ndarray:
        """Row per member: vertex-id-indexed rank array (0 where undefined)."""
        size = (max(self.ground_set) + 1) if self.ground_set else 0
        mat = np.zeros((len(self.members), size), dtype=np.int64)
        for i, m in enumerate(self.members):
            for r, v in enumerate(m.order, start=1):
                mat[i, v] = r
        return mat


@dataclass(frozen=True)
class SeparationWitness:
    """Verification verdict: Ok, or the offending disjoint edge pair."""

    ok: bool
    counterexample: tuple[Edge, Edge] | None = None

    def __bool__(self) -> bool:
        return self.ok


def separates(p: Permutation, e, f) -> bool:
    """True iff both vertices of one edge precede both vertices of the other."""
    a, b = e
    c, d = f
    if len({a, b, c, d}) != 4:
        raise ValueError(f"edges {e} and {f} are not disjoint")
    ra, rb, rc, rd = p.rank(a), p.rank(b), p.rank(c), p.rank(d)
    return max(ra, rb) < min(rc, rd) or max(rc, rd) < min(ra, rb)


def disjoint_edge_pairs(g: Graph):
    """All pairs of disjoint edges in lexicographic order."""
    edges = g.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if e[0] != f[0] and e[0] != f[1] and e[1] != f[0] and e[1] != f[1]:
                yield e, f


def _pair_arrays(g: Graph) -> np.ndarray:
    """Disjoint edge pairs as an (P, 4) vertex-id array in lex order."""
    m = g.num_edges
    if m < 2:
        return np.empty((0, 4), dtype=np.int64)
    edges = np.asarray(g.edges, dtype=np.int64)
    ii, jj = np.triu_indices(m, k=1)
    a = edges[ii]
    b = edges[jj]
    disjoint = (
        (a[:, 0] != b[:, 0]) & (a[:, 0] != b[:, 1])
        & (a[:, 1] != b[:, 0]) & (a[:, 1] != b[:, 1])
    )
    return np.concatenate([a[disjoint], b[disjoint]], axis=1)


def _unseparated_mask(fam: PermutationFamily, pairs: np.ndarray) -> np.ndarray:
    """Boolean mask of pairs no member separates; shrinks the pool per member."""
    remaining = np.arange(pairs.shape[0])
    if not len(fam.members):
        return np.ones(pairs.shape[0], dtype=bool) if pairs.size else np.zeros(0, dtype=bool)
    ranks = fam.rank_matrix
    for i in range(len(fam.members)):
        if remaining.size == 0:
            break
        block = pairs[remaining]
        r = ranks[i]
        ra = r[block[:, 0]]
        rb = r[block[:, 1]]
        rc = r[block[:, 2]]
        rd = r[block[:, 3]]
        amax = np.maximum(ra, rb)
        amin = np.minimum(ra, rb)
        bmax = np.maximum(rc, rd)
        bmin = np.minimum(rc, rd)
        sep = (amax < bmin) | (bmax < amin)
        remaining = remaining[~sep]
    mask = np.zeros(pairs.shape[0], dtype=bool)
    mask[remaining] = True
    return mask


def _check_ground_set(fam: PermutationFamily, g: Graph) -> None:
    if fam.ground_set != g.vertices:
        raise ValueError("family ground set does not match graph vertices")


def verify_pairwise_suitable(fam: PermutationFamily, g: Graph) -> SeparationWitness:
    """Exhaustive check; returns the lexicographically smallest counterexample."""
    _check_ground_set(fam, g)
    pairs = _pair_arrays(g)
    if pairs.shape[0] == 0:
        return SeparationWitness(True)
    mask = _unseparated_mask(fam, pairs)
    bad = np.flatnonzero(mask)
    if bad.size == 0:
        return SeparationWitness(True)
    row = pairs[bad[0]]
    e = (int(row[0]), int(row[1]))
    f = (int(row[2]), int(row[3]))
    return SeparationWitness(False, (e, f))


def verify_pairwise_suitable_sampled(
    fam: PermutationFamily, g: Graph, samples: int, seed: int
) -> SeparationWitness:
    """Check a uniform sample of disjoint edge pairs (for large graphs)."""
    _check_ground_set(fam, g)
    m = g.num_edges
    if m < 2:
        return SeparationWitness(True)
    rng = np.random.default_rng(seed)
    edges = np.asarray(g.edges, dtype=np.int64)
    collected: list[np.ndarray] = []
    total = 0
    rounds = 0
    while total < samples:
        rounds += 1
        if rounds > 64:
            # Almost all candidate pairs share a vertex; the exhaustive
            # check is cheap in that regime.
            return verify_pairwise_suitable(fam, g)
        want = samples - total
        ii = rng.integers(0, m, size=2 * want + 16)
        jj = rng.integers(0, m, size=2 * want + 16)
        keep = ii < jj
        ii, jj = ii[keep], jj[keep]
        a = edges[ii]
        b = edges[jj]
        disjoint = (
            (a[:, 0] != b[:, 0]) & (a[:, 0] != b[:, 1])
            & (a[:, 1] != b[:, 0]) & (a[:, 1] != b[:, 1])
        )
        chunk = np.concatenate([a[disjoint], b[disjoint]], axis=1)[:want]
        collected.append(chunk)
        total += chunk.shape[0]
    pairs = np.concatenate(collected, axis=0)
    mask = _unseparated_mask(fam, pairs)
    bad = np.flatnonzero(mask)
    if bad.size == 0:
        return SeparationWitness(True)
    rows = pairs[bad]
    keys = [((int(r[0]), int(r[1])), (int(r[2]), int(r[3]))) for r in rows]
    e, f = min(keys)
    return SeparationWitness(False, (e, f))


def verify_auto(
    fam: PermutationFamily,
    g: Graph,
    seed: int = 0,
    exhaustive_below: int = 300,
    samples: int = 1_000_000,
) -> SeparationWitness:
    """Exhaustive pair check for small graphs, uniform sample beyond."""
    if g.num_vertices <= exhaustive_below:
        return verify_pairwise_suitable(fam, g)
    return verify_pairwise_suitable_sampled(fam, g, samples, seed)


def verify_k_suitable(fam: PermutationFamily, k: int) -> bool:
    """Dushnik k-suitability: every element of every k-set is some member's last.

    `k` larger than the ground set is vacuously true.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ground = fam.ground_set
    if k == 1 or k > len(ground):
        return True
    for subset in combinations(ground, k):
        seen = set()
        for m in fam.members:
            seen.add(max(subset, key=m.ranks.__getitem__))
            if len(seen) == k:
                break
        if len(seen) != k:
            return False
    return True


def embedding_from_family(fam: PermutationFamily) -> dict[int, tuple[int, ...]]:
    """Map each vertex to its rank vector across the members."""
    if not fam.members:
        raise ValueError("cannot embed with an empty family")
    return {v: tuple(m.rank(v) for m in fam.members) for v in fam.ground_set}


def family_from_embedding(points: dict[int, tuple[float, ...]]) -> PermutationFamily:
    """Read permutations off each coordinate axis, ties broken by vertex id."""
    if not points:
        raise ValueError("empty embedding")
    dims = {len(p) for p in points.values()}
    if len(dims) != 1:
        raise ValueError("inconsistent embedding dimensions")
    d = dims.pop()
    if d < 1:
        raise ValueError("embedding needs at least one dimension")
    verts = sorted(points)
    members = [
        Permutation(sorted(verts, key=lambda v: (points[v][axis], v)))
        for axis in range(d)
    ]
    return PermutationFamily.build(verts, members)


def family_to_json(
    fam: PermutationFamily, *, seed: int | None = None, generator: str = "unspecified",
    extra: dict | None = None,
) -> str:
    """Serialize a family (with provenance) to canonical JSON text."""
    doc = {
        "n": len(fam.ground_set),
        "ground_set": list(fam.ground_set),
        "permutations": [list(m.order) for m in fam.members],
        "seed": seed,
        "generator": generator,
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def family_from_json(text: str) -> tuple[PermutationFamily, dict]:
    """Parse a serialized family; returns the family and the full document."""
    doc = json.loads(text)
    fam = PermutationFamily.build(doc["ground_set"], doc["permutations"])
    if doc.get("n") != len(fam.ground_set):
        raise ValueError("family document is inconsistent: n != |ground_set|")
    return fam, doc
