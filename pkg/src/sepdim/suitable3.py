"""Builders for 3-suitable permutation families.

A family is 3-suitable when for every 3-set and every designated element
some member places the other two entirely before it.  Small ground sets
get a randomized cover with a greedy fallback; large ones use a
deterministic xor-mask construction whose correctness does not require
enumerating the constraint set.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .families import Permutation, PermutationFamily, verify_k_suitable

# Beyond this many elements the (3-set, designated element) constraint
# space is too large to enumerate; the xor-mask construction takes over.
COVER_LIMIT = 75


@dataclass(frozen=True)
class Suitable3Result:
    family: PermutationFamily
    generator: str
    seed: int
    target: int


def spencer_target(n: int) -> int:
    """Size goal for the randomized phase, from the known N(n,3) estimate.

    The asymptotic formula under-floors tiny ground sets, where the true
    minimum is already 3, so we clamp from below.
    """
    if n < 3:
        return 0
    ll = math.log2(math.log2(n)) if n > 2 else 0.0
    lll = math.log2(ll) if ll > 1.0 else 0.0
    value = math.floor(ll + 0.5 * lll + math.log2(math.sqrt(2) * math.pi))
    return max(3, value)


def _xor_mask_orders(ids: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Orders sorted by (position ^ mask) for every mask with <= 2 set bits.

    For any distinct a, x, y there is such a mask making a the largest of
    the three keys: flip the highest bit where the triple disagrees (and,
    if one of x, y still compares above a, the highest bit where that one
    differs from a).  Hence x and y both precede a in that member, which
    is exactly 3-suitability.
    """
    n = len(ids)
    pos = {v: i for i, v in enumerate(ids)}
    bits = max(1, (n - 1).bit_length())
    masks = [0]
    masks += [1 << b for b in range(bits)]
    masks += [(1 << b1) | (1 << b2) for b1, b2 in combinations(range(bits), 2)]
    return [tuple(sorted(ids, key=lambda v: pos[v] ^ m)) for m in masks]


class _CoverState:
    """Uncovered (3-set, designated) constraints, tracked as a (T, 3) mask."""

    def __init__(self, ids: tuple[int, ...]):
        self.ids = ids
        self.index = {v: i for i, v in enumerate(ids)}
        self.triples = np.asarray(list(combinations(range(len(ids)), 3)), dtype=np.int64)
        self.uncovered = np.ones((len(self.triples), 3), dtype=bool)

    def hits(self, order: tuple[int, ...]) -> np.ndarray:
        ranks = np.empty(len(self.ids), dtype=np.int64)
        for r, v in enumerate(order):
            ranks[self.index[v]] = r
        tri_ranks = ranks[self.triples]
        arg = tri_ranks.argmax(axis=1)
        onehot = np.zeros_like(self.uncovered)
        onehot[np.arange(len(self.triples)), arg] = True
        return onehot & self.uncovered

    def apply(self, hits: np.ndarray) -> None:
        self.uncovered &= ~hits

    @property
    def remaining(self) -> int:
        return int(self.uncovered.sum())

    def first_uncovered(self) -> tuple[tuple[int, ...], int]:
        t, pos = np.argwhere(self.uncovered)[0]
        triple = tuple(self.ids[i] for i in self.triples[t])
        return triple, triple[pos]


def _randomized_cover(ids, rng: random.Random, cap: int) -> list[tuple[int, ...]] | None:
    """Accept-if-progress sampling; None when the cap is exceeded."""
    state = _CoverState(ids)
    members: list[tuple[int, ...]] = []
    misses = 0
    while state.remaining:
        order = list(ids)
        rng.shuffle(order)
        order = tuple(order)
        hits = state.hits(order)
        if hits.any():
            members.append(order)
            state.apply(hits)
            misses = 0
            if len(members) > cap:
                return None
        else:
            misses += 1
            if misses > 200:
                return None
    return members


def _greedy_cover(ids, rng: random.Random) -> list[tuple[int, ...]]:
    """Deterministic greedy set cover over seeded candidate batches.

    Every round also includes one targeted candidate built from the first
    uncovered constraint, so progress is guaranteed.
    """
    state = _CoverState(ids)
    members: list[tuple[int, ...]] = []
    while state.remaining:
        candidates: list[tuple[int, ...]] = []
        for _ in range(32):
            order = list(ids)
            rng.shuffle(order)
            candidates.append(tuple(order))
        triple, a = state.first_uncovered()
        rest = [v for v in ids if v != a]
        candidates.append(tuple(rest) + (a,))
        best = None
        best_hits = None
        best_count = -1
        for cand in candidates:
            hits = state.hits(cand)
            count = int(hits.sum())
            if count > best_count:
                best, best_hits, best_count = cand, hits, count
        members.append(best)
        state.apply(best_hits)
    return members


def build_3_suitable(n: int, seed: int = 0) -> Suitable3Result:
    """3-suitable family over [n] = {1..n}; deterministic given the seed."""
    return build_3_suitable_for(tuple(range(1, n + 1)), seed)


def build_3_suitable_for(ids, seed: int = 0) -> Suitable3Result:
    """3-suitable family over an arbitrary id universe."""
    ids = tuple(sorted(set(ids)))
    n = len(ids)
    if n < 3:
        return Suitable3Result(PermutationFamily.build(ids, ()), "empty", seed, 0)
    target = spencer_target(n)
    mask_orders = _xor_mask_orders(ids)
    if n > COVER_LIMIT:
        fam = PermutationFamily.build(ids, [Permutation(o) for o in mask_orders])
        return Suitable3Result(fam, "xor-mask", seed, target)

    chosen: list[tuple[int, ...]] | None = None
    generator = "xor-mask"
    for attempt in range(6):
        result = _randomized_cover(ids, random.Random(seed * 6151 + attempt), cap=target)
        if result is not None and len(result) <= target:
            chosen, generator = result, "random-cover"
            break
    if chosen is None:
        greedy = _greedy_cover(ids, random.Random(seed))
        if len(greedy) <= len(mask_orders):
            chosen, generator = greedy, "greedy-cover"
        else:
            chosen = mask_orders
    fam = PermutationFamily.build(ids, [Permutation(o) for o in chosen])
    if not verify_k_suitable(fam, 3):
        raise AssertionError("3-suitable construction failed verification")
    return Suitable3Result(fam, generator, seed, target)


def exact_min_3_suitable(n: int):
    """Exact N(n,3) with a witness family; guarded search for n <= 6.

    The constraint system is invariant under relabeling [n], so the first
    member can be fixed to the identity.
    """
    if n > 6:
        raise ValueError("exact 3-suitable search is limited to n <= 6")
    ids = tuple(range(1, n + 1))
    if n < 3:
        return 0, PermutationFamily.build(ids, ())
    constraints = [(t, a) for t in combinations(ids, 3) for a in t]
    index = {c: i for i, c in enumerate(constraints)}
    full = (1 << len(constraints)) - 1
    per_perm = math.comb(n, 3)  # every permutation covers exactly this many
    perms = [tuple(p) for p in permutations(ids)]
    masks = []
    for p in perms:
        ranks = {v: i for i, v in enumerate(p)}
        mask = 0
        for triple, a in constraints:
            if max(triple, key=ranks.__getitem__) == a:
                mask |= 1 << index[(triple, a)]
        masks.append(mask)

    identity = perms[0]
    id_mask = masks[0]

    def search(t: int):
        def dfs(covered: int, chosen: list[int], depth: int):
            if covered == full:
                return list(chosen)
            if depth == t:
                return None
            need = full & ~covered
            if bin(need).count("1") > (t - depth) * per_perm:
                return None
            if depth == t - 1:
                for i, mask in enumerate(masks):
                    if mask & need == need:
                        return chosen + [i]
                return None
            ranked = sorted(
                range(len(perms)),
                key=lambda i: (-bin(masks[i] & need).count("1"), perms[i]),
            )
            for i in ranked:
                if not masks[i] & need:
                    break
                chosen.append(i)
                found = dfs(covered | masks[i], chosen, depth + 1)
                if found is not None:
                    return found
                chosen.pop()
            return None

        return dfs(id_mask, [], 1)

    t = 3
    while True:
        found = search(t)
        if found is not None:
            members = [Permutation(identity)] + [Permutation(perms[i]) for i in found]
            return t, PermutationFamily.build(ids, members)
        t += 1
