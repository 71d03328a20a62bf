"""Combinatorial mapping-space models between elements of a D-poset.

Fix a subcomplex K of the nerve of a poset and two comparable elements
S, T.  A k-simplex of the mapping space is a strict flag
M0 c M1 c ... c Mk of chains from S to T such that for each pair of
consecutive elements a < b of M0 the segment of Mk between a and b
(endpoints included) is a chain of K.  Faces drop flag levels, so the
family is an abstract simplicial complex on the set of such chains.

The necklace oracle recomputes the same simplices along a different
route: sequences of beads (K-chains with matching endpoints) glued end
to end, then all interior flags between the joint set and the full
vertex set of the necklace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bits import bit_list, bits, mask_of, max_bit, min_bit, subsets_of
from .horn import a_elements
from .oriental import DPoset, build_d, interval_mask, standard_interval
from .poset import ChainSubcomplex, MonotoneMap, Poset, nerve_chains

Flag = tuple[int, ...]


@dataclass
class FlagModel:
    """Simplices of a mapping-space model, grouped by dimension."""

    ambient: Poset
    source: int
    target: int
    simplices: dict[int, list[Flag]]
    method: str = "flag"

    def counts(self) -> list[int]:
        top = max(self.simplices, default=-1)
        return [len(self.simplices.get(k, [])) for k in range(top + 1)]

    def vertices(self) -> list[int]:
        return [f[0] for f in self.simplices.get(0, [])]

    def is_empty(self) -> bool:
        return not self.simplices.get(0)

    def to_complex(self):
        from .homotopy import Complex
        all_flags = [f for fs in self.simplices.values() for f in fs]
        return Complex(all_flags)

    def same_simplices(self, other: "FlagModel") -> bool:
        keys = set(self.simplices) | set(other.simplices)
        return all(sorted(self.simplices.get(k, [])) ==
                   sorted(other.simplices.get(k, [])) for k in keys)


def _interval_indices(poset: Poset, s_idx: int, t_idx: int) -> list[int]:
    return [k for k in range(len(poset))
            if poset.leq[s_idx, k] and poset.leq[k, t_idx]]


def _chains_between(poset: Poset, s_idx: int, t_idx: int,
                    members: list[int] | None = None) -> list[int]:
    """Masks of chains with bottom s and top t inside the member set."""
    if not poset.leq[s_idx, t_idx]:
        return []
    if s_idx == t_idx:
        return [1 << s_idx]
    allowed = set(members if members is not None else _interval_indices(poset, s_idx, t_idx))
    out: list[int] = []

    def extend(mask: int, last: int) -> None:
        if last == t_idx:
            out.append(mask)
            return
        for nxt in bits(poset.up_masks[last] & ~(1 << last)):
            if nxt in allowed and poset.leq[nxt, t_idx]:
                extend(mask | (1 << nxt), nxt)

    extend(1 << s_idx, s_idx)
    return sorted(out)


def refinement_poset(dposet: DPoset, s: int, t: int, min_len: int = 1) -> Poset:
    """Chains from S to T with at least min_len elements, under refinement."""
    p = dposet.poset
    s_idx, t_idx = p.index[s], p.index[t]
    chains = [c for c in _chains_between(p, s_idx, t_idx)
              if c.bit_count() >= min_len]
    return Poset.from_relation(chains, lambda a, b: a | b == b)


def restricted_refinement(dposet: DPoset, s: int, t: int, faces: list[int],
                          min_len: int = 1) -> Poset:
    """Refinement poset of chains through the intersection of the A(J)."""
    p = dposet.poset
    allowed = set(range(len(p)))
    for j_mask in faces:
        allowed &= {p.index[e] for e in a_elements(dposet, j_mask)}
    s_idx, t_idx = p.index[s], p.index[t]
    if s_idx not in allowed or t_idx not in allowed:
        return Poset.from_relation([], lambda a, b: True)
    members = [k for k in _interval_indices(p, s_idx, t_idx) if k in allowed]
    chains = [c for c in _chains_between(p, s_idx, t_idx, members)
              if c.bit_count() >= min_len]
    return Poset.from_relation(chains, lambda a, b: a | b == b)


class _SegmentTable:
    """K-chains grouped by (bottom, top) pair of ambient indices."""

    def __init__(self, k: ChainSubcomplex):
        self.k = k
        self.by_ends: dict[tuple[int, int], list[int]] = {}
        p = k.ambient
        for c in k.chains:
            tup = p.chain_tuple(c)
            self.by_ends.setdefault((tup[0], tup[-1]), []).append(c)
        for v in self.by_ends.values():
            v.sort()

    def segments(self, a: int, b: int) -> list[int]:
        return self.by_ends.get((a, b), [])


def _flags_above(bottom: int, admissible: list[int],
                 max_dim: int | None) -> list[Flag]:
    """Strict inclusion flags in the admissible family starting at bottom."""
    sups: dict[int, list[int]] = {
        m: [b for b in admissible if b != m and m & ~b == 0] for m in admissible}
    out: list[Flag] = []

    def extend(flag: tuple[int, ...]) -> None:
        out.append(flag)
        if max_dim is not None and len(flag) - 1 >= max_dim:
            return
        for nxt in sups[flag[-1]]:
            extend(flag + (nxt,))

    extend((bottom,))
    return out


def _edge_paths(k: ChainSubcomplex, s_idx: int, t_idx: int,
                interval: set[int]) -> list[int]:
    """Chains from S to T all of whose consecutive pairs are edges of K."""
    p = k.ambient
    if s_idx == t_idx:
        return [1 << s_idx] if (1 << s_idx) in k.chains else []
    found: list[int] = []

    def walk(mask: int, last: int) -> None:
        if last == t_idx:
            found.append(mask)
            return
        for nxt in bits(p.up_masks[last] & ~(1 << last)):
            if nxt in interval and ((1 << last) | (1 << nxt)) in k.chains:
                walk(mask | (1 << nxt), nxt)

    walk(1 << s_idx, s_idx)
    return sorted(found)


def flag_model(k: ChainSubcomplex, s: int, t: int, max_dim: int | None = None,
               exclusive: bool = False) -> FlagModel:
    """Mapping-space model between comparable vertices S and T of K.

    exclusive=True reads the segment condition without its endpoints
    (each strictly-between part of Mk must be empty or a chain of K);
    the default includes them.
    """
    p = k.ambient
    s_idx, t_idx = p.index[s], p.index[t]
    if not p.leq[s_idx, t_idx]:
        raise ValueError("source must be below target")
    table = _SegmentTable(k)
    interval = set(_interval_indices(p, s_idx, t_idx))

    if exclusive:
        def seg_choices(a: int, b: int) -> list[int]:
            ends = (1 << a) | (1 << b)
            return sorted(m for m in _chains_between(p, a, b, interval)
                          if m == ends or (m & ~ends) in k.chains)

        bottoms = _chains_between(p, s_idx, t_idx, interval)
    else:
        seg_choices = table.segments
        bottoms = _edge_paths(k, s_idx, t_idx, interval)

    simplices: dict[int, list[Flag]] = {}
    for bottom in bottoms:
        tup = p.chain_tuple(bottom)
        per_segment = [seg_choices(a, b) for a, b in zip(tup, tup[1:])]
        if any(not ch for ch in per_segment):
            continue
        if per_segment:
            admissible = sorted(set(
                _union_all(choice) for choice in product(*per_segment)))
        else:
            admissible = [bottom]
        for flag in _flags_above(bottom, admissible, max_dim):
            simplices.setdefault(len(flag) - 1, []).append(flag)
    for v in simplices.values():
        v.sort()
    return FlagModel(p, s, t, simplices,
                     method="flag-exclusive" if exclusive else "flag")


def _union_all(masks: tuple[int, ...]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def necklace_oracle(k: ChainSubcomplex, s: int, t: int,
                    max_dim: int | None = None, vertex_limit: int = 12) -> FlagModel:
    """Mapping space recomputed from bead sequences.

    A necklace is a sequence of K-chains with two or more elements whose
    endpoints match up, starting at S and ending at T.  Its simplices
    are the strict flags from the joint set to the full vertex set.
    This route never evaluates the segment condition directly.
    """
    p = k.ambient
    n_vertices = sum(1 for c in k.chains if c.bit_count() == 1)
    if n_vertices > vertex_limit:
        raise ValueError(f"necklace oracle limited to {vertex_limit} vertices")
    s_idx, t_idx = p.index[s], p.index[t]
    if not p.leq[s_idx, t_idx]:
        raise ValueError("source must be below target")
    interval = set(_interval_indices(p, s_idx, t_idx))

    beads_from: dict[int, list[tuple[int, int]]] = {}
    table = _SegmentTable(k)
    for (a, b), chains_ab in table.by_ends.items():
        if a == b or a not in interval or b not in interval:
            continue
        for c in chains_ab:
            beads_from.setdefault(a, []).append((b, c))
    for v in beads_from.values():
        v.sort()

    necklaces: list[tuple[int, int]] = []  # (vertex mask W, joint mask J)
    seen: dict[tuple[int, int], tuple[int, ...]] = {}

    def walk(at: int, wmask: int, jmask: int, beads: tuple[int, ...]) -> None:
        if at == t_idx:
            key = (wmask, jmask)
            if key in seen and seen[key] != beads:
                raise AssertionError("necklace decomposition not unique")
            if key not in seen:
                seen[key] = beads
                necklaces.append(key)
            return
        for b, c in beads_from.get(at, []):
            walk(b, wmask | c, jmask | (1 << b), beads + (c,))

    if s_idx == t_idx:
        if (1 << s_idx) in k.chains:
            necklaces.append((1 << s_idx, 1 << s_idx))
    else:
        walk(s_idx, 1 << s_idx, 1 << s_idx, ())

    simplices: dict[int, list[Flag]] = {}
    for wmask, jmask in necklaces:
        free = wmask & ~jmask
        for flag in _interior_flags(jmask, free, max_dim):
            simplices.setdefault(len(flag) - 1, []).append(flag)
    for v in simplices.values():
        v.sort()
    return FlagModel(p, s, t, simplices, method="necklace")


def _interior_flags(bottom: int, free: int, max_dim: int | None) -> list[Flag]:
    """Strict flags from bottom to bottom | free, filling in free bits."""
    out: list[Flag] = []

    def extend(flag: tuple[int, ...], remaining: int) -> None:
        if remaining == 0:
            out.append(flag)
            return
        if max_dim is not None and len(flag) - 1 >= max_dim:
            return
        # next level adds any nonempty subset of the remaining bits
        sub = remaining
        while sub:
            extend(flag + (flag[-1] | sub,), remaining & ~sub)
            sub = (sub - 1) & remaining

    extend((bottom,), free)
    return out


def square_chain_poset(n: int, i: int, j: int):
    """Chains in the square [0..n] x [0,1] from (i, 0) to (j, 1).

    Elements are frozensets of (value, row) pairs ordered by refinement
    (adding points).  Returns (chain poset, comparison map, D-poset):
    the map sends a chain to its bottom-row values plus the first
    top-row value and is monotone from the opposite of the chain poset
    to the D-poset over [i..n].
    """
    if not 0 <= i <= j <= n:
        raise ValueError("need 0 <= i <= j <= n")
    window = interval_mask(i, j)
    chains: list[frozenset] = []
    images: dict[frozenset, int] = {}
    for bottom in subsets_of(window):
        if not bottom & (1 << i):
            continue
        for top in subsets_of(window):
            if not top & (1 << j):
                continue
            if max_bit(bottom) > min_bit(top):
                continue
            c = frozenset([(a, 0) for a in bit_list(bottom)]
                          + [(b, 1) for b in bit_list(top)])
            chains.append(c)
            images[c] = bottom | (1 << min_bit(top))
    chains.sort(key=lambda c: (len(c), sorted(c)))
    poset = Poset.from_relation(chains, lambda a, b: a <= b)
    dposet = build_d(interval_mask(i, n))
    cmp_map = MonotoneMap(poset.opposite(), dposet.poset, images)
    return poset, cmp_map, dposet
