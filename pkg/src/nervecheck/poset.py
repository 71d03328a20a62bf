"""Finite posets, their chains, and chain subcomplexes.

A Poset holds a tuple of hashable labels and a dense boolean matrix for
the order relation.  Chains (totally ordered subsets) are stored as int
bitmasks over element indices, so families of chains are plain sets of
ints and subchain tests are single & operations.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .bits import bit_list, bits, mask_of

Label = Hashable


class Poset:
    """Finite poset on an explicit element list.

    leq[i, j] is True iff element i <= element j.  The relation is
    validated (reflexive, antisymmetric, transitive) at construction.
    """

    def __init__(self, elements: Sequence[Label], leq: np.ndarray, validate: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate labels")
        self.leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise ValueError("leq shape mismatch")
        if validate:
            self._validate()

    def _validate(self) -> None:
        m = self.leq
        n = len(self.elements)
        if not m.diagonal().all():
            raise ValueError("relation not reflexive")
        if (m & m.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("relation not antisymmetric")
        closure = m @ m
        if (closure & ~m).any():
            raise ValueError("relation not transitive")

    @classmethod
    def from_relation(cls, elements: Sequence[Label], related: Callable[[Label, Label], bool]) -> "Poset":
        els = list(elements)
        n = len(els)
        m = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                m[i, j] = related(a, b)
        return cls(els, m)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, label: Label) -> bool:
        return label in self.index

    def less_eq(self, a: Label, b: Label) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    def less(self, a: Label, b: Label) -> bool:
        return a != b and self.less_eq(a, b)

    @cached_property
    def up_masks(self) -> list[int]:
        """up_masks[i] = bitmask of {j : i <= j}."""
        return [mask_of(np.nonzero(self.leq[i])[0].tolist()) for i in range(len(self))]

    @cached_property
    def down_masks(self) -> list[int]:
        return [mask_of(np.nonzero(self.leq[:, j])[0].tolist()) for j in range(len(self))]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram as index pairs (i, j) with i covered by j."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        cov = lt & ~(lt @ lt)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    @cached_property
    def topo_rank(self) -> list[int]:
        """Ranks of a linear extension; within a chain, rank order = poset order."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        indeg = lt.sum(axis=0)
        rank = [0] * len(self)
        placed = 0
        ready = sorted(int(i) for i in np.nonzero(indeg == 0)[0])
        indeg = indeg.astype(int)
        while ready:
            nxt: list[int] = []
            for i in ready:
                rank[i] = placed
                placed += 1
                for j in np.nonzero(lt[i])[0]:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        nxt.append(int(j))
            ready = sorted(nxt)
        if placed != len(self):
            raise ValueError("cycle detected")  # unreachable after validation
        return rank

    def chain_tuple(self, chain_mask: int) -> tuple[int, ...]:
        """Indices of a chain sorted in increasing poset order."""
        return tuple(sorted(bits(chain_mask), key=lambda i: self.topo_rank[i]))

    def is_chain(self, chain_mask: int) -> bool:
        idx = bit_list(chain_mask)
        return all(self.leq[i, j] or self.leq[j, i] for k, i in enumerate(idx) for j in idx[k + 1:])

    def minimum(self) -> Label | None:
        for i in range(len(self)):
            if self.leq[i].all():
                return self.elements[i]
        return None

    def maximum(self) -> Label | None:
        for j in range(len(self)):
            if self.leq[:, j].all():
                return self.elements[j]
        return None

    def full_subposet(self, labels: Iterable[Label]) -> "Poset":
        keep = [self.index[l] for l in labels]
        sub = self.leq[np.ix_(keep, keep)]
        return Poset([self.elements[i] for i in keep], sub, validate=False)

    def opposite(self) -> "Poset":
        return Poset(self.elements, self.leq.T.copy(), validate=False)

    def to_json(self, label_to_json: Callable[[Label], object] | None = None) -> str:
        enc = label_to_json or default_label_json
        pairs = [[i, j] for i in range(len(self)) for j in range(len(self))
                 if i != j and self.leq[i, j]]
        return json.dumps({"elements": [enc(e) for e in self.elements], "leq": pairs})

    @classmethod
    def from_json(cls, text: str, label_from_json: Callable[[object], Label] | None = None) -> "Poset":
        dec = label_from_json or default_label_unjson
        data = json.loads(text)
        els = [dec(e) for e in data["elements"]]
        n = len(els)
        m = np.eye(n, dtype=bool)
        for i, j in data["leq"]:
            m[i, j] = True
        return cls(els, m)

    def to_dot(self, label_str: Callable[[Label], str] | None = None) -> str:
        """Hasse diagram in DOT format, edges pointing from smaller to larger."""
        fmt = label_str or default_label_str
        lines = ["digraph poset {", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{fmt(e)}"];')
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements)"


def default_label_json(label: Label) -> object:
    if isinstance(label, int):
        return bit_list(label)
    if isinstance(label, frozenset):
        return sorted(list(p) for p in label)
    return label


def default_label_unjson(obj: object) -> Label:
    if isinstance(obj, list):
        if obj and isinstance(obj[0], list):
            return frozenset(tuple(p) for p in obj)
        return mask_of(obj)
    return obj


def default_label_str(label: Label) -> str:
    if isinstance(label, int):
        return "".join(str(b) for b in bit_list(label)) or "()"
    if isinstance(label, frozenset):
        return "{" + ",".join(repr(tuple(p)) for p in sorted(label)) + "}"
    return str(label)


def nerve_chains(poset: Poset, max_len: int | None = None) -> list[int]:
    """All nonempty chains of the poset as index masks.

    max_len bounds the number of elements per chain (max_len = d + 1 for
    the d-skeleton of the nerve).  Output is sorted for determinism.
    """
    ups = poset.up_masks
    out: list[int] = []
    limit = len(poset) if max_len is None else max_len

    def extend(mask: int, top: int, size: int) -> None:
        out.append(mask)
        if size == limit:
            return
        above = ups[top] & ~(1 << top)
        for j in bits(above):
            extend(mask | (1 << j), j, size + 1)

    if limit >= 1:
        for i in range(len(poset)):
            extend(1 << i, i, 1)
    return sorted(out)


def strict_interval(poset: Poset, a: Label, b: Label) -> Poset:
    """Full subposet of elements strictly between a and b."""
    ia, ib = poset.index[a], poset.index[b]
    keep = [poset.elements[k] for k in range(len(poset))
            if k != ia and k != ib and poset.leq[ia, k] and poset.leq[k, ib]]
    return poset.full_subposet(keep)


class MonotoneMap:
    """Monotone map between posets, verified at construction."""

    def __init__(self, source: Poset, target: Poset, mapping: dict[Label, Label]):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        missing = [e for e in source.elements if e not in self.mapping]
        if missing:
            raise ValueError(f"mapping not total, missing {missing[:3]}")
        for a in source.elements:
            for b in source.elements:
                if source.less_eq(a, b) and not target.less_eq(self.mapping[a], self.mapping[b]):
                    raise ValueError(f"not monotone at ({a!r}, {b!r})")

    def __call__(self, label: Label) -> Label:
        return self.mapping[label]

    def image(self) -> set[Label]:
        return set(self.mapping.values())


class ChainSubcomplex:
    """Subcomplex of a poset nerve, stored as a subchain-closed chain family.

    chains is a set of index masks over the ambient poset.  Every
    nonempty submask of a member chain is again a member, so simplices
    of dimension k are exactly the members with k + 1 bits.
    """

    def __init__(self, ambient: Poset, chains: Iterable[int], validate: bool = True,
                 provenance: dict[int, object] | None = None):
        self.ambient = ambient
        self.chains = set(chains)
        self.provenance = provenance or {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        for c in self.chains:
            if c == 0:
                raise ValueError("empty chain stored")
            if not self.ambient.is_chain(c):
                raise ValueError(f"not a chain: {bit_list(c)}")
            for b in bits(c):
                sub = c & ~(1 << b)
                if sub and sub not in self.chains:
                    raise ValueError("family not subchain-closed")
                if (1 << b) not in self.chains:
                    raise ValueError("missing singleton")

    @classmethod
    def closure(cls, ambient: Poset, generators: Iterable[int], **kw) -> "ChainSubcomplex":
        """Close a set of chains under nonempty subchains."""
        family: set[int] = set()
        stack = [g for g in generators if g]
        while stack:
            c = stack.pop()
            if c in family:
                continue
            family.add(c)
            for b in bits(c):
                sub = c & ~(1 << b)
                if sub and sub not in family:
                    stack.append(sub)
        return cls(ambient, family, validate=False, **kw)

    def vertices(self) -> list[int]:
        return sorted(c.bit_length() - 1 for c in self.chains if c.bit_count() == 1)

    def simplices_of_dim(self, k: int) -> list[int]:
        return sorted(c for c in self.chains if c.bit_count() == k + 1)

    def dimension(self) -> int:
        return max((c.bit_count() - 1 for c in self.chains), default=-1)

    def __contains__(self, chain_mask: int) -> bool:
        return chain_mask in self.chains

    def __le__(self, other: "ChainSubcomplex") -> bool:
        return self.ambient is other.ambient and self.chains <= other.chains

    def union(self, other: "ChainSubcomplex") -> "ChainSubcomplex":
        assert self.ambient is other.ambient
        return ChainSubcomplex(self.ambient, self.chains | other.chains, validate=False)

    def intersection(self, other: "ChainSubcomplex") -> "ChainSubcomplex":
        assert self.ambient is other.ambient
        return ChainSubcomplex(self.ambient, self.chains & other.chains, validate=False)

    def vertex_sets(self) -> list[tuple[int, ...]]:
        """Simplices as sorted tuples of ambient element indices."""
        return [self.ambient.chain_tuple(c) for c in sorted(self.chains)]

    def __repr__(self) -> str:
        return f"ChainSubcomplex({len(self.chains)} chains, dim {self.dimension()})"
