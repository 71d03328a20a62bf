"""Machine verdicts on contractibility of finite simplicial complexes.

Complexes here are abstract: a simplex is a sorted tuple of vertex ids
and the family is closed under nonempty subsets.  The verdict pipeline
is greedy free-face collapse first; if that strands a core, integer
homology (Smith normal form over Python ints, so no overflow exists)
and an edge-path-group triviality search run on the core.  Elementary
collapses preserve homotopy type, which keeps the matrices small.

Verdict semantics:
  Contractible      collapse reached a single vertex, or the stuck core
                    has trivial fundamental group and zero reduced
                    homology (simply connected + acyclic suffices for
                    finite complexes by Whitehead's theorem)
  NotContractible   some reduced homology group is nonzero
  Inconclusive      everything else; never claimed from a failed search
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence


class Complex:
    """Finite abstract simplicial complex with interned vertex ids."""

    def __init__(self, simplices: Iterable[Sequence[Hashable]]):
        labels: dict[Hashable, int] = {}
        family: set[tuple[int, ...]] = set()
        for s in simplices:
            for v in s:
                if v not in labels:
                    labels[v] = len(labels)
            t = tuple(sorted(labels[v] for v in s))
            if len(set(t)) != len(t):
                raise ValueError("repeated vertex in simplex")
            if t:
                family.add(t)
        self.vertex_labels = [v for v, _ in sorted(labels.items(), key=lambda kv: kv[1])]
        self.simplices = family
        self._close()

    def _close(self):
        stack = list(self.simplices)
        while stack:
            s = stack.pop()
            if len(s) == 1:
                continue
            for f in combinations(s, len(s) - 1):
                if f not in self.simplices:
                    self.simplices.add(f)
                    stack.append(f)

    @classmethod
    def from_maximal(cls, simplices: Iterable[Sequence[Hashable]]) -> "Complex":
        return cls(simplices)

    def by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        out: dict[int, list[tuple[int, ...]]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def is_empty(self) -> bool:
        return not self.simplices


def smith_diagonal(rows: list[dict[int, int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a sparse integer matrix.

    Exact arithmetic on Python ints.  Pivot choice favours entries of
    minimal absolute value to limit growth.
    """
    # convert to dense-of-dicts working form
    mat: dict[tuple[int, int], int] = {}
    for r, row in enumerate(rows):
        for c, v in row.items():
            if v:
                mat[(r, c)] = v
    diag: list[int] = []
    row_ids = set(r for r, _ in mat)
    col_ids = set(c for _, c in mat)
    by_row: dict[int, set[int]] = {}
    by_col: dict[int, set[int]] = {}
    for r, c in mat:
        by_row.setdefault(r, set()).add(c)
        by_col.setdefault(c, set()).add(r)

    def entry(r, c):
        return mat.get((r, c), 0)

    def set_entry(r, c, v):
        if v:
            mat[(r, c)] = v
            by_row.setdefault(r, set()).add(c)
            by_col.setdefault(c, set()).add(r)
        else:
            if (r, c) in mat:
                del mat[(r, c)]
                by_row[r].discard(c)
                by_col[c].discard(r)

    def add_row(src, dst, k):
        # row dst += k * row src
        for c in list(by_row.get(src, ())):
            set_entry(dst, c, entry(dst, c) + k * entry(src, c))

    def add_col(src, dst, k):
        for r in list(by_col.get(src, ())):
            set_entry(r, dst, entry(r, dst) + k * entry(r, src))

    while mat:
        # pivot with minimal |value|
        (pr, pc), pv = min(mat.items(), key=lambda kv: (abs(kv[1]), kv[0]))
        # clear pivot row and column by euclidean steps
        while True:
            moved = False
            for r in list(by_col.get(pc, ())):
                if r == pr:
                    continue
                q = entry(r, pc) // entry(pr, pc)
                add_row(pr, r, -q)
                if entry(r, pc):
                    pr, pv = r, entry(r, pc)
                    moved = True
                    break
            if moved:
                continue
            for c in list(by_row.get(pr, ())):
                if c == pc:
                    continue
                q = entry(pr, c) // entry(pr, pc)
                add_col(pc, c, -q)
                if entry(pr, c):
                    pc, pv = c, entry(pr, c)
                    moved = True
                    break
            if not moved:
                break
        d = abs(entry(pr, pc))
        diag.append(d)
        for c in list(by_row.get(pr, ())):
            set_entry(pr, c, 0)
        for r in list(by_col.get(pc, ())):
            set_entry(r, pc, 0)
    return diag


@dataclass
class HomologySummary:
    """Reduced integer homology: betti numbers and torsion per degree."""

    betti: list[int]
    torsion: list[list[int]]

    def trivial(self) -> bool:
        return all(b == 0 for b in self.betti) and all(not t for t in self.torsion)

    def top_nonzero(self):
        for k in range(len(self.betti) - 1, -1, -1):
            if self.betti[k] or self.torsion[k]:
                return k, self.betti[k], self.torsion[k]
        return None


def homology(cx: Complex) -> HomologySummary:
    """Reduced homology with integer coefficients via Smith normal form."""
    if cx.is_empty():
        return HomologySummary([], [])
    strata = cx.by_dim()
    top = cx.dimension()
    index = {d: {s: i for i, s in enumerate(strata.get(d, []))} for d in range(top + 1)}

    def boundary(d: int) -> tuple[list[dict[int, int]], int]:
        """Matrix of the boundary map from degree d to degree d-1."""
        rows = []
        for s in strata.get(d, []):
            row: dict[int, int] = {}
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                row[index[d - 1][f]] = (-1) ** k
            rows.append(row)
        return rows, len(strata.get(d - 1, []))

    ranks: dict[int, int] = {}
    torsions: dict[int, list[int]] = {}
    for d in range(1, top + 1):
        rows, ncols = boundary(d)
        diag = smith_diagonal(rows, ncols)
        ranks[d] = len(diag)
        torsions[d] = sorted(v for v in diag if v > 1)
    betti = []
    torsion = []
    for d in range(top + 1):
        n_d = len(strata.get(d, []))
        b = n_d - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if d == 0:
            b -= 1  # reduced
        betti.append(b)
        torsion.append(torsions.get(d + 1, []))
    return HomologySummary(betti, torsion)


@dataclass
class CollapseResult:
    success: bool
    pairs: list[tuple[tuple[int, ...], tuple[int, ...]]]
    critical: list[tuple[int, ...]]


def collapse(cx: Complex, reverse: bool = False) -> CollapseResult:
    """Greedy elementary collapse, deterministic lexicographic tie-break.

    Free faces (exactly one remaining coface) are consumed smallest
    first; the reverse flag flips the tie-break for the retry pass.
    """
    present = set(cx.simplices)
    cofaces: dict[tuple[int, ...], set[tuple[int, ...]]] = {s: set() for s in present}
    for s in present:
        if len(s) > 1:
            for f in combinations(s, len(s) - 1):
                cofaces[f].add(s)

    if reverse:
        def key(s):
            return (-len(s), tuple(-v for v in s))
    else:
        def key(s):
            return (len(s), s)

    heap = [(key(s), s) for s in present if len(cofaces[s]) == 1]
    heapq.heapify(heap)
    pairs = []

    def drop(u):
        present.discard(u)
        if len(u) > 1:
            for f in combinations(u, len(u) - 1):
                links = cofaces[f]
                links.discard(u)
                if f in present and len(links) == 1:
                    heapq.heappush(heap, (key(f), f))

    while heap:
        _, s = heapq.heappop(heap)
        if s not in present or len(cofaces[s]) != 1:
            continue
        (tau,) = cofaces[s]
        drop(s)
        drop(tau)
        pairs.append((s, tau))
    critical = sorted(present)
    success = len(critical) == 1 and len(critical[0]) == 1
    return CollapseResult(success, pairs, critical)


def _free_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    w = list(_free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def pi1_trivial(cx: Complex) -> bool | None:
    """Try to prove the edge-path group trivial by greedy Tietze moves.

    Returns True only when every generator is eliminated; never claims
    nontriviality (that is homology's job through the abelianization).
    """
    strata = cx.by_dim()
    vertices = [s[0] for s in strata.get(0, [])]
    edges = strata.get(1, [])
    triangles = strata.get(2, [])
    if not vertices:
        return None
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    root = vertices[0]
    parent: dict[int, int | None] = {root: None}
    order = [root]
    for u in order:
        for v in sorted(adj[u]):
            if v not in parent:
                parent[v] = u
                order.append(v)
    if len(parent) != len(vertices):
        return None  # disconnected; homology already reports this
    tree = {tuple(sorted((v, p))) for v, p in parent.items() if p is not None}
    gen_of: dict[tuple[int, int], int] = {}
    for e in edges:
        if e not in tree:
            gen_of[e] = len(gen_of) + 1

    def letter(u, v):
        """Generator letter for the oriented step u -> v, 0 for tree edges."""
        e = (u, v) if u < v else (v, u)
        g = gen_of.get(e, 0)
        if g == 0:
            return 0
        return g if (u, v) == e else -g

    relators: list[tuple[int, ...]] = []
    for a, b, c in triangles:
        w = tuple(x for x in (letter(a, b), letter(b, c), -letter(a, c)) if x)
        relators.append(_cyclic_reduce(w))

    live = set(range(1, len(gen_of) + 1))
    relators = [r for r in relators if r]

    def substitute(word, g, repl):
        out: list[int] = []
        for x in word:
            if x == g:
                out.extend(repl)
            elif x == -g:
                out.extend(-y for y in reversed(repl))
            else:
                out.append(x)
        return _cyclic_reduce(tuple(out))

    changed = True
    while changed and live:
        changed = False
        relators = sorted({r for r in (_cyclic_reduce(r) for r in relators) if r},
                          key=lambda r: (len(r), r))
        sub: tuple[int, tuple[int, ...]] | None = None
        for r in relators:
            if len(r) == 1:
                sub = (abs(r[0]), ())
                break
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                x, y = r
                # x y = 1; solve for the first letter's generator
                if x > 0:
                    sub = (x, (-y,))
                else:
                    sub = (-x, (y,))
                break
        if sub is None:
            break
        g, repl = sub
        live.discard(g)
        relators = [substitute(r, g, repl) for r in relators]
        relators = [r for r in relators if r]
        changed = True
    if not live:
        return True
    return None


@dataclass
class Verdict:
    """Outcome of a contractibility check with its certificate."""

    status: str  # Contractible | NotContractible | Inconclusive
    method: str
    detail: dict = field(default_factory=dict)

    @property
    def contractible(self) -> bool | None:
        if self.status == "Contractible":
            return True
        if self.status == "NotContractible":
            return False
        return None


def contractibility_verdict(cx: Complex) -> Verdict:
    """Collapse greedily; on a stuck core fall back to homology and pi_1."""
    if cx.is_empty():
        return Verdict("NotContractible", "empty",
                       {"reason": "empty complex is not contractible"})
    first = collapse(cx)
    if first.success:
        return Verdict("Contractible", "collapse",
                       {"pairs": len(first.pairs), "order": "lex"})
    second = collapse(cx, reverse=True)
    if second.success:
        return Verdict("Contractible", "collapse",
                       {"pairs": len(second.pairs), "order": "reverse-lex"})
    core_cells = min((first.critical, second.critical), key=len)
    core = Complex(core_cells)
    h = homology(core)
    if not h.trivial():
        k, b, t = h.top_nonzero()
        return Verdict("NotContractible", "homology",
                       {"degree": k, "betti": b, "torsion": t,
                        "core_cells": len(core_cells)})
    p1 = pi1_trivial(core)
    if p1:
        return Verdict("Contractible", "acyclic-simply-connected",
                       {"core_cells": len(core_cells)})
    return Verdict("Inconclusive", "pi1-unresolved",
                   {"core_cells": len(core_cells)})


def complex_from_chains(sub) -> Complex:
    """Abstract complex of a chain family (poset nerve subcomplex)."""
    return Complex(sub.vertex_sets())


def complex_from_json(data: dict) -> Complex:
    return Complex([tuple(s) for s in data["simplices"]])
