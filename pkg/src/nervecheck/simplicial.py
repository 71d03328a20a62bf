"""Truncated simplicial sets stored by nondegenerate cells.

A backend supplies concrete hashable simplices per dimension together
with precomposition along monotone maps (alpha_star).  The table keeps
only the nondegenerate cells; an arbitrary simplex is referenced by a
pair (alpha, cell) where alpha is the monotone surjection of its
Eilenberg-Zilber normal form.  Faces, degeneracies, horn enumeration
and boundary-sphere enumeration all work on such references.
"""

from __future__ import annotations

from itertools import combinations

Alpha = tuple[int, ...]
Ref = tuple[Alpha, int, int]  # (surjection, core dimension, core index)


def identity_alpha(n: int) -> Alpha:
    return tuple(range(n + 1))


def delta(i: int, n: int) -> Alpha:
    """Coface [n-1] -> [n] skipping i."""
    return tuple(j for j in range(n + 1) if j != i)


def codegeneracy(j: int, n: int) -> Alpha:
    """Codegeneracy [n+1] -> [n] repeating j."""
    return tuple(min(k, j) for k in range(j + 1)) + tuple(
        k - 1 for k in range(j + 1, n + 2))


def compose_alpha(outer: Alpha, inner: Alpha) -> Alpha:
    return tuple(outer[v] for v in inner)


def monotone_surjections(k: int, j: int) -> list[Alpha]:
    """Weakly increasing surjections [k] -> [j]."""
    if j > k or j < 0:
        return []
    out = []
    for steps in combinations(range(k), j):
        vals, v = [], 0
        for pos in range(k + 1):
            vals.append(v)
            if pos in steps:
                v += 1
        out.append(tuple(vals))
    return out


def sort_key(x):
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, str):
        return (1, x)
    return (0, repr(x))


class SimplexTable:
    """Simplicial set truncated at a dimension bound."""

    def __init__(self, backend, dim: int, marked_rule=None, thin_rule=None):
        self.backend = backend
        self.dim = dim
        self.cells: list[list] = []
        self.index: dict = {}
        all_sets: list[set] = []
        for k in range(dim + 1):
            sims = list(backend.simplices(k))
            sset = set(sims)
            if len(sset) != len(sims):
                raise ValueError(f"duplicate simplices in dimension {k}")
            degenerate = set()
            if k > 0:
                for t in all_sets[k - 1]:
                    for j in range(k):
                        degenerate.add(backend.alpha_star(t, codegeneracy(j, k - 1)))
                if not degenerate <= sset:
                    raise ValueError(f"degeneracies missing in dimension {k}")
                for s in sims:
                    for i in range(k + 1):
                        if backend.alpha_star(s, delta(i, k)) not in all_sets[k - 1]:
                            raise ValueError(f"face missing below dimension {k}")
            all_sets.append(sset)
            nondeg = sorted((s for s in sims if s not in degenerate), key=sort_key)
            self.cells.append(nondeg)
            for i, s in enumerate(nondeg):
                self.index[s] = (k, i)
        self.faces: list[list[tuple[Ref, ...]]] = [[]]
        for k in range(1, dim + 1):
            self.faces.append([
                tuple(self.normalize(backend.alpha_star(s, delta(i, k)), k - 1)
                      for i in range(k + 1))
                for s in self.cells[k]])
        self.marked: frozenset = frozenset(
            i for i, e in enumerate(self.cells[1]) if marked_rule(e)
        ) if marked_rule and dim >= 1 else frozenset()
        self.thin: frozenset = frozenset(
            i for i, t in enumerate(self.cells[2]) if thin_rule(t)
        ) if thin_rule and dim >= 2 else frozenset()

    # --- references ---------------------------------------------------

    def normalize(self, s, k: int | None = None) -> Ref:
        """Eilenberg-Zilber normal form of a concrete simplex."""
        if k is None:
            k = self.backend.dim_of(s)
        alpha = identity_alpha(k)
        peeling = True
        while peeling:
            peeling = False
            for j in range(k):
                t = self.backend.alpha_star(s, delta(j, k))
                if self.backend.alpha_star(t, codegeneracy(j, k - 1)) == s:
                    alpha = compose_alpha(codegeneracy(j, k - 1), alpha)
                    s, k = t, k - 1
                    peeling = True
                    break
        kk, i = self.index[s]
        assert kk == k
        return (alpha, k, i)

    def concrete(self, ref: Ref):
        alpha, k, i = ref
        if alpha == identity_alpha(k):
            return self.cells[k][i]
        return self.backend.alpha_star(self.cells[k][i], alpha)

    def ref_of_cell(self, k: int, i: int) -> Ref:
        return (identity_alpha(k), k, i)

    def all_refs(self, k: int) -> list[Ref]:
        """All k-simplices, degenerate ones included."""
        out = []
        for j in range(min(k, self.dim) + 1):
            for alpha in monotone_surjections(k, j):
                out.extend((alpha, j, i) for i in range(len(self.cells[j])))
        return out

    def face(self, ref: Ref, i: int) -> Ref:
        alpha, j, idx = ref
        k = len(alpha) - 1
        if k == 0:
            raise ValueError("vertices have no faces")
        if k == j:
            return self.faces[k][idx][i]
        beta = compose_alpha(alpha, delta(i, k))
        if len(set(beta)) == j + 1:
            # still surjective onto the same nondegenerate core
            return (beta, j, idx)
        return self.normalize(self.backend.alpha_star(self.cells[j][idx], beta),
                              k - 1)

    def boundary(self, ref: Ref) -> tuple[Ref, ...]:
        k = len(ref[0]) - 1
        return tuple(self.face(ref, i) for i in range(k + 1))

    def degeneracy(self, ref: Ref, j: int) -> Ref:
        alpha, jj, idx = ref
        k = len(alpha) - 1
        return (compose_alpha(alpha, codegeneracy(j, k)), jj, idx)

    def is_degenerate(self, ref: Ref) -> bool:
        return len(ref[0]) - 1 != ref[1]

    def edge_marked(self, ref: Ref) -> bool:
        if self.is_degenerate(ref):
            return True
        return ref[2] in self.marked

    def triangle_thin(self, ref: Ref) -> bool:
        if self.is_degenerate(ref):
            return True
        return ref[2] in self.thin

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def total_counts(self) -> list[int]:
        return [len(self.all_refs(k)) for k in range(self.dim + 1)]


def _compatible_tuples(table: SimplexTable, n: int,
                       positions: list[int]) -> list[dict[int, Ref]]:
    """Assignments position -> (n-1)-ref with matching shared faces.

    For j < k in positions the faces must satisfy d_j(x_k) = d_{k-1}(x_j).
    """
    refs = table.all_refs(n - 1)
    fv = {r: tuple(table.face(r, m) for m in range(n)) for r in refs}
    p0 = positions[0]
    by_first: dict[Ref, list[Ref]] = {}
    for r in refs:
        by_first.setdefault(fv[r][p0], []).append(r)
    out: list[dict[int, Ref]] = []
    partial: dict[int, Ref] = {}

    def place(t: int) -> None:
        if t == len(positions):
            out.append(dict(partial))
            return
        k = positions[t]
        cands = refs if t == 0 else by_first.get(fv[partial[p0]][k - 1], [])
        for r in cands:
            if all(fv[r][j] == fv[partial[j]][k - 1] for j in positions[1:t]):
                partial[k] = r
                place(t + 1)
                del partial[k]

    place(0)
    return out


def horn_fill_check(table: SimplexTable, n: int, i: int) -> dict:
    """Enumerate all inner-horn tuples and search for fillers."""
    if not 0 < i < n:
        raise ValueError("only inner horns are checked")
    if table.dim < n:
        raise ValueError("table not built high enough")
    positions = [j for j in range(n + 1) if j != i]
    horns = _compatible_tuples(table, n, positions)
    by_faces: dict[tuple, list[Ref]] = {}
    for y in table.all_refs(n):
        key = tuple(table.face(y, j) for j in positions)
        by_faces.setdefault(key, []).append(y)
    filled = 0
    unfilled = []
    filler_counts: dict[int, int] = {}
    for horn in horns:
        key = tuple(horn[j] for j in positions)
        fillers = by_faces.get(key, [])
        filler_counts[len(fillers)] = filler_counts.get(len(fillers), 0) + 1
        if fillers:
            filled += 1
        elif len(unfilled) < 5:
            unfilled.append(key)
    return {
        "n": n, "i": i,
        "horns": len(horns),
        "filled": filled,
        "all_filled": filled == len(horns),
        "filler_counts": dict(sorted(filler_counts.items())),
        "unfilled_examples": unfilled,
    }


def sphere_maps(table: SimplexTable, n: int) -> list[dict[int, Ref]]:
    """Maps from the boundary of the n-simplex: n+1 compatible faces."""
    return _compatible_tuples(table, n, list(range(n + 1)))


class ComplexBackend:
    """Simplicial set generated by an abstract simplicial complex.

    Simplices are weakly increasing vertex tuples whose support is a
    face of the complex.  The vertex order is the sorted label order.
    """

    def __init__(self, faces):
        # faces: iterable of vertex tuples, closed under nonempty subsets
        self.faces = {tuple(sorted(set(f))) for f in faces}
        for f in self.faces:
            for i in range(len(f)):
                sub = f[:i] + f[i + 1:]
                if sub and sub not in self.faces:
                    raise ValueError("face family not closed")

    def simplices(self, k: int) -> list:
        out = []
        for f in sorted(self.faces, key=sort_key):
            m = len(f) - 1
            if m > k:
                continue
            for alpha in monotone_surjections(k, m):
                out.append(tuple(f[a] for a in alpha))
        return out

    def alpha_star(self, s, alpha: Alpha):
        return tuple(s[a] for a in alpha)

    def dim_of(self, s) -> int:
        return len(s) - 1


class CategoryNerveBackend:
    """Nerve of a finite category; simplices are composable chains."""

    def __init__(self, cat):
        self.cat = cat

    def simplices(self, k: int) -> list:
        out = []

        def extend(objs, mors):
            if len(mors) == k:
                out.append((tuple(objs), tuple(mors)))
                return
            for f in self.cat.morphisms:
                if self.cat.src[f] == objs[-1]:
                    extend(objs + [self.cat.tgt[f]], mors + [f])

        for x in self.cat.objects:
            extend([x], [])
        return out

    def alpha_star(self, s, alpha: Alpha):
        objs, mors = s
        new_objs = tuple(objs[a] for a in alpha)
        new_mors = []
        for t in range(len(alpha) - 1):
            seg = mors[alpha[t]:alpha[t + 1]]
            new_mors.append(self.cat.compose_path(seg, at=objs[alpha[t]]))
        return (new_objs, tuple(new_mors))

    def dim_of(self, s) -> int:
        return len(s[0]) - 1


def nerve_table(cat, dim: int, marked_isos: bool = True) -> SimplexTable:
    backend = CategoryNerveBackend(cat)
    marked = (lambda e: cat.is_iso(e[1][0])) if marked_isos else None
    return SimplexTable(backend, dim, marked_rule=marked, thin_rule=lambda t: True)
