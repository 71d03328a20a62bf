"""Reduced lifting problems for the functor-family nerve.

A lifting problem fixes a boundary sphere in the family nerve of F
together with an n-simplex in the family nerve of G lying under it
along a levelwise transformation p: F -> G; a solution is a filler
simplex whose image is the prescribed one.  The reduced form trades
the filler for a single functor out of the subset poset on the simplex
positions: the sphere pins the functor on the subposets swept out by
the boundary faces, and the G-simplex pins its composite with p.  Both
solution sets are enumerated and compared through the explicit map
sending a filler to its position-subset functor.
"""

from __future__ import annotations

from typing import Mapping

from .category import CatFunctor, FiniteCategory, poset_functors
from .funcspec import FunctorSpec, digits, one_cells, pair_mask
from .nerves import Rel2Backend, pair_order, relative_nerve_2
from .oriental import d_leq, rho_image, rho_preimage
from .simplicial import SimplexTable, sphere_maps


class NatTrans:
    """Levelwise functors F(c) -> G(c) commuting with both actions.

    Over an oriental base the components must also intertwine the
    two-cell transformations; this is what keeps the induced map of
    family nerves well defined on derived pair data.
    """

    def __init__(self, source: FunctorSpec, target: FunctorSpec,
                 components: Mapping, validate: bool = True):
        self.source = source
        self.target = target
        self.components = dict(components)
        if validate:
            self._validate()

    def component(self, c) -> CatFunctor:
        return self.components[c]

    def _validate(self) -> None:
        src, tgt = self.source, self.target
        if src.oriental_base != tgt.oriental_base:
            raise ValueError("base kinds differ")
        if src.oriental_base and src.base != tgt.base:
            raise ValueError("bases differ")
        if not src.oriental_base and src.base is not tgt.base:
            raise ValueError("bases differ")
        for c in src.values:
            comp = self.components.get(c)
            if comp is None:
                raise ValueError(f"no component at {c!r}")
            if comp.source is not src.values[c] or comp.target is not tgt.values[c]:
                raise ValueError(f"component endpoints wrong at {c!r}")
        if src.oriental_base:
            for a in range(src.base + 1):
                for b in range(a + 1, src.base + 1):
                    cell = pair_mask(a, b)
                    if not src.functor(cell).then(self.components[a]).equals(
                            self.components[b].then(tgt.functor(cell))):
                        raise ValueError(f"not natural at cell {digits(cell)}")
            for (small, big), comp in src.two_cells.items():
                cell_src = min(b for b in range(src.base + 1) if big >> b & 1)
                cell_tgt = max(b for b in range(src.base + 1) if big >> b & 1)
                pi, pj = self.components[cell_src], self.components[cell_tgt]
                gtau = tgt.tau(small, big)
                for x in src.functor(big).source.objects:
                    if pi.on_mor(comp[x]) != gtau[pj.obj[x]]:
                        raise ValueError(
                            f"two-cell compatibility fails at "
                            f"{digits(small)} < {digits(big)}")
        else:
            for f in src.base.morphisms:
                if src.base.is_identity(f):
                    continue
                a, b = src.base.src[f], src.base.tgt[f]
                if not src.functor(f).then(self.components[a]).equals(
                        self.components[b].then(tgt.functor(f))):
                    raise ValueError(f"not natural at {f!r}")


def identity_nat(spec: FunctorSpec) -> NatTrans:
    comps = {c: CatFunctor.identity(e) for c, e in spec.values.items()}
    return NatTrans(spec, spec, comps)


def point_spec(base) -> FunctorSpec:
    """Diagram constant at the point category, with identity transports."""
    pt = FiniteCategory.point()
    if isinstance(base, int):
        values = {c: pt for c in range(base + 1)}
        action = {pair_mask(a, b): CatFunctor.identity(pt)
                  for a in range(base + 1) for b in range(a + 1, base + 1)}
        two = {}
        for i in range(base + 1):
            for j in range(i + 1, base + 1):
                cells = one_cells(i, j)
                two.update({(s, sp): {"*": "id"} for s in cells for sp in cells
                            if s != sp and s & sp == s})
        return FunctorSpec(base, values, action, two)
    values = {c: pt for c in base.objects}
    action = {f: CatFunctor.identity(pt) for f in base.morphisms
              if not base.is_identity(f)}
    return FunctorSpec(base, values, action)


def collapse_nat(spec: FunctorSpec) -> NatTrans:
    """Squash every value onto the constant point diagram."""
    tgt = point_spec(spec.base)
    pt = next(iter(tgt.values.values()))
    comps = {c: CatFunctor.constant(e, pt, "*") for c, e in spec.values.items()}
    return NatTrans(spec, tgt, comps)


def apply_nat(nat: NatTrans, z):
    """Image of a concrete family-nerve simplex under the transformation."""
    s, x, data = z
    k = len(x) - 1
    comps = [nat.component(s[0][j]) for j in range(k + 1)]
    xi = tuple(comps[j].obj[x[j]] for j in range(k + 1))
    di = tuple(comps[a].on_mor(m) for (a, b), m in zip(pair_order(k), data))
    return (s, xi, di)


def image_ref(nat: NatTrans, tf: SimplexTable, tg: SimplexTable, ref):
    return tg.normalize(apply_nat(nat, tf.concrete(ref)))


def sn_cells(n: int) -> tuple[set[int], set[tuple[int, int]]]:
    """Vertices and comparable pairs swept out by the boundary faces.

    The sweep unions, over every proper nonempty position subset J, the
    pullback image A(J) inside the subset poset on [0..n]; pairs are
    recorded when comparable inside a single A(J).
    """
    full = (1 << (n + 1)) - 1
    verts: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for jm in range(1, full):
        elems = rho_image(full, jm)
        verts.update(elems)
        edges.update((m, mp) for m in elems for mp in elems
                     if m != mp and d_leq(m, mp))
    return verts, edges


def _sphere_xf(table: SimplexTable, sphere: Mapping, n: int):
    """Vertex and pair data shared by the faces of a boundary sphere."""
    x: dict = {}
    f: dict = {}
    for t in range(n + 1):
        zc = table.concrete(sphere[t])
        emb = [j for j in range(n + 1) if j != t]
        for q, j in enumerate(emb):
            if x.setdefault(j, zc[1][q]) != zc[1][q]:
                raise ValueError("sphere faces disagree on a vertex value")
        for (qa, qb), m in zip(pair_order(n - 1), zc[2]):
            key = (emb[qa], emb[qb])
            if f.setdefault(key, m) != m:
                raise ValueError("sphere faces disagree on an edge value")
    return tuple(x[j] for j in range(n + 1)), f


def boundary_functor(back: Rel2Backend, zv, n: int) -> tuple[dict, dict]:
    """Partial functor on the subset poset assembled from the boundary.

    Every proper position subset J contributes its face functor pushed
    through the pullback pairing: an element splits as a hom part below
    min(J) and a subset part inside J, the face functor is applied to
    the subset part, and the result is transported along the hom part.
    On arrows the hom part moves contravariantly, so the transported
    face value is composed with the two-cell comparing the two paths.
    """
    spec, view = back.spec, back.view
    e0 = back.value_at(zv[0], 0)
    full = (1 << (n + 1)) - 1
    obj: dict = {}
    mor: dict = {}
    for jm in range(1, full):
        th = back.theta_of(zv, jm)
        if th is None:
            raise ValueError("boundary data is path dependent")
        elems = rho_image(full, jm)
        pre = {m: rho_preimage(jm, m) for m in elems}
        for m in elems:
            s1, s2 = pre[m]
            val = spec.functor(view.path_cell(zv[0], s1)).obj[th[0][s2]]
            if obj.setdefault(m, val) != val:
                raise ValueError("boundary functors disagree on an element")
        for m in elems:
            for mp in elems:
                if m == mp or not d_leq(m, mp):
                    continue
                s1, s2 = pre[m]
                t1, t2 = pre[mp]
                big = view.path_cell(zv[0], s1)
                small = view.path_cell(zv[0], t1)
                arrow = e0.then(spec.functor(big).on_mor(th[1][(s2, t2)]),
                                spec.tau(small, big)[th[0][t2]])
                if mor.setdefault((m, mp), arrow) != arrow:
                    raise ValueError("boundary functors disagree on an arrow")
    return obj, mor


def reduced_solutions(nat: NatTrans, back: Rel2Backend, zv, gbar) -> list[dict]:
    """Functors on the full subset poset extending the boundary data.

    Candidates are pinned on the boundary sweep, then filtered to lie
    over the functor induced by the prescribed G-simplex.
    """
    n = len(zv[1]) - 1
    full = (1 << (n + 1)) - 1
    dp = back.dpos(full)
    e0 = back.value_at(zv[0], 0)
    obj_pin, edge_pin = boundary_functor(back, zv, n)
    cover_pin = {}
    for ia, ib in dp.covers:
        key = (dp.elements[ia], dp.elements[ib])
        if key in edge_pin:
            cover_pin[key] = edge_pin[key]
    p0 = nat.component(back.view.vertex(zv[0], 0))
    g_obj, g_mor = gbar
    out = []
    for cand in poset_functors(dp, e0, obj_pin, cover_pin):
        mor = cand["mor"]
        if any(mor[k] != v for k, v in edge_pin.items()):
            continue
        if any(p0.obj[cand["obj"][m]] != g_obj[m] for m in dp.elements):
            continue
        if any(p0.on_mor(v) != g_mor[k] for k, v in mor.items()):
            continue
        out.append(cand)
    return out


def _freeze(obj: Mapping, mor: Mapping) -> tuple:
    return (frozenset(obj.items()), frozenset(mor.items()))


def lifting_problem_report(nat: NatTrans, tf: SimplexTable, tg: SimplexTable,
                           sphere: Mapping, w) -> dict:
    """Solve one lifting problem both ways and compare the solution sets."""
    n = len(sphere) - 1
    full = (1 << (n + 1)) - 1
    backf, backg = tf.backend, tg.backend
    for i in range(n + 1):
        if image_ref(nat, tf, tg, sphere[i]) != tg.face(w, i):
            raise ValueError("the sphere does not lie over the simplex boundary")
    wc = tg.concrete(w)
    x, f = _sphere_xf(tf, sphere, n)
    zv = (wc[0], x, tuple(f[pq] for pq in pair_order(n)))
    red = reduced_solutions(nat, backf, zv, backg.theta_of(wc, full))
    originals = [z for z in tf.all_refs(n)
                 if all(tf.face(z, i) == sphere[i] for i in range(n + 1))
                 and image_ref(nat, tf, tg, z) == w]
    mapped = {_freeze(*backf.theta_of(tf.concrete(z), full)) for z in originals}
    reduced_set = {_freeze(r["obj"], r["mor"]) for r in red}
    return {
        "original": len(originals),
        "reduced": len(red),
        "match": len(originals) == len(red),
        "bijection": len(mapped) == len(originals) == len(red)
        and mapped == reduced_set,
    }


def reduced_lifting_check(nat: NatTrans, n: int,
                          max_problems: int | None = None) -> dict:
    """Sweep every lifting problem at one level and compare both sides.

    A problem is a boundary sphere in the family nerve of the source
    together with an n-simplex of the target nerve restricting to its
    image.  Solutions are counted on both sides of the reduction and
    matched through the subset-poset functor of each filler.
    """
    if n < 2:
        raise ValueError("the boundary pins every vertex and pair only from n = 2 up")
    tf = relative_nerve_2(nat.source, n)
    tg = relative_nerve_2(nat.target, n)
    backf, backg = tf.backend, tg.backend
    full = (1 << (n + 1)) - 1
    imgs: dict = {}

    def img(r):
        if r not in imgs:
            imgs[r] = tg.normalize(apply_nat(nat, tf.concrete(r)))
        return imgs[r]

    fillers: dict[tuple, list] = {}
    for z in tf.all_refs(n):
        fillers.setdefault(tf.boundary(z), []).append(z)
    under: dict[tuple, list] = {}
    for y in tg.all_refs(n):
        under.setdefault(tg.boundary(y), []).append(y)

    problems = 0
    mismatches = 0
    broken = 0
    reduced_total = 0
    hist: dict[int, int] = {}
    done = False
    for sphere in sphere_maps(tf, n):
        if done:
            break
        key = tuple(sphere[i] for i in range(n + 1))
        cands = under.get(tuple(img(r) for r in key), [])
        if not cands:
            continue
        x, f = _sphere_xf(tf, sphere, n)
        zs_all = fillers.get(key, [])
        for w in cands:
            if max_problems is not None and problems >= max_problems:
                done = True
                break
            problems += 1
            wc = tg.concrete(w)
            zv = (wc[0], x, tuple(f[pq] for pq in pair_order(n)))
            red = reduced_solutions(nat, backf, zv, backg.theta_of(wc, full))
            reduced_total += len(red)
            zs = [z for z in zs_all if img(z) == w]
            hist[len(zs)] = hist.get(len(zs), 0) + 1
            if len(zs) != len(red):
                mismatches += 1
                continue
            mapped = {_freeze(*backf.theta_of(tf.concrete(z), full)) for z in zs}
            if len(mapped) != len(zs) or \
                    mapped != {_freeze(r["obj"], r["mor"]) for r in red}:
                broken += 1
    return {
        "n": n,
        "problems": problems,
        "count_mismatches": mismatches,
        "broken_bijections": broken,
        "bijective": mismatches == 0 and broken == 0,
        "solution_histogram": dict(sorted(hist.items())),
        "original_total": sum(k * v for k, v in hist.items()),
        "reduced_total": reduced_total,
    }
