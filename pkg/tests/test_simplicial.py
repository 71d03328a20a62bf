import pytest

from nervecheck.category import chain_category, walking_iso
from nervecheck.simplicial import (
    ComplexBackend,
    SimplexTable,
    codegeneracy,
    compose_alpha,
    delta,
    horn_fill_check,
    identity_alpha,
    monotone_surjections,
    nerve_table,
    sphere_maps,
)


def closure(*tops):
    faces = set()
    for top in tops:
        n = len(top)
        for mask in range(1, 1 << n):
            faces.add(tuple(top[i] for i in range(n) if mask >> i & 1))
    return faces


def simplex_table(dim=2):
    return SimplexTable(ComplexBackend(closure((0, 1, 2))), dim)


def test_cosimplicial_identities():
    n = 4
    for i in range(n):
        for j in range(i + 1, n + 1):
            left = compose_alpha(delta(j, n), delta(i, n - 1))
            right = compose_alpha(delta(i, n), delta(j - 1, n - 1))
            assert left == right
    for j in range(n):
        # both composites around a matching coface/codegeneracy cancel
        assert compose_alpha(codegeneracy(j, n - 1), delta(j, n)) == \
            identity_alpha(n - 1)
        assert compose_alpha(codegeneracy(j, n - 1), delta(j + 1, n)) == \
            identity_alpha(n - 1)


def test_monotone_surjections_counts():
    assert monotone_surjections(2, 1) == [(0, 1, 1), (0, 0, 1)] or \
        set(monotone_surjections(2, 1)) == {(0, 1, 1), (0, 0, 1)}
    for k in range(6):
        for j in range(k + 1):
            from math import comb
            assert len(monotone_surjections(k, j)) == comb(k, j)
            for a in monotone_surjections(k, j):
                assert a[0] == 0 and a[-1] == j
                assert all(0 <= b - a_ <= 1 for a_, b in zip(a, a[1:]))


def test_full_triangle_counts():
    t = simplex_table()
    assert t.counts() == [3, 3, 1]
    # all simplices, degenerate included: monotone maps into the triangle
    assert t.total_counts() == [3, 6, 10]


def test_normalize_roundtrip():
    t = simplex_table()
    for k in range(3):
        for ref in t.all_refs(k):
            assert t.normalize(t.concrete(ref), k) == ref


def test_face_identities_on_table():
    t = simplex_table(2)
    for ref in t.all_refs(2):
        for i in range(2):
            for j in range(i + 1, 3):
                assert t.face(t.face(ref, j), i) == t.face(t.face(ref, i), j - 1)


def test_degeneracy_identities_on_table():
    t = simplex_table(2)
    for ref in t.all_refs(1):
        for j in range(2):
            s = t.degeneracy(ref, j)
            assert t.face(s, j) == ref
            assert t.face(s, j + 1) == ref
        s0 = t.degeneracy(ref, 0)
        assert t.face(s0, 2) == t.degeneracy(t.face(ref, 1), 0)


def test_hollow_triangle_horn_unfilled():
    hollow = SimplexTable(ComplexBackend(closure((0, 1), (1, 2), (0, 2))), 2)
    assert hollow.counts() == [3, 3, 0]
    report = horn_fill_check(hollow, 2, 1)
    assert not report["all_filled"]
    assert report["horns"] - report["filled"] == 1
    missing = report["unfilled_examples"][0]
    assert hollow.concrete(missing[0]) == (1, 2)
    assert hollow.concrete(missing[1]) == (0, 1)
    full = simplex_table(2)
    assert horn_fill_check(full, 2, 1)["all_filled"]


def test_category_nerve_counts_and_horns():
    t = nerve_table(chain_category(2), 3)
    assert t.counts() == [3, 3, 1, 0]
    r2 = horn_fill_check(t, 2, 1)
    assert r2["all_filled"] and set(r2["filler_counts"]) == {1}
    for i in (1, 2):
        r3 = horn_fill_check(t, 3, i)
        assert r3["all_filled"] and set(r3["filler_counts"]) == {1}


def test_walking_iso_nerve_faces_renormalize():
    # composing u;v yields an identity, so inner faces of the alternating
    # chains land on degenerate simplices and must renormalize
    t = nerve_table(walking_iso(), 3)
    assert t.counts() == [2, 2, 2, 2]
    chain = next(s for s in t.cells[2] if s[1] == ("u", "v"))
    k, idx = t.index[chain]
    d1 = t.face(t.ref_of_cell(k, idx), 1)
    assert t.is_degenerate(d1)
    assert t.concrete(d1) == (("a", "a"), ("ida",))
    for ref in t.all_refs(3):
        for i in range(3):
            for j in range(i + 1, 4):
                assert t.face(t.face(ref, j), i) == t.face(t.face(ref, i), j - 1)


def test_marked_edges():
    iso_t = nerve_table(walking_iso(), 2)
    assert len(iso_t.marked) == 2
    plain = nerve_table(chain_category(2), 2)
    assert len(plain.marked) == 0
    v = plain.ref_of_cell(0, 0)
    assert plain.edge_marked(plain.degeneracy(v, 0))


def test_inner_horns_of_walking_iso():
    t = nerve_table(walking_iso(), 3)
    for n, i in ((2, 1), (3, 1), (3, 2)):
        rep = horn_fill_check(t, n, i)
        assert rep["all_filled"], (n, i)
        assert set(rep["filler_counts"]) == {1}


def test_sphere_maps_triangle():
    t = simplex_table(2)
    spheres = sphere_maps(t, 2)
    assert len(spheres) == 10
    by_boundary = {}
    for ref in t.all_refs(2):
        by_boundary.setdefault(t.boundary(ref), []).append(ref)
    for sph in spheres:
        key = (sph[0], sph[1], sph[2])
        assert len(by_boundary.get(key, [])) == 1


def test_sphere_maps_hollow_triangle_has_extra():
    hollow = SimplexTable(ComplexBackend(closure((0, 1), (1, 2), (0, 2))), 2)
    spheres = sphere_maps(hollow, 2)
    filled = set()
    for ref in hollow.all_refs(2):
        filled.add(hollow.boundary(ref))
    unfilled = [s for s in spheres if (s[0], s[1], s[2]) not in filled]
    assert len(unfilled) == 1


def test_backend_validation():
    with pytest.raises(ValueError):
        ComplexBackend([(0, 1, 2)])
    with pytest.raises(ValueError):
        horn_fill_check(simplex_table(1), 2, 1)
    with pytest.raises(ValueError):
        horn_fill_check(simplex_table(2), 2, 0)
