import pytest

from nervecheck.category import (CatFunctor, FiniteCategory, chain_category,
                                 compose_nat, is_natural, poset_functors,
                                 walking_iso)
from nervecheck.poset import Poset


def divisor_poset(n):
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return Poset.from_relation(divs, lambda a, b: b % a == 0)


def test_point_category():
    pt = FiniteCategory.point()
    assert len(pt) == 1
    assert pt.then("id", "id") == "id"
    assert pt.is_iso("id")


def test_chain_category_counts():
    c = chain_category(2)
    assert len(c.objects) == 3
    assert len(c.morphisms) == 6
    assert c.then((0, 1), (1, 2)) == (0, 2)
    assert c.is_thin()
    assert not c.is_iso((0, 1))
    assert c.is_iso((1, 1))


def test_walking_iso():
    j = walking_iso()
    assert j.is_iso("u") and j.is_iso("v")
    assert j.then("u", "v") == "ida"
    assert j.then("v", "u") == "idb"
    assert not j.is_thin() or True  # thin in fact: one morphism per hom
    assert j.is_thin()


def test_validation_catches_broken_associativity():
    objects = ("x",)
    morphisms = ("e", "f", "g")
    src = {m: "x" for m in morphisms}
    tgt = {m: "x" for m in morphisms}
    ident = {"x": "e"}
    comp = {("e", "e"): "e", ("e", "f"): "f", ("f", "e"): "f",
            ("e", "g"): "g", ("g", "e"): "g",
            ("f", "f"): "g", ("f", "g"): "f", ("g", "f"): "g", ("g", "g"): "g"}
    # (f f) f = g f = g but f (f f) = f g = f
    with pytest.raises(ValueError):
        FiniteCategory(objects, morphisms, src, tgt, ident, comp)


def test_validation_catches_broken_unit():
    objects = ("x",)
    morphisms = ("e", "f")
    src = {"e": "x", "f": "x"}
    tgt = {"e": "x", "f": "x"}
    ident = {"x": "e"}
    comp = {("e", "e"): "e", ("e", "f"): "e", ("f", "e"): "f", ("f", "f"): "e"}
    with pytest.raises(ValueError):
        FiniteCategory(objects, morphisms, src, tgt, ident, comp)


def test_validation_catches_missing_composite():
    objects = ("x", "y")
    morphisms = ("ix", "iy", "f")
    src = {"ix": "x", "iy": "y", "f": "x"}
    tgt = {"ix": "x", "iy": "y", "f": "y"}
    ident = {"x": "ix", "y": "iy"}
    comp = {("ix", "ix"): "ix", ("iy", "iy"): "iy", ("ix", "f"): "f"}
    with pytest.raises(ValueError):
        FiniteCategory(objects, morphisms, src, tgt, ident, comp)


def test_from_poset_hom_sets():
    c = FiniteCategory.from_poset(divisor_poset(12))
    assert c.is_thin()
    assert c.hom(2, 12) == ((2, 12),)
    assert c.hom(4, 6) == ()
    assert c.then((1, 2), (2, 6)) == (1, 6)


def test_functor_validation():
    c = chain_category(1)
    pt = FiniteCategory.point()
    CatFunctor.constant(c, pt, "*")
    with pytest.raises(ValueError):
        CatFunctor(c, pt, {0: "*", 1: "*"}, {m: "id" for m in c.morphisms[:-1]})


def test_functor_composition_identity():
    c = chain_category(2)
    ident = CatFunctor.identity(c)
    assert ident.then(ident).equals(ident)


def test_is_natural():
    c = chain_category(1)
    f = CatFunctor.identity(c)
    # constant functor at 1 with eta_x: x -> 1
    g = CatFunctor(c, c, {0: 1, 1: 1}, {m: (1, 1) for m in c.morphisms})
    eta = {0: (0, 1), 1: (1, 1)}
    assert is_natural(f, g, eta)
    assert not is_natural(g, f, eta)
    assert compose_nat(c, {0: (0, 0), 1: (1, 1)}, eta) == eta


def test_poset_functors_monotone_maps():
    # functors between thin categories are exactly monotone maps
    p = Poset.from_relation([0, 1, 2], lambda a, b: a <= b)
    e = chain_category(1)
    fs = poset_functors(p, e)
    assert len(fs) == 4  # monotone maps [2] -> [1]
    for f in fs:
        objs = [f["obj"][k] for k in (0, 1, 2)]
        assert objs == sorted(objs)
        assert f["mor"][(0, 2)] == (f["obj"][0], f["obj"][2])


def test_poset_functors_respect_pins():
    p = Poset.from_relation([0, 1, 2], lambda a, b: a <= b)
    e = chain_category(1)
    fs = poset_functors(p, e, obj_pin={0: 1})
    assert len(fs) == 1
    assert fs[0]["obj"] == {0: 1, 1: 1, 2: 1}
    fs = poset_functors(p, e, edge_pin={(0, 1): (0, 1)})
    # 0 and 1 are pinned through the edge and 2 >= 1 forces value 1
    assert len(fs) == 1
    assert fs[0]["obj"] == {0: 0, 1: 1, 2: 1}


def test_poset_functors_path_independence():
    # square poset into the walking iso: diagonal composites must agree
    sq = Poset.from_relation(
        [(0, 0), (0, 1), (1, 0), (1, 1)],
        lambda a, b: a[0] <= b[0] and a[1] <= b[1])
    j = walking_iso()
    fs = poset_functors(sq, j)
    for f in fs:
        m1 = j.then(f["mor"][((0, 0), (0, 1))], f["mor"][((0, 1), (1, 1))])
        m2 = j.then(f["mor"][((0, 0), (1, 0))], f["mor"][((1, 0), (1, 1))])
        assert m1 == m2 == f["mor"][((0, 0), (1, 1))]
    # object assignments are unconstrained (every hom is a singleton)
    assert len(fs) == 16


def test_category_json_roundtrip():
    c = walking_iso()
    c2 = FiniteCategory.from_json(c.to_json())
    assert len(c2.objects) == len(c.objects)
    assert len(c2.morphisms) == len(c.morphisms)
    assert sorted(c2.objects) == sorted(c.objects)
    assert c2.is_iso("u")
