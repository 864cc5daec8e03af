import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyquot.catalog import SchlafliSymbol, coxeter_presentation, entry_by_name, petrie_relator
from polyquot.coset import coset_enumeration, perm_rep
from polyquot.permgroups import (BoundExceeded, MarkedGroup, are_conjugate,
                                 conjugates, enumerate_subgroups, group_order,
                                 intersect, is_member, product_set_intersect)

from oracles import brute_force_subgroups, conjugacy_partition, mulclose


def realize(entries, petrie=None):
    pres = coxeter_presentation(SchlafliSymbol(tuple(entries)))
    if petrie:
        pres = pres.with_relators([petrie_relator(petrie)])
    return perm_rep(coset_enumeration(pres))


@pytest.fixture(scope="module")
def cube():
    return entry_by_name("cube").group()


@pytest.fixture(scope="module")
def cube_xyz(cube):
    s0, s1, s2 = cube.gen_ids
    x = s0
    y = cube.mul(cube.mul(s1, x), s1)
    z = cube.mul(cube.mul(s2, y), s2)
    return x, y, z


def test_generators_must_be_involutions():
    with pytest.raises(ValueError):
        MarkedGroup(3, [np.array([1, 2, 0])])


def test_group_order_examples(ws):
    assert group_order(ws.universal(7).group) == 660  # the 11-cell
    assert group_order(MarkedGroup(1, [])) == 1
    assert group_order(ws.universal(10).group) == 192


def test_order_limit():
    g = entry_by_name("dodecahedron").group()
    small = MarkedGroup(g.degree, g.gens, order_limit=10)
    with pytest.raises(BoundExceeded):
        small.order


def test_is_member(cube):
    ident = np.arange(cube.degree)
    assert is_member(cube, ident)
    assert is_member(cube, cube.gens[1][cube.gens[0]])  # s0*s1
    # a 3-cycle on points fixed by nothing in the group's image set
    outside = np.arange(cube.degree)
    outside[[0, 1, 2]] = [1, 2, 0]
    assert not is_member(cube, outside)
    with pytest.raises(ValueError):
        is_member(cube, np.arange(cube.degree + 1))


def test_element_order_and_inverse(cube):
    orders = cube.element_orders
    assert orders[0] == 1
    for e in range(cube.order):
        assert cube.mul(e, cube.inverse(e)) == 0
        assert cube.power(np.array([e]), int(orders[e]))[0] == 0


def test_enumerate_subgroups_c2():
    from polyquot.presentations import Presentation

    g = perm_rep(coset_enumeration(Presentation(1, ())))
    classes = enumerate_subgroups(g)
    assert [(c.order, c.size) for c in classes] == [(1, 1), (2, 1)]


def test_enumerate_subgroups_s3():
    g = realize([3])
    classes = enumerate_subgroups(g)
    assert sorted(c.order for c in classes) == [1, 2, 3, 6]


def test_cube_subgroups_against_brute_force(cube):
    classes = enumerate_subgroups(cube)
    elems = mulclose([np.asarray(g) for g in cube.gens])
    all_subs = brute_force_subgroups(elems)
    assert sum(c.size for c in classes) == len(all_subs)
    assert len(classes) == len(conjugacy_partition(all_subs, elems))


def test_subgroup_bound():
    g = entry_by_name("cube").group()
    with pytest.raises(BoundExceeded):
        enumerate_subgroups(g, order_bound=10)


def test_enumerate_subgroups_canonical_order(cube):
    classes = enumerate_subgroups(cube)
    keys = [(c.order, tuple(c.rep.elem_ids)) for c in classes]
    assert keys == sorted(keys)


def test_are_conjugate_xy_yz(cube, cube_xyz):
    x, y, z = cube_xyz
    hxy = cube.subgroup([cube.mul(x, y)])
    hyz = cube.subgroup([cube.mul(y, z)])
    ok, witness = are_conjugate(cube, hxy, hyz)
    assert ok
    conj = np.sort(cube.conj(hxy.elem_ids, witness))
    assert np.array_equal(conj, hyz.elem_ids)


def test_are_conjugate_self(cube, cube_xyz):
    x, y, _ = cube_xyz
    h = cube.subgroup([cube.mul(x, y)])
    ok, witness = are_conjugate(cube, h, h)
    assert ok


def test_not_conjugate_same_order(cube, cube_xyz):
    # <xy> and <xyz> both have order 2; decided by exhaustive conjugation
    x, y, z = cube_xyz
    hxy = cube.subgroup([cube.mul(x, y)])
    hxyz = cube.subgroup([cube.mul(cube.mul(x, y), z)])
    assert hxy.order == hxyz.order == 2
    ok, _ = are_conjugate(cube, hxy, hxyz)
    assert not ok
    # oracle: conjugate by every element
    for g in range(cube.order):
        assert not np.array_equal(np.sort(cube.conj(hxy.elem_ids, g)), hxyz.elem_ids)


def test_conjugates_counts(cube, cube_xyz):
    x, y, z = cube_xyz
    xyz = cube.mul(cube.mul(x, y), z)
    assert len(conjugates(cube, cube.subgroup([xyz]))) == 1  # central
    assert len(conjugates(cube, cube.subgroup([]))) == 1
    assert len(conjugates(cube, cube.subgroup([cube.mul(x, y)]))) == 3


def test_center_is_normal(cube, cube_xyz):
    x, y, z = cube_xyz
    xyz = cube.mul(cube.mul(x, y), z)
    assert cube.subgroup([xyz]).is_normal()


def test_intersections(cube, cube_xyz):
    x, y, z = cube_xyz
    hxy = cube.subgroup([cube.mul(x, y)])
    hyz = cube.subgroup([cube.mul(y, z)])
    assert intersect(hxy, hxy).order == 2
    assert intersect(hxy, hyz).order == 1
    whole = cube.subgroup(cube.gen_ids)
    assert list(product_set_intersect(hxy, whole, whole)) == list(hxy.elem_ids)


def test_product_set_is_a_set_not_a_group(cube):
    # <s0> * <s1> has 4 elements but is not a subgroup; intersecting the
    # whole group with it just returns those 4 products
    a = cube.subgroup([cube.gen_ids[0]])
    b = cube.subgroup([cube.gen_ids[1]])
    whole = cube.subgroup(cube.gen_ids)
    prods = product_set_intersect(whole, a, b)
    assert len(prods) == 4


def test_conjugacy_is_equivalence_on_cube_classes(cube):
    classes = enumerate_subgroups(cube)
    reps = [c.rep for c in classes]
    for h in reps:
        assert are_conjugate(cube, h, h)[0]
    for h1 in reps:
        for h2 in reps:
            assert are_conjugate(cube, h1, h2)[0] == are_conjugate(cube, h2, h1)[0]
            # distinct class representatives are never conjugate
            if h1 is not h2:
                assert not are_conjugate(cube, h1, h2)[0]


@given(st.sampled_from([(3, 3), (4, 3), (2, 5), (3, 4)]), st.data())
@settings(max_examples=20, deadline=None)
def test_class_size_divides_order(symbol, data):
    g = realize(list(symbol))
    seed = data.draw(st.lists(st.integers(1, g.order - 1), min_size=1, max_size=2))
    h = g.subgroup(seed)
    cls = conjugates(g, h)
    assert g.order % len(cls) == 0
    for c in cls:
        assert c.order == h.order


def test_order_matches_brute_force_closure():
    # every catalog group is well under the order-240 oracle bound
    for name in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron",
                 "hemicube", "hemicross", "hemidodecahedron", "hemi-icosahedron"):
        g = entry_by_name(name).group()
        assert g.order == len(mulclose([np.asarray(x) for x in g.gens]))


@pytest.mark.parametrize("name", ["tetrahedron", "hemicube", "hemicross",
                                  "cube", "octahedron",
                                  "hemidodecahedron", "hemi-icosahedron",
                                  "dodecahedron", "icosahedron"])
def test_subgroup_classes_against_brute_force_catalog(name):
    g = entry_by_name(name).group()
    classes = enumerate_subgroups(g)
    elems = mulclose([np.asarray(x) for x in g.gens])
    all_subs = brute_force_subgroups(elems)
    assert sum(c.size for c in classes) == len(all_subs)
    assert len(classes) == len(conjugacy_partition(all_subs, elems))


def test_conjugacy_transitive(cube, cube_xyz):
    x, y, z = cube_xyz
    h1 = cube.subgroup([cube.mul(x, y)])
    h2 = cube.subgroup([cube.mul(y, z)])
    h3 = cube.subgroup([cube.mul(x, z)])
    assert are_conjugate(cube, h1, h2)[0]
    assert are_conjugate(cube, h2, h3)[0]
    assert are_conjugate(cube, h1, h3)[0]
