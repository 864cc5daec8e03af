import json

import pytest

from polyquot.catalog import entry_by_name
from polyquot.permgroups import conjugates, enumerate_subgroups
from polyquot.polytopes import are_isomorphic, is_polytopal, polytope_from_group
from polyquot.quotients import (PAPER_QUOTED, CaseContribution,
                                aggregate_summary, is_semisparse,
                                is_semisparse_product_criterion,
                                quotient_lattice_dot, quotient_polytope,
                                semisparse_classes, semisparse_diagnostic)


@pytest.fixture(scope="module")
def cube():
    return entry_by_name("cube").group()


@pytest.fixture(scope="module")
def cube_p(cube):
    return polytope_from_group(cube)


@pytest.fixture(scope="module")
def xyz(cube):
    s0, s1, s2 = cube.gen_ids
    x = s0
    y = cube.mul(cube.mul(s1, x), s1)
    z = cube.mul(cube.mul(s2, y), s2)
    return x, y, z


def test_cube_semisparse_list(cube, cube_p, xyz):
    x, y, z = xyz
    classes = semisparse_classes(cube, p=cube_p)
    assert len(classes) == 4
    profile = sorted((c.order, c.size, c.rep.is_normal()) for c in classes)
    assert profile == [(1, 1, True), (2, 1, True), (2, 3, False), (4, 1, True)]
    # the named subgroups land in the right classes
    xy, yz = cube.mul(x, y), cube.mul(y, z)
    xyz_ = cube.mul(xy, z)
    found = {c.key() for cls in classes for c in conjugates(cube, cls.rep)}
    for gens in ([xy], [yz], [xyz_], [xy, yz], []):
        assert cube.subgroup(gens).key() in found


def test_individual_semisparse_checks(cube, cube_p, xyz):
    x, y, z = xyz
    assert is_semisparse(cube, cube.subgroup([]), cube_p)            # trivial
    assert is_semisparse(cube, cube.subgroup([cube.mul(x, y)]), cube_p)
    assert not is_semisparse(cube, cube.subgroup([x]), cube_p)       # a reflection


def test_cube_quotient_identifications(cube, cube_p, xyz):
    x, y, z = xyz
    xyz_ = cube.mul(cube.mul(x, y), z)
    hemi = quotient_polytope(cube_p, cube, cube.subgroup([xyz_]))
    assert are_isomorphic(hemi, entry_by_name("hemicube").polytope())
    q23 = quotient_polytope(cube_p, cube, cube.subgroup([cube.mul(x, y), cube.mul(y, z)]))
    assert are_isomorphic(q23, entry_by_name("hosohedron(3)").polytope())


def test_trivial_quotient_is_identity(cube, cube_p):
    q = quotient_polytope(cube_p, cube, cube.subgroup([]))
    assert are_isomorphic(q, cube_p)


def test_rejection_diagnostic(cube, cube_p):
    h = cube.subgroup([cube.gen_ids[0]])
    why = semisparse_diagnostic(cube, h, cube_p)
    assert why is not None
    with pytest.raises(ValueError, match="not semisparse"):
        quotient_polytope(cube_p, cube, h)


def test_hemicube_has_no_proper_quotients():
    g = entry_by_name("hemicube").group()
    assert len(semisparse_classes(g)) == 1


def test_case10_quotients(ws):
    rep = ws.report(10)
    assert rep.total_quotients == 4
    assert rep.regular_count == 3
    # the quotient list mirrors the cube's: trivial, <ab> (x3), center, V4
    assert sorted((r.subgroup_order, r.class_size) for r in rep.records) == \
        [(1, 1), (2, 1), (2, 3), (4, 1)]
    # {{2,3},{3,4}_3}: hosohedral facets, hemicross vertex figures
    hoso = [r for r in rep.records if set(r.facet_classes) == {"hosohedron(3)"}]
    assert len(hoso) == 1 and hoso[0].is_regular
    assert set(hoso[0].vfig_classes) == {"hemicross"}


def test_case10_central_quotient_is_case11(ws):
    rep = ws.report(10)
    central = [r for r in rep.records
               if r.subgroup_order == 2 and r.class_size == 1][0]
    assert central.subgroup.is_normal()
    assert are_isomorphic(central.polytope, ws.universal(11).polytope())


def test_case11_no_proper_quotients(ws):
    assert ws.report(11).total_quotients == 1


def test_fast_path_agrees_with_ground_truth_on_192(ws):
    g = ws.universal(10).group
    p = polytope_from_group(g)
    for cls in enumerate_subgroups(g):
        assert (is_semisparse(g, cls.rep, p) ==
                is_semisparse_product_criterion(g, cls.rep)), cls.rep.elem_ids


def test_regular_iff_normal_on_reports(ws):
    for case in (7, 10, 11, 12):
        for r in ws.report(case).records:
            assert r.is_regular == r.is_normal
            if r.is_regular:
                assert r.is_section_regular


def test_quotient_facet_counts_bounded(ws):
    for case in (10, 11):
        up = ws.universal(case).polytope()
        for r in ws.report(case).records:
            assert r.polytope.counts[-1] <= up.counts[-1]


def test_conjugate_subgroups_give_isomorphic_quotients_192(ws):
    g = ws.universal(10).group
    p = polytope_from_group(g)
    for cls in semisparse_classes(g, p=p):
        qs = [quotient_polytope(p, g, c) for c in conjugates(g, cls.rep)]
        for q in qs[1:]:
            assert are_isomorphic(qs[0], q)


def test_all_quotients_pass_axioms(ws):
    for case in (10, 11):
        for r in ws.report(case).records:
            ok, why = is_polytopal(r.polytope.poset())
            assert ok, why


def test_report_json_schema(ws):
    rep = ws.report(10)
    js = rep.to_json()
    assert set(js) == {"universal", "group_order", "total_quotients", "regular",
                       "section_regular", "mixed_facets", "quotients"}
    row = js["quotients"][0]
    assert set(row) == {"subgroup_order", "class_size", "normal", "regular",
                        "section_regular", "type", "facet_classes",
                        "vfig_classes", "face_counts"}
    # deterministic serialization
    assert json.dumps(js, sort_keys=True) == json.dumps(rep.to_json(), sort_keys=True)


def test_report_ordering(ws):
    rep = ws.report(10)
    keys = [(r.subgroup_order, tuple(r.subgroup.elem_ids)) for r in rep.records]
    assert keys == sorted(keys)


def test_quotient_lattice_dot(ws):
    rep = ws.report(10)
    dot = quotient_lattice_dot(rep, ws.universal(10).group)
    assert dot.count("q0") >= 1 and "->" in dot


def test_aggregate_summary_totals():
    contribs = [
        CaseContribution(7, "computed", 1, 1, 1),
        CaseContribution(10, "computed", 4, 3, 3),
        CaseContribution(11, "computed", 1, 1, 1),
        CaseContribution(12, "computed", 4, 3, 3),
        CaseContribution(13, "computed", 70, 3, 12),
        CaseContribution(19, "computed", 70, 3, 12),
        CaseContribution(21, "computed", 1, 1, 1),
        PAPER_QUOTED[20], PAPER_QUOTED[22],
    ]
    s = aggregate_summary(contribs)
    assert s.total_with_multiplicity == 441
    assert (s.total, s.regular, s.section_regular) == (437, 17, 169)
    assert s.abstract_total == 441
    assert s.unverified_cases == [20, 22]
    assert len(s.degenerate_extras) == 4
    js = s.to_json()
    assert js["totals"] == {"quotients": 437, "regular": 17, "section_regular": 169}


def test_aggregate_summary_empty():
    s = aggregate_summary([])
    assert s.total == 0 and s.regular == 0 and s.abstract_total == 0
