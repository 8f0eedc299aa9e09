import copy
from collections import Counter

import pytest

from finitegpd.bibundle import tid, untid
from finitegpd.equivalence import (arrow_refinement, bounded_one_morita_search,
                                   compose_strict_maps,
                                   fiber_product_two_groupoid,
                                   identity_strict_map, is_equivalence,
                                   is_one_equivalence, nerve_map, pb_space,
                                   pb_space_simplicial, pullback_two_groupoid,
                                   strict_inverse_search,
                                   two_groupoid_isomorphism_search,
                                   verify_morita_witness, verify_strict_map)
from finitegpd.groups import cyclic_group
from finitegpd.simplicial import SimplicialMap
from finitegpd.twogroupoid import (groupoid_nerve, two_groupoid_to_simplicial,
                                   verify_two_groupoid)
from finitegpd.bibundle import group_groupoid


@pytest.fixture(scope="module")
def cech_projection(cech, points_groupoid):
    C, om, am = cech
    return nerve_map(C, points_groupoid, om, am)


@pytest.fixture(scope="module")
def xmod_refinement(xmod):
    """Every arrow doubled, including the identity."""
    Z1 = [tid(x, k) for x in xmod.X1 for k in "01"]
    return pullback_two_groupoid(
        xmod, xmod.X0, Z1,
        {h: xmod.d1_0[untid(h)[0]] for h in Z1},
        {h: xmod.d1_1[untid(h)[0]] for h in Z1},
        {p: tid(xmod.s0_0[p], "0") for p in xmod.X0},
        {p: p for p in xmod.X0},
        {h: untid(h)[0] for h in Z1})


def test_identity_map_is_equivalence(xmod):
    f = identity_strict_map(xmod)
    assert verify_strict_map(f).ok
    for m in (0, 1, 2):
        assert is_equivalence(f, m).ok
    assert is_one_equivalence(f).ok
    assert strict_inverse_search(f) is not None


def test_cech_projection_equivalence(cech_projection):
    p = cech_projection
    assert verify_strict_map(p).ok
    assert is_equivalence(p, 1).ok
    # overlapping charts duplicate points, so no strict inverse and no
    # bijective object component
    assert strict_inverse_search(p) is None
    rep = is_one_equivalence(p)
    assert not rep.ok
    assert rep.first_failure().law == "the object component is a bijection"


def test_pb_space_sizes_cech(cech_projection):
    p = cech_projection
    assert len(pb_space(p, 0).elements) == 3
    # one compatible filler pair per parallel pair of chart points
    assert len(pb_space(p, 1).elements) == 6
    assert len(pb_space(p, 1).elements) == len(p.source.X1)


def test_pb_space_matches_simplicial_computation(cech_projection):
    """The direct combinatorial pullback spaces agree in size with the ones
    enumerated as simplicial boundary spheres."""
    p = cech_projection
    Z = two_groupoid_to_simplicial(p.source, level=2)
    X = two_groupoid_to_simplicial(p.target, level=2)
    f = SimplicialMap(Z, X, [dict(p.f0), dict(p.f1), dict(p.f2)])
    for n in range(3):
        assert len(pb_space_simplicial(f, n).elements) == \
            len(pb_space(p, n).elements)


def test_pullback_counts_and_equivalence(xmod_refinement, xmod):
    Z, proj = xmod_refinement
    # two lifts for each of the three edges of every triangle
    assert len(Z.X2) == len(xmod.X2) * 8
    assert verify_two_groupoid(Z).ok
    assert is_one_equivalence(proj).ok


def test_pullback_requires_surjective_objects(xmod):
    with pytest.raises(ValueError):
        pullback_two_groupoid(xmod, [], [], {}, {}, {}, {}, {})


def test_arrow_refinement_is_degree_two_equivalence(cech_nerve):
    Z, r = arrow_refinement(cech_nerve, 2)
    assert verify_two_groupoid(Z).ok
    assert is_equivalence(r, 2).ok
    assert not is_equivalence(r, 1).ok


def test_fiber_product_of_cech_projection(cech_projection):
    p = cech_projection
    P, pZ, pW = fiber_product_two_groupoid(p, p)
    # independent size oracle: pairs of cells with the same image
    for n, (cells, comp) in enumerate(
            ((p.source.X0, p.f0), (p.source.X1, p.f1), (p.source.X2, p.f2))):
        fibers = Counter(comp[c] for c in cells)
        expected = sum(v * v for v in fibers.values())
        level = (P.X0, P.X1, P.X2)[n]
        assert len(level) == expected
    assert verify_two_groupoid(P).ok
    assert is_equivalence(pZ, 1).ok and is_equivalence(pW, 1).ok


def test_fiber_product_with_identity_is_diagonal(xmod):
    f = identity_strict_map(xmod)
    P, pZ, _ = fiber_product_two_groupoid(f, f)
    assert len(P.X2) == len(xmod.X2)
    assert two_groupoid_isomorphism_search(P, xmod) is not None


def test_composite_of_equivalences_is_equivalence(cech_projection):
    p = cech_projection
    Z, r = arrow_refinement(p.source, 2)
    comp = compose_strict_maps(r, p)
    assert is_equivalence(comp, 2).ok


def test_morita_witness_spans(xmod, cech_projection):
    f = identity_strict_map(xmod)
    rep = verify_morita_witness(xmod, xmod, xmod, f, f, one_morita=True)
    assert rep.ok
    p = cech_projection
    i = identity_strict_map(p.source)
    rep = verify_morita_witness(p.source, p.target, p.source, i, p)
    assert rep.ok
    rep = verify_morita_witness(p.source, p.target, p.source, i, p,
                                one_morita=True)
    assert not rep.ok


def test_morita_witness_corrupted_map_fails(xmod):
    f = identity_strict_map(xmod)
    g = copy.deepcopy(f)
    g.f1 = dict(g.f1)
    k = sorted(g.f1)[0]
    g.f1[k] = next(a for a in xmod.X1 if a != g.f1[k])
    rep = verify_morita_witness(xmod, xmod, xmod, f, g)
    assert not rep.ok


def test_isomorphism_search_positive_and_negative(xmod, cech_nerve):
    assert two_groupoid_isomorphism_search(xmod, xmod) is not None
    assert two_groupoid_isomorphism_search(xmod, cech_nerve) is None


def test_bounded_morita_search(xmod):
    wit = bounded_one_morita_search(xmod, xmod, 8)
    assert wit is not None
    rep = verify_morita_witness(xmod, xmod, wit["apex"], wit["left"],
                                wit["right"], one_morita=True)
    assert rep.ok
    b2 = groupoid_nerve(group_groupoid(cyclic_group(2)))
    b3 = groupoid_nerve(group_groupoid(cyclic_group(3)))
    assert bounded_one_morita_search(b2, b3, 12) is None


def test_perturbed_strict_map_fails(cech_projection):
    p = copy.deepcopy(cech_projection)
    p.f2 = dict(p.f2)
    k = sorted(p.f2)[0]
    p.f2[k] = next(x for x in p.target.X2 if x != p.f2[k])
    rep = verify_strict_map(p)
    assert not rep.ok and rep.first_failure().witness is not None
