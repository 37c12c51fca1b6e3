import random

import pytest

from dimeralg import fixtures as fixtures_mod
from dimeralg.acceptance import quadratic_pattern_indices
from dimeralg.contraction import identity_contraction, sigma, source_cycle_algebra_generators
from dimeralg.monomial_algebra import (
    MonomialAlgebra,
    algebra_contains,
    cycles_with_image,
    degree,
    divide_by_sigma,
    homotopy_center_contains,
    homotopy_center_generators,
    homotopy_center_monomials,
    minimal_generators,
    mon_add,
    realizable_at_vertex,
    render_monomial,
    semigroup_monomials,
    sigma_divides,
)
from dimeralg.oracles import oracle_membership, oracle_realizable
from dimeralg.quiver import DomainError, path_head


QUAD = MonomialAlgebra(((2, 0, 0), (0, 2, 0), (1, 1, 0), (0, 0, 1)))


def test_unit_monomial_is_always_contained():
    assert algebra_contains(QUAD, (0, 0, 0)) == "yes"


def test_containment_examples():
    assert algebra_contains(QUAD, (1, 1, 0)) == "yes"
    assert algebra_contains(QUAD, (1, 0, 0)) == "no"
    assert algebra_contains(QUAD, (3, 1, 2)) == "yes"   # x^2 * xy * z^2
    assert algebra_contains(QUAD, (0, 1, 3)) == "no"


def test_degree_bound_guard():
    with pytest.raises(DomainError):
        algebra_contains(QUAD, (2, 2, 2), degree_bound=3)


def test_membership_matches_oracle():
    rng = random.Random(4)
    for _ in range(100):
        dim = rng.choice([2, 3])
        gens = tuple(
            tuple(rng.randrange(3) for _ in range(dim))
            for _ in range(rng.randrange(1, 5))
        )
        alg = MonomialAlgebra(gens)
        g = tuple(rng.randrange(5) for _ in range(dim))
        if degree(g) > 8:
            continue
        fast = algebra_contains(alg, g) == "yes"
        slow = oracle_membership(gens, g)
        assert fast == slow, (gens, g)


def test_sigma_division():
    assert sigma_divides((2, 2, 2))
    assert divide_by_sigma((2, 2, 2)) == (1, 1, 1)
    assert divide_by_sigma((1, 1, 2)) == (0, 0, 1)
    assert not sigma_divides((2, 1, 0))
    with pytest.raises(DomainError):
        divide_by_sigma((2, 1, 0))


def test_render():
    assert render_monomial((0, 0, 0)) == "1"
    assert render_monomial((1, 1, 2)) == "x*y*z^2"


def test_minimal_generators_drop_sums():
    gens = minimal_generators([(2, 0), (0, 2), (2, 2), (4, 0)])
    assert gens == [(0, 2), (2, 0)]


def test_sigma_realizable_everywhere_with_unit_cycle_witness(all_contractions):
    for name, c in all_contractions.items():
        ones = sigma(c)
        for i in range(c.source.num_vertices):
            res = realizable_at_vertex(c, i, ones)
            assert res.verdict == "yes", (name, i)
            w = res.witness
            assert w.base == i and path_head(c.source, w) == i


def test_single_variable_not_realizable_on_deformation(deformation_contraction):
    c = deformation_contraction
    gens = source_cycle_algebra_generators(c)
    _, _, z_idx = quadratic_pattern_indices(gens)
    x_idx = next(k for k in range(3) if k != z_idx)
    g = tuple(1 if k == x_idx else 0 for k in range(3))
    res = homotopy_center_contains(c, g)
    assert res.verdict == "no"
    assert res.vertex is not None


def test_realizability_matches_flow_oracle(deformation_contraction):
    c = deformation_contraction
    vectors = [
        (0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 1, 0), (2, 0, 0),
        (1, 1, 1), (0, 2, 0), (0, 1, 1), (2, 0, 1),
    ]
    for g in vectors:
        for i in range(c.source.num_vertices):
            fast = realizable_at_vertex(c, i, g).verdict == "yes"
            slow = oracle_realizable(c, i, g)
            assert fast == slow, (g, i)


def test_realizability_matches_flow_oracle_on_c3():
    c = identity_contraction(fixtures_mod.c3_quiver())
    for g in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 0), (0, 2, 2)]:
        fast = realizable_at_vertex(c, 0, g).verdict == "yes"
        slow = oracle_realizable(c, 0, g)
        assert fast == slow, g


def test_witness_cycles_at_marked_vertex(iso_r_contraction, iso_r):
    c = iso_r_contraction
    gens = source_cycle_algebra_generators(c)
    _, _, z_idx = quadratic_pattern_indices(gens)
    zsigma = mon_add(sigma(c), tuple(1 if k == z_idx else 0 for k in range(3)))
    i = iso_r.expected["marked_vertex"][0]
    cycles = cycles_with_image(c, i, zsigma)
    assert len(cycles) == 6
    for w in cycles:
        assert w.base == i and path_head(c.source, w) == i


def test_homotopy_center_examples(deformation_contraction):
    c = deformation_contraction
    assert homotopy_center_contains(c, sigma(c)).verdict == "yes"
    gens = source_cycle_algebra_generators(c)
    _, _, z_idx = quadratic_pattern_indices(gens)
    others = [k for k in range(3) if k != z_idx]
    x2 = tuple(2 if k == others[0] else 0 for k in range(3))
    x1 = tuple(1 if k == others[0] else 0 for k in range(3))
    z1 = tuple(1 if k == z_idx else 0 for k in range(3))
    assert homotopy_center_contains(c, x2).verdict == "yes"
    assert homotopy_center_contains(c, x1).verdict == "no"
    assert homotopy_center_contains(c, z1).verdict == "no"


def test_iso_r_loop_sigma_in_center(iso_r_contraction):
    c = iso_r_contraction
    gens = source_cycle_algebra_generators(c)
    _, _, z_idx = quadratic_pattern_indices(gens)
    zsigma = mon_add(sigma(c), tuple(1 if k == z_idx else 0 for k in range(3)))
    assert homotopy_center_contains(c, zsigma).verdict == "yes"


def test_deformation_center_is_quadratic_ideal(deformation_contraction):
    c = deformation_contraction
    bound = 8
    gens = source_cycle_algebra_generators(c)
    a, b, _ = quadratic_pattern_indices(gens)
    quad = [
        tuple(2 if k == a else 0 for k in range(3)),
        tuple(2 if k == b else 0 for k in range(3)),
        tuple(1 if k in (a, b) else 0 for k in range(3)),
    ]
    smons = semigroup_monomials(gens, bound)
    expected = set()
    for m in quad:
        expected.add(m)
        for s in smons:
            if degree(mon_add(m, s)) <= bound:
                expected.add(mon_add(m, s))
    assert set(homotopy_center_monomials(c, bound)) == expected


def test_generator_stability_under_bigger_bound(deformation_contraction):
    c = deformation_contraction
    g8 = homotopy_center_generators(c, 8).algebra.generators
    g10 = homotopy_center_generators(c, 10).algebra.generators
    # what was minimal stays minimal; only new, higher-degree generators
    # may appear
    assert set(g8) <= set(g10)
    assert {g for g in g10 if degree(g) <= 8} == set(g8)


def test_center_contained_in_cycle_algebra(all_contractions):
    for name, c in all_contractions.items():
        bound = 6
        r = homotopy_center_monomials(c, bound)
        s = semigroup_monomials(source_cycle_algebra_generators(c), bound)
        assert r <= s, name


def test_center_equals_cycle_algebra_without_contraction():
    # with nothing contracted on a quiver free of cancellation failures,
    # every vertex realizes every cycle image, so the intersection is the
    # whole algebra
    c = identity_contraction(fixtures_mod.conifold_quiver())
    bound = 6
    r = homotopy_center_monomials(c, bound)
    s = semigroup_monomials(source_cycle_algebra_generators(c), bound)
    assert r == s
