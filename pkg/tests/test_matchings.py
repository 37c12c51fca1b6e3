import random

import pytest

from dimeralg import fixtures as fixtures_mod
from dimeralg.contraction import contract
from dimeralg.matchings import (
    enumerate_perfect_matchings,
    is_nondegenerate,
    is_simple_matching,
    matching_catalog,
)
from dimeralg.oracles import oracle_matchings
from dimeralg.quiver import DomainError, quiver_from_json, quiver_to_json


def test_oracle_agreement_on_fixtures(all_fixtures):
    for name, fx in all_fixtures.items():
        if len(fx.quiver.arrows) > 20:
            continue
        fast = enumerate_perfect_matchings(fx.quiver)
        slow = oracle_matchings(fx.quiver)
        assert fast == slow, name


def test_oracle_agreement_on_helpers():
    for q in (fixtures_mod.c3_quiver(), fixtures_mod.conifold_quiver(),
              fixtures_mod.bigon_inserted_c3()):
        assert enumerate_perfect_matchings(q) == oracle_matchings(q)


def _relabeled(q, rng):
    """Same quiver with permuted arrow ids and rotated face lists."""
    data = quiver_to_json(q)
    perm = list(range(len(data["arrows"])))
    rng.shuffle(perm)
    data["arrows"] = sorted(
        ({**a, "id": perm[a["id"]]} for a in data["arrows"]), key=lambda a: a["id"]
    )
    new_faces = []
    for f in data["faces"]:
        k = rng.randrange(len(f))
        rotated = f[k:] + f[:k]
        new_faces.append([perm[a] for a in rotated])
    rng.shuffle(new_faces)
    data["faces"] = new_faces
    return quiver_from_json(data), perm


def test_oracle_agreement_on_randomized_quivers(all_fixtures):
    rng = random.Random(17)
    bases = [fx.quiver for fx in all_fixtures.values() if len(fx.quiver.arrows) <= 20]
    bases += [fixtures_mod.c3_quiver(), fixtures_mod.conifold_quiver()]
    count = 0
    while count < 25:
        base = bases[count % len(bases)]
        q, _ = _relabeled(base, rng)
        assert enumerate_perfect_matchings(q) == oracle_matchings(q)
        count += 1


def test_no_matchings_when_face_count_is_odd():
    q = fixtures_mod.bigon_inserted_c3()
    assert enumerate_perfect_matchings(q) == []
    ok, uncovered = is_nondegenerate(q)
    assert not ok
    assert uncovered == [a.id for a in q.arrows]


def test_matching_size_is_half_the_face_count(all_fixtures):
    for fx in all_fixtures.values():
        q = fx.quiver
        for d in enumerate_perfect_matchings(q):
            assert 2 * len(d) == len(q.faces)


def test_single_vertex_matchings_are_simple():
    q = fixtures_mod.c3_quiver()
    for d in enumerate_perfect_matchings(q):
        assert is_simple_matching(q, d)


def test_simple_matching_requires_perfect(deformation):
    with pytest.raises(DomainError):
        is_simple_matching(deformation.quiver, frozenset({0}))


def test_matching_that_disconnects_is_not_simple(deformation):
    # removing both arrows into the interior vertex leaves it unreachable
    q = deformation.quiver
    d = frozenset({0, 1})
    assert d in set(enumerate_perfect_matchings(q))
    assert not is_simple_matching(q, d)


def test_fixtures_are_nondegenerate(all_fixtures):
    for name, fx in all_fixtures.items():
        ok, uncovered = is_nondegenerate(fx.quiver)
        assert ok, (name, uncovered)


def test_degenerate_quiver_lists_uncovered_arrows(deformation):
    # contracting the connector arrow instead of the marked one yields a
    # valid quiver in which the other connector and the loop are matched
    # by nothing
    c = contract(deformation.quiver, frozenset({2}))
    ok, uncovered = is_nondegenerate(c.target)
    assert not ok
    assert uncovered == sorted(
        [c.arrow_map[3], c.arrow_map[6]]
    )


def test_catalog_is_deterministic(deformation):
    a = matching_catalog(deformation.quiver)
    b = matching_catalog(deformation.quiver)
    assert a == b
    assert list(a.simple) == sorted(a.simple, key=lambda d: tuple(sorted(d)))


def test_deformation_target_has_three_simple_matchings(deformation_contraction):
    assert len(deformation_contraction.catalog) == 3
    assert deformation_contraction.catalog.all_count == 5
