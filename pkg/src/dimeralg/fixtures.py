"""Built-in example quivers.

Each fixture was transcribed by hand from a drawing of the quiver on the
torus (fundamental domain plus a patch of the universal cover), with the
face list read off region by region and the homology vectors recovered
from lattice displacements of lifted vertices.  Every headline claim a
fixture carries in its ``expected`` map is re-derived by the library in
the test suite, so a transcription slip shows up as a test failure.

Public names:

    fig_deformation             3-vertex quiver with a winding loop; one
                                marked arrow contracts it onto a 2-vertex
                                quiver with two loops.
    fig_noncancellative_central same quiver, plus a distinguished central
                                element built from two parallel paths.
    fig_iso_R                   9-vertex quiver contracting (7 marked
                                arrows) onto a 2-vertex quiver; its
                                homotopy center strictly contains the
                                image of the center.
    fig_nested(n)               conifold-like quiver with n nested
                                squares; contracting the 4n radial arrows
                                and removing 2-cycles yields the conifold.
    fig_hsb_ii                  7-vertex quiver contracting (3 marked
                                arrows) onto a 4-vertex quiver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .quiver import DimerQuiver, PathWord, make_quiver

FIXTURE_NAMES = (
    "fig_deformation",
    "fig_iso_R",
    "fig_nested(n)",
    "fig_hsb_ii",
    "fig_noncancellative_central",
)


@dataclass(frozen=True)
class Fixture:
    name: str
    quiver: DimerQuiver
    contraction_arrows: frozenset[int]
    # claim name -> (expected value, provenance tag)
    expected: dict = field(default_factory=dict)
    # optional distinguished paths (traversal-order arrow ids)
    paths: dict = field(default_factory=dict)


def _deformation_quiver() -> DimerQuiver:
    # Vertices: 0 = vertex carrying the winding loop, 1 = second boundary
    # vertex, 2 = interior vertex that the marked arrow collapses.
    arrows = [
        (0, 2, (1, 0)),    # 0: s, 0 -> 2, crosses the cell seam
        (0, 2, (0, 0)),    # 1: t, 0 -> 2
        (2, 1, (0, -1)),   # 2: c, 2 -> 1, the connector used by the
                           #    distinguished central element
        (2, 1, (0, 0)),    # 3: c*, 2 -> 1, the contracted arrow
        (1, 0, (0, 1)),    # 4: d, 1 -> 0
        (1, 0, (-1, 1)),   # 5: f, 1 -> 0
        (0, 0, (0, -1)),   # 6: l, winding loop at 0
    ]
    faces = [
        (0, 2, 5),         # triangle s.c.f
        (1, 3, 4, 6),      # quad t.c*.d.l
        (2, 4, 1),         # triangle c.d.t
        (0, 3, 5, 6),      # quad s.c*.f.l
    ]
    return make_quiver(3, arrows, faces)


def fig_deformation() -> Fixture:
    q = _deformation_quiver()
    expected = {
        "validates": (True, "derived"),
        "target_simple_matchings": (3, "reported"),
        # generators of the cycle algebra, as exponent patterns over the
        # three matching variables: two squares, the mixed product, and
        # the loop variable alone
        "cycle_algebra_pattern": ("two-vars-quadratic-plus-free", "reported"),
        "homotopy_center_is_k_plus_quadratic_ideal": (True, "reported"),
        "source_noncancellative": (True, "reported"),
        "target_cancellative_up_to_bounds": (True, "reported"),
        "minimal_sigma_power": (1, "derived"),
        "normal": (True, "derived"),
    }
    return Fixture("fig_deformation", q, frozenset({3}), expected)


def fig_noncancellative_central() -> Fixture:
    base = fig_deformation()
    # p and q run from vertex 1 to vertex 2 through the loop twice; a is
    # the connector arrow back from 2 to 1.
    paths = {
        "p": PathWord(1, (4, 6, 6, 1)),
        "q": PathWord(1, (5, 6, 6, 0)),
        "a": PathWord(2, (2,)),
    }
    expected = {
        "validates": (True, "derived"),
        "z_is_central": (True, "reported"),
        "z_squares_to_zero": (True, "reported"),
        "z_killed_by_contraction": (True, "reported"),
        "z_nonzero": (True, "reported"),
    }
    return Fixture(
        "fig_noncancellative_central", base.quiver, base.contraction_arrows, expected, paths
    )


def _iso_r_quiver() -> DimerQuiver:
    # Vertices: 0 corner class, 1 mid-left lower, 2 the marked vertex i,
    # 3 mid-left upper, 4 lower-left interior, 5 edge-midpoint class,
    # 6 left interior, 7 right interior, 8 upper-right interior.
    arrows = [
        (4, 0, (0, 0)),     # 0: contracted
        (1, 4, (0, 0)),     # 1: image y
        (0, 1, (0, 0)),     # 2: image xz (a removable 2-cycle side)
        (2, 1, (0, 0)),     # 3: contracted; first arrow out of i
        (2, 3, (0, 0)),     # 4: image x; second arrow out of i
        (3, 0, (0, 1)),     # 5: contracted
        (0, 5, (0, 0)),     # 6: image z
        (5, 6, (0, 0)),     # 7: image x
        (6, 2, (0, 0)),     # 8: contracted
        (5, 6, (0, -1)),    # 9: image y
        (6, 7, (0, 0)),     # 10: image z
        (7, 5, (0, 0)),     # 11: image y
        (7, 5, (0, 1)),     # 12: image x (a removable 2-cycle side)
        (5, 0, (1, 0)),     # 13: contracted
        (1, 7, (-1, 0)),    # 14: contracted
        (0, 8, (-1, -1)),   # 15: image yz (a removable 2-cycle side)
        (8, 2, (1, 0)),     # 16: contracted
    ]
    faces = [
        (2, 1, 0),
        (6, 7, 8, 3, 1, 0),
        (4, 5, 6, 9, 8),
        (10, 11, 7),
        (10, 12, 9),
        (13, 2, 14, 11),
        (12, 13, 15, 16, 3, 14),
        (4, 5, 15, 16),
    ]
    return make_quiver(9, arrows, faces)


def fig_iso_R() -> Fixture:
    q = _iso_r_quiver()
    expected = {
        "validates": (True, "derived"),
        "target_simple_matchings": (3, "reported"),
        "cycle_algebra_pattern": ("two-vars-quadratic-plus-free", "reported"),
        "cycle_algebras_agree": (True, "reported"),
        "source_noncancellative": (True, "derived"),
        "loop_sigma_in_homotopy_center": (True, "reported"),
        "loop_sigma_not_in_reduced_center": (True, "reported"),
        "witness_cycles_at_i": (6, "reported"),
        "witness_classes_at_i": (5, "reported"),
        "marked_vertex": (2, "derived"),
    }
    return Fixture("fig_iso_R", q, frozenset({0, 3, 5, 8, 13, 14, 16}), expected)


# corner indices for the nested family
_NW, _NE, _SW, _SE = 0, 1, 2, 3
_CW = {_NW: _NE, _NE: _SE, _SE: _SW, _SW: _NW}


def _nested_quiver(n: int) -> tuple[DimerQuiver, frozenset[int]]:
    """Conifold-like quiver with n nested squares.

    Level 0 is the pair of outer vertices; each level k >= 1 adds a
    square of four vertices, four radial arrows outward (the contracted
    set) and four radial arrows inward, exactly repeating the pattern of
    the one-square drawing.
    """
    if n < 1:
        raise ValueError("nesting depth must be >= 1")
    o1, o2 = 0, 1

    def w(k, corner):
        return 2 + 4 * (k - 1) + corner

    # level-0 "corners": outer vertices in corner positions
    corner0 = {_NW: o1, _NE: o2, _SE: o1, _SW: o2}

    arrows = []

    def add(tail, head, hom):
        arrows.append((tail, head, hom))
        return len(arrows) - 1

    A = add(o1, o2, (0, 0))
    B = add(o2, o1, (1, -1))
    C = add(o1, o2, (-1, 0))
    D = add(o2, o1, (0, 1))
    outer_edge = {_NW: A, _NE: B, _SE: C, _SW: D}  # corner X -> cw(X)

    sq: dict[tuple[int, int], int] = {}
    green: dict[tuple[int, int], int] = {}
    inward: dict[tuple[int, int], int] = {}
    g1_hom = {_NW: (0, 0), _NE: (0, 0), _SW: (0, -1), _SE: (1, -1)}
    m1_hom = {_NW: (0, 0), _NE: (-1, 1), _SE: (0, 1), _SW: (0, 0)}
    for k in range(1, n + 1):
        for x in (_NW, _NE, _SW, _SE):
            sq[(k, x)] = add(w(k, x), w(k, _CW[x]), (0, 0))
        for x in (_NW, _NE, _SW, _SE):
            if k == 1:
                green[(k, x)] = add(w(k, x), corner0[x], g1_hom[x])
            else:
                green[(k, x)] = add(w(k, x), w(k - 1, x), (0, 0))
        for x in (_NW, _NE, _SW, _SE):
            if k == 1:
                inward[(k, x)] = add(corner0[_CW[x]], w(k, x), m1_hom[x])
            else:
                inward[(k, x)] = add(w(k - 1, _CW[x]), w(k, x), (0, 0))

    faces = []
    for k in range(1, n + 1):
        for x in (_NW, _NE, _SW, _SE):
            faces.append((inward[(k, x)], sq[(k, x)], green[(k, _CW[x])]))
        for x in (_NW, _NE, _SW, _SE):
            edge = outer_edge[x] if k == 1 else sq[(k - 1, x)]
            faces.append((edge, inward[(k, x)], green[(k, x)]))
    faces.append((sq[(n, _NW)], sq[(n, _NE)], sq[(n, _SE)], sq[(n, _SW)]))
    faces.append((B, A, D, C))

    q = make_quiver(2 + 4 * n, arrows, faces)
    return q, frozenset(green.values())


def fig_nested(n: int) -> Fixture:
    q, greens = _nested_quiver(n)
    expected = {
        "validates": (True, "derived"),
        "reduces_to_conifold": (True, "reported"),
        "minimal_sigma_power": (n, "reported"),
        "normal": (n == 1, "reported"),
    }
    return Fixture(f"fig_nested({n})", q, greens, expected)


def _hsb_ii_quiver() -> DimerQuiver:
    # Vertices: 0, 1, 2 the three labelled vertices; 3 center; 4, 5, 6
    # the three small interior vertices.
    arrows = [
        (0, 1, (0, 0)),     # 0
        (1, 0, (1, 0)),     # 1
        (0, 3, (-1, 0)),    # 2
        (3, 0, (0, -1)),    # 3
        (0, 2, (0, 1)),     # 4
        (2, 0, (0, 0)),     # 5
        (1, 3, (0, 1)),     # 6
        (2, 6, (0, 0)),     # 7
        (3, 2, (1, 0)),     # 8
        (3, 4, (0, 0)),     # 9
        (1, 5, (0, 0)),     # 10
        (5, 2, (0, 0)),     # 11: contracted
        (4, 1, (0, 0)),     # 12: contracted
        (6, 3, (0, 0)),     # 13: contracted
        (2, 1, (-1, -1)),   # 14
    ]
    faces = [
        (8, 5, 2),
        (8, 14, 6),
        (1, 4, 14),
        (3, 0, 6),
        (4, 7, 13, 3),
        (5, 0, 10, 11),
        (9, 12, 10, 11, 7, 13),
        (9, 12, 1, 2),
    ]
    return make_quiver(7, arrows, faces)


def fig_hsb_ii() -> Fixture:
    q = _hsb_ii_quiver()
    expected = {
        "validates": (True, "derived"),
        "target_vertices": (4, "derived"),
        "source_noncancellative": (True, "derived"),
        "red_cycle_riso": (False, "reported"),  # the length-6 marked cycle is
        # not a power of the unit cycle even though it winds trivially
    }
    paths = {"red_cycle": PathWord(0, (0, 1, 2, 3, 4, 5))}
    return Fixture("fig_hsb_ii", q, frozenset({11, 12, 13}), expected, paths)


# -- helper quivers used by tests (not part of the public fixture list) ------


def c3_quiver() -> DimerQuiver:
    """One vertex, three winding loops, two triangular faces."""
    arrows = [(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (-1, -1))]
    return make_quiver(1, arrows, [(0, 1, 2), (0, 2, 1)])


def conifold_quiver() -> DimerQuiver:
    """Two vertices, four arrows, two square faces."""
    arrows = [
        (0, 1, (0, 0)),   # x1
        (1, 0, (1, 0)),   # y1
        (0, 1, (0, 1)),   # x2
        (1, 0, (-1, -1)), # y2
    ]
    return make_quiver(2, arrows, [(0, 1, 2, 3), (0, 3, 2, 1)])


def bigon_inserted_c3() -> DimerQuiver:
    """c3 with a 2-cycle inserted into one face: odd face count, so it has
    no perfect matching at all."""
    arrows = [
        (0, 0, (1, 0)),
        (0, 0, (0, 1)),
        (0, 0, (-1, -1)),
        (0, 1, (0, 0)),
        (1, 0, (0, 0)),
    ]
    faces = [(0, 3, 4, 1, 2), (0, 2, 1), (3, 4)]
    return make_quiver(2, arrows, faces)


def fixture(name: str) -> Fixture:
    """Look up a fixture by public name; fig_nested takes its depth inline."""
    if name == "fig_deformation":
        return fig_deformation()
    if name == "fig_noncancellative_central":
        return fig_noncancellative_central()
    if name == "fig_iso_R":
        return fig_iso_R()
    if name == "fig_hsb_ii":
        return fig_hsb_ii()
    if name.startswith("fig_nested(") and name.endswith(")"):
        inner = name[len("fig_nested("):-1]
        try:
            n = int(inner)
        except ValueError:
            raise KeyError(f"bad nesting depth {inner!r}") from None
        if n < 1:
            raise KeyError("nesting depth must be >= 1")
        return fig_nested(n)
    raise KeyError(f"unknown fixture {name!r}")
