"""Perfect and simple matchings of a dimer quiver.

A perfect matching picks exactly one arrow out of every face; it is
simple when deleting it leaves a strongly connected quiver.  Enumeration
is exact cover over the faces, most constrained face first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import DimerQuiver, DomainError

DEFAULT_MATCHING_CAP = 100000


class MatchingCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"perfect matching enumeration exceeded cap {cap}")
        self.cap = cap


def enumerate_perfect_matchings(q: DimerQuiver, cap: int = DEFAULT_MATCHING_CAP):
    """All perfect matchings, as a canonically sorted list of frozensets."""
    faces = [set(f.boundary) for f in q.faces]
    face_of = {}
    for idx, f in enumerate(q.faces):
        for aid in f.boundary:
            face_of.setdefault(aid, []).append(idx)

    found: list[frozenset[int]] = []
    chosen: set[int] = set()
    blocked: set[int] = set()  # arrows excluded because their face is covered

    def recurse(covered: set[int]):
        if len(found) > cap:
            raise MatchingCapExceeded(cap)
        if len(covered) == len(faces):
            found.append(frozenset(chosen))
            return
        # most constrained uncovered face
        best, best_opts = None, None
        for idx in range(len(faces)):
            if idx in covered:
                continue
            opts = [a for a in faces[idx] if a not in blocked]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = idx, opts
                if not opts:
                    break
        if not best_opts:
            return
        for a in sorted(best_opts):
            covers = face_of[a]
            # an unblocked arrow cannot sit on a covered face, but faces
            # listing an arrow twice would break that; guard anyway
            if any(c in covered for c in covers):
                continue
            newly_blocked = []
            chosen.add(a)
            new_cov = set()
            for c in covers:
                new_cov.add(c)
                for b in faces[c]:
                    if b != a and b not in blocked:
                        blocked.add(b)
                        newly_blocked.append(b)
            recurse(covered | new_cov)
            chosen.discard(a)
            for b in newly_blocked:
                blocked.discard(b)
        return

    if faces:
        recurse(set())
    if len(found) > cap:
        raise MatchingCapExceeded(cap)
    return sorted(found, key=lambda d: tuple(sorted(d)))


def is_perfect_matching(q: DimerQuiver, arrows) -> bool:
    d = set(arrows)
    return all(sum(1 for aid in f.boundary if aid in d) == 1 for f in q.faces)


def _strongly_connected(num_vertices: int, edges) -> bool:
    """Kosaraju on an edge list, iterative; True iff one component."""
    if num_vertices <= 1:
        return True
    fwd: list[list[int]] = [[] for _ in range(num_vertices)]
    rev: list[list[int]] = [[] for _ in range(num_vertices)]
    for (u, v) in edges:
        fwd[u].append(v)
        rev[v].append(u)

    def reach(adj, start):
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    return len(reach(fwd, 0)) == num_vertices and len(reach(rev, 0)) == num_vertices


def is_simple_matching(q: DimerQuiver, matching) -> bool:
    """True iff the quiver minus the matching is strongly connected."""
    d = frozenset(matching)
    if not is_perfect_matching(q, d):
        raise DomainError("not a perfect matching")
    edges = [(a.tail, a.head) for a in q.arrows if a.id not in d]
    return _strongly_connected(q.num_vertices, edges)


def is_nondegenerate(q: DimerQuiver, cap: int = DEFAULT_MATCHING_CAP):
    """(flag, uncovered arrow ids): flag iff every arrow is in a matching."""
    covered: set[int] = set()
    for d in enumerate_perfect_matchings(q, cap):
        covered |= d
    uncovered = sorted(set(a.id for a in q.arrows) - covered)
    return (not uncovered, uncovered)


@dataclass(frozen=True)
class MatchingCatalog:
    """Simple matchings in canonical order; the order fixes variable names."""

    simple: tuple[frozenset[int], ...]
    all_count: int

    def index_of(self, matching) -> int:
        return self.simple.index(frozenset(matching))

    def __len__(self) -> int:
        return len(self.simple)


def matching_catalog(q: DimerQuiver, cap: int = DEFAULT_MATCHING_CAP) -> MatchingCatalog:
    matchings = enumerate_perfect_matchings(q, cap)
    simple = tuple(d for d in matchings if is_simple_matching(q, d))
    return MatchingCatalog(simple, len(matchings))
