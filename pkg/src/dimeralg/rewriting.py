"""Path equality modulo the face relations, as bounded string rewriting.

Every arrow sits on two faces; rotating each face to start at the arrow
and dropping it leaves two complementary arcs between the same endpoints,
and the relations identify exactly those arcs.  Equality of two words is
explored by a bidirectional closure over subword replacements.  Rewrites
preserve endpoints, homology, and the count of arrows in every perfect
matching, so many inequalities are certain; when both closures saturate
without meeting, inequality is certain too.  Only a genuinely truncated
search answers Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matchings import MatchingCapExceeded, enumerate_perfect_matchings
from .quiver import DimerQuiver, DomainError, PathWord, check_path, path_head, path_homology

EQUAL = "equal"
NOT_EQUAL = "not_equal"
UNKNOWN = "unknown"

_PROFILE_CAP = 4096


@dataclass(frozen=True)
class SearchBounds:
    max_word_length: int = 0  # 0 = derive from inputs
    max_states: int = 200000

    def word_cap(self, q: DimerQuiver, *words) -> int:
        if self.max_word_length > 0:
            return self.max_word_length
        longest = max((len(w) for w in words), default=0)
        return longest + 2 * q.max_face_length()


DEFAULT_BOUNDS = SearchBounds()


@dataclass(frozen=True)
class RewriteStep:
    """Replace ``old`` by ``new`` at ``pos``; both are complementary arcs
    of the rule attached to ``arrow``."""

    pos: int
    arrow: int
    old: tuple[int, ...]
    new: tuple[int, ...]


@dataclass
class EqResult:
    verdict: str
    reason: str = ""
    steps: tuple[RewriteStep, ...] = ()
    states: int = 0

    @property
    def is_equal(self):
        return self.verdict == EQUAL

    @property
    def is_not_equal(self):
        return self.verdict == NOT_EQUAL


class ResourceExhausted(RuntimeError):
    pass


class RewriteSystem:
    """Face relations of a quiver plus the invariants used to refute."""

    def __init__(self, q: DimerQuiver):
        self.quiver = q
        self.rules: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
        for a in q.arrows:
            arcs = []
            for f in q.faces:
                positions = [k for k, aid in enumerate(f.boundary) if aid == a.id]
                for k in positions:
                    rot = f.boundary[k:] + f.boundary[:k]
                    arcs.append(tuple(rot[1:]))
            if len(arcs) != 2:
                raise DomainError(f"arrow {a.id} lies on {len(arcs)} faces")
            self.rules[a.id] = (arcs[0], arcs[1])
        # index: arc -> [(arrow, replacement)]
        self._by_arc: dict[tuple[int, ...], list[tuple[int, tuple[int, ...]]]] = {}
        for aid, (left, right) in self.rules.items():
            self._by_arc.setdefault(left, []).append((aid, right))
            if right != left:
                self._by_arc.setdefault(right, []).append((aid, left))
        self._arc_lengths = sorted({len(arc) for arc in self._by_arc})
        try:
            self._matchings = enumerate_perfect_matchings(q, _PROFILE_CAP)
        except MatchingCapExceeded:
            self._matchings = None

    def profile(self, word: tuple[int, ...]):
        """Arrow counts of the word in every perfect matching (an invariant
        of rewriting); None when enumeration was capped."""
        if self._matchings is None:
            return None
        return tuple(sum(1 for aid in word if aid in d) for d in self._matchings)

    def successors(self, word: tuple[int, ...], cap: int):
        """All one-step rewrites of the word not exceeding cap; also say
        whether anything was suppressed by the cap."""
        out = []
        truncated = False
        n = len(word)
        for ln in self._arc_lengths:
            if ln > n:
                continue
            for pos in range(n - ln + 1):
                arc = word[pos:pos + ln]
                for aid, repl in self._by_arc.get(arc, ()):
                    if len(word) - ln + len(repl) > cap:
                        truncated = True
                        continue
                    out.append(
                        (word[:pos] + repl + word[pos + ln:], RewriteStep(pos, aid, arc, repl))
                    )
        return out, truncated


def build_relations(q: DimerQuiver) -> RewriteSystem:
    return RewriteSystem(q)


def _invariant_mismatch(rs: RewriteSystem, p: PathWord, q_: PathWord):
    q = rs.quiver
    if p.base != q_.base or path_head(q, p) != path_head(q, q_):
        return "endpoints"
    if path_homology(q, p) != path_homology(q, q_):
        return "homology"
    pp, pq = rs.profile(p.arrows), rs.profile(q_.arrows)
    if pp is not None and pp != pq:
        return "matching_profile"
    return None


def paths_equal(
    rs: RewriteSystem, p: PathWord, q_: PathWord, bounds: SearchBounds = DEFAULT_BOUNDS
) -> EqResult:
    """Three-valued equality of paths modulo the face relations.

    Equal comes with a replayable rewrite witness from p to q.  NotEqual
    is only reported when certain: invariant mismatch, or both closures
    saturated without intersecting.  Unknown means the bounded search was
    truncated before deciding.
    """
    quiver = rs.quiver
    check_path(quiver, p)
    check_path(quiver, q_)
    if p == q_:
        return EqResult(EQUAL)
    reason = _invariant_mismatch(rs, p, q_)
    if reason is not None:
        return EqResult(NOT_EQUAL, reason=reason)
    if not p.arrows or not q_.arrows:
        # relations never produce the empty word
        return EqResult(NOT_EQUAL, reason="trivial_path")

    cap = bounds.word_cap(quiver, p, q_)
    start_p, start_q = p.arrows, q_.arrows
    # per-side parent pointers: word -> (parent word, step applied to parent)
    parents_side = {"p": {start_p: (None, None)}, "q": {start_q: (None, None)}}
    frontier = {"p": [start_p], "q": [start_q]}
    truncated = False
    states = 2

    def witness(meet_word):
        # steps p -> ... -> meet, then the q-side chain inverted
        def chain(side):
            steps = []
            word = meet_word
            while True:
                parent, step = parents_side[side][word]
                if parent is None:
                    break
                steps.append(step)
                word = parent
            steps.reverse()
            return steps

        fwd = chain("p")
        inv = [
            RewriteStep(s.pos, s.arrow, s.new, s.old) for s in reversed(chain("q"))
        ]
        return tuple(fwd + inv)

    # Expand the smaller frontier until meeting, exhaustion, or the budget.
    visited = {"p": {start_p}, "q": {start_q}}
    while frontier["p"] or frontier["q"]:
        side = "p" if (frontier["p"] and (len(frontier["p"]) <= len(frontier["q"]) or not frontier["q"])) else "q"
        other = "q" if side == "p" else "p"
        new_frontier = []
        for word in frontier[side]:
            succs, trunc = rs.successors(word, cap)
            truncated = truncated or trunc
            for nxt, step in succs:
                if nxt in visited[side]:
                    continue
                states += 1
                if states > bounds.max_states:
                    return EqResult(UNKNOWN, reason="state_budget", states=states)
                visited[side].add(nxt)
                parents_side[side][nxt] = (word, step)
                if nxt in visited[other]:
                    return EqResult(EQUAL, steps=witness(nxt), states=states)
                new_frontier.append(nxt)
        frontier[side] = new_frontier
    if truncated:
        return EqResult(UNKNOWN, reason="word_length", states=states)
    return EqResult(NOT_EQUAL, reason="saturated", states=states)


def replay_witness(rs: RewriteSystem, p: PathWord, steps) -> list[PathWord]:
    """Apply a rewrite witness step by step, checking that every step is a
    legal rule application preserving endpoints and homology."""
    quiver = rs.quiver
    trail = [p]
    word = p.arrows
    hom = path_homology(quiver, p)
    head = path_head(quiver, p)
    for step in steps:
        if word[step.pos:step.pos + len(step.old)] != step.old:
            raise DomainError("witness step does not match the word")
        sides = rs.rules[step.arrow]
        if (step.old, step.new) not in ((sides[0], sides[1]), (sides[1], sides[0])):
            raise DomainError("witness step is not an instance of its rule")
        word = word[:step.pos] + step.new + word[step.pos + len(step.old):]
        nxt = PathWord(p.base, word)
        check_path(quiver, nxt)
        if path_homology(quiver, nxt) != hom or path_head(quiver, nxt) != head:
            raise DomainError("witness step broke an invariant")
        trail.append(nxt)
    return trail


# -- cycle enumeration -------------------------------------------------------

FILTER_ALL = "all"
FILTER_VERTEX_SIMPLE = "vertex_simple"
FILTER_HOMOLOGY = "homology"
FILTER_LIFT_SIMPLE = "lift_simple"  # the doubled lift revisits no vertex


@dataclass(frozen=True)
class CycleFilter:
    variant: str = FILTER_ALL
    hom_class: tuple[int, int] | None = None

    @staticmethod
    def all():
        return CycleFilter(FILTER_ALL)

    @staticmethod
    def vertex_simple():
        return CycleFilter(FILTER_VERTEX_SIMPLE)

    @staticmethod
    def homology_class(u):
        return CycleFilter(FILTER_HOMOLOGY, (int(u[0]), int(u[1])))

    @staticmethod
    def lift_simple():
        return CycleFilter(FILTER_LIFT_SIMPLE)


def lift_is_simple(q: DimerQuiver, cycle: PathWord) -> bool:
    """True iff walking the cycle twice in the universal cover repeats no
    lifted vertex strictly inside the walk."""
    seen = {(cycle.base, (0, 0))}
    at, acc = cycle.base, (0, 0)
    n = 2 * len(cycle.arrows)
    for k in range(n):
        aid = cycle.arrows[k % len(cycle.arrows)]
        a = q.arrow(aid)
        acc = (acc[0] + a.homology[0], acc[1] + a.homology[1])
        at = a.head
        node = (at, acc)
        if k == n - 1:
            return True  # closing the doubled walk is allowed
        if node in seen:
            return False
        seen.add(node)
    return True


@dataclass
class CycleEnumeration:
    cycles: list[PathWord]
    classes: list[list[PathWord]] | None = None
    unknown_pairs: int = 0


def enumerate_cycles(
    q: DimerQuiver,
    i: int,
    max_len: int,
    filt: CycleFilter = CycleFilter.all(),
    rs: RewriteSystem | None = None,
    dedup_mod_relations: bool = False,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    max_states: int = 2_000_000,
) -> CycleEnumeration:
    """All cycles at i of length <= max_len passing the filter, in a fixed
    order.  With dedup_mod_relations, also group them into equality
    classes; undecided comparisons leave cycles in separate classes and
    are counted."""
    out_by_vertex: list[list[int]] = [[] for _ in range(q.num_vertices)]
    for a in q.arrows:
        out_by_vertex[a.tail].append(a.id)
    for lst in out_by_vertex:
        lst.sort()

    prune_revisits = filt.variant == FILTER_VERTEX_SIMPLE
    results: list[PathWord] = []
    states = 0
    stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(i, (), frozenset())]
    while stack:
        at, word, visited = stack.pop()
        states += 1
        if states > max_states:
            raise ResourceExhausted("cycle enumeration state budget exceeded")
        if word and at == i:
            results.append(PathWord(i, word))
            if prune_revisits:
                continue
        if len(word) >= max_len:
            continue
        if prune_revisits:
            if at in visited:
                continue
            visited = visited | {at}
        for aid in reversed(out_by_vertex[at]):
            stack.append((q.arrow(aid).head, word + (aid,), visited))

    def passes(c: PathWord) -> bool:
        if filt.variant == FILTER_ALL:
            return True
        if filt.variant == FILTER_VERTEX_SIMPLE:
            seen = set()
            at = c.base
            for aid in c.arrows[:-1]:
                at = q.arrow(aid).head
                if at in seen or at == c.base:
                    return False
                seen.add(at)
            return True
        if filt.variant == FILTER_HOMOLOGY:
            return path_homology(q, c) == filt.hom_class
        if filt.variant == FILTER_LIFT_SIMPLE:
            if path_homology(q, c) == (0, 0):
                return False
            return lift_is_simple(q, c)
        raise DomainError(f"unknown filter {filt.variant}")

    cycles = sorted((c for c in results if passes(c)), key=lambda c: (len(c.arrows), c.arrows))
    enum = CycleEnumeration(cycles)
    if dedup_mod_relations:
        if rs is None:
            rs = RewriteSystem(q)
        classes: list[list[PathWord]] = []
        unknown = 0
        for c in cycles:
            placed = False
            for cls in classes:
                res = paths_equal(rs, cls[0], c, bounds)
                if res.is_equal:
                    cls.append(c)
                    placed = True
                    break
                if res.verdict == UNKNOWN:
                    unknown += 1
            if not placed:
                classes.append([c])
        enum.classes = classes
        enum.unknown_pairs = unknown
    return enum


def vertex_simple_cycles(q: DimerQuiver) -> list[PathWord]:
    """Every directed cycle with no repeated vertex, one representative per
    rotation class, sorted canonically."""
    seen: set[tuple[int, ...]] = set()
    out: list[PathWord] = []
    for i in range(q.num_vertices):
        enum = enumerate_cycles(q, i, q.num_vertices, CycleFilter.vertex_simple())
        for c in enum.cycles:
            rotations = [
                c.arrows[k:] + c.arrows[:k] for k in range(len(c.arrows))
            ]
            canon = min(rotations)
            if canon in seen:
                continue
            seen.add(canon)
            out.append(c if c.arrows == canon else _rotate_to(q, c, canon))
    out.sort(key=lambda c: (len(c.arrows), c.arrows))
    return out


def _rotate_to(q: DimerQuiver, c: PathWord, canon: tuple[int, ...]) -> PathWord:
    return PathWord(q.arrow(canon[0]).tail, canon)


# -- non-cancellative pairs --------------------------------------------------


@dataclass
class NoncancellativePair:
    vertex: int
    p: PathWord
    q: PathWord
    r: PathWord
    side: str  # "after" means r is appended (walked last), "before" prepended
    inequality_reason: str
    equality_witness: tuple[RewriteStep, ...]


@dataclass
class NoncancellativeReport:
    pair: NoncancellativePair | None
    exhausted: bool
    cycles_considered: int
    pairs_tested: int

    @property
    def found(self):
        return self.pair is not None


def find_noncancellative_pair(
    q: DimerQuiver,
    contraction=None,
    bounds: SearchBounds = DEFAULT_BOUNDS,
    max_cycle_len: int | None = None,
    max_r_len: int | None = None,
) -> NoncancellativeReport:
    """Search for cycles p != q (certainly, modulo relations) with equal
    invariants and a path r such that appending or prepending r makes them
    equal.

    Cycles are grown length by length across all vertices and bucketed by
    homology, matching profile, and (when a contraction is supplied) the
    contracted monomial image; within a bucket, equality classes are
    maintained and every certainly-distinct pair of class representatives
    is probed for a cancellation witness r.  All rewriting shares one
    state budget drawn from ``bounds.max_states``; a successful pair is
    returned with its witnesses, otherwise the report says whether the
    search ran to completion or was cut off."""
    rs = RewriteSystem(q)
    if max_cycle_len is None:
        max_cycle_len = max(2 * q.max_face_length(), bounds.word_cap(q) // 2)
    if max_r_len is None:
        max_r_len = q.max_face_length() + 2

    out_by_vertex: list[list[int]] = [[] for _ in range(q.num_vertices)]
    in_by_vertex: list[list[int]] = [[] for _ in range(q.num_vertices)]
    for a in q.arrows:
        out_by_vertex[a.tail].append(a.id)
        in_by_vertex[a.head].append(a.id)
    for lst in out_by_vertex:
        lst.sort()
    for lst in in_by_vertex:
        lst.sort()

    def image(word):
        if contraction is None:
            return None
        from .contraction import tau_psi  # local import to stay acyclic

        return tau_psi(contraction, PathWord(q.arrow(word[0]).tail, word))

    budget = [bounds.max_states]
    per_call = max(2000, bounds.max_states // 10)

    def eq(a: PathWord, b: PathWord) -> EqResult:
        if budget[0] <= 0:
            return EqResult(UNKNOWN, reason="search_budget")
        res = paths_equal(
            rs, a, b, SearchBounds(bounds.word_cap(q, a, b), min(per_call, budget[0]))
        )
        budget[0] -= max(res.states, 1)
        return res

    def r_words(v, forward):
        layer = [(v, ())]
        for _ in range(max_r_len):
            nxt = []
            for at, word in layer:
                pool = out_by_vertex[at] if forward else in_by_vertex[at]
                for aid in pool:
                    if forward:
                        nxt.append((q.arrow(aid).head, word + (aid,)))
                    else:
                        nxt.append((q.arrow(aid).tail, (aid,) + word))
            yield from (w for _, w in nxt)
            layer = nxt

    def probe(v, p: PathWord, q_: PathWord, reason) -> NoncancellativePair | None:
        nonlocal exhausted
        for r_word in r_words(v, forward=True):
            if budget[0] <= 0:
                exhausted = True
                return None
            res = eq(PathWord(v, p.arrows + r_word), PathWord(v, q_.arrows + r_word))
            if res.is_equal:
                return NoncancellativePair(
                    v, p, q_, PathWord(q.arrow(r_word[0]).tail, r_word),
                    "after", reason, res.steps,
                )
            if res.verdict == UNKNOWN:
                exhausted = True
        for r_word in r_words(v, forward=False):
            if budget[0] <= 0:
                exhausted = True
                return None
            base = q.arrow(r_word[0]).tail
            res = eq(PathWord(base, r_word + p.arrows), PathWord(base, r_word + q_.arrows))
            if res.is_equal:
                return NoncancellativePair(
                    v, p, q_, PathWord(base, r_word), "before", reason, res.steps,
                )
            if res.verdict == UNKNOWN:
                exhausted = True
        return None

    cycles_considered = 0
    pairs_tested = 0
    exhausted = False
    # buckets[v][key] = list of equality-class representatives
    buckets: list[dict[tuple, list[PathWord]]] = [dict() for _ in range(q.num_vertices)]
    layers: list[list[tuple[int, tuple[int, ...]]]] = [
        [(v, ())] for v in range(q.num_vertices)
    ]
    for _length in range(1, max_cycle_len + 1):
        if budget[0] <= 0:
            exhausted = True
            break
        for v in range(q.num_vertices):
            grown = []
            for at, word in layers[v]:
                for aid in out_by_vertex[at]:
                    grown.append((q.arrow(aid).head, word + (aid,)))
                    budget[0] -= 1
            layers[v] = grown
            for at, word in grown:
                if at != v:
                    continue
                cycles_considered += 1
                c = PathWord(v, word)
                key = (path_homology(q, c), rs.profile(word), image(word))
                reps = buckets[v].setdefault(key, [])
                is_new = True
                for rep in reps:
                    res = eq(rep, c)
                    pairs_tested += 1
                    if res.is_equal:
                        is_new = False
                        break
                    if res.verdict == UNKNOWN:
                        exhausted = True
                        continue
                    pair = probe(v, rep, c, res.reason)
                    if pair is not None:
                        return NoncancellativeReport(
                            pair, exhausted, cycles_considered, pairs_tested
                        )
                if is_new:
                    reps.append(c)
            if budget[0] <= 0:
                exhausted = True
                break
        if exhausted and budget[0] <= 0:
            break
    return NoncancellativeReport(None, exhausted, cycles_considered, pairs_tested)
