"""Finite categories and functors as a host category.

A finite category is stored as explicit source/target/identity arrays
plus a full composition table (``table[f][g]`` is "f then g", None when
not composable).  Functors are object and morphism assignments.

Pushouts are only supported along spans out of discrete categories:
the glued category's morphisms are reduced words in the two sides'
non-identity morphisms (adjacent same-side factors composed away), and
word closure is capped, so gluing that creates free loops raises
:class:`ClosureExceeded` instead of diverging.

Joint epimorphy is never decided here, only disproved: the searcher
enumerates small composition tables and looks for a pair of distinct
functors agreeing after precomposition, which is a sound refutation.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    CategoryCapabilities,
    ClosureExceeded,
    CoCategoryData,
    CoconeMismatch,
    NonComposable,
    PushoutWitness,
    TypeMismatch,
    UnsupportedCapability,
    double_and_triple,
)


# ---------------------------------------------------------------------------
# Categories and functors


@dataclass(frozen=True)
class FinCategory:
    """A finite category with a full composition lookup table."""

    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identities: tuple[int, ...]
    table: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        m = len(self.src)
        if len(self.tgt) != m:
            raise NonComposable("src/tgt length mismatch")
        if len(self.identities) != self.n_objects:
            raise NonComposable("need one identity per object")
        if any(not (0 <= x < self.n_objects) for x in self.src + self.tgt):
            raise NonComposable("src/tgt out of range")
        if any(not (0 <= e < m) for e in self.identities):
            raise NonComposable("identity index out of range")
        if len(self.table) != m or any(len(row) != m for row in self.table):
            raise NonComposable("composition table must be n_morphisms square")

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def is_identity(self, f: int) -> bool:
        return f in self.identities

    def non_identities(self) -> list[int]:
        ids = set(self.identities)
        return [f for f in range(self.n_morphisms) if f not in ids]

    def compose(self, f: int, g: int) -> int:
        """f then g."""
        if self.tgt[f] != self.src[g]:
            raise NonComposable(f"morphisms {f} and {g} are not composable")
        h = self.table[f][g]
        if h is None:
            raise NonComposable(f"composition table has no entry for ({f}, {g})")
        return h


def check_category(c: FinCategory) -> None:
    """Raise :class:`NonComposable` on the first violated category law."""
    m = c.n_morphisms
    for x in range(c.n_objects):
        e = c.identities[x]
        if c.src[e] != x or c.tgt[e] != x:
            raise NonComposable(f"identity of object {x} is not an endomorphism of it")
    for f in range(m):
        for g in range(m):
            entry = c.table[f][g]
            if (c.tgt[f] == c.src[g]) != (entry is not None):
                raise NonComposable(f"table defined-ness wrong at ({f}, {g})")
            if entry is not None:
                if c.src[entry] != c.src[f] or c.tgt[entry] != c.tgt[g]:
                    raise NonComposable(f"composite of ({f}, {g}) has wrong endpoints")
    for f in range(m):
        if c.table[c.identities[c.src[f]]][f] != f:
            raise NonComposable(f"left identity law fails at {f}")
        if c.table[f][c.identities[c.tgt[f]]] != f:
            raise NonComposable(f"right identity law fails at {f}")
    for f in range(m):
        for g in range(m):
            if c.tgt[f] != c.src[g]:
                continue
            fg = c.table[f][g]
            for h in range(m):
                if c.tgt[g] != c.src[h]:
                    continue
                if c.table[fg][h] != c.table[f][c.table[g][h]]:
                    raise NonComposable(f"associativity fails at ({f}, {g}, {h})")


def validate(c: FinCategory) -> bool:
    try:
        check_category(c)
        return True
    except NonComposable:
        return False


def terminal_category() -> FinCategory:
    return FinCategory(1, (0,), (0,), (0,), ((0,),))


def discrete_category(n: int) -> FinCategory:
    table = tuple(tuple(f if f == g else None for g in range(n)) for f in range(n))
    return FinCategory(n, tuple(range(n)), tuple(range(n)), tuple(range(n)), table)


def arrow_category() -> FinCategory:
    # morphisms: id0, id1, a: 0 -> 1
    table = (
        (0, None, 2),
        (None, 1, None),
        (None, 2, None),
    )
    return FinCategory(2, (0, 1, 0), (0, 1, 1), (0, 1), table)


@dataclass(frozen=True)
class FunctorData:
    """A functor as object and morphism assignments, validated on
    construction."""

    dom: FinCategory
    cod: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.obj_map) != self.dom.n_objects or len(self.mor_map) != self.dom.n_morphisms:
            raise TypeMismatch("assignment lengths do not match the domain")
        if not _is_functorial(self.dom, self.cod, self.obj_map, self.mor_map):
            raise TypeMismatch("assignments do not form a functor")


def _is_functorial(dom: FinCategory, cod: FinCategory,
                   obj_map: tuple[int, ...], mor_map: tuple[int, ...]) -> bool:
    for f in range(dom.n_morphisms):
        img = mor_map[f]
        if cod.src[img] != obj_map[dom.src[f]] or cod.tgt[img] != obj_map[dom.tgt[f]]:
            return False
    for x in range(dom.n_objects):
        if mor_map[dom.identities[x]] != cod.identities[obj_map[x]]:
            return False
    for f in range(dom.n_morphisms):
        for g in range(dom.n_morphisms):
            if dom.tgt[f] != dom.src[g]:
                continue
            if cod.table[mor_map[f]][mor_map[g]] != mor_map[dom.table[f][g]]:
                return False
    return True


def functor_compose(f: FunctorData, g: FunctorData) -> FunctorData:
    """f followed by g."""
    if f.cod != g.dom:
        raise TypeMismatch("compose: cod(f) != dom(g)")
    return FunctorData(f.dom, g.cod,
                       tuple(g.obj_map[x] for x in f.obj_map),
                       tuple(g.mor_map[m] for m in f.mor_map))


def functor_identity(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)))


def enumerate_functors(dom: FinCategory, cod: FinCategory) -> list[FunctorData]:
    """All functors dom -> cod by filtered brute force, in lexicographic
    order of their assignments."""
    out = []
    non_ids = dom.non_identities()
    for obj_map in itertools.product(range(cod.n_objects), repeat=dom.n_objects):
        candidates = []
        for f in non_ids:
            opts = [m for m in range(cod.n_morphisms)
                    if cod.src[m] == obj_map[dom.src[f]] and cod.tgt[m] == obj_map[dom.tgt[f]]]
            candidates.append(opts)
        for choice in itertools.product(*candidates):
            mor_map = [0] * dom.n_morphisms
            for x in range(dom.n_objects):
                mor_map[dom.identities[x]] = cod.identities[obj_map[x]]
            for f, m in zip(non_ids, choice):
                mor_map[f] = m
            if _is_functorial(dom, cod, obj_map, tuple(mor_map)):
                out.append(FunctorData(dom, cod, obj_map, tuple(mor_map)))
    return out


# ---------------------------------------------------------------------------
# Pushouts along discrete spans


def _reduce_word(word, cats) -> tuple:
    """Compose away adjacent same-side composable factors; identity
    composites vanish, possibly cascading."""
    out: list[tuple[int, int]] = []
    for gen in word:
        out.append(gen)
        while len(out) >= 2:
            s1, m1 = out[-2]
            s2, m2 = out[-1]
            if s1 == s2 and cats[s1].tgt[m1] == cats[s1].src[m2]:
                h = cats[s1].table[m1][m2]
                out.pop()
                out.pop()
                if not cats[s1].is_identity(h):
                    out.append((s1, h))
            else:
                break
    return tuple(out)


def _is_discrete(c: FinCategory) -> bool:
    return c.n_morphisms == c.n_objects


def pushout_cats(f: FunctorData, g: FunctorData, word_cap: int = 8) -> PushoutWitness:
    """Glue cod(f) and cod(g) along a discrete span.

    Objects are merged by union-find; morphisms are reduced alternating
    words in the two sides' non-identity morphisms.  Raises
    :class:`ClosureExceeded` when a word would exceed ``word_cap``
    (the closure is then infinite, e.g. a freshly created loop).
    """
    if f.dom != g.dom:
        raise TypeMismatch("pushout: span legs must share a domain")
    if not _is_discrete(f.dom):
        raise UnsupportedCapability("category pushouts are only supported over discrete spans")
    a, b = f.cod, g.cod
    cats = (a, b)
    na = a.n_objects

    parent = list(range(na + b.n_objects))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(f.dom.n_objects):
        ra, rb = find(f.obj_map[s]), find(na + g.obj_map[s])
        if ra != rb:
            parent[rb] = ra
    smallest: dict[int, int] = {}
    for x in range(na + b.n_objects):
        r = find(x)
        if r not in smallest:
            smallest[r] = x
    order = sorted(smallest, key=smallest.get)
    cls = {r: k for k, r in enumerate(order)}
    n_objects = len(order)

    def obj_class(side: int, x: int) -> int:
        return cls[find(x if side == 0 else na + x)]

    def word_src(w) -> int:
        side, m = w[0]
        return obj_class(side, cats[side].src[m])

    def word_tgt(w) -> int:
        side, m = w[-1]
        return obj_class(side, cats[side].tgt[m])

    gens = [((side, m),) for side in (0, 1) for m in cats[side].non_identities()]
    words: set[tuple] = set(gens)
    queue = deque(gens)
    while queue:
        w = queue.popleft()
        for h in gens:
            if word_tgt(w) != word_src(h):
                continue
            nw = _reduce_word(w + h, cats)
            if not nw:
                continue
            if len(nw) > word_cap:
                raise ClosureExceeded(f"word closure exceeds cap {word_cap}")
            if nw not in words:
                words.add(nw)
                queue.append(nw)

    word_list = sorted(words, key=lambda w: (len(w), w))
    # identities first, one per glued object
    src = list(range(n_objects)) + [word_src(w) for w in word_list]
    tgt = list(range(n_objects)) + [word_tgt(w) for w in word_list]
    identities = tuple(range(n_objects))
    word_index = {w: n_objects + k for k, w in enumerate(word_list)}
    all_words: list[Optional[tuple]] = [None] * n_objects + list(word_list)

    n_mor = len(src)
    table: list[list[Optional[int]]] = [[None] * n_mor for _ in range(n_mor)]
    for m1 in range(n_mor):
        for m2 in range(n_mor):
            if tgt[m1] != src[m2]:
                continue
            w1 = all_words[m1] or ()
            w2 = all_words[m2] or ()
            w = _reduce_word(w1 + w2, cats)
            table[m1][m2] = identities[src[m1]] if not w else word_index[w]
    apex = FinCategory(n_objects, tuple(src), tuple(tgt), identities,
                       tuple(tuple(row) for row in table))

    def injection(side: int, c: FinCategory) -> FunctorData:
        obj_map = tuple(obj_class(side, x) for x in range(c.n_objects))
        mor_map = []
        for m in range(c.n_morphisms):
            if c.is_identity(m):
                mor_map.append(identities[obj_map[c.src[m]]])
            else:
                mor_map.append(word_index[((side, m),)])
        return FunctorData(c, apex, obj_map, tuple(mor_map))

    return PushoutWitness(
        apex=apex,
        injections=(injection(0, a), injection(1, b)),
        legs=(f, g),
        payload={"words": tuple(all_words), "sides": cats},
    )


def copair_cats(witness: PushoutWitness, u: FunctorData, v: FunctorData) -> FunctorData:
    i1, i2 = witness.injections
    if u.dom != i1.dom or v.dom != i2.dom:
        raise TypeMismatch("copair: cocone legs do not match the span")
    if u.cod != v.cod:
        raise TypeMismatch("copair: cocone legs must share a codomain")
    f, g = witness.legs
    if functor_compose(f, u) != functor_compose(g, v):
        raise CoconeMismatch("cocone condition u.f = v.g fails")
    apex: FinCategory = witness.apex
    x = u.cod
    words = witness.payload["words"]
    na = u.dom.n_objects

    # smallest member of each glued class determines the object image
    reps: dict[int, int] = {}
    for side, leg in ((0, i1), (1, i2)):
        for ob in range(leg.dom.n_objects):
            c = leg.obj_map[ob]
            key = ob if side == 0 else na + ob
            if c not in reps or key < reps[c]:
                reps[c] = key
    obj_map = []
    for c in range(apex.n_objects):
        k = reps[c]
        obj_map.append(u.obj_map[k] if k < na else v.obj_map[k - na])

    mor_map = []
    for m in range(apex.n_morphisms):
        w = words[m]
        if w is None:
            mor_map.append(x.identities[obj_map[apex.src[m]]])
            continue
        imgs = [u.mor_map[idx] if side == 0 else v.mor_map[idx] for side, idx in w]
        acc = imgs[0]
        for nxt in imgs[1:]:
            acc = x.table[acc][nxt]
        mor_map.append(acc)
    return FunctorData(apex, x, tuple(obj_map), tuple(mor_map))


# ---------------------------------------------------------------------------
# Capabilities instance


class Cat(CategoryCapabilities):
    name = "cat"

    def __init__(self, joint_epi_bound: int = 4, word_cap: int = 16):
        self.joint_epi_bound = joint_epi_bound
        self.word_cap = word_cap

    def equal(self, f, g):
        return f == g

    def compose(self, f, g):
        return functor_compose(f, g)

    def identity(self, obj):
        return functor_identity(obj)

    def pushout(self, f, g):
        return pushout_cats(f, g, word_cap=self.word_cap)

    def copair(self, witness, u, v):
        return copair_cats(witness, u, v)

    def morphisms(self, x, y):
        return enumerate_functors(x, y)

    def joint_epi_status(self, maps):
        """Disprove joint epimorphy by counterexample search, or report
        None (unknown): a decision procedure is out of reach here."""
        found = joint_epi_counterexample_for_maps(list(maps), self.joint_epi_bound)
        if found is not None:
            c, pair = found
            return False, {"category": c, "functors": pair}
        return None, {"searched_morphisms_up_to": self.joint_epi_bound}


CAT = Cat()


# ---------------------------------------------------------------------------
# The interval


def interval_cocategory() -> CoCategoryData:
    """The interval: Q0 the point, Q1 the arrow category, q sending the
    arrow to the composite across two glued intervals."""
    i0 = terminal_category()
    i1 = arrow_category()
    l = FunctorData(i0, i1, (0,), (0,))
    r = FunctorData(i0, i1, (1,), (1,))
    i = FunctorData(i1, i0, (0, 0), (0, 0, 0))
    double, triple = double_and_triple(CAT, l, r)
    n1, n2 = double.injections
    glued = double.apex
    arrow = 2  # the non-identity of i1
    composite = glued.table[n1.mor_map[arrow]][n2.mor_map[arrow]]
    q = FunctorData(i1, glued,
                    (n1.obj_map[0], n2.obj_map[1]),
                    (glued.identities[n1.obj_map[0]],
                     glued.identities[n2.obj_map[1]],
                     composite))
    return CoCategoryData(q0=i0, q1=i1, l=l, r=r, i=i, q=q, double=double, triple=triple)


# ---------------------------------------------------------------------------
# Small-category enumeration and joint-epi counterexample search


def _enumerate_categories(max_morphisms: int) -> Iterator[FinCategory]:
    """All finite categories with at most the given number of morphisms,
    by backtracking over composition tables with incremental
    associativity pruning.  Ordered by total morphism count."""
    for m in range(1, max_morphisms + 1):
        for n_obj in range(1, m + 1):
            k = m - n_obj
            gens = list(range(n_obj, m))
            for src_t in itertools.product(range(n_obj), repeat=k):
                for tgt_t in itertools.product(range(n_obj), repeat=k):
                    src = tuple(range(n_obj)) + src_t
                    tgt = tuple(range(n_obj)) + tgt_t
                    yield from _complete_tables(n_obj, src, tgt)


def _complete_tables(n_obj: int, src: tuple[int, ...], tgt: tuple[int, ...]
                     ) -> Iterator[FinCategory]:
    m = len(src)
    identities = tuple(range(n_obj))
    table: list[list[Optional[int]]] = [[None] * m for _ in range(m)]
    for f in range(m):
        table[identities[src[f]]][f] = f
        table[f][identities[tgt[f]]] = f
    free_pairs = [(f, g) for f in range(n_obj, m) for g in range(n_obj, m)
                  if tgt[f] == src[g]]
    candidates = {
        (f, g): [h for h in range(m) if src[h] == src[f] and tgt[h] == tgt[g]]
        for f, g in free_pairs
    }

    def assoc_ok() -> bool:
        for f in range(m):
            for g in range(m):
                if tgt[f] != src[g] or table[f][g] is None:
                    continue
                fg = table[f][g]
                for h in range(m):
                    if tgt[g] != src[h]:
                        continue
                    gh = table[g][h]
                    if gh is None or table[fg][h] is None or table[f][gh] is None:
                        continue
                    if table[fg][h] != table[f][gh]:
                        return False
        return True

    def rec(idx: int) -> Iterator[FinCategory]:
        if idx == len(free_pairs):
            yield FinCategory(n_obj, src, tgt, identities,
                              tuple(tuple(row) for row in table))
            return
        f, g = free_pairs[idx]
        for h in candidates[(f, g)]:
            table[f][g] = h
            if assoc_ok():
                yield from rec(idx + 1)
            table[f][g] = None

    if not free_pairs:
        yield FinCategory(n_obj, src, tgt, identities,
                          tuple(tuple(row) for row in table))
    else:
        yield from rec(0)


def joint_epi_counterexample_for_maps(maps, max_test_size: int
                                      ) -> Optional[tuple[FinCategory, tuple[FunctorData, FunctorData]]]:
    """Search test categories for a pair F != G out of the common
    codomain agreeing after precomposition with every map."""
    if not maps:
        raise TypeMismatch("need at least one map")
    cod = maps[0].cod
    if any(m.cod != cod for m in maps):
        raise TypeMismatch("joint-epi search needs a common codomain")
    for c in _enumerate_categories(max_test_size):
        seen: dict[tuple, FunctorData] = {}
        for cand in enumerate_functors(cod, c):
            sig = tuple(
                (functor_compose(m, cand).obj_map, functor_compose(m, cand).mor_map)
                for m in maps
            )
            if sig in seen:
                return c, (seen[sig], cand)
            seen[sig] = cand
    return None


def joint_epi_counterexample(data: CoCategoryData, max_test_size: int
                             ) -> Optional[tuple[FinCategory, FunctorData, FunctorData]]:
    """Disproof witness for "l, r are jointly epi", or None (unknown)."""
    found = joint_epi_counterexample_for_maps([data.l, data.r], max_test_size)
    if found is None:
        return None
    c, (first, second) = found
    return c, first, second
