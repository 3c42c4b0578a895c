"""The finite-set engine: a fully coherent host category.

Objects are sizes (elements ``0 .. size-1``), morphisms are lookup
tables.  Finite sets have every piece of structure the generic layer
can ask for -- finite limits, images, unions, a subobject classifier --
so this module also hosts the machinery that only makes sense here:
exhaustive co-category enumeration, the step-by-step verifier for the
claim that every co-category is a co-equivalence relation, the
universal co-category over the two-element classifier, and the colax
correspondence between co-categories and characteristic maps.

All constructions are canonical and deterministic: pushout apex
elements are equivalence classes ordered by their smallest member of
the disjoint union, pullback elements are lexicographically ordered
pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .core import (
    CategoryCapabilities,
    CoCategoryData,
    CocatError,
    CoconeMismatch,
    IllFormedPushout,
    InvariantViolation,
    NotMono,
    PushoutWitness,
    SizeLimit,
    TypeMismatch,
    check_cocategory,
    coinverse_violation,
    cokernel_pair,
    double_and_triple,
)


# ---------------------------------------------------------------------------
# Objects, morphisms, subobjects


@dataclass(frozen=True)
class FinSetObj:
    """A finite set with elements 0 .. size-1."""

    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be non-negative")


@dataclass(frozen=True)
class FinMap:
    """A function between finite sets, stored as a lookup table."""

    dom: FinSetObj
    cod: FinSetObj
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.dom.size:
            raise TypeMismatch("table length does not match domain size")
        if any(not (0 <= v < self.cod.size) for v in self.table):
            raise TypeMismatch("table entry out of codomain range")

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class Subobject:
    """A subobject in canonical form: the sorted subset of the codomain."""

    cod: FinSetObj
    elements: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.elements))) != self.elements:
            raise ValueError("elements must be sorted and duplicate-free")
        if any(not (0 <= e < self.cod.size) for e in self.elements):
            raise ValueError("element out of range")

    @classmethod
    def from_mono(cls, m: FinMap) -> "Subobject":
        if not is_mono(m):
            raise NotMono("map is not injective")
        return cls(m.cod, tuple(sorted(m.table)))

    def as_mono(self) -> FinMap:
        return FinMap(FinSetObj(len(self.elements)), self.cod, self.elements)


def identity(obj: FinSetObj) -> FinMap:
    return FinMap(obj, obj, tuple(range(obj.size)))


def compose(f: FinMap, g: FinMap) -> FinMap:
    """f followed by g."""
    if f.cod != g.dom:
        raise TypeMismatch("compose: cod(f) != dom(g)")
    return FinMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def is_mono(f: FinMap) -> bool:
    return len(set(f.table)) == len(f.table)


def is_epi(f: FinMap) -> bool:
    return len(set(f.table)) == f.cod.size


def is_bijective(f: FinMap) -> bool:
    return f.dom.size == f.cod.size and is_mono(f)


def inverse(f: FinMap) -> FinMap:
    if not is_bijective(f):
        raise TypeMismatch("inverse of a non-bijection")
    table = [0] * f.cod.size
    for x, v in enumerate(f.table):
        table[v] = x
    return FinMap(f.cod, f.dom, tuple(table))


def subset_mono(elements, ambient: FinSetObj) -> FinMap:
    """The inclusion of a subset, given by its sorted element list."""
    return Subobject(ambient, tuple(sorted(set(elements)))).as_mono()


# ---------------------------------------------------------------------------
# Colimits and limits


def _uf_find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def pushout(f: FinMap, g: FinMap) -> PushoutWitness:
    """Pushout of ``cod(f) <-f- S -g-> cod(g)``.

    The apex is the quotient of the disjoint union by f(s) ~ g(s);
    classes are numbered by their smallest member, A-part first.
    """
    if f.dom != g.dom:
        raise TypeMismatch("pushout: span legs must share a domain")
    na, nb = f.cod.size, g.cod.size
    parent = list(range(na + nb))
    for s in range(f.dom.size):
        ra = _uf_find(parent, f.table[s])
        rb = _uf_find(parent, na + g.table[s])
        if ra != rb:
            parent[rb] = ra
    smallest: dict[int, int] = {}
    for x in range(na + nb):
        r = _uf_find(parent, x)
        if r not in smallest:
            smallest[r] = x
    order = sorted(smallest, key=smallest.get)
    index = {r: k for k, r in enumerate(order)}
    apex = FinSetObj(len(order))
    inj1 = FinMap(f.cod, apex, tuple(index[_uf_find(parent, a)] for a in range(na)))
    inj2 = FinMap(g.cod, apex, tuple(index[_uf_find(parent, na + b)] for b in range(nb)))
    return PushoutWitness(apex=apex, injections=(inj1, inj2), legs=(f, g))


def copair(witness: PushoutWitness, u: FinMap, v: FinMap) -> FinMap:
    """Factor the cocone (u, v) through the pushout apex."""
    i1, i2 = witness.injections
    if u.dom != i1.dom or v.dom != i2.dom:
        raise TypeMismatch("copair: cocone legs do not match the span")
    if u.cod != v.cod:
        raise TypeMismatch("copair: cocone legs must share a codomain")
    table: list[Optional[int]] = [None] * witness.apex.size
    for inj, leg in ((i1, u), (i2, v)):
        for x in range(leg.dom.size):
            pos, val = inj.table[x], leg.table[x]
            if table[pos] is None:
                table[pos] = val
            elif table[pos] != val:
                raise CoconeMismatch(f"legs disagree at apex element {pos}")
    if any(t is None for t in table):
        raise IllFormedPushout("injections do not cover the apex")
    return FinMap(witness.apex, u.cod, tuple(table))  # type: ignore[arg-type]


def pullback(f: FinMap, g: FinMap) -> tuple[FinSetObj, FinMap, FinMap]:
    """Pullback {(a, b) : f(a) = g(b)} with its two projections."""
    if f.cod != g.cod:
        raise TypeMismatch("pullback: cospan legs must share a codomain")
    pairs = [(a, b) for a in range(f.dom.size) for b in range(g.dom.size)
             if f.table[a] == g.table[b]]
    obj = FinSetObj(len(pairs))
    p1 = FinMap(obj, f.dom, tuple(a for a, _ in pairs))
    p2 = FinMap(obj, g.dom, tuple(b for _, b in pairs))
    return obj, p1, p2


def image(f: FinMap) -> Subobject:
    return Subobject(f.cod, tuple(sorted(set(f.table))))


def union(s1: Subobject, s2: Subobject) -> Subobject:
    if s1.cod != s2.cod:
        raise TypeMismatch("union: subobjects of different objects")
    return Subobject(s1.cod, tuple(sorted(set(s1.elements) | set(s2.elements))))


def is_jointly_covering(maps) -> bool:
    maps = list(maps)
    if not maps:
        raise TypeMismatch("need at least one map")
    cod = maps[0].cod
    if any(m.cod != cod for m in maps):
        raise TypeMismatch("jointly-covering test needs a common codomain")
    hit = set()
    for m in maps:
        hit.update(m.table)
    return len(hit) == cod.size


def equalizer(f: FinMap, g: FinMap) -> FinMap:
    """The subset where two parallel maps agree, as a mono into dom."""
    if f.dom != g.dom or f.cod != g.cod:
        raise TypeMismatch("equalizer needs parallel maps")
    elems = tuple(x for x in range(f.dom.size) if f.table[x] == g.table[x])
    return FinMap(FinSetObj(len(elems)), f.dom, elems)


# ---------------------------------------------------------------------------
# Capabilities instance


class FinSet(CategoryCapabilities):
    name = "finset"

    def equal(self, f, g):
        return f == g

    def compose(self, f, g):
        return compose(f, g)

    def identity(self, obj):
        return identity(obj)

    def pushout(self, f, g):
        return pushout(f, g)

    def copair(self, witness, u, v):
        return copair(witness, u, v)

    def pullback(self, f, g):
        return pullback(f, g)

    def equalizer(self, f, g):
        return equalizer(f, g)

    def image(self, f):
        return image(f)

    def union(self, s1, s2):
        return union(s1, s2)

    def joint_epi_status(self, maps):
        # in finite sets jointly epi == jointly covering
        maps = list(maps)
        cod = maps[0].cod
        hit = set()
        for m in maps:
            hit.update(m.table)
        missing = [x for x in range(cod.size) if x not in hit]
        if missing:
            return False, {"uncovered": missing[0]}
        return True, None

    def morphisms(self, x, y):
        for table in itertools.product(range(y.size), repeat=x.size):
            yield FinMap(x, y, table)

    def is_mono(self, f):
        return is_mono(f)

    def is_epi(self, f):
        return is_epi(f)

    def is_pushout(self, witness):
        f, g = witness.legs
        i1, i2 = witness.injections
        if compose(f, i1) != compose(g, i2):
            return False
        canonical = pushout(f, g)
        try:
            comparison = copair(canonical, i1, i2)
        except (CoconeMismatch, IllFormedPushout):
            return False
        return is_bijective(comparison)

    def injections_cover(self, witness):
        return is_jointly_covering(witness.injections)


FINSET = FinSet()


# ---------------------------------------------------------------------------
# Co-categories from monos


def cokernel_pair_cocategory(m: FinMap) -> CoCategoryData:
    """The co-category with Q1 = A +_S A built from a mono S -> A."""
    if not is_mono(m):
        raise NotMono("cokernel pair co-category needs an injective map")
    return cokernel_pair(FINSET, m)


def trivial_cocategory() -> CoCategoryData:
    return cokernel_pair_cocategory(identity(FinSetObj(1)))


def discrete_cocategory(obj: FinSetObj) -> CoCategoryData:
    """Q0 = Q1 = X with l = r = i = id and q the collapse isomorphism."""
    return cokernel_pair_cocategory(identity(obj))


# ---------------------------------------------------------------------------
# Step-by-step verification that a co-category is a co-equivalence relation


@dataclass(frozen=True)
class ProofReport:
    """Record of every step of the co-equivalence verification.

    All flags are True for every valid co-category in finite sets; a
    False entry is either a bug or a refutation, and ``notes`` then
    carries a concrete element witness for the first failure.
    """

    pullback1: tuple[FinSetObj, FinMap, FinMap]  # (P1, q_1, m_1)
    pullback2: tuple[FinSetObj, FinMap, FinMap]
    nu_preimages_cover: bool
    left_retraction: bool   # l.i.q_1 = m_1
    right_retraction: bool  # r.i.q_2 = m_2
    lr_jointly_cover: bool
    lr_pullback: tuple[FinSetObj, FinMap, FinMap]
    projections_equal: bool
    square_is_pushout: bool
    coinverse: Optional[FinMap]
    coinverse_valid: bool
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (self.nu_preimages_cover and self.left_retraction
                and self.right_retraction and self.lr_jointly_cover
                and self.projections_equal and self.square_is_pushout
                and self.coinverse is not None and self.coinverse_valid)


def verify_proposition(data: CoCategoryData) -> ProofReport:
    """Walk the whole argument on one concrete co-category.

    Pull the two summands of the double pushout back along q, show the
    preimages cover Q1 and retract onto the images of l and r, conclude
    l, r jointly cover, show the two projections of their pullback
    agree, check that pullback square is also a pushout, and construct
    the co-inverse from its universal property.
    """
    axioms = check_cocategory(FINSET, data)
    if not axioms.ok:
        raise CocatError(f"verify_proposition needs a valid co-category; failed: {axioms.failures}")

    notes: list[str] = []
    nu1, nu2 = data.double.injections

    # P_j = pullback of nu_j along q, with q_j into the nu side and m_j
    # into the q side.
    P1, m1, q1 = pullback(data.q, nu1)
    P2, m2, q2 = pullback(data.q, nu2)
    cover = union(image(m1), image(m2)).elements == tuple(range(data.q1.size))
    if not cover:
        missing = sorted(set(range(data.q1.size))
                         - set(m1.table) - set(m2.table))
        notes.append(f"element {missing[0]} of Q1 lies in neither preimage")

    li = compose(data.i, data.l)
    ri = compose(data.i, data.r)
    left_retr = compose(q1, li) == m1
    right_retr = compose(q2, ri) == m2
    if not left_retr:
        bad = next(p for p in range(P1.size)
                   if li.table[q1.table[p]] != m1.table[p])
        notes.append(f"l.i.q_1 != m_1 at P1 element {bad}")
    if not right_retr:
        bad = next(p for p in range(P2.size)
                   if ri.table[q2.table[p]] != m2.table[p])
        notes.append(f"r.i.q_2 != m_2 at P2 element {bad}")

    lr_cover = is_jointly_covering([data.l, data.r])
    if not lr_cover:
        missing = sorted(set(range(data.q1.size)) - set(data.l.table) - set(data.r.table))
        notes.append(f"element {missing[0]} of Q1 not hit by l or r")

    K, p1, p2 = pullback(data.l, data.r)
    proj_eq = p1 == p2
    if not proj_eq:
        bad = next(k for k in range(K.size) if p1.table[k] != p2.table[k])
        notes.append(f"pullback projections differ at element {bad}")

    W = pushout(p1, p2)
    square_pushout = False
    s: Optional[FinMap] = None
    s_valid = False
    try:
        comparison = copair(W, data.l, data.r)
        square_pushout = is_bijective(comparison)
        if not square_pushout:
            notes.append(f"comparison map has size {W.apex.size} vs Q1 size {data.q1.size}"
                         if W.apex.size != data.q1.size else
                         "comparison map is not injective")
        if square_pushout and proj_eq:
            swapped = copair(W, data.r, data.l)
            s = compose(inverse(comparison), swapped)
            bad_identity = coinverse_violation(FINSET, data, s)
            s_valid = bad_identity is None
            if not s_valid:
                notes.append(f"constructed co-inverse violates {bad_identity}")
    except (CoconeMismatch, IllFormedPushout) as exc:
        notes.append(f"pushout comparison undefined: {exc}")

    return ProofReport(
        pullback1=(P1, q1, m1),
        pullback2=(P2, q2, m2),
        nu_preimages_cover=cover,
        left_retraction=left_retr,
        right_retraction=right_retr,
        lr_jointly_cover=lr_cover,
        lr_pullback=(K, p1, p2),
        projections_equal=proj_eq,
        square_is_pushout=square_pushout,
        coinverse=s,
        coinverse_valid=s_valid,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Exhaustive enumeration


def _vacuous_cocategory() -> CoCategoryData:
    zero = FinSetObj(0)
    empty = FinMap(zero, zero, ())
    double, triple = double_and_triple(FINSET, empty, empty)
    return CoCategoryData(zero, zero, empty, empty, empty, empty, double, triple)


def _fill_copair_table(apex: int, inj1: tuple, inj2: tuple,
                       val1, val2) -> Optional[list[int]]:
    """Table of the copairing, or None when the cocone condition fails."""
    table: list[Optional[int]] = [None] * apex
    for pos, val in zip(inj1, val1):
        if table[pos] is None:
            table[pos] = val
        elif table[pos] != val:
            return None
    for pos, val in zip(inj2, val2):
        if table[pos] is None:
            table[pos] = val
        elif table[pos] != val:
            return None
    return table  # type: ignore[return-value]


def enumerate_cocategories(max_q0: int, max_q1: int,
                           progress: Optional[Callable[[dict], None]] = None
                           ) -> Iterator[CoCategoryData]:
    """Yield every co-category with |Q0| <= max_q0 and |Q1| <= max_q1.

    Candidates are pruned by fixing (l, r, i) with i.l = i.r = id
    first; the remaining axioms pin q on the image of l and r, so only
    the leftover entries of q are enumerated.  Structures are counted
    on the nose, not up to isomorphism.

    The degenerate (0, 0) structure is a valid vacuous co-category but
    is only reachable when a bound is zero (an empty Q0 admits no maps
    from a nonempty Q1, and vice versa l, r need a nonempty target).
    """
    if max_q0 < 0 or max_q1 < 0:
        raise ValueError("bounds must be non-negative")
    if max_q0 == 0 or max_q1 == 0:
        yield _vacuous_cocategory()
        return
    for n0 in range(1, max_q0 + 1):
        for n1 in range(1, max_q1 + 1):
            found = 0
            triples = 0
            q0, q1 = FinSetObj(n0), FinSetObj(n1)
            for i_table in itertools.product(range(n0), repeat=n1):
                fibers = [tuple(y for y in range(n1) if i_table[y] == x)
                          for x in range(n0)]
                if any(not fib for fib in fibers):
                    continue
                i_map = FinMap(q1, q0, i_table)
                for l_table in itertools.product(*fibers):
                    l_map = FinMap(q0, q1, l_table)
                    for r_table in itertools.product(*fibers):
                        triples += 1
                        r_map = FinMap(q0, q1, r_table)
                        for data in _q_candidates(q0, q1, l_map, r_map, i_map):
                            found += 1
                            yield data
            if progress is not None:
                progress({"q0": n0, "q1": n1, "lri_triples": triples, "found": found})


def _q_candidates(q0: FinSetObj, q1: FinSetObj, l: FinMap, r: FinMap,
                  i: FinMap) -> Iterator[CoCategoryData]:
    n0, n1 = q0.size, q1.size
    double, triple = double_and_triple(FINSET, l, r)
    nu1, nu2 = (m.table for m in double.injections)
    t1, t2, t3 = triple.injections
    apex = double.apex.size
    j1 = copair(double, t1, t2).table
    kappa = copair(double, t2, t3).table
    li = tuple(l.table[i.table[x]] for x in range(n1))
    ri = tuple(r.table[i.table[x]] for x in range(n1))
    idx = tuple(range(n1))
    fold_left = _fill_copair_table(apex, nu1, nu2, li, idx)
    fold_right = _fill_copair_table(apex, nu1, nu2, idx, ri)
    if fold_left is None or fold_right is None:
        return

    # axioms q.l = nu1.l and q.r = nu2.r pin q on the images of l and r
    base: list[Optional[int]] = [None] * n1
    for x in range(n0):
        e = l.table[x]
        if base[e] is None:
            base[e] = nu1[e]
        elif base[e] != nu1[e]:
            return
    for x in range(n0):
        e = r.table[x]
        if base[e] is None:
            base[e] = nu2[e]
        elif base[e] != nu2[e]:
            return
    free = [z for z in range(n1) if base[z] is None]

    t1t, t3t = t1.table, t3.table
    for assignment in itertools.product(range(apex), repeat=len(free)):
        qt = list(base)
        for z, val in zip(free, assignment):
            qt[z] = val
        if any(fold_left[qt[z]] != z for z in range(n1)):
            continue
        if any(fold_right[qt[z]] != z for z in range(n1)):
            continue
        q_then_j1 = tuple(j1[qt[x]] for x in range(n1))
        q_then_kappa = tuple(kappa[qt[x]] for x in range(n1))
        left_assoc = _fill_copair_table(apex, nu1, nu2, q_then_j1, t3t)
        right_assoc = _fill_copair_table(apex, nu1, nu2, t1t, q_then_kappa)
        if left_assoc is None or right_assoc is None:
            continue
        if any(left_assoc[qt[z]] != right_assoc[qt[z]] for z in range(n1)):
            continue
        q_map = FinMap(q1, double.apex, tuple(qt))
        yield CoCategoryData(q0, q1, l, r, i, q_map, double, triple)


def count_q_solutions(q0: FinSetObj, q1: FinSetObj, l: FinMap, r: FinMap,
                      i: FinMap) -> int:
    """How many co-compositions complete a fixed (l, r, i)."""
    return sum(1 for _ in _q_candidates(q0, q1, l, r, i))


# ---------------------------------------------------------------------------
# Subobject classifier and the universal co-category


OMEGA = FinSetObj(2)
TOP = FinMap(FinSetObj(1), OMEGA, (1,))


def universal_cocategory() -> CoCategoryData:
    """The co-category every finite-set co-category pulls back from:
    the cokernel pair of true: 1 -> Omega."""
    return cokernel_pair_cocategory(TOP)


def classifying_map(m: FinMap) -> FinMap:
    """Characteristic map A -> Omega of the subobject of a mono."""
    if not is_mono(m):
        raise NotMono("classifying map of a non-injective map")
    hit = set(m.table)
    return FinMap(m.cod, OMEGA, tuple(1 if a in hit else 0 for a in range(m.cod.size)))


def pullback_cocategory(chi: FinMap) -> CoCategoryData:
    """The co-category over A induced by pulling the universal one back
    along a characteristic map chi: A -> Omega.

    Q1 is the pullback of chi against the universal co-unit; l, r, i
    are the induced maps, and q is transported through the canonical
    comparison between the computed double pushout and the pullback of
    chi against the universal double apex.
    """
    if chi.cod != OMEGA:
        raise TypeMismatch("characteristic maps must land in the two-element classifier")
    uni = universal_cocategory()
    a = chi.dom

    pairs = [(x, u) for x in range(a.size) for u in range(uni.q1.size)
             if chi.table[x] == uni.i.table[u]]
    q1 = FinSetObj(len(pairs))
    index = {p: k for k, p in enumerate(pairs)}
    pi_a = FinMap(q1, a, tuple(x for x, _ in pairs))
    l = FinMap(a, q1, tuple(index[(x, uni.l.table[chi.table[x]])] for x in range(a.size)))
    r = FinMap(a, q1, tuple(index[(x, uni.r.table[chi.table[x]])] for x in range(a.size)))
    i = pi_a
    double, triple = double_and_triple(FINSET, l, r)

    # A x_Omega (universal double apex), over the folded co-unit
    u2 = uni.double
    ibar = copair(u2, uni.i, uni.i)
    pairs2 = [(x, w) for x in range(a.size) for w in range(u2.apex.size)
              if chi.table[x] == ibar.table[w]]
    index2 = {p: k for k, p in enumerate(pairs2)}
    p2obj = FinSetObj(len(pairs2))
    un1, un2 = u2.injections
    q_tilde = FinMap(q1, p2obj, tuple(index2[(x, uni.q.table[u])] for x, u in pairs))
    alpha1 = FinMap(q1, p2obj, tuple(index2[(x, un1.table[u])] for x, u in pairs))
    alpha2 = FinMap(q1, p2obj, tuple(index2[(x, un2.table[u])] for x, u in pairs))
    psi_inv = copair(double, alpha1, alpha2)
    if not is_bijective(psi_inv):
        raise InvariantViolation("double pushout does not match the pulled-back double apex")
    q = compose(q_tilde, inverse(psi_inv))
    return CoCategoryData(a, q1, l, r, i, q, double, triple)


# ---------------------------------------------------------------------------
# Colax correspondence and isomorphism search


def cocat_morphisms(src: CoCategoryData, dst: CoCategoryData,
                    max_candidates: int = 1_000_000) -> list[tuple[FinMap, FinMap]]:
    """All co-category morphisms src -> dst, by filtered brute force."""
    from .core import check_cocat_morphism

    space = (dst.q0.size ** src.q0.size) * (dst.q1.size ** src.q1.size)
    if space > max_candidates:
        raise SizeLimit(f"morphism search space {space} exceeds cap {max_candidates}")
    found = []
    for f0 in FINSET.morphisms(src.q0, dst.q0):
        for f1 in FINSET.morphisms(src.q1, dst.q1):
            if check_cocat_morphism(FINSET, src, dst, f0, f1).ok:
                found.append((f0, f1))
    return found


def colax_maps(src: CoCategoryData, dst: CoCategoryData) -> list[FinMap]:
    """Maps f0: Q0 -> R0 with chi_src <= chi_dst . f0 pointwise
    (0 = false below 1 = true), where each chi is recovered from the
    equalizer of that co-category's l and r."""
    chi_src = classifying_map(equalizer(src.l, src.r))
    chi_dst = classifying_map(equalizer(dst.l, dst.r))
    out = []
    for f0 in FINSET.morphisms(src.q0, dst.q0):
        if all(chi_src.table[x] <= chi_dst.table[f0.table[x]] for x in range(src.q0.size)):
            out.append(f0)
    return out


def verify_colax_correspondence(src: CoCategoryData, dst: CoCategoryData,
                                max_candidates: int = 1_000_000) -> bool:
    """Does (f0, f1) -> f0 biject co-category morphisms with colax maps?"""
    morphs = cocat_morphisms(src, dst, max_candidates=max_candidates)
    lax = {f0.table for f0 in colax_maps(src, dst)}
    tables = [f0.table for f0, _ in morphs]
    return len(tables) == len(set(tables)) and set(tables) == lax


def iso_cocategories(a: CoCategoryData, b: CoCategoryData,
                     max_candidates: int = 1_000_000, fix_q0: bool = False
                     ) -> Optional[tuple[FinMap, FinMap]]:
    """A pair of bijections commuting with all structure, or None.

    With ``fix_q0`` only the identity is tried on Q0, i.e. the search
    asks for an isomorphism over the shared base object (how a
    structure is compared with its pullback along a characteristic
    map)."""
    from .core import check_cocat_morphism

    if a.q0.size != b.q0.size or a.q1.size != b.q1.size:
        return None
    import math

    space = (1 if fix_q0 else math.factorial(a.q0.size)) * math.factorial(a.q1.size)
    if space > max_candidates:
        raise SizeLimit(f"isomorphism search space {space} exceeds cap {max_candidates}")
    base = [tuple(range(a.q0.size))] if fix_q0 else itertools.permutations(range(a.q0.size))
    for p0 in base:
        f0 = FinMap(a.q0, b.q0, p0)
        for p1 in itertools.permutations(range(a.q1.size)):
            f1 = FinMap(a.q1, b.q1, p1)
            if check_cocat_morphism(FINSET, a, b, f0, f1).ok:
                return f0, f1
    return None
