"""Bounded chain complexes of finite-rank free abelian groups.

A complex stores one rank per degree and one boundary matrix per
positive degree; the zero-square law is checked at construction.
Chain maps must commute with the boundaries degreewise (also checked),
and the host-category operations (pushout, copairing, co-inverse
solving) delegate degreewise to the abelian-group engine.

The module also hosts three showpieces:

* the interval-shaped co-category whose degree-0 part is two vertices,
  degree-1 part a single edge from one to the other;
* ``total_space``, collapsing a chain co-category onto the abelian
  group engine by summing degrees.  The basis of the total group
  interleaves degrees -- generators sort by (position within degree,
  degree) -- which is the frozen convention that makes the collapsed
  interval agree entrywise with the explicit matrices in
  :mod:`cocat.abgp`;
* the nerve pipeline from finite categories: nondegenerate composable
  chains, freely generated chains with alternating-sum boundaries, and
  the quotient that kills everything above degree 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    CategoryCapabilities,
    CoCategoryData,
    InvariantViolation,
    NotFree,
    PushoutWitness,
    TypeMismatch,
    UnsupportedCapability,
    double_and_triple,
)
from .intmatrix import IntMatrix, hstack, invert_unimodular, snf, solve, diagonal
from .abgp import ABGP, AbMap, FgAbGroup, free_group
from .fincat import FinCategory, FunctorData


# ---------------------------------------------------------------------------
# Complexes and chain maps


@dataclass(frozen=True)
class ChainComplex:
    """Ranks per degree and boundary matrices; diffs[k] maps degree k+1
    to degree k, and consecutive boundaries compose to zero."""

    ranks: tuple[int, ...]
    diffs: tuple[IntMatrix, ...]

    def __post_init__(self):
        if not self.ranks:
            raise ValueError("a complex needs at least degree 0")
        if len(self.diffs) != len(self.ranks) - 1:
            raise ValueError("need exactly one boundary matrix per positive degree")
        for k, d in enumerate(self.diffs):
            if d.rows != self.ranks[k] or d.cols != self.ranks[k + 1]:
                raise ValueError(f"boundary {k + 1} has shape {d.rows}x{d.cols}, "
                                 f"expected {self.ranks[k]}x{self.ranks[k + 1]}")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k] @ self.diffs[k + 1]).is_zero():
                raise ValueError(f"boundaries {k + 2} then {k + 1} do not square to zero")

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, d: int) -> int:
        return self.ranks[d] if 0 <= d < len(self.ranks) else 0

    def diff(self, d: int) -> IntMatrix:
        """The boundary from degree d; zero-shaped outside the range."""
        if 1 <= d <= self.max_degree:
            return self.diffs[d - 1]
        return IntMatrix.zeros(self.rank(d - 1), self.rank(d))


def zero_complex(degrees: int = 1) -> ChainComplex:
    ranks = (0,) * degrees
    return ChainComplex(ranks, tuple(IntMatrix.zeros(0, 0) for _ in range(degrees - 1)))


def pad_complex(x: ChainComplex, max_degree: int) -> ChainComplex:
    """Extend with zero ranks up to the requested top degree."""
    if max_degree < x.max_degree:
        raise ValueError("cannot pad downward")
    if max_degree == x.max_degree:
        return x
    ranks = x.ranks + (0,) * (max_degree - x.max_degree)
    diffs = list(x.diffs)
    for d in range(x.max_degree + 1, max_degree + 1):
        diffs.append(IntMatrix.zeros(ranks[d - 1], 0))
    return ChainComplex(tuple(ranks), tuple(diffs))


@dataclass(frozen=True)
class ChainMap:
    """A degreewise matrix family commuting with the boundaries."""

    dom: ChainComplex
    cod: ChainComplex
    mats: tuple[IntMatrix, ...]

    def __post_init__(self):
        if self.dom.max_degree != self.cod.max_degree:
            raise TypeMismatch("chain maps need complexes padded to a common top degree")
        if len(self.mats) != len(self.dom.ranks):
            raise TypeMismatch("need one matrix per degree")
        for d, m in enumerate(self.mats):
            if m.rows != self.cod.ranks[d] or m.cols != self.dom.ranks[d]:
                raise TypeMismatch(f"degree-{d} matrix has shape {m.rows}x{m.cols}, "
                                   f"expected {self.cod.ranks[d]}x{self.dom.ranks[d]}")
        for d in range(1, self.dom.max_degree + 1):
            if self.cod.diff(d) @ self.mats[d] != self.mats[d - 1] @ self.dom.diff(d):
                raise TypeMismatch(f"degree-{d} square does not commute with the boundaries")


def chain_identity(x: ChainComplex) -> ChainMap:
    return ChainMap(x, x, tuple(IntMatrix.identity(r) for r in x.ranks))


def chain_compose(f: ChainMap, g: ChainMap) -> ChainMap:
    """f followed by g."""
    if f.cod != g.dom:
        raise TypeMismatch("compose: cod(f) != dom(g)")
    return ChainMap(f.dom, g.cod, tuple(gm @ fm for fm, gm in zip(f.mats, g.mats)))


# ---------------------------------------------------------------------------
# Capabilities instance (degreewise delegation to the group engine)


def _free(rank: int) -> FgAbGroup:
    return free_group(rank)


class Ch(CategoryCapabilities):
    name = "chain"

    def equal(self, f, g):
        return f == g

    def compose(self, f, g):
        return chain_compose(f, g)

    def identity(self, obj):
        return chain_identity(obj)

    def pushout(self, f: ChainMap, g: ChainMap) -> PushoutWitness:
        """Degreewise group pushout with the induced boundaries.

        Raises :class:`NotFree` if any degree develops torsion (the
        apex would leave the category of free complexes)."""
        if f.dom != g.dom:
            raise TypeMismatch("pushout: span legs must share a domain")
        degs = f.dom.max_degree
        witnesses = []
        for d in range(degs + 1):
            fa = AbMap(_free(f.dom.ranks[d]), _free(f.cod.ranks[d]), f.mats[d])
            ga = AbMap(_free(g.dom.ranks[d]), _free(g.cod.ranks[d]), g.mats[d])
            w = ABGP.pushout(fa, ga)
            if not w.apex.is_free:
                raise NotFree(f"pushout has torsion in degree {d}")
            witnesses.append(w)
        ranks = tuple(w.apex.rank for w in witnesses)
        diffs = []
        for d in range(1, degs + 1):
            i1d, i2d = witnesses[d - 1].injections
            u = AbMap(_free(f.cod.ranks[d]), i1d.cod,
                      i1d.matrix @ f.cod.diff(d))
            v = AbMap(_free(g.cod.ranks[d]), i2d.cod,
                      i2d.matrix @ g.cod.diff(d))
            diffs.append(ABGP.copair(witnesses[d], u, v).matrix)
        apex = ChainComplex(ranks, tuple(diffs))
        inj1 = ChainMap(f.cod, apex, tuple(w.injections[0].matrix for w in witnesses))
        inj2 = ChainMap(g.cod, apex, tuple(w.injections[1].matrix for w in witnesses))
        return PushoutWitness(apex=apex, injections=(inj1, inj2), legs=(f, g),
                              payload={"degrees": tuple(witnesses)})

    def copair(self, witness: PushoutWitness, u: ChainMap, v: ChainMap) -> ChainMap:
        i1, i2 = witness.injections
        if u.dom != i1.dom or v.dom != i2.dom:
            raise TypeMismatch("copair: cocone legs do not match the span")
        if u.cod != v.cod:
            raise TypeMismatch("copair: cocone legs must share a codomain")
        if witness.payload is None or "degrees" not in witness.payload:
            raise UnsupportedCapability("witness lacks degreewise bookkeeping")
        mats = []
        for d, w in enumerate(witness.payload["degrees"]):
            ua = AbMap(w.injections[0].dom, _free(u.cod.ranks[d]), u.mats[d])
            va = AbMap(w.injections[1].dom, _free(v.cod.ranks[d]), v.mats[d])
            mats.append(ABGP.copair(w, ua, va).matrix)
        return ChainMap(witness.apex, u.cod, tuple(mats))

    def joint_epi_status(self, maps):
        maps = list(maps)
        cod = maps[0].cod
        if any(m.cod != cod for m in maps):
            raise TypeMismatch("joint-epi test needs a common codomain")
        from .intmatrix import cokernel

        for d in range(cod.max_degree + 1):
            stacked = hstack(*(m.mats[d] for m in maps))
            factors = cokernel(stacked)
            if factors:
                return False, {"degree": d, "cokernel_invariant_factors": factors}
        return True, None

    def solve_coinverse(self, data: CoCategoryData) -> Optional[ChainMap]:
        """One integer linear system over all degrees at once: the four
        co-inverse identities plus the boundary-commutation squares."""
        if data.double.payload is None or "degrees" not in data.double.payload:
            raise UnsupportedCapability("double witness lacks degreewise bookkeeping")
        q1 = data.q1
        degs = q1.max_degree
        ranks = q1.ranks
        kept = [w.payload["kept"] for w in data.double.payload["degrees"]]
        eyes = [IntMatrix.identity(r) for r in ranks]
        li = [lm @ im for lm, im in zip(data.l.mats, data.i.mats)]
        ri = [rm @ im for rm, im in zip(data.r.mats, data.i.mats)]

        def residual(mats: list[IntMatrix]) -> list[int]:
            out: list[int] = []
            for d in range(degs + 1):
                s = mats[d]
                for m in (
                    s @ data.l.mats[d] - data.r.mats[d],
                    s @ data.r.mats[d] - data.l.mats[d],
                    hstack(eyes[d], s).select_cols(kept[d]) @ data.q.mats[d] - li[d],
                    hstack(s, eyes[d]).select_cols(kept[d]) @ data.q.mats[d] - ri[d],
                ):
                    out.extend(x for row in m.data for x in row)
            for d in range(1, degs + 1):
                m = mats[d - 1] @ q1.diff(d) - q1.diff(d) @ mats[d]
                out.extend(x for row in m.data for x in row)
            return out

        zero = [IntMatrix.zeros(r, r) for r in ranks]
        base = residual(zero)
        slots = [(d, p, c) for d in range(degs + 1)
                 for p in range(ranks[d]) for c in range(ranks[d])]
        columns = []
        for d, p, c in slots:
            unit = list(zero)
            unit[d] = IntMatrix.from_rows(
                [[1 if (i, j) == (p, c) else 0 for j in range(ranks[d])]
                 for i in range(ranks[d])], cols=ranks[d])
            columns.append([x - y for x, y in zip(residual(unit), base)])
        system = IntMatrix.from_cols(columns, rows=len(base))
        sol = solve(system, [-x for x in base])
        if sol is None:
            return None
        mats = []
        pos = 0
        for r in ranks:
            mats.append(IntMatrix.from_rows(
                [list(sol[pos + p * r:pos + (p + 1) * r]) for p in range(r)], cols=r))
            pos += r * r
        return ChainMap(q1, q1, tuple(mats))

    def injections_cover(self, witness: PushoutWitness):
        status, _ = self.joint_epi_status(witness.injections)
        return status


CH = Ch()


def pushout_chain(f: ChainMap, g: ChainMap) -> PushoutWitness:
    return CH.pushout(f, g)


# ---------------------------------------------------------------------------
# The interval-shaped example


def chain_example_cocategory() -> CoCategoryData:
    """Degree 0: two vertices; degree 1: one edge with boundary v1 - v0.
    Its total space is exactly the explicit group example."""
    q0 = ChainComplex((1, 0), (IntMatrix.zeros(1, 0),))
    q1 = ChainComplex((2, 1), (IntMatrix.from_rows([[-1], [1]]),))
    l = ChainMap(q0, q1, (IntMatrix.from_rows([[1], [0]]), IntMatrix.zeros(1, 0)))
    r = ChainMap(q0, q1, (IntMatrix.from_rows([[0], [1]]), IntMatrix.zeros(1, 0)))
    i = ChainMap(q1, q0, (IntMatrix.from_rows([[1, 1]]), IntMatrix.zeros(0, 1)))
    double, triple = double_and_triple(CH, l, r)
    if double.apex.ranks != (3, 2):
        raise InvariantViolation("double pushout of the interval has unexpected ranks")
    q = ChainMap(q1, double.apex, (
        IntMatrix.from_rows([[1, 0], [0, 0], [0, 1]]),
        IntMatrix.from_rows([[1], [1]]),
    ))
    return CoCategoryData(q0=q0, q1=q1, l=l, r=r, i=i, q=q, double=double, triple=triple)


# ---------------------------------------------------------------------------
# Total space


def total_order(x: ChainComplex) -> list[tuple[int, int]]:
    """Basis order of the total group: (degree, position) pairs sorted
    by (position, degree), interleaving the degrees."""
    gens = [(d, p) for d, r in enumerate(x.ranks) for p in range(r)]
    return sorted(gens, key=lambda g: (g[1], g[0]))


def total_group(x: ChainComplex) -> FgAbGroup:
    return free_group(sum(x.ranks))


def total_matrix(f: ChainMap) -> IntMatrix:
    rows = total_order(f.cod)
    cols = total_order(f.dom)
    data = [[f.mats[dd].data[ri][ci] if rd == dd else 0
             for (dd, ci) in cols]
            for (rd, ri) in rows]
    return IntMatrix.from_rows(data, cols=len(cols))


def total_space(data: CoCategoryData) -> CoCategoryData:
    """Collapse a chain co-category onto the group engine by summing
    degrees and forgetting the boundaries.

    Pushout witnesses are recomputed by the group engine on the summed
    maps; for the in-scope examples the canonical simplification lands
    on the interleaved basis, so the structure matrices carry over
    entrywise."""
    q0 = total_group(data.q0)
    q1 = total_group(data.q1)
    l = AbMap(q0, q1, total_matrix(data.l))
    r = AbMap(q0, q1, total_matrix(data.r))
    i = AbMap(q1, q0, total_matrix(data.i))
    double, triple = double_and_triple(ABGP, l, r)
    if double.apex.rank != sum(data.double.apex.ranks) or not double.apex.is_free:
        raise InvariantViolation("total double pushout does not match the chain one")
    q = AbMap(q1, double.apex, total_matrix(data.q))
    return CoCategoryData(q0=q0, q1=q1, l=l, r=r, i=i, q=q, double=double, triple=triple)


# ---------------------------------------------------------------------------
# Dualisation (transposed matrices, reversed grading)


def dual_complex(x: ChainComplex) -> ChainComplex:
    """Transpose all boundaries and reverse the grading, so the dual is
    again a chain complex: degree k holds the dual of degree n - k."""
    n = x.max_degree
    ranks = tuple(reversed(x.ranks))
    diffs = tuple(x.diff(n - k + 1).transpose() for k in range(1, n + 1))
    return ChainComplex(ranks, diffs)


def dual_chain_map(f: ChainMap) -> ChainMap:
    """The transposed map between the dual complexes (direction flips)."""
    n = f.dom.max_degree
    return ChainMap(dual_complex(f.cod), dual_complex(f.dom),
                    tuple(f.mats[n - k].transpose() for k in range(n + 1)))


# ---------------------------------------------------------------------------
# Nerve and normalised chains


@dataclass(frozen=True)
class NormalizedNerve:
    """Nondegenerate simplices of a finite category's nerve, degree by
    degree, with face bookkeeping.

    ``simplices[0]`` lists objects; ``simplices[k]`` lists composable
    chains of k non-identity morphisms.  ``faces[k][i][j]`` is the
    index of the j-th face in degree k-1, or None when that face is
    degenerate (a middle composite collapsed to an identity)."""

    simplices: tuple[tuple, ...]
    faces: tuple[tuple, ...]

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if k < len(self.simplices) else 0


def nerve(c: FinCategory, depth: int = 3) -> NormalizedNerve:
    """Nondegenerate simplices through the requested dimension (3 by
    default: dimension 2 pins the degree-1 quotient, dimension 3 feeds
    the zero-square check).  Raises NonComposable on an invalid
    composition table."""
    from .fincat import check_category

    check_category(c)
    non_ids = c.non_identities()
    simplices: list[tuple] = [tuple(range(c.n_objects)), tuple((m,) for m in non_ids)]
    for k in range(2, depth + 1):
        prev = simplices[k - 1]
        ext = tuple(chain + (m,) for chain in prev for m in non_ids
                    if c.tgt[chain[-1]] == c.src[m])
        simplices.append(ext)

    index: list[dict] = [{s: i for i, s in enumerate(level)} for level in simplices]
    faces: list[tuple] = [()]
    level1 = []
    for (m,) in simplices[1]:
        level1.append((c.tgt[m], c.src[m]))  # d0 drops the source vertex
    faces.append(tuple(level1))
    for k in range(2, depth + 1):
        level = []
        for chain in simplices[k]:
            entries = []
            for j in range(k + 1):
                if j == 0:
                    face = chain[1:]
                elif j == k:
                    face = chain[:-1]
                else:
                    composite = c.table[chain[j - 1]][chain[j]]
                    if c.is_identity(composite):
                        entries.append(None)
                        continue
                    face = chain[:j - 1] + (composite,) + chain[j + 1:]
                entries.append(index[k - 1][face])
            level.append(tuple(entries))
        faces.append(tuple(level))
    return NormalizedNerve(tuple(simplices), tuple(faces))


def free_normalized_chains(n: NormalizedNerve) -> ChainComplex:
    """The complex freely generated by nondegenerate simplices, with
    alternating-sum boundaries (degenerate faces contribute zero)."""
    depth = len(n.simplices) - 1
    ranks = tuple(len(level) for level in n.simplices)
    diffs = []
    for k in range(1, depth + 1):
        rows, cols = ranks[k - 1], ranks[k]
        data = [[0] * cols for _ in range(rows)]
        for col, entries in enumerate(n.faces[k]):
            for j, target in enumerate(entries):
                if target is not None:
                    data[target][col] += -1 if j % 2 else 1
        diffs.append(IntMatrix.from_rows(data, cols=cols))
    return ChainComplex(ranks, tuple(diffs))


def _truncation_data(x: ChainComplex) -> tuple[ChainComplex, IntMatrix, IntMatrix]:
    """Quotient by the subcomplex generated in degrees >= 2.

    Degree 1 becomes C1 / im(boundary_2), refed through the Smith form
    (torsion would leave free complexes and raises); returns the
    truncated complex together with the degree-1 projection and a
    section of it."""
    r1 = x.rank(1)
    d2 = x.diff(2)
    d, u, _ = snf(d2)
    diag = [e for e in diagonal(d) if e != 0]
    if any(e != 1 for e in diag):
        raise NotFree(f"degree-1 quotient has torsion {diag}")
    k = len(diag)
    uinv = invert_unimodular(u)
    proj = u.select_rows(range(k, r1))
    sect = uinv.select_cols(range(k, r1))
    new_d1 = x.diff(1) @ sect
    out = ChainComplex((x.rank(0), r1 - k), (new_d1,))
    return out, proj, sect


def truncate_ge2(x: ChainComplex) -> ChainComplex:
    return _truncation_data(x)[0]


# ---------------------------------------------------------------------------
# The pipeline: nerve, free chains, truncate


def pipeline(c: FinCategory) -> ChainComplex:
    """Finite category -> two-degree complex: free normalised chains of
    the nerve, with everything above degree 1 quotiented away."""
    return truncate_ge2(free_normalized_chains(nerve(c)))


def _induced_matrices(fun: FunctorData, depth: int = 3) -> list[IntMatrix]:
    """Matrices of the induced map on normalised chains: a simplex maps
    to its image chain, or to zero when the image degenerates."""
    nd = nerve(fun.dom, depth)
    nc = nerve(fun.cod, depth)
    index = [{s: i for i, s in enumerate(level)} for level in nc.simplices]
    mats = []
    data0 = [[0] * len(nd.simplices[0]) for _ in range(len(nc.simplices[0]))]
    for col, ob in enumerate(nd.simplices[0]):
        data0[fun.obj_map[ob]][col] = 1
    mats.append(IntMatrix.from_rows(data0, cols=len(nd.simplices[0])))
    for k in range(1, depth + 1):
        rows, cols = len(nc.simplices[k]), len(nd.simplices[k])
        data = [[0] * cols for _ in range(rows)]
        for col, chain in enumerate(nd.simplices[k]):
            img = tuple(fun.mor_map[m] for m in chain)
            if any(fun.cod.is_identity(m) for m in img):
                continue
            data[index[k][img]][col] = 1
        mats.append(IntMatrix.from_rows(data, cols=cols))
    return mats


def pipeline_map(fun: FunctorData) -> ChainMap:
    """The induced map between pipeline complexes, transported through
    the degree-1 quotients."""
    dom_c, _, dom_sect = _truncation_data(free_normalized_chains(nerve(fun.dom)))
    cod_c, cod_proj, _ = _truncation_data(free_normalized_chains(nerve(fun.cod)))
    mats = _induced_matrices(fun)
    m1 = cod_proj @ mats[1] @ dom_sect
    return ChainMap(dom_c, cod_c, (mats[0], m1))


def pipeline_cocategory(data: CoCategoryData) -> CoCategoryData:
    """Apply the pipeline to a co-category of finite categories and
    reassemble the result over the computed chain pushouts.

    The image of the glued object is identified with the freshly
    computed double pushout through the canonical comparison, which
    must be a degreewise unimodular isomorphism."""
    q0 = pipeline(data.q0)
    q1 = pipeline(data.q1)
    l = pipeline_map(data.l)
    r = pipeline_map(data.r)
    i = pipeline_map(data.i)
    double, triple = double_and_triple(CH, l, r)
    glued_nu1 = pipeline_map(data.double.injections[0])
    glued_nu2 = pipeline_map(data.double.injections[1])
    pq = pipeline_map(data.q)
    comparison = CH.copair(double, glued_nu1, glued_nu2)
    inverse_mats = []
    for m in comparison.mats:
        if m.rows != m.cols:
            raise InvariantViolation("pipeline comparison is not square")
        try:
            inverse_mats.append(invert_unimodular(m))
        except ValueError as exc:
            raise InvariantViolation(f"pipeline comparison is not invertible: {exc}")
    kappa_inv = ChainMap(glued_nu1.cod, double.apex, tuple(inverse_mats))
    q = chain_compose(pq, kappa_inv)
    return CoCategoryData(q0=q0, q1=q1, l=l, r=r, i=i, q=q, double=double, triple=triple)
