"""Chain complexes: construction laws, degreewise pushouts, the
interval example and its total space, dualisation, and the nerve
pipeline."""

import random

import pytest

from cocat.core import NotFree, TypeMismatch, check_cocategory, classify, find_coinverse
from cocat.abgp import ABGP, check_internal_category, group_example_cocategory, transpose_dualize
from cocat.chain import (
    CH,
    ChainComplex,
    ChainMap,
    chain_compose,
    chain_example_cocategory,
    chain_identity,
    dual_chain_map,
    dual_complex,
    free_normalized_chains,
    nerve,
    pad_complex,
    pipeline,
    pipeline_cocategory,
    pipeline_map,
    total_matrix,
    total_order,
    total_space,
    truncate_ge2,
    zero_complex,
)
from cocat.fincat import (
    FunctorData,
    arrow_category,
    interval_cocategory,
    terminal_category,
)
from cocat.intmatrix import IntMatrix, kernel_basis


def _m(rows, cols=None):
    return IntMatrix.from_rows(rows, cols=cols if cols is not None else len(rows[0]))


def _random_complex(rng, max_rank=3):
    """A two-boundary complex built so the square is zero by
    construction: the inner boundary is sampled from the kernel."""
    r0 = rng.randint(0, max_rank)
    r1 = rng.randint(0, max_rank)
    r2 = rng.randint(0, max_rank)
    d1 = IntMatrix.from_rows(
        [[rng.randint(-2, 2) for _ in range(r1)] for _ in range(r0)], cols=r1)
    basis = kernel_basis(d1)
    coeffs = IntMatrix.from_rows(
        [[rng.randint(-2, 2) for _ in range(r2)] for _ in range(basis.cols)], cols=r2)
    d2 = basis @ coeffs
    return ChainComplex((r0, r1, r2), (d1, d2))


class TestComplexes:
    def test_zero_square_enforced(self):
        with pytest.raises(ValueError):
            ChainComplex((1, 1, 1), (_m([[1]]), _m([[1]])))

    def test_shapes_enforced(self):
        with pytest.raises(ValueError):
            ChainComplex((1, 2), (_m([[1]]),))

    def test_random_zero_squares(self):
        rng = random.Random(2)
        for _ in range(100):
            x = _random_complex(rng)
            for d in range(1, x.max_degree):
                assert (x.diff(d) @ x.diff(d + 1)).is_zero()

    def test_chain_map_commutation_enforced(self):
        x = ChainComplex((1, 1), (_m([[1]]),))
        y = ChainComplex((1, 1), (_m([[2]]),))
        with pytest.raises(TypeMismatch):
            ChainMap(x, y, (IntMatrix.identity(1), IntMatrix.identity(1)))
        ChainMap(x, y, (_m([[2]]), IntMatrix.identity(1)))

    def test_pad(self):
        x = ChainComplex((2,), ())
        padded = pad_complex(x, 2)
        assert padded.ranks == (2, 0, 0)


class TestChainPushout:
    def test_over_zero_is_direct_sum(self):
        z = zero_complex(2)
        x = chain_example_cocategory().q1
        f = ChainMap(z, x, (IntMatrix.zeros(2, 0), IntMatrix.zeros(1, 0)))
        w = CH.pushout(f, f)
        assert w.apex.ranks == (4, 2)

    def test_interval_gluing_ranks(self):
        d = chain_example_cocategory()
        assert d.double.apex.ranks == (3, 2)
        assert d.double.apex.diff(1) == _m([[-1, 0], [1, -1], [0, 1]])

    def test_identity_pushout(self):
        x = chain_example_cocategory().q1
        w = CH.pushout(chain_identity(x), chain_identity(x))
        assert w.apex.ranks == x.ranks

    def test_copair_counit(self):
        d = chain_example_cocategory()
        li = chain_compose(d.i, d.l)
        fold = CH.copair(d.double, li, chain_identity(d.q1))
        assert chain_compose(d.q, fold) == chain_identity(d.q1)
        assert fold.mats[0] == _m([[1, 1, 0], [0, 0, 1]], cols=3)


class TestChainExample:
    def test_axioms(self):
        assert check_cocategory(CH, chain_example_cocategory()).ok

    def test_not_jointly_epi_in_degree_1(self):
        d = chain_example_cocategory()
        status, witness = CH.joint_epi_status((d.l, d.r))
        assert status is False
        assert witness["degree"] == 1
        assert witness["cokernel_invariant_factors"] == (0,)

    def test_coinverse(self):
        d = chain_example_cocategory()
        s = find_coinverse(CH, d)
        assert s is not None
        assert s.mats[1] == _m([[-1]])
        assert s.mats[0] == _m([[0, 1], [1, 0]])

    def test_classification(self):
        cls = classify(CH, chain_example_cocategory())
        assert (cls.is_cocategory, cls.is_copreorder,
                cls.is_cogroupoid, cls.is_coequivalence) == (True, False, True, False)


class TestTotalSpace:
    def test_interleaved_order(self):
        x = chain_example_cocategory().q1
        assert total_order(x) == [(0, 0), (1, 0), (0, 1)]  # v0, e1, v1

    def test_entrywise_match(self):
        total = total_space(chain_example_cocategory())
        grp = group_example_cocategory()
        assert total.l.matrix == grp.l.matrix
        assert total.r.matrix == grp.r.matrix
        assert total.i.matrix == grp.i.matrix
        assert total.q.matrix == grp.q.matrix
        assert total.double.injections[0].matrix == grp.double.injections[0].matrix
        assert total.double.injections[1].matrix == grp.double.injections[1].matrix

    def test_total_is_cocategory(self):
        assert check_cocategory(ABGP, total_space(chain_example_cocategory())).ok

    def test_trivial_chain(self):
        from cocat.core import cokernel_pair

        point = ChainComplex((1, 0), (IntMatrix.zeros(1, 0),))
        data = cokernel_pair(CH, chain_identity(point))
        total = total_space(data)
        assert total.q1.rank == 1
        assert check_cocategory(ABGP, total).ok

    def test_commutes_with_dualisation(self):
        # summing degrees then transposing agrees with transposing
        # degreewise then summing, up to the interleaving permutations
        d = chain_example_cocategory()
        for f in (d.l, d.r, d.i, d.q):
            lhs = total_matrix(f).transpose()
            rhs = total_matrix(dual_chain_map(f))
            dual_rows = total_order(dual_complex(f.dom))
            dual_cols = total_order(dual_complex(f.cod))
            n_dom = f.dom.max_degree
            n_cod = f.cod.max_degree
            rows = [(n_dom - deg, pos) for deg, pos in total_order(f.dom)]
            cols = [(n_cod - deg, pos) for deg, pos in total_order(f.cod)]
            for ri, row_label in enumerate(rows):
                for ci, col_label in enumerate(cols):
                    assert lhs.data[ri][ci] == rhs.data[
                        dual_rows.index(row_label)][dual_cols.index(col_label)]

    def test_dual_total_is_internal_category(self):
        icat = transpose_dualize(total_space(chain_example_cocategory()))
        assert check_internal_category(icat).ok


class TestDuals:
    def test_dual_complex_shape(self):
        x = chain_example_cocategory().q1
        dx = dual_complex(x)
        assert dx.ranks == (1, 2)
        assert dx.diff(1) == x.diff(1).transpose()

    def test_double_dual_is_original(self):
        x = chain_example_cocategory().q1
        assert dual_complex(dual_complex(x)) == x

    def test_dual_map_is_chain_map(self):
        d = chain_example_cocategory()
        dual = dual_chain_map(d.l)  # constructor re-validates commutation
        assert dual.dom == dual_complex(d.q1)
        assert dual.cod == dual_complex(d.q0)
        assert dual_chain_map(dual_chain_map(d.l)) == d.l


class TestNerve:
    def test_invalid_category_rejected(self):
        import pytest as _pytest
        from cocat.core import NonComposable
        from cocat.fincat import FinCategory

        bad = FinCategory(2, (0, 1, 0), (0, 1, 1), (0, 1), (
            (0, None, 0),
            (None, 1, None),
            (None, 2, None),
        ))
        with _pytest.raises(NonComposable):
            nerve(bad)

    def test_terminal(self):
        n = nerve(terminal_category())
        assert [n.count(k) for k in range(4)] == [1, 0, 0, 0]

    def test_arrow(self):
        n = nerve(arrow_category())
        assert [n.count(k) for k in range(4)] == [2, 1, 0, 0]
        complex_ = free_normalized_chains(n)
        assert complex_.ranks[:2] == (2, 1)
        assert complex_.diff(1) == _m([[-1], [1]])

    def test_glued_interval(self):
        glued = interval_cocategory().double.apex
        n = nerve(glued)
        # exactly one nondegenerate 2-simplex: the composable pair
        assert [n.count(k) for k in range(4)] == [3, 3, 1, 0]
        complex_ = free_normalized_chains(n)
        assert complex_.diff(2).col(0) == (1, 1, -1)  # faces a, b minus composite

    def test_degenerate_faces_contribute_zero(self):
        # a category with an inverse pair: composites collapse to the
        # identities, so middle faces of the 2-chains vanish
        from cocat.fincat import FinCategory

        iso = FinCategory(
            2, (0, 1, 0, 1), (0, 1, 1, 0), (0, 1),
            (
                (0, None, 2, None),
                (None, 1, None, 3),
                (None, 2, None, 0),
                (3, None, 1, None),
            ),
        )
        n = nerve(iso)
        assert n.count(2) == 2  # (f, g) and (g, f)
        complex_ = free_normalized_chains(n)
        assert complex_.diff(2).col(0) == (1, 1)  # only the outer faces


class TestTruncation:
    def test_kills_high_degrees(self):
        glued = interval_cocategory().double.apex
        out = truncate_ge2(free_normalized_chains(nerve(glued)))
        assert out.ranks == (3, 2)

    def test_composite_identified_with_sum(self):
        from cocat.chain import _truncation_data

        glued = interval_cocategory().double.apex
        full = free_normalized_chains(nerve(glued))
        _, proj, sect = _truncation_data(full)
        pa, pb, pba = proj.col(0), proj.col(1), proj.col(2)
        assert tuple(x + y for x, y in zip(pa, pb)) == pba
        assert (proj @ sect) == IntMatrix.identity(2)

    def test_torsion_detected(self):
        x = ChainComplex((0, 1, 1), (IntMatrix.zeros(0, 1), _m([[2]])))
        with pytest.raises(NotFree):
            truncate_ge2(x)


class TestPipeline:
    def test_terminal(self):
        assert pipeline(terminal_category()).ranks == (1, 0)

    def test_arrow(self):
        out = pipeline(arrow_category())
        assert out.ranks == (2, 1)
        assert out.diff(1) == _m([[-1], [1]])

    def test_functoriality(self):
        iv = interval_cocategory()
        composite = pipeline_map(FunctorData(iv.q0, iv.q1, iv.l.obj_map, iv.l.mor_map))
        n1 = iv.double.injections[0]
        lhs = pipeline_map(iv.l)
        assert chain_compose(lhs, pipeline_map(n1)) == pipeline_map(
            type(iv.l)(iv.q0, n1.cod,
                       tuple(n1.obj_map[x] for x in iv.l.obj_map),
                       tuple(n1.mor_map[m] for m in iv.l.mor_map)))
        assert composite == lhs

    def test_interval_lands_on_chain_example(self):
        out = pipeline_cocategory(interval_cocategory())
        example = chain_example_cocategory()
        assert check_cocategory(CH, out).ok
        assert out == example

    def test_pipeline_classification(self):
        out = pipeline_cocategory(interval_cocategory())
        cls = classify(CH, out)
        assert cls.is_cocategory and not cls.is_copreorder
