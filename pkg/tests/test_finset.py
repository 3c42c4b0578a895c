"""The finite-set engine: universal properties checked by exhausting
all candidate factorisations, coherent-structure stability, exhaustive
enumeration with frozen regression counts, the universal co-category,
and the colax correspondence."""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocat.core import (
    CoconeMismatch,
    NotMono,
    SizeLimit,
    check_cocategory,
    classify,
    double_and_triple,
)
from cocat.finset import (
    FINSET,
    FinMap,
    FinSetObj,
    Subobject,
    classifying_map,
    cokernel_pair_cocategory,
    colax_maps,
    cocat_morphisms,
    compose,
    count_q_solutions,
    enumerate_cocategories,
    equalizer,
    identity,
    image,
    is_jointly_covering,
    is_mono,
    iso_cocategories,
    pullback,
    pullback_cocategory,
    pushout,
    subset_mono,
    trivial_cocategory,
    universal_cocategory,
    union,
    verify_proposition,
)


def _maps(dom_size, cod_size):
    dom, cod = FinSetObj(dom_size), FinSetObj(cod_size)
    return [FinMap(dom, cod, t)
            for t in itertools.product(range(cod_size), repeat=dom_size)]


sizes = st.integers(0, 3)
small_map = st.tuples(sizes, st.integers(1, 3)).flatmap(
    lambda dc: st.tuples(
        st.just(dc),
        st.lists(st.integers(0, dc[1] - 1), min_size=dc[0], max_size=dc[0]),
    ).map(lambda t: FinMap(FinSetObj(t[0][0]), FinSetObj(t[0][1]), tuple(t[1])))
)


class TestPushout:
    def test_glue_one_point(self):
        s = FinSetObj(1)
        f = FinMap(s, FinSetObj(2), (0,))
        g = FinMap(s, FinSetObj(2), (0,))
        w = pushout(f, g)
        assert w.apex.size == 3

    def test_empty_span_is_coproduct(self):
        s = FinSetObj(0)
        f = FinMap(s, FinSetObj(2), ())
        g = FinMap(s, FinSetObj(3), ())
        w = pushout(f, g)
        assert w.apex.size == 5

    def test_identity_span_absorbs(self):
        a = FinSetObj(4)
        w = pushout(identity(a), identity(a))
        assert w.apex.size == 4
        assert w.injections[0] == w.injections[1]

    def test_gluing_relation(self):
        rng = random.Random(3)
        for _ in range(50):
            s = FinSetObj(rng.randint(0, 3))
            a, b = FinSetObj(rng.randint(1, 4)), FinSetObj(rng.randint(1, 4))
            f = FinMap(s, a, tuple(rng.randrange(a.size) for _ in range(s.size)))
            g = FinMap(s, b, tuple(rng.randrange(b.size) for _ in range(s.size)))
            w = pushout(f, g)
            assert compose(f, w.injections[0]) == compose(g, w.injections[1])
            assert is_jointly_covering(w.injections)

    def test_universal_property_by_exhaustion(self):
        # every compatible cocone factors uniquely; checked against all
        # candidate maps out of the apex
        rng = random.Random(11)
        for _ in range(40):
            s = FinSetObj(rng.randint(0, 2))
            a, b = FinSetObj(rng.randint(1, 3)), FinSetObj(rng.randint(1, 3))
            x = FinSetObj(rng.randint(1, 3))
            f = FinMap(s, a, tuple(rng.randrange(a.size) for _ in range(s.size)))
            g = FinMap(s, b, tuple(rng.randrange(b.size) for _ in range(s.size)))
            w = pushout(f, g)
            for u in _maps(a.size, x.size):
                for v in _maps(b.size, x.size):
                    compatible = compose(f, u) == compose(g, v)
                    factorings = [
                        h for h in _maps(w.apex.size, x.size)
                        if compose(w.injections[0], h) == u
                        and compose(w.injections[1], h) == v
                    ]
                    if compatible:
                        assert len(factorings) == 1
                        assert FINSET.copair(w, u, v) == factorings[0]
                    else:
                        assert not factorings
                        with pytest.raises(CoconeMismatch):
                            FINSET.copair(w, u, v)


class TestPullback:
    def test_diagonal(self):
        a = FinSetObj(3)
        obj, p1, p2 = pullback(identity(a), identity(a))
        assert obj.size == 3
        assert p1 == p2

    def test_disjoint_images_empty(self):
        s = FinSetObj(0)
        f = FinMap(s, FinSetObj(1), ())
        g = FinMap(s, FinSetObj(1), ())
        w = pushout(f, g)
        obj, _, _ = pullback(*w.injections)
        assert obj.size == 0

    def test_cokernel_pair_legs(self):
        # the two legs of the glued pair meet exactly over the shared part
        data = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        obj, p1, p2 = pullback(data.l, data.r)
        assert obj.size == 1
        assert p1.table == p2.table == (0,)

    def test_universal_property_by_exhaustion(self):
        rng = random.Random(13)
        for _ in range(40):
            c = FinSetObj(rng.randint(1, 3))
            a, b = FinSetObj(rng.randint(0, 3)), FinSetObj(rng.randint(0, 3))
            x = FinSetObj(rng.randint(1, 2))
            f = FinMap(a, c, tuple(rng.randrange(c.size) for _ in range(a.size)))
            g = FinMap(b, c, tuple(rng.randrange(c.size) for _ in range(b.size)))
            obj, p1, p2 = pullback(f, g)
            assert compose(p1, f) == compose(p2, g)
            for u in _maps(x.size, a.size):
                for v in _maps(x.size, b.size):
                    if compose(u, f) != compose(v, g):
                        continue
                    factorings = [
                        h for h in _maps(x.size, obj.size)
                        if compose(h, p1) == u and compose(h, p2) == v
                    ]
                    assert len(factorings) == 1


class TestCoherentStructure:
    def test_image_of_constant(self):
        f = FinMap(FinSetObj(3), FinSetObj(3), (1, 1, 1))
        assert image(f).elements == (1,)

    def test_union_covers(self):
        two = FinSetObj(2)
        s1 = Subobject(two, (0,))
        s2 = Subobject(two, (1,))
        assert union(s1, s2).elements == (0, 1)
        assert is_jointly_covering([s1.as_mono(), s2.as_mono()])

    def test_equalizer_recovers_subobject(self):
        for a in range(1, 5):
            for k in range(a + 1):
                m = subset_mono(range(k), FinSetObj(a))
                data = cokernel_pair_cocategory(m)
                eq = equalizer(data.l, data.r)
                assert Subobject.from_mono(eq) == Subobject.from_mono(m)

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_union_and_image_stable_under_pullback(self, data):
        a = data.draw(st.integers(1, 4))
        c = data.draw(st.integers(1, 4))
        f = FinMap(FinSetObj(a), FinSetObj(c),
                   tuple(data.draw(st.integers(0, c - 1)) for _ in range(a)))
        s1 = Subobject(FinSetObj(c), tuple(sorted(data.draw(
            st.sets(st.integers(0, c - 1))))))
        s2 = Subobject(FinSetObj(c), tuple(sorted(data.draw(
            st.sets(st.integers(0, c - 1))))))

        def preimage(s):
            return tuple(x for x in range(a) if f.table[x] in s.elements)

        # pullback of a union is the union of the pullbacks
        assert preimage(union(s1, s2)) == tuple(
            sorted(set(preimage(s1)) | set(preimage(s2))))
        # pulling back a mono gives a mono with the preimage as image
        _, p1, _ = pullback(f, s1.as_mono())
        assert is_mono(p1)
        assert image(p1).elements == preimage(s1)


class TestProofWalkthrough:
    def test_cokernel_pair(self):
        data = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        report = verify_proposition(data)
        assert report.ok
        p1, q1, m1 = report.pullback1
        assert p1.size == 2  # the glued point and the left-only point
        assert image(m1) == image(data.l)

    def test_trivial(self):
        report = verify_proposition(trivial_cocategory())
        assert report.ok
        assert report.lr_pullback[0].size == 1

    def test_rejects_invalid_input(self):
        d = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        from cocat.core import CoCategoryData, CocatError
        bad_q = FinMap(d.q1, d.double.apex, (0,) * 3)
        broken = CoCategoryData(d.q0, d.q1, d.l, d.r, d.i, bad_q, d.double, d.triple)
        with pytest.raises(CocatError):
            verify_proposition(broken)


def _naive_count(n0, n1):
    """Independent oracle: enumerate all (l, r, i, q) tuples outright
    and run the generic checker on each."""
    q0, q1 = FinSetObj(n0), FinSetObj(n1)
    count = 0
    for l in _maps(n0, n1):
        for r in _maps(n0, n1):
            double, triple = double_and_triple(FINSET, l, r)
            for i in _maps(n1, n0):
                for q in _maps(n1, double.apex.size):
                    from cocat.core import CoCategoryData
                    data = CoCategoryData(q0, q1, l, r, i, q, double, triple)
                    if check_cocategory(FINSET, data, validate_witnesses=False).ok:
                        count += 1
    return count


class TestEnumeration:
    def test_bounds_1_1(self):
        assert sum(1 for _ in enumerate_cocategories(1, 1)) == 1

    def test_bounds_1_2_regression(self):
        # frozen on first run; cross-checked against the naive oracle
        found = list(enumerate_cocategories(1, 2))
        assert len(found) == 3
        assert _naive_count(1, 1) + _naive_count(1, 2) == 3

    def test_bounds_2_2_naive_oracle(self):
        ours = sum(1 for d in enumerate_cocategories(2, 2) if d.q0.size == 2)
        assert ours == _naive_count(2, 2) == 2

    def test_bounds_2_4_regression(self):
        found = list(enumerate_cocategories(2, 4))
        assert len(found) == 41
        by_size = {}
        for d in found:
            key = (d.q0.size, d.q1.size)
            by_size[key] = by_size.get(key, 0) + 1
        assert by_size == {(1, 1): 1, (1, 2): 2, (2, 2): 2, (2, 3): 12, (2, 4): 24}

    def test_counts_match_closed_form(self):
        # every structure is a relabelled amalgamated pair over its
        # shared subobject: choosing the subobject and the labelling
        # gives C(n0, s) * (2 n0 - s)! structures of each shape
        found = list(enumerate_cocategories(2, 4))
        by_size = {}
        for d in found:
            key = (d.q0.size, d.q1.size)
            by_size[key] = by_size.get(key, 0) + 1
        for (n0, n1), count in by_size.items():
            s = 2 * n0 - n1
            assert count == math.comb(n0, s) * math.factorial(n1)

    def test_vacuous_bounds(self):
        found = list(enumerate_cocategories(0, 0))
        assert len(found) == 1
        assert found[0].q0.size == 0
        assert check_cocategory(FINSET, found[0]).ok
        assert classify(FINSET, found[0]).is_coequivalence
        assert verify_proposition(found[0]).ok

    def test_every_structure_verifies(self):
        for data in enumerate_cocategories(2, 3):
            cls = classify(FINSET, data)
            assert cls.is_coequivalence
            assert verify_proposition(data).ok

    def test_q_uniqueness_by_full_exhaustion(self):
        # for each found structure, *every* map into the apex is tried
        # and only the found q survives
        for data in enumerate_cocategories(2, 3):
            from cocat.core import CoCategoryData
            survivors = [
                q for q in _maps(data.q1.size, data.double.apex.size)
                if check_cocategory(FINSET, CoCategoryData(
                    data.q0, data.q1, data.l, data.r, data.i, q,
                    data.double, data.triple)).ok
            ]
            assert survivors == [data.q]
            assert count_q_solutions(data.q0, data.q1, data.l, data.r, data.i) == 1

    def test_roundtrip_through_equalizer(self):
        for data in enumerate_cocategories(2, 4):
            m = equalizer(data.l, data.r)
            rebuilt = cokernel_pair_cocategory(m)
            assert iso_cocategories(data, rebuilt) is not None

    def test_progress_hook(self):
        blocks = []
        list(enumerate_cocategories(1, 2, progress=blocks.append))
        assert [(b["q0"], b["q1"]) for b in blocks] == [(1, 1), (1, 2)]
        assert sum(b["found"] for b in blocks) == 3


class TestUniversal:
    def test_shape(self):
        u = universal_cocategory()
        assert u.q0.size == 2
        assert u.q1.size == 3
        # elements come out as (0 left, glued true point, 0 right)
        assert u.l.table == (0, 1)
        assert u.r.table == (2, 1)
        assert classify(FINSET, u).is_coequivalence

    def test_classifying_map(self):
        m = subset_mono([0], FinSetObj(2))
        assert classifying_map(m).table == (1, 0)
        with pytest.raises(NotMono):
            classifying_map(FinMap(FinSetObj(2), FinSetObj(2), (0, 0)))

    def test_pullback_of_constant_true_is_trivial(self):
        a = FinSetObj(3)
        chi = FinMap(a, FinSetObj(2), (1, 1, 1))
        data = pullback_cocategory(chi)
        assert data.q1.size == 3
        assert check_cocategory(FINSET, data).ok
        assert iso_cocategories(data, cokernel_pair_cocategory(identity(a))) is not None

    def test_pullback_of_constant_false_is_two_copies(self):
        a = FinSetObj(2)
        chi = FinMap(a, FinSetObj(2), (0, 0))
        data = pullback_cocategory(chi)
        assert data.q1.size == 4
        assert iso_cocategories(
            data, cokernel_pair_cocategory(subset_mono([], a))) is not None

    def test_roundtrip(self):
        for a in range(1, 4):
            for k in range(a + 1):
                m = subset_mono(range(k), FinSetObj(a))
                pulled = pullback_cocategory(classifying_map(m))
                assert check_cocategory(FINSET, pulled).ok
                assert iso_cocategories(pulled, cokernel_pair_cocategory(m)) is not None

    def test_chi_unique_over_enumeration(self):
        # existence and uniqueness of the characteristic map; the
        # comparison is over the shared Q0 (relabelling Q0 would let a
        # renamed subobject masquerade as a second solution)
        for data in enumerate_cocategories(2, 3):
            hits = [
                chi for chi in _maps(data.q0.size, 2)
                if iso_cocategories(pullback_cocategory(chi), data, fix_q0=True) is not None
            ]
            assert len(hits) == 1


class TestColax:
    def test_trivial_to_trivial(self):
        t = trivial_cocategory()
        assert len(cocat_morphisms(t, t)) == 1
        assert len(colax_maps(t, t)) == 1

    def test_empty_subobject_to_full(self):
        q = cokernel_pair_cocategory(subset_mono([], FinSetObj(1)))
        r = cokernel_pair_cocategory(subset_mono([0], FinSetObj(1)))
        morphs = cocat_morphisms(q, r)
        lax = colax_maps(q, r)
        assert len(morphs) == len(lax) == 1

    def test_true_to_false_has_nothing(self):
        q = cokernel_pair_cocategory(subset_mono([0], FinSetObj(1)))
        r = cokernel_pair_cocategory(subset_mono([], FinSetObj(1)))
        assert cocat_morphisms(q, r) == []
        assert colax_maps(q, r) == []

    def test_correspondence_on_builtins(self):
        from cocat.finset import verify_colax_correspondence

        builtins = [
            trivial_cocategory(),
            cokernel_pair_cocategory(subset_mono([], FinSetObj(1))),
            cokernel_pair_cocategory(subset_mono([0], FinSetObj(2))),
            cokernel_pair_cocategory(subset_mono([], FinSetObj(2))),
            universal_cocategory(),
        ]
        for q in builtins:
            for r in builtins:
                assert verify_colax_correspondence(q, r)

    def test_size_limit(self):
        q = cokernel_pair_cocategory(subset_mono([], FinSetObj(2)))
        with pytest.raises(SizeLimit):
            cocat_morphisms(q, q, max_candidates=10)


class TestIso:
    def test_self_iso(self):
        d = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        found = iso_cocategories(d, d)
        assert found is not None

    def test_relabelling(self):
        a = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        b = cokernel_pair_cocategory(subset_mono([1], FinSetObj(2)))
        assert iso_cocategories(a, b) is not None

    def test_size_mismatch(self):
        a = trivial_cocategory()
        b = cokernel_pair_cocategory(subset_mono([0], FinSetObj(2)))
        assert iso_cocategories(a, b) is None
