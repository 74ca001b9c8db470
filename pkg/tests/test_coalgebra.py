"""Coalgebra builders, coassociativity, iterated coproducts, symmetry classes.

The iterated-coproduct oracles are hand expansions of deconcatenation and
deshuffle splits, written down before the implementation ran.
"""

from fractions import Fraction

import pytest

from tdhom.coalgebra import (
    COCOMMUTATIVE,
    NEITHER,
    SKEW_COCOMMUTATIVE,
    Coalgebra,
    build_exterior_square_coalgebra,
    build_symmetric_coalgebra,
    build_tensor_coalgebra,
    check_coassociativity,
    iterated_coproduct,
    symmetry_class,
)
from tdhom.errors import MalformedInput, TdhomError
from tdhom.linalg import BasedSpace

V2 = BasedSpace("V", ["a", "b"])
V1 = BasedSpace("V", ["x"])
VXY = BasedSpace("V", ["x", "y"])


def label_terms(C, n, word_label):
    """{(leg labels): q} for the n-fold expansion of the named basis vector."""
    i = C.space.index(word_label)
    out = {}
    for legs, q in C.iterated_terms(n).get(i, []):
        out[tuple(C.space.labels[x] for x in legs)] = q
    return out


class TestBuilders:
    def test_tensor_basis(self):
        C = build_tensor_coalgebra(V2, 3)
        assert C.dim == 2 + 4 + 8
        assert "aba" in C.space.labels

    def test_tensor_small(self):
        C = build_tensor_coalgebra(V1, 2)
        assert list(C.space.labels) == ["x", "xx"]
        assert C.splits(C.space.index("x")) == []
        i = C.space.index("xx")
        j = C.space.index("x")
        assert C.splits(i) == [(j, j, Fraction(1))]

    def test_tensor_maxdeg1_zero(self):
        C = build_tensor_coalgebra(V2, 1)
        assert C.coproduct == {}

    def test_tensor_aba_splits(self):
        C = build_tensor_coalgebra(V2, 3)
        assert label_terms(C, 2, "aba") == {
            ("a", "ba"): Fraction(1),
            ("ab", "a"): Fraction(1),
        }

    def test_counital_variant(self):
        C = build_tensor_coalgebra(V1, 2, include_empty_word=True)
        assert "1" in C.space.labels
        # full deconcatenation: x splits as 1|x + x|1
        assert label_terms(C, 2, "x") == {
            ("1", "x"): Fraction(1),
            ("x", "1"): Fraction(1),
        }

    def test_symmetric_square_coefficient(self):
        C = build_symmetric_coalgebra(V1, 2)
        assert label_terms(C, 2, "x·x") == {("x", "x"): Fraction(2)}

    def test_symmetric_mixed(self):
        C = build_symmetric_coalgebra(VXY, 2)
        assert label_terms(C, 2, "x·y") == {
            ("x", "y"): Fraction(1),
            ("y", "x"): Fraction(1),
        }

    def test_symmetric_maxdeg1_zero(self):
        C = build_symmetric_coalgebra(VXY, 1)
        assert C.coproduct == {}

    def test_exterior_wedge(self):
        C = build_exterior_square_coalgebra(V2)
        assert label_terms(C, 2, "a∧b") == {
            ("a", "b"): Fraction(1),
            ("b", "a"): Fraction(-1),
        }
        assert C.splits(C.space.index("a")) == []

    def test_exterior_needs_two(self):
        with pytest.raises(ValueError):
            build_exterior_square_coalgebra(V1)

    def test_bad_maxdeg(self):
        with pytest.raises(ValueError):
            build_tensor_coalgebra(V2, 0)
        with pytest.raises(ValueError):
            build_symmetric_coalgebra(V2, 0)

    def test_all_builders_coassociative(self):
        for C in [
            build_tensor_coalgebra(V2, 3),
            build_tensor_coalgebra(V1, 3),
            build_symmetric_coalgebra(VXY, 2),
            build_symmetric_coalgebra(V1, 3),
            build_exterior_square_coalgebra(V2),
            build_tensor_coalgebra(V2, 2, include_empty_word=True),
        ]:
            assert check_coassociativity(C).ok


class TestCoassociativity:
    def test_zero_coproduct_passes(self):
        C = Coalgebra(V2, [])
        assert check_coassociativity(C).ok

    def test_grouplike_comodule_is_coassociative(self):
        # c1 grouplike, c2 splitting as c1|c2: both triple routes give
        # c1|c1|c2, so this one passes (hand expansion)
        space = BasedSpace("C", ["c1", "c2"])
        C = Coalgebra(space, [(0, 0, 0, 1), (1, 0, 1, 1)])
        assert check_coassociativity(C).ok

    def test_inconsistent_split_fails(self):
        space = BasedSpace("C", ["c1", "c2"])
        # c2 splits as c1|c2 but c1 does not split at all: the left route
        # on c2 is zero while the right route gives c1|c1|c2
        bad = Coalgebra(space, [(1, 0, 1, 1)], check=False)
        result = check_coassociativity(bad)
        assert not result.ok
        assert result.witness.args == ("c2",)
        assert result.witness.residual == (("c1|c1|c2", Fraction(-1)),)

    def test_eager_check_on_construction(self):
        space = BasedSpace("C", ["c1", "c2"])
        with pytest.raises(TdhomError):
            Coalgebra(space, [(1, 0, 1, 1)])

    def test_index_out_of_range(self):
        with pytest.raises(MalformedInput):
            Coalgebra(V2, [(0, 0, 5, 1)])


class TestIteratedCoproduct:
    def test_n1_identity(self):
        C = build_tensor_coalgebra(V2, 2)
        m = iterated_coproduct(C, 1)
        assert m.arity == 1
        for i in range(C.dim):
            assert m.apply_basis((i,)) == {i: Fraction(1)}

    def test_ab_single_split(self):
        C = build_tensor_coalgebra(V2, 2)
        assert label_terms(C, 2, "ab") == {("a", "b"): Fraction(1)}

    def test_abc_triple(self):
        W = BasedSpace("V", ["a", "b", "c"])
        C = build_tensor_coalgebra(W, 3)
        assert label_terms(C, 3, "abc") == {("a", "b", "c"): Fraction(1)}

    def test_bad_order(self):
        C = build_tensor_coalgebra(V2, 2)
        with pytest.raises(ValueError):
            iterated_coproduct(C, 0)

    def test_association_orders_agree(self):
        # expand the last leg instead of the first; coassociativity says equal
        for C in [
            build_tensor_coalgebra(V2, 3),
            build_symmetric_coalgebra(VXY, 2),
            build_symmetric_coalgebra(V1, 3),
            build_exterior_square_coalgebra(V2),
        ]:
            for n in (2, 3, 4):
                left = C.iterated_terms(n)
                right = _iterate_rightmost(C, n)
                assert left == right, (C, n)

    def test_degenerate_truncation(self):
        # maxdeg-2 words cannot split three ways
        C = build_tensor_coalgebra(V2, 2)
        assert C.iterated_terms(3) == {}


def _iterate_rightmost(C, n):
    """Right-leg iteration, an independent association order."""
    from tdhom.linalg import ZERO

    terms = {i: [((i,), Fraction(1))] for i in range(C.dim)}
    for _ in range(n - 1):
        new = {}
        for c, entries in terms.items():
            acc = {}
            for legs, q in entries:
                for j, k, p in C.splits(legs[-1]):
                    key = legs[:-1] + (j, k)
                    val = acc.get(key, ZERO) + q * p
                    if val == 0:
                        acc.pop(key, None)
                    else:
                        acc[key] = val
            if acc:
                new[c] = sorted(acc.items())
        terms = new
    return terms


class TestSymmetryClass:
    def test_symmetric_cocommutative(self):
        assert symmetry_class(build_symmetric_coalgebra(VXY, 2)) == COCOMMUTATIVE

    def test_exterior_skew(self):
        assert symmetry_class(build_exterior_square_coalgebra(V2)) == SKEW_COCOMMUTATIVE

    def test_deconcatenation_neither(self):
        assert symmetry_class(build_tensor_coalgebra(V2, 2)) == NEITHER

    def test_zero_cocommutative_by_convention(self):
        assert symmetry_class(Coalgebra(V2, [])) == COCOMMUTATIVE

    def test_single_letter_tensor_cocommutative(self):
        # words in one letter: splits are symmetric
        assert symmetry_class(build_tensor_coalgebra(V1, 3)) == COCOMMUTATIVE
