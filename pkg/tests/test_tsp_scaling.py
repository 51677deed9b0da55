from fractions import Fraction as F
import math

import pytest

from bvlcone.numerics import InputError
from bvlcone.tsp_scaling import (
    GraphFamily,
    PathProfile,
    classify_support,
    improvement_ratio,
    kn_bound,
    kn_k1_closed_form,
    kn_path_integral,
    knn_bound,
    knn_cap,
    knn_constants,
    knn_path_integral,
    square_multiplicity,
    support_integral,
    veomett_constants,
)


def test_graph_family_guards():
    with pytest.raises(InputError):
        GraphFamily.complete(2)
    with pytest.raises(InputError):
        GraphFamily.bipartite(1)
    assert GraphFamily.complete(6).cycle_count() == 60
    assert GraphFamily.bipartite(3).cycle_count() == 6


def test_path_profile_invariants():
    with pytest.raises(InputError):
        PathProfile(2, 1)
    with pytest.raises(InputError):
        PathProfile(1, 2, 2)


def test_classify_support():
    assert classify_support([(0, 1), (1, 2), (3, 4)]) == PathProfile(2, 3, 1)
    assert classify_support([(0, 1), (1, 2), (0, 2)]) is None
    assert classify_support([(0, 1), (0, 2), (0, 3)]) is None
    assert classify_support([]) == PathProfile(0, 0, 0)


def test_kn_path_integral_examples():
    assert kn_path_integral(5, PathProfile(1, 1)) == F(1, 2)
    assert kn_path_integral(5, PathProfile(2, 2)) == F(1, 3)
    assert kn_path_integral(5, PathProfile(1, 5)) == 0
    assert support_integral(GraphFamily.complete(5), [(0, 1), (1, 2), (0, 2)]) == 0
    for n in range(3, 20):
        assert kn_path_integral(n, PathProfile(1, 1)) == F(2, n - 1)
        assert kn_path_integral(n, PathProfile(1, n - 1)) * GraphFamily.complete(n).cycle_count() == 1


def test_knn_path_integral_examples():
    assert knn_path_integral(3, PathProfile(1, 1, 1)) == F(2, 3)
    assert knn_path_integral(3, PathProfile(2, 2, 2)) == F(1, 2)
    assert support_integral(GraphFamily.bipartite(3), [(0, 3), (0, 4), (0, 5)]) == 0
    for n in range(2, 15):
        assert knn_path_integral(n, PathProfile(1, 1, 1)) == F(2, n)
        assert knn_path_integral(n, PathProfile(1, 2 * n - 1, 1)) * GraphFamily.bipartite(n).cycle_count() == 1
    with pytest.raises(InputError):
        knn_path_integral(3, PathProfile(1, 2, 1))


def test_veomett_example():
    tv = veomett_constants(6, 1)
    assert (tv.on_cycle, tv.off_cycle) == (72, 48)
    assert kn_bound(6, 1).plain == 6
    with pytest.raises(InputError):
        veomett_constants(6, 4)
    with pytest.raises(InputError):
        veomett_constants(3, 1)


def test_kn_bound_chain():
    for n in range(4, 61):
        for k in range(1, n // 2 + 1):
            rep = kn_bound(n, k)
            assert rep.improved <= rep.plain <= F(n, k) + F(10, n)
            assert rep.corrected <= rep.plain


def test_k1_closed_forms():
    for n in range(4, 61):
        assert kn_bound(n, 1).improved == kn_k1_closed_form(n)
    assert kn_k1_closed_form(8) == F(16, 3) + F(32, 3 * (192 - 120 + 16))


def test_knn_constants_ordering():
    for n in range(3, 31):
        for k in range(1, n + 1):
            tv = knn_constants(n, k)
            assert tv.on_cycle > tv.off_cycle >= 0
    with pytest.raises(InputError):
        knn_constants(4, 5)


def test_knn_bounds():
    assert knn_cap(3, 1) == 8
    for n in range(3, 41):
        for k in range(1, n + 1):
            rep = knn_bound(n, k)
            assert rep.improved >= 1
            if rep.cap is not None:
                assert rep.improved <= rep.cap
    assert knn_cap(3, 3) is None


def test_square_multiplicity():
    assert [square_multiplicity(i, 1) for i in (1, 2)] == [1, 2]
    assert [square_multiplicity(i, 2) for i in (2, 3, 4)] == [1, 6, 6]
    assert square_multiplicity(5, 2) == 0


def test_improvement_ratio():
    lhs, rhs, holds = improvement_ratio(10, 1)
    assert lhs <= 1 + 1e-12
    assert rhs == pytest.approx(1 + 0.8 * math.log(3 / 4))
    assert holds == (lhs <= rhs + 1e-12)
    for k in range(1, 51):
        assert improvement_ratio(100, k)[0] <= 1 + 1e-12
