import pytest

from pslforge.oracle import (
    ResourceLimitError,
    enumerate_psl_histogram,
    min_psl_exhaustive,
    naive_sidelobes,
)
from pslforge.sequence import psl

from conftest import naive_psl


def test_small_examples():
    assert min_psl_exhaustive(2).min_psl == 1
    assert min_psl_exhaustive(5).min_psl == 1
    r = min_psl_exhaustive(13)
    assert r.min_psl == 1
    assert r.enumerated == 2**13
    assert psl(r.witness) == 1


def test_histograms():
    assert enumerate_psl_histogram(2) == {1: 4}
    assert sum(enumerate_psl_histogram(3).values()) == 8
    assert min(enumerate_psl_histogram(13)) == 1


@pytest.mark.parametrize("n", range(2, 13))
def test_histogram_matches_naive_enumeration(n):
    import itertools
    from collections import Counter

    expected = Counter(naive_psl(bits) for bits in itertools.product((-1, 1), repeat=n))
    assert enumerate_psl_histogram(n) == dict(expected)
    rep = min_psl_exhaustive(n)
    assert rep.min_psl == min(expected)
    assert rep.count_at_min == expected[min(expected)]


@pytest.mark.parametrize("n", [7, 11, 13, 16])
def test_witness_orbit(n):
    rep = min_psl_exhaustive(n)
    w = rep.witness
    assert rep.count_at_min >= 1 and rep.count_at_min % 2 == 0
    for t in (w.reversed(), w.negated(), w.alternated()):
        assert psl(t) == rep.min_psl


def test_partitioned_scan_is_deterministic():
    a = min_psl_exhaustive(17, histogram=True)
    b = min_psl_exhaustive(17, workers=4, histogram=True)
    assert a == b


def test_cap():
    with pytest.raises(ResourceLimitError):
        min_psl_exhaustive(25)
    with pytest.raises(ResourceLimitError):
        min_psl_exhaustive(12, cap=10)
    with pytest.raises(ValueError):
        min_psl_exhaustive(1)


def test_report_dict():
    d = min_psl_exhaustive(4, histogram=True).to_dict()
    assert d["min_psl"] == 1 and d["enumerated"] == 16
    assert sum(d["histogram"].values()) == 16


def test_naive_sidelobes_shape():
    import numpy as np

    out = naive_sidelobes(np.array([[1, 1, 1, 1], [1, -1, 1, -1]], dtype=np.int8))
    assert out.tolist() == [[3, 2, 1], [-3, 2, -1]]
