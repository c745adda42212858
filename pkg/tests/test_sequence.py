import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslforge.codec import decode
from pslforge.sequence import (
    BinarySequence,
    SequenceError,
    SidelobeProfile,
    aacf,
    fitness,
    flip_delta,
    merit_factor,
    psl,
    psl_db,
)

from conftest import naive_aacf, naive_fitness

WORKED_11 = decode("1b7", 11)
BARKER_11 = decode("712", 11)  # +++---+--+-


def seqs(min_n=2, max_n=64):
    return st.lists(st.sampled_from([-1, 1]), min_size=min_n, max_size=max_n).map(BinarySequence)


def test_aacf_examples():
    assert aacf(BinarySequence.ones(4)).values == (3, 2, 1)
    assert aacf([1, -1, 1, -1]).values == (-3, 2, -1)
    # the encoding example is not a Barker sequence: values from the double loop
    assert aacf(WORKED_11).values == (0, -3, 4, 1, -2, 1, 2, -1, -2, -1)
    assert aacf(WORKED_11).values == tuple(naive_aacf(WORKED_11))
    assert all(abs(c) <= 1 for c in aacf(BARKER_11).values)


def test_mainlobe_derivable():
    prof = aacf(BARKER_11)
    assert prof[0] == 11
    assert prof[10] == prof.values[-1]
    with pytest.raises(IndexError):
        prof[11]


def test_psl_examples():
    assert psl(WORKED_11) == 4
    assert psl(BARKER_11) == 1
    assert psl([1, -1, 1, -1]) == 3
    assert psl(BinarySequence.ones(4)) == 3


def test_rejects_short_and_bad_sequences():
    with pytest.raises(SequenceError):
        BinarySequence((1,))
    with pytest.raises(SequenceError):
        aacf([1])
    with pytest.raises(SequenceError):
        BinarySequence((1, 0, -1))
    with pytest.raises(SequenceError):
        BinarySequence.from_signs("+-x")


def test_sign_string_roundtrip():
    s = BinarySequence.from_signs("--++-++-+++")
    assert s == WORKED_11
    assert s.signs() == "--++-++-+++"
    assert BinarySequence.from_signs("−+") == BinarySequence((-1, 1))


def test_psl_db():
    assert round(psl_db(6, 106), 3) == -24.943
    assert psl_db(17, 17) == 0.0
    assert round(psl_db(6, 110), 3) == -25.265
    assert psl_db(6, 110) == pytest.approx(20 * math.log10(6 / 110))
    with pytest.raises(SequenceError):
        psl_db(0, 10)


@given(st.integers(2, 500), st.integers(1, 499))
def test_psl_db_increasing(n, a):
    assert psl_db(a, n) < psl_db(a + 1, n)


def test_merit_factor_examples():
    seq106 = decode("1366453fff339abc3d613eab4f2", 106)
    assert aacf(seq106).energy() == 1117
    assert round(merit_factor(seq106), 3) == 5.030
    for seq in (WORKED_11, BARKER_11):
        energy = sum(c * c for c in naive_aacf(seq))
        assert merit_factor(seq) == 121 / (2 * energy)
    assert merit_factor(BARKER_11) == 121 / 10
    assert merit_factor(WORKED_11) == 121 / 82
    assert merit_factor(BinarySequence.ones(3)) == pytest.approx(0.9)


def test_fitness_examples():
    assert fitness(BinarySequence.ones(3), 4) == 17
    assert fitness([1, -1], 4) == 1
    assert fitness([1, -1, 1, -1], 4) == 98
    with pytest.raises(SequenceError):
        fitness([1, -1], 0)


def test_fitness_exact_beyond_int64():
    # all-ones, n=300, p=8 exceeds 2**63; Python ints must not wrap
    seq = BinarySequence.ones(300)
    expected = sum(u**8 for u in range(1, 300))
    assert expected > 2**63
    assert fitness(seq, 8) == expected


@pytest.mark.parametrize("n", range(2, 11))
def test_exhaustive_agreement_with_double_loop(n):
    for bits in itertools.product((-1, 1), repeat=n):
        assert list(aacf(bits).values) == naive_aacf(bits)


def test_profile_validation():
    SidelobeProfile((-3, 2, -1), 4)
    with pytest.raises(SequenceError):
        SidelobeProfile((4, 2, 1), 4)  # bound
    with pytest.raises(SequenceError):
        SidelobeProfile((2, 2, 1), 4)  # parity
    with pytest.raises(SequenceError):
        SidelobeProfile((3, 2), 4)  # length


@given(seqs(max_n=120))
def test_transform_invariance(seq):
    ref = [abs(c) for c in aacf(seq).values]
    for t in (seq.reversed(), seq.negated(), seq.alternated()):
        assert [abs(c) for c in aacf(t).values] == ref
        assert psl(t) == psl(seq)
        assert fitness(t) == fitness(seq)
        assert merit_factor(t) == merit_factor(seq)


@given(seqs(max_n=120), st.sampled_from([2, 4, 6]))
def test_fitness_bounds_even_p(seq, p):
    pk = psl(seq)
    assert pk**p <= fitness(seq, p) <= (len(seq) - 1) * pk**p


@given(seqs(max_n=120))
def test_parity_and_last_sidelobe(seq):
    n = len(seq)
    vals = aacf(seq).values
    assert all((c - (n - u)) % 2 == 0 for u, c in enumerate(vals, start=1))
    assert vals[-1] in (-1, 1)
    assert psl(seq) >= 1


# flip_delta ---------------------------------------------------------------


def test_flip_delta_example():
    seq = BinarySequence.ones(3)
    prof = aacf(seq)
    assert prof.values == (2, 1)
    new, f = flip_delta(seq, prof, 0)
    assert new.values == (0, -1)
    assert new == aacf((-1, 1, 1))
    assert f == 1


def test_flip_delta_involution(rng):
    for _ in range(50):
        n = int(rng.integers(2, 80))
        seq = BinarySequence.from_array(rng.choice([-1, 1], n))
        prof = aacf(seq)
        i = int(rng.integers(n))
        once, _ = flip_delta(seq, prof, i)
        twice, f = flip_delta(seq.flipped(i), once, i)
        assert twice == prof
        assert f == prof.fitness()


def test_flip_delta_matches_recompute(rng):
    for _ in range(1000):
        n = int(rng.integers(2, 301))
        seq = BinarySequence.from_array(rng.choice([-1, 1], n))
        i = int(rng.integers(n))
        new, f = flip_delta(seq, aacf(seq), i)
        flipped = seq.flipped(i)
        assert list(new.values) == naive_aacf(flipped)
        assert f == naive_fitness(flipped)


def test_flip_delta_bad_index():
    with pytest.raises(IndexError):
        flip_delta(BARKER_11, aacf(BARKER_11), 11)


def test_sequence_is_immutable_value():
    a = BinarySequence((1, -1, 1))
    assert a == BinarySequence.from_array(np.array([1, -1, 1]))
    assert hash(a) == hash(BinarySequence((1, -1, 1)))
    with pytest.raises(AttributeError):
        a.elements = (1, 1)
