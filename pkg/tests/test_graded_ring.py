'''
Tests for Hilbert series of the ring presentations
Startup: python -m pytest tests/test_graded_ring.py -v
'''
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from graded_ring import (GAMMA1, VINBERG, WITH_CHARACTERS, PowerSeries, PresentationError,
                         TruncationMismatchError, WeightedPresentation, a_invariant, canonical_twist,
                         character_factor_check, first_difference, hilbert_from_counting,
                         hilbert_from_rational, series_equal)


def test_free_ring_low_weights():
    '''dim 12 = 4: t12, t4 t8, t6^2, t4^3'''
    series = hilbert_from_rational(VINBERG, 12)
    assert series.to_list() == [1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 2, 0, 4]
    assert hilbert_from_counting(VINBERG, 12).to_list() == series.to_list()


def test_empty_presentation():
    empty = WeightedPresentation('empty', ())
    assert hilbert_from_rational(empty, 5).to_list() == [1, 0, 0, 0, 0, 0]
    assert hilbert_from_counting(empty, 5).to_list() == [1, 0, 0, 0, 0, 0]


def test_normal_form_counts():
    characters = hilbert_from_counting(WITH_CHARACTERS, 10)
    assert characters[4] == 2, 't4 and s4'
    assert characters[10] == 4, 't10, t4 t6, s4 t6 and s10'
    assert hilbert_from_rational(WITH_CHARACTERS, 10)[4] == 2
    assert hilbert_from_counting(VINBERG, 8)[8] == 2
    assert hilbert_from_counting(GAMMA1, 0).to_list() == [1]


@pytest.mark.parametrize('presentation', [WITH_CHARACTERS, GAMMA1, VINBERG], ids=lambda p: p.name)
def test_rational_matches_counting(presentation):
    rational = hilbert_from_rational(presentation, 120)
    counted = hilbert_from_counting(presentation, 120)
    assert series_equal(rational, counted), f'{presentation.name}: first difference {first_difference(rational, counted)}'
    assert rational[0] == 1 and np.all(rational.coeffs >= 0)
    print(f'{presentation.name} hilbert test passed')


def test_square_root_generator_multiplies_series():
    N = 80
    base = hilbert_from_counting(GAMMA1, N)
    extended = hilbert_from_counting(GAMMA1.with_sqrt(14), N)
    assert series_equal(extended, base * PowerSeries.from_polynomial({0: 1, 14: 1}, N))


def test_character_factor():
    assert character_factor_check(34)
    assert character_factor_check(0)
    assert character_factor_check(120)
    assert not character_factor_check(120, extra_weights=(4, 28)), 'Perturbed weights must fail'


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatchError):
        series_equal(hilbert_from_rational(VINBERG, 10), hilbert_from_rational(VINBERG, 11))


def test_presentation_errors():
    with pytest.raises(PresentationError):
        WeightedPresentation('bad', (4, 0))
    abstract = WeightedPresentation('abstract', (4, 6), relation_weights=(12,))
    with pytest.raises(PresentationError):
        hilbert_from_counting(abstract, 20)
    # 1 - T^12 over (1 - T^4)(1 - T^6)
    assert hilbert_from_rational(abstract, 12).to_list() == [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_a_invariant():
    assert a_invariant(WITH_CHARACTERS) == 4
    assert canonical_twist(WITH_CHARACTERS) == 4
    assert a_invariant(GAMMA1) == -30
    assert a_invariant(VINBERG) == -40
    assert WITH_CHARACTERS.generator_weights == (4, 4, 6, 8, 10, 10, 12, 30)
    assert WITH_CHARACTERS.all_relation_weights == (8, 20, 60)


def test_series_equality_uses_coefficients():
    vinberg, gamma1 = hilbert_from_rational(VINBERG, 20), hilbert_from_rational(GAMMA1, 20)
    assert vinberg != gamma1, 'Different rings must give different series'
    assert vinberg == hilbert_from_counting(VINBERG, 20)
    assert hash(vinberg) == hash(hilbert_from_counting(VINBERG, 20))
    assert len({vinberg, gamma1, hilbert_from_rational(VINBERG, 20)}) == 2
    assert hilbert_from_rational(VINBERG, 12) != hilbert_from_rational(VINBERG, 20), 'Orders differ'
