'''
Tests for matrix groups over F2
Startup: python -m pytest tests/test_group_f2.py -v
'''
import os
import sys

import numpy as np
import pytest
from sympy import totient

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from group_f2 import (DISPLAYED_GENERATORS, GRAM, MIXING_TRANSVECTION, SYMPLECTIC_GENERATORS, TAU,
                      DimensionMismatchError, GroupClosure, MatrixF2, NotInvertibleError,
                      audit_generators, extension_6x6, generate_group, is_central, preserves_form,
                      s6_signature_check, symmetric_histogram, transvection)

S6_HISTOGRAM = {1: 1, 2: 75, 3: 80, 4: 180, 5: 144, 6: 240}


def test_identity_preserves_form():
    assert preserves_form(MatrixF2.identity(4), GRAM)


def test_elementary_matrix_breaks_form():
    '''E = I + e_13 sends e3 to e1 + e3, and <e2, e1 + e3> = 1 while <e2, e3> = 0'''
    E = np.eye(4, dtype=np.uint8)
    E[0, 2] = 1
    assert not preserves_form(MatrixF2(E), GRAM)


def test_displayed_generator_audit():
    audit = audit_generators(DISPLAYED_GENERATORS)
    assert [entry['preserves_form'] for entry in audit] == [True, True, False, True, True]
    assert all(preserves_form(g, GRAM) for g in SYMPLECTIC_GENERATORS)


def test_trivial_group():
    closure = generate_group([MatrixF2.identity(4)])
    assert closure.order == 1 and closure.histogram == {1: 1}


def test_symmetric_histogram_oracle():
    assert symmetric_histogram(6) == S6_HISTOGRAM
    assert sum(S6_HISTOGRAM.values()) == 720


def test_symplectic_group_is_s6_like():
    closure = generate_group(SYMPLECTIC_GENERATORS)
    assert closure.order == 720, f'Order {closure.order}'
    assert closure.histogram == S6_HISTOGRAM
    assert s6_signature_check(closure)
    assert all(preserves_form(M, GRAM) for M in closure.elements), 'Closure leaves the form'
    print('S6 signature test passed')


def test_closure_independent_of_generator_order():
    forward = generate_group(SYMPLECTIC_GENERATORS)
    backward = generate_group(list(reversed(SYMPLECTIC_GENERATORS)))
    assert forward.elements == backward.elements


def test_transvections_generate_everything():
    assert transvection([1, 0, 1, 0]) == MIXING_TRANSVECTION
    closure = generate_group(SYMPLECTIC_GENERATORS)
    vectors = [[(k >> i) & 1 for i in range(4)] for k in range(1, 16)]
    assert all(closure.contains(transvection(v)) for v in vectors), 'Some transvection is missing'


def test_extension_has_order_1440():
    gens = extension_6x6()
    closure = generate_group(gens)
    assert closure.order == 1440
    assert is_central(TAU, gens) and closure.contains(TAU)
    assert closure.report()['order'] == 1440


def test_displayed_set_generates_gl4():
    assert generate_group(DISPLAYED_GENERATORS).order == 20160


def test_cyclic_histogram_is_rejected():
    cyclic = {int(d): int(totient(d)) for d in range(1, 721) if 720 % d == 0}
    fake = GroupClosure((), frozenset(), 720, cyclic)
    assert not s6_signature_check(fake)
    assert not s6_signature_check(GroupClosure((), frozenset(), 360, S6_HISTOGRAM))


def test_generator_errors():
    singular = MatrixF2([[1, 1], [1, 1]])
    with pytest.raises(NotInvertibleError):
        generate_group([singular])
    with pytest.raises(DimensionMismatchError):
        generate_group([MatrixF2.identity(2), MatrixF2.identity(3)])
    with pytest.raises(DimensionMismatchError):
        preserves_form(MatrixF2.identity(2), GRAM)
