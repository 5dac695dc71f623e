import math
import random
from fractions import Fraction

import mpmath
import pytest

from subtree_spectra.errors import OverflowAtPrecision
from subtree_spectra.poly_core import ONE, ZERO, ExactPolynomial, X

CBRT3 = 3.0 ** (1.0 / 3.0)

K13_POLY = ExactPolynomial([0, 4, 3, 3, 1])
P2_POLY = ExactPolynomial([0, 2, 1])


def rand_poly(rng, max_deg=12, max_coeff=50):
    deg = rng.randint(0, max_deg)
    return ExactPolynomial([rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)])


def test_add_examples():
    assert X + X == ExactPolynomial([0, 2])
    # single vertex plus two-vertex path, as a forest
    assert ExactPolynomial([0, 1]) + P2_POLY == ExactPolynomial([0, 3, 1])
    p = ExactPolynomial([3, 0, 7])
    assert p + ZERO == p


def test_add_normalizes_cancellation():
    p = ExactPolynomial([1, 2, 5])
    q = ExactPolynomial([0, 0, -5])
    assert (p + q).degree == 1
    assert (p + q).coefficients == (1, 2)


def test_multiply_examples():
    assert X * (ONE + X) ** 3 == ExactPolynomial([0, 1, 3, 3, 1])
    assert (ONE + X) * ExactPolynomial([1, 1, 1]) == ExactPolynomial([1, 2, 2, 1])
    assert rand_poly(random.Random(1)) * ZERO == ZERO


def test_derivative_examples():
    p = ExactPolynomial([0, 4, 3, 2, 1])
    assert p.derivative() == ExactPolynomial([4, 6, 6, 4])
    assert ExactPolynomial([9]).derivative() == ZERO
    assert P2_POLY.derivative().eval_exact(1) == 4


def test_eval_exact_examples():
    assert K13_POLY.eval_exact(1) == 11
    assert ExactPolynomial([0, 4, 3, 2, 1]).eval_exact(-1) == -2
    p = ExactPolynomial([7, 1, 2])
    assert p.eval_exact(0) == 7
    assert p.eval_exact(Fraction(1, 2)) == Fraction(8)


def test_eval_complex_examples():
    z = -1.0 - CBRT3
    assert abs(K13_POLY.eval_complex(complex(z, 0))) < 1e-9
    assert K13_POLY.eval_complex(0j) == 0
    assert abs(ExactPolynomial([1, 0, 1]).eval_complex(1j)) < 1e-15


def test_commutativity_and_associativity():
    rng = random.Random(42)
    for _ in range(50):
        p, q, r = (rand_poly(rng) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)


def test_eval_is_ring_homomorphism():
    rng = random.Random(43)
    for _ in range(40):
        p, q = rand_poly(rng), rand_poly(rng)
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        assert (p * q).eval_exact(x) == p.eval_exact(x) * q.eval_exact(x)
        assert (p + q).eval_exact(x) == p.eval_exact(x) + q.eval_exact(x)


def test_product_rule():
    rng = random.Random(44)
    for _ in range(40):
        p, q = rand_poly(rng), rand_poly(rng)
        lhs = (p * q).derivative()
        rhs = p.derivative() * q + p * q.derivative()
        assert lhs == rhs


def test_double_vs_extended_eval_agreement():
    # polynomials from trees up to order 18 sampled around |z| <= 3
    from subtree_spectra.subtree_engine import closed_form, subtree_polynomial
    from subtree_spectra.tree_enum import random_tree
    from subtree_spectra.tree_model import FamilySpec

    rng = random.Random(45)
    polys = [
        closed_form(FamilySpec("star", (18,))),
        closed_form(FamilySpec("path", (18,))),
        closed_form(FamilySpec("spider", (7, 5))),
    ]
    polys += [subtree_polynomial(random_tree(rng.randint(2, 18), rng))
              for _ in range(10)]
    with mpmath.workdps(40):
        for p in polys:
            for _ in range(20):
                r = rng.uniform(0.05, 3.0)
                theta = rng.uniform(0, 2 * math.pi)
                z = complex(r * math.cos(theta), r * math.sin(theta))
                fast = p.eval_complex(z)
                slow = p.eval_mpc(z)
                err = abs(fast - complex(slow))
                # relative to the evaluation scale: cancellation near roots
                # makes agreement relative to the value itself unattainable
                scale = sum(abs(c) * abs(z) ** k
                            for k, c in enumerate(p.coefficients))
                assert err <= 1e-12 * max(1.0, scale)


def test_overflow_at_precision():
    p = ExactPolynomial([0, 10 ** 400, 1])
    with pytest.raises(OverflowAtPrecision):
        p.eval_complex(1 + 0j)
    with mpmath.workdps(40):
        assert abs(p.eval_mpc(1)) > 0  # extended mode handles it


def test_structure_and_rendering():
    assert str(K13_POLY) == "[0, 4, 3, 3, 1]"
    assert K13_POLY.coeff_list() == [0, 4, 3, 3, 1]
    assert ZERO.degree == -1
    assert not ZERO
    assert ExactPolynomial([0, 0, 0]).is_zero()
    assert ExactPolynomial.monomial(3, 5) == ExactPolynomial([0, 0, 0, 5])
    assert K13_POLY.coefficient(1) == 4 and K13_POLY.coefficient(9) == 0
    assert (ONE + X).shift(2) == ExactPolynomial([0, 0, 1, 1])
    with pytest.raises(AttributeError):
        K13_POLY.coefficients = ()
