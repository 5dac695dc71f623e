import math
import random
from fractions import Fraction

import pytest

from subtree_spectra.errors import OrderTooLargeForOracle
from subtree_spectra.poly_core import ZERO, ExactPolynomial
from subtree_spectra.subtree_engine import (
    all_local_polynomials,
    brute_force_polynomial,
    closed_form,
    forest_polynomial,
    local_polynomial,
    max_independent_set,
    profile,
    subtree_polynomial,
)
from subtree_spectra.tree_enum import enumerate_free_trees, random_tree
from subtree_spectra.tree_model import FamilySpec, Forest, Tree, build_family, delete_vertex


def fam(kind, *params):
    return build_family(FamilySpec(kind, tuple(params)))


def test_local_polynomial_star_center_and_leaf():
    k13 = fam("star", 4)
    assert local_polynomial(k13, 0) == ExactPolynomial([0, 1, 3, 3, 1])
    assert local_polynomial(k13, 1) == ExactPolynomial([0, 1, 1, 2, 1])
    single = fam("path", 1)
    assert local_polynomial(single, 0) == ExactPolynomial([0, 1])


def test_subtree_polynomial_examples():
    assert subtree_polynomial(fam("star", 4)) == ExactPolynomial([0, 4, 3, 3, 1])
    assert subtree_polynomial(fam("path", 4)) == ExactPolynomial([0, 4, 3, 2, 1])
    # x(1+x)^4 + 4x, expanded by hand
    assert subtree_polynomial(fam("star", 5)) == ExactPolynomial([0, 5, 4, 6, 4, 1])


def test_forest_polynomial_examples():
    k13 = fam("star", 4)
    assert forest_polynomial(delete_vertex(k13, 0)) == ExactPolynomial([0, 3])
    p4 = fam("path", 4)
    assert forest_polynomial(delete_vertex(p4, 0)) == ExactPolynomial([0, 3, 2, 1])
    assert forest_polynomial(Forest(())) == ZERO


def test_brute_force_examples():
    assert brute_force_polynomial(fam("path", 3)) == ExactPolynomial([0, 3, 2, 1])
    assert brute_force_polynomial(fam("star", 4)) == ExactPolynomial([0, 4, 3, 3, 1])
    assert brute_force_polynomial(fam("path", 1)) == ExactPolynomial([0, 1])
    with pytest.raises(OrderTooLargeForOracle):
        brute_force_polynomial(fam("path", 25))


def test_profile_examples():
    p2 = profile(fam("path", 2))
    assert p2.subtree_count == 3
    assert p2.mean_subtree_order == Fraction(4, 3)
    assert p2.independence_number == 1
    k13 = profile(fam("star", 4))
    assert k13.subtree_count == 11
    assert k13.independence_number == 3
    p4 = profile(fam("path", 4))
    assert p4.independence_number == 2
    assert p4.polynomial.eval_exact(-1) == -2


def test_closed_form_examples():
    assert closed_form(FamilySpec("spider", (1, 1))) == ExactPolynomial([0, 4, 3, 2, 1])
    assert closed_form(FamilySpec("path", (2,))) == ExactPolynomial([0, 2, 1])
    assert closed_form(FamilySpec("star", (2,))) == ExactPolynomial([0, 2, 1])


def test_closed_form_matches_engine_for_families():
    for n in range(1, 19):
        assert closed_form(FamilySpec("path", (n,))) == subtree_polynomial(fam("path", n))
        assert closed_form(FamilySpec("star", (n,))) == subtree_polynomial(fam("star", n))
    for a in range(1, 16):
        for b in range(1, (18 - a - 1) // 2 + 1):
            if a + 2 * b + 1 > 18:
                continue
            spec = FamilySpec("spider", (a, b))
            assert closed_form(spec) == subtree_polynomial(build_family(spec))


def test_oracle_equivalence_small_orders():
    for n in range(1, 9):
        for t in enumerate_free_trees(n):
            assert subtree_polynomial(t) == brute_force_polynomial(t)


def test_oracle_equivalence_random_trees():
    rng = random.Random(2024)
    for _ in range(200):
        t = random_tree(rng.randint(11, 16), rng)
        assert subtree_polynomial(t) == brute_force_polynomial(t)


def test_coefficient_structure():
    rng = random.Random(11)
    for _ in range(30):
        t = random_tree(rng.randint(2, 14), rng)
        poly = subtree_polynomial(t)
        assert poly.degree == t.n
        assert poly.coefficient(0) == 0
        assert poly.coefficient(1) == t.n
        assert poly.coefficient(2) == t.n - 1
        assert poly.coefficient(t.n) == 1


def test_decomposition_identity_every_vertex():
    rng = random.Random(12)
    trees = [random_tree(rng.randint(2, 12), rng) for _ in range(25)]
    trees += list(enumerate_free_trees(6))
    for t in trees:
        poly = subtree_polynomial(t)
        for v in range(t.n):
            lhs = local_polynomial(t, v) + forest_polynomial(delete_vertex(t, v))
            assert lhs == poly


def test_local_sum_is_x_times_derivative():
    rng = random.Random(13)
    trees = [random_tree(rng.randint(1, 12), rng) for _ in range(25)]
    for t in trees:
        total = ZERO
        for p in all_local_polynomials(t):
            total = total + p
        assert total == subtree_polynomial(t).derivative().shift(1)


def test_two_pass_locals_match_naive_rooting():
    rng = random.Random(14)
    for _ in range(25):
        t = random_tree(rng.randint(1, 12), rng)
        fast = all_local_polynomials(t)
        for v in range(t.n):
            assert fast[v] == local_polynomial(t, v)


def test_local_values_strictly_between_minus_one_and_zero():
    rng = random.Random(15)
    xs = [Fraction(-k, 101) for k in range(1, 101)]  # 100 points in (-1, 0)
    for _ in range(50):
        t = random_tree(rng.randint(1, 12), rng)
        for local in all_local_polynomials(t):
            for x in rng.sample(xs, 10):
                val = local.eval_exact(x)
                assert Fraction(-1) < val < Fraction(0)


def test_local_lower_bound_far_from_origin():
    rng = random.Random(16)
    for _ in range(50):
        t = random_tree(rng.randint(1, 12), rng)
        locals_ = all_local_polynomials(t)
        for _ in range(2):
            r = rng.uniform(2.0, 4.0)
            theta = rng.uniform(0.0, 2.0 * math.pi)
            z = complex(r * math.cos(theta), r * math.sin(theta))
            floor = r * (r - 1.0) ** (t.n - 1)
            for local in locals_:
                assert abs(local.eval_complex(z)) >= floor * (1.0 - 1e-10)


def test_max_independent_set_known_values():
    assert max_independent_set(fam("star", 9)) == 8
    assert max_independent_set(fam("path", 7)) == 4
    assert max_independent_set(fam("path", 1)) == 1
    assert max_independent_set(fam("spider", (3, 2))) == 5


def test_independence_bounds():
    rng = random.Random(17)
    for _ in range(40):
        t = random_tree(rng.randint(2, 14), rng)
        alpha = profile(t).independence_number
        assert math.ceil(t.n / 2) <= alpha <= t.n - 1
