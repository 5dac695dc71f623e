"""Exact dense univariate polynomial arithmetic over Python integers.

Coefficients are stored ascending: ``coefficients[k]`` multiplies ``x**k``.
All ring operations are exact.  Floating point enters only at the
evaluation boundary: :meth:`ExactPolynomial.eval_complex` works in double
precision (53-bit significand, ~15.9 decimal digits) and
:meth:`ExactPolynomial.eval_mpc` in whatever precision the active mpmath
context provides (the root solver uses >= 30 decimal digits for its
extended mode).  Integer-to-float conversion rounds to nearest.
"""

from __future__ import annotations

import mpmath

from .errors import OverflowAtPrecision


class ExactPolynomial:
    """Immutable dense polynomial with arbitrary-precision integer coefficients.

    The highest stored coefficient is nonzero; the zero polynomial stores
    an empty tuple and reports degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactPolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def monomial(cls, k: int, coefficient: int = 1) -> "ExactPolynomial":
        """coefficient * x**k"""
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        return cls([0] * k + [coefficient])

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Highest exponent with a nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def coeff_list(self) -> list[int]:
        """Ascending coefficient list, the textual interchange format."""
        return list(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"ExactPolynomial({list(self.coefficients)!r})"

    def __str__(self) -> str:
        return str(list(self.coefficients))

    # -- exact ring operations ---------------------------------------------

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactPolynomial([c * other for c in self.coefficients])
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return ExactPolynomial(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "ExactPolynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(
            [k * c for k, c in enumerate(self.coefficients)][1:]
        )

    def shift(self, k: int) -> "ExactPolynomial":
        """Multiply by x**k."""
        if not self.coefficients:
            return ZERO
        return ExactPolynomial([0] * k + list(self.coefficients))

    # -- evaluation ---------------------------------------------------------

    def eval_exact(self, x):
        """Horner evaluation at an int or Fraction; result stays exact."""
        if not self.coefficients:
            return x * 0
        acc = self.coefficients[-1] + x * 0  # promote to the type of x
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        """Horner evaluation in double precision.

        Raises OverflowAtPrecision if a coefficient exceeds the double
        range; callers then retry through eval_mpc.
        """
        acc = 0j
        try:
            for c in reversed(self.coefficients):
                acc = acc * z + float(c)
        except OverflowError as exc:
            raise OverflowAtPrecision(
                f"coefficient with {max(abs(c) for c in self.coefficients).bit_length()}"
                " bits does not fit a double"
            ) from exc
        return acc

    def eval_mpc(self, z) -> "mpmath.mpc":
        """Horner evaluation under the active mpmath precision."""
        acc = mpmath.mpc(0)
        zz = mpmath.mpc(z)
        for c in reversed(self.coefficients):
            acc = acc * zz + c
        return acc


ZERO = ExactPolynomial()
ONE = ExactPolynomial([1])
X = ExactPolynomial([0, 1])


def add(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    return p + q


def multiply(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    return p * q


def derivative(p: ExactPolynomial) -> ExactPolynomial:
    return p.derivative()


def eval_exact(p: ExactPolynomial, x):
    return p.eval_exact(x)


def eval_complex(p: ExactPolynomial, z: complex) -> complex:
    return p.eval_complex(z)
