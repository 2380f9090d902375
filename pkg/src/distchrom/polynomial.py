"""Minimal real polynomial type that keeps exact coefficients exact."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending order: ``coefficients[i]`` multiplies x^i."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable):
        coeffs = list(coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) if coeffs else (0,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @classmethod
    def from_roots(cls, roots: Sequence) -> "Polynomial":
        """Monic polynomial prod (x - r); coefficient of x^i is (-1)^(k-i) e_{k-i}(roots)."""
        k = len(roots)
        coeffs = []
        for i in range(k + 1):
            e = sum(math.prod(s) for s in itertools.combinations(roots, k - i))
            coeffs.append((-1) ** (k - i) * e)
        return cls(coeffs)

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Rational) for c in self.coefficients)

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            c = float(c) if isinstance(c, Fraction) else c
            terms.append(f"{c:g}" if i == 0 else f"{c:g}*x^{i}" if i > 1 else f"{c:g}*x")
        return "Polynomial(" + (" + ".join(terms) or "0") + ")"
