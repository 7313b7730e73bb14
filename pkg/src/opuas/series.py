"""Generating and codimension series in gamma-vector form.

A quotient operad of polynomial growth is recorded by the finite vector of
its top truncation-component dimensions; arity dimensions come back through
binomials and the closed form is a sum of t^k/(1-t)^(k+1) blocks.  Series
are never floated: the vector is the value, the closed form is a rendered
string.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .ideals import IdealError, IdealWindow
from .truncation import gamma, truncation_kernel


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class GammaSeries:
    """Coefficients (gamma_0, ..., gamma_{d-1}) of a polynomial-growth series."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coefficients):
            raise SeriesError("negative coefficient")
        if self.coefficients and self.coefficients[-1] == 0:
            raise SeriesError("trailing zero coefficient (not normalized)")

    def dims_at(self, n: int) -> int:
        """Dimension of the quotient in arity n."""
        if n < 0:
            raise SeriesError("negative arity")
        return sum(c * math.comb(n, k) for k, c in enumerate(self.coefficients))

    def closed_form(self) -> str:
        """Rendered rational-function form of the generating series."""
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            coef = "" if c == 1 else f"{c}*"
            num = "1" if k == 0 else f"t^{k}" if k > 1 else "t"
            parts.append(f"{coef}{num}/(1-t)^{k + 1}")
        return " + ".join(parts)

    def gkdim(self) -> int:
        if not self.coefficients:
            raise SeriesError("zero series")
        return len(self.coefficients)

    def grade(self) -> int:
        return self.gkdim() - 1

    def leading_lambda(self) -> Fraction:
        """The polynomial-growth constant: top coefficient over grade factorial."""
        g = self.grade()
        return Fraction(self.coefficients[-1], math.factorial(g))

    def to_json(self) -> str:
        lam = self.leading_lambda() if self.coefficients else Fraction(0)
        return json.dumps(
            {
                "gamma": list(self.coefficients),
                "grade": self.grade() if self.coefficients else None,
                "lambda": f"{lam.numerator}/{lam.denominator}",
                "closed_form": self.closed_form(),
            }
        )

    def __str__(self) -> str:
        return f"gamma{self.coefficients}"


def normalized(coefficients) -> GammaSeries:
    co = list(coefficients)
    while co and co[-1] == 0:
        co.pop()
    return GammaSeries(tuple(int(c) for c in co))


def gamma_series_of_quotient(ideal: IdealWindow) -> GammaSeries:
    """Gamma vector of the quotient by an ideal with a certified tail."""
    if ideal.tail is None:
        raise IdealError("gamma series needs a certified truncation tail")
    co = []
    for k in range(min(ideal.tail, ideal.top_arity + 1)):
        co.append(
            gamma(k)
            - linalg.intersect(ideal.component(k), truncation_kernel(k, k)).dim
        )
    return normalized(co)


@lru_cache(maxsize=None)
def catalog(grade: int) -> tuple[GammaSeries, ...]:
    """The complete list of codimension series of polynomial growth n^grade.

    Assembled from the classification machinery (not hardcoded): grades up
    to 4 come from the truncation quotients and the GK-dimension-5 list,
    grade 5 from the GK-dimension-6 list.
    """
    if grade < 0 or grade > 5:
        raise SeriesError("catalogue covers grades 0..5 only")
    from . import classify

    if grade == 0:
        return (GammaSeries((1,)),)
    if grade == 1:
        # a growth of n^1 would need a nonzero gamma_1, which is impossible
        return ()
    if grade == 2:
        return (gamma_series_of_quotient(classify.truncation_ideal_window(3)),)
    if grade == 3:
        return (gamma_series_of_quotient(classify.truncation_ideal_window(4)),)
    if grade == 4:
        series = {entry.series for entry in classify.classified_gkdim5()}
        return tuple(sorted(series, key=lambda s: s.coefficients))
    series = classify.classified_gkdim6_series()
    return tuple(sorted(series, key=lambda s: s.coefficients))
