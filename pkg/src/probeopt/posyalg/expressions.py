"""Monomials, posynomials and signomials over named positive variables.

Expressions are immutable. Exponents are stored as a sorted tuple of
``(name, exponent)`` pairs with zero exponents dropped, which doubles as the
key for merging like terms.
"""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Mapping

import numpy as np


def _canon(exponents) -> tuple:
    if isinstance(exponents, Mapping):
        exponents = exponents.items()
    acc = defaultdict(float)
    for name, e in exponents:
        acc[str(name)] += float(e)
    return tuple(sorted((n, e) for n, e in acc.items() if e != 0.0))


def _check_point(names, point):
    for n in names:
        if n not in point:
            raise KeyError(f"variable {n!r} missing from evaluation point")
        if not point[n] > 0:
            raise ValueError(f"variable {n!r} must be positive, got {point[n]}")


class Monomial:
    """``coefficient * prod(x_v ** e_v)``; the coefficient may be negative."""

    __slots__ = ("coefficient", "exponents")

    def __init__(self, coefficient: float, exponents=()):
        coefficient = float(coefficient)
        if coefficient == 0.0:
            raise ValueError("monomial coefficient must be nonzero")
        self.coefficient = coefficient
        self.exponents = _canon(exponents)

    @classmethod
    def var(cls, name: str) -> "Monomial":
        return cls(1.0, ((name, 1.0),))

    @property
    def variables(self) -> frozenset:
        return frozenset(n for n, _ in self.exponents)

    def __call__(self, point: Mapping[str, float]) -> float:
        _check_point(self.variables, point)
        val = self.coefficient
        for n, e in self.exponents:
            val *= point[n] ** e
        return val

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.coefficient * other.coefficient,
                            self.exponents + other.exponents)
        if isinstance(other, (Posynomial, Signomial)):
            return other * self
        return Monomial(self.coefficient * float(other), self.exponents)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                return self
            other = Monomial(other)
        if isinstance(other, Monomial):
            if self.coefficient > 0 and other.coefficient > 0:
                return Posynomial([self, other])
            return Signomial.from_terms([self, other])
        return other + self

    __radd__ = __add__

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return self * other ** -1
        return Monomial(self.coefficient / float(other), self.exponents)

    def __pow__(self, power: float) -> "Monomial":
        return Monomial(self.coefficient ** power,
                        tuple((n, e * power) for n, e in self.exponents))

    def __neg__(self):
        return Monomial(-self.coefficient, self.exponents)

    def __eq__(self, other):
        return (isinstance(other, Monomial) and self.exponents == other.exponents
                and math.isclose(self.coefficient, other.coefficient, rel_tol=1e-12))

    def __hash__(self):
        return hash((self.coefficient, self.exponents))

    def __repr__(self):
        body = "*".join(f"{n}^{e:g}" for n, e in self.exponents)
        return f"{self.coefficient:.6g}" + (f"*{body}" if body else "")


def _merge(terms: Iterable[Monomial]) -> dict:
    acc = defaultdict(float)
    for t in terms:
        acc[t.exponents] += t.coefficient
    return acc


class Posynomial:
    """Sum of monomials with strictly positive coefficients.

    An empty posynomial is allowed and evaluates to zero; it stands for an
    absent term (e.g. no interference).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        merged = _merge(terms)
        out = []
        for ex, c in merged.items():
            if c < 0:
                raise ValueError(f"posynomial term with negative coefficient {c}")
            if c > 0:
                out.append(Monomial(c, ex))
        self.terms = tuple(sorted(out, key=lambda m: m.exponents))

    @property
    def variables(self) -> frozenset:
        return frozenset().union(*(t.variables for t in self.terms))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __call__(self, point: Mapping[str, float]) -> float:
        return float(sum(t(point) for t in self.terms))

    def __add__(self, other):
        if isinstance(other, Monomial):
            other = Posynomial([other])
        if isinstance(other, Posynomial):
            return Posynomial(self.terms + other.terms)
        if isinstance(other, Signomial):
            return other + self
        if other == 0:
            return self
        return Posynomial(self.terms + (Monomial(other),))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, Posynomial):
            return Posynomial(a * b for a in self.terms for b in other.terms)
        if isinstance(other, Monomial):
            if other.coefficient < 0:
                raise ValueError("scaling a posynomial by a negative monomial")
            return Posynomial(t * other for t in self.terms)
        other = float(other)
        if other < 0:
            raise ValueError("scaling a posynomial by a negative number")
        if other == 0:
            return Posynomial()
        return Posynomial(t * other for t in self.terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return self * other ** -1
        return self * (1.0 / float(other))

    def substitute(self, values: Mapping[str, float]) -> "Posynomial":
        """Fix some variables to positive constants."""
        out = []
        for t in self.terms:
            c = t.coefficient
            rest = []
            for n, e in t.exponents:
                if n in values:
                    c *= float(values[n]) ** e
                else:
                    rest.append((n, e))
            out.append(Monomial(c, rest))
        return Posynomial(out)

    def to_arrays(self, variables) -> tuple:
        """Exponent matrix ``(T, n)`` and log-coefficients ``(T,)`` for ``variables``."""
        index = {v: i for i, v in enumerate(variables)}
        A = np.zeros((len(self.terms), len(index)))
        b = np.empty(len(self.terms))
        for r, t in enumerate(self.terms):
            b[r] = math.log(t.coefficient)
            for n, e in t.exponents:
                A[r, index[n]] = e
        return A, b

    def __repr__(self):
        return " + ".join(map(repr, self.terms)) if self.terms else "0"


class Signomial:
    """Difference ``plus - minus`` of two posynomials.

    :meth:`from_terms` merges like terms first and then splits by sign, which
    gives the canonical split.
    """

    __slots__ = ("plus", "minus")

    def __init__(self, plus: Posynomial = None, minus: Posynomial = None):
        self.plus = plus if plus is not None else Posynomial()
        self.minus = minus if minus is not None else Posynomial()

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> "Signomial":
        merged = _merge(terms)
        plus = [Monomial(c, ex) for ex, c in merged.items() if c > 0]
        minus = [Monomial(-c, ex) for ex, c in merged.items() if c < 0]
        return cls(Posynomial(plus), Posynomial(minus))

    def signed_terms(self) -> list:
        return list(self.plus.terms) + [-t for t in self.minus.terms]

    @property
    def variables(self) -> frozenset:
        return self.plus.variables | self.minus.variables

    def __call__(self, point: Mapping[str, float]) -> float:
        return self.plus(point) - self.minus(point)

    def __add__(self, other):
        if isinstance(other, Signomial):
            return Signomial.from_terms(self.signed_terms() + other.signed_terms())
        if isinstance(other, Posynomial):
            return Signomial.from_terms(self.signed_terms() + list(other.terms))
        if isinstance(other, Monomial):
            return Signomial.from_terms(self.signed_terms() + [other])
        return Signomial.from_terms(self.signed_terms() + [Monomial(other)])

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (Monomial, int, float)):
            return Signomial.from_terms(t * other for t in self.signed_terms())
        if isinstance(other, Posynomial):
            other = Signomial(other)
        return Signomial.from_terms(a * b for a in self.signed_terms()
                                    for b in other.signed_terms())

    __rmul__ = __mul__

    def __repr__(self):
        return f"({self.plus!r}) - ({self.minus!r})"


def evaluate(expr, point: Mapping[str, float]) -> float:
    """Value of a monomial, posynomial or signomial at a positive point."""
    return float(expr(point))


def condense(posy: Posynomial, point: Mapping[str, float], weights=None) -> Monomial:
    """Monomial lower bound of ``posy`` that is tight at ``point``.

    The weighted arithmetic-geometric mean inequality gives
    ``sum_k u_k >= prod_k (u_k / c_k) ** c_k`` for weights ``c_k >= 0`` summing
    to one. The default weights ``c_k = u_k(point) / posy(point)`` make the
    bound exact at ``point``. Explicit ``weights`` may be passed to study the
    slack of other choices.
    """
    if not posy:
        raise ValueError("cannot condense an empty posynomial")
    vals = np.array([t(point) for t in posy.terms])
    if weights is None:
        c = vals / vals.sum()
    else:
        c = np.asarray(weights, dtype=float)
        if c.shape != vals.shape or np.any(c < 0) or not math.isclose(c.sum(), 1.0):
            raise ValueError("weights must be non-negative and sum to one")
    log_coef = 0.0
    exps = []
    for t, ck in zip(posy.terms, c):
        if ck == 0:
            continue
        log_coef += ck * (math.log(t.coefficient) - math.log(ck))
        exps.extend((n, e * ck) for n, e in t.exponents)
    return Monomial(math.exp(log_coef), exps)


def variable(name: str) -> Monomial:
    return Monomial.var(name)
