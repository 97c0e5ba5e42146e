"""Provenance polynomials with natural coefficients (the semiring N[X]).

A monomial is a sorted tuple of ``(variable, exponent)`` pairs; a
polynomial maps monomials to positive coefficients. The coarser semirings
B[X] and Trio(X) are obtained by capping coefficients and/or exponents.
"""

import enum
from collections import defaultdict


class Semiring(enum.Enum):
    NX = "nx"
    BX = "bx"
    TRIO = "trio"


class Polynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if coeff < 0:
                raise ValueError("coefficients must be natural numbers")
            if coeff:
                mono = tuple(sorted((v, e) for v, e in mono if e))
                clean[mono] = clean.get(mono, 0) + coeff
        self._terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, 0) + c
        return Polynomial(out)

    def __mul__(self, other):
        out = defaultdict(int)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                exps = dict(m1)
                for v, e in m2:
                    exps[v] = exps.get(v, 0) + e
                out[tuple(sorted(exps.items()))] += c1 * c2
        return Polynomial(out)

    def variables(self):
        return sorted({v for mono in self._terms for v, _ in mono})

    def cap_exponents(self):
        out = defaultdict(int)
        for mono, c in self._terms.items():
            out[tuple((v, 1) for v, _ in mono)] += c
        return Polynomial(out)

    def cap_coefficients(self):
        return Polynomial({mono: 1 for mono in self._terms})

    def project(self, semiring):
        """Image under the canonical homomorphism into ``semiring``."""
        semiring = Semiring(semiring)
        if semiring is Semiring.NX:
            return self
        if semiring is Semiring.TRIO:
            return self.cap_exponents()
        return self.cap_exponents().cap_coefficients()

    def _sorted_terms(self):
        def expanded(mono):
            return [v for v, e in mono for _ in range(e)]

        return sorted(self._terms.items(), key=lambda t: expanded(t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._sorted_terms():
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def psum(polys, semiring=Semiring.NX):
    out = Polynomial.zero()
    for p in polys:
        out = (out + p).project(semiring)
    return out


def pprod(polys, semiring=Semiring.NX):
    out = Polynomial.one()
    for p in polys:
        out = (out * p).project(semiring)
    return out
