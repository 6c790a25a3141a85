"""Series with finite designated support over a toric germ.

A Series stands for a (truncation of a) formal power series whose exponents
lie in the monoid of lattice points of the dual of its ambient cone. The
designated terms are assumed to include every vertex of the true Newton
polyhedron ("support suffices"); nothing here can verify that assumption,
but all minimum-weight computations against interior weight vectors depend
on finitely many terms only, so exactness is preserved on the designated
support.

Coefficients are exact rationals standing in for a generic coefficient
field; the combinatorial outputs downstream depend only on supports.
"""

from __future__ import annotations

from fractions import Fraction

from .cones import Cone
from .lattice import pairing, primitive
from .linalg import IntVec, integerize, vec_add


class Series:
    """Finitely supported exact series anchored to an ambient cone."""

    __slots__ = ("cone", "terms")

    def __init__(self, cone: Cone, terms: dict):
        if not cone.is_pointed or not cone.is_fulldim:
            raise ValueError("ambient cone must be strictly convex and full-dimensional")
        clean = {}
        for exp, coef in terms.items():
            exp = tuple(int(a) for a in exp)
            coef = Fraction(coef)
            if coef == 0:
                continue
            if len(exp) != cone.rank:
                raise ValueError(f"exponent {exp} has wrong rank")
            if any(pairing(r, exp) < 0 for r in cone.rays):
                raise ValueError(
                    f"exponent {exp} lies outside the dual cone of the ambient cone")
            clean[exp] = coef
        self.cone = cone
        self.terms = dict(sorted(clean.items()))

    @staticmethod
    def over_orthant(terms: dict, rank: int | None = None) -> "Series":
        if rank is None:
            rank = len(next(iter(terms)))
        return Series(Cone.orthant(rank), terms)

    @property
    def rank(self) -> int:
        return self.cone.rank

    @property
    def support(self) -> tuple[IntVec, ...]:
        return tuple(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        self._require_nonzero()
        return len(self.terms) == 1

    def __eq__(self, other):
        return (isinstance(other, Series) and self.cone == other.cone
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.cone.key, tuple(self.terms.items())))

    def __repr__(self):
        if self.is_zero:
            return "Series(0)"
        def mono(exp, coef):
            vars_ = "*".join(f"x{i+1}^{e}" for i, e in enumerate(exp) if e) or "1"
            return f"{coef}*{vars_}"
        return "Series(" + " + ".join(mono(e, c) for e, c in self.terms.items()) + ")"

    def _require_nonzero(self):
        if self.is_zero:
            raise ValueError("operation undefined for the zero series")

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exp, coef in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        return Series(self.cone, terms)

    def __neg__(self) -> "Series":
        return Series(self.cone, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        """Exact convolution product; cancelled terms are dropped."""
        self._check_compatible(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = vec_add(e1, e2)
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Series(self.cone, terms)

    def _check_compatible(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if self.cone != other.cone:
            raise ValueError("ambient cones differ")

    # -- weights ----------------------------------------------------------------

    def _interior_weight(self, w) -> IntVec:
        w = integerize(w)
        if not self.cone.interior_contains(w):
            raise ValueError(
                f"weight {tuple(w)} is not in the interior of the ambient cone; "
                "boundary weights are rejected")
        return w

    def min_weight(self, w) -> tuple[int, tuple[IntVec, ...]]:
        """Minimum of the linear form w on the support, with all minimizers.

        Returns (m(w), delta_w), where delta_w is the basis of the support
        relative to w: the designated exponents achieving the minimum.
        Requires w in the interior of the ambient cone.
        """
        self._require_nonzero()
        w = self._interior_weight(w)
        vals = {exp: pairing(w, exp) for exp in self.terms}
        m = min(vals.values())
        return m, tuple(e for e, v in sorted(vals.items()) if v == m)

    def initial_form(self, w) -> "Series":
        """The w-initial form: the sub-series supported on the basis delta_w."""
        _, delta = self.min_weight(w)
        return Series(self.cone, {e: self.terms[e] for e in delta})

    def is_interior_divisor(self) -> bool:
        """Whether Z(f) has no component inside the toric boundary: for every
        edge of the ambient cone some designated exponent pairs to zero."""
        self._require_nonzero()
        for r in self.cone.rays:
            if not any(pairing(r, m) == 0 for m in self.terms):
                return False
        return True


def min_weight(f: Series, w):
    return f.min_weight(w)


def initial_form(f: Series, w):
    return f.initial_form(w)


def is_monomial(f: Series) -> bool:
    return f.is_monomial()


def multiply(f: Series, g: Series) -> Series:
    return f * g


def is_interior_divisor(f: Series) -> bool:
    return f.is_interior_divisor()
