"""Truncated arcs, induced semivaluations, and Newton-Puiseux expansion.

This module is the verification channel independent of the polyhedral one:
arcs on the toric germ produce weight vectors by t-adic valuation of their
coordinate series, and for plane curves the classical Newton-Puiseux
iteration produces one truncated arc per branch direction. The acceptance
suite plays these weights against the rays computed from Newton polygons.

Two coefficient modes are supported.

* exact (default): coefficients are Fractions, or elements a + b*sqrt(d) of
  a quadratic extension of the rationals (class QuadExt). Root finding is
  limited to the rational root test plus the quadratic formula, which is
  what the square-root extraction needs; an edge polynomial that resists
  both (degree >= 3 irrational, or nested radicals) is reported as an exact
  mode failure and the caller may fall back to float mode.
* float: coefficients are Python complex numbers; roots come from the
  companion matrix (numpy.roots) and residuals are judged against a
  tolerance.

Truncation is bookkept honestly: every truncated series carries the first
order at which its coefficients are no longer trustworthy, arithmetic
propagates that bound, and comparisons at or beyond it are reported as
indeterminate rather than silently trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np

from .cones import Cone
from .lattice import primitive
from .linalg import IntVec
from .newton import CompactFace, newton_polyhedron
from .series import Series


class ExactRootError(ValueError):
    """Raised when exact mode cannot represent a root."""


class PuiseuxError(ValueError):
    pass


# -- quadratic extension numbers ------------------------------------------------


class QuadExt:
    """An element a + b*sqrt(d) of a real or imaginary quadratic field.

    a, b, d are Fractions with d not a square (b != 0 is kept normalized:
    arithmetic that cancels the radical returns a plain Fraction). Elements
    of different extensions cannot be mixed.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = Fraction(d)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ExactRootError(
                    f"cannot mix sqrt({self.d}) with sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    @staticmethod
    def _normalize(a, b, d):
        return Fraction(a) if b == 0 else QuadExt(a, b, d)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._normalize(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._normalize(self.a * o.a + self.b * o.b * self.d,
                               self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic extension")
        return self._normalize(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __complex__(self):
        return complex(self.a) + complex(self.b) * complex(self.d) ** 0.5

    def __bool__(self):
        return self.a != 0 or self.b != 0


def sqrt_exact(x):
    """Exact square root of a rational: a Fraction if x is a perfect square,
    otherwise b*sqrt(d) with d a squarefree integer (so that compatible
    radicals from different edges land in the same extension)."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    if x > 0:
        pn, pd = isqrt(x.numerator), isqrt(x.denominator)
        if pn * pn == x.numerator and pd * pd == x.denominator:
            return Fraction(pn, pd)
    # sqrt(p/q) = sqrt(p*q)/q; strip square factors from the radicand
    rad = x.numerator * x.denominator
    sign = -1 if rad < 0 else 1
    rad = abs(rad)
    square = 1
    k = 2
    while k * k <= rad:
        while rad % (k * k) == 0:
            rad //= k * k
            square *= k
        k += 1
    return QuadExt(0, Fraction(square, x.denominator), sign * rad)


def _inv_coeff(c):
    if isinstance(c, QuadExt):
        return c.inverse()
    if isinstance(c, complex):
        return 1.0 / c
    return 1 / Fraction(c)


# -- truncated univariate series --------------------------------------------------


class TSeries:
    """A univariate (Laurent) series known up to an order bound.

    terms maps t-exponents to coefficients; valid_to is the first order at
    which coefficients are unknown (None: the series is known exactly, all
    unlisted coefficients vanish).
    """

    __slots__ = ("terms", "valid_to")

    def __init__(self, terms: dict, valid_to: int | None = None):
        clean = {}
        for o, c in terms.items():
            o = int(o)
            if valid_to is not None and o >= valid_to:
                continue
            if _is_exact_zero(c):
                continue
            clean[o] = c
        self.terms = dict(sorted(clean.items()))
        self.valid_to = valid_to

    def __repr__(self):
        body = " + ".join(f"{c}*t^{o}" for o, c in self.terms.items()) or "0"
        tail = "" if self.valid_to is None else f" + O(t^{self.valid_to})"
        return f"TSeries({body}{tail})"

    def __eq__(self, other):
        return (isinstance(other, TSeries) and self.terms == other.terms
                and self.valid_to == other.valid_to)

    def order(self, tol: float = 0.0) -> int | None:
        """Order of the lowest significant term below the validity bound;
        None if no such term exists."""
        for o, c in self.terms.items():
            if tol and isinstance(c, complex) and abs(c) <= tol:
                continue
            return o
        return None

    def is_exactly_zero(self) -> bool:
        return self.valid_to is None and not self.terms

    def _lower_bound(self) -> int | None:
        """Smallest order at which a nonzero coefficient could exist."""
        o = self.order()
        if o is not None:
            return o if self.valid_to is None else min(o, self.valid_to)
        return self.valid_to  # None: exactly zero

    def __add__(self, other: "TSeries") -> "TSeries":
        v = _min_valid(self.valid_to, other.valid_to)
        terms = dict(self.terms)
        for o, c in other.terms.items():
            terms[o] = terms[o] + c if o in terms else c
        return TSeries(terms, v)

    def __neg__(self):
        return TSeries({o: -c for o, c in self.terms.items()}, self.valid_to)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TSeries":
        if _is_exact_zero(c):
            return TSeries({}, self.valid_to)
        return TSeries({o: c * co for o, co in self.terms.items()}, self.valid_to)

    def shift(self, k: int) -> "TSeries":
        v = None if self.valid_to is None else self.valid_to + k
        return TSeries({o + k: c for o, c in self.terms.items()}, v)

    def __mul__(self, other: "TSeries") -> "TSeries":
        la, lb = self._lower_bound(), other._lower_bound()
        if la is None or lb is None:  # one factor is exactly zero
            v = None
            if la is None and lb is not None and other.valid_to is not None:
                v = None  # exact zero times anything is exact zero
            return TSeries({}, v)
        v = _min_valid(
            None if other.valid_to is None else la + other.valid_to,
            None if self.valid_to is None else lb + self.valid_to)
        terms: dict = {}
        for o1, c1 in self.terms.items():
            for o2, c2 in other.terms.items():
                o = o1 + o2
                if v is not None and o >= v:
                    continue
                terms[o] = terms[o] + c1 * c2 if o in terms else c1 * c2
        return TSeries(terms, v)

    def __pow__(self, k: int) -> "TSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = TSeries({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "TSeries":
        o = self.order()
        if o is None:
            raise ZeroDivisionError("cannot invert a series with no known terms")
        lead = self.terms[o]
        rel_valid = None if self.valid_to is None else self.valid_to - o
        unit = {e - o: c for e, c in self.terms.items()}
        bound = rel_valid if rel_valid is not None else _INVERSE_EXACT_ORDER
        inv_lead = _inv_coeff(lead)
        out = {0: inv_lead}
        for k in range(1, bound):
            acc = None
            for j in range(0, k):
                c = unit.get(k - j)
                if c is None or j not in out:
                    continue
                term = c * out[j]
                acc = term if acc is None else acc + term
            if acc is not None:
                out[k] = -inv_lead * acc
        if rel_valid is None and all(e <= 0 for e in unit) and len(unit) == 1:
            v = None  # exact monomial inverts exactly
        else:
            v = (bound if rel_valid is not None else _INVERSE_EXACT_ORDER) - o
        return TSeries({e - o: c for e, c in out.items()}, v)


_INVERSE_EXACT_ORDER = 64  # truncation applied when inverting an exact non-monomial


def _is_exact_zero(c) -> bool:
    if isinstance(c, complex):
        return c == 0
    if isinstance(c, QuadExt):
        return not bool(c)
    return c == 0


def _min_valid(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def monomial_arc_series(order: int, coeff=1) -> TSeries:
    return TSeries({order: coeff})


# -- truncated arcs ------------------------------------------------------------------


class TruncatedArc:
    """A tuple of truncated coordinate series along an interior arc."""

    def __init__(self, cone: Cone, coords, mode: str = "exact", check: bool = True):
        if mode not in ("exact", "float"):
            raise ValueError("mode must be 'exact' or 'float'")
        coords = tuple(c if isinstance(c, TSeries) else TSeries(dict(c))
                       for c in coords)
        if len(coords) != cone.rank:
            raise ValueError("one coordinate series per ambient rank is required")
        self.cone = cone
        self.coords = coords
        self.mode = mode
        if check:
            t = self.truncation_order
            if t is not None and t < 1:
                raise ValueError("truncation order must be >= 1")

    @property
    def truncation_order(self) -> int | None:
        """Order up to which all coordinates are trustworthy (None: exact)."""
        out = None
        for c in self.coords:
            out = _min_valid(out, c.valid_to)
        return out

    def __repr__(self):
        return f"TruncatedArc({', '.join(map(repr, self.coords))})"


def arc_weight(arc: TruncatedArc, tol: float = 1e-10) -> IntVec:
    """The weight vector of an interior arc: t-adic valuations of the
    coordinate monomials, which on coordinates is the tuple of initial
    exponents. Fails if a coordinate has no significant term below its
    validity bound, or if the resulting vector is not interior to the
    ambient cone (the arc then fails the interiority invariant)."""
    w = []
    for i, c in enumerate(arc.coords):
        o = c.order(tol if arc.mode == "float" else 0.0)
        if o is None:
            raise ValueError(
                f"coordinate {i + 1} vanishes up to its validity bound; "
                "the arc weight is not determined")
        w.append(o)
    w = tuple(w)
    if not arc.cone.interior_contains(w):
        raise ValueError(f"weight {w} is not interior to the ambient cone")
    return w


def evaluate_on_arc(f: Series, arc: TruncatedArc) -> TSeries:
    """Substitute the arc into f, with truncation bookkeeping: the returned
    series carries the first order at which truncation of the coordinates
    makes its coefficients untrustworthy."""
    if f.rank != arc.cone.rank:
        raise ValueError("rank mismatch")
    out = TSeries({}, None)
    to_float = arc.mode == "float"
    for exp, coef in f.terms.items():
        term = TSeries({0: complex(coef) if to_float else coef})
        for x, e in zip(arc.coords, exp):
            if e:
                term = term * (x ** e)
        out = out + term
    return out


@dataclass(frozen=True)
class Semivalue:
    """A t-adic value: finite, or infinite up to the reported threshold
    (threshold None means exactly infinite)."""
    value: int | None
    threshold: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __repr__(self):
        if self.is_finite:
            return f"Semivalue({self.value})"
        if self.threshold is None:
            return "Semivalue(inf)"
        return f"Semivalue(inf up to t^{self.threshold})"


def semivaluation_on(arc: TruncatedArc, elements, tol: float = 1e-10) -> list[Semivalue]:
    """The semivaluation induced by the arc, on each element: t-adic order of
    the evaluation, flagged infinite-up-to-truncation when no significant
    term appears below the validity threshold."""
    out = []
    for f in elements:
        s = evaluate_on_arc(f, arc)
        o = s.order(tol if arc.mode == "float" else 0.0)
        if o is not None:
            out.append(Semivalue(o))
        else:
            out.append(Semivalue(None, s.valid_to))
    return out


# -- exact and float root finding ----------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def _poly_eval(coeffs, x):
    """coeffs[k] is the Y^k coefficient."""
    out = None
    for c in reversed(coeffs):
        out = c if out is None else out * x + c
    return out


def _deflate(coeffs, root):
    """Synthetic division of the polynomial by (Y - root)."""
    out = [None] * (len(coeffs) - 1)
    carry = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        out[k] = carry
        carry = coeffs[k] + carry * root
    return out


def _find_rational_root(poly: list[Fraction]) -> Fraction | None:
    """One rational root of a polynomial with nonzero constant term, by the
    rational root test on its integer rescaling."""
    den = math.lcm(*[c.denominator for c in poly])
    ints = [int(c * den) for c in poly]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _poly_eval(ints, cand) == 0:
                    return cand
    return None


def _roots_exact(coeffs) -> tuple[list[tuple], list]:
    """Nonzero roots of a polynomial with Fraction/QuadExt coefficients, with
    multiplicities, as far as rational roots plus one layer of square roots
    reach. Returns (roots, remainder) where remainder is the unsolved factor
    (empty when fully solved); roots are (value, multiplicity) pairs."""
    coeffs = list(coeffs)
    while coeffs and _is_exact_zero(coeffs[-1]):
        coeffs.pop()
    if len(coeffs) <= 1:
        return [], []
    roots: list[tuple] = []
    if all(isinstance(c, (int, Fraction)) for c in coeffs):
        poly = [Fraction(c) for c in coeffs]
        while len(poly) > 1:
            root = _find_rational_root(poly)
            if root is None:
                break
            mult = 0
            while len(poly) > 1 and _poly_eval(poly, root) == 0:
                poly = _deflate(poly, root)
                mult += 1
            roots.append((root, mult))
        coeffs = poly
    if len(coeffs) == 3 and all(isinstance(x, (int, Fraction)) for x in coeffs):
        c, b, a = (Fraction(x) for x in coeffs)
        s = sqrt_exact(b * b - 4 * a * c)
        r1 = (-b + s) / (2 * a)
        r2 = (-b - s) / (2 * a)
        if r1 == r2:
            roots.append((r1, 2))
        else:
            roots.extend([(r1, 1), (r2, 1)])
        return roots, []
    if len(coeffs) == 2:
        c0, c1 = coeffs
        if isinstance(c0, QuadExt) or isinstance(c1, QuadExt):
            root = (-1 * _as_quad(c0, c1)) * _inv_coeff(c1)
        else:
            root = -Fraction(c0) / Fraction(c1)
        roots.append((root, 1))
        return roots, []
    if len(coeffs) <= 1:
        return roots, []
    return roots, coeffs


def _as_quad(c0, c1):
    """Coerce c0 into the quadratic field of c1 (or vice versa) for division."""
    if isinstance(c0, QuadExt):
        return c0
    d = c1.d if isinstance(c1, QuadExt) else None
    return QuadExt(Fraction(c0), 0, d) if d is not None else Fraction(c0)


def _roots_float(coeffs, tol: float) -> list[tuple[complex, int]]:
    """Nonzero complex roots with multiplicities from the companion matrix,
    clustered to merge numerically coincident roots."""
    cs = [complex(c) for c in coeffs]
    while cs and abs(cs[-1]) == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    arr = np.roots(list(reversed(cs)))
    roots = sorted((complex(r) for r in arr), key=lambda z: (round(z.real, 8), round(z.imag, 8)))
    clusters: list[list[complex]] = []
    for r in roots:
        for cl in clusters:
            if abs(r - cl[0]) <= 1e-6 * max(1.0, abs(cl[0])):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = []
    for cl in clusters:
        center = sum(cl) / len(cl)
        if abs(center) > max(tol, 1e-12):
            out.append((center, len(cl)))
    return out


# -- Newton steps and the Puiseux iteration ----------------------------------------


@dataclass
class NewtonStepResult:
    weight: IntVec                 # primitive inward normal (p, q) of the edge
    pairs: list                    # (x_p, y_q) initial coefficient pairs, x_p = 1
    multiplicities: list[int]
    missed: int                    # roots exact mode could not represent
    edge_polynomial: list          # Y^k coefficients of the restricted polynomial


def _edge_polynomial(support_points, terms, q_exp_index=1):
    betas = [m[q_exp_index] for m in support_points]
    bmin, bmax = min(betas), max(betas)
    coeffs = [0] * (bmax - bmin + 1)
    for m in support_points:
        coeffs[m[q_exp_index] - bmin] = terms[m]
    return coeffs


def newton_step(f: Series, edge: CompactFace, mode: str = "exact",
                tol: float = 1e-10) -> NewtonStepResult:
    """Solve one Newton step of f along a compact edge of its polygon.

    Normalizes x_p = 1 and finds the nonzero roots y_q of the restricted
    edge polynomial. In exact mode, roots beyond the reach of the rational
    root test and the quadratic formula are counted in `missed` rather than
    invented; float mode returns all complex roots.
    """
    if f.rank != 2:
        raise ValueError("newton_step expects a series over the 2-orthant")
    if edge.dim != 1:
        raise ValueError("a compact edge (1-dimensional bounded face) is required")
    weight = edge.dual_cone.rays[0]
    coeffs = _edge_polynomial(edge.support_points, f.terms)
    if mode == "float":
        rts = _roots_float(coeffs, tol)
        return NewtonStepResult(weight, [(1.0, r) for r, _ in rts],
                                [m for _, m in rts], 0, coeffs)
    roots, remainder = _roots_exact(coeffs)
    missed = max(len(remainder) - 1, 0)
    return NewtonStepResult(weight, [(Fraction(1), r) for r, _ in roots],
                            [m for _, m in roots], missed, coeffs)


@dataclass
class PuiseuxFailure:
    level: int
    weight: IntVec
    polynomial: list
    reason: str


@dataclass
class PuiseuxResult:
    arcs: list[TruncatedArc]
    failures: list[PuiseuxFailure] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.failures


@dataclass
class _Branch:
    scale: int                 # x = t^scale
    y_terms: dict              # y(t) = sum coeff * t^order
    y_valid: int | None        # first untrusted order of y (None: exact)


def _compact_edges_2d(support):
    """Compact edges of the local Newton polygon of a finite support in the
    2-orthant: segments of the lower hull running down-right. Returns
    (p, q, m, points) per edge with (p,q) the primitive inward normal and m
    the minimum value."""
    pts = sorted(support)
    lower: list[tuple[int, int]] = []
    for pt in pts:
        while len(lower) >= 2:
            (x1, y1), (x2, y2) = lower[-2], lower[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                lower.pop()
            else:
                break
        lower.append(pt)
    edges = []
    for (a1, b1), (a2, b2) in zip(lower, lower[1:]):
        if a2 > a1 and b2 < b1:
            p, q = primitive((b1 - b2, a2 - a1))
            m = p * a1 + q * b1
            on_edge = sorted(m2 for m2 in support if p * m2[0] + q * m2[1] == m)
            edges.append((p, q, m, on_edge))
    return edges


def _clean_terms(terms: dict, mode: str, tol: float) -> dict:
    if mode != "float":
        return {e: c for e, c in terms.items() if not _is_exact_zero(c)}
    if not terms:
        return {}
    top = max(abs(c) for c in terms.values())
    cut = tol * max(1.0, top)
    return {e: c for e, c in terms.items() if abs(c) > cut}


def _transform(terms: dict, p: int, q: int, m: int, c, mode: str, tol: float) -> dict:
    """f(x^p, x^q (c + y)) / x^m as an exponent dict."""
    out: dict = {}
    for (al, be), co in terms.items():
        base = p * al + q * be - m
        for j in range(be + 1):
            coeff = co * comb(be, j) * (c ** (be - j))
            key = (base, j)
            out[key] = out[key] + coeff if key in out else coeff
    return _clean_terms(out, mode, tol)


def _expand(terms: dict, needed: int, level: int, mode: str, tol: float,
            max_level: int, failures: list) -> list[_Branch]:
    if level > max_level:
        raise PuiseuxError(
            f"Newton-Puiseux recursion exceeded the depth cap {max_level}; "
            "the input may not be square-free, or the cap needs raising")
    branches: list[_Branch] = []
    if not terms:
        return branches
    k = min(be for _, be in terms)
    if k > 0:
        branches.append(_Branch(1, {}, None))  # y = 0 divides exactly
        terms = {(al, be - k): co for (al, be), co in terms.items()}
    if (0, 0) in terms:
        return branches  # unit factor: no further branches through the origin
    if needed <= 0:
        branches.append(_Branch(1, {}, 1))  # refinement budget exhausted
        return branches
    for p, q, m, on_edge in _compact_edges_2d(terms.keys()):
        coeffs = _edge_polynomial(on_edge, terms)
        # factor out the zero root: handled by the y-division above at the
        # next level; solve the edge polynomial for nonzero roots here
        if mode == "float":
            roots = _roots_float(coeffs, tol)
        else:
            try:
                roots, remainder = _roots_exact(coeffs)
            except ExactRootError as exc:
                failures.append(PuiseuxFailure(level, (p, q), coeffs, str(exc)))
                continue
            if remainder:
                failures.append(PuiseuxFailure(
                    level, (p, q), coeffs,
                    f"{max(len(remainder) - 1, 0)} root(s) of the edge polynomial "
                    "are not expressible with rational arithmetic plus one "
                    "square root; rerun in float mode"))
        for root, _mult in roots:
            try:
                t1 = _transform(terms, p, q, m, root, mode, tol)
                subs = _expand(t1, needed - m, level + 1, mode, tol,
                               max_level, failures)
            except ExactRootError as exc:
                failures.append(PuiseuxFailure(level, (p, q), coeffs, str(exc)))
                continue
            for b in subs:
                a = p * b.scale
                y = {q * b.scale: root}
                for o, co in b.y_terms.items():
                    y[q * b.scale + o] = co
                valid = None if b.y_valid is None else q * b.scale + b.y_valid
                branches.append(_Branch(a, y, valid))
    return branches


def puiseux_expand(f: Series, depth: int, mode: str = "exact",
                   tol: float = 1e-10, max_level: int = 16) -> PuiseuxResult:
    """Newton-Puiseux iteration for a plane series: one truncated arc per
    discovered branch direction, refined until the t-adic order of f along
    each arc is guaranteed to exceed `depth`.

    The input is assumed square-free (not verified); repeated factors make
    the iteration run into the level cap. Exact mode reports branches whose
    edge polynomials it cannot solve instead of inventing roots; float mode
    solves everything numerically at tolerance `tol`.
    """
    if f.rank != 2:
        raise ValueError("puiseux_expand expects a series over the 2-orthant")
    if not f.is_interior_divisor():
        raise ValueError("the series must define an interior divisor")
    failures: list[PuiseuxFailure] = []
    branches = _expand(dict(f.terms) if mode != "float"
                       else {e: complex(c) for e, c in f.terms.items()},
                       depth, 0, mode, tol, max_level, failures)
    arcs = []
    for b in branches:
        x = TSeries({b.scale: 1.0 + 0.0j if mode == "float" else Fraction(1)})
        y = TSeries(b.y_terms, b.y_valid)
        arcs.append(TruncatedArc(Cone.orthant(2), (x, y), mode=mode, check=False))
    arcs.sort(key=lambda a: (a.coords[0].order() or 0, a.coords[1].order() or 0,
                             repr(a.coords[1])))
    return PuiseuxResult(arcs=arcs, failures=failures)
