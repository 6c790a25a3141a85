"""Rational polyhedral cones with exact dual descriptions.

A cone is stored with both a generator description (extreme rays plus a
lineality basis) and a facet description (minimal facet inequalities plus
span equations), both computed eagerly on construction by exact double
description. Generating sets are canonical: extreme rays are primitive
integer vectors sorted lexicographically, the lineality basis is the
integerized reduced echelon basis of the lineality space. Cone equality is
therefore a plain comparison of tuples.

The cones of the weight space N_R handled downstream are strictly convex
(pointed); duals of lower-dimensional cones are not, which is why lineality
is carried along even though fans never contain non-pointed cones.
"""

from __future__ import annotations

from itertools import combinations

from .lattice import primitive
from .linalg import (
    IntVec,
    det,
    dot,
    integerize,
    is_zero_vec,
    kernel_basis,
    minors_gcd,
    rank as mat_rank,
    rref,
    vec_add,
)

DEFAULT_RANK_LIMIT = 8
_rank_limit = DEFAULT_RANK_LIMIT


def set_rank_limit(n: int) -> None:
    """Raise or lower the ambient rank cap for cone construction."""
    global _rank_limit
    if n < 1:
        raise ValueError("rank limit must be positive")
    _rank_limit = n


def _check_rank(n: int) -> None:
    if n < 0:
        raise ValueError("ambient rank must be non-negative")
    if n > _rank_limit:
        raise ValueError(
            f"ambient rank {n} exceeds the configured limit {_rank_limit}; "
            "use set_rank_limit to raise it"
        )


def _extreme_rays(ineqs: list[IntVec], eqs: list[IntVec], n: int):
    """Exact double description: extreme rays and lineality of
    {x : u.x >= 0 for u in ineqs, e.x = 0 for e in eqs} in R^n.

    Rays are found combinatorially: every extreme ray of a pointed cone in
    R^k spans the kernel of some rank k-1 subset of its inequalities, so all
    (k-1)-subsets are enumerated and sign-checked. Exact and complete at the
    small ranks this library targets.
    """
    basis = kernel_basis(eqs, n)  # solution space S of the equations
    k = len(basis)
    if k == 0:
        return [], []
    restricted = [tuple(dot(u, b) for b in basis) for u in ineqs]
    restricted = [u for u in restricted if not is_zero_vec(u)]

    lin1 = kernel_basis(restricted, k)  # lineality inside S
    lines = [integerize(_from_coords(l, basis)) for l in lin1]

    comp = kernel_basis(lin1, k) if lin1 else \
        [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    k2 = len(comp)
    if k2 == 0:
        return [], sorted(lines)
    pointed = [tuple(dot(u, c) for c in comp) for u in restricted]
    pointed = [u for u in pointed if not is_zero_vec(u)]

    rays = set()
    for subset in combinations(range(len(pointed)), k2 - 1):
        rows = [pointed[i] for i in subset]
        ker = kernel_basis(rows, k2)
        if len(ker) != 1:
            continue
        v = ker[0]
        vals = [dot(u, v) for u in pointed]
        if all(a >= 0 for a in vals):
            pass
        elif all(a <= 0 for a in vals):
            v = tuple(-a for a in v)
        else:
            continue
        y = _from_coords(_from_coords(v, comp), basis)
        ray = integerize(y)
        if not is_zero_vec(ray):
            rays.add(ray)
    return sorted(rays), sorted(lines)


def _from_coords(coords, basis):
    """Map coordinates w.r.t. `basis` back to the ambient space."""
    n = len(basis[0])
    out = [0] * n
    for c, b in zip(coords, basis):
        for i in range(n):
            out[i] += c * b[i]
    return tuple(out)


def _canonical_lines(lines: list[IntVec]) -> tuple[IntVec, ...]:
    return tuple(sorted(integerize(r) for r in rref(lines)))


class Cone:
    """A rational polyhedral cone, canonically double-described."""

    __slots__ = ("rank", "rays", "lines", "facet_normals", "span_normals",
                 "_faces", "_dual")

    def __init__(self, rank, rays, lines, facet_normals, span_normals):
        self.rank = rank
        self.rays = tuple(rays)
        self.lines = tuple(lines)
        self.facet_normals = tuple(facet_normals)
        self.span_normals = tuple(span_normals)
        self._faces = None
        self._dual = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_rays(rays, rank: int | None = None) -> "Cone":
        rays = [tuple(int(a) for a in r) for r in rays]
        if rank is None:
            if not rays:
                raise ValueError("rank is required for a cone with no rays")
            rank = len(rays[0])
        _check_rank(rank)
        if any(len(r) != rank for r in rays):
            raise ValueError("ray of wrong rank")
        gens = [r for r in rays if not is_zero_vec(r)]
        facets, spans = _extreme_rays(gens, [], rank)
        crays, clines = _extreme_rays(facets, spans, rank)
        return Cone(rank, crays, _canonical_lines(clines), facets, spans)

    @staticmethod
    def from_inequalities(ineqs, rank: int, equations=()) -> "Cone":
        _check_rank(rank)
        ineqs = [tuple(int(a) for a in u) for u in ineqs]
        eqs = [tuple(int(a) for a in e) for e in equations]
        crays, clines = _extreme_rays(ineqs, eqs, rank)
        clines = _canonical_lines(clines)
        facets, spans = _extreme_rays(list(crays) + [l for l in clines]
                                      + [tuple(-a for a in l) for l in clines],
                                      [], rank)
        return Cone(rank, crays, clines, facets, spans)

    @staticmethod
    def orthant(n: int) -> "Cone":
        e = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        return Cone(n, tuple(e), (), tuple(e), ())

    @staticmethod
    def zero(n: int) -> "Cone":
        _check_rank(n)
        e = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return Cone(n, (), (), (), e)

    # -- canonical identity ------------------------------------------------

    @property
    def key(self):
        return (self.rank, self.rays, self.lines)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        parts = [f"rays={list(self.rays)}"]
        if self.lines:
            parts.append(f"lines={list(self.lines)}")
        return f"Cone(rank={self.rank}, {', '.join(parts)})"

    # -- basic geometry -----------------------------------------------------

    @property
    def dim(self) -> int:
        return self.rank - len(self.span_normals)

    @property
    def is_pointed(self) -> bool:
        return not self.lines

    @property
    def is_fulldim(self) -> bool:
        return not self.span_normals

    @property
    def generators(self) -> tuple[IntVec, ...]:
        """Generating set: extreme rays plus +-(lineality basis)."""
        neg = tuple(tuple(-a for a in l) for l in self.lines)
        return self.rays + self.lines + neg

    def contains(self, v) -> bool:
        if len(v) != self.rank:
            raise ValueError("rank mismatch")
        return (all(dot(e, v) == 0 for e in self.span_normals)
                and all(dot(u, v) >= 0 for u in self.facet_normals))

    def relative_interior_contains(self, v) -> bool:
        if len(v) != self.rank:
            raise ValueError("rank mismatch")
        return (all(dot(e, v) == 0 for e in self.span_normals)
                and all(dot(u, v) > 0 for u in self.facet_normals))

    def interior_contains(self, v) -> bool:
        return self.is_fulldim and self.relative_interior_contains(v)

    def witness(self) -> IntVec:
        """A canonical lattice point of the relative interior: the ray sum."""
        if not self.is_pointed:
            raise ValueError("witness is defined for pointed cones only")
        out = tuple(0 for _ in range(self.rank))
        for r in self.rays:
            out = vec_add(out, r)
        return out

    # -- derived cones ------------------------------------------------------

    def dual(self) -> "Cone":
        """The dual cone {u : u.x >= 0 for all x in this cone}.

        Recomputed from scratch by double description (not read off the
        cached facet data), so dual(dual(c)) == c genuinely exercises the
        elimination both ways.
        """
        if self._dual is None:
            self._dual = Cone.from_inequalities(
                self.generators, self.rank)
        return self._dual

    def intersect(self, other: "Cone") -> "Cone":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return Cone.from_inequalities(
            self.facet_normals + other.facet_normals, self.rank,
            self.span_normals + other.span_normals)

    def face_by_normal(self, u) -> "Cone":
        """The face cut out by a supporting normal u (u >= 0 on the cone)."""
        return Cone.from_inequalities(
            self.facet_normals, self.rank, self.span_normals + (tuple(u),))

    def faces(self) -> tuple["Cone", ...]:
        """All faces, the cone itself and the zero-dimensional face included."""
        if not self.is_pointed:
            raise ValueError("face enumeration requires a strictly convex cone")
        if self._faces is None:
            seen = {self.key: self}
            frontier = [self]
            while frontier:
                f = frontier.pop()
                for u in f.facet_normals:
                    g = f.face_by_normal(u)
                    if g.key not in seen:
                        seen[g.key] = g
                        frontier.append(g)
            self._faces = tuple(sorted(seen.values(),
                                       key=lambda c: (c.dim, c.rays)))
        return self._faces

    def is_face(self, other: "Cone") -> bool:
        """Whether `other` is a face of this cone."""
        return any(other == f for f in self.faces())

    def is_regular(self) -> bool:
        """Whether the primitive generators extend to a basis of the lattice."""
        if not self.is_pointed:
            raise ValueError("regularity is defined for strictly convex cones")
        k = len(self.rays)
        if k != self.dim:
            return False
        if k == 0:
            return True
        return minors_gcd(list(self.rays), k) == 1


def cone_span_basis(c: Cone) -> list[IntVec]:
    """Canonical rational basis of the linear span of a cone, integerized."""
    vecs = list(c.rays) + list(c.lines)
    return [integerize(r) for r in rref(vecs)]


def is_strictly_positive_combination(c: Cone) -> bool:
    """True iff some functional is strictly positive on all nonzero points,
    i.e. the cone is strictly convex with a separating hyperplane."""
    if not c.rays and not c.lines:
        return True
    if c.lines:
        return False
    # sum of facet normals is > 0 on every extreme ray of a pointed cone
    # of full dimension inside its span; verify directly
    total = tuple(0 for _ in range(c.rank))
    for u in c.facet_normals:
        total = vec_add(total, u)
    return all(dot(total, r) > 0 for r in c.rays)
