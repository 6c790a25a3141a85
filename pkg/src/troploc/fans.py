"""Finite fans in the weight space: validity, location queries, subdivision.

A fan is kept face-closed and deduplicated at construction, so the fan
axioms reduce to the pairwise common-face condition, which validate_fan
checks exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cones import Cone
from .lattice import primitive
from .linalg import is_zero_vec


@dataclass
class FanViolation:
    kind: str  # "face-closure" | "common-face"
    cones: tuple
    detail: str


@dataclass
class FanReport:
    ok: bool
    violations: list[FanViolation] = field(default_factory=list)


class Fan:
    """A face-closed finite set of strictly convex cones of equal rank."""

    __slots__ = ("rank", "cones", "_by_key")

    def __init__(self, cones, rank: int | None = None, close: bool = True):
        cones = list(cones)
        if rank is None:
            if not cones:
                raise ValueError("rank is required for an empty fan")
            rank = cones[0].rank
        if any(c.rank != rank for c in cones):
            raise ValueError("cones of mixed ambient rank")
        if any(not c.is_pointed for c in cones):
            raise ValueError("fans contain strictly convex cones only")
        by_key = {}
        for c in cones:
            by_key[c.key] = c
            if close:
                for f in c.faces():
                    by_key.setdefault(f.key, f)
        self.rank = rank
        self.cones = tuple(sorted(by_key.values(),
                                  key=lambda c: (c.dim, c.rays)))
        self._by_key = {c.key: c for c in self.cones}

    @property
    def key(self):
        return (self.rank, tuple(c.key for c in self.cones))

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Fan(rank={self.rank}, {len(self.cones)} cones)"

    def __contains__(self, cone: Cone) -> bool:
        return cone.key in self._by_key

    @property
    def maximal_cones(self) -> tuple[Cone, ...]:
        maximal = []
        for c in self.cones:
            if not any(d is not c and _cone_subset(c, d) for d in self.cones):
                maximal.append(c)
        return tuple(maximal)

    @property
    def rays(self) -> tuple:
        return tuple(c.rays[0] for c in self.cones if c.dim == 1)

    # -- queries -------------------------------------------------------------

    def support_contains(self, v) -> bool:
        return any(c.contains(v) for c in self.cones)

    def cone_containing(self, v) -> Cone | None:
        """The unique cone whose relative interior contains v, if any."""
        for c in self.cones:
            if c.relative_interior_contains(v):
                return c
        return None

    def validate(self) -> FanReport:
        violations = []
        for c in self.cones:
            for f in c.faces():
                if f.key not in self._by_key:
                    violations.append(FanViolation(
                        "face-closure", (c,),
                        f"face {f!r} of {c!r} missing from fan"))
        cones = self.cones
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                c1, c2 = cones[i], cones[j]
                inter = c1.intersect(c2)
                if not (c1.is_face(inter) and c2.is_face(inter)):
                    violations.append(FanViolation(
                        "common-face", (c1, c2),
                        f"intersection {inter!r} is not a common face"))
        return FanReport(ok=not violations, violations=violations)

    # -- constructions ---------------------------------------------------------

    def star_subdivide(self, r) -> "Fan":
        """Subdivide along the ray through r: every cone containing r is
        replaced by the joins of r with its faces not containing r."""
        r = tuple(int(a) for a in r)
        if is_zero_vec(r):
            raise ValueError("cannot subdivide along the zero vector")
        r = primitive(r)
        if not self.support_contains(r):
            raise ValueError(f"{r} lies outside the fan support")
        new_cones = []
        for c in self.cones:
            if not c.contains(r):
                new_cones.append(c)
                continue
            for f in c.faces():
                if not f.contains(r):
                    new_cones.append(Cone.from_rays(f.rays + (r,), self.rank))
        return Fan(new_cones, self.rank)

    def common_refinement(self, other: "Fan") -> "Fan":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        pieces = []
        for c1 in self.maximal_cones:
            for c2 in other.maximal_cones:
                pieces.append(c1.intersect(c2))
        return Fan(pieces, self.rank)


def _cone_subset(a: Cone, b: Cone) -> bool:
    return all(b.contains(r) for r in a.rays)


def fan_of_cone(c: Cone) -> Fan:
    """The fan consisting of all faces of a strictly convex cone."""
    return Fan([c], c.rank)
