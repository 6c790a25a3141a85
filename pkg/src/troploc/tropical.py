"""Local tropicalization of interior subtoric germs.

Principal divisors are tropicalized through their Newton fans (the cones
dual to compact edges of the Newton polyhedron); ideals given by a
generating family get a generator-wise upper bound (the intersection of the
generators' divisor tropicalizations, a superset of the true
tropicalization of the germ); the toric germ itself tropicalizes to its
weight cone, with strata at infinity described by the extended cone.

Two tropicalizations are compared by mutual support containment on witness
points of their common refinement, never by fan equality: the support is
canonical, a fan structure on it is not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .cones import Cone
from .fans import Fan
from .lattice import primitive
from .linalg import (
    IntVec,
    integer_kernel,
    integerize,
    invert_unimodular,
    is_zero_vec,
    kernel_basis,
    unimodular_extension,
    vec_add,
)
from .newton import newton_fan
from .series import Series


@dataclass
class Tropicalization:
    """A fan structure whose support is the local tropicalization.

    labels maps each cone key to one support sublist per generator: the
    basis delta_w of the generator at any relative-interior witness w of the
    cone (recorded for cones meeting the interior of the ambient cone).
    """
    ambient_cone: Cone
    fan: Fan
    generators: tuple[Series, ...] = ()
    labels: dict = field(default_factory=dict)
    dim_hint: int | None = None

    def support_contains(self, v) -> bool:
        return self.fan.support_contains(v)

    def maximal_cones(self) -> tuple[Cone, ...]:
        return self.fan.maximal_cones

    def rays(self):
        return self.fan.rays

    def same_support(self, other: "Tropicalization") -> bool:
        """Exact mutual support containment."""
        if self.ambient_cone != other.ambient_cone:
            return False
        return support_subset(self, other) and support_subset(other, self)


def _splitting_normals(fan: Fan):
    normals = set()
    for d in fan.maximal_cones:
        for u in d.facet_normals + d.span_normals:
            u = primitive(u)
            if u < tuple(-a for a in u):
                u = tuple(-a for a in u)
            normals.add(u)
    return sorted(normals)


def _split_by(c: Cone, normals) -> list[Cone]:
    """Pieces of c refined by the hyperplanes u=0; the pieces cover c and the
    relative interior of each piece lies on one weak side of every u."""
    if not normals:
        return [c]
    u, rest = normals[0], normals[1:]
    plus = Cone.from_inequalities(c.facet_normals + (tuple(u),), c.rank,
                                  c.span_normals)
    minus = Cone.from_inequalities(
        c.facet_normals + (tuple(-a for a in u),), c.rank, c.span_normals)
    pieces = []
    for side in (plus, minus):
        if side.dim == c.dim:
            pieces.append(side)
    if len(pieces) < 2:
        return _split_by(c, rest)
    return [p for side in pieces for p in _split_by(side, rest)]


def support_subset(a: Tropicalization, b: Tropicalization) -> bool:
    """Whether the support of a is contained in the support of b.

    Each maximal cone of a is refined by the facet and span hyperplanes of
    b's maximal cones; a refined piece then lies in a cone of b if and only
    if its relative-interior witness does, so witness tests decide exactly.
    """
    normals = _splitting_normals(b.fan)
    for c in a.fan.maximal_cones:
        for piece in _split_by(c, normals):
            if not b.support_contains(piece.witness()):
                return False
    return True


def troploc_divisor(f: Series) -> Tropicalization:
    """Local tropicalization of the principal divisor Z(f): the subfan of the
    Newton fan consisting of all faces of the cones dual to compact edges of
    the Newton polyhedron. Requires f interior (no component of Z(f) inside
    the toric boundary)."""
    if not f.is_interior_divisor():
        raise ValueError(
            "series defines a divisor with components in the toric boundary; "
            "extended tropicalization of non-interior germs is out of scope")
    sigma = f.cone
    nfan = newton_fan(f)
    keep = []
    for c in nfan.fan.cones:
        if c.dim != sigma.rank - 1:
            continue
        if sigma.interior_contains(c.witness()):
            keep.append(c)
    fan = Fan(keep, sigma.rank) if keep else Fan([], sigma.rank, close=False)
    labels = {c.key: (nfan.labels[c.key],) for c in fan.cones}
    return Tropicalization(ambient_cone=sigma, fan=fan,
                           generators=(f,), labels=labels, dim_hint=sigma.rank - 1)


def troploc_plane_curve(f: Series) -> tuple[IntVec, ...]:
    """Rays of the local tropicalization of a plane curve germ: one primitive
    ray generator per compact edge of the Newton polygon."""
    if f.rank != 2:
        raise ValueError("plane-curve tropicalization requires ambient rank 2")
    trop = troploc_divisor(f)
    return tuple(sorted(c.rays[0] for c in trop.maximal_cones() if c.dim == 1))


def is_initial_weight(generators, w) -> bool:
    """Whether no generator has a monomial w-initial form, for w interior.

    Exact for a single generator by the monomial criterion; for two or more
    generators it is a necessary condition only (the initial ideal may
    contain monomials that are not initial forms of the given generators).
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    w = integerize(w)
    for g in generators:
        if g.initial_form(w).is_monomial():
            return False
    return True


def troploc_ideal_upper(generators) -> Tropicalization:
    """Generator-wise upper bound for the local tropicalization of the germ
    of the ideal spanned by `generators`.

    Computes the common refinement of the generators' Newton fans, keeps the
    cones whose relative-interior witness is an initial weight vector for
    every generator, and face-closes. The support equals the intersection of
    the generators' divisor tropicalizations, which contains (and in general
    strictly contains) the local tropicalization of the germ: passing to a
    generating family loses the non-generators of the ideal.
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    sigma = generators[0].cone
    for g in generators:
        if g.cone != sigma:
            raise ValueError("generators live over different ambient cones")
        if not g.is_interior_divisor():
            raise ValueError("non-interior generator")
    fan = newton_fan(generators[0]).fan
    for g in generators[1:]:
        fan = fan.common_refinement(newton_fan(g).fan)
    keep = []
    for c in fan.cones:
        w = c.witness()
        if not sigma.interior_contains(w):
            continue
        if is_initial_weight(generators, w):
            keep.append(c)
    out = Fan(keep, sigma.rank) if keep else Fan([], sigma.rank, close=False)
    labels = {}
    for c in out.cones:
        w = c.witness()
        if sigma.interior_contains(w):
            labels[c.key] = tuple(g.min_weight(w)[1] for g in generators)
    return Tropicalization(ambient_cone=sigma, fan=out,
                           generators=generators, labels=labels)


def troploc_toric_germ(sigma: Cone) -> Tropicalization:
    """The local tropicalization of the toric germ itself: sigma."""
    if not sigma.is_pointed or not sigma.is_fulldim or sigma.dim == 0:
        raise ValueError("expected a strictly convex full-dimensional cone")
    return Tropicalization(ambient_cone=sigma, fan=Fan([sigma]),
                           dim_hint=sigma.rank)


# -- structure checking ----------------------------------------------------


@dataclass
class StructureIssue:
    check: str  # "dimension" | "interior" | "constancy"
    cone: Cone
    detail: str


@dataclass
class StructureReport:
    ok: bool
    expected_dim: int
    issues: list[StructureIssue] = field(default_factory=list)


def _random_relint_point(c: Cone, rng: Random) -> IntVec:
    v = tuple(0 for _ in range(c.rank))
    for r in c.rays:
        k = rng.randint(1, 7)
        v = vec_add(v, tuple(k * a for a in r))
    return v


def check_structure(trop: Tropicalization, expected_dim: int,
                    seed: int = 0) -> StructureReport:
    """Check the fan structure of a tropicalization against the structure
    theorem for irreducible interior germs: every maximal cone has the
    expected dimension, meets the interior of the ambient cone, and carries
    constant initial data (identical bases delta_w per generator at two
    random rational interior points)."""
    rng = Random(seed)
    issues = []
    sigma = trop.ambient_cone
    for c in trop.maximal_cones():
        if c.dim != expected_dim:
            issues.append(StructureIssue(
                "dimension", c, f"dim {c.dim} != expected {expected_dim}"))
        w = c.witness()
        if not sigma.interior_contains(w):
            issues.append(StructureIssue(
                "interior", c, "relative interior misses the interior of sigma"))
            continue
        if not trop.generators:
            continue
        w1 = _random_relint_point(c, rng)
        w2 = _random_relint_point(c, rng)
        while w2 == w1:
            w2 = _random_relint_point(c, rng)
        for g in trop.generators:
            d1 = g.min_weight(w1)[1]
            d2 = g.min_weight(w2)[1]
            if d1 != d2:
                issues.append(StructureIssue(
                    "constancy", c,
                    f"initial data differ at {w1} and {w2}: {d1} vs {d2}"))
            recorded = trop.labels.get(c.key)
            if recorded is not None:
                idx = trop.generators.index(g)
                if recorded[idx] != d1:
                    issues.append(StructureIssue(
                        "constancy", c,
                        f"recorded label {recorded[idx]} != computed {d1}"))
    return StructureReport(ok=not issues, expected_dim=expected_dim,
                           issues=issues)


# -- extended cone -----------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    face: Cone
    quotient_rank: int
    image_cone: Cone             # sigma_tau, in quotient coordinates
    projection: tuple[IntVec, ...]  # rows of the quotient map N -> N/N_tau


@dataclass(frozen=True)
class ExtendedCone:
    base_cone: Cone
    strata: tuple[Stratum, ...]


def extended_cone(sigma: Cone) -> ExtendedCone:
    """The extended cone of sigma: for every face tau, the saturated
    sublattice N_tau = N intersect R*tau, the induced quotient map onto the
    lattice N/N_tau, and the image of sigma in the quotient."""
    if not sigma.is_pointed or not sigma.is_fulldim:
        raise ValueError("expected a strictly convex full-dimensional cone")
    n = sigma.rank
    strata = []
    for tau in sigma.faces():
        span_perp = [integerize(b) for b in kernel_basis(list(tau.rays), n)]
        ker = integer_kernel(span_perp, n)          # Z-basis of N_tau
        full = unimodular_extension(ker, n)         # extend to basis of Z^n
        inv = invert_unimodular(full)
        d = len(ker)
        # quotient coordinates = last n-d coordinates in the extended basis
        proj = tuple(tuple(inv[i][j] for i in range(n)) for j in range(d, n))
        images = [tuple(sum(p[i] * r[i] for i in range(n)) for p in proj)
                  for r in sigma.rays]
        images = [v for v in images if not is_zero_vec(v)]
        image = Cone.from_rays(images, n - d)
        strata.append(Stratum(face=tau, quotient_rank=n - d,
                              image_cone=image, projection=proj))
    strata.sort(key=lambda s: (s.face.dim, s.face.rays))
    return ExtendedCone(base_cone=sigma, strata=tuple(strata))


def divisor_tropicalization_box_points(f: Series, box: int):
    """Brute-force oracle: all interior lattice points w with coordinates up
    to `box` passing the initial-weight test for f. Used to cross-validate
    the Newton-fan route point by point."""
    sigma = f.cone
    n = sigma.rank
    pts = []

    def rec(prefix):
        if len(prefix) == n:
            if sigma.interior_contains(prefix):
                if is_initial_weight((f,), prefix):
                    pts.append(tuple(prefix))
            return
        for a in range(0, box + 1):
            rec(prefix + [a])

    rec([])
    return pts
