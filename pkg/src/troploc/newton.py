"""Newton polyhedra and their dual fans.

The Newton polyhedron of a series f with ambient cone sigma is the convex
hull of the union of translates exp + sigma-dual over the designated
support. Its vertices and the dual fan are computed from the lifted cone

    C = {(w, t) : w in sigma, t <= w.m for every designated exponent m}

by double description: the facets of C with negative last coordinate are
exactly (m, -1) for the vertices m of the polyhedron, and the facet
structure of C projects to the domains of linearity of the support
function, i.e. the Newton fan.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import Cone
from .fans import Fan
from .lattice import pairing
from .linalg import IntVec, vec_sub
from .series import Series


@dataclass(frozen=True)
class CompactFace:
    """A bounded face of a Newton polyhedron.

    `support_points` is the full list of designated support points on the
    face (the basis delta_w for any w interior to the dual cone); `vertices`
    is its subset of polyhedron vertices.
    """
    dim: int
    vertices: tuple[IntVec, ...]
    support_points: tuple[IntVec, ...]
    dual_cone: Cone


@dataclass(frozen=True)
class NewtonPolyhedron:
    ambient_cone: Cone                    # sigma, in the weight space
    recession_cone: Cone                  # sigma-dual, in the exponent space
    vertices: tuple[IntVec, ...]
    compact_faces: tuple[CompactFace, ...]

    def compact_edges(self) -> tuple[CompactFace, ...]:
        return tuple(f for f in self.compact_faces if f.dim == 1)

    def same_polyhedron(self, other: "NewtonPolyhedron") -> bool:
        """Exact equality: equal recession cones and equal vertex sets."""
        return (self.recession_cone == other.recession_cone
                and self.vertices == other.vertices)


@dataclass(frozen=True)
class NewtonFan:
    """The Newton fan with its face labels.

    labels maps each cone's key to the tuple of designated support points of
    the dual face of the polyhedron (the basis delta_w for w in the cone's
    relative interior, computed on the designated support).
    """
    fan: Fan
    labels: dict

    def label(self, cone: Cone) -> tuple[IntVec, ...]:
        return self.labels[cone.key]


def _polyhedron_vertices(support, sigma: Cone) -> tuple[IntVec, ...]:
    n = sigma.rank
    lifted_ineqs = [u + (0,) for u in sigma.facet_normals]
    lifted_ineqs += [m + (-1,) for m in support]
    lifted = Cone.from_inequalities(lifted_ineqs, n + 1)
    verts = [u[:-1] for u in lifted.facet_normals if u[-1] < 0]
    return tuple(sorted(verts))


def _delta(support, w) -> tuple[IntVec, ...]:
    vals = {m: pairing(w, m) for m in support}
    mv = min(vals.values())
    return tuple(m for m in sorted(support) if vals[m] == mv)


def _newton_data(support, sigma: Cone):
    """Vertices, labeled fan and compact faces for a designated support."""
    vertices = _polyhedron_vertices(support, sigma)
    maximal = []
    for v in vertices:
        ineqs = list(sigma.facet_normals)
        ineqs += [vec_sub(m, v) for m in vertices if m != v]
        maximal.append(Cone.from_inequalities(ineqs, sigma.rank))
    fan = Fan(maximal, sigma.rank)
    labels = {}
    compact = []
    for c in fan.cones:
        if c.dim == 0:
            labels[c.key] = tuple(sorted(support))
            continue
        w = c.witness()
        delta = _delta(support, w)
        labels[c.key] = delta
        if sigma.interior_contains(w):
            face_verts = tuple(m for m in delta if m in vertices)
            compact.append(CompactFace(
                dim=sigma.rank - c.dim,
                vertices=face_verts,
                support_points=delta,
                dual_cone=c,
            ))
    compact.sort(key=lambda f: (f.dim, f.vertices))
    return vertices, NewtonFan(fan, labels), tuple(compact)


def newton_polyhedron(f: Series) -> NewtonPolyhedron:
    """The Newton polyhedron of f: conv(supp f + sigma-dual)."""
    f._require_nonzero()
    vertices, _, compact = _newton_data(f.support, f.cone)
    return NewtonPolyhedron(
        ambient_cone=f.cone,
        recession_cone=f.cone.dual(),
        vertices=vertices,
        compact_faces=compact,
    )


def newton_fan(f: Series) -> NewtonFan:
    """The fan on sigma dual to the faces of the Newton polyhedron of f."""
    f._require_nonzero()
    _, nfan, _ = _newton_data(f.support, f.cone)
    return nfan


def minkowski_sum(p: NewtonPolyhedron, q: NewtonPolyhedron) -> NewtonPolyhedron:
    """Minkowski sum of two Newton polyhedra with the same recession cone:
    the hull of pairwise vertex sums plus the shared recession cone."""
    if p.recession_cone != q.recession_cone:
        raise ValueError("recession cones differ")
    sums = sorted({tuple(a + b for a, b in zip(u, v))
                   for u in p.vertices for v in q.vertices})
    sigma = p.ambient_cone
    vertices, _, compact = _newton_data(tuple(sums), sigma)
    return NewtonPolyhedron(
        ambient_cone=sigma,
        recession_cone=p.recession_cone,
        vertices=vertices,
        compact_faces=compact,
    )
