"""Splice diagrams and splice type systems.

A splice diagram is a weighted tree: vertices of valency 1 are leaves
(numbered 1..n, one coordinate each), vertices of valency >= 3 are nodes,
and every incidence (node, adjacent edge) carries a positive integer weight.
The linking number l(u,p) is the product of the weights adjacent to, but
not lying on, the u-p path; d_u = l(u,u) is the product of the weights at u.

The weight vectors w_u = (l(u,1), ..., l(u,n)) of the nodes, together with
the basis vectors e_i at the leaves, embed the tree into the standard
simplex (after normalizing each vector by its coordinate sum, the
normalization choice made here); the cone over the embedded tree is the
local tropicalization of the germ cut out by the splice type system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .cones import Cone
from .fans import Fan
from .lattice import primitive
from .linalg import IntVec, det
from .series import Series
from .tropical import Tropicalization, is_initial_weight

Vertex = int | str  # leaves are ints 1..n, nodes are names
Edge = tuple[Vertex, Vertex]


def _edge_key(a: Vertex, b: Vertex) -> Edge:
    sa, sb = (isinstance(a, str), a), (isinstance(b, str), b)
    return (a, b) if sa <= sb else (b, a)


@dataclass
class SpliceCheck:
    name: str  # "structure" | "coprime" | "edge-determinant" | "semigroup"
    ok: bool
    detail: str


@dataclass
class SpliceReport:
    ok: bool
    checks: list[SpliceCheck] = field(default_factory=list)

    def failed(self) -> list[SpliceCheck]:
        return [c for c in self.checks if not c.ok]


class SpliceDiagram:
    """A weighted tree with leaves 1..n and named nodes."""

    def __init__(self, leaves: int, nodes, edges, weights):
        """weights: mapping (node, edge) -> positive int, with edge given as
        any ordered pair; it is keyed canonically internally."""
        self.n = int(leaves)
        self.nodes = tuple(nodes)
        self.leaves = tuple(range(1, self.n + 1))
        self.edges = tuple(sorted(
            (_edge_key(a, b) for a, b in edges),
            key=lambda e: tuple((isinstance(v, str), v) for v in e)))
        self.weights = {}
        for (node, edge), w in weights.items():
            self.weights[(node, _edge_key(*edge))] = int(w)
        self._adj: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._adj[e[0]].append(e)
            self._adj[e[1]].append(e)
        self._check_shape()

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self.leaves + self.nodes

    def _check_shape(self):
        if self.n < 1:
            raise ValueError("a splice diagram needs at least one leaf")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node names")
        for a, b in self.edges:
            for v in (a, b):
                if v not in self._adj:
                    raise ValueError(f"edge endpoint {v!r} is not a vertex")
        nv, ne = len(self.vertices), len(self.edges)
        if ne != nv - 1 or not self._connected():
            raise ValueError("the underlying graph must be a tree")
        for v in self.vertices:
            val = len(self._adj[v])
            if isinstance(v, int) and val != 1:
                raise ValueError(f"leaf {v} has valency {val}, expected 1")
            if isinstance(v, str) and val < 3:
                raise ValueError(f"node {v!r} has valency {val}, expected >= 3")
        for u in self.nodes:
            for e in self._adj[u]:
                w = self.weights.get((u, e))
                if w is None:
                    raise ValueError(f"missing weight at ({u!r}, {e})")
                if w < 1:
                    raise ValueError(f"weight at ({u!r}, {e}) must be >= 1")

    def _connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e in self._adj[v]:
                o = e[1] if e[0] == v else e[0]
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        return len(seen) == len(self.vertices)

    # -- tree walking -------------------------------------------------------

    def path(self, a: Vertex, b: Vertex) -> list[Vertex]:
        """The unique path from a to b, as a vertex list."""
        prev: dict[Vertex, Vertex | None] = {a: None}
        stack = [a]
        while stack:
            v = stack.pop()
            if v == b:
                break
            for e in self._adj[v]:
                o = e[1] if e[0] == v else e[0]
                if o not in prev:
                    prev[o] = v
                    stack.append(o)
        out = [b]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]

    def leaves_beyond(self, u: Vertex, e: Edge) -> tuple[int, ...]:
        """Leaves seen from u in the direction of its incident edge e."""
        o = e[1] if e[0] == u else e[0]
        seen = {u, o}
        stack = [o]
        found = []
        while stack:
            v = stack.pop()
            if isinstance(v, int):
                found.append(v)
            for e2 in self._adj[v]:
                w = e2[1] if e2[0] == v else e2[0]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return tuple(sorted(found))

    def incident_edges(self, u: Vertex) -> tuple[Edge, ...]:
        """Incident edges in the canonical order: edges toward leaves first
        (by leaf number), then edges toward nodes (by node name)."""
        def sort_key(e):
            o = e[1] if e[0] == u else e[0]
            return (isinstance(o, str), o)
        return tuple(sorted(self._adj[u], key=sort_key))

    # -- linking numbers ------------------------------------------------------

    def linking_number(self, u: Vertex, p: Vertex) -> int:
        """Product of the weights adjacent to, but not on, the u-p path;
        l(u,u) is the product d_u of all weights at u."""
        if u not in self.nodes:
            raise ValueError(f"{u!r} is not a node")
        path = self.path(u, p)
        on_path = {_edge_key(a, b) for a, b in zip(path, path[1:])}
        out = 1
        for v in path:
            if v not in self.nodes:
                continue
            for e in self._adj[v]:
                if e not in on_path:
                    out *= self.weights[(v, e)]
        return out

    def node_product(self, u: Vertex) -> int:
        return self.linking_number(u, u)

    def weight_vector(self, u: Vertex) -> IntVec:
        """w_u = (l(u,1), ..., l(u,n)), strictly positive in every entry."""
        return tuple(self.linking_number(u, i) for i in self.leaves)

    # -- the three conditions ---------------------------------------------------

    def validate(self) -> SpliceReport:
        checks = [SpliceCheck("structure", True,
                              f"tree with {self.n} leaves and {len(self.nodes)} nodes")]
        for u in self.nodes:
            ws = [self.weights[(u, e)] for e in self.incident_edges(u)]
            small = [w for w in ws if w < 2]
            bad = [(a, b) for a, b in combinations(ws, 2) if gcd(a, b) != 1]
            ok = not small and not bad
            detail = f"node {u!r}: weights {ws}"
            if small:
                detail += f"; weights < 2: {small}"
            if bad:
                detail += f"; non-coprime pairs: {bad}"
            checks.append(SpliceCheck("coprime", ok, detail))
        for e in self.edges:
            a, b = e
            if a in self.nodes and b in self.nodes:
                du, dv = self.node_product(a), self.node_product(b)
                luv = self.linking_number(a, b)
                ok = du * dv > luv * luv
                checks.append(SpliceCheck(
                    "edge-determinant", ok,
                    f"edge {a!r}-{b!r}: {du}*{dv} = {du * dv} "
                    f"{'>' if ok else '<='} {luv}^2 = {luv * luv}"))
        for u in self.nodes:
            du = self.node_product(u)
            for e in self.incident_edges(u):
                gens = [self.linking_number(u, i) for i in self.leaves_beyond(u, e)]
                ok = _semigroup_member(du, gens)
                checks.append(SpliceCheck(
                    "semigroup", ok,
                    f"node {u!r}, edge {e}: d_u = {du} "
                    f"{'in' if ok else 'not in'} <{', '.join(map(str, gens))}>"))
        return SpliceReport(ok=all(c.ok for c in checks), checks=checks)

    # -- admissible monomials and systems ------------------------------------------

    def admissible_monomial(self, u: Vertex, e: Edge) -> IntVec:
        """Exponent vector of the admissible monomial at (u, e): supported on
        the leaves beyond e, of w_u-weight d_u. Among all representations the
        lexicographically smallest exponent tuple in leaf order is chosen."""
        e = _edge_key(*e)
        du = self.node_product(u)
        leaves = self.leaves_beyond(u, e)
        gens = [self.linking_number(u, i) for i in leaves]
        rep = _lex_smallest_representation(du, gens)
        if rep is None:
            raise ValueError(
                f"semigroup condition fails at ({u!r}, {e}): "
                f"{du} has no representation over {gens}")
        exp = [0] * self.n
        for leaf, k in zip(leaves, rep):
            exp[leaf - 1] = k
        return tuple(exp)

    def splice_system(self, coefficients=None, extra_terms=None) -> "SpliceSystem":
        """The splice type system of the diagram: for every node u of valency
        r, the r-2 equations sum_j a[u][i][j] * chi_{u,j} = 0 over the
        admissible monomials chi_{u,j} of u, ordered like incident_edges.

        coefficients: optional mapping node -> (r-2) x r matrix of exact
        rationals; every maximal minor must be nonzero (checked). The default
        is the rectangular Vandermonde a[i][j] = j^i (rows i = 0..r-3).

        extra_terms: optional mapping node -> list (one per equation) of
        {exponent: coefficient} deformation terms, each of w_u-weight
        strictly greater than d_u (checked).
        """
        report = self.validate()
        if not report.ok:
            raise ValueError("invalid splice diagram: "
                             + "; ".join(c.detail for c in report.failed()))
        sigma = Cone.orthant(self.n)
        equations = []
        matrices = {}
        eq_nodes = []
        for u in self.nodes:
            edges = self.incident_edges(u)
            r = len(edges)
            monos = [self.admissible_monomial(u, e) for e in edges]
            if coefficients is not None and u in coefficients:
                mat = [[Fraction(a) for a in row] for row in coefficients[u]]
                if len(mat) != r - 2 or any(len(row) != r for row in mat):
                    raise ValueError(
                        f"coefficient matrix at {u!r} must be {r - 2} x {r}")
            else:
                mat = [[Fraction(j + 1) ** i for j in range(r)]
                       for i in range(r - 2)]
            _check_maximal_minors(mat, u)
            matrices[u] = tuple(tuple(row) for row in mat)
            wu = self.weight_vector(u)
            du = self.node_product(u)
            for i in range(r - 2):
                terms = {m: mat[i][j] for j, m in enumerate(monos)}
                if extra_terms and u in extra_terms and extra_terms[u][i]:
                    for exp, coef in extra_terms[u][i].items():
                        exp = tuple(int(a) for a in exp)
                        wt = sum(w * a for w, a in zip(wu, exp))
                        if wt <= du:
                            raise ValueError(
                                f"deformation term {exp} at {u!r} has "
                                f"w_u-weight {wt} <= d_u = {du}")
                        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(coef)
                equations.append(Series(sigma, terms))
                eq_nodes.append(u)
        return SpliceSystem(diagram=self, equations=tuple(equations),
                            matrices=matrices, equation_nodes=tuple(eq_nodes))

    # -- embedding and tropicalization ----------------------------------------------

    def vertex_vector(self, v: Vertex) -> IntVec:
        """e_i for leaf i, the primitive weight vector for a node."""
        if isinstance(v, int):
            return tuple(1 if i == v - 1 else 0 for i in range(self.n))
        return primitive(self.weight_vector(v))

    def embedded_diagram(self) -> dict:
        """Vertex -> point of the standard simplex: leaf i -> e_i, node u ->
        w_u normalized by its coordinate sum."""
        report = self.validate()
        if not report.ok:
            raise ValueError("invalid splice diagram")
        out = {}
        for v in self.vertices:
            w = self.weight_vector(v) if isinstance(v, str) else self.vertex_vector(v)
            s = sum(w)
            out[v] = tuple(Fraction(a, s) for a in w)
        return out

    def splice_tropicalization(self) -> Tropicalization:
        """The cone over the embedded tree: one 2-dimensional cone per tree
        edge, spanned by the primitive vectors of its endpoints, plus faces.
        The generated splice system (default coefficients) is attached so
        structure checks can verify initial-data constancy."""
        report = self.validate()
        if not report.ok:
            raise ValueError("invalid splice diagram")
        sigma = Cone.orthant(self.n)
        cones = [Cone.from_rays([self.vertex_vector(a), self.vertex_vector(b)],
                                self.n)
                 for a, b in self.edges]
        fan = Fan(cones, self.n)
        system = self.splice_system()
        labels = {}
        for c in fan.cones:
            w = c.witness()
            if sigma.interior_contains(w):
                labels[c.key] = tuple(g.min_weight(w)[1] for g in system.equations)
        return Tropicalization(ambient_cone=sigma, fan=fan,
                               generators=system.equations, labels=labels,
                               dim_hint=2)

    def crosscheck_tropicalization(self) -> "CrosscheckReport":
        """Validate the cone-over-tree tropicalization against the initial
        weight machinery: the relative-interior witness of every maximal cone
        must be an initial weight vector of the generated system; for a
        one-node diagram the support must equal the divisor tropicalization
        of the single equation."""
        system = self.splice_system()
        trop = self.splice_tropicalization()
        entries = []
        for c in trop.maximal_cones():
            w = c.witness()
            ok = (trop.ambient_cone.interior_contains(w)
                  and is_initial_weight(system.equations, w))
            entries.append((c, w, ok))
        support_ok = None
        if len(self.nodes) == 1 and len(system.equations) == 1:
            from .tropical import troploc_divisor
            support_ok = trop.same_support(troploc_divisor(system.equations[0]))
        ok = all(e[2] for e in entries) and support_ok is not False
        return CrosscheckReport(ok=ok, witnesses=entries,
                                principal_support_equal=support_ok)


@dataclass
class SpliceSystem:
    diagram: SpliceDiagram
    equations: tuple[Series, ...]
    matrices: dict
    equation_nodes: tuple[Vertex, ...]

    @property
    def n_variables(self) -> int:
        return self.diagram.n


@dataclass
class CrosscheckReport:
    ok: bool
    witnesses: list  # (cone, witness, passed)
    principal_support_equal: bool | None


def _semigroup_member(target: int, gens) -> bool:
    """Membership of target in the numerical sub-semigroup generated by gens,
    by the usual coin-problem dynamic program up to target."""
    reachable = [False] * (target + 1)
    reachable[0] = True
    for g in gens:
        if g <= 0:
            continue
        for v in range(g, target + 1):
            if reachable[v - g]:
                reachable[v] = True
    return reachable[target]


def _lex_smallest_representation(target: int, gens) -> tuple[int, ...] | None:
    """Lexicographically smallest (n_1, ..., n_s) >= 0 with sum n_k g_k = target."""
    s = len(gens)
    # reachable[i][v]: can gens[i:] represent v
    reachable = [[False] * (target + 1) for _ in range(s + 1)]
    reachable[s][0] = True
    for i in range(s - 1, -1, -1):
        reachable[i] = list(reachable[i + 1])
        g = gens[i]
        for v in range(g, target + 1):
            if reachable[i][v - g]:
                reachable[i][v] = True
    if not reachable[0][target]:
        return None
    out = []
    rest = target
    for i in range(s):
        k = 0
        while rest - k * gens[i] >= 0 and not reachable[i + 1][rest - k * gens[i]]:
            k += 1
        if rest - k * gens[i] < 0:
            return None  # unreachable given reachable[0][target]; defensive
        out.append(k)
        rest -= k * gens[i]
    return tuple(out)


def _check_maximal_minors(mat, node):
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return
    for cs in combinations(range(cols), rows):
        sub = [[mat[i][j] for j in cs] for i in range(rows)]
        if det(sub) == 0:
            raise ValueError(
                f"coefficient matrix at {node!r} has a vanishing maximal "
                f"minor on columns {tuple(c + 1 for c in cs)}")


def one_node_diagram(weights) -> SpliceDiagram:
    """The star diagram with a single node and one leaf per weight."""
    n = len(weights)
    edges = [("u", i) for i in range(1, n + 1)]
    wmap = {("u", ("u", i)): w for i, w in zip(range(1, n + 1), weights)}
    return SpliceDiagram(n, ["u"], edges, wmap)
