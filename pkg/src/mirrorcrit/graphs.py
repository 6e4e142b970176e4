"""Multigraphs with a mirror involution and their derived graphs.

A multigraph here is an ordered vertex list plus an ordered list of
directed edges (loops and parallel edges allowed); the stored order
fixes every matrix layout downstream.  A mirror-symmetric graph adds an
involution on vertices and edges together with Left/Fixed/Right side
labels, subject to the usual compatibility conditions; the key one is
that an involution-fixed edge must have both endpoints fixed.

From a valid symmetric graph two graphs are derived: the plus graph
(left plus fixed edges, every fixed edge subdivided at a fresh vertex)
and the minus graph (right edges with all fixed vertices identified to
a single vertex).
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import IntMatrix

LEFT = "L"
FIXED = "F"
RIGHT = "R"
SIDES = (LEFT, FIXED, RIGHT)

AXIS_VERTEX = ("axis",)


class InvalidSymmetricGraph(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Edge:
    id: object
    tail: object
    head: object

    @property
    def is_loop(self):
        return self.tail == self.head


class Multigraph:
    """Ordered multigraph; loops and parallel edges are first-class."""

    __slots__ = ("vertices", "edges", "_vindex", "_eindex")

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        elist = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            elist.append(e)
        self.edges = tuple(elist)
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        if len(self._vindex) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        self._eindex = {e.id: i for i, e in enumerate(self.edges)}
        if len(self._eindex) != len(self.edges):
            raise ValueError("duplicate edge id")
        for e in self.edges:
            if e.tail not in self._vindex or e.head not in self._vindex:
                raise ValueError(f"edge {e.id!r} references a missing vertex")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    def vertex_index(self, v):
        return self._vindex[v]

    def edge_index(self, eid):
        return self._eindex[eid]

    def edge(self, eid):
        return self.edges[self._eindex[eid]]

    def has_vertex(self, v):
        return v in self._vindex

    def boundary_matrix(self) -> IntMatrix:
        """|V| x |E| signed incidence: +1 at the head, -1 at the tail.

        A loop contributes a zero column.
        """
        rows = [[0] * self.n_edges for _ in range(self.n_vertices)]
        for j, e in enumerate(self.edges):
            if not e.is_loop:
                rows[self._vindex[e.head]][j] += 1
                rows[self._vindex[e.tail]][j] -= 1
        return IntMatrix(rows, shape=(self.n_vertices, self.n_edges))

    def bond_vector(self, subset) -> "EdgeVector":
        """Signed cut vector of a vertex set: the coboundary of its indicator."""
        subset = set(subset)
        for v in subset:
            if v not in self._vindex:
                raise KeyError(f"unknown vertex {v!r}")
        coeffs = []
        for e in self.edges:
            coeffs.append(int(e.head in subset) - int(e.tail in subset))
        return EdgeVector(self, tuple(coeffs))

    def components(self):
        """(count, {vertex: component index}); indices follow vertex order."""
        label = {}
        count = 0
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        for v in self.vertices:
            if v in label:
                continue
            stack = [v]
            label[v] = count
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in label:
                        label[y] = count
                        stack.append(y)
            count += 1
        return count, label

    def is_connected(self):
        return self.components()[0] <= 1

    def __repr__(self):
        return f"Multigraph({self.n_vertices} vertices, {self.n_edges} edges)"


@dataclass(frozen=True)
class EdgeVector:
    """Integer vector indexed by the edges of a fixed ambient graph.

    Negating a coefficient is the algebraic stand-in for reversing the
    orientation of that edge.
    """

    graph: Multigraph
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, graph):
        return cls(graph, (0,) * graph.n_edges)

    @classmethod
    def basis(cls, graph, eid, sign=1):
        coeffs = [0] * graph.n_edges
        coeffs[graph.edge_index(eid)] = sign
        return cls(graph, tuple(coeffs))

    def _check(self, other):
        if self.graph is not other.graph:
            raise ValueError("edge vectors live on different graphs")

    def __add__(self, other):
        self._check(other)
        return EdgeVector(self.graph, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return EdgeVector(self.graph, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return EdgeVector(self.graph, tuple(-a for a in self.coeffs))

    def scale(self, k):
        return EdgeVector(self.graph, tuple(k * a for a in self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def nonzero(self):
        return {e.id: c for e, c in zip(self.graph.edges, self.coeffs) if c}


class SymmetricGraph:
    """Multigraph plus a mirror involution with side labels."""

    __slots__ = ("graph", "vertex_involution", "edge_involution", "vertex_side", "edge_side")

    def __init__(self, graph, vertex_involution, edge_involution, vertex_side, edge_side):
        self.graph = graph
        self.vertex_involution = dict(vertex_involution)
        self.edge_involution = dict(edge_involution)
        self.vertex_side = dict(vertex_side)
        self.edge_side = dict(edge_side)
        vset = set(graph.vertices)
        eset = {e.id for e in graph.edges}
        if set(self.vertex_involution) != vset or set(self.vertex_side) != vset:
            raise ValueError("vertex maps must cover exactly the vertex set")
        if set(self.edge_involution) != eset or set(self.edge_side) != eset:
            raise ValueError("edge maps must cover exactly the edge set")
        for v, s in self.vertex_side.items():
            if s not in SIDES:
                raise ValueError(f"bad side {s!r} for vertex {v!r}")
        for e, s in self.edge_side.items():
            if s not in SIDES:
                raise ValueError(f"bad side {s!r} for edge {e!r}")

    # --- ordered side slices (graph order) ---

    def vertices_on(self, side):
        return [v for v in self.graph.vertices if self.vertex_side[v] == side]

    def edges_on(self, side):
        return [e for e in self.graph.edges if self.edge_side[e.id] == side]

    @property
    def left_vertices(self):
        return self.vertices_on(LEFT)

    @property
    def fixed_vertices(self):
        return self.vertices_on(FIXED)

    @property
    def right_vertices(self):
        return self.vertices_on(RIGHT)

    @property
    def left_edges(self):
        return self.edges_on(LEFT)

    @property
    def fixed_edges(self):
        return self.edges_on(FIXED)

    @property
    def right_edges(self):
        return self.edges_on(RIGHT)

    # --- validation ---

    def validate(self):
        """Every violated invariant, with the offending id.  Empty = valid."""
        g = self.graph
        out = []
        mirror = {LEFT: RIGHT, FIXED: FIXED, RIGHT: LEFT}
        for v in g.vertices:
            w = self.vertex_involution[v]
            if not g.has_vertex(w):
                out.append(f"vertex involution image {w!r} of {v!r} is not a vertex")
                continue
            if self.vertex_involution[w] != v:
                out.append(f"vertex involution is not an involution at {v!r}")
            fixed = w == v
            side = self.vertex_side[v]
            if fixed and side != FIXED:
                out.append(f"vertex {v!r} is fixed by phi but marked {side}")
            if not fixed and side == FIXED:
                out.append(f"vertex {v!r} is marked Fixed but phi moves it to {w!r}")
            if not fixed and self.vertex_side.get(w) != mirror[side]:
                out.append(f"vertex sides of {v!r} and {w!r} are not mirrored")
        for e in g.edges:
            fid = self.edge_involution[e.id]
            if fid not in g._eindex:
                out.append(f"edge involution image {fid!r} of {e.id!r} is not an edge")
                continue
            f = g.edge(fid)
            if self.edge_involution[fid] != e.id:
                out.append(f"edge involution is not an involution at {e.id!r}")
            fixed = fid == e.id
            side = self.edge_side[e.id]
            if fixed and side != FIXED:
                out.append(f"edge {e.id!r} is fixed by phi but marked {side}")
            if not fixed and side == FIXED:
                out.append(f"edge {e.id!r} is marked Fixed but phi moves it to {fid!r}")
            if not fixed and self.edge_side.get(fid) != mirror[side]:
                out.append(f"edge sides of {e.id!r} and {fid!r} are not mirrored")
            pv = self.vertex_involution
            if pv.get(e.tail) is None or pv.get(e.head) is None:
                continue
            if {pv[e.tail], pv[e.head]} != {f.tail, f.head}:
                out.append(f"edge involution incompatible with endpoints at {e.id!r}")
                continue
            if fixed:
                for v in (e.tail, e.head):
                    if self.vertex_side[v] != FIXED:
                        out.append(
                            f"fixed edge not fixed point-wise: {e.id!r} has endpoint {v!r}"
                        )
            else:
                # a Left edge may not touch the Right side and vice versa
                forbidden = mirror[side]
                for v in (e.tail, e.head):
                    if self.vertex_side[v] == forbidden:
                        out.append(
                            f"edge {e.id!r} on side {side} touches vertex {v!r} "
                            f"on side {forbidden}"
                        )
                if side == RIGHT and (f.tail != pv[e.tail] or f.head != pv[e.head]):
                    out.append(f"orientation not phi-equivariant at edge {e.id!r}")
        return out

    def validate_structural(self):
        """Violations ignoring orientation equivariance."""
        return [v for v in self.validate() if "orientation" not in v]

    def is_valid(self):
        return not self.validate()

    # --- canonical orientation ---

    def canonical_orientation(self) -> "SymmetricGraph":
        """Reorient every Right edge to mirror its Left partner.

        Left and Fixed edges keep their stored orientation; the result
        is phi-equivariant as a directed graph.  Idempotent.
        """
        bad = self.validate_structural()
        if bad:
            raise InvalidSymmetricGraph(bad)
        pv = self.vertex_involution
        new_edges = []
        for e in self.graph.edges:
            if self.edge_side[e.id] == RIGHT:
                partner = self.graph.edge(self.edge_involution[e.id])
                new_edges.append(Edge(e.id, pv[partner.tail], pv[partner.head]))
            else:
                new_edges.append(e)
        graph = Multigraph(self.graph.vertices, new_edges)
        return SymmetricGraph(
            graph, self.vertex_involution, self.edge_involution, self.vertex_side, self.edge_side
        )

    # --- the axis subgraph ---

    def fixed_subgraph_components(self):
        """(component count, {fixed vertex: component index}) of (V^phi, E^phi)."""
        verts = self.fixed_vertices
        adj = {v: [] for v in verts}
        for e in self.fixed_edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        label = {}
        count = 0
        for v in verts:
            if v in label:
                continue
            stack = [v]
            label[v] = count
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in label:
                        label[y] = count
                        stack.append(y)
            count += 1
        return count, label

    def fixed_subgraph_is_forest(self):
        count, _ = self.fixed_subgraph_components()
        return len(self.fixed_vertices) - len(self.fixed_edges) == count

    def two_power_exponent(self):
        """|V^phi| - |E^phi| - 1, the exponent in the factorization theorem."""
        return len(self.fixed_vertices) - len(self.fixed_edges) - 1

    # --- decomposition ---

    def decompose(self) -> "Decomposition":
        """Build the plus and minus graphs with full provenance maps."""
        bad = self.validate()
        if bad:
            raise InvalidSymmetricGraph(bad)

        sub_vertex = {e.id: ("s", e.id) for e in self.fixed_edges}
        plus_vertices = [
            v for v in self.graph.vertices if self.vertex_side[v] in (LEFT, FIXED)
        ] + [sub_vertex[e.id] for e in self.fixed_edges]

        plus_edges = []
        plus_origin = {}
        half_pairing = {}
        for e in self.graph.edges:
            side = self.edge_side[e.id]
            if side == LEFT:
                plus_edges.append(Edge(e.id, e.tail, e.head))
                plus_origin[e.id] = ("left", e.id)
            elif side == FIXED:
                s = sub_vertex[e.id]
                h1, h2 = (e.id, 1), (e.id, 2)
                plus_edges.append(Edge(h1, e.tail, s))
                plus_edges.append(Edge(h2, s, e.head))
                plus_origin[h1] = ("half", e.id, 1)
                plus_origin[h2] = ("half", e.id, 2)
                half_pairing[h1] = h2
                half_pairing[h2] = h1

        minus_vertices = self.right_vertices + [AXIS_VERTEX]
        fixed_set = set(self.fixed_vertices)

        def squash(v):
            return AXIS_VERTEX if v in fixed_set else v

        minus_edges = []
        minus_origin = {}
        for e in self.right_edges:
            minus_edges.append(Edge(e.id, squash(e.tail), squash(e.head)))
            minus_origin[e.id] = e.id

        dec = Decomposition(
            source=self,
            plus=Multigraph(plus_vertices, plus_edges),
            minus=Multigraph(minus_vertices, minus_edges),
            plus_edge_origin=plus_origin,
            minus_edge_origin=minus_origin,
            subdivision_vertex=sub_vertex,
            contracted_vertex=AXIS_VERTEX,
            half_pairing=half_pairing,
        )
        dec._check_cardinalities()
        return dec

    def __repr__(self):
        return (
            f"SymmetricGraph({self.graph.n_vertices} vertices, {self.graph.n_edges} edges, "
            f"{len(self.fixed_vertices)} fixed vertices, {len(self.fixed_edges)} fixed edges)"
        )


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Plus/minus graphs plus the provenance maps tying them back to G."""

    source: SymmetricGraph
    plus: Multigraph
    minus: Multigraph
    plus_edge_origin: dict
    minus_edge_origin: dict
    subdivision_vertex: dict
    contracted_vertex: object
    half_pairing: dict

    def _check_cardinalities(self):
        g = self.source
        n_left_e = len(g.left_edges)
        n_fixed_e = len(g.fixed_edges)
        assert self.plus.n_edges == n_left_e + 2 * n_fixed_e
        assert self.minus.n_edges == len(g.right_edges)
        assert self.plus.n_vertices == (
            len(g.left_vertices) + len(g.fixed_vertices) + n_fixed_e
        )
        assert self.minus.n_vertices == len(g.right_vertices) + 1

    def union_graph(self) -> Multigraph:
        """Disjoint union of the plus and minus graphs, plus edges first.

        Vertex and edge id sets of the two parts never collide, so the
        union is a plain concatenation and its edge order matches the
        block layout used for the mirror map matrices.
        """
        return Multigraph(
            self.plus.vertices + self.minus.vertices,
            self.plus.edges + self.minus.edges,
        )
