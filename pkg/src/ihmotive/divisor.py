"""Normal-crossing curve configurations and their dual graphs.

A configuration is a list of smooth components (with genus and an optional
projective coordinate) and a list of nodes.  Loops and parallel edges are
allowed so that short cusp cycles can be written down.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BrokenWalk, UnknownComponentId, ValidationError
from .exact import RationalMatrix, as_qf, mat_kernel


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = lambda self: "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def as_point(x):
    """A projective coordinate: a field element or :data:`INF`."""
    if x is INF or x == "inf":
        return INF
    return as_qf(x)


Point = "QuadraticFieldElement | _Infinity"
Step = tuple  # (edge index, forward: bool)


@dataclass(frozen=True)
class Component:
    id: str
    genus: int = 0
    coord_enabled: bool = True


@dataclass(frozen=True)
class Node:
    comp_a: str
    point_a: object
    comp_b: str
    point_b: object

    def is_loop(self) -> bool:
        return self.comp_a == self.comp_b


@dataclass(frozen=True)
class CurveConfiguration:
    components: tuple[Component, ...]
    nodes: tuple[Node, ...] = ()
    cycles: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Component) else Component(*c) for c in self.components)
        nodes = []
        for n in self.nodes:
            n = n if isinstance(n, Node) else Node(*n)
            pa = None if n.point_a is None else as_point(n.point_a)
            pb = None if n.point_b is None else as_point(n.point_b)
            nodes.append(Node(n.comp_a, pa, n.comp_b, pb))
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "cycles", {k: tuple((int(e), bool(f)) for e, f in w)
                                            for k, w in dict(self.cycles).items()})
        self._validate()

    def _validate(self):
        seen = set()
        for i, c in enumerate(self.components):
            if c.id in seen:
                raise ValidationError(f"duplicate component id {c.id!r}",
                                      field=f"components[{i}].id", invariant="ids unique")
            seen.add(c.id)
            if not isinstance(c.genus, int) or c.genus < 0:
                raise ValidationError(f"component {c.id!r} has genus {c.genus!r}",
                                      field=f"components[{i}].genus", invariant="genus >= 0")
        index = self.index
        for k, n in enumerate(self.nodes):
            for side, cid in (("comp_a", n.comp_a), ("comp_b", n.comp_b)):
                if cid not in index:
                    raise UnknownComponentId(f"node {k} refers to unknown component {cid!r}",
                                             field=f"nodes[{k}].{side}",
                                             invariant="node endpoints are known ids")
        for c in self.components:
            if not c.coord_enabled:
                continue
            pts = self.node_points(c.id)
            for k, side, p in pts:
                if p is None:
                    raise ValidationError(f"node {k} lacks a coordinate on {c.id!r}",
                                          field=f"nodes[{k}].{side}",
                                          invariant="coordinatized components carry node points")
            vals = [p for _, _, p in pts]
            for i in range(len(vals)):
                for j in range(i):
                    if vals[i] is vals[j] or (vals[i] is not INF and vals[j] is not INF
                                              and vals[i] == vals[j]):
                        k, side, _ = pts[i]
                        raise ValidationError(
                            f"node points on {c.id!r} coincide", field=f"nodes[{k}].{side}",
                            invariant="node points pairwise distinct on a component")
        for name, walk in self.cycles.items():
            check_walk(dual_graph(self), walk, name=name)

    @property
    def index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.components)}

    def component(self, cid: str) -> Component:
        return self.components[self.index[cid]]

    def node_points(self, cid: str) -> list[tuple[int, str, object]]:
        """``(node index, side, point)`` for every node branch lying on ``cid``."""
        out = []
        for k, n in enumerate(self.nodes):
            if n.comp_a == cid:
                out.append((k, "point_a", n.point_a))
            if n.comp_b == cid:
                out.append((k, "point_b", n.point_b))
        return out

    def node_count(self, a: str, b: str) -> int:
        return sum(1 for n in self.nodes if {n.comp_a, n.comp_b} == {a, b})


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    def boundary_matrix(self) -> RationalMatrix:
        """V x E; column of edge ``a -> b`` is ``e_b - e_a`` (zero for loops)."""
        cols = []
        for a, b in self.edges:
            col = [0] * self.V
            col[b] += 1
            col[a] -= 1
            cols.append(col)
        return RationalMatrix.from_columns(cols, self.V)


def dual_graph(c: CurveConfiguration) -> DualGraph:
    index = c.index
    edges = []
    for k, n in enumerate(c.nodes):
        if n.comp_a not in index or n.comp_b not in index:
            raise UnknownComponentId(f"node {k} has an unknown endpoint", field=f"nodes[{k}]")
        edges.append((index[n.comp_a], index[n.comp_b]))
    return DualGraph(tuple(x.id for x in c.components), tuple(edges))


def _spanning_forest(g: DualGraph):
    """BFS forest: ``parent[v] = (u, edge)`` for non-roots, plus tree-edge set and roots."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.V)]
    for e, (a, b) in enumerate(g.edges):
        adj[a].append((e, b))
        if a != b:
            adj[b].append((e, a))
    parent: dict[int, tuple[int, int] | None] = {}
    depth = {}
    tree = set()
    roots = []
    for r in range(g.V):
        if r in parent:
            continue
        roots.append(r)
        parent[r] = None
        depth[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for e, v in adj[u]:
                if v not in parent:
                    parent[v] = (u, e)
                    depth[v] = depth[u] + 1
                    tree.add(e)
                    q.append(v)
    return parent, depth, tree, roots


def _step(g: DualGraph, e: int, frm: int) -> Step:
    a, _ = g.edges[e]
    return (e, a == frm)


def fundamental_cycles(g: DualGraph) -> list[tuple[int, tuple[Step, ...]]]:
    """``(non-tree edge, closed walk)`` per fundamental cycle of a BFS forest.

    The walk traverses the non-tree edge forward and returns through the tree.
    """
    parent, depth, tree, _ = _spanning_forest(g)
    out = []
    for e, (a, b) in enumerate(g.edges):
        if e in tree:
            continue
        walk = [(e, True)]
        # tree path from b back to a
        up_b, up_a = [], []
        x, y = b, a
        while depth[x] > depth[y]:
            p, pe = parent[x]
            up_b.append(_step(g, pe, x))
            x = p
        while depth[y] > depth[x]:
            p, pe = parent[y]
            up_a.append((pe, y))
            y = p
        while x != y:
            p, pe = parent[x]
            up_b.append(_step(g, pe, x))
            x = p
            q, qe = parent[y]
            up_a.append((qe, y))
            y = q
        walk.extend(up_b)
        for pe, child in reversed(up_a):
            # descend from parent to child
            walk.append((pe, g.edges[pe][1] == child))
        out.append((e, tuple(walk)))
    return out


def walk_vector(g: DualGraph, walk: Sequence[Step]) -> tuple[int, ...]:
    v = [0] * g.E
    for e, fwd in walk:
        v[e] += 1 if fwd else -1
    return tuple(v)


def check_walk(g: DualGraph, walk: Sequence[Step], name: str = "cycle") -> list[tuple[int, int]]:
    """Validate a closed walk; return ``(start, end)`` vertices of every step."""
    if not walk:
        raise BrokenWalk(f"{name} is empty", field=name, invariant="closed walk")
    ends = []
    for i, (e, fwd) in enumerate(walk):
        if not 0 <= e < g.E:
            raise BrokenWalk(f"{name} step {i} uses unknown edge {e}", field=f"{name}[{i}]")
        a, b = g.edges[e]
        ends.append((a, b) if fwd else (b, a))
    for i in range(len(ends)):
        nxt = ends[(i + 1) % len(ends)]
        if ends[i][1] != nxt[0]:
            raise BrokenWalk(f"{name}: steps {i} and {(i + 1) % len(ends)} share no component",
                             field=f"{name}[{i}]", invariant="consecutive edges share a component")
    return ends


def reverse_walk(walk: Sequence[Step]) -> tuple[Step, ...]:
    return tuple((e, not f) for e, f in reversed(walk))


def rotate_walk(walk: Sequence[Step], k: int) -> tuple[Step, ...]:
    k %= len(walk)
    return tuple(walk[k:]) + tuple(walk[:k])


def connected_components(g: DualGraph) -> int:
    return len(_spanning_forest(g)[3])


@dataclass(frozen=True)
class MotiveOfD:
    m0_dim: int
    m1_dim: int
    m2_dim: int
    b1: int
    cycle_basis: tuple[tuple[int, ...], ...]


def motive_dims(c: CurveConfiguration) -> MotiveOfD:
    g = dual_graph(c)
    m0 = connected_components(g)
    b1 = g.E - g.V + m0
    genus = sum(x.genus for x in c.components)
    basis = tuple(walk_vector(g, w) for _, w in fundamental_cycles(g))
    return MotiveOfD(m0, 2 * genus + b1, g.V, b1, basis)


@dataclass(frozen=True)
class CechReport:
    V: int
    E: int
    boundary_rank: int
    kernel_dim: int
    m0: int
    b1: int

    @property
    def exact(self) -> bool:
        return (self.boundary_rank + self.kernel_dim == self.E
                and self.kernel_dim == self.b1
                and self.V - self.boundary_rank == self.m0)

    @property
    def euler_identity(self) -> bool:
        return self.V - self.E == self.m0 - self.b1

    @property
    def ok(self) -> bool:
        return self.exact and self.euler_identity


def cech_check(c: CurveConfiguration) -> CechReport:
    """Dimension check of ``0 -> H1 -> Q^E -> Q^V -> H0 -> 0`` for the dual graph."""
    g = dual_graph(c)
    d = g.boundary_matrix()
    rank = d.rank() if g.E else 0
    ker = len(mat_kernel(d)) if g.E else 0
    m0 = connected_components(g)
    return CechReport(g.V, g.E, rank, ker, m0, g.E - g.V + m0)


def euler_char_divisor(c: CurveConfiguration) -> int:
    return sum(2 - 2 * x.genus for x in c.components) - len(c.nodes)


def euler_char_compact(c: CurveConfiguration, chi_smooth_compactification: int) -> int:
    """``chi_c(X) = chi(X~) - chi(D)``."""
    return chi_smooth_compactification - euler_char_divisor(c)


def euler_char_surface(h1_dim: int, b2: int) -> int:
    return 2 - 2 * h1_dim + b2


def subdivide(c: CurveConfiguration, node: int, new_id: str) -> CurveConfiguration:
    """Insert a rational component on ``node``, splitting it into two nodes."""
    n = c.nodes[node]
    coord = all(x.coord_enabled for x in c.components)
    new = Component(new_id, 0, coord)
    p0, p1 = (as_qf(0), as_qf(1)) if coord else (None, None)
    nodes = list(c.nodes)
    nodes[node] = Node(n.comp_a, n.point_a, new_id, p0)
    nodes.append(Node(new_id, p1, n.comp_b, n.point_b))
    return CurveConfiguration(c.components + (new,), tuple(nodes))


def polygon(r: int, prefix: str = "D") -> CurveConfiguration:
    """Cycle of ``r`` rational components; node k joins D_k (at 1) to D_{k+1} (at 0)."""
    comps = tuple(Component(f"{prefix}{k}") for k in range(r))
    nodes = tuple(Node(f"{prefix}{k}", as_qf(1), f"{prefix}{(k + 1) % r}", as_qf(0))
                  for k in range(r))
    return CurveConfiguration(comps, nodes, {"cycle": tuple((k, True) for k in range(r))})


def chain(r: int, prefix: str = "D") -> CurveConfiguration:
    comps = tuple(Component(f"{prefix}{k}") for k in range(r))
    nodes = tuple(Node(f"{prefix}{k}", as_qf(1), f"{prefix}{k + 1}", as_qf(0))
                  for k in range(r - 1))
    return CurveConfiguration(comps, nodes)


def relabel(c: CurveConfiguration, mapping: dict[str, str],
            order: Iterable[int] | None = None) -> CurveConfiguration:
    """Rename components and optionally permute the node list."""
    comps = tuple(Component(mapping[x.id], x.genus, x.coord_enabled) for x in c.components)
    nodes = [Node(mapping[n.comp_a], n.point_a, mapping[n.comp_b], n.point_b) for n in c.nodes]
    if order is not None:
        nodes = [nodes[i] for i in order]
    return CurveConfiguration(comps, tuple(nodes))
