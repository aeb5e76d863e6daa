"""Degree-zero line bundles on curve configurations and their holonomy.

A bundle with trivial restriction to every component is recorded by a
degree-zero divisor per component (the divisor of the section used to
trivialize it) and/or a transition value per node.  Extending a section
around an oriented cycle of components multiplies it by a scalar; its
class in k* (x) Q is the holonomy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .divisor import (
    INF,
    CurveConfiguration,
    Step,
    as_point,
    check_walk,
    dual_graph,
    fundamental_cycles,
    reverse_walk,
)
from .errors import (
    DegenerateGram,
    NotSymmetric,
    SingularMatrix,
    SupportAtNode,
    ValidationError,
)
from .exact import (
    KStarClass,
    RationalMatrix,
    Vector,
    as_qf,
    frac,
    is_negative_definite,
    mat_solve,
    vec,
)
from .motive import SurfaceDatum, gram_matrix


def _same_point(p, q) -> bool:
    if p is INF or q is INF:
        return p is q
    return p == q


def _merge(points) -> tuple:
    """Sum multiplicities of equal points, drop zeros, keep first-seen order."""
    out: list[list] = []
    for p, m in points:
        p, m = as_point(p), frac(m)
        for item in out:
            if _same_point(item[0], p):
                item[1] += m
                break
        else:
            out.append([p, m])
    return tuple((p, m) for p, m in out if m != 0)


@dataclass(frozen=True)
class ConfigLineBundle:
    """``divisors[cid]``: (point, multiplicity) pairs; ``edge_values[k]``: transition on node k.

    Edge values are taken along the node's stored direction ``comp_a -> comp_b``;
    the reverse direction carries the inverse.
    """

    divisors: Mapping[str, tuple] = field(default_factory=dict)
    edge_values: Mapping[int, KStarClass] = field(default_factory=dict)

    def __post_init__(self):
        divs = {cid: _merge(pts) for cid, pts in dict(self.divisors).items()}
        edges = {}
        for k, v in dict(self.edge_values).items():
            edges[int(k)] = v if isinstance(v, KStarClass) else KStarClass.of(v)
        object.__setattr__(self, "divisors", {c: d for c, d in divs.items() if d})
        object.__setattr__(self, "edge_values", edges)

    def degree(self, cid: str) -> Fraction:
        return sum((m for _, m in self.divisors.get(cid, ())), Fraction(0))

    def tensor(self, other: "ConfigLineBundle") -> "ConfigLineBundle":
        divs = {c: tuple(d) for c, d in self.divisors.items()}
        for c, d in other.divisors.items():
            divs[c] = divs.get(c, ()) + tuple(d)
        edges = dict(self.edge_values)
        for k, v in other.edge_values.items():
            edges[k] = edges[k] * v if k in edges else v
        return ConfigLineBundle(divs, edges)

    def __pow__(self, q) -> "ConfigLineBundle":
        q = frac(q)
        return ConfigLineBundle({c: tuple((p, m * q) for p, m in d) for c, d in self.divisors.items()},
                                {k: v ** q for k, v in self.edge_values.items()})

    def inverse(self) -> "ConfigLineBundle":
        return self ** -1

    def coboundary(self, config: CurveConfiguration, cid: str, lam) -> "ConfigLineBundle":
        """Rescale the trivialization over component ``cid`` by ``lam``."""
        lam = KStarClass.of(lam)
        edges = dict(self.edge_values)
        for k, n in enumerate(config.nodes):
            f = KStarClass()
            if n.comp_a == cid:
                f = f * lam
            if n.comp_b == cid:
                f = f / lam
            edges[k] = edges[k] * f if k in edges else f
        return ConfigLineBundle(self.divisors, edges)


def edge_transitions(divisor: Sequence, in_node, out_node) -> KStarClass:
    """Ratio of a trivializing function's values at ``out_node`` and ``in_node``.

    ``prod ((out - p) / (in - p))**mult`` over finite support points; a node at
    infinity evaluates the (monic) function to 1.
    """
    divisor = _merge(divisor)
    in_node, out_node = as_point(in_node), as_point(out_node)
    total = sum((m for _, m in divisor), Fraction(0))
    if total != 0:
        raise ValidationError(f"divisor has degree {total}", field="divisor",
                              invariant="degree zero")
    for p, _ in divisor:
        for name, node in (("in_node", in_node), ("out_node", out_node)):
            if _same_point(p, node):
                raise SupportAtNode(f"divisor point {p} coincides with {name}", field=name,
                                    invariant="support avoids node points")
    if _same_point(in_node, out_node):
        return KStarClass()
    factors = []
    for p, m in divisor:
        if p is INF:
            continue
        num = as_qf(1) if out_node is INF else out_node - p
        den = as_qf(1) if in_node is INF else in_node - p
        factors.append((num / den, m))
    return KStarClass(factors)


def _leave_arrive(config: CurveConfiguration, step: Step):
    n = config.nodes[step[0]]
    return (n.point_a, n.point_b) if step[1] else (n.point_b, n.point_a)


def holonomy(config: CurveConfiguration, bundle: ConfigLineBundle,
             cycle: Sequence[Step]) -> KStarClass:
    """Multiplier picked up by a section carried once around ``cycle``."""
    g = dual_graph(config)
    cycle = tuple((int(e), bool(f)) for e, f in cycle)
    ends = check_walk(g, cycle)
    for cid in bundle.divisors:
        if cid not in config.index:
            raise ValidationError(f"bundle refers to unknown component {cid!r}",
                                  field=f"divisors.{cid}")
        if bundle.degree(cid) != 0:
            raise ValidationError(f"bundle has degree {bundle.degree(cid)} on {cid!r}",
                                  field=f"divisors.{cid}", invariant="degree zero")
    result = KStarClass()
    for i, step in enumerate(cycle):
        e, fwd = step
        if e in bundle.edge_values:
            v = bundle.edge_values[e]
            result = result * (v if fwd else v.inverse())
        nxt = cycle[(i + 1) % len(cycle)]
        cid = g.vertices[ends[i][1]]
        div = bundle.divisors.get(cid)
        if not div:
            continue
        if not config.component(cid).coord_enabled:
            raise ValidationError(f"divisor on {cid!r} needs coordinates",
                                  field=f"divisors.{cid}")
        in_pt = _leave_arrive(config, step)[1]
        out_pt = _leave_arrive(config, nxt)[0]
        result = result * edge_transitions(div, in_pt, out_pt)
    return result


@dataclass(frozen=True)
class PicPrimeClass:
    """Holonomy of every fundamental cycle, keyed by its non-tree edge."""

    classes: Mapping[int, KStarClass]

    def __eq__(self, other):
        if not isinstance(other, PicPrimeClass):
            return NotImplemented
        if set(self.classes) != set(other.classes):
            return False
        return all(self.classes[k] == other.classes[k] for k in self.classes)

    __hash__ = None

    def is_trivial(self) -> bool:
        return all(v.is_trivial() for v in self.classes.values())


def pic_prime_class(config: CurveConfiguration, bundle: ConfigLineBundle) -> PicPrimeClass:
    g = dual_graph(config)
    return PicPrimeClass({e: holonomy(config, bundle, w) for e, w in fundamental_cycles(g)})


def coboundary_reduce(config: CurveConfiguration, transitions: Mapping) -> PicPrimeClass:
    """Spanning-forest normal form of per-node transition scalars."""
    return pic_prime_class(config, ConfigLineBundle({}, transitions))


def pic_group_law_check(config: CurveConfiguration, b1: ConfigLineBundle, b2: ConfigLineBundle,
                        cycle: Sequence[Step]) -> bool:
    lhs = holonomy(config, b1.tensor(b2), cycle)
    return lhs == holonomy(config, b1, cycle) * holonomy(config, b2, cycle)


def orthogonal_correction(G: RationalMatrix, iv: Sequence) -> Vector:
    """Coefficients ``a = G^{-1} iv`` making ``C - sum a_m D_m`` orthogonal to every ``D_n``."""
    iv = vec(iv)
    try:
        definite = is_negative_definite(G)
    except NotSymmetric:
        raise DegenerateGram("Gram matrix is not symmetric", field="G") from None
    if not definite:
        raise DegenerateGram("Gram matrix is not negative definite", field="G",
                             invariant="G negative definite")
    try:
        return mat_solve(G, iv)
    except SingularMatrix:  # pragma: no cover - excluded by definiteness
        raise DegenerateGram("Gram matrix is singular", field="G") from None


@dataclass(frozen=True)
class KCEInput:
    """A line bundle on the surface seen through the cusp fibre ``config``.

    ``component_classes[i]`` is the index in ``surface.exceptional`` of the
    class of ``config.components[i]`` (default: same order).  The orthogonality
    correction is placed at ``reference_points`` (default infinity), which
    must avoid the node points.
    """

    surface: SurfaceDatum
    config: CurveConfiguration
    intersection_vector: Vector
    restriction_points: Mapping[str, tuple] = field(default_factory=dict)
    edge_values: Mapping[int, KStarClass] = field(default_factory=dict)
    distinguished_cycle: tuple | None = None
    component_classes: tuple | None = None
    reference_points: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "intersection_vector", vec(self.intersection_vector))
        object.__setattr__(self, "restriction_points",
                           {c: _merge(p) for c, p in dict(self.restriction_points).items()})
        object.__setattr__(self, "edge_values",
                           {int(k): v if isinstance(v, KStarClass) else KStarClass.of(v)
                            for k, v in dict(self.edge_values).items()})
        if self.distinguished_cycle is not None:
            object.__setattr__(self, "distinguished_cycle",
                               tuple((int(e), bool(f)) for e, f in self.distinguished_cycle))

    def scaled(self, q) -> "KCEInput":
        """The input for ``L**q``."""
        q = frac(q)
        return KCEInput(self.surface, self.config,
                        tuple(x * q for x in self.intersection_vector),
                        {c: tuple((p, m * q) for p, m in pts)
                         for c, pts in self.restriction_points.items()},
                        {k: v ** q for k, v in self.edge_values.items()},
                        self.distinguished_cycle, self.component_classes, self.reference_points)


@dataclass(frozen=True)
class KCEResult:
    coefficients: Vector
    corrected: ConfigLineBundle
    cycle: tuple
    value: KStarClass


def config_gram(inp: KCEInput) -> RationalMatrix:
    comps = inp.config.components
    idx = inp.component_classes
    if idx is None:
        if len(comps) != inp.surface.r:
            raise ValidationError(
                f"{len(comps)} components but {inp.surface.r} exceptional classes",
                field="component_classes", invariant="one class per component")
        idx = range(len(comps))
    idx = list(idx)
    if len(idx) != len(comps) or any(not 0 <= i < inp.surface.r for i in idx):
        raise ValidationError("component_classes does not match the components",
                              field="component_classes")
    G = gram_matrix(inp.surface)
    return G.submatrix(idx, idx)


def default_cycle(config: CurveConfiguration) -> tuple:
    cycles = fundamental_cycles(dual_graph(config))
    if len(cycles) != 1:
        raise ValidationError(f"dual graph has b1 = {len(cycles)}; name a cycle",
                              field="cycle", invariant="cycle named when b1 != 1")
    return cycles[0][1]


def cl_kce(inp: KCEInput, reverse: bool = False) -> KCEResult:
    config = inp.config
    G = config_gram(inp)
    names = [c.id for c in config.components]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i != j and G[i, j] != config.node_count(a, b):
                raise ValidationError(
                    f"Gram entry ({a},{b}) = {G[i, j]} but {config.node_count(a, b)} nodes",
                    field="surface.exceptional", invariant="off-diagonal Gram = node count")
    iv = inp.intersection_vector
    if len(iv) != len(names):
        raise ValidationError(f"intersection_vector has length {len(iv)}",
                              field="intersection_vector")
    for cid, pts in inp.restriction_points.items():
        if cid not in config.index:
            raise ValidationError(f"unknown component {cid!r}", field=f"restriction_points.{cid}")
    for i, cid in enumerate(names):
        pts = inp.restriction_points.get(cid, ())
        deg = sum((m for _, m in pts), Fraction(0))
        if deg != iv[i]:
            raise ValidationError(f"restriction to {cid!r} has degree {deg}, expected {iv[i]}",
                                  field=f"restriction_points.{cid}",
                                  invariant="sum of multiplicities = C.D_m")
        nodes = [p for _, _, p in config.node_points(cid)]
        for p, _ in pts:
            if any(_same_point(p, q) for q in nodes):
                raise SupportAtNode(f"restriction point {p} on {cid!r} is a node",
                                    field=f"restriction_points.{cid}",
                                    invariant="support avoids node points")
    a = orthogonal_correction(G, iv)
    divisors = {}
    for i, cid in enumerate(names):
        correction = -sum((G[i, j] * a[j] for j in range(len(names))), Fraction(0))
        pts = tuple(inp.restriction_points.get(cid, ()))
        if correction != 0:
            ref = as_point(inp.reference_points.get(cid, INF))
            if any(_same_point(ref, q) for _, _, q in config.node_points(cid)):
                raise SupportAtNode(f"reference point {ref} on {cid!r} is a node",
                                    field=f"reference_points.{cid}",
                                    invariant="support avoids node points")
            pts = pts + ((ref, correction),)
        divisors[cid] = pts
    corrected = ConfigLineBundle(divisors, inp.edge_values)
    cycle = inp.distinguished_cycle or default_cycle(config)
    if reverse:
        cycle = reverse_walk(cycle)
    return KCEResult(a, corrected, cycle, holonomy(config, corrected, cycle))
