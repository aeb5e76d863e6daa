"""JSON document format.

Every document is ``{"format_version": "1", "kind": ..., "payload": ...}``.
Exact values travel as strings: rationals as ``"p/q"``, quadratic elements
as ``{"a": "p/q", "b": "p/q", "d": n}``, the point at infinity as ``"inf"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cusp import CuspCycle, cusp_cycle
from .divisor import INF, Component, CurveConfiguration, Node
from .errors import IHMotiveError, ParseError
from .exact import KStarClass, QuadraticFieldElement, RationalMatrix
from .motive import SurfaceDatum
from .pic import ConfigLineBundle, KCEInput

FORMAT_VERSION = "1"
KINDS = ("surface", "config", "bundle", "kce", "cusp")


# ---------------------------------------------------------------------------
# scalars


def rational_to_str(x) -> str:
    return str(Fraction(x))


def parse_rational(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"expected a rational string, got {x!r}", field=path,
                         invariant='rationals serialized as "p/q"')
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {x!r}", field=path) from None


def qf_to_json(x: QuadraticFieldElement):
    if x.b == 0:
        return rational_to_str(x.a)
    return {"a": rational_to_str(x.a), "b": rational_to_str(x.b), "d": x.d}


def parse_qf(x, path: str) -> QuadraticFieldElement:
    if isinstance(x, dict):
        missing = {"a", "b", "d"} - set(x)
        if missing:
            raise ParseError(f"quadratic element lacks {sorted(missing)}", field=path)
        d = x["d"]
        if isinstance(d, bool) or not isinstance(d, int):
            raise ParseError(f"d must be an integer, got {d!r}", field=f"{path}.d")
        try:
            return QuadraticFieldElement(parse_rational(x["a"], f"{path}.a"),
                                         parse_rational(x["b"], f"{path}.b"), d)
        except IHMotiveError as err:
            raise ParseError(str(err), field=path, invariant=err.invariant) from None
    return QuadraticFieldElement(parse_rational(x, path))


def point_to_json(p):
    if p is None:
        return None
    return "inf" if p is INF else qf_to_json(p)


def parse_point(x, path: str):
    if x is None:
        return None
    if x == "inf":
        return INF
    return parse_qf(x, path)


def matrix_to_json(M: RationalMatrix):
    return [[rational_to_str(x) for x in M.row(i)] for i in range(M.rows)]


def parse_matrix(x, path: str, cols: int | None = None) -> RationalMatrix:
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        raise ParseError("expected a list of rows", field=path)
    rows = [[parse_rational(v, f"{path}[{i}][{j}]") for j, v in enumerate(r)]
            for i, r in enumerate(x)]
    try:
        return RationalMatrix(rows, cols=cols)
    except IHMotiveError as err:
        raise ParseError(str(err), field=path, invariant=err.invariant) from None


def parse_vector(x, path: str) -> tuple:
    if not isinstance(x, list):
        raise ParseError("expected a list", field=path)
    return tuple(parse_rational(v, f"{path}[{i}]") for i, v in enumerate(x))


def kstar_to_json(c: KStarClass):
    return [{"base": qf_to_json(b), "exponent": rational_to_str(e)} for b, e in c.factors]


def parse_kstar(x, path: str) -> KStarClass:
    if isinstance(x, list):
        factors = []
        for i, f in enumerate(x):
            if not isinstance(f, dict) or "base" not in f or "exponent" not in f:
                raise ParseError("factor needs base and exponent", field=f"{path}[{i}]")
            factors.append((parse_qf(f["base"], f"{path}[{i}].base"),
                            parse_rational(f["exponent"], f"{path}[{i}].exponent")))
        return KStarClass(factors)
    return KStarClass.of(parse_qf(x, path))


def walk_to_json(walk) -> list[str]:
    return [str(e) if f else f"-{e}" for e, f in walk]


def parse_walk(x, path: str = "cycle") -> tuple:
    """A walk is a list (or comma-separated string) of node indices; ``-k`` reverses node k."""
    if isinstance(x, str):
        x = [t.strip() for t in x.split(",") if t.strip()]
    if not isinstance(x, list):
        raise ParseError("expected a list of steps", field=path)
    steps = []
    for i, t in enumerate(x):
        t = str(t)
        fwd = not t.startswith("-")
        t = t.lstrip("+-")
        if not t.isdigit():
            raise ParseError(f"bad step {x[i]!r}", field=f"{path}[{i}]")
        steps.append((int(t), fwd))
    return tuple(steps)


# ---------------------------------------------------------------------------
# documents


def make_document(kind: str, payload) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def load_document(source) -> tuple[str, dict]:
    """Parse a path, JSON text or dict into ``(kind, payload)``."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as err:
            raise ParseError(f"cannot read {path}: {err.strerror}", field=str(path)) from None
        source = text
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON at line {err.lineno} column {err.colno}: {err.msg}",
                             field=f"line {err.lineno}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", field="document")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}", field="format_version",
                         invariant=f"format_version == {FORMAT_VERSION!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", field="kind", invariant=f"kind in {KINDS}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise ParseError("payload must be an object", field="payload")
    return kind, payload


def _expect(kind: str, want: str):
    if kind != want:
        raise ParseError(f"expected a {want} document, got {kind}", field="kind")


def _get(payload: dict, key: str, path: str):
    if key not in payload:
        raise ParseError(f"missing field {key!r}", field=f"{path}.{key}")
    return payload[key]


def surface_from_payload(p: dict) -> SurfaceDatum:
    h1 = p.get("h1_dim", 0)
    if isinstance(h1, bool) or not isinstance(h1, int):
        raise ParseError("h1_dim must be an integer", field="payload.h1_dim")
    Q = parse_matrix(_get(p, "Q", "payload"), "payload.Q")
    exc = [parse_vector(v, f"payload.exceptional[{i}]")
           for i, v in enumerate(p.get("exceptional", []))]
    ample = parse_vector(p["ample"], "payload.ample") if p.get("ample") is not None else None
    cup1 = None
    if p.get("cup1") is not None:
        cup1 = tuple(parse_matrix(T, f"payload.cup1[{i}]", cols=h1)
                     for i, T in enumerate(p["cup1"]))
    return SurfaceDatum(h1, Q, exc, ample, cup1)


def surface_to_payload(s: SurfaceDatum) -> dict:
    out = {"h1_dim": s.h1_dim, "Q": matrix_to_json(s.Q),
           "exceptional": [[rational_to_str(x) for x in d] for d in s.exceptional]}
    if s.ample is not None:
        out["ample"] = [rational_to_str(x) for x in s.ample]
    if s.cup1 is not None:
        out["cup1"] = [matrix_to_json(T) for T in s.cup1]
    return out


def config_from_payload(p: dict) -> CurveConfiguration:
    comps_raw = _get(p, "components", "payload")
    if not isinstance(comps_raw, list):
        raise ParseError("components must be a list", field="payload.components")
    comps = []
    for i, c in enumerate(comps_raw):
        path = f"payload.components[{i}]"
        if not isinstance(c, dict) or "id" not in c:
            raise ParseError("component needs an id", field=path)
        comps.append(Component(str(c["id"]), c.get("genus", 0), bool(c.get("coord", True))))
    nodes = []
    for i, n in enumerate(p.get("nodes", [])):
        path = f"payload.nodes[{i}]"
        if not isinstance(n, dict) or "a" not in n or "b" not in n:
            raise ParseError("node needs endpoints a and b", field=path)
        nodes.append(Node(str(n["a"]), parse_point(n.get("pa"), f"{path}.pa"),
                          str(n["b"]), parse_point(n.get("pb"), f"{path}.pb")))
    cycles = {str(k): parse_walk(v, f"payload.cycles.{k}")
              for k, v in dict(p.get("cycles", {})).items()}
    return CurveConfiguration(tuple(comps), tuple(nodes), cycles)


def config_to_payload(c: CurveConfiguration) -> dict:
    out = {
        "components": [{"id": x.id, "genus": x.genus, "coord": x.coord_enabled}
                       for x in c.components],
        "nodes": [{"a": n.comp_a, "pa": point_to_json(n.point_a),
                   "b": n.comp_b, "pb": point_to_json(n.point_b)} for n in c.nodes],
    }
    if c.cycles:
        out["cycles"] = {k: walk_to_json(w) for k, w in c.cycles.items()}
    return out


def _parse_divisors(x, path: str) -> dict:
    if not isinstance(x, dict):
        raise ParseError("expected an object keyed by component id", field=path)
    out = {}
    for cid, pts in x.items():
        if not isinstance(pts, list):
            raise ParseError("expected a list of points", field=f"{path}.{cid}")
        items = []
        for i, e in enumerate(pts):
            q = f"{path}.{cid}[{i}]"
            if not isinstance(e, dict) or "point" not in e or "mult" not in e:
                raise ParseError("entry needs point and mult", field=q)
            items.append((parse_point(e["point"], f"{q}.point"),
                          parse_rational(e["mult"], f"{q}.mult")))
        out[str(cid)] = tuple(items)
    return out


def _divisors_to_json(divs: dict) -> dict:
    return {cid: [{"point": point_to_json(p), "mult": rational_to_str(m)} for p, m in pts]
            for cid, pts in divs.items()}


def _parse_edges(x, path: str) -> dict:
    if not isinstance(x, dict):
        raise ParseError("expected an object keyed by node index", field=path)
    out = {}
    for k, v in x.items():
        if not str(k).isdigit():
            raise ParseError(f"bad node index {k!r}", field=f"{path}.{k}")
        out[int(k)] = parse_kstar(v, f"{path}.{k}")
    return out


def _edges_to_json(edges: dict) -> dict:
    out = {}
    for k, v in sorted(edges.items()):
        fs = v.factors
        if len(fs) == 1 and fs[0][1] == 1:
            out[str(k)] = qf_to_json(fs[0][0])
        else:
            out[str(k)] = kstar_to_json(v)
    return out


def bundle_from_payload(p: dict) -> ConfigLineBundle:
    return ConfigLineBundle(_parse_divisors(p.get("divisors", {}), "payload.divisors"),
                            _parse_edges(p.get("edges", {}), "payload.edges"))


def bundle_to_payload(b: ConfigLineBundle) -> dict:
    return {"divisors": _divisors_to_json(b.divisors), "edges": _edges_to_json(b.edge_values)}


def kce_from_payload(p: dict, surface: SurfaceDatum, config: CurveConfiguration) -> KCEInput:
    iv = parse_vector(_get(p, "intersection_vector", "payload"), "payload.intersection_vector")
    cycle = parse_walk(p["cycle"], "payload.cycle") if p.get("cycle") is not None else None
    classes = p.get("component_classes")
    if classes is not None and (not isinstance(classes, list)
                                or any(not isinstance(i, int) for i in classes)):
        raise ParseError("component_classes must be a list of integers",
                         field="payload.component_classes")
    refs = {str(k): parse_point(v, f"payload.reference_points.{k}")
            for k, v in dict(p.get("reference_points", {})).items()}
    return KCEInput(surface, config, iv,
                    _parse_divisors(p.get("restriction_points", {}), "payload.restriction_points"),
                    _parse_edges(p.get("edges", {}), "payload.edges"),
                    cycle, tuple(classes) if classes is not None else None, refs)


def kce_to_payload(k: KCEInput) -> dict:
    out = {"intersection_vector": [rational_to_str(x) for x in k.intersection_vector],
           "restriction_points": _divisors_to_json(k.restriction_points),
           "edges": _edges_to_json(k.edge_values)}
    if k.distinguished_cycle is not None:
        out["cycle"] = walk_to_json(k.distinguished_cycle)
    if k.component_classes is not None:
        out["component_classes"] = list(k.component_classes)
    if k.reference_points:
        out["reference_points"] = {c: point_to_json(p) for c, p in k.reference_points.items()}
    return out


def cusp_from_payload(p: dict) -> CuspCycle:
    d = _get(p, "d", "payload")
    if isinstance(d, bool) or not isinstance(d, int):
        raise ParseError("d must be an integer", field="payload.d")
    return cusp_cycle(d)


def cusp_to_payload(c: CuspCycle) -> dict:
    return {"d": c.d, "preperiod": list(c.preperiod), "period": list(c.period)}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
