"""Command-line front end: ``ihmotive {analyze,divisor,kce,cusp,selfcheck}``.

Exit codes: 0 pass (or partial), 1 parse/validation failure or a failed
check, 2 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .cusp import cusp_cycle, fundamental_unit, unit_period_check
from .divisor import (
    cech_check,
    euler_char_compact,
    euler_char_divisor,
    euler_char_surface,
    motive_dims,
)
from .errors import ComputationError, HypothesisViolated, IHMotiveError, ParseError
from .exact import is_negative_definite, mat_solve
from .io import (
    kstar_to_json,
    matrix_to_json,
    qf_to_json,
    rational_to_str,
    walk_to_json,
)
from .motive import (
    gram_matrix,
    hard_lefschetz_check,
    ih_decomposition,
    kunneth_betti,
    projector_p,
    restricted_form,
    signature,
)
from .pic import KCEInput, cl_kce
from .selfcheck import run_selfcheck


@dataclass
class Report:
    command: str
    status: str = "pass"
    sections: dict = field(default_factory=dict)

    def fail(self):
        self.status = "fail"

    def partial(self):
        if self.status == "pass":
            self.status = "partial"

    def to_json(self) -> str:
        return io.dumps({"command": self.command, "status": self.status,
                         "sections": self.sections})

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        for name, body in self.sections.items():
            lines.append(f"[{name}]")
            if isinstance(body, dict):
                for k, v in body.items():
                    lines.append(f"  {k} = {_fmt(v)}")
            else:
                lines.append(f"  {_fmt(body)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "structured" else self.to_text()


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False)


def _vec(v):
    return [rational_to_str(x) for x in v]


def _surface(source):
    kind, payload = io.load_document(source)
    if kind != "surface":
        raise ParseError(f"expected a surface document, got {kind}", field="kind")
    return io.surface_from_payload(payload), payload


def _config(source):
    kind, payload = io.load_document(source)
    if kind != "config":
        raise ParseError(f"expected a config document, got {kind}", field="kind")
    return io.config_from_payload(payload)


def cmd_analyze(source) -> Report:
    s, payload = _surface(source)
    rep = Report("analyze")
    G = gram_matrix(s)
    rep.sections["surface"] = {"b2": s.b2, "r": s.r, "h1_dim": s.h1_dim}
    rep.sections["gram"] = {"matrix": matrix_to_json(G),
                            "negative_definite": is_negative_definite(G)}
    P = projector_p(s)
    rep.sections["projector"] = {"matrix": matrix_to_json(P.P), "rank": P.rank,
                                 "idempotent": P.is_idempotent(),
                                 "self_adjoint": P.is_self_adjoint()}
    ih, _ = ih_decomposition(s)
    R = restricted_form(s, ih)
    det = R.det() if R.rows else 1
    rep.sections["ih2"] = {"dim": len(ih), "basis": [_vec(v) for v in ih],
                           "restricted_form": matrix_to_json(R),
                           "determinant": rational_to_str(det),
                           "signature": list(signature(R)[:2])}
    rep.sections["kunneth"] = {"dims": list(kunneth_betti(s).dims)}
    if not (P.is_idempotent() and P.is_self_adjoint() and det != 0):
        rep.fail()
    lef = payload.get("lefschetz") or {}
    c = io.parse_vector(lef["c"], "payload.lefschetz.c") if "c" in lef else s.ample
    if c is not None:
        if "a" in lef:
            a = io.parse_vector(lef["a"], "payload.lefschetz.a")
        elif s.r:
            a = mat_solve(G, [s.pairing(c, d) for d in s.exceptional])
        else:
            a = ()
        try:
            h = hard_lefschetz_check(s, c, a)
        except HypothesisViolated as err:
            rep.sections["lefschetz"] = {"verdict": "hypothesis violated", "reason": str(err),
                                         "a": _vec(a)}
            rep.partial()
        else:
            rep.sections["lefschetz"] = {
                "c": _vec(c), "a": _vec(a), "l": _vec(h.ell),
                "l.l": rational_to_str(h.ell_sq), "c.c": rational_to_str(h.c_sq),
                "inequality": h.inequality_holds, "h0_to_h4": h.h0_h4_iso,
                "h1_to_h3": "not evaluated" if h.h1_h3_iso is None else h.h1_h3_iso}
            if not h.ok:
                rep.fail()
    return rep


def cmd_divisor(source, chi: int | None = None, surface_source=None) -> Report:
    c = _config(source)
    rep = Report("divisor")
    m = motive_dims(c)
    rep.sections["motive"] = {"m0": m.m0_dim, "m1": m.m1_dim, "m2": m.m2_dim, "b1": m.b1}
    rep.sections["cycle_basis"] = [list(v) for v in m.cycle_basis]
    cech = cech_check(c)
    rep.sections["cech"] = {"V": cech.V, "E": cech.E, "boundary_rank": cech.boundary_rank,
                            "kernel_dim": cech.kernel_dim, "exact": cech.exact,
                            "euler_identity": cech.euler_identity}
    euler = {"chi_D": euler_char_divisor(c)}
    if surface_source is not None:
        s, _ = _surface(surface_source)
        chi = euler_char_surface(s.h1_dim, s.b2)
    if chi is not None:
        euler["chi_smooth"] = chi
        euler["chi_c"] = euler_char_compact(c, chi)
    rep.sections["euler"] = euler
    if not cech.ok:
        rep.fail()
    return rep


def load_kce(surface_source, config_source, third_source, cycle=None) -> KCEInput:
    s, _ = _surface(surface_source)
    c = _config(config_source)
    kind, payload = io.load_document(third_source)
    if kind == "bundle":
        b = io.bundle_from_payload(payload)
        inp = KCEInput(s, c, tuple(b.degree(x.id) for x in c.components), b.divisors,
                       b.edge_values)
    elif kind == "kce":
        inp = io.kce_from_payload(payload, s, c)
    else:
        raise ParseError(f"expected a bundle or kce document, got {kind}", field="kind")
    if cycle is not None:
        walk = c.cycles[cycle] if cycle in c.cycles else io.parse_walk(cycle, "--cycle")
        inp = KCEInput(inp.surface, inp.config, inp.intersection_vector,
                       inp.restriction_points, inp.edge_values, walk,
                       inp.component_classes, inp.reference_points)
    elif inp.distinguished_cycle is None and len(c.cycles) == 1:
        walk = next(iter(c.cycles.values()))
        inp = KCEInput(inp.surface, inp.config, inp.intersection_vector,
                       inp.restriction_points, inp.edge_values, walk,
                       inp.component_classes, inp.reference_points)
    return inp


def cmd_kce(surface_source, config_source, third_source, cycle=None,
            orientation: str = "forward") -> Report:
    inp = load_kce(surface_source, config_source, third_source, cycle)
    res = cl_kce(inp, reverse=(orientation == "reverse"))
    rep = Report("kce")
    rep.sections["correction"] = {"a": _vec(res.coefficients)}
    rep.sections["corrected_divisors"] = io.bundle_to_payload(res.corrected)["divisors"]
    rep.sections["cycle"] = {"walk": walk_to_json(res.cycle), "orientation": orientation}
    value = {"factors": kstar_to_json(res.value), "trivial": res.value.is_trivial()}
    N, w = res.value.power_value()
    value["power"] = N
    value["value_to_power"] = qf_to_json(w)
    rep.sections["class"] = value
    return rep


def cmd_cusp(d: int, emit_config=None) -> Report:
    cyc = cusp_cycle(d)
    rep = Report("cusp")
    check = unit_period_check(cyc)
    rep.sections["expansion"] = {"d": d, "seed": {"p": cyc.seed.p, "q": cyc.seed.q},
                                 "preperiod": list(cyc.preperiod), "period": list(cyc.period)}
    rep.sections["unit"] = {"epsilon": qf_to_json(fundamental_unit(d)),
                            "eigenvalue": qf_to_json(check.eigenvalue)
                            if check.eigenvalue is not None else None,
                            "exponent": check.exponent}
    rep.sections["unit_period_check"] = {"pass": check.ok, "failures": list(check.failures)}
    if not check.ok:
        rep.fail()
    if emit_config is not None:
        doc = io.make_document("config", io.config_to_payload(cyc.config))
        Path(emit_config).write_text(io.dumps(doc))
        rep.sections["emitted"] = {"config": str(emit_config)}
    return rep


def cmd_selfcheck(seed: int = 0, fixtures=()) -> Report:
    extra = [(Path(f).stem, (lambda f=f: _surface(f)[0])) for f in fixtures]
    rep = Report("selfcheck")
    results = run_selfcheck(seed, extra)
    rep.sections["seed"] = seed
    rep.sections["properties"] = {r.name: ("pass" if r.passed else f"FAIL: {r.detail}")
                                  for r in results}
    if not all(r.passed for r in results):
        rep.fail()
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ihmotive", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="projector, IH^2 and Kunneth data of a surface")
    a.add_argument("surface")

    d = sub.add_parser("divisor", help="dual graph and motive dimensions of a configuration")
    d.add_argument("config")
    d.add_argument("--chi", type=int, help="Euler characteristic of the smooth compactification")
    d.add_argument("--surface", help="surface document to take chi from")

    k = sub.add_parser("kce", help="Kummer-Chern-Eisenstein class of a bundle")
    k.add_argument("surface")
    k.add_argument("config")
    k.add_argument("bundle", help="bundle or kce document")
    k.add_argument("--cycle", help="cycle name from the config, or a step list like 0,1,-2")
    k.add_argument("--orientation", choices=("forward", "reverse"), default="forward")

    c = sub.add_parser("cusp", help="cusp cycle and fundamental unit of Q(sqrt d)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--emit-config", metavar="PATH")

    s = sub.add_parser("selfcheck", help="run the invariant suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fixture", action="append", default=[], help="extra surface document")

    for sp in (a, d, k, c, s):
        sp.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            rep = cmd_analyze(args.surface)
        elif args.command == "divisor":
            rep = cmd_divisor(args.config, args.chi, args.surface)
        elif args.command == "kce":
            rep = cmd_kce(args.surface, args.config, args.bundle, args.cycle, args.orientation)
        elif args.command == "cusp":
            rep = cmd_cusp(args.d, args.emit_config)
        else:
            rep = cmd_selfcheck(args.seed, args.fixture)
    except ComputationError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2
    except IHMotiveError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.render(args.format))
    return 1 if rep.status == "fail" else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
