"""Command-line front end.

Every subcommand produces a :class:`CommandResult`; ``--json`` prints it as
a single JSON object, otherwise an aligned key/value listing.  Exit code 0
means success, 2 a rejected input (bad arguments, malformed file, domain
error) and 3 a computation that could not be completed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import asymptotics, enumeration, kirchhoff, lattice, ramanujan, spectral
from .errors import ClatError, ComputationError, ValidationError
from .graph import (
    Graph,
    graph_predicates,
    iterate_clique_insert,
    line_graph,
    read_edge_list,
    subdivision,
    write_edge_list,
)

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3

# Required payload keys per subcommand; bumping any of these bumps SCHEMA_VERSION.
PAYLOAD_KEYS: dict[str, tuple[str, ...]] = {
    "gen hex": ("m", "n", "boundary", "k", "vertices", "edges", "output"),
    "transform clique-insert": ("k", "vertices", "edges", "output"),
    "transform line": ("k", "vertices", "edges", "output"),
    "transform subdivision": ("k", "vertices", "edges", "output"),
    "spectrum": ("kind", "order", "values"),
    "energy": ("vertices", "energy", "per_vertex"),
    "energy-limit": ("lattice", "per_vertex", "per_cell", "grid", "delta"),
    "energy-table": ("lattice", "rows"),
    "kirchhoff": ("n", "kf", "average_kf"),
    "kf-limit": ("lattice", "fraction", "decimal"),
    "trees count": ("vertices", "count"),
    "trees predict": ("r", "n", "k", "base_count", "predicted"),
    "trees entropy": ("z_base", "r", "k", "entropy"),
    "dimers count": ("vertices", "count"),
    "dimers check": ("bound", "count", "equality", "delta_le_3", "consistent"),
    "dimers free-energy": ("free_energy", "source"),
    "expander gap": ("r", "mu2"),
    "expander iterate": ("r", "mu2", "k", "values"),
    "ramanujan build": ("p", "q", "kind", "vertices", "edges", "degree", "output"),
    "ramanujan verify": ("p", "q", "kind", "vertices", "degree", "connected", "bipartite", "lambda2", "bound", "ramanujan", "mu2"),
}


def result_schema(command: str) -> dict:
    """JSON Schema for the ``--json`` output of one subcommand."""
    return {
        "type": "object",
        "required": ["schema_version", "command", "status", "payload", "diagnostics"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "status": {"enum": ["ok", "error"]},
            "payload": {"type": "object", "required": list(PAYLOAD_KEYS[command])},
            "diagnostics": {"type": "array", "items": {"type": "string"}},
        },
    }


@dataclass
class CommandResult:
    command: str
    status: str = "ok"
    payload: dict[str, Any] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    json_output: bool = False

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }

    def render_text(self) -> str:
        lines = []
        if self.payload:
            width = max(len(k) for k in self.payload)
            for k, v in self.payload.items():
                lines.append(f"{k.ljust(width)}  {_text_value(v)}")
        lines.extend(f"# {d}" for d in self.diagnostics)
        return "\n".join(lines)


def _real(x: float) -> float:
    return float(f"{x:.10g}")


def _text_value(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list):
        if v and isinstance(v[0], dict):
            keys = list(v[0])
            rows = [[_text_value(r[k]) for k in keys] for r in v]
            widths = [max(len(k), *(len(r[i]) for r in rows)) for i, k in enumerate(keys)]
            out = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
            out += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
            return "\n" + "\n".join(out)
        return " ".join(_text_value(x) for x in v)
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------


def _load(path: str) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _regular_degree(g: Graph) -> int:
    r = graph_predicates(g).regular_degree
    if r is None:
        raise ValidationError("graph is not regular")
    return r


def cmd_gen_hex(a, res: CommandResult):
    spec = lattice.LatticeSpec(a.m, a.n, a.boundary, a.k)
    build = lattice.build_iterated_lattice(spec)
    g = build.graph
    if a.output:
        write_edge_list(g, a.output, [spec.header()])
    res.payload.update(
        m=a.m, n=a.n, boundary=a.boundary, k=a.k,
        vertices=g.vertex_count, edges=g.edge_count, output=a.output,
        boundary_a_edges=len(build.boundary_a_edges), boundary_b_edges=len(build.boundary_b_edges),
    )


def cmd_transform(a, res: CommandResult):
    g = _load(a.input)
    if a.kind == "clique-insert":
        out = iterate_clique_insert(g, a.k)
    elif a.kind == "line":
        out = line_graph(g)
    else:
        out = subdivision(g)
    if a.output:
        write_edge_list(out, a.output, [f"{a.kind} k={a.k} of {a.input}"])
    res.payload.update(k=a.k, vertices=out.vertex_count, edges=out.edge_count, output=a.output)


def cmd_spectrum(a, res: CommandResult):
    if a.closed_form:
        if a.m is None or a.n is None:
            raise UsageError("--closed-form needs --m and --n")
        spec = lattice.hex_torus_closed_form_spectrum(a.m, a.n)
    else:
        if not a.input:
            raise UsageError("spectrum needs -i FILE or --closed-form")
        g = _load(a.input)
        spec = spectral.laplacian_spectrum(g) if a.laplacian else spectral.adjacency_spectrum(g)
    res.payload.update(kind=spec.kind, order=spec.source_order, values=[_real(x) for x in spec.values])


def cmd_energy(a, res: CommandResult):
    g = _load(a.input)
    spec = spectral.adjacency_spectrum(g)
    e = spectral.graph_energy(spec)
    res.payload.update(vertices=g.vertex_count, energy=_real(e), per_vertex=_real(e / g.vertex_count))
    if a.clique_insert:
        r = _regular_degree(g)
        res.payload["clique_insert_energy"] = _real(spectral.clique_insert_energy(spec, r))


def cmd_energy_limit(a, res: CommandResult):
    cfg = asymptotics.QuadratureConfig(
        grid=a.grid or asymptotics.default_grid(), refine_limit=a.refine_limit, tol=a.tol
    )
    lim = asymptotics.asymptotic_energy_per_vertex(a.lattice, cfg)
    res.payload.update(
        lattice=a.lattice, per_vertex=_real(lim.per_vertex), per_cell=_real(lim.per_cell),
        grid=lim.quadrature.grid, delta=lim.quadrature.delta,
    )


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for item in text.split(","):
        try:
            m, n = item.lower().split("x")
            sizes.append((int(m), int(n)))
        except ValueError:
            raise UsageError(f"bad size {item!r}; expected MxN") from None
    return sizes


def cmd_energy_table(a, res: CommandResult):
    rows = asymptotics.finite_size_energy_table(a.lattice, _parse_sizes(a.sizes))
    res.payload.update(
        lattice=a.lattice,
        rows=[
            {"m": r.m, "n": r.n, "vertices": r.vertices, "energy": _real(r.energy), "per_vertex": _real(r.per_vertex)}
            for r in rows
        ],
    )


def cmd_kirchhoff(a, res: CommandResult):
    g = _load(a.input)
    rep = kirchhoff.kirchhoff_index(g)
    res.payload.update(n=rep.n, kf=_real(rep.kf), average_kf=_real(rep.average_kf))
    if a.pairwise:
        res.payload["kf_pairwise"] = _real(kirchhoff.kirchhoff_index_pairwise(g).kf)
    if a.predict:
        r = _regular_degree(g)
        res.payload["transform"] = a.predict
        res.payload["predicted"] = _real(kirchhoff.kf_transform(rep.kf, r, rep.n, a.predict))
        if a.predict.replace("-", "_") == "clique_insert":
            res.payload["predicted_spectral"] = _real(kirchhoff.kf_clique_insert_spectral(rep.kf, r, rep.n))
            res.diagnostics.append(kirchhoff.CLIQUE_INSERT_CAVEAT)


def cmd_kf_limit(a, res: CommandResult):
    value = kirchhoff.average_kf_limit(a.lattice)
    res.payload.update(lattice=a.lattice, fraction=f"{value.numerator}/{value.denominator}", decimal=_exact_decimal(value, 10))
    res.diagnostics.append(kirchhoff.KF_LIMIT_CAVEAT)


def _exact_decimal(x: Fraction, digits: int) -> str:
    scaled = x * 10**digits
    q = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    s = str(q).rjust(digits + 1, "0")
    return f"{s[:-digits]}.{s[-digits:]}"


def cmd_trees(a, res: CommandResult):
    if a.action == "entropy":
        if a.z is None:
            raise UsageError("trees entropy needs --z")
        res.payload.update(z_base=a.z, r=a.r, k=a.k, entropy=_real(enumeration.tree_entropy_iterated(a.z, a.r, a.k)))
        return
    if not a.input:
        raise UsageError(f"trees {a.action} needs -i FILE")
    g = _load(a.input)
    count = enumeration.count_spanning_trees(g)
    if a.action == "count":
        res.payload.update(vertices=g.vertex_count, count=str(count))
        return
    r = _regular_degree(g)
    pred = enumeration.predict_spanning_trees_iterated(count, r, g.vertex_count, a.k)
    res.payload.update(r=r, n=g.vertex_count, k=a.k, base_count=str(count), predicted=str(pred))


def cmd_dimers(a, res: CommandResult):
    if a.action == "free-energy":
        if a.input:
            g = _load(a.input)
            res.payload.update(free_energy=_real(enumeration.dimer_free_energy(g)), source="enumeration", vertices=g.vertex_count)
        else:
            res.payload.update(free_energy=_real(enumeration.dimer_free_energy_limit_cubic()), source="limit")
        return
    if not a.input:
        raise UsageError(f"dimers {a.action} needs -i FILE")
    g = _load(a.input)
    if a.action == "count":
        res.payload.update(vertices=g.vertex_count, count=str(enumeration.count_perfect_matchings(g)))
    else:
        chk = enumeration.dimer_line_graph_check(g)
        res.payload.update(bound=str(chk.bound), count=str(chk.count), equality=chk.equality, delta_le_3=chk.delta_le_3, consistent=chk.consistent)


def cmd_expander(a, res: CommandResult):
    if a.action == "gap":
        if not a.input:
            raise UsageError("expander gap needs -i FILE")
        g = _load(a.input)
        r = _regular_degree(g)
        mu2 = spectral.spectral_gap(g)
        res.payload.update(r=r, mu2=_real(mu2))
        if a.k:
            res.payload["predicted"] = [_real(spectral.gap_iterate(max(mu2, 0.0), r, j)) for j in range(a.k + 1)]
        return
    if a.mu2 is None or a.r is None:
        raise UsageError("expander iterate needs --mu2 and --r")
    vals = [spectral.gap_iterate(a.mu2, a.r, j) for j in range(a.k + 1)]
    res.payload.update(r=a.r, mu2=a.mu2, k=a.k, values=[_real(v) for v in vals])


def cmd_ramanujan(a, res: CommandResult):
    if a.action == "build":
        g, gens = ramanujan.build_X(a.p, a.q, a.max_order)
        if a.output:
            write_edge_list(g, a.output, [f"X {a.p} {a.q} {gens.kind}"])
        res.payload.update(p=a.p, q=a.q, kind=gens.kind, vertices=g.vertex_count, edges=g.edge_count, degree=gens.degree, output=a.output)
        return
    rep = ramanujan.build_and_verify_X(a.p, a.q, gamma=a.gamma, k=a.k, max_order=a.max_order)
    res.payload.update(
        p=a.p, q=a.q, kind=rep.kind, vertices=rep.graph.vertex_count, degree=rep.degree,
        connected=rep.connected, bipartite=rep.bipartite, lambda2=_real(rep.lambda2),
        bound=_real(rep.bound), ramanujan=rep.ramanujan, mu2=_real(rep.mu2),
    )
    if rep.epsilon is not None:
        res.payload["epsilon"] = _real(rep.epsilon)
        res.payload["gap_bounds"] = [_real(x) for x in rep.gap_bounds]
        if rep.epsilon <= 0:
            res.diagnostics.append("gap lower bound is not positive for this p and gamma")
    if not rep.connected:
        res.diagnostics.append("Cayley graph is disconnected; Ramanujan test not applicable")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clat", description="Clique-inserted lattices: spectra, Kirchhoff index, trees, dimers, expanders.")
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, **kw) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(handler=handler, command_name=name)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    def inp(sp, required=True):
        sp.add_argument("-i", "--input", required=required, help="edge-list file")

    gen = add("gen", cmd_gen_hex, help="generate a lattice")
    gen.add_argument("family", choices=["hex"])
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--boundary", choices=lattice.BOUNDARIES, default="torus")
    gen.add_argument("-k", type=int, default=0, help="clique-insert depth (1: 3-12-12, 2: 3-6-24)")
    gen.add_argument("-o", "--output")

    tr = add("transform", cmd_transform, help="line graph, subdivision or clique-insert")
    tr.add_argument("kind", choices=["clique-insert", "line", "subdivision"])
    inp(tr)
    tr.add_argument("-k", type=int, default=1)
    tr.add_argument("-o", "--output")

    sp = add("spectrum", cmd_spectrum, help="adjacency or Laplacian spectrum")
    inp(sp, required=False)
    sp.add_argument("--laplacian", action="store_true")
    sp.add_argument("--closed-form", action="store_true", help="hexagonal torus closed form")
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)

    en = add("energy", cmd_energy, help="graph energy")
    inp(en)
    en.add_argument("--clique-insert", action="store_true", help="also predict the energy of C(G)")

    el = add("energy-limit", cmd_energy_limit, help="bulk energy per vertex by quadrature")
    el.add_argument("--lattice", choices=["3-12-12", "3-6-24"], required=True)
    el.add_argument("--tol", type=float, default=1e-6)
    el.add_argument("--grid", type=int, help="initial grid (default: $CLAT_QUAD_GRID or 512)")
    el.add_argument("--refine-limit", type=int, default=4)

    et = add("energy-table", cmd_energy_table, help="finite-size energy per vertex")
    et.add_argument("--lattice", choices=["3-12-12", "3-6-24"], required=True)
    et.add_argument("--sizes", default="2x2,4x4,8x8,16x16,32x32,100x100")

    kf = add("kirchhoff", cmd_kirchhoff, help="Kirchhoff index")
    inp(kf)
    kf.add_argument("--predict", choices=["line", "subdivision", "clique-insert"])
    kf.add_argument("--pairwise", action="store_true", help="also sum pairwise resistances")

    kl = add("kf-limit", cmd_kf_limit, help="limiting average resistance")
    kl.add_argument("--lattice", choices=["3-12-12", "3-6-24"], required=True)

    trees = add("trees", cmd_trees, help="spanning trees")
    trees.add_argument("action", choices=["count", "predict", "entropy"])
    inp(trees, required=False)
    trees.add_argument("-k", type=int, default=1)
    trees.add_argument("--z", type=float, help="spanning-tree entropy of the base lattice")
    trees.add_argument("--r", type=int, default=3)

    dim = add("dimers", cmd_dimers, help="perfect matchings")
    dim.add_argument("action", choices=["count", "check", "free-energy"])
    inp(dim, required=False)

    ex = add("expander", cmd_expander, help="spectral gap and its clique-insert iterates")
    ex.add_argument("action", choices=["gap", "iterate"])
    inp(ex, required=False)
    ex.add_argument("--mu2", type=float)
    ex.add_argument("--r", type=int)
    ex.add_argument("-k", type=int, default=0)

    ra = add("ramanujan", cmd_ramanujan, help="LPS / Chiu Cayley graphs")
    ra.add_argument("action", choices=["build", "verify"])
    ra.add_argument("--p", type=int, required=True)
    ra.add_argument("--q", type=int, required=True)
    ra.add_argument("--gamma", type=float)
    ra.add_argument("-k", type=int, default=0)
    ra.add_argument("--max-order", type=int, default=ramanujan.DEFAULT_MAX_ORDER)
    ra.add_argument("-o", "--output")
    return p


def _command_label(a) -> str:
    name = a.command_name
    action = getattr(a, "action", None)
    if name == "gen":
        return f"gen {a.family}"
    if name == "transform":
        return f"transform {a.kind}"
    return f"{name} {action}" if action else name


def run(argv: list[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult(" ".join(argv[:1]), "error", {}, [str(exc)], EXIT_VALIDATION)
    res = CommandResult(_command_label(args))
    try:
        args.handler(args, res)
    except ValidationError as exc:
        res.status, res.exit_code = "error", EXIT_VALIDATION
        res.diagnostics.append(f"{type(exc).__name__}: {exc}")
    except (ComputationError, ClatError, ArithmeticError) as exc:
        res.status, res.exit_code = "error", EXIT_COMPUTATION
        res.diagnostics.append(f"{type(exc).__name__}: {exc}")
    res.json_output = getattr(args, "json", False)
    return res


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    if res.json_output or "--json" in argv:
        print(json.dumps(res.to_json(), allow_nan=False))
    else:
        text = res.render_text()
        if text:
            print(text, file=sys.stdout if res.status == "ok" else sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
