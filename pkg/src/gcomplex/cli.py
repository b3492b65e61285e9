"""``gcomplex`` command-line interface.

Exit status: 0 on success, 1 on a domain error (the error name is printed to
stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from gcomplex import expanders, extremal, families, io, spectral, synchrony
from gcomplex.errors import GraphError
from gcomplex.graph import Graph, SrgParams, degree_stats, is_connected, srg_check, triangle_count


# -- input -------------------------------------------------------------------

_PARAM_FLAGS = ("n", "p", "q", "a", "b", "two_n", "match_size")


def _add_graph_input(p: argparse.ArgumentParser):
    g = p.add_argument_group("graph input (exactly one of --family / --file)")
    g.add_argument("--family", choices=sorted(families.KINDS + ("gkl", "lattice", "moebius")),
                   help="named family; parameters via the flags below or --param")
    g.add_argument("--file", help="edge-list (1-based, 'order size' header) or graph6 (.g6) file")
    g.add_argument("--n", type=int, help="cycle/path/complete size")
    g.add_argument("--p", type=int, help="number of parts (complete_multipartite)")
    g.add_argument("--q", type=int, help="part size (complete_multipartite)")
    g.add_argument("--a", type=int, help="first side (complete_bipartite, rook)")
    g.add_argument("--b", type=int, help="second side (complete_bipartite, rook)")
    g.add_argument("--two-n", type=int, dest="two_n", help="vertex count of a Moebius ladder")
    g.add_argument("--match-size", type=int, dest="match_size", help="removed matching size")
    g.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="any family parameter, e.g. --param k=2 --param l=0 for hub_bipartite")
    g.add_argument("--double", action="store_true", help="apply the doubling construction to the family graph")


def _family_spec(args, parser) -> families.FamilySpec:
    params = {name: getattr(args, name) for name in _PARAM_FLAGS if getattr(args, name, None) is not None}
    for item in args.param:
        name, sep, value = item.partition("=")
        if not sep:
            parser.error(f"--param expects NAME=VALUE, got {item!r}")
        try:
            params[name.strip()] = int(value)
        except ValueError:
            parser.error(f"--param {name}: {value!r} is not an integer")
    kind = args.family
    if kind == "complete_minus_matching" and "n" in params and "order" not in params:
        params["order"] = params.pop("n")
    spec = families.FamilySpec(kind, params)
    if args.double:
        spec = families.FamilySpec("doubled", {"base": spec})
    return spec


def _load_graph(args, parser) -> tuple[Graph, str]:
    if (args.family is None) == (args.file is None):
        parser.error("give exactly one of --family or --file")
    if args.file is not None:
        try:
            return io.read_graph_file(args.file), args.file
        except OSError as exc:
            parser.error(f"--file: {exc}")
    spec = _family_spec(args, parser)
    return spec.build(), spec.label()


# -- output ------------------------------------------------------------------

def _text(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent + "- ") if isinstance(v, dict) else f"{indent}- {_scalar(v)}" for v in obj)
    return indent + _scalar(obj)


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items)


def _scalar(v) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, Graph):
        return io.write_graph6(v).decode()
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(v[k])}" for k in sorted(v)) + "}"
    return str(v)


def _emit(doc: dict, fmt: str):
    if fmt == "json":
        sys.stdout.write(io.dumps(doc) + "\n")
    else:
        sys.stdout.write(_text(_plain(doc)) + "\n")


def _plain(doc):
    """Make a document printable as text (Fractions and graphs kept readable)."""
    if hasattr(doc, "to_dict"):
        doc = doc.to_dict()
    if isinstance(doc, dict):
        return {k: _plain(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_plain(v) for v in doc]
    return doc


# -- commands ----------------------------------------------------------------

def cmd_gen(args, parser):
    g, label = _load_graph(args, parser)
    if args.format == "json":
        return {"source": label, "order": g.order, "size": g.size, "graph6": g,
                "edges": [[u + 1, v + 1] for u, v in g.edges()]}
    out = io.write_graph6(g).decode() + "\n" if args.graph6 else io.format_edge_list(g)
    sys.stdout.write(out)
    return None


def cmd_stats(args, parser):
    g, label = _load_graph(args, parser)
    st = degree_stats(g)
    srg = srg_check(g)
    return {
        "source": label,
        "order": g.order,
        "size": g.size,
        "connected": is_connected(g),
        "degrees": {"min": st.min_deg, "max": st.max_deg, "sum": st.sum, "sum_squares": st.sum_squares,
                    "sum_cubes": st.sum_cubes, "nearly_regular": st.nearly_regular},
        "triangles": triangle_count(g),
        "srg": None if srg is None else list(srg),
        "trace_cube_identity": spectral.trace_cube_identity_check(g),
    }


def cmd_complexity(args, parser):
    g, label = _load_graph(args, parser)
    t = spectral.tree_count_exact(g)
    doc = {"source": label, "order": g.order, "size": g.size, "treeCount": str(t)}
    try:
        doc["treeCountSpectral"] = spectral.tree_count_from_spectrum(spectral.eigenvalues(g))
    except GraphError:
        doc["treeCountSpectral"] = None
    if t > 0 and g.order > 1:
        doc["root"] = math.exp(expanders.log_int(t) / (g.order - 1))
    if args.family is not None:
        closed = _family_spec(args, parser).closed_form_tree_count()
        doc["closedForm"] = None if closed is None else str(closed)
    return doc


def cmd_spectrum(args, parser):
    g, label = _load_graph(args, parser)
    sp = spectral.eigenvalues(g, tol=args.tol)
    model = spectral.detect_two_eigenvalue(sp) if is_connected(g) else None
    return {
        "source": label,
        "values": list(sp.values),
        "clusters": [{"value": v, "multiplicity": m, "snapped": s} for (v, m), s in zip(sp.clusters, sp.snapped)],
        "two_eigenvalue": None if model is None else {
            "n": model.n, "r": model.r, "s": model.s, "z": model.z, "n1": model.n1, "x1": model.x1, "x2": model.x2},
        "traces": [str(x) for x in spectral.trace_powers(g, args.max_power)],
    }


def _filtration_config(args) -> extremal.FiltrationConfig:
    return extremal.FiltrationConfig(args.order, args.size, args.max_r, True, args.regular_only,
                                     args.allow_large, args.workers)


def cmd_filtrate(args, parser):
    return extremal.run_filtration(_filtration_config(args)).to_dict()


def cmd_verify_conjecture(args, parser):
    doc = extremal.verify_conjecture(_filtration_config(args)).to_dict()
    if not args.verbose:
        doc.pop("filtration")
    return doc


def cmd_synchrony(args, parser):
    g, label = _load_graph(args, parser)
    if args.seed is not None:
        seed = [int(x) - 1 for x in args.seed.split(",") if x.strip()]
        out = synchrony.evolve(g, synchrony.SeedConfig(args.threshold, seed))
        return {
            "source": label,
            "trajectory": [sorted(v + 1 for v in s) for s in out.trajectory],
            "i_star": "inf" if not out.synchronized else out.i_star,
            "synchronized": out.synchronized,
        }
    if args.k is None:
        parser.error("--k is required unless --seed is given")
    if args.exhaustive:
        m = synchrony.measures_exhaustive(g, args.threshold, args.k)
    else:
        m = synchrony.measures_monte_carlo(g, args.threshold, args.k, args.samples, args.rng_seed)
    doc = m.to_dict()
    doc["pK"], doc["eK"] = doc.pop("p_k"), doc.pop("e_k")
    doc.update(source=label, threshold=args.threshold)
    return doc


def cmd_expander(args, parser):
    if args.family is None:
        parser.error("--family is required")
    base = _family_spec(args, parser)
    indices = range(args.start, args.stop + 1, args.step)
    s = expanders.series(base, indices)
    doc = s.to_dict()
    if args.tail:
        doc["cd_estimate"] = expanders.cd_estimate(s, args.tail)
        doc["cd_estimate_note"] = "minimum root over the tail; an estimate of the liminf, not a limit"
    return doc


def cmd_complement(args, parser):
    g, label = _load_graph(args, parser)
    doc = extremal.complement_duality_check(g).to_dict()
    doc["source"] = label
    return doc


def cmd_verify_srg(args, parser):
    g, label = _load_graph(args, parser)
    try:
        expected = SrgParams(*(int(x) for x in args.expect.split(",")))
    except (TypeError, ValueError):
        parser.error("--expect needs four comma-separated integers v,k,lambda,mu")
    doc = families.verify_triangle_free_srg(g, expected).to_dict()
    doc["source"] = label
    return doc


_HELP = {
    "gen": "build a graph from a named family or file and print it (edge list, graph6 or JSON)",
    "stats": "degree moments, triangle count, strong-regularity parameters and the trace-cube identity",
    "complexity": "number of spanning trees by the matrix-tree theorem (exact determinant and eigenvalue product)",
    "spectrum": "Laplacian spectrum, multiplicity clusters, two-eigenvalue model and exact Tr(L^r)",
    "filtrate": "trace filtration: keep graphs maximising (-1)^(r-1) Tr(L^r) level by level",
    "verify-conjecture": "check that the filtration ends on graphs of maximal spanning-tree count",
    "synchrony": "threshold activation from seed sets: i*, p_k and e_k (exhaustive or Monte Carlo)",
    "expander": "tree-expander series: (order-1)-th roots of spanning-tree counts along a family",
    "complement": "complement facts: spectrum duality, two-eigenvalue and near-regularity, triangle identity",
    "verify-srg": "verify a triangle-free strongly regular graph and its spanning-tree closed form",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcomplex", description="Spanning-tree complexity laboratory.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, graph=True):
        p = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        if graph:
            _add_graph_input(p)
        p.set_defaults(_fn=fn, _parser=p)
        return p

    p = add("gen", cmd_gen)
    p.add_argument("--graph6", action="store_true", help="text output as graph6 instead of an edge list")
    add("stats", cmd_stats)
    add("complexity", cmd_complexity)
    p = add("spectrum", cmd_spectrum)
    p.add_argument("--tol", type=float, default=1e-10, help="eigen-residual tolerance relative to ||L||")
    p.add_argument("--max-power", type=int, default=4, help="report Tr(L^r) for r up to this value")
    for name, fn in (("filtrate", cmd_filtrate), ("verify-conjecture", cmd_verify_conjecture)):
        p = add(name, fn, graph=False)
        p.add_argument("--order", type=int, required=True, help="number of vertices")
        p.add_argument("--size", type=int, required=True, help="number of edges")
        p.add_argument("--max-r", type=int, default=3, help="deepest trace power to apply")
        p.add_argument("--regular-only", action="store_true", help="start from regular graphs only")
        p.add_argument("--allow-large", action="store_true", help="lift the enumeration envelope")
        p.add_argument("--workers", type=int, default=1, help="processes for invariant computation")
        if name == "verify-conjecture":
            p.add_argument("--verbose", action="store_true", help="include the full filtration report")
    p = add("synchrony", cmd_synchrony)
    p.add_argument("--threshold", type=int, required=True, help="active neighbours needed to join")
    p.add_argument("--k", type=int, help="seed-set size for p_k and e_k")
    p.add_argument("--seed", help="single seed set, comma-separated 1-based vertices (prints the trajectory)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all C(order, k) seed sets, exact rationals")
    mode.add_argument("--samples", type=int, default=10000, help="Monte Carlo sample count")
    p.add_argument("--rng-seed", type=int, default=0, help="seed of the PCG64 generator")
    p = add("expander", cmd_expander)
    p.add_argument("--start", type=int, required=True, help="first family index")
    p.add_argument("--stop", type=int, required=True, help="last family index (inclusive)")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--tail", type=int, default=0, help="points used by the c_d estimate (0 = skip)")
    add("complement", cmd_complement)
    p = add("verify-srg", cmd_verify_srg)
    p.add_argument("--expect", required=True, help="expected v,k,lambda,mu")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args._parser
    try:
        doc = args._fn(args, sub)
    except GraphError as exc:
        sys.stderr.write(f"{exc.name}: {exc}\n")
        return 1
    if doc is not None:
        _emit(doc, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
