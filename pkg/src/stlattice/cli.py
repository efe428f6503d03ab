"""Command-line entry point (``st``).

Exit codes: 0 success, 1 a checked property is false, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import convex_poly as cp
from .constructors import make, mnn_layout_for, m_nn
from .errors import LatticeError
from .mnn_classify import PairType, classify_pair, classify_report, verify_characterization
from .pair_enum import (
    MaximalityMode,
    SubsetPair,
    enumerate_maximal_pairs,
    format_report,
    parse_report_text,
    report_to_json,
)
from .poset_core import Lattice, format_lattice, load_lattice
from . import st_props

DEFAULT_SEED = 20211


class UsageError(Exception):
    pass


def export_dot(l: Lattice, name: str = "L") -> str:
    """Hasse diagram as a DOT digraph, drawn bottom to top."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    lines += [f'  "{lab}";' for lab in l.labels]
    lines += [f'  "{l.labels[a]}" -> "{l.labels[b]}";' for a, b in l.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _add_lattice_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lattice", metavar="FILE", help="lattice text file")
    g.add_argument("--make", metavar="NAME[:N]", help="built-in lattice, e.g. n5, m3, fig3, chain:4, mnn:3")


def _lattice(args) -> tuple[Lattice, str]:
    if args.make:
        return make(args.make), args.make
    return load_lattice(args.lattice), Path(args.lattice).stem


def _set(l: Lattice, text: str) -> int:
    return l.mask(x.strip() for x in text.split(",") if x.strip())


def _bool(v: bool) -> str:
    return "true" if v else "false"


LAWS = {
    "distributive": ("ST-distributive", st_props.st_distributive),
    "meet-distributive": ("ST-meet distributive", st_props.st_meet_distributive),
    "join-distributive": ("ST-join distributive", st_props.st_join_distributive),
    "modular": ("ST-modular", st_props.st_modular),
    "meet-modular": ("ST-meet modular", st_props.st_meet_modular),
    "join-modular": ("ST-join modular", st_props.st_join_modular),
}


def cmd_make(args, out):
    l = make(args.name)
    out.write(export_dot(l, args.name) if args.dot else format_lattice(l))
    return 0


def cmd_check(args, out):
    l, _ = _lattice(args)
    title, fn = LAWS[args.law]
    ok = fn(l, _set(l, args.S), _set(l, args.T))
    out.write(f"{title}: {_bool(ok)}\n")
    return 0 if ok else 1


def cmd_elements(args, out):
    l, _ = _lattice(args)
    sets = st_props.distributive_element_sets(l)
    out.write(f"Distr={l.render(sets.distr)}\n")
    out.write(f"mDistr={l.render(sets.m_distr)}\n")
    out.write(f"jDistr={l.render(sets.j_distr)}\n")
    return 0


def cmd_ss_check(args, out):
    l, _ = _lattice(args)
    ok = st_props.is_supersolvable_with(l, _set(l, args.delta))
    out.write(f"supersolvable: {_bool(ok)}\n")
    return 0 if ok else 1


def cmd_enumerate(args, out):
    l, name = _lattice(args)
    mode = MaximalityMode(args.mode)
    report = enumerate_maximal_pairs(l, mode, lattice_id=name, workers=args.threads)
    layout = mnn_layout_for(l)
    if layout is not None and mode is MaximalityMode.PROBLEM1:
        classify_report(layout, report)
    out.write(report_to_json(l, report) if args.json else format_report(l, report))
    return 0


def cmd_classify(args, out):
    l, layout = m_nn(args.n)
    if args.pairs:
        items = [pair for pair, _ in parse_report_text(l, Path(args.pairs).read_text(encoding="utf-8"))]
    elif args.S is not None and args.T is not None:
        items = [SubsetPair(_set(l, args.S), _set(l, args.T))]
    else:
        raise UsageError("classify needs --pairs FILE or both --S and --T")
    status = 0
    for pair in items:
        tag = classify_pair(layout, pair.s, pair.t)
        label = f"{tag.number}:{tag.value}" if tag else "Unclassified"
        out.write(f"S={l.render(pair.s)} T={l.render(pair.t)} -> {label}\n")
        if tag is None:
            status = 1
    return status


def cmd_verify_mnn(args, out):
    rep = verify_characterization(args.n, workers=args.threads)
    out.write(rep.summary() + "\n")
    for tag in PairType:
        out.write(f"  {tag.number}:{tag.value} found={rep.counts[tag]} expected={rep.expected[tag]}\n")
    for pair in rep.unclassified:
        out.write(f"  unclassified: {pair}\n")
    for tag, inst in rep.missing:
        out.write(f"  missing {tag.value} instance: {inst}\n")
    return 0 if rep.ok else 1


def cmd_convex_identity(args, out):
    flat = cp.parse_flat(Path(args.flat).read_text(encoding="utf-8"))
    b = cp.parse_polytope(Path(args.b).read_text(encoding="utf-8"), flat.dim)
    c = cp.parse_polytope(Path(args.c).read_text(encoding="utf-8"), flat.dim)
    lhs, rhs = cp.affine_hull_identity_sides(flat, b, c)
    out.write("A ^ conv(B,C):\n" + cp.format_polytope(lhs))
    out.write("conv(A ^ B, C):\n" + cp.format_polytope(rhs))
    ok = lhs.vertices == rhs.vertices
    out.write(f"equal: {_bool(ok)}\n")
    return 0 if ok else 1


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-100, 100), rng.randint(1, 10))


def random_identity_instance(rng: random.Random):
    """A random line A, polygon B and polytope C on A, all in the plane."""
    while True:
        d = (random_rational(rng), random_rational(rng))
        if d != (0, 0):
            break
    a = cp.AffineFlat((random_rational(rng), random_rational(rng)), (d,))
    b = cp.QPolytope.of([(random_rational(rng), random_rational(rng)) for _ in range(rng.randint(1, 7))])
    c_pts = []
    for _ in range(rng.randint(0, 2)):
        lam = random_rational(rng) / 10
        c_pts.append(tuple(p + lam * v for p, v in zip(a.point, d)))
    return a, b, cp.QPolytope(2, tuple(c_pts))


def cmd_convex_random(args, out):
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.count):
        if not cp.verify_affine_hull_identity(*random_identity_instance(rng)):
            failures += 1
    out.write(f"instances={args.count} seed={args.seed} failures={failures}\n")
    return 0 if failures == 0 else 1


def cmd_export_dot(args, out):
    l, name = _lattice(args)
    out.write(export_dot(l, name))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="st", description="ST-distributivity toolkit for finite lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make", help="print a built-in lattice")
    p.add_argument("name", help="n5, m3, fig3, fig8, chain:N, mn:N, mnn:N")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of the lattice text format")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("check", help="test an ST law for given S and T")
    _add_lattice_source(p)
    p.add_argument("--S", required=True, help="comma-separated labels")
    p.add_argument("--T", required=True, help="comma-separated labels")
    p.add_argument("--law", choices=sorted(LAWS), default="distributive")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("elements", help="distributive, meet- and join-distributive elements")
    _add_lattice_source(p)
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("ss-check", help="supersolvability with respect to a maximal chain")
    _add_lattice_source(p)
    p.add_argument("--delta", required=True, help="maximal chain, comma-separated labels")
    p.set_defaults(func=cmd_ss_check)

    p = sub.add_parser("enumerate", help="list maximal ST-pairs")
    _add_lattice_source(p)
    p.add_argument("--mode", choices=[m.value for m in MaximalityMode], default="problem1")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--threads", type=int, default=1, help="worker processes for the T loop")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="type of M_{n,n} pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--S")
    p.add_argument("--T")
    p.add_argument("--pairs", metavar="FILE", help="pair lines as written by 'enumerate'")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-mnn", help="check the five-type characterization and counts for M_{n,n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify_mnn)

    p = sub.add_parser("convex", help="polytope checks")
    csub = p.add_subparsers(dest="convex_command", required=True)
    q = csub.add_parser("verify-identity", help="compare A n conv(B,C) with conv(A n B, C)")
    q.add_argument("--flat", required=True, metavar="FILE")
    q.add_argument("--b", required=True, metavar="FILE")
    q.add_argument("--c", required=True, metavar="FILE")
    q.set_defaults(func=cmd_convex_identity)
    q = csub.add_parser("random-check", help="the identity on seeded random plane instances")
    q.add_argument("--count", type=int, default=1000)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.set_defaults(func=cmd_convex_random)

    p = sub.add_parser("export-dot", help="Hasse diagram as DOT")
    _add_lattice_source(p)
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (LatticeError, UsageError, ValueError, OSError) as exc:
        err.write(f"st: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
