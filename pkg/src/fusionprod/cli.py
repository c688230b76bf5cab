"""Command-line front end.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 for bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import catalog as cat
from .fusion import (
    FusionError,
    FusionSystem,
    fusion_system_of_group,
    is_normal_subsystem,
    is_saturated,
    systems_equal,
)
from .groups import GroupError, Subgroup, order_cap, sylow_subgroup
from .product import (
    ProductInstance,
    a_circ,
    hyperfocal_subgroup,
    op_residual_subsystem,
    product_subsystem,
    verify_main_theorem,
)
from .textio import GroupFile, ParseError, dump_fusion_system, load_group_file, subgroup_id

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


@dataclass
class Report:
    """Buffered ``name = value`` output grouped into sections."""
    kv: bool = False
    sections: list[tuple[str, list[tuple[str, str]]]] = field(default_factory=list)

    def section(self, title: str):
        self.sections.append((title, []))

    def add(self, name: str, value):
        if not self.sections:
            self.section("")
        self.sections[-1][1].append((name, fmt(value)))

    def render(self) -> str:
        out = []
        for title, rows in self.sections:
            if not self.kv and title:
                out.append(f"[{title}]")
            out.extend(f"{k} = {v}" for k, v in rows)
        return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# instance assembly

@dataclass
class Assembled:
    label: str
    group: Subgroup
    normal: Subgroup
    prime: int
    S: Subgroup
    T: Subgroup
    F: FusionSystem
    F0: FusionSystem
    instance: ProductInstance
    candidates: Callable[[], list[FusionSystem]]

    @property
    def oracle(self) -> FusionSystem:
        return cat.oracle_product(self.group, self.normal, self.T, self.prime)


def _resolve_carrier(gf: GroupFile, choice: str) -> Subgroup | None:
    if choice == "sylow":
        return None
    if choice in gf.subgroups:
        return gf.subgroups[choice]
    return gf.subgroup_from_words(choice)


def assemble_from_file(args) -> Assembled:
    if args.prime is None:
        raise UsageError("--prime is required with --group")
    if not args.normal:
        raise UsageError("--normal is required with --group")
    p = args.prime
    gf = load_group_file(args.group)
    G = gf.group.whole
    if G.order % p:
        raise UsageError(f"{p} does not divide |G| = {G.order}")
    N = gf.lookup(args.normal)
    if not N.is_normal_in(G):
        raise UsageError(f"normality: {args.normal} is not normal in G")
    T = _resolve_carrier(gf, args.carrier)
    S = sylow_subgroup(G, p)
    if T is not None:
        if not T.is_p_group(p):
            raise UsageError(f"carrier is not a {p}-group")
        if not T <= S:
            S = min(S.conjugate(g) for g in G.members if T <= S.conjugate(g))
    else:
        T = S
    S0 = S.intersection(N)
    if not S0 <= T:
        raise UsageError("carrier does not contain S ∩ N")
    F = fusion_system_of_group(G, S, p)
    F0 = fusion_system_of_group(N, S0, p)
    res = is_normal_subsystem(F, F0)
    if not res:
        raise UsageError(f"normality: {res.detail}")
    inst = ProductInstance(F, F0, T, check=False)

    return Assembled(gf.group.name, G, N, p, S, T, F, F0, inst,
                     lambda: cat.candidate_family(G, T, p))


def assemble_case(name: str, q: int | None = None) -> Assembled:
    if name in ("ex74", "ex75") and q is not None:
        case = cat.case_ex74(q) if name == "ex74" else cat.case_ex75(q)
    else:
        try:
            case = cat.get_case(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    return Assembled(case.name, case.group, case.normal, case.prime, case.sylow, case.T,
                     case.F, case.F0, case.instance, case.candidate_family)


def _case_names(selector: str) -> list[str]:
    if not selector.startswith("catalog:"):
        raise UsageError(f"case selector must look like catalog:NAME, got {selector!r}")
    name = selector.split(":", 1)[1]
    return list(cat.CASE_BUILDERS) if name == "all" else [name]


def _assemble(args) -> list[Assembled]:
    if args.case and args.group:
        raise UsageError("give either --case or --group, not both")
    if args.case:
        return [assemble_case(n, getattr(args, "q", None)) for n in _case_names(args.case)]
    if args.group:
        return [assemble_from_file(args)]
    raise UsageError("one of --case or --group is required")


# ---------------------------------------------------------------------------
# subcommands

def _hom_cells(F: FusionSystem, rep: Report, prefix: str = ""):
    counts: dict[tuple[str, str], int] = {}
    for P in F.subgroups:
        for f in F.homs[P]:
            key = (subgroup_id(F, P), subgroup_id(F, f.codomain))
            counts[key] = counts.get(key, 0) + 1
    for (a, b), n in sorted(counts.items(), key=lambda kv: (int(kv[0][0][1:]), int(kv[0][1][1:]))):
        rep.add(f"{prefix}hom[{a},{b}]", n)


def run_product(args, rep: Report) -> int:
    ok = True
    for a in _assemble(args):
        t0 = time.perf_counter()
        D = product_subsystem(a.instance)
        sat = is_saturated(D)
        op_eq = bool(systems_equal(op_residual_subsystem(D), op_residual_subsystem(a.F0)))
        oracle_eq = bool(systems_equal(D, a.oracle))
        rep.section(f"product {a.label}")
        prefix = f"{a.label}." if rep.kv and args.case else ""
        rows = [("prime", a.prime), ("carrier_order", a.T.order), ("S0_order", a.instance.S0.order),
                ("morphisms", D.morphism_count()), ("saturated", bool(sat)),
                ("op_identity", op_eq), ("oracle_equal", oracle_eq)]
        if args.verbose:
            rows.append(("seconds", time.perf_counter() - t0))
        for k, v in rows:
            rep.add(prefix + k, v)
        if args.verbose:
            _hom_cells(D, rep, prefix)
        ok &= bool(sat) and op_eq and oracle_eq
    return EXIT_OK if ok else EXIT_FAIL


def run_verify(args, rep: Report) -> int:
    ok = True
    for a in _assemble(args):
        cands = a.candidates() + [a.oracle]
        report = verify_main_theorem(a.instance, cands)
        oracle_eq = bool(systems_equal(a.instance.product, a.oracle))
        passed = report.passed and oracle_eq
        rep.section(f"verify {a.label}")
        prefix = f"{a.label}." if rep.kv else ""
        rep.add(f"{prefix}passed", passed)
        if args.verbose or not passed:
            for name, check in report.checks.items():
                rep.add(f"{prefix}{name}", bool(check))
            rep.add(f"{prefix}oracle_equal", oracle_eq)
        if args.verbose:
            rep.add(f"{prefix}seconds", sum(report.timing.values()))
        ok &= passed
    return EXIT_OK if ok else EXIT_FAIL


def run_oracle_compare(args, rep: Report) -> int:
    ok = True
    for a in _assemble(args):
        D = a.instance.product
        O = a.oracle
        eq = systems_equal(D, O)
        rep.section(f"oracle-compare {a.label}")
        prefix = f"{a.label}." if rep.kv else ""
        rep.add(f"{prefix}product_morphisms", D.morphism_count())
        rep.add(f"{prefix}oracle_morphisms", O.morphism_count())
        rep.add(f"{prefix}oracle_equal", bool(eq))
        if not eq:
            P, Q, f = eq.witness
            rep.add(f"{prefix}witness", f"{subgroup_id(D, P)} -> {subgroup_id(D, Q)} {f!r}")
        ok &= bool(eq)
    return EXIT_OK if ok else EXIT_FAIL


def run_dump(args, rep: Report) -> int:
    found = _assemble(args)
    if len(found) != 1:
        raise UsageError("dump takes a single case")
    a = found[0]
    systems = {"product": lambda: a.instance.product, "ambient": lambda: a.F,
               "normal": lambda: a.F0, "oracle": lambda: a.oracle}
    sys.stdout.write(dump_fusion_system(systems[args.system]()))
    return EXIT_OK


def run_catalog(args, rep: Report) -> int:
    for name, build in cat.CASE_BUILDERS.items():
        c = build()
        rep.section(f"case {name}")
        prefix = f"{name}." if rep.kv else ""
        rep.add(f"{prefix}prime", c.prime)
        rep.add(f"{prefix}group_order", c.group.order)
        rep.add(f"{prefix}normal_order", c.normal.order)
        rep.add(f"{prefix}sylow_order", c.sylow.order)
        rep.add(f"{prefix}carrier_order", c.T.order)
        rep.add(f"{prefix}S0_order", c.S0.order)
    return EXIT_OK


# examples

def example_flags(name: str, q: int | None) -> list[tuple[str, bool, bool]]:
    """``(flag, computed, expected)`` triples for a named example."""
    if name == "7.1":
        ex = cat.example_7_1()
        from .fusion import quotient_system
        inst = ProductInstance(ex.F, ex.F0, ex.T)
        D = product_subsystem(inst)
        Q = quotient_system(ex.F, ex.T)
        return [
            ("F0T_eq_F0", bool(systems_equal(D, ex.F0)), True),
            ("F0T_eq_F", bool(systems_equal(D, ex.F)), False),
            ("F_mod_F0_trivial", Q.image(ex.F).carrier.order == 1, True),
            ("F0T_saturated", bool(is_saturated(D)), True),
        ]
    if name == "7.4":
        ex = cat.fixture_example_7_4(3 if q is None else q)
        OpF = op_residual_subsystem(ex.F)
        OpG = op_residual_subsystem(ex.G_sys)
        DF = product_subsystem(ProductInstance(ex.F, OpF, ex.S))
        DG = product_subsystem(ProductInstance(ex.G_sys, OpG, ex.S))
        alpha_U = fusion_system_of_group(ex.ambient.generate(ex.U.generators + (ex.alpha1,)),
                                         ex.U, ex.F.prime)
        return [
            ("F_eq_G", bool(systems_equal(ex.F, ex.G_sys)), False),
            ("Op_eq", bool(systems_equal(OpF, OpG)), True),
            ("F0S_F_eq_F0S_G", bool(systems_equal(DF, DG)), False),
            ("hyp_eq_U", hyperfocal_subgroup(ex.F) == ex.U, True),
            ("Op_eq_F_U", bool(systems_equal(OpF, alpha_U)), True),
        ]
    if name == "7.5":
        ex = cat.fixture_example_7_5(3 if q is None else q)
        inst = ex.instance
        A = a_circ(inst, ex.P)
        autD = inst.product.aut(ex.P)
        return [
            ("alpha_in_acirc", ex.alpha_on_P() in A, True),
            ("autF0S_trivial", autD.order == 1, True),
            ("acirc_in_F0S", A <= autD, False),
        ]
    raise UsageError(f"unknown example {name!r}; choose 7.1, 7.4 or 7.5")


def run_example(args, rep: Report) -> int:
    flags = example_flags(args.name, args.q)
    rep.section(f"example {args.name}")
    ok = True
    for flag, got, want in flags:
        rep.add(flag, got)
        if got != want:
            ok = False
            rep.add(f"{flag}.expected", want)
    rep.add("all_match", ok)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def _add_instance_args(p: argparse.ArgumentParser):
    p.add_argument("--case", help="catalog:NAME or catalog:all")
    p.add_argument("--group", help="group definition file")
    p.add_argument("--prime", type=int)
    p.add_argument("--normal", help="name of the normal subgroup in the group file")
    p.add_argument("--carrier", default="sylow",
                   help="'sylow', a subgroup name, or a comma-separated word list")
    p.add_argument("--q", type=int, help="field size for the ex74/ex75 catalog cases")


def _add_global_args(p: argparse.ArgumentParser, defaults: bool):
    # subcommands repeat these options with suppressed defaults so that a value
    # given before the subcommand is not overwritten
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "kv"), default=d("text"))
    p.add_argument("--verbose", action="store_true", default=d(False))
    p.add_argument("--max-order", type=int, default=d(None),
                   help="group order cap (default: FF_MAX_GROUP_ORDER or %d)" % order_cap())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionprod",
                                     description="Products of normal fusion subsystems with p-subgroups.")
    _add_global_args(parser, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_args(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("product", "build the product and check it"),
                           ("verify", "run the full verification bundle"),
                           ("oracle-compare", "compare against the group-theoretic product")):
        _add_instance_args(sub.add_parser(name, help=helptext, parents=[common]))

    d = sub.add_parser("dump", help="print a fusion system in dump format", parents=[common])
    _add_instance_args(d)
    d.add_argument("--system", choices=("product", "ambient", "normal", "oracle"), default="product")

    e = sub.add_parser("example", help="reproduce a worked example", parents=[common])
    e.add_argument("--name", required=True)
    e.add_argument("--q", type=int, default=None)

    sub.add_parser("catalog", help="list the built-in cases", parents=[common])
    return parser


COMMANDS = {
    "product": run_product,
    "verify": run_verify,
    "oracle-compare": run_oracle_compare,
    "dump": run_dump,
    "example": run_example,
    "catalog": run_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.max_order is not None:
        if args.max_order < 1:
            print("error: --max-order must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ["FF_MAX_GROUP_ORDER"] = str(args.max_order)
    rep = Report(kv=args.format == "kv")
    try:
        status = COMMANDS[args.command](args, rep)
    except (UsageError, ParseError, GroupError, FusionError) as exc:
        sys.stdout.write(rep.render())
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.render())
    return status


if __name__ == "__main__":
    sys.exit(main())
