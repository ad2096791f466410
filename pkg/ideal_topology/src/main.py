"""
Ideal Topology Expansion Engine – entry point.
Commands: enumerate, verify, expand, dense-expand, info.
Exit status: 0 success, 1 violations found, 2 usage or input error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

# Allow running as a script from anywhere
project_root = Path(__file__).resolve().parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from ideal_topology import __version__
from ideal_topology.src import codec
from ideal_topology.src.constructions import (
    DenseFipError,
    all_maximal_dense_fip,
    dense_fip_maximal,
    has_dense_fip,
    ideal_IA,
    ideal_IA_max,
    ideal_ID,
    is_maximal_dense_fip,
    prime_assignment,
)
from ideal_topology.src.enumeration import (
    EnumerationBudget,
    enumerate_topologies,
    get_limit,
)
from ideal_topology.src.ideals import IdealSpace
from ideal_topology.src.point_set import MAX_POINTS, format_set, points
from ideal_topology.src.topology import Topology
from ideal_topology.src.verifier import (
    reports_frame,
    run_mutation_self_test,
    run_suite,
    suite_passed,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Flag combination or value outside what the command accepts."""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--settings", help="Path to a settings.json (defaults to the packaged one)")
    common.add_argument("--json", action="store_true", help="Machine-readable JSON on stdout")

    p = argparse.ArgumentParser(prog="ideal-topology",
                                description="Finite ideal topological space expansion engine")
    p.add_argument("--version", action="version", version=f"ideal-topology {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    enum_p = sub.add_parser("enumerate", parents=[common], help="Write every topology on n points as JSON lines.")
    enum_p.add_argument("--n", type=int, required=True, help="Ground-set size")
    enum_p.add_argument("--out", help="Write JSON lines to this file instead of stdout")

    verify_p = sub.add_parser("verify", parents=[common], help="Run the exhaustive statement suite.")
    verify_p.add_argument("--n", type=int, help="Largest exhaustively enumerated ground set")
    verify_p.add_argument("--sample", type=int, help="Number of additional random topologies")
    verify_p.add_argument("--sample-n", type=int, help="Ground-set size of the random topologies")
    verify_p.add_argument("--seed", type=int, help="Seed for every random choice")
    verify_p.add_argument("--only", action="append", metavar="STATEMENT_ID",
                          help="Restrict to this statement (repeatable)")
    verify_p.add_argument("--negative-controls", action="store_true",
                          help="Also search for witnesses with hypotheses dropped")
    verify_p.add_argument("--self-test-mutation", action="store_true",
                          help="Negate check_A_open and confirm witnesses are produced")
    verify_p.add_argument("--workers", type=int, default=1, help="Worker processes")
    verify_p.add_argument("--out", help="Write the JSON report to this file")
    verify_p.add_argument("--csv", help="Write the summary table as CSV")

    expand_p = sub.add_parser("expand", parents=[common], help="Expand a space so that A becomes open.")
    expand_p.add_argument("space", help="Space JSON file")
    expand_p.add_argument("--set", dest="set_a", required=True,
                          help="The set A, comma-separated points or labels (e.g. a,c)")
    mode = expand_p.add_mutually_exclusive_group()
    mode.add_argument("--assignment", help="Neighbourhood assignment JSON file (ideal I_A)")
    mode.add_argument("--prime", action="store_true", help="Refined assignment ideal I'_A (default)")
    mode.add_argument("--max", action="store_true", help="Principal ideal I_A^max (A must be preopen)")

    dense_p = sub.add_parser("dense-expand", parents=[common], help="Expand a space by a dense-FIP family.")
    dense_p.add_argument("space", help="Space JSON file")
    family = dense_p.add_mutually_exclusive_group()
    family.add_argument("--family", help="Dense family JSON file")
    family.add_argument("--greedy-max", action="store_true",
                        help="Greedy maximal dense-FIP family (default)")
    dense_p.add_argument("--all-max", action="store_true",
                         help="Also list every maximal dense-FIP family")

    info_p = sub.add_parser("info", parents=[common], help="Describe a space.")
    info_p.add_argument("space", help="Space JSON file")
    return p


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


def _sets(sets: Sequence[int], labels: Optional[Sequence[str]]) -> str:
    return "{" + ", ".join(format_set(s, labels) for s in sets) + "}"


def _emit_json(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    cap = get_limit("enumerate_cap", 5, args.settings)
    if not 0 <= args.n <= cap:
        raise UsageError(f"--n must be between 0 and {cap} for enumerate")
    count = 0
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            for topology in enumerate_topologies(args.n):
                f.write(json.dumps(codec.topology_to_dict(topology)) + "\n")
                count += 1
    else:
        for topology in enumerate_topologies(args.n):
            print(json.dumps(codec.topology_to_dict(topology)))
            count += 1
    logger.info("[ENUM] %d topologies on %d points", count, args.n)
    if args.out:
        if args.json:
            _emit_json({"n": args.n, "count": count, "out": args.out})
        else:
            print(f"✓ {count} topologies on {args.n} points written to {args.out}")
    else:
        print(f"✓ {count} topologies on {args.n} points", file=sys.stderr)
    return EXIT_OK


def _max_points(args) -> int:
    return min(get_limit("max_points", MAX_POINTS, args.settings), MAX_POINTS)


def _load_space(args) -> codec.SpaceDescriptor:
    descriptor = codec.load_space(args.space)
    limit = _max_points(args)
    if descriptor.topology.n > limit:
        raise UsageError(f"Space has {descriptor.topology.n} points; limits.max_points is {limit}")
    return descriptor


def _budget_from_args(args) -> EnumerationBudget:
    budget = EnumerationBudget.from_settings(
        args.settings,
        n_max_exhaustive=args.n,
        sample_count=args.sample,
        sample_n=args.sample_n,
        rng_seed=args.seed,
    )
    cap = get_limit("verify_cap", 5, args.settings)
    if not 1 <= budget.n_max_exhaustive <= cap:
        raise UsageError(f"--n must be between 1 and {cap} for verify")
    max_points = _max_points(args)
    if budget.sample_count < 0 or not 1 <= budget.sample_n <= max_points:
        raise UsageError(f"--sample must be >= 0 and --sample-n between 1 and {max_points}")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    return budget


def cmd_verify(args) -> int:
    budget = _budget_from_args(args)
    if args.self_test_mutation:
        reports = [run_mutation_self_test(budget)]
    else:
        reports = run_suite(budget, only=args.only,
                            negative_controls=args.negative_controls, workers=args.workers)
    passed = suite_passed(reports)
    document = {
        "budget": budget.to_dict(),
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, ensure_ascii=False)
    frame = reports_frame(reports)
    if args.csv:
        frame.to_csv(args.csv, index=False)

    if args.json:
        _emit_json(document)
    else:
        title = "Mutation Self-Test" if args.self_test_mutation else "Statement Verification"
        _banner(f"Ideal Topology - {title} (n <= {budget.n_max_exhaustive}, "
                f"{budget.sample_count} sampled)")
        with pd.option_context("display.max_rows", None, "display.width", 120):
            print(frame.to_string(index=False))
        print()
        for report in reports:
            for cx in report.violations:
                print(f"✗ [{report.statement_id}] {cx.note}")
                print(f"    {json.dumps(cx.to_dict(), ensure_ascii=False)}")
            for cx in report.witnesses:
                print(f"⚠ [{report.statement_id}] {json.dumps(cx.to_dict(), ensure_ascii=False)}")
            for note in report.notes:
                print(f"  [{report.statement_id}] {note}")
        print("=" * 70)
        total = sum(r.violation_count for r in reports)
        if passed:
            print("✓ No violations")
        else:
            print(f"✗ {total} violation(s)")
        if args.out:
            print(f"Report written to {args.out}")
    return EXIT_OK if passed else EXIT_VIOLATIONS


def expand_space(descriptor: codec.SpaceDescriptor, a: int, assignment_path: Optional[str] = None,
                 use_max: bool = False) -> dict:
    """
    Build the requested ideal for A and summarize the expanded space.

    Args:
        descriptor: Parsed space
        a: The set A
        assignment_path: Neighbourhood assignment JSON (ideal I_A)
        use_max: Build I_A^max instead of the refined I'_A

    Returns:
        Summary dict in JSON form
    """
    topology, labels = descriptor.topology, descriptor.labels
    if assignment_path:
        asg = codec.parse_assignment(codec.load_json(assignment_path), topology, labels)
        if asg.set_a != a:
            raise UsageError("Assignment file was made for a different set A")
        construction = "I_A"
        ideal = ideal_IA(topology, a, asg)
    elif use_max:
        construction = "I_A^max"
        ideal = ideal_IA_max(topology, a)
    else:
        construction = "I'_A"
        asg = prime_assignment(topology, a)
        ideal = ideal_IA(topology, a, asg)
    space = IdealSpace(topology, ideal)
    star = space.star
    logger.info("[EXPAND] %s for A=%s: %d opens in τ*", construction,
                format_set(a, labels), len(star.opens))
    return {
        "construction": construction,
        "A": points(a),
        "ideal": codec.ideal_to_dict(ideal),
        "star": codec.topology_to_dict(star, labels),
        "A_open_in_star": star.is_open(a),
        "tau_connected": topology.is_connected(),
        "star_connected": star.is_connected(),
        "A_preopen": topology.is_preopen(a),
        "trace_trivial": space.has_trivial_trace(),
        "semiregularization_preserved": topology.semiregularization() == star.semiregularization(),
        "compatible": space.is_compatible(),
    }


def cmd_expand(args) -> int:
    descriptor = _load_space(args)
    a = codec.parse_set_spec(args.set_a, descriptor.topology.n, descriptor.labels)
    result = expand_space(descriptor, a, args.assignment, args.max)
    if args.json:
        _emit_json(result)
        return EXIT_OK
    labels = descriptor.labels
    star = codec.parse_space(result["star"]).topology
    _banner(f"Expansion by {result['construction']} for A = {format_set(a, labels)}")
    ideal = codec.parse_ideal(result["ideal"], descriptor.topology.n)
    print(f"Ideal maximal elements: {_sets(ideal.maximal, labels)}")
    print(f"τ  opens: {_sets(descriptor.topology.opens, labels)}")
    print(f"τ* opens: {_sets(star.opens, labels)}")
    print(f"{_mark(result['A_open_in_star'])} A open in τ*")
    print(f"{_mark(result['tau_connected'])} τ connected")
    print(f"{_mark(result['star_connected'])} τ* connected")
    print(f"{_mark(result['A_preopen'])} A preopen")
    print(f"{_mark(result['trace_trivial'])} τ ∩ I = {{∅}}")
    print(f"{_mark(result['semiregularization_preserved'])} τ_s = (τ*)_s")
    print(f"{_mark(result['compatible'])} τ compatible with I")
    return EXIT_OK


def dense_expand_space(descriptor: codec.SpaceDescriptor, family_path: Optional[str] = None,
                       all_max: bool = False, all_max_limit: int = 4) -> dict:
    topology, labels = descriptor.topology, descriptor.labels
    if family_path:
        family = codec.parse_family(codec.load_json(family_path), topology.n, labels)
        if not has_dense_fip(topology, family.members):
            raise DenseFipError("Family does not have the dense finite intersection property")
    else:
        family = dense_fip_maximal(topology)
    ideal = ideal_ID(topology, family)
    space = IdealSpace(topology, ideal)
    star = space.star
    result = {
        "family": codec.family_to_dict(family),
        "maximal": is_maximal_dense_fip(topology, family),
        "ideal": codec.ideal_to_dict(ideal),
        "star": codec.topology_to_dict(star, labels),
        "trace_trivial": space.has_trivial_trace(),
        "star_submaximal": star.is_submaximal(),
        "star_submaximal_by_dense": star.is_submaximal_by_dense(),
        "semiregularization_preserved": topology.semiregularization() == star.semiregularization(),
    }
    if all_max:
        if topology.n > all_max_limit:
            raise UsageError(f"--all-max is limited to spaces with at most {all_max_limit} points")
        result["all_maximal"] = [codec.family_to_dict(f) for f in all_maximal_dense_fip(topology)]
    logger.info("[EXPAND] dense family of %d sets: %d opens in τ*",
                len(family.members), len(star.opens))
    return result


def cmd_dense_expand(args) -> int:
    descriptor = _load_space(args)
    limit = EnumerationBudget.from_settings(args.settings).all_max_families_max_n
    result = dense_expand_space(descriptor, args.family, args.all_max, limit)
    if args.json:
        _emit_json(result)
        return EXIT_OK
    labels = descriptor.labels
    n = descriptor.topology.n
    family = codec.parse_family(result["family"], n)
    star = codec.parse_space(result["star"]).topology
    _banner("Expansion by a dense-FIP family")
    print(f"Family: {_sets(family.members, labels)}")
    print(f"{_mark(result['maximal'])} maximal dense-FIP family")
    ideal = codec.parse_ideal(result["ideal"], n)
    print(f"Ideal maximal elements: {_sets(ideal.maximal, labels)}")
    print(f"τ* opens: {_sets(star.opens, labels)}")
    print(f"{_mark(result['trace_trivial'])} τ ∩ I_D = {{∅}}")
    print(f"{_mark(result['star_submaximal'])} τ* submaximal (preopen sets open)")
    print(f"{_mark(result['star_submaximal_by_dense'])} τ* submaximal (dense sets open)")
    print(f"{_mark(result['semiregularization_preserved'])} τ_s = (τ*)_s")
    if "all_maximal" in result:
        print()
        print(f"{len(result['all_maximal'])} maximal dense-FIP families:")
        for data in result["all_maximal"]:
            print(f"  {_sets(codec.parse_family(data, n).members, labels)}")
    return EXIT_OK


def min_nbhd_frame(topology: Topology, labels: Optional[Sequence[str]] = None) -> pd.DataFrame:
    rows = [
        {
            "point": labels[x] if labels else x,
            "min_nbhd": format_set(u, labels),
            "closure": format_set(topology.closure(1 << x), labels),
        }
        for x, u in enumerate(topology.min_nbhd)
    ]
    return pd.DataFrame(rows, columns=["point", "min_nbhd", "closure"])


def describe_space(descriptor: codec.SpaceDescriptor) -> dict:
    topology, labels = descriptor.topology, descriptor.labels
    ideal_space = descriptor.ideal_space
    info = {
        "space": (codec.ideal_space_to_dict(ideal_space, labels) if ideal_space is not None
                  else codec.topology_to_dict(topology, labels)),
        "min_nbhd": [points(u) for u in topology.min_nbhd],
        "dense": [points(s) for s in topology.dense_sets()],
        "preopen": [points(s) for s in topology.preopen_sets()],
        "regular_open": [points(s) for s in topology.regular_open_sets()],
        "semiregularization": codec.topology_to_dict(topology.semiregularization()),
        "connected": topology.is_connected(),
        "submaximal": topology.is_submaximal(),
        "resolvable": topology.is_resolvable(),
        "t1": topology.is_t1(),
    }
    if ideal_space is not None:
        info["star"] = codec.topology_to_dict(ideal_space.star, labels)
        info["trace_trivial"] = ideal_space.has_trivial_trace()
        info["compatible"] = ideal_space.is_compatible()
    return info


def cmd_info(args) -> int:
    descriptor = _load_space(args)
    info = describe_space(descriptor)
    if args.json:
        _emit_json(info)
        return EXIT_OK
    topology, labels = descriptor.topology, descriptor.labels
    _banner(f"Space on {topology.n} points")
    print(f"Opens: {_sets(topology.opens, labels)}")
    print()
    print(min_nbhd_frame(topology, labels).to_string(index=False))
    print()
    print(f"Dense sets:        {_sets(topology.dense_sets(), labels)}")
    print(f"Preopen sets:      {_sets(topology.preopen_sets(), labels)}")
    print(f"Regular open sets: {_sets(topology.regular_open_sets(), labels)}")
    print(f"τ_s opens:         {_sets(topology.semiregularization().opens, labels)}")
    print(f"{_mark(info['connected'])} connected")
    print(f"{_mark(info['submaximal'])} submaximal")
    print(f"{_mark(info['resolvable'])} resolvable")
    print(f"{_mark(info['t1'])} T1")
    if "star" in info:
        ideal = descriptor.ideal
        print()
        print(f"Ideal maximal elements: {_sets(ideal.maximal, labels)}")
        print(f"τ* opens: {_sets(descriptor.ideal_space.star.opens, labels)}")
        print(f"{_mark(info['trace_trivial'])} τ ∩ I = {{∅}}")
        print(f"{_mark(info['compatible'])} τ ∼ I")
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "expand": cmd_expand,
    "dense-expand": cmd_dense_expand,
    "info": cmd_info,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 for --help/--version
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.cmd](args)
    except (ValueError, OSError) as e:
        print(f"✗ Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
