"""Command-line entry point wiring all modules together.

Reports are deterministic for identical inputs and seed: JSON is emitted
with sorted keys and no timestamps, so ``check all --seed S`` twice gives
byte-identical output.  Exit codes: 0 pass, 1 assertion failure, 2 usage
error, 3 capacity guard.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__, checks
from . import cofinite as cf
from . import randsup as rs
from .chaos import first_chaos
from .errors import CapacityError, NoiseLatticeError
from .finmeas import (
    load_space,
    mk_dyadic,
    mk_space,
    space_to_json,
)
from .kernels import BACKEND
from .ntba import (
    mk_coordinate_ntba,
    mk_parity_ntba,
    ntba_from_json,
    ntba_to_json,
    restrict,
    validate_family,
)
from .sigma import (
    commutes,
    independent,
    join,
    meet,
    partition_from_json,
    partition_to_json,
    sigma_of_rvs,
)
from .spectrum import chaos_grading, spectral_decompose

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _mode(args) -> str:
    import os

    return args.mode or os.environ.get("NOISE_LATTICE_MODE", "rational")


def _to_float_space(space):
    return mk_space(space.outcomes, [float(p) for p in space.probs])


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _report(command: str, inputs, results, passed: bool, seed=None) -> dict:
    return {
        "command": command,
        "inputs_digest": _digest(inputs),
        "results": results,
        "passed": passed,
        "seed": seed,
        "versions": {"noise_lattice": __version__, "kernel": BACKEND},
    }


def _emit(args, report: dict) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ":"), default=str))
    else:
        _emit_text(report)


def _emit_text(report: dict, indent: str = "") -> None:
    print(f"{indent}command: {report['command']}")
    _print_tree(report["results"], indent + "  ")
    print(f"{indent}passed: {report['passed']}")


def _print_tree(node, indent: str) -> None:
    if isinstance(node, dict):
        for k in sorted(node):
            v = node[k]
            if isinstance(v, (dict, list)):
                print(f"{indent}{k}:")
                _print_tree(v, indent + "  ")
            else:
                print(f"{indent}{k}: {v}")
    elif isinstance(node, list):
        for v in node:
            if isinstance(v, (dict, list)):
                _print_tree(v, indent + "  ")
            else:
                print(f"{indent}- {v}")
    else:
        print(f"{indent}{node}")


def _load_ntba(path: str):
    with open(path, encoding="utf-8") as fh:
        return ntba_from_json(json.load(fh))


def _load_partition(space, path: str):
    with open(path, encoding="utf-8") as fh:
        return partition_from_json(space, json.load(fh))


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_space(args) -> int:
    if args.space_cmd == "dyadic":
        space = mk_dyadic(args.n)
        if _mode(args) == "float":
            space = _to_float_space(space)
    else:
        space = load_space(args.file)
    print(json.dumps(space_to_json(space), sort_keys=True))
    return EXIT_OK


def cmd_sigma(args) -> int:
    space = load_space(args.space)
    x = _load_partition(space, args.x)
    y = _load_partition(space, args.y)
    if args.sigma_cmd == "meet":
        print(json.dumps(partition_to_json(meet(x, y)), sort_keys=True))
    elif args.sigma_cmd == "join":
        print(json.dumps(partition_to_json(join(x, y)), sort_keys=True))
    elif args.sigma_cmd == "indep":
        print(json.dumps({"independent": independent(x, y)}))
    else:
        print(json.dumps({"commutes": commutes(x, y)}))
    return EXIT_OK


def cmd_ntba(args) -> int:
    if args.ntba_cmd == "coords":
        space = mk_dyadic(args.n)
        if _mode(args) == "float":
            space = _to_float_space(space)
        algebra = mk_coordinate_ntba(space)
        print(json.dumps(ntba_to_json(algebra), sort_keys=True))
        return EXIT_OK
    if args.ntba_cmd == "parity":
        space = mk_dyadic(args.n + 1)
        if _mode(args) == "float":
            space = _to_float_space(space)
        algebra = mk_parity_ntba(args.n, space)
        print(json.dumps(ntba_to_json(algebra), sort_keys=True))
        return EXIT_OK
    if args.ntba_cmd == "validate":
        with open(args.file, encoding="utf-8") as fh:
            obj = json.load(fh)
        from .finmeas import space_from_json

        space = space_from_json(obj["space"])
        elems = [partition_from_json(space, a) for a in obj["atoms"]]
        try:
            algebra = ntba_from_json(obj)
            family = [e.realize() for e in algebra.elements()]
            verdict = validate_family(space, family)
        except ValueError as exc:
            print(json.dumps({"valid": False, "reason": str(exc)}))
            return EXIT_FAIL
        payload = {"valid": verdict.valid, "reason": verdict.reason}
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK if verdict.valid else EXIT_FAIL
    algebra = _load_ntba(args.file)
    atomset = [int(t) for t in args.atomset.split(",") if t != ""]
    r = restrict(algebra, algebra.element(atomset))
    print(json.dumps(ntba_to_json(r.algebra), sort_keys=True))
    return EXIT_OK


def cmd_chaos(args) -> int:
    algebra = _load_ntba(args.file)
    cr = first_chaos(algebra)
    results = {
        "dim_h1": cr.h1.dim,
        "classical": cr.classical,
        "black": cr.black,
        "generated_blocks": [list(b) for b in cr.generated.blocks],
    }
    report = _report("chaos report", ntba_to_json(algebra), results, True)
    if args.format == "csv":
        print("dim_h1,classical,black,generated_block_count")
        print(f"{cr.h1.dim},{cr.classical},{cr.black},{cr.generated.n_blocks}")
    else:
        _emit(args, report)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    algebra = _load_ntba(args.file)
    decomp = spectral_decompose(algebra)
    grading = chaos_grading(decomp)
    points = [
        {
            "generator_atoms": sorted(p.generator),
            "k": p.k,
            "dim": p.eigenspace.dim,
            # membership bit per element, indexed by atomset bitmask
            "pattern": [
                int(p.in_spectral_set({i for i in range(algebra.n_atoms) if m >> i & 1}))
                for m in range(1 << algebra.n_atoms)
            ],
        }
        for p in decomp.points
    ]
    results = {
        "points": points,
        "levels": {str(k): d for k, d in grading.levels.items()},
        "classical": grading.classical,
    }
    if args.format == "csv":
        print("level,dimension")
        for k, d in sorted(grading.levels.items()):
            print(f"{k},{d}")
    else:
        _emit(args, _report("spectrum report", ntba_to_json(algebra), results, True))
    return EXIT_OK


def cmd_cofinite(args) -> int:
    if args.cofinite_cmd == "eval":
        e = cf.parse_elem(args.expr)
        payload = {
            "element": cf.format_elem(e),
            "membership": cf.closure_membership(e),
            "complement": (
                cf.format_elem(cf.has_complement(e))
                if cf.has_complement(e) is not None
                else None
            ),
        }
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK
    return _cofinite_dossier(args)


def _cofinite_dossier(args) -> int:
    evens = cf.progression(2)
    rows = []
    for text in ["x4", "y1|y2|y5", "Y(2k)", "Y(3k)"]:
        e = cf.parse_elem(text)
        rows.append(
            {
                "element": cf.format_elem(e),
                "membership": cf.closure_membership(e),
                "complement": (
                    cf.format_elem(cf.has_complement(e))
                    if cf.has_complement(e)
                    else None
                ),
            }
        )
    crit_all = cf.completion_criterion_check(cf.PrefixJoins(cf.FULL_SET))
    crit_even = cf.completion_criterion_check(cf.PrefixJoins(evens))
    dbl = cf.double_limit_check(cf.PrefixJoins(cf.FULL_SET))
    probe = cf.bounded_elements(6, 7)
    completion_is_algebra = all(
        (cf.has_complement(e) is not None) == cf.in_algebra(e) for e in probe
    ) and cf.has_complement(cf.ys_elem(evens)) is None
    atomless, witness = cf.is_atomless()
    ultras = [
        {
            "kind": u.kind,
            "index": u.index,
            "infimum": cf.format_elem(u.infimum()),
        }
        for u in cf.enumerate_ultrafilters(6)
    ]
    results = {
        "closure_examples": rows,
        "increasing_limit_criterion": {
            "prefix_joins_all": {
                "holds": crit_all.holds,
                "sup": cf.format_elem(crit_all.sup),
                "inf_complements": cf.format_elem(crit_all.inf_complements),
                "join": cf.format_elem(crit_all.joined),
            },
            "prefix_joins_evens": {
                "holds": crit_even.holds,
                "join": cf.format_elem(crit_even.joined),
            },
        },
        "double_limit_identity": dbl.equal,
        "completion_equals_algebra": completion_is_algebra,
        "atomless": atomless,
        "atomless_witness": {
            "kind": witness.kind,
            "index": witness.index,
            "infimum": cf.format_elem(witness.infimum()),
        },
        "ultrafilters": ultras,
    }
    passed = (
        not crit_all.holds
        and not crit_even.holds
        and dbl.equal
        and completion_is_algebra
        and not atomless
    )
    _emit(args, _report("cofinite demo", {}, results, passed))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_randsup(args) -> int:
    ps = tuple(float(t) for t in args.ps.split(","))
    counts = (
        tuple(int(t) for t in args.atoms.split(","))
        if args.atoms
        else tuple(4 for _ in ps)
    )
    cfg = rs.SampleConfig(counts, ps, seed=args.seed, trials=args.trials)
    rep = rs.union_bound_report(cfg, atom=0)
    results = {
        "estimate": rep.estimate,
        "exact": rep.exact,
        "bound": rep.bound,
        "sigma": rep.sigma,
        "within_three_sigma": rep.within_three_sigma,
        "below_bound": rep.below_bound,
        "inclusion_decay": rs.inclusion_decay(cfg),
    }
    report = _report(
        "randsup run",
        {"ps": ps, "atoms": counts, "trials": args.trials},
        results,
        rep.ok,
        seed=args.seed,
    )
    _emit(args, report)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_check(args) -> int:
    results = checks.run_all(args.seed, args.cases, inject_fault=args.inject_fault)
    payload = [
        {
            "suite": r.name,
            "cases": r.cases,
            "passed": r.passed,
            "failures": r.failures[:3],
        }
        for r in results
    ]
    passed = all(r.passed for r in results)
    report = _report(
        "check all",
        {"cases": args.cases, "inject_fault": args.inject_fault},
        payload,
        passed,
        seed=args.seed,
    )
    _emit(args, report)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_demo(args) -> int:
    """The sign-product dossier: what finite scale sees of nonclassicality."""
    from .finmeas import coordinate_sign

    h1_dims = {}
    pair_generators_present = True
    for n in range(1, 7):
        algebra = mk_parity_ntba(n)
        cr = first_chaos(algebra)
        h1_dims[str(n)] = cr.h1.dim
        for k in range(1, n + 1):
            pair = coordinate_sign(algebra.space, k) * coordinate_sign(
                algebra.space, k + 1
            )
            pair_generators_present = pair_generators_present and cr.h1.contains(pair)
    space3 = mk_parity_ntba(3).space
    pairs = [
        coordinate_sign(space3, k) * coordinate_sign(space3, k + 1) for k in (1, 2, 3)
    ]
    pairing = sigma_of_rvs(space3, pairs)
    block_sizes = sorted(len(b) for b in pairing.blocks)
    crit = cf.completion_criterion_check(cf.PrefixJoins(cf.FULL_SET))
    evens = cf.progression(2)
    probe = cf.bounded_elements(6, 7)
    completion_is_algebra = all(
        (cf.has_complement(e) is not None) == cf.in_algebra(e) for e in probe
    ) and cf.has_complement(cf.ys_elem(evens)) is None
    results = {
        "parity_h1_dims": h1_dims,
        "pair_signs_span_h1": pair_generators_present,
        "sign_pairing_blocks_n3": {
            "count": pairing.n_blocks,
            "sizes": sorted(set(block_sizes)),
        },
        "increasing_limit_criterion_fails": not crit.holds,
        "criterion_sup": cf.format_elem(crit.sup),
        "completion_verdict": "B itself" if completion_is_algebra else "larger than B",
    }
    passed = (
        all(h1_dims[str(n)] == n + 1 for n in range(1, 7))
        and pair_generators_present
        and pairing.n_blocks == 8
        and set(block_sizes) == {2}
        and not crit.holds
        and completion_is_algebra
    )
    _emit(args, _report("demo", {}, results, passed))
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="noise-lattice",
        description="lattice-of-sigma-fields computations at desk scale",
    )
    p.add_argument("--mode", choices=["rational", "float"], default=None,
                   help="numeric backend (default: NOISE_LATTICE_MODE or rational)")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("space", help="construct or load probability spaces")
    spsub = sp.add_subparsers(dest="space_cmd", required=True)
    d = spsub.add_parser("dyadic")
    d.add_argument("n", type=int)
    ld = spsub.add_parser("load")
    ld.add_argument("file")
    sp.set_defaults(fn=cmd_space)

    sg = sub.add_parser("sigma", help="lattice operations on partitions")
    sg.add_argument("sigma_cmd", choices=["meet", "join", "indep", "commutes"])
    sg.add_argument("space")
    sg.add_argument("x")
    sg.add_argument("y")
    sg.set_defaults(fn=cmd_sigma)

    nb = sub.add_parser("ntba", help="noise-type Boolean algebras")
    nbsub = nb.add_subparsers(dest="ntba_cmd", required=True)
    c = nbsub.add_parser("coords")
    c.add_argument("n", type=int)
    pa = nbsub.add_parser("parity")
    pa.add_argument("n", type=int)
    va = nbsub.add_parser("validate")
    va.add_argument("file")
    re_ = nbsub.add_parser("restrict")
    re_.add_argument("file")
    re_.add_argument("atomset")
    nb.set_defaults(fn=cmd_ntba)

    ch = sub.add_parser("chaos", help="first chaos report")
    ch.add_argument("chaos_cmd", choices=["report"])
    ch.add_argument("file")
    ch.add_argument("--format", choices=["text", "json", "csv"], default="text")
    ch.set_defaults(fn=cmd_chaos)

    st = sub.add_parser("spectrum", help="spectral decomposition report")
    st.add_argument("spectrum_cmd", choices=["report"])
    st.add_argument("file")
    st.add_argument("--format", choices=["text", "json", "csv"], default="text")
    st.set_defaults(fn=cmd_spectrum)

    co = sub.add_parser("cofinite", help="the symbolic sign-product algebra")
    cosub = co.add_subparsers(dest="cofinite_cmd", required=True)
    cd = cosub.add_parser("demo")
    cd.add_argument("--format", choices=["text", "json"], default="text")
    ev = cosub.add_parser("eval")
    ev.add_argument("expr")
    ev.add_argument("--format", choices=["text", "json"], default="json")
    co.set_defaults(fn=cmd_cofinite)

    ru = sub.add_parser("randsup", help="random supremum experiments")
    rusub = ru.add_subparsers(dest="randsup_cmd", required=True)
    run = rusub.add_parser("run")
    run.add_argument("--ps", required=True, help="comma-separated inclusion probabilities")
    run.add_argument("--atoms", default=None, help="comma-separated atom counts")
    run.add_argument("--trials", type=int, default=100_000)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--format", choices=["text", "json"], default="text")
    ru.set_defaults(fn=cmd_randsup)

    ck = sub.add_parser("check", help="run the randomized property suites")
    ck.add_argument("check_cmd", choices=["all"])
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--cases", type=int, default=None)
    ck.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    ck.add_argument("--format", choices=["text", "json"], default="json")
    ck.set_defaults(fn=cmd_check)

    de = sub.add_parser("demo", help="the full nonclassical-example dossier")
    de.add_argument("--format", choices=["text", "json"], default="text")
    de.set_defaults(fn=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NoiseLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
