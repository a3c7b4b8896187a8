"""Command-line surface.

Every subcommand accepts --prime / --seed / --trials / --json and echoes
that configuration in its report, so any run can be reproduced from its
own output.  Exit codes: 0 when the computation succeeds (and, for
wlp-check and --crosscheck, the assertion holds), 1 when a verdict is
anything other than certified, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

from . import __version__
from .exactcore import DEFAULT_PRIME, check_prime, read_forms
from .hilbert import ci_hilbert
from .hvlab import HVector, davis_split, enumerate_candidates
from .liaison import dgo_link, link_plan
from .stability import STABLE_CASE_2, crosscheck_with_wlp, injectivity_lambda
from .wlp import (
    WLP_CERTIFIED,
    instance_from_forms,
    jacobian_ideal,
    random_ci,
    wlp_report,
)


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError(f"could not parse {what}: {text!r}") from None
    if not values:
        raise ValueError(f"could not parse {what}: {text!r}")
    return values


def _csv(values) -> str:
    return ",".join(str(v) for v in values)


def _fmt_betti(b) -> str:
    gens = ", ".join(f"{n}:{c}" for n, c in b.gens.items())
    syz = ", ".join(f"{m}:{c}" for m, c in b.syz.items())
    return "gens {" + gens + "}  syz {" + syz + "}"


def _emit_json(args, command: str, payload: dict) -> None:
    obj = {
        "schema": 1,
        "command": command,
        "prime": args.prime,
        "seed": args.seed,
        "trials": args.trials,
        "version": __version__,
    }
    obj.update(payload)
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_ci_hilbert(args) -> int:
    degrees = _parse_ints(args.degrees, "--degrees")
    hf = ci_hilbert(degrees, args.nvars, through=args.through)
    if args.json:
        _emit_json(
            args,
            "ci-hilbert",
            {
                "degrees": list(degrees),
                "nvars": args.nvars,
                "through": args.through,
                "complete": hf.complete,
                "values": list(hf.values),
            },
        )
    else:
        print(_csv(hf.values))
    return 0


def cmd_wlp_check(args) -> int:
    sources = [
        s
        for s in (args.degree, args.degrees, args.ideal, args.jacobian)
        if s is not None
    ]
    if len(sources) != 1:
        raise ValueError(
            "pass exactly one of --degree, --degrees, --ideal, --jacobian"
        )
    if args.degree is not None:
        inst = random_ci((args.degree,) * 4, prime=args.prime, seed=args.seed)
    elif args.degrees is not None:
        degrees = _parse_ints(args.degrees, "--degrees")
        inst = random_ci(degrees, prime=args.prime, seed=args.seed)
    elif args.ideal is not None:
        forms = read_forms(args.ideal, p=args.prime)
        inst = instance_from_forms(forms, seed=args.seed)
    else:
        forms = read_forms(args.jacobian, p=args.prime)
        if len(forms) != 1:
            raise ValueError("expected exactly one form in the --jacobian file")
        inst = jacobian_ideal(forms[0], seed=args.seed)

    report = wlp_report(inst, trials=args.trials)
    if args.json:
        _emit_json(
            args,
            "wlp-check",
            {
                "degrees": list(report.degrees),
                "classification": report.classification,
                "window": list(report.window),
                "rows": [
                    {
                        "t": r.t,
                        "dim_source": r.dim_source,
                        "dim_target": r.dim_target,
                        "rank": r.rank,
                        "kernel": r.kernel,
                        "cokernel": r.cokernel,
                        "maximal": r.maximal,
                    }
                    for r in report.rows
                ],
                "trials_used": report.trials_used,
                "seeds_used": list(report.seeds_used),
                "best_form": str(report.best_form),
            },
        )
    else:
        print(
            f"degrees: {_csv(report.degrees)}  prime: {report.prime}  "
            f"seed: {args.seed}  trials: {report.trials} "
            f"(used {report.trials_used})"
        )
        print("   t   source   target     rank   ker coker  maximal")
        for r in report.rows:
            flag = "yes" if r.maximal else "NO"
            print(
                f"{r.t:>4} {r.dim_source:>8} {r.dim_target:>8} "
                f"{r.rank:>8} {r.kernel:>5} {r.cokernel:>5}  {flag}"
            )
        print(f"classification: {report.classification}")
    return 0 if report.classification == WLP_CERTIFIED else 1


def cmd_enumerate(args) -> int:
    traces = enumerate_candidates(args.degree)
    accepted = [tr for tr in traces if tr.accepted]
    rejected = [tr for tr in traces if not tr.accepted]
    if args.json:
        _emit_json(
            args,
            "enumerate",
            {
                "degree": args.degree,
                "n_candidates": len(traces),
                "n_accepted": len(accepted),
                "accepted": [list(tr.hvector.values) for tr in accepted],
                "rejected": [
                    {
                        "hvector": list(tr.hvector.values),
                        "rejections": [
                            {"constraint": c, "degree": t}
                            for c, t in tr.rejections
                        ],
                    }
                    for tr in rejected
                ],
            },
        )
    else:
        print(
            f"accepted {len(accepted)} of {len(traces)} candidates "
            f"for d={args.degree}"
        )
        for tr in accepted:
            print(_csv(tr.hvector.values))
        if args.explain and rejected:
            print("rejected:")
            for tr in rejected:
                why = ", ".join(f"{c}@{t}" for c, t in tr.rejections)
                print(f"{_csv(tr.hvector.values)}  [{why}]")
    return 0


def cmd_link(args) -> int:
    h = _parse_ints(args.hvector, "--hvector")
    ci = _parse_ints(args.ci, "--ci")
    if len(ci) != 2:
        raise ValueError("--ci needs exactly two degrees")
    result = dgo_link(h, ci[0], ci[1])
    if args.json:
        _emit_json(
            args,
            "link",
            {
                "hvector": list(h),
                "ci": list(ci),
                "result": list(result.values),
            },
        )
    else:
        print(_csv(result.values))
    return 0


def cmd_link_plan(args) -> int:
    plan = link_plan(args.degree)
    if args.json:
        _emit_json(
            args,
            "link-plan",
            {
                "d": plan.d,
                "status": plan.status,
                "display": plan.display(),
                "steps": [
                    {
                        "index": s.index,
                        "ci": list(s.ci_type),
                        "split": list(s.split),
                        "start": [list(p) for p in s.start_pair],
                        "residual": [list(p) for p in s.residual_pair],
                        "note": s.note,
                        "display": s.display(),
                    }
                    for s in plan.steps
                ],
                "hchain": [list(h.values) for h in plan.hchain],
                "bettichain": [b.as_json_dict() for b in plan.bettichain],
            },
        )
    else:
        print(f"link plan for d={plan.d} ({plan.status})")
        print(f"steps: {plan.display()}")
        for s in plan.steps:
            print(
                f"step {s.index}: CI{s.ci_type} start "
                f"{s.start_pair[0]}+{s.start_pair[1]} -> residual "
                f"{s.residual_pair[0]}+{s.residual_pair[1]}"
            )
            print(f"  note: {s.note}")
        print("h-vector chain:")
        for h in plan.hchain:
            print(f"  {_csv(h.values)}")
        print("Betti chain:")
        for b in plan.bettichain:
            print(f"  {_fmt_betti(b)}")
    return 0


def cmd_davis(args) -> int:
    h = HVector(_parse_ints(args.hvector, "--hvector"))
    if args.t is not None:
        t = args.t
    else:
        flats = [
            t
            for t in range(1, h.top_degree + 1)
            if h[t - 1] == h[t] and h[t] > 0
        ]
        if not flats:
            raise ValueError("no flat (h(t-1) = h(t) > 0) in this h-vector")
        if len(flats) > 1:
            raise ValueError(
                f"ambiguous flat; pass --t with one of {_csv(flats)}"
            )
        t = flats[0]
    g, f, c = davis_split(h, t)
    if args.json:
        _emit_json(
            args,
            "davis",
            {
                "hvector": list(h.values),
                "t": t,
                "common": c,
                "first": list(g.values),
                "second": list(f.values),
            },
        )
    else:
        print(f"t: {t}")
        print(f"common: {c}")
        print(f"first: {_csv(g.values)}")
        print(f"second: {_csv(f.values) if len(f) else '(empty)'}")
    return 0


def cmd_stability(args) -> int:
    degrees = _parse_ints(args.degrees, "--degrees")
    rep = injectivity_lambda(degrees)
    crosscheck = None
    if args.crosscheck:
        crosscheck = crosscheck_with_wlp(degrees, prime=args.prime, seed=args.seed)
    if args.json:
        payload = rep.as_json_dict()
        payload["crosscheck"] = crosscheck
        _emit_json(args, "stability", payload)
    else:
        print(f"degrees: {_csv(rep.degrees)}")
        print(f"sum: {rep.total}  lambda: {rep.lam}  r: {rep.remainder}")
        print(f"case: {rep.case}")
        print(f"c1: {rep.c1}  c2: {rep.c2}  c1 mod 3: {rep.c1_mod3}")
        if rep.p_twist is not None:
            print(
                f"p_twist: {rep.p_twist}  "
                f"c2_normalized: {rep.c2_normalized}"
            )
        if rep.case == STABLE_CASE_2:
            for item in rep.exception_status:
                print(f"({item.label}) {item.description}: {item.verdict}")
                print(f"    {item.reason}")
            print(f"overall: {rep.overall}")
        if crosscheck is not None:
            print(
                f"crosscheck (prime {args.prime}, seed {args.seed}): "
                f"{'pass' if crosscheck else 'FAIL'}"
            )
    return 1 if crosscheck is False else 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--prime", type=int, default=DEFAULT_PRIME, help="field characteristic"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        help="RNG seed; 0 draws one from entropy and echoes it",
    )
    common.add_argument(
        "--trials", type=int, default=3, help="linear forms to try per degree"
    )
    common.add_argument(
        "--json", action="store_true", help="emit a JSON report"
    )

    parser = argparse.ArgumentParser(
        prog="wlpci",
        description=(
            "Exact rank computations, h-vector constraints, linkage and "
            "stability arithmetic for artinian complete intersections in "
            "four variables"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"wlpci {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "ci-hilbert",
        parents=[common],
        help="Hilbert function of a complete intersection",
    )
    p.add_argument("--degrees", required=True, help="comma-separated degrees")
    p.add_argument("--nvars", type=int, default=4)
    p.add_argument(
        "--through",
        type=int,
        default=None,
        help="tabulate through this degree (required when not artinian)",
    )
    p.set_defaults(func=cmd_ci_hilbert)

    p = sub.add_parser(
        "wlp-check",
        parents=[common],
        help="rank table and WLP verdict for one instance",
    )
    p.add_argument("--degree", type=int, default=None, help="equigenerated d")
    p.add_argument("--degrees", default=None, help="four comma-separated degrees")
    p.add_argument("--ideal", default=None, help="file with four forms")
    p.add_argument("--jacobian", default=None, help="file with one form")
    p.set_defaults(func=cmd_wlp_check)

    p = sub.add_parser(
        "enumerate",
        parents=[common],
        help="h-vector candidates for a hyperplane section, with filters",
    )
    p.add_argument("--degree", type=int, required=True)
    p.add_argument(
        "--explain", action="store_true", help="also list rejected candidates"
    )
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser(
        "link", parents=[common], help="h-vector of a linked point set"
    )
    p.add_argument("--hvector", required=True)
    p.add_argument("--ci", required=True, help="two comma-separated degrees")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser(
        "link-plan",
        parents=[common],
        help="full descent from the fail-by-one configuration to 3 points",
    )
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_link_plan)

    p = sub.add_parser(
        "davis", parents=[common], help="split an h-vector at a flat"
    )
    p.add_argument("--hvector", required=True)
    p.add_argument("--t", type=int, default=None, help="degree of the flat")
    p.set_defaults(func=cmd_davis)

    p = sub.add_parser(
        "stability",
        parents=[common],
        help="syzygy-bundle stability arithmetic and injectivity range",
    )
    p.add_argument("--degrees", required=True)
    p.add_argument(
        "--crosscheck",
        action="store_true",
        help="confirm the injectivity range by exact ranks",
    )
    p.set_defaults(func=cmd_stability)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.seed == 0:
        args.seed = secrets.randbits(31) or 1
    try:
        args.prime = check_prime(args.prime)
        if args.trials < 1:
            raise ValueError("trials must be at least 1")
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
