"""Command-line front end.

Every subcommand prints a JSON document ``{"schema": 1, "command": ..., ...}``
(or a plain-text rendering with ``--format plain``).  Rationals cross the
boundary only as ``"p/q"`` strings.  Exit status: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import checks
from .cumulants import CumulantSequence, MomentSequence, cumulants_to_moments, moments_to_cumulants
from .dual import DualScalar, format_rational, parse_rational
from .errors import DomainError, TypeBError
from .limits import (
    BernoulliSpec,
    CltSpec,
    arcsine_check,
    bernoulli_moments,
    clt_limit_moments,
    clt_limit_r_transform,
    clt_report,
    hankel_necessary_check,
    poisson_limit_cumulants,
    poisson_moments,
    poisson_report,
    semicircle_square_check,
    semicircle_square_cumulants,
)
from .nc_lattice import (
    PartitionInterval,
    SetPartition,
    enumerate_nc,
    enumerate_ncb,
    is_noncrossing,
    kreweras,
    moebius,
)
from .series import CSeries, box_conv, check_box_conv, invert_compositional, s_transform

SCHEMA = 1


def parse_dual(text: str) -> DualScalar:
    """``"x,t"`` with both parts exact rationals."""
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"expected 'x,t', got {text!r}")
    return DualScalar(parse_rational(parts[0]), parse_rational(parts[1]))


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{what} is not valid JSON: {exc.msg}") from None


def _series(text: str, what: str) -> CSeries:
    return CSeries.from_json(_load_json(text, what))


def _pairs(values) -> list[list[str]]:
    return [v.to_json() for v in values]


def _plain_values(values, start: int = 1) -> list[str]:
    return [f"{i}: {v}" for i, v in enumerate(values, start=start)]


# Each handler returns (json payload, plain-text lines).


def cmd_nc_enumerate(args):
    parts = enumerate_nc(args.n)
    return {"n": args.n, "count": len(parts), "partitions": [str(p) for p in parts]}, [str(p) for p in parts]


def cmd_ncb_enumerate(args):
    parts = enumerate_ncb(args.n)
    return {"n": args.n, "count": len(parts), "partitions": [str(p) for p in parts]}, [str(p) for p in parts]


def cmd_kreweras(args):
    p = SetPartition.parse(args.partition, args.n)
    if not is_noncrossing(p):
        raise DomainError(f"{p} is crossing")
    k = kreweras(p)
    return {"n": p.n, "partition": str(p), "kreweras": str(k)}, [str(k)]


def cmd_moebius(args):
    lower = SetPartition.parse(args.lower, args.n)
    upper = SetPartition.parse(args.upper, args.n or lower.n)
    mu = moebius(PartitionInterval(lower, upper))
    return {"lower": str(lower), "upper": str(upper), "moebius": mu}, [str(mu)]


def cmd_m2c(args):
    m = MomentSequence.from_json(_load_json(args.values, "--values"))
    k = moments_to_cumulants(m)
    return {"moments": m.to_json(), "cumulants": k.to_json()}, _plain_values(k.values)


def cmd_c2m(args):
    k = CumulantSequence.from_json(_load_json(args.values, "--values"))
    m = cumulants_to_moments(k)
    return {"cumulants": k.to_json(), "moments": m.to_json()}, _plain_values(m.values)


def cmd_boxconv(args):
    out = box_conv(_series(args.f, "--f"), _series(args.g, "--g"))
    return {"series": out.to_json()}, _plain_values(out.coeffs)


def cmd_checkboxconv(args):
    out = check_box_conv(_series(args.f, "--f"), _series(args.g, "--g"))
    return {"series": out.to_json()}, _plain_values(out.coeffs)


def cmd_invert(args):
    out = invert_compositional(_series(args.f, "--f"))
    return {"series": out.to_json()}, _plain_values(out.coeffs)


def cmd_s_transform(args):
    out = s_transform(_series(args.r, "--r"))
    return {"series": out.to_json()}, _plain_values(out.coeffs, start=0)


def cmd_clt(args):
    spec = CltSpec(args.order, parse_dual(args.variance))
    moments = clt_limit_moments(spec)
    payload = {
        "order": spec.order,
        "variance": spec.variance.to_json(),
        "r_transform": clt_limit_r_transform(spec).to_json(),
        "moments": moments.to_json(),
    }
    lines = _plain_values(moments.values)
    if args.summands:
        if not args.base:
            raise DomainError("--summands needs --base cumulants")
        base = CumulantSequence.from_json(_load_json(args.base, "--base"))
        report = clt_report(spec, base, args.summands)
        payload["report"] = report.to_json()
        for N, row in zip(report.Ns, report.deviations):
            lines.append(f"N={N} deviation: " + ", ".join(map(str, row)))
    return payload, lines


def cmd_arcsine(args):
    ok = arcsine_check(args.order)
    return {"order": args.order, "holds": ok}, ["HOLDS" if ok else "FAILS"]


def _bernoulli_spec(args) -> BernoulliSpec:
    return BernoulliSpec(parse_dual(args.rate), parse_dual(args.jump))


def cmd_bernoulli(args):
    m = bernoulli_moments(_bernoulli_spec(args), args.order)
    return {"moments": m.to_json()}, _plain_values(m.values)


def cmd_poisson(args):
    spec = _bernoulli_spec(args)
    limit = poisson_limit_cumulants(spec, args.order)
    payload = {"rate": spec.rate.to_json(), "jump": spec.jump.to_json(), "limit_cumulants": limit.to_json()}
    lines = _plain_values(limit.values)
    if args.summands:
        report = poisson_report(spec, args.summands, args.order)
        payload["report"] = report.to_json()
        for N, row in zip(report.Ns, report.deviations):
            lines.append(f"N={N} deviation: " + ", ".join(map(str, row)))
    return payload, lines


def cmd_semicircle_square(args):
    sigma = parse_dual(args.sigma)
    kappa = semicircle_square_cumulants(sigma, args.order)
    ok = semicircle_square_check(sigma, args.order)
    payload = {"sigma": sigma.to_json(), "cumulants": kappa.to_json(), "equals_sigma": ok}
    return payload, _plain_values(kappa.values) + ["cumulants equal sigma" if ok else "cumulants differ from sigma"]


def cmd_hankel(args):
    if args.moments:
        m = MomentSequence.from_json(_load_json(args.moments, "--moments"))
    else:
        if args.lam is None:
            raise DomainError("give --moments or --lambda")
        m = poisson_moments(parse_rational(args.lam), parse_rational(args.alpha), 4)
    holds = hankel_necessary_check(m)
    lhs, rhs = m[2].t * m[4].t, m[3].t ** 2
    message = (
        f"HOLDS: m2*m4 >= m3^2 ({format_rational(lhs)} >= {format_rational(rhs)})"
        if holds
        else f"FAILS: m2*m4 < m3^2 ({format_rational(lhs)} < {format_rational(rhs)})"
    )
    payload = {
        "moments": m.to_json(),
        "m2m4": format_rational(lhs),
        "m3_squared": format_rational(rhs),
        "holds": holds,
        "message": message,
    }
    return payload, [message]


def cmd_verify_paper(args):
    results = checks.run_all()
    payload = {
        "passed": all(r.passed for r in results),
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    return payload, [r.line() for r in results]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "plain"), default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(prog="typeb-free", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("nc-enumerate", cmd_nc_enumerate, "list NC(n)")
    p.add_argument("--n", type=int, required=True)
    p = add("ncb-enumerate", cmd_ncb_enumerate, "list NC^B(n)")
    p.add_argument("--n", type=int, required=True)
    p = add("kreweras", cmd_kreweras, "Kreweras complement of a partition such as 1,2|3")
    p.add_argument("--partition", required=True)
    p.add_argument("--n", type=int)
    p = add("moebius", cmd_moebius, "Moebius function of NC(n) on [lower, upper]")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    p.add_argument("--n", type=int)
    p = add("m2c", cmd_m2c, "moments to cumulants")
    p.add_argument("--values", required=True, help='JSON list of ["x","t"] pairs')
    p = add("c2m", cmd_c2m, "cumulants to moments")
    p.add_argument("--values", required=True, help='JSON list of ["x","t"] pairs')
    for name, handler in (("boxconv", cmd_boxconv), ("checkboxconv", cmd_checkboxconv)):
        p = add(name, handler, f"{name} of two series")
        p.add_argument("--f", required=True)
        p.add_argument("--g", required=True)
    p = add("invert", cmd_invert, "compositional inverse")
    p.add_argument("--f", required=True)
    p = add("s-transform", cmd_s_transform, "S-transform of an R-transform")
    p.add_argument("--r", required=True)
    p = add("clt", cmd_clt, "central limit moments")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--variance", default="1,1")
    p.add_argument("--base", help="cumulants of one summand (JSON), for finite-N moments")
    p.add_argument("--summands", type=int, nargs="*", default=[])
    p = add("arcsine", cmd_arcsine, "arcsine decomposition of the CLT moments")
    p.add_argument("--order", type=int, required=True)
    for name, handler in (("bernoulli", cmd_bernoulli), ("poisson", cmd_poisson)):
        p = add(name, handler, f"{name} distribution data")
        p.add_argument("--rate", required=True, help="x,t")
        p.add_argument("--jump", required=True, help="a1,a2")
        p.add_argument("--order", type=int, required=True)
        if name == "poisson":
            p.add_argument("--summands", type=int, nargs="*", default=[])
    p = add("semicircle-square", cmd_semicircle_square, "cumulants of the squared CLT limit")
    p.add_argument("--sigma", required=True)
    p.add_argument("--order", type=int, required=True)
    p = add("hankel", cmd_hankel, "m2*m4 >= m3^2 on second components")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--alpha", default="1")
    p.add_argument("--moments")
    add("verify-paper", cmd_verify_paper, "run the full theorem suite")
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, lines = args.handler(args)
    except (TypeBError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": args.command, **payload}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "verify-paper" and not payload["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
