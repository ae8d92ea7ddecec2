"""Command-line surface.

Every command is deterministic: identical inputs and seed give byte-identical
output.  Human-readable tables by default; one JSON object per line with
--json.  Exit codes: 0 success, 2 usage error, 3 budget exhausted / diverged,
4 a guaranteed property was violated by the computation (a fatal finding).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bruteforce, catalog
from .cosets import (
    delta,
    double_coset_decompose,
    l_value,
    r_value,
)
from .errors import (
    BadParameter,
    BallTooSmall,
    BudgetExceeded,
    Diverged,
    HeckeError,
    NotFinite,
    ParseError,
    UnknownName,
    ValidationError,
)
from .groups import mat
from .hecke import (
    is_self_inverse_class,
    chi,
    convolve,
    discovered_double_cosets,
    is_gelfand,
    is_locally_commutative,
    is_relatively_unimodular,
    l1_norm,
)
from .pairs import Budget, default_budget
from .reduction import check_reduction_isomorphism, core_bound, core_finite, reduce_finite
from .regrep import adjoint_check, build_ball, check_l1_bound, lambda_matrix, operator_norm_estimate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIVERGED = 3
EXIT_CHECK_FAILED = 4

#: documented example invocations; the test suite re-runs each and requires
#: byte-identical output (README quotes the same list)
DOC_EXAMPLES = [
    ["analyze", "--pair", "bost_connes", "--element", "axb 2/3 0"],
    ["decompose", "--pair", "bost_connes", "--element", "axb 2 0"],
    ["check", "unimodular", "--pair", "flip"],
    ["check", "l1bound", "--pair", "bost_connes", "--element", "axb 2 0",
     "--trials", "100", "--seed", "7"],
    ["convolve", "--pair", "gl2q_plus_sl2z", "--left", "mat2 1 0 0 2",
     "--right", "mat2 1 0 0 3"],
    ["table", "--pair", "flip"],
    ["experiment", "selfinverse_survey", "--pair", "flip"],
    ["reduce", "--pair", "d4_center"],
    ["core", "--pair", "sl2_z_inv_p(2)"],
    ["normbound", "--pair", "bost_connes", "--element", "axb 2 0", "--radius", "3",
     "--json"],
]


def _load_pair(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            return catalog.load_pair(fh.read())
    if not args.pair:
        raise ParseError("one of --pair or --config is required")
    return catalog.get_pair(args.pair)


def _budget(args) -> Budget:
    if getattr(args, "budget", None):
        return Budget(max_cosets=args.budget, max_steps=20 * args.budget)
    return default_budget()


def _emit(args, out, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(human, file=out)


def _result_json(args, pair, input_str, result, exact=True):
    return {
        "command": args.command,
        "pair": pair.name,
        "input": input_str,
        "result": result,
        "budget_used": _budget(args).max_cosets,
        "exact": exact,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args, out):
    pair = _load_pair(args)
    x = catalog.parse_element(pair.group, args.element)
    budget = _budget(args)
    l = l_value(pair, x, budget)
    r = r_value(pair, x, budget)
    d = delta(pair, x, budget)
    _emit(
        args,
        out,
        _result_json(args, pair, args.element, {"L": l, "R": r, "delta": str(d)}),
        f"L={l} R={r} delta={d}",
    )
    return EXIT_OK


def cmd_decompose(args, out):
    pair = _load_pair(args)
    x = catalog.parse_element(pair.group, args.element)
    d = double_coset_decompose(pair, x, _budget(args))
    reps = [catalog.element_literal(pair.group, rep) for rep in d.right_coset_reps]
    _emit(
        args,
        out,
        _result_json(args, pair, args.element, {"R": d.r_value, "right_coset_reps": reps}),
        f"R={d.r_value}\n" + "\n".join(f"  H * ({rep})" for rep in reps),
    )
    return EXIT_OK


def _format_element(pair, f):
    if f.is_zero():
        return "0"
    g = pair.group
    return " + ".join(
        f"{c} * chi[{catalog.element_literal(g, f.support[k].rep)}]"
        for k, c in f.coeffs.items()
    )


def cmd_convolve(args, out):
    pair = _load_pair(args)
    budget = _budget(args)
    a = chi(pair, catalog.parse_element(pair.group, args.left), budget)
    b = chi(pair, catalog.parse_element(pair.group, args.right), budget)
    prod = convolve(a, b, budget)
    terms = {
        catalog.element_literal(pair.group, prod.support[k].rep): str(c)
        for k, c in prod.coeffs.items()
    }
    _emit(
        args,
        out,
        _result_json(args, pair, f"{args.left} | {args.right}", terms),
        f"chi[{args.left}] * chi[{args.right}] = {_format_element(pair, prod)}",
    )
    return EXIT_OK


def cmd_table(args, out):
    pair = _load_pair(args)
    budget = _budget(args)
    elements = (
        pair.group.elements() if pair.is_finite else pair.sample_elements
    )
    decomps = discovered_double_cosets(pair, elements, budget)
    lines = []
    result = {}
    names = {d.key: catalog.element_literal(pair.group, d.rep) for d in decomps}
    for c in decomps:
        for d in decomps:
            prod = convolve(
                chi(pair, c.rep, budget), chi(pair, d.rep, budget), budget
            )
            rhs = " + ".join(
                f"{coeff} chi[{names.get(k, catalog.element_literal(pair.group, prod.support[k].rep))}]"
                for k, coeff in prod.coeffs.items()
            ) or "0"
            lines.append(f"chi[{names[c.key]}] * chi[{names[d.key]}] = {rhs}")
            result[f"{names[c.key]} | {names[d.key]}"] = rhs
    _emit(args, out, _result_json(args, pair, "table", result), "\n".join(lines))
    return EXIT_OK


def cmd_check(args, out):
    pair = _load_pair(args)
    budget = _budget(args)
    subject = args.subject
    code = EXIT_OK
    if subject == "unimodular":
        v = is_relatively_unimodular(pair, budget=budget)
        detail = "" if v.witness is None else f" witness={v.witness}"
        human = f"{v.kind}{detail}"
        result = {"verdict": v.kind, "witness": str(v.witness) if v.witness else None}
    elif subject == "locallycommutative":
        v = is_locally_commutative(pair, budget=budget)
        human = f"{v.kind}" + ("" if v.witness is None else f" witness={v.witness}")
        result = {"verdict": v.kind, "witness": str(v.witness) if v.witness else None}
    elif subject == "gelfand":
        v = is_gelfand(pair, budget=budget)
        human = f"{v.kind}" + ("" if v.witness is None else f" witness={v.witness}")
        result = {"verdict": v.kind, "witness": str(v.witness) if v.witness else None}
    elif subject == "selfinverse":
        x = catalog.parse_element(pair.group, args.element)
        ok = is_self_inverse_class(pair, x, budget)
        human = "true" if ok else "false"
        result = {"verdict": human}
    elif subject == "l1bound":
        f = chi(pair, catalog.parse_element(pair.group, args.element), budget)
        rep = check_l1_bound(f, trials=args.trials, seed=args.seed, budget=budget)
        human = (
            f"trials={rep.trials} violations={len(rep.violations)} "
            f"indeterminate={rep.indeterminate}"
        )
        result = {
            "trials": rep.trials,
            "violations": len(rep.violations),
            "indeterminate": rep.indeterminate,
        }
        if not rep.ok:
            code = EXIT_CHECK_FAILED
    elif subject == "adjoint":
        f = chi(pair, catalog.parse_element(pair.group, args.element), budget)
        if pair.is_finite:
            rep = adjoint_check(pair, f, None, budget)
        else:
            gens = list(pair.group.generators)
            gens += [pair.group.inv(s) for s in gens]
            ball = build_ball(pair, gens, args.radius, budget)
            rep = adjoint_check(pair, f, ball, budget)
        human = (
            f"mode={rep.mode} interior={rep.interior_size} "
            f"flat_is_adjoint={rep.flat_is_adjoint} sharp_is_adjoint={rep.sharp_is_adjoint}"
        )
        result = {
            "mode": rep.mode,
            "flat_is_adjoint": rep.flat_is_adjoint,
            "sharp_is_adjoint": rep.sharp_is_adjoint,
        }
        if not rep.flat_is_adjoint:
            code = EXIT_CHECK_FAILED
    else:
        raise ParseError(f"unknown check subject {subject!r}")
    _emit(args, out, _result_json(args, pair, subject, result), human)
    return code


def cmd_repmat(args, out):
    pair = _load_pair(args)
    budget = _budget(args)
    f = chi(pair, catalog.parse_element(pair.group, args.element), budget)
    if pair.is_finite and args.radius is None:
        from .regrep import full_ball

        ball = full_ball(pair)
    else:
        gens = list(pair.group.generators)
        gens += [pair.group.inv(s) for s in gens]
        ball = build_ball(pair, gens, args.radius or 2, budget)
    m = lambda_matrix(f, ball, budget)
    rows = [[str(c) for c in row] for row in m.entries]
    human = "\n".join(" ".join(f"{c:>6}" for c in row) for row in rows)
    _emit(args, out, _result_json(args, pair, args.element, rows), human)
    return EXIT_OK


def cmd_normbound(args, out):
    pair = _load_pair(args)
    budget = _budget(args)
    f = chi(pair, catalog.parse_element(pair.group, args.element), budget)
    if pair.is_finite and args.radius is None:
        from .regrep import full_ball

        ball = full_ball(pair)
    else:
        gens = list(pair.group.generators)
        gens += [pair.group.inv(s) for s in gens]
        ball = build_ball(pair, gens, args.radius or 2, budget)
    est = operator_norm_estimate(f, ball, args.iterations)
    n1 = l1_norm(f)
    human = f"opnorm_estimate={est:.9f} l1={n1} ball={len(ball)}"
    _emit(
        args,
        out,
        _result_json(
            args,
            pair,
            args.element,
            {"opnorm_estimate": f"{est:.9f}", "l1_hi": str(n1.hi), "ball": len(ball)},
            exact=False,
        ),
        human,
    )
    return EXIT_OK


def cmd_reduce(args, out):
    pair = _load_pair(args)
    qpair, _ = reduce_finite(pair)
    rep = check_reduction_isomorphism(pair)
    human = (
        f"|G|={len(pair.group.elements())} core={len(core_finite(pair).elements)} "
        f"|G/K|={len(qpair.group.elements())} double_cosets={rep.double_cosets} "
        f"isomorphism={'ok' if rep.ok else 'MISMATCH'}"
    )
    result = {
        "group_order": len(pair.group.elements()),
        "core_order": len(core_finite(pair).elements),
        "quotient_order": len(qpair.group.elements()),
        "double_cosets": rep.double_cosets,
        "isomorphism_ok": rep.ok,
    }
    _emit(args, out, _result_json(args, pair, "reduce", result), human)
    return EXIT_OK if rep.ok else EXIT_CHECK_FAILED


def _sl2_word_ball(pair, radius):
    g = pair.group
    s = mat(0, -1, 1, 0)
    t = mat(1, 1, 0, 1)
    gens = [s, t, g.inv(s), g.inv(t)]
    seen = {g.identity()}
    frontier = [g.identity()]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for e in gens:
                y = g.mul(x, e)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=g.element_str)


def cmd_core(args, out):
    pair = _load_pair(args)
    if pair.is_finite:
        res = core_finite(pair)
        elems = [catalog.element_literal(pair.group, e) for e in res.elements]
        human = f"core (exact): {{{', '.join(elems)}}}"
        result = {"mode": "exact", "elements": elems}
    else:
        if pair.group.kind != "mat2":
            raise NotFinite("core bounds are only wired for matrix pairs")
        p = args.denominator
        # Unipotents with denominator p are too coarse for p = 2: conjugating
        # [[1,4],[0,1]] by any single matrix with half-integer entries lands
        # back in SL2(Z) because 4*(k/2)^2 is an integer.  Denominator p^2
        # separates every non-central element of the radius-4 word ball.
        q = Fraction(1, p * p)
        conjugators = [mat(1, q, 0, 1), mat(1, 0, q, 1)]
        test_set = _sl2_word_ball(pair, args.radius or 4)
        res = core_bound(pair, conjugators, test_set)
        elems = [catalog.element_literal(pair.group, e) for e in res.elements]
        human = (
            f"core bound: {len(res.elements)} survivors of {res.test_set_size} "
            f"test elements: {{{', '.join(elems)}}}"
        )
        result = {
            "mode": "bound",
            "survivors": elems,
            "test_set_size": res.test_set_size,
        }
    _emit(args, out, _result_json(args, pair, "core", result), human)
    return EXIT_OK


def cmd_experiment(args, out):
    budget = _budget(args)
    if args.name == "selfinverse_survey":
        pair = _load_pair(args)
        elements = pair.group.elements() if pair.is_finite else pair.sample_elements
        lines = []
        result = {}
        for x in elements:
            ok = is_self_inverse_class(pair, x, budget)
            lit = catalog.element_literal(pair.group, x)
            lines.append(f"{lit}: {'true' if ok else 'false'}")
            result[lit] = ok
        _emit(args, out, _result_json(args, pair, args.name, result), "\n".join(lines))
        return EXIT_OK
    if args.name == "local_comm_at_H_vs_full":
        found = _local_comm_probe(args.max_order, budget, out, args)
        return EXIT_OK
    raise ParseError(f"unknown experiment {args.name!r}")


def _local_comm_probe(max_order, budget, out, args):
    """Search small finite pairs for one that is commutative at H (it always
    is, since L = R there) yet not fully locally commutative."""
    from .groups import dihedral_group, symmetric_group
    from .groups import Subgroup as SG
    from .pairs import Pair as P

    candidates = []
    for n in range(3, 9):
        g = dihedral_group(n)
        if 2 * n <= max_order:
            candidates.append(g)
    g = symmetric_group(3)
    if 6 <= max_order:
        candidates.append(g)
    candidates.append(catalog.get_pair("flip").group)

    lines = []
    found = None
    for g in candidates:
        for s in g.elements():
            if s == g.identity():
                continue
            sub = SG(
                parent=g,
                membership=None,
                generators=(s,),
                is_finite=True,
                name=f"<{g.element_str(s)}>",
            )
            members = set(sub.elements())
            sub.membership = lambda x, members=members: x in members
            pair = P(group=g, subgroup=sub, name=f"{g.name}:{g.element_str(s)}")
            at_h_ok = True
            full = is_locally_commutative(pair, budget=budget)
            for x in g.elements():
                a = chi(pair, x, budget)
                b = chi(pair, g.inv(x), budget)
                e = g.identity()
                if convolve(a, b, budget).value_at(e) != convolve(b, a, budget).value_at(e):
                    at_h_ok = False
                    break
            if at_h_ok and full.kind == "false":
                found = (pair, full.witness)
                lines.append(
                    f"separation: pair {pair.name} commutes at H but "
                    f"chi_g*chi_g^-1 != chi_g^-1*chi_g at g={g.element_str(full.witness)}"
                )
                break
        if found:
            break
    if not found:
        lines.append("no separation found within budget")
    payload = {
        "command": args.command,
        "pair": found[0].name if found else None,
        "input": args.name,
        "result": lines,
        "budget_used": budget.max_cosets,
        "exact": True,
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print("\n".join(lines), file=out)
    return found


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _add_common(p, element=False):
    p.add_argument("--pair", help="built-in pair name")
    p.add_argument("--config", help="pair config file")
    p.add_argument("--budget", type=int, help="max cosets per enumeration")
    p.add_argument("--json", action="store_true", help="one JSON object per line")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomness")
    if element:
        p.add_argument("--element", required=True, help='element literal, e.g. "axb 2/3 0"')


def build_parser() -> _Parser:
    ap = _Parser(prog="hecke", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="L, R and delta of an element")
    _add_common(p, element=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="right cosets of HxH")
    _add_common(p, element=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convolve", help="convolution of two double-coset functions")
    _add_common(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("table", help="structure-constant table")
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", help="predicates and bound checks")
    p.add_argument(
        "subject",
        choices=[
            "unimodular",
            "locallycommutative",
            "gelfand",
            "selfinverse",
            "l1bound",
            "adjoint",
        ],
    )
    _add_common(p)
    p.add_argument("--element")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--radius", type=int, default=3)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("repmat", help="truncated regular-representation matrix")
    _add_common(p, element=True)
    p.add_argument("--radius", type=int)
    p.set_defaults(func=cmd_repmat)

    p = sub.add_parser("normbound", help="operator norm estimate vs l1 norm")
    _add_common(p, element=True)
    p.add_argument("--radius", type=int)
    p.add_argument("--iterations", type=int, default=1000)
    p.set_defaults(func=cmd_normbound)

    p = sub.add_parser("reduce", help="reduction of a finite pair")
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("core", help="core of a pair (exact or bound)")
    _add_common(p)
    p.add_argument("--radius", type=int, help="word-ball radius for bound mode")
    p.add_argument("--denominator", type=int, default=2, help="conjugators use entries 1/p^2")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("experiment", help="open-question probes")
    p.add_argument("name", choices=["selfinverse_survey", "local_comm_at_H_vs_full"])
    _add_common(p)
    p.add_argument("--max-order", type=int, default=16)
    p.set_defaults(func=cmd_experiment)

    return ap


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except ParseError as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (Diverged, BudgetExceeded) as e:
        print(f"diverged: {e}", file=err)
        return EXIT_DIVERGED
    except (ParseError, UnknownName, BadParameter, ValidationError, FileNotFoundError) as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    except BallTooSmall as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    except AssertionError as e:
        print(f"check failed: {e}", file=err)
        return EXIT_CHECK_FAILED
    except HeckeError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
