"""Command-line front end.

Every subcommand parses its inputs, calls one library routine and reports
the result as a run report (JSON) or as plain text.  Exit codes: 0 on
success, 1 when the computation reports a mathematical FAIL, 2 on usage or
parse errors.  Errors are written to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import coinvariants as coinv
from . import equivariant as equiv
from . import invariant_theory as inv
from . import symmetric_core as sym
from . import weight_sequences as ws
from .errors import (CarlemanError, DeltaDivisionFailed, NotASubgroup, NotBlockSymmetric,
                     NotDivisible, NotEquivariant, NotInAlgebra, NotInModule, NotInvariant,
                     NotLogConvex, NotSymmetric, PrecisionExhausted)
from .polynomials import (Polynomial, format_polynomial, from_json, grlex_key, monomials_of_degree,
                          parse_polynomial)

DEFAULT_SEED = 0

# errors that are a mathematical verdict on valid input rather than bad usage
MATH_ERRORS = (DeltaDivisionFailed, NotASubgroup, NotBlockSymmetric, NotDivisible,
               NotEquivariant, NotInAlgebra, NotInModule, NotInvariant, NotLogConvex,
               NotSymmetric, PrecisionExhausted)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Result:
    outputs: dict
    verdicts: dict = field(default_factory=dict)
    text: str = ""
    failed: bool = False
    inputs: dict = field(default_factory=dict)


def _poly_str(f: Polynomial, prefix: str = "x") -> str:
    return format_polynomial(f, prefix)


# -- input helpers ---------------------------------------------------------
def _read_poly(args, nvars: int | None = None) -> Polynomial:
    text, path = getattr(args, "poly", None), getattr(args, "poly_file", None)
    if text is not None and path is not None:
        raise UsageError("--poly and --poly-file are mutually exclusive")
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read().strip()
        if text.startswith("["):
            return from_json(json.loads(text), nvars)
    if text is None:
        raise UsageError("a polynomial is required (--poly or --poly-file)")
    return parse_polynomial(text, nvars)


def _load_json_arg(value: str):
    if os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a file and not valid JSON: {value!r}") from exc


_NAMED = re.compile(r"^(sym|sign|rot|trivial):([\d,\s]+)$")


def _group(value: str, max_order: int) -> inv.FiniteMatrixGroup:
    """Named group (``sym:3``, ``sym:2,2``, ``sign:1``, ``rot:4``, ``trivial:2``) or matrices."""
    m = _NAMED.match(value.strip())
    if m:
        kind, nums = m.group(1), [int(x) for x in m.group(2).split(",") if x.strip()]
        if kind == "sym":
            return inv.symmetric_group(nums[0]) if len(nums) == 1 else inv.block_symmetric_group(nums)
        if len(nums) != 1:
            raise UsageError(f"{kind}: takes a single integer")
        builder = {"sign": inv.sign_group, "rot": inv.rotation_group, "trivial": inv.trivial_group}
        return builder[kind](nums[0])
    return inv.close_group(_matrices(value), max_order=max_order)


def _matrices(value: str) -> list:
    data = _load_json_arg(value)
    if isinstance(data, dict):
        data = data.get("generators", data.get("elements"))
    if not isinstance(data, list) or not data:
        raise UsageError("expected a non-empty JSON list of matrices")
    return [inv.as_matrix(g) for g in data]


def _blocks(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in value.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad block sizes {value!r}") from exc


def _group_inputs(G: inv.FiniteMatrixGroup) -> dict:
    return {"n": G.n, "order": G.order, "elements": G.to_json()}


def _verdict_text(v: ws.ConditionVerdict) -> str:
    line = f"{v.condition}: {v.status}"
    if v.sup_estimate is not None:
        line += f" (sup_estimate={v.sup_estimate:.6g}, K={v.prefix_K})"
    if v.witness is not None:
        line += f" witness={v.witness}"
    return line


# -- seq -------------------------------------------------------------------
def cmd_seq_classify(args) -> Result:
    M = ws.make_sequence(args.sequence)
    report = ws.classify(M, args.K)
    return Result({"sequence": M.spec(), "conditions": {k: v.to_json() for k, v in report.items()}},
                  {k: v.status for k, v in report.items()},
                  "\n".join(_verdict_text(v) for v in report.values()),
                  inputs={"sequence": M.spec(), "K": args.K})


def cmd_seq_compare(args) -> Result:
    M, N = ws.make_sequence(args.M), ws.make_sequence(args.N)
    v = ws.inclusion_index(M, N, args.K)
    return Result({"inclusion": v.to_json()}, {"inclusion": v.status}, _verdict_text(v),
                  v.status == ws.FAILS, {"M": M.spec(), "N": N.spec(), "K": args.K})


def cmd_seq_loss(args) -> Result:
    M, N = ws.make_sequence(args.M), ws.make_sequence(args.N)
    v = ws.loss_condition(M, N, args.m, args.K)
    return Result({"loss": v.to_json()}, {"loss": v.status}, _verdict_text(v),
                  v.status == ws.FAILS, {"M": M.spec(), "N": N.spec(), "m": args.m, "K": args.K})


# -- inv -------------------------------------------------------------------
def cmd_inv_generators(args) -> Result:
    G = _group(args.group, args.max_order)
    S = inv.invariant_generators(G)
    gens = [_poly_str(g) for g in S.generators]
    text = "\n".join(f"s{i + 1} = {g}" for i, g in enumerate(gens))
    return Result({"order": G.order, "generators": gens, "degrees": list(S.degrees)},
                  text=text, inputs=_group_inputs(G))


def cmd_inv_rewrite(args) -> Result:
    G = _group(args.group, args.max_order)
    f = _read_poly(args, G.n)
    S = inv.invariant_generators(G)
    F = inv.rewrite_invariant(f, S)
    status = "PASS" if F.compose(list(S.generators)) == f else "FAIL"
    out = {"generators": [_poly_str(g) for g in S.generators], "F": _poly_str(F, "s")}
    return Result(out, {"round_trip": status}, out["F"], status == "FAIL",
                  inputs={**_group_inputs(G), "poly": _poly_str(f)})


def cmd_inv_reynolds(args) -> Result:
    G = _group(args.group, args.max_order)
    f = _read_poly(args, G.n)
    r = _poly_str(inv.reynolds(f, G))
    return Result({"reynolds": r}, text=r, inputs={**_group_inputs(G), "poly": _poly_str(f)})


def cmd_inv_weyl_check(args) -> Result:
    G = _group(args.group, args.max_order)
    W = inv.weyl_embedding(G)
    if args.poly is not None or args.poly_file is not None:
        f = _read_poly(args, G.n)
        if not G.is_invariant(f):
            raise NotInvariant("polynomial is not invariant under the group")
        cases = [f]
    else:
        cases = []
        for d in range(args.degree + 1):
            for e in sorted(monomials_of_degree(G.n, d), key=grlex_key):
                r = inv.reynolds(Polynomial.monomial(e), G)
                if not r.is_zero():
                    cases.append(r)
    failures = []
    for f in cases:
        J = W.lift(f)
        if W.pullback(J) != f or not W.block_permutation_invariant(J):
            failures.append(_poly_str(f))
    status = "FAIL" if failures else "PASS"
    out = {"embedding_dim": W.dim, "checked": len(cases), "failures": failures}
    return Result(out, {"section_identity": status},
                  f"section_identity: {status} ({len(cases)} invariants, E = R^{W.dim})",
                  bool(failures), {**_group_inputs(G), "degree": args.degree,
                                   "cases": [_poly_str(c) for c in cases]})


# -- coinv -----------------------------------------------------------------
def _basis(args) -> coinv.CoinvariantBasis:
    sizes = _blocks(args.blocks)
    if getattr(args, "harmonic", False):
        return coinv.harmonic_basis(sizes)
    return coinv.artin_basis(sizes)


def cmd_coinv_basis(args) -> Result:
    B = _basis(args)
    out = {"block_sizes": list(B.block_sizes), "kind": B.kind, "size": B.size,
           "basis": [_poly_str(h) for h in B.basis],
           "delta_factored": {"scale": str(B.delta_scale),
                              "factors": [{"base": _poly_str(b), "power": p}
                                          for b, p in B.delta_factors]}}
    if B.size <= args.expand_limit:
        out["delta"] = _poly_str(B.delta)
    text = [f"|W| = {B.size}", "basis: " + ", ".join(out["basis"])]
    if "delta" in out:
        text.append(f"Delta = {out['delta']}")
    return Result(out, text="\n".join(text), inputs={"blocks": list(B.block_sizes), "kind": B.kind})


def cmd_coinv_decompose(args) -> Result:
    B = _basis(args)
    f = _read_poly(args, B.nvars)
    inputs = {"blocks": list(B.block_sizes), "kind": B.kind, "poly": _poly_str(f)}
    if args.subgroup:
        G = _group(args.subgroup, args.max_order)
        pairs = coinv.invariant_decompose(f, B, G)
        total = Polynomial.zero(B.nvars)
        for h, c in pairs:
            total = total + h * c
        inputs["subgroup"] = G.to_json()
    else:
        coeffs = coinv.cramer_decompose(f, B, args.method)
        pairs = list(zip(B.basis, coeffs))
        total = coinv.recombine(B, coeffs)
    invariant = all(B.is_w_invariant(c) for _, c in pairs)
    status = "PASS" if total == f and invariant else "FAIL"
    rows = [{"h": _poly_str(h), "f": _poly_str(c)} for h, c in pairs]
    text = [f"{r['h']} : {r['f']}" for r in rows] + [f"round_trip: {status}"]
    return Result({"pairs": rows}, {"round_trip": status}, "\n".join(text), status == "FAIL", inputs)


def cmd_coinv_delta_check(args) -> Result:
    B = _basis(args)
    rep = coinv.delta_divisibility_check(B)
    sign = coinv.delta_sign_character(B)
    out = rep.to_json()
    out["sign_character"] = "PASS" if sign else "FAIL"
    status = "PASS" if rep.passed and sign else "FAIL"
    text = [f"{x['form']}: exponent {x['exponent']}" for x in out["forms"]]
    text += [f"cofactor: {out['cofactor']}", f"delta_check: {status}"]
    return Result(out, {"delta_check": status}, "\n".join(text), status == "FAIL",
                  {"blocks": list(B.block_sizes), "kind": B.kind})


# -- sym -------------------------------------------------------------------
def cmd_sym_rewrite(args) -> Result:
    if args.blocks:
        sizes = _blocks(args.blocks)
        f = _read_poly(args, sum(sizes))
        F = sym.block_rewrite(f, sizes)
        gens = sym.block_generators(sizes)
        out = {"F": _poly_str(F, "s"), "generators": [_poly_str(g) for g in gens]}
        inputs = {"blocks": list(sizes), "poly": _poly_str(f)}
    else:
        f = _read_poly(args, args.n)
        coords = sym.SymmetricCoordinates(f.nvars, args.basis)
        F = sym.rewrite_symmetric(f, coords)
        gens = coords.generators()
        out = {"F": _poly_str(F, coords.prefix), "basis": args.basis}
        inputs = {"basis": args.basis, "poly": _poly_str(f), "n": f.nvars}
    status = "PASS" if F.compose(gens) == f else "FAIL"
    return Result(out, {"round_trip": status}, out["F"], status == "FAIL", inputs)


def cmd_sym_bronshtein_check(args) -> Result:
    f = _read_poly(args, args.n)
    ks = [args.k] if args.k else list(range(1, f.nvars + 1))
    rows, verdicts, text = [], {}, []
    for k in ks:
        c = sym.bronshtein_check(f, k)
        status = "PASS" if c.passed else "FAIL"
        rows.append({"k": k, "value": _poly_str(c.value), "oracle": _poly_str(c.oracle),
                     "order": c.order, "status": status})
        verdicts[f"k={k}"] = status
        text.append(f"k={k}: {status} (order {c.order}) d/du{k} F = {_poly_str(c.oracle)}")
    failed = any(v == "FAIL" for v in verdicts.values())
    return Result({"checks": rows}, verdicts, "\n".join(text), failed,
                  {"poly": _poly_str(f), "n": f.nvars, "k": ks})


def cmd_sym_necessity(args) -> Result:
    M = ws.make_sequence(args.sequence)
    rep = sym.necessity_report(M, args.n, args.m_max, args.K)
    status = "PASS" if rep.all_certified else "FAIL"
    return Result(rep.to_json(), {"necessity": status}, rep.to_text() + f"\nnecessity: {status}",
                  status == "FAIL",
                  {"sequence": M.spec(), "n": args.n, "m_max": args.m_max, "K": args.K})


# -- equiv -----------------------------------------------------------------
def _representation(args) -> tuple[equiv.RepresentationPair, dict]:
    G = _group(args.group, args.max_order)
    gens1 = list(G.generators) or list(G.elements)
    gens2 = _matrices(args.rep2) if args.rep2 else None
    if gens2 is not None and len(gens2) != len(gens1):
        raise UsageError(f"--rep2 needs {len(gens1)} matrices, one per group generator")
    rep = equiv.representation_pair(gens1, gens2, args.max_order)
    inputs = {"V1": [[[str(x) for x in r] for r in g] for g in gens1],
              "V2": None if gens2 is None else [[[str(x) for x in r] for r in g] for g in gens2]}
    return rep, inputs


def _map_text(comps) -> str:
    return "(" + ", ".join(_poly_str(c) for c in comps) + ")"


def cmd_equiv_generators(args) -> Result:
    rep, inputs = _representation(args)
    P = equiv.equivariant_module_generators(rep)
    maps = [[_poly_str(c) for c in p] for p in P.maps]
    sigma = [_poly_str(s) for s in P.sigma.generators]
    text = [f"s{i + 1} = {s}" for i, s in enumerate(sigma)]
    text += [f"P{j + 1} = {_map_text(p)}" for j, p in enumerate(P.maps)]
    return Result({"order": rep.order, "sigma": sigma, "generators": maps,
                   "degrees": list(P.degrees)}, text="\n".join(text), inputs=inputs)


def cmd_equiv_decompose(args) -> Result:
    rep, inputs = _representation(args)
    data = _load_json_arg(args.map)
    if not isinstance(data, list) or len(data) != rep.n2:
        raise UsageError(f"--map must list {rep.n2} component polynomials")
    comps = [parse_polynomial(c, rep.n1) if isinstance(c, str) else from_json(c, rep.n1)
             for c in data]
    P = equiv.equivariant_module_generators(rep)
    sigma = P.sigma
    out = {"sigma": [_poly_str(s) for s in sigma.generators],
           "generators": [[_poly_str(c) for c in p] for p in P.maps]}
    verdicts, text = {}, []
    routes = ["direct", "hf"] if args.route == "both" else [args.route]
    for route in routes:
        if route == "direct":
            L = equiv.decompose_equivariant(comps, sigma, P, rep)
        else:
            L = equiv.decompose_via_hf(comps, sigma, P, rep)
        ok = equiv.reconstruct(L, sigma, P) == comps
        verdicts[f"reconstruct_{route}"] = "PASS" if ok else "FAIL"
        out[f"L_{route}"] = [_poly_str(x, "s") for x in L]
        text.append(f"{route}: L = [{', '.join(out[f'L_{route}'])}] reconstruct: "
                    f"{verdicts[f'reconstruct_{route}']}")
    inputs["map"] = [_poly_str(c) for c in comps]
    return Result(out, verdicts, "\n".join(text), "FAIL" in verdicts.values(), inputs)


# -- demo ------------------------------------------------------------------
def _random_poly(rng: random.Random, n: int, degree: int, terms: int) -> Polynomial:
    out = Polynomial.zero(n)
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(n)] += 1
        out = out + Polynomial.monomial(tuple(e), Fraction(rng.randint(-9, 9)))
    return out


def cmd_demo_gevrey_loss(args) -> Result:
    """Invariant Gevrey functions factor through sigma with loss gamma = delta m."""
    G = _group(args.group, args.max_order)
    delta = Fraction(args.delta)
    m = G.order
    M = ws.gevrey(delta)
    N = ws.minimal_loss_sequence(M, m)
    loss = ws.loss_condition(M, N, m, args.K)
    regular = ws.strongly_regular(N)
    below = ws.loss_condition(M, ws.gevrey(delta * m - Fraction(1, 2)), m, args.K) \
        if delta * m > Fraction(1, 2) else None
    rng = random.Random(args.seed)
    f = inv.reynolds(_random_poly(rng, G.n, args.degree, 6), G)
    S = inv.invariant_generators(G)
    F = inv.rewrite_invariant(f, S)
    round_trip = "PASS" if F.compose(list(S.generators)) == f else "FAIL"
    verdicts = {"loss_condition": loss.status, "target_strongly_regular": regular.status,
                "polynomial_round_trip": round_trip}
    if below is not None:
        verdicts["loss_below_gamma"] = below.status
    failed = (loss.status != ws.HOLDS or regular.status != ws.HOLDS or round_trip != "PASS"
              or (below is not None and below.status != ws.FAILS))
    out = {"group_order": m, "M": M.spec(), "gamma": str(delta * m), "N": N.spec(),
           "loss": loss.to_json(), "N_strongly_regular": regular.to_json(),
           "loss_below_gamma": None if below is None else below.to_json(),
           "sample_f": _poly_str(f), "generators": [_poly_str(s) for s in S.generators],
           "F": _poly_str(F, "s")}
    text = [f"|G| = {m}, M = {M.spec()}, gamma = delta*m = {delta * m}, N = {N.spec()}",
            _verdict_text(loss), "N " + _verdict_text(regular)]
    if below is not None:
        text.append(f"gamma - 1/2: {_verdict_text(below)}")
    text += [f"f = {out['sample_f']}", f"F = {out['F']}", f"f = F o sigma: {round_trip}"]
    return Result(out, verdicts, "\n".join(text), failed,
                  {**_group_inputs(G), "delta": str(delta), "seed": args.seed,
                   "degree": args.degree, "K": args.K})


# -- parser ----------------------------------------------------------------
def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    p.add_argument("--max-order", type=int, default=inv.DEFAULT_MAX_ORDER)
    return p


def _poly_args(p: argparse.ArgumentParser):
    p.add_argument("--poly", help="polynomial text, e.g. '3/2*x1^2*x2 - x3'")
    p.add_argument("--poly-file", help="file with polynomial text or JSON terms")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="carleman", description="Exact invariant theory and weight-sequence tools.")
    top = parser.add_subparsers(dest="area", required=True)

    def group(name: str, help_: str):
        sub = top.add_parser(name, help=help_).add_subparsers(dest="command", required=True)
        return sub

    def command(sub, name: str, func: Callable, help_: str):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    seq = group("seq", "weight sequences")
    p = command(seq, "classify", cmd_seq_classify, "all regularity conditions")
    p.add_argument("sequence")
    p.add_argument("--K", type=int, default=ws.DEFAULT_PREFIX_K)
    p = command(seq, "compare", cmd_seq_compare, "inclusion C^M in C^N")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--K", type=int, default=ws.DEFAULT_PREFIX_K)
    p = command(seq, "loss", cmd_seq_loss, "loss condition sup (M_km/N_k)^(1/k)")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--K", type=int, default=ws.DEFAULT_PREFIX_K)

    iv = group("inv", "finite group invariants")
    p = command(iv, "generators", cmd_inv_generators, "homogeneous generators")
    p.add_argument("--group", required=True)
    for name, func, help_ in [("rewrite", cmd_inv_rewrite, "write f = F o sigma"),
                              ("reynolds", cmd_inv_reynolds, "group average")]:
        p = command(iv, name, func, help_)
        p.add_argument("--group", required=True)
        _poly_args(p)
    p = command(iv, "weyl-check", cmd_inv_weyl_check, "section identity for L and J")
    p.add_argument("--group", required=True)
    p.add_argument("--degree", type=int, default=6)
    _poly_args(p)

    cv = group("coinv", "coinvariant bases")
    for name, func, help_ in [("basis", cmd_coinv_basis, "basis and Delta"),
                              ("decompose", cmd_coinv_decompose, "f = sum h_j f_j"),
                              ("delta-check", cmd_coinv_delta_check, "linear-form divisibility")]:
        p = command(cv, name, func, help_)
        p.add_argument("--blocks", required=True, help="block sizes, e.g. 2,2")
        p.add_argument("--harmonic", action="store_true", help="use the harmonic basis")
        if name == "basis":
            p.add_argument("--expand-limit", type=int, default=24,
                           help="expand Delta only when |W| is at most this")
        if name == "decompose":
            _poly_args(p)
            p.add_argument("--subgroup", help="matrices of G <= W (file, JSON or named)")
            p.add_argument("--method", choices=["tower", "full"], default="tower")

    sy = group("sym", "symmetric group case")
    p = command(sy, "rewrite", cmd_sym_rewrite, "symmetric or block-symmetric rewriting")
    _poly_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--basis", choices=[sym.ELEMENTARY, sym.NEWTON], default=sym.ELEMENTARY)
    p.add_argument("--blocks")
    p = command(sy, "bronshtein-check", cmd_sym_bronshtein_check, "operator identity for d/du_k F")
    _poly_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p = command(sy, "necessity", cmd_sym_necessity, "derivative blow-up rows")
    p.add_argument("sequence")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--K", type=int, default=40)

    eq = group("equiv", "equivariant maps")
    for name, func, help_ in [("generators", cmd_equiv_generators, "module generators"),
                              ("decompose", cmd_equiv_decompose, "f = sum (L_j o sigma) P_j")]:
        p = command(eq, name, func, help_)
        p.add_argument("--group", required=True, help="V1 generators (file, JSON or named)")
        p.add_argument("--rep2", help="V2 matrices, one per V1 generator (default: same)")
        if name == "decompose":
            p.add_argument("--map", required=True, help="JSON list of component polynomials")
            p.add_argument("--route", choices=["direct", "hf", "both"], default="both")

    dm = group("demo", "worked examples")
    p = command(dm, "gevrey-loss", cmd_demo_gevrey_loss, "Gevrey loss gamma = delta m")
    p.add_argument("--group", default="sym:2")
    p.add_argument("--delta", default="1")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--K", type=int, default=ws.DEFAULT_PREFIX_K)
    return parser


def _digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _emit_error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _emit_error("UsageError", str(exc), 2)
    start = time.perf_counter()
    try:
        result = args.func(args)
    except UsageError as exc:
        return _emit_error("UsageError", str(exc), 2)
    except MATH_ERRORS as exc:
        return _emit_error(type(exc).__name__, str(exc), 1)
    except (CarlemanError, ValueError, OSError) as exc:
        return _emit_error(type(exc).__name__, str(exc), 2)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        report: dict[str, Any] = {
            "command": [a for a in argv if a != "--timing"],
            "inputs_digest": _digest(result.inputs),
            "outputs": result.outputs,
            "verdicts": result.verdicts,
        }
        if args.timing:
            report["timing"] = {"seconds": round(elapsed, 6)}
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(result.text + "\n")
        if args.timing:
            sys.stdout.write(f"time: {elapsed:.3f} s\n")
    return 1 if result.failed else 0


if __name__ == "__main__":
    sys.exit(main())
