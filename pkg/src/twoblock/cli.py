"""Command-line surface: params, certify, scan, lattice, bound.

Exit codes: 0 success, 2 malformed input (diagnostic names the offending
field), 3 internal-consistency fault (a mathematically guaranteed invariant
failed; the emitted data cannot be trusted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import schemas
from .bounds import bt_bound, two_block_bound
from .cleaning import StabilizerCodeView, localize_logical
from .codes import (
    SearchLimits,
    TwoBlockCode,
    build_two_block,
    decompose,
    distance,
    normalize,
)
from .embedding import build_psi, qubit_layout, verify_locality
from .errors import BudgetExceededError, InternalConsistencyError, NotApplicableError
from .groups import FiniteAbelianGroup, GroupAlgebraElement
from .lattices import IntegerLattice, build_partition, good_basis
from .ratmath import ceil_decimal_str


class CliInputError(Exception):
    """Bad user input; maps to exit code 2."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"spec file is not valid JSON: {exc}") from exc


def _parse_group(obj) -> FiniteAbelianGroup:
    if "group" not in obj:
        raise CliInputError("field 'group': missing")
    orders = obj["group"]
    if not isinstance(orders, list) or not orders:
        raise CliInputError("field 'group': expected a nonempty list of integers")
    for i, d in enumerate(orders):
        if not isinstance(d, int) or d < 2:
            raise CliInputError(f"field 'group[{i}]': expected an integer >= 2")
    return FiniteAbelianGroup(orders)


def _parse_support(obj, name: str, group: FiniteAbelianGroup) -> GroupAlgebraElement:
    if name not in obj:
        raise CliInputError(f"field '{name}': missing")
    vectors = obj[name]
    if not isinstance(vectors, list):
        raise CliInputError(f"field '{name}': expected a list of exponent vectors")
    support = []
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list) or len(vec) != group.rank:
            raise CliInputError(
                f"field '{name}[{i}]': expected an exponent vector of length {group.rank}"
            )
        if not all(isinstance(x, int) for x in vec):
            raise CliInputError(f"field '{name}[{i}]': exponents must be integers")
        try:
            support.append(group.validate(vec))
        except ValueError as exc:
            raise CliInputError(f"field '{name}[{i}]': {exc}") from exc
    return GroupAlgebraElement(group, frozenset(support))


def _parse_code_spec(obj):
    if not isinstance(obj, dict):
        raise CliInputError("spec must be a JSON object")
    group = _parse_group(obj)
    a = _parse_support(obj, "a", group)
    b = _parse_support(obj, "b", group)
    return group, a, b


def _resolve_limits(args, spec_obj) -> SearchLimits:
    values = {"kernel_dim_cap": 22, "max_weight": 8, "max_candidates": 500000}
    for key in values:
        if isinstance(spec_obj, dict) and key in spec_obj:
            if not isinstance(spec_obj[key], int):
                raise CliInputError(f"field '{key}': expected an integer")
            values[key] = spec_obj[key]
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if values["max_candidates"] is not None and values["max_candidates"] <= 0:
        values["max_candidates"] = None
    return SearchLimits(**values)


def _parse_rho(text: str) -> Fraction:
    try:
        rho = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliInputError(f"field 'rho': not a rational number: {text!r}") from exc
    if rho <= 0:
        raise CliInputError("field 'rho': must be positive")
    return rho


def _support_json(x: GroupAlgebraElement) -> list:
    return [list(g) for g in x.sorted_support()]


def _bits_str(word: int, length: int) -> str:
    return "".join("1" if (word >> j) & 1 else "0" for j in range(length))


# ---------------------------------------------------------------------------
# commands


def _cmd_params(args) -> str:
    obj = _load_json(args.spec)
    group, a, b = _parse_code_spec(obj)
    limits = _resolve_limits(args, obj)
    code = build_two_block(group, a, b)
    params = distance(code.css, limits)
    report = {"format_version": schemas.FORMAT_VERSION, "kind": "params"}
    report.update(params.to_json())
    return json.dumps(report, indent=2) + "\n"


def _component_report(comp: TwoBlockCode, copies: int, index: int, limits: SearchLimits) -> dict:
    notes: list[str] = []
    params = distance(comp.css, limits)
    entry = {
        "group": list(comp.group.cyclic_orders),
        "copies": copies,
        "index": index,
        "n": comp.n,
        "w": comp.generator_weight,
        "D": comp.generator_weight - 2,
        "params": params.to_json(),
        "bound": None,
        "embedding": None,
        "partition": None,
        "localized_logical": None,
        "applicable": None,
        "notes": notes,
    }
    if comp.generator_weight < 3:
        notes.append("generator weight below 3: no lattice dimension, bound undefined")
        return entry
    bound = two_block_bound(comp)
    entry["bound"] = bound.to_json()
    entry["applicable"] = bound.applicable

    psi = build_psi(comp.a, comp.b)
    try:
        layout = qubit_layout(comp, psi)
    except BudgetExceededError as exc:
        notes.append(f"embedding skipped: {exc}")
        return entry
    local_ok, max_radius_sq = verify_locality(comp, layout, 1)
    entry["embedding"] = {
        "D": psi.dim,
        "kernel_basis": [list(r) for r in layout.lattice.basis],
        "locality_ok": local_ok,
        "max_radius_sq": max_radius_sq,
    }
    if not local_ok:
        raise InternalConsistencyError("two-block code failed radius-1 locality")
    if not bound.applicable:
        notes.append("applicability condition fails; partition and localization skipped")
        return entry

    basis = good_basis(layout.lattice)
    partition = build_partition(basis, 1)
    populations = partition.populations()
    entry["partition"] = {
        "mu": partition.mu,
        "lambda_sq": [partition.lambda_sq.numerator, partition.lambda_sq.denominator],
        "slab_counts": populations,
        "point_bound": partition.count_bound_decimal(),
    }
    if params.k == 0:
        notes.append("k = 0: no logical operators to localize")
        return entry

    view = StabilizerCodeView.from_css(comp.css)
    slab, op = localize_logical(view, partition, layout)
    entry["localized_logical"] = {
        "slab": slab,
        "weight": op.weight,
        "support": op.support(),
        "x_bits": _bits_str(op.x_part, comp.num_qubits),
        "z_bits": _bits_str(op.z_part, comp.num_qubits),
        "slab_population": populations[slab],
        "bound_value": ceil_decimal_str(bound.bound_value),
    }
    if op.weight > 2 * populations[slab]:
        raise InternalConsistencyError("localized weight exceeds slab capacity")
    if Fraction(op.weight) > bound.bound_value:
        raise InternalConsistencyError("localized weight exceeds the distance bound")
    d = params.d
    if d is not None and d.resolved and d.value > op.weight:
        raise InternalConsistencyError("computed distance exceeds a logical weight")
    return entry


def _cmd_certify(args) -> str:
    obj = _load_json(args.spec)
    group, a, b = _parse_code_spec(obj)
    limits = _resolve_limits(args, obj)
    code = build_two_block(group, a, b)
    params = distance(code.css, limits)
    report = {
        "format_version": schemas.FORMAT_VERSION,
        "kind": "certificate",
        "input": {
            "group": list(group.cyclic_orders),
            "a": _support_json(a),
            "b": _support_json(b),
        },
        "params": params.to_json(),
        "normalized": None,
        "components": [],
    }
    if code.is_trivial:
        report["notes"] = ["code is trivial (both elements zero); nothing to certify"]
        return json.dumps(report, indent=2) + "\n"
    a2, b2 = normalize(a, b)
    report["normalized"] = {"a": _support_json(a2), "b": _support_json(b2)}
    components = decompose(build_two_block(group, a2, b2))
    base = _component_report(components[0], len(components), 0, limits)
    entries = [base]
    for i in range(1, len(components)):
        clone = dict(base)
        clone["index"] = i
        entries.append(clone)
    report["components"] = entries
    return json.dumps(report, indent=2) + "\n"


def _sample_code(rng: random.Random, n_min: int, n_max: int, weight: int):
    n = rng.randint(n_min, n_max)
    splits = [d for d in range(2, n + 1) if n % d == 0 and n // d >= 2]
    if splits and rng.random() < 0.5:
        d1 = rng.choice(splits)
        orders = [d1, n // d1]
    else:
        orders = [n]
    group = FiniteAbelianGroup(orders)
    lo = max(1, weight - n)
    hi = min(weight - 1, n)
    if lo > hi:
        raise CliInputError(f"field 'weight': cannot place weight {weight} on group of order {n}")
    wa = rng.randint(lo, hi)
    wb = weight - wa
    support_a = {group.identity} | {
        group.element_of(i) for i in rng.sample(range(1, n), wa - 1)
    }
    support_b = {group.identity} | {
        group.element_of(i) for i in rng.sample(range(1, n), wb - 1)
    }
    return (
        group,
        GroupAlgebraElement(group, frozenset(support_a)),
        GroupAlgebraElement(group, frozenset(support_b)),
    )


def _support_cell(x: GroupAlgebraElement) -> str:
    return "+".join(".".join(str(e) for e in g) for g in x.sorted_support())


def _cmd_scan(args) -> str:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise CliInputError("field 'n-min/n-max': need 2 <= n-min <= n-max")
    if args.weight < 2:
        raise CliInputError("field 'weight': total support weight must be >= 2")
    if args.count < 0:
        raise CliInputError("field 'count': must be >= 0")
    limits = _resolve_limits(args, None)
    rng = random.Random(args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(schemas.SCAN_CSV_COLUMNS)
    for idx in range(args.count):
        group, a, b = _sample_code(rng, args.n_min, args.n_max, args.weight)
        code = build_two_block(group, a, b)
        params = distance(code.css, limits)
        component = decompose(code)[0]
        d_cell, detail = "", "undefined"
        if params.k > 0:
            overall = params.d
            if overall.resolved:
                d_cell, detail = str(overall.value), "exact"
            else:
                detail = f"gt:{overall.exceeds}"
        applicable_cell = bound_cell = verdict = ""
        if component.generator_weight >= 3:
            bound = two_block_bound(component)
            applicable_cell = "yes" if bound.applicable else "no"
            bound_cell = ceil_decimal_str(bound.bound_value, 6)
            if bound.applicable and d_cell:
                verdict = "yes" if Fraction(int(d_cell)) <= bound.bound_value else "VIOLATION"
        writer.writerow(
            [
                idx,
                "x".join(str(d) for d in group.cyclic_orders),
                _support_cell(a),
                _support_cell(b),
                group.order,
                code.generator_weight,
                component.generator_weight - 2,
                code.num_qubits,
                params.k,
                d_cell,
                detail,
                applicable_cell,
                bound_cell,
                verdict,
            ]
        )
    return buf.getvalue()


def _parse_lattice_spec(obj) -> IntegerLattice:
    if not isinstance(obj, dict) or "basis" not in obj:
        raise CliInputError("field 'basis': missing")
    basis = obj["basis"]
    if not isinstance(basis, list) or not basis:
        raise CliInputError("field 'basis': expected a nonempty list of integer rows")
    dim = len(basis)
    for i, row in enumerate(basis):
        if not isinstance(row, list) or len(row) != dim:
            raise CliInputError(f"field 'basis[{i}]': expected a row of length {dim}")
        if not all(isinstance(x, int) for x in row):
            raise CliInputError(f"field 'basis[{i}]': entries must be integers")
    try:
        return IntegerLattice(basis)
    except ValueError as exc:
        raise CliInputError(f"field 'basis': {exc}") from exc


def _cmd_lattice(args) -> str:
    obj = _load_json(args.spec)
    lattice = _parse_lattice_spec(obj)
    basis = good_basis(lattice)
    report = {
        "format_version": schemas.FORMAT_VERSION,
        "kind": "lattice",
        "dim": lattice.dim,
        "det": lattice.det,
        "hnf": [list(r) for r in lattice.hnf()],
        "good_basis": basis.to_json(),
        "partition": None,
    }
    if args.rho is not None:
        rho = _parse_rho(args.rho)
        try:
            partition = build_partition(basis, rho)
        except NotApplicableError as exc:
            report["partition"] = {"not_applicable": str(exc)}
        else:
            entry = partition.to_json()
            try:
                entry["slab_counts"] = partition.populations()
            except BudgetExceededError as exc:
                entry["slab_counts"] = None
                entry["note"] = str(exc)
            report["partition"] = entry
    return json.dumps(report, indent=2) + "\n"


def _cmd_bound(args) -> str:
    rho = _parse_rho(args.rho)
    if args.m < 1 or args.dim < 1 or args.n < 1:
        raise CliInputError("fields 'm', 'dim', 'n': must be >= 1")
    report = bt_bound(args.m, rho, args.dim, args.n).to_json()
    report = {"format_version": schemas.FORMAT_VERSION, "kind": "bound", **report}
    return json.dumps(report, indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoblock",
        description="two-block group-algebra codes: parameters, lattice embeddings, "
        "distance bounds, and localization certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_limits(p):
        p.add_argument("--max-weight", dest="max_weight", type=int, default=None)
        p.add_argument("--kernel-dim-cap", dest="kernel_dim_cap", type=int, default=None)
        p.add_argument(
            "--max-candidates",
            dest="max_candidates",
            type=int,
            default=None,
            help="cap on enumerated supports in the weight search (<= 0: unlimited)",
        )

    def add_out(p):
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    p = sub.add_parser("params", help="compute [[N, k, d]] for a code spec")
    p.add_argument("--spec", required=True)
    add_limits(p)
    add_out(p)

    p = sub.add_parser("certify", help="full pipeline: params, embedding, bound, localization")
    p.add_argument("--spec", required=True)
    add_limits(p)
    add_out(p)

    p = sub.add_parser("scan", help="seeded random scan of two-block codes (CSV)")
    p.add_argument("--n-min", dest="n_min", type=int, default=2)
    p.add_argument("--n-max", dest="n_max", type=int, default=30)
    p.add_argument("--weight", type=int, default=4, help="total support weight |a| + |b|")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_limits(p)
    p.add_argument("--format", choices=["csv"], default="csv")
    add_out(p)

    p = sub.add_parser("lattice", help="good basis and slab partition of a raw lattice")
    p.add_argument("--spec", required=True)
    p.add_argument("--rho", default=None, help="locality radius (rational, e.g. 1 or 3/2)")
    add_out(p)

    p = sub.add_parser("bound", help="evaluate the distance bound for raw m, rho, D, n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_out(p)

    return parser


_COMMANDS = {
    "params": _cmd_params,
    "certify": _cmd_certify,
    "scan": _cmd_scan,
    "lattice": _cmd_lattice,
    "bound": _cmd_bound,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        output = _COMMANDS[args.command](args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal consistency fault: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
