"""Command-line front end.

Every subcommand builds a JSON-compatible payload; ``--format`` picks how it
is printed.  Exit codes: 0 success, 2 input error, 3 validation error,
4 verification failure or table mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

import yaml

from . import fixtures
from .chow import build_chow
from .coxeter import (
    betti_from_jordan,
    beilinson_cartan,
    coxeter_of_cartan,
    coxeter_report,
    coxeter_sign,
    lefschetz_check,
)
from .errors import CoxkitError, InputError, InvalidFan, VerificationError
from .fan import Fan, betti, check, cone_counts, product_fan, star_subdivide, validate
from .jtensor import (
    box,
    box_many,
    box_pair,
    brute_force_box,
    dimension_cap,
    eigenvalue_patterns,
    factor_multisets,
    parse_blocks,
    product_coxeter,
)
from .linalg import Matrix, format_rational, full_jordan_type, nilpotency_index, to_rational
from .surface import RationalSurfaceModel, build_surface_chow, psi_matrix, surface_coxeter

FORMATS = ["json", "tsv", "pretty"]
EXIT_OK = 0
EXIT_MISMATCH = 4


# ---------------------------------------------------------------- input

def load_fan(ref: str) -> Fan:
    """A fan from a JSON file, or from a bundled fixture name like ``p2`` or ``fixtures/p2.json``."""
    path = Path(ref)
    if path.exists():
        return Fan.load(path)
    name = path.name[:-5] if path.name.endswith(".json") else path.name
    if name in fixtures.BUILDERS:
        return fixtures.load(name)
    raise InputError(f"no such file or fixture: {ref}")


def load_matrix(ref: str) -> Matrix:
    """A matrix from a JSON list of rows, or whitespace/comma separated rows, one per line."""
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc.strerror}") from exc
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [line.replace(",", " ").split() for line in text.splitlines() if line.strip()]
    try:
        m = Matrix([[to_rational(x) if isinstance(x, str) else to_rational(int(x)) for x in r] for r in rows])
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix in {ref}: {exc}") from exc
    if not m.is_square or m.rows == 0:
        raise InputError(f"matrix in {ref} must be square and non-empty")
    return m


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a comma separated integer list, got {text!r}") from None


@lru_cache(maxsize=None)
def expected_tables() -> dict:
    text = (resources.files("coxkit") / "data" / "expected_tables.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


_PSI_SYMBOLS = {"a-2": lambda a: a - 2, "-(a+2)": lambda a: -(a + 2)}


def printed_psi(which: str, a: int = 0) -> Matrix:
    """One of the two printed 12x12 matrices, with the Hirzebruch parameter substituted."""
    rows = expected_tables()[which]
    return Matrix([[_PSI_SYMBOLS[x](a) if isinstance(x, str) else x for x in r] for r in rows])


# ---------------------------------------------------------------- output

def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ",".join(_scalar(x) for x in v)
    return str(v)


def _flatten(payload, prefix=""):
    if isinstance(payload, dict):
        for k, v in payload.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(payload, list) and any(isinstance(x, (dict, list)) for x in payload):
        for i, v in enumerate(payload):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, _scalar(payload)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False)
    rows = payload.get("rows") if isinstance(payload.get("rows"), list) else None
    if fmt == "tsv":
        if rows:
            cols = list(rows[0])
            lines = ["\t".join(cols)] + ["\t".join(_scalar(r.get(c)) for c in cols) for r in rows]
            rest = {k: v for k, v in payload.items() if k != "rows"}
            lines += [f"{k}\t{v}" for k, v in _flatten(rest)]
            return "\n".join(lines)
        return "\n".join(f"{k}\t{v}" for k, v in _flatten(payload))
    # pretty
    lines = []
    if rows:
        cols = list(rows[0])
        cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(x[i]) for x in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in cells]
        payload = {k: v for k, v in payload.items() if k != "rows"}
    flat = list(_flatten(payload))
    width = max((len(k) for k, _ in flat), default=0)
    lines += [f"{k.ljust(width)}  {v}" for k, v in flat]
    return "\n".join(lines)


def _matrix_json(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in m.tolist()]


# ---------------------------------------------------------------- commands

def cmd_fan_info(args) -> tuple[dict, int]:
    f = load_fan(args.fan)
    violations = validate(f)
    out = {"name": f.name, "rank": f.rank, "rays": f.num_rays, "max_cones": len(f.max_cones),
           "valid": not violations, "violations": violations}
    if violations:
        return out, InvalidFan.exit_code
    out["cone_counts"] = cone_counts(f)
    out["betti"] = betti(f)
    return out, EXIT_OK


def cmd_betti(args) -> tuple[dict, int]:
    f = check(load_fan(args.fan))
    return {"name": f.name, "cone_counts": cone_counts(f), "betti": betti(f)}, EXIT_OK


def _fan_report(f: Fan):
    check(f)
    ring = build_chow(f)
    return ring, coxeter_report(ring, cone_counts(f))


def cmd_coxeter(args) -> tuple[dict, int]:
    f = load_fan(args.fan)
    ring, report = _fan_report(f)
    out = {"name": f.name}
    out.update(report.to_json())
    out["jordan_type"] = str(report.jordan)
    out["canonical_class"] = ring.format_class(ring.canonical_class())
    if args.emit_matrix:
        out["basis"] = ring.flat_labels
        out["coxeter_matrix"] = _matrix_json(report.coxeter_matrix)
    code = EXIT_MISMATCH if report.cross_check == "MISMATCH" else EXIT_OK
    return out, code


def cmd_jordan(args) -> tuple[dict, int]:
    f = load_fan(args.fan)
    _, report = _fan_report(f)
    return {
        "name": f.name,
        "eigenvalue": format_rational(report.eigenvalue),
        "jordan_type": str(report.jordan),
        "sizes": list(report.sizes),
        "coxeter_polynomial": str(report.polynomial),
        "verified": report.polynomial.verified,
    }, EXIT_OK


def cmd_lefschetz(args) -> tuple[dict, int]:
    f = check(load_fan(args.fan))
    ring = build_chow(f)
    if args.weights:
        weights = [to_rational(w) for w in args.weights.split(",")]
        if len(weights) != f.num_rays:
            raise InputError(f"expected {f.num_rays} weights, got {len(weights)}")
        classes = {"omega": ring.divisor_combination(weights)}
    else:
        k = ring.canonical_class()
        classes = {"K": k, "-K": -k}
    out = {"name": f.name}
    for label, omega in classes.items():
        rep = lefschetz_check(ring, omega)
        out[label] = {"class": ring.format_class(omega), "lefschetz": rep.ok, "degrees": rep.degrees}
    return out, EXIT_OK


def _surface_model(args) -> RationalSurfaceModel:
    if args.spec:
        try:
            data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read {args.spec}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return RationalSurfaceModel.from_dict(data)
    return RationalSurfaceModel(base=args.base, a=args.a, t=args.blowups)


def cmd_surface(args) -> tuple[dict, int]:
    model = _surface_model(args)
    ring = build_surface_chow(model)
    report = coxeter_report(ring)
    out = {"name": model.name, "picard_rank": model.picard_rank}
    out.update(report.to_json())
    out["jordan_type"] = str(report.jordan)
    out["canonical_class"] = ring.format_class(ring.canonical_class())
    if args.emit_psi:
        out["basis"] = ring.flat_labels
        out["psi"] = _matrix_json(psi_matrix(model))
    code = EXIT_MISMATCH if report.cross_check == "MISMATCH" else EXIT_OK
    return out, code


def cmd_tensor(args) -> tuple[dict, int]:
    blocks = parse_blocks(args.blocks)
    if len(blocks) == 2:
        result = box_pair(*blocks, bracket=args.bracket)
    elif args.bracket != "ceil":
        raise InputError("--bracket applies to exactly two blocks")
    else:
        result = box(blocks)
    out = {"blocks": args.blocks, "result": str(result), "jordan": result.to_json(),
           "dimension": result.dimension}
    if sum(1 for a, _ in blocks if a == 0) >= 2:
        if args.bracket == "ceil":
            out["note"] = ("two nilpotent factors: tail blocks J(0, s - ceil(i/2)) for i = 1..2s-2; "
                           "the floor reading does not conserve dimension")
        else:
            out["note"] = "floor reading of the bracket requested; expect a dimension mismatch"
    code = EXIT_OK
    if args.oracle:
        oracle = brute_force_box(blocks)
        agree = oracle == result
        out["oracle"] = str(oracle)
        out["oracle_agrees"] = agree
        if not agree:
            code = EXIT_MISMATCH
    return out, code


def _write_or_embed(f: Fan, out: dict, path: str | None) -> None:
    if path:
        Path(path).write_text(f.to_json() + "\n", encoding="utf-8")
        out["written"] = path
    else:
        out["fan"] = f.to_dict()


def cmd_product(args) -> tuple[dict, int]:
    fx, fy = check(load_fan(args.fan_x)), check(load_fan(args.fan_y))
    fxy = product_fan(fx, fy)
    _, rx = _fan_report(fx)
    _, ry = _fan_report(fy)
    _, rxy = _fan_report(fxy)
    predicted = product_coxeter(rx.jordan, fx.n, ry.jordan, fy.n)
    agree = predicted == rxy.jordan
    out = {"name": fxy.name, "jordan_x": str(rx.jordan), "jordan_y": str(ry.jordan),
           "jordan_product_fan": str(rxy.jordan), "jordan_predicted": str(predicted),
           "agree": agree}
    _write_or_embed(fxy, out, args.output)
    return out, EXIT_OK if agree else EXIT_MISMATCH


def cmd_blowup(args) -> tuple[dict, int]:
    f = check(load_fan(args.fan))
    g = star_subdivide(f, _int_list(args.cone))
    out = {"cone": _int_list(args.cone), "new_ray": list(g.rays[-1]), "cone_counts": cone_counts(g),
           "betti": betti(g)}
    _write_or_embed(g, out, args.output)
    return out, EXIT_OK


def cmd_cartan(args) -> tuple[dict, int]:
    if (args.matrix is None) == (args.beilinson is None):
        raise InputError("give exactly one of a matrix file or --beilinson K")
    c = load_matrix(args.matrix) if args.matrix else beilinson_cartan(args.beilinson)
    phi = coxeter_of_cartan(c)
    candidates = [to_rational(x) for x in args.eigenvalues.split(",") if x.strip()]
    out = {"cartan": _matrix_json(c), "coxeter_matrix": _matrix_json(phi)}
    try:
        jt = full_jordan_type(phi, candidates)
    except VerificationError as exc:
        # not every algebra has its spectrum among the candidates
        out["jordan_type"] = None
        out["incomplete"] = str(exc)
        return out, EXIT_OK
    out["jordan_type"] = str(jt)
    out["jordan"] = jt.to_json()
    if len(jt.eigenvalues) == 1:
        mu = jt.eigenvalues[0]
        out["characteristic_polynomial"] = f"(x{'-' if mu >= 0 else '+'}{format_rational(abs(mu))})^{phi.rows}"
        out["nilpotency_index"] = nilpotency_index(phi - Matrix.scalar(phi.rows, mu))
    try:
        out["betti"] = betti_from_jordan(jt)
    except CoxkitError as exc:
        out["betti"] = None
        out["betti_note"] = str(exc)
    return out, EXIT_OK


# ---------------------------------------------------------------- reproduce

def _status(ok: bool) -> str:
    return "match" if ok else "MISMATCH"


def _sizes_text(sizes) -> str:
    return ",".join(str(s) for s in sizes)


def _finish(table: str, rows: list[dict], checked: int, failures: list[str], extra=None) -> tuple[dict, int]:
    source = expected_tables()[table].get("source", "")
    out = {"table": table, "rows": rows, "checked": checked, "mismatches": len(failures)}
    if extra:
        out.update(extra)
    if failures:
        out["contradicts"] = source
        out["failures"] = failures
    out["summary"] = f"{checked - len(failures)}/{checked} match"
    return out, EXIT_MISMATCH if failures else EXIT_OK


def reproduce_del_pezzo(args) -> tuple[dict, int]:
    rows, failures = [], []
    for row in expected_tables()["del-pezzo"]["rows"]:
        want = list(row["sizes"])
        toric = list(_fan_report(fixtures.load(row["fixture"]))[1].sizes)
        surf = list(surface_coxeter(RationalSurfaceModel.from_dict(
            {"base": {"type": row["surface"]["base"], "a": row["surface"].get("a", 0)},
             "blowups": row["surface"]["blowups"]})).sizes)
        ok = toric == want and surf == want
        if not ok:
            failures.append(row["label"])
        rows.append({"variety": row["label"], "expected": _sizes_text(want), "toric": _sizes_text(toric),
                     "surface": _sizes_text(surf), "status": _status(ok)})
    return _finish("del-pezzo", rows, len(rows), failures)


def reproduce_fano3(args) -> tuple[dict, int]:
    rows, failures = [], []
    checked = 0
    for row in expected_tables()["fano3"]["rows"]:
        want = list(row["sizes"])
        entry = {"variety": row["label"], "type": row["type"], "expected": _sizes_text(want)}
        if row["fixture"] is None:
            entry.update({"computed": "", "status": "not constructible from fixtures"})
        else:
            checked += 1
            got = list(_fan_report(fixtures.load(row["fixture"]))[1].sizes)
            ok = got == want
            if not ok:
                failures.append(row["label"])
            entry.update({"computed": _sizes_text(got), "status": _status(ok)})
        rows.append(entry)
    skipped = len(rows) - checked
    return _finish("fano3", rows, checked, failures, {"not_constructible": skipped})


def reproduce_thm410(args) -> tuple[dict, int]:
    spec = expected_tables()["thm410"]
    special_rank, special = spec["special_rank"], list(spec["special_sizes"])
    models = [RationalSurfaceModel("P2", t) for t in range(spec["max_blowups"] + 1)]
    for a in _int_list(args.hirzebruch_a):
        models += [RationalSurfaceModel("Hirzebruch", t, a) for t in range(spec["max_blowups"] + 1)]
    rows, failures = [], []
    for model in models:
        rho = model.picard_rank
        want = special if rho == special_rank else [3] + [1] * (rho - 1)
        report = surface_coxeter(model)
        got = list(report.sizes)
        ok = got == want and len(got) == rho and report.polynomial.verified
        if not ok:
            failures.append(model.name)
        rows.append({"surface": model.name, "picard_rank": rho, "expected": _sizes_text(want),
                     "computed": _sizes_text(got), "lefschetz": report.lefschetz, "status": _status(ok)})
    psi_checks = [("psi_p2_t9", RationalSurfaceModel("P2", 9), 0)]
    psi_checks += [("psi_fa_t8", RationalSurfaceModel("Hirzebruch", 8, a), a) for a in _int_list(args.hirzebruch_a)]
    for key, model, a in psi_checks:
        ok = psi_matrix(model) == printed_psi(key, a)
        if not ok:
            failures.append(f"{key} (a={a})")
        rows.append({"surface": f"{model.name}: printed 12x12 matrix", "picard_rank": model.picard_rank,
                     "expected": "printed", "computed": "psi", "lefschetz": "", "status": _status(ok)})
    return _finish("thm410", rows, len(rows), failures,
                   {"cases": len(models), "dichotomy_rank": special_rank})


def reproduce_prop54(args) -> tuple[dict, int]:
    spec = expected_tables()["prop54"]
    values = [to_rational(v) for v in spec["eigenvalues"]]
    cap = dimension_cap()
    rows, failures = [], []
    checked = skipped = 0
    for sizes in factor_multisets(spec["max_total_size"]):
        dim = 1
        for r in sizes:
            dim *= r
        exhaustive = sum(sizes) <= spec["exhaustive_total_size"]
        for alphas in eigenvalue_patterns(sizes, values, exhaustive):
            blocks = list(zip(alphas, sizes))
            if dim > cap:
                skipped += 1
                continue
            checked += 1
            closed = box_many(blocks)
            ok = closed == brute_force_box(blocks, cap) and closed == box_many(blocks[::-1])
            if not ok:
                failures.append(" ".join(f"J({format_rational(a)},{r})" for a, r in blocks))
    rows.append({"factor_lists": len(factor_multisets(spec["max_total_size"])), "checked": checked,
                 "skipped_over_cap": skipped, "oracle_mismatches": len(failures)})
    return _finish("prop54", rows, checked, failures)


def reproduce_thm31(args) -> tuple[dict, int]:
    rows, failures = [], []
    for name in fixtures.BUILDERS:
        f = fixtures.load(name)
        _, report = _fan_report(f)
        poly = report.polynomial
        ok = poly.verified and poly.nilpotency_index is not None and poly.nilpotency_index <= report.m
        if not ok:
            failures.append(name)
        rows.append({"fixture": name, "n": report.n, "m": report.m,
                     "eigenvalue": format_rational(coxeter_sign(report.n)),
                     "polynomial": str(poly), "nilpotency_index": poly.nilpotency_index,
                     "status": _status(ok)})
    return _finish("thm31", rows, len(rows), failures)


TABLES = {
    "del-pezzo": reproduce_del_pezzo,
    "fano3": reproduce_fano3,
    "thm410": reproduce_thm410,
    "prop54": reproduce_prop54,
    "thm31": reproduce_thm31,
}
# descriptive names for the same tables
TABLE_ALIASES = {
    "surface-dichotomy": "thm410",
    "kronecker-sweep": "prop54",
    "coxeter-polynomial": "thm31",
}


def cmd_reproduce(args) -> tuple[dict, int]:
    return TABLES[TABLE_ALIASES.get(args.table, args.table)](args)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxkit", description="Coxeter transformations of smooth toric varieties")
    p.add_argument("--format", choices=FORMATS, default="json")
    # also accepted after the subcommand; SUPPRESS keeps it from overwriting the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    add_parser = sub.add_parser

    def sub_parser(name, **kw):
        return add_parser(name, parents=[common], **kw)

    sub.add_parser = sub_parser

    def fan_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("fan", help="fan JSON file or bundled fixture name")
        sp.set_defaults(func=func)
        return sp

    fan_cmd("fan-info", cmd_fan_info, "validate a fan and report cone counts and Betti numbers")
    fan_cmd("betti", cmd_betti, "Betti numbers of a smooth complete fan")
    sp = fan_cmd("coxeter", cmd_coxeter, "full Coxeter report with cross-checks")
    sp.add_argument("--emit-matrix", action="store_true", help="include the Coxeter matrix")
    fan_cmd("jordan", cmd_jordan, "Jordan type of the Coxeter transformation")
    sp = fan_cmd("lefschetz", cmd_lefschetz, "hard Lefschetz check for K, -K or a given divisor")
    sp.add_argument("--weights", help="comma separated coefficients of the torus-invariant divisors")

    sp = sub.add_parser("surface", help="rational surface given by a base and a number of blow-ups")
    sp.add_argument("--base", choices=["P2", "Hirzebruch"], default="P2")
    sp.add_argument("--a", type=int, default=0, help="Hirzebruch parameter")
    sp.add_argument("--blowups", type=int, default=0)
    sp.add_argument("--spec", help='JSON file {"base": {"type": ..., "a": ...}, "blowups": t}')
    sp.add_argument("--emit-psi", action="store_true", help="include multiplication by ch(K)")
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("tensor", help="Jordan type of a Kronecker product of Jordan blocks")
    sp.add_argument("blocks", help='e.g. "J(1,2) J(-1,3)"')
    sp.add_argument("--oracle", action="store_true", help="compare with the explicit Kronecker product")
    sp.add_argument("--bracket", choices=["ceil", "floor"], default="ceil",
                    help="reading of the bracket for two nilpotent blocks")
    sp.set_defaults(func=cmd_tensor)

    sp = sub.add_parser("product", help="product fan and the product rule for Jordan types")
    sp.add_argument("fan_x")
    sp.add_argument("fan_y")
    sp.add_argument("--output", help="write the product fan here instead of embedding it")
    sp.set_defaults(func=cmd_product)

    sp = fan_cmd("blowup", cmd_blowup, "star subdivision along a cone")
    sp.add_argument("--cone", required=True, help="comma separated ray indices, e.g. 0,1")
    sp.add_argument("--output", help="write the new fan here instead of embedding it")

    sp = sub.add_parser("cartan", help="Coxeter matrix -C^t C^-1 of a Cartan matrix")
    sp.add_argument("matrix", nargs="?", help="JSON rows or whitespace separated rows")
    sp.add_argument("--beilinson", type=int, help="use the Beilinson quiver with this many vertices")
    sp.add_argument("--eigenvalues", default="1,-1", help="candidate eigenvalues (default 1,-1)")
    sp.set_defaults(func=cmd_cartan)

    sp = sub.add_parser("reproduce", help="regenerate a table from bundled fixtures and compare")
    sp.add_argument("table", choices=sorted(TABLES) + sorted(TABLE_ALIASES))
    sp.add_argument("--hirzebruch-a", default="1", help="Hirzebruch parameters for the surface dichotomy sweep (comma list)")
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except CoxkitError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    print(render(payload, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
