"""Command line interface: ``quartic-faces <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import blowup
from .catalog import CANONICAL_CONFIGS, IDS, Unclassifiable, classify_config, face_type_of, get_class
from .certify import (
    CertificateError,
    GramCertificate,
    exposedness_certificate,
    nonexposedness_search,
    sos_in_subspace,
)
from .forms import TernaryForm
from .spaces import InvalidConfig, ZeroConfig, fullness_check, i_of_config, j_of_config
from .textio import ParseError, dumps, format_form, parse_form, parse_line, parse_point, vec_to_json

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fmt(f: TernaryForm) -> str:
    return format_form(f, compact=True)


def _load_json(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    text = raw.decode("utf-8", errors="replace")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise InputError(f"{path}: invalid JSON ({exc.msg}) at byte {offset}") from exc


def _config(arg: str) -> ZeroConfig:
    """A ZeroConfig JSON file, or the id of a catalog class with a configuration."""
    if not Path(arg).exists() and arg in CANONICAL_CONFIGS:
        return CANONICAL_CONFIGS[arg]
    data = _load_json(arg)
    try:
        return ZeroConfig.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{arg}: malformed configuration ({exc})") from exc


def _form(text: str, degree: int | None = 4) -> TernaryForm:
    return parse_form(text, degree)


def _class(id_: str):
    try:
        return get_class(id_)
    except KeyError as exc:
        raise InputError(f"unknown class {id_!r}; known: {', '.join(IDS)}") from exc


def _basis_report(name: str, J) -> tuple[str, dict]:
    basis = [_fmt(q) for q in J.basis]
    return f"dim={J.dim}; basis: {', '.join(basis)}", {"space": name, "dim": J.dim, "basis": basis}


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text, json payload)


def cmd_catalog(args):
    rows, lines = [], []
    for c in map(get_class, IDS):
        rows.append({
            "id": c.id, "type": c.face_type, "dim_F": c.dim_F, "dim_J": c.dim_J,
            "J": [_fmt(q) for q in c.j_basis.basis], "inner_form": _fmt(c.inner_form),
            "exposed": c.exposed, "zeros": c.describe_zeros(),
        })
        lines.append(f"{c.id:7} {c.face_type}  dim F={c.dim_F:<2} dim J={c.dim_J}  "
                     f"{'exposed    ' if c.exposed else 'not exposed'}  J = span({', '.join(rows[-1]['J'])})")
    return OK, "\n".join(lines), {"classes": rows}


def cmd_classify(args):
    if args.config:
        S = _config(args.config)
        c, sigma = classify_config(S)
        text = f"class {c.id} (type {c.face_type}); sigma maps the representative onto the input: {sigma.to_json()}"
        return OK, text, {"class": c.id, "type": c.face_type, "sigma": sigma.to_json()}
    if not args.form or args.squares is None:
        raise InputError("classify needs --config, or --form together with --squares")
    f = _form(args.form)
    squares = [parse_form(t, 2) for t in args.squares.split(";") if t.strip()]
    r = face_type_of(f, squares)
    data = {"class": r.class_id, "type": r.face_type, "config": r.config.to_json() if r.config else None, "detail": r.detail}
    text = f"class {r.class_id} (type {r.face_type})" + (f"; {r.detail}" if r.detail else "")
    return OK, text, data


def cmd_jspace(args):
    text, data = _basis_report("J", j_of_config(_config(args.config)))
    return OK, text, data


def cmd_ispace(args):
    text, data = _basis_report("I", i_of_config(_config(args.config)))
    return OK, text, data


def _frame(args):
    p = parse_point(args.point)
    l = parse_line(args.line) if getattr(args, "line", None) else None
    if l is None:
        return blowup.ChartFrame.default(p)
    try:
        return blowup.ChartFrame(p, l)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_blowup(args):
    f = _form(args.form)
    fr = _frame(args)
    d = blowup.delta(f, fr)
    D = blowup.discriminant_D(f, fr)
    d2 = blowup.d2_at_zero(f, fr)
    text = f"delta = {d}\nD = {blowup.univariate_str(D)}\nD''(0) = {d2}"
    return OK, text, {"delta": str(d), "D": blowup.univariate_str(D), "d2_at_zero": str(d2)}


def cmd_disc(args):
    f = _form(args.form)
    D = blowup.discriminant_D(f, _frame(args))
    s = blowup.univariate_str(D)
    return OK, f"D = {s}", {"D": s}


def cmd_inp(args):
    f = _form(args.form)
    s = blowup.inp(f, parse_point(args.point))
    data = {
        "all_of_p1": s.all_of_p1,
        "lines": [vec_to_json(l.coeffs) for l in s.lines],
        "irrational": [[str(r.lo), str(r.hi)] for r in s.irrational],
    }
    return OK, f"inp = {s.describe()}", data


def cmd_fullness(args):
    rep = fullness_check(_config(args.config))
    lines = [f"{c.name}{' at ' + str(c.point) if c.point else ''}: {'ok' if c.ok else 'FAILS'} {c.detail}".rstrip()
             for c in rep.conditions]
    lines.append(f"dim I = {rep.dim_I}, dim span of squares = {rep.dim_square_span}, equal: {rep.span_equals_I}")
    if rep.inner_form is not None:
        lines.append(f"inner form: {_fmt(rep.inner_form)}")
        lines += [f"{c.name} at {c.point}: {'ok' if c.ok else 'FAILS'} {c.detail}".rstrip() for c in rep.blowup_checks]
    good = rep.full and all(c.ok for c in rep.blowup_checks)
    lines.append("full" if good else "not full")
    data = {
        "full": good,
        "conditions": [{"name": c.name, "point": str(c.point) if c.point else None, "ok": c.ok, "detail": c.detail} for c in rep.conditions],
        "inner_form": _fmt(rep.inner_form) if rep.inner_form is not None else None,
        "blowup": [{"name": c.name, "point": str(c.point), "ok": c.ok, "detail": c.detail} for c in rep.blowup_checks],
        "dim_I": rep.dim_I, "dim_square_span": rep.dim_square_span,
    }
    return (OK if good else FAILED), "\n".join(lines), data


def cmd_member(args):
    f = _form(args.form)
    c = _class(args.cls)
    cert, reason = sos_in_subspace(f, c.j_basis)
    if cert is None:
        return FAILED, f"no certificate; {reason}", {"member": False, "reason": reason}
    data = {"member": True, "reason": reason, "certificate": cert.to_json()}
    return OK, f"certificate found; {reason}; Gram rank {cert.rank}", data


def cmd_exposed(args):
    c = _class(args.cls)
    if c.functional is not None and exposedness_certificate(c.j_basis, c.functional):
        pts = [str(p) for p, _ in c.functional.weights]
        return OK, f"{c.id} is exposed: kernel of B_L equals J for L = sum of evaluations at {len(pts)} points", {
            "class": c.id, "exposed": True, "points": pts}
    if c.dim_J == 0:
        return FAILED, f"{c.id}: no functional certifies exposedness", {"class": c.id, "exposed": None}
    w = nonexposedness_search(c.j_basis, args.bound)
    if w is not None and w.verify(c.j_basis):
        text = f"{c.id} is not exposed: f g = c d with f = {_fmt(w.f)}, g = {_fmt(w.g)}, c = {_fmt(w.c)}, d = {_fmt(w.d)}"
        return OK, text, {"class": c.id, "exposed": False, "witness": w.to_json()}
    return FAILED, f"{c.id}: undecided (no functional, no witness within bound {args.bound})", {"class": c.id, "exposed": None}


def cmd_lattice(args):
    from .lattice import emit_dot, emit_json

    if args.dot:
        return OK, emit_dot().rstrip("\n"), None
    if args.json or args.json_graph:
        return OK, emit_json().rstrip("\n"), None
    raise InputError("lattice needs --dot or --json")


def cmd_verify_paper(args):
    from .acceptance import run_all

    results = run_all(include_properties=not args.quick)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.id:2} {r.title}")
        lines += [f"       {l}" for l in r.lines]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return (OK if ok else FAILED), "\n".join(lines), {"checks": [r.to_json() for r in results], "passed": ok}


def cmd_certify(args):
    data = _load_json(args.file)
    try:
        cert = GramCertificate.from_json(data)
    except (KeyError, TypeError, CertificateError) as exc:
        raise InputError(f"{args.file}: malformed certificate ({exc})") from exc
    problems = cert.check()
    if problems:
        return FAILED, "certificate rejected: " + "; ".join(problems), {"valid": False, "problems": problems}
    return OK, f"certificate valid; Gram rank {cert.rank}; target {_fmt(cert.target)}", {"valid": True, "rank": cert.rank}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quartic-faces", description="Faces of the cone of nonnegative ternary quartics.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    add("catalog", cmd_catalog, "the 20 face classes")
    p = add("classify", cmd_classify, "classify a zero configuration or an SOS form")
    p.add_argument("--config")
    p.add_argument("--form")
    p.add_argument("--squares", help="quadrics separated by ';' whose squares sum to the form")
    for name, fn in (("jspace", cmd_jspace), ("ispace", cmd_ispace), ("fullness", cmd_fullness)):
        p = add(name, fn, f"{name} of a zero configuration")
        p.add_argument("--config", required=True, help="ZeroConfig JSON file or a class id such as S3")
    for name, fn in (("blowup", cmd_blowup), ("disc", cmd_disc)):
        p = add(name, fn, "chart data at a double zero")
        p.add_argument("--form", required=True)
        p.add_argument("--point", required=True)
        p.add_argument("--line")
    p = add("inp", cmd_inp, "infinitely near points")
    p.add_argument("--form", required=True)
    p.add_argument("--point", required=True)
    p = add("member", cmd_member, "Gram certificate for a form over J of a class")
    p.add_argument("--form", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p = add("exposed", cmd_exposed, "exposedness certificate or witness")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--bound", type=int, default=2)
    p = add("lattice", cmd_lattice, "Hasse diagram of the inclusion order")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--json-graph", dest="json_graph", action="store_true", help="same as --json")
    p = add("verify-paper", cmd_verify_paper, "run every reproduction check")
    p.add_argument("--quick", action="store_true", help="skip the randomized property suites")
    p = add("certify", cmd_certify, "re-check a certificate file")
    p.add_argument("action", choices=["verify"])
    p.add_argument("file")
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text, data = args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (InputError, InvalidConfig, blowup.OrderTooLow, Unclassifiable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    if args.json and data is not None:
        out.write(dumps(data))
    else:
        out.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
