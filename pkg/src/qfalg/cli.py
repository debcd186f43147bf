"""Command-line front end.

Exit codes: 0 on success, 1 when a checked criterion fails (or ``extend``
cannot find a pairing), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from qfalg import io, verify
from qfalg.algebra import center, check_algebra, same_algebra
from qfalg.exactla import Rng, field_from_name
from qfalg.extension import (
    Pairing, find_associative_pairing, is_strongly_graded, symmetrizing_form,
    semitrivial_extension, zero_pairing,
)
from qfalg.frobenius import (
    find_frobenius_form, is_quasi_frobenius, is_symmetric, pic_order_probe,
)
from qfalg.algebra import out_order
from qfalg.hopf import theorem_A_check
from qfalg import zoo

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad input file or parameters; maps to exit code 2."""


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt_vec(F, v, names):
    terms = ["%s*%s" % (F.format(c), n) if c != F.one else n for c, n in zip(v, names) if c != 0]
    return " + ".join(terms) if terms else "0"


def _jsonify(x):
    return verify._jsonable(x)


def _emit(report: dict, as_json: bool, render) -> None:
    if as_json:
        print(json.dumps(_jsonify(report), indent=2, ensure_ascii=False))
    else:
        render(report)


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, round(time.perf_counter() - t0, 3)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def analyze_algebra(af: io.AlgebraFile, seed: int, trials: int, max_order: int) -> dict:
    A = af.algebra
    F = A.field
    rng = Rng(seed)
    rep: dict = {"dim": A.dim, "field": io.field_name(F)}
    bad, t = _timed(check_algebra, A)
    rep["associative"] = {"verdict": not bad, "violations": [list(v) for v in bad[:5]], "seconds": t}
    z, t = _timed(center, A)
    rep["center"] = {"dim": z.dim, "seconds": t}

    frob, t = _timed(find_frobenius_form, A, rng, trials)
    entry = {"verdict": bool(frob), "certificate": frob.summary(), "seconds": t}
    if frob:
        entry["form"] = _fmt_vec(F, frob.witness.functional, [n + "*" for n in A.names])
    rep["frobenius"] = entry

    sym, t = _timed(is_symmetric, A, rng, trials)
    entry = {"verdict": bool(sym), "certificate": sym.summary(), "seconds": t}
    if sym:
        entry["trace_form"] = _fmt_vec(F, sym.witness.form.functional, [n + "*" for n in A.names])
    rep["symmetric"] = entry

    qf, t = _timed(is_quasi_frobenius, A)
    rep["quasi_frobenius"] = {"verdict": qf.invertible, "subreports": qf.summary(), "seconds": t}

    if frob:
        nu = frob.witness.nakayama
        oo, t = _timed(out_order, A, nu, max_order, rng, trials)
        rep["nakayama"] = {"images": {n: _fmt_vec(F, nu.matrix[:, i], A.names) for i, n in enumerate(A.names)},
                           "out_order": oo.order, "steps": [s.summary() for s in oo.steps], "seconds": t}
    if qf.invertible:
        probe, t = _timed(pic_order_probe, A, max_order, rng, trials, frob.witness if frob else None)
        rep["pic_order"] = dict(probe.summary(), seconds=t)
    else:
        rep["pic_order"] = {"order": None, "notes": ["dual bimodule is not invertible"]}
    if af.hopf is not None:
        H = af.hopf
        rep["hopf_valid"] = H.is_valid()
        if rep["hopf_valid"] and frob:
            th, t = _timed(theorem_A_check, H, max_order, rng, trials)
            rep["lcm_formula"] = dict(th.summary(), seconds=t)
    if af.grading is not None:
        G = af.grading
        rep["grading"] = {"violations": G.violations(),
                          "strongly_graded": all(is_strongly_graded(G).values())}
    return rep


def _yes(v):
    return "yes" if v else "no"


def render_analysis(rep: dict) -> None:
    print("algebra: dim %d over %s" % (rep["dim"], rep["field"]))
    print("associative: %s" % _yes(rep["associative"]["verdict"]))
    print("center dim: %d" % rep["center"]["dim"])
    for key, label in (("frobenius", "Frobenius"), ("symmetric", "symmetric")):
        e = rep[key]
        line = "%s: %s" % (label, _yes(e["verdict"]))
        if e["verdict"]:
            line += "  (form %s)" % e.get("form", e.get("trace_form"))
        else:
            c = e["certificate"]
            line += "  (%s%s)" % (c["method"], ", miss bound 2^%.1f" % c["failure_bound_log2"]
                                  if "failure_bound_log2" in c else "")
        print(line)
    print("QF: %s  %s" % (_yes(rep["quasi_frobenius"]["verdict"]), rep["quasi_frobenius"]["subreports"]))
    if "nakayama" in rep:
        nu = rep["nakayama"]
        print("Nakayama: " + ", ".join("%s -> %s" % kv for kv in nu["images"].items()))
        print("Nakayama out-order: %s" % (nu["out_order"] if nu["out_order"] else "> max-order"))
    order = rep["pic_order"]["order"]
    print("pic order: %s" % (order if order is not None else "not found"))
    for note in rep["pic_order"].get("notes", []):
        print("  note: " + note)
    if "lcm_formula" in rep:
        print("lcm formula: %s" % rep["lcm_formula"])
    if "grading" in rep:
        print("grading: strongly graded %s" % _yes(rep["grading"]["strongly_graded"]))


def cmd_analyze(args) -> int:
    af = _load(args.path)
    reps = [analyze_algebra(af, s, args.trials, args.max_order) for s in args.seed]
    _emit(reps[0] if len(reps) == 1 else {"seeds": args.seed, "reports": reps}, args.json,
          lambda r: [render_analysis(x) for x in reps])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------

def cmd_verify_paper(args) -> int:
    groups = args.section or None
    runs = {}
    for seed in args.seed:
        opt = verify.Options(seed, args.trials, args.max_order)
        runs[seed] = verify.run_all(opt, groups=groups)
    verdicts = {seed: [(r.number, r.passed) for r in res] for seed, res in runs.items()}
    consistent = len({tuple(v) for v in verdicts.values()}) == 1
    failed = any(not r.passed for res in runs.values() for r in res) or not consistent
    if args.json:
        print(json.dumps({"seeds": args.seed, "consistent": consistent, "passed": not failed,
                          "runs": {str(s): [r.to_dict() for r in res] for s, res in runs.items()}},
                         indent=2, ensure_ascii=False))
    else:
        for seed, res in runs.items():
            print("seed %d" % seed)
            for r in res:
                print("  " + r.line())
        if len(runs) > 1:
            print("verdicts identical across seeds: %s" % _yes(consistent))
        print("overall: %s" % ("PASS" if not failed else "FAIL"))
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# zoo
# ---------------------------------------------------------------------------

ZOO_NAMES = ("nakayama-R", "morita-R", "quantum-plane", "nakayama-nesbitt", "quantum-line",
             "group-algebra", "sweedler")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError("expected comma-separated integers, got %r" % text) from exc


def build_zoo(args) -> io.AlgebraFile:
    F = field_from_name(args.field)
    name = args.name
    meta = {"zoo": name}
    if name == "nakayama-R":
        return io.AlgebraFile(zoo.nakayama_R(F), meta=meta)
    if name == "morita-R":
        return io.AlgebraFile(zoo.morita_R(F)[0], meta=meta)
    if name == "quantum-plane":
        meta["q"] = args.q
        return io.AlgebraFile(zoo.quantum_plane_quotient(F, F.parse(args.q)), meta=meta)
    if name == "nakayama-nesbitt":
        meta.update(u=args.u, v=args.v)
        return io.AlgebraFile(zoo.nakayama_nesbitt(F, F.parse(args.u), F.parse(args.v))[0], meta=meta)
    C = zoo.AbelianGroupSpec(_ints(args.C))
    if name == "group-algebra":
        meta["C"] = list(C.orders)
        H = zoo.group_algebra(C, F)
        return io.AlgebraFile(H.algebra, hopf=H, meta=meta)
    if name == "sweedler":
        H, _ = zoo.sweedler(F)
        return io.AlgebraFile(H.algebra, hopf=H, meta=meta)
    if name == "quantum-line":
        c = _ints(args.c) if args.c else (1,) + (0,) * (len(C.orders) - 1)
        if args.cstar:
            values = tuple(F.parse(x) for x in args.cstar.split(","))
        elif args.n == 2:
            values = (F(-1),) + (F.one,) * (len(C.orders) - 1)
        else:
            raise InputError("--cstar is required unless n = 2")
        H, lam = zoo.quantum_line(args.kind, C, args.n, c, zoo.CharacterSpec(values), F)
        meta.update(kind=args.kind, C=list(C.orders), n=args.n, c=list(c),
                    cstar=[F.format(v) for v in values], integral=[F.format(x) for x in lam])
        return io.AlgebraFile(H.algebra, hopf=H, meta=meta)
    raise InputError("unknown zoo entry %r" % name)  # pragma: no cover - argparse restricts choices


def _write(af: io.AlgebraFile, out: str | None) -> None:
    if out in (None, "-"):
        print(io.dumps(af))
    else:
        io.save(out, af)


def cmd_zoo(args) -> int:
    try:
        af = build_zoo(args)
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    _write(af, args.out)
    if args.out not in (None, "-"):
        print("wrote %s (dim %d)" % (args.out, af.algebra.dim), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# extend / pic-order
# ---------------------------------------------------------------------------

def build_extension(A, pairing: str, seed: int, trials: int):
    rng = Rng(seed)
    if pairing == "zero":
        psi = zero_pairing(A)
    elif same_algebra(A, zoo.nakayama_R(A.field)):
        psi = Pairing(zoo.varphi_pairing(A.field, A))
    else:
        if not is_quasi_frobenius(A).invertible:
            raise InputError("--pairing auto needs a quasi-Frobenius base algebra")
        psi = find_associative_pairing(A, rng, trials)
    G = semitrivial_extension(A, psi)
    symmetrizing_form(G)
    return G, psi


def cmd_extend(args) -> int:
    A = _load(args.path).algebra
    try:
        G, psi = build_extension(A, args.pairing, args.seed[0], args.trials)
    except InputError:
        raise
    except ValueError as exc:
        print("extend: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    sg = all(is_strongly_graded(G).values())
    meta = {"extension_of": args.path, "pairing": args.pairing, "strongly_graded": sg,
            "symmetric": True, "pairing_invertible": psi.is_invertible()}
    _write(io.AlgebraFile(G.algebra, grading=G, meta=meta), args.out)
    if args.out not in (None, "-"):
        print("wrote %s (dim %d, strongly graded: %s, symmetric: yes)" % (args.out, G.algebra.dim, _yes(sg)),
              file=sys.stderr)
    return EXIT_OK


def cmd_pic_order(args) -> int:
    A = _load(args.path).algebra
    rng = Rng(args.seed[0])
    frob = find_frobenius_form(A, rng, args.trials)
    probe, t = _timed(pic_order_probe, A, args.max_order, rng, args.trials, frob.witness if frob else None)
    rep = dict(probe.summary(), seconds=t)

    def render(r):
        print("pic order: %s" % (r["order"] if r["order"] is not None else "not found up to %d" % args.max_order))
        for k, step in enumerate(r["steps"], 1):
            print("  k=%d: %s" % (k, "isomorphic" if step["found"] else "not isomorphic (%s)" % step["method"]))
        if "nakayama_out_order" in r:
            print("Nakayama out-order: %s" % r["nakayama_out_order"])
        for note in r.get("notes", []):
            print("  note: " + note)

    _emit(rep, args.json, render)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _load(path: str) -> io.AlgebraFile:
    try:
        return io.load(path)
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, action="append", help="RNG seed; repeat to compare runs (default 0)")
    p.add_argument("--trials", type=int, default=8, help="random evaluations per search (default 8)")
    p.add_argument("--max-order", type=int, default=8, help="largest order probed (default 8)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfalg", description="Exact computations with quasi-Frobenius algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report structural properties of an algebra file")
    p.add_argument("path")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", help="run the acceptance checks")
    _common(p)
    p.add_argument("--section", type=int, action="append", choices=sorted(verify.GROUPS),
                   help="only checks tagged with this group (repeatable): "
                        + ", ".join("%d=%s" % kv for kv in sorted(verify.GROUPS.items())))
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("zoo", help="export a built-in algebra as JSON")
    p.add_argument("name", choices=ZOO_NAMES)
    p.add_argument("--field", default="Q", help="Q or F<p> (default Q)")
    p.add_argument("--q", default="-1", help="quantum-plane parameter")
    p.add_argument("--u", default="1")
    p.add_argument("--v", default="1")
    p.add_argument("--kind", choices=("H1", "H2"), default="H2")
    p.add_argument("--C", default="2", help="cyclic factor orders, e.g. 4 or 2,3")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--c", help="exponents of c in the generators")
    p.add_argument("--cstar", help="values of c* on the generators")
    p.add_argument("--out", "-o", help="output path (default stdout)")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("extend", help="build the extension on A x A*")
    p.add_argument("path")
    p.add_argument("--pairing", choices=("zero", "auto"), default="auto")
    p.add_argument("--out", "-o")
    _common(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("pic-order", help="order of the dual bimodule in the Picard group")
    p.add_argument("path")
    _common(p)
    p.set_defaults(func=cmd_pic_order)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if hasattr(args, "seed") and not args.seed:
        args.seed = [0]
    try:
        return args.func(args)
    except InputError as exc:
        print("%s: error: %s" % (ap.prog, exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
