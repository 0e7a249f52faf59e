"""Command-line frontend.

Subcommands
-----------
- ``gen``           enumerate a variety up to a carrier budget, write the
                    category file
- ``validate``      parse a category file and report structural/law errors
- ``check``         extensivity/coextensivity checks for a morphism, an
                    object's identity, or the whole category
- ``srp``           strict-refinement checks per object
- ``relcalc``       subobject posets, the relation-calculus identity suite,
                    and the exactness biconditional
- ``verify-paper``  the whole battery over built-in regenerated categories

Every command that runs checks prints one line per non-pass entry (all
entries when few), a summary, and a digest, and can write the full JSON
report with ``--report``.  Exit status: 0 when no entry fails, 1 when one
does (``--strict`` also counts inapplicable entries), 2 on usage or input
errors.  Reports are deterministic for fixed inputs and flags: entries are
sorted by id, sampled checks derive from ``--seed``, and timings are kept
out of the digest-relevant content.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import sys
import time
from typing import Any, Callable, NoReturn, Sequence

from . import __version__, extensivity
from .algebra import (
    build_category,
    category_from_algebras,
    dump_category,
    enumerate_structures,
    load_category,
)
from .extensivity import CheckStatus
from .fincat import FinCategory, dual_of, validate
from .propositions import (
    PROPOSITION_IDS,
    EXTENSIVITY_IDS,
    RELCALC_IDS,
    proposition_suite,
)
from .relcalc import IDENTITY_IDS, barr_exact_check, identity_suite, sub_poset

_VARIETY_CHOICES = (
    "set", "pointed", "poset", "semilattice", "slat", "lattice", "lat", "monoid", "mon",
)
_CANON_VARIETY = {
    "set": "set", "pointed": "pointed", "poset": "poset",
    "semilattice": "slat", "slat": "slat",
    "lattice": "lat", "lat": "lat",
    "monoid": "mon", "mon": "mon",
}


# -- reports ------------------------------------------------------------------


def _plain(value: Any) -> Any:
    """JSON-safe copy: tuples/sets to lists, mappings key-stringified."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    return str(value)


def _strip_timings(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _strip_timings(v) for k, v in value.items() if k != "timing_ms"}
    if isinstance(value, list):
        return [_strip_timings(v) for v in value]
    return value


def _canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Report:
    """Accumulates check entries; renders canonical JSON + human lines."""

    def __init__(self, command: str, options: dict, input_digest: str):
        self.command = command
        self.options = options
        self.input_digest = input_digest
        self.entries: list[dict] = []

    def add(self, check_id: str, status: CheckStatus, timing_ms: float) -> None:
        entry: dict[str, Any] = {"id": check_id, "status": status.status}
        if status.witness is not None:
            entry["witness"] = _plain(status.witness)
        if status.details:
            entry["details"] = _plain(status.details)
        entry["timing_ms"] = round(timing_ms, 3)
        self.entries.append(entry)

    def finish(self) -> dict:
        self.entries.sort(key=lambda e: e["id"])
        counts = {"pass": 0, "fail": 0, "inapplicable": 0}
        for e in self.entries:
            counts[e["status"]] += 1
        doc: dict[str, Any] = {
            "tool": "finext",
            "version": __version__,
            "command": self.command,
            "options": _plain(self.options),
            "input_digest": self.input_digest,
            "checks": self.entries,
            "summary": {**counts, "total": len(self.entries)},
        }
        doc["digest"] = hashlib.sha256(
            _canonical_json(_strip_timings(doc)).encode()
        ).hexdigest()
        return doc


def _emit(report: Report, args: argparse.Namespace) -> int:
    doc = report.finish()
    entries = doc["checks"]
    show_all = len(entries) <= 40
    for e in entries:
        if show_all or e["status"] != "pass":
            kind = e.get("witness", {}).get("kind", "") if e["status"] != "pass" else ""
            print(f"  {e['status']:<13} {e['id']}" + (f"  [{kind}]" if kind else ""))
    s = doc["summary"]
    print(
        f"summary: {s['pass']} pass, {s['fail']} fail, "
        f"{s['inapplicable']} inapplicable ({s['total']} checks)"
    )
    print(f"digest: {doc['digest']}")
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written to {args.report}")
    bad = s["fail"] + (s["inapplicable"] if args.strict else 0)
    return 1 if bad else 0


def _run_units(
    report: Report,
    units: Sequence[tuple[str, Callable[[], list[tuple[str, CheckStatus]]]]],
    jobs: int,
) -> None:
    """Run independent check units, possibly in parallel; the report is
    sorted at the end, so scheduling never shows in the output."""

    def run(unit: Callable[[], list[tuple[str, CheckStatus]]]):
        t0 = time.perf_counter()
        out = unit()
        dt = (time.perf_counter() - t0) * 1000.0 / max(len(out), 1)
        return out, dt

    if jobs and jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(name, pool.submit(run, unit)) for name, unit in units]
            for _name, fut in futures:
                out, dt = fut.result()
                for check_id, status in out:
                    report.add(check_id, status, dt)
    else:
        for _name, unit in units:
            out, dt = run(unit)
            for check_id, status in out:
                report.add(check_id, status, dt)


# -- input loading ------------------------------------------------------------


def _fail_usage(msg: str) -> NoReturn:
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _load_input(args: argparse.Namespace) -> tuple[FinCategory, str]:
    path = args.input
    if path is None:
        _fail_usage("an input category file is required")
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        _fail_usage(f"cannot read {path}: {exc}")
    try:
        data = json.loads(raw)
    except ValueError as exc:
        _fail_usage(f"{path}: not valid JSON ({exc})")
    parsed, errors = load_category(data)
    if parsed is None:
        for msg in errors:
            print(f"error: {path}: {msg}", file=sys.stderr)
        raise SystemExit(2)
    kind, algs, names = parsed
    cat, _uni = category_from_algebras(kind, algs, names)
    return cat, hashlib.sha256(raw).hexdigest()


# -- gen ----------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    variety = _CANON_VARIETY[args.variety]
    if args.connected:
        if variety != "poset":
            _fail_usage("--connected applies to --variety poset only")
        variety = "cpos"
    if args.max_carrier < 0:
        _fail_usage("--max-carrier must be nonnegative")
    if args.max_carrier > 4:
        _fail_usage("--max-carrier above 4 exceeds the enumeration budget")
    algs = enumerate_structures(variety, args.max_carrier, args.include_empty)
    doc = dump_category(variety, algs, max_carrier=args.max_carrier)
    path = args.output or f"{args.variety}{args.max_carrier}.json"
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    cat, _uni = category_from_algebras(variety, algs)
    print(f"wrote {path}: {len(cat.objects)} objects, {cat.n_mor} morphisms")
    return 0


# -- validate -----------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    path = args.input
    if path is None:
        _fail_usage("an input category file is required")
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 2
    parsed, errors = load_category(data)
    if parsed is None:
        for msg in errors:
            print(f"invalid: {msg}")
        print(f"{path}: {len(errors)} error(s)")
        return 2
    kind, algs, names = parsed
    cat, _uni = category_from_algebras(kind, algs, names)
    violations = validate(cat)
    for v in violations:
        print(f"invalid: {v}")
    if violations:
        print(f"{path}: {len(violations)} coherence violation(s)")
        return 2
    print(
        f"{path}: valid {kind} category file, "
        f"{len(cat.objects)} objects, {cat.n_mor} morphisms"
    )
    return 0


# -- check --------------------------------------------------------------------


def _morphism_units(cat: FinCategory, mid: str, mode: str) -> list[tuple[str, CheckStatus]]:
    if mode == "extensive":
        one = extensivity.check_e1(cat, mid)
        two = extensivity.check_e2(cat, mid)
        combined = extensivity.is_extensive_morphism(cat, mid)
        labels = ("E1", "E2")
    else:
        one = extensivity.check_c1(cat, mid)
        two = extensivity.check_c2(cat, mid)
        combined = extensivity.is_coextensive_morphism(cat, mid)
        labels = ("C1", "C2")
    return [
        (f"{mid}/{labels[0]}", one),
        (f"{mid}/{labels[1]}", two),
        (f"{mid}/{mode}", combined),
    ]


def cmd_check(args: argparse.Namespace) -> int:
    cat, digest = _load_input(args)
    mode = args.mode
    report = Report(
        "check",
        {
            "mode": mode,
            "morphism": args.morphism,
            "object": args.object,
            "srp": args.srp,
            "strict": args.strict,
        },
        digest,
    )
    mids = {cat.mid(i) for i in range(cat.n_mor)}
    units: list[tuple[str, Callable[[], list[tuple[str, CheckStatus]]]]] = []
    if args.morphism is not None:
        if args.morphism not in mids:
            _fail_usage(f"unknown morphism id {args.morphism!r}")
        units.append(
            ("morphism", lambda: _morphism_units(cat, args.morphism, mode))
        )
    elif args.object is not None or args.srp is not None:
        objs = [args.object] if args.object is not None else list(cat.objects)
        for oid in objs:
            if oid not in cat.objects:
                _fail_usage(f"unknown object id {oid!r}")
        if args.srp is not None:
            k = args.srp
            if k < 2:
                _fail_usage("--srp takes an arity bound of at least 2")
            for oid in objs:
                units.append(
                    (
                        f"srp-{oid}",
                        lambda oid=oid: [
                            (
                                f"{oid}/srp-{k}",
                                extensivity.has_binary_srp(cat, oid)
                                if k == 2
                                else extensivity.has_finite_srp(cat, oid, k),
                            )
                        ],
                    )
                )
        else:
            for oid in objs:
                units.append(
                    (
                        f"identity-{oid}",
                        lambda oid=oid: [
                            (
                                f"{oid}/identity-{mode}",
                                _morphism_units(
                                    cat, cat.mid(cat.identity_of[cat.obj_index[oid]]), mode
                                )[2][1],
                            )
                        ],
                    )
                )
    else:
        def whole_category() -> list[tuple[str, CheckStatus]]:
            rep = extensivity.category_report(cat, mode)
            out = [
                (f"{mid}/{mode}", CheckStatus(**_status_kwargs(st)))
                for mid, st in rep["morphisms"].items()
            ]
            agree = rep["verdicts_agree"]
            summary = CheckStatus(
                rep["verdict"],
                None if rep["verdict"] == "pass" else {"kind": "morphism-failed"},
                {
                    "reduced_verdict": rep["reduced_verdict"],
                    "reduced_scope": len(rep["reduced_scope"]),
                    "binary_coproducts_exist": rep["binary_coproducts_exist"],
                    "verdicts_agree": agree,
                },
            )
            out.append((f"category/{mode}", summary))
            return out

        units.append(("category", whole_category))
    _run_units(report, units, args.jobs)
    return _emit(report, args)


def _status_kwargs(d: dict) -> dict:
    return {
        "status": d["status"],
        "witness": d.get("witness"),
        "details": d.get("details", {}),
    }


# -- srp ----------------------------------------------------------------------


def cmd_srp(args: argparse.Namespace) -> int:
    cat, digest = _load_input(args)
    k = args.srp if args.srp is not None else 2
    if k < 2:
        _fail_usage("--srp takes an arity bound of at least 2")
    objs = [args.object] if args.object is not None else list(cat.objects)
    for oid in objs:
        if oid not in cat.objects:
            _fail_usage(f"unknown object id {oid!r}")
    report = Report("srp", {"object": args.object, "srp": k, "strict": args.strict}, digest)
    units = [
        (
            f"srp-{oid}",
            lambda oid=oid: [
                (
                    f"{oid}/srp-{k}",
                    extensivity.has_binary_srp(cat, oid)
                    if k == 2
                    else extensivity.has_finite_srp(cat, oid, k),
                )
            ],
        )
        for oid in objs
    ]
    _run_units(report, units, args.jobs)
    return _emit(report, args)


# -- relcalc ------------------------------------------------------------------


def cmd_relcalc(args: argparse.Namespace) -> int:
    cat, digest = _load_input(args)
    cap = args.max_relation_size
    objs = [args.object] if args.object is not None else list(cat.objects)
    for oid in objs:
        if oid not in cat.objects:
            _fail_usage(f"unknown object id {oid!r}")
    report = Report(
        "relcalc",
        {"object": args.object, "max_relation_size": cap, "strict": args.strict},
        digest,
    )

    def posets() -> list[tuple[str, CheckStatus]]:
        out = []
        for oid in objs:
            classes, leq = sub_poset(cat, oid)
            pairs = sum(sum(1 for v in row if v) for row in leq)
            out.append(
                (
                    f"sub-poset/{oid}",
                    CheckStatus("pass", None, {"classes": len(classes), "leq_pairs": pairs}),
                )
            )
        return out

    units: list[tuple[str, Callable[[], list[tuple[str, CheckStatus]]]]] = [
        ("sub-posets", posets),
        (
            "identities",
            lambda: [
                (f"identity/{iid}", st)
                for iid, st in identity_suite(cat, max_relation_size=cap)
            ],
        ),
        (
            "barr-exact",
            lambda: [("barr-exact", barr_exact_check(cat, max_relation_size=cap))],
        ),
    ]
    _run_units(report, units, args.jobs)
    return _emit(report, args)


# -- verify-paper -------------------------------------------------------------

# (label, variety, max carrier, include_empty, dualize)
_BUILTINS: tuple[tuple[str, str, int, bool | None, bool], ...] = (
    ("finset3", "set", 3, None, False),
    ("finset3-op", "set", 3, None, True),
    ("pointed3", "pointed", 3, None, False),
    ("golden-poset", "poset", 1, True, False),
    ("slat3", "slat", 3, None, False),
    ("lat4", "lat", 4, None, False),
    ("cpos3", "cpos", 3, None, False),
    ("mon3", "mon", 3, None, False),
)
_RELCALC_LABELS = ("finset3", "finset3-op", "lat4")
_IDENTITY_LABELS = ("finset3", "lat4")


def _build_builtin(entry: tuple[str, str, int, bool | None, bool]) -> FinCategory:
    _label, kind, n, empty, dualize = entry
    cat, _uni = build_category(kind, n, empty)
    return dual_of(cat) if dualize else cat


def _parse_suite(raw: str) -> tuple[bool, bool, list[str]]:
    """-> (run extensivity statements, run relation-calculus statements, explicit id list)."""
    token = raw.strip().lower()
    if token == "all":
        return True, True, []
    if token in ("extensivity", "2"):
        return True, False, []
    if token in ("relcalc", "3"):
        return False, True, []
    ids = [part.strip() for part in raw.split(",") if part.strip()]
    known = set(PROPOSITION_IDS) | set(IDENTITY_IDS) | {"barr-exact"}
    unknown = [i for i in ids if i not in known]
    if unknown:
        _fail_usage(f"unknown check id(s) in --suite: {', '.join(unknown)}")
    if not ids:
        _fail_usage("--suite must be all, extensivity (2), relcalc (3), or a comma-separated id list")
    return False, False, ids


def cmd_verify_paper(args: argparse.Namespace) -> int:
    run2, run3, explicit = _parse_suite(args.suite)
    cap = args.max_relation_size
    roster = [
        {"label": lbl, "variety": kind, "max_carrier": n, "include_empty": empty, "dual": dl}
        for lbl, kind, n, empty, dl in _BUILTINS
    ]
    digest = hashlib.sha256(
        _canonical_json({"builtins": roster, "seed": args.seed}).encode()
    ).hexdigest()
    report = Report(
        "verify-paper",
        {
            "suite": args.suite,
            "seed": args.seed,
            "strict": args.strict,
            "max_relation_size": cap,
        },
        digest,
    )
    cats = {entry[0]: _build_builtin(entry) for entry in _BUILTINS}
    units: list[tuple[str, Callable[[], list[tuple[str, CheckStatus]]]]] = []

    def prop_unit(label: str, pid: str) -> Callable[[], list[tuple[str, CheckStatus]]]:
        def run() -> list[tuple[str, CheckStatus]]:
            out = proposition_suite(
                cats[label], [pid], seed=args.seed, max_relation_size=cap
            )
            return [(f"{label}/{p}", st) for p, st in out]

        return run

    def identity_unit(label: str) -> Callable[[], list[tuple[str, CheckStatus]]]:
        def run() -> list[tuple[str, CheckStatus]]:
            out = identity_suite(cats[label], max_relation_size=cap)
            return [(f"{label}/{iid}", st) for iid, st in out]

        return run

    def barr_unit(label: str) -> Callable[[], list[tuple[str, CheckStatus]]]:
        def run() -> list[tuple[str, CheckStatus]]:
            return [(f"{label}/barr-exact", barr_exact_check(cats[label], max_relation_size=cap))]

        return run

    if explicit:
        label = "finset3"
        for cid in explicit:
            if cid in PROPOSITION_IDS:
                units.append((f"{label}/{cid}", prop_unit(label, cid)))
            elif cid in IDENTITY_IDS:
                units.append(
                    (
                        f"{label}/{cid}",
                        lambda cid=cid: [
                            (f"{label}/{iid}", st)
                            for iid, st in identity_suite(cats[label], max_relation_size=cap)
                            if iid == cid
                        ],
                    )
                )
            else:
                units.append((f"{label}/barr-exact", barr_unit(label)))
    if run2:
        for label in cats:
            for pid in EXTENSIVITY_IDS:
                units.append((f"{label}/{pid}", prop_unit(label, pid)))
    if run3:
        for label in _IDENTITY_LABELS:
            units.append((f"{label}/identities", identity_unit(label)))
        for label in _RELCALC_LABELS:
            for pid in RELCALC_IDS:
                units.append((f"{label}/{pid}", prop_unit(label, pid)))
    _run_units(report, units, args.jobs)
    return _emit(report, args)


# -- entry point --------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        sub.add_argument("input_pos", nargs="?", metavar="INPUT", help="category file")
        sub.add_argument("--input", dest="input_opt", help="category file")
    sub.add_argument("--report", help="write the full JSON report here")
    sub.add_argument("--jobs", type=int, default=1, help="parallel check units")
    sub.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub.add_argument(
        "--strict",
        action="store_true",
        help="exit nonzero on inapplicable entries too",
    )
    sub.add_argument(
        "--max-relation-size",
        type=int,
        default=9,
        help="largest ambient product size enumerated in the relation calculus",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finext",
        description="checks for extensive and coextensive morphisms in finite categories",
    )
    parser.add_argument("--version", action="version", version=f"finext {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="enumerate a variety and write a category file")
    gen.add_argument("--variety", required=True, choices=_VARIETY_CHOICES)
    gen.add_argument("--max-carrier", type=int, required=True)
    gen.add_argument(
        "--connected",
        action="store_true",
        help="connected structures only (posets)",
    )
    gen.add_argument(
        "--include-empty",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="include the empty structure (default: only for sets)",
    )
    gen.add_argument("output_pos", nargs="?", metavar="OUTPUT", help="output file")
    gen.add_argument("--output", dest="output_opt", help="output file")

    val = subs.add_parser("validate", help="validate a category file")
    _add_common(val)

    chk = subs.add_parser("check", help="extensivity checks on a category file")
    _add_common(chk)
    chk.add_argument("--morphism", help="check this morphism id")
    chk.add_argument("--mode", choices=("extensive", "coextensive"), default="extensive")
    chk.add_argument("--object", help="restrict to this object id")
    chk.add_argument("--srp", type=int, help="strict-refinement arity bound (>= 2)")

    srp = subs.add_parser("srp", help="strict-refinement checks per object")
    _add_common(srp)
    srp.add_argument("--object", help="restrict to this object id")
    srp.add_argument("--srp", type=int, help="arity bound (default 2)")

    rel = subs.add_parser("relcalc", help="relation-calculus suite on a category file")
    _add_common(rel)
    rel.add_argument("--object", help="restrict subobject posets to this object id")

    vp = subs.add_parser("verify-paper", help="run the built-in verification battery")
    _add_common(vp, with_input=False)
    vp.add_argument(
        "--suite",
        default="all",
        help="all, extensivity (2), relcalc (3), or a comma-separated list of check ids",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "input_pos"):
        if args.input_pos and args.input_opt and args.input_pos != args.input_opt:
            _fail_usage("give the input file once (positional or --input)")
        args.input = args.input_pos or args.input_opt
    if hasattr(args, "output_pos"):
        if args.output_pos and args.output_opt and args.output_pos != args.output_opt:
            _fail_usage("give the output file once (positional or --output)")
        args.output = args.output_pos or args.output_opt
    handlers = {
        "gen": cmd_gen,
        "validate": cmd_validate,
        "check": cmd_check,
        "srp": cmd_srp,
        "relcalc": cmd_relcalc,
        "verify-paper": cmd_verify_paper,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
