"""Command line interface.

Exit status: 0 on success, 1 when a structural check fails (Jacobi identity,
invalid split), 2 on bad input (unreadable or malformed file, unknown name).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import InputError, LieExpError, ValidationError
from .exprad import SplitReport
from .pipeline.catalog import FAMILIES, catalog, catalog_list
from .pipeline.fileformat import parse_algebra_file
from .pipeline.report import analyze
from .wordmetric import (
    BACKENDS,
    DEFAULT_MAX_STATES,
    PRESETS,
    bfs_ball,
    check_semidirect_additivity,
    fit_asymptotics,
    preset,
    sample_lengths,
    sample_subgroup,
)
from .wordmetric.analysis import MIN_SAMPLES

EXIT_OK, EXIT_VALIDATION, EXIT_INPUT = 0, 1, 2

# parameter range probed for indexed families; elements outside the ball are skipped
FAMILY_RANGE = {"center": (4, 250), "orbit": (0, 64)}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    g, split = parse_algebra_file(text)
    name = json.loads(text).get("name", Path(args.file).stem)
    report = analyze(g, split, name=name)
    _emit(report.to_json() if args.json else report.to_text(), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        if args.name is not None:
            raise InputError("catalog list takes no name")
        for item in catalog_list():
            param = f" [{item['param']}={item['default']}]" if "param" in item else ""
            print(f"{item['name']}{param}: {item['description']}")
        return EXIT_OK
    if args.name is None:
        raise InputError(f"catalog show needs a name; available: {', '.join(FAMILIES)}")
    sys.stdout.write(catalog(args.name, args.param).to_json())
    return EXIT_OK


def _wordmetric_document(args) -> tuple[dict, object]:
    p = preset(args.preset)
    family = args.family or ("center" if "center" in p.families else "subgroup")
    table = bfs_ball(p, args.radius, max_states=args.max_states, workers=args.workers, backend=args.backend)
    if family == "subgroup":
        samples = sample_subgroup(table, p)
        default_fit = "log" if p.name == "sol_lattice" else "power"
    else:
        lo, hi = FAMILY_RANGE.get(family, (1, 250))
        samples = sample_lengths(table, p.family(family), range(lo, hi + 1), family)
        default_fit = "log" if family == "orbit" else "power"
    model = args.fit or default_fit
    notices = []
    if table.budget_exhausted:
        notices.append(
            f"state budget {args.max_states} reached: table is the complete ball of radius {table.radius}"
        )
    if samples.notice():
        notices.append(samples.notice())
    fit = None
    if len(samples) >= MIN_SAMPLES:
        fit = fit_asymptotics(samples.x, samples.lengths, model).as_dict()
    else:
        notices.append(f"only {len(samples)} samples (need {MIN_SAMPLES}); no fit reported")
    additivity = None
    if p.split is not None and len(table) > 1:
        additivity = check_semidirect_additivity(p, table).as_dict()
    doc = {
        "preset": p.name,
        "generators": list(p.generator_names),
        "ball": table.summary(),
        "family": family,
        "samples": samples.as_dict(),
        "fit": fit,
        "additivity": additivity,
        "notices": notices,
        "notes": [p.caveat],
    }
    return doc, table


def cmd_wordmetric(args) -> int:
    doc, table = _wordmetric_document(args)
    if args.table_out:
        Path(args.table_out).write_text(table.to_text(), encoding="utf-8")
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    ball = doc["ball"]
    print(f"{doc['preset']}: radius {ball['radius']} ({ball['states']} elements)")
    print(f"family {doc['family']}: {doc['samples']['count']} samples")
    if doc["fit"]:
        f = doc["fit"]
        params = ", ".join(f"{k} = {v:.4f}" for k, v in f["parameters"].items())
        print(f"fit {f['model']}: {params}; rms residual {f['residual']:.4f} over {f['sample_count']} samples")
    if doc["additivity"]:
        a = doc["additivity"]
        print(f"additivity over N = {a['normal_subgroup']}: C = {a['C']:.4f}, D = {a['D']} ({a['pairs']} pairs)")
    for line in doc["notices"] + doc["notes"]:
        print(f"note: {line}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieexp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze an algebra file")
    a.add_argument("file")
    a.add_argument("--json", action="store_true", help="structured report instead of text")
    a.add_argument("--out", help="write the report to this path")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("catalog", help="list or show built-in algebras")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.add_argument("--param", type=int, help="family parameter (n for cn_sln, m for abelian)")
    c.set_defaults(func=cmd_catalog)

    w = sub.add_parser("wordmetric", help="word lengths on a lattice analogue")
    w.add_argument("preset", choices=sorted(PRESETS))
    w.add_argument("--radius", type=int, required=True)
    w.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    w.add_argument("--family", choices=["center", "subgroup", "orbit"])
    w.add_argument("--fit", choices=["power", "log"])
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--backend", choices=BACKENDS, help="BFS kernel (default: numba when available)")
    w.add_argument("--table-out", help="write 'matrix-key<TAB>length' lines to this path")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_wordmetric)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc.witness, SplitReport):
            for check in exc.witness.checks:
                if check.passed is False:
                    wit = f" (witness: {', '.join(check.witness)})" if check.witness else ""
                    print(f"  failed {check.name}: {check.detail}{wit}", file=sys.stderr)
        return EXIT_VALIDATION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LieExpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
