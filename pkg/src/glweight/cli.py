"""Command-line front end.

    glweight eval --perm "(1 3 2)"
    glweight eval --diagram "[[1,3],[2,4]]" --mn 2,1
    glweight table --k-max 4
    glweight oracle --k-max 3 --mn 1,1 --mn 2,1
    glweight hc --mn 1,1 --order 3
    glweight cache-info --cache memo.jsonl

Exit codes: 0 success, 1 oracle failures, 2 bad input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .glrec import GLWeightSystem, IntegralityError
from .hc import DEFAULT_ORDER, casimir_hc_images, gl11_casimir_in_c1_c2, is_supersymmetric
from .perm import ParseError, all_permutations, parse_diagram, parse_permutation
from .poly import substitute_c0
from .signfn import sign_function
from .uea import DEFAULT_BUDGET, BudgetExceeded, evaluate_in_uea, w_glmn_bruteforce

log = logging.getLogger("glweight")

TABLE_LIMIT = 6
ORACLE_SIGNATURES = [(1, 0), (2, 0), (1, 1), (2, 1), (1, 2)]


@dataclass
class RunConfig:
    command: str
    perm: str | None = None
    diagram: str | None = None
    mn: list[tuple[int, int]] = field(default_factory=list)
    format: str = "text"
    cache: Path | None = None
    budget: int = DEFAULT_BUDGET
    order: int = DEFAULT_ORDER
    k_max: int = 4

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.order < 0:
            raise ValueError("series order must be >= 0")
        if self.k_max < 0:
            raise ValueError("k-max must be >= 0")


def _signature(text: str) -> tuple[int, int]:
    try:
        m, n = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M,N, got {text!r}")
    if m < 0 or n < 0 or m + n == 0:
        raise argparse.ArgumentTypeError(f"need m, n >= 0 and m + n >= 1, got {text!r}")
    return m, n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cache", type=Path, help="JSON-lines memo file, read and extended")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max index tuples per brute-force sum")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="glweight", description="Universal GL weight system of permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one permutation or chord diagram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--perm", help='cycle or one-line notation, e.g. "(1 3 2)" or "3 1 2"')
    src.add_argument("--diagram", help='chords as pairs, e.g. "[[1,3],[2,4]]"')
    p.add_argument("--mn", type=_signature, action="append", default=[], help="also show C0 = m - n")

    p = sub.add_parser("table", parents=[common], help="all permutations up to size k")
    p.add_argument("--k-max", type=int, default=4)

    p = sub.add_parser("oracle", parents=[common], help="compare against brute force in U(gl(m|n))")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--mn", type=_signature, action="append", default=[])

    p = sub.add_parser("hc", parents=[common], help="Harish-Chandra images of the Casimirs")
    p.add_argument("--mn", type=_signature, action="append", default=[])
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    sub.add_parser("cache-info", parents=[common], help="summarise a memo file")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        perm=getattr(args, "perm", None),
        diagram=getattr(args, "diagram", None),
        mn=getattr(args, "mn", []),
        format=args.format,
        cache=args.cache,
        budget=args.budget,
        order=getattr(args, "order", DEFAULT_ORDER),
        k_max=getattr(args, "k_max", 4),
    )


def _system(cfg: RunConfig) -> GLWeightSystem:
    system = GLWeightSystem()
    if cfg.cache:
        n = system.load(cfg.cache)
        log.info("loaded %d cached values from %s", n, cfg.cache)
    return system


def _save(system: GLWeightSystem, cfg: RunConfig):
    if cfg.cache:
        n = system.save(cfg.cache)
        log.info("appended %d values to %s", n, cfg.cache)


def _emit(cfg: RunConfig, text: str, data) -> None:
    if cfg.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_eval(cfg: RunConfig) -> int:
    system = _system(cfg)
    if cfg.perm is not None:
        sigma = parse_permutation(cfg.perm)
        value = system(sigma)
        data = {"perm": list(sigma.images), "cycles": sigma.cycle_string()}
    else:
        d = parse_diagram(cfg.diagram)
        value = system.diagram(d)
        data = {"diagram": [list(p) for p in d.pairs]}
    data.update(value=value.to_string(), terms=value.to_json())
    lines = [value.to_string()]
    if cfg.mn:
        data["specialized"] = {}
        for m, n in cfg.mn:
            s = substitute_c0(value, m - n).to_string()
            data["specialized"][f"{m},{n}"] = s
            lines.append(f"gl({m}|{n}): {s}")
    _save(system, cfg)
    _emit(cfg, "\n".join(lines), data)
    return 0


def cmd_table(cfg: RunConfig) -> int:
    if cfg.k_max > TABLE_LIMIT:
        raise ValueError(f"k-max {cfg.k_max} exceeds the table limit {TABLE_LIMIT}")
    system = _system(cfg)
    rows = []
    for k in range(1, cfg.k_max + 1):
        for sigma in all_permutations(k):
            rows.append(
                {
                    "k": k,
                    "sigma": list(sigma.images),
                    "cycles": sigma.cycle_string(),
                    "sign": str(sign_function(sigma)),
                    "value": system(sigma).to_string(),
                }
            )
    _save(system, cfg)
    text = "\n".join(f"{r['k']}\t{r['cycles']}\t{r['sign']}\t{r['value']}" for r in rows)
    _emit(cfg, text, rows)
    return 0


def oracle_case(system: GLWeightSystem, sigma, m: int, n: int, budget: int) -> str:
    try:
        brute = w_glmn_bruteforce(sigma, m, n, budget=budget)
        rec = evaluate_in_uea(system(sigma), m, n, budget=budget)
    except BudgetExceeded:
        return "SKIPPED"
    return "PASS" if rec == brute else "FAIL"


def cmd_oracle(cfg: RunConfig) -> int:
    system = _system(cfg)
    signatures = cfg.mn or ORACLE_SIGNATURES
    cases = []
    for m, n in signatures:
        for k in range(1, cfg.k_max + 1):
            for sigma in all_permutations(k):
                verdict = oracle_case(system, sigma, m, n, cfg.budget)
                cases.append({"m": m, "n": n, "k": k, "sigma": list(sigma.images),
                              "cycles": sigma.cycle_string(), "verdict": verdict})
    _save(system, cfg)
    summary = {v: sum(c["verdict"] == v for c in cases) for v in ("PASS", "FAIL", "SKIPPED")}
    lines = [f"{c['verdict']}\tgl({c['m']}|{c['n']})\t{c['cycles']}" for c in cases]
    lines.append(f"{summary['PASS']} passed, {summary['FAIL']} failed, {summary['SKIPPED']} skipped")
    _emit(cfg, "\n".join(lines), {"cases": cases, "summary": summary})
    return 1 if summary["FAIL"] else 0


def cmd_hc(cfg: RunConfig) -> int:
    out = []
    lines = []
    for m, n in cfg.mn or [(1, 1)]:
        images = casimir_hc_images(m, n, cfg.order)
        entry = {"m": m, "n": n, "images": [], "gl11": []}
        lines.append(f"gl({m}|{n})")
        for k, f in enumerate(images):
            ok = is_supersymmetric(f, m, n)
            entry["images"].append({"k": k, "value": f.to_string(), "supersymmetric": ok})
            lines.append(f"  phi(C{k}) = {f}" + ("" if ok else "   [NOT supersymmetric]"))
        if (m, n) == (1, 1):
            for k in range(1, cfg.order + 1):
                s = gl11_casimir_in_c1_c2(k).to_string()
                entry["gl11"].append({"k": k, "value": s})
                lines.append(f"  C{k} = {s}")
        out.append(entry)
    _emit(cfg, "\n".join(lines), out)
    return 0


def cmd_cache_info(cfg: RunConfig) -> int:
    if cfg.cache is None:
        raise ValueError("cache-info needs --cache PATH")
    system = GLWeightSystem()
    n = system.load(cfg.cache)
    sizes: dict[int, int] = {}
    for key in system._pending:
        sizes[len(key)] = sizes.get(len(key), 0) + 1
    data = {"path": str(cfg.cache), "records": n, "by_k": {str(k): sizes[k] for k in sorted(sizes)}}
    text = f"{cfg.cache}: {n} records" + "".join(f"\n  k={k}: {sizes[k]}" for k in sorted(sizes))
    _emit(cfg, text, data)
    return 0


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "oracle": cmd_oracle,
    "hc": cmd_hc,
    "cache-info": cmd_cache_info,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IntegralityError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
