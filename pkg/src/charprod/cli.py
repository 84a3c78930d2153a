"""Command-line front end.

Exit codes: 0 when everything ran and every verification passed, 2 for
diagnostics (bad input, unknown label, invalid selector), 3 when at least
one verification reported ``fail``.
"""

from __future__ import annotations

import argparse
import collections
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .chains import FAIL, UNMET, maximal_chain, chief_factors, verify_all, verify_controlling_function, p_max
from .char_algebra import decompose_square, format_decomposition
from .char_table import Character, CharacterTable, character_table, format_table
from .errors import CharprodError
from .group_core import DEFAULT_MAX_ORDER, Group, load_group, to_cayley_text
from .zoo import CorpusSpec, corpus, from_label

EXIT_OK, EXIT_DIAGNOSTIC, EXIT_VERIFY_FAILED = 0, 2, 3

COMMANDS = ("table", "decompose", "eta", "chain", "verify", "corpus", "pmax")


class UsageError(CharprodError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    zoo: str | None = None
    file: str | None = None
    chi: str | None = None
    corpus: bool = False
    max_order: int | None = None
    exhaustive_chains: bool = False
    out: str | None = None
    values: tuple[int, ...] = ()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charprod", description="Character tables and chi*conj(chi) statistics.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("values", nargs="*", type=int, help="arguments for pmax")
    ap.add_argument("--zoo", metavar="LABEL")
    ap.add_argument("--file", metavar="PATH")
    ap.add_argument("--chi", metavar="row=<i>|deg=<d>")
    ap.add_argument("--corpus", action="store_true")
    ap.add_argument("--max-order", type=int, metavar="N")
    ap.add_argument("--exhaustive-chains", action="store_true")
    ap.add_argument("--out", metavar="PATH")
    return ap


def _config(argv: list[str] | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(ns.command, ns.zoo, ns.file, ns.chi, ns.corpus, ns.max_order,
                     ns.exhaustive_chains, ns.out, tuple(ns.values))


def _group(cfg: RunConfig) -> Group:
    if bool(cfg.zoo) == bool(cfg.file):
        raise UsageError("give exactly one of --zoo and --file")
    cap = cfg.max_order or DEFAULT_MAX_ORDER
    if cfg.zoo:
        return from_label(cfg.zoo, max_order=cap)
    try:
        text = Path(cfg.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.file}: {exc.strerror}") from None
    return load_group(text, label=Path(cfg.file).stem, max_order=cap)


def select_character(T: CharacterTable, selector: str) -> Character:
    m = re.fullmatch(r"(row|deg)=(\d+)", selector or "")
    if not m:
        raise UsageError(f"--chi must be row=<i> or deg=<d>, got {selector!r}")
    key, val = m[1], int(m[2])
    if key == "row":
        if val >= len(T):
            raise UsageError(f"row {val} out of range 0..{len(T) - 1}")
        return T[val]
    for ch in T:
        if ch.degree == val:
            return ch
    raise UsageError(f"no irreducible of degree {val}; degrees are {sorted(set(T.degrees))}")


def _characters(cfg: RunConfig, T: CharacterTable) -> list[Character]:
    if cfg.chi:
        return [select_character(T, cfg.chi)]
    return [ch for ch in T if ch.degree > 1]


def _verify_lines(groups: list[Group], cfg: RunConfig) -> tuple[list[str], int]:
    lines = [verify_controlling_function().line()]
    counts: collections.Counter = collections.Counter()
    by_check: dict[str, collections.Counter] = collections.defaultdict(collections.Counter)
    failed = 0
    for G in groups:
        T = character_table(G)
        for ch in _characters(cfg, T):
            for rep in verify_all(G, ch, exhaustive=cfg.exhaustive_chains and G.order <= 96):
                lines.append(rep.line())
                counts[rep.status] += 1
                by_check[rep.check][rep.status] += 1
                failed += rep.status == FAIL
    if cfg.corpus:
        for check in sorted(by_check):
            c = by_check[check]
            lines.append(f"summary-check {check} pass={c['pass']} fail={c[FAIL]} "
                         f"hypotheses-not-met={c[UNMET]}")
    lines.append(f"summary groups={len(groups)} pass={counts['pass']} fail={counts[FAIL]} "
                 f"hypotheses-not-met={counts[UNMET]}")
    return lines, failed


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, report text)."""
    cmd = cfg.command
    if cmd == "pmax":
        if not cfg.values:
            raise UsageError("pmax needs at least one n")
        bad = [n for n in cfg.values if not 1 <= n <= 64]
        if bad:
            raise UsageError(f"pmax accepts 1 <= n <= 64, got {bad[0]}")
        return EXIT_OK, "".join(f"p({n})={p_max(n)}\n" for n in cfg.values)
    if cmd == "corpus":
        groups = corpus(CorpusSpec(max_order=cfg.max_order or 128))
        if cfg.out:
            d = Path(cfg.out)
            d.mkdir(parents=True, exist_ok=True)
            for G in groups:
                (d / f"{_slug(G.label)}.cayley").write_text(to_cayley_text(G))
        return EXIT_OK, "".join(f"{G.label} order={G.order}\n" for G in groups)
    if cmd == "verify":
        if cfg.corpus:
            if cfg.zoo or cfg.file:
                raise UsageError("--corpus replaces --zoo/--file")
            groups = corpus(CorpusSpec(max_order=cfg.max_order or 128))
        else:
            groups = [_group(cfg)]
        lines, failed = _verify_lines(groups, cfg)
        return (EXIT_VERIFY_FAILED if failed else EXIT_OK), "\n".join(lines) + "\n"
    G = _group(cfg)
    T = character_table(G)
    if cmd == "table":
        return EXIT_OK, format_table(T)
    chi = select_character(T, cfg.chi)
    if cmd == "decompose":
        return EXIT_OK, format_decomposition(chi, decompose_square(chi)) + "\n"
    if cmd == "eta":
        dec = decompose_square(chi)
        mult = ",".join(str(a) for a in dec.multiplicities)
        return EXIT_OK, f"chi={chi.index} deg={chi.degree} eta={dec.eta} multiplicities={mult}\n"
    chain = maximal_chain(chi)
    lines = [f"group={G.label} chi={chi.index} deg={chi.degree}"] + chain.describe()
    for i, L in enumerate(chief_factors(chain), start=1):
        lines.append(f"chief step={i} L_order={L.order} N_order={chain.subgroups[i].order}")
    return EXIT_OK, "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = _config(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return EXIT_DIAGNOSTIC if exc.code else EXIT_OK
    try:
        status, text = run(cfg)
    except CharprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    if cfg.out and cfg.command != "corpus":
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
