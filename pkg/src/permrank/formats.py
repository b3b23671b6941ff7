"""Text formats: permutation files, cycle lines, ranking CSVs, rational rendering."""
from __future__ import annotations

import csv
import decimal
import io
from fractions import Fraction
from typing import Iterable

from .errors import ItemSetMismatch, OrderMismatch, ParseError, TiedScores
from .perm import Permutation


def _content_lines(text: str) -> list[str]:
    out = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            out.append(ln)
    return out


def parse_permutation(line: str) -> Permutation:
    try:
        return Permutation(tuple(int(x) for x in line.split()))
    except ValueError:
        raise ParseError(f"not a permutation line: {line!r}") from None


def parse_permutations(text: str, same_order: bool = True) -> list[Permutation]:
    """One permutation per line ("1 4 2 3"); blank lines and ``#`` comments skipped."""
    perms = [parse_permutation(ln) for ln in _content_lines(text)]
    if same_order and perms:
        n = perms[0].n
        for k, p in enumerate(perms, start=1):
            if p.n != n:
                raise OrderMismatch(f"line {k} has order {p.n}, expected {n}")
    return perms


def format_permutations(perms: Iterable[Permutation]) -> str:
    return "".join(f"{p}\n" for p in perms)


def parse_cycle_line(line: str) -> list[Permutation]:
    """Permutations separated by ``|``."""
    parts = [x.strip() for x in line.split("|")]
    return [parse_permutation(x) for x in parts if x]


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def render(x: Fraction, digits: int = 10) -> str:
    """``"5/6 ≈ 0.8333333333"``; ``=`` marks an exact decimal."""
    ctx = decimal.Context(prec=digits)
    d = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    mark = "≈" if ctx.flags[decimal.Inexact] else "="
    return f"{format_rational(x)} {mark} {format(d, 'f')}"


def parse_rankings_csv(text: str) -> tuple[list[str], list[str], list[Permutation]]:
    """Convert ``observer,item,score`` rows into one permutation per observer.

    Positions follow the first observer's ranking (highest score first). Each
    observer's permutation lists, position by position, the rank that
    observer gives the item in that position, so the first observer maps to
    the identity.

    Returns ``(observers, items in position order, permutations)``.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"observer", "item", "score"} <= set(reader.fieldnames):
        raise ParseError("ranking CSV needs the columns observer,item,score")
    scores: dict[str, dict[str, Fraction]] = {}
    for row in reader:
        obs, item = row["observer"].strip(), row["item"].strip()
        try:
            val = Fraction(row["score"].strip())
        except ValueError:
            raise ParseError(f"bad score {row['score']!r} for {obs}/{item}") from None
        per = scores.setdefault(obs, {})
        if item in per:
            raise ParseError(f"observer {obs} scores item {item} twice")
        per[item] = val
    if not scores:
        raise ParseError("no rankings found")
    observers = list(scores)
    ranks = {}
    for obs in observers:
        per = scores[obs]
        by_score: dict[Fraction, list[str]] = {}
        for item, val in per.items():
            by_score.setdefault(val, []).append(item)
        ties = [sorted(items) for items in by_score.values() if len(items) > 1]
        if ties:
            raise TiedScores(f"observer {obs} ties items {', '.join('/'.join(t) for t in ties)}")
        ordered = sorted(per, key=lambda it: (-per[it], it))
        ranks[obs] = {item: r for r, item in enumerate(ordered, start=1)}
    first = observers[0]
    base = set(scores[first])
    for obs in observers[1:]:
        if set(scores[obs]) != base:
            diff = sorted(base ^ set(scores[obs]))
            raise ItemSetMismatch(f"observer {obs} differs from {first} on items {', '.join(diff)}")
    items = sorted(base, key=lambda it: ranks[first][it])
    perms = [Permutation(tuple(ranks[obs][it] for it in items)) for obs in observers]
    return observers, items, perms
