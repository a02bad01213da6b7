"""(rho, gamma, l)-tabloids, their markings, enumeration and the row
compression that identifies them with (rho, gamma, gamma)-tabloids."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator, Sequence

from .core import MultiPartitionInstance, Partition, validate_partition
from .errors import (
    InvalidInput,
    InvalidMarked,
    NotRectangleWithSpacing,
    ParseError,
    RowNotWeaklyIncreasing,
    WrongLabelCount,
)

Labels = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class CycleTabloid:
    labels: Labels
    rho: Partition
    gamma: tuple[int, ...]
    instance: MultiPartitionInstance

    @cached_property
    def _cells(self) -> dict[int, list[tuple[int, int, int]]]:
        out = {}
        for h, comp in enumerate(self.labels):
            for i, row in enumerate(comp):
                for c, x in enumerate(row):
                    out.setdefault(x, []).append((h, i, c))
        return out

    def cells(self, k: int) -> list[tuple[int, int, int]]:
        """(component, row, column) of every box carrying label k, 0-based."""
        return list(self._cells.get(k, ()))

    @cached_property
    def _rows(self) -> dict[int, tuple[int, list[int]]]:
        out = {}
        for h, comp in enumerate(self.labels):
            for i, row in enumerate(comp):
                for x in set(row):
                    out.setdefault(x, (h, []))[1].append(i)
        return out

    def label_rows(self, k: int) -> tuple[int, list[int]]:
        """Component of label k and the rows it occupies, top to bottom."""
        h, rows = self._rows[k]
        return h, list(rows)

    def component_of(self, k: int) -> int:
        return self._rows[k][0]

    def to_json(self) -> list:
        return [[list(r) for r in comp] for comp in self.labels]


@dataclass(frozen=True)
class MarkedCycleTabloid:
    """A (rho, gamma, l)-tabloid with a marked row c(i) in 1..gamma_h per label."""

    y: CycleTabloid
    marks: tuple[int, ...]

    def mark(self, label: int) -> int:
        return self.marks[label - 1]

    def to_json(self) -> dict:
        return {"labels": self.y.to_json(), "marks": {str(k): c for k, c in enumerate(self.marks, start=1)}}


def _freeze(raw) -> Labels:
    return tuple(tuple(tuple(int(x) for x in row) for row in comp) for comp in raw)


def _as_partition(rho) -> Partition:
    return rho if isinstance(rho, Partition) else validate_partition(rho)


def _check_gamma(inst: MultiPartitionInstance, gamma: Sequence[int]) -> tuple[int, ...]:
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != inst.n:
        raise InvalidInput(f"gamma has {len(gamma)} entries for {inst.n} components")
    for h, (g, lh) in enumerate(zip(gamma, inst.periods), start=1):
        if g <= 0 or lh % g:
            raise InvalidInput(f"gamma_{h}={g} does not divide l_{h}={lh}")
    return gamma


def validate_cycle_tabloid(raw, rho, gamma, inst: MultiPartitionInstance) -> CycleTabloid:
    labels = _freeze(raw)
    rho = _as_partition(rho)
    gamma = _check_gamma(inst, gamma)
    if len(labels) != inst.n or any(
            tuple(len(r) for r in comp) != part.parts for comp, part in zip(labels, inst.components)):
        raise InvalidInput("label diagram does not have the shape of the instance")

    counts = {}
    for comp in labels:
        for row in comp:
            for x in row:
                counts[x] = counts.get(x, 0) + 1
    for x in counts:
        if not 1 <= x <= len(rho):
            raise WrongLabelCount(x, f"label {x} outside 1..{len(rho)}")
    for k, part in enumerate(rho.parts, start=1):
        if counts.get(k, 0) != part:
            raise WrongLabelCount(k, f"label {k} fills {counts.get(k, 0)} boxes, expected {part}")

    for h, comp in enumerate(labels, start=1):
        for i, row in enumerate(comp, start=1):
            if any(a > b for a, b in zip(row, row[1:])):
                raise RowNotWeaklyIncreasing(h, i)

    y = CycleTabloid(labels, rho, gamma, inst)
    for k, part in enumerate(rho.parts, start=1):
        cells = y._cells.get(k, [])
        comps = {h for h, _, _ in cells}
        if len(comps) != 1:
            raise NotRectangleWithSpacing(k, f"label {k} spans several components")
        h = comps.pop()
        g, lh = gamma[h], inst.periods[h]
        if part % g:
            raise NotRectangleWithSpacing(k, f"gamma_{h + 1}={g} does not divide rho_{k}={part}")
        width, step = part // g, lh // g
        rows = {}
        for _, i, c in cells:
            rows.setdefault(i, []).append(c)
        top = min(rows)
        expected_rows = [top + s * step for s in range(g)]
        if sorted(rows) != expected_rows:
            raise NotRectangleWithSpacing(k, f"label {k} rows {sorted(rows)} are not spaced by {step}")
        left = min(rows[top])
        for cols in rows.values():
            if sorted(cols) != list(range(left, left + width)):
                raise NotRectangleWithSpacing(k, f"label {k} is not a {g}x{width} rectangle")
    return y


def enumerate_cycle_tabloids(inst: MultiPartitionInstance, rho, gamma) -> Iterator[CycleTabloid]:
    """Every (rho, gamma, l)-tabloid on the instance, each once.

    Labels are placed in increasing order.  Because rows must weakly increase
    and later labels are larger, a label always starts at the first free
    column of each of its rows, so candidates are (component, top row) in
    lexicographic order.
    """
    rho = _as_partition(rho)
    gamma = _check_gamma(inst, gamma)
    if rho.m != inst.m:
        return
    widths = [c.parts for c in inst.components]
    fill = [[0] * len(c) for c in widths]
    grid = [[[0] * w for w in c] for c in widths]

    def rec(k):
        if k > len(rho):
            yield CycleTabloid(tuple(tuple(tuple(r) for r in comp) for comp in grid), rho, gamma, inst)
            return
        part = rho.parts[k - 1]
        for h in range(inst.n):
            g = gamma[h]
            if part % g:
                continue
            width, step = part // g, inst.periods[h] // g
            nrows = len(widths[h])
            for top in range(nrows - (g - 1) * step):
                rows = [top + s * step for s in range(g)]
                col = fill[h][top]
                if any(fill[h][r] != col or col + width > widths[h][r] for r in rows):
                    continue
                for r in rows:
                    grid[h][r][col:col + width] = [k] * width
                    fill[h][r] += width
                yield from rec(k + 1)
                for r in rows:
                    grid[h][r][col:col + width] = [0] * width
                    fill[h][r] -= width

    yield from rec(1)


def markings(y: CycleTabloid) -> Iterator[MarkedCycleTabloid]:
    """Every marking of y, marks in lexicographic order."""
    ranges = [range(1, y.gamma[y.component_of(k)] + 1) for k in range(1, len(y.rho) + 1)]
    for marks in product(*ranges):
        yield MarkedCycleTabloid(y, marks)


def marking_count(y: CycleTabloid) -> int:
    return prod(y.gamma[y.component_of(k)] for k in range(1, len(y.rho) + 1))


def enumerate_marked(inst: MultiPartitionInstance, rho, gamma) -> Iterator[MarkedCycleTabloid]:
    for y in enumerate_cycle_tabloids(inst, rho, gamma):
        yield from markings(y)


def count_marked(inst: MultiPartitionInstance, rho, gamma) -> int:
    return sum(marking_count(y) for y in enumerate_cycle_tabloids(inst, rho, gamma))


def make_marked(y: CycleTabloid, marks) -> MarkedCycleTabloid:
    """Attach marks (sequence indexed by label, or mapping label -> row) to y."""
    if isinstance(marks, dict):
        try:
            marks = [int(marks[k] if k in marks else marks[str(k)]) for k in range(1, len(y.rho) + 1)]
        except KeyError as exc:
            raise InvalidMarked(f"missing mark for label {exc.args[0]}") from None
    marks = tuple(int(c) for c in marks)
    if len(marks) != len(y.rho):
        raise InvalidMarked(f"{len(marks)} marks for {len(y.rho)} labels")
    for k, c in enumerate(marks, start=1):
        g = y.gamma[y.component_of(k)]
        if not 1 <= c <= g:
            raise InvalidMarked(f"mark {c} of label {k} outside 1..{g}")
    return MarkedCycleTabloid(y, marks)


def _block_order(lh: int, g: int) -> list[int]:
    step = lh // g
    return sorted(range(lh), key=lambda p: p % step)


def regroup_rows(y: CycleTabloid) -> Labels:
    """The row regrouping behind compress, without validating the result."""
    labels = []
    for comp, lh, g in zip(y.labels, y.instance.periods, y.gamma):
        order = _block_order(lh, g)
        new = []
        for top in range(0, len(comp), lh):
            new.extend(comp[top + p] for p in order)
        labels.append(tuple(new))
    return tuple(labels)


def compress(y: CycleTabloid) -> CycleTabloid:
    """Regroup the rows of every block of l_h rows by residue mod l_h/gamma_h.

    Spaced rectangles become contiguous, giving a (rho, gamma, gamma)-tabloid
    on the same diagrams viewed with periods gamma.  Rows with the same
    residue keep their relative order.
    """
    try:
        target = y.instance.with_periods(y.gamma)
    except Exception as exc:
        raise InvalidInput(str(exc)) from exc
    try:
        return validate_cycle_tabloid(regroup_rows(y), y.rho, y.gamma, target)
    except (NotRectangleWithSpacing, RowNotWeaklyIncreasing, WrongLabelCount) as exc:
        raise InvalidInput(f"compression did not produce a valid tabloid: {exc}") from exc


def compress_marked(mt: MarkedCycleTabloid) -> MarkedCycleTabloid:
    return MarkedCycleTabloid(compress(mt.y), mt.marks)


def render_marked(mt: MarkedCycleTabloid | CycleTabloid, show_marks: bool = True) -> str:
    """ASCII diagram: one row per line, components separated by a blank line,
    '*' after the left-most box of each marked row.  An empty component is
    drawn as a single '.'."""
    if isinstance(mt, CycleTabloid):
        y, marks = mt, None
    else:
        y, marks = mt.y, (mt.marks if show_marks else None)
    starred = set()
    if marks is not None:
        for k, c in enumerate(marks, start=1):
            h, rows = y.label_rows(k)
            r = rows[c - 1]
            starred.add((h, r, y.labels[h][r].index(k)))
    blocks = []
    for h, comp in enumerate(y.labels):
        if not comp:
            blocks.append(".")
            continue
        lines = []
        for i, row in enumerate(comp):
            lines.append(" ".join(f"{x}*" if (h, i, c) in starred else str(x) for c, x in enumerate(row)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def parse_marked(text: str, inst: MultiPartitionInstance, gamma, rho=None) -> MarkedCycleTabloid:
    """Inverse of render_marked; rho defaults to the label counts."""
    blocks = [b for b in text.strip("\n").split("\n\n")]
    raw, starred = [], []
    for h, block in enumerate(blocks):
        comp = []
        if block.strip() != ".":
            for i, line in enumerate(block.split("\n")):
                row = []
                for c, tok in enumerate(line.split()):
                    star = tok.endswith("*")
                    tok = tok.rstrip("*")
                    if not tok.isdigit():
                        raise ParseError(f"bad entry {tok!r}", f"component {h + 1} row {i + 1}")
                    row.append(int(tok))
                    if star:
                        starred.append((h, i, int(tok)))
                comp.append(row)
        raw.append(comp)
    if rho is None:
        counts = {}
        for comp in raw:
            for row in comp:
                for x in row:
                    counts[x] = counts.get(x, 0) + 1
        rho = [counts.get(k, 0) for k in range(1, max(counts, default=0) + 1)]
    y = validate_cycle_tabloid(raw, rho, gamma, inst)
    marks = {}
    for h, i, k in starred:
        _, rows = y.label_rows(k)
        if k in marks:
            raise InvalidMarked(f"label {k} is marked twice")
        marks[k] = rows.index(i) + 1
    return make_marked(y, marks)


def marked_from_json(obj: dict, inst: MultiPartitionInstance, rho, gamma) -> MarkedCycleTabloid:
    if not isinstance(obj, dict) or "labels" not in obj or "marks" not in obj:
        raise ParseError("expected an object with 'labels' and 'marks'")
    y = validate_cycle_tabloid(obj["labels"], rho, gamma, inst)
    return make_marked(y, {int(k): v for k, v in obj["marks"].items()})
