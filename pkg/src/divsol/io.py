"""Instance file formats.

Graph (matchings and min cuts)::

    p <n> <m>
    e <u> <v> <weight>        # m lines, 0-based vertices

Intervals::

    i <n>
    <left> <right> <weight>   # n lines

Matroid pair, JSON::

    {"ground_size": 4, "weights": [1, 2, 1, 1],
     "m1": {"kind": "uniform", "rank": 2},
     "m2": {"kind": "partition", "blocks": [[0, 1], [2, 3]], "capacities": [1, 1]}}

A graphic matroid is ``{"kind": "graphic", "graph": "<graph file text>"}``.
``weights`` may be omitted (all ones).

Extension query (debugging aid)::

    x <size>
    in <elements...>
    ex <elements...>
    w <size signed weights>

Decimal numbers are scaled by ``10**scale_digits`` on load. Blank lines and
lines starting with ``#`` or ``c `` are ignored in the text formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import InvalidInputError
from .framework import ExtensionQuery
from .graph import UGraph
from .ground import DEFAULT_SCALE_DIGITS, GroundSet, Solution, format_scaled, scale_decimal
from .interval import IntervalSet
from .matroid import Graphic, MatroidOracle, Partition, Uniform


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#") or s == "c" or s.startswith("c "):
            continue
        yield no, s.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InvalidInputError(f"{what} must be an integer, got {tok!r}", no) from None


def _scaled(tok: str, no: int, digits: int, what: str) -> int:
    try:
        return scale_decimal(tok, digits)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{what}: {exc}", no) from None


def _weight(tok: str, no: int, digits: int) -> int:
    w = _scaled(tok, no, digits, "weight")
    if w < 0:
        raise InvalidInputError(f"weight must be nonnegative, got {tok}", no)
    return w


@dataclass(frozen=True)
class GraphFile:
    graph: UGraph
    scale_digits: int

    def ground(self) -> GroundSet:
        return GroundSet(self.graph.weights(), self.scale_digits)

    def labels(self) -> list[str]:
        return [f"{u}-{v}" for u, v, _ in self.graph.edges]


def parse_graph(text: str, scale_digits: int = DEFAULT_SCALE_DIGITS) -> GraphFile:
    header = None
    edges: list[tuple[int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    last = 0
    for no, tok in _lines(text):
        last = no
        if header is None:
            if tok[0] != "p" or len(tok) != 3:
                raise InvalidInputError("expected header 'p <n> <m>'", no)
            n, m = _int(tok[1], no, "vertex count"), _int(tok[2], no, "edge count")
            if n < 0 or m < 0:
                raise InvalidInputError("counts must be nonnegative", no)
            header = (n, m)
            continue
        if tok[0] != "e" or len(tok) != 4:
            raise InvalidInputError("expected edge line 'e <u> <v> <weight>'", no)
        u, v = _int(tok[1], no, "vertex"), _int(tok[2], no, "vertex")
        n = header[0]
        for x in (u, v):
            if not 0 <= x < n:
                raise InvalidInputError(f"vertex {x} outside 0..{n - 1}", no)
        if u == v:
            raise InvalidInputError(f"self-loop at vertex {u}", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidInputError(f"edge {u}-{v} repeats the edge on line {seen[key]}", no)
        seen[key] = no
        if len(edges) == header[1]:
            raise InvalidInputError(f"more than the declared {header[1]} edges", no)
        edges.append((u, v, _weight(tok[3], no, scale_digits)))
    if header is None:
        raise InvalidInputError("empty graph file", 1)
    if len(edges) != header[1]:
        raise InvalidInputError(f"declared {header[1]} edges, found {len(edges)}", last + 1)
    return GraphFile(UGraph(header[0], edges), scale_digits)


@dataclass(frozen=True)
class IntervalFile:
    intervals: IntervalSet
    texts: tuple[str, ...]

    def ground(self) -> GroundSet:
        return self.intervals.ground()

    def labels(self) -> list[str]:
        return list(self.texts)


def parse_intervals(text: str, scale_digits: int = DEFAULT_SCALE_DIGITS) -> IntervalFile:
    count = None
    ivs = []
    texts = []
    last = 0
    for no, tok in _lines(text):
        last = no
        if count is None:
            if tok[0] != "i" or len(tok) != 2:
                raise InvalidInputError("expected header 'i <n>'", no)
            count = _int(tok[1], no, "interval count")
            if count < 0:
                raise InvalidInputError("interval count must be nonnegative", no)
            continue
        if len(tok) != 3:
            raise InvalidInputError("expected interval line '<left> <right> <weight>'", no)
        if len(ivs) == count:
            raise InvalidInputError(f"more than the declared {count} intervals", no)
        a = _scaled(tok[0], no, scale_digits, "left endpoint")
        b = _scaled(tok[1], no, scale_digits, "right endpoint")
        if a > b:
            raise InvalidInputError(f"left endpoint {tok[0]} exceeds right endpoint {tok[1]}", no)
        ivs.append((a, b, _weight(tok[2], no, scale_digits)))
        texts.append(f"[{tok[0]},{tok[1]}]")
    if count is None:
        raise InvalidInputError("empty interval file", 1)
    if len(ivs) != count:
        raise InvalidInputError(f"declared {count} intervals, found {len(ivs)}", last + 1)
    return IntervalFile(IntervalSet(ivs, scale_digits), tuple(texts))


@dataclass(frozen=True)
class MatroidFile:
    m1: MatroidOracle
    m2: MatroidOracle
    weights: tuple[int, ...]
    scale_digits: int

    def ground(self) -> GroundSet:
        return GroundSet(self.weights, self.scale_digits)

    def labels(self) -> list[str]:
        return [str(e) for e in range(len(self.weights))]


def _matroid(desc, size: int, name: str, scale_digits: int) -> MatroidOracle:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InvalidInputError(f"{name} must be an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "uniform":
            return Uniform(size, int(desc["rank"]))
        if kind == "partition":
            return Partition(size, [list(map(int, b)) for b in desc["blocks"]], list(map(int, desc["capacities"])))
        if kind == "graphic":
            gf = parse_graph(desc["graph"], scale_digits)
            if gf.graph.m != size:
                raise InvalidInputError(f"graph has {gf.graph.m} edges but ground_size is {size}")
            return Graphic(gf.graph)
    except KeyError as exc:
        raise InvalidInputError(f"{name} ({kind}) is missing field {exc.args[0]!r}") from None
    except InvalidInputError as exc:
        raise InvalidInputError(f"{name}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name}: malformed parameters ({exc})") from None
    raise InvalidInputError(f"{name} has unknown kind {kind!r} (uniform, partition, graphic)")


def parse_matroid(text: str, scale_digits: int = DEFAULT_SCALE_DIGITS) -> MatroidFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise InvalidInputError("matroid file must be a JSON object", 1)
    size = doc.get("ground_size")
    if not isinstance(size, int) or size < 0:
        raise InvalidInputError("'ground_size' must be a nonnegative integer")
    raw = doc.get("weights", [1] * size)
    if not isinstance(raw, list) or len(raw) != size:
        raise InvalidInputError(f"'weights' must list {size} numbers")
    weights = []
    for i, w in enumerate(raw):
        v = scale_decimal(str(w), scale_digits)
        if v < 0:
            raise InvalidInputError(f"weight {i} must be nonnegative, got {w}")
        weights.append(v)
    for key in ("m1", "m2"):
        if key not in doc:
            raise InvalidInputError(f"missing matroid {key!r}")
    return MatroidFile(_matroid(doc["m1"], size, "m1", scale_digits),
                       _matroid(doc["m2"], size, "m2", scale_digits), tuple(weights), scale_digits)


def parse_query(text: str, scale_digits: int = DEFAULT_SCALE_DIGITS) -> ExtensionQuery:
    size = None
    parts: dict[str, tuple[int, list]] = {}
    for no, tok in _lines(text):
        head = tok[0]
        if size is None:
            if head != "x" or len(tok) != 2:
                raise InvalidInputError("expected header 'x <size>'", no)
            size = _int(tok[1], no, "size")
            continue
        if head not in ("in", "ex", "w"):
            raise InvalidInputError(f"unknown directive {head!r} (in, ex, w)", no)
        if head in parts:
            raise InvalidInputError(f"directive {head!r} repeats line {parts[head][0]}", no)
        if head == "w":
            vals = [_scaled(t, no, scale_digits, "weight") for t in tok[1:]]
            if len(vals) != size:
                raise InvalidInputError(f"expected {size} weights, got {len(vals)}", no)
        else:
            vals = [_int(t, no, "element") for t in tok[1:]]
            for e in vals:
                if not 0 <= e < size:
                    raise InvalidInputError(f"element {e} outside 0..{size - 1}", no)
        parts[head] = (no, vals)
    if size is None:
        raise InvalidInputError("empty query file", 1)
    fin = Solution(parts.get("in", (0, []))[1])
    fout = Solution(parts.get("ex", (0, []))[1])
    both = sorted(set(fin.members) & set(fout.members))
    if both:
        raise InvalidInputError(f"elements {both} are both forced in and forced out", parts["ex"][0])
    obj = tuple(parts["w"][1]) if "w" in parts else (0,) * size
    return ExtensionQuery(fin, fout, obj)


FORMATS = {"graph": parse_graph, "intervals": parse_intervals, "matroid": parse_matroid, "query": parse_query}
PROBLEM_FORMAT = {"matching": "graph", "mincut": "graph", "interval": "intervals", "matroid": "matroid"}


def sniff_format(text: str) -> str:
    """Guess the file format from its first meaningful token."""
    if text.lstrip().startswith("{"):
        return "matroid"
    for _, tok in _lines(text):
        return {"p": "graph", "i": "intervals", "x": "query"}.get(tok[0], "unknown")
    return "unknown"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None


def render_decimal(value: int, scale_digits: int) -> str:
    return format_scaled(value, scale_digits)
