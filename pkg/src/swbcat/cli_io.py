"""JSON documents, diagram rendering and the ``swb`` command line.

Every document is an envelope ``{"version", "kind", "payload"}`` with kind
one of ``tcd``, ``frame``, ``swb`` or ``morphism``.  Top-level keys starting
with ``_`` are annotations (fixture provenance, expected invariants); they
survive a parse/emit round trip and are otherwise ignored.  Any other
unknown key is rejected.
"""
from __future__ import annotations

import json
import math
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Any

import click

from . import category, chord, swb
from .category import Morphism, Scalar
from .chord import TwistedChordDatum
from .errors import InvariantError, InvalidDatum, SchemaError, SWBError, UnsupportedKind
from .swb import Frame, SWBDatum

VERSION = "1"
KINDS = ("tcd", "frame", "swb", "morphism")


# ---------------------------------------------------------------- payloads

def tcd_payload(t: TwistedChordDatum) -> dict:
    return {"n": t.rank, "arcs": [list(a) for a in t.arcs], "twists": list(t.twists)}


def frame_payload(fr: Frame) -> dict:
    return {"tcd": tcd_payload(fr.tcd), "f_south": fr.south, "f_north": fr.north,
            "f_arcs": list(fr.mult)}


def swb_payload(th: SWBDatum) -> dict:
    pairs = sorted(sorted([list(u), list(v)]) for u, v in th.pairs())
    return {"frame": frame_payload(th.frame), "pairs": pairs}


def morphism_payload(f: Morphism) -> dict:
    terms = sorted(f.keyed_terms().items())
    return {"domain": f.domain, "codomain": f.codomain,
            "terms": [{"coeff": c.as_list(), "datum": swb_payload(rep.datum)} for _, (rep, c) in terms]}


def payload_of(obj) -> tuple[str, dict]:
    if isinstance(obj, TwistedChordDatum):
        return "tcd", tcd_payload(obj)
    if isinstance(obj, Frame):
        return "frame", frame_payload(obj)
    if isinstance(obj, SWBDatum):
        return "swb", swb_payload(obj)
    if isinstance(obj, Morphism):
        return "morphism", morphism_payload(obj)
    raise UnsupportedKind(f"cannot serialise {type(obj).__name__}")


# ---------------------------------------------------------------- validation helpers

def _ptr(path: str, key) -> str:
    token = str(key).replace("~", "~0").replace("/", "~1")
    return f"{path}/{token}"


def _object(x, path: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(path, "expected an object")
    for k in x:
        if k not in keys:
            raise SchemaError(_ptr(path, k), "unknown field")
    for k in keys:
        if k not in x:
            raise SchemaError(_ptr(path, k), "missing field")
    return x


def _int(x, path: str, lo: int | None = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(path, "expected an integer")
    if lo is not None and x < lo:
        raise SchemaError(path, f"expected an integer >= {lo}")
    return x


def _list(x, path: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise SchemaError(path, "expected an array")
    if length is not None and len(x) != length:
        raise SchemaError(path, f"expected {length} entries, found {len(x)}")
    return x


# ---------------------------------------------------------------- parsing payloads

def parse_tcd(x, path: str = "") -> TwistedChordDatum:
    x = _object(x, path, ("n", "arcs", "twists"))
    n = _int(x["n"], _ptr(path, "n"))
    arcs = _list(x["arcs"], _ptr(path, "arcs"), n)
    twists = _list(x["twists"], _ptr(path, "twists"), n)
    parsed = []
    for k, a in enumerate(arcs):
        p = _ptr(_ptr(path, "arcs"), k)
        a = _list(a, p, 2)
        lo, hi = _int(a[0], _ptr(p, 0), 1), _int(a[1], _ptr(p, 1), 1)
        if lo >= hi:
            raise SchemaError(p, "an arc is written [smaller, larger]")
        parsed.append((lo, hi))
    if parsed != sorted(parsed):
        raise SchemaError(_ptr(path, "arcs"), "arcs must be sorted by their smaller site")
    for k, s in enumerate(twists):
        if _int(s, _ptr(_ptr(path, "twists"), k)) not in (0, 1):
            raise SchemaError(_ptr(_ptr(path, "twists"), k), "a twist is 0 or 1")
    try:
        return TwistedChordDatum(tuple(parsed), tuple(twists))
    except ValueError as exc:
        raise InvariantError(str(exc)) from None


def parse_frame(x, path: str = "") -> Frame:
    x = _object(x, path, ("tcd", "f_south", "f_north", "f_arcs"))
    t = parse_tcd(x["tcd"], _ptr(path, "tcd"))
    south = _int(x["f_south"], _ptr(path, "f_south"))
    north = _int(x["f_north"], _ptr(path, "f_north"))
    mult = _list(x["f_arcs"], _ptr(path, "f_arcs"), t.rank)
    for k, m in enumerate(mult):
        _int(m, _ptr(_ptr(path, "f_arcs"), k))
    try:
        return Frame(t, south, north, tuple(mult))
    except InvalidDatum as exc:
        raise InvariantError(str(exc)) from None


def parse_swb(x, path: str = "") -> SWBDatum:
    x = _object(x, path, ("frame", "pairs"))
    fr = parse_frame(x["frame"], _ptr(path, "frame"))
    raw = _list(x["pairs"], _ptr(path, "pairs"))
    pairs = []
    for k, e in enumerate(raw):
        p = _ptr(_ptr(path, "pairs"), k)
        e = _list(e, p, 2)
        ends = []
        for j, v in enumerate(e):
            q = _ptr(p, j)
            v = _list(v, q, 2)
            vert = (_int(v[0], _ptr(q, 0)), _int(v[1], _ptr(q, 1), 1))
            if not (vert[0] <= fr.top and vert[1] <= fr.level_sizes[vert[0]]):
                raise InvariantError("vertex outside the frame", vert)
            ends.append(vert)
        if ends[0] >= ends[1]:
            raise SchemaError(p, "a pair is written [smaller vertex, larger vertex]")
        pairs.append(tuple(ends))
    if pairs != sorted(pairs):
        raise SchemaError(_ptr(path, "pairs"), "pairs must be sorted lexicographically")
    partner = [-1] * fr.size
    for u, v in pairs:
        a, b = fr.index(u), fr.index(v)
        if partner[a] != -1 or partner[b] != -1:
            raise InvariantError("vertex used twice", (u, v))
        partner[a], partner[b] = b, a
    if -1 in partner:
        raise InvariantError("vertex left unpaired", fr.vertex(partner.index(-1)))
    bad = swb._crossing(partner)
    if bad is not None:
        a, b = bad
        e1 = (fr.vertex(a), fr.vertex(partner[a]))
        e2 = (fr.vertex(b), fr.vertex(partner[b]))
        raise InvariantError("pairing is not crossingless", (e1, e2))
    return SWBDatum(fr, tuple(partner))


def parse_morphism(x, path: str = "") -> Morphism:
    x = _object(x, path, ("domain", "codomain", "terms"))
    n = _int(x["domain"], _ptr(path, "domain"))
    m = _int(x["codomain"], _ptr(path, "codomain"))
    terms = []
    for k, term in enumerate(_list(x["terms"], _ptr(path, "terms"))):
        p = _ptr(_ptr(path, "terms"), k)
        term = _object(term, p, ("coeff", "datum"))
        rows = _list(term["coeff"], _ptr(p, "coeff"))
        for j, row in enumerate(rows):
            q = _ptr(_ptr(p, "coeff"), j)
            row = _list(row, q, 4)
            for r in range(3):
                _int(row[r], _ptr(q, r))
            _int(row[3], _ptr(q, 3), None)
        th = parse_swb(term["datum"], _ptr(p, "datum"))
        if th.type != (n, m):
            raise InvariantError("term type differs from the morphism type", th.type)
        terms.append((th, Scalar.from_list(rows)))
    return Morphism(n, m, terms)


_PARSERS = {"tcd": parse_tcd, "frame": parse_frame, "swb": parse_swb, "morphism": parse_morphism}


# ---------------------------------------------------------------- documents

@dataclass
class Document:
    kind: str
    obj: Any
    annotations: dict = field(default_factory=dict)


def parse_document(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"not JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise SchemaError("", "expected an object")
    notes = {k: v for k, v in data.items() if k.startswith("_")}
    body = {k: v for k, v in data.items() if not k.startswith("_")}
    _object(body, "", ("version", "kind", "payload"))
    if body["version"] != VERSION:
        raise SchemaError("/version", f"unsupported version {body['version']!r}")
    kind = body["kind"]
    if kind not in KINDS:
        raise SchemaError("/kind", f"kind must be one of {', '.join(KINDS)}")
    return Document(kind, _PARSERS[kind](body["payload"], "/payload"), notes)


def parse(text: str):
    """The object described by a document."""
    return parse_document(text).obj


def _fmt(x, indent: int = 0) -> str:
    """JSON with objects spread over lines and arrays kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_fmt(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v, indent) for v in x) + "]"
    return json.dumps(x, ensure_ascii=False)


def emit(obj, annotations: dict | None = None) -> str:
    """Canonical text of a document; ``obj`` may be a :class:`Document`."""
    if isinstance(obj, Document):
        annotations = {**obj.annotations, **(annotations or {})}
        obj = obj.obj
    kind, payload = payload_of(obj)
    doc = {"version": VERSION, "kind": kind, "payload": payload}
    for k in sorted(annotations or {}):
        if not k.startswith("_"):
            raise SchemaError(_ptr("", k), "annotation keys start with '_'")
        doc[k] = annotations[k]
    return _fmt(doc) + "\n"


# ---------------------------------------------------------------- rendering

UNIT = 24.0  # distance between consecutive sites


def _n(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


@dataclass
class _Scene:
    width: float
    height: float
    lines: list = field(default_factory=list)  # (points, width, colour)
    paths: list = field(default_factory=list)  # (svg path, tikz path, width, colour)
    dots: list = field(default_factory=list)  # (x, y)
    labels: list = field(default_factory=list)  # (x, y, text)


def _tcd_scene(t: TwistedChordDatum) -> _Scene:
    n = t.size
    h = UNIT * (max(n, 1) + 1)  # the empty datum still gets a visible line
    x0 = 30.0
    sc = _Scene(x0 + UNIT * (n / 2 + 1) + 30, h)

    def y(i):
        return h - UNIT * i

    sc.lines.append(([(x0, h - UNIT / 2), (x0, UNIT / 2)], 2.0, "black"))
    for i in range(1, n + 1):
        sc.dots.append((x0, y(i)))
        sc.labels.append((x0 - 12, y(i) + 4, str(i)))
    for (a, b), s in zip(t.arcs, t.twists):
        r = UNIT * (b - a) / 2
        ya, yb = y(a), y(b)
        svg = f"M {_n(x0)} {_n(ya)} A {_n(r)} {_n(r)} 0 0 0 {_n(x0)} {_n(yb)}"
        tikz = f"({_n(x0)},{_n(-ya)}) arc (-90:90:{_n(r)})"
        sc.paths.append((svg, tikz, 1.2, "black"))
        sc.labels.append((x0 + r + 4, (ya + yb) / 2 + 4, str(s)))
    return sc


def _swb_scene(th: SWBDatum) -> _Scene:
    fr = th.frame
    t = fr.tcd
    n = t.size
    side = UNIT * (n + 2)
    widest = max([fr.level_sizes[0], fr.level_sizes[-1], 1])
    side = max(side, UNIT * (widest + 1))
    x0, y0 = 20.0, 20.0
    x1 = x0 + side
    reach = UNIT * (n / 2 + 1)
    sc = _Scene(x1 + reach + 30, side + 2 * y0)
    bottom, top = y0 + side, y0

    def site_y(i):
        return bottom - side * i / (n + 1)

    pos: dict[int, tuple[float, float]] = {}
    for k in range(fr.size):
        i, a = fr.vertex(k)
        size = fr.level_sizes[i]
        if i == 0:
            pos[k] = (x0 + side * a / (size + 1), bottom)
        elif i == fr.top:
            pos[k] = (x0 + side * a / (size + 1), top)
        else:
            spread = UNIT * 0.7
            pos[k] = (x1, site_y(i) + spread / 2 - spread * a / (size + 1))
    # square
    sc.lines.append(([(x0, top), (x1, top), (x1, bottom), (x0, bottom), (x0, top)], 1.5, "black"))
    # bands: a thick grey arc per chord, plus the strands running through it
    for (a, b), s, m in zip(t.arcs, t.twists, fr.mult):
        ya, yb = site_y(a), site_y(b)
        r = (ya - yb) / 2
        svg = f"M {_n(x1)} {_n(ya)} A {_n(r)} {_n(r)} 0 0 0 {_n(x1)} {_n(yb)}"
        tikz = f"({_n(x1)},{_n(-ya)}) arc (-90:90:{_n(r)})"
        sc.paths.append((svg, tikz, UNIT * 0.8, "#d0d0d0"))
        if s:
            cx, cy = x1 + r, (ya + yb) / 2
            d = UNIT * 0.3
            sc.lines.append(([(cx - d, cy - d), (cx + d, cy + d)], 1.5, "black"))
            sc.lines.append(([(cx - d, cy + d), (cx + d, cy - d)], 1.5, "black"))
    for k in range(fr.size):
        if not fr.is_internal(fr.vertex(k)):
            continue
        j = fr.iota_index[k]
        if j < k:
            continue
        (xa, ya), (xb, yb) = pos[k], pos[j]
        r = abs(ya - yb) / 2
        sweep = 0 if ya > yb else 1
        svg = f"M {_n(xa)} {_n(ya)} A {_n(r)} {_n(r)} 0 0 {sweep} {_n(xb)} {_n(yb)}"
        start, end = (-90, 90) if ya > yb else (90, -90)
        tikz = f"({_n(xa)},{_n(-ya)}) arc ({start}:{end}:{_n(r)})"
        sc.paths.append((svg, tikz, 1.0, "#1f4e9c"))
    # curve arcs inside the square
    cx, cy = (x0 + x1) / 2, (top + bottom) / 2
    for k, q in enumerate(th.partner):
        if q < k:
            continue
        (xa, ya), (xb, yb) = pos[k], pos[q]
        ca = (xa + (cx - xa) * 0.5, ya + (cy - ya) * 0.5)
        cb = (xb + (cx - xb) * 0.5, yb + (cy - yb) * 0.5)
        svg = (f"M {_n(xa)} {_n(ya)} C {_n(ca[0])} {_n(ca[1])} {_n(cb[0])} {_n(cb[1])} "
               f"{_n(xb)} {_n(yb)}")
        tikz = (f"({_n(xa)},{_n(-ya)}) .. controls ({_n(ca[0])},{_n(-ca[1])}) and "
                f"({_n(cb[0])},{_n(-cb[1])}) .. ({_n(xb)},{_n(-yb)})")
        sc.paths.append((svg, tikz, 1.0, "#1f4e9c"))
    for k in range(fr.size):
        sc.dots.append(pos[k])
    return sc


def _svg(sc: _Scene) -> str:
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(sc.width)}" '
           f'height="{_n(sc.height)}" viewBox="0 0 {_n(sc.width)} {_n(sc.height)}">']
    for svg, _, w, colour in sc.paths:
        out.append(f'  <path d="{svg}" fill="none" stroke="{colour}" stroke-width="{_n(w)}"/>')
    for pts, w, colour in sc.lines:
        d = " ".join(f"{_n(x)},{_n(y)}" for x, y in pts)
        out.append(f'  <polyline points="{d}" fill="none" stroke="{colour}" stroke-width="{_n(w)}"/>')
    for x, y in sc.dots:
        out.append(f'  <circle cx="{_n(x)}" cy="{_n(y)}" r="2.5" fill="black"/>')
    for x, y, text in sc.labels:
        out.append(f'  <text x="{_n(x)}" y="{_n(y)}" font-size="10" font-family="sans-serif">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _tikz_colour(c: str) -> str:
    return {"black": "black", "#d0d0d0": "black!20", "#1f4e9c": "blue!70!black"}.get(c, "black")


def _tikz(sc: _Scene) -> str:
    out = ["\\begin{tikzpicture}[x=0.03cm,y=0.03cm]"]
    for _, tikz, w, colour in sc.paths:
        out.append(f"  \\draw[{_tikz_colour(colour)}, line width={_n(w * 0.03)}cm] {tikz};")
    for pts, w, colour in sc.lines:
        d = " -- ".join(f"({_n(x)},{_n(-y)})" for x, y in pts)
        out.append(f"  \\draw[{_tikz_colour(colour)}, line width={_n(w * 0.03)}cm] {d};")
    for x, y in sc.dots:
        out.append(f"  \\fill ({_n(x)},{_n(-y)}) circle (2.5);")
    for x, y, text in sc.labels:
        out.append(f"  \\node[font=\\scriptsize] at ({_n(x)},{_n(-y)}) {{{text}}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def render(obj, fmt: str = "svg") -> str:
    """Schematic SVG or TikZ for a chord datum or an SWB datum."""
    if isinstance(obj, TwistedChordDatum):
        sc = _tcd_scene(obj)
    elif isinstance(obj, SWBDatum):
        sc = _swb_scene(obj)
    else:
        raise UnsupportedKind(f"cannot render {type(obj).__name__}")
    if fmt == "svg":
        return _svg(sc)
    if fmt == "tikz":
        return _tikz(sc)
    raise UnsupportedKind(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- command line

def _read(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _as_morphism(doc: Document, budget: int) -> Morphism:
    if doc.kind == "swb":
        return Morphism.homogeneous(doc.obj, budget=budget)
    if doc.kind == "morphism":
        return doc.obj.copy(budget)
    raise UnsupportedKind(f"expected an swb or morphism document, got {doc.kind}")


def _classification(doc: Document) -> dict:
    obj = doc.obj
    if doc.kind == "tcd":
        return chord.classify_type(obj).as_dict()
    if doc.kind == "frame":
        return chord.classify_type(obj.tcd).as_dict()
    if doc.kind == "swb":
        out = chord.classify_type(obj.tcd).as_dict()
        out["type"] = list(obj.type)
        out["complement_count"] = swb.complement_count(obj)
        out["components"] = [
            {"vertices": sorted(list(v) for v in c.component.vertices),
             "twist": c.twist, "external": c.external, "separating": c.separating}
            for c in swb.classify_components(obj)]
        return out
    raise UnsupportedKind("classify takes a tcd, frame or swb document")


class _Ctx:
    def __init__(self, as_json: bool, budget: int, seed: int, fmt: str):
        self.as_json = as_json
        self.budget = budget
        self.seed = seed
        self.fmt = fmt


def _print_json(x) -> None:
    click.echo(json.dumps(x, sort_keys=True))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output and errors.")
@click.option("--budget", default=swb.DEFAULT_BUDGET, show_default=True, type=click.IntRange(0),
              help="Handle-slide search budget.")
@click.option("--seed", default=0, show_default=True, type=int, help="Seed for randomised checks.")
@click.option("--format", "fmt", default="svg", show_default=True, type=click.Choice(["svg", "tikz"]),
              help="Diagram format for render.")
@click.pass_context
def cli(ctx, as_json, budget, seed, fmt):
    """Twisted chord data, SWB diagrams and their category."""
    ctx.obj = _Ctx(as_json, budget, seed, fmt)


@cli.command("enumerate")
@click.option("--rank", required=True, type=click.IntRange(0, chord.ENUMERATION_CAP))
@click.option("--orientable", is_flag=True, help="Only data without twisted arcs.")
@click.option("--count-only", is_flag=True)
@click.pass_obj
def enumerate_cmd(c: _Ctx, rank, orientable, count_only):
    """List every twisted chord datum of the given rank."""
    data = chord.enumerate_tcd(rank, orientable=orientable)
    if count_only:
        _print_json({"count": len(data)}) if c.as_json else click.echo(len(data))
        return
    for t in data:
        click.echo(json.dumps(tcd_payload(t)))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def classify(c: _Ctx, path):
    """Surface type (b, g, t); for SWB data also the components."""
    _print_json(_classification(_read(path)))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def normalize(c: _Ctx, path):
    """Caravan form of a chord datum, or normal form of an SWB datum or morphism."""
    doc = _read(path)
    if doc.kind in ("tcd", "frame"):
        t = doc.obj if doc.kind == "tcd" else doc.obj.tcd
        st, trace = chord.caravan_normalize(t)
        if c.as_json:
            _print_json({"type": st.as_dict(), "trace": [list(m) for m in trace],
                         "caravan": tcd_payload(chord.caravan(st))})
        else:
            click.echo(emit(chord.caravan(st)), nl=False)
        return
    click.echo(emit(_as_morphism(doc, c.budget)), nl=False)


@cli.command()
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def compose(c: _Ctx, second, first):
    """SECOND after FIRST (FIRST is the lower diagram)."""
    g = _as_morphism(_read(second), c.budget)
    f = _as_morphism(_read(first), c.budget)
    click.echo(emit(category.compose(g, f)), nl=False)


@cli.command()
@click.argument("left", type=click.Path(exists=True, dir_okay=False))
@click.argument("right", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def tensor(c: _Ctx, left, right):
    """LEFT tensor RIGHT."""
    f = _as_morphism(_read(left), c.budget)
    g = _as_morphism(_read(right), c.budget)
    click.echo(emit(category.tensor(f, g)), nl=False)


@cli.command()
@click.argument("a", type=click.Path(exists=True, dir_okay=False))
@click.argument("b", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def equal(c: _Ctx, a, b):
    """Decide equivalence of two documents of the same kind."""
    da, db = _read(a), _read(b)
    if {da.kind, db.kind} <= {"tcd"} or {da.kind, db.kind} <= {"frame"}:
        ta = da.obj if da.kind == "tcd" else da.obj.tcd
        tb = db.obj if db.kind == "tcd" else db.obj.tcd
        same = chord.classify_type(ta) == chord.classify_type(tb)
        info = {"outcome": swb.EQUIVALENT if same else swb.DISTINCT}
    elif da.kind == db.kind == "swb":
        r = swb.hs_equivalent(da.obj, db.obj, c.budget)
        info = {"outcome": r.outcome, "moves": r.moves, "explored": r.explored, "reason": r.reason,
                "path_from_first": [list(m) for m in r.path_from_first or ()],
                "path_from_second": [list(m) for m in r.path_from_second or ()]}
    else:
        f, g = _as_morphism(da, c.budget), _as_morphism(db, c.budget)
        info = {"outcome": category.equals(f, g, c.budget)}
    _print_json(info) if c.as_json else click.echo(info["outcome"])


@cli.command("render")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def render_cmd(c: _Ctx, path):
    """Draw a tcd or swb document as SVG or TikZ."""
    doc = _read(path)
    if doc.kind not in ("tcd", "swb"):
        raise UnsupportedKind(f"render takes a tcd or swb document, got {doc.kind}")
    click.echo(render(doc.obj, c.fmt), nl=False)


@cli.command()
@click.option("--only", multiple=True, type=int, help="Run only the given criterion numbers.")
@click.pass_obj
def selftest(c: _Ctx, only):
    """Run the acceptance checks and print a pass/fail table."""
    from . import acceptance

    results = acceptance.run_all(seed=c.seed, only=only or None)
    if c.as_json:
        _print_json([r.as_dict() for r in results])
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            click.echo(f"{r.number:>2}  {status}  {r.seconds:7.2f}s  {r.name}: {r.detail}")
    if not all(r.passed for r in results):
        sys.exit(1)


def main(argv=None) -> int:
    """Entry point; returns the exit code (0 ok, 1 domain error, 2 usage error)."""
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    try:
        cli.main(args=argv, prog_name="swb", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (SWBError, OSError) as exc:
        if as_json:
            err = {"error": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, SchemaError):
                err["path"] = exc.path
            click.echo(json.dumps(err, sort_keys=True), err=True)
        else:
            click.echo(f"error: {exc}", err=True)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


def run(argv) -> int:
    return main(list(argv))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
