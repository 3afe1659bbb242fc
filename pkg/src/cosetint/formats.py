"""Text formats for groups, subsets, instances, graphs, and pipelines.

Everything is UTF-8, line oriented, with '#' starting a comment that runs
to the end of the line.  Serializers emit a canonical form (sorted where
an order is not semantically fixed) and parse(format(x)) == x for every
value; formatting a parsed file reproduces it byte for byte as long as it
was canonical to begin with.
"""

from __future__ import annotations

import re
from typing import Iterable, List, Optional, Sequence, Tuple

from .groups import (
    FiniteAbelianGroup,
    GroupElement,
    Homomorphism,
    SubgroupGens,
)
from .model import ProblemInstance, SubsetS
from .transforms import Graph
from .hardness import (
    DivideOutLift,
    GadgetColoringFull,
    GadgetS01,
    KColFrom3Col,
    MapThrough,
    PFromPi,
    PiFromP,
    ReductionPipeline,
    Step,
    TraceRecord,
    TransformDouble,
    Translate,
)

# groups larger than this are rejected at the parse boundary; the solvers
# and the classifier enumerate G, so unbounded orders only buy hangs
MAX_ORDER = 1 << 20


class ParseError(ValueError):
    pass


def _fail(msg: str, lineno: Optional[int] = None):
    where = f"line {lineno}: " if lineno is not None else ""
    raise ParseError(where + msg)


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    """(lineno, content) with comments stripped and blanks dropped."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


# --- groups ------------------------------------------------------------------


def format_group(G: FiniteAbelianGroup) -> str:
    if G.dim == 0:
        return "1"
    if any(d < 2 for d in G.moduli):
        raise ValueError("groups with trivial factors have no canonical text form")
    return ",".join(str(d) for d in G.moduli)


def parse_group(s: str) -> FiniteAbelianGroup:
    s = s.strip()
    if s == "1":
        return FiniteAbelianGroup(())
    if not re.fullmatch(r"\d+(,\d+)*", s):
        _fail(f"bad group {s!r}: expected comma-separated moduli like 4 or 2,4")
    moduli = tuple(int(d) for d in s.split(","))
    if any(d < 2 for d in moduli):
        _fail(f"bad group {s!r}: moduli must be >= 2 (the trivial group is written 1)")
    G = FiniteAbelianGroup(moduli)
    if G.order > MAX_ORDER:
        _fail(f"group order {G.order} exceeds the supported bound {MAX_ORDER}")
    return G


# --- elements and tuple lists ------------------------------------------------


def format_element(e: GroupElement) -> str:
    return "(" + ",".join(str(c) for c in e) + ")"


_TUPLE_RE = re.compile(r"\((?:-?\d+(?:,-?\d+)*)?\)")


def _parse_int_tuple(s: str) -> Tuple[int, ...]:
    if not _TUPLE_RE.fullmatch(s):
        _fail(f"bad tuple {s!r}: expected (a,b,...)")
    body = s[1:-1]
    return tuple(int(v) for v in body.split(",")) if body else ()


def parse_element(G: FiniteAbelianGroup, s: str) -> GroupElement:
    e = _parse_int_tuple(s)
    if len(e) != G.dim:
        _fail(f"element {s} has {len(e)} coordinates, group has {G.dim}")
    if not G.contains(e):
        _fail(f"element {s} out of range for group {format_group(G)}")
    return e


def _format_tuple_list(items: Iterable[Tuple[int, ...]]) -> str:
    return ",".join(format_element(t) for t in items)


def _parse_tuple_list(s: str) -> Tuple[Tuple[int, ...], ...]:
    if not s:
        return ()
    if not re.fullmatch(r"{0}(,{0})*".format(_TUPLE_RE.pattern), s):
        _fail(f"bad tuple list {s!r}")
    return tuple(_parse_int_tuple(m.group(0)) for m in _TUPLE_RE.finditer(s))


# --- subsets -----------------------------------------------------------------


def format_subset(S: SubsetS) -> str:
    """Canonical brace literal, sorted; bare residues for cyclic groups."""
    elems = S.sorted_elements()
    if S.group.dim == 1:
        return "{" + ",".join(str(e[0]) for e in elems) + "}"
    return "{" + ",".join(format_element(e) for e in elems) + "}"


def _parse_subset_literal(G: FiniteAbelianGroup, s: str) -> SubsetS:
    if not (s.startswith("{") and s.endswith("}")):
        _fail(f"bad subset literal {s!r}: expected {{...}}")
    body = s[1:-1].strip()
    if not body:
        return SubsetS.of(G, [])
    elems = []
    if body.lstrip().startswith("("):
        for t in _parse_tuple_list(body.replace(" ", "")):
            if len(t) != G.dim or not G.contains(t):
                _fail(f"subset element {t} out of range for group {format_group(G)}")
            elems.append(t)
    else:
        if G.dim != 1:
            _fail("bare residues in a subset literal need a cyclic group")
        for part in body.split(","):
            part = part.strip()
            if not re.fullmatch(r"\d+", part):
                _fail(f"bad subset entry {part!r}")
            v = int(part)
            if v >= G.moduli[0]:
                _fail(f"subset entry {v} out of range for group {format_group(G)}")
            elems.append((v,))
    return SubsetS.of(G, elems)


def parse_subset(G: FiniteAbelianGroup, text: str) -> SubsetS:
    """Either one brace literal or one element per line."""
    lines = _logical_lines(text)
    if not lines:
        _fail("empty subset input")
    if len(lines) == 1 and lines[0][1].startswith("{"):
        return _parse_subset_literal(G, lines[0][1])
    elems = []
    for lineno, line in lines:
        if line.startswith("("):
            elems.append(parse_element(G, line))
        elif re.fullmatch(r"\d+", line) and G.dim == 1:
            v = int(line)
            if v >= G.moduli[0]:
                _fail(f"subset entry {v} out of range", lineno)
            elems.append((v,))
        else:
            _fail(f"bad subset line {line!r}", lineno)
    return SubsetS.of(G, elems)


# --- instances ---------------------------------------------------------------


def format_instance(inst: ProblemInstance, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"group: {format_group(inst.group)}")
    lines.append(f"t: {inst.t}")
    lines.append(("xstar: " + " ".join(format_element(e) for e in inst.xstar)).rstrip())
    for gen in inst.hgens:
        lines.append(("gen: " + " ".join(format_element(e) for e in gen)).rstrip())
    return "\n".join(lines) + "\n"


def _split_elements(G: FiniteAbelianGroup, rest: str, lineno: int):
    return tuple(parse_element(G, tok) for tok in rest.split())


def parse_instance(text: str) -> ProblemInstance:
    lines = _logical_lines(text)
    if len(lines) < 3:
        _fail("instance file needs group:, t: and xstar: lines")
    fields = []
    for lineno, line in lines:
        if ":" not in line:
            _fail(f"expected 'key: value', got {line!r}", lineno)
        key, _, rest = line.partition(":")
        fields.append((lineno, key.strip(), rest.strip()))
    (l0, k0, v0), (l1, k1, v1), (l2, k2, v2) = fields[0], fields[1], fields[2]
    if k0 != "group":
        _fail("instance file must start with a group: line", l0)
    G = parse_group(v0)
    if k1 != "t" or not re.fullmatch(r"\d+", v1):
        _fail("second line must be 't: N'", l1)
    t = int(v1)
    if k2 != "xstar":
        _fail("third line must be 'xstar: ...'", l2)
    xstar = _split_elements(G, v2, l2)
    hgens = []
    for lineno, key, rest in fields[3:]:
        if key != "gen":
            _fail(f"unexpected line key {key!r}", lineno)
        hgens.append(_split_elements(G, rest, lineno))
    try:
        return ProblemInstance(G, t, xstar, tuple(hgens))
    except ValueError as e:
        raise ParseError(str(e)) from e


# --- graphs (DIMACS-like) ----------------------------------------------------


def format_graph(graph: Graph, header: Sequence[str] = ()) -> str:
    lines = [f"c {h}" for h in header]
    lines.append(f"p edge {graph.n} {len(graph.edges)}")
    for u, v in graph.sorted_edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                _fail("duplicate problem line", lineno)
            mm = re.fullmatch(r"p\s+edge\s+(\d+)\s+(\d+)", line)
            if not mm:
                _fail(f"bad problem line {line!r}", lineno)
            n, m = int(mm.group(1)), int(mm.group(2))
        elif line.startswith("e"):
            if n is None:
                _fail("edge before the problem line", lineno)
            mm = re.fullmatch(r"e\s+(\d+)\s+(\d+)", line)
            if not mm:
                _fail(f"bad edge line {line!r}", lineno)
            u, v = int(mm.group(1)), int(mm.group(2))
            if not (1 <= u <= n and 1 <= v <= n):
                _fail(f"edge endpoint out of range in {line!r}", lineno)
            if u == v:
                _fail(f"self-loop in {line!r}", lineno)
            edges.append((u, v))
        else:
            _fail(f"unrecognized line {line!r}", lineno)
    if n is None:
        _fail("missing problem line 'p edge N M'")
    if m != len(edges):
        _fail(f"problem line promises {m} edges, file has {len(edges)}")
    graph = Graph.of(n, edges)
    if len(graph.edges) != len(edges):
        _fail("duplicate edges in graph file")
    return graph


# --- certificates and colorings ----------------------------------------------


def format_int_line(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values) + "\n"


def parse_int_line(text: str) -> Tuple[int, ...]:
    lines = _logical_lines(text)
    if not lines:
        return ()
    if len(lines) > 1:
        _fail("expected a single line of comma-separated integers")
    lineno, line = lines[0]
    if not re.fullmatch(r"-?\d+(\s*,\s*-?\d+)*", line):
        _fail(f"bad integer list {line!r}", lineno)
    return tuple(int(v) for v in line.split(","))


# --- pipelines ---------------------------------------------------------------


def _hom_params(hom: Homomorphism) -> str:
    rows = _format_tuple_list(hom.matrix)
    return (
        f"source={format_group(hom.source)} target={format_group(hom.target)} "
        f"rows={rows}"
    )


def _format_step(step: Step) -> str:
    if isinstance(step, Translate):
        return f"step: translate group={format_group(step.group)} g={format_element(step.g)}"
    if isinstance(step, MapThrough):
        return f"step: map-through {_hom_params(step.hom)}"
    if isinstance(step, DivideOutLift):
        K = step.kernel
        return (
            f"step: divide-out group={format_group(K.group)} "
            f"kernel={_format_tuple_list(K.gens)}"
        )
    if isinstance(step, TransformDouble):
        G = step.hom.source
        return (
            f"step: double group={format_group(G)} "
            f"rows={_format_tuple_list(step.hom.matrix)} g={format_element(step.g)}"
        )
    if isinstance(step, PFromPi):
        return "step: p-from-pi"
    if isinstance(step, PiFromP):
        return (
            f"step: pi-from-p group={format_group(step.group)} "
            f"order={_format_tuple_list(step.order)}"
        )
    if isinstance(step, GadgetS01):
        return f"step: gadget-s01 group={format_group(step.group)}"
    if isinstance(step, GadgetColoringFull):
        return f"step: gadget-coloring-full group={format_group(step.group)}"
    if isinstance(step, KColFrom3Col):
        return f"step: kcol-from-3col k={step.k}"
    raise ValueError(f"unknown step {step!r}")


def _parse_kv(parts: List[str], lineno: int):
    kv = {}
    for part in parts:
        if "=" not in part:
            _fail(f"expected key=value, got {part!r}", lineno)
        k, _, v = part.partition("=")
        if k in kv:
            _fail(f"duplicate key {k!r}", lineno)
        kv[k] = v
    return kv


def _need(kv, keys, lineno: int):
    if set(kv) != set(keys):
        _fail(f"expected keys {sorted(keys)}, got {sorted(kv)}", lineno)


def _parse_step(body: str, lineno: int) -> Step:
    parts = body.split()
    if not parts:
        _fail("empty step line", lineno)
    name, kv = parts[0], _parse_kv(parts[1:], lineno)
    if name == "translate":
        _need(kv, ("group", "g"), lineno)
        G = parse_group(kv["group"])
        return Translate(G, parse_element(G, kv["g"]))
    if name == "map-through":
        _need(kv, ("source", "target", "rows"), lineno)
        src, tgt = parse_group(kv["source"]), parse_group(kv["target"])
        rows = _parse_tuple_list(kv["rows"])
        if len(rows) != tgt.dim or any(len(r) != src.dim for r in rows):
            _fail("matrix shape does not match the groups", lineno)
        return MapThrough(Homomorphism(src, tgt, rows))
    if name == "divide-out":
        _need(kv, ("group", "kernel"), lineno)
        G = parse_group(kv["group"])
        gens = _parse_tuple_list(kv["kernel"])
        for g in gens:
            if len(g) != G.dim or not G.contains(g):
                _fail(f"kernel generator {g} out of range", lineno)
        return DivideOutLift(SubgroupGens(G, gens))
    if name == "double":
        _need(kv, ("group", "rows", "g"), lineno)
        G = parse_group(kv["group"])
        rows = _parse_tuple_list(kv["rows"])
        if len(rows) != G.dim or any(len(r) != G.dim for r in rows):
            _fail("matrix shape does not match the group", lineno)
        return TransformDouble(Homomorphism(G, G, rows), parse_element(G, kv["g"]))
    if name == "p-from-pi":
        _need(kv, (), lineno)
        return PFromPi()
    if name == "pi-from-p":
        _need(kv, ("group", "order"), lineno)
        G = parse_group(kv["group"])
        order = _parse_tuple_list(kv["order"])
        for t in order:
            if len(t) != G.dim or not G.contains(t):
                _fail(f"order element {t} out of range", lineno)
        return PiFromP(G, order)
    if name == "gadget-s01":
        _need(kv, ("group",), lineno)
        return GadgetS01(parse_group(kv["group"]))
    if name == "gadget-coloring-full":
        _need(kv, ("group",), lineno)
        return GadgetColoringFull(parse_group(kv["group"]))
    if name == "kcol-from-3col":
        _need(kv, ("k",), lineno)
        if not re.fullmatch(r"\d+", kv["k"]):
            _fail(f"bad k {kv['k']!r}", lineno)
        return KColFrom3Col(int(kv["k"]))
    _fail(f"unknown step {name!r}", lineno)


def format_pipeline(pipe: ReductionPipeline, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"variant: {pipe.variant}")
    lines.append(f"group: {format_group(pipe.group)}")
    lines.append(f"subset: {format_subset(pipe.subset)}")
    for step in pipe.steps:
        lines.append(_format_step(step))
    for rec in pipe.trace:
        kvs = "".join(f" {k}={v}" for k, v in rec.info)
        lines.append(f"trace: {rec.kind}{kvs}")
    return "\n".join(lines) + "\n"


def parse_pipeline(text: str) -> ReductionPipeline:
    lines = _logical_lines(text)
    if len(lines) < 3:
        _fail("pipeline file needs variant:, group: and subset: lines")
    header = {}
    for lineno, line in lines[:3]:
        key, _, rest = line.partition(":")
        header[key.strip()] = (lineno, rest.strip())
    if set(header) != {"variant", "group", "subset"}:
        _fail("pipeline file must start with variant:, group:, subset:")
    variant = header["variant"][1]
    if variant not in ("P", "Pi"):
        _fail(f"bad variant {variant!r}", header["variant"][0])
    G = parse_group(header["group"][1])
    S = _parse_subset_literal(G, header["subset"][1])
    steps: List[Step] = []
    trace: List[TraceRecord] = []
    for lineno, line in lines[3:]:
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if key == "step":
            if trace:
                _fail("step line after trace lines", lineno)
            steps.append(_parse_step(rest, lineno))
        elif key == "trace":
            parts = rest.split()
            if not parts:
                _fail("empty trace line", lineno)
            kv = _parse_kv(parts[1:], lineno)
            trace.append(TraceRecord(parts[0], tuple(kv.items())))
        else:
            _fail(f"unexpected line key {key!r}", lineno)
    return ReductionPipeline(G, S, variant, tuple(steps), tuple(trace))
