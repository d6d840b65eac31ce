"""Oriented knot diagrams in PD notation and twist-region surgery.

A crossing ``X(i, j, k, l)`` lists its four edge labels counterclockwise,
starting from the incoming under-strand.  The under-strand therefore runs
``i -> k``; the direction of the over-strand is recovered by propagating
orientations along edges.  A crossing is positive when the over-strand runs
``l -> j``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "PlanarDiagram",
    "TwistSite",
    "parse_pd",
    "crossing_signs",
    "insert_twists",
    "load_catalog",
    "default_catalog_path",
    "mirror",
    "make_diagram",
    "site_is_antiparallel",
    "replace_sites",
    "canonical_relabel",
    "catalog_by_name",
]


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram data."""


@dataclass(frozen=True)
class TwistSite:
    """A disk meeting two anti-parallel strands of a diagram.

    ``edges`` is the ordered pair of edge labels the disk crosses.  For the
    zero-crossing circle the only admissible site is ``(1, 1)``: a chord
    through the single loop.
    """

    edges: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "edges", (int(self.edges[0]), int(self.edges[1])))


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    basepoint: int | None = None
    name: str | None = None
    sites: tuple[TwistSite, ...] = ()
    # over_in[c] is the slot (1 or 3) through which the over-strand enters c
    over_in: tuple[int, ...] = field(default=(), compare=False, repr=False)

    # -- basic combinatorics -------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> list[int]:
        if not self.crossings:
            return [1]
        return sorted({e for x in self.crossings for e in x})

    def signs(self) -> list[int]:
        return [1 if o == 3 else -1 for o in self.over_in]

    def slot_is_incoming(self, c: int, slot: int) -> bool:
        if slot == 0:
            return True
        if slot == 2:
            return False
        return slot == self.over_in[c]

    def edge_ends(self) -> dict[int, dict[str, tuple[int, int]]]:
        """Map edge -> {"head": (crossing, slot), "tail": (crossing, slot)}.

        The head is where the edge enters a crossing, the tail where it leaves.
        """
        ends: dict[int, dict[str, tuple[int, int]]] = {}
        for c, x in enumerate(self.crossings):
            for s, e in enumerate(x):
                key = "head" if self.slot_is_incoming(c, s) else "tail"
                ends.setdefault(e, {})[key] = (c, s)
        return ends

    def components(self) -> int:
        if not self.crossings:
            return 1
        ends = self.edge_ends()
        seen: set[int] = set()
        count = 0
        for e in self.edges:
            if e in seen:
                continue
            count += 1
            cur = e
            while cur not in seen:
                seen.add(cur)
                c, s = ends[cur]["head"]
                cur = self.crossings[c][(s + 2) % 4]
        return count

    def faces(self) -> list[list[tuple[int, bool]]]:
        """Faces as cyclic lists of ``(edge, agrees)`` steps.

        Each face is walked with the face on the right; ``agrees`` records
        whether the walk follows the edge's orientation.
        """
        if not self.crossings:
            return [[(1, True)], [(1, False)]]
        ends = self.edge_ends()
        other = {}
        for e, d in ends.items():
            other[d["head"]] = d["tail"]
            other[d["tail"]] = d["head"]
        seen: set[tuple[int, int]] = set()
        out = []
        for c in range(len(self.crossings)):
            for s in range(4):
                if (c, s) in seen:
                    continue
                face = []
                cur = (c, s)
                while cur not in seen:
                    seen.add(cur)
                    e = self.crossings[cur[0]][cur[1]]
                    # walking away from cur along e agrees iff cur is e's tail
                    face.append((e, not self.slot_is_incoming(*cur)))
                    c2, s2 = other[cur]
                    cur = (c2, (s2 + 1) % 4)
                out.append(face)
        return out

    def is_planar(self) -> bool:
        """Euler-characteristic test for a connected projection."""
        if not self.crossings:
            return True
        return len(self.faces()) == self.n_crossings + 2

    def to_pd(self) -> str:
        if not self.crossings:
            return "PD[]"
        return "PD[" + ", ".join("X(%d,%d,%d,%d)" % x for x in self.crossings) + "]"

    def with_name(self, name: str | None) -> "PlanarDiagram":
        return replace(self, name=name)


# -- construction & validation ----------------------------------------------


def _orient(crossings: Sequence[Sequence[int]]) -> tuple[int, ...]:
    count: dict[int, int] = {}
    for x in crossings:
        for e in x:
            count[e] = count.get(e, 0) + 1
    bad = sorted(e for e, n in count.items() if n != 2)
    if bad:
        raise DiagramError("edge multiplicity: label(s) %s not used exactly twice" % bad)
    slots: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(crossings):
        for s, e in enumerate(x):
            slots.setdefault(e, []).append((c, s))
    # direction[(c, s)] = True if the edge enters crossing c at slot s
    direction: dict[tuple[int, int], bool] = {}
    stack = []

    def assign(slot, incoming):
        if slot in direction:
            if direction[slot] != incoming:
                raise DiagramError("inconsistent orientation at crossing %d" % (slot[0] + 1))
            return
        direction[slot] = incoming
        stack.append(slot)

    for c in range(len(crossings)):
        assign((c, 0), True)
        assign((c, 2), False)
    pending = list(range(len(crossings)))
    while True:
        while stack:
            c, s = stack.pop()
            e = crossings[c][s]
            for other in slots[e]:
                if other != (c, s):
                    assign(other, not direction[(c, s)])
            if s in (1, 3):
                assign((c, 4 - s), not direction[(c, s)])
        # components passing only over: orient the over-strand l -> j
        undecided = [c for c in pending if (c, 1) not in direction]
        if not undecided:
            break
        assign((undecided[0], 3), True)
    for e, (p, q) in slots.items():
        if direction[p] == direction[q]:
            raise DiagramError("inconsistent orientation on edge %d" % e)
    return tuple(3 if direction[(c, 3)] else 1 for c in range(len(crossings)))


def make_diagram(
    crossings: Iterable[Sequence[int]],
    basepoint: int | None = None,
    name: str | None = None,
    sites: Iterable[TwistSite | Sequence[int]] = (),
) -> PlanarDiagram:
    xs = tuple(tuple(int(v) for v in x) for x in crossings)
    for x in xs:
        if len(x) != 4:
            raise DiagramError("crossing %r does not have 4 edge labels" % (x,))
    over_in = _orient(xs)
    d = PlanarDiagram(xs, basepoint, name, (), over_in)
    edges = set(d.edges)
    if basepoint is not None and basepoint not in edges:
        raise DiagramError("basepoint %d is not an edge" % basepoint)
    norm = []
    for s in sites:
        s = s if isinstance(s, TwistSite) else TwistSite(tuple(s))
        _check_site(d, s)
        norm.append(s)
    return replace(d, sites=tuple(norm))


_TOKEN = re.compile(r"\s*(?:(PD)|(X)|(\d+)|(.))")


def parse_pd(text: str, basepoint: int | None = None, name: str | None = None) -> PlanarDiagram:
    """Parse ``PD[X(a,b,c,d), ...]``; square brackets are accepted for X too."""
    pos = 0
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(0).strip() == "":
            continue
        kind = "PD" if m.group(1) else "X" if m.group(2) else "int" if m.group(3) else m.group(4)
        toks.append((kind, m.group(0).strip(), m.start() + len(m.group(0)) - len(m.group(0).lstrip())))
    toks.append(("end", "", len(text)))

    def fail(msg):
        raise DiagramError("PD syntax error at position %d: %s" % (toks[pos][2], msg))

    def expect(kind):
        nonlocal pos
        if toks[pos][0] != kind:
            fail("expected %r, found %r" % (kind, toks[pos][1] or "end of input"))
        pos += 1
        return toks[pos - 1][1]

    expect("PD")
    if toks[pos][0] not in "[(":
        fail("expected '['")
    close = "]" if expect(toks[pos][0]) == "[" else ")"
    crossings = []
    if toks[pos][0] != close:
        while True:
            expect("X")
            opener = toks[pos][0]
            if opener not in ("(", "["):
                fail("expected '(' after X")
            pos += 1
            vals = [int(expect("int"))]
            for _ in range(3):
                expect(",")
                vals.append(int(expect("int")))
            expect(")" if opener == "(" else "]")
            crossings.append(vals)
            if toks[pos][0] == ",":
                pos += 1
                continue
            break
    expect(close)
    expect("end")
    return make_diagram(crossings, basepoint=basepoint, name=name)


def crossing_signs(d: PlanarDiagram) -> tuple[int, int]:
    s = d.signs()
    plus = sum(1 for v in s if v > 0)
    return plus, len(s) - plus


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Reflect the projection plane; every crossing changes sign."""
    xs = [(i, l, k, j) for (i, j, k, l) in d.crossings]
    name = None if d.name is None else d.name + "_mirror"
    return make_diagram(xs, d.basepoint, name, d.sites)


# -- twist sites ---------------------------------------------------------------


def _site_face(d: PlanarDiagram, s: TwistSite) -> tuple[bool, bool]:
    """Return (agree_a, agree_b) on the first face carrying both edges."""
    a, b = s.edges
    if not d.crossings:
        if s.edges != (1, 1):
            raise DiagramError("the only site on a zero-crossing circle is (1, 1)")
        return True, True
    if a == b:
        raise DiagramError("site edges must be distinct")
    edges = set(d.edges)
    for e in (a, b):
        if e not in edges:
            raise DiagramError("site edge %d is not an edge of the diagram" % e)
    for face in d.faces():
        flags = dict(reversed(face))
        if a in flags and b in flags:
            return flags[a], flags[b]
    raise DiagramError("site edges %d and %d do not bound a common face" % (a, b))


def _check_site(d: PlanarDiagram, s: TwistSite) -> None:
    fa, fb = _site_face(d, s)
    if fa != fb:
        raise DiagramError("site %s: strands are parallel, not oppositely oriented" % (s.edges,))


def site_is_antiparallel(d: PlanarDiagram, s: TwistSite) -> bool:
    fa, fb = _site_face(d, s)
    return fa == fb


def _twist_crossings(alpha, beta, k):
    """Crossings of ``|k|`` full twists in the standard local picture.

    ``alpha`` runs upward on the left (pieces bottom to top), ``beta`` runs
    downward on the right; ``beta[t]`` enters crossing ``t`` from above.
    """
    out = []
    for t in range(1, 2 * abs(k) + 1):
        a0, a1, b0, b1 = alpha[t - 1], alpha[t], beta[t - 1], beta[t]
        if k > 0:
            x = (a0, b0, a1, b1) if t % 2 else (b1, a1, b0, a0)
        else:
            x = (b1, a0, b0, a1) if t % 2 else (a0, b1, a1, b0)
        out.append(x)
    return out


def canonical_relabel(crossings, extra_edges=()):
    """Relabel edges 1, 2, ... along the orientation; returns (crossings, map)."""
    over_in = _orient(crossings)
    head = {}
    for c, x in enumerate(crossings):
        for s, e in enumerate(x):
            if s == 0 or s == over_in[c]:
                head[e] = (c, s)
    order = []
    for x in crossings:
        for e in x:
            if e not in order:
                order.append(e)
    mapping: dict[int, int] = {}
    for start in order:
        cur = start
        while cur not in mapping:
            mapping[cur] = len(mapping) + 1
            c, s = head[cur]
            cur = crossings[c][(s + 2) % 4]
    xs = [tuple(mapping[e] for e in x) for x in crossings]
    return xs, mapping


def insert_twists(d: PlanarDiagram, s: TwistSite, k: int) -> PlanarDiagram:
    """Replace the trivial tangle at ``s`` by ``k`` full twists.

    For ``k > 0`` the ``2k`` new crossings are positive, for ``k < 0`` the
    ``-2k`` new crossings are negative.  The returned diagram carries the
    inherited site (the two pieces above the twist region) in place of ``s``
    so that repeated insertion stacks the twists.
    """
    fa, fb = _site_face(d, s)
    if fa != fb:
        raise DiagramError("site %s: strands are parallel, not oppositely oriented" % (s.edges,))
    others = [t for t in d.sites if t != s]
    a0, b0 = s.edges
    if k == 0:
        if not d.crossings:
            return d
        xs, mp = canonical_relabel([list(x) for x in d.crossings])
        return _rebuild(d, xs, (mp[a0], mp[b0]), others, mp)
    a, b = s.edges
    n = 2 * abs(k)
    if not d.crossings:
        # the chord splits the loop into a bottom and a top arc
        alpha = ["bottom"] + [("a", t) for t in range(1, n)] + ["top"]
        beta = ["bottom"] + [("b", t) for t in range(1, n)] + ["top"]
        xs = _twist_crossings(alpha, beta, k)
        labels: dict = {}
        for x in xs:
            for e in x:
                labels.setdefault(e, len(labels) + 1)
        xs, _ = canonical_relabel([tuple(labels[e] for e in x) for x in xs])
        # the top arc is a single edge, so no edge-pair site is inherited
        return make_diagram(xs, None, d.name)
    big = max(d.edges) + 1
    alpha = [big + t for t in range(n + 1)]
    beta = [big + n + 1 + t for t in range(n + 1)]
    ends = d.edge_ends()
    xs = [list(x) for x in d.crossings]
    # L = a with the face on its right; a mirrored local picture is handled by
    # building the opposite chirality and reflecting the new crossings.
    mirrored = not fa
    ca, sa = ends[a]["tail"]
    xs[ca][sa] = alpha[0]
    ca, sa = ends[a]["head"]
    xs[ca][sa] = alpha[n]
    cb, sb = ends[b]["tail"]
    xs[cb][sb] = beta[n]
    cb, sb = ends[b]["head"]
    xs[cb][sb] = beta[0]
    new = _twist_crossings(alpha, beta, -k if mirrored else k)
    if mirrored:
        new = [(i, l, kk, j) for (i, j, kk, l) in new]
    xs.extend(list(x) for x in new)
    xs2, mp = canonical_relabel(xs)
    base_map = {e: e for e in d.edges if e not in (a, b)}
    base_map[a] = alpha[0]
    base_map[b] = beta[0]
    full = {e: mp[v] for e, v in base_map.items()}
    return _rebuild(d, xs2, (mp[alpha[n]], mp[beta[n]]), others, full)


def _rebuild(d, xs, new_site_edges, others, old_map):
    bp = None if d.basepoint is None else old_map.get(d.basepoint)
    sites = [TwistSite(new_site_edges)]
    for t in others:
        if all(e in old_map for e in t.edges):
            sites.append(TwistSite(tuple(old_map[e] for e in t.edges)))
    out = make_diagram(xs, bp, d.name)
    valid = []
    for t in sites:
        try:
            _check_site(out, t)
            valid.append(t)
        except DiagramError:
            pass
    return replace(out, sites=tuple(valid))


def replace_sites(d: PlanarDiagram, sites: Iterable[TwistSite]) -> PlanarDiagram:
    """Copy of ``d`` carrying ``sites``; each must be an anti-parallel pair."""
    sites = tuple(sites)
    for s in sites:
        _check_site(d, s)
    return replace(d, sites=sites)


# -- catalog -------------------------------------------------------------------


def default_catalog_path() -> str:
    env = os.environ.get("TWISTKH_CATALOG")
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data", "catalog.json")


def load_catalog(path: str | None = None) -> list[PlanarDiagram]:
    path = path or default_catalog_path()
    with open(path) as fh:
        text = fh.read()
    if not text.strip():
        return []
    entries = json.loads(text)
    out = []
    names = set()
    for ent in entries:
        name = ent.get("name")
        if name in names:
            raise DiagramError("duplicate name %r in catalog" % name)
        names.add(name)
        try:
            d = parse_pd(ent["pd"], basepoint=ent.get("basepoint"), name=name)
            sites = [TwistSite(tuple(s["edges"])) for s in ent.get("sites", [])]
            for s in sites:
                _check_site(d, s)
            d = replace(d, sites=tuple(sites))
        except (DiagramError, KeyError) as exc:
            raise DiagramError("catalog entry %r: %s" % (name, exc)) from exc
        out.append(d)
    return out


def catalog_by_name(path: str | None = None) -> dict[str, PlanarDiagram]:
    return {d.name: d for d in load_catalog(path)}
