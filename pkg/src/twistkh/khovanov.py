"""Khovanov complexes at n = 2, Krasner twist complexes, splicing and F/G maps.

Grading conventions follow the Khovanov-Rozansky normalisation used for
twist complexes: a circle contributes ``q^-1 (label 1) + q^+1 (label X)``,
a vertex of height r is shifted by ``{-r}``, and the whole cube by
``[-c_-]{2 c_- - c_+}``.  With these conventions positive twisting moves
homology up in homological degree and down in quantum degree.

Frobenius algebra: ``R[X]/(X^2 - a)`` with ``deg X = 2`` and ``deg a = 4``;
``R = Q[a]`` for the equivariant theory and ``a = 0`` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import POLY, RATIONALS, GradedSparseMatrix
from .complex import BigradedHomology, ChainComplex, ChainMap, homology
from .diagram import DiagramError, PlanarDiagram, TwistSite, crossing_signs

__all__ = [
    "Theory",
    "TwistComplex",
    "frobenius_data",
    "cube",
    "krasner_twist_complex",
    "splice",
    "map_F",
    "map_G",
    "s_invariant",
    "stable_homology",
    "stable_index",
    "khovanov_homology",
    "SADDLE_SQUARE",
    "S_PRIME_SCALE",
]

FLAVORS = ("unreduced", "reduced", "equivariant")


@dataclass(frozen=True)
class Theory:
    flavor: str = "unreduced"
    n: int = 2

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError("unknown flavor %r" % self.flavor)
        if self.n != 2:
            raise ValueError("homology is only implemented for n = 2")

    @property
    def ring(self):
        return POLY if self.flavor == "equivariant" else RATIONALS

    @property
    def equivariant(self) -> bool:
        return self.flavor == "equivariant"

    @property
    def reduced(self) -> bool:
        return self.flavor == "reduced"


def frobenius_data(t: Theory) -> dict:
    """Structure tables of the rank-two Frobenius algebra on basis (1, X).

    Products and coproducts are lists of ``(coefficient, a_power, basis)``.
    """
    a_on = 1 if t.equivariant else 0
    one, x = "1", "X"
    mult = {
        (one, one): [(1, 0, one)],
        (one, x): [(1, 0, x)],
        (x, one): [(1, 0, x)],
        (x, x): [(1, 1, one)] if a_on else [],
    }
    comult = {
        one: [(1, 0, (one, x)), (1, 0, (x, one))],
        x: [(1, 0, (x, x))] + ([(1, 1, (one, one))] if a_on else []),
    }
    return {
        "degree": {one: -1, x: 1},
        "a_degree": 4,
        "unit": one,
        "counit": {one: 0, x: 1},
        "mult": mult,
        "comult": comult,
    }


# Realised saddle identity: S o S = SADDLE_SQUARE * A with A = x2 + x4.
SADDLE_SQUARE = 1
# F uses S' with S' o S = A, i.e. S' = S / SADDLE_SQUARE.  Under the
# normalisation S o S = -(n+1) A this is the scale -1/(n+1).
S_PRIME_SCALE = 1


# -- twist complexes -------------------------------------------------------------


@dataclass(frozen=True)
class TwistComplex:
    """Krasner's zig-zag model of k positive full twists.

    ``objects`` are ``(kind, h, q)`` with kind "V" (the turnback smoothing)
    or "Z" (the identity tangle); ``maps[m]`` labels the map from object m
    to object m + 1.
    """

    k: int
    n: int
    objects: tuple[tuple[str, int, int], ...]
    maps: tuple[str, ...]


def krasner_q(m: int, k: int, n: int = 2) -> int:
    if m == 2 * k:
        return -2 * k * n
    l, odd = divmod(m, 2)
    return (-1 if odd else 1) - (2 * l + 1) * n


def krasner_twist_complex(k: int, n: int = 2) -> TwistComplex:
    if k < 0:
        raise ValueError("Krasner complexes are only built for k >= 0")
    if n < 2:
        raise ValueError("n must be at least 2")
    objs = tuple(("V" if m < 2 * k else "Z", m, krasner_q(m, k, n)) for m in range(2 * k + 1))
    maps = tuple("S" if m == 2 * k - 1 else ("x2-x4" if m % 2 == 0 else "A") for m in range(2 * k))
    return TwistComplex(k, n, objs, maps)


# -- resolutions -------------------------------------------------------------------


class _Resolver:
    """Circles of the resolutions of a diagram, optionally with a twist site.

    A site cuts its two edges a and b into tail and head halves.  In the
    identity state Z the halves are rejoined; in the turnback state V the
    bottom arc joins a's tail half to b's head half and the top arc joins
    a's head half to b's tail half.
    """

    def __init__(self, d: PlanarDiagram, site: TwistSite | None = None):
        self.d = d
        self.site = site
        xs = d.crossings
        self.nc = len(xs)
        fixed = []
        if site is None:
            node_of = lambda c, s: xs[c][s]
            nodes = list(d.edges)
        else:
            a, b = site.edges
            if not xs:
                nodes = ["La", "Ha", "Lb", "Hb"]
                fixed = [("Ha", "Lb"), ("Hb", "La")]
                node_of = None
            else:
                cut = {a, b}

                def node_of(c, s):
                    e = xs[c][s]
                    if e in cut:
                        return ("H" if d.slot_is_incoming(c, s) else "L") + ("a" if e == a else "b")
                    return e

                nodes = [e for e in d.edges if e not in cut] + ["La", "Ha", "Lb", "Hb"]
        if not xs and site is None:
            nodes = [1]
        self.nodes = nodes
        self.slot_node = [[node_of(c, s) for s in range(4)] for c in range(self.nc)] if xs else []
        self.fixed = fixed
        self._cache = {}

    def circles(self, v: int, state: str | None):
        """(number of circles, node -> circle index) for cube vertex v."""
        key = (v, state)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        parent = {n: n for n in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        for c in range(self.nc):
            n = self.slot_node[c]
            if (v >> c) & 1:
                union(n[0], n[3])
                union(n[1], n[2])
            else:
                union(n[0], n[1])
                union(n[2], n[3])
        for x, y in self.fixed:
            union(x, y)
        if state == "Z":
            union("La", "Ha")
            union("Lb", "Hb")
        elif state == "V":
            union("La", "Hb")
            union("Ha", "Lb")
        idx = {}
        circ = {}
        for n in self.nodes:
            r = find(n)
            if r not in idx:
                idx[r] = len(idx)
            circ[n] = idx[r]
        out = (len(idx), circ)
        self._cache[key] = out
        return out


def _saddle(src, tgt, pairs_src, eq):
    """Build the label map of a saddle between two resolutions.

    ``pairs_src`` are two nodes on the two arcs touched by the saddle in the
    source.  Returns a function label -> list of (label, coef).
    """
    ns, cs = src
    nt, ct = tgt
    n1, n2 = pairs_src
    c1, c2 = cs[n1], cs[n2]
    # carry untouched circles by any representative node
    carry = {}
    for node, c in cs.items():
        if c not in (c1, c2) and c not in carry:
            carry[c] = ct[node]
    if c1 != c2:
        t = ct[n1]

        def f(label):
            base = 0
            for c, tc in carry.items():
                if (label >> c) & 1:
                    base |= 1 << tc
            x1, x2 = (label >> c1) & 1, (label >> c2) & 1
            if x1 and x2:
                return [(base, 1)] if eq else []
            if x1 or x2:
                return [(base | (1 << t), 1)]
            return [(base, 1)]
        return f
    t1, t2 = ct[n1], ct[n2]
    if t1 == t2:
        raise AssertionError("saddle on one circle must split it")

    def g(label):
        base = 0
        for c, tc in carry.items():
            if (label >> c) & 1:
                base |= 1 << tc
        if (label >> c1) & 1:
            out = [(base | (1 << t1) | (1 << t2), 1)]
            if eq:
                out.append((base, 1))
            return out
        return [(base | (1 << t2), 1), (base | (1 << t1), 1)]
    return g


def _dot(label, c, eq):
    """Multiplication by X on circle c."""
    if (label >> c) & 1:
        return [(label & ~(1 << c), 1)] if eq else []
    return [(label | (1 << c), 1)]


def _default_basepoint(d: PlanarDiagram, site: TwistSite | None):
    if d.basepoint is not None:
        return d.basepoint
    if d.components() != 1:
        raise DiagramError("reduced homology of a link needs an explicit basepoint")
    avoid = set(site.edges) if site else set()
    for e in d.edges:
        if e not in avoid:
            return e
    return None


class _Builder:
    """Assemble the cube of resolutions, optionally tensored with T_k at a site."""

    def __init__(self, d: PlanarDiagram, t: Theory, site: TwistSite | None = None, k: int = 0):
        self.d, self.t, self.site, self.k = d, t, site, k
        self.res = _Resolver(d, site)
        self.eq = t.equivariant
        cp, cm = crossing_signs(d)
        self.cp, self.cm = cp, cm
        self.nc = d.n_crossings
        self.bp_node = None
        if t.reduced:
            bp = _default_basepoint(d, site)
            if site is not None and bp in site.edges:
                raise DiagramError("basepoint must not lie on the twist-site strands")
            if bp is None:
                # zero-crossing circle with a chord: mark the bottom arc
                self.bp_node = "La"
            else:
                self.bp_node = bp
                if self.nc == 0 and site is None:
                    self.bp_node = 1
        self.states = [(v, m) for v in range(1 << self.nc)
                       for m in (range(2 * k + 1) if site is not None else (None,))]

    def state_kind(self, m):
        if m is None:
            return None
        return "Z" if m == 2 * self.k else "V"

    def circles(self, v, m):
        return self.res.circles(v, self.state_kind(m))

    def labels(self, v, m):
        nc, circ = self.circles(v, m)
        if self.bp_node is None:
            return range(1 << nc)
        bp = circ[self.bp_node]
        return [x for x in range(1 << nc) if (x >> bp) & 1]

    def grading(self, v, m, label):
        nc, _ = self.circles(v, m)
        r = bin(v).count("1")
        h = r - self.cm + (m or 0)
        q = 2 * bin(label).count("1") - nc - r - self.cp + 2 * self.cm
        if m is not None:
            q += krasner_q(m, self.k)
        if self.bp_node is not None:
            q -= 1
        return h, q

    def build(self) -> ChainComplex:
        keys: dict[int, list] = {}
        gens: dict[int, list] = {}
        for v, m in self.states:
            for lab in self.labels(v, m):
                h, q = self.grading(v, m, lab)
                keys.setdefault(h, []).append((v, m, lab))
                gens.setdefault(h, []).append(q)
        index = {k: i for h in keys for i, k in enumerate(keys[h])}
        cols = {h: [dict() for _ in keys[h]] for h in keys}
        for v, m in self.states:
            for tgt_state, fn, sign in self.out_edges(v, m):
                for lab in self.labels(v, m):
                    src = (v, m, lab)
                    h = self.grading(v, m, lab)[0]
                    col = cols[h][index[src]]
                    for tl, coef in fn(lab):
                        tkey = (tgt_state[0], tgt_state[1], tl)
                        j = index.get(tkey)
                        if j is None:
                            raise AssertionError("differential leaves the complex at %r" % (tkey,))
                        col[j] = col.get(j, 0) + sign * coef
        diffs = {}
        for h in keys:
            if h + 1 in keys:
                diffs[h] = GradedSparseMatrix(self.t.ring, gens[h + 1], gens[h], cols[h], check=False)
        return ChainComplex(self.t.ring, gens, diffs, keys, check=False)

    def out_edges(self, v, m):
        src = self.circles(v, m)
        for i in range(self.nc):
            if (v >> i) & 1:
                continue
            v2 = v | (1 << i)
            sign = -1 if bin(v & ((1 << i) - 1)).count("1") % 2 else 1
            n = self.res.slot_node[i]
            yield (v2, m), _saddle(src, self.circles(v2, m), (n[0], n[2]), self.eq), sign
        if m is not None and m < 2 * self.k:
            sign = -1 if bin(v).count("1") % 2 else 1
            yield (v, m + 1), self.twist_map(v, m), sign

    def twist_map(self, v, m):
        src = self.circles(v, m)
        eq = self.eq
        if m == 2 * self.k - 1:
            return _saddle(src, self.circles(v, m + 1), ("La", "Lb"), eq)
        _, circ = src
        cb, ct = circ["La"], circ["Ha"]
        sgn = -1 if m % 2 == 0 else 1

        def f(label):
            acc = {}
            for tl, c in _dot(label, cb, eq):
                acc[tl] = acc.get(tl, 0) + c
            for tl, c in _dot(label, ct, eq):
                acc[tl] = acc.get(tl, 0) + sgn * c
            return [(x, c) for x, c in acc.items() if c]
        return f


def cube(d: PlanarDiagram, t: Theory | str = "unreduced") -> ChainComplex:
    """Khovanov cube complex of a diagram."""
    t = Theory(t) if isinstance(t, str) else t
    return _Builder(d, t).build()


def splice(d: PlanarDiagram, s: TwistSite, tc: TwistComplex | int, t: Theory | str = "unreduced") -> ChainComplex:
    """Complex of ``d`` with Krasner's T_k tensored in at site s."""
    t = Theory(t) if isinstance(t, str) else t
    k = tc.k if isinstance(tc, TwistComplex) else int(tc)
    if k < 0:
        raise ValueError("splice needs k >= 0")
    from .diagram import site_is_antiparallel

    if not site_is_antiparallel(d, s):
        raise DiagramError("site %s: strands are not oppositely oriented" % (s.edges,))
    return _Builder(d, t, s, k).build()


def _site_of(d, s):
    if s is None:
        if not d.sites:
            raise DiagramError("diagram %r has no twist site" % d.name)
        return d.sites[0]
    return s


@lru_cache(maxsize=256)
def _spliced(d, s, k, flavor):
    return splice(d, s, k, Theory(flavor))


def map_F(d: PlanarDiagram, s: TwistSite | None, i: int, j: int,
          t: Theory | str = "unreduced", scale=None) -> ChainMap:
    """F_{i,j}: identity below degree 2i, the rescaled saddle S' in degree 2i."""
    t = Theory(t) if isinstance(t, str) else t
    s = _site_of(d, s)
    if not 0 <= i < j:
        raise ValueError("need 0 <= i < j")
    scale = S_PRIME_SCALE if scale is None else scale
    src = _spliced(d, s, i, t.flavor)
    tgt = _spliced(d, s, j, t.flavor)
    bi = _Builder(d, t, s, i)
    bj = _Builder(d, t, s, j)
    tindex = tgt.index()
    comps = {}
    for h, ks in src.keys.items():
        entries = {}
        for c, (v, m, lab) in enumerate(ks):
            if m < 2 * i:
                entries[(tindex[(v, m, lab)][1], c)] = 1
            else:
                fn = _saddle(bi.circles(v, m), bj.circles(v, m), ("La", "Lb"), t.equivariant)
                for tl, coef in fn(lab):
                    r = tindex[(v, m, tl)][1]
                    entries[(r, c)] = entries.get((r, c), 0) + scale * coef
        comps[h] = GradedSparseMatrix.from_entries(t.ring, tgt.gens.get(h, []), src.gens[h],
                                                   entries, check=False)
    return ChainMap(src, tgt, comps, 0, 0)


def map_G(d: PlanarDiagram, s: TwistSite | None, i: int, j: int,
          t: Theory | str = "unreduced") -> ChainMap:
    """G_{i,j}: identity onto the top 2i+1 objects of T_j, shift [2(i-j)]{2n(j-i)}."""
    t = Theory(t) if isinstance(t, str) else t
    s = _site_of(d, s)
    if not 0 <= i < j:
        raise ValueError("need 0 <= i < j")
    n = t.n
    src = _spliced(d, s, i, t.flavor)
    tgt = _spliced(d, s, j, t.flavor)
    sh, sq = 2 * (i - j), 2 * n * (j - i)
    tindex = tgt.index()
    comps = {}
    for h, ks in src.keys.items():
        entries = {}
        for c, (v, m, lab) in enumerate(ks):
            entries[(tindex[(v, m + 2 * (j - i), lab)][1], c)] = 1
        rows = [q + sq for q in tgt.gens.get(h - sh, [])]
        comps[h] = GradedSparseMatrix.from_entries(t.ring, rows, src.gens[h], entries, check=False)
    return ChainMap(src, tgt, comps, sh, sq)


# -- invariants ---------------------------------------------------------------------


_HCACHE: dict = {}


def khovanov_homology(d: PlanarDiagram, t: Theory | str = "unreduced") -> BigradedHomology:
    t = Theory(t) if isinstance(t, str) else t
    key = (d.crossings, d.basepoint, t.flavor)
    hit = _HCACHE.get(key)
    if hit is None:
        hit = homology(cube(d, t), t.flavor)
        _HCACHE[key] = hit
    return hit


def s_invariant(d: PlanarDiagram, hom: BigradedHomology | None = None) -> int:
    """s_2 read from the free part of equivariant homology (s = -s_2)."""
    hom = hom or khovanov_homology(d, "equivariant")
    free = [(h, q, f) for (h, q), (f, _) in hom.items() if f]
    qs = []
    for h, q, f in free:
        if h != 0:
            raise AssertionError("free equivariant homology outside degree 0: %r" % (free,))
        qs += [q] * f
    if len(qs) != 2 or abs(qs[0] - qs[1]) != 2:
        raise AssertionError("free part is not two generators at s -+ 1: %r" % (qs,))
    return sum(qs) // 2


def stable_index(d: PlanarDiagram, h_max: int) -> int:
    """Smallest i certified for degrees <= h_max, plus one safety step."""
    _, cm = crossing_signs(d)
    return max(0, math.ceil((h_max + cm + 2) / 2)) + 1


def stable_homology(d: PlanarDiagram, s: TwistSite | None, t: Theory | str,
                    window: tuple[int, int]) -> BigradedHomology:
    """Homology of the infinitely twisted diagram, restricted to a window."""
    t = Theory(t) if isinstance(t, str) else t
    s = _site_of(d, s)
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window")
    i = stable_index(d, hi)
    return homology(_spliced(d, s, i, t.flavor), t.flavor).restrict(lo, hi)
